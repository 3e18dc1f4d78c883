//! Brute-force deformation oracle over finite test rings.

use std::collections::HashMap;
use std::time::Instant;

use serde::{Serialize, Serializer};

use super::lift::{lift_solution, truncation_margin};
use super::truncate::truncate_to_solution;
use crate::algebra::multipoly::{CompiledPoly, MultiPoly};
use crate::algebra::ring::{Algebra, Ring};
use crate::algebra::scalar::Scalar;
use crate::algebra::series::TruncSeries;
use crate::error::{Error, Result};
use crate::jets::jet_presentation;
use crate::jets::universal::next_index;
use crate::local::testring::{TestRing, TestRingElement};
use crate::model::{required_precision, FiniteModel};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

type El<F> = TestRingElement<F>;

/// Addition and multiplication tables of a finite test ring.
struct Tables<F: Scalar> {
    elems: Vec<El<F>>,
    index: HashMap<El<F>, u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    size: usize,
}

impl<F: Scalar> Tables<F> {
    fn new(ring: &'static TestRing) -> Result<Self> {
        let elems = El::<F>::all_elements(ring);
        let size = elems.len();
        if size > u16::MAX as usize {
            return Err(Error::InvalidInput(format!(
                "test ring with {size} elements is too large"
            )));
        }
        let index: HashMap<El<F>, u16> = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, e)| (e, k as u16))
            .collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &elems {
            for b in &elems {
                add.push(index[&a.plus(b)]);
                mul.push(index[&a.times(b)]);
            }
        }
        Ok(Tables {
            elems,
            index,
            add,
            mul,
            size,
        })
    }

    fn idx(&self, e: &El<F>) -> u16 {
        self.index[e]
    }

    fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }
}

/// A polynomial evaluated through ring tables; index 0 is the zero element.
struct TablePoly {
    terms: Vec<(u16, Vec<(usize, u32)>)>,
}

impl TablePoly {
    fn new<F: Scalar>(p: &MultiPoly<F>, t: &Tables<F>, ring: &'static TestRing) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let ci = t.idx(&El::from_scalar(&ring, c));
                let pw = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(k, &x)| (k, x))
                    .collect();
                (ci, pw)
            })
            .collect();
        TablePoly { terms }
    }

    fn is_zero_at<F: Scalar>(&self, t: &Tables<F>, vals: &[u16]) -> bool {
        let mut acc = 0u16;
        for (c, pw) in &self.terms {
            let mut m = *c;
            for &(k, x) in pw {
                for _ in 0..x {
                    m = t.mul(m, vals[k]);
                }
            }
            acc = t.add(acc, m);
        }
        acc == 0
    }
}

/// `|m|` and `|A|` for a test ring over a finite field.
pub(crate) fn finite_sizes<F: Scalar>(ring: &'static TestRing) -> Result<(u128, u128)> {
    let q = F::CHARACTERISTIC as u128;
    if q == 0 {
        return Err(Error::InvalidInput(
            "enumeration needs a finite base field".into(),
        ));
    }
    let m = ring.ideal_size(q);
    Ok((m, m.saturating_mul(q)))
}

fn budget_check(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Every solution of the model over `ring` reducing to the base point, in
/// the lexicographic order of the offsets from the base point.
pub fn oracle_enumerate<F: Scalar>(
    model: &FiniteModel<F>,
    ring: &'static TestRing,
    budget: u128,
) -> Result<Vec<Vec<El<F>>>> {
    let u = model.num_unknowns();
    let needed = finite_sizes::<F>(ring)?.0.saturating_pow(u as u32);
    budget_check(needed, budget)?;
    let ideal = El::<F>::ideal_elements(ring);
    let base = model.base_point_in::<El<F>>(&ring);
    let eqs: Vec<CompiledPoly<F>> = model.equations().iter().map(CompiledPoly::new).collect();
    let mut out = Vec::new();
    let mut digits = vec![0u32; u];
    let mut vals = base.clone();
    loop {
        for k in 0..u {
            vals[k] = base[k].plus(&ideal[digits[u - 1 - k] as usize]);
        }
        if eqs.iter().all(|g| g.eval(&ring, &vals).is_zero()) {
            out.push(vals.clone());
        }
        if !next_index(&mut digits, ideal.len() as u32) {
            break;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub model_solutions: usize,
    pub jet_points_extendable: usize,
    pub free_dims: usize,
    pub bijection: Verdict,
    pub elapsed_ms: u128,
    pub jet_order: usize,
    pub extension_order: usize,
    pub margin: usize,
    pub test_ring: String,
    pub field: String,
    pub mismatches: usize,
}

/// Counts and checks the correspondence between model solutions crossed
/// with free parts and jets of `X` modulo `t^n` that extend to jets modulo
/// `t^k`, `k = n + margin` (raised if the projection needs more).
///
/// Side (a): each solution `s` and each choice of the first `n - (e+1)d`
/// coefficients of `ξ` over the base values is lifted to precision `k`; the
/// lift must project back to `(s, ξ)` and the jets modulo `t^n` must be
/// pairwise distinct. Side (b): the jets modulo `t^n` over `γ₀` are
/// enumerated from the jet equations alone, level by level; each one that
/// extends to order `k` must be an image of side (a), carrying the same
/// solution, and every image must be found.
pub fn oracle_bijection_check<F: Scalar>(
    model: &FiniteModel<F>,
    ring: &'static TestRing,
    n: usize,
    budget: u128,
) -> Result<OracleReport> {
    let start = Instant::now();
    let (d, e) = (model.d(), model.e());
    let c = ring.class();
    let big_d = model.xbar_len();
    let need = required_precision(d, e);
    if n < need {
        return Err(Error::PrecisionInsufficient {
            required: need,
            available: n,
        });
    }
    let margin = truncation_margin(c, d, e);
    let k = (n + margin).max(need + margin);
    let (m_size, a_size) = finite_sizes::<F>(ring)?;
    let x = model.variety();
    let amb = x.ambient_dim();
    let sel = model.selection();
    let free_len = n.saturating_sub(big_d);
    let free_dims = model.n() * free_len;

    let enum_cost = m_size
        .saturating_pow(model.num_unknowns() as u32)
        .saturating_add(a_size.saturating_mul(a_size));
    budget_check(enum_cost, budget)?;
    let sols = oracle_enumerate(model, ring, budget)?;
    let t = Tables::<F>::new(ring)?;
    let ideal = El::<F>::ideal_elements(ring);
    let free_count = m_size.saturating_pow(free_dims as u32);
    let lift_cost = (sols.len() as u128).saturating_mul(free_count);
    budget_check(enum_cost.saturating_add(lift_cost), budget)?;
    let mut spent = enum_cost + lift_cost;

    let mut mismatches = 0usize;
    let key_of = |comps: &[TruncSeries<El<F>>]| -> Vec<u16> {
        let mut key = vec![0u16; amb * n];
        for (i, s) in comps.iter().enumerate() {
            for j in 0..n {
                key[j * amb + i] = t.idx(s.coeff(j));
            }
        }
        key
    };

    // side (a)
    let arc = model.arc();
    let mut image: HashMap<Vec<u16>, (u32, u64)> = HashMap::new();
    for (si, s) in sols.iter().enumerate() {
        let mut digits = vec![0u32; free_dims];
        let mut choice: u64 = 0;
        loop {
            let xi: Vec<TruncSeries<El<F>>> = sel
                .kept
                .iter()
                .enumerate()
                .map(|(kk, &i)| {
                    let coeffs = (0..free_len)
                        .map(|j| {
                            let base = El::from_scalar(&ring, &arc.coeff(i, j + big_d));
                            base.plus(&ideal[digits[kk * free_len + j] as usize])
                        })
                        .collect();
                    TruncSeries::new(&ring, coeffs, free_len)
                })
                .collect();
            let lift = lift_solution(model, &ring, s, Some(&xi), None, k)?;
            let back = truncate_to_solution(model, &ring, &lift)?;
            let mut ok = back.values == *s;
            for (kk, &i) in sel.kept.iter().enumerate() {
                let got = &back.xi[kk];
                for j in 0..got.precision() {
                    let want = if j < free_len {
                        xi[kk].coeff(j).clone()
                    } else {
                        El::from_scalar(&ring, &arc.coeff(i, j + big_d))
                    };
                    ok &= *got.coeff(j) == want;
                }
            }
            if image.insert(key_of(&lift), (si as u32, choice)).is_some() {
                ok = false;
            }
            if !ok {
                mismatches += 1;
            }
            choice += 1;
            if !next_index(&mut digits, m_size as u32) {
                break;
            }
        }
    }

    // side (b)
    let pres = jet_presentation(x, k - 1)?;
    let gens: Vec<Vec<TablePoly>> = (0..k)
        .map(|l| {
            pres.generators
                .iter()
                .map(|g| TablePoly::new(&g[l], &t, ring))
                .collect()
        })
        .collect();
    let base: Vec<u16> = (0..k)
        .flat_map(|j| (0..amb).map(move |i| (i, j)))
        .map(|(i, j)| t.idx(&El::from_scalar(&ring, &arc.coeff(i, j))))
        .collect();
    let offsets: Vec<u16> = ideal.iter().map(|o| t.idx(o)).collect();
    let mut search = LevelSearch {
        t: &t,
        gens: &gens,
        base: &base,
        offsets: &offsets,
        amb,
        vals: base.clone(),
        spent: &mut spent,
        budget,
    };
    let mut found = 0usize;
    let mut seen = 0usize;
    let mut failure: Option<Error> = None;
    search.walk(0, n, &mut |s: &mut LevelSearch<F>| {
        match s.extends(n, k) {
            Err(err) => {
                failure = Some(err);
                return false;
            }
            Ok(false) => return true,
            Ok(true) => {}
        }
        found += 1;
        let key = s.vals[..amb * n].to_vec();
        let Some(&(si, _)) = image.get(&key) else {
            mismatches += 1;
            return true;
        };
        seen += 1;
        let comps: Vec<TruncSeries<El<F>>> = (0..amb)
            .map(|i| {
                let coeffs = (0..k)
                    .map(|j| t.elems[s.vals[j * amb + i] as usize].clone())
                    .collect();
                TruncSeries::new(&ring, coeffs, k)
            })
            .collect();
        match truncate_to_solution(model, &ring, &comps) {
            Ok(back) if back.values == sols[si as usize] => {}
            _ => mismatches += 1,
        }
        true
    })?;
    if let Some(err) = failure {
        return Err(err);
    }
    mismatches += image.len() - seen;

    Ok(OracleReport {
        model_solutions: sols.len(),
        jet_points_extendable: found,
        free_dims,
        bijection: if mismatches == 0 && found == image.len() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        elapsed_ms: start.elapsed().as_millis(),
        jet_order: n,
        extension_order: k,
        margin,
        test_ring: ring.describe(),
        field: F::field_name(),
        mismatches,
    })
}

/// Depth-first search over jet coefficients, one `t`-level at a time.
struct LevelSearch<'a, F: Scalar> {
    t: &'a Tables<F>,
    gens: &'a [Vec<TablePoly>],
    base: &'a [u16],
    offsets: &'a [u16],
    amb: usize,
    vals: Vec<u16>,
    spent: &'a mut u128,
    budget: u128,
}

impl<F: Scalar> LevelSearch<'_, F> {
    fn charge(&mut self) -> Result<()> {
        *self.spent += 1;
        budget_check(*self.spent, self.budget)
    }

    /// Fills level `l` with each admissible choice in turn; returns whether
    /// the search should continue.
    fn walk(
        &mut self,
        l: usize,
        top: usize,
        leaf: &mut dyn FnMut(&mut Self) -> bool,
    ) -> Result<bool> {
        if l == top {
            return Ok(leaf(self));
        }
        let radix = self.offsets.len() as u32;
        let mut digits = vec![0u32; self.amb];
        loop {
            self.set_level(l, &digits);
            self.charge()?;
            if self.gens[l]
                .iter()
                .all(|g| g.is_zero_at(self.t, &self.vals))
                && !self.walk(l + 1, top, leaf)?
            {
                return Ok(false);
            }
            if !next_index(&mut digits, radix) {
                return Ok(true);
            }
        }
    }

    fn set_level(&mut self, l: usize, digits: &[u32]) {
        for (i, &dg) in digits.iter().enumerate() {
            let slot = l * self.amb + i;
            self.vals[slot] = self.t.add(self.base[slot], self.offsets[dg as usize]);
        }
    }

    /// Whether the levels below `from` extend through level `to - 1`; on
    /// success the extension is left in `vals`.
    fn extends(&mut self, from: usize, to: usize) -> Result<bool> {
        if from == to {
            return Ok(true);
        }
        let radix = self.offsets.len() as u32;
        let mut digits = vec![0u32; self.amb];
        loop {
            self.set_level(from, &digits);
            self.charge()?;
            if self.gens[from]
                .iter()
                .all(|g| g.is_zero_at(self.t, &self.vals))
                && self.extends(from + 1, to)?
            {
                return Ok(true);
            }
            if !next_index(&mut digits, radix) {
                return Ok(false);
            }
        }
    }
}
