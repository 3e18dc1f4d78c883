//! Exhaustive check that `A`-points of the jet presentation correspond to
//! `A[t]/(t^(m+1))`-points of `X` via `x^(j) ↔ coefficient of t^j`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::presentation::jet_presentation;
use crate::algebra::multipoly::CompiledPoly;
use crate::algebra::ring::Ring;
use crate::algebra::scalar::Scalar;
use crate::algebra::series::{SeriesCtx, TruncSeries};
use crate::error::{Error, Result};
use crate::geometry::Variety;
use crate::lifting::oracle::finite_sizes;
use crate::local::testring::{TestRing, TestRingElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HsReport {
    pub order: usize,
    pub test_ring: String,
    pub field: String,
    pub jet_points: usize,
    pub hom_points: usize,
    pub bijection: bool,
}

/// Odometer over `len` digits in `0..radix`.
pub(crate) fn next_index(digits: &mut [u32], radix: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Depth-first search over `levels` blocks of `width` digits; `visit` sees
/// the digits filled through the given level and prunes by returning false.
fn walk_levels(
    levels: usize,
    width: usize,
    radix: u32,
    visit: &mut impl FnMut(usize, &[u32]) -> bool,
) {
    fn go(
        l: usize,
        levels: usize,
        width: usize,
        radix: u32,
        digits: &mut Vec<u32>,
        visit: &mut impl FnMut(usize, &[u32]) -> bool,
    ) {
        let mut block = vec![0u32; width];
        loop {
            digits.truncate(l * width);
            digits.extend_from_slice(&block);
            if visit(l, digits) && l + 1 < levels {
                go(l + 1, levels, width, radix, digits, visit);
            }
            if !next_index(&mut block, radix) {
                break;
            }
        }
    }
    go(
        0,
        levels,
        width,
        radix,
        &mut Vec::with_capacity(levels * width),
        visit,
    );
}

pub fn hs_universal_check<F: Scalar>(
    x: &Variety<F>,
    m: usize,
    ring: &'static TestRing,
    budget: u128,
) -> Result<HsReport> {
    let n = x.ambient_dim();
    let slots = n * (m + 1);
    let size = finite_sizes::<F>(ring)?.1;
    let needed = size.saturating_pow(slots as u32).saturating_mul(2);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let pres = jet_presentation(x, m)?;
    let elems = TestRingElement::<F>::all_elements(ring);
    let index: HashMap<TestRingElement<F>, u32> = elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, e)| (e, k as u32))
        .collect();
    let radix = elems.len() as u32;

    // A-points of the jet presentation; slot j*n + i holds x_i^(j)
    let levels: Vec<Vec<CompiledPoly<F>>> = (0..=m)
        .map(|l| {
            pres.generators
                .iter()
                .map(|g| CompiledPoly::new(&g[l]))
                .collect()
        })
        .collect();
    let mut jet_points: HashSet<Vec<u32>> = HashSet::new();
    let mut vals: Vec<TestRingElement<F>> = vec![TestRingElement::zero_in(ring); slots];
    walk_levels(m + 1, n, radix, &mut |l, digits| {
        for (v, &dg) in vals[l * n..(l + 1) * n].iter_mut().zip(&digits[l * n..]) {
            *v = elems[dg as usize].clone();
        }
        let ok = levels[l].iter().all(|g| g.eval(&ring, &vals).is_zero());
        if ok && l == m {
            jet_points.insert(digits.to_vec());
        }
        ok
    });

    // A[t]/(t^(m+1))-points of X, found by coefficients of t^j for each j in turn
    let mut hom_points: Vec<Vec<TruncSeries<TestRingElement<F>>>> = Vec::new();
    walk_levels(m + 1, n, radix, &mut |l, digits| {
        let sctx = SeriesCtx {
            ring,
            precision: l + 1,
        };
        let comps: Vec<TruncSeries<TestRingElement<F>>> = (0..n)
            .map(|i| {
                let c = (0..=l)
                    .map(|j| elems[digits[j * n + i] as usize].clone())
                    .collect();
                TruncSeries::new(&ring, c, l + 1)
            })
            .collect();
        let ok = x
            .equations()
            .iter()
            .all(|f| f.eval(&sctx, &comps).is_zero());
        if ok && l == m {
            hom_points.push(comps);
        }
        ok
    });

    let to_jet = |comps: &[TruncSeries<TestRingElement<F>>]| -> Vec<u32> {
        let mut key = vec![0u32; slots];
        for (i, s) in comps.iter().enumerate() {
            for j in 0..=m {
                key[j * n + i] = index[s.coeff(j)];
            }
        }
        key
    };
    let to_hom = |key: &[u32]| -> Vec<TruncSeries<TestRingElement<F>>> {
        (0..n)
            .map(|i| {
                let c = (0..=m)
                    .map(|j| elems[key[j * n + i] as usize].clone())
                    .collect();
                TruncSeries::new(&ring, c, m + 1)
            })
            .collect()
    };
    let sctx = SeriesCtx {
        ring,
        precision: m + 1,
    };
    let mut image: HashSet<Vec<u32>> = HashSet::new();
    let mut ok = true;
    for h in &hom_points {
        let key = to_jet(h);
        ok &= jet_points.contains(&key);
        ok &= to_hom(&key) == *h;
        image.insert(key);
    }
    ok &= image.len() == hom_points.len() && image.len() == jet_points.len();
    for key in &jet_points {
        let h = to_hom(key);
        ok &= x.equations().iter().all(|f| f.eval(&sctx, &h).is_zero());
        ok &= to_jet(&h) == *key;
    }
    Ok(HsReport {
        order: m,
        test_ring: ring.describe(),
        field: F::field_name(),
        jet_points: jet_points.len(),
        hom_points: hom_points.len(),
        bijection: ok,
    })
}
