//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ring::{Algebra, ExactDivision, Ring};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// An ordered list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Arc<Self> {
        Arc::new(PolyRing {
            vars: vars.into_iter().map(Into::into).collect(),
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub type Exponents = Vec<u32>;

/// Multivariate polynomial; `terms` never stores a zero coefficient and every
/// exponent vector has one entry per ring variable.
#[derive(Clone)]
pub struct MultiPoly<F> {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Exponents, F>,
}

impl<F: Scalar> MultiPoly<F> {
    pub fn zero_in(ring: &Arc<PolyRing>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: F) -> Self {
        let mut p = Self::zero_in(ring);
        if !Ring::is_zero(&c) {
            p.terms.insert(vec![0; ring.nvars()], c);
        }
        p
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[index] = 1;
        Self::monomial(ring, e, <F as One>::one())
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<PolyRing>, exps: Exponents, c: F) -> Self {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        let mut p = Self::zero_in(ring);
        if !Ring::is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Exponents, F)>,
    ) -> Self {
        let mut p = Self::zero_in(ring);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> F {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(<F as Zero>::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&vec![0; self.ring.nvars()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Whether the variable occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn add_term(&mut self, exps: Exponents, c: F) {
        debug_assert_eq!(exps.len(), self.ring.nvars());
        if Ring::is_zero(&c) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if Ring::is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings: {:?} vs {:?}",
            self.ring.vars,
            other.ring.vars
        );
    }

    /// Formal partial derivative; in characteristic `p` terms whose exponent is
    /// a multiple of `p` vanish.
    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero_in(&self.ring);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c.clone() * F::from_i64(e[var] as i64));
        }
        out
    }

    pub fn partial_derivative_named(&self, name: &str) -> Result<Self> {
        let i = self
            .ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.partial_derivative(i))
    }

    /// Evaluates at values in any `F`-algebra; `values[i]` replaces variable `i`.
    pub fn eval<R: Algebra<F>>(&self, ctx: &R::Ctx, values: &[R]) -> R {
        assert_eq!(values.len(), self.ring.nvars(), "one value per variable");
        let n = self.ring.nvars();
        let mut powers: Vec<Vec<R>> = Vec::with_capacity(n);
        for (i, v) in values.iter().enumerate() {
            let maxe = self.degree_in(i) as usize;
            let mut pw = Vec::with_capacity(maxe + 1);
            pw.push(R::one(ctx));
            for k in 1..=maxe {
                let next = pw[k - 1].times(v);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = R::zero(ctx);
        for (e, c) in &self.terms {
            let mut term: Option<R> = None;
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let f = &powers[i][ei as usize];
                term = Some(match term {
                    None => f.clone(),
                    Some(t) => t.times(f),
                });
            }
            match term {
                None => acc.add_assign_ref(&R::from_scalar(ctx, c)),
                Some(t) => acc.add_assign_ref(&t.scale(c)),
            }
        }
        acc
    }

    /// Evaluates at field values.
    pub fn eval_scalar(&self, values: &[F]) -> F {
        self.eval::<F>(&(), values)
    }

    /// Re-expresses the polynomial over `target`, mapping variables by name.
    pub fn embed_into(&self, target: &Arc<PolyRing>) -> Result<Self> {
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| {
                target
                    .index_of(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero_in(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.nvars()];
            for (i, &ei) in e.iter().enumerate() {
                ne[map[i]] += ei;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Reinterprets exponent vectors in a ring whose first variables coincide
    /// with this ring's (extra trailing variables get exponent 0).
    pub fn extend_to(&self, target: &Arc<PolyRing>) -> Self {
        assert!(target.nvars() >= self.ring.nvars());
        let pad = target.nvars() - self.ring.nvars();
        let mut out = Self::zero_in(target);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.extend(std::iter::repeat(0).take(pad));
            out.terms.insert(ne, c.clone());
        }
        out
    }

    pub fn map_coefficients<G: Scalar>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut out = MultiPoly::<G>::zero_in(&self.ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Leading term in lexicographic order on exponent vectors.
    fn leading(&self) -> Option<(&Exponents, &F)> {
        self.terms.iter().next_back()
    }
}

/// A polynomial flattened for repeated evaluation: each term is a
/// coefficient and a list of `(variable, exponent)` factors.
#[derive(Clone, Debug)]
pub struct CompiledPoly<F> {
    nvars: usize,
    terms: Vec<(F, Vec<(usize, u32)>)>,
}

impl<F: Scalar> CompiledPoly<F> {
    pub fn new(p: &MultiPoly<F>) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| {
                let factors = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| (i, x))
                    .collect();
                (c.clone(), factors)
            })
            .collect();
        CompiledPoly {
            nvars: p.ring.nvars(),
            terms,
        }
    }

    /// Variables occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .terms
            .iter()
            .flat_map(|(_, f)| f.iter().map(|&(i, _)| i))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn eval<R: Algebra<F>>(&self, ctx: &R::Ctx, values: &[R]) -> R {
        debug_assert_eq!(values.len(), self.nvars);
        let mut acc = R::zero(ctx);
        for (c, factors) in &self.terms {
            let mut it = factors.iter();
            let Some(&(v0, e0)) = it.next() else {
                acc.add_assign_ref(&R::from_scalar(ctx, c));
                continue;
            };
            let mut t = if e0 == 1 {
                values[v0].clone()
            } else {
                values[v0].pow(e0)
            };
            for &(v, e) in it {
                if t.is_zero() {
                    break;
                }
                if e == 1 {
                    t = t.times(&values[v]);
                } else {
                    t = t.times(&values[v].pow(e));
                }
            }
            if !t.is_zero() {
                acc.add_assign_ref(&t.scale(c));
            }
        }
        acc
    }
}

impl<F: Scalar> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl<F: Scalar> Eq for MultiPoly<F> {}

impl<F: Scalar> std::hash::Hash for MultiPoly<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

impl<F: Scalar> Ring for MultiPoly<F> {
    type Ctx = Arc<PolyRing>;

    fn ctx(&self) -> Arc<PolyRing> {
        self.ring.clone()
    }

    fn zero(ctx: &Arc<PolyRing>) -> Self {
        Self::zero_in(ctx)
    }

    fn one(ctx: &Arc<PolyRing>) -> Self {
        Self::constant(ctx, <F as One>::one())
    }

    fn from_int(ctx: &Arc<PolyRing>, n: i64) -> Self {
        Self::constant(ctx, F::from_i64(n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    fn times(&self, rhs: &Self) -> Self {
        self.check_ring(rhs);
        let mut out = Self::zero_in(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    fn negate(&self) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        self.check_ring(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.check_ring(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }

    fn add_product(&mut self, a: &Self, b: &Self) {
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                self.add_term(e, c1.clone() * c2.clone());
            }
        }
    }
}

impl<F: Scalar> Algebra<F> for MultiPoly<F> {
    fn from_scalar(ctx: &Arc<PolyRing>, c: &F) -> Self {
        Self::constant(ctx, c.clone())
    }

    fn scale(&self, c: &F) -> Self {
        if Ring::is_zero(c) {
            return Self::zero_in(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }
}

impl<F: Scalar> ExactDivision for MultiPoly<F> {
    /// Multivariate division with respect to lex order; succeeds only when the
    /// remainder vanishes.
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (de, dc) = divisor.leading()?;
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero_in(&self.ring);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let qc = rc.clone() * dc_inv.clone();
            let t = Self::monomial(&self.ring, qe, qc);
            rem = rem.minus(&t.times(divisor));
            quot.add_assign_ref(&t);
        }
        Some(quot)
    }
}

fn graded_desc(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl<F: Scalar> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| graded_desc(a, b));
        for (k, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.ring.vars[i].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[i], x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if Ring::is_one(&abs) {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}
