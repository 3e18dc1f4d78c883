//! Test rings `k[e_1..e_g] / I` with `I` a monomial ideal containing every
//! monomial of total degree `c`.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::algebra::multipoly::{MultiPoly, PolyRing};
use crate::algebra::parse::parse_poly;
use crate::algebra::ring::{Algebra, LocalRing, Ring};
use crate::algebra::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Presentation data of a test ring. Instances are interned, so two equal
/// presentations share one `&'static` value.
#[derive(PartialEq, Eq)]
pub struct TestRing {
    generators: Vec<String>,
    nilpotency: u32,
    relations: Vec<Vec<u32>>,
    /// Standard monomials; index 0 is the constant monomial.
    basis: Vec<Vec<u32>>,
    /// `table[i * dim + j]`: index of `basis[i] * basis[j]`, if standard.
    table: Vec<Option<u16>>,
    class: usize,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn interned() -> &'static Mutex<Vec<&'static TestRing>> {
    static RINGS: OnceLock<Mutex<Vec<&'static TestRing>>> = OnceLock::new();
    RINGS.get_or_init(|| Mutex::new(Vec::new()))
}

impl TestRing {
    /// `k[generators] / (relations, all monomials of degree nilpotency)`.
    pub fn new<S: Into<String>>(
        generators: impl IntoIterator<Item = S>,
        nilpotency: u32,
        relations: Vec<Vec<u32>>,
    ) -> Result<&'static TestRing> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        let g = generators.len();
        if nilpotency == 0 {
            return Err(Error::InvalidInput(
                "nilpotency bound must be positive".into(),
            ));
        }
        if relations.iter().any(|r| r.len() != g) {
            return Err(Error::InvalidInput(
                "relation length differs from generator count".into(),
            ));
        }
        if relations.iter().any(|r| r.iter().all(|&e| e == 0)) {
            return Err(Error::InvalidInput(
                "the unit monomial cannot be a relation".into(),
            ));
        }
        let mut rels = relations;
        rels.sort();
        rels.dedup();
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut current = vec![0u32; g];
        enumerate_monomials(&mut current, 0, nilpotency - 1, &mut basis);
        basis.retain(|m| !rels.iter().any(|r| divides(r, m)));
        basis.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let dim = basis.len();
        if dim > u16::MAX as usize {
            return Err(Error::InvalidInput("test ring is too large".into()));
        }
        let mut table = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                table.push(basis.iter().position(|m| *m == prod).map(|k| k as u16));
            }
        }
        let class = basis
            .iter()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0) as usize
            + 1;
        let ring = TestRing {
            generators,
            nilpotency,
            relations: rels,
            basis,
            table,
            class,
        };
        let mut reg = interned().lock().expect("test ring registry");
        if let Some(r) = reg.iter().find(|r| ***r == ring) {
            return Ok(r);
        }
        let leaked: &'static TestRing = Box::leak(Box::new(ring));
        reg.push(leaked);
        Ok(leaked)
    }

    /// The field itself (`m = 0`).
    pub fn field() -> &'static TestRing {
        Self::new(Vec::<String>::new(), 1, Vec::new()).expect("valid")
    }

    /// `k[e] / (e^c)`.
    pub fn truncated(generator: &str, c: u32) -> &'static TestRing {
        Self::new([generator], c, Vec::new()).expect("valid")
    }

    /// `k[e] / (e^2)`.
    pub fn dual_numbers() -> &'static TestRing {
        Self::truncated("e", 2)
    }

    /// Parses relation monomials written in the generator names, such as `e1*e2`.
    pub fn from_spec(
        generators: &[String],
        nilpotency: u32,
        relations: &[String],
    ) -> Result<&'static TestRing> {
        let ring = PolyRing::new(generators.iter().cloned());
        let mut rels = Vec::new();
        for r in relations {
            let p: MultiPoly<Rational> = parse_poly(r, &ring)?;
            if p.num_terms() != 1 {
                return Err(Error::InvalidInput(format!(
                    "relation `{r}` is not a monomial"
                )));
            }
            let (e, _) = p.terms().next().expect("one term");
            rels.push(e.clone());
        }
        Self::new(generators.iter().cloned(), nilpotency, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn nilpotency_bound(&self) -> u32 {
        self.nilpotency
    }

    pub fn relations(&self) -> &[Vec<u32>] {
        &self.relations
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Vector-space dimension over `k`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Least `c` with `m^c = 0`.
    pub fn class(&self) -> usize {
        self.class
    }

    /// Degree of the `k`-th basis monomial.
    pub fn basis_degree(&self, k: usize) -> u32 {
        self.basis[k].iter().sum()
    }

    #[inline]
    fn product_index(&self, i: usize, j: usize) -> Option<usize> {
        self.table[i * self.basis.len() + j].map(usize::from)
    }

    /// Number of elements of `m` over a field with `q` elements.
    pub fn ideal_size(&self, q: u128) -> u128 {
        q.saturating_pow((self.dim() - 1) as u32)
    }

    pub fn describe(&self) -> String {
        if self.generators.is_empty() {
            return "k".into();
        }
        let gens = self.generators.join(",");
        if self.relations.is_empty() {
            return format!("k[{gens}]/({gens})^{}", self.nilpotency);
        }
        let mut s = format!("k[{gens}]/(({gens})^{}", self.nilpotency);
        for r in &self.relations {
            s.push_str(", ");
            s.push_str(&self.monomial_name(r));
        }
        s.push(')');
        s
    }

    fn monomial_name(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.generators[i].clone()
                } else {
                    format!("{}^{}", self.generators[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn enumerate_monomials(cur: &mut Vec<u32>, var: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
    if var == cur.len() {
        out.push(cur.clone());
        return;
    }
    for e in 0..=budget {
        cur[var] = e;
        enumerate_monomials(cur, var + 1, budget - e, out);
    }
    cur[var] = 0;
}

impl fmt::Debug for TestRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

pub type Coords<F> = SmallVec<[F; 4]>;

/// Element of a test ring in coordinates on the standard monomials.
#[derive(Clone)]
pub struct TestRingElement<F> {
    ring: &'static TestRing,
    coords: Coords<F>,
}

impl<F: Scalar> TestRingElement<F> {
    pub fn from_coords(ring: &'static TestRing, coords: impl IntoIterator<Item = F>) -> Self {
        let mut c: Coords<F> = coords.into_iter().collect();
        assert!(c.len() <= ring.dim(), "too many coordinates");
        c.resize(ring.dim(), <F as Zero>::zero());
        TestRingElement { ring, coords: c }
    }

    pub fn scalar(ring: &'static TestRing, c: F) -> Self {
        Self::from_coords(ring, [c])
    }

    /// The `k`-th standard monomial.
    pub fn basis_element(ring: &'static TestRing, k: usize) -> Self {
        let mut c: Coords<F> = smallvec::smallvec![<F as Zero>::zero(); ring.dim()];
        c[k] = <F as One>::one();
        TestRingElement { ring, coords: c }
    }

    /// The image of generator `i`.
    pub fn generator(ring: &'static TestRing, i: usize) -> Self {
        let mut m = vec![0; ring.generators.len()];
        m[i] = 1;
        match ring.basis.iter().position(|b| *b == m) {
            Some(k) => Self::basis_element(ring, k),
            None => Self::zero_in(ring),
        }
    }

    pub fn zero_in(ring: &'static TestRing) -> Self {
        TestRingElement {
            ring,
            coords: smallvec::smallvec![<F as Zero>::zero(); ring.dim()],
        }
    }

    pub fn ring(&self) -> &'static TestRing {
        self.ring
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// Image in the residue field.
    pub fn residue(&self) -> F {
        self.coords[0].clone()
    }

    /// Whether the element lies in `m^k`.
    pub fn in_power_of_ideal(&self, k: u32) -> bool {
        self.coords
            .iter()
            .enumerate()
            .all(|(i, c)| Ring::is_zero(c) || self.ring.basis_degree(i) >= k)
    }

    /// Parses a polynomial expression in the generator names.
    pub fn parse(ring: &'static TestRing, src: &str) -> Result<Self> {
        let pr = PolyRing::new(ring.generators.iter().cloned());
        let p: MultiPoly<F> = parse_poly(src, &pr)?;
        let mut out = Self::zero_in(ring);
        for (e, c) in p.terms() {
            if let Some(k) = ring.basis.iter().position(|b| b == e) {
                out.coords[k] = out.coords[k].clone() + c.clone();
            }
        }
        Ok(out)
    }

    /// Every element of `m`, for a finite field; constant coordinate zero.
    pub fn ideal_elements(ring: &'static TestRing) -> Vec<Self> {
        let field = F::elements().expect("finite field");
        let mut out = vec![Self::zero_in(ring)];
        for k in 1..ring.dim() {
            let mut next = Vec::with_capacity(out.len() * field.len());
            for base in &out {
                for v in &field {
                    let mut e = base.clone();
                    e.coords[k] = v.clone();
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    /// Every element of the ring, for a finite field.
    pub fn all_elements(ring: &'static TestRing) -> Vec<Self> {
        let field = F::elements().expect("finite field");
        let ideal = Self::ideal_elements(ring);
        let mut out = Vec::with_capacity(ideal.len() * field.len());
        for c in &field {
            for m in &ideal {
                let mut e = m.clone();
                e.coords[0] = c.clone();
                out.push(e);
            }
        }
        out
    }
}

impl<F: Scalar> PartialEq for TestRingElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl<F: Scalar> Eq for TestRingElement<F> {}

impl<F: Scalar> std::hash::Hash for TestRingElement<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl<F: Scalar> Ring for TestRingElement<F> {
    type Ctx = &'static TestRing;

    #[inline]
    fn ctx(&self) -> &'static TestRing {
        self.ring
    }

    fn zero(ctx: &&'static TestRing) -> Self {
        Self::zero_in(ctx)
    }

    fn one(ctx: &&'static TestRing) -> Self {
        Self::scalar(ctx, <F as One>::one())
    }

    fn from_int(ctx: &&'static TestRing, n: i64) -> Self {
        Self::scalar(ctx, F::from_i64(n))
    }

    #[inline]
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }

    fn is_one(&self) -> bool {
        Ring::is_one(&self.coords[0]) && self.coords[1..].iter().all(Ring::is_zero)
    }

    #[inline]
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }

    #[inline]
    fn minus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }

    #[inline]
    fn add_assign_ref(&mut self, rhs: &Self) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a = a.clone() + b.clone();
        }
    }

    #[inline]
    fn sub_assign_ref(&mut self, rhs: &Self) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a = a.clone() - b.clone();
        }
    }

    #[inline]
    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::zero_in(self.ring);
        out.add_product(self, rhs);
        out
    }

    #[inline]
    fn add_product(&mut self, a: &Self, b: &Self) {
        let dim = self.coords.len();
        for i in 0..dim {
            let x = &a.coords[i];
            if Ring::is_zero(x) {
                continue;
            }
            for j in 0..dim {
                let y = &b.coords[j];
                if Ring::is_zero(y) {
                    continue;
                }
                if let Some(k) = self.ring.product_index(i, j) {
                    self.coords[k] = self.coords[k].clone() + x.clone() * y.clone();
                }
            }
        }
    }

    fn negate(&self) -> Self {
        TestRingElement {
            ring: self.ring,
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<F: Scalar> Algebra<F> for TestRingElement<F> {
    fn from_scalar(ctx: &&'static TestRing, c: &F) -> Self {
        Self::scalar(ctx, c.clone())
    }

    fn scale(&self, c: &F) -> Self {
        TestRingElement {
            ring: self.ring,
            coords: self.coords.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }
}

impl<F: Scalar> LocalRing for TestRingElement<F> {
    fn in_maximal_ideal(&self) -> bool {
        Ring::is_zero(&self.coords[0])
    }

    /// Geometric series `a0^{-1} Σ_{i<c} (1 - a/a0)^i`.
    fn inverse(&self) -> Option<Self> {
        let a0inv = self.coords[0].inv()?;
        let n = self.scale(&a0inv);
        let one = Self::one(&self.ring);
        let nil = one.minus(&n);
        let mut acc = one.clone();
        let mut pw = one;
        for _ in 1..self.ring.class {
            pw = pw.times(&nil);
            acc.add_assign_ref(&pw);
        }
        Some(acc.scale(&a0inv))
    }

    fn nilpotency_class(ctx: &&'static TestRing) -> usize {
        ctx.class
    }
}

impl<F: Scalar> fmt::Display for TestRingElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if Ring::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{abs}")?;
            } else if Ring::is_one(&abs) {
                write!(f, "{}", self.ring.monomial_name(&self.ring.basis[k]))?;
            } else {
                write!(
                    f,
                    "{}*{}",
                    abs,
                    self.ring.monomial_name(&self.ring.basis[k])
                )?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for TestRingElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Returns `a^{-1}`, or `NotAUnit` when the residue of `a` vanishes.
pub fn invert_unit<R: LocalRing>(a: &R) -> Result<R> {
    a.inverse().ok_or(Error::NotAUnit)
}
