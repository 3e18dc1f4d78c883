//! Dense matrices over a commutative ring, with determinant and adjugate.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::ToPrimitive;

use super::multipoly::{MultiPoly, PolyRing};
use super::ring::{ExactDivision, Ring};
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Size up to which determinants use memoized cofactor expansion.
pub const LAPLACE_MAX: usize = 4;

#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    ctx: R::Ctx,
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(ctx: &R::Ctx, rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            ctx: ctx.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(
        ctx: &R::Ctx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> R,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(ctx: &R::Ctx, rows: usize, cols: usize) -> Self {
        Self::from_fn(ctx, rows, cols, |_, _| R::zero(ctx))
    }

    pub fn identity(ctx: &R::Ctx, n: usize) -> Self {
        Self::from_fn(
            ctx,
            n,
            n,
            |i, j| if i == j { R::one(ctx) } else { R::zero(ctx) },
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring_ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            ctx: ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(&self.ctx, |x| x.times(c))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(&self.ctx, self.rows, rhs.cols, |i, j| {
            let mut acc = R::zero(&self.ctx);
            for k in 0..self.cols {
                acc.add_product(self.get(i, k), rhs.get(k, j));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = R::zero(&self.ctx);
                for (k, x) in v.iter().enumerate() {
                    acc.add_product(self.get(i, k), x);
                }
                acc
            })
            .collect())
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// The submatrix with row `i` and column `j` removed.
    pub fn minor_matrix(&self, i: usize, j: usize) -> Self {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for a in (0..self.rows).filter(|&a| a != i) {
            for b in (0..self.cols).filter(|&b| b != j) {
                entries.push(self.get(a, b).clone());
            }
        }
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Determinant over an arbitrary commutative ring.
    ///
    /// Cofactor expansion with memoized minors up to [`LAPLACE_MAX`]; beyond
    /// that the entries are treated as polynomial unknowns, the generic
    /// determinant is computed once by fraction-free elimination over `Q` and
    /// then evaluated.
    pub fn det(&self) -> Result<R> {
        let n = self.require_square()?;
        if n <= LAPLACE_MAX {
            Ok(self.det_laplace())
        } else {
            Ok(self.det_generic())
        }
    }

    fn det_laplace(&self) -> R {
        let n = self.rows;
        if n == 0 {
            return R::one(&self.ctx);
        }
        // minors[S]: determinant of rows 0..|S| and the columns in S
        let mut minors: Vec<Option<R>> = vec![None; 1 << n];
        minors[0] = Some(R::one(&self.ctx));
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for s in 0usize..(1 << n) {
            by_size[s.count_ones() as usize].push(s);
        }
        for k in 1..=n {
            let row = k - 1;
            for &s in &by_size[k] {
                let mut acc = R::zero(&self.ctx);
                let mut idx = 0;
                for j in 0..n {
                    if s & (1 << j) == 0 {
                        continue;
                    }
                    let a = self.get(row, j);
                    if !a.is_zero() {
                        let sub = minors[s & !(1 << j)].as_ref().expect("smaller minor");
                        if (row + idx) % 2 == 0 {
                            acc.add_product(a, sub);
                        } else {
                            acc.sub_assign_ref(&a.times(sub));
                        }
                    }
                    idx += 1;
                }
                minors[s] = Some(acc);
            }
        }
        minors[(1 << n) - 1].take().expect("full minor")
    }

    fn det_generic(&self) -> R {
        let n = self.rows;
        let terms = generic_determinant(n);
        let mut acc = R::zero(&self.ctx);
        for (coef, cells) in terms.iter() {
            let mut prod = R::from_int(&self.ctx, *coef);
            for &c in cells {
                prod = prod.times(&self.entries[c]);
                if prod.is_zero() {
                    break;
                }
            }
            acc.add_assign_ref(&prod);
        }
        acc
    }

    /// Transposed cofactor matrix; `M * adj(M) = adj(M) * M = det(M) I`.
    pub fn adjugate(&self) -> Result<Self> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(Self::identity(&self.ctx, 1));
        }
        let mut out = Self::zeros(&self.ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                let m = self.minor_matrix(i, j).det()?;
                let v = if (i + j) % 2 == 0 { m } else { m.negate() };
                out.set(j, i, v);
            }
        }
        Ok(out)
    }
}

/// Fraction-free (Bareiss) elimination over an integral domain.
pub fn det_bareiss<R: ExactDivision>(m: &Matrix<R>) -> Result<R> {
    let n = m.require_square()?;
    let ctx = m.ctx.clone();
    if n == 0 {
        return Ok(R::one(&ctx));
    }
    let mut a: Vec<Vec<R>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = R::one(&ctx);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(R::zero(&ctx)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].times(&a[k][k]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = num.exact_div(&prev).ok_or_else(|| {
                    Error::DivisionNotExact("fraction-free elimination step".into())
                })?;
            }
            a[i][k] = R::zero(&ctx);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.negate() } else { d })
}

type GenericDet = Arc<Vec<(i64, Vec<usize>)>>;

/// The `n x n` determinant as a polynomial in the entries, cached by size.
/// Each term is an integer coefficient and the flat indices of its factors.
fn generic_determinant(n: usize) -> GenericDet {
    static CACHE: OnceLock<Mutex<HashMap<usize, GenericDet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("cache lock").get(&n) {
        return d.clone();
    }
    let names: Vec<String> = (0..n * n)
        .map(|k| format!("m{}_{}", k / n, k % n))
        .collect();
    let ring = PolyRing::new(names);
    let m: Matrix<MultiPoly<Rational>> =
        Matrix::from_fn(&ring, n, n, |i, j| MultiPoly::var(&ring, i * n + j));
    let det = det_bareiss(&m).expect("generic determinant is exact");
    let terms: Vec<(i64, Vec<usize>)> = det
        .terms()
        .map(|(e, c)| {
            let cells = e
                .iter()
                .enumerate()
                .flat_map(|(k, &x)| std::iter::repeat(k).take(x as usize))
                .collect();
            (
                c.to_integer().to_i64().expect("small integer coefficient"),
                cells,
            )
        })
        .collect();
    let d = Arc::new(terms);
    cache.lock().expect("cache lock").insert(n, d.clone());
    d
}

/// Rank over a field by Gaussian elimination.
pub fn rank<F: Scalar>(m: &Matrix<F>) -> usize {
    let mut a: Vec<Vec<F>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&i| !Ring::is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for i in 0..m.rows {
            if i != rank && !Ring::is_zero(&a[i][col]) {
                let f = a[i][col].clone() * inv.clone();
                for j in col..m.cols {
                    let v = a[rank][j].clone() * f.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::scalar::Fp;

    type P = MultiPoly<Rational>;

    fn pm(rows: &[&[&str]]) -> Matrix<P> {
        let ring = PolyRing::new(["x", "y", "a", "b", "c", "d"]);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s, &ring).unwrap()).collect())
            .collect();
        Matrix::from_rows(&ring, rows).unwrap()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(
            pm(&[&["x"]]).det().unwrap(),
            pm(&[&["x"]]).get(0, 0).clone()
        );
        assert!(pm(&[&["1", "0"], &["0", "1"]]).det().unwrap().is_one());
        let m = pm(&[&["y", "x"], &["1", "1"]]);
        assert_eq!(m.det().unwrap(), pm(&[&["y - x"]]).get(0, 0).clone());
    }

    #[test]
    fn classical_two_by_two_adjugate() {
        let m = pm(&[&["a", "b"], &["c", "d"]]);
        assert_eq!(m.adjugate().unwrap(), pm(&[&["d", "-b"], &["-c", "a"]]));
        assert_eq!(pm(&[&["x*y + 3"]]).adjugate().unwrap(), pm(&[&["1"]]));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = pm(&[&["a", "b"]]);
        assert_eq!(m.det().unwrap_err(), Error::NonSquare { rows: 1, cols: 2 });
        assert!(matches!(m.adjugate(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn generic_and_laplace_agree_on_five_by_five() {
        type F = Fp<101>;
        let m: Matrix<F> = Matrix::from_fn(&(), 5, 5, |i, j| {
            F::new(((i * 7 + j * j * 3 + 1) % 101) as u64)
        });
        let sub = |k: usize| m.minor_matrix(0, k).det_laplace();
        let mut expand = F::new(0);
        for k in 0..5 {
            let term = *m.get(0, k) * sub(k);
            expand = if k % 2 == 0 {
                expand + term
            } else {
                expand - term
            };
        }
        assert_eq!(m.det().unwrap(), expand);
        assert_eq!(det_bareiss(&m).unwrap(), expand);
        assert_eq!(generic_determinant(5).len(), 120);
    }

    #[test]
    fn rank_of_singular_matrix() {
        type F = Fp<7>;
        let m: Matrix<F> = Matrix::from_fn(&(), 3, 3, |i, j| F::new((i * j) as u64));
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&Matrix::<F>::identity(&(), 4)), 4);
    }
}
