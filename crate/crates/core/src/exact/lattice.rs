//! Integer matrices, row Hermite normal form and sublattices of ℤⁿ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<IntMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<IntMatrix> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Invalid("ragged matrix rows".into()));
            }
            entries.extend(row);
        }
        Ok(IntMatrix { rows: r, cols, entries })
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let big = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::from_big_rows(big, cols).expect("ragged matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Row Hermite normal form of a list of rows of width `cols`, zero rows removed.
pub(crate) fn hnf_rows(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut pr = 0;
    for col in 0..cols {
        if pr >= m.len() {
            break;
        }
        let Some(first) = (pr..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pr, first);
        for i in pr + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let a = m[pr][col].clone();
            let b = m[i][col].clone();
            let (g, s, t) = xgcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let (top, bot): (Vec<BigInt>, Vec<BigInt>) = m[pr]
                .iter()
                .zip(&m[i])
                .map(|(x, y)| (&s * x + &t * y, &ag * y - &bg * x))
                .unzip();
            m[pr] = top;
            m[i] = bot;
        }
        if m[pr][col].is_negative() {
            for x in m[pr].iter_mut() {
                *x = -&*x;
            }
        }
        let piv = m[pr][col].clone();
        for r in 0..pr {
            let q = m[r][col].div_floor(&piv);
            if !q.is_zero() {
                let pivot_row = m[pr].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        pr += 1;
    }
    m.truncate(pr);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}

/// Row Hermite normal form: positive pivots, entries above each pivot in
/// `[0, pivot)`, zero rows removed.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let rows = hnf_rows(m.to_rows(), m.cols);
    IntMatrix::from_big_rows(rows, m.cols).expect("hnf preserves width")
}

/// A sublattice of ℤⁿ stored by its HNF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentLattice {
    dim: usize,
    basis: IntMatrix,
}

impl ExponentLattice {
    pub fn new(dim: usize, generators: Vec<Vec<BigInt>>) -> Result<ExponentLattice> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(Error::Invalid(format!("generators must have length {dim}")));
        }
        let rows = hnf_rows(generators, dim);
        Ok(ExponentLattice { dim, basis: IntMatrix::from_big_rows(rows, dim)? })
    }

    pub fn from_i64(dim: usize, generators: &[Vec<i64>]) -> Result<ExponentLattice> {
        let big = generators
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        ExponentLattice::new(dim, big)
    }

    pub fn zero(dim: usize) -> ExponentLattice {
        ExponentLattice { dim, basis: IntMatrix::zeros(0, dim) }
    }

    pub fn full(dim: usize) -> ExponentLattice {
        ExponentLattice { dim, basis: IntMatrix::identity(dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    fn pivot(&self, i: usize) -> usize {
        (0..self.dim)
            .find(|&j| !self.basis.get(i, j).is_zero())
            .expect("HNF rows are nonzero")
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.dim {
            return false;
        }
        let mut v = v.to_vec();
        for i in 0..self.basis.rows() {
            let c = self.pivot(i);
            let p = self.basis.get(i, c);
            let (q, r) = v[c].div_mod_floor(p);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(self.basis.row(i)) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&big)
    }

    /// Whether some lattice vector has a nonzero first coordinate.
    pub fn has_nonzero_first(&self) -> bool {
        self.basis.rows() > 0 && !self.basis.get(0, 0).is_zero()
    }

    /// Index `[ℤⁿ : L]` for full-rank lattices.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.dim {
            return None;
        }
        Some((0..self.dim).map(|i| self.basis.get(i, i).clone()).product())
    }

    /// Whether `L = (L ⊗ ℚ) ∩ ℤⁿ`, i.e. the gcd of the maximal minors of the basis is 1.
    pub fn is_saturated(&self) -> bool {
        let r = self.rank();
        if r == 0 {
            return true;
        }
        let mut g = BigInt::zero();
        let mut cols = Vec::with_capacity(r);
        minors_gcd(&self.basis, r, 0, &mut cols, &mut g);
        g.is_one()
    }

    /// `(L ⊗ ℚ) ∩ ℤⁿ`, computed as the double orthogonal complement.
    pub fn saturation(&self) -> ExponentLattice {
        if self.is_zero() {
            return self.clone();
        }
        let columns = |m: &IntMatrix| -> Vec<Vec<BigInt>> {
            (0..m.cols()).map(|j| (0..m.rows()).map(|i| m.get(i, j).clone()).collect()).collect()
        };
        let orth = kernel_in_group(&columns(&self.basis), &[], self.rank());
        if orth.is_zero() {
            return ExponentLattice::full(self.dim);
        }
        kernel_in_group(&columns(&orth.basis), &[], orth.rank())
    }

    /// Projection onto the coordinates listed in `keep`, in that order.
    pub fn project(&self, keep: &[usize]) -> ExponentLattice {
        let rows = self
            .basis
            .to_rows()
            .into_iter()
            .map(|r| keep.iter().map(|&j| r[j].clone()).collect())
            .collect();
        ExponentLattice::new(keep.len(), rows).expect("projection keeps widths")
    }
}

fn minors_gcd(m: &IntMatrix, r: usize, start: usize, cols: &mut Vec<usize>, g: &mut BigInt) {
    if g.is_one() {
        return;
    }
    if cols.len() == r {
        let sub: Vec<Vec<BigInt>> = (0..r)
            .map(|i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
            .collect();
        *g = g.gcd(&det(sub));
        return;
    }
    for j in start..m.cols() {
        cols.push(j);
        minors_gcd(m, r, j + 1, cols, g);
        cols.pop();
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl fmt::Debug for ExponentLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

impl fmt::Display for ExponentLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis)
    }
}

impl Serialize for ExponentLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .basis
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

/// The lattice `{v ∈ ℤⁿ : Σ vᵢ·valuesᵢ ∈ span_ℤ(relations)}`, where the
/// values and relations live in a common ℤᶜ.
pub fn kernel_in_group(values: &[Vec<BigInt>], relations: &[Vec<BigInt>], c: usize) -> ExponentLattice {
    let n = values.len();
    let mut rows = Vec::with_capacity(n + relations.len());
    for (i, v) in values.iter().enumerate() {
        let mut row = v.clone();
        row.resize(c, BigInt::zero());
        row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
        rows.push(row);
    }
    for r in relations {
        let mut row = r.clone();
        row.resize(c + n, BigInt::zero());
        rows.push(row);
    }
    let h = hnf_rows(rows, c + n);
    let kernel = h
        .into_iter()
        .filter(|r| r[..c].iter().all(Zero::is_zero))
        .map(|r| r[c..].to_vec())
        .collect();
    ExponentLattice::new(n, kernel).expect("kernel widths agree")
}

/// HNF basis of `{v ∈ ℤⁿ : Σ aᵢvᵢ ≡ 0 (mod m)}`.
pub fn kernel_mod(a: &[i64], m: u64) -> ExponentLattice {
    let values: Vec<Vec<BigInt>> = a.iter().map(|&x| vec![BigInt::from(x)]).collect();
    kernel_in_group(&values, &[vec![BigInt::from(m)]], 1)
}
