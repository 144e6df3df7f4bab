//! Exact integer matrix algebra.
//!
//! Everything here works on dense matrices of [`BigInt`], so no operation can
//! overflow. The normal forms follow a fixed convention so that their output
//! is reproducible and can be compared against golden values:
//!
//! * [`hnf`] computes a *row-style* Hermite normal form `H = U·M`: nonzero rows
//!   first, positive pivots with strictly increasing column indices, entries
//!   above a pivot reduced into `[0, pivot)`.
//! * [`snf`] computes `D = U·M·V` with `d₁ | d₂ | … | d_r` and nonnegative
//!   diagonal.
//! * [`kernel_basis`] returns the saturated integer kernel `{v : M·v = 0}` as
//!   the rows of a matrix in Hermite normal form.
//!
//! Both elimination procedures pick the nonzero entry of least absolute value
//! as pivot, which keeps intermediate entries small on the matrix sizes this
//! crate is meant for.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from row vectors, each of which must have length `cols`.
    pub fn from_rows<I>(cols: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut data = Vec::new();
        let mut n = 0;
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
            n += 1;
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor from machine integers.
    ///
    /// Panics if `data.len() != rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        IntMatrix {
            rows,
            cols,
            data: data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Matrix product, or a dimension error if the shapes do not chain.
    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn select_rows(&self, indices: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, indices: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(indices.len() * self.rows);
        for i in 0..self.rows {
            for &j in indices {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: indices.len(),
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k · row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        debug_assert_ne!(dst, src);
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = k * s;
                self.data[dst * self.cols + j] += delta;
            }
        }
    }

    /// `col[dst] += k · col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        debug_assert_ne!(dst, src);
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let delta = k * s;
                self.data[i * self.cols + dst] += delta;
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = -std::mem::take(x);
        }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on a shape mismatch; use [`IntMatrix::try_mul`] to get an error instead.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix shapes do not chain")
    }
}

/// Rows as bracketed comma-separated lists, one row per line.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Parses the debug serialization produced by `Display`: one `[a, b, ...]`
/// row per line. Blank lines and `#` comments are ignored.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut cols = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: &str| Error::Syntax {
            line: lineno + 1,
            column: 1,
            message: message.to_string(),
        };
        let inner = line
            .strip_prefix('[')
            .and_then(|l| l.strip_suffix(']'))
            .ok_or_else(|| syntax("expected a row of the form [a, b, ...]"))?;
        let row = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|tok| tok.trim().parse::<BigInt>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| syntax("row entries must be integers"))?
        };
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => return Err(syntax("rows have different lengths")),
            _ => {}
        }
        rows.push(row);
    }
    IntMatrix::from_rows(cols.unwrap_or(0), rows)
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Row-style Hermite normal form together with its transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    /// Unimodular, with `u · m = h`.
    pub u: IntMatrix,
    pub rank: usize,
    /// Column of the pivot in each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

pub fn hnf(m: &IntMatrix) -> HnfResult {
    let rows = m.rows;
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;

    for c in 0..m.cols {
        if r == rows {
            break;
        }
        while let Some(p) = (r..rows)
            .filter(|&i| !h[(i, c)].is_zero())
            .min_by(|&a, &b| h[(a, c)].magnitude().cmp(h[(b, c)].magnitude()))
        {
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut cleared = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }

    HnfResult {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// Rank of a matrix over ℚ (equivalently over ℤ).
pub fn rank(m: &IntMatrix) -> usize {
    hnf(m).rank
}

/// Smith normal form together with its transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Unimodular row transform.
    pub u: IntMatrix,
    /// Diagonal, `d = u · m · v`.
    pub d: IntMatrix,
    /// Unimodular column transform.
    pub v: IntMatrix,
    /// The nonzero diagonal entries `d₁ | d₂ | … | d_r`, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;

    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &d[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude() < d[(bi, bj)].magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut cleared = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                cleared &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                cleared &= d[(t, j)].is_zero();
            }
            if !cleared {
                // A remainder smaller than the pivot survived; make it the new pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !d[(i, t)].is_zero() && d[(i, t)].magnitude() < d[best].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !d[(t, j)].is_zero() && d[(t, j)].magnitude() < d[best].magnitude() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..t).map(|i| d[(i, i)].clone()).collect();
    SnfResult {
        u,
        d,
        v,
        invariant_factors,
    }
}

/// Basis of the saturated integer kernel `{v ∈ ℤⁿ : M·v = 0}`.
///
/// The vectors are the rows of a matrix in Hermite normal form, so two
/// matrices with the same kernel lattice produce identical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Basis vectors as the rows of a matrix.
    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient_dim, self.vectors.iter().cloned())
            .expect("kernel vectors have ambient length")
    }

    /// Coordinates that vanish on every basis vector, hence on the whole lattice.
    pub fn dead_coordinates(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|&j| self.vectors.iter().all(|v| v[j].is_zero()))
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        lattice_member(v, &self.to_matrix())
    }
}

pub fn kernel_basis(m: &IntMatrix) -> KernelBasis {
    let n = m.cols;
    let t = hnf(&m.transpose());
    // u · mᵀ = h, so the rows of u opposite the zero rows of h are killed by m.
    let tail: Vec<usize> = (t.rank..n).collect();
    let raw = t.u.select_rows(&tail);
    let canon = hnf(&raw);
    debug_assert_eq!(canon.rank, raw.rows());
    KernelBasis {
        ambient_dim: n,
        vectors: canon.h.row_vecs(),
    }
}

/// Whether `v` is an integer combination of the rows of `generators`.
pub fn lattice_member(v: &[BigInt], generators: &IntMatrix) -> Result<bool> {
    if v.len() != generators.cols {
        return Err(Error::DimensionMismatch {
            expected: generators.cols,
            found: v.len(),
        });
    }
    let HnfResult { h, rank, pivots, .. } = hnf(generators);
    let mut residual = v.to_vec();
    for (i, &c) in pivots.iter().enumerate().take(rank) {
        if residual[c].is_zero() {
            continue;
        }
        let (q, rem) = residual[c].div_rem(&h[(i, c)]);
        if !rem.is_zero() {
            return Ok(false);
        }
        for (j, x) in residual.iter_mut().enumerate().skip(c) {
            *x -= &q * &h[(i, j)];
        }
    }
    Ok(residual.iter().all(Zero::is_zero))
}

/// Generators (in Hermite normal form) of the intersection of the row
/// lattices of `a` and `b`.
///
/// Pairs `(c₁, c₂)` with `c₁·A = c₂·B` are the kernel of `[Aᵀ | −Bᵀ]`; their
/// images `c₁·A` span the intersection.
pub fn lattice_intersect(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            found: b.cols,
        });
    }
    let mut neg_bt = b.transpose();
    for x in &mut neg_bt.data {
        *x = -std::mem::take(x);
    }
    let stacked = a.transpose().hstack(&neg_bt)?;
    let kernel = kernel_basis(&stacked);
    let k1 = a.rows;
    let coeffs = IntMatrix::from_rows(k1, kernel.vectors.iter().map(|v| v[..k1].to_vec()))?;
    let images = coeffs.try_mul(a)?;
    let reduced = hnf(&images);
    Ok(reduced.h.select_rows(&(0..reduced.rank).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_hnf_shape(r: &HnfResult) {
        let h = &r.h;
        for i in r.rank..h.rows() {
            assert!(h.row_is_zero(i));
        }
        for (i, &c) in r.pivots.iter().enumerate() {
            assert!(h[(i, c)].is_positive());
            assert!((0..c).all(|j| h[(i, j)].is_zero()));
            for k in 0..i {
                assert!(!h[(k, c)].is_negative() && h[(k, c)] < h[(i, c)]);
            }
            if i > 0 {
                assert!(c > r.pivots[i - 1]);
            }
        }
    }

    #[test]
    fn hnf_examples() {
        let r = hnf(&IntMatrix::identity(2));
        assert_eq!(r.h, IntMatrix::identity(2));
        assert_eq!(r.rank, 2);

        let m = IntMatrix::from_i64(2, 2, &[2, 3, 4, 5]);
        let r = hnf(&m);
        assert_eq!(r.h, IntMatrix::from_i64(2, 2, &[2, 0, 0, 1]));
        assert_eq!(r.rank, 2);
        assert_eq!(&r.u * &m, r.h);

        let r = hnf(&IntMatrix::zeros(2, 2));
        assert_eq!(r.h, IntMatrix::zeros(2, 2));
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn hnf_keeps_zero_rows_at_bottom() {
        let m = IntMatrix::from_i64(3, 3, &[0, 0, 0, 2, 4, 6, 1, 2, 3]);
        let r = hnf(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.h.row(0), big(&[1, 2, 3]).as_slice());
        assert!(r.h.row_is_zero(1) && r.h.row_is_zero(2));
        check_hnf_shape(&r);
    }

    #[test]
    fn snf_examples() {
        let r = snf(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(r.d, IntMatrix::from_i64(2, 2, &[1, 0, 0, 6]));
        let r = snf(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(r.d, IntMatrix::from_i64(2, 2, &[2, 0, 0, 4]));
        let r = snf(&IntMatrix::zeros(2, 3));
        assert!(r.d.is_zero());
        assert!(r.invariant_factors.is_empty());
    }

    #[test]
    fn snf_of_empty_shapes() {
        let r = snf(&IntMatrix::zeros(0, 3));
        assert_eq!(r.v, IntMatrix::identity(3));
        assert_eq!(r.u.rows(), 0);
        let r = snf(&IntMatrix::zeros(2, 0));
        assert_eq!(r.u, IntMatrix::identity(2));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_i64(1, 2, &[1, -2]));
        assert_eq!(k.vectors, vec![big(&[2, 1])]);
        let k = kernel_basis(&IntMatrix::from_i64(2, 2, &[1, 1, 1, -1]));
        assert!(k.is_empty());
        let k = kernel_basis(&IntMatrix::zeros(1, 2));
        assert_eq!(k.vectors, vec![big(&[1, 0]), big(&[0, 1])]);
        let k = kernel_basis(&IntMatrix::zeros(0, 3));
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn membership_examples() {
        let l = IntMatrix::from_i64(1, 2, &[2, 1]);
        assert!(lattice_member(&big(&[2, 1]), &l).unwrap());
        let l = IntMatrix::from_i64(2, 2, &[2, 0, 0, 1]);
        assert!(!lattice_member(&big(&[1, 0]), &l).unwrap());
        assert!(lattice_member(&big(&[0, 0]), &l).unwrap());
        assert!(lattice_member(&big(&[0, 0]), &IntMatrix::zeros(0, 2)).unwrap());
        assert!(matches!(
            lattice_member(&big(&[1]), &l),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn intersect_examples() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 1]);
        let b = IntMatrix::from_i64(1, 2, &[1, 1]);
        assert_eq!(lattice_intersect(&a, &b).unwrap(), IntMatrix::from_i64(1, 2, &[2, 2]));

        let l = IntMatrix::from_i64(1, 2, &[3, 6]);
        assert_eq!(lattice_intersect(&IntMatrix::identity(2), &l).unwrap(), l);

        let x = IntMatrix::from_i64(1, 2, &[1, 0]);
        let y = IntMatrix::from_i64(1, 2, &[0, 1]);
        assert_eq!(lattice_intersect(&x, &y).unwrap().rows(), 0);

        let z = IntMatrix::from_i64(1, 3, &[0, 1, 0]);
        assert!(lattice_intersect(&x, &z).is_err());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(IntMatrix::from_i64(2, 2, &[1, 1, 1, -1]).determinant().unwrap(), BigInt::from(-2));
        let m = IntMatrix::from_i64(3, 3, &[0, 2, 1, 3, 0, 0, 1, 1, 1]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-3));
        assert_eq!(IntMatrix::zeros(0, 0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn display_and_parse() {
        let m = IntMatrix::from_i64(2, 3, &[1, -2, 0, 4, 5, -60]);
        let text = m.to_string();
        assert_eq!(text, "[1, -2, 0]\n[4, 5, -60]\n");
        assert_eq!(parse_matrix(&text).unwrap(), m);
        assert!(parse_matrix("[1, 2]\n[3]\n").is_err());
        assert!(parse_matrix("1, 2\n").is_err());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |d| IntMatrix::from_i64(r, c, &d))
        })
    }

    proptest! {
        #[test]
        fn hnf_is_idempotent(m in small_matrix()) {
            let once = hnf(&m);
            check_hnf_shape(&once);
            prop_assert_eq!(&once.u * &m, once.h.clone());
            prop_assert_eq!(hnf(&once.h).h, once.h);
        }

        #[test]
        fn snf_transforms_are_exact(m in small_matrix()) {
            let r = snf(&m);
            prop_assert_eq!(&(&r.u * &m) * &r.v, r.d.clone());
            prop_assert_eq!(r.u.determinant().unwrap().magnitude().clone(), One::one());
            prop_assert_eq!(r.v.determinant().unwrap().magnitude().clone(), One::one());
            for w in r.invariant_factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }

        #[test]
        fn kernel_annihilated_and_sized(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len(), m.cols() - rank(&m));
            for v in &k.vectors {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        /// The product of the first k invariant factors is the gcd of all
        /// k×k minors.
        #[test]
        fn invariant_factors_match_minors(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-5i64..=5, r * c).prop_map(move |d| IntMatrix::from_i64(r, c, &d))
        })) {
            let r = snf(&m);
            let mut product = BigInt::one();
            for k in 1..=m.rows().min(m.cols()) {
                let mut g = BigInt::zero();
                for rows in (0..m.rows()).combinations(k) {
                    for cols in (0..m.cols()).combinations(k) {
                        g = g.gcd(&m.select_rows(&rows).select_cols(&cols).determinant().unwrap());
                    }
                }
                if k <= r.invariant_factors.len() {
                    product *= &r.invariant_factors[k - 1];
                    prop_assert_eq!(&product, &g);
                } else {
                    prop_assert!(g.is_zero());
                }
            }
        }

        /// If c·v lies in the kernel lattice for some c ≠ 0, so does v.
        #[test]
        fn kernel_is_saturated(m in small_matrix(), c in 2i64..=5, seed in proptest::collection::vec(-3i64..=3, 6)) {
            let k = kernel_basis(&m);
            let combo: Vec<BigInt> = (0..m.cols())
                .map(|j| k.vectors.iter().zip(&seed).map(|(b, s)| &b[j] * s).sum())
                .collect();
            let g = combo.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() {
                let primitive: Vec<BigInt> = combo.iter().map(|x| x / &g).collect();
                prop_assert!(k.contains(&primitive).unwrap());
                let scaled: Vec<BigInt> = primitive.iter().map(|x| x * c).collect();
                prop_assert!(k.contains(&scaled).unwrap());
            }
        }
    }
}
