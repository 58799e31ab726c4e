//! Dense exact linear algebra over the rationals.
//!
//! This is the computational kernel under everything else: structure maps,
//! differentials, gap maps and certificates are all `RatMatrix` values, and
//! every decision procedure eventually bottoms out in `rref`, `solve` or
//! `kernel_basis`. Matrices are dense and desk-scale (at most a few hundred
//! rows); pivoting is deterministic (leftmost nonzero column, first available
//! row) so that barcodes, certificates and factorizations are reproducible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::Rat;

/// A rows×cols matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Result of a reduced-row-echelon computation.
///
/// `reduced = transform * input`, `transform` is invertible, and `pivots`
/// lists the pivot columns in increasing order.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
    pub transform: RatMatrix,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<Rat>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut m = Self::zero(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    /// Integer-literal rows, for tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Rat::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rat) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc += &(e * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stack `self` above `other` (same column count).
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Place `self` to the left of `other` (same row count).
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        RatMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn block_diag(blocks: &[&RatMatrix]) -> RatMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = RatMatrix::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Reduced row-echelon form together with the invertible row transform.
    pub fn rref(&self) -> Rref {
        let mut a = self.clone();
        let mut t = RatMatrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..a.cols {
            if r == a.rows {
                break;
            }
            // leftmost nonzero column, first available row
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                a.swap_rows(p, r);
                t.swap_rows(p, r);
            }
            let inv = a.get(r, col).recip();
            a.scale_row(r, &inv);
            t.scale_row(r, &inv);
            for i in 0..a.rows {
                if i != r && !a.get(i, col).is_zero() {
                    let factor = a.get(i, col).clone();
                    a.sub_scaled_row(i, r, &factor);
                    t.sub_scaled_row(i, r, &factor);
                }
            }
            pivots.push(col);
            r += 1;
        }
        Rref {
            reduced: a,
            pivots,
            transform: t,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Solve `self * x = b` for a single right-hand side.
    ///
    /// Returns the solution with every free variable set to zero, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>, Error> {
        if b.len() != self.rows {
            return Err(Error::shape(format!(
                "solve: rhs length {} does not match {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = RatMatrix::from_cols(vec![b.to_vec()]);
        Ok(self.solve_matrix(&rhs)?.map(|m| m.col(0)))
    }

    /// Solve `self * X = B` column-wise; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &RatMatrix) -> Result<Option<RatMatrix>, Error> {
        if b.rows() != self.rows {
            return Err(Error::shape(format!(
                "solve: rhs has {} rows, matrix has {}",
                b.rows(),
                self.rows
            )));
        }
        let Rref {
            reduced,
            pivots,
            transform,
        } = self.rref();
        let tb = &transform * b;
        // consistency: every row beyond the rank must be zero in the rhs
        for i in pivots.len()..self.rows {
            for j in 0..tb.cols() {
                if !tb.get(i, j).is_zero() {
                    return Ok(None);
                }
            }
        }
        let mut x = RatMatrix::zero(self.cols, b.cols());
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..tb.cols() {
                x.set(pc, j, tb.get(r, j).clone());
            }
        }
        // reduced * x = tb requires clearing the free-column contributions;
        // with free variables pinned to zero the pivot rows read off directly,
        // but only because `reduced` is fully reduced.
        debug_assert_eq!(&(self * &x), b);
        let _ = reduced;
        Ok(Some(x))
    }

    /// Columns form a basis of `{ x : self * x = 0 }`.
    ///
    /// One basis column per free column, in increasing column order, with a 1
    /// in the free coordinate.
    pub fn kernel_basis(&self) -> RatMatrix {
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = RatMatrix::zero(self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k.set(fc, idx, Rat::one());
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, idx, -reduced.get(r, fc));
            }
        }
        k
    }

    /// Basis of the fiber product `{ (u, w) : f·u = g·w }` for maps `f`, `g`
    /// with a common target.
    ///
    /// Returned as the pair of blocks of a kernel basis of `[f | -g]`: the
    /// first matrix holds the `u` components, the second the `w` components,
    /// column `i` of each forming one basis vector of the fiber product.
    pub fn pullback_basis(f: &RatMatrix, g: &RatMatrix) -> Result<(RatMatrix, RatMatrix), Error> {
        if f.rows() != g.rows() {
            return Err(Error::shape(format!(
                "pullback: targets differ ({} vs {} rows)",
                f.rows(),
                g.rows()
            )));
        }
        let neg_g = -g;
        let k = f.hstack(&neg_g).kernel_basis();
        let u = RatMatrix::from_fn(f.cols(), k.cols(), |i, j| k.get(i, j).clone());
        let w = RatMatrix::from_fn(g.cols(), k.cols(), |i, j| k.get(f.cols() + i, j).clone());
        Ok((u, w))
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let r = self.rref();
        if r.pivots.len() == self.rows {
            Some(r.transform)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Predicate used by tests: pivot columns strictly increase, pivots are 1
    /// and alone in their column, zero rows are at the bottom.
    pub fn is_rref(&self) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero_row = false;
        for i in 0..self.rows {
            let lead = (0..self.cols).find(|&j| !self.get(i, j).is_zero());
            match lead {
                None => seen_zero_row = true,
                Some(j) => {
                    if seen_zero_row
                        || !self.get(i, j).is_one()
                        || last_pivot.is_some_and(|p| p >= j)
                        || (0..self.rows).any(|k| k != i && !self.get(k, j).is_zero())
                    {
                        return false;
                    }
                    last_pivot = Some(j);
                }
            }
        }
        true
    }

    /// Re-shape a degenerate (entryless) matrix to the dimensions its context
    /// expects. File formats cannot distinguish a 0×3 from a 0×0 matrix, so
    /// containers call this after deserialization.
    pub fn conform(self, rows: usize, cols: usize) -> Result<Self, Error> {
        if self.rows == rows && self.cols == cols {
            return Ok(self);
        }
        if self.entries.is_empty() && rows * cols == 0 {
            return Ok(RatMatrix::zero(rows, cols));
        }
        Err(Error::shape(format!(
            "expected a {}x{} matrix, found {}x{}",
            rows, cols, self.rows, self.cols
        )))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, factor: &Rat) {
        for j in 0..self.cols {
            self.entries[i * self.cols + j] *= factor;
        }
    }

    fn sub_scaled_row(&mut self, dst: usize, src: usize, factor: &Rat) {
        for j in 0..self.cols {
            let x = &self.entries[src * self.cols + j] * factor;
            self.entries[dst * self.cols + j] -= &x;
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product dimension mismatch ({}x{} * {}x{})",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        let cur = out.get(i, j) + &prod;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Rat>> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Rat>> = Vec::deserialize(deserializer)?;
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(RatMatrix::from_rows(rows))
    }
}

/// Add vectors entrywise.
pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Subtract vectors entrywise.
pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scale a vector.
pub fn vec_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Rat]) -> bool {
    a.iter().all(Rat::is_zero)
}

/// Concatenate vectors.
pub fn vec_concat(parts: &[&[Rat]]) -> Vec<Rat> {
    let mut out = Vec::new();
    for p in parts {
        out.extend_from_slice(p);
    }
    out
}

/// Dot product.
pub fn vec_dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
