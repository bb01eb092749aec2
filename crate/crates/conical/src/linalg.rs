//! Exact vectors and matrices over a [`FieldContext`], plus fraction-free
//! routines for purely rational matrices.
//!
//! Field-context matrices use naive Gaussian elimination (dimensions are at
//! most 4 on every symmetry path, so coefficient growth is irrelevant);
//! rational matrices of unbounded size go through fraction-free Bareiss
//! elimination to keep intermediate entries integral.

use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};

use crate::algebraic::{AlgebraicNumber, FieldContext, Rat};
use crate::error::Error;
use crate::Result;

/// Column vector of field elements.
pub type Vector = Vec<AlgebraicNumber>;

/// Dense row-major matrix over a fixed field context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: Arc<FieldContext>,
    rows: usize,
    cols: usize,
    data: Vec<AlgebraicNumber>,
}

impl Matrix {
    pub fn from_rows(ctx: &Arc<FieldContext>, rows: Vec<Vec<AlgebraicNumber>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidCone("empty matrix".into()));
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: rows.iter().map(|r| r.len()).max().unwrap() });
        }
        Ok(Matrix {
            ctx: Arc::clone(ctx),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(ctx: &Arc<FieldContext>, rows: &[Vec<i64>]) -> Self {
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| AlgebraicNumber::from_int(ctx, v)))
            .collect();
        Matrix {
            ctx: Arc::clone(ctx),
            rows: rows.len(),
            cols: rows[0].len(),
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(ctx: &Arc<FieldContext>, cols: &[Vector]) -> Result<Self> {
        let n = cols.len();
        if n == 0 || cols.iter().any(|c| c.len() != cols[0].len()) {
            return Err(Error::InvalidCone("ragged column set".into()));
        }
        let m = cols[0].len();
        let mut data = Vec::with_capacity(m * n);
        for i in 0..m {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Ok(Matrix { ctx: Arc::clone(ctx), rows: m, cols: n, data })
    }

    pub fn identity(ctx: &Arc<FieldContext>, n: usize) -> Self {
        let mut m = Matrix {
            ctx: Arc::clone(ctx),
            rows: n,
            cols: n,
            data: vec![AlgebraicNumber::zero(ctx); n * n],
        };
        for i in 0..n {
            *m.at_mut(i, i) = AlgebraicNumber::one(ctx);
        }
        m
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &AlgebraicNumber {
        &self.data[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut AlgebraicNumber {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[AlgebraicNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            ctx: Arc::clone(&self.ctx),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = AlgebraicNumber::zero(&self.ctx);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[AlgebraicNumber]) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = AlgebraicNumber::zero(&self.ctx);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(&v[k]));
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Matrix {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: &AlgebraicNumber) -> Self {
        Matrix {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    /// Determinant. Purely rational matrices route through fraction-free
    /// Bareiss; general field entries use Gaussian elimination.
    pub fn det(&self) -> Result<AlgebraicNumber> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        if let Some(rm) = self.to_rat_matrix() {
            return Ok(AlgebraicNumber::from_rat(&self.ctx, rat_det(&rm)));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = AlgebraicNumber::one(&self.ctx);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !m.at(i, col).is_zero());
            let Some(p) = pivot else {
                return Ok(AlgebraicNumber::zero(&self.ctx));
            };
            if p != col {
                for j in 0..n {
                    let a = m.at(p, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(col, j) = a;
                }
                det = det.neg();
            }
            let pv = m.at(col, col).clone();
            det = det.mul(&pv);
            for i in col + 1..n {
                let f = m.at(i, col).div(&pv)?;
                for j in col..n {
                    let v = m.at(i, j).sub(&f.mul(m.at(col, j)));
                    *m.at_mut(i, j) = v;
                }
            }
        }
        Ok(det)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(&self.ctx, n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !m.at(i, col).is_zero()).ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(pivot, j) = b;
                    *m.at_mut(col, j) = a;
                    let a = inv.at(pivot, j).clone();
                    let b = inv.at(col, j).clone();
                    *inv.at_mut(pivot, j) = b;
                    *inv.at_mut(col, j) = a;
                }
            }
            let pv = m.at(col, col).clone();
            let pv_inv = pv.inv()?;
            for j in 0..n {
                *m.at_mut(col, j) = m.at(col, j).mul(&pv_inv);
                *inv.at_mut(col, j) = inv.at(col, j).mul(&pv_inv);
            }
            for i in 0..n {
                if i == col || m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col).clone();
                for j in 0..n {
                    let v = m.at(i, j).sub(&f.mul(m.at(col, j)));
                    *m.at_mut(i, j) = v;
                    let v = inv.at(i, j).sub(&f.mul(inv.at(col, j)));
                    *inv.at_mut(i, j) = v;
                }
            }
        }
        Ok(inv)
    }

    pub fn solve(&self, b: &[AlgebraicNumber]) -> Result<Vector> {
        self.inverse()?.mul_vec(b)
    }

    /// Monic characteristic polynomial by Faddeev–LeVerrier, lowest degree
    /// first. Restricted to n <= 4.
    pub fn charpoly(&self) -> Result<Vec<AlgebraicNumber>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        if n > 4 {
            return Err(Error::DimensionTooLarge(n, 4));
        }
        // M_0 = I, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
        let mut coeffs = vec![AlgebraicNumber::zero(&self.ctx); n + 1];
        coeffs[n] = AlgebraicNumber::one(&self.ctx);
        let mut m = Matrix::identity(&self.ctx, n);
        for k in 1..=n {
            let am = self.mul(&m)?;
            let tr = (0..n).fold(AlgebraicNumber::zero(&self.ctx), |acc, i| acc.add(am.at(i, i)));
            let c = tr.scale(&Rat::new(BigInt::from(-1), BigInt::from(k)));
            coeffs[n - k] = c.clone();
            m = am;
            for i in 0..n {
                *m.at_mut(i, i) = m.at(i, i).add(&c);
            }
        }
        Ok(coeffs)
    }

    /// True when every entry lies in Q.
    pub fn is_rational(&self) -> bool {
        self.data.iter().all(|a| a.is_rational())
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|a| a.is_integer())
    }

    pub fn to_rat_matrix(&self) -> Option<Vec<Vec<Rat>>> {
        if !self.is_rational() {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|i| self.row(i).iter().map(|a| a.to_rat().unwrap()).collect())
                .collect(),
        )
    }

    /// Entrywise Galois conjugation (quadratic contexts).
    pub fn galois_conjugate(&self) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|a| a.galois_conjugate())
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ctx: Arc::clone(&self.ctx),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// Integer entries and determinant of absolute value 1.
pub fn is_unimodular(m: &Matrix) -> bool {
    if !m.is_square() || !m.is_integer() {
        return false;
    }
    match m.det() {
        Ok(d) => d
            .to_rat()
            .map(|r| r.numer().abs().is_one() && r.denom().is_one())
            .unwrap_or(false),
        Err(_) => false,
    }
}

/// Exact check that M u = lambda u.
pub fn verify_eigen(m: &Matrix, u: &[AlgebraicNumber], lambda: &AlgebraicNumber) -> bool {
    match m.mul_vec(u) {
        Ok(mu) => mu
            .iter()
            .zip(u)
            .all(|(a, b)| a.sub(&b.mul(lambda)).is_zero()),
        Err(_) => false,
    }
}

/// Assembles A = U Diag(lambda) U^{-1} and verifies each eigen relation.
pub fn matrix_from_eigenbasis(u: &Matrix, lambda: &[AlgebraicNumber]) -> Result<Matrix> {
    if !u.is_square() || u.nrows() != lambda.len() {
        return Err(Error::DimensionMismatch { expected: u.nrows(), got: lambda.len() });
    }
    let n = u.nrows();
    let ctx = u.context();
    let mut diag = Matrix::identity(ctx, n);
    for (i, l) in lambda.iter().enumerate() {
        *diag.at_mut(i, i) = l.clone();
    }
    let a = u.mul(&diag)?.mul(&u.inverse()?)?;
    for i in 0..n {
        let col = u.column(i);
        if !verify_eigen(&a, &col, &lambda[i]) {
            return Err(Error::InvalidContext("eigen relation failed to verify".into()));
        }
    }
    Ok(a)
}

// ---------------------------------------------------------------------------
// Fraction-free routines on rational matrices of unbounded size.

/// Determinant via fraction-free Bareiss on the integerized matrix.
pub fn rat_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "rat_det requires a square matrix");
    // Clear denominators row by row, tracking the scale factor.
    let mut scale = Rat::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in m {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, r| num::integer::lcm(acc, r.denom().clone()));
        scale *= Rat::new(BigInt::one(), lcm.clone());
        a.push(row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect());
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Rat::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det_int = a[n - 1][n - 1].clone();
    let det = Rat::from_integer(det_int) * scale;
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Reduced row-echelon form in place; returns pivot column indices.
pub fn rat_rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pv = m[r][c].clone();
        for j in c..cols {
            let v = &m[r][j] / &pv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let v = &m[i][j] - &f * &m[r][j];
                m[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace of a rational matrix.
pub fn rat_nullspace(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    let mut work: Vec<Vec<Rat>> = m.to_vec();
    let pivots = rat_rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -work[row][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves M x = b over the rationals; None when inconsistent, the
/// particular solution with free variables zero otherwise.
pub fn rat_solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = m.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return Some(vec![]);
    }
    let cols = m[0].len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rat_rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols].clone();
    }
    Some(x)
}
