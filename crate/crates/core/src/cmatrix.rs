//! Dense square complex matrices, the carrier for all finite-dimensional
//! operators in this crate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A square complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    m: DMatrix<Complex64>,
}

impl CMatrix {
    /// Wraps a square nalgebra matrix, rejecting non-square shapes and
    /// non-finite entries.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "expected square matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(Self { m })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            m: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: DMatrix::identity(dim, dim),
        }
    }

    pub fn scalar(value: Complex64) -> Self {
        let mut m = DMatrix::zeros(1, 1);
        m[(0, 0)] = value;
        Self { m }
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        Self {
            m: DMatrix::from_diagonal(&DVector::from_column_slice(values)),
        }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged row lengths".into()));
        }
        let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        Self::new(m)
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[&CMatrix]) -> Self {
        let dim: usize = blocks.iter().map(|b| b.dim()).sum();
        let mut m = DMatrix::zeros(dim, dim);
        let mut off = 0;
        for b in blocks {
            let d = b.dim();
            m.view_mut((off, off), (d, d)).copy_from(&b.m);
            off += d;
        }
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: Complex64) {
        self.m[(i, j)] = v;
    }

    pub fn adjoint(&self) -> CMatrix {
        Self {
            m: self.m.adjoint(),
        }
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        Self { m: &self.m * c }
    }

    pub fn is_zero_dim(&self) -> bool {
        self.dim() == 0
    }

    /// Frobenius norm.
    pub fn norm_fro(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Operator (spectral) norm via the largest eigenvalue of T*T.
    pub fn norm_op(&self) -> f64 {
        if self.dim() == 0 {
            return 0.0;
        }
        let gram = self.m.adjoint() * &self.m;
        let (eigs, _) = hermitian_eigen(&Self { m: gram });
        eigs.iter().fold(0.0f64, |a, &b| a.max(b)).max(0.0).sqrt()
    }

    /// Hermitian part (T + T*)/2.
    pub fn hermitian_part(&self) -> CMatrix {
        Self {
            m: (&self.m + self.m.adjoint()).scale(0.5),
        }
    }

    /// 2 Re T = T + T*.
    pub fn two_re(&self) -> CMatrix {
        Self {
            m: &self.m + self.m.adjoint(),
        }
    }

    pub fn try_inverse(&self) -> Option<CMatrix> {
        self.m.clone().try_inverse().map(|m| Self { m })
    }

    /// Reciprocal condition number estimate from the eigenvalues of the
    /// Gram matrix.
    pub fn rcond(&self) -> f64 {
        if self.dim() == 0 {
            return 1.0;
        }
        let gram = CMatrix {
            m: self.m.adjoint() * &self.m,
        };
        let (vals, _) = hermitian_eigen(&gram);
        let max = vals.last().copied().unwrap_or(0.0).max(0.0);
        let min = vals.first().copied().unwrap_or(0.0).max(0.0);
        if max == 0.0 {
            0.0
        } else {
            (min / max).sqrt()
        }
    }

    /// Orthonormal basis of the column range, keeping singular directions
    /// above `tol` (relative to the largest singular value, floored at 1).
    pub fn range_basis(&self, tol: f64) -> DMatrix<Complex64> {
        range_basis_of(&self.m, tol)
    }
}

/// Orthonormal basis of the column range of a (possibly rectangular)
/// matrix, via column-pivoted QR with the rank read off the R diagonal.
pub fn range_basis_of(m: &DMatrix<Complex64>, tol: f64) -> DMatrix<Complex64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let qr = m.clone().col_piv_qr();
    let r = qr.r();
    let k = r.nrows().min(r.ncols());
    let rmax = (0..k).map(|i| r[(i, i)].norm()).fold(0.0f64, f64::max);
    let cut = tol * rmax.max(1.0);
    let rank = (0..k).take_while(|&i| r[(i, i)].norm() > cut).count();
    let q = qr.q();
    let mut out = DMatrix::zeros(m.nrows(), rank);
    for j in 0..rank {
        out.set_column(j, &q.column(j));
    }
    out
}

/// Eigendecomposition of the Hermitian part of `a`: returns real eigenvalues
/// (ascending) with a unitary eigenvector matrix.
///
/// Cyclic complex Jacobi. Quadratically convergent and accurate to a few
/// ulps, which the defect-operator and fundamental-equation contracts rely
/// on; desk-scale dimensions keep the O(n^3)-per-sweep cost irrelevant.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = a.dim();
    let mut h = (a.m.clone() + a.m.adjoint()).scale(0.5);
    let mut v: DMatrix<Complex64> = DMatrix::identity(n, n);
    if n > 1 {
        let norm = h.norm().max(1.0);
        let tol = 1e-15 * norm;
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let gamma = h[(p, q)];
                    let gn = gamma.norm();
                    off = off.max(gn);
                    if gn <= tol {
                        continue;
                    }
                    let alpha = h[(p, p)].re;
                    let beta = h[(q, q)].re;
                    let phase = gamma / gn;
                    let tau = (beta - alpha) / (2.0 * gn);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Unitary plane rotation U = [[phase*c, phase*s], [-s, c]]
                    // applied as H <- U* H U, V <- V U.
                    let up = phase * c;
                    let uq = phase * s;
                    for k in 0..n {
                        let hp = h[(k, p)];
                        let hq = h[(k, q)];
                        h[(k, p)] = hp * up - hq * s;
                        h[(k, q)] = hp * uq + hq * c;
                    }
                    for k in 0..n {
                        let hp = h[(p, k)];
                        let hq = h[(q, k)];
                        h[(p, k)] = hp * up.conj() - hq * s;
                        h[(q, k)] = hp * uq.conj() + hq * c;
                    }
                    for k in 0..n {
                        let vp = v[(k, p)];
                        let vq = v[(k, q)];
                        v[(k, p)] = vp * up - vq * s;
                        v[(k, q)] = vp * uq + vq * c;
                    }
                    // Keep the diagonal exactly real against rounding drift.
                    h[(p, p)] = Complex64::new(h[(p, p)].re, 0.0);
                    h[(q, q)] = Complex64::new(h[(q, q)].re, 0.0);
                }
            }
            if off <= tol {
                break;
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| h[(i, i)].re.partial_cmp(&h[(j, j)].re).unwrap());
    let vals: Vec<f64> = idx.iter().map(|&i| h[(i, i)].re).collect();
    let mut vecs = DMatrix::zeros(n, n);
    for (out, &i) in idx.iter().enumerate() {
        vecs.set_column(out, &v.column(i));
    }
    (vals, vecs)
}

/// Smallest eigenvalue of the Hermitian part of `a`.
pub fn min_eig_hermitian(a: &CMatrix) -> f64 {
    if a.dim() == 0 {
        return 0.0;
    }
    let (vals, _) = hermitian_eigen(a);
    vals[0]
}

impl std::ops::Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        CMatrix {
            m: &self.m + &rhs.m,
        }
    }
}

impl std::ops::Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        CMatrix {
            m: &self.m - &rhs.m,
        }
    }
}

impl std::ops::Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        CMatrix {
            m: &self.m * &rhs.m,
        }
    }
}

impl std::ops::Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix { m: -self.m.clone() }
    }
}

/// JSON form: row-major nested arrays of `[re, im]` pairs.
impl Serialize for CMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| [self.m[(i, j)].re, self.m[(i, j)].im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("matrix rows must form a square"));
        }
        let m = DMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1]));
        CMatrix::new(m).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        assert!(CMatrix::new(DMatrix::zeros(2, 3)).is_err());
        let mut m = DMatrix::zeros(2, 2);
        m[(0, 1)] = c(f64::NAN, 0.0);
        assert!(CMatrix::new(m).is_err());
    }

    #[test]
    fn operator_norm_matches_known_values() {
        // Nilpotent [[0, 2], [0, 0]] has norm 2.
        let t = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(2.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert!((t.norm_op() - 2.0).abs() < 1e-12);
        assert!((CMatrix::identity(3).norm_op() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let a = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.25)],
            vec![c(0.5, -0.25), c(-2.0, 0.0)],
        ])
        .unwrap();
        let (vals, vecs) = hermitian_eigen(&a);
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            2,
            vals.iter().map(|&v| Complex64::new(v, 0.0)),
        ));
        let rebuilt = &vecs * d * vecs.adjoint();
        assert!((rebuilt - a.matrix()).norm() < 1e-12);
        assert!(vals[0] <= vals[1]);
    }

    #[test]
    fn serde_round_trips() {
        let a = CMatrix::from_rows(&[vec![c(1.0, -2.0), c(0.0, 3.0)], vec![c(4.5, 0.0), c(0.0, 0.0)]]).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        let back: CMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }
}
