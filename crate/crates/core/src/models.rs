//! Constructive builders: unitary tuples from block unitaries with
//! commuting normal entries, truncated Toeplitz models for pure isometries,
//! coefficient validation and the Wold decomposition.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{range_basis_of, CMatrix};
use crate::linalg::{golden_max, ResidualCheck, ResidualReport};
use crate::tuples::{ClassificationReport, EdgeBasis, Tuple5, Tuple7};
use crate::{Error, Result, ToleranceConfig};

/// 3x3 grid of commuting normal blocks assembling to a unitary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockUnitary3 {
    pub blocks: Vec<Vec<CMatrix>>,
}

impl BlockUnitary3 {
    pub fn new(blocks: Vec<Vec<CMatrix>>) -> Result<Self> {
        if blocks.len() != 3 || blocks.iter().any(|r| r.len() != 3) {
            return Err(Error::InvalidBlockUnitary("expected a 3x3 block grid".into()));
        }
        let m = blocks[0][0].dim();
        if blocks.iter().flatten().any(|b| b.dim() != m) {
            return Err(Error::InvalidBlockUnitary(
                "blocks must share a dimension".into(),
            ));
        }
        Ok(Self { blocks })
    }

    pub fn block_dim(&self) -> usize {
        self.blocks[0][0].dim()
    }

    pub fn assemble(&self) -> CMatrix {
        let m = self.block_dim();
        let mut out = DMatrix::zeros(3 * m, 3 * m);
        for i in 0..3 {
            for j in 0..3 {
                out.view_mut((i * m, j * m), (m, m))
                    .copy_from(self.blocks[i][j].matrix());
            }
        }
        CMatrix::new(out).expect("assembled matrix is finite")
    }

    /// Unitarity of the assembled matrix, pairwise commutation and
    /// normality of the blocks.
    pub fn validate(&self, cfg: &ToleranceConfig) -> ResidualReport {
        let mut report = ResidualReport::default();
        let u = self.assemble();
        let id = CMatrix::identity(u.dim());
        report.push(ResidualCheck::new(
            "unitary",
            (&(&u.adjoint() * &u) - &id)
                .norm_op()
                .max((&(&u * &u.adjoint()) - &id).norm_op()),
            cfg.residual_tol,
        ));
        let flat: Vec<&CMatrix> = self.blocks.iter().flatten().collect();
        let mut comm = 0.0f64;
        for i in 0..flat.len() {
            for j in (i + 1)..flat.len() {
                comm = comm.max((&(flat[i] * flat[j]) - &(flat[j] * flat[i])).norm_op());
            }
        }
        report.push(ResidualCheck::new("blocks_commute", comm, cfg.commute_tol));
        let mut normal = 0.0f64;
        for b in &flat {
            let res = (&(&b.adjoint() * *b) - &(*b * &b.adjoint())).norm_op();
            normal = normal.max(res);
        }
        report.push(ResidualCheck::new("blocks_normal", normal, cfg.residual_tol));
        report
    }
}

fn minor(u: &BlockUnitary3, i: usize, j: usize) -> CMatrix {
    // 2x2 block minor over rows/cols {i, j} (0-based).
    let b = &u.blocks;
    &(&b[i][i] * &b[j][j]) - &(&b[i][j] * &b[j][i])
}

fn block_det(u: &BlockUnitary3) -> CMatrix {
    let b = &u.blocks;
    let m23 = &(&b[1][1] * &b[2][2]) - &(&b[1][2] * &b[2][1]);
    let a = &(&b[1][0] * &b[2][2]) - &(&b[2][0] * &b[1][2]);
    let c = &(&b[1][0] * &b[2][1]) - &(&b[2][0] * &b[1][1]);
    &(&(&b[0][0] * &m23) - &(&b[0][1] * &a)) + &(&b[0][2] * &c)
}

/// Seven-coordinate unitary tuple from the block minors of a valid block
/// unitary.
pub fn build_gamma7_unitary(u: &BlockUnitary3, cfg: &ToleranceConfig) -> Result<Tuple7> {
    let validation = u.validate(cfg);
    if !validation.all_pass() {
        return Err(Error::InvalidBlockUnitary(format!(
            "validation failed, worst residual {}",
            validation.worst()
        )));
    }
    let b = &u.blocks;
    Tuple7::new(vec![
        b[0][0].clone(),
        b[1][1].clone(),
        minor(u, 0, 1),
        b[2][2].clone(),
        minor(u, 0, 2),
        minor(u, 1, 2),
        block_det(u),
    ])
}

/// Five-coordinate unitary tuple from the same block data.
pub fn build_gamma5_unitary(u: &BlockUnitary3, cfg: &ToleranceConfig) -> Result<Tuple5> {
    let validation = u.validate(cfg);
    if !validation.all_pass() {
        return Err(Error::InvalidBlockUnitary(format!(
            "validation failed, worst residual {}",
            validation.worst()
        )));
    }
    let b = &u.blocks;
    Tuple5::new(vec![
        b[0][0].clone(),
        &minor(u, 0, 1) + &minor(u, 0, 2),
        block_det(u),
        &b[1][1] + &b[2][2],
        minor(u, 1, 2),
    ])
}

/// Coefficients of the seven-coordinate pure-isometry model: six operators
/// on the coefficient space E, paired as (i, 7-i) in the symbols
/// A_i + A*_{7-i} z.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsometryModelCoeffs7 {
    pub e_dim: usize,
    pub a: Vec<CMatrix>,
}

impl IsometryModelCoeffs7 {
    pub fn new(a: Vec<CMatrix>) -> Result<Self> {
        if a.len() != 6 {
            return Err(Error::InvalidCoefficients("expected six coefficients".into()));
        }
        let e_dim = a[0].dim();
        if a.iter().any(|m| m.dim() != e_dim) {
            return Err(Error::InvalidCoefficients(
                "coefficients must share a dimension".into(),
            ));
        }
        Ok(Self { e_dim, a })
    }
}

/// Coefficients of the five-coordinate model: symbols B1 + B2* z,
/// C1 + C2* z and their swaps.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsometryModelCoeffs5 {
    pub f_dim: usize,
    pub b1: CMatrix,
    pub b2: CMatrix,
    pub c1: CMatrix,
    pub c2: CMatrix,
}

impl IsometryModelCoeffs5 {
    pub fn new(b1: CMatrix, b2: CMatrix, c1: CMatrix, c2: CMatrix) -> Result<Self> {
        let f_dim = b1.dim();
        if [&b2, &c1, &c2].iter().any(|m| m.dim() != f_dim) {
            return Err(Error::InvalidCoefficients(
                "coefficients must share a dimension".into(),
            ));
        }
        Ok(Self { f_dim, b1, b2, c1, c2 })
    }
}

/// sup over the torus of the pencil norm ||a + b z||, with the witness z.
pub fn pencil_sup_norm(a: &CMatrix, b: &CMatrix, cfg: &ToleranceConfig) -> (f64, Complex64) {
    let f = |theta: f64| (a + &b.scale(Complex64::from_polar(1.0, theta))).norm_op();
    let n = 64usize;
    let step = std::f64::consts::TAU / n as f64;
    let (best, _) = crate::par::max_over(n, |k| f(k as f64 * step));
    let theta = best as f64 * step;
    let sup = golden_max(f, theta - step, theta + step, cfg.refine_iters);
    (sup.max(f(theta)), Complex64::from_polar(1.0, theta))
}

fn comm(x: &CMatrix, y: &CMatrix) -> CMatrix {
    &(x * y) - &(y * x)
}

/// Checks the norm caps and commutator identities of the seven-coordinate
/// model coefficients.
pub fn validate_model_coeffs7(
    coeffs: &IsometryModelCoeffs7,
    cfg: &ToleranceConfig,
) -> ClassificationReport {
    let mut checks = ResidualReport::default();
    let a = &coeffs.a;
    for i in 0..6 {
        let (sup, z) = pencil_sup_norm(&a[i], &a[5 - i].adjoint(), cfg);
        checks.push(ResidualCheck::new(
            format!("pencil_norm[{}] at ({:.3}, {:.3})", i + 1, z.re, z.im),
            (sup - 1.0).max(0.0),
            cfg.rank_tol,
        ));
    }
    let mut worst_comm = 0.0f64;
    let mut worst_mixed = 0.0f64;
    for i in 0..6 {
        for j in 0..6 {
            if i < j {
                worst_comm = worst_comm.max(comm(&a[i], &a[j]).norm_op());
            }
            let lhs = comm(&a[i], &a[5 - j].adjoint());
            let rhs = comm(&a[j], &a[5 - i].adjoint());
            worst_mixed = worst_mixed.max((&lhs - &rhs).norm_op());
        }
    }
    checks.push(ResidualCheck::new("commutators", worst_comm, cfg.residual_tol));
    checks.push(ResidualCheck::new(
        "mixed_commutators",
        worst_mixed,
        cfg.residual_tol,
    ));
    ClassificationReport {
        verdict: checks.all_pass(),
        checks,
        spectrum_check: None,
    }
}

/// Checks the norm caps and commutator identities of the five-coordinate
/// model coefficients.
pub fn validate_model_coeffs5(
    coeffs: &IsometryModelCoeffs5,
    cfg: &ToleranceConfig,
) -> ClassificationReport {
    let mut checks = ResidualReport::default();
    let (b1, b2, c1, c2) = (&coeffs.b1, &coeffs.b2, &coeffs.c1, &coeffs.c2);
    for (name, x, y, cap) in [
        ("pencil_norm[B1 + B2* z]", b1, b2, 1.0),
        ("pencil_norm[B2 + B1* z]", b2, b1, 1.0),
        ("pencil_norm[C1 + C2* z]", c1, c2, 2.0),
        ("pencil_norm[C2 + C1* z]", c2, c1, 2.0),
    ] {
        let (sup, z) = pencil_sup_norm(x, &y.adjoint(), cfg);
        checks.push(ResidualCheck::new(
            format!("{name} at ({:.3}, {:.3})", z.re, z.im),
            (sup - cap).max(0.0),
            cfg.rank_tol,
        ));
    }
    let pairs: [(&str, CMatrix); 10] = [
        ("[B1,B2]", comm(b1, b2)),
        ("[B1,B1*]-[B2,B2*]", &comm(b1, &b1.adjoint()) - &comm(b2, &b2.adjoint())),
        ("[B1,C1]", comm(b1, c1)),
        ("[B1,C2*]-[C1,B2*]", &comm(b1, &c2.adjoint()) - &comm(c1, &b2.adjoint())),
        ("[C2,B2]", comm(c2, b2)),
        ("[B1,C2]", comm(b1, c2)),
        ("[B1,C1*]-[C2,B2*]", &comm(b1, &c1.adjoint()) - &comm(c2, &b2.adjoint())),
        ("[C1,B2]", comm(c1, b2)),
        ("[C1,C2]", comm(c1, c2)),
        ("[C1,C1*]-[C2,C2*]", &comm(c1, &c1.adjoint()) - &comm(c2, &c2.adjoint())),
    ];
    for (name, value) in pairs {
        checks.push(ResidualCheck::new(name, value.norm_op(), cfg.residual_tol));
    }
    ClassificationReport {
        verdict: checks.all_pass(),
        checks,
        spectrum_check: None,
    }
}

/// Lower-bidiagonal block Toeplitz matrix of the symbol diag + sub * z on
/// n coefficient blocks.
pub fn block_toeplitz(diag: &CMatrix, sub: &CMatrix, n: usize) -> CMatrix {
    let e = diag.dim();
    let mut out = DMatrix::zeros(e * n, e * n);
    for k in 0..n {
        out.view_mut((k * e, k * e), (e, e)).copy_from(diag.matrix());
        if k + 1 < n {
            out.view_mut(((k + 1) * e, k * e), (e, e)).copy_from(sub.matrix());
        }
    }
    CMatrix::new(out).expect("toeplitz block is finite")
}

/// Block coordinate shift on n blocks of size e.
pub fn block_shift(e: usize, n: usize) -> CMatrix {
    let id = CMatrix::identity(e);
    block_toeplitz(&CMatrix::zeros(e), &id, n)
}

fn edge_basis(e: usize, n: usize) -> DMatrix<Complex64> {
    let mut basis = DMatrix::zeros(e * n, e);
    for k in 0..e {
        basis[((n - 1) * e + k, k)] = Complex64::new(1.0, 0.0);
    }
    basis
}

/// Truncated Toeplitz realization of the seven-coordinate pure isometry:
/// the first six operators carry the symbols A_i + A*_{7-i} z, the last is
/// the block shift; the top coefficient block is marked as the edge.
pub fn build_pure_isometry7(
    coeffs: &IsometryModelCoeffs7,
    n_blocks: usize,
    cfg: &ToleranceConfig,
) -> Result<Tuple7> {
    if n_blocks < 2 {
        return Err(Error::InvalidCoefficients("need at least two blocks".into()));
    }
    let validation = validate_model_coeffs7(coeffs, cfg);
    if !validation.verdict {
        return Err(Error::InvalidCoefficients(format!(
            "coefficient validation failed, worst residual {}",
            validation.checks.worst()
        )));
    }
    let e = coeffs.e_dim;
    let mut ops: Vec<CMatrix> = (0..6)
        .map(|i| block_toeplitz(&coeffs.a[i], &coeffs.a[5 - i].adjoint(), n_blocks))
        .collect();
    ops.push(block_shift(e, n_blocks));
    Ok(Tuple7::new(ops)?.with_edge(edge_basis(e, n_blocks)))
}

/// Five-coordinate analog with the shift in the middle slot.
pub fn build_pure_isometry5(
    coeffs: &IsometryModelCoeffs5,
    n_blocks: usize,
    cfg: &ToleranceConfig,
) -> Result<Tuple5> {
    if n_blocks < 2 {
        return Err(Error::InvalidCoefficients("need at least two blocks".into()));
    }
    let validation = validate_model_coeffs5(coeffs, cfg);
    if !validation.verdict {
        return Err(Error::InvalidCoefficients(format!(
            "coefficient validation failed, worst residual {}",
            validation.checks.worst()
        )));
    }
    let e = coeffs.f_dim;
    let ops = vec![
        block_toeplitz(&coeffs.b1, &coeffs.b2.adjoint(), n_blocks),
        block_toeplitz(&coeffs.c1, &coeffs.c2.adjoint(), n_blocks),
        block_shift(e, n_blocks),
        block_toeplitz(&coeffs.c2, &coeffs.c1.adjoint(), n_blocks),
        block_toeplitz(&coeffs.b2, &coeffs.b1.adjoint(), n_blocks),
    ];
    Ok(Tuple5::new(ops)?.with_edge(edge_basis(e, n_blocks)))
}

/// Orthogonal splitting into the unitary part (the intersection of the
/// iterated ranges of the designated isometry) and its complement.
#[derive(Debug, Clone)]
pub struct WoldDecomposition<T> {
    pub unitary_basis: EdgeBasis,
    pub pure_basis: EdgeBasis,
    pub restricted_unitary: T,
    pub restricted_pure: T,
    pub reducing_residual: f64,
}

impl<T> WoldDecomposition<T> {
    pub fn unitary_dim(&self) -> usize {
        self.unitary_basis.0.ncols()
    }

    pub fn pure_dim(&self) -> usize {
        self.pure_basis.0.ncols()
    }
}

fn wold_core(
    ops: &[CMatrix],
    iso_index: usize,
    cfg: &ToleranceConfig,
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>, f64)> {
    let v = &ops[iso_index];
    let dim = v.dim();
    let mut basis: DMatrix<Complex64> = DMatrix::identity(dim, dim);
    for _ in 0..=dim {
        let image = v.matrix() * &basis;
        let next = range_basis_of(&image, cfg.rank_tol);
        if next.ncols() == basis.ncols() {
            basis = next;
            break;
        }
        basis = next;
        if basis.ncols() == 0 {
            break;
        }
    }
    let k = basis.ncols();
    let p1 = &basis * basis.adjoint();
    let q1 = DMatrix::<Complex64>::identity(dim, dim) - &p1;
    let complement = range_basis_of(&q1, 0.5);
    if complement.ncols() != dim - k {
        return Err(Error::NotReducing {
            residual: f64::INFINITY,
        });
    }
    let mut residual = 0.0f64;
    for op in ops {
        let cross1 = (&q1 * op.matrix() * &p1).norm();
        let cross2 = (&p1 * op.matrix() * &q1).norm();
        residual = residual.max(cross1.max(cross2));
    }
    if residual > cfg.residual_tol * 10.0 {
        return Err(Error::NotReducing { residual });
    }
    Ok((basis, complement, residual))
}

fn restrict(ops: &[CMatrix], basis: &DMatrix<Complex64>) -> Result<Vec<CMatrix>> {
    ops.iter()
        .map(|op| CMatrix::new(basis.adjoint() * op.matrix() * basis))
        .collect()
}

fn compress_edge(
    edge: Option<&EdgeBasis>,
    basis: &DMatrix<Complex64>,
    rank_tol: f64,
) -> Option<EdgeBasis> {
    let edge = edge?;
    let projected = basis.adjoint() * &edge.0;
    let reduced = range_basis_of(&projected, rank_tol.max(0.5));
    if reduced.ncols() == 0 {
        None
    } else {
        Some(EdgeBasis(reduced))
    }
}

/// Wold decomposition of a seven-coordinate isometry candidate (the last
/// coordinate is the designated isometry).
pub fn wold_decompose7(tuple: &Tuple7, cfg: &ToleranceConfig) -> Result<WoldDecomposition<Tuple7>> {
    let comm = tuple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let (b1, b2, residual) = wold_core(&tuple.operators, 6, cfg)?;
    let mut unitary = Tuple7::new(restrict(&tuple.operators, &b1)?)?;
    unitary.edge_mask = compress_edge(tuple.edge_mask.as_ref(), &b1, cfg.rank_tol);
    let mut pure = Tuple7::new(restrict(&tuple.operators, &b2)?)?;
    pure.edge_mask = compress_edge(tuple.edge_mask.as_ref(), &b2, cfg.rank_tol);
    Ok(WoldDecomposition {
        unitary_basis: EdgeBasis(b1),
        pure_basis: EdgeBasis(b2),
        restricted_unitary: unitary,
        restricted_pure: pure,
        reducing_residual: residual,
    })
}

/// Wold decomposition of a five-coordinate isometry candidate (the middle
/// coordinate is the designated isometry).
pub fn wold_decompose5(tuple: &Tuple5, cfg: &ToleranceConfig) -> Result<WoldDecomposition<Tuple5>> {
    let comm = tuple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let (b1, b2, residual) = wold_core(&tuple.operators, 2, cfg)?;
    let mut unitary = Tuple5::new(restrict(&tuple.operators, &b1)?)?;
    unitary.edge_mask = compress_edge(tuple.edge_mask.as_ref(), &b1, cfg.rank_tol);
    let mut pure = Tuple5::new(restrict(&tuple.operators, &b2)?)?;
    pure.edge_mask = compress_edge(tuple.edge_mask.as_ref(), &b2, cfg.rank_tol);
    Ok(WoldDecomposition {
        unitary_basis: EdgeBasis(b1),
        pure_basis: EdgeBasis(b2),
        restricted_unitary: unitary,
        restricted_pure: pure,
        reducing_residual: residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::{classify_tuple5, classify_tuple7, ClassifyKind};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn scalar_grid(values: [[f64; 3]; 3]) -> BlockUnitary3 {
        BlockUnitary3::new(
            values
                .iter()
                .map(|row| row.iter().map(|&v| CMatrix::scalar(c(v, 0.0))).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_block_unitary_builds_all_ones() {
        let cfg = cfg();
        let u = scalar_grid([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        let t = build_gamma7_unitary(&u, &cfg).unwrap();
        for op in &t.operators {
            assert!((op.entry(0, 0) - c(1.0, 0.0)).norm() < 1e-14);
        }
        let t5 = build_gamma5_unitary(&u, &cfg).unwrap();
        let expected = [1.0, 2.0, 1.0, 2.0, 1.0];
        for (op, e) in t5.operators.iter().zip(expected) {
            assert!((op.entry(0, 0) - c(e, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn permutation_block_unitary_example() {
        let cfg = cfg();
        let u = scalar_grid([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let t = build_gamma7_unitary(&u, &cfg).unwrap();
        let got: Vec<Complex64> = t.operators.iter().map(|m| m.entry(0, 0)).collect();
        let want = [0.0, 0.0, -1.0, 1.0, 0.0, 0.0, -1.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - c(w, 0.0)).norm() < 1e-14);
        }
        // x3 = conj(x4) x7 holds.
        assert!((got[2] - got[3].conj() * got[6]).norm() < 1e-14);
        let report = classify_tuple7(ClassifyKind::Unitary, &t, true, &cfg).unwrap();
        assert!(report.verdict, "checks: {:?}", report.checks);
    }

    #[test]
    fn pointwise_diagonal_blocks_match_scalar_construction() {
        let cfg = cfg();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        // Two scalar unitaries housed in diagonal blocks.
        let u1 = crate::random::haar_unitary(3, &mut rng);
        let u2 = crate::random::haar_unitary(3, &mut rng);
        let blocks: Vec<Vec<CMatrix>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| CMatrix::diagonal(&[u1.entry(i, j), u2.entry(i, j)]))
                    .collect()
            })
            .collect();
        let u = BlockUnitary3::new(blocks).unwrap();
        let t = build_gamma7_unitary(&u, &cfg).unwrap();
        let report = classify_tuple7(ClassifyKind::Unitary, &t, true, &cfg).unwrap();
        assert!(report.verdict, "checks: {:?}", report.checks);
        // Direct-sum oracle: entry (0,0) of each operator equals the image
        // of u1, entry (1,1) that of u2.
        let p1 = crate::mu::pi_point7(&u1).unwrap();
        for (op, want) in t.operators.iter().zip(p1.coords.iter()) {
            assert!((op.entry(0, 0) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn coefficient_validation_examples() {
        let cfg = cfg();
        let make = |a1: f64, a6: f64| {
            let mut a = vec![CMatrix::zeros(1); 6];
            a[0] = CMatrix::scalar(c(a1, 0.0));
            a[5] = CMatrix::scalar(c(a6, 0.0));
            IsometryModelCoeffs7::new(a).unwrap()
        };
        assert!(validate_model_coeffs7(&make(0.5, 0.5), &cfg).verdict);
        assert!(!validate_model_coeffs7(&make(0.8, 0.8), &cfg).verdict);
        assert!(validate_model_coeffs7(&make(0.0, 0.0), &cfg).verdict);
    }

    #[test]
    fn zero_coefficient_model_is_the_shift() {
        let cfg = cfg();
        let coeffs = IsometryModelCoeffs7::new(vec![CMatrix::zeros(1); 6]).unwrap();
        let t = build_pure_isometry7(&coeffs, 8, &cfg).unwrap();
        let report = classify_tuple7(ClassifyKind::Isometry, &t, false, &cfg).unwrap();
        assert!(report.verdict, "checks: {:?}", report.checks);
        // V7 is a genuine shift on 8 blocks.
        assert!((t.op(6).entry(1, 0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bidiagonal_model_relations_hold_off_the_edge() {
        let cfg = cfg();
        let mut a = vec![CMatrix::zeros(1); 6];
        a[0] = CMatrix::scalar(c(0.5, 0.0));
        a[5] = CMatrix::scalar(c(0.5, 0.0));
        let coeffs = IsometryModelCoeffs7::new(a).unwrap();
        let t = build_pure_isometry7(&coeffs, 32, &cfg).unwrap();
        let report = classify_tuple7(ClassifyKind::Isometry, &t, false, &cfg).unwrap();
        assert!(report.verdict, "checks: {:?}", report.checks);
        // Without the edge compression the top block breaks the relation.
        let mut bare = t.clone();
        bare.edge_mask = None;
        let report = classify_tuple7(ClassifyKind::Isometry, &bare, false, &cfg).unwrap();
        assert!(!report.verdict);
    }

    #[test]
    fn five_coordinate_model_passes() {
        let cfg = cfg();
        let coeffs = IsometryModelCoeffs5::new(
            CMatrix::zeros(1),
            CMatrix::zeros(1),
            CMatrix::scalar(c(1.0, 0.0)),
            CMatrix::scalar(c(1.0, 0.0)),
        )
        .unwrap();
        let t = build_pure_isometry5(&coeffs, 16, &cfg).unwrap();
        let report = classify_tuple5(ClassifyKind::Isometry, &t, false, &cfg).unwrap();
        assert!(report.verdict, "checks: {:?}", report.checks);
        assert!(t.op(1).norm_op() <= 2.0 + 1e-12);
    }

    #[test]
    fn wold_splits_unitary_plus_shift() {
        let cfg = cfg();
        // Unitary part: scalar boundary tuple on a 3-dimensional space.
        let i = c(0.0, 1.0);
        let x = crate::point::Point7::new([
            i,
            i,
            c(-1.0, 0.0),
            i,
            c(-1.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, -1.0),
        ])
        .unwrap();
        let unitary = Tuple7::diagonal(&[x, x, x]);
        // Pure part: zero-coefficient shift model on 8 blocks.
        let coeffs = IsometryModelCoeffs7::new(vec![CMatrix::zeros(1); 6]).unwrap();
        let pure = build_pure_isometry7(&coeffs, 8, &cfg).unwrap();
        let joint_ops: Vec<CMatrix> = (0..7)
            .map(|k| CMatrix::direct_sum(&[unitary.op(k), pure.op(k)]))
            .collect();
        let dim_u = 3;
        let dim_p = 8;
        let mut edge = DMatrix::zeros(dim_u + dim_p, 1);
        edge[(dim_u + dim_p - 1, 0)] = c(1.0, 0.0);
        let joint = Tuple7::new(joint_ops).unwrap().with_edge(edge);
        let wold = wold_decompose7(&joint, &cfg).unwrap();
        assert_eq!(wold.unitary_dim(), 3);
        assert_eq!(wold.pure_dim(), 8);
        assert!(wold.reducing_residual < 1e-10);
        let ru = classify_tuple7(ClassifyKind::Unitary, &wold.restricted_unitary, false, &cfg)
            .unwrap();
        assert!(ru.verdict, "unitary part checks: {:?}", ru.checks);
        let rp = classify_tuple7(ClassifyKind::Isometry, &wold.restricted_pure, false, &cfg)
            .unwrap();
        assert!(rp.verdict, "pure part checks: {:?}", rp.checks);
        // The pure part has no unitary summand left.
        let inner = wold_decompose7(&wold.restricted_pure, &cfg).unwrap();
        assert_eq!(inner.unitary_dim(), 0);
    }

    #[test]
    fn wold_of_exact_unitary_has_trivial_pure_part() {
        let cfg = cfg();
        let i = c(0.0, 1.0);
        let x = crate::point::Point7::new([
            i,
            i,
            c(-1.0, 0.0),
            i,
            c(-1.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, -1.0),
        ])
        .unwrap();
        let t = Tuple7::diagonal(&[x, x, x, x]);
        let wold = wold_decompose7(&t, &cfg).unwrap();
        assert_eq!(wold.unitary_dim(), 4);
        assert_eq!(wold.pure_dim(), 0);
    }
}
