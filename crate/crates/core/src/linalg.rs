//! Shared linear-algebra primitives: defect operators, numerical radius,
//! algebraic residual batteries and joint diagonalization of commuting
//! normal families.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{hermitian_eigen, CMatrix};
use crate::{par, Error, Result, ToleranceConfig};

/// One named residual check with its threshold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualCheck {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl ResidualCheck {
    pub fn new(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            threshold,
            pass: residual <= threshold,
        }
    }
}

/// Named list of residual checks.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ResidualReport {
    pub checks: Vec<ResidualCheck>,
}

impl ResidualReport {
    pub fn push(&mut self, check: ResidualCheck) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn worst(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<&ResidualCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Defect operator D_T = (I - T*T)^(1/2) of a contraction.
///
/// Eigenvalues of I - T*T within `rank_tol` of zero are clamped to zero;
/// anything more negative reports `NotAContraction`.
pub fn defect_operator(t: &CMatrix, cfg: &ToleranceConfig) -> Result<CMatrix> {
    let n = t.dim();
    let gram = &CMatrix::identity(n) - &(&t.adjoint() * t);
    let (vals, vecs) = hermitian_eigen(&gram);
    if let Some(&min) = vals.first() {
        if min < -cfg.rank_tol {
            return Err(Error::NotAContraction { min_eig: min });
        }
    }
    let sq = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        vals.iter().map(|&v| Complex64::new(v.max(0.0).sqrt(), 0.0)),
    ));
    CMatrix::new(&vecs * sq * vecs.adjoint())
}

/// Numerical radius max_theta lambda_max(Re(e^{i theta} T)) via a theta grid
/// followed by golden-section refinement.
pub fn numerical_radius(t: &CMatrix, cfg: &ToleranceConfig) -> f64 {
    if t.dim() == 0 {
        return 0.0;
    }
    let f = |theta: f64| {
        let rotated = t.scale(Complex64::from_polar(1.0, theta));
        let (vals, _) = hermitian_eigen(&rotated);
        *vals.last().unwrap()
    };
    let n = cfg.grid_1d.max(8);
    let step = std::f64::consts::TAU / n as f64;
    let (best, _) = par::max_over(n, |k| f(k as f64 * step));
    let theta = best as f64 * step;
    golden_max(f, theta - step, theta + step, cfg.refine_iters)
}

/// Golden-section maximization of a unimodal-on-the-bracket function.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = fc.max(fd);
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        best = best.max(fc.max(fd));
    }
    best
}

pub(crate) fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, iters: usize) -> f64 {
    -golden_max(|x| -f(x), a, b, iters)
}

/// Residual battery for a family of same-dimension operators: normality,
/// isometry, co-isometry and contraction margin per member, plus worst
/// pairwise commutation residual.
pub fn algebraic_residuals(family: &[&CMatrix], cfg: &ToleranceConfig) -> Result<ResidualReport> {
    let mut report = ResidualReport::default();
    let Some(first) = family.first() else {
        return Ok(report);
    };
    let n = first.dim();
    if family.iter().any(|m| m.dim() != n) {
        return Err(Error::DimensionMismatch(
            "family members must share a dimension".into(),
        ));
    }
    let id = CMatrix::identity(n);
    for (k, t) in family.iter().enumerate() {
        let tt = &t.adjoint() * t;
        let tt_star = (*t) * &t.adjoint();
        report.push(ResidualCheck::new(
            format!("normality[{k}]"),
            (&tt - &tt_star).norm_op(),
            cfg.residual_tol,
        ));
        report.push(ResidualCheck::new(
            format!("isometry[{k}]"),
            (&tt - &id).norm_op(),
            cfg.residual_tol,
        ));
        report.push(ResidualCheck::new(
            format!("co-isometry[{k}]"),
            (&tt_star - &id).norm_op(),
            cfg.residual_tol,
        ));
        report.push(ResidualCheck::new(
            format!("contraction[{k}]"),
            (t.norm_op() - 1.0).max(0.0),
            cfg.residual_tol,
        ));
    }
    let mut worst = 0.0f64;
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let comm = &(family[i] * family[j]) - &(family[j] * family[i]);
            worst = worst.max(comm.norm_op());
        }
    }
    report.push(ResidualCheck::new("commutation", worst, cfg.commute_tol));
    Ok(report)
}

/// Worst pairwise commutator norm of a family.
pub fn commutation_residual(family: &[&CMatrix]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let comm = &(family[i] * family[j]) - &(family[j] * family[i]);
            worst = worst.max(comm.norm_op());
        }
    }
    worst
}

fn normality_residual(t: &CMatrix) -> f64 {
    (&(&t.adjoint() * t) - &(t * &t.adjoint())).norm_op()
}

/// Simultaneous eigenvalue tuples of a commuting normal family.
///
/// A seeded random real combination of the Hermitian and skew parts breaks
/// degeneracies; its eigenbasis must diagonalize every member within
/// `1e-8 * dim`, retrying with fresh coefficients a few times before failing.
pub fn joint_eigen_tuples(
    family: &[&CMatrix],
    cfg: &ToleranceConfig,
) -> Result<Vec<Vec<Complex64>>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let n = first.dim();
    if family.iter().any(|m| m.dim() != n) {
        return Err(Error::DimensionMismatch(
            "family members must share a dimension".into(),
        ));
    }
    let comm = commutation_residual(family);
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    for t in family {
        let res = normality_residual(t);
        if res > cfg.residual_tol {
            return Err(Error::NotNormal { residual: res });
        }
    }

    let scale = family.iter().map(|t| t.norm_op()).fold(1.0f64, f64::max);
    let tol = 1e-8 * n as f64 * scale.max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut last_residual = f64::MAX;
    for _attempt in 0..8 {
        let mut combo = CMatrix::zeros(n);
        for t in family {
            let herm = t.hermitian_part();
            let skew = (*t) - &herm; // i * (imaginary part)
            let skew_herm = skew.scale(Complex64::new(0.0, -1.0));
            let (a, b): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            combo = &combo + &herm.scale(Complex64::new(a, 0.0));
            combo = &combo + &skew_herm.scale(Complex64::new(b, 0.0));
        }
        let (_, q) = hermitian_eigen(&combo);
        let qh = q.adjoint();
        let mut off = 0.0f64;
        let mut diagonals: Vec<Vec<Complex64>> = vec![Vec::with_capacity(family.len()); n];
        for t in family {
            let d = &qh * t.matrix() * &q;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off = off.max(d[(i, j)].norm());
                    }
                }
            }
            for (i, row) in diagonals.iter_mut().enumerate() {
                row.push(d[(i, i)]);
            }
        }
        if off <= tol {
            diagonals.sort_by(|a, b| {
                for (x, y) in a.iter().zip(b.iter()) {
                    match x
                        .re
                        .partial_cmp(&y.re)
                        .unwrap()
                        .then(x.im.partial_cmp(&y.im).unwrap())
                    {
                        std::cmp::Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                std::cmp::Ordering::Equal
            });
            return Ok(diagonals);
        }
        last_residual = last_residual.min(off);
    }
    Err(Error::NotNormal {
        residual: last_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn defect_of_zero_is_identity() {
        let d = defect_operator(&CMatrix::zeros(2), &cfg()).unwrap();
        assert!((&d - &CMatrix::identity(2)).norm_op() < 1e-14);
    }

    #[test]
    fn defect_of_diagonal_contraction() {
        let t = CMatrix::diagonal(&[c(1.0, 0.0), c(0.6, 0.0)]);
        let d = defect_operator(&t, &cfg()).unwrap();
        let expected = CMatrix::diagonal(&[c(0.0, 0.0), c(0.8, 0.0)]);
        assert!((&d - &expected).norm_op() < 1e-12);
    }

    #[test]
    fn defect_squares_back_to_gram_for_random_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let n = 5;
            let raw = DMatrix::from_fn(n, n, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let t0 = CMatrix::new(raw).unwrap();
            let t = t0.scale(c(0.9 / t0.norm_op().max(1e-9), 0.0));
            let d = defect_operator(&t, &cfg()).unwrap();
            let gram = &CMatrix::identity(n) - &(&t.adjoint() * &t);
            assert!((&(&d * &d) - &gram).norm_op() < 1e-12);
            // Hermitian PSD.
            assert!((&d - &d.adjoint()).norm_op() < 1e-12);
            let (vals, _) = hermitian_eigen(&d);
            assert!(vals[0] > -1e-12);
        }
    }

    #[test]
    fn defect_rejects_expansion() {
        let t = CMatrix::diagonal(&[c(1.1, 0.0)]);
        assert!(matches!(
            defect_operator(&t, &cfg()),
            Err(Error::NotAContraction { .. })
        ));
    }

    #[test]
    fn numerical_radius_known_values() {
        let cfg = cfg();
        assert!((numerical_radius(&CMatrix::identity(3), &cfg) - 1.0).abs() < 1e-9);
        // 2x2 nilpotent with entry 2: radius is half the norm.
        let t = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(2.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let w = numerical_radius(&t, &cfg);
        // Independent oracle: dense theta scan.
        let oracle = (0..20_000)
            .map(|k| {
                let theta = k as f64 * std::f64::consts::TAU / 20_000.0;
                let (vals, _) = hermitian_eigen(&t.scale(Complex64::from_polar(1.0, theta)));
                *vals.last().unwrap()
            })
            .fold(f64::MIN, f64::max);
        assert!((w - oracle).abs() < 1e-8);
        assert!((w - 1.0).abs() < 1e-9);
        // Normal matrix: radius equals spectral radius.
        let t = CMatrix::diagonal(&[c(0.3, 0.0), c(-0.7, 0.0)]);
        assert!((numerical_radius(&t, &cfg) - 0.7).abs() < 1e-9);
    }

    #[test]
    fn residual_battery_flags_the_right_checks() {
        let cfg = cfg();
        let id = CMatrix::identity(3);
        let rep = algebraic_residuals(&[&id], &cfg).unwrap();
        assert!(rep.all_pass());

        let nilpotent =
            CMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
                .unwrap();
        let rep = algebraic_residuals(&[&nilpotent], &cfg).unwrap();
        let normality = rep.get("normality[0]").unwrap();
        assert!(!normality.pass);
        assert!((normality.residual - 1.0).abs() < 1e-12);

        let swap =
            CMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
                .unwrap();
        let two_id = CMatrix::identity(2);
        let rep = algebraic_residuals(&[&two_id, &swap], &cfg).unwrap();
        assert!(rep.get("commutation").unwrap().residual < 1e-14);
    }

    #[test]
    fn joint_eigen_recovers_diagonals() {
        let cfg = cfg();
        let a = CMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let b = CMatrix::diagonal(&[c(3.0, 0.0), c(4.0, 0.0)]);
        let tuples = joint_eigen_tuples(&[&a, &b], &cfg).unwrap();
        assert_eq!(tuples.len(), 2);
        assert!((tuples[0][0] - c(1.0, 0.0)).norm() < 1e-10);
        assert!((tuples[0][1] - c(3.0, 0.0)).norm() < 1e-10);
        assert!((tuples[1][0] - c(2.0, 0.0)).norm() < 1e-10);
        assert!((tuples[1][1] - c(4.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn joint_eigen_construct_then_recover() {
        let cfg = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 4;
        // Random unitary frame via QR of a Ginibre sample.
        let g = DMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let q = g.qr().q();
        let a_diag: Vec<Complex64> = (0..n).map(|k| c(k as f64, -(k as f64))).collect();
        let b_diag: Vec<Complex64> = (0..n).map(|k| c(1.0 + 0.5 * k as f64, 0.25)).collect();
        let a = CMatrix::new(&q * CMatrix::diagonal(&a_diag).matrix() * q.adjoint()).unwrap();
        let b = CMatrix::new(&q * CMatrix::diagonal(&b_diag).matrix() * q.adjoint()).unwrap();
        let tuples = joint_eigen_tuples(&[&a, &b], &cfg).unwrap();
        // Every recovered pair must be one of the planted (a_k, b_k) pairs.
        for pair in &tuples {
            let hit = (0..n).any(|k| (pair[0] - a_diag[k]).norm() + (pair[1] - b_diag[k]).norm() < 1e-8);
            assert!(hit, "unexpected joint eigenvalue pair {pair:?}");
        }
    }

    #[test]
    fn joint_eigen_rejects_non_normal() {
        let cfg = cfg();
        let id = CMatrix::identity(2);
        let nilpotent =
            CMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
                .unwrap();
        assert!(matches!(
            joint_eigen_tuples(&[&id, &nilpotent], &cfg),
            Err(Error::NotNormal { .. })
        ));
    }
}

#[cfg(test)]
mod probe {
    use super::*;
    use nalgebra::DMatrix;
    use rand::Rng;
    #[test]
    fn probe_defect_residual() {
        let cfg = ToleranceConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..10 {
            let n = 5;
            let raw = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let t0 = CMatrix::new(raw).unwrap();
            let t = t0.scale(Complex64::new(0.9 / t0.norm_op().max(1e-9), 0.0));
            let d = defect_operator(&t, &cfg).unwrap();
            let gram = &CMatrix::identity(n) - &(&t.adjoint() * &t);
            let herm = (&d - &d.adjoint()).norm_op();
            println!("k={k} resid={:.3e} herm={:.3e}", (&(&d * &d) - &gram).norm_op(), herm);
        }
    }
}
