//! Distinguished-boundary-candidate sets in C^7 and C^5 and their slice
//! characterizations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::membership::{membership_gamma5, membership_gamma7, Category};
use crate::point::{Point2, Point3, Point5, Point7};
use crate::psi::{slice5_p, slice7, SliceVariant};
use crate::{Result, ToleranceConfig};

/// Outcome of a boundary-set test: the defining relation residuals and, for
/// slice-based checks, the parameters where a slice failed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub in_set: bool,
    pub residuals: Vec<(String, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice_failures: Option<Vec<[f64; 2]>>,
}

impl BoundaryReport {
    pub fn worst(&self) -> f64 {
        self.residuals.iter().map(|(_, v)| *v).fold(0.0, f64::max)
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

/// Membership in the seven-coordinate boundary candidate set: the unimodular
/// last coordinate, both published relation triples (equivalent when
/// |x7| = 1) and membership in the closed domain.
pub fn k_membership(x: &Point7, cfg: &ToleranceConfig) -> Result<BoundaryReport> {
    let [x1, x2, x3, x4, x5, x6, x7] = x.coords;
    let mut residuals = vec![
        ("|x7| = 1".to_string(), (x7.norm() - 1.0).abs()),
        ("x1 = conj(x6) x7".to_string(), (x1 - x6.conj() * x7).norm()),
        ("x3 = conj(x4) x7".to_string(), (x3 - x4.conj() * x7).norm()),
        ("x5 = conj(x2) x7".to_string(), (x5 - x2.conj() * x7).norm()),
        ("x2 = conj(x5) x7".to_string(), (x2 - x5.conj() * x7).norm()),
        ("x4 = conj(x3) x7".to_string(), (x4 - x3.conj() * x7).norm()),
    ];
    let algebraic_ok = residuals.iter().all(|(_, v)| *v <= cfg.residual_tol);
    let verdict = membership_gamma7(x, true, cfg);
    residuals.push(("closure_margin_deficit".to_string(), (-verdict.margin).max(0.0)));
    let in_closure = verdict.category != Category::Outside
        && verdict.margin >= -cfg.undetermined_band;
    Ok(BoundaryReport {
        in_set: algebraic_ok && in_closure,
        residuals,
        slice_failures: None,
    })
}

/// Five-coordinate analog: x1 = conj(y2) x3, x2 = conj(y1) x3, |x3| = 1 and
/// closed-domain membership.
pub fn k1_membership(x: &Point5, cfg: &ToleranceConfig) -> Result<BoundaryReport> {
    let [x1, x2, x3, y1, y2] = x.coords;
    let mut residuals = vec![
        ("|x3| = 1".to_string(), (x3.norm() - 1.0).abs()),
        ("x1 = conj(y2) x3".to_string(), (x1 - y2.conj() * x3).norm()),
        ("x2 = conj(y1) x3".to_string(), (x2 - y1.conj() * x3).norm()),
    ];
    let algebraic_ok = residuals.iter().all(|(_, v)| *v <= cfg.residual_tol);
    let verdict = membership_gamma5(x, true, cfg);
    residuals.push(("closure_margin_deficit".to_string(), (-verdict.margin).max(0.0)));
    let in_closure = verdict.category != Category::Outside
        && verdict.margin >= -cfg.undetermined_band;
    Ok(BoundaryReport {
        in_set: algebraic_ok && in_closure,
        residuals,
        slice_failures: None,
    })
}

/// Scalar tetrablock boundary residual: x1 = conj(x2) x3, x2 = conj(x1) x3,
/// |x3| = 1, |x2| <= 1.
pub fn tetra_boundary_residual(p: &Point3) -> f64 {
    let [x1, x2, x3] = p.coords;
    [
        (x3.norm() - 1.0).abs(),
        (x1 - x2.conj() * x3).norm(),
        (x2 - x1.conj() * x3).norm(),
        (x2.norm() - 1.0).max(0.0),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Symmetrized-bidisc boundary residual: |p| = 1, s = conj(s) p, |s| <= 2.
pub fn sym_boundary_residual(p: &Point2) -> f64 {
    let s = p.s();
    let pp = p.p();
    [
        (pp.norm() - 1.0).abs(),
        (s - s.conj() * pp).norm(),
        (s.norm() - 2.0).max(0.0),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Slice-characterization variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundarySliceVariant {
    Bw7,
    Bw5,
    BSym,
    BTetra,
}

/// Input points for boundary slice checks.
pub enum BoundaryPoint<'a> {
    P7(&'a Point7),
    P5(&'a Point5),
    P3(&'a Point3),
    P2(&'a Point2),
}

/// Evaluates the slice characterization of the boundary candidate sets:
/// scalar relations for the tetrablock/symmetrized bidisc, fractional slice
/// sweeps for the seven- and five-coordinate sets. The "for all" of the
/// characterizations is verified by sampling.
pub fn boundary_slice_check(
    variant: BoundarySliceVariant,
    point: BoundaryPoint<'_>,
    cfg: &ToleranceConfig,
) -> Result<BoundaryReport> {
    match (variant, point) {
        (BoundarySliceVariant::BSym, BoundaryPoint::P2(p)) => {
            let r = sym_boundary_residual(p);
            Ok(BoundaryReport {
                in_set: r <= cfg.residual_tol,
                residuals: vec![("bidisc_boundary".into(), r)],
                slice_failures: None,
            })
        }
        (BoundarySliceVariant::BTetra, BoundaryPoint::P3(p)) => {
            let r = tetra_boundary_residual(p);
            Ok(BoundaryReport {
                in_set: r <= cfg.residual_tol,
                residuals: vec![("tetrablock_boundary".into(), r)],
                slice_failures: None,
            })
        }
        (BoundarySliceVariant::Bw7, BoundaryPoint::P7(p)) => bw7_check(p, cfg),
        (BoundarySliceVariant::Bw5, BoundaryPoint::P5(p)) => bw5_check(p, cfg),
        _ => Err(crate::Error::InvalidInput(
            "variant and point kind do not match".into(),
        )),
    }
}

/// Sweep parameters: full torus when the pivot coordinate is strictly
/// inside the disc, interior radii when it is unimodular.
fn sweep_params(pivot_abs: f64, band: f64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::new();
    if pivot_abs < 1.0 - band {
        for k in 0..n {
            out.push(Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / n as f64));
        }
    } else {
        for ir in 1..=4 {
            let r = 0.225 * ir as f64;
            for k in 0..n / 4 {
                out.push(Complex64::from_polar(r, k as f64 * std::f64::consts::TAU / (n / 4) as f64));
            }
        }
    }
    out
}

fn bw7_check(p: &Point7, cfg: &ToleranceConfig) -> Result<BoundaryReport> {
    let band = cfg.undetermined_band;
    let n = (cfg.grid_1d / 4).max(32);
    let scale = p.max_abs().max(1.0);
    let tol = 1e-13 * scale;
    let mut residuals = Vec::new();
    let mut failures = Vec::new();
    let x2_abs = p.coords[1].norm();
    let x4_abs = p.coords[3].norm();
    let mut sweep_ok = x2_abs <= 1.0 + band && x4_abs <= 1.0 + band;
    let mut worst = 0.0f64;
    for (name, variant, pivot) in [
        ("z-slice", SliceVariant::Zt, x4_abs),
        ("y-slice", SliceVariant::Yt, x2_abs),
    ] {
        let mut slice_worst = 0.0f64;
        for z in sweep_params(pivot, band, n) {
            let r = match slice7(variant, z, p, tol) {
                Ok(p3) => tetra_boundary_residual(&p3),
                Err(_) => 1.0,
            };
            if r > cfg.residual_tol * 100.0 + band {
                failures.push([z.re, z.im]);
            }
            slice_worst = slice_worst.max(r);
        }
        residuals.push((format!("{name}_worst"), slice_worst));
        worst = worst.max(slice_worst);
    }
    sweep_ok = sweep_ok && worst <= band.max(cfg.residual_tol * 100.0);
    let algebraic = k_membership(p, cfg)?;
    residuals.push((
        "agrees_with_k".to_string(),
        if algebraic.in_set == sweep_ok { 0.0 } else { 1.0 },
    ));
    Ok(BoundaryReport {
        in_set: sweep_ok,
        residuals,
        slice_failures: if failures.is_empty() { None } else { Some(failures) },
    })
}

fn bw5_check(p: &Point5, cfg: &ToleranceConfig) -> Result<BoundaryReport> {
    let band = cfg.undetermined_band;
    let n = (cfg.grid_1d / 4).max(32);
    let scale = p.max_abs().max(1.0);
    let tol = 1e-13 * scale;
    let y1_half = p.coords[3].norm() / 2.0;
    let mut residuals = Vec::new();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for z in sweep_params(y1_half, band, n) {
        let r = match slice5_p(z, p, tol) {
            Ok(p3) => tetra_boundary_residual(&p3),
            Err(_) => 1.0,
        };
        if r > cfg.residual_tol * 100.0 + band {
            failures.push([z.re, z.im]);
        }
        worst = worst.max(r);
    }
    residuals.push(("p-slice_worst".to_string(), worst));
    let sweep_ok = y1_half <= 1.0 + band && worst <= band.max(cfg.residual_tol * 100.0);
    let algebraic = k1_membership(p, cfg)?;
    residuals.push((
        "agrees_with_k1".to_string(),
        if algebraic.in_set == sweep_ok { 0.0 } else { 1.0 },
    ));
    Ok(BoundaryReport {
        in_set: sweep_ok,
        residuals,
        slice_failures: if failures.is_empty() { None } else { Some(failures) },
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
    fn all_ones_lies_in_k() {
        let cfg = cfg();
        let ones = Point7::new([c(1.0, 0.0); 7]).unwrap();
        let r = k_membership(&ones, &cfg).unwrap();
        assert!(r.in_set, "residuals: {:?}", r.residuals);
        assert!(r.residuals.iter().take(6).all(|(_, v)| *v < 1e-14));
    }

    #[test]
    fn zero_fails_k() {
        let cfg = cfg();
        let r = k_membership(&Point7::zero(), &cfg).unwrap();
        assert!(!r.in_set);
        assert!((r.residual("|x7| = 1").unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_unitary_image_lies_in_k() {
        let cfg = cfg();
        // pi(i I3) = (i, i, -1, i, -1, -1, -i).
        let i = c(0.0, 1.0);
        let x = Point7::new([i, i, c(-1.0, 0.0), i, c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, -1.0)])
            .unwrap();
        let r = k_membership(&x, &cfg).unwrap();
        assert!(r.in_set, "residuals: {:?}", r.residuals);
    }

    #[test]
    fn k1_examples() {
        let cfg = cfg();
        let p = Point5::new([c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        assert!(k1_membership(&p, &cfg).unwrap().in_set);
        assert!(!k1_membership(&Point5::zero(), &cfg).unwrap().in_set);
        // pi of a scalar unitary e^{i theta} I3 in the five-coordinate map.
        let th = 0.7f64;
        let e = Complex64::from_polar(1.0, th);
        let p = Point5::new([e, e * e * 2.0, e * e * e, e * 2.0, e * e]).unwrap();
        assert!(k1_membership(&p, &cfg).unwrap().in_set);
    }

    #[test]
    fn boundary_slice_scalar_variants() {
        let cfg = cfg();
        let r = boundary_slice_check(
            BoundarySliceVariant::BSym,
            BoundaryPoint::P2(&Point2::new(c(2.0, 0.0), c(1.0, 0.0))),
            &cfg,
        )
        .unwrap();
        assert!(r.in_set);
        let r = boundary_slice_check(
            BoundarySliceVariant::BTetra,
            BoundaryPoint::P3(&Point3::new([c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap()),
            &cfg,
        )
        .unwrap();
        assert!(r.in_set);
    }

    #[test]
    fn bw_checks_agree_with_the_algebraic_sets() {
        let cfg = cfg();
        let ones = Point7::new([c(1.0, 0.0); 7]).unwrap();
        let r = bw7_check(&ones, &cfg).unwrap();
        assert!(r.in_set, "residuals: {:?}", r.residuals);
        assert_eq!(r.residual("agrees_with_k"), Some(0.0));
        let p = Point5::new([c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let r = bw5_check(&p, &cfg).unwrap();
        assert!(r.in_set, "residuals: {:?}", r.residuals);
        // An interior point is in neither.
        let inner = Point7::new([
            c(0.1, 0.0),
            c(0.05, 0.02),
            c(0.01, 0.0),
            c(0.0, 0.04),
            c(0.0, 0.0),
            c(0.02, 0.0),
            c(0.0, 0.01),
        ])
        .unwrap();
        let r = bw7_check(&inner, &cfg).unwrap();
        assert!(!r.in_set);
        assert_eq!(r.residual("agrees_with_k"), Some(0.0));
    }
}
