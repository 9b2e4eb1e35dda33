//! Point membership for the four domains via their rational-function
//! characterizations.
//!
//! Margins are signed: positive means strictly inside, near zero means on
//! the topological boundary, negative means outside the closure. Borderline
//! values within `undetermined_band` resolve to `Closure` when the
//! non-strict criteria hold and to `Undetermined` otherwise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::golden_max;
use crate::point::{Point2, Point3, Point5, Point7};
use crate::psi::{psi5_parts, psi7_parts, PsiVariant};
use crate::{par, ToleranceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Category {
    #[serde(rename = "INTERIOR")]
    Interior,
    #[serde(rename = "CLOSURE")]
    Closure,
    #[serde(rename = "OUTSIDE")]
    Outside,
    #[serde(rename = "UNDETERMINED")]
    Undetermined,
}

/// Verdict with a signed margin and the extremal parameter when one exists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub category: Category,
    pub margin: f64,
    pub witness: Option<Vec<[f64; 2]>>,
}

impl MembershipVerdict {
    pub fn new(category: Category, margin: f64, witness: Option<Vec<Complex64>>) -> Self {
        Self {
            category,
            margin,
            witness: witness.map(|w| w.iter().map(|z| [z.re, z.im]).collect()),
        }
    }

    /// Whether the verdict certifies membership in the open domain
    /// (`closed = false`) or its closure (`closed = true`).
    pub fn in_target(&self, closed: bool) -> bool {
        match self.category {
            Category::Interior => true,
            Category::Closure => closed,
            _ => false,
        }
    }
}

pub(crate) fn resolve(margin: f64, closure_ok: bool, band: f64) -> Category {
    if margin > band {
        Category::Interior
    } else if margin >= -band {
        if closure_ok {
            Category::Closure
        } else {
            Category::Undetermined
        }
    } else if closure_ok {
        Category::Undetermined
    } else {
        Category::Outside
    }
}

/// Roots of a z^2 + b z + c with complex coefficients, empty when the
/// polynomial degenerates to a nonzero constant.
pub(crate) fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> Vec<Complex64> {
    let eps = 1e-14 * (a.norm() + b.norm() + c.norm()).max(1.0);
    if a.norm() <= eps {
        if b.norm() <= eps {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = (b * b - 4.0 * a * c).sqrt();
    // Pick the sign that avoids cancellation in -b -/+ disc.
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -(b + disc) / 2.0
    } else {
        -(b - disc) / 2.0
    };
    let r1 = q / a;
    if q.norm() <= eps {
        // Both roots tiny or the polynomial is a perfect square around zero.
        return vec![r1, -b / a - r1];
    }
    vec![r1, c / q]
}

/// Symmetrized bidisc: exact quadratic-root test on lambda^2 - s lambda + p.
pub fn membership_sym2(pt: &Point2, _closed: bool, cfg: &ToleranceConfig) -> MembershipVerdict {
    let roots = quadratic_roots(Complex64::new(1.0, 0.0), -pt.s(), pt.p());
    let max_root = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let margin = 1.0 - max_root;
    let band = cfg.undetermined_band;
    MembershipVerdict::new(resolve(margin, margin >= -band, band), margin, Some(roots))
}

struct Criteria {
    margin: f64,
    closure_ok: bool,
    witness: Option<Vec<Complex64>>,
}

/// Guarded modulus ratio used by the torus sweeps. Near-0/0 nodes are
/// skipped (negative infinity); genuine poles diverge.
fn guarded_ratio(num: Complex64, den: Complex64, scale: f64) -> f64 {
    let eps = 1e-13 * scale;
    let d = den.norm();
    let n = num.norm();
    if d <= eps {
        if n <= eps {
            return f64::NEG_INFINITY;
        }
        return 1e15;
    }
    n / d
}

/// Supremum of |num/den| over the torus, one angle.
fn sup_ratio_t1(
    parts: impl Fn(Complex64) -> (Complex64, Complex64) + Sync + Send,
    scale: f64,
    cfg: &ToleranceConfig,
) -> (f64, Complex64) {
    let n = cfg.grid_1d.max(8);
    let step = std::f64::consts::TAU / n as f64;
    let eval = |theta: f64| {
        let z = Complex64::from_polar(1.0, theta);
        let (num, den) = parts(z);
        guarded_ratio(num, den, scale)
    };
    let (best, _) = par::max_over(n, |k| eval(k as f64 * step));
    let theta = best as f64 * step;
    let refined = golden_max(eval, theta - step, theta + step, cfg.refine_iters);
    (refined.max(eval(theta)), Complex64::from_polar(1.0, theta))
}

/// Supremum of |num/den| over the two-torus.
fn sup_ratio_t2(
    parts: impl Fn(Complex64, Complex64) -> (Complex64, Complex64) + Sync + Send,
    scale: f64,
    cfg: &ToleranceConfig,
) -> (f64, (Complex64, Complex64)) {
    let n = cfg.grid_2d.max(8);
    let step = std::f64::consts::TAU / n as f64;
    let eval = |theta: f64, phi: f64| {
        let (num, den) = parts(Complex64::from_polar(1.0, theta), Complex64::from_polar(1.0, phi));
        guarded_ratio(num, den, scale)
    };
    let (best, mut sup) = par::max_over(n * n, |k| eval((k / n) as f64 * step, (k % n) as f64 * step));
    let (mut theta, mut phi) = ((best / n) as f64 * step, (best % n) as f64 * step);
    // Alternating one-dimensional golden refinements around the best node.
    for round in 0..3 {
        let width = step / (round + 1) as f64;
        let p = phi;
        theta = golden_argmax(|x| eval(x, p), theta - width, theta + width, cfg.refine_iters / 3);
        let t = theta;
        phi = golden_argmax(|x| eval(t, x), phi - width, phi + width, cfg.refine_iters / 3);
        sup = sup.max(eval(theta, phi));
    }
    (
        sup,
        (Complex64::from_polar(1.0, theta), Complex64::from_polar(1.0, phi)),
    )
}

fn golden_argmax(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
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
    }
    0.5 * (a + b)
}

/// Tetrablock membership: denominator test, degenerate ray, torus supremum.
pub fn membership_tetra3(pt: &Point3, closed: bool, cfg: &ToleranceConfig) -> MembershipVerdict {
    let c = tetra_criteria(pt, cfg);
    let band = cfg.undetermined_band;
    let _ = closed;
    MembershipVerdict::new(resolve(c.margin, c.closure_ok, band), c.margin, c.witness)
}

fn tetra_criteria(pt: &Point3, cfg: &ToleranceConfig) -> Criteria {
    let [x1, x2, x3] = pt.coords;
    let band = cfg.undetermined_band;
    let scale = pt.max_abs().max(1.0);
    let bound_margin = 1.0 - pt.max_abs();
    if bound_margin < -band {
        return Criteria {
            margin: bound_margin,
            closure_ok: false,
            witness: None,
        };
    }
    let den_margin = 1.0 - x2.norm();
    let degenerate = (x3 - x1 * x2).norm() <= 1e-12 * scale;
    let (psi_margin, closure_psi, witness) = if degenerate {
        (1.0 - x1.norm(), x1.norm() <= 1.0 + band, None)
    } else {
        let (sup, z) = sup_ratio_t1(|z| ((x1 - z * x3), (Complex64::new(1.0, 0.0) - z * x2)), scale, cfg);
        (1.0 - sup, sup <= 1.0 + band, Some(vec![z]))
    };
    let margin = bound_margin.min(den_margin).min(psi_margin);
    Criteria {
        margin,
        closure_ok: closure_psi && den_margin >= -band && bound_margin >= -band,
        witness,
    }
}

/// Five-variable domain membership per the quadratic root test plus the
/// supremum of the attached rational function.
pub fn membership_gamma5(pt: &Point5, closed: bool, cfg: &ToleranceConfig) -> MembershipVerdict {
    let c = gamma5_criteria(pt, cfg);
    let band = cfg.undetermined_band;
    let _ = closed;
    MembershipVerdict::new(resolve(c.margin, c.closure_ok, band), c.margin, c.witness)
}

fn gamma5_criteria(pt: &Point5, cfg: &ToleranceConfig) -> Criteria {
    let [x1, x2, x3, y1, y2] = pt.coords;
    let band = cfg.undetermined_band;
    let scale = pt.max_abs().max(1.0);
    // Necessary coordinate bounds on the closure.
    let bound_margin = [
        1.0 - x1.norm(),
        1.0 - x3.norm(),
        1.0 - y2.norm(),
        (2.0 - x2.norm()) / 2.0,
        (2.0 - y1.norm()) / 2.0,
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min);
    if bound_margin < -band {
        return Criteria {
            margin: bound_margin,
            closure_ok: false,
            witness: None,
        };
    }
    // Denominator y2 z^2 - y1 z + 1 must be zero-free on the disc.
    let roots = quadratic_roots(y2, -y1, Complex64::new(1.0, 0.0));
    let root_margin = roots.iter().map(|z| z.norm() - 1.0).fold(f64::INFINITY, f64::min).min(1.0);
    let degenerate = (x3 - x1 * y2).norm() <= 1e-12 * scale && (x2 - x1 * y1).norm() <= 1e-12 * scale;
    let (psi_margin, closure_psi, witness) = if degenerate {
        (1.0 - x1.norm(), x1.norm() <= 1.0 + band, None)
    } else {
        let (sup, z) = sup_ratio_t1(|z| psi5_parts(z, pt), scale, cfg);
        (1.0 - sup, sup <= 1.0 + band, Some(vec![z]))
    };
    let margin = bound_margin.min(root_margin).min(psi_margin);
    Criteria {
        margin,
        closure_ok: closure_psi && root_margin >= -band && bound_margin >= -band,
        witness,
    }
}

/// Seven-variable domain membership: tetrablock sub-point, degenerate ray,
/// two-torus supremum of the first rational function.
pub fn membership_gamma7(pt: &Point7, closed: bool, cfg: &ToleranceConfig) -> MembershipVerdict {
    let band = cfg.undetermined_band;
    let [x1, x2, x3, x4, x5, x6, x7] = pt.coords;
    let scale = pt.max_abs().max(1.0);
    let bound_margin = 1.0 - pt.max_abs();
    if bound_margin < -band {
        return MembershipVerdict::new(Category::Outside, bound_margin, None);
    }
    let sub = Point3::new([x2, x4, x6]).expect("finite by construction");
    let tetra = tetra_criteria(&sub, cfg);
    let degenerate = (x7 - x6 * x1).norm() <= 1e-12 * scale
        && (x3 - x2 * x1).norm() <= 1e-12 * scale
        && (x5 - x4 * x1).norm() <= 1e-12 * scale;
    let (psi_margin, closure_psi, witness) = if degenerate {
        (1.0 - x1.norm(), x1.norm() <= 1.0 + band, None)
    } else {
        let (sup, (z, w)) = sup_ratio_t2(|z, w| psi7_parts(PsiVariant::Psi7_1, z, w, pt), scale, cfg);
        (1.0 - sup, sup <= 1.0 + band, Some(vec![z, w]))
    };
    let margin = bound_margin.min(tetra.margin).min(psi_margin);
    let closure_ok = closure_psi && tetra.closure_ok && bound_margin >= -band;
    let _ = closed;
    MembershipVerdict::new(resolve(margin, closure_ok, band), margin, witness)
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
    fn quadratic_roots_cover_the_degenerate_cases() {
        assert!(quadratic_roots(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).is_empty());
        let lin = quadratic_roots(c(0.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0));
        assert_eq!(lin.len(), 1);
        assert!((lin[0] - c(0.5, 0.0)).norm() < 1e-14);
        let qs = quadratic_roots(c(1.0, 0.0), c(-3.0, 0.0), c(2.0, 0.0));
        let mut mods: Vec<f64> = qs.iter().map(|z| z.norm()).collect();
        mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((mods[0] - 1.0).abs() < 1e-12 && (mods[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sym2_is_exact_on_roots() {
        let cfg = cfg();
        // s = lambda1 + lambda2, p = lambda1 lambda2 with |lambda| = 0.5, 0.25.
        let v = membership_sym2(&Point2::new(c(0.75, 0.0), c(0.125, 0.0)), false, &cfg);
        assert_eq!(v.category, Category::Interior);
        assert!((v.margin - 0.5).abs() < 1e-12);
        // Boundary: both lambdas on the circle.
        let v = membership_sym2(&Point2::new(c(2.0, 0.0), c(1.0, 0.0)), true, &cfg);
        assert_eq!(v.category, Category::Closure);
        // Outside.
        let v = membership_sym2(&Point2::new(c(3.0, 0.0), c(1.0, 0.0)), false, &cfg);
        assert_eq!(v.category, Category::Outside);
    }

    #[test]
    fn tetra_examples() {
        let cfg = cfg();
        let v = membership_tetra3(&Point3::new([c(0.5, 0.0), c(0.5, 0.0), c(0.25, 0.0)]).unwrap(), false, &cfg);
        assert_eq!(v.category, Category::Interior);
        let v = membership_tetra3(&Point3::zero(), false, &cfg);
        assert_eq!(v.category, Category::Interior);
        assert!((v.margin - 1.0).abs() < 1e-9);
        // (0, 1, 0) sits on the boundary: denominator margin is exactly zero.
        let v = membership_tetra3(&Point3::new([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap(), true, &cfg);
        assert_eq!(v.category, Category::Closure);
        let v = membership_tetra3(&Point3::new([c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap(), false, &cfg);
        assert_eq!(v.category, Category::Outside);
    }

    #[test]
    fn gamma7_zero_is_interior_with_margin_one() {
        let v = membership_gamma7(&Point7::zero(), false, &cfg());
        assert_eq!(v.category, Category::Interior);
        assert!((v.margin - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gamma7_all_ones_is_closure() {
        let v = membership_gamma7(&Point7::new([c(1.0, 0.0); 7]).unwrap(), true, &cfg());
        assert_eq!(v.category, Category::Closure);
        assert!(v.margin.abs() < 1e-6);
    }

    #[test]
    fn gamma5_bound_rejector() {
        let v = membership_gamma5(
            &Point5::new([c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0), c(0.0, 0.0)]).unwrap(),
            false,
            &cfg(),
        );
        assert_eq!(v.category, Category::Outside);
        assert!(v.margin < -0.4);
    }

    #[test]
    fn gamma5_product_points_are_interior() {
        // Image of diag(a, b, c) under the five-coordinate minor map.
        let (a, b, x) = (c(0.2, 0.1), c(-0.3, 0.2), c(0.4, -0.1));
        let p = Point5::new([a, a * b + a * x, a * b * x, b + x, b * x]).unwrap();
        let v = membership_gamma5(&p, false, &cfg());
        assert_eq!(v.category, Category::Interior);
    }

    #[test]
    fn gamma7_scaled_product_point_matches_expectation() {
        let (a, b, x) = (c(0.5, 0.0), c(0.4, 0.3), c(-0.2, 0.35));
        let p = Point7::new([a, b, a * b, x, a * x, b * x, a * b * x]).unwrap();
        let v = membership_gamma7(&p, false, &cfg());
        assert_eq!(v.category, Category::Interior);
        // Blowing the point up by 4 pushes the largest coordinate past one.
        let out = p.scale(c(4.0, 0.0));
        let v = membership_gamma7(&out, false, &cfg());
        assert_eq!(v.category, Category::Outside);
    }
}
