//! Independent membership oracles used to cross-check the rational-function
//! route: brute-force minimum of the defining polynomial over a polydisc
//! grid, fractional slice sweeps, and the tetrablock closed form.

use num_complex::Complex64;

use crate::membership::{resolve, Category, MembershipVerdict};
use crate::point::{Point2, Point3, Point5, Point7};
use crate::psi::{slice7, SliceVariant};
use crate::{par, ToleranceConfig};

/// Tetrablock closed form: (1 - |x3|^2) - |x1 - conj(x2) x3| - |x2 - conj(x1) x3|,
/// positive inside, zero on the boundary, negative outside.
pub fn tetra_closed_form_margin(pt: &Point3) -> f64 {
    let [x1, x2, x3] = pt.coords;
    (1.0 - x3.norm_sqr()) - (x1 - x2.conj() * x3).norm() - (x2 - x1.conj() * x3).norm()
}

/// Symmetrized-bidisc closed form, positive inside.
pub fn sym2_closed_form_margin(pt: &Point2) -> f64 {
    let s = pt.s();
    let p = pt.p();
    [
        (1.0 - p.norm_sqr()) - (s - s.conj() * p).norm(),
        2.0 - s.norm(),
        1.0 - p.norm(),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// Grid over the closed bidisc used by the polynomial minima. Radial shells
/// times angular nodes plus the centre.
fn disc_nodes(nr: usize, na: usize) -> Vec<Complex64> {
    let mut nodes = Vec::with_capacity(1 + nr * na);
    nodes.push(Complex64::new(0.0, 0.0));
    for ir in 1..=nr {
        let r = ir as f64 / nr as f64;
        for ia in 0..na {
            let theta = ia as f64 * std::f64::consts::TAU / na as f64;
            nodes.push(Complex64::from_polar(r, theta));
        }
    }
    nodes
}

/// Local pattern search over polar coordinates, minimizing `f`.
fn polish_min_polar(
    f: &(impl Fn(&[Complex64]) -> f64 + ?Sized),
    start: &[Complex64],
    step0: f64,
    iters: usize,
) -> f64 {
    let k = start.len();
    let mut coords: Vec<(f64, f64)> = start.iter().map(|z| (z.norm(), z.arg())).collect();
    let eval = |c: &[(f64, f64)]| {
        let zs: Vec<Complex64> = c.iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect();
        f(&zs)
    };
    let mut best = eval(&coords);
    let mut rstep = step0;
    let mut tstep = step0;
    for _ in 0..iters {
        let mut improved = false;
        for i in 0..k {
            for (dr, dt) in [(rstep, 0.0), (-rstep, 0.0), (0.0, tstep), (0.0, -tstep)] {
                let mut trial = coords.clone();
                trial[i].0 = (trial[i].0 + dr).clamp(0.0, 1.0);
                trial[i].1 += dt;
                let v = eval(&trial);
                if v < best {
                    best = v;
                    coords = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            rstep *= 0.5;
            tstep *= 0.5;
        }
    }
    best
}

/// Minimum of |D| - |N| over the closed bidisc where the defining
/// polynomial splits as R = D(z2, z3) - z1 N(z2, z3); negative values
/// witness a zero with |z1| < 1 nearby.
fn affine_split_min_2d(
    coeffs: impl Fn(Complex64, Complex64) -> (Complex64, Complex64) + Sync + Send,
    cfg: &ToleranceConfig,
) -> (f64, Vec<Complex64>) {
    let nr = 16;
    let na = (cfg.grid_2d / 2).max(32);
    let nodes = disc_nodes(nr, na);
    let m = nodes.len();
    let eval_pair = |z2: Complex64, z3: Complex64| {
        let (d, n) = coeffs(z2, z3);
        d.norm() - n.norm()
    };
    let (best, _) = par::min_over(m * m, |k| eval_pair(nodes[k / m], nodes[k % m]));
    let start = [nodes[best / m], nodes[best % m]];
    let f = |zs: &[Complex64]| eval_pair(zs[0], zs[1]);
    let refined = polish_min_polar(&f, &start, 1.0 / nr as f64, 40);
    (refined.min(f(&start)), start.to_vec())
}

/// One-dimensional version of the affine split minimum.
fn affine_split_min_1d(
    coeffs: impl Fn(Complex64) -> (Complex64, Complex64) + Sync + Send,
    cfg: &ToleranceConfig,
) -> (f64, Vec<Complex64>) {
    let nr = 24;
    let na = cfg.grid_1d.max(64);
    let nodes = disc_nodes(nr, na);
    let eval = |z: Complex64| {
        let (d, n) = coeffs(z);
        d.norm() - n.norm()
    };
    let (best, _) = par::min_over(nodes.len(), |k| eval(nodes[k]));
    let start = [nodes[best]];
    let f = |zs: &[Complex64]| eval(zs[0]);
    let refined = polish_min_polar(&f, &start, 1.0 / nr as f64, 48);
    (refined.min(f(&start)), start.to_vec())
}

fn verdict_from_min(margin: f64, witness: Vec<Complex64>, cfg: &ToleranceConfig) -> MembershipVerdict {
    let band = cfg.undetermined_band;
    let closure_ok = margin >= -band;
    MembershipVerdict::new(resolve(margin, closure_ok, band), margin, Some(witness))
}

/// Brute-force oracle for the seven-variable domain: minimum over the
/// closed tridisc of the defining polynomial modulus, with the degree-one
/// variable eliminated analytically.
pub fn oracle_gamma7(pt: &Point7, _closed: bool, cfg: &ToleranceConfig) -> MembershipVerdict {
    let [x1, x2, x3, x4, x5, x6, x7] = pt.coords;
    let one = Complex64::new(1.0, 0.0);
    let (margin, witness) = affine_split_min_2d(
        move |z2, z3| {
            let d = (one - x4 * z3) - z2 * (x2 - x6 * z3);
            let n = (x1 - x5 * z3) - z2 * (x3 - x7 * z3);
            (d, n)
        },
        cfg,
    );
    verdict_from_min(margin, witness, cfg)
}

/// Brute-force oracle for the five-variable domain.
pub fn oracle_gamma5(pt: &Point5, _closed: bool, cfg: &ToleranceConfig) -> MembershipVerdict {
    let [x1, x2, x3, y1, y2] = pt.coords;
    let one = Complex64::new(1.0, 0.0);
    let (margin, witness) = affine_split_min_1d(
        move |z2| {
            let d = y2 * z2 * z2 - y1 * z2 + one;
            let n = x3 * z2 * z2 - x2 * z2 + x1;
            (d, n)
        },
        cfg,
    );
    verdict_from_min(margin, witness, cfg)
}

/// Closed-form oracle for the tetrablock.
pub fn oracle_tetra3(pt: &Point3, _closed: bool, cfg: &ToleranceConfig) -> MembershipVerdict {
    let margin = tetra_closed_form_margin(pt);
    let band = cfg.undetermined_band;
    MembershipVerdict::new(resolve(margin, margin >= -band, band), margin, None)
}

/// Closed-form oracle for the symmetrized bidisc.
pub fn oracle_sym2(pt: &Point2, _closed: bool, cfg: &ToleranceConfig) -> MembershipVerdict {
    let margin = sym2_closed_form_margin(pt);
    let band = cfg.undetermined_band;
    MembershipVerdict::new(resolve(margin, margin >= -band, band), margin, None)
}

/// Slice-sweep oracle for the seven-variable domain: the first-coordinate
/// fractional slice must land in the tetrablock for every torus parameter.
pub fn oracle_gamma7_slices(pt: &Point7, cfg: &ToleranceConfig) -> MembershipVerdict {
    let n = (cfg.grid_1d / 2).max(64);
    let scale = pt.max_abs().max(1.0);
    let tol = 1e-13 * scale;
    let eval = |theta: f64| {
        let z1 = Complex64::from_polar(1.0, theta);
        match slice7(SliceVariant::Xt, z1, pt, tol) {
            Ok(p3) => tetra_closed_form_margin(&p3),
            // A vanishing denominator on the torus with x in the closure
            // means |x1| = 1; treat the slice as borderline.
            Err(_) => 0.0,
        }
    };
    let step = std::f64::consts::TAU / n as f64;
    let (best, _) = par::min_over(n, |k| eval(k as f64 * step));
    let theta = best as f64 * step;
    let margin = crate::linalg::golden_min(eval, theta - step, theta + step, cfg.refine_iters);
    let band = cfg.undetermined_band;
    MembershipVerdict::new(
        resolve(margin, margin >= -band, band),
        margin,
        Some(vec![Complex64::from_polar(1.0, theta)]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::{membership_gamma5, membership_gamma7};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn closed_form_tetra_example() {
        // |0.5 - 0.125| + |0.5 - 0.125| = 0.75 < 1 - 0.0625.
        let pt = Point3::new([c(0.5, 0.0), c(0.5, 0.0), c(0.25, 0.0)]).unwrap();
        let v = oracle_tetra3(&pt, false, &cfg());
        assert_eq!(v.category, Category::Interior);
        assert!((tetra_closed_form_margin(&pt) - 0.1875).abs() < 1e-12);
    }

    #[test]
    fn gamma7_origin_interior_by_all_routes() {
        let cfg = cfg();
        let zero = Point7::zero();
        assert_eq!(oracle_gamma7(&zero, false, &cfg).category, Category::Interior);
        assert_eq!(oracle_gamma7_slices(&zero, &cfg).category, Category::Interior);
        assert_eq!(membership_gamma7(&zero, false, &cfg).category, Category::Interior);
    }

    #[test]
    fn gamma7_all_ones_closure_with_boundary_zero() {
        // R factors as (1 - z1)(1 - z2)(1 - z3): the only zeros sit on the
        // boundary torus, so the grid minimum is zero.
        let cfg = cfg();
        let ones = Point7::new([c(1.0, 0.0); 7]).unwrap();
        let v = oracle_gamma7(&ones, true, &cfg);
        assert_eq!(v.category, Category::Closure);
        assert!(v.margin.abs() < 1e-9);
    }

    #[test]
    fn gamma5_routes_agree_on_clear_points() {
        let cfg = cfg();
        let (a, b, x) = (c(0.2, 0.1), c(-0.3, 0.2), c(0.4, -0.1));
        let inside = Point5::new([a, a * b + a * x, a * b * x, b + x, b * x]).unwrap();
        assert_eq!(oracle_gamma5(&inside, false, &cfg).category, Category::Interior);
        assert_eq!(membership_gamma5(&inside, false, &cfg).category, Category::Interior);
        let outside = inside.scale(c(5.0, 0.0));
        assert_eq!(oracle_gamma5(&outside, false, &cfg).category, Category::Outside);
        assert_eq!(membership_gamma5(&outside, false, &cfg).category, Category::Outside);
    }
}
