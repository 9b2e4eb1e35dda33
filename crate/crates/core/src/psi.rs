//! The rational functions attached to each domain and the fractional slice
//! maps between them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::point::{Point2, Point3, Point5, Point7};
use crate::{Error, Result};

/// Which rational function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsiVariant {
    /// (x1 - z x3 - w x5 + zw x7) / (1 - z x2 - w x4 + zw x6)
    Psi7_1,
    /// (x2 - z x3 - w x6 + zw x7) / (1 - z x1 - w x4 + zw x5)
    Psi7_2,
    /// (x4 - z x5 - w x6 + zw x7) / (1 - z x1 - w x2 + zw x3)
    Psi7_3,
    /// (x3 z^2 - x2 z + x1) / (y2 z^2 - y1 z + 1)
    Psi5,
    /// (a - z p) / (1 - z b) on a tetrablock triple (a, b, p)
    Psi3,
}

/// Numerator and denominator of the seven-variable functions at (z, w).
pub fn psi7_parts(variant: PsiVariant, z: Complex64, w: Complex64, x: &Point7) -> (Complex64, Complex64) {
    let [x1, x2, x3, x4, x5, x6, x7] = x.coords;
    let zw = z * w;
    match variant {
        PsiVariant::Psi7_1 => (x1 - z * x3 - w * x5 + zw * x7, Complex64::new(1.0, 0.0) - z * x2 - w * x4 + zw * x6),
        PsiVariant::Psi7_2 => (x2 - z * x3 - w * x6 + zw * x7, Complex64::new(1.0, 0.0) - z * x1 - w * x4 + zw * x5),
        PsiVariant::Psi7_3 => (x4 - z * x5 - w * x6 + zw * x7, Complex64::new(1.0, 0.0) - z * x1 - w * x2 + zw * x3),
        _ => unreachable!("psi7_parts expects a seven-variable variant"),
    }
}

/// Numerator and denominator of the five-variable function at z.
pub fn psi5_parts(z: Complex64, x: &Point5) -> (Complex64, Complex64) {
    let [x1, x2, x3, y1, y2] = x.coords;
    let z2 = z * z;
    (x3 * z2 - x2 * z + x1, y2 * z2 - y1 * z + Complex64::new(1.0, 0.0))
}

/// Numerator and denominator of the tetrablock function at z.
pub fn psi3_parts(z: Complex64, x: &Point3) -> (Complex64, Complex64) {
    let [a, b, p] = x.coords;
    (a - z * p, Complex64::new(1.0, 0.0) - z * b)
}

fn ratio(num: Complex64, den: Complex64, tol: f64, at: Complex64) -> Result<Complex64> {
    if den.norm() <= tol {
        return Err(Error::DenominatorVanishes { re: at.re, im: at.im });
    }
    Ok(num / den)
}

/// Evaluates a seven-variable function; `params = (z, w)`.
pub fn psi_eval7(variant: PsiVariant, z: Complex64, w: Complex64, x: &Point7, tol: f64) -> Result<Complex64> {
    let (num, den) = psi7_parts(variant, z, w, x);
    ratio(num, den, tol, z)
}

pub fn psi_eval5(z: Complex64, x: &Point5, tol: f64) -> Result<Complex64> {
    let (num, den) = psi5_parts(z, x);
    ratio(num, den, tol, z)
}

pub fn psi_eval3(z: Complex64, x: &Point3, tol: f64) -> Result<Complex64> {
    let (num, den) = psi3_parts(z, x);
    ratio(num, den, tol, z)
}

/// Fractional slice maps between the domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SliceVariant {
    /// C^7 -> C^3, slice in the first coordinate:
    /// ((x2 - z x3)/(1 - x1 z), (x4 - z x5)/(1 - x1 z), (x6 - z x7)/(1 - x1 z))
    Xt,
    /// C^7 -> C^3, slice in the second coordinate:
    /// ((x1 - z x3)/(1 - x2 z), (x4 - z x6)/(1 - x2 z), (x5 - z x7)/(1 - x2 z))
    Yt,
    /// C^7 -> C^3, slice in the fourth coordinate:
    /// ((x1 - z x5)/(1 - x4 z), (x2 - z x6)/(1 - x4 z), (x3 - z x7)/(1 - x4 z))
    Zt,
    /// C^5 -> C^3:
    /// ((2 x1 - z x2)/(2 - y1 z), (y1 - 2 z y2)/(2 - y1 z), (x2 - 2 z x3)/(2 - y1 z))
    P5,
    /// C^5 -> C^2: ((y1 - z x2)/(1 - z x1), (y2 - z x3)/(1 - z x1))
    Sym5,
}

pub fn slice7(variant: SliceVariant, z: Complex64, x: &Point7, tol: f64) -> Result<Point3> {
    let [x1, x2, x3, x4, x5, x6, x7] = x.coords;
    let one = Complex64::new(1.0, 0.0);
    let (den, nums) = match variant {
        SliceVariant::Xt => (one - x1 * z, [x2 - z * x3, x4 - z * x5, x6 - z * x7]),
        SliceVariant::Yt => (one - x2 * z, [x1 - z * x3, x4 - z * x6, x5 - z * x7]),
        SliceVariant::Zt => (one - x4 * z, [x1 - z * x5, x2 - z * x6, x3 - z * x7]),
        _ => return Err(Error::InvalidInput("slice variant needs a five-coordinate point".into())),
    };
    if den.norm() <= tol {
        return Err(Error::DenominatorVanishes { re: z.re, im: z.im });
    }
    Point3::new([nums[0] / den, nums[1] / den, nums[2] / den])
}

pub fn slice5_p(z: Complex64, x: &Point5, tol: f64) -> Result<Point3> {
    let [x1, x2, x3, y1, y2] = x.coords;
    let two = Complex64::new(2.0, 0.0);
    let den = two - y1 * z;
    if den.norm() <= tol {
        return Err(Error::DenominatorVanishes { re: z.re, im: z.im });
    }
    Point3::new([
        (two * x1 - z * x2) / den,
        (y1 - two * z * y2) / den,
        (x2 - two * z * x3) / den,
    ])
}

pub fn slice5_sym(z: Complex64, x: &Point5, tol: f64) -> Result<Point2> {
    let [x1, x2, x3, y1, y2] = x.coords;
    let den = Complex64::new(1.0, 0.0) - z * x1;
    if den.norm() <= tol {
        return Err(Error::DenominatorVanishes { re: z.re, im: z.im });
    }
    Ok(Point2::new((y1 - z * x2) / den, (y2 - z * x3) / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point7;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample7() -> Point7 {
        Point7::new([
            c(0.11, 0.02),
            c(-0.21, 0.13),
            c(0.05, -0.08),
            c(0.17, 0.19),
            c(-0.06, 0.03),
            c(0.09, -0.14),
            c(0.02, 0.21),
        ])
        .unwrap()
    }

    #[test]
    fn psi7_at_origin_is_x1() {
        let x = sample7();
        let v = psi_eval7(PsiVariant::Psi7_1, c(0.0, 0.0), c(0.0, 0.0), &x, 1e-12).unwrap();
        assert!((v - x.coords[0]).norm() < 1e-15);
    }

    #[test]
    fn psi7_on_all_ones_is_one() {
        // Numerator and denominator both factor as (1 - z)(1 - w).
        let ones = Point7::new([c(1.0, 0.0); 7]).unwrap();
        for (z, w) in [(c(0.3, 0.2), c(-0.4, 0.1)), (c(0.0, 0.5), c(0.2, -0.7))] {
            let v = psi_eval7(PsiVariant::Psi7_1, z, w, &ones, 1e-12).unwrap();
            assert!((v - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn psi5_at_origin_is_x1() {
        let x = Point5::new([c(0.3, -0.2), c(0.1, 0.0), c(0.0, 0.4), c(0.2, 0.2), c(-0.1, 0.1)]).unwrap();
        let v = psi_eval5(c(0.0, 0.0), &x, 1e-12).unwrap();
        assert!((v - x.coords[0]).norm() < 1e-15);
    }

    #[test]
    fn slices_at_zero_pick_coordinates() {
        let x = sample7();
        let zt = slice7(SliceVariant::Zt, c(0.0, 0.0), &x, 1e-12).unwrap();
        assert_eq!(zt.coords, [x.coords[0], x.coords[1], x.coords[2]]);
        let xt = slice7(SliceVariant::Xt, c(0.0, 0.0), &x, 1e-12).unwrap();
        assert_eq!(xt.coords, [x.coords[1], x.coords[3], x.coords[5]]);
        let p = Point5::new([c(0.3, 0.0), c(0.4, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.0, 0.1)]).unwrap();
        let p5 = slice5_p(c(0.0, 0.0), &p, 1e-12).unwrap();
        assert!((p5.coords[0] - c(0.3, 0.0)).norm() < 1e-15);
        assert!((p5.coords[1] - c(0.1, 0.0)).norm() < 1e-15);
        assert!((p5.coords[2] - c(0.2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn slice_identity_psi7_equals_psi3_of_zt_slice() {
        let x = sample7();
        for (z, w) in [(c(0.4, 0.1), c(-0.3, 0.2)), (c(-0.2, -0.5), c(0.1, 0.6))] {
            let lhs = psi_eval7(PsiVariant::Psi7_1, z, w, &x, 1e-12).unwrap();
            let sliced = slice7(SliceVariant::Zt, w, &x, 1e-12).unwrap();
            let rhs = psi_eval3(z, &sliced, 1e-12).unwrap();
            assert!((lhs - rhs).norm() < 1e-12, "slice identity failed at ({z}, {w})");
        }
    }

    #[test]
    fn denominator_vanishing_is_reported() {
        let x = Point7::new([c(1.0, 0.0); 7]).unwrap();
        let err = slice7(SliceVariant::Xt, c(1.0, 0.0), &x, 1e-12);
        assert!(matches!(err, Err(Error::DenominatorVanishes { .. })));
    }
}
