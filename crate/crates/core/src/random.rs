//! Seeded random matrix factories shared by the samplers and probes.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::cmatrix::CMatrix;

/// Complex Ginibre sample: independent standard complex Gaussian entries.
pub fn ginibre(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let m = DMatrix::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    });
    CMatrix::new(m).expect("gaussian entries are finite")
}

/// Haar-distributed unitary via QR of a Ginibre sample with the phase fix
/// that makes the factorization unique.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let g = ginibre(dim, rng);
    let qr = g.into_matrix().qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    CMatrix::new(q).expect("unitary factor is finite")
}

/// Uniform point of the open unit disc.
pub fn disc_point(rng: &mut impl Rng) -> Complex64 {
    let r: f64 = rng.gen_range(0.0f64..1.0).sqrt();
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

/// Uniform unimodular number.
pub fn torus_point(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}
