//! Seeded generators for domain points, boundary-set points, operator
//! triples/tuples and valid model coefficients.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cmatrix::CMatrix;
use crate::membership::{membership_gamma5, membership_gamma7, Category};
use crate::models::{
    build_pure_isometry5, build_pure_isometry7, BlockUnitary3, IsometryModelCoeffs5,
    IsometryModelCoeffs7,
};
use crate::mu::{mu_estimate, pi_point5, pi_point7, structure_gamma7};
use crate::point::{Point5, Point7};
use crate::random::{disc_point, ginibre, haar_unitary};
use crate::tuples::{Tuple3, Tuple5, Tuple7};
use crate::{Error, Result, ToleranceConfig};

/// What to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Interior7,
    Interior5,
    BoundaryK,
    BoundaryK1,
    TetraContraction,
    Gamma7Unitary,
    PureIsometry7,
    PureIsometry5,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleSpec {
    pub kind: SampleKind,
    pub count: usize,
    pub seed: u64,
}

/// Output of the sampler, shaped by the requested kind.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Samples {
    Points7(Vec<Point7>),
    Points5(Vec<Point5>),
    Triples(Vec<Tuple3>),
    Tuples7(Vec<Tuple7>),
    Tuples5(Vec<Tuple5>),
}

/// Image of a Haar-random 3x3 unitary under the seven-coordinate map; lies
/// in the boundary candidate set.
pub fn haar_point7(rng: &mut impl Rng) -> Point7 {
    pi_point7(&haar_unitary(3, rng)).expect("3x3 input")
}

/// Image of a Haar-random 3x3 unitary under the five-coordinate map.
pub fn haar_point5(rng: &mut impl Rng) -> Point5 {
    pi_point5(&haar_unitary(3, rng)).expect("3x3 input")
}

/// Interior point of the seven-variable domain with membership margin at
/// least the undetermined band, built by rescaling a random image.
pub fn interior_point7(rng: &mut impl Rng, cfg: &ToleranceConfig) -> Result<Point7> {
    for _ in 0..40 {
        let g = ginibre(3, rng);
        let mu = mu_estimate(&structure_gamma7(), &g, cfg)?;
        if mu <= 1e-9 {
            continue;
        }
        let rho = rng.gen_range(0.15..0.85);
        let mut scale = rho / mu;
        for _ in 0..20 {
            let p = pi_point7(&g.scale(Complex64::new(scale, 0.0)))?;
            let v = membership_gamma7(&p, false, cfg);
            if v.category == Category::Interior && v.margin >= cfg.undetermined_band {
                return Ok(p);
            }
            scale *= 0.85;
        }
    }
    Err(Error::InvalidInput(
        "failed to generate an interior point".into(),
    ))
}

/// Interior point of the five-variable domain.
pub fn interior_point5(rng: &mut impl Rng, cfg: &ToleranceConfig) -> Result<Point5> {
    for _ in 0..40 {
        let g = ginibre(3, rng);
        let mu = mu_estimate(&crate::mu::structure_gamma5(), &g, cfg)?;
        if mu <= 1e-9 {
            continue;
        }
        let rho = rng.gen_range(0.15..0.85);
        let mut scale = rho / mu;
        for _ in 0..20 {
            let p = pi_point5(&g.scale(Complex64::new(scale, 0.0)))?;
            let v = membership_gamma5(&p, false, cfg);
            if v.category == Category::Interior && v.margin >= cfg.undetermined_band {
                return Ok(p);
            }
            scale *= 0.85;
        }
    }
    Err(Error::InvalidInput(
        "failed to generate an interior point".into(),
    ))
}

/// Scalar tetrablock point (m11, m22, det M) of a 2x2 contraction.
pub fn scalar_tetra_point(rng: &mut impl Rng) -> [Complex64; 3] {
    let g = ginibre(2, rng);
    let rho = rng.gen_range(0.05..0.95);
    let m = g.scale(Complex64::new(rho / g.norm_op().max(1e-9), 0.0));
    let det = m.entry(0, 0) * m.entry(1, 1) - m.entry(0, 1) * m.entry(1, 0);
    [m.entry(0, 0), m.entry(1, 1), det]
}

/// Direct sum of scalar tetrablock points as a commuting diagonal triple.
pub fn tetra_contraction_triple(dim: usize, rng: &mut impl Rng) -> Tuple3 {
    let mut a = Vec::with_capacity(dim);
    let mut b = Vec::with_capacity(dim);
    let mut p = Vec::with_capacity(dim);
    for _ in 0..dim {
        let [x1, x2, x3] = scalar_tetra_point(rng);
        a.push(x1);
        b.push(x2);
        p.push(x3);
    }
    Tuple3::from_parts(
        CMatrix::diagonal(&a),
        CMatrix::diagonal(&b),
        CMatrix::diagonal(&p),
    )
    .expect("diagonal triple")
}

/// Block unitary with commuting normal blocks built from a common
/// eigenframe over scalar 3x3 unitaries.
pub fn random_block_unitary(block_dim: usize, rng: &mut impl Rng) -> BlockUnitary3 {
    let frame = haar_unitary(block_dim, rng);
    let scalars: Vec<CMatrix> = (0..block_dim).map(|_| haar_unitary(3, rng)).collect();
    let blocks: Vec<Vec<CMatrix>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let diag: Vec<Complex64> = scalars.iter().map(|u| u.entry(i, j)).collect();
                    CMatrix::new(
                        frame.matrix() * CMatrix::diagonal(&diag).matrix() * frame.matrix().adjoint(),
                    )
                    .expect("finite block")
                })
                .collect()
        })
        .collect();
    BlockUnitary3::new(blocks).expect("3x3 grid")
}

/// Simultaneously diagonalizable coefficient family for the
/// seven-coordinate model, rescaled pairwise to meet the norm caps.
pub fn random_model_coeffs7(e_dim: usize, rng: &mut impl Rng) -> IsometryModelCoeffs7 {
    let frame = haar_unitary(e_dim, rng);
    let mut diags: Vec<Vec<Complex64>> = (0..6)
        .map(|_| (0..e_dim).map(|_| disc_point(rng)).collect())
        .collect();
    for i in 0..3 {
        let j = 5 - i;
        let cap: f64 = (0..e_dim)
            .map(|t| diags[i][t].norm() + diags[j][t].norm())
            .fold(0.0, f64::max);
        let target = rng.gen_range(0.3..0.95);
        let c = if cap > 0.0 { target / cap } else { 1.0 };
        for t in 0..e_dim {
            diags[i][t] *= c;
            diags[j][t] *= c;
        }
    }
    let a: Vec<CMatrix> = diags
        .iter()
        .map(|d| {
            CMatrix::new(frame.matrix() * CMatrix::diagonal(d).matrix() * frame.matrix().adjoint())
                .expect("finite coefficient")
        })
        .collect();
    IsometryModelCoeffs7::new(a).expect("six coefficients")
}

/// Five-coordinate analog with caps 1 for the B pair and 2 for the C pair.
pub fn random_model_coeffs5(f_dim: usize, rng: &mut impl Rng) -> IsometryModelCoeffs5 {
    let frame = haar_unitary(f_dim, rng);
    let mut diag = |cap: f64| -> (Vec<Complex64>, Vec<Complex64>) {
        let x: Vec<Complex64> = (0..f_dim).map(|_| disc_point(rng)).collect();
        let y: Vec<Complex64> = (0..f_dim).map(|_| disc_point(rng)).collect();
        let worst: f64 = (0..f_dim).map(|t| x[t].norm() + y[t].norm()).fold(0.0, f64::max);
        let target = rng.gen_range(0.3..0.95) * cap;
        let c = if worst > 0.0 { target / worst } else { 1.0 };
        (
            x.iter().map(|v| v * c).collect(),
            y.iter().map(|v| v * c).collect(),
        )
    };
    let (b1d, b2d) = diag(1.0);
    let (c1d, c2d) = diag(2.0);
    let lift = |d: &[Complex64]| {
        CMatrix::new(frame.matrix() * CMatrix::diagonal(d).matrix() * frame.matrix().adjoint())
            .expect("finite coefficient")
    };
    IsometryModelCoeffs5::new(lift(&b1d), lift(&b2d), lift(&c1d), lift(&c2d))
        .expect("common dimension")
}

/// Diagonal joint tuple whose joint eigenvalues are boundary-set points.
pub fn gamma7_unitary_tuple(dim: usize, rng: &mut impl Rng) -> Tuple7 {
    let points: Vec<Point7> = (0..dim).map(|_| haar_point7(rng)).collect();
    Tuple7::diagonal(&points)
}

pub fn sample(spec: &SampleSpec, cfg: &ToleranceConfig) -> Result<Samples> {
    if spec.count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(match spec.kind {
        SampleKind::Interior7 => Samples::Points7(
            (0..spec.count)
                .map(|_| interior_point7(&mut rng, cfg))
                .collect::<Result<_>>()?,
        ),
        SampleKind::Interior5 => Samples::Points5(
            (0..spec.count)
                .map(|_| interior_point5(&mut rng, cfg))
                .collect::<Result<_>>()?,
        ),
        SampleKind::BoundaryK => {
            Samples::Points7((0..spec.count).map(|_| haar_point7(&mut rng)).collect())
        }
        SampleKind::BoundaryK1 => {
            Samples::Points5((0..spec.count).map(|_| haar_point5(&mut rng)).collect())
        }
        SampleKind::TetraContraction => Samples::Triples(
            (0..spec.count)
                .map(|_| {
                    let dim = rng.gen_range(1..=16);
                    tetra_contraction_triple(dim, &mut rng)
                })
                .collect(),
        ),
        SampleKind::Gamma7Unitary => Samples::Tuples7(
            (0..spec.count)
                .map(|_| {
                    let dim = rng.gen_range(2..=6);
                    gamma7_unitary_tuple(dim, &mut rng)
                })
                .collect(),
        ),
        SampleKind::PureIsometry7 => Samples::Tuples7(
            (0..spec.count)
                .map(|_| {
                    let e_dim = rng.gen_range(1..=2);
                    let coeffs = random_model_coeffs7(e_dim, &mut rng);
                    build_pure_isometry7(&coeffs, 16, cfg)
                })
                .collect::<Result<_>>()?,
        ),
        SampleKind::PureIsometry5 => Samples::Tuples5(
            (0..spec.count)
                .map(|_| {
                    let f_dim = rng.gen_range(1..=2);
                    let coeffs = random_model_coeffs5(f_dim, &mut rng);
                    build_pure_isometry5(&coeffs, 16, cfg)
                })
                .collect::<Result<_>>()?,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{k1_membership, k_membership};
    use crate::tuples::{classify_tuple7, ClassifyKind};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn boundary_samples_hit_the_candidate_sets() {
        let cfg = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let p = haar_point7(&mut rng);
            let r = k_membership(&p, &cfg).unwrap();
            assert!(r.in_set, "residuals: {:?}", r.residuals);
            let q = haar_point5(&mut rng);
            let r = k1_membership(&q, &cfg).unwrap();
            assert!(r.in_set, "residuals: {:?}", r.residuals);
        }
    }

    #[test]
    fn interior_samples_are_interior() {
        let cfg = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let p = interior_point7(&mut rng, &cfg).unwrap();
            assert_eq!(membership_gamma7(&p, false, &cfg).category, Category::Interior);
            let q = interior_point5(&mut rng, &cfg).unwrap();
            assert_eq!(membership_gamma5(&q, false, &cfg).category, Category::Interior);
        }
    }

    #[test]
    fn unitary_tuples_classify_true() {
        let cfg = cfg();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let t = gamma7_unitary_tuple(4, &mut rng);
        let r = classify_tuple7(ClassifyKind::Unitary, &t, true, &cfg).unwrap();
        assert!(r.verdict);
    }

    #[test]
    fn sampler_is_seed_deterministic() {
        let cfg = cfg();
        let spec = SampleSpec {
            kind: SampleKind::BoundaryK,
            count: 3,
            seed: 99,
        };
        let a = serde_json::to_string(&sample(&spec, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&sample(&spec, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
