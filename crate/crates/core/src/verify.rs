//! Seeded property campaigns replaying the equivalences and implications
//! the library is built on. Suites report "no counterexample found at this
//! sampling scale", never a proof.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::boundary::{
    boundary_slice_check, k1_membership, k_membership, BoundaryPoint, BoundarySliceVariant,
};
use crate::cmatrix::CMatrix;
use crate::membership::{
    membership_gamma5, membership_gamma7, membership_sym2, membership_tetra3, Category,
};
use crate::models::{
    build_gamma5_unitary, build_gamma7_unitary, build_pure_isometry5, build_pure_isometry7,
    validate_model_coeffs5, validate_model_coeffs7, wold_decompose5, wold_decompose7,
};
use crate::mu::{mu_estimate, mu_membership, pi_point7, structure_gamma7};
use crate::oracle::{oracle_gamma5, oracle_gamma7, oracle_gamma7_slices};
use crate::point::{eta_project, rotate_point5, rotate_point7, Point3, Point7, RotationVariant};
use crate::psi::{psi_eval3, psi_eval5, psi_eval7, slice7, PsiVariant, SliceVariant};
use crate::random::{ginibre, haar_unitary, torus_point};
use crate::sample::{
    gamma7_unitary_tuple, haar_point5, haar_point7, interior_point5, interior_point7,
    random_block_unitary, random_model_coeffs5, random_model_coeffs7, scalar_tetra_point,
    tetra_contraction_triple,
};
use crate::tuples::{
    classify_tuple5, classify_tuple7, contraction_probe5, contraction_probe7, embed5to7,
    eta_family_classify, eta_project_tuple, rho_tetra, solve_fundamental, von_neumann_probe,
    ClassifyKind, Tuple3, Tuple5, Tuple7, VnProbeConfig,
};
use crate::{par, Error, Result, ToleranceConfig};

/// Size knobs of a verification campaign.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyOptions {
    /// Primary sample count (points, tuples, matrices).
    pub count: usize,
    /// Secondary sweep count (rotations, eta/omega samples).
    pub secondary: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            count: 50,
            secondary: 16,
            seed: 2024,
        }
    }
}

/// One property line of a suite report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property: String,
    pub cases: usize,
    pub passes: usize,
    pub worst_residual: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<serde_json::Value>,
}

impl PropertyResult {
    fn pass(&self) -> bool {
        self.passes == self.cases
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
    pub pass: bool,
}

struct PropertyTally {
    name: String,
    cases: usize,
    passes: usize,
    worst: f64,
    counterexamples: Vec<serde_json::Value>,
}

impl PropertyTally {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            passes: 0,
            worst: 0.0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, residual: f64, witness: impl FnOnce() -> serde_json::Value) {
        self.cases += 1;
        self.worst = self.worst.max(residual);
        if ok {
            self.passes += 1;
        } else if self.counterexamples.len() < 8 {
            self.counterexamples.push(witness());
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            property: self.name,
            cases: self.cases,
            passes: self.passes,
            worst_residual: self.worst,
            counterexamples: self.counterexamples,
        }
    }
}

fn report(suite: &str, seed: u64, tallies: Vec<PropertyTally>) -> SuiteReport {
    let properties: Vec<PropertyResult> = tallies.into_iter().map(|t| t.finish()).collect();
    let pass = properties.iter().all(|p| p.pass());
    SuiteReport {
        suite: suite.to_string(),
        seed,
        properties,
        pass,
    }
}

pub const SUITES: &[&str] = &[
    "rotations",
    "eta_transfer",
    "boundary_inclusion",
    "slice_boundary",
    "slice_identities",
    "membership_agreement",
    "mu_consistency",
    "contraction_necessary",
    "fundamental",
    "unitary_characterizations",
    "wold",
    "isometry_models",
    "transfers",
    "von_neumann",
];

pub fn run_suite(name: &str, opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    match name {
        "rotations" => rotations(opts, cfg),
        "eta_transfer" => eta_transfer(opts, cfg),
        "boundary_inclusion" => boundary_inclusion(opts, cfg),
        "slice_boundary" => slice_boundary(opts, cfg),
        "slice_identities" => slice_identities(opts, cfg),
        "membership_agreement" => membership_agreement(opts, cfg),
        "mu_consistency" => mu_consistency(opts, cfg),
        "contraction_necessary" => contraction_necessary(opts, cfg),
        "fundamental" => fundamental(opts, cfg),
        "unitary_characterizations" => unitary_characterizations(opts, cfg),
        "wold" => wold(opts, cfg),
        "isometry_models" => isometry_models(opts, cfg),
        "transfers" => transfers(opts, cfg),
        "von_neumann" => von_neumann(opts, cfg),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Mixed cloud of clearly-inside and clearly-outside points for category
/// comparisons.
fn mixed_point7(rng: &mut impl Rng, cfg: &ToleranceConfig) -> Result<Point7> {
    if rng.gen_bool(0.5) {
        interior_point7(rng, cfg)
    } else {
        let p = interior_point7(rng, cfg)?;
        Ok(p.scale(Complex64::new(rng.gen_range(1.5..4.0), 0.0)))
    }
}

fn mixed_point5(rng: &mut impl Rng, cfg: &ToleranceConfig) -> Result<crate::point::Point5> {
    if rng.gen_bool(0.5) {
        interior_point5(rng, cfg)
    } else {
        let p = interior_point5(rng, cfg)?;
        Ok(p.scale(Complex64::new(rng.gen_range(1.5..4.0), 0.0)))
    }
}

fn rotations(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t7 = PropertyTally::new("membership category invariant under the three 7-coordinate actions");
    let mut t5 = PropertyTally::new("membership category invariant under the 5-coordinate action");
    for _ in 0..opts.count {
        let p7 = mixed_point7(&mut rng, cfg)?;
        let base = membership_gamma7(&p7, false, cfg);
        if base.margin.abs() <= cfg.undetermined_band {
            continue;
        }
        for variant in [RotationVariant::V2, RotationVariant::V2P, RotationVariant::V2PP] {
            for k in 0..opts.secondary {
                let omega = Complex64::from_polar(
                    1.0,
                    k as f64 * std::f64::consts::TAU / opts.secondary as f64,
                );
                let rotated = rotate_point7(&p7, omega, variant)?;
                let v = membership_gamma7(&rotated, false, cfg);
                let ok = v.category == base.category;
                t7.record(ok, (v.margin - base.margin).abs(), || {
                    json!({"point": p7, "omega": [omega.re, omega.im], "variant": format!("{variant:?}"),
                           "base": base.category, "rotated": v.category})
                });
            }
        }
        let p5 = mixed_point5(&mut rng, cfg)?;
        let base5 = membership_gamma5(&p5, false, cfg);
        if base5.margin.abs() <= cfg.undetermined_band {
            continue;
        }
        for k in 0..opts.secondary {
            let omega = Complex64::from_polar(
                1.0,
                k as f64 * std::f64::consts::TAU / opts.secondary as f64,
            );
            let rotated = rotate_point5(&p5, omega)?;
            let v = membership_gamma5(&rotated, false, cfg);
            t5.record(v.category == base5.category, (v.margin - base5.margin).abs(), || {
                json!({"point": p5, "omega": [omega.re, omega.im],
                       "base": base5.category, "rotated": v.category})
            });
        }
    }
    Ok(report("rotations", opts.seed, vec![t7, t5]))
}

fn eta_transfer(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut forward =
        PropertyTally::new("interior 7-points project to interior 5-points for all sampled eta");
    let mut converse =
        PropertyTally::new("clearly-outside 7-points fail for some sampled eta");
    let etas: Vec<Complex64> = (0..opts.secondary.max(8))
        .map(|k| {
            Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / opts.secondary.max(8) as f64)
        })
        .collect();
    for _ in 0..opts.count {
        let p = interior_point7(&mut rng, cfg)?;
        let mut ok = true;
        let mut worst = 0.0f64;
        for &eta in &etas {
            let q = eta_project(&p, eta)?;
            let v = membership_gamma5(&q, false, cfg);
            worst = worst.max((-v.margin).max(0.0));
            if v.category != Category::Interior {
                ok = false;
            }
        }
        forward.record(ok, worst, || json!({"point": p}));
    }
    for _ in 0..opts.count {
        let base = interior_point7(&mut rng, cfg)?;
        let out = base.scale(Complex64::new(rng.gen_range(1.6..4.0), 0.0));
        let v = membership_gamma7(&out, false, cfg);
        if v.category != Category::Outside || v.margin > -0.1 {
            continue;
        }
        let mut some_failed = false;
        for &eta in &etas {
            let q = eta_project(&out, eta)?;
            if membership_gamma5(&q, false, cfg).category != Category::Interior {
                some_failed = true;
                break;
            }
        }
        converse.record(some_failed, 0.0, || json!({"point": out}));
    }
    Ok(report("eta_transfer", opts.seed, vec![forward, converse]))
}

fn boundary_inclusion(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let seeds: Vec<u64> = (0..opts.count as u64).map(|k| opts.seed.wrapping_add(k)).collect();
    let outcomes = par::collect_over(seeds.len(), |i| -> Result<(f64, f64, bool, bool)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seeds[i]);
        let u = haar_unitary(3, &mut rng);
        let p7 = pi_point7(&u)?;
        let p5 = crate::mu::pi_point5(&u)?;
        let r7 = k_membership(&p7, cfg)?;
        let r5 = k1_membership(&p5, cfg)?;
        let alg7 = r7.residuals.iter().take(6).map(|(_, v)| *v).fold(0.0, f64::max);
        let alg5 = r5.residuals.iter().take(3).map(|(_, v)| *v).fold(0.0, f64::max);
        Ok((alg7, alg5, r7.in_set, r5.in_set))
    });
    let mut t7 = PropertyTally::new("unitary images satisfy the 7-coordinate boundary relations");
    let mut t5 = PropertyTally::new("unitary images satisfy the 5-coordinate boundary relations");
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let (alg7, alg5, in7, in5) = outcome?;
        t7.record(in7 && alg7 < 1e-10, alg7, || json!({"seed": seeds[i]}));
        t5.record(in5 && alg5 < 1e-10, alg5, || json!({"seed": seeds[i]}));
    }
    Ok(report("boundary_inclusion", opts.seed, vec![t7, t5]))
}

fn slice_boundary(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut bw7 = PropertyTally::new("slice sweeps agree with the algebraic 7-coordinate set");
    let mut bw5 = PropertyTally::new("slice sweeps agree with the algebraic 5-coordinate set");
    let mut bsym = PropertyTally::new("bidisc boundary relations hold on symmetrized torus points");
    for k in 0..opts.count {
        // Alternate boundary and interior inputs.
        let p7 = if k % 2 == 0 {
            haar_point7(&mut rng)
        } else {
            interior_point7(&mut rng, cfg)?
        };
        let r = boundary_slice_check(BoundarySliceVariant::Bw7, BoundaryPoint::P7(&p7), cfg)?;
        bw7.record(r.residual("agrees_with_k") == Some(0.0), r.worst(), || json!({"point": p7}));
        let p5 = if k % 2 == 0 {
            haar_point5(&mut rng)
        } else {
            interior_point5(&mut rng, cfg)?
        };
        let r = boundary_slice_check(BoundarySliceVariant::Bw5, BoundaryPoint::P5(&p5), cfg)?;
        bw5.record(r.residual("agrees_with_k1") == Some(0.0), r.worst(), || json!({"point": p5}));
        let (l1, l2) = (torus_point(&mut rng), torus_point(&mut rng));
        let sym = crate::point::Point2::new(l1 + l2, l1 * l2);
        let r = boundary_slice_check(BoundarySliceVariant::BSym, BoundaryPoint::P2(&sym), cfg)?;
        bsym.record(r.in_set, r.worst(), || json!({"s_p": sym}));
    }
    Ok(report("slice_boundary", opts.seed, vec![bw7, bw5, bsym]))
}

fn slice_identities(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let tol = 1e-12;
    let mut id7 = PropertyTally::new("seven-variable function factors through the fractional slices");
    let mut id5 = PropertyTally::new("five-variable function factors through the p-slices");
    for _ in 0..opts.count {
        let p = interior_point7(&mut rng, cfg)?;
        for _ in 0..opts.secondary {
            let z = crate::random::disc_point(&mut rng);
            let w = crate::random::disc_point(&mut rng);
            let lhs = psi_eval7(PsiVariant::Psi7_1, z, w, &p, tol);
            let rhs = slice7(SliceVariant::Zt, w, &p, tol)
                .and_then(|s| psi_eval3(z, &s, tol));
            let rhs2 = slice7(SliceVariant::Yt, z, &p, tol)
                .and_then(|s| psi_eval3(w, &s, tol));
            match (lhs, rhs, rhs2) {
                (Ok(a), Ok(b), Ok(c)) => {
                    let res = (a - b).norm().max((a - c).norm());
                    id7.record(res < 1e-12, res, || json!({"point": p, "z": [z.re, z.im], "w": [w.re, w.im]}));
                }
                _ => continue,
            }
        }
        let q = interior_point5(&mut rng, cfg)?;
        for _ in 0..opts.secondary {
            let z = crate::random::disc_point(&mut rng);
            let lhs = psi_eval5(z, &q, tol);
            let rhs = crate::psi::slice5_p(z, &q, tol).and_then(|s| psi_eval3(z, &s, tol));
            if let (Ok(a), Ok(b)) = (lhs, rhs) {
                let res = (a - b).norm();
                id5.record(res < 1e-12, res, || json!({"point": q, "z": [z.re, z.im]}));
            }
        }
    }
    Ok(report("slice_identities", opts.seed, vec![id7, id5]))
}

fn membership_agreement(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t7 = PropertyTally::new("rational route vs polynomial grid on 7-points");
    let mut t5 = PropertyTally::new("rational route vs polynomial grid on 5-points");
    let mut slices = PropertyTally::new("rational route vs slice sweep on 7-points");
    for _ in 0..opts.count {
        let p = mixed_point7(&mut rng, cfg)?;
        let a = membership_gamma7(&p, false, cfg);
        let b = oracle_gamma7(&p, false, cfg);
        if a.margin.abs() > cfg.undetermined_band && b.margin.abs() > cfg.undetermined_band {
            t7.record(a.category == b.category, 0.0, || {
                json!({"point": p, "membership": a.category, "oracle": b.category,
                       "margins": [a.margin, b.margin]})
            });
            let c = oracle_gamma7_slices(&p, cfg);
            if c.margin.abs() > cfg.undetermined_band {
                slices.record(a.category == c.category, 0.0, || {
                    json!({"point": p, "membership": a.category, "slices": c.category})
                });
            }
        }
        let q = mixed_point5(&mut rng, cfg)?;
        let a = membership_gamma5(&q, false, cfg);
        let b = oracle_gamma5(&q, false, cfg);
        if a.margin.abs() > cfg.undetermined_band && b.margin.abs() > cfg.undetermined_band {
            t5.record(a.category == b.category, 0.0, || {
                json!({"point": q, "membership": a.category, "oracle": b.category})
            });
        }
    }
    Ok(report("membership_agreement", opts.seed, vec![t7, t5, slices]))
}

fn mu_consistency(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let s7 = structure_gamma7();
    let mut diag = PropertyTally::new("mu of diagonal matrices equals the largest coordinate modulus");
    let mut homog = PropertyTally::new("mu is positively homogeneous");
    let mut upper = PropertyTally::new("mu is bounded by the operator norm");
    let mut consistent = PropertyTally::new("mu membership matches domain membership of the image");
    for _ in 0..opts.count {
        let d: Vec<Complex64> = (0..3).map(|_| crate::random::disc_point(&mut rng) * 2.0).collect();
        let m = CMatrix::diagonal(&d);
        let mu = mu_estimate(&s7, &m, cfg)?;
        let want = d.iter().map(|z| z.norm()).fold(0.0, f64::max);
        diag.record((mu - want).abs() <= 1e-6, (mu - want).abs(), || {
            json!({"diag": d.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(), "mu": mu, "expected": want})
        });
        let g = ginibre(3, &mut rng);
        let mu_g = mu_estimate(&s7, &g, cfg)?;
        upper.record(mu_g <= g.norm_op() + 1e-6, (mu_g - g.norm_op()).max(0.0), || json!({"mu": mu_g}));
        for t in [0.5, 2.0] {
            let mu_t = mu_estimate(&s7, &g.scale(Complex64::new(t, 0.0)), cfg)?;
            homog.record(
                (mu_t - t * mu_g).abs() <= 1e-5 * (1.0 + mu_t),
                (mu_t - t * mu_g).abs(),
                || json!({"t": t, "mu": mu_g, "mu_t": mu_t}),
            );
        }
        let scaled = g.scale(Complex64::new(rng.gen_range(0.3..1.8) / mu_g.max(1e-9), 0.0));
        let mv = mu_membership(&s7, &scaled, false, cfg)?;
        let pv = membership_gamma7(&pi_point7(&scaled)?, false, cfg);
        if mv.margin.abs() > cfg.undetermined_band && pv.margin.abs() > cfg.undetermined_band {
            consistent.record(mv.category == pv.category, 0.0, || {
                json!({"mu_category": mv.category, "membership_category": pv.category})
            });
        }
    }
    Ok(report("mu_consistency", opts.seed, vec![diag, homog, upper, consistent]))
}

fn contraction_necessary(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut probe7 = PropertyTally::new("interior scalar 7-tuples pass the necessary battery");
    let mut probe5 = PropertyTally::new("projected 5-tuples pass the necessary battery");
    let mut coords = PropertyTally::new("coordinate projections land in the tetrablock");
    let mut sym_pairs = PropertyTally::new("fractional bidisc pairs are bidisc points");
    let mut scalar_match =
        PropertyTally::new("scalar probe verdict matches the membership verdict");
    for _ in 0..opts.count {
        let p = interior_point7(&mut rng, cfg)?;
        let t = Tuple7::scalar(&p);
        let r = contraction_probe7(&t, cfg)?;
        probe7.record(r.verdict, r.checks.worst(), || json!({"point": p}));
        // Projections (x1, x6, x7), (x2, x5, x7), (x3, x4, x7) are
        // tetrablock points for domain members.
        for (i, j) in [(0, 5), (1, 4), (2, 3)] {
            let sub = Point3::new([p.coords[i], p.coords[j], p.coords[6]])?;
            let v = membership_tetra3(&sub, true, cfg);
            coords.record(
                v.category != Category::Outside,
                (-v.margin).max(0.0),
                || json!({"point": p, "projection": [i, j]}),
            );
        }
        // The eta-projected scalar tuples are 5-tuple contractions.
        let eta = torus_point(&mut rng);
        let t5 = eta_project_tuple(&t, eta)?;
        let r5 = contraction_probe5(&t5, cfg)?;
        probe5.record(r5.verdict, r5.checks.worst(), || json!({"point": p, "eta": [eta.re, eta.im]}));
        // Bidisc pairs of the five-coordinate family (sampled z).
        let q = interior_point5(&mut rng, cfg)?;
        let z = crate::random::disc_point(&mut rng);
        if let Ok(crate::tuples::FractionalImage::Pair(s, pp)) = crate::tuples::fractional_family(
            crate::tuples::FractionalVariant::F5Sym,
            &Tuple5::scalar(&q).operators,
            z,
            cfg,
        ) {
            let v = membership_sym2(
                &crate::point::Point2::new(s.entry(0, 0), pp.entry(0, 0)),
                true,
                cfg,
            );
            sym_pairs.record(
                v.category != Category::Outside,
                (-v.margin).max(0.0),
                || json!({"point": q, "z": [z.re, z.im]}),
            );
        }
        // A clearly-outside scalar tuple must be falsified.
        let out = p.scale(Complex64::new(rng.gen_range(1.8..4.0), 0.0));
        let vout = membership_gamma7(&out, false, cfg);
        if vout.margin < -cfg.undetermined_band {
            let r = contraction_probe7(&Tuple7::scalar(&out), cfg)?;
            scalar_match.record(!r.verdict, 0.0, || json!({"point": out}));
        }
    }
    Ok(report(
        "contraction_necessary",
        opts.seed,
        vec![probe7, probe5, coords, sym_pairs, scalar_match],
    ))
}

fn fundamental(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut resid = PropertyTally::new("sandwich equations solve with small residuals");
    let mut radius = PropertyTally::new("numerical radius of F1 + omega F2 stays at most one");
    let mut scalar = PropertyTally::new("scalar solutions match the closed formula");
    let mut vanish = PropertyTally::new("tetra rho vanishes on boundary-unitary scalar triples");
    for _ in 0..opts.count {
        let dim = rng.gen_range(1..=16);
        let triple = tetra_contraction_triple(dim, &mut rng);
        let sol = solve_fundamental(&triple, cfg)?;
        let worst = sol.residual1.max(sol.residual2);
        resid.record(worst < 1e-8, worst, || json!({"dim": dim}));
        radius.record(sol.max_radius() <= 1.0 + 1e-8, (sol.max_radius() - 1.0).max(0.0), || {
            json!({"dim": dim, "max_radius": sol.max_radius()})
        });
        let [a, b, p] = scalar_tetra_point(&mut rng);
        let t = Tuple3::from_parts(CMatrix::scalar(a), CMatrix::scalar(b), CMatrix::scalar(p))?;
        let sol = solve_fundamental(&t, cfg)?;
        let denom = 1.0 - p.norm_sqr();
        let f1 = (a - b.conj() * p) / denom;
        let f2 = (b - a.conj() * p) / denom;
        let err = (sol.f1.entry(0, 0) - f1).norm().max((sol.f2.entry(0, 0) - f2).norm());
        scalar.record(err < 1e-12, err, || json!({"a": [a.re, a.im]}));
        // Boundary-unitary scalar triple.
        let pp = torus_point(&mut rng);
        let bb = crate::random::disc_point(&mut rng);
        let aa = bb.conj() * pp;
        let mut worst_rho = 0.0f64;
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 64.0);
            let r = rho_tetra(
                &CMatrix::scalar(aa),
                &CMatrix::scalar(bb).scale(z),
                &CMatrix::scalar(pp).scale(z),
            );
            worst_rho = worst_rho.max(r.norm_op());
        }
        vanish.record(worst_rho < 1e-12, worst_rho, || json!({"b": [bb.re, bb.im]}));
    }
    Ok(report("fundamental", opts.seed, vec![resid, radius, scalar, vanish]))
}

fn unitary_characterizations(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut built7 = PropertyTally::new("block-unitary 7-tuples classify as unitaries with boundary spectra");
    let mut built5 = PropertyTally::new("block-unitary 5-tuples classify as unitaries with boundary spectra");
    let mut eta_equiv = PropertyTally::new("eta families of unitaries are 5-coordinate unitaries");
    let mut rot = PropertyTally::new("unitary verdict invariant under the scalar actions");
    for _ in 0..opts.count {
        let m = [1usize, 2, 4][rng.gen_range(0..3)];
        let u = random_block_unitary(m, &mut rng);
        let t7 = build_gamma7_unitary(&u, cfg)?;
        let r7 = classify_tuple7(ClassifyKind::Unitary, &t7, true, cfg)?;
        built7.record(r7.verdict, r7.checks.worst(), || json!({"block_dim": m}));
        let t5 = build_gamma5_unitary(&u, cfg)?;
        let r5 = classify_tuple5(ClassifyKind::Unitary, &t5, true, cfg)?;
        built5.record(r5.verdict, r5.checks.worst(), || json!({"block_dim": m}));
        let eta_report = eta_family_classify(&t7, ClassifyKind::Unitary, opts.secondary, cfg)?;
        eta_equiv.record(eta_report.verdict, eta_report.checks.worst(), || json!({"block_dim": m}));
        // One sampled rotation of the first action keeps the verdict.
        let omega = torus_point(&mut rng);
        let powers = [1u32, 0, 1, 1, 2, 1, 2];
        let rotated = Tuple7::new(
            t7.operators
                .iter()
                .zip(powers.iter())
                .map(|(op, &k)| op.scale(omega.powu(k)))
                .collect(),
        )?;
        let rr = classify_tuple7(ClassifyKind::Unitary, &rotated, false, cfg)?;
        rot.record(rr.verdict, rr.checks.worst(), || json!({"omega": [omega.re, omega.im]}));
    }
    Ok(report(
        "unitary_characterizations",
        opts.seed,
        vec![built7, built5, eta_equiv, rot],
    ))
}

fn wold(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut dims = PropertyTally::new("direct sums split back into their summands");
    let mut parts = PropertyTally::new("restricted parts classify as unitary and pure isometry");
    let mut five = PropertyTally::new("five-coordinate decomposition splits the analog sums");
    for _ in 0..opts.count {
        let udim = rng.gen_range(2..=6);
        let unitary = gamma7_unitary_tuple(udim, &mut rng);
        let e_dim = rng.gen_range(1..=2);
        let coeffs = random_model_coeffs7(e_dim, &mut rng);
        let n_blocks = 8;
        let pure = build_pure_isometry7(&coeffs, n_blocks, cfg)?;
        let mut ops: Vec<CMatrix> = (0..7)
            .map(|k| CMatrix::direct_sum(&[unitary.op(k), pure.op(k)]))
            .collect();
        // Optionally hide the splitting behind a random rotation.
        let rotate = rng.gen_bool(0.5);
        let frame = if rotate {
            Some(haar_unitary(udim + e_dim * n_blocks, &mut rng))
        } else {
            None
        };
        if let Some(f) = &frame {
            for op in ops.iter_mut() {
                *op = CMatrix::new(f.matrix() * op.matrix() * f.matrix().adjoint())?;
            }
        }
        let mut edge = nalgebra::DMatrix::zeros(udim + e_dim * n_blocks, e_dim);
        for k in 0..e_dim {
            edge[(udim + e_dim * (n_blocks - 1) + k, k)] = Complex64::new(1.0, 0.0);
        }
        if let Some(f) = &frame {
            edge = f.matrix() * edge;
        }
        let joint = Tuple7::new(ops)?.with_edge(edge);
        let wd = wold_decompose7(&joint, cfg)?;
        dims.record(
            wd.unitary_dim() == udim && wd.reducing_residual < 1e-8,
            wd.reducing_residual,
            || json!({"unitary_dim": udim, "got": wd.unitary_dim()}),
        );
        let ru = classify_tuple7(ClassifyKind::Unitary, &wd.restricted_unitary, false, cfg)?;
        let rp = classify_tuple7(ClassifyKind::Isometry, &wd.restricted_pure, false, cfg)?;
        let inner = wold_decompose7(&wd.restricted_pure, cfg)?;
        parts.record(
            ru.verdict && rp.verdict && inner.unitary_dim() == 0,
            ru.checks.worst().max(rp.checks.worst()),
            || json!({"unitary_dim": udim}),
        );
        // Five-coordinate analog on the eta projection (eta = 1).
        let joint5 = eta_project_tuple(&joint, Complex64::new(1.0, 0.0))?;
        let wd5 = wold_decompose5(&joint5, cfg)?;
        five.record(
            wd5.unitary_dim() == udim && wd5.reducing_residual < 1e-8,
            wd5.reducing_residual,
            || json!({"unitary_dim": udim, "got": wd5.unitary_dim()}),
        );
    }
    Ok(report("wold", opts.seed, vec![dims, parts, five]))
}

fn isometry_models(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut validate7 = PropertyTally::new("generated 7-model coefficients validate");
    let mut built7 = PropertyTally::new("built 7-models classify as isometries off the edge");
    let mut validate5 = PropertyTally::new("generated 5-model coefficients validate");
    let mut built5 = PropertyTally::new("built 5-models classify as isometries off the edge");
    for _ in 0..opts.count {
        let e_dim = rng.gen_range(1..=3);
        let coeffs = random_model_coeffs7(e_dim, &mut rng);
        let v = validate_model_coeffs7(&coeffs, cfg);
        validate7.record(v.verdict, v.checks.worst(), || json!({"e_dim": e_dim}));
        let t = build_pure_isometry7(&coeffs, 32, cfg)?;
        let r = classify_tuple7(ClassifyKind::Isometry, &t, false, cfg)?;
        built7.record(r.verdict, r.checks.worst(), || json!({"e_dim": e_dim}));
        let f_dim = rng.gen_range(1..=3);
        let coeffs5 = random_model_coeffs5(f_dim, &mut rng);
        let v = validate_model_coeffs5(&coeffs5, cfg);
        validate5.record(v.verdict, v.checks.worst(), || json!({"f_dim": f_dim}));
        let t5 = build_pure_isometry5(&coeffs5, 32, cfg)?;
        let r = classify_tuple5(ClassifyKind::Isometry, &t5, false, cfg)?;
        built5.record(r.verdict, r.checks.worst(), || json!({"f_dim": f_dim}));
    }
    Ok(report(
        "isometry_models",
        opts.seed,
        vec![validate7, built7, validate5, built5],
    ))
}

fn transfers(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut eta_iso = PropertyTally::new("eta families of pure 7-models are 5-coordinate isometries");
    let mut embed = PropertyTally::new("the 5-to-7 embedding preserves classification");
    for _ in 0..opts.count {
        let e_dim = rng.gen_range(1..=2);
        let coeffs = random_model_coeffs7(e_dim, &mut rng);
        let t = build_pure_isometry7(&coeffs, 16, cfg)?;
        let r = eta_family_classify(&t, ClassifyKind::Isometry, opts.secondary, cfg)?;
        eta_iso.record(r.verdict, r.checks.worst(), || json!({"e_dim": e_dim}));
        // Embed a built unitary 5-tuple and a built 5-model.
        let u = random_block_unitary(1, &mut rng);
        let t5 = build_gamma5_unitary(&u, cfg)?;
        let t7 = embed5to7(&t5)?;
        let r5 = classify_tuple5(ClassifyKind::Unitary, &t5, false, cfg)?;
        let r7 = classify_tuple7(ClassifyKind::Unitary, &t7, false, cfg)?;
        let mut ok = r5.verdict == r7.verdict;
        let coeffs5 = random_model_coeffs5(1, &mut rng);
        let m5 = build_pure_isometry5(&coeffs5, 12, cfg)?;
        let m7 = embed5to7(&m5)?;
        let s5 = classify_tuple5(ClassifyKind::Isometry, &m5, false, cfg)?;
        let s7 = classify_tuple7(ClassifyKind::Isometry, &m7, false, cfg)?;
        ok = ok && s5.verdict == s7.verdict && s5.verdict;
        embed.record(ok, r7.checks.worst().max(s7.checks.worst()), || json!({}));
    }
    Ok(report("transfers", opts.seed, vec![eta_iso, embed]))
}

fn von_neumann(opts: &VerifyOptions, cfg: &ToleranceConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut clean = PropertyTally::new("no violations on interior scalar tuples");
    let mut planted = PropertyTally::new("planted outside tuples are flagged");
    let probe = VnProbeConfig {
        n_polys: 50,
        seed: opts.seed ^ 0x9e37,
        ..VnProbeConfig::default()
    };
    for _ in 0..opts.count {
        let p = interior_point7(&mut rng, cfg)?;
        let r = von_neumann_probe(&Tuple7::scalar(&p), &probe, cfg)?;
        clean.record(r.verdict, r.checks.worst(), || json!({"point": p}));
        let out = p.scale(Complex64::new(rng.gen_range(1.5..3.0), 0.0));
        let v = membership_gamma7(&out, false, cfg);
        if v.margin < -0.2 {
            let r = von_neumann_probe(&Tuple7::scalar(&out), &probe, cfg)?;
            planted.record(!r.verdict, 0.0, || json!({"point": out}));
        }
    }
    Ok(report("von_neumann", opts.seed, vec![clean, planted]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_reported() {
        let cfg = ToleranceConfig::default();
        assert!(matches!(
            run_suite("nope", &VerifyOptions::default(), &cfg),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn small_rotation_suite_passes() {
        let cfg = ToleranceConfig::default();
        let opts = VerifyOptions {
            count: 4,
            secondary: 4,
            seed: 5,
        };
        let r = run_suite("rotations", &opts, &cfg).unwrap();
        assert!(r.pass, "{:?}", r.properties);
    }

    #[test]
    fn small_boundary_inclusion_passes() {
        let cfg = ToleranceConfig::default();
        let opts = VerifyOptions {
            count: 10,
            secondary: 4,
            seed: 5,
        };
        let r = run_suite("boundary_inclusion", &opts, &cfg).unwrap();
        assert!(r.pass, "{:?}", r.properties);
    }
}
