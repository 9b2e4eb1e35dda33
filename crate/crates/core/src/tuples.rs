//! Operator-tuple calculus: the operator functions attached to each domain,
//! fractional families, fundamental-equation solving, contraction probes,
//! a von Neumann falsifier and unitary/isometry classification.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::boundary::{k1_membership, k_membership};
use crate::cmatrix::{hermitian_eigen, min_eig_hermitian, CMatrix};
use crate::linalg::{
    commutation_residual, defect_operator, numerical_radius, ResidualCheck, ResidualReport,
};
use crate::point::{Point5, Point7};
use crate::{Error, Result, ToleranceConfig};

/// Rectangular complex matrix wrapper used for edge-subspace bases.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBasis(pub DMatrix<Complex64>);

impl Serialize for EdgeBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.0.nrows())
            .map(|i| (0..self.0.ncols()).map(|j| [self.0[(i, j)].re, self.0[(i, j)].im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EdgeBasis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(D::Error::custom("ragged edge basis"));
        }
        Ok(EdgeBasis(DMatrix::from_fn(nrows, ncols, |i, j| {
            Complex64::new(rows[i][j][0], rows[i][j][1])
        })))
    }
}

macro_rules! tuple_type {
    ($name:ident, $len:expr, $doc:expr) => {
        #[doc = $doc]
        #[derive(Debug, Clone, Serialize, Deserialize)]
        pub struct $name {
            pub operators: Vec<CMatrix>,
            #[serde(default, skip_serializing_if = "Option::is_none")]
            pub edge_mask: Option<EdgeBasis>,
        }

        impl $name {
            pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
                if operators.len() != $len {
                    return Err(Error::DimensionMismatch(format!(
                        "expected {} operators, got {}",
                        $len,
                        operators.len()
                    )));
                }
                let dim = operators[0].dim();
                if operators.iter().any(|m| m.dim() != dim) {
                    return Err(Error::DimensionMismatch(
                        "operators must share a dimension".into(),
                    ));
                }
                Ok(Self {
                    operators,
                    edge_mask: None,
                })
            }

            pub fn with_edge(mut self, edge: DMatrix<Complex64>) -> Self {
                self.edge_mask = Some(EdgeBasis(edge));
                self
            }

            pub fn dim(&self) -> usize {
                self.operators[0].dim()
            }

            pub fn op(&self, i: usize) -> &CMatrix {
                &self.operators[i]
            }

            pub fn commutation_residual(&self) -> f64 {
                let refs: Vec<&CMatrix> = self.operators.iter().collect();
                commutation_residual(&refs)
            }

            /// Projector onto the complement of the edge subspace, if any.
            pub fn edge_projector(&self) -> Option<CMatrix> {
                self.edge_mask.as_ref().map(|e| {
                    let p = &e.0 * e.0.adjoint();
                    CMatrix::new(DMatrix::identity(self.dim(), self.dim()) - p)
                        .expect("projector is finite")
                })
            }
        }
    };
}

tuple_type!(Tuple7, 7, "Commuting 7-tuple acting on a common space.");
tuple_type!(Tuple5, 5, "Commuting 5-tuple (S1, S2, S3, S~1, S~2).");
tuple_type!(Tuple3, 3, "Commuting triple (A, B, P).");

impl Tuple7 {
    pub fn scalar(x: &Point7) -> Self {
        Self::new(x.coords.iter().map(|&z| CMatrix::scalar(z)).collect()).unwrap()
    }

    /// Diagonal joint tuple whose k-th joint eigenvalue is `points[k]`.
    pub fn diagonal(points: &[Point7]) -> Self {
        let ops = (0..7)
            .map(|i| CMatrix::diagonal(&points.iter().map(|p| p.coords[i]).collect::<Vec<_>>()))
            .collect();
        Self::new(ops).unwrap()
    }
}

impl Tuple5 {
    pub fn scalar(x: &Point5) -> Self {
        Self::new(x.coords.iter().map(|&z| CMatrix::scalar(z)).collect()).unwrap()
    }

    pub fn diagonal(points: &[Point5]) -> Self {
        let ops = (0..5)
            .map(|i| CMatrix::diagonal(&points.iter().map(|p| p.coords[i]).collect::<Vec<_>>()))
            .collect();
        Self::new(ops).unwrap()
    }
}

impl Tuple3 {
    pub fn from_parts(a: CMatrix, b: CMatrix, p: CMatrix) -> Result<Self> {
        Self::new(vec![a, b, p])
    }

    pub fn a(&self) -> &CMatrix {
        &self.operators[0]
    }
    pub fn b(&self) -> &CMatrix {
        &self.operators[1]
    }
    pub fn p(&self) -> &CMatrix {
        &self.operators[2]
    }
}

/// Operator-function variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RhoVariant {
    Rho7_1,
    Rho7_2,
    Rho7_3,
    Rho5,
    RhoTetra,
    RhoSym,
}

fn two_re(x: &CMatrix) -> CMatrix {
    x.two_re()
}

/// rho for the tetrablock: (I - P*P) - (A*A - B*B) - 2 Re (B - A*P) on the
/// arguments (A, B, P).
pub fn rho_tetra(a: &CMatrix, b: &CMatrix, p: &CMatrix) -> CMatrix {
    let n = a.dim();
    let id = CMatrix::identity(n);
    let part = &(&id - &(&p.adjoint() * p)) - &(&(&a.adjoint() * a) - &(&b.adjoint() * b));
    &part - &two_re(&(b - &(&a.adjoint() * p)))
}

/// rho for the symmetrized bidisc: 2(I - P*P) - 2 Re (S - S*P).
pub fn rho_sym(s: &CMatrix, p: &CMatrix) -> CMatrix {
    let n = s.dim();
    let id = CMatrix::identity(n);
    let part = (&id - &(&p.adjoint() * p)).scale(Complex64::new(2.0, 0.0));
    &part - &two_re(&(s - &(&s.adjoint() * p)))
}

fn rho7_core(t: &[CMatrix], perm: [usize; 7]) -> CMatrix {
    // Evaluates the first seven-variable operator function on the
    // re-indexed arguments; the second and third variants are coordinate
    // permutations of the first.
    let g = |i: usize| &t[perm[i - 1] - 1];
    let n = t[0].dim();
    let id = CMatrix::identity(n);
    let d2 = &id - &(&g(7).adjoint() * g(7));
    let quad = |i: usize| &g(i).adjoint() * g(i);
    let mut acc = &d2 + &quad(2);
    acc = &acc + &quad(4);
    acc = &acc + &quad(6);
    acc = &acc - &quad(1);
    acc = &acc - &quad(3);
    acc = &acc - &quad(5);
    acc = &acc - &two_re(&(g(2) - &(&g(1).adjoint() * g(3))));
    acc = &acc - &two_re(&(g(4) - &(&g(1).adjoint() * g(5))));
    acc = &acc + &two_re(&(g(6) - &(&g(1).adjoint() * g(7))));
    acc = &acc - &two_re(&(&(&g(4).adjoint() * g(6)) - &(&g(5).adjoint() * g(7))));
    acc = &acc - &two_re(&(&(&g(2).adjoint() * g(6)) - &(&g(3).adjoint() * g(7))));
    acc = &acc - &two_re(&(&(&g(5).adjoint() * g(3)) - &(&g(4).adjoint() * g(2))));
    acc
}

fn rho5_core(s: &[CMatrix]) -> CMatrix {
    let (s1, s2, s3, st1, st2) = (&s[0], &s[1], &s[2], &s[3], &s[4]);
    let n = s1.dim();
    let id = CMatrix::identity(n);
    let d2 = &id - &(&s3.adjoint() * s3);
    let mut acc = &d2 + &(&st1.adjoint() * st1);
    acc = &acc - &(&s2.adjoint() * s2);
    acc = &acc - &(&s1.adjoint() * s1);
    acc = &acc + &(&st2.adjoint() * st2);
    acc = &acc - &two_re(&(st1 - &(&s1.adjoint() * s2)));
    acc = &acc + &two_re(&(st2 - &(&s1.adjoint() * s3)));
    acc = &acc - &two_re(&(&(&st1.adjoint() * st2) - &(&s2.adjoint() * s3)));
    acc
}

/// Scales tuple coordinates by the variant's parameter pattern and
/// evaluates the operator function, returning the symmetrized matrix and
/// its smallest eigenvalue.
pub fn rho_eval(
    variant: RhoVariant,
    operators: &[CMatrix],
    scalings: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<(CMatrix, f64)> {
    let need = |count: usize, ops: usize| -> Result<()> {
        if scalings.len() != count || operators.len() != ops {
            return Err(Error::DimensionMismatch(format!(
                "variant expects {ops} operators and {count} scaling parameters"
            )));
        }
        Ok(())
    };
    let check_contraction = |m: &CMatrix| -> Result<()> {
        let excess = m.norm_op() - 1.0;
        if excess > cfg.rank_tol {
            return Err(Error::NotAContraction { min_eig: -excess });
        }
        Ok(())
    };
    let result = match variant {
        RhoVariant::Rho7_1 | RhoVariant::Rho7_2 | RhoVariant::Rho7_3 => {
            need(2, 7)?;
            check_contraction(&operators[6])?;
            let (za, zb) = (scalings[0], scalings[1]);
            let one = Complex64::new(1.0, 0.0);
            // Scaling patterns of the three necessary-condition displays.
            let factors: [Complex64; 7] = match variant {
                RhoVariant::Rho7_1 => [one, za, za, zb, zb, za * zb, za * zb],
                RhoVariant::Rho7_2 => [za, one, za, zb, za * zb, zb, za * zb],
                _ => [za, zb, za * zb, one, za, zb, za * zb],
            };
            let scaled: Vec<CMatrix> = operators
                .iter()
                .zip(factors.iter())
                .map(|(t, &f)| t.scale(f))
                .collect();
            let perm = match variant {
                RhoVariant::Rho7_1 => [1, 2, 3, 4, 5, 6, 7],
                RhoVariant::Rho7_2 => [2, 1, 3, 4, 6, 5, 7],
                _ => [4, 1, 5, 2, 6, 3, 7],
            };
            rho7_core(&scaled, perm)
        }
        RhoVariant::Rho5 => {
            need(1, 5)?;
            check_contraction(&operators[2])?;
            let z = scalings[0];
            let z2 = z * z;
            let scaled = vec![
                operators[0].clone(),
                operators[1].scale(z),
                operators[2].scale(z2),
                operators[3].scale(z),
                operators[4].scale(z2),
            ];
            rho5_core(&scaled)
        }
        RhoVariant::RhoTetra => {
            need(1, 3)?;
            check_contraction(&operators[2])?;
            let z = scalings[0];
            rho_tetra(&operators[0], &operators[1].scale(z), &operators[2].scale(z))
        }
        RhoVariant::RhoSym => {
            need(1, 2)?;
            check_contraction(&operators[1])?;
            let w = scalings[0];
            rho_sym(&operators[0].scale(w), &operators[1].scale(w * w))
        }
    };
    let herm = result.hermitian_part();
    let min = min_eig_hermitian(&herm);
    Ok((herm, min))
}

/// Fractional family variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FractionalVariant {
    F7Z1,
    F7Z2,
    F7Z3,
    F5,
    F5Sym,
}

/// Image of a fractional family: a tetrablock triple or a bidisc pair.
#[derive(Debug, Clone)]
pub enum FractionalImage {
    Triple(Tuple3),
    Pair(CMatrix, CMatrix),
}

fn resolvent(den: &CMatrix, z: Complex64, rank_tol: f64) -> Result<CMatrix> {
    if den.rcond() < rank_tol {
        return Err(Error::ResolventSingular { re: z.re, im: z.im });
    }
    den.try_inverse()
        .ok_or(Error::ResolventSingular { re: z.re, im: z.im })
}

/// Fractional families attached to a tuple at parameter z.
pub fn fractional_family(
    variant: FractionalVariant,
    operators: &[CMatrix],
    z: Complex64,
    cfg: &ToleranceConfig,
) -> Result<FractionalImage> {
    let one = Complex64::new(1.0, 0.0);
    match variant {
        FractionalVariant::F7Z1 | FractionalVariant::F7Z2 | FractionalVariant::F7Z3 => {
            if operators.len() != 7 {
                return Err(Error::DimensionMismatch("expected 7 operators".into()));
            }
            let n = operators[0].dim();
            let id = CMatrix::identity(n);
            // (numerator indices, resolvent index) per variant, one-based.
            let (nums, den_i) = match variant {
                FractionalVariant::F7Z1 => ([(2, 3), (4, 5), (6, 7)], 1),
                FractionalVariant::F7Z2 => ([(1, 3), (4, 6), (5, 7)], 2),
                _ => ([(1, 5), (2, 6), (3, 7)], 4),
            };
            let den = &id - &operators[den_i - 1].scale(z);
            let inv = resolvent(&den, z, cfg.rank_tol)?;
            let make = |(i, j): (usize, usize)| {
                let num = &operators[i - 1] - &operators[j - 1].scale(z);
                &num * &inv
            };
            Ok(FractionalImage::Triple(Tuple3::from_parts(
                make(nums[0]),
                make(nums[1]),
                make(nums[2]),
            )?))
        }
        FractionalVariant::F5 => {
            if operators.len() != 5 {
                return Err(Error::DimensionMismatch("expected 5 operators".into()));
            }
            let n = operators[0].dim();
            let two = CMatrix::identity(n).scale(Complex64::new(2.0, 0.0));
            let den = &two - &operators[3].scale(z);
            let inv = resolvent(&den, z, cfg.rank_tol)?;
            let p1 = &(&operators[0].scale(one * 2.0) - &operators[1].scale(z)) * &inv;
            let p2 = &(&operators[3] - &operators[4].scale(z * 2.0)) * &inv;
            let p3 = &(&operators[1] - &operators[2].scale(z * 2.0)) * &inv;
            Ok(FractionalImage::Triple(Tuple3::from_parts(p1, p2, p3)?))
        }
        FractionalVariant::F5Sym => {
            if operators.len() != 5 {
                return Err(Error::DimensionMismatch("expected 5 operators".into()));
            }
            let n = operators[0].dim();
            let id = CMatrix::identity(n);
            let den = &id - &operators[0].scale(z);
            let inv = resolvent(&den, z, cfg.rank_tol)?;
            let s = &(&operators[3] - &operators[1].scale(z)) * &inv;
            let p = &(&operators[4] - &operators[2].scale(z)) * &inv;
            Ok(FractionalImage::Pair(s, p))
        }
    }
}

/// Solutions of the sandwich equations on the defect space of P.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FundamentalSolution {
    pub f1: CMatrix,
    pub f2: CMatrix,
    pub defect_rank: usize,
    pub residual1: f64,
    pub residual2: f64,
    /// (omega, numerical radius of F1 + omega F2) over unimodular samples.
    pub radius_profile: Vec<([f64; 2], f64)>,
}

impl FundamentalSolution {
    pub fn max_radius(&self) -> f64 {
        self.radius_profile.iter().map(|(_, w)| *w).fold(0.0, f64::max)
    }
}

/// Solves A - B*P = D_P F1 D_P and B - A*P = D_P F2 D_P on the defect
/// space of P, entrywise in the eigenbasis of D_P.
pub fn solve_fundamental(triple: &Tuple3, cfg: &ToleranceConfig) -> Result<FundamentalSolution> {
    let (a, b, p) = (triple.a(), triple.b(), triple.p());
    let d = defect_operator(p, cfg)?;
    let (vals, q) = hermitian_eigen(&d);
    let n = d.dim();
    let range: Vec<usize> = (0..n).filter(|&i| vals[i] > cfg.rank_tol).collect();
    let rank = range.len();
    let m1 = a - &(&b.adjoint() * p);
    let m2 = b - &(&a.adjoint() * p);
    let solve_one = |m: &CMatrix| -> Result<(CMatrix, f64)> {
        let mt = q.adjoint() * m.matrix() * &q;
        let scale = m.norm_op().max(1.0);
        // Mass outside range(D) x range(D) is unreachable by the sandwich.
        let mut mass = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if (vals[i] <= cfg.rank_tol || vals[j] <= cfg.rank_tol) && mt[(i, j)].norm() > mass
                {
                    mass = mt[(i, j)].norm();
                }
            }
        }
        if mass > cfg.residual_tol * scale {
            return Err(Error::NotSolvable { mass });
        }
        let mut f = DMatrix::zeros(rank, rank);
        for (fi, &i) in range.iter().enumerate() {
            for (fj, &j) in range.iter().enumerate() {
                f[(fi, fj)] = mt[(i, j)] / Complex64::new(vals[i] * vals[j], 0.0);
            }
        }
        // Reconstruction residual in the full space.
        let mut qr = DMatrix::zeros(n, rank);
        for (out, &i) in range.iter().enumerate() {
            qr.set_column(out, &q.column(i));
        }
        let f_full = &qr * &f * qr.adjoint();
        let rebuilt = d.matrix() * f_full * d.matrix();
        let residual = (rebuilt - m.matrix()).norm();
        Ok((CMatrix::new(f)?, residual))
    };
    let (f1, residual1) = solve_one(&m1)?;
    let (f2, residual2) = solve_one(&m2)?;
    let mut wcfg = cfg.clone();
    wcfg.grid_1d = 64;
    let profile = (0..64)
        .map(|k| {
            let omega = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 64.0);
            let sum = &f1 + &f2.scale(omega);
            ([omega.re, omega.im], numerical_radius(&sum, &wcfg))
        })
        .collect();
    Ok(FundamentalSolution {
        f1,
        f2,
        defect_rank: rank,
        residual1,
        residual2,
        radius_profile: profile,
    })
}

/// One joint eigenvalue with its boundary-set verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub value: Vec<[f64; 2]>,
    pub in_boundary_set: bool,
}

/// Classification outcome: verdict plus the residual battery that produced
/// it, and optionally the joint spectrum with per-point boundary verdicts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: bool,
    pub checks: ResidualReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum_check: Option<Vec<SpectrumPoint>>,
}

impl ClassificationReport {
    fn from_checks(checks: ResidualReport) -> Self {
        Self {
            verdict: checks.all_pass(),
            checks,
            spectrum_check: None,
        }
    }
}

fn compressed_residual(x: &CMatrix, q: Option<&CMatrix>) -> f64 {
    match q {
        Some(q) => (&(q * x) * q).norm_op(),
        None => x.norm_op(),
    }
}

fn norm_check(name: &str, m: &CMatrix, bound: f64, tol: f64) -> ResidualCheck {
    ResidualCheck::new(name, (m.norm_op() - bound).max(0.0), tol)
}

/// Crude spectral radius estimate via ||X^16||^(1/16); informational only.
pub fn spectral_radius_estimate(x: &CMatrix) -> f64 {
    let norm = x.norm_op();
    if norm == 0.0 {
        return 0.0;
    }
    let unit = x.scale(Complex64::new(1.0 / norm, 0.0));
    let mut p = unit.clone();
    for _ in 0..4 {
        p = &p * &p;
    }
    norm * p.norm_op().powf(1.0 / 16.0)
}

/// Necessary-condition battery for contraction candidates: coordinate norm
/// bounds, operator-function positivity over parameter grids and tetrablock
/// tests on the fractional families. A `true` verdict means no necessary
/// condition was falsified; it is not a sufficiency certificate.
pub fn contraction_probe7(tuple: &Tuple7, cfg: &ToleranceConfig) -> Result<ClassificationReport> {
    let comm = tuple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let mut checks = ResidualReport::default();
    checks.push(ResidualCheck::new("commutation", comm, cfg.commute_tol));
    for i in 0..7 {
        checks.push(norm_check(
            &format!("norm[{}]", i + 1),
            tuple.op(i),
            1.0,
            cfg.rank_tol,
        ));
    }
    let norm_ok = checks.all_pass();
    if norm_ok {
        // Operator-function positivity on a boundary grid.
        let n = 16;
        let mut worst = f64::INFINITY;
        for variant in [RhoVariant::Rho7_1, RhoVariant::Rho7_2, RhoVariant::Rho7_3] {
            for ka in 0..n {
                for kb in 0..n {
                    let za = Complex64::from_polar(1.0, ka as f64 * std::f64::consts::TAU / n as f64);
                    let zb = Complex64::from_polar(1.0, kb as f64 * std::f64::consts::TAU / n as f64);
                    let (_, min) = rho_eval(variant, &tuple.operators, &[za, zb], cfg)?;
                    worst = worst.min(min);
                }
            }
        }
        checks.push(ResidualCheck::new(
            "rho_grid_min_eig",
            (-worst).max(0.0),
            cfg.residual_tol,
        ));
        // Tetrablock necessary tests on the fractional families.
        let mut tetra_worst = f64::INFINITY;
        let mut resolvent_failed = false;
        let mut spectral_note = 0.0f64;
        for variant in [
            FractionalVariant::F7Z1,
            FractionalVariant::F7Z2,
            FractionalVariant::F7Z3,
        ] {
            for kz in 0..8 {
                let z = Complex64::from_polar(0.9, kz as f64 * std::f64::consts::TAU / 8.0);
                match fractional_family(variant, &tuple.operators, z, cfg) {
                    Ok(FractionalImage::Triple(t)) => {
                        spectral_note =
                            spectral_note.max(spectral_radius_estimate(&(t.a() + t.b())));
                        for kw in 0..16 {
                            let w =
                                Complex64::from_polar(1.0, kw as f64 * std::f64::consts::TAU / 16.0);
                            let r1 = rho_tetra(t.a(), &t.b().scale(w), &t.p().scale(w));
                            let r2 = rho_tetra(t.b(), &t.a().scale(w), &t.p().scale(w));
                            tetra_worst = tetra_worst.min(min_eig_hermitian(&r1));
                            tetra_worst = tetra_worst.min(min_eig_hermitian(&r2));
                        }
                    }
                    Ok(FractionalImage::Pair(..)) => unreachable!(),
                    Err(Error::ResolventSingular { .. }) => resolvent_failed = true,
                    Err(e) => return Err(e),
                }
            }
        }
        checks.push(ResidualCheck::new(
            "fractional_tetra_min_eig",
            if resolvent_failed {
                f64::INFINITY
            } else {
                (-tetra_worst).max(0.0)
            },
            cfg.residual_tol,
        ));
        // Informational only; the bound clause is not part of the verdict.
        checks.push(ResidualCheck::new(
            "spectral_radius_estimate(A+B)",
            spectral_note,
            f64::INFINITY,
        ));
    }
    Ok(ClassificationReport::from_checks(checks))
}

/// Five-coordinate analog of the probe.
pub fn contraction_probe5(tuple: &Tuple5, cfg: &ToleranceConfig) -> Result<ClassificationReport> {
    let comm = tuple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let mut checks = ResidualReport::default();
    checks.push(ResidualCheck::new("commutation", comm, cfg.commute_tol));
    let bounds = [1.0, 2.0, 1.0, 2.0, 1.0];
    let names = ["S1", "S2", "S3", "S~1", "S~2"];
    for i in 0..5 {
        checks.push(norm_check(
            &format!("norm[{}]", names[i]),
            tuple.op(i),
            bounds[i],
            cfg.rank_tol,
        ));
    }
    let norm_ok = checks.all_pass();
    if norm_ok {
        let n = 32;
        let mut worst = f64::INFINITY;
        for k in 0..n {
            let z = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / n as f64);
            let (_, min) = rho_eval(RhoVariant::Rho5, &tuple.operators, &[z], cfg)?;
            worst = worst.min(min);
        }
        checks.push(ResidualCheck::new(
            "rho_grid_min_eig",
            (-worst).max(0.0),
            cfg.residual_tol,
        ));
        let mut tetra_worst = f64::INFINITY;
        let mut resolvent_failed = false;
        for kz in 0..8 {
            let z = Complex64::from_polar(0.9, kz as f64 * std::f64::consts::TAU / 8.0);
            match fractional_family(FractionalVariant::F5, &tuple.operators, z, cfg) {
                Ok(FractionalImage::Triple(t)) => {
                    for kw in 0..16 {
                        let w = Complex64::from_polar(1.0, kw as f64 * std::f64::consts::TAU / 16.0);
                        let r1 = rho_tetra(t.a(), &t.b().scale(w), &t.p().scale(w));
                        let r2 = rho_tetra(t.b(), &t.a().scale(w), &t.p().scale(w));
                        tetra_worst = tetra_worst.min(min_eig_hermitian(&r1));
                        tetra_worst = tetra_worst.min(min_eig_hermitian(&r2));
                    }
                }
                Ok(FractionalImage::Pair(..)) => unreachable!(),
                Err(Error::ResolventSingular { .. }) => resolvent_failed = true,
                Err(e) => return Err(e),
            }
        }
        checks.push(ResidualCheck::new(
            "fractional_tetra_min_eig",
            if resolvent_failed {
                f64::INFINITY
            } else {
                (-tetra_worst).max(0.0)
            },
            cfg.residual_tol,
        ));
    }
    Ok(ClassificationReport::from_checks(checks))
}

/// Configuration of the polynomial von Neumann falsifier.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VnProbeConfig {
    pub degree: usize,
    pub n_polys: usize,
    pub cloud_interior: usize,
    pub cloud_boundary: usize,
    pub seed: u64,
}

impl Default for VnProbeConfig {
    fn default() -> Self {
        Self {
            degree: 3,
            n_polys: 50,
            cloud_interior: 400,
            cloud_boundary: 1200,
            seed: 17,
        }
    }
}

/// Sparse polynomial in seven variables.
#[derive(Debug, Clone)]
pub struct SparsePoly {
    pub terms: Vec<(Complex64, [u8; 7])>,
}

impl SparsePoly {
    pub fn coordinate(i: usize) -> Self {
        let mut e = [0u8; 7];
        e[i] = 1;
        Self {
            terms: vec![(Complex64::new(1.0, 0.0), e)],
        }
    }

    pub fn eval_scalar(&self, x: &Point7) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut mono = *c;
            for (z, &k) in x.coords.iter().zip(e.iter()) {
                mono *= z.powu(k as u32);
            }
            acc += mono;
        }
        acc
    }

    pub fn eval_tuple(&self, t: &Tuple7) -> CMatrix {
        let n = t.dim();
        let mut acc = CMatrix::zeros(n);
        for (c, e) in &self.terms {
            let mut mono = CMatrix::identity(n).scale(*c);
            for (op, &k) in t.operators.iter().zip(e.iter()) {
                for _ in 0..k {
                    mono = &mono * op;
                }
            }
            acc = &acc + &mono;
        }
        acc
    }

    fn random(degree: usize, rng: &mut impl Rng) -> Self {
        let n_terms = rng.gen_range(1..=4);
        let terms = (0..n_terms)
            .map(|_| {
                let mut e = [0u8; 7];
                let mut budget = rng.gen_range(1..=degree);
                while budget > 0 {
                    let i = rng.gen_range(0..7);
                    e[i] += 1;
                    budget -= 1;
                }
                let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                (c, e)
            })
            .collect();
        Self { terms }
    }
}

/// Report of the polynomial falsifier: any check failure is a genuine
/// violation witness, while all-pass only means no counterexample found at
/// this sampling scale.
pub fn von_neumann_probe(
    tuple: &Tuple7,
    probe: &VnProbeConfig,
    cfg: &ToleranceConfig,
) -> Result<ClassificationReport> {
    let comm = tuple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(probe.seed);
    // Domain cloud: scaled interior images plus boundary-set samples.
    let mut cloud: Vec<Point7> = Vec::with_capacity(probe.cloud_interior + probe.cloud_boundary);
    for _ in 0..probe.cloud_boundary {
        let u = crate::random::haar_unitary(3, &mut rng);
        cloud.push(crate::mu::pi_point7(&u)?);
    }
    for _ in 0..probe.cloud_interior {
        let g = crate::random::ginibre(3, &mut rng);
        let scale = rng.gen_range(0.05..0.95) / g.norm_op().max(1e-9);
        cloud.push(crate::mu::pi_point7(&g.scale(Complex64::new(scale, 0.0)))?);
    }
    let mut polys: Vec<(String, SparsePoly)> = (0..7)
        .map(|i| (format!("coordinate[{}]", i + 1), SparsePoly::coordinate(i)))
        .collect();
    for k in 0..probe.n_polys {
        polys.push((format!("random[{k}]"), SparsePoly::random(probe.degree.max(1), &mut rng)));
    }
    let mut checks = ResidualReport::default();
    for (name, p) in &polys {
        let sup = cloud
            .iter()
            .map(|x| p.eval_scalar(x).norm())
            .fold(0.0, f64::max);
        let val = p.eval_tuple(tuple).norm_op();
        checks.push(ResidualCheck::new(
            name.clone(),
            (val - sup).max(0.0),
            cfg.undetermined_band,
        ));
    }
    Ok(ClassificationReport::from_checks(checks))
}

/// Classification targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifyKind {
    Unitary,
    Isometry,
}

/// Seven-coordinate unitary/isometry classifier: norm bounds, the adjoint
/// relations N_i = N*_{7-i} N_7 and (co)isometry of the last coordinate,
/// with residuals compressed off the edge subspace when one is present.
pub fn classify_tuple7(
    kind: ClassifyKind,
    tuple: &Tuple7,
    with_spectrum: bool,
    cfg: &ToleranceConfig,
) -> Result<ClassificationReport> {
    let comm = tuple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let q = tuple.edge_projector();
    let id = CMatrix::identity(tuple.dim());
    let mut checks = ResidualReport::default();
    checks.push(ResidualCheck::new("commutation", comm, cfg.commute_tol));
    for i in 0..6 {
        checks.push(norm_check(
            &format!("norm[{}]", i + 1),
            tuple.op(i),
            1.0,
            cfg.rank_tol,
        ));
    }
    let n7 = tuple.op(6);
    checks.push(ResidualCheck::new(
        "isometry[7]",
        compressed_residual(&(&(&n7.adjoint() * n7) - &id), q.as_ref()),
        cfg.residual_tol,
    ));
    if kind == ClassifyKind::Unitary {
        checks.push(ResidualCheck::new(
            "co-isometry[7]",
            compressed_residual(&(&(n7 * &n7.adjoint()) - &id), q.as_ref()),
            cfg.residual_tol,
        ));
    }
    for i in 0..6 {
        let rel = tuple.op(i) - &(&tuple.op(5 - i).adjoint() * n7);
        checks.push(ResidualCheck::new(
            format!("relation[{} = {}* x 7]", i + 1, 6 - i),
            compressed_residual(&rel, q.as_ref()),
            cfg.residual_tol,
        ));
    }
    let mut report = ClassificationReport::from_checks(checks);
    if with_spectrum {
        let refs: Vec<&CMatrix> = tuple.operators.iter().collect();
        let tuples = crate::linalg::joint_eigen_tuples(&refs, cfg)?;
        let mut spectrum = Vec::with_capacity(tuples.len());
        for tv in tuples {
            let point = Point7::from_slice(&tv)?;
            let in_set = k_membership(&point, cfg)?.in_set;
            spectrum.push(SpectrumPoint {
                value: tv.iter().map(|z| [z.re, z.im]).collect(),
                in_boundary_set: in_set,
            });
        }
        report.verdict = report.verdict && spectrum.iter().all(|s| s.in_boundary_set);
        report.spectrum_check = Some(spectrum);
    }
    Ok(report)
}

/// Five-coordinate analog with the bounds (1, 2, -, 2, 1) and the relations
/// M1 = M~2* M3, M2 = M~1* M3.
pub fn classify_tuple5(
    kind: ClassifyKind,
    tuple: &Tuple5,
    with_spectrum: bool,
    cfg: &ToleranceConfig,
) -> Result<ClassificationReport> {
    let comm = tuple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let q = tuple.edge_projector();
    let id = CMatrix::identity(tuple.dim());
    let mut checks = ResidualReport::default();
    checks.push(ResidualCheck::new("commutation", comm, cfg.commute_tol));
    checks.push(norm_check("norm[M1]", tuple.op(0), 1.0, cfg.rank_tol));
    checks.push(norm_check("norm[M2]", tuple.op(1), 2.0, cfg.rank_tol));
    checks.push(norm_check("norm[M~1]", tuple.op(3), 2.0, cfg.rank_tol));
    checks.push(norm_check("norm[M~2]", tuple.op(4), 1.0, cfg.rank_tol));
    let m3 = tuple.op(2);
    checks.push(ResidualCheck::new(
        "isometry[M3]",
        compressed_residual(&(&(&m3.adjoint() * m3) - &id), q.as_ref()),
        cfg.residual_tol,
    ));
    if kind == ClassifyKind::Unitary {
        checks.push(ResidualCheck::new(
            "co-isometry[M3]",
            compressed_residual(&(&(m3 * &m3.adjoint()) - &id), q.as_ref()),
            cfg.residual_tol,
        ));
    }
    let rel1 = tuple.op(0) - &(&tuple.op(4).adjoint() * m3);
    let rel2 = tuple.op(1) - &(&tuple.op(3).adjoint() * m3);
    checks.push(ResidualCheck::new(
        "relation[M1 = M~2* M3]",
        compressed_residual(&rel1, q.as_ref()),
        cfg.residual_tol,
    ));
    checks.push(ResidualCheck::new(
        "relation[M2 = M~1* M3]",
        compressed_residual(&rel2, q.as_ref()),
        cfg.residual_tol,
    ));
    let mut report = ClassificationReport::from_checks(checks);
    if with_spectrum {
        let refs: Vec<&CMatrix> = tuple.operators.iter().collect();
        let tuples = crate::linalg::joint_eigen_tuples(&refs, cfg)?;
        let mut spectrum = Vec::with_capacity(tuples.len());
        for tv in tuples {
            let point = Point5::from_slice(&tv)?;
            let in_set = k1_membership(&point, cfg)?.in_set;
            spectrum.push(SpectrumPoint {
                value: tv.iter().map(|z| [z.re, z.im]).collect(),
                in_boundary_set: in_set,
            });
        }
        report.verdict = report.verdict && spectrum.iter().all(|s| s.in_boundary_set);
        report.spectrum_check = Some(spectrum);
    }
    Ok(report)
}

/// Tetrablock unitary/isometry classifier via A = B*P, B = A*P.
pub fn classify_tuple3(
    kind: ClassifyKind,
    triple: &Tuple3,
    cfg: &ToleranceConfig,
) -> Result<ClassificationReport> {
    let comm = triple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let q = triple.edge_projector();
    let id = CMatrix::identity(triple.dim());
    let (a, b, p) = (triple.a(), triple.b(), triple.p());
    let mut checks = ResidualReport::default();
    checks.push(ResidualCheck::new("commutation", comm, cfg.commute_tol));
    checks.push(norm_check("norm[A]", a, 1.0, cfg.rank_tol));
    checks.push(norm_check("norm[B]", b, 1.0, cfg.rank_tol));
    checks.push(ResidualCheck::new(
        "isometry[P]",
        compressed_residual(&(&(&p.adjoint() * p) - &id), q.as_ref()),
        cfg.residual_tol,
    ));
    if kind == ClassifyKind::Unitary {
        checks.push(ResidualCheck::new(
            "co-isometry[P]",
            compressed_residual(&(&(p * &p.adjoint()) - &id), q.as_ref()),
            cfg.residual_tol,
        ));
    }
    checks.push(ResidualCheck::new(
        "relation[A = B* P]",
        compressed_residual(&(a - &(&b.adjoint() * p)), q.as_ref()),
        cfg.residual_tol,
    ));
    checks.push(ResidualCheck::new(
        "relation[B = A* P]",
        compressed_residual(&(b - &(&a.adjoint() * p)), q.as_ref()),
        cfg.residual_tol,
    ));
    Ok(ClassificationReport::from_checks(checks))
}

/// Projects a 7-tuple to the eta-family of 5-tuples and classifies every
/// sampled member, together with the coordinate norm bounds.
pub fn eta_family_classify(
    tuple: &Tuple7,
    kind: ClassifyKind,
    etas: usize,
    cfg: &ToleranceConfig,
) -> Result<ClassificationReport> {
    let comm = tuple.commutation_residual();
    if comm > cfg.commute_tol {
        return Err(Error::NotCommuting { residual: comm });
    }
    let mut checks = ResidualReport::default();
    checks.push(ResidualCheck::new("commutation", comm, cfg.commute_tol));
    for i in 0..6 {
        checks.push(norm_check(
            &format!("norm[{}]", i + 1),
            tuple.op(i),
            1.0,
            cfg.rank_tol,
        ));
    }
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for k in 0..etas.max(1) {
        let eta = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / etas.max(1) as f64);
        let projected = eta_project_tuple(tuple, eta)?;
        let report = classify_tuple5(kind, &projected, false, cfg)?;
        worst = worst.max(report.checks.worst());
        if !report.verdict {
            failures += 1;
        }
    }
    checks.push(ResidualCheck::new(
        "eta_failures",
        failures as f64,
        0.0,
    ));
    checks.push(ResidualCheck::new("eta_worst_residual", worst, f64::INFINITY));
    Ok(ClassificationReport::from_checks(checks))
}

/// (N1, N3 + eta N5, eta N7, N2 + eta N4, eta N6) with the edge carried
/// over.
pub fn eta_project_tuple(tuple: &Tuple7, eta: Complex64) -> Result<Tuple5> {
    let t = &tuple.operators;
    let ops = vec![
        t[0].clone(),
        &t[2] + &t[4].scale(eta),
        t[6].scale(eta),
        &t[1] + &t[3].scale(eta),
        t[5].scale(eta),
    ];
    let mut out = Tuple5::new(ops)?;
    out.edge_mask = tuple.edge_mask.clone();
    Ok(out)
}

/// (S1, S~1/2, S2/2, S~1/2, S2/2, S~2, S3), preserving classification.
pub fn embed5to7(tuple: &Tuple5) -> Result<Tuple7> {
    let half = Complex64::new(0.5, 0.0);
    let s = &tuple.operators;
    let ops = vec![
        s[0].clone(),
        s[3].scale(half),
        s[1].scale(half),
        s[3].scale(half),
        s[1].scale(half),
        s[4].clone(),
        s[2].clone(),
    ];
    let mut out = Tuple7::new(ops)?;
    out.edge_mask = tuple.edge_mask.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psi::{psi5_parts, psi7_parts, PsiVariant};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn sample_interior7() -> Point7 {
        // Image of a scaled matrix, well inside the domain.
        let a = CMatrix::from_rows(&[
            vec![c(0.21, 0.05), c(0.1, -0.02), c(0.0, 0.11)],
            vec![c(-0.04, 0.09), c(0.17, 0.0), c(0.08, 0.03)],
            vec![c(0.02, -0.07), c(0.05, 0.06), c(-0.13, 0.04)],
        ])
        .unwrap();
        crate::mu::pi_point7(&a).unwrap()
    }

    #[test]
    fn rho7_matches_the_scalar_modulus_identity() {
        // For one-dimensional tuples the scaled operator function equals
        // |denominator|^2 - |numerator|^2 of the attached rational map.
        let cfg = cfg();
        let x = sample_interior7();
        let t = Tuple7::scalar(&x);
        for (za, zb) in [
            (c(0.4, 0.3), c(-0.2, 0.6)),
            (c(1.0, 0.0), c(0.0, 1.0)),
            (c(-0.8, 0.1), c(0.5, -0.5)),
        ] {
            let (_, min) = rho_eval(RhoVariant::Rho7_1, &t.operators, &[za, zb], &cfg).unwrap();
            let (num, den) = psi7_parts(PsiVariant::Psi7_1, za, zb, &x);
            let expect = den.norm_sqr() - num.norm_sqr();
            assert!((min - expect).abs() < 1e-12, "rho1 at ({za}, {zb}): {min} vs {expect}");

            let (_, min2) = rho_eval(RhoVariant::Rho7_2, &t.operators, &[za, zb], &cfg).unwrap();
            let (num2, den2) = psi7_parts(PsiVariant::Psi7_2, za, zb, &x);
            assert!((min2 - (den2.norm_sqr() - num2.norm_sqr())).abs() < 1e-12);

            let (_, min3) = rho_eval(RhoVariant::Rho7_3, &t.operators, &[za, zb], &cfg).unwrap();
            let (num3, den3) = psi7_parts(PsiVariant::Psi7_3, za, zb, &x);
            assert!((min3 - (den3.norm_sqr() - num3.norm_sqr())).abs() < 1e-12);
        }
    }

    #[test]
    fn rho5_matches_the_scalar_modulus_identity() {
        let cfg = cfg();
        let p = Point5::new([c(0.2, 0.1), c(0.3, -0.2), c(0.05, 0.15), c(0.4, 0.0), c(-0.1, 0.2)])
            .unwrap();
        let t = Tuple5::scalar(&p);
        for z in [c(0.7, 0.2), c(0.0, 1.0), c(-0.3, -0.4)] {
            let (_, min) = rho_eval(RhoVariant::Rho5, &t.operators, &[z], &cfg).unwrap();
            // Denominator/numerator with the z-powers baked in.
            let (num0, den0) = psi5_parts(z, &p);
            let expect = den0.norm_sqr() - num0.norm_sqr();
            assert!((min - expect).abs() < 1e-12, "rho5 at {z}: {min} vs {expect}");
        }
    }

    #[test]
    fn rho_zero_tuple_examples() {
        let cfg = cfg();
        let zero7 = Tuple7::scalar(&Point7::zero());
        let (m, min) = rho_eval(RhoVariant::Rho7_1, &zero7.operators, &[c(0.3, 0.0), c(0.0, 0.5)], &cfg)
            .unwrap();
        assert_eq!(m.dim(), 1);
        assert!((min - 1.0).abs() < 1e-14);
        let zero_sym = vec![CMatrix::zeros(1), CMatrix::zeros(1)];
        let (_, min) = rho_eval(RhoVariant::RhoSym, &zero_sym, &[c(1.0, 0.0)], &cfg).unwrap();
        assert!((min - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rho_tetra_vanishes_on_boundary_unitary_scalars() {
        let cfg = cfg();
        // a = conj(b) p with |p| = 1.
        let p = c(0.6, 0.8);
        let b = c(0.3, -0.55);
        let a = b.conj() * p;
        let triple = vec![CMatrix::scalar(a), CMatrix::scalar(b), CMatrix::scalar(p)];
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 64.0);
            let (_, min) = rho_eval(RhoVariant::RhoTetra, &triple, &[z], &cfg).unwrap();
            assert!(min.abs() < 1e-12, "tetra rho should vanish, got {min}");
        }
    }

    #[test]
    fn fractional_families_at_zero_pick_coordinates() {
        let cfg = cfg();
        let x = sample_interior7();
        let t = Tuple7::scalar(&x);
        let FractionalImage::Triple(f) =
            fractional_family(FractionalVariant::F7Z2, &t.operators, c(0.0, 0.0), &cfg).unwrap()
        else {
            panic!("triple expected")
        };
        assert!((f.a().entry(0, 0) - x.coords[0]).norm() < 1e-15);
        assert!((f.b().entry(0, 0) - x.coords[3]).norm() < 1e-15);
        assert!((f.p().entry(0, 0) - x.coords[4]).norm() < 1e-15);
        let FractionalImage::Triple(f) =
            fractional_family(FractionalVariant::F7Z1, &t.operators, c(0.0, 0.0), &cfg).unwrap()
        else {
            panic!("triple expected")
        };
        assert!((f.a().entry(0, 0) - x.coords[1]).norm() < 1e-15);
        let p5 = Point5::new([c(0.2, 0.0), c(0.3, 0.1), c(0.1, 0.0), c(0.25, -0.1), c(0.0, 0.2)])
            .unwrap();
        let t5 = Tuple5::scalar(&p5);
        let FractionalImage::Triple(f) =
            fractional_family(FractionalVariant::F5, &t5.operators, c(0.0, 0.0), &cfg).unwrap()
        else {
            panic!("triple expected")
        };
        assert!((f.a().entry(0, 0) - p5.coords[0]).norm() < 1e-15);
        assert!((f.b().entry(0, 0) - p5.coords[3] / 2.0).norm() < 1e-15);
        assert!((f.p().entry(0, 0) - p5.coords[1] / 2.0).norm() < 1e-15);
    }

    #[test]
    fn fundamental_scalar_formula() {
        let cfg = cfg();
        let triple = Tuple3::from_parts(
            CMatrix::scalar(c(0.3, 0.0)),
            CMatrix::scalar(c(0.4, 0.0)),
            CMatrix::scalar(c(0.5, 0.0)),
        )
        .unwrap();
        let sol = solve_fundamental(&triple, &cfg).unwrap();
        assert_eq!(sol.defect_rank, 1);
        assert!((sol.f1.entry(0, 0) - c(0.1 / 0.75, 0.0)).norm() < 1e-12);
        assert!((sol.f2.entry(0, 0) - c(0.25 / 0.75, 0.0)).norm() < 1e-12);
        assert!(sol.residual1 < 1e-12 && sol.residual2 < 1e-12);
        assert!(sol.max_radius() <= 1.0 + 1e-8);
        // Trivial case.
        let triple = Tuple3::from_parts(
            CMatrix::scalar(c(0.0, 0.0)),
            CMatrix::scalar(c(0.0, 0.0)),
            CMatrix::scalar(c(0.5, 0.0)),
        )
        .unwrap();
        let sol = solve_fundamental(&triple, &cfg).unwrap();
        assert!(sol.f1.entry(0, 0).norm() < 1e-14 && sol.f2.entry(0, 0).norm() < 1e-14);
    }

    #[test]
    fn fundamental_rejects_unitary_p_with_mass() {
        let cfg = cfg();
        let triple = Tuple3::from_parts(
            CMatrix::scalar(c(0.5, 0.0)),
            CMatrix::scalar(c(0.0, 0.0)),
            CMatrix::scalar(c(1.0, 0.0)),
        )
        .unwrap();
        assert!(matches!(
            solve_fundamental(&triple, &cfg),
            Err(Error::NotSolvable { .. })
        ));
    }

    #[test]
    fn contraction_probe_on_scalars() {
        let cfg = cfg();
        let x = sample_interior7();
        let report = contraction_probe7(&Tuple7::scalar(&x), &cfg).unwrap();
        assert!(report.verdict, "interior scalar failed: {:?}", report.checks);
        let mut bad = Point7::zero();
        bad.coords[0] = c(2.0, 0.0);
        let report = contraction_probe7(&Tuple7::scalar(&bad), &cfg).unwrap();
        assert!(!report.verdict);
        let zero5 = Tuple5::scalar(&Point5::zero());
        assert!(contraction_probe5(&zero5, &cfg).unwrap().verdict);
    }

    #[test]
    fn classify_scalar_boundary_tuple() {
        let cfg = cfg();
        // pi of the scalar unitary i*I: lies in the boundary candidate set.
        let i = c(0.0, 1.0);
        let x = Point7::new([i, i, c(-1.0, 0.0), i, c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, -1.0)])
            .unwrap();
        let report = classify_tuple7(ClassifyKind::Unitary, &Tuple7::scalar(&x), true, &cfg).unwrap();
        assert!(report.verdict, "checks: {:?}", report.checks);
        // Interior scalar points are not unitaries.
        let report =
            classify_tuple7(ClassifyKind::Unitary, &Tuple7::scalar(&sample_interior7()), false, &cfg)
                .unwrap();
        assert!(!report.verdict);
    }

    #[test]
    fn embed5to7_on_scalars() {
        let p = Point5::new([c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let t7 = embed5to7(&Tuple5::scalar(&p)).unwrap();
        for op in &t7.operators {
            assert!((op.entry(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        }
        let cfg = cfg();
        let r5 = classify_tuple5(ClassifyKind::Unitary, &Tuple5::scalar(&p), false, &cfg).unwrap();
        let r7 = classify_tuple7(ClassifyKind::Unitary, &t7, false, &cfg).unwrap();
        assert!(r5.verdict && r7.verdict);
    }

    #[test]
    fn eta_family_on_scalar_unitary() {
        let cfg = cfg();
        let i = c(0.0, 1.0);
        let x = Point7::new([i, i, c(-1.0, 0.0), i, c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, -1.0)])
            .unwrap();
        let report =
            eta_family_classify(&Tuple7::scalar(&x), ClassifyKind::Unitary, 16, &cfg).unwrap();
        assert!(report.verdict, "checks: {:?}", report.checks);
        // The zero tuple fails: eta N7 = 0 is not unitary.
        let report =
            eta_family_classify(&Tuple7::scalar(&Point7::zero()), ClassifyKind::Unitary, 8, &cfg)
                .unwrap();
        assert!(!report.verdict);
    }
}
