//! Structured singular value machinery for block-scalar structures
//! E(n; s; r1..rs): the defining polynomial, the principal-minor-sum map,
//! polydisc zero-free membership and mu estimation by bisection.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::CMatrix;
use crate::membership::{resolve, MembershipVerdict};
use crate::point::{Point5, Point7};
use crate::{par, Error, Result, ToleranceConfig};

/// Block-scalar perturbation structure diag(z1 I_{r1}, ..., zs I_{rs}).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    pub n: usize,
    pub s: usize,
    pub r: Vec<usize>,
    #[serde(skip)]
    exponents: Vec<Vec<usize>>,
}

impl BlockStructure {
    pub fn new(n: usize, s: usize, r: Vec<usize>) -> Result<Self> {
        if r.len() != s || s == 0 {
            return Err(Error::InvalidInput("r must list one size per block".into()));
        }
        if r.iter().any(|&rj| rj == 0) || r.iter().sum::<usize>() != n {
            return Err(Error::InvalidInput(
                "block sizes must be positive and sum to n".into(),
            ));
        }
        let exponents = ordered_exponents(&r);
        Ok(Self { n, s, r, exponents })
    }

    /// Re-derives the exponent table after deserialization.
    pub fn normalized(self) -> Result<Self> {
        Self::new(self.n, self.s, self.r)
    }

    /// Number of coefficients N = prod(r_j + 1) - 1.
    pub fn coefficient_count(&self) -> usize {
        self.r.iter().map(|&rj| rj + 1).product::<usize>() - 1
    }

    /// Multi-exponents in the paper ordering: compare the last differing
    /// coordinate.
    pub fn exponents(&self) -> &[Vec<usize>] {
        &self.exponents
    }

    /// 0-based index ranges of each diagonal block.
    fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.s);
        let mut start = 0;
        for &rj in &self.r {
            out.push(start..start + rj);
            start += rj;
        }
        out
    }
}

fn ordered_exponents(r: &[usize]) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    for &rj in r {
        let mut next = Vec::new();
        for base in &all {
            for k in 0..=rj {
                let mut e = base.clone();
                e.push(k);
                next.push(e);
            }
        }
        all = next;
    }
    all.retain(|e| e.iter().any(|&k| k > 0));
    // "alpha < beta iff alpha_{j0} < beta_{j0} at the largest differing
    // index" is lexicographic order on the reversed tuples.
    all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    all
}

pub fn structure_gamma7() -> BlockStructure {
    BlockStructure::new(3, 3, vec![1, 1, 1]).unwrap()
}

pub fn structure_gamma5() -> BlockStructure {
    BlockStructure::new(3, 2, vec![1, 2]).unwrap()
}

pub fn structure_tetra() -> BlockStructure {
    BlockStructure::new(2, 2, vec![1, 1]).unwrap()
}

pub fn structure_sym() -> BlockStructure {
    BlockStructure::new(2, 1, vec![2]).unwrap()
}

/// Defining polynomial 1 + sum_j (-1)^{|a^{(j)}|} x_j z^{a^{(j)}} with the
/// coefficients listed in the structure's exponent order.
pub fn r_eval(structure: &BlockStructure, x: &[Complex64], z: &[Complex64]) -> Result<Complex64> {
    if x.len() != structure.coefficient_count() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} coefficients, got {}",
            structure.coefficient_count(),
            x.len()
        )));
    }
    if z.len() != structure.s {
        return Err(Error::DimensionMismatch(format!(
            "expected {} variables, got {}",
            structure.s,
            z.len()
        )));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for (xj, alpha) in x.iter().zip(structure.exponents()) {
        let degree: usize = alpha.iter().sum();
        let mut mono = Complex64::new(1.0, 0.0);
        for (&zk, &ak) in z.iter().zip(alpha.iter()) {
            mono *= zk.powu(ak as u32);
        }
        let sign = if degree % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * xj * mono;
    }
    Ok(acc)
}

fn combinations(range: std::ops::Range<usize>, k: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = range.collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if cur.len() == k {
            out.push(cur);
            continue;
        }
        for i in start..items.len() {
            let mut next = cur.clone();
            next.push(items[i]);
            stack.push((i + 1, next));
        }
    }
    out.sort();
    out
}

/// Sums of principal minors over the structured index sets, in exponent
/// order.
pub fn pi_map(structure: &BlockStructure, a: &CMatrix) -> Result<Vec<Complex64>> {
    if a.dim() != structure.n {
        return Err(Error::DimensionMismatch(format!(
            "matrix must be {0}x{0}",
            structure.n
        )));
    }
    let ranges = structure.block_ranges();
    let mut out = Vec::with_capacity(structure.coefficient_count());
    for alpha in structure.exponents() {
        // All index sets taking alpha_j rows/columns inside block j.
        let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
        for (j, &aj) in alpha.iter().enumerate() {
            let block = combinations(ranges[j].clone(), aj);
            let mut next = Vec::new();
            for base in &choices {
                for combo in &block {
                    let mut idx = base.clone();
                    idx.extend_from_slice(combo);
                    next.push(idx);
                }
            }
            choices = next;
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for idx in &choices {
            let k = idx.len();
            let sub = DMatrix::from_fn(k, k, |i, j| a.entry(idx[i], idx[j]));
            sum += sub.determinant();
        }
        out.push(sum);
    }
    Ok(out)
}

/// Raw coefficient order for (3;3;1,1,1) coincides with the seven-variable
/// point layout.
pub fn pi_point7(a: &CMatrix) -> Result<Point7> {
    let raw = pi_map(&structure_gamma7(), a)?;
    Point7::from_slice(&raw)
}

/// The five-variable point layout groups the z1-carrying coefficients
/// first: (x1, x2, x3, y1, y2) = raw indices (0, 2, 4, 1, 3).
pub fn pi_point5(a: &CMatrix) -> Result<Point5> {
    let raw = pi_map(&structure_gamma5(), a)?;
    Point5::new([raw[0], raw[2], raw[4], raw[1], raw[3]])
}

pub fn point5_to_raw(p: &Point5) -> Vec<Complex64> {
    let [x1, x2, x3, y1, y2] = p.coords;
    vec![x1, y1, x2, y2, x3]
}

pub fn point7_to_raw(p: &Point7) -> Vec<Complex64> {
    p.coords.to_vec()
}

/// One term of an eliminated-variable split, with the defining-polynomial
/// sign folded into the coefficient.
struct Term {
    coeff: Complex64,
    exps: Vec<usize>,
}

fn eval_terms(terms: &[Term], zs: &[Complex64]) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs = 0.0f64;
    for t in terms {
        let mut mono = t.coeff;
        for (&zk, &ak) in zs.iter().zip(t.exps.iter()) {
            mono *= zk.powu(ak as u32);
        }
        acc += mono;
        abs += mono.norm();
    }
    (acc, abs)
}

/// Splits R = D(z') - z_elim N(z') for a scalar block `elim`.
fn term_split(structure: &BlockStructure, x: &[Complex64], elim: usize) -> (Vec<Term>, Vec<Term>) {
    let mut d_terms = vec![Term {
        coeff: Complex64::new(1.0, 0.0),
        exps: vec![0; structure.s - 1],
    }];
    let mut n_terms = Vec::new();
    for (xj, alpha) in x.iter().zip(structure.exponents()) {
        let degree: usize = alpha.iter().sum();
        let sign = if degree % 2 == 0 { 1.0 } else { -1.0 };
        let mut rest = alpha.clone();
        let aj = rest.remove(elim);
        if aj == 0 {
            d_terms.push(Term {
                coeff: sign * xj,
                exps: rest,
            });
        } else {
            // R carries sign * x * z_elim * rest; N absorbs the minus sign.
            n_terms.push(Term {
                coeff: -sign * xj,
                exps: rest,
            });
        }
    }
    (d_terms, n_terms)
}

/// Coefficients of the structure with block `elim` removed, read off the
/// z_elim-free terms.
fn reduced_structure(
    structure: &BlockStructure,
    d_terms: &[Term],
    elim_removed: usize,
) -> Result<(BlockStructure, Vec<Complex64>)> {
    let mut r = structure.r.clone();
    r.remove(elim_removed);
    let n: usize = r.iter().sum();
    let reduced = BlockStructure::new(n, r.len(), r)?;
    let mut table = std::collections::HashMap::new();
    for t in d_terms {
        if t.exps.iter().any(|&e| e > 0) {
            // Undo the sign folding: stored coeff is (-1)^{|alpha|} x.
            let degree: usize = t.exps.iter().sum();
            let sign = if degree % 2 == 0 { 1.0 } else { -1.0 };
            table.insert(t.exps.clone(), sign * t.coeff);
        }
    }
    let coeffs = reduced
        .exponents()
        .iter()
        .map(|e| table.get(e).copied().unwrap_or_default())
        .collect();
    Ok((reduced, coeffs))
}

/// Roots of R when only one block remains.
fn single_variable_roots(structure: &BlockStructure, x: &[Complex64]) -> Vec<Complex64> {
    let degree = structure.r[0];
    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    for (xj, alpha) in x.iter().zip(structure.exponents()) {
        let k = alpha[0];
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[k] += sign * xj;
    }
    poly_roots(&coeffs)
}

fn grid_resolution(ambient: usize, cfg: &ToleranceConfig) -> (usize, usize) {
    match ambient {
        1 => (24, cfg.grid_1d.max(64)),
        _ => (16, (cfg.grid_2d / 2).max(32)),
    }
}

/// Signed zero-distance proxy for R over the closed unit polydisc: positive
/// iff the sampled polynomial stays away from zero inside, near zero when
/// the zeros sit on the boundary, negative when one lies strictly inside.
/// Minimizes |D| - |N| over every scalar-block elimination, recursing when
/// a block does not appear in R at all.
pub fn zero_margin(
    structure: &BlockStructure,
    x: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<(f64, Vec<Complex64>)> {
    if x.len() != structure.coefficient_count() {
        return Err(Error::DimensionMismatch("coefficient count mismatch".into()));
    }
    let scale = x.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if structure.s == 1 {
        let roots = single_variable_roots(structure, x);
        let margin = roots
            .iter()
            .map(|z| z.norm() - 1.0)
            .fold(f64::INFINITY, f64::min)
            .min(1.0);
        return Ok((margin, roots));
    }
    let scalar_blocks: Vec<usize> = (0..structure.s).filter(|&j| structure.r[j] == 1).collect();
    if scalar_blocks.is_empty() {
        return Err(Error::InvalidInput(
            "zero-free testing needs a scalar block to eliminate".into(),
        ));
    }
    if structure.s > 3 {
        return Err(Error::InvalidInput(
            "more than three blocks is beyond desk scale".into(),
        ));
    }
    let mut best = f64::INFINITY;
    let mut best_witness = Vec::new();
    for &elim in &scalar_blocks {
        let (d_terms, n_terms) = term_split(structure, x, elim);
        let n_total: f64 = n_terms.iter().map(|t| t.coeff.norm()).sum();
        if n_total <= 1e-14 * scale {
            let (reduced, coeffs) = reduced_structure(structure, &d_terms, elim)?;
            let (margin, witness) = zero_margin(&reduced, &coeffs, cfg)?;
            if margin < best {
                best = margin;
                best_witness = witness;
            }
            continue;
        }
        let eval = |zs: &[Complex64]| eval_terms(&d_terms, zs).0.norm() - eval_terms(&n_terms, zs).0.norm();
        let (nr, na) = grid_resolution(structure.s - 1, cfg);
        let nodes = disc_nodes(nr, na);
        let (margin, start) = match structure.s - 1 {
            1 => {
                let (k, _) = par::min_over(nodes.len(), |k| eval(&[nodes[k]]));
                (polish_min(&eval, &[nodes[k]], 1.0 / nr as f64, 48), vec![nodes[k]])
            }
            _ => {
                let m = nodes.len();
                let (k, _) = par::min_over(m * m, |k| eval(&[nodes[k / m], nodes[k % m]]));
                let start = vec![nodes[k / m], nodes[k % m]];
                (polish_min(&eval, &start, 1.0 / nr as f64, 40), start)
            }
        };
        if margin < best {
            best = margin;
            best_witness = start;
        }
    }
    Ok((best, best_witness))
}

/// Smallest polydisc radius carrying a zero of R, or `None` when R is
/// zero-free at every scale. Reads the radius off the well-conditioned
/// ratio |D/N| instead of a sign test, so boundary-degenerate cases such
/// as scalar multiples of the identity come out exact. Coefficients are
/// normalized by the degree-weighted scale first, which makes the search
/// positively homogeneous by construction.
pub fn min_zero_radius(
    structure: &BlockStructure,
    x: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<Option<f64>> {
    const CAP: f64 = 1e6;
    if x.len() != structure.coefficient_count() {
        return Err(Error::DimensionMismatch("coefficient count mismatch".into()));
    }
    let sigma = x
        .iter()
        .zip(structure.exponents())
        .map(|(xj, alpha)| {
            let deg: usize = alpha.iter().sum();
            xj.norm().powf(1.0 / deg as f64)
        })
        .fold(0.0, f64::max);
    if sigma <= 1e-300 {
        return Ok(None);
    }
    let normalized: Vec<Complex64> = x
        .iter()
        .zip(structure.exponents())
        .map(|(xj, alpha)| {
            let deg: u32 = alpha.iter().sum::<usize>() as u32;
            xj / sigma.powi(deg as i32)
        })
        .collect();
    let rho = min_zero_radius_normalized(structure, &normalized, cfg)?;
    Ok(rho.map(|r| r / sigma).filter(|&r| r <= CAP))
}

/// Search on degree-normalized coefficients (largest weighted modulus 1);
/// the minimal radius is then bounded by a structure constant, so a fixed
/// doubling ladder of search regions suffices.
fn min_zero_radius_normalized(
    structure: &BlockStructure,
    x: &[Complex64],
    cfg: &ToleranceConfig,
) -> Result<Option<f64>> {
    let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if structure.s == 1 {
        let roots = single_variable_roots(structure, x);
        return Ok(roots
            .iter()
            .map(|z| z.norm())
            .fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.min(r)))));
    }
    let scalar_blocks: Vec<usize> = (0..structure.s).filter(|&j| structure.r[j] == 1).collect();
    if scalar_blocks.is_empty() || structure.s > 3 {
        return Err(Error::InvalidInput(
            "minimum zero radius needs at most three blocks and a scalar one".into(),
        ));
    }
    let ambient = structure.s - 1;
    let (nr, na) = (12usize, 36usize);
    let unit_nodes = disc_nodes(nr, na);
    let node_count = if ambient == 1 {
        unit_nodes.len()
    } else {
        unit_nodes.len() * unit_nodes.len()
    };
    let mut best: Option<f64> = None;
    for &elim in &scalar_blocks {
        let (d_terms, n_terms) = term_split(structure, x, elim);
        let n_total: f64 = n_terms.iter().map(|t| t.coeff.norm()).sum();
        if n_total <= 1e-14 * scale.max(1.0) {
            let (reduced, coeffs) = reduced_structure(structure, &d_terms, elim)?;
            if let Some(r) = min_zero_radius(&reduced, &coeffs, cfg)? {
                best = Some(best.map_or(r, |b: f64| b.min(r)));
            }
            continue;
        }
        // Radius of the zero completed through z_elim = D/N at u, guarded
        // against spurious ratios where N nearly vanishes.
        let objective = |u: &[Complex64]| {
            let (d, d_abs) = eval_terms(&d_terms, u);
            let (n, n_abs) = eval_terms(&n_terms, u);
            if n.norm() <= 1e-13 * (d_abs + n_abs + 1.0) {
                return f64::INFINITY;
            }
            let mut radius = d.norm() / n.norm();
            for z in u {
                radius = radius.max(z.norm());
            }
            radius
        };
        let nodes_at = |k: usize, region: f64| -> Vec<Complex64> {
            if ambient == 1 {
                vec![unit_nodes[k].scale(region)]
            } else {
                let m = unit_nodes.len();
                vec![unit_nodes[k / m].scale(region), unit_nodes[k % m].scale(region)]
            }
        };
        let mut candidate = f64::INFINITY;
        let mut arg: Option<(usize, f64)> = None;
        let mut region = 0.125f64;
        while region <= 4096.0 {
            let (k, m) = par::min_over(node_count, |k| objective(&nodes_at(k, region)));
            if m < candidate {
                candidate = m;
                arg = Some((k, region));
            }
            if candidate <= region {
                break;
            }
            region *= 2.0;
        }
        if let Some((k, region)) = arg {
            if candidate.is_finite() {
                let start = nodes_at(k, region);
                let polished =
                    polish_min_radius(&objective, &start, region / nr as f64, 40, candidate.max(region));
                candidate = candidate.min(polished);
            }
        }
        if candidate.is_finite() {
            best = Some(best.map_or(candidate, |b: f64| b.min(candidate)));
        }
    }
    let _ = cfg;
    Ok(best)
}

fn polish_min_radius(
    f: &(impl Fn(&[Complex64]) -> f64 + ?Sized),
    start: &[Complex64],
    step0: f64,
    iters: usize,
    rmax: f64,
) -> f64 {
    let mut coords: Vec<(f64, f64)> = start.iter().map(|z| (z.norm(), z.arg())).collect();
    let eval = |c: &[(f64, f64)]| {
        let zs: Vec<Complex64> = c.iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect();
        f(&zs)
    };
    let mut best = eval(&coords);
    let mut step = step0;
    let tstep0 = std::f64::consts::TAU / 72.0;
    let mut tstep = tstep0;
    for _ in 0..iters {
        let mut improved = false;
        for i in 0..coords.len() {
            for (dr, dt) in [(step, 0.0), (-step, 0.0), (0.0, tstep), (0.0, -tstep)] {
                let mut trial = coords.clone();
                trial[i].0 = (trial[i].0 + dr).clamp(0.0, rmax);
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
            step *= 0.5;
            tstep *= 0.5;
        }
    }
    best
}

fn disc_nodes(nr: usize, na: usize) -> Vec<Complex64> {
    let mut nodes = Vec::with_capacity(1 + nr * na);
    nodes.push(Complex64::new(0.0, 0.0));
    for ir in 1..=nr {
        let r = ir as f64 / nr as f64;
        for ia in 0..na {
            nodes.push(Complex64::from_polar(r, ia as f64 * std::f64::consts::TAU / na as f64));
        }
    }
    nodes
}

fn polish_min(
    f: &(impl Fn(&[Complex64]) -> f64 + ?Sized),
    start: &[Complex64],
    step0: f64,
    iters: usize,
) -> f64 {
    let mut coords: Vec<(f64, f64)> = start.iter().map(|z| (z.norm(), z.arg())).collect();
    let eval = |c: &[(f64, f64)]| {
        let zs: Vec<Complex64> = c.iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect();
        f(&zs)
    };
    let mut best = eval(&coords);
    let mut step = step0;
    for _ in 0..iters {
        let mut improved = false;
        for i in 0..coords.len() {
            for (dr, dt) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
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
            step *= 0.5;
        }
    }
    best
}

/// Durand-Kerner root finder for a polynomial given by ascending
/// coefficients; trailing zero coefficients are trimmed.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale: f64 = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() <= 1e-14 * scale {
        c.pop();
    }
    let degree = c.len().saturating_sub(1);
    if degree == 0 {
        return Vec::new();
    }
    if degree == 1 {
        return vec![-c[0] / c[1]];
    }
    if degree == 2 {
        return crate::membership::quadratic_roots(c[2], c[1], c[0]);
    }
    let lead = c[degree];
    let monic: Vec<Complex64> = c.iter().map(|&ck| ck / lead).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &ck in monic.iter().rev() {
            acc = acc * z + ck;
        }
        acc
    };
    // Non-real seed ratio avoids symmetric stagnation.
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..degree).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..200 {
        let mut worst = 0.0f64;
        let snapshot = roots.clone();
        for i in 0..degree {
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &rj) in snapshot.iter().enumerate() {
                if j != i {
                    denom *= snapshot[i] - rj;
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = eval(snapshot[i]) / denom;
            roots[i] = snapshot[i] - delta;
            worst = worst.max(delta.norm());
        }
        if worst < 1e-14 {
            break;
        }
    }
    roots
}

/// Zero-free polydisc membership of R for pi(A): interior means mu < 1.
pub fn mu_membership(
    structure: &BlockStructure,
    a: &CMatrix,
    closed: bool,
    cfg: &ToleranceConfig,
) -> Result<MembershipVerdict> {
    let x = pi_map(structure, a)?;
    let (margin, witness) = zero_margin(structure, &x, cfg)?;
    let band = cfg.undetermined_band;
    let _ = closed;
    Ok(MembershipVerdict::new(
        resolve(margin, margin >= -band, band),
        margin,
        Some(witness),
    ))
}

/// mu as the reciprocal of the smallest polydisc radius carrying a zero of
/// the defining polynomial; positively homogeneous by construction and zero
/// when no zero exists up to the radius cap.
pub fn mu_estimate(structure: &BlockStructure, a: &CMatrix, cfg: &ToleranceConfig) -> Result<f64> {
    let x = pi_map(structure, a)?;
    Ok(match min_zero_radius(structure, &x, cfg)? {
        None => 0.0,
        Some(rho) => 1.0 / rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn exponent_order_matches_the_two_specializations() {
        let s7 = structure_gamma7();
        let expected7 = [
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![1, 1, 0],
            vec![0, 0, 1],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![1, 1, 1],
        ];
        assert_eq!(s7.exponents(), &expected7);
        let s5 = structure_gamma5();
        let expected5 = [vec![1, 0], vec![0, 1], vec![1, 1], vec![0, 2], vec![1, 2]];
        assert_eq!(s5.exponents(), &expected5);
        assert_eq!(s5.coefficient_count(), 5);
    }

    #[test]
    fn pi_map_on_identity() {
        let id = CMatrix::identity(3);
        let p7 = pi_point7(&id).unwrap();
        assert!(p7.coords.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-14));
        let p5 = pi_point5(&id).unwrap();
        let expected = [c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)];
        for (a, b) in p5.coords.iter().zip(expected.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn pi_map_on_diagonal_is_the_product_pattern() {
        let (a, b, x) = (c(0.3, 0.1), c(-0.4, 0.2), c(0.1, -0.5));
        let m = CMatrix::diagonal(&[a, b, x]);
        let p7 = pi_point7(&m).unwrap();
        let expected = [a, b, a * b, x, a * x, b * x, a * b * x];
        for (got, want) in p7.coords.iter().zip(expected.iter()) {
            assert!((got - want).norm() < 1e-14);
        }
    }

    #[test]
    fn r_eval_factors_through_the_determinant() {
        // R_{pi(A)}(z) = det(I - A diag(z1 I_r1, ...)) for any matrix.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for structure in [structure_gamma7(), structure_gamma5(), structure_tetra(), structure_sym()] {
            for _ in 0..20 {
                let n = structure.n;
                let a = CMatrix::new(DMatrix::from_fn(n, n, |_, _| {
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                }))
                .unwrap();
                let x = pi_map(&structure, &a).unwrap();
                let z: Vec<Complex64> = (0..structure.s)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let lhs = r_eval(&structure, &x, &z).unwrap();
                let mut zdiag = Vec::new();
                for (j, &rj) in structure.r.iter().enumerate() {
                    for _ in 0..rj {
                        zdiag.push(z[j]);
                    }
                }
                let az = a.matrix() * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(zdiag));
                let rhs = (DMatrix::<Complex64>::identity(n, n) - az).determinant();
                assert!(
                    (lhs - rhs).norm() < 1e-12,
                    "structure {:?}: {lhs} vs {rhs}",
                    structure.r
                );
            }
        }
    }

    #[test]
    fn r_eval_examples() {
        let s7 = structure_gamma7();
        let zeros = vec![c(0.0, 0.0); 7];
        let anyz = [c(0.3, -0.2), c(0.1, 0.4), c(-0.7, 0.1)];
        assert!((r_eval(&s7, &zeros, &anyz).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let ones = vec![c(1.0, 0.0); 7];
        let z = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!(r_eval(&s7, &ones, &z).unwrap().norm() < 1e-15);
    }

    #[test]
    fn poly_roots_recovers_planted_roots() {
        let planted = [c(0.5, 0.2), c(-1.5, 0.7), c(0.1, -2.0), c(3.0, 0.0)];
        // Expand prod (z - root) into ascending coefficients.
        let mut coeffs = vec![c(1.0, 0.0)];
        for root in planted {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (k, &ck) in coeffs.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * root;
            }
            coeffs = next;
        }
        let roots = poly_roots(&coeffs);
        assert_eq!(roots.len(), planted.len());
        for want in planted {
            let hit = roots.iter().any(|got| (got - want).norm() < 1e-9);
            assert!(hit, "missing root {want}");
        }
    }

    #[test]
    fn mu_membership_examples() {
        let cfg = cfg();
        let s7 = structure_gamma7();
        let v = mu_membership(&s7, &CMatrix::zeros(3), false, &cfg).unwrap();
        assert_eq!(v.category, crate::membership::Category::Interior);
        let v = mu_membership(&s7, &CMatrix::identity(3), true, &cfg).unwrap();
        assert_eq!(v.category, crate::membership::Category::Closure);
        let two = CMatrix::identity(3).scale(c(2.0, 0.0));
        let v = mu_membership(&s7, &two, false, &cfg).unwrap();
        assert_eq!(v.category, crate::membership::Category::Outside);
    }

    #[test]
    fn mu_estimate_examples() {
        let cfg = cfg();
        let s7 = structure_gamma7();
        let m = CMatrix::diagonal(&[c(0.5, 0.0), c(0.25, 0.0), c(0.125, 0.0)]);
        assert!((mu_estimate(&s7, &m, &cfg).unwrap() - 0.5).abs() < 1e-6);
        assert!((mu_estimate(&s7, &CMatrix::identity(3), &cfg).unwrap() - 1.0).abs() < 1e-6);
        let nil = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        assert_eq!(mu_estimate(&structure_sym(), &nil, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn mu_upper_bound_and_homogeneity() {
        let cfg = cfg();
        let s7 = structure_gamma7();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let a = CMatrix::new(DMatrix::from_fn(3, 3, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            }))
            .unwrap();
            let mu = mu_estimate(&s7, &a, &cfg).unwrap();
            assert!(mu <= a.norm_op() + 1e-6);
            for t in [0.5, 2.0] {
                let scaled = a.scale(c(t, 0.0));
                let mu_t = mu_estimate(&s7, &scaled, &cfg).unwrap();
                assert!((mu_t - t * mu).abs() <= 1e-5 * (1.0 + mu_t), "t={t}: {mu_t} vs {}", t * mu);
            }
        }
    }
}
