//! Projection onto `N = μ⁻¹(0) ∩ ν⁻¹(0)` on the unit sphere, rank diagnostics,
//! and emptiness probes for linear patterns.
//!
//! Every moment component is a real quadratic form `F_c(x) = xᵀ Q_c x` in the
//! flat layout of [`HPoint::to_real`], so `Q_c` is recovered once by
//! polarization and the Jacobian is `2·Q_c·x`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quat::{HPoint, Quaternion};
use crate::reduction::{moment, ReductionConfig, ReductionError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("start point has no component in the pattern subspace")]
    ZeroStart,
    #[error("point is not on N (residual {0:e})")]
    NotOnN(f64),
    #[error("pattern subspace is empty")]
    EmptyPattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Absolute bound on `‖μ‖² + ‖ν‖²`.
    pub residual: f64,
    /// Relative singular-value cutoff.
    pub rank: f64,
    /// Required ratio between the smallest kept and largest dropped singular value.
    pub gap: f64,
    pub max_iters: usize,
    pub max_restarts: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual: 1e-10, rank: 1e-6, gap: 1e3, max_iters: 500, max_restarts: 20 }
    }
}

impl Tolerances {
    /// Threshold above which a probe declares a pattern empty.
    pub fn empty_threshold(&self) -> f64 {
        1e3 * self.residual
    }
}

/// Independent stream for restart `k` of a run seeded with `seed`.
pub fn restart_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

pub fn random_unit(rng: &mut impl Rng, dim: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

/// The stacked `(μ, ν)` components as quadratic forms.
#[derive(Debug, Clone)]
pub struct QuadraticMap {
    forms: Vec<DMatrix<f64>>,
    dim: usize,
}

impl QuadraticMap {
    pub fn new(cfg: &ReductionConfig) -> Self {
        let dim = cfg.real_dim();
        let f = |x: &[f64]| -> Vec<f64> {
            moment(cfg, &HPoint::from_real(x)).expect("dimension from cfg").components()
        };
        let e = |i: usize| {
            let mut v = vec![0.0; dim];
            v[i] = 1.0;
            v
        };
        let diag: Vec<Vec<f64>> = (0..dim).map(|i| f(&e(i))).collect();
        let nc = diag[0].len();
        let mut forms = vec![DMatrix::zeros(dim, dim); nc];
        for i in 0..dim {
            for c in 0..nc {
                forms[c][(i, i)] = diag[i][c];
            }
            for j in i + 1..dim {
                let mut v = e(i);
                v[j] = 1.0;
                let fij = f(&v);
                for c in 0..nc {
                    let q = 0.5 * (fij[c] - diag[i][c] - diag[j][c]);
                    forms[c][(i, j)] = q;
                    forms[c][(j, i)] = q;
                }
            }
        }
        QuadraticMap { forms, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_components(&self) -> usize {
        self.forms.len()
    }

    pub fn eval(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.forms.len(), self.forms.iter().map(|q| x.dot(&(q * x))))
    }

    pub fn jacobian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut j = DMatrix::zeros(self.forms.len(), self.dim);
        for (c, q) in self.forms.iter().enumerate() {
            let row = q * x * 2.0;
            j.set_row(c, &row.transpose());
        }
        j
    }

    pub fn residual(&self, x: &DVector<f64>) -> f64 {
        self.eval(x).norm_squared()
    }
}

/// Linear subspace with orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    pub basis: DMatrix<f64>,
}

impl Subspace {
    pub fn whole(dim: usize) -> Self {
        Subspace { basis: DMatrix::identity(dim, dim) }
    }

    /// Orthonormalizes the column span of `gens`.
    pub fn span(gens: &DMatrix<f64>) -> Self {
        Subspace { basis: orthonormal_span(gens, 1e-12) }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn contains(&self, x: &DVector<f64>, tol: f64) -> bool {
        let proj = &self.basis * (self.basis.transpose() * x);
        (x - proj).norm() <= tol * x.norm().max(1.0)
    }
}

pub fn orthonormal_span(gens: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    if gens.ncols() == 0 {
        return DMatrix::zeros(gens.nrows(), 0);
    }
    let svd = gens.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| smax > 0.0 && svd.singular_values[i] > rel_tol * smax)
        .collect();
    DMatrix::from_fn(gens.nrows(), keep.len(), |r, c| u[(r, keep[c])])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionResult {
    pub point: HPoint,
    /// `‖μ‖² + ‖ν‖²` at `point`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub restarts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub singular_values: Vec<f64>,
    pub rank: usize,
    /// Smallest kept over largest dropped singular value (∞ if none dropped).
    pub gap_ratio: f64,
    pub ambiguous: bool,
}

/// Rank with a relative cutoff and a gap check.
pub fn rank_report(m: &DMatrix<f64>, tol: &Tolerances) -> RankReport {
    let mut sv: Vec<f64> = if m.nrows() == 0 || m.ncols() == 0 {
        vec![]
    } else {
        m.clone().svd(false, false).singular_values.iter().cloned().collect()
    };
    sv.sort_by(|a, b| b.total_cmp(a));
    let smax = sv.first().cloned().unwrap_or(0.0);
    let rank = if smax == 0.0 { 0 } else { sv.iter().filter(|&&s| s > tol.rank * smax).count() };
    let gap_ratio = match (rank, sv.get(rank)) {
        (0, _) => f64::INFINITY,
        (r, Some(&next)) if next > 0.0 => sv[r - 1] / next,
        _ => f64::INFINITY,
    };
    RankReport { singular_values: sv, rank, gap_ratio, ambiguous: gap_ratio < tol.gap }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub restarts: usize,
    pub converged_count: usize,
    pub min_residual: f64,
    /// Numerical verdict: every restart stalled above `1e3 × tol.residual`.
    pub empty: bool,
    pub best: ProjectionResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumDimension {
    /// Rank of the pattern directions plus the orbit directions at the point.
    pub saturated_dim: usize,
    pub constraint_rank: usize,
    /// Dimension of `(G·V) ∩ N` near the point.
    pub intersection_dim: usize,
    pub orbit_rank: usize,
    pub quotient_dim: i64,
    pub ambiguous: bool,
}

/// Zero-set solver for one configuration.
#[derive(Debug, Clone)]
pub struct Solver {
    pub cfg: ReductionConfig,
    pub quad: QuadraticMap,
    pub tol: Tolerances,
}

impl Solver {
    pub fn new(cfg: &ReductionConfig, tol: Tolerances) -> Self {
        Solver { cfg: cfg.clone(), quad: QuadraticMap::new(cfg), tol }
    }

    pub fn residual(&self, p: &HPoint) -> f64 {
        self.quad.residual(&DVector::from_vec(p.to_real()))
    }

    /// Levenberg–Marquardt on the sphere of `sub`, from the unit vector `y` of
    /// subspace coordinates. Steps are taken in the tangent space, retracted by
    /// renormalization, and accepted only if the residual drops.
    fn local_solve(&self, sub: &Subspace, y0: DVector<f64>) -> (DVector<f64>, f64, usize) {
        let p = &sub.basis;
        let m = p.ncols();
        let mut y = y0.normalize();
        let mut x = p * &y;
        let mut r = self.quad.eval(&x);
        let mut res = r.norm_squared();
        if res < self.tol.residual {
            return (y, res, 0);
        }
        let polish = self.tol.residual * 1e-14;
        let mut lambda = 1e-6;
        let mut iters = 0;
        while iters < self.tol.max_iters && res > polish {
            iters += 1;
            let jp = self.quad.jacobian(&x) * p;
            let proj = DMatrix::identity(m, m) - &y * y.transpose();
            let jt = jp * &proj;
            let jtj = jt.transpose() * &jt;
            let g = jt.transpose() * &r;
            let scale = jtj.diagonal().max().max(1e-300);
            let mut accepted = false;
            while lambda < 1e12 {
                let a = &jtj + DMatrix::identity(m, m) * (lambda * scale);
                let Some(chol) = a.cholesky() else {
                    lambda *= 10.0;
                    continue;
                };
                let mut d = -chol.solve(&g);
                d -= &y * y.dot(&d);
                let yn = (&y + &d).normalize();
                let xn = p * &yn;
                let rn = self.quad.eval(&xn);
                let resn = rn.norm_squared();
                if resn < res {
                    y = yn;
                    x = xn;
                    r = rn;
                    res = resn;
                    lambda = (lambda / 10.0).max(1e-15);
                    accepted = true;
                    break;
                }
                lambda *= 10.0;
            }
            if !accepted {
                break;
            }
        }
        (y, res, iters)
    }

    fn result(&self, sub: &Subspace, y: &DVector<f64>, res: f64, iters: usize, restarts: usize) -> ProjectionResult {
        let x = &sub.basis * y;
        ProjectionResult {
            point: HPoint::from_real(x.as_slice()),
            residual: res,
            iterations: iters,
            converged: res < self.tol.residual,
            restarts,
        }
    }

    /// Projects `start` (or a seeded random point when `None`) onto `N ∩ sub`,
    /// restarting from seeded random points while unconverged.
    pub fn project_in(
        &self,
        sub: &Subspace,
        start: Option<&HPoint>,
        seed: u64,
    ) -> Result<ProjectionResult, NumericsError> {
        if sub.dim() == 0 {
            return Err(NumericsError::EmptyPattern);
        }
        let y0 = match start {
            Some(s) => {
                let x = DVector::from_vec(s.to_real());
                if x.len() != self.quad.dim() {
                    return Err(ReductionError::DimensionMismatch {
                        expected: self.cfg.ambient_n,
                        got: s.n(),
                    }
                    .into());
                }
                let y = sub.basis.transpose() * x;
                if y.norm() < 1e-14 {
                    return Err(NumericsError::ZeroStart);
                }
                y
            }
            None => random_unit(&mut restart_rng(seed, 0), sub.dim()),
        };
        let (mut by, mut bres, mut total) = self.local_solve(sub, y0);
        let mut restarts = 0;
        while bres >= self.tol.residual && restarts < self.tol.max_restarts {
            restarts += 1;
            let y0 = random_unit(&mut restart_rng(seed, restarts as u64), sub.dim());
            let (y, res, it) = self.local_solve(sub, y0);
            total += it;
            if res < bres {
                by = y;
                bres = res;
            }
        }
        Ok(self.result(sub, &by, bres, total, restarts))
    }

    pub fn project(&self, start: Option<&HPoint>, seed: u64) -> Result<ProjectionResult, NumericsError> {
        self.project_in(&Subspace::whole(self.quad.dim()), start, seed)
    }

    /// `n_restarts` independent seeded local solves in `sub`, run in parallel.
    pub fn probe(&self, sub: &Subspace, n_restarts: usize, seed: u64) -> Result<ProbeReport, NumericsError> {
        if sub.dim() == 0 {
            return Err(NumericsError::EmptyPattern);
        }
        let runs: Vec<(DVector<f64>, f64, usize)> = (0..n_restarts.max(1))
            .into_par_iter()
            .map(|k| self.local_solve(sub, random_unit(&mut restart_rng(seed, k as u64), sub.dim())))
            .collect();
        let mut best = 0;
        for (k, run) in runs.iter().enumerate() {
            if run.1 < runs[best].1 {
                best = k;
            }
        }
        let converged_count = runs.iter().filter(|r| r.1 < self.tol.residual).count();
        let min_residual = runs[best].1;
        let iters = runs.iter().map(|r| r.2).sum();
        Ok(ProbeReport {
            restarts: runs.len(),
            converged_count,
            min_residual,
            empty: min_residual > self.tol.empty_threshold(),
            best: self.result(sub, &runs[best].0, min_residual, iters, runs.len() - 1),
        })
    }

    fn check_on_n(&self, p: &HPoint) -> Result<DVector<f64>, NumericsError> {
        let x = DVector::from_vec(p.to_real());
        let res = self.quad.residual(&x);
        // residual is quartic in the scale of p
        let scale = x.norm_squared().powi(2).max(f64::MIN_POSITIVE);
        if res > self.tol.residual * scale {
            return Err(NumericsError::NotOnN(res));
        }
        Ok(x)
    }

    /// Rank of the `(μ, ν)` Jacobian at `p ∈ N`. On `N` the sphere normal is
    /// orthogonal to every row, so `dim N = (4n − 1) − rank`.
    pub fn constraint_rank(&self, p: &HPoint) -> Result<RankReport, NumericsError> {
        let x = self.check_on_n(p)?;
        Ok(rank_report(&self.quad.jacobian(&x), &self.tol))
    }

    pub fn dim_n(&self, rank: usize) -> usize {
        self.quad.dim() - 1 - rank
    }

    pub fn orbit_rank(&self, p: &HPoint, include_u1_factor: bool) -> Result<RankReport, NumericsError> {
        self.check_on_n(p)?;
        Ok(rank_report(&orbit_fields(&self.cfg, p, include_u1_factor)?, &self.tol))
    }

    /// Dimension chain for the saturation `G·V` of the pattern `sub` at `p ∈ V ∩ N`.
    pub fn stratum_dimension(
        &self,
        sub: &Subspace,
        p: &HPoint,
        twistor: bool,
    ) -> Result<StratumDimension, NumericsError> {
        let x = self.check_on_n(p)?;
        let fields = orbit_fields(&self.cfg, p, twistor)?;
        let mut gens = DMatrix::zeros(x.len(), sub.dim() + fields.ncols());
        gens.columns_mut(0, sub.dim()).copy_from(&sub.basis);
        gens.columns_mut(sub.dim(), fields.ncols()).copy_from(&fields);
        let span_rank = rank_report(&gens, &self.tol);
        let basis = orthonormal_span(&gens, self.tol.rank);
        let jb = self.quad.jacobian(&x) * &basis;
        let c_rank = rank_report(&jb, &self.tol);
        let o_rank = rank_report(&fields, &self.tol);
        let intersection = span_rank.rank as i64 - 1 - c_rank.rank as i64;
        Ok(StratumDimension {
            saturated_dim: span_rank.rank,
            constraint_rank: c_rank.rank,
            intersection_dim: intersection.max(0) as usize,
            orbit_rank: o_rank.rank,
            quotient_dim: intersection - o_rank.rank as i64,
            ambiguous: span_rank.ambiguous || c_rank.ambiguous || o_rank.ambiguous,
        })
    }
}

/// Infinitesimal action fields at `p` as columns: torus generators, left
/// `i, j, k`, and (twistor group) right `i`.
pub fn orbit_fields(cfg: &ReductionConfig, p: &HPoint, include_u1_factor: bool) -> Result<DMatrix<f64>, NumericsError> {
    if p.n() != cfg.ambient_n {
        return Err(ReductionError::DimensionMismatch { expected: cfg.ambient_n, got: p.n() }.into());
    }
    let qs = p.to_quaternions();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for r in 0..cfg.torus_rank {
        let mut v = vec![Quaternion::default(); qs.len()];
        for (al, &(a, b)) in cfg.pairs().iter().enumerate() {
            let w = cfg.weight_column(al)[r];
            v[a] = qs[b].scale(w);
            v[b] = qs[a].scale(-w);
        }
        cols.push(HPoint::from_quaternions(&v).to_real());
    }
    for e in [Quaternion::I, Quaternion::J, Quaternion::K] {
        cols.push(p.left_mul(e).to_real());
    }
    if include_u1_factor {
        cols.push(p.right_mul(Quaternion::I).to_real());
    }
    let dim = cfg.real_dim();
    Ok(DMatrix::from_fn(dim, cols.len(), |r, c| cols[c][r]))
}

/// Free-function form of [`Solver::project`].
pub fn project_to_n(
    cfg: &ReductionConfig,
    start: Option<&HPoint>,
    tol: Tolerances,
    seed: u64,
) -> Result<ProjectionResult, NumericsError> {
    Solver::new(cfg, tol).project(start, seed)
}

pub fn constraint_rank(cfg: &ReductionConfig, p: &HPoint, tol: Tolerances) -> Result<RankReport, NumericsError> {
    Solver::new(cfg, tol).constraint_rank(p)
}

pub fn orbit_rank(
    cfg: &ReductionConfig,
    p: &HPoint,
    include_u1_factor: bool,
    tol: Tolerances,
) -> Result<RankReport, NumericsError> {
    Solver::new(cfg, tol).orbit_rank(p, include_u1_factor)
}

/// Smallest `|u_a|² + |u_b|²` over the quaternionic pairs.
pub fn min_pair_norm_sq(cfg: &ReductionConfig, p: &HPoint) -> f64 {
    cfg.pairs()
        .iter()
        .map(|&(a, b)| p.coord(a).norm_sq() + p.coord(b).norm_sq())
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleStats {
    pub samples: usize,
    pub seed: u64,
    pub converged: usize,
    pub max_residual: f64,
    /// Constraint rank → number of points.
    pub rank_counts: BTreeMap<usize, usize>,
    pub modal_rank: usize,
    pub dim_n: usize,
    pub ambiguous_ranks: usize,
    pub min_gap_ratio: f64,
    /// Orbit rank of `Sp(1) × T^r` → number of points.
    pub orbit_rank_g: BTreeMap<usize, usize>,
    /// Same with the extra `U(1)`.
    pub orbit_rank_twistor: BTreeMap<usize, usize>,
    pub min_pair_norm_sq: f64,
}

/// `n` seeded projections onto `N` with rank and local-freeness statistics.
/// Sample `k` uses restart stream `k`, so the result does not depend on
/// the thread count.
pub fn sample_zero_set(cfg: &ReductionConfig, tol: Tolerances, n: usize, seed: u64) -> Result<SampleStats, NumericsError> {
    let solver = Solver::new(cfg, tol);
    let per: Vec<_> = (0..n)
        .into_par_iter()
        .map(|k| -> Result<_, NumericsError> {
            let start = HPoint::from_real(random_unit(&mut restart_rng(seed, k as u64), cfg.real_dim()).as_slice());
            let r = solver.project(Some(&start), seed.wrapping_add(k as u64))?;
            if !r.converged {
                return Ok((r.residual, None));
            }
            let c = solver.constraint_rank(&r.point)?;
            let g = solver.orbit_rank(&r.point, false)?.rank;
            let gt = solver.orbit_rank(&r.point, true)?.rank;
            Ok((r.residual, Some((c, g, gt, min_pair_norm_sq(cfg, &r.point)))))
        })
        .collect::<Result<_, _>>()?;
    let mut stats = SampleStats {
        samples: n,
        seed,
        converged: 0,
        max_residual: 0.0,
        rank_counts: BTreeMap::new(),
        modal_rank: 0,
        dim_n: 0,
        ambiguous_ranks: 0,
        min_gap_ratio: f64::INFINITY,
        orbit_rank_g: BTreeMap::new(),
        orbit_rank_twistor: BTreeMap::new(),
        min_pair_norm_sq: f64::INFINITY,
    };
    for (res, info) in per {
        stats.max_residual = stats.max_residual.max(res);
        let Some((c, g, gt, pn)) = info else { continue };
        stats.converged += 1;
        *stats.rank_counts.entry(c.rank).or_insert(0) += 1;
        stats.ambiguous_ranks += usize::from(c.ambiguous);
        stats.min_gap_ratio = stats.min_gap_ratio.min(c.gap_ratio);
        *stats.orbit_rank_g.entry(g).or_insert(0) += 1;
        *stats.orbit_rank_twistor.entry(gt).or_insert(0) += 1;
        stats.min_pair_norm_sq = stats.min_pair_norm_sq.min(pn);
    }
    stats.modal_rank = stats.rank_counts.iter().max_by_key(|(r, c)| (**c, **r)).map_or(0, |(r, _)| *r);
    if stats.converged > 0 {
        stats.dim_n = solver.dim_n(stats.modal_rank);
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::WeightMatrix;

    #[test]
    fn quadratic_forms_reproduce_moment() {
        let cfg = ReductionConfig::new(WeightMatrix::parse("1,0,1,1/0,1,1,1/1,1,0,1", None).unwrap());
        let q = QuadraticMap::new(&cfg);
        let x = random_unit(&mut restart_rng(3, 0), cfg.real_dim());
        let direct = moment(&cfg, &HPoint::from_real(x.as_slice())).unwrap().components();
        let viaq = q.eval(&x);
        for (a, b) in direct.iter().zip(viaq.iter()) {
            assert!((a - b).abs() < 1e-13);
        }
        assert_eq!(q.num_components(), 18);
    }
}
