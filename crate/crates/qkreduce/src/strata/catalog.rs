//! Stratum enumeration, pruning and per-stratum numerical checks.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::positivity::{omega_positive_sign_pattern, v3_positive_sign_pattern, PositivePattern};
use super::{Level, Pattern, Result, StrataError, StratumDescriptor, StratumKind};
use crate::numerics::{restart_rng, random_unit, ProbeReport, ProjectionResult, Solver, Tolerances};
use crate::quat::HPoint;
use crate::reduction::{fixed_point_residual, ReductionConfig};
use crate::weights::{admissibility, WeightError, sign_pairs, sign_triples, Family, IsotropyGroup, OmegaMatrix, Sign, ThetaMatrix, WeightMatrix};

const PARTITIONS: [([usize; 2], [usize; 2]); 3] = [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericSummary {
    pub feasible: bool,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub min_residual: f64,
    /// Dimension of the saturated pattern `G·V`.
    pub saturated_dim: Option<usize>,
    /// Dimension of `G·V ∩ N`.
    pub dim: Option<usize>,
    pub orbit_rank: Option<usize>,
    pub quotient_dim: Option<i64>,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsotropyVerification {
    pub group: IsotropyGroup,
    pub raw: u64,
    pub kernel: u64,
    pub effective: u64,
    pub elements_checked: usize,
    pub max_fixed_residual: f64,
    /// `‖μ‖² + ‖ν‖²` at the test point; the fixing check itself holds on the whole pattern.
    pub moment_residual: f64,
    pub on_n: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumReport {
    #[serde(skip)]
    pub descriptor: StratumDescriptor,
    pub family: StratumKind,
    pub label: String,
    pub indices: Vec<Vec<usize>>,
    pub signs: Vec<Sign>,
    pub level: Level,
    pub isotropy_determinant: i64,
    pub isotropy_raw: u64,
    pub isotropy_effective: u64,
    pub quotient_dim: i64,
    /// The fixed-point system has positive-dimensional solutions; such a
    /// pattern cannot meet `N`, where the action is locally free.
    pub continuous_stabilizer: bool,
    /// `|isotropy_determinant| = 1`.
    pub pruned: bool,
    pub numeric: Option<NumericSummary>,
    pub verification: Option<IsotropyVerification>,
}

impl StratumReport {
    pub fn structural(cfg: &ReductionConfig, d: StratumDescriptor) -> Result<Self> {
        let (iso, continuous) = match d.isotropy(cfg) {
            Ok(i) => (Some(i), false),
            Err(StrataError::Weights(WeightError::ContinuousStabilizer)) => (None, true),
            Err(e) => return Err(e),
        };
        let det = if continuous { 0 } else { d.isotropy_determinant(&cfg.weights)? };
        Ok(StratumReport {
            family: d.kind,
            label: d.label(),
            indices: d.indices_one_based(),
            signs: d.signs.clone(),
            level: d.level,
            isotropy_determinant: det,
            isotropy_raw: iso.as_ref().map_or(0, |i| i.raw),
            isotropy_effective: iso.as_ref().map_or(0, |i| i.effective),
            quotient_dim: d.kind.predicted_quotient_dim(d.family),
            continuous_stabilizer: continuous,
            pruned: det.abs() == 1,
            numeric: None,
            verification: None,
            descriptor: d,
        })
    }

    pub fn feasible(&self) -> Option<bool> {
        self.numeric.as_ref().map(|n| n.feasible)
    }

    /// Not pruned and, when probed, numerically nonempty.
    pub fn survives(&self) -> bool {
        !self.pruned && !self.continuous_stabilizer && self.feasible().unwrap_or(true)
    }

    pub fn is_sphere(&self) -> bool {
        self.quotient_dim == 2
    }
}

fn admissible_or_err(m: &WeightMatrix) -> Result<()> {
    let a = admissibility(m)?;
    match a.witness {
        Some(w) => Err(StrataError::Inadmissible(w)),
        None => Ok(()),
    }
}

fn structural(m: WeightMatrix, ds: Vec<StratumDescriptor>) -> Result<Vec<StratumReport>> {
    let cfg = ReductionConfig::new(m);
    let mut out = ds.into_iter().map(|d| StratumReport::structural(&cfg, d)).collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.descriptor.cmp(&b.descriptor));
    Ok(out)
}

/// All eight mixed-eigenspace sign families (first sign `+`).
pub fn v3_sign_families(family: Family) -> Vec<StratumDescriptor> {
    let k = family.pairs();
    (0..1usize << (k - 1))
        .map(|mask| {
            let signs = (0..k)
                .map(|a| if a > 0 && mask & (1 << (k - 1 - a)) != 0 { Sign::Minus } else { Sign::Plus })
                .collect();
            StratumDescriptor::v3_sphere(family, signs)
        })
        .collect()
}

fn theta_twistor_descriptors(pos: &PositivePattern) -> Vec<StratumDescriptor> {
    let mut ds = vec![StratumDescriptor::v3_sphere(Family::Theta, pos.signs.clone())];
    for w in 0..4 {
        let z: Vec<usize> = (0..4).filter(|&a| a != w).collect();
        for s in Sign::BOTH {
            ds.push(StratumDescriptor::triple_single([z[0], z[1], z[2]], w, s));
        }
    }
    for (z, w) in PARTITIONS {
        ds.push(StratumDescriptor::pair_pair(z, w));
        for (a, b) in [(z, w), (w, z)] {
            for s in sign_pairs() {
                ds.push(StratumDescriptor::sub_point(a, b, s));
            }
        }
    }
    ds
}

/// Twistor strata of Θ before pruning: the positive V₃ sphere, eight
/// triple spheres, three pair-pair spheres and, per pair-pair set, the eight
/// sub-point candidates (both orientations). Entries are flagged `pruned`,
/// not removed.
pub fn enumerate_twistor_strata_theta(m: &ThetaMatrix) -> Result<Vec<StratumReport>> {
    let wm = WeightMatrix::Theta(*m);
    admissible_or_err(&wm)?;
    let pos = v3_positive_sign_pattern(m)?;
    structural(wm, theta_twistor_descriptors(&pos))
}

pub fn enumerate_twistor_strata_omega(m: &OmegaMatrix) -> Result<Vec<StratumReport>> {
    let wm = WeightMatrix::Omega(*m);
    admissible_or_err(&wm)?;
    let pos = omega_positive_sign_pattern(m)?;
    let mut ds = vec![StratumDescriptor::v3_sphere(Family::Omega, pos.signs.clone())];
    for w in 0..3 {
        let z: Vec<usize> = (0..3).filter(|&a| a != w).collect();
        for s in Sign::BOTH {
            ds.push(StratumDescriptor::omega_point([z[0], z[1]], w, s));
        }
    }
    structural(wm, ds)
}

/// 3-Sasakian axis patterns, one per sign tuple modulo the global exchange.
pub fn enumerate_sasakian_strata_theta(m: &ThetaMatrix) -> Result<Vec<StratumReport>> {
    let wm = WeightMatrix::Theta(*m);
    admissible_or_err(&wm)?;
    let ds = sign_triples()
        .iter()
        .map(|t| StratumDescriptor::sasakian(Family::Theta, std::iter::once(Sign::Plus).chain(t.iter().copied()).collect()))
        .collect();
    structural(wm, ds)
}

pub fn enumerate_sasakian_strata_omega(m: &OmegaMatrix) -> Result<Vec<StratumReport>> {
    let wm = WeightMatrix::Omega(*m);
    admissible_or_err(&wm)?;
    let ds = sign_pairs()
        .iter()
        .map(|t| StratumDescriptor::sasakian(Family::Omega, std::iter::once(Sign::Plus).chain(t.iter().copied()).collect()))
        .collect();
    structural(wm, ds)
}

/// Checks every element of the stratum group (or only the generators, for
/// large groups) fixes `p`.
pub fn stratum_isotropy_verify(cfg: &ReductionConfig, d: &StratumDescriptor, p: &HPoint, tol: &Tolerances) -> Result<IsotropyVerification> {
    let iso = d.isotropy(cfg)?;
    let k = iso.rows[0].len();
    let elems: Vec<Vec<Ratio<i64>>> = if iso.group.order <= 4096 {
        iso.group.elements(k, 4096)
    } else {
        iso.group.generators.clone()
    };
    let scale = p.norm().max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    for (index, e) in elems.iter().enumerate() {
        let g = d.lift(cfg, e);
        let r = fixed_point_residual(cfg, &g, p)? / scale;
        if r > 1e-8 {
            return Err(StrataError::GeneratorMismatch { index, residual: r });
        }
        worst = worst.max(r);
    }
    let solver = Solver::new(cfg, *tol);
    let moment_residual = solver.residual(&p.scaled(1.0 / scale));
    Ok(IsotropyVerification {
        raw: iso.raw,
        kernel: iso.kernel,
        effective: iso.effective,
        group: iso.group,
        elements_checked: elems.len(),
        max_fixed_residual: worst,
        moment_residual,
        on_n: moment_residual < tol.residual,
    })
}

/// Projection onto `N` restricted to the stratum's linear pattern.
pub fn constrained_project(cfg: &ReductionConfig, d: &StratumDescriptor, start: Option<&HPoint>, tol: Tolerances, seed: u64) -> Result<ProjectionResult> {
    constrained_project_pattern(cfg, &d.pattern(), start, tol, seed)
}

pub fn constrained_project_pattern(cfg: &ReductionConfig, p: &Pattern, start: Option<&HPoint>, tol: Tolerances, seed: u64) -> Result<ProjectionResult> {
    let sub = p.subspace()?;
    Ok(Solver::new(cfg, tol).project_in(&sub, start, seed)?)
}

/// Independent restarts inside the pattern; `empty` when all stall above `1e3·tol`.
pub fn infeasibility_probe(cfg: &ReductionConfig, d: &StratumDescriptor, n_restarts: usize, tol: Tolerances, seed: u64) -> Result<ProbeReport> {
    let sub = d.pattern().subspace()?;
    Ok(Solver::new(cfg, tol).probe(&sub, n_restarts, seed)?)
}

/// A random point of the pattern, on the unit sphere.
pub fn random_pattern_point(d: &StratumDescriptor, seed: u64) -> Result<HPoint> {
    let sub = d.pattern().subspace()?;
    let y = random_unit(&mut restart_rng(seed, 0), sub.dim());
    Ok(HPoint::from_real((&sub.basis * y).as_slice()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatalogOptions {
    pub tol: Tolerances,
    pub seed: u64,
    /// Probe restarts per stratum.
    pub restarts: usize,
    /// Run feasibility probes and dimension counts.
    pub numeric: bool,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions { tol: Tolerances::default(), seed: 0, restarts: 16, numeric: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogSummary {
    pub spheres: usize,
    pub point_candidates: usize,
    /// Point strata found nonempty (when probed).
    pub points: Option<usize>,
    pub pruned: usize,
    pub infeasible: Option<usize>,
    pub survivors: usize,
    pub surviving_spheres: usize,
    pub surviving_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Catalog {
    pub weights: Vec<Vec<i64>>,
    pub weight_family: Family,
    pub level: Level,
    pub positive: Option<PositivePattern>,
    pub strata: Vec<StratumReport>,
    pub summary: CatalogSummary,
}

impl Catalog {
    pub fn survivors(&self) -> impl Iterator<Item = &StratumReport> {
        self.strata.iter().filter(|s| s.survives())
    }

    /// Partition of the pair indices and no V₃ pair mixed with block pairs.
    pub fn self_check(&self) -> std::result::Result<(), String> {
        let n = self.weight_family.pairs();
        for s in &self.strata {
            let mut all: Vec<usize> = s.descriptor.indices.concat();
            all.sort_unstable();
            let expect: Vec<usize> = (0..n).collect();
            let partial = matches!(s.family, StratumKind::V3Sphere | StratumKind::SasakianPattern | StratumKind::Whole);
            if all != expect && !partial {
                return Err(format!("{}: index sets do not partition the pairs", s.label));
            }
            if partial && s.descriptor.indices.len() != 1 {
                return Err(format!("{}: malformed index sets", s.label));
            }
            let arity = match s.family {
                StratumKind::V3Sphere | StratumKind::SasakianPattern => n,
                StratumKind::TripleSingle | StratumKind::OmegaPoint => 1,
                StratumKind::SubPoint => 2,
                StratumKind::SingleTriple => 3,
                _ => 0,
            };
            if s.signs.len() != arity {
                return Err(format!("{}: sign tuple length {}", s.label, s.signs.len()));
            }
            let pat = s.descriptor.pattern();
            let v3 = pat.pairs.iter().any(|p| matches!(p, super::PairKind::Both(_)));
            let block = pat.pairs.iter().any(|p| !matches!(p, super::PairKind::Both(_)));
            if v3 && block {
                return Err(format!("{}: mixes eigenspace and block pairs", s.label));
            }
        }
        Ok(())
    }
}

fn summarize(strata: &[StratumReport], numeric: bool) -> CatalogSummary {
    let spheres = strata.iter().filter(|s| s.is_sphere()).count();
    let point_candidates = strata.len() - spheres;
    CatalogSummary {
        spheres,
        point_candidates,
        points: numeric.then(|| strata.iter().filter(|s| !s.is_sphere() && s.feasible() == Some(true)).count()),
        pruned: strata.iter().filter(|s| s.pruned).count(),
        infeasible: numeric.then(|| strata.iter().filter(|s| s.feasible() == Some(false)).count()),
        survivors: strata.iter().filter(|s| s.survives()).count(),
        surviving_spheres: strata.iter().filter(|s| s.survives() && s.is_sphere()).count(),
        surviving_points: strata.iter().filter(|s| s.survives() && !s.is_sphere()).count(),
    }
}

/// Seed for stratum `i` of a catalog run.
fn stratum_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn numeric_pass(cfg: &ReductionConfig, r: &mut StratumReport, opts: &CatalogOptions, seed: u64) -> Result<()> {
    let d = r.descriptor.clone();
    let sub = d.pattern().subspace()?;
    let solver = Solver::new(cfg, opts.tol);
    let probe = solver.probe(&sub, opts.restarts, seed)?;
    let feasible = !probe.empty && probe.converged_count > 0;
    let mut summary = NumericSummary {
        feasible,
        restarts: probe.restarts,
        converged_restarts: probe.converged_count,
        min_residual: probe.min_residual,
        saturated_dim: None,
        dim: None,
        orbit_rank: None,
        quotient_dim: None,
        ambiguous: false,
    };
    let point = if feasible {
        // dimension counts at a few independent points; special loci only lower
        // the local count, so the largest one is the dimension of the stratum
        let mut dims = vec![solver.stratum_dimension(&sub, &probe.best.point, d.level == Level::Twistor)?];
        for k in 1..=4u64 {
            let pr = solver.project_in(&sub, None, seed.wrapping_add(k))?;
            if pr.converged {
                dims.push(solver.stratum_dimension(&sub, &pr.point, d.level == Level::Twistor)?);
            }
        }
        let dim = dims.iter().max_by_key(|x| x.intersection_dim).expect("nonempty").clone();
        summary.saturated_dim = Some(dim.saturated_dim);
        summary.dim = Some(dim.intersection_dim);
        summary.orbit_rank = Some(dim.orbit_rank);
        summary.quotient_dim = Some(dim.quotient_dim);
        summary.ambiguous = dim.ambiguous || dims.iter().any(|x| x.intersection_dim != dim.intersection_dim);
        probe.best.point.clone()
    } else {
        random_pattern_point(&d, seed)?
    };
    if !r.continuous_stabilizer {
        r.verification = Some(stratum_isotropy_verify(cfg, &d, &point, &opts.tol)?);
    }
    r.numeric = Some(summary);
    Ok(())
}

/// Structural catalog plus, if requested, a probe, dimension count and
/// pointwise isotropy check for every entry.
pub fn build_catalog(m: &WeightMatrix, level: Level, opts: &CatalogOptions) -> Result<Catalog> {
    let (mut strata, positive) = match (m, level) {
        (WeightMatrix::Theta(t), Level::Twistor) => (enumerate_twistor_strata_theta(t)?, Some(v3_positive_sign_pattern(t)?)),
        (WeightMatrix::Omega(o), Level::Twistor) => (enumerate_twistor_strata_omega(o)?, Some(omega_positive_sign_pattern(o)?)),
        (WeightMatrix::Theta(t), Level::Sasakian) => (enumerate_sasakian_strata_theta(t)?, None),
        (WeightMatrix::Omega(o), Level::Sasakian) => (enumerate_sasakian_strata_omega(o)?, None),
    };
    if opts.numeric {
        let cfg = ReductionConfig::new(*m);
        strata
            .par_iter_mut()
            .enumerate()
            .map(|(i, r)| numeric_pass(&cfg, r, opts, stratum_seed(opts.seed, i)))
            .collect::<Result<Vec<()>>>()?;
    }
    let summary = summarize(&strata, opts.numeric);
    Ok(Catalog { weights: m.rows(), weight_family: m.family(), level, positive, strata, summary })
}
