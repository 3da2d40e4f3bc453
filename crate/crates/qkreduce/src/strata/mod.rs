//! Singular strata: descriptors, linear patterns, congruence systems and catalogs.

mod catalog;
mod compare;
mod positivity;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::{NumericsError, Subspace};
use crate::quat::{axis_from_angles, HPoint, Quaternion};
use crate::reduction::{GroupElement, ReductionConfig, ReductionError};
use crate::weights::{
    box_omega, box_theta, congruence_group, minors_omega, minors_theta, sign_label, Family,
    IsotropyGroup, Sign, WeightError, WeightMatrix,
};

pub use catalog::{
    build_catalog, constrained_project, constrained_project_pattern, enumerate_sasakian_strata_omega,
    enumerate_sasakian_strata_theta, enumerate_twistor_strata_omega, enumerate_twistor_strata_theta,
    infeasibility_probe, random_pattern_point, stratum_isotropy_verify, v3_sign_families, Catalog,
    CatalogOptions, CatalogSummary, IsotropyVerification, NumericSummary, StratumReport,
};
pub use compare::{compare_families, compare_matrices, CompareReport, FamilySide, LevelCounts};
pub use positivity::{omega_positive_sign_pattern, positive_sign_pattern, v3_positive_sign_pattern, PositivePattern};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrataError {
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("inadmissible weights: {0} vanishes")]
    Inadmissible(String),
    #[error("sign system inconsistent: {0} positive patterns")]
    PositivityInconsistent(usize),
    #[error("pattern {0} has no {1} congruence system")]
    WrongLevel(String, Level),
    #[error("expected {expected} pattern parameters, got {got}")]
    ParamCount { expected: usize, got: usize },
    #[error("sin φ = 0 is excluded for axis patterns")]
    DegenerateAxis,
    #[error("generator {index} does not fix the point (residual {residual:e})")]
    GeneratorMismatch { index: usize, residual: f64 },
    #[error("descriptor does not belong to the {0} family")]
    FamilyMismatch(Family),
}

pub type Result<T> = std::result::Result<T, StrataError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Twistor,
    Sasakian,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Twistor => "twistor",
            Level::Sasakian => "sasakian",
        })
    }
}

/// Stratum family tags; declaration order is the canonical catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StratumKind {
    /// Every pair in the mixed eigenspace `(z, s·iz; w, s·iw)`.
    V3Sphere,
    /// z-blocks on three pairs, `(w, s·iw)` on the fourth.
    TripleSingle,
    /// z-blocks on three pairs, a free w-block on the fourth (union of both signs).
    TripleBlock,
    /// z-blocks on two pairs, free w-blocks on the other two.
    PairPair,
    /// z-blocks on two pairs, `(w, s·iw)` on each of the other two.
    SubPoint,
    /// Ω: `u₁ = 0`, z-blocks on two pairs, `(w, s·iw)` on the third.
    OmegaPoint,
    /// 3-Sasakian: `u_b = s·n̂·u_a` on every pair for a common axis `n̂`.
    SasakianPattern,
    /// z-block on one pair, `(w, s·iw)` on the other three.
    SingleTriple,
    /// No constraint.
    Whole,
}

impl StratumKind {
    /// Expected real dimension of the stratum in the twistor space.
    pub fn predicted_quotient_dim(self, family: Family) -> i64 {
        match (self, family) {
            // on ℍ⁷ the eigenspace pattern has one torus direction less to
            // absorb and cuts down to a single point
            (StratumKind::V3Sphere, Family::Omega) => 0,
            // the sign-free block meets N only along its two signed pieces
            (StratumKind::V3Sphere | StratumKind::TripleSingle | StratumKind::TripleBlock | StratumKind::PairPair, _) => 2,
            _ => 0,
        }
    }
}

/// Symbolic stratum: family tag, pair index groups (0-based) and signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumDescriptor {
    pub kind: StratumKind,
    pub family: Family,
    pub indices: Vec<Vec<usize>>,
    pub signs: Vec<Sign>,
    pub level: Level,
}

fn all_pairs(family: Family) -> Vec<usize> {
    (0..family.pairs()).collect()
}

impl StratumDescriptor {
    pub fn v3_sphere(family: Family, signs: Vec<Sign>) -> Self {
        assert_eq!(signs.len(), family.pairs());
        StratumDescriptor { kind: StratumKind::V3Sphere, family, indices: vec![all_pairs(family)], signs, level: Level::Twistor }
    }

    pub fn triple_single(z: [usize; 3], w: usize, s: Sign) -> Self {
        StratumDescriptor {
            kind: StratumKind::TripleSingle,
            family: Family::Theta,
            indices: vec![z.to_vec(), vec![w]],
            signs: vec![s],
            level: Level::Twistor,
        }
    }

    pub fn triple_block(z: [usize; 3], w: usize) -> Self {
        StratumDescriptor {
            kind: StratumKind::TripleBlock,
            family: Family::Theta,
            indices: vec![z.to_vec(), vec![w]],
            signs: vec![],
            level: Level::Twistor,
        }
    }

    pub fn pair_pair(z: [usize; 2], w: [usize; 2]) -> Self {
        StratumDescriptor {
            kind: StratumKind::PairPair,
            family: Family::Theta,
            indices: vec![z.to_vec(), w.to_vec()],
            signs: vec![],
            level: Level::Twistor,
        }
    }

    pub fn sub_point(z: [usize; 2], w: [usize; 2], s: [Sign; 2]) -> Self {
        StratumDescriptor {
            kind: StratumKind::SubPoint,
            family: Family::Theta,
            indices: vec![z.to_vec(), w.to_vec()],
            signs: s.to_vec(),
            level: Level::Twistor,
        }
    }

    pub fn omega_point(z: [usize; 2], w: usize, s: Sign) -> Self {
        StratumDescriptor {
            kind: StratumKind::OmegaPoint,
            family: Family::Omega,
            indices: vec![z.to_vec(), vec![w]],
            signs: vec![s],
            level: Level::Twistor,
        }
    }

    pub fn sasakian(family: Family, signs: Vec<Sign>) -> Self {
        assert_eq!(signs.len(), family.pairs());
        StratumDescriptor { kind: StratumKind::SasakianPattern, family, indices: vec![all_pairs(family)], signs, level: Level::Sasakian }
    }

    pub fn single_triple(z: usize, w: [usize; 3], s: [Sign; 3]) -> Self {
        StratumDescriptor {
            kind: StratumKind::SingleTriple,
            family: Family::Theta,
            indices: vec![vec![z], w.to_vec()],
            signs: s.to_vec(),
            level: Level::Twistor,
        }
    }

    pub fn whole(family: Family, level: Level) -> Self {
        StratumDescriptor { kind: StratumKind::Whole, family, indices: vec![all_pairs(family)], signs: vec![], level }
    }

    /// Index groups with 1-based pair labels.
    pub fn indices_one_based(&self) -> Vec<Vec<usize>> {
        self.indices.iter().map(|g| g.iter().map(|i| i + 1).collect()).collect()
    }

    pub fn label(&self) -> String {
        let grp = |g: &[usize]| g.iter().map(|i| (i + 1).to_string()).collect::<String>();
        let idx = self.indices.iter().map(|g| grp(g)).collect::<Vec<_>>();
        let sl = sign_label(&self.signs);
        match self.kind {
            StratumKind::V3Sphere => format!("V3[{sl}]"),
            StratumKind::TripleSingle | StratumKind::OmegaPoint => format!("{sl}S^{{{}}}_{{{}}}", idx[0], idx[1]),
            StratumKind::TripleBlock | StratumKind::PairPair => format!("S^{{{}}}_{{{}}}", idx[0], idx[1]),
            StratumKind::SubPoint | StratumKind::SingleTriple => format!("({sl})S^{{{}}}_{{{}}}", idx[0], idx[1]),
            StratumKind::SasakianPattern => format!(
                "S^{{{}}}[{}]",
                idx[0],
                self.signs.iter().map(|s| if *s == Sign::Plus { "w'" } else { "w''" }).collect::<Vec<_>>().join(",")
            ),
            StratumKind::Whole => "H^n".to_string(),
        }
    }

    /// Linear pattern realized by this descriptor.
    pub fn pattern(&self) -> Pattern {
        let n = self.family.pairs();
        let mut pairs = vec![PairKind::Zero; n];
        let mut lead = (self.family == Family::Omega).then_some(false);
        match self.kind {
            StratumKind::V3Sphere => {
                for (a, s) in self.signs.iter().enumerate() {
                    pairs[a] = PairKind::Both(*s);
                }
            }
            StratumKind::TripleSingle | StratumKind::OmegaPoint => {
                for &a in &self.indices[0] {
                    pairs[a] = PairKind::ZBlock;
                }
                pairs[self.indices[1][0]] = PairKind::WEigen(self.signs[0]);
            }
            StratumKind::TripleBlock | StratumKind::PairPair => {
                for &a in &self.indices[0] {
                    pairs[a] = PairKind::ZBlock;
                }
                for &a in &self.indices[1] {
                    pairs[a] = PairKind::WBlock;
                }
            }
            StratumKind::SubPoint | StratumKind::SingleTriple => {
                for &a in &self.indices[0] {
                    pairs[a] = PairKind::ZBlock;
                }
                for (&a, s) in self.indices[1].iter().zip(&self.signs) {
                    pairs[a] = PairKind::WEigen(*s);
                }
            }
            StratumKind::SasakianPattern => {
                for (a, s) in self.signs.iter().enumerate() {
                    pairs[a] = PairKind::Axis(*s);
                }
            }
            StratumKind::Whole => {
                pairs = vec![PairKind::Full; n];
                if lead.is_some() {
                    lead = Some(true);
                }
            }
        }
        Pattern { family: self.family, lead_free: lead, pairs, phi: std::f64::consts::FRAC_PI_2, delta: 0.0 }
    }

    /// The determinant the isotropy is attributed to: a box for the V₃ and
    /// 3-Sasakian patterns, `Δ` for triples and Ω points, the combination
    /// `Δ_{αβγ} − s_γ s_δ Δ_{αβδ}` for sub-points. Sphere-type pair-pair strata
    /// carry no closed form; their verified effective order is used.
    pub fn isotropy_determinant(&self, m: &WeightMatrix) -> Result<i64> {
        let s1 = self.signs.first().copied().unwrap_or(Sign::Plus);
        match (self.kind, m) {
            (StratumKind::V3Sphere | StratumKind::SasakianPattern, WeightMatrix::Theta(t)) => {
                let s = [1, 2, 3].map(|a| s1.times(self.signs[a]).flip());
                Ok(box_theta(t, s)?)
            }
            (StratumKind::V3Sphere | StratumKind::SasakianPattern, WeightMatrix::Omega(o)) => {
                let s = [1, 2].map(|a| s1.times(self.signs[a]).flip());
                Ok(box_omega(o, s)?)
            }
            (StratumKind::TripleSingle | StratumKind::TripleBlock, WeightMatrix::Theta(t)) => {
                let z = &self.indices[0];
                Ok(minors_theta(t)?.get([z[0], z[1], z[2]]))
            }
            (StratumKind::SubPoint, WeightMatrix::Theta(t)) => {
                let d = minors_theta(t)?;
                let (z, w) = (&self.indices[0], &self.indices[1]);
                let s = self.signs[0].times(self.signs[1]).value();
                Ok(d.get([z[0], z[1], w[0]]) - s * d.get([z[0], z[1], w[1]]))
            }
            (StratumKind::OmegaPoint, WeightMatrix::Omega(o)) => {
                let z = &self.indices[0];
                Ok(minors_omega(o)?.get(z[0], z[1]))
            }
            (StratumKind::PairPair | StratumKind::SingleTriple | StratumKind::Whole, _) => {
                let cfg = ReductionConfig::new(*m);
                Ok(self.isotropy(&cfg)?.effective as i64)
            }
            _ => Err(StrataError::FamilyMismatch(m.family())),
        }
    }

    /// Congruence rows of the fixed-point system of a generic pattern point.
    pub fn congruence_rows(&self, cfg: &ReductionConfig) -> Result<Vec<Vec<i64>>> {
        self.pattern().congruence_rows(cfg, self.level).ok_or_else(|| StrataError::WrongLevel(self.label(), self.level))
    }

    /// Raw stratum group, kernel of the action, and their quotient order.
    pub fn isotropy(&self, cfg: &ReductionConfig) -> Result<StratumIsotropy> {
        let rows = self.congruence_rows(cfg)?;
        let group = congruence_group(&rows)?;
        let kernel = congruence_group(&Pattern::kernel(self.family).congruence_rows(cfg, self.level).expect("full pattern"))?;
        Ok(StratumIsotropy { raw: group.order, kernel: kernel.order, effective: group.order / kernel.order, rows, group })
    }

    /// Lifts a solution of [`StratumDescriptor::congruence_rows`] to a group element.
    pub fn lift(&self, cfg: &ReductionConfig, x: &[num_rational::Ratio<i64>]) -> GroupElement {
        let r = cfg.torus_rank;
        match self.level {
            Level::Twistor => GroupElement::from_turns_twistor(&x[..r], x[r], x[r + 1]),
            Level::Sasakian => {
                let p = self.pattern();
                GroupElement::from_turns_sasakian(&x[..r], x[r], axis_from_angles(p.phi, p.delta))
            }
        }
    }
}

impl fmt::Display for StratumDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumIsotropy {
    pub raw: u64,
    pub kernel: u64,
    pub effective: u64,
    pub rows: Vec<Vec<i64>>,
    pub group: IsotropyGroup,
}

/// Shape of one quaternionic pair `(u_a, u_b)` in a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Full,
    Zero,
    /// `(z_a, z_b; 0, 0)`.
    ZBlock,
    /// `(0, 0; w_a, w_b)`.
    WBlock,
    /// `(z, s·iz; 0, 0)`.
    ZEigen(Sign),
    /// `(0, 0; w, s·iw)`.
    WEigen(Sign),
    /// `(z, s·iz; w, s·iw)`.
    Both(Sign),
    /// `u_b = s·n̂·u_a`, parametrized by `(z_a, z_b)`.
    Axis(Sign),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    pub family: Family,
    /// Ω only: whether `u₁` is free (`Some(true)`) or zero.
    pub lead_free: Option<bool>,
    pub pairs: Vec<PairKind>,
    /// Axis angles for [`PairKind::Axis`] pairs.
    pub phi: f64,
    pub delta: f64,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(w_a, w_b)` on the pattern `u_b = s·n̂·u_a` with `n̂ = i cos φ + j sin φ e^{iδ}`:
/// `s = +` gives `e^{iδ}/sin φ·(−z_b + i z_a cos φ, z_a + i z_b cos φ)`,
/// `s = −` gives `e^{iδ}/sin φ·(z_b + i z_a cos φ, −z_a + i z_b cos φ)`.
pub fn axis_pair_w(za: Complex64, zb: Complex64, s: Sign, phi: f64, delta: f64) -> Result<(Complex64, Complex64)> {
    let sp = phi.sin();
    if sp.abs() < 1e-12 {
        return Err(StrataError::DegenerateAxis);
    }
    let f = Complex64::from_polar(1.0 / sp, delta);
    let ic = c(0.0, phi.cos());
    let sv = s.value() as f64;
    Ok((f * (-zb * sv + ic * za), f * (za * sv + ic * zb)))
}

/// The second-family formula as printed: `e^{iδ}/sin φ·(−z_b − i z_a cos φ, z_a − i z_b cos φ)`.
pub fn printed_second_family_w(za: Complex64, zb: Complex64, phi: f64, delta: f64) -> (Complex64, Complex64) {
    let f = Complex64::from_polar(1.0 / phi.sin(), delta);
    let ic = c(0.0, phi.cos());
    (f * (-zb - ic * za), f * (za - ic * zb))
}

impl Pattern {
    /// The whole space; its fixed-point system is the kernel of the action.
    pub fn kernel(family: Family) -> Pattern {
        StratumDescriptor::whole(family, Level::Twistor).pattern()
    }

    fn pair_coords(&self) -> Vec<(usize, usize)> {
        let off = usize::from(self.family == Family::Omega);
        (0..self.pairs.len()).map(|a| (off + 2 * a, off + 2 * a + 1)).collect()
    }

    /// Columns are the images of unit parameters: lead (4 reals), then pairs in order.
    pub fn generators(&self) -> Result<DMatrix<f64>> {
        let n = self.family.ambient_n();
        let mut cols: Vec<HPoint> = Vec::new();
        let unit = |coord: usize, part: usize| {
            let mut p = HPoint::zeros(n);
            match part {
                0 => p.z[coord] = c(1.0, 0.0),
                1 => p.z[coord] = c(0.0, 1.0),
                2 => p.w[coord] = c(1.0, 0.0),
                _ => p.w[coord] = c(0.0, 1.0),
            }
            p
        };
        if self.lead_free == Some(true) {
            cols.extend((0..4).map(|k| unit(0, k)));
        }
        for (kind, (a, b)) in self.pairs.iter().zip(self.pair_coords()) {
            match *kind {
                PairKind::Zero => {}
                PairKind::Full => {
                    for coord in [a, b] {
                        cols.extend((0..4).map(|k| unit(coord, k)));
                    }
                }
                PairKind::ZBlock => {
                    for coord in [a, b] {
                        cols.extend((0..2).map(|k| unit(coord, k)));
                    }
                }
                PairKind::WBlock => {
                    for coord in [a, b] {
                        cols.extend((2..4).map(|k| unit(coord, k)));
                    }
                }
                PairKind::ZEigen(s) | PairKind::WEigen(s) | PairKind::Both(s) => {
                    let zpart = !matches!(kind, PairKind::WEigen(_));
                    let wpart = !matches!(kind, PairKind::ZEigen(_));
                    let si = c(0.0, s.value() as f64);
                    for one in [c(1.0, 0.0), c(0.0, 1.0)] {
                        if zpart {
                            let mut p = HPoint::zeros(n);
                            p.z[a] = one;
                            p.z[b] = si * one;
                            cols.push(p);
                        }
                        if wpart {
                            let mut p = HPoint::zeros(n);
                            p.w[a] = one;
                            p.w[b] = si * one;
                            cols.push(p);
                        }
                    }
                }
                PairKind::Axis(s) => {
                    for (za, zb) in [(c(1.0, 0.0), c(0.0, 0.0)), (c(0.0, 1.0), c(0.0, 0.0)), (c(0.0, 0.0), c(1.0, 0.0)), (c(0.0, 0.0), c(0.0, 1.0))] {
                        let (wa, wb) = axis_pair_w(za, zb, s, self.phi, self.delta)?;
                        let mut p = HPoint::zeros(n);
                        p.z[a] = za;
                        p.z[b] = zb;
                        p.w[a] = wa;
                        p.w[b] = wb;
                        cols.push(p);
                    }
                }
            }
        }
        let dim = 4 * n;
        let reals: Vec<Vec<f64>> = cols.iter().map(|p| p.to_real()).collect();
        Ok(DMatrix::from_fn(dim, reals.len(), |r, k| reals[k][r]))
    }

    pub fn param_dim(&self) -> Result<usize> {
        Ok(self.generators()?.ncols())
    }

    pub fn subspace(&self) -> Result<Subspace> {
        Ok(Subspace::span(&self.generators()?))
    }

    /// Axis `n̂` of the 3-Sasakian pattern.
    pub fn axis(&self) -> Quaternion {
        axis_from_angles(self.phi, self.delta)
    }

    /// Rows over unknowns `(x₁…x_r, a, b)` (twistor: torus `2πx`, `λ = e^{2πia}`,
    /// `ρ = e^{2πib}`) or `(x₁…x_r, c)` (3-Sasakian: `λ = exp(2πc·n̂)`).
    /// `None` if a pair kind has no meaning at this level.
    pub fn congruence_rows(&self, cfg: &ReductionConfig, level: Level) -> Option<Vec<Vec<i64>>> {
        let r = cfg.torus_rank;
        let cols = cfg.weights.columns();
        let mut rows = Vec::new();
        let row = |v: &[i64], s: i64, tail: &[i64]| -> Vec<i64> {
            v.iter().map(|x| s * x).chain(tail.iter().copied()).collect()
        };
        let zero = vec![0i64; r];
        match level {
            Level::Twistor => {
                if self.lead_free == Some(true) {
                    rows.push(row(&zero, 1, &[1, 1]));
                    rows.push(row(&zero, 1, &[-1, 1]));
                }
                for (kind, v) in self.pairs.iter().zip(&cols) {
                    let (zs, ws): (Vec<i64>, Vec<i64>) = match *kind {
                        PairKind::Zero => (vec![], vec![]),
                        PairKind::Full => (vec![1, -1], vec![1, -1]),
                        PairKind::ZBlock => (vec![1, -1], vec![]),
                        PairKind::WBlock => (vec![], vec![1, -1]),
                        PairKind::ZEigen(s) => (vec![s.value()], vec![]),
                        PairKind::WEigen(s) => (vec![], vec![s.value()]),
                        PairKind::Both(s) => (vec![s.value()], vec![s.value()]),
                        PairKind::Axis(_) => return None,
                    };
                    for s in zs {
                        rows.push(row(v, s, &[1, 1]));
                    }
                    for s in ws {
                        rows.push(row(v, s, &[-1, 1]));
                    }
                }
            }
            Level::Sasakian => {
                if self.lead_free == Some(true) {
                    rows.push(row(&zero, 1, &[1]));
                }
                for (kind, v) in self.pairs.iter().zip(&cols) {
                    match *kind {
                        PairKind::Zero => {}
                        PairKind::Full => {
                            rows.push(row(v, 1, &[1]));
                            rows.push(row(v, -1, &[1]));
                        }
                        PairKind::Axis(s) => rows.push(row(v, s.value(), &[1])),
                        _ => return None,
                    }
                }
            }
        }
        Some(rows)
    }
}

/// A point realizing the pattern from its real parameters (not yet on `N`).
pub fn stratum_point_parametrize(d: &StratumDescriptor, free_params: &[f64]) -> Result<HPoint> {
    stratum_point_in(&d.pattern(), free_params)
}

pub fn stratum_point_in(p: &Pattern, free_params: &[f64]) -> Result<HPoint> {
    let g = p.generators()?;
    if g.ncols() != free_params.len() {
        return Err(StrataError::ParamCount { expected: g.ncols(), got: free_params.len() });
    }
    let x = g * nalgebra::DVector::from_column_slice(free_params);
    Ok(HPoint::from_real(x.as_slice()))
}

/// `det(A(θ_α)·L − I)` on the pair block `(z_a, z_b, w_a, w_b)`, where `L` is
/// `u ↦ λuρ` written as a complex 2×2 matrix on `(z, w)`.
pub fn fixed_point_block_det(cfg: &ReductionConfig, g: &GroupElement, pair_index: usize) -> Complex64 {
    let th = cfg.pair_angles(&g.torus)[pair_index];
    let (eps, sig) = g.lambda.to_split();
    let rho = g.rho_complex().unwrap_or(c(1.0, 0.0));
    let l = [[eps * rho, -sig.conj() * rho], [sig * rho, eps.conj() * rho]];
    let a = [[th.cos(), th.sin()], [-th.sin(), th.cos()]];
    // ordering (z_a, z_b, w_a, w_b): index = 2·part + coord
    let mut m = nalgebra::DMatrix::<Complex64>::zeros(4, 4);
    for pi in 0..2 {
        for ci in 0..2 {
            for pj in 0..2 {
                for cj in 0..2 {
                    m[(2 * pi + ci, 2 * pj + cj)] = l[pi][pj] * a[ci][cj];
                }
            }
        }
    }
    for i in 0..4 {
        m[(i, i)] -= c(1.0, 0.0);
    }
    m.determinant()
}
