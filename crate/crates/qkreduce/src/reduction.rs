//! Moment maps and the action of `T^r × Sp(1) (× U(1))` on ℍⁿ.

use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::quat::{HPoint, Quaternion};
use crate::weights::{Family, WeightMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("torus has {got} angles, expected {expected}")]
    TorusMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionConfig {
    pub family: Family,
    pub weights: WeightMatrix,
    pub ambient_n: usize,
    pub torus_rank: usize,
    /// Ω: `u₁` sits in a 1×1 identity block and takes no part in the pairing.
    pub fixed_first_coordinate: bool,
    columns: Vec<Vec<f64>>,
}

impl ReductionConfig {
    pub fn new(weights: WeightMatrix) -> Self {
        let family = weights.family();
        let columns = weights
            .columns()
            .iter()
            .map(|c| c.iter().map(|&v| v as f64).collect())
            .collect();
        ReductionConfig {
            family,
            weights,
            ambient_n: family.ambient_n(),
            torus_rank: family.torus_rank(),
            fixed_first_coordinate: family == Family::Omega,
            columns,
        }
    }

    /// Coordinate indices `(a, b)` of each quaternionic pair, 0-based.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let off = usize::from(self.fixed_first_coordinate);
        (0..self.family.pairs()).map(|a| (off + 2 * a, off + 2 * a + 1)).collect()
    }

    pub fn num_pairs(&self) -> usize {
        self.family.pairs()
    }

    /// Weight column of pair `α` as floats.
    pub fn weight_column(&self, alpha: usize) -> &[f64] {
        &self.columns[alpha]
    }

    /// `θ_α = Σ_r W[r][α]·t_r`.
    pub fn pair_angles(&self, torus: &[f64]) -> Vec<f64> {
        self.columns
            .iter()
            .map(|c| c.iter().zip(torus).map(|(w, t)| w * t).sum())
            .collect()
    }

    fn check(&self, p: &HPoint) -> Result<(), ReductionError> {
        if p.n() != self.ambient_n {
            Err(ReductionError::DimensionMismatch { expected: self.ambient_n, got: p.n() })
        } else {
            Ok(())
        }
    }

    /// Real dimension of the ambient space.
    pub fn real_dim(&self) -> usize {
        4 * self.ambient_n
    }
}

/// `(A(θ), λ, ρ)`; `rho = None` selects the 3-Sasakian group `G`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupElement {
    pub torus: Vec<f64>,
    pub lambda: Quaternion,
    pub rho: Option<[f64; 2]>,
}

impl GroupElement {
    pub fn identity(cfg: &ReductionConfig, twistor: bool) -> Self {
        GroupElement {
            torus: vec![0.0; cfg.torus_rank],
            lambda: Quaternion::ONE,
            rho: twistor.then_some([1.0, 0.0]),
        }
    }

    pub fn rho_complex(&self) -> Option<Complex64> {
        self.rho.map(|r| Complex64::new(r[0], r[1]))
    }

    /// Twistor lift of a rational point `(x, a, b)` of turns:
    /// torus `2πx`, `λ = e^{2πia}`, `ρ = e^{2πib}`.
    pub fn from_turns_twistor(x: &[Ratio<i64>], a: Ratio<i64>, b: Ratio<i64>) -> Self {
        let tau = std::f64::consts::TAU;
        let f = |r: Ratio<i64>| *r.numer() as f64 / *r.denom() as f64;
        let la = tau * f(a);
        let rb = tau * f(b);
        GroupElement {
            torus: x.iter().map(|&r| tau * f(r)).collect(),
            lambda: Quaternion::new(la.cos(), la.sin(), 0.0, 0.0),
            rho: Some([rb.cos(), rb.sin()]),
        }
    }

    /// 3-Sasakian lift of `(x, c)`: torus `2πx`, `λ = exp(2πc·n̂)`.
    pub fn from_turns_sasakian(x: &[Ratio<i64>], c: Ratio<i64>, axis: Quaternion) -> Self {
        let tau = std::f64::consts::TAU;
        let f = |r: Ratio<i64>| *r.numer() as f64 / *r.denom() as f64;
        GroupElement {
            torus: x.iter().map(|&r| tau * f(r)).collect(),
            lambda: Quaternion::exp_axis(axis, tau * f(c)),
            rho: None,
        }
    }
}

/// Elements `(λ, ρ) = ±(1, 1)` with trivial torus act as the identity.
pub fn non_effective_elements(cfg: &ReductionConfig) -> [GroupElement; 2] {
    let id = GroupElement::identity(cfg, true);
    let mut neg = id.clone();
    neg.lambda = -Quaternion::ONE;
    neg.rho = Some([-1.0, 0.0]);
    [id, neg]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentValue {
    pub mu: [Quaternion; 3],
    pub nu: Vec<Quaternion>,
}

impl MomentValue {
    /// Imaginary components, `9 + 3·rank` reals: μ_i, μ_j, μ_k then ν_1, ….
    pub fn components(&self) -> Vec<f64> {
        self.mu.iter().chain(self.nu.iter()).flat_map(|q| q.im()).collect()
    }

    pub fn residual_sq(&self) -> f64 {
        self.mu.iter().chain(self.nu.iter()).map(|q| q.norm_sq()).sum()
    }
}

/// `(Σ ū i u, Σ ū j u, Σ ū k u)`.
pub fn mu(cfg: &ReductionConfig, p: &HPoint) -> Result<[Quaternion; 3], ReductionError> {
    cfg.check(p)?;
    let mut out = [Quaternion::default(); 3];
    for a in 0..p.n() {
        let u = p.coord(a);
        let uc = u.conj();
        for (o, e) in out.iter_mut().zip([Quaternion::I, Quaternion::J, Quaternion::K]) {
            *o = *o + uc * e * u;
        }
    }
    Ok(out)
}

/// `ν_r = Σ_α W[r][α] (ū_a u_b − ū_b u_a)` over the pairs `(a, b)`.
pub fn nu(cfg: &ReductionConfig, p: &HPoint) -> Result<Vec<Quaternion>, ReductionError> {
    cfg.check(p)?;
    let terms: Vec<Quaternion> = cfg
        .pairs()
        .iter()
        .map(|&(a, b)| {
            let (ua, ub) = (p.coord(a), p.coord(b));
            ua.conj() * ub - ub.conj() * ua
        })
        .collect();
    Ok((0..cfg.torus_rank)
        .map(|r| {
            terms
                .iter()
                .enumerate()
                .fold(Quaternion::default(), |acc, (al, t)| acc + t.scale(cfg.columns[al][r]))
        })
        .collect())
}

pub fn moment(cfg: &ReductionConfig, p: &HPoint) -> Result<MomentValue, ReductionError> {
    Ok(MomentValue { mu: mu(cfg, p)?, nu: nu(cfg, p)? })
}

/// `A(θ)·λ·p·ρ`, rotating each pair by `(u_a, u_b) ↦ (c·u_a + s·u_b, −s·u_a + c·u_b)`.
pub fn act(cfg: &ReductionConfig, g: &GroupElement, p: &HPoint) -> Result<HPoint, ReductionError> {
    cfg.check(p)?;
    if g.torus.len() != cfg.torus_rank {
        return Err(ReductionError::TorusMismatch { expected: cfg.torus_rank, got: g.torus.len() });
    }
    let rho = g.rho.map(|r| Quaternion::new(r[0], r[1], 0.0, 0.0));
    let mut qs: Vec<Quaternion> = p
        .to_quaternions()
        .into_iter()
        .map(|u| {
            let v = g.lambda * u;
            match rho {
                Some(r) => v * r,
                None => v,
            }
        })
        .collect();
    let angles = cfg.pair_angles(&g.torus);
    for (&(a, b), th) in cfg.pairs().iter().zip(angles) {
        let (c, s) = (th.cos(), th.sin());
        let (ua, ub) = (qs[a], qs[b]);
        qs[a] = ua.scale(c) + ub.scale(s);
        qs[b] = ub.scale(c) - ua.scale(s);
    }
    Ok(HPoint::from_quaternions(&qs))
}

/// `‖g·p − p‖`.
pub fn fixed_point_residual(
    cfg: &ReductionConfig,
    g: &GroupElement,
    p: &HPoint,
) -> Result<f64, ReductionError> {
    Ok(act(cfg, g, p)?.distance(p))
}
