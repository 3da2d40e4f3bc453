//! Which mixed-eigenspace sign family meets `N`.
//!
//! On the pattern `u_b = u_a·(s_α i)` the torus equations reduce to
//! `Σ_α s_α v_α |u_a|² = 0` and the sphere to `Σ_α |u_a|² = 1/2`. The system
//! depends on the signs only up to a global flip, so the first sign is fixed
//! to `+` and the remaining `2^{k−1}` systems are solved exactly.

use num_rational::Ratio;
use serde::Serialize;

use super::{Result, StrataError};
use crate::weights::solve_rational;
use crate::weights::{admissible_omega, admissible_theta, OmegaMatrix, Sign, ThetaMatrix, WeightMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivePattern {
    pub signs: Vec<Sign>,
    /// `|u_a|²` per pair, exact.
    #[serde(serialize_with = "ser_q")]
    pub solution: Vec<Ratio<i64>>,
    /// Number of sign systems (first sign `+`) that were solved.
    pub systems: usize,
    /// No `|u_a|²` exceeds the sum of the others. The `Sp(1)` moment map asks
    /// the vectors `ū_a i u_a` (lengths `|u_a|²`) to close up, so this is what
    /// decides whether the positive family actually meets `N`.
    pub balanced: bool,
}

impl PositivePattern {
    pub fn sum(&self) -> Ratio<i64> {
        self.solution.iter().sum()
    }
}

fn ser_q<S: serde::Serializer>(v: &[Ratio<i64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().serialize(s)
}

fn solve_all(columns: &[Vec<i64>]) -> Result<PositivePattern> {
    let k = columns.len();
    let r = columns[0].len();
    let mut found = Vec::new();
    let systems = 1usize << (k - 1);
    for mask in 0..systems {
        let signs: Vec<Sign> = (0..k)
            .map(|a| if a > 0 && mask & (1 << (k - 1 - a)) != 0 { Sign::Minus } else { Sign::Plus })
            .collect();
        let mut a: Vec<Vec<Ratio<i128>>> = (0..r)
            .map(|row| (0..k).map(|al| Ratio::from_integer((signs[al].value() * columns[al][row]) as i128)).collect())
            .collect();
        a.push(vec![Ratio::from_integer(1); k]);
        let mut b = vec![Ratio::from_integer(0i128); r];
        b.push(Ratio::new(1, 2));
        let Some(x) = solve_rational(&a, &b) else { continue };
        if x.iter().all(|v| *v > Ratio::from_integer(0)) {
            let solution: Vec<Ratio<i64>> = x
                .iter()
                .map(|v| {
                    let n = i64::try_from(*v.numer()).expect("bounded entries");
                    let d = i64::try_from(*v.denom()).expect("bounded entries");
                    Ratio::new(n, d)
                })
                .collect();
            let balanced = polygon_closes(&solution);
            found.push(PositivePattern { signs, solution, systems, balanced });
        }
    }
    if found.len() == 1 {
        Ok(found.pop().expect("one"))
    } else {
        Err(StrataError::PositivityInconsistent(found.len()))
    }
}

/// Vectors of the given lengths can sum to zero.
pub fn polygon_closes(lengths: &[Ratio<i64>]) -> bool {
    let total: Ratio<i64> = lengths.iter().sum();
    lengths.iter().all(|l| *l * 2 <= total)
}

pub fn v3_positive_sign_pattern(m: &ThetaMatrix) -> Result<PositivePattern> {
    let adm = admissible_theta(m)?;
    if let Some(w) = adm.witness {
        return Err(StrataError::Inadmissible(w));
    }
    solve_all(&m.columns().iter().map(|c| c.to_vec()).collect::<Vec<_>>())
}

pub fn omega_positive_sign_pattern(m: &OmegaMatrix) -> Result<PositivePattern> {
    let adm = admissible_omega(m)?;
    if let Some(w) = adm.witness {
        return Err(StrataError::Inadmissible(w));
    }
    solve_all(&m.columns().iter().map(|c| c.to_vec()).collect::<Vec<_>>())
}

/// Same search without the admissibility gate, for degenerate inputs.
pub fn positive_sign_pattern(m: &WeightMatrix) -> Result<PositivePattern> {
    solve_all(&m.columns())
}
