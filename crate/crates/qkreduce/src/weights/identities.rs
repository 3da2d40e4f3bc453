//! Box determinants as integer combinations of the four minors.

use std::sync::OnceLock;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::{boxes_theta, minors_theta, sign_label, sign_triples, Result, Sign, ThetaMatrix, WeightError};

/// Row `n` holds the coefficients of `(Δ₁₂₃, Δ₁₂₄, Δ₁₃₄, Δ₂₃₄)` for sign triple `n`.
pub type BoxCoefficients = [[i64; 4]; 8];

/// The list as printed in the source text, transcribed verbatim.
pub fn printed_box_coefficients() -> BoxCoefficients {
    [
        [1, -1, 1, 1],    // +++
        [1, 1, -1, -1],   // ++-
        [-1, -1, -1, -1], // +-+
        [-1, 1, 1, 1],    // +--
        [-1, 1, 1, -1],   // -++
        [-1, -1, -1, 1],  // -+-
        [1, 1, -1, 1],    // --+
        [1, -1, 1, -1],   // ---
    ]
}

type Q = Ratio<i128>;

/// Solves `a·x = b` exactly; `None` if singular.
pub(crate) fn solve_rational(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, &v)| {
            let mut r = r.clone();
            r.push(v);
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != Q::from_integer(0))?;
        m.swap(c, p);
        let piv = m[c][c];
        for v in m[c].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != c && m[r][c] != Q::from_integer(0) {
                let f = m[r][c];
                for j in c..=n {
                    let t = m[c][j] * f;
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.iter().map(|r| r[n]).collect())
}

fn rank_rational(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            let f = m[r][c] / m[rank][c];
            for j in c..cols {
                let t = m[rank][j] * f;
                m[r][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

fn q_minors(m: &ThetaMatrix) -> Result<Vec<Q>> {
    Ok(minors_theta(m)?.as_array().iter().map(|&v| Q::from_integer(v as i128)).collect())
}

/// Fits the coefficient table from the first four samples whose minor
/// vectors are linearly independent. Errors if no such four exist or a
/// fitted coefficient is not an integer.
pub fn fit_box_coefficients(samples: &[ThetaMatrix]) -> Result<BoxCoefficients> {
    let mut basis: Vec<&ThetaMatrix> = Vec::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for s in samples {
        let r = q_minors(s)?;
        let mut trial = rows.clone();
        trial.push(r.clone());
        if rank_rational(&trial) == trial.len() {
            rows = trial;
            basis.push(s);
        }
        if basis.len() == 4 {
            break;
        }
    }
    if basis.len() < 4 {
        return Err(WeightError::Precondition("fewer than four independent samples".into()));
    }
    let boxes: Vec<[i64; 8]> = basis
        .iter()
        .map(|m| boxes_theta(m).map(|b| b.values))
        .collect::<Result<_>>()?;
    let mut out = [[0i64; 4]; 8];
    for (n, row) in out.iter_mut().enumerate() {
        let rhs: Vec<Q> = boxes.iter().map(|b| Q::from_integer(b[n] as i128)).collect();
        let x = solve_rational(&rows, &rhs).expect("independent rows");
        for (c, v) in row.iter_mut().zip(x) {
            if !v.is_integer() {
                return Err(WeightError::Precondition(format!("non-integer coefficient {v}")));
            }
            *c = *v.numer() as i64;
        }
    }
    Ok(out)
}

/// The shipped table: fitted on seeded random matrices, not copied from the text.
pub fn canonical_box_coefficients() -> &'static BoxCoefficients {
    static TABLE: OnceLock<BoxCoefficients> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0b0c);
        let samples: Vec<ThetaMatrix> = (0..64)
            .map(|_| {
                let mut rows = [[0i64; 4]; 3];
                for r in rows.iter_mut() {
                    for v in r.iter_mut() {
                        *v = rng.random_range(-9..=9);
                    }
                }
                ThetaMatrix::new(rows).expect("small entries")
            })
            .collect();
        fit_box_coefficients(&samples).expect("random samples span the minor space")
    })
}

pub fn apply_coefficients(c: &[i64; 4], minors: [i64; 4]) -> i64 {
    c.iter().zip(minors).map(|(a, b)| a * b).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub signs: String,
    pub value: i64,
    pub printed_coefficients: [i64; 4],
    pub printed_value: i64,
    pub printed_matches: bool,
    pub fitted_coefficients: [i64; 4],
    pub fitted_value: i64,
    /// Whether the printed coefficients agree with the fitted ones (matrix independent).
    pub printed_table_correct: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub minors: [i64; 4],
    pub rows: Vec<IdentityRow>,
    pub all_match: bool,
}

pub fn box_identities_check(m: &ThetaMatrix) -> Result<IdentityReport> {
    let minors = minors_theta(m)?.as_array();
    let boxes = boxes_theta(m)?;
    let printed = printed_box_coefficients();
    let fitted = canonical_box_coefficients();
    let rows: Vec<IdentityRow> = sign_triples()
        .iter()
        .enumerate()
        .map(|(n, s): (usize, &[Sign; 3])| {
            let printed_value = apply_coefficients(&printed[n], minors);
            IdentityRow {
                signs: sign_label(s),
                value: boxes.values[n],
                printed_coefficients: printed[n],
                printed_value,
                printed_matches: printed_value == boxes.values[n],
                fitted_coefficients: fitted[n],
                fitted_value: apply_coefficients(&fitted[n], minors),
                printed_table_correct: printed[n] == fitted[n],
            }
        })
        .collect();
    let all_match = rows.iter().all(|r| r.printed_matches && r.printed_table_correct);
    Ok(IdentityReport { minors, rows, all_match })
}
