//! Exhaustive search for free actions and the dimension count for admissible Grassmannians.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::identities::apply_coefficients;
use super::{canonical_box_coefficients, sign_label, sign_triples, ThetaMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub bound: i64,
    pub scanned: u64,
    /// Matrices with all eight |box| = 1, admissible or not.
    pub all_unit_boxes: u64,
    /// Admissible matrices with all eight |box| = 1 (a free action).
    #[serde(serialize_with = "ser_mats")]
    pub counterexamples: Vec<ThetaMatrix>,
}

fn ser_mats<S: serde::Serializer>(m: &[ThetaMatrix], s: S) -> Result<S::Ok, S::Error> {
    m.iter().map(|m| m.rows()).collect::<Vec<_>>().serialize(s)
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn comb(a: [i64; 3], s: i64, b: [i64; 3]) -> [i64; 3] {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

/// Scans every Θ with entries in `[-bound, bound]`.
///
/// A box is the triple product `((v₁±v₂) × (v₁±v₃)) · (v₁±v₄)`, so a
/// column triple whose four cross products are not primitive cannot reach
/// |box| = 1 for any fourth column and is skipped wholesale.
pub fn free_impossibility_search(bound: i64) -> SearchReport {
    assert!((0..=50).contains(&bound), "bound out of range");
    let range: Vec<[i64; 3]> = (-bound..=bound)
        .flat_map(|a| (-bound..=bound).flat_map(move |b| (-bound..=bound).map(move |c| [a, b, c])))
        .collect();
    let nv = range.len() as u64;
    let signs = sign_triples();

    let per_v1: Vec<(u64, Vec<ThetaMatrix>)> = range
        .par_iter()
        .map(|&v1| {
            let mut unit = 0u64;
            let mut found = Vec::new();
            for &v2 in &range {
                for &v3 in &range {
                    // cross products indexed by (s₂, s₃)
                    let mut cr = [[0i64; 3]; 4];
                    let mut primitive = true;
                    for (n, c) in cr.iter_mut().enumerate() {
                        let s2 = if n & 2 == 0 { 1 } else { -1 };
                        let s3 = if n & 1 == 0 { 1 } else { -1 };
                        *c = cross(comb(v1, s2, v2), comb(v1, s3, v3));
                        let g = c.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
                        if g != 1 {
                            primitive = false;
                            break;
                        }
                    }
                    if !primitive {
                        continue;
                    }
                    for &v4 in &range {
                        let r4 = [comb(v1, 1, v4), comb(v1, -1, v4)];
                        let ok = signs.iter().all(|s| {
                            let n = 2 * usize::from(s[0].value() < 0) + usize::from(s[1].value() < 0);
                            let r = r4[usize::from(s[2].value() < 0)];
                            dot(cr[n], r).abs() == 1
                        });
                        if !ok {
                            continue;
                        }
                        unit += 1;
                        let cols = [v1, v2, v3, v4];
                        let minors = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
                            .map(|t| dot(cross(cols[t[0]], cols[t[1]]), cols[t[2]]));
                        if minors.iter().all(|&d| d != 0) {
                            let mut rows = [[0i64; 4]; 3];
                            for (a, c) in cols.iter().enumerate() {
                                for r in 0..3 {
                                    rows[r][a] = c[r];
                                }
                            }
                            found.push(ThetaMatrix::new(rows).expect("small entries"));
                        }
                    }
                }
            }
            (unit, found)
        })
        .collect();

    let mut all_unit_boxes = 0;
    let mut counterexamples = Vec::new();
    for (u, f) in per_v1 {
        all_unit_boxes += u;
        counterexamples.extend(f);
    }
    SearchReport { bound, scanned: nv.pow(4), all_unit_boxes, counterexamples }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualBox {
    pub signs: String,
    /// Value from the fitted identities.
    pub value: String,
    /// Value of the linear form printed for this box in terms of X, Y, Z, W.
    pub printed_form_value: i64,
    pub printed_form_correct: bool,
    pub is_unit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicCheck {
    pub xyzw: [i64; 4],
    /// `(Δ₁₂₃, Δ₁₂₄, Δ₁₃₄, Δ₂₃₄)` solving the four-box system.
    pub deltas: [String; 4],
    pub deltas_integral: bool,
    pub residual_boxes: Vec<ResidualBox>,
    /// True when some residual box is not ±1, i.e. the candidate is excluded.
    pub violates: bool,
}

/// Boxes `(+++), (+-+), (-+-), (+--)` named X, Y, Z, W, solved for the minors;
/// the other four boxes must then be ±1 for a free action.
pub fn symbolic_free_check(xyzw: [i64; 4]) -> SymbolicCheck {
    let [x, y, z, w] = xyzw.map(|v| Ratio::from_integer(v));
    let two = Ratio::from_integer(2i64);
    let deltas = [-(y + w) / two, -(x + y) / two, (x + y - z + w) / two, (z - y) / two];
    let coeff = canonical_box_coefficients();
    let eval = |c: &[i64; 4]| -> Ratio<i64> {
        c.iter().zip(&deltas).map(|(a, d)| *d * *a).sum()
    };
    // printed linear forms in (X, Y, Z, W) for the residual boxes
    let printed: [(&str, [i64; 4]); 4] = [
        ("++-", [-1, -1, 0, -1]),
        ("--+", [-1, -2, 1, -1]),
        ("-++", [0, 1, 1, 1]),
        ("---", [1, 1, -1, 0]),
    ];
    let triples = sign_triples();
    let residual_boxes: Vec<ResidualBox> = printed
        .iter()
        .map(|(label, form)| {
            let n = triples.iter().position(|t| sign_label(t) == *label).expect("label");
            let value = eval(&coeff[n]);
            let pv = apply_coefficients(form, xyzw);
            ResidualBox {
                signs: label.to_string(),
                value: value.to_string(),
                printed_form_value: pv,
                printed_form_correct: value == Ratio::from_integer(pv),
                is_unit: value == Ratio::from_integer(1) || value == Ratio::from_integer(-1),
            }
        })
        .collect();
    SymbolicCheck {
        xyzw,
        deltas: deltas.map(|d| d.to_string()),
        deltas_integral: deltas.iter().all(|d| d.is_integer()),
        violates: residual_boxes.iter().any(|r| !r.is_unit),
        residual_boxes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grassmannian {
    /// `n` in `Gr₄(ℝ^{n+1})`.
    pub n: usize,
    pub label: String,
}

/// `n ≥ 5` with `n − 4 < ⌊(n+1)/2⌋`: the torus must cut the quotient down to dimension 4.
pub fn feasible_grassmannians() -> Vec<Grassmannian> {
    (5..=64)
        .filter(|&n| n - 4 < (n + 1) / 2)
        .map(|n| Grassmannian { n, label: format!("Gr4(R^{})", n + 1) })
        .collect()
}
