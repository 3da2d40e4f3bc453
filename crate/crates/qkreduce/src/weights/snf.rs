//! Smith normal form over i128 and the finite groups `{x ∈ (ℝ/ℤ)^k : Bx ∈ ℤ^m}`.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use super::{Result, WeightError};

/// `U·B·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    /// Diagonal of `D`, length `min(m, k)`, non-negative.
    pub d: Vec<i128>,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(WeightError::Overflow("smith normal form"))
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// Replaces rows `(r, s)` of `a` by `(x·r + y·s, c·r + d·s)`.
fn row_mix(a: &mut [Vec<i128>], r: usize, s: usize, [x, y, c, d]: [i128; 4]) -> Result<()> {
    for j in 0..a[r].len() {
        let (ar, as_) = (a[r][j], a[s][j]);
        a[r][j] = ck(ck(x.checked_mul(ar))?.checked_add(ck(y.checked_mul(as_))?))?;
        a[s][j] = ck(ck(c.checked_mul(ar))?.checked_add(ck(d.checked_mul(as_))?))?;
    }
    Ok(())
}

fn col_mix(a: &mut [Vec<i128>], r: usize, s: usize, [x, y, c, d]: [i128; 4]) -> Result<()> {
    for row in a.iter_mut() {
        let (ar, as_) = (row[r], row[s]);
        row[r] = ck(ck(x.checked_mul(ar))?.checked_add(ck(y.checked_mul(as_))?))?;
        row[s] = ck(ck(c.checked_mul(ar))?.checked_add(ck(d.checked_mul(as_))?))?;
    }
    Ok(())
}

/// Unimodular `[[x, y], [−b/g, a/g]]` sending `(a, b)` to `(g, 0)`.
/// Plain elimination when `a | b`, so an exact pivot is never disturbed.
fn bezout(a: i128, b: i128) -> [i128; 4] {
    if b % a == 0 {
        return [1, 0, -b / a, 1];
    }
    let e = a.extended_gcd(&b);
    let g = e.gcd;
    [e.x, e.y, -b / g, a / g]
}

pub fn smith_normal_form(b: &[Vec<i64>]) -> Result<SmithForm> {
    let m = b.len();
    let k = b.first().map_or(0, |r| r.len());
    if b.iter().any(|r| r.len() != k) {
        return Err(WeightError::Shape("ragged congruence matrix".into()));
    }
    let mut a: Vec<Vec<i128>> = b.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let mut u = identity(m);
    // V is tracked transposed so column operations become row operations.
    let mut vt = identity(k);

    for t in 0..m.min(k) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..k {
                    if a[i][j] != 0 && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            vt.swap(t, pj);

            for i in t + 1..m {
                if a[i][t] != 0 {
                    let c = bezout(a[t][t], a[i][t]);
                    row_mix(&mut a, t, i, c)?;
                    row_mix(&mut u, t, i, c)?;
                }
            }
            for j in t + 1..k {
                if a[t][j] != 0 {
                    let c = bezout(a[t][t], a[t][j]);
                    col_mix(&mut a, t, j, c)?;
                    row_mix(&mut vt, t, j, c)?;
                }
            }
            if (t + 1..m).any(|i| a[i][t] != 0) {
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..k).any(|j| a[i][j] % p != 0));
            if let Some(i) = bad {
                row_mix(&mut a, t, i, [1, 1, 0, 1])?;
                row_mix(&mut u, t, i, [1, 1, 0, 1])?;
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            for v in a[t].iter_mut() {
                *v = -*v;
            }
            for v in u[t].iter_mut() {
                *v = -*v;
            }
        }
    }
    let d = (0..m.min(k)).map(|i| a[i][i]).collect();
    let v = (0..k).map(|i| (0..k).map(|j| vt[j][i]).collect()).collect();
    Ok(SmithForm { u, v, d })
}

/// Finite solution group of a congruence system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyGroup {
    pub order: u64,
    /// Nontrivial invariant factors (each > 1), one per generator.
    pub invariants: Vec<u64>,
    /// Points of `(ℚ/ℤ)^k` in `[0, 1)`; generator `i` has order `invariants[i]`.
    #[serde(serialize_with = "ser_ratios")]
    pub generators: Vec<Vec<Ratio<i64>>>,
}

fn ser_ratios<S: serde::Serializer>(
    g: &[Vec<Ratio<i64>>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = g
        .iter()
        .map(|v| v.iter().map(|r| r.to_string()).collect())
        .collect();
    strs.serialize(s)
}

fn frac(r: Ratio<i128>) -> Ratio<i128> {
    r - r.floor()
}

impl IsotropyGroup {
    pub fn trivial() -> Self {
        IsotropyGroup { order: 1, invariants: vec![], generators: vec![] }
    }

    /// All elements, as sums of generator multiples reduced mod 1.
    /// Panics if the order exceeds `limit`.
    pub fn elements(&self, k: usize, limit: u64) -> Vec<Vec<Ratio<i64>>> {
        assert!(self.order <= limit, "group of order {} too large to enumerate", self.order);
        let mut out = vec![vec![Ratio::from_integer(0i64); k]];
        for (g, &n) in self.generators.iter().zip(&self.invariants) {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for e in &out {
                for c in 0..n as i64 {
                    next.push(
                        e.iter()
                            .zip(g)
                            .map(|(a, b)| {
                                let s = *a + *b * c;
                                s - s.floor()
                            })
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Solution group of `B·x ∈ ℤ^m` for an `m × k` integer matrix of rank `k`.
pub fn congruence_group(b: &[Vec<i64>]) -> Result<IsotropyGroup> {
    let k = b.first().map_or(0, |r| r.len());
    let snf = smith_normal_form(b)?;
    if snf.d.len() < k || snf.d.contains(&0) {
        return Err(WeightError::ContinuousStabilizer);
    }
    let mut order: u64 = 1;
    let mut invariants = Vec::new();
    let mut generators = Vec::new();
    for (i, &d) in snf.d.iter().enumerate() {
        let du = u64::try_from(d).map_err(|_| WeightError::Overflow("group order"))?;
        order = order.checked_mul(du).ok_or(WeightError::Overflow("group order"))?;
        if d > 1 {
            let g: Vec<Ratio<i64>> = (0..k)
                .map(|r| {
                    let q = frac(Ratio::new(snf.v[r][i], d));
                    let n = i64::try_from(*q.numer()).map_err(|_| WeightError::Overflow("generator"))?;
                    let dd = i64::try_from(*q.denom()).map_err(|_| WeightError::Overflow("generator"))?;
                    Ok(Ratio::new(n, dd))
                })
                .collect::<Result<_>>()?;
            invariants.push(du);
            generators.push(g);
        }
    }
    Ok(IsotropyGroup { order, invariants, generators })
}

/// Square case; `det B = 0` signals a continuous stabilizer.
pub fn isotropy_group(b: &[Vec<i64>]) -> Result<IsotropyGroup> {
    if b.iter().any(|r| r.len() != b.len()) {
        return Err(WeightError::Shape("isotropy_group needs a square matrix".into()));
    }
    congruence_group(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        (0..a.len())
            .map(|i| {
                (0..b[0].len())
                    .map(|j| (0..b.len()).map(|t| a[i][t] * b[t][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn snf_reconstructs() {
        let b = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith_normal_form(&b).unwrap();
        assert_eq!(s.d, vec![2, 6, 12]);
        let bb: Vec<Vec<i128>> = b.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let d = matmul(&matmul(&s.u, &bb), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i][j], if i == j { s.d[i] } else { 0 });
            }
        }
    }

    #[test]
    fn rectangular_system() {
        // 2x ≡ 0, 3x ≡ 0 → x ≡ 0
        let g = congruence_group(&[vec![2], vec![3]]).unwrap();
        assert_eq!(g.order, 1);
        let g = congruence_group(&[vec![4], vec![6]]).unwrap();
        assert_eq!(g.order, 2);
    }
}
