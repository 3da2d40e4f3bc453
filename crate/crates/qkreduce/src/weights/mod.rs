//! Exact integer work on weight matrices: minors, box determinants,
//! admissibility, and finite congruence groups.

mod identities;
mod search;
mod snf;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use identities::{
    box_identities_check, canonical_box_coefficients, fit_box_coefficients, printed_box_coefficients,
    BoxCoefficients, IdentityReport, IdentityRow,
};
pub use search::{
    feasible_grassmannians, free_impossibility_search, symbolic_free_check, Grassmannian,
    SearchReport, SymbolicCheck,
};
pub(crate) use identities::solve_rational;
pub use snf::{congruence_group, isotropy_group, smith_normal_form, IsotropyGroup, SmithForm};

/// Weight entries outside this range are rejected.
pub const MAX_ENTRY: i64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("weight entry {0} outside [-{MAX_ENTRY}, {MAX_ENTRY}]")]
    EntryOutOfRange(i64),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("bad matrix shape: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular congruence matrix: continuous stabilizer")]
    ContinuousStabilizer,
    #[error("inadmissible weights: {0} = 0")]
    Inadmissible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, WeightError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("bad sign {other:?}"))),
        }
    }
}

/// The eight sign triples `(s₂, s₃, s₄)` in canonical order `+++, ++-, +-+, …`.
pub fn sign_triples() -> [[Sign; 3]; 8] {
    let mut out = [[Sign::Plus; 3]; 8];
    for (n, t) in out.iter_mut().enumerate() {
        for (b, s) in t.iter_mut().enumerate() {
            if n >> (2 - b) & 1 == 1 {
                *s = Sign::Minus;
            }
        }
    }
    out
}

pub fn sign_pairs() -> [[Sign; 2]; 4] {
    [
        [Sign::Plus, Sign::Plus],
        [Sign::Plus, Sign::Minus],
        [Sign::Minus, Sign::Plus],
        [Sign::Minus, Sign::Minus],
    ]
}

pub fn sign_label(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.symbol()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Theta,
    Omega,
}

impl Family {
    /// Number of quaternionic coordinates.
    pub fn ambient_n(self) -> usize {
        match self {
            Family::Theta => 8,
            Family::Omega => 7,
        }
    }

    pub fn torus_rank(self) -> usize {
        match self {
            Family::Theta => 3,
            Family::Omega => 2,
        }
    }

    pub fn pairs(self) -> usize {
        self.torus_rank() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Theta => "theta",
            Family::Omega => "omega",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_entry(v: i64) -> Result<i64> {
    if v.abs() > MAX_ENTRY {
        Err(WeightError::EntryOutOfRange(v))
    } else {
        Ok(v)
    }
}

/// Θ: rows `p, q, l`, one column per quaternionic pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThetaMatrix {
    rows: [[i64; 4]; 3],
}

impl ThetaMatrix {
    pub fn new(rows: [[i64; 4]; 3]) -> Result<Self> {
        for r in &rows {
            for &v in r {
                check_entry(v)?;
            }
        }
        Ok(ThetaMatrix { rows })
    }

    pub fn rows(&self) -> [[i64; 4]; 3] {
        self.rows
    }

    /// Column `α` (0-based) as `(p_α, q_α, l_α)`.
    pub fn column(&self, a: usize) -> [i64; 3] {
        [self.rows[0][a], self.rows[1][a], self.rows[2][a]]
    }

    pub fn columns(&self) -> [[i64; 3]; 4] {
        [self.column(0), self.column(1), self.column(2), self.column(3)]
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        let mut rows = self.rows;
        for r in rows.iter_mut() {
            for v in r.iter_mut() {
                *v = v.checked_mul(k).ok_or(WeightError::Overflow("scaling"))?;
            }
        }
        ThetaMatrix::new(rows)
    }
}

/// Ω: rows `p, q`, one column per pair `(u_{2α}, u_{2α+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OmegaMatrix {
    rows: [[i64; 3]; 2],
}

impl OmegaMatrix {
    pub fn new(rows: [[i64; 3]; 2]) -> Result<Self> {
        for r in &rows {
            for &v in r {
                check_entry(v)?;
            }
        }
        Ok(OmegaMatrix { rows })
    }

    pub fn rows(&self) -> [[i64; 3]; 2] {
        self.rows
    }

    pub fn column(&self, a: usize) -> [i64; 2] {
        [self.rows[0][a], self.rows[1][a]]
    }

    pub fn columns(&self) -> [[i64; 2]; 3] {
        [self.column(0), self.column(1), self.column(2)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightMatrix {
    Theta(ThetaMatrix),
    Omega(OmegaMatrix),
}

impl WeightMatrix {
    pub fn family(&self) -> Family {
        match self {
            WeightMatrix::Theta(_) => Family::Theta,
            WeightMatrix::Omega(_) => Family::Omega,
        }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        match self {
            WeightMatrix::Theta(m) => m.rows().iter().map(|r| r.to_vec()).collect(),
            WeightMatrix::Omega(m) => m.rows().iter().map(|r| r.to_vec()).collect(),
        }
    }

    /// Weight columns, one per pair.
    pub fn columns(&self) -> Vec<Vec<i64>> {
        match self {
            WeightMatrix::Theta(m) => m.columns().iter().map(|c| c.to_vec()).collect(),
            WeightMatrix::Omega(m) => m.columns().iter().map(|c| c.to_vec()).collect(),
        }
    }

    /// Builds from rows; the shape selects the family unless `family` forces one.
    pub fn from_rows(rows: &[Vec<i64>], family: Option<Family>) -> Result<Self> {
        let shape = (rows.len(), rows.first().map_or(0, |r| r.len()));
        if rows.iter().any(|r| r.len() != shape.1) {
            return Err(WeightError::Shape("ragged rows".into()));
        }
        let detected = match shape {
            (3, 4) => Family::Theta,
            (2, 3) => Family::Omega,
            (r, c) => return Err(WeightError::Shape(format!("{r}x{c}, expected 3x4 or 2x3"))),
        };
        if let Some(f) = family {
            if f != detected {
                return Err(WeightError::Shape(format!(
                    "{}x{} matrix cannot be read as {f}",
                    shape.0, shape.1
                )));
            }
        }
        Ok(match detected {
            Family::Theta => {
                let mut a = [[0i64; 4]; 3];
                for (i, r) in rows.iter().enumerate() {
                    a[i].copy_from_slice(r);
                }
                WeightMatrix::Theta(ThetaMatrix::new(a)?)
            }
            Family::Omega => {
                let mut a = [[0i64; 3]; 2];
                for (i, r) in rows.iter().enumerate() {
                    a[i].copy_from_slice(r);
                }
                WeightMatrix::Omega(OmegaMatrix::new(a)?)
            }
        })
    }

    /// Parses `p1,p2,p3,p4/q1,…/l1,…` or `{"rows": [[…],…]}`.
    pub fn parse(s: &str, family: Option<Family>) -> Result<Self> {
        let s = s.trim();
        let rows: Vec<Vec<i64>> = if s.starts_with('{') {
            #[derive(Deserialize)]
            struct Rows {
                rows: Vec<Vec<i64>>,
            }
            serde_json::from_str::<Rows>(s)
                .map_err(|e| WeightError::Parse(e.to_string()))?
                .rows
        } else {
            s.split('/')
                .map(|row| {
                    row.split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<i64>()
                                .map_err(|e| WeightError::Parse(format!("{t:?}: {e}")))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?
        };
        WeightMatrix::from_rows(&rows, family)
    }

    /// Compact literal form, inverse of [`WeightMatrix::parse`].
    pub fn literal(&self) -> String {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("/")
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl From<ThetaMatrix> for WeightMatrix {
    fn from(m: ThetaMatrix) -> Self {
        WeightMatrix::Theta(m)
    }
}

impl From<OmegaMatrix> for WeightMatrix {
    fn from(m: OmegaMatrix) -> Self {
        WeightMatrix::Omega(m)
    }
}

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(WeightError::Overflow("determinant"))
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(WeightError::Overflow("determinant"))
}

fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(WeightError::Overflow("determinant"))
}

/// Checked 2×2 determinant of rows `a`, `b`.
pub fn det2(a: [i64; 2], b: [i64; 2]) -> Result<i64> {
    sub(mul(a[0], b[1])?, mul(a[1], b[0])?)
}

/// Checked 3×3 determinant of rows `a`, `b`, `c` (cofactor expansion along `a`).
pub fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> Result<i64> {
    let m0 = det2([b[1], b[2]], [c[1], c[2]])?;
    let m1 = det2([b[0], b[2]], [c[0], c[2]])?;
    let m2 = det2([b[0], b[1]], [c[0], c[1]])?;
    add(sub(mul(a[0], m0)?, mul(a[1], m1)?)?, mul(a[2], m2)?)
}

fn comb<const N: usize>(a: [i64; N], s: Sign, b: [i64; N]) -> Result<[i64; N]> {
    let mut out = [0; N];
    for i in 0..N {
        out[i] = add(a[i], mul(s.value(), b[i])?)?;
    }
    Ok(out)
}

/// `Δ₁₂₃, Δ₁₂₄, Δ₁₃₄, Δ₂₃₄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaMinors {
    pub d123: i64,
    pub d124: i64,
    pub d134: i64,
    pub d234: i64,
}

impl ThetaMinors {
    pub const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

    pub fn as_array(&self) -> [i64; 4] {
        [self.d123, self.d124, self.d134, self.d234]
    }

    /// `Δ` of a column triple (0-based, any order; sign follows the permutation).
    pub fn get(&self, idx: [usize; 3]) -> i64 {
        let mut v = idx;
        let mut sign = 1;
        for i in 0..3 {
            for j in 0..2 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if v[0] == v[1] || v[1] == v[2] {
            return 0;
        }
        let pos = Self::TRIPLES.iter().position(|t| *t == v).expect("valid triple");
        sign * self.as_array()[pos]
    }
}

pub fn minors_theta(m: &ThetaMatrix) -> Result<ThetaMinors> {
    let c = m.columns();
    let d = |t: [usize; 3]| det3(c[t[0]], c[t[1]], c[t[2]]);
    Ok(ThetaMinors {
        d123: d([0, 1, 2])?,
        d124: d([0, 1, 3])?,
        d134: d([0, 2, 3])?,
        d234: d([1, 2, 3])?,
    })
}

/// The eight `^{1±2}□^{1±3}_{1±4}`, indexed as [`sign_triples`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaBoxes {
    pub values: [i64; 8],
}

impl ThetaBoxes {
    pub fn get(&self, s: [Sign; 3]) -> i64 {
        let n = s
            .iter()
            .fold(0usize, |acc, &x| 2 * acc + usize::from(x == Sign::Minus));
        self.values[n]
    }
}

/// Determinant with rows `v₁ + s₂v₂`, `v₁ + s₃v₃`, `v₁ + s₄v₄`.
pub fn box_theta(m: &ThetaMatrix, s: [Sign; 3]) -> Result<i64> {
    let c = m.columns();
    det3(
        comb(c[0], s[0], c[1])?,
        comb(c[0], s[1], c[2])?,
        comb(c[0], s[2], c[3])?,
    )
}

pub fn boxes_theta(m: &ThetaMatrix) -> Result<ThetaBoxes> {
    let mut values = [0; 8];
    for (n, s) in sign_triples().iter().enumerate() {
        values[n] = box_theta(m, *s)?;
    }
    Ok(ThetaBoxes { values })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// First vanishing determinant or violated condition.
    pub witness: Option<String>,
    pub determinants: Vec<NamedValue>,
}

pub fn minor_name_theta(t: [usize; 3]) -> String {
    format!("D{}{}{}", t[0] + 1, t[1] + 1, t[2] + 1)
}

pub fn box_name_theta(s: [Sign; 3]) -> String {
    format!("box[1{}2,1{}3,1{}4]", s[0], s[1], s[2])
}

pub fn admissible_theta(m: &ThetaMatrix) -> Result<Admissibility> {
    let minors = minors_theta(m)?;
    let boxes = boxes_theta(m)?;
    let mut determinants = Vec::with_capacity(12);
    for (t, v) in ThetaMinors::TRIPLES.iter().zip(minors.as_array()) {
        determinants.push(NamedValue { name: minor_name_theta(*t), value: v });
    }
    for (s, v) in sign_triples().iter().zip(boxes.values) {
        determinants.push(NamedValue { name: box_name_theta(*s), value: v });
    }
    let witness = determinants.iter().find(|d| d.value == 0).map(|d| d.name.clone());
    Ok(Admissibility { admissible: witness.is_none(), witness, determinants })
}

/// `Δ₁₂, Δ₁₃, Δ₂₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaMinors {
    pub d12: i64,
    pub d13: i64,
    pub d23: i64,
}

impl OmegaMinors {
    pub const PAIRS: [[usize; 2]; 3] = [[0, 1], [0, 2], [1, 2]];

    pub fn as_array(&self) -> [i64; 3] {
        [self.d12, self.d13, self.d23]
    }

    pub fn get(&self, a: usize, b: usize) -> i64 {
        match (a, b) {
            (0, 1) => self.d12,
            (1, 0) => -self.d12,
            (0, 2) => self.d13,
            (2, 0) => -self.d13,
            (1, 2) => self.d23,
            (2, 1) => -self.d23,
            _ => 0,
        }
    }
}

pub fn minors_omega(m: &OmegaMatrix) -> Result<OmegaMinors> {
    let c = m.columns();
    Ok(OmegaMinors {
        d12: det2(c[0], c[1])?,
        d13: det2(c[0], c[2])?,
        d23: det2(c[1], c[2])?,
    })
}

/// The four `□^{1±2}_{1±3}`, indexed as [`sign_pairs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaBoxes {
    pub values: [i64; 4],
}

impl OmegaBoxes {
    pub fn get(&self, s: [Sign; 2]) -> i64 {
        self.values[2 * usize::from(s[0] == Sign::Minus) + usize::from(s[1] == Sign::Minus)]
    }
}

pub fn box_omega(m: &OmegaMatrix, s: [Sign; 2]) -> Result<i64> {
    let c = m.columns();
    det2(comb(c[0], s[0], c[1])?, comb(c[0], s[1], c[2])?)
}

pub fn boxes_omega(m: &OmegaMatrix) -> Result<OmegaBoxes> {
    let mut values = [0; 4];
    for (n, s) in sign_pairs().iter().enumerate() {
        values[n] = box_omega(m, *s)?;
    }
    Ok(OmegaBoxes { values })
}

pub fn box_name_omega(s: [Sign; 2]) -> String {
    format!("box[1{}2,1{}3]", s[0], s[1])
}

pub fn admissible_omega(m: &OmegaMatrix) -> Result<Admissibility> {
    let d = minors_omega(m)?;
    let boxes = boxes_omega(m)?;
    let mut determinants = vec![
        NamedValue { name: "D12".into(), value: d.d12 },
        NamedValue { name: "D13".into(), value: d.d13 },
        NamedValue { name: "D23".into(), value: d.d23 },
    ];
    let sum = add(add(d.d12, d.d13)?, d.d23)?;
    determinants.push(NamedValue { name: "D12+D13+D23".into(), value: sum });
    // Δ minus the sum of the other two, for each Δ
    determinants.push(NamedValue { name: "D12-(D13+D23)".into(), value: sub(d.d12, add(d.d13, d.d23)?)? });
    determinants.push(NamedValue { name: "D13-(D12+D23)".into(), value: sub(d.d13, add(d.d12, d.d23)?)? });
    determinants.push(NamedValue { name: "D23-(D12+D13)".into(), value: sub(d.d23, add(d.d12, d.d13)?)? });
    for (s, v) in sign_pairs().iter().zip(boxes.values) {
        determinants.push(NamedValue { name: box_name_omega(*s), value: v });
    }
    let witness = determinants.iter().find(|d| d.value == 0).map(|d| d.name.clone());
    Ok(Admissibility { admissible: witness.is_none(), witness, determinants })
}

/// Freeness on `{u₁ ≠ 0}`: `gcd(Δ₁₂, Δ₁₃, Δ₂₃) = 1`.
pub fn is_free_omega(m: &OmegaMatrix) -> Result<bool> {
    let d = minors_omega(m)?;
    if d.as_array().contains(&0) {
        return Err(WeightError::Precondition("all Δ_αβ must be nonzero".into()));
    }
    let g = d
        .as_array()
        .iter()
        .fold(0i64, |g, &v| num_integer::gcd(g, v));
    Ok(g == 1)
}

pub fn admissibility(m: &WeightMatrix) -> Result<Admissibility> {
    match m {
        WeightMatrix::Theta(t) => admissible_theta(t),
        WeightMatrix::Omega(o) => admissible_omega(o),
    }
}

/// Seeded random admissible matrices with entries in `[-bound, bound]`.
pub fn sample_admissible(family: Family, seed: u64, count: usize, bound: i64) -> Vec<WeightMatrix> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (r, c) = match family {
            Family::Theta => (3, 4),
            Family::Omega => (2, 3),
        };
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.random_range(-bound..=bound)).collect())
            .collect();
        let m = WeightMatrix::from_rows(&rows, Some(family)).expect("shape is fixed");
        if admissibility(&m).map(|a| a.admissible).unwrap_or(false) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_triple_order() {
        let t = sign_triples();
        assert_eq!(sign_label(&t[0]), "+++");
        assert_eq!(sign_label(&t[1]), "++-");
        assert_eq!(sign_label(&t[7]), "---");
        let b = ThetaBoxes { values: [0, 1, 2, 3, 4, 5, 6, 7] };
        for (n, s) in t.iter().enumerate() {
            assert_eq!(b.get(*s), n as i64);
        }
    }

    #[test]
    fn minor_permutation_sign() {
        let m = ThetaMinors { d123: 5, d124: 7, d134: 11, d234: 13 };
        assert_eq!(m.get([1, 0, 2]), -5);
        assert_eq!(m.get([3, 1, 0]), -7);
        assert_eq!(m.get([2, 3, 1]), 13);
        assert_eq!(m.get([1, 1, 2]), 0);
    }
}
