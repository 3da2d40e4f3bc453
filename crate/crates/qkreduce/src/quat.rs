//! Quaternions and the complex-split form `u = z + j·w` of points in ℍⁿ.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `re + im_i·i + im_j·j + im_k·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub re: f64,
    pub im_i: f64,
    pub im_j: f64,
    pub im_k: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(re: f64, im_i: f64, im_j: f64, im_k: f64) -> Self {
        Quaternion { re, im_i, im_j, im_k }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.re, self.im_i, self.im_j, self.im_k]
    }

    /// The pure quaternion with imaginary part `v`.
    pub fn imaginary(v: [f64; 3]) -> Self {
        Quaternion::new(0.0, v[0], v[1], v[2])
    }

    pub fn im(self) -> [f64; 3] {
        [self.im_i, self.im_j, self.im_k]
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.re, -self.im_i, -self.im_j, -self.im_k)
    }

    pub fn norm_sq(self) -> f64 {
        self.re * self.re + self.im_i * self.im_i + self.im_j * self.im_j + self.im_k * self.im_k
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.re * s, self.im_i * s, self.im_j * s, self.im_k * s)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            None
        } else {
            Some(self.conj().scale(1.0 / n))
        }
    }

    /// Split as `z + j·w` with `z = re + i·im_i`, `w = im_j − i·im_k`.
    pub fn to_split(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.re, self.im_i),
            Complex64::new(self.im_j, -self.im_k),
        )
    }

    pub fn from_split(z: Complex64, w: Complex64) -> Self {
        Quaternion::new(z.re, z.im, w.re, -w.im)
    }

    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    /// `exp(t·n)` for a unit imaginary axis `n`.
    pub fn exp_axis(axis: Quaternion, t: f64) -> Self {
        Quaternion::ONE.scale(t.cos()) + axis.scale(t.sin())
    }
}

/// Hamilton product.
pub fn quat_mul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.re * b.re - a.im_i * b.im_i - a.im_j * b.im_j - a.im_k * b.im_k,
        a.re * b.im_i + a.im_i * b.re + a.im_j * b.im_k - a.im_k * b.im_j,
        a.re * b.im_j - a.im_i * b.im_k + a.im_j * b.re + a.im_k * b.im_i,
        a.re * b.im_k + a.im_i * b.im_j - a.im_j * b.im_i + a.im_k * b.re,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        quat_mul(self, rhs)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.re + r.re, self.im_i + r.im_i, self.im_j + r.im_j, self.im_k + r.im_k)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.re - r.re, self.im_i - r.im_i, self.im_j - r.im_j, self.im_k - r.im_k)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

/// Point of ℍⁿ stored in split coordinates, `u_α = z_α + j·w_α`.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint {
    pub z: Vec<Complex64>,
    pub w: Vec<Complex64>,
}

impl HPoint {
    pub fn zeros(n: usize) -> Self {
        HPoint {
            z: vec![Complex64::new(0.0, 0.0); n],
            w: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn new(z: Vec<Complex64>, w: Vec<Complex64>) -> Self {
        assert_eq!(z.len(), w.len(), "z and w must have equal length");
        HPoint { z, w }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn coord(&self, a: usize) -> Quaternion {
        Quaternion::from_split(self.z[a], self.w[a])
    }

    pub fn set_coord(&mut self, a: usize, q: Quaternion) {
        let (z, w) = q.to_split();
        self.z[a] = z;
        self.w[a] = w;
    }

    pub fn to_quaternions(&self) -> Vec<Quaternion> {
        (0..self.n()).map(|a| self.coord(a)).collect()
    }

    pub fn from_quaternions(qs: &[Quaternion]) -> Self {
        let (z, w) = qs.iter().map(|q| q.to_split()).unzip();
        HPoint { z, w }
    }

    pub fn norm_sq(&self) -> f64 {
        self.z.iter().chain(self.w.iter()).map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Flat real layout, four reals per coordinate: `[re z, im z, re w, im w]`.
    pub fn to_real(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(4 * self.n());
        for a in 0..self.n() {
            out.extend_from_slice(&[self.z[a].re, self.z[a].im, self.w[a].re, self.w[a].im]);
        }
        out
    }

    pub fn from_real(x: &[f64]) -> Self {
        assert!(x.len() % 4 == 0, "real layout needs 4 reals per coordinate");
        let n = x.len() / 4;
        let mut p = HPoint::zeros(n);
        for a in 0..n {
            p.z[a] = Complex64::new(x[4 * a], x[4 * a + 1]);
            p.w[a] = Complex64::new(x[4 * a + 2], x[4 * a + 3]);
        }
        p
    }

    pub fn scaled(&self, s: f64) -> Self {
        HPoint {
            z: self.z.iter().map(|c| c * s).collect(),
            w: self.w.iter().map(|c| c * s).collect(),
        }
    }

    /// Left multiplication of every coordinate by `q`.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        let qs: Vec<Quaternion> = self.to_quaternions().into_iter().map(|u| q * u).collect();
        HPoint::from_quaternions(&qs)
    }

    /// Right multiplication of every coordinate by `q`.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        let qs: Vec<Quaternion> = self.to_quaternions().into_iter().map(|u| u * q).collect();
        HPoint::from_quaternions(&qs)
    }

    pub fn distance(&self, other: &HPoint) -> f64 {
        self.to_real()
            .iter()
            .zip(other.to_real())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Identity up to float round-off (only sign flips are involved).
pub fn split_roundtrip(p: &HPoint) -> HPoint {
    HPoint::from_quaternions(&p.to_quaternions())
}

impl Serialize for HPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let quads: Vec<[f64; 4]> = (0..self.n())
            .map(|a| [self.z[a].re, self.z[a].im, self.w[a].re, self.w[a].im])
            .collect();
        quads.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let quads: Vec<[f64; 4]> = Vec::deserialize(d)?;
        Ok(HPoint::from_real(&quads.concat()))
    }
}

/// Angles `(θ, φ, δ)` of a unit quaternion `ε + j·σ` with
/// `ε = cos θ + i sin θ cos φ` and `σ = sin θ sin φ e^{iδ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sp1Element {
    pub theta: f64,
    pub phi: f64,
    pub delta: f64,
}

impl Sp1Element {
    pub fn new(theta: f64, phi: f64, delta: f64) -> Self {
        Sp1Element { theta, phi, delta }
    }

    pub fn epsilon(&self) -> Complex64 {
        Complex64::new(self.theta.cos(), self.theta.sin() * self.phi.cos())
    }

    pub fn sigma(&self) -> Complex64 {
        Complex64::from_polar(self.theta.sin() * self.phi.sin(), self.delta)
    }

    /// Rotation axis `n̂ = i cos φ + j sin φ e^{iδ}`, so that the element is `exp(θ n̂)`.
    pub fn axis(&self) -> Quaternion {
        axis_from_angles(self.phi, self.delta)
    }
}

pub fn axis_from_angles(phi: f64, delta: f64) -> Quaternion {
    Quaternion::from_split(
        Complex64::new(0.0, phi.cos()),
        Complex64::from_polar(phi.sin(), delta),
    )
}

pub fn sp1_from_angles(e: Sp1Element) -> Quaternion {
    Quaternion::from_split(e.epsilon(), e.sigma())
}
