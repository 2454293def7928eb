//! Scalar rings for the matrix factors: ℝ, ℂ, ℍ and 𝕆.
//!
//! Quaternions use the Hamilton table `ij = k, jk = i, ki = j`. Octonions are
//! built from pairs of quaternions by Cayley–Dickson doubling with the sign
//! convention
//!
//! ```text
//! (a, b)(c, d) = (ac − d̄b, da + bc̄)
//! ```
//!
//! so `e0..e3` are `1, i, j, k` of the first half and `e4..e7` are `1, i, j, k`
//! times the new unit `e4 = (0, 1)`.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Operations every matrix-entry type must provide.
///
/// The real coefficients are exposed so elements can be flattened into
/// coordinate vectors over ℝ.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Real dimension of the ring.
    const DIM: usize;

    fn zero() -> Self;
    fn from_real(r: f64) -> Self;
    fn re(&self) -> f64;
    fn conj(&self) -> Self;
    fn scale(&self, s: f64) -> Self;
    fn norm_sqr(&self) -> f64;
    /// Real coefficient `i`, `0 <= i < DIM`.
    fn coeff(&self, i: usize) -> f64;
    /// Inverse of [`Scalar::coeff`]; `c.len() == DIM`.
    fn from_coeffs(c: &[f64]) -> Self;

    fn one() -> Self {
        Self::from_real(1.0)
    }

    fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

impl Scalar for f64 {
    const DIM: usize = 1;

    fn zero() -> Self {
        0.0
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn re(&self) -> f64 {
        *self
    }
    fn conj(&self) -> Self {
        *self
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn norm_sqr(&self) -> f64 {
        self * self
    }
    fn coeff(&self, _i: usize) -> f64 {
        *self
    }
    fn from_coeffs(c: &[f64]) -> Self {
        c[0]
    }
}

impl Scalar for Complex64 {
    const DIM: usize = 2;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn norm_sqr(&self) -> f64 {
        Complex64::norm_sqr(self)
    }
    fn coeff(&self, i: usize) -> f64 {
        if i == 0 {
            self.re
        } else {
            self.im
        }
    }
    fn from_coeffs(c: &[f64]) -> Self {
        Complex64::new(c[0], c[1])
    }
}

/// Quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn i() -> Self {
        Self::new(0.0, 1.0, 0.0, 0.0)
    }

    pub const fn j() -> Self {
        Self::new(0.0, 0.0, 1.0, 0.0)
    }

    pub const fn k() -> Self {
        Self::new(0.0, 0.0, 0.0, 1.0)
    }

    pub fn real_part(&self) -> f64 {
        self.w
    }

    /// Split `q = a + b j` with complex `a = w + x i`, `b = y + z i`.
    pub fn to_complex_pair(&self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    pub fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        Self::new(a.re, a.im, b.re, b.im)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    // Hamilton product
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Scalar for Quaternion {
    const DIM: usize = 4;

    fn zero() -> Self {
        Self::default()
    }
    fn from_real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }
    fn re(&self) -> f64 {
        self.w
    }
    fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }
    fn scale(&self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
    fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }
    fn coeff(&self, i: usize) -> f64 {
        [self.w, self.x, self.y, self.z][i]
    }
    fn from_coeffs(c: &[f64]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

/// Octonion with coefficients over `e0 = 1, e1, …, e7`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Octonion {
    pub c: [f64; 8],
}

impl Octonion {
    pub const fn new(c: [f64; 8]) -> Self {
        Self { c }
    }

    /// Basis unit `e_i`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Self { c }
    }

    pub fn real_part(&self) -> f64 {
        self.c[0]
    }

    pub fn from_halves(a: Quaternion, b: Quaternion) -> Self {
        Self::new([a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z])
    }

    pub fn halves(&self) -> (Quaternion, Quaternion) {
        let c = &self.c;
        (
            Quaternion::new(c[0], c[1], c[2], c[3]),
            Quaternion::new(c[4], c[5], c[6], c[7]),
        )
    }
}

impl Add for Octonion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(std::array::from_fn(|i| self.c[i] + o.c[i]))
    }
}

impl Sub for Octonion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(std::array::from_fn(|i| self.c[i] - o.c[i]))
    }
}

impl Neg for Octonion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.c.map(|v| -v))
    }
}

impl Mul for Octonion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = self.halves();
        let (c, d) = o.halves();
        Self::from_halves(a * c - d.conj() * b, d * a + b * c.conj())
    }
}

impl Scalar for Octonion {
    const DIM: usize = 8;

    fn zero() -> Self {
        Self::default()
    }
    fn from_real(r: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = r;
        Self { c }
    }
    fn re(&self) -> f64 {
        self.c[0]
    }
    fn conj(&self) -> Self {
        let mut c = self.c.map(|v| -v);
        c[0] = self.c[0];
        Self { c }
    }
    fn scale(&self, s: f64) -> Self {
        Self::new(self.c.map(|v| v * s))
    }
    fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum()
    }
    fn coeff(&self, i: usize) -> f64 {
        self.c[i]
    }
    fn from_coeffs(c: &[f64]) -> Self {
        Self::new(std::array::from_fn(|i| c[i]))
    }
}
