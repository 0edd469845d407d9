//! Real quaternions and their symplectic (complex-pair) form.
//!
//! A quaternion `q = w + x i + y j + z k` is written as `q = z1 + j z2` with
//! `z1 = w + x i` and `z2 = y - z i`. Under this convention the 2x2 complex
//! block
//!
//! ```text
//! [ z1   -conj(z2) ]
//! [ z2    conj(z1) ]
//! ```
//!
//! is an algebra homomorphism, which is the same layout the spectral oracle
//! uses to embed `i H + j alpha W` into a complex Hermitian matrix.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// `w + x i + y j + z k` in double precision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Embeds a complex number `a + b i` in the `{1, i}` plane.
    pub fn from_complex(c: Complex64) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    pub fn conjugate(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn to_symplectic(self) -> SymplecticPair {
        SymplecticPair {
            z1: Complex64::new(self.w, self.x),
            z2: Complex64::new(self.y, -self.z),
        }
    }

    pub fn from_symplectic(pair: SymplecticPair) -> Self {
        Quaternion::new(pair.z1.re, pair.z1.im, pair.z2.re, -pair.z2.im)
    }

    /// The 2x2 complex image of `self` under [`embed_block`].
    pub fn to_block(self) -> Block2 {
        let p = self.to_symplectic();
        embed_block(p.z1, p.z2)
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        (self.w - other.w)
            .abs()
            .max((self.x - other.x).abs())
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// Hamilton product.
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

pub fn conjugate(q: Quaternion) -> Quaternion {
    q.conjugate()
}

pub fn to_symplectic(q: Quaternion) -> SymplecticPair {
    q.to_symplectic()
}

pub fn from_symplectic(p: SymplecticPair) -> Quaternion {
    Quaternion::from_symplectic(p)
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

/// `q = z1 + j z2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymplecticPair {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl SymplecticPair {
    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        SymplecticPair { z1, z2 }
    }
}

/// Row-major 2x2 complex matrix.
pub type Block2 = [[Complex64; 2]; 2];

/// `[[z1, -conj(z2)], [z2, conj(z1)]]`.
pub fn embed_block(z1: Complex64, z2: Complex64) -> Block2 {
    [[z1, -z2.conj()], [z2, z1.conj()]]
}

pub fn block_mul(a: &Block2, b: &Block2) -> Block2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// Inverse of [`embed_block`] on its image; reads `z1` and `z2` from the
/// first column.
pub fn unembed_block(block: &Block2) -> SymplecticPair {
    SymplecticPair::new(block[0][0], block[1][0])
}
