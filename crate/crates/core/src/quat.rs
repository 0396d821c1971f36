//! Quaternion scalars and right-eigenvalue orbit classification.
//!
//! Components are stored as `(w, x, y, z)` for `w + x i + y j + z k`, with the
//! Hamilton convention `i² = j² = k² = ijk = -1` (so `ij = k`).

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Absolute tolerance used for scalar comparisons on unit-scale values.
pub const DEFAULT_SCALAR_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
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
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds the complex number `re + im·i`.
    pub const fn complex(re: f64, im: f64) -> Self {
        Self::new(re, im, 0.0, 0.0)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        // hypot-style scaling is unnecessary at the magnitudes this crate handles
        self.norm_sqr().sqrt()
    }

    /// Modulus of the vector part `(x, y, z)`.
    pub fn vector_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() * (1.0 / n2))
    }

    /// Representative of the similarity orbit `{w⁻¹ q w}` in the closed upper
    /// half of the complex plane.
    pub fn standardize(self) -> StandardEigenvalue {
        StandardEigenvalue {
            re: self.w,
            im: self.vector_norm(),
        }
    }

    /// A unit quaternion `w` with `w⁻¹ · self · w = standardize(self)`.
    ///
    /// Used to carry an eigenpair `(z, λ)` over to `(z w, w⁻¹ λ w)`.
    pub fn standardizing_witness(self) -> Quaternion {
        let v = self.vector_norm();
        if v == 0.0 {
            return Quaternion::ONE;
        }
        // w i w⁻¹ = u for w ∝ 1 - u·i; near u = -i go through w' j with w' i w'⁻¹ = -u
        let u = Quaternion::new(0.0, self.x / v, self.y / v, self.z / v);
        let rotate_onto = |u: Quaternion| {
            let w = Quaternion::ONE - u * Quaternion::I;
            w / w.norm()
        };
        if u.x >= 0.0 {
            rotate_onto(u)
        } else {
            rotate_onto(-u) * Quaternion::J
        }
    }

    /// Whether `self` and `other` are similar, i.e. `other = w⁻¹ self w` for some
    /// nonzero `w`. Decided by the complete invariants (real part, modulus of
    /// the vector part).
    pub fn same_similarity_orbit(self, other: Quaternion, tol: f64) -> bool {
        (self.w - other.w).abs() <= tol
            && (self.vector_norm() - other.vector_norm()).abs() <= tol
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+}i {:+}j {:+}k",
            self.w, self.x, self.y, self.z
        )
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (r.w, r.x, r.y, r.z);
        Self::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, r: Self) {
        *self = *self * r;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

/// A right eigenvalue in standard form: a complex number with `im ≥ 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StandardEigenvalue {
    pub re: f64,
    pub im: f64,
}

impl StandardEigenvalue {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue {re} + {im}i is not finite"
            )));
        }
        if im < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue {re} + {im}i has negative imaginary part"
            )));
        }
        Ok(Self { re, im })
    }

    pub fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::complex(self.re, self.im)
    }

    pub fn modulus(self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl From<StandardEigenvalue> for Quaternion {
    fn from(l: StandardEigenvalue) -> Self {
        l.to_quaternion()
    }
}
