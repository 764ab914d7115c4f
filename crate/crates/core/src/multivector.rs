//! Elements of Cl2 and their exact-formula arithmetic.
//!
//! A value is `s + x1*e1 + x2*e2 + x3*e3` with `e1^2 = e2^2 = 1`, `e3 = e1 e2`
//! and `e3^2 = -1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::classify::Tolerances;
use crate::error::{Error, Result};
use crate::textio::json::MultivectorRepr;

/// An element of Cl2 with real coefficients on the basis `{1, e1, e2, e3}`.
///
/// Values built through [`Multivector::new`] always hold finite coefficients
/// and never carry a negative zero. Arithmetic operators are total and may
/// overflow to infinity on extreme inputs; use [`Multivector::is_finite`] to
/// check results where that matters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(into = "MultivectorRepr", try_from = "MultivectorRepr")]
pub struct Multivector {
    s: f64,
    x1: f64,
    x2: f64,
    x3: f64,
}

/// The quadratic maps `I`, `N` and `V` of a multivector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticInvariants {
    /// `s^2 - x1^2 - x2^2 + x3^2`, equal to `a * conj(a)`.
    pub i: f64,
    /// `sqrt(|I|)`.
    pub n: f64,
    /// `x1^2 + x2^2 - x3^2`, the Lorentzian square of the imaginary part.
    pub v: f64,
}

impl Multivector {
    pub const ZERO: Self = Self::raw(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::raw(1.0, 0.0, 0.0, 0.0);
    pub const E1: Self = Self::raw(0.0, 1.0, 0.0, 0.0);
    pub const E2: Self = Self::raw(0.0, 0.0, 1.0, 0.0);
    pub const E3: Self = Self::raw(0.0, 0.0, 0.0, 1.0);

    /// Builds a value, rejecting NaN and infinite coefficients.
    pub fn new(s: f64, x1: f64, x2: f64, x3: f64) -> Result<Self> {
        for c in [s, x1, x2, x3] {
            if !c.is_finite() {
                return Err(Error::InvalidValue(c));
            }
        }
        // `+ 0.0` folds -0.0 into +0.0 and leaves every other value unchanged.
        Ok(Self::raw(s + 0.0, x1 + 0.0, x2 + 0.0, x3 + 0.0))
    }

    pub fn scalar(s: f64) -> Result<Self> {
        Self::new(s, 0.0, 0.0, 0.0)
    }

    pub fn from_coeffs(c: [f64; 4]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub(crate) const fn raw(s: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { s, x1, x2, x3 }
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s
    }

    #[inline]
    pub fn x1(&self) -> f64 {
        self.x1
    }

    #[inline]
    pub fn x2(&self) -> f64 {
        self.x2
    }

    #[inline]
    pub fn x3(&self) -> f64 {
        self.x3
    }

    #[inline]
    pub fn coeffs(&self) -> [f64; 4] {
        [self.s, self.x1, self.x2, self.x3]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0.0)
    }

    /// Returns the value with a negative-zero coefficient replaced by +0.
    pub fn canonical(self) -> Self {
        Self::raw(self.s + 0.0, self.x1 + 0.0, self.x2 + 0.0, self.x3 + 0.0)
    }

    /// The Cl2 product.
    ///
    /// Each imaginary coefficient is summed as (symmetric pair) + (antisymmetric
    /// pair), so `conj(ab) == conj(b) conj(a)` holds bit-for-bit.
    pub fn mul(&self, b: &Self) -> Self {
        let a = self;
        Self::raw(
            a.s * b.s + a.x1 * b.x1 + a.x2 * b.x2 - a.x3 * b.x3,
            (a.s * b.x1 + a.x1 * b.s) + (a.x3 * b.x2 - a.x2 * b.x3),
            (a.s * b.x2 + a.x2 * b.s) + (a.x1 * b.x3 - a.x3 * b.x1),
            (a.s * b.x3 + a.x3 * b.s) + (a.x1 * b.x2 - a.x2 * b.x1),
        )
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.s, -self.x1, -self.x2, -self.x3)
    }

    /// Splits into the real part and the imaginary part (scalar zeroed).
    pub fn parts(&self) -> (f64, Self) {
        (self.s, self.im())
    }

    #[inline]
    pub fn re(&self) -> f64 {
        self.s
    }

    #[inline]
    pub fn im(&self) -> Self {
        Self::raw(0.0, self.x1, self.x2, self.x3)
    }

    pub fn scale(&self, t: f64) -> Self {
        Self::raw(t * self.s, t * self.x1, t * self.x2, t * self.x3)
    }

    pub fn i(&self) -> f64 {
        self.s * self.s - self.x1 * self.x1 - self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn v(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2 - self.x3 * self.x3
    }

    pub fn invariants(&self) -> QuadraticInvariants {
        let i = self.i();
        QuadraticInvariants {
            i,
            n: i.abs().sqrt(),
            v: self.v(),
        }
    }

    /// Euclidean coefficient norm squared, `s^2 + x1^2 + x2^2 + x3^2`.
    ///
    /// This is the scale every relative tolerance test is measured against.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs().iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs()
            .iter()
            .zip(other.coeffs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Euclidean distance between coefficient vectors.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    /// `I` vanishes relative to the size of the value.
    pub fn is_invertible(&self, tol: &Tolerances) -> bool {
        self.i().abs() > tol.tau_class() * self.norm_sq()
    }

    /// `conj(a) / I_a`.
    pub fn inverse(&self, tol: &Tolerances) -> Result<Self> {
        if !self.is_invertible(tol) {
            return Err(Error::NonInvertible);
        }
        let inv = self.conj().scale(1.0 / self.i());
        if inv.is_finite() {
            Ok(inv)
        } else {
            Err(Error::Overflow)
        }
    }

    /// `u1 v1 + u2 v2 - u3 v3`. Scalar parts of the arguments are ignored.
    pub fn lorentz_inner(&self, other: &Self) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2 - self.x3 * other.x3
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self::raw(self.s + b.s, self.x1 + b.x1, self.x2 + b.x2, self.x3 + b.x3)
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self::raw(self.s - b.s, self.x1 - b.x1, self.x2 - b.x2, self.x3 - b.x3)
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::raw(-self.s, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Multivector::mul(&self, &b)
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(self, t: f64) -> Self {
        self.scale(t)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, a: Multivector) -> Multivector {
        a.scale(self)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::textio::format_mv(self, crate::textio::Style::Human))
    }
}
