//! Sector classification and sector-specific polar forms.
//!
//! Every nonzero element falls in exactly one of the regions below, decided
//! by the signs of `I` and `V` measured against `tau_class * |a|^2`:
//!
//! | label           | condition                |
//! |-----------------|--------------------------|
//! | `NullImaginary` | `I ≈ 0` and `V ≈ 0`      |
//! | `S4only`        | `I ≈ 0`, `V` not         |
//! | `S5only`        | `V ≈ 0`, `I` not         |
//! | `S1`            | `I > 0`, `V > 0`         |
//! | `S2`            | `I > 0`, `V < 0`         |
//! | `S3`            | `I < 0` (so `V > 0`)     |

use std::fmt;

use crate::error::{Error, Result};
use crate::multivector::Multivector;

pub const DEFAULT_TAU_CLASS: f64 = 1e-10;
pub const DEFAULT_TAU_VERIFY: f64 = 1e-8;

/// Relative thresholds used for classification and verification.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    tau_class: f64,
    tau_verify: f64,
}

impl Tolerances {
    pub fn new(tau_class: f64, tau_verify: f64) -> Result<Self> {
        for t in [tau_class, tau_verify] {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::InvalidTolerance(t));
            }
        }
        Ok(Self { tau_class, tau_verify })
    }

    pub fn with_tau_class(self, tau_class: f64) -> Result<Self> {
        Self::new(tau_class, self.tau_verify)
    }

    pub fn tau_class(&self) -> f64 {
        self.tau_class
    }

    pub fn tau_verify(&self) -> f64 {
        self.tau_verify
    }

    /// `|q| <= tau_class * scale`.
    pub(crate) fn negligible(&self, q: f64, scale: f64) -> bool {
        q.abs() <= self.tau_class * scale
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tau_class: DEFAULT_TAU_CLASS,
            tau_verify: DEFAULT_TAU_VERIFY,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectorLabel {
    Zero,
    /// Nonzero element of `E0 = S4 ∩ S5`.
    NullImaginary,
    S4only,
    S5only,
    S1,
    S2,
    S3,
}

impl SectorLabel {
    pub const ALL: [SectorLabel; 7] = [
        SectorLabel::Zero,
        SectorLabel::NullImaginary,
        SectorLabel::S4only,
        SectorLabel::S5only,
        SectorLabel::S1,
        SectorLabel::S2,
        SectorLabel::S3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SectorLabel::Zero => "zero",
            SectorLabel::NullImaginary => "E0",
            SectorLabel::S4only => "S4",
            SectorLabel::S5only => "S5",
            SectorLabel::S1 => "S1",
            SectorLabel::S2 => "S2",
            SectorLabel::S3 => "S3",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            SectorLabel::Zero => "zero",
            SectorLabel::NullImaginary => "null imaginary",
            SectorLabel::S4only => "I = 0, V != 0",
            SectorLabel::S5only => "V = 0, I != 0",
            SectorLabel::S1 => "I > 0, V > 0",
            SectorLabel::S2 => "I > 0, V < 0",
            SectorLabel::S3 => "I < 0, V > 0",
        }
    }

    pub fn is_invertible(&self) -> bool {
        !matches!(
            self,
            SectorLabel::Zero | SectorLabel::NullImaginary | SectorLabel::S4only
        )
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.description())
    }
}

/// Class of a pure imaginary unit vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EpsilonClass {
    /// `V = 1`, squares to `+1`.
    E1,
    /// `V = 0`, squares to `0`.
    E0,
    /// `V = -1`, squares to `-1`.
    Eminus1,
    None,
}

impl fmt::Display for EpsilonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsilonClass::E1 => "E1",
            EpsilonClass::E0 => "E0",
            EpsilonClass::Eminus1 => "E-1",
            EpsilonClass::None => "none",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParabolicKind {
    /// `I ≈ 0`, `V` not.
    S4,
    /// `V ≈ 0`, `I` not.
    S5,
    /// Both vanish.
    E0,
}

/// Sector-specific factorisation of a nonzero element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PolarForm {
    /// `sign * n * (cosh theta + eps sinh theta)`, `eps` in `E1`.
    HyperbolicCosh {
        sign: f64,
        n: f64,
        theta: f64,
        eps: Multivector,
    },
    /// `n * (cos theta + eps sin theta)`, `eps` in `E-1`, `theta` in `[0, pi]`.
    Circular { n: f64, theta: f64, eps: Multivector },
    /// `n * (sinh theta + eps cosh theta)`, `eps` in `E1`.
    HyperbolicSinh { n: f64, theta: f64, eps: Multivector },
    /// `a0 + im` where one of the quadratic maps vanishes.
    Parabolic {
        a0: f64,
        im: Multivector,
        kind: ParabolicKind,
    },
}

pub fn classify(a: &Multivector, tol: &Tolerances) -> SectorLabel {
    if a.is_zero() {
        return SectorLabel::Zero;
    }
    let scale = a.norm_sq();
    let i = a.i();
    let v = a.v();
    match (tol.negligible(i, scale), tol.negligible(v, scale)) {
        (true, true) => SectorLabel::NullImaginary,
        (true, false) => SectorLabel::S4only,
        (false, true) => SectorLabel::S5only,
        (false, false) if i < 0.0 => SectorLabel::S3,
        (false, false) if v > 0.0 => SectorLabel::S1,
        (false, false) => SectorLabel::S2,
    }
}

/// Classifies a pure imaginary vector by its Lorentzian square.
///
/// `E1`/`Eminus1` require unit length (`V = ±1` within tolerance), `E0`
/// only requires `V ≈ 0`. Anything else, including a vector with a
/// non-negligible scalar part, is `None`.
pub fn epsilon_class(v: &Multivector, tol: &Tolerances) -> EpsilonClass {
    let scale = v.norm_sq();
    if v.is_zero() || !tol.negligible(v.s(), scale.sqrt()) {
        return EpsilonClass::None;
    }
    let lv = v.v();
    if tol.negligible(lv, scale) {
        EpsilonClass::E0
    } else if tol.negligible(lv - 1.0, scale.max(1.0)) {
        EpsilonClass::E1
    } else if tol.negligible(lv + 1.0, scale.max(1.0)) {
        EpsilonClass::Eminus1
    } else {
        EpsilonClass::None
    }
}

pub fn polar(a: &Multivector, tol: &Tolerances) -> Result<PolarForm> {
    let (a0, im) = a.parts();
    let q = a.invariants();
    let form = match classify(a, tol) {
        SectorLabel::Zero => return Err(Error::ZeroElement),
        SectorLabel::S1 => {
            let sign = if a0 < 0.0 { -1.0 } else { 1.0 };
            let root_v = q.v.sqrt();
            PolarForm::HyperbolicCosh {
                sign,
                n: q.n,
                theta: (root_v / q.n).asinh(),
                eps: im.scale(1.0 / (sign * root_v)),
            }
        }
        SectorLabel::S2 => {
            let root_v = (-q.v).sqrt();
            PolarForm::Circular {
                n: q.n,
                theta: root_v.atan2(a0),
                eps: im.scale(1.0 / root_v),
            }
        }
        SectorLabel::S3 => {
            let root_v = q.v.sqrt();
            PolarForm::HyperbolicSinh {
                n: q.n,
                theta: (a0 / q.n).asinh(),
                eps: im.scale(1.0 / root_v),
            }
        }
        SectorLabel::S4only => PolarForm::Parabolic {
            a0,
            im,
            kind: ParabolicKind::S4,
        },
        SectorLabel::S5only => PolarForm::Parabolic {
            a0,
            im,
            kind: ParabolicKind::S5,
        },
        SectorLabel::NullImaginary => PolarForm::Parabolic {
            a0,
            im,
            kind: ParabolicKind::E0,
        },
    };
    Ok(form)
}

/// `n * (c + s * eps)` assembled coefficient-wise.
pub(crate) fn combine(n: f64, c: f64, s: f64, eps: &Multivector) -> Multivector {
    Multivector::raw(n * c, n * s * eps.x1(), n * s * eps.x2(), n * s * eps.x3())
}

pub fn reconstruct(p: &PolarForm) -> Multivector {
    match *p {
        PolarForm::HyperbolicCosh { sign, n, theta, eps } => combine(sign * n, theta.cosh(), theta.sinh(), &eps),
        PolarForm::Circular { n, theta, eps } => combine(n, theta.cos(), theta.sin(), &eps),
        PolarForm::HyperbolicSinh { n, theta, eps } => combine(n, theta.sinh(), theta.cosh(), &eps),
        PolarForm::Parabolic { a0, im, .. } => Multivector::raw(a0, im.x1(), im.x2(), im.x3()),
    }
}
