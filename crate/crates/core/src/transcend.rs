//! Exponential, De Moivre integer powers, and nth roots.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{classify, combine, epsilon_class, polar, EpsilonClass, PolarForm, SectorLabel, Tolerances};
use crate::error::{Error, Result};
use crate::multivector::Multivector;
use crate::textio::json::RootSetRepr;

/// Above this argument `cosh t` and `sinh t` equal `e^|t| / 2` to double precision.
const LARGE_HYPERBOLIC_ARG: f64 = 20.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RootMode {
    /// Only the roots the closed-form theorems list.
    PaperFaithful,
    /// Every root: adds negation partners for even `n` and the unit `E1`
    /// family for even roots of positive scalars.
    #[default]
    Complete,
}

/// One component of a root solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "RootSetRepr", try_from = "RootSetRepr")]
pub enum RootSet {
    Empty,
    Finite(Vec<Multivector>),
    /// `{ scale * (cos phi + eps sin phi) : phi in angles, eps in E-1 }`.
    CircularFamily {
        scale: f64,
        angles: Vec<f64>,
    },
    /// `{ scale * eps : eps in E1 }`.
    HyperbolicUnitFamily {
        scale: f64,
    },
    /// Every pure imaginary vector with `V = 0`, including zero.
    NullCone,
}

/// Why a root set came back empty, or what extension produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootNote {
    /// `S1` element with negative scalar part; the closed forms assume `a0 > 0`.
    NegativeScalarS1,
    /// Roots obtained by negating the roots of `-a` (odd `n`, `S1`, `a0 < 0`).
    NegatedFromMinusA,
    /// Even powers of anything never land on this element.
    NoEvenRoot,
    /// Nonzero nilpotent: every `w` with `w^n` nilpotent has `w^n = 0`.
    NilpotentRadicand,
}

impl fmt::Display for RootNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootNote::NegativeScalarS1 => {
                "S1 element with negative scalar part is outside the closed-form root theorems (use complete mode)"
            }
            RootNote::NegatedFromMinusA => "S1 element with negative scalar part: roots are negated roots of -a",
            RootNote::NoEvenRoot => "no even power of any element equals this value",
            RootNote::NilpotentRadicand => "nonzero null imaginary elements have no roots",
        })
    }
}

/// The roots of `w^n = a`: a union of [`RootSet`] components.
///
/// `parts` is never empty; "no roots" is the single component `Empty`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSolution {
    pub parts: Vec<RootSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<RootNote>,
}

impl RootSolution {
    fn one(set: RootSet) -> Self {
        Self {
            parts: vec![set],
            note: None,
        }
    }

    fn empty(note: RootNote) -> Self {
        Self {
            parts: vec![RootSet::Empty],
            note: Some(note),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|p| matches!(p, RootSet::Empty))
    }

    /// All explicitly listed roots.
    pub fn finite_roots(&self) -> Vec<Multivector> {
        self.parts
            .iter()
            .filter_map(|p| match p {
                RootSet::Finite(r) => Some(r.clone()),
                _ => None,
            })
            .flatten()
            .collect()
    }

    pub fn contains(&self, w: &Multivector, tol: f64) -> bool {
        self.parts.iter().any(|p| p.contains(w, tol))
    }
}

impl RootSet {
    pub fn kind(&self) -> &'static str {
        match self {
            RootSet::Empty => "empty",
            RootSet::Finite(_) => "finite",
            RootSet::CircularFamily { .. } => "circular_family",
            RootSet::HyperbolicUnitFamily { .. } => "hyperbolic_unit_family",
            RootSet::NullCone => "null_cone",
        }
    }

    /// The epsilon class that parameterises this set, if it is a family.
    pub fn family_class(&self) -> Option<EpsilonClass> {
        match self {
            RootSet::CircularFamily { .. } => Some(EpsilonClass::Eminus1),
            RootSet::HyperbolicUnitFamily { .. } => Some(EpsilonClass::E1),
            RootSet::NullCone => Some(EpsilonClass::E0),
            RootSet::Empty | RootSet::Finite(_) => None,
        }
    }

    /// Concrete members of the set at the given `eps`.
    ///
    /// Finite and empty sets ignore `eps`. Families check it with
    /// [`epsilon_class`] first.
    pub fn instantiate(&self, eps: &Multivector, tol: &Tolerances) -> Result<Vec<Multivector>> {
        if let Some(expected) = self.family_class() {
            let found = epsilon_class(eps, tol);
            if found != expected {
                return Err(Error::EpsilonMismatch { expected, found });
            }
        }
        Ok(match self {
            RootSet::Empty => Vec::new(),
            RootSet::Finite(r) => r.clone(),
            RootSet::CircularFamily { scale, angles } => angles
                .iter()
                .map(|phi| combine(*scale, phi.cos(), phi.sin(), eps))
                .collect(),
            RootSet::HyperbolicUnitFamily { scale } => vec![eps.im().scale(*scale)],
            RootSet::NullCone => vec![eps.im()],
        })
    }

    /// Membership test with relative tolerance `tol`.
    pub fn contains(&self, w: &Multivector, tol: f64) -> bool {
        let wn = w.norm().max(1.0);
        match self {
            RootSet::Empty => false,
            RootSet::Finite(r) => r.iter().any(|x| x.distance(w) <= tol * wn),
            RootSet::CircularFamily { scale, angles } => angles.iter().any(|phi| {
                let (c, s) = (scale * phi.cos(), scale * phi.sin());
                if (w.s() - c).abs() > tol * scale {
                    return false;
                }
                if s.abs() <= tol * scale {
                    return w.im().norm() <= tol * scale;
                }
                let eps = w.im().scale(1.0 / s);
                (eps.v() + 1.0).abs() <= tol * eps.norm_sq().max(1.0)
            }),
            RootSet::HyperbolicUnitFamily { scale } => {
                let eps = w.im().scale(1.0 / scale);
                w.s().abs() <= tol * scale && (eps.v() - 1.0).abs() <= tol * eps.norm_sq().max(1.0)
            }
            RootSet::NullCone => w.s().abs() <= tol * wn && w.v().abs() <= tol * wn * wn,
        }
    }
}

/// Three documented sample members for each epsilon class, used to display
/// families: `E-1`: `e3`, `(2e1 + 3e3)/√5`, `(3e1 + 4e2 + 13e3)/12`;
/// `E1`: `e1`, `e2`, `(3e1 + 4e2 + 3e3)/4`; `E0`: `e1 + e3`, `e2 - e3`,
/// `3e1 + 4e2 + 5e3`.
pub fn standard_epsilons(class: EpsilonClass) -> Vec<Multivector> {
    let m = Multivector::raw;
    match class {
        EpsilonClass::Eminus1 => vec![
            m(0.0, 0.0, 0.0, 1.0),
            m(0.0, 2.0, 0.0, 3.0).scale(1.0 / 5f64.sqrt()),
            m(0.0, 3.0, 4.0, 13.0).scale(1.0 / 12.0),
        ],
        EpsilonClass::E1 => vec![m(0.0, 1.0, 0.0, 0.0), m(0.0, 0.0, 1.0, 0.0), m(0.0, 0.75, 1.0, 0.75)],
        EpsilonClass::E0 => vec![m(0.0, 1.0, 0.0, 1.0), m(0.0, 0.0, 1.0, -1.0), m(0.0, 3.0, 4.0, 5.0)],
        EpsilonClass::None => Vec::new(),
    }
}

fn finite(m: Multivector) -> Result<Multivector> {
    if m.is_finite() {
        Ok(m.canonical())
    } else {
        Err(Error::Overflow)
    }
}

/// `x^n` for any integer exponent.
fn powi64(x: f64, n: i64) -> f64 {
    match i32::try_from(n) {
        Ok(k) => x.powi(k),
        Err(_) => x.powf(n as f64),
    }
}

/// `(e^log_scale * cosh t, e^log_scale * sinh t)` without intermediate overflow.
fn scaled_cosh_sinh(log_scale: f64, t: f64) -> (f64, f64) {
    if t.abs() <= LARGE_HYPERBOLIC_ARG {
        let k = log_scale.exp();
        (k * t.cosh(), k * t.sinh())
    } else {
        let big = (log_scale + t.abs() - LN_2).exp();
        (big, big.copysign(t))
    }
}

/// Real nth root; odd roots of negative numbers are `-|x|^(1/n)`.
///
/// Callers must not pass a negative `x` with even `n`.
pub fn real_root(x: f64, n: u32) -> f64 {
    debug_assert!(n >= 1);
    if x == 0.0 || n == 1 {
        return x;
    }
    let mag = x.abs();
    let r = match n {
        2 => mag.sqrt(),
        3 => mag.cbrt(),
        4 => mag.sqrt().sqrt(),
        _ => {
            let y = mag.powf(1.0 / f64::from(n));
            // one Newton step on y^n = mag removes the error of the inexact 1/n
            let yn1 = y.powi(n as i32 - 1);
            let step = y - (y * yn1 - mag) / (f64::from(n) * yn1);
            if step.is_finite() && step > 0.0 {
                step
            } else {
                y
            }
        }
    };
    r.copysign(x)
}

/// Closed-form exponential, `e^a0 * e^Im(a)`.
pub fn exp(a: &Multivector) -> Result<Multivector> {
    let (a0, im) = a.parts();
    let v = im.v();
    // Below machine epsilon the dropped terms V/2 and V/6 vanish in the sum.
    let out = if v.abs() <= f64::EPSILON {
        let k = a0.exp();
        combine(k, 1.0, 1.0, &im)
    } else if v > 0.0 {
        let r = v.sqrt();
        let (c, s) = scaled_cosh_sinh(a0, r);
        combine(1.0, c, s / r, &im)
    } else {
        let r = (-v).sqrt();
        let k = a0.exp();
        combine(k, r.cos(), r.sin() / r, &im)
    };
    finite(out)
}

/// Integer power through the sector's De Moivre formula.
///
/// `pow_int(a, 0)` is `1` for every `a`. Negative exponents need `a` to be
/// invertible.
pub fn pow_int(a: &Multivector, n: i64, tol: &Tolerances) -> Result<Multivector> {
    if n == 0 {
        return Ok(Multivector::ONE);
    }
    if n == 1 {
        return Ok(*a);
    }
    let label = classify(a, tol);
    if n < 0 && !label.is_invertible() {
        return Err(Error::NonInvertible);
    }
    let nf = n as f64;
    let out = match label {
        SectorLabel::Zero => Multivector::ZERO,
        SectorLabel::S4only | SectorLabel::NullImaginary => a.scale(powi64(2.0 * a.s(), n - 1)),
        SectorLabel::S5only => {
            let (a0, im) = a.parts();
            let p = powi64(a0, n - 1);
            combine(1.0, a0 * p, nf * p, &im)
        }
        SectorLabel::S1 | SectorLabel::S2 | SectorLabel::S3 => match polar(a, tol)? {
            PolarForm::HyperbolicCosh {
                sign,
                n: norm,
                theta,
                eps,
            } => {
                let (c, s) = scaled_cosh_sinh(nf * norm.ln(), nf * theta);
                combine(powi64(sign, n), c, s, &eps)
            }
            PolarForm::Circular { n: norm, theta, eps } => {
                let t = nf * theta;
                combine(powi64(norm, n), t.cos(), t.sin(), &eps)
            }
            PolarForm::HyperbolicSinh { n: norm, theta, eps } => {
                let (c, s) = scaled_cosh_sinh(nf * norm.ln(), nf * theta);
                if n % 2 == 0 {
                    combine(1.0, c, s, &eps)
                } else {
                    combine(1.0, s, c, &eps)
                }
            }
            PolarForm::Parabolic { .. } => unreachable!("strict sectors have trigonometric forms"),
        },
    };
    finite(out)
}

/// All solutions of `w^n = a` for `n >= 2`.
pub fn nth_roots(a: &Multivector, n: i64, mode: RootMode, tol: &Tolerances) -> Result<RootSolution> {
    let n = match u32::try_from(n) {
        Ok(k) if k >= 2 => k,
        _ => return Err(Error::BadExponent(n)),
    };
    let even = n % 2 == 0;
    let complete = mode == RootMode::Complete;
    let nf = f64::from(n);
    let (a0, im) = a.parts();

    let with_negations = |roots: Vec<Multivector>| -> RootSet {
        if complete && even {
            let neg: Vec<_> = roots.iter().map(|w| -*w).collect();
            RootSet::Finite(roots.into_iter().chain(neg).collect())
        } else {
            RootSet::Finite(roots)
        }
    };

    let label = classify(a, tol);
    let solution = match label {
        SectorLabel::Zero => RootSolution::one(RootSet::NullCone),
        SectorLabel::NullImaginary => RootSolution::empty(RootNote::NilpotentRadicand),
        SectorLabel::S1 => {
            let PolarForm::HyperbolicCosh {
                sign,
                n: norm,
                theta,
                eps,
            } = polar(a, tol)?
            else {
                unreachable!()
            };
            if sign < 0.0 {
                return Ok(match (complete, even) {
                    (false, _) => RootSolution::empty(RootNote::NegativeScalarS1),
                    (true, true) => RootSolution::empty(RootNote::NoEvenRoot),
                    (true, false) => {
                        let mut sol = nth_roots(&-*a, i64::from(n), mode, tol)?;
                        for part in &mut sol.parts {
                            if let RootSet::Finite(r) = part {
                                r.iter_mut().for_each(|w| *w = -*w);
                            }
                        }
                        sol.note = Some(RootNote::NegatedFromMinusA);
                        sol
                    }
                });
            }
            let m = real_root(norm, n);
            let phi = theta / nf;
            let mut roots = vec![combine(m, phi.cosh(), phi.sinh(), &eps)];
            if even {
                roots.push(combine(m, phi.sinh(), phi.cosh(), &eps));
            }
            RootSolution::one(with_negations(roots))
        }
        SectorLabel::S2 => {
            let PolarForm::Circular { n: norm, theta, eps } = polar(a, tol)? else {
                unreachable!()
            };
            let m = real_root(norm, n);
            let roots = (0..n)
                .map(|k| {
                    let phi = (theta + 2.0 * PI * f64::from(k)) / nf;
                    combine(m, phi.cos(), phi.sin(), &eps)
                })
                .collect();
            RootSolution::one(RootSet::Finite(roots))
        }
        SectorLabel::S3 => {
            if even {
                return Ok(RootSolution::empty(RootNote::NoEvenRoot));
            }
            let PolarForm::HyperbolicSinh { n: norm, theta, eps } = polar(a, tol)? else {
                unreachable!()
            };
            let phi = theta / nf;
            let w = combine(real_root(norm, n), phi.sinh(), phi.cosh(), &eps);
            RootSolution::one(RootSet::Finite(vec![w]))
        }
        SectorLabel::S4only => {
            if even && a0 < 0.0 {
                return Ok(RootSolution::empty(RootNote::NoEvenRoot));
            }
            // (2 w0)^(n-1) w = a  =>  2^(n-1) w0^n = a0,  (2 w0)^(n-1) Im(w) = Im(a)
            let lead = 2f64.powi(n as i32 - 1);
            let w0 = real_root(a0 / lead, n);
            let k = 1.0 / (lead * w0.powi(n as i32 - 1));
            let w = combine(1.0, w0, k, &im);
            RootSolution::one(with_negations(vec![w]))
        }
        SectorLabel::S5only if tol.negligible(im.norm(), a.norm()) => {
            let scale = real_root(a0.abs(), n);
            if a0 > 0.0 {
                let angles = (0..n).map(|k| 2.0 * PI * f64::from(k) / nf).collect();
                let mut parts = vec![RootSet::CircularFamily { scale, angles }];
                if complete && even {
                    parts.push(RootSet::HyperbolicUnitFamily { scale });
                }
                RootSolution { parts, note: None }
            } else {
                let angles = (0..n).map(|k| (PI + 2.0 * PI * f64::from(k)) / nf).collect();
                RootSolution::one(RootSet::CircularFamily { scale, angles })
            }
        }
        SectorLabel::S5only => {
            if even && a0 < 0.0 {
                return Ok(RootSolution::empty(RootNote::NoEvenRoot));
            }
            // w0^n = a0,  n w0^(n-1) Im(w) = Im(a)
            let w0 = real_root(a0, n);
            let k = 1.0 / (nf * w0.powi(n as i32 - 1));
            let w = combine(1.0, w0, k, &im);
            RootSolution::one(with_negations(vec![w]))
        }
    };
    for part in &solution.parts {
        if let RootSet::Finite(r) = part {
            if r.iter().any(|w| !w.is_finite()) {
                return Err(Error::Overflow);
            }
        }
    }
    Ok(solution)
}
