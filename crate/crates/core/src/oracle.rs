//! Brute-force checks and deterministic samplers.
//!
//! Nothing here calls into [`crate::transcend`] or [`crate::classify`]'s polar
//! machinery: powers are repeated products and the exponential is a
//! truncated power series, so these can be used to check the closed forms.

use crate::classify::{SectorLabel, Tolerances, DEFAULT_TAU_CLASS};
use crate::multivector::Multivector;

/// `a^n` by binary exponentiation over the Cl2 product.
pub fn pow_naive(a: &Multivector, n: u64) -> Multivector {
    let mut result = Multivector::ONE;
    let mut base = *a;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = result * base;
        }
        k >>= 1;
        if k > 0 {
            base = base * base;
        }
    }
    result
}

/// Partial sum `sum_{k < terms} a^k / k!`.
pub fn exp_series(a: &Multivector, terms: u32) -> Multivector {
    let mut sum = Multivector::ZERO;
    let mut term = Multivector::ONE;
    for k in 0..terms {
        sum = sum + term;
        term = (term * *a).scale(1.0 / f64::from(k + 1));
    }
    sum
}

/// Exponential by series on `a / 2^s` followed by `s` squarings.
///
/// Accurate for arguments of any size the result can represent.
pub fn exp_scaled_series(a: &Multivector) -> Multivector {
    let mut squarings = 0;
    let mut reduced = *a;
    while reduced.norm() > 0.5 && squarings < 1100 {
        reduced = reduced.scale(0.5);
        squarings += 1;
    }
    let mut e = exp_series(&reduced, 30);
    for _ in 0..squarings {
        e = e * e;
    }
    e
}

/// `true` iff `|w^n - a| <= tau_verify * max(1, |a|)`.
pub fn verify_root(a: &Multivector, n: u64, w: &Multivector, tol: &Tolerances) -> bool {
    root_residual(a, n, w) <= tol.tau_verify() * a.norm().max(1.0)
}

/// `|w^n - a|` in the Euclidean coefficient norm.
pub fn root_residual(a: &Multivector, n: u64, w: &Multivector) -> f64 {
    pow_naive(w, n).distance(a)
}

/// SplitMix64 (Steele, Lea, Flood 2014).
///
/// State advances by `0x9E3779B97F4A7C15`; output is the state mixed with
/// `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`,
/// `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`, `z ^ (z >> 31)`.
/// Doubles are `(next_u64() >> 11) * 2^-53`.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    pub fn sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

const COEFF_RANGE: f64 = 10.0;
const MARGIN: f64 = 100.0 * DEFAULT_TAU_CLASS;

/// Random dyadic `k / 8` with `|k| <= 24`; products and squares of these
/// are exact in double precision.
fn dyadic(rng: &mut SplitMix64) -> f64 {
    rng.int_in(-24, 24) as f64 / 8.0
}

/// Imaginary part with `x1^2 + x2^2 = x3^2` exactly: `(x1, x2)` is `u^2`
/// for a Gaussian dyadic `u`, and `x3 = ±|u|^2`.
fn null_imaginary(rng: &mut SplitMix64) -> (f64, f64, f64) {
    loop {
        let (p, q) = (dyadic(rng), dyadic(rng));
        if p == 0.0 && q == 0.0 {
            continue;
        }
        let x1 = (p * p - q * q) / 2.0;
        let x2 = p * q;
        let x3 = rng.sign() * (p * p + q * q) / 2.0;
        return (x1, x2, x3);
    }
}

fn margin_ok(a: &Multivector, q: f64) -> bool {
    q.abs() >= MARGIN * a.norm_sq()
}

/// Deterministic sample classifying to `label` with margin `100 * 1e-10`.
///
/// Coefficients start uniform in `[-10, 10]`. `S4only`, `S5only` and
/// `NullImaginary` are built on exact dyadic constraint solutions so that
/// `I = 0` or `V = 0` holds exactly. `Zero` returns zero.
pub fn sample_in_sector(label: SectorLabel, seed: u64) -> Multivector {
    let mut rng = SplitMix64::new(seed);
    let box_sample = |rng: &mut SplitMix64| {
        Multivector::raw(
            rng.uniform(-COEFF_RANGE, COEFF_RANGE),
            rng.uniform(-COEFF_RANGE, COEFF_RANGE),
            rng.uniform(-COEFF_RANGE, COEFF_RANGE),
            rng.uniform(-COEFF_RANGE, COEFF_RANGE),
        )
        .canonical()
    };
    match label {
        SectorLabel::Zero => Multivector::ZERO,
        SectorLabel::S1 | SectorLabel::S2 | SectorLabel::S3 => loop {
            let a = box_sample(&mut rng);
            let (i, v) = (a.i(), a.v());
            if !(margin_ok(&a, i) && margin_ok(&a, v)) {
                continue;
            }
            let hit = match label {
                SectorLabel::S1 => i > 0.0 && v > 0.0,
                SectorLabel::S2 => i > 0.0 && v < 0.0,
                _ => i < 0.0,
            };
            if hit {
                return a;
            }
        },
        SectorLabel::S4only => loop {
            // z = u v and z' = u conj(v) have equal modulus, so
            // a0^2 + a3^2 = a1^2 + a2^2, i.e. I = 0.
            let (ur, ui, vr, vi) = (dyadic(&mut rng), dyadic(&mut rng), dyadic(&mut rng), dyadic(&mut rng));
            let a0 = (ur * vr - ui * vi) / 2.0;
            let a3 = (ur * vi + ui * vr) / 2.0;
            let a1 = (ur * vr + ui * vi) / 2.0;
            let a2 = (ui * vr - ur * vi) / 2.0;
            let a = Multivector::raw(a0, a1, a2, a3).canonical();
            if a.is_zero() || !margin_ok(&a, a.v()) {
                continue;
            }
            return a;
        },
        SectorLabel::S5only => loop {
            let (x1, x2, x3) = null_imaginary(&mut rng);
            let a0 = rng.uniform(-COEFF_RANGE, COEFF_RANGE);
            let a = Multivector::raw(a0, x1, x2, x3).canonical();
            if margin_ok(&a, a.i()) {
                return a;
            }
        },
        SectorLabel::NullImaginary => {
            let (x1, x2, x3) = null_imaginary(&mut rng);
            Multivector::raw(0.0, x1, x2, x3).canonical()
        }
    }
}
