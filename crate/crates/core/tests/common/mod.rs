#![allow(dead_code)]

use cl2::oracle::SplitMix64;
use cl2::{EpsilonClass, Multivector};

pub fn mv(s: f64, x1: f64, x2: f64, x3: f64) -> Multivector {
    Multivector::new(s, x1, x2, x3).unwrap()
}

/// Random pure imaginary unit vector of the given class, coefficients
/// roughly in `[-5, 5]`.
pub fn random_epsilon(class: EpsilonClass, rng: &mut SplitMix64) -> Multivector {
    match class {
        EpsilonClass::Eminus1 => {
            let (x1, x2) = (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
            mv(0.0, x1, x2, rng.sign() * (1.0 + x1 * x1 + x2 * x2).sqrt())
        }
        EpsilonClass::E1 => {
            let x3 = rng.uniform(-3.0, 3.0);
            let phi = rng.uniform(0.0, std::f64::consts::TAU);
            let r = (1.0 + x3 * x3).sqrt();
            mv(0.0, r * phi.cos(), r * phi.sin(), x3)
        }
        EpsilonClass::E0 => {
            let (x1, x2) = (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
            mv(0.0, x1, x2, rng.sign() * x1.hypot(x2))
        }
        EpsilonClass::None => panic!("no unit vectors of class None"),
    }
}

pub fn random_box(rng: &mut SplitMix64, r: f64) -> Multivector {
    mv(
        rng.uniform(-r, r),
        rng.uniform(-r, r),
        rng.uniform(-r, r),
        rng.uniform(-r, r),
    )
}

/// Largest coefficient difference divided by `scale`.
pub fn rel_dev(got: &Multivector, want: &Multivector, scale: f64) -> f64 {
    got.max_abs_diff(want) / scale.max(f64::MIN_POSITIVE)
}
