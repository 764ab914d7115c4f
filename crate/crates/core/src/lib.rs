//! Arithmetic in the Clifford algebra Cl2 (basis `1, e1, e2, e3 = e1 e2`,
//! with `e1^2 = e2^2 = 1`, `e3^2 = -1`).
//!
//! - [`multivector`]: the product, conjugation, the quadratic maps `I`, `N`,
//!   `V`, inverses and the Lorentzian inner product on imaginary parts.
//! - [`classify`]: the sector partition by signs of `I` and `V`, and
//!   sector-specific polar forms.
//! - [`transcend`]: closed-form exponential, De Moivre powers, nth roots.
//! - [`oracle`]: brute-force checks and deterministic samplers.
//! - [`textio`]: expression parser, formatter and JSON codec.
//!
//! ```
//! use cl2::{nth_roots, parse_eval, RootMode, Tolerances};
//!
//! let tol = Tolerances::default();
//! let a = parse_eval("1 - e3", &tol).unwrap();
//! let roots = nth_roots(&a, 4, RootMode::Complete, &tol).unwrap();
//! assert_eq!(roots.finite_roots().len(), 4);
//! ```

pub mod classify;
pub mod error;
pub mod multivector;
pub mod oracle;
pub mod textio;
pub mod transcend;

pub use classify::{
    classify, epsilon_class, polar, reconstruct, EpsilonClass, ParabolicKind, PolarForm, SectorLabel, Tolerances,
};
pub use error::{Error, Result};
pub use multivector::{Multivector, QuadraticInvariants};
pub use textio::{format_mv, parse_eval, ParseError, ParseErrorKind, Style};
pub use transcend::{exp, nth_roots, pow_int, RootMode, RootNote, RootSet, RootSolution};
