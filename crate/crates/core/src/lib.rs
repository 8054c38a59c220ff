//! Exact computation of Lucas-type sequences and their generalized binomial
//! coefficients.
//!
//! The crate evaluates each coefficient two ways, once from the factorial
//! definition and once from a Pascal-like recurrence whose site-dependent
//! multipliers live in the quadratic field Q(√D), and checks that the
//! routes agree. The [`verify`] module sweeps the related identities over
//! parameter grids.
//!
//! ```
//! use lucanomial::{factorial_binomial, LucasParams, SequenceContext, SequenceKind};
//!
//! let params = LucasParams::from_integers(1, -1).unwrap();
//! let mut fib = SequenceContext::new(params, SequenceKind::U).unwrap();
//! assert_eq!(factorial_binomial(&mut fib, 5, 2).unwrap().to_string(), "15");
//! ```

pub mod binomials;
pub mod error;
pub mod format;
pub mod quadfield;
pub mod sequences;
pub mod verify;

pub use binomials::{
    build_triangle, check_fontene_tautology, check_multinomial_product, coefficient_pair,
    factorial_binomial, fontene_coeffs, horadam_h_coeffs, multinomial, recurrence_binomial,
    u_coeffs, v_coeffs, CoeffRule, CoefficientPair, FonteneVariant, RecurrenceLattice, Route,
    Triangle, UVariant,
};
pub use error::{Error, Result};
pub use quadfield::{make_rational, LucasParams, QuadraticSurd, Rational};
pub use sequences::{
    derive_closed_form_weights, IdentityCheck, LucasPair, SequenceContext, SequenceKind,
};
pub use verify::{run_suite, GridSpec, Report, Status, Suite, SuiteSelector, Summary};
