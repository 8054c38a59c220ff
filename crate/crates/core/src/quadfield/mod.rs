//! Exact arithmetic in Q(√D), the splitting field of `x² = Px − Q`.
//!
//! [`LucasParams`] fixes `P` and `Q`; every irrational quantity the engine
//! touches (the roots `p`, `q`, their powers, and the recurrence
//! coefficients) is a [`QuadraticSurd`] over the discriminant that the
//! parameters determine.

mod rational;
mod surd;

pub use rational::{ParseRationalError, Rational};
pub use surd::QuadraticSurd;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Build a canonical fraction `num/den`.
pub fn make_rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(num, den)
}

/// Parameters `(P, Q)` of the characteristic equation `x² = Px − Q`, with
/// `p + q = P` and `pq = Q`. Construction rejects `D = P² − 4Q = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct LucasParams {
    p: Rational,
    q: Rational,
    d: Rational,
    // √D = √field_disc / d.denom(), so field_disc = numer(D)·denom(D) is an integer.
    field_disc: BigInt,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(rename = "P")]
    p: Rational,
    #[serde(rename = "Q")]
    q: Rational,
}

impl TryFrom<RawParams> for LucasParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        LucasParams::new(raw.p, raw.q)
    }
}

impl From<LucasParams> for RawParams {
    fn from(params: LucasParams) -> Self {
        RawParams {
            p: params.p,
            q: params.q,
        }
    }
}

impl LucasParams {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        let d = &p * &p - Rational::from_integer(4) * &q;
        if d.is_zero() {
            return Err(Error::DegenerateDiscriminant);
        }
        let field_disc = d.numer() * d.denom();
        Ok(LucasParams {
            p,
            q,
            d,
            field_disc,
        })
    }

    pub fn from_integers(p: i64, q: i64) -> Result<Self> {
        Self::new(Rational::from(p), Rational::from(q))
    }

    /// `P`, the sum of the roots.
    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// `Q`, the product of the roots.
    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// `D = P² − 4Q = (p − q)²`.
    pub fn discriminant(&self) -> &Rational {
        &self.d
    }

    /// The integer radicand every surd for these parameters is expressed over.
    pub fn field_disc(&self) -> &BigInt {
        &self.field_disc
    }

    pub fn embed(&self, x: &Rational) -> QuadraticSurd {
        QuadraticSurd::from_rational(x.clone(), &self.field_disc)
    }

    /// `√D` as a field element.
    pub fn sqrt_discriminant(&self) -> QuadraticSurd {
        let scale = Rational::from_integer(self.d.denom().clone())
            .inv()
            .expect("denominator is positive");
        QuadraticSurd::new(Rational::zero(), scale, self.field_disc.clone())
    }

    /// `p = (P + √D)/2`
    pub fn root_p(&self) -> QuadraticSurd {
        let half = Rational::new(1, 2).expect("nonzero");
        (&self.embed(&self.p) + &self.sqrt_discriminant()).scale(&half)
    }

    /// `q = (P − √D)/2`
    pub fn root_q(&self) -> QuadraticSurd {
        let half = Rational::new(1, 2).expect("nonzero");
        (&self.embed(&self.p) - &self.sqrt_discriminant()).scale(&half)
    }
}

impl std::fmt::Display for LucasParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P={}, Q={}", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn make_rational_examples() {
        assert_eq!(make_rational(6, -4).unwrap().to_string(), "-3/2");
        assert_eq!(make_rational(0, 7).unwrap().to_string(), "0");
        assert_eq!(make_rational(5, 1).unwrap().to_string(), "5");
        assert_eq!(make_rational(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn golden_ratio_roots() {
        let params = LucasParams::from_integers(1, -1).unwrap();
        let p = params.root_p();
        let q = params.root_q();
        let five = BigInt::from(5);
        assert_eq!(p, QuadraticSurd::new(r(1, 2), r(1, 2), five.clone()));
        assert_eq!(q, QuadraticSurd::new(r(1, 2), r(-1, 2), five));
        assert_eq!(p.conj(), q);
    }

    #[test]
    fn perfect_square_discriminant_gives_rational_roots() {
        let params = LucasParams::from_integers(3, 2).unwrap();
        assert_eq!(params.root_p().as_rational().unwrap(), r(2, 1));
        assert_eq!(params.root_q().as_rational().unwrap(), r(1, 1));
    }

    #[test]
    fn rational_parameters_use_integer_radicand() {
        // P = 1/2, Q = -1/3: D = 1/4 + 4/3 = 19/12
        let params = LucasParams::new(r(1, 2), r(-1, 3)).unwrap();
        assert_eq!(params.discriminant(), &r(19, 12));
        let diff = &params.root_p() - &params.root_q();
        assert_eq!((&diff * &diff).as_rational().unwrap(), r(19, 12));
        assert_eq!(
            (&params.root_p() * &params.root_q()).as_rational().unwrap(),
            r(-1, 3)
        );
    }

    #[test]
    fn zero_discriminant_is_rejected() {
        assert_eq!(
            LucasParams::from_integers(2, 1),
            Err(Error::DegenerateDiscriminant)
        );
        assert_eq!(
            LucasParams::from_integers(0, 0),
            Err(Error::DegenerateDiscriminant)
        );
    }

    #[test]
    fn fifth_fibonacci_from_roots() {
        let params = LucasParams::from_integers(1, -1).unwrap();
        let (p, q) = (params.root_p(), params.root_q());
        let u5 = (&p.pow(5) - &q.pow(5)).checked_div(&(&p - &q)).unwrap();
        // Oracle: the Fibonacci recurrence.
        let mut fib = (0i64, 1i64);
        for _ in 0..5 {
            fib = (fib.1, fib.0 + fib.1);
        }
        assert_eq!(u5.as_rational().unwrap(), Rational::from(fib.0));
        assert_eq!(fib.0, 5);
    }

    #[test]
    fn minimal_polynomial_and_vieta() {
        for (pp, qq) in [(1, -1), (2, -1), (3, 2), (-3, 3), (1, 1)] {
            let params = LucasParams::from_integers(pp, qq).unwrap();
            let p = params.root_p();
            let q = params.root_q();
            let rhs = &p.scale(params.p()) - &params.embed(params.q());
            assert_eq!(p.pow(2), rhs);
            assert_eq!((&p + &q).as_rational().unwrap(), *params.p());
            assert_eq!((&p * &q).as_rational().unwrap(), *params.q());
        }
    }

    #[test]
    fn params_serde_round_trip() {
        let params = LucasParams::new(r(1, 2), r(-3, 1)).unwrap();
        let json = serde_json::to_string(&params).unwrap();
        assert_eq!(json, r#"{"P":"1/2","Q":"-3"}"#);
        let back: LucasParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, params);
        assert!(serde_json::from_str::<LucasParams>(r#"{"P":"2","Q":"1"}"#).is_err());
    }
}
