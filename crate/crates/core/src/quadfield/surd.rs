use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::Rational;
use crate::error::{Error, Result};

/// An element `rat + coef·√disc` of Q(√disc).
///
/// `disc` is carried exactly as given and is never reduced to its square-free
/// part. When `disc` is a perfect square `s²` the surd part is folded into the
/// rational part at construction, so `coef` is zero and the representation
/// stays canonical; every operation on such values keeps `coef` zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    rat: Rational,
    coef: Rational,
    disc: BigInt,
}

fn perfect_square_root(disc: &BigInt) -> Option<BigInt> {
    if disc.is_negative() {
        return None;
    }
    let root = disc.sqrt();
    (&root * &root == *disc).then_some(root)
}

impl QuadraticSurd {
    pub fn new(rat: Rational, coef: Rational, disc: BigInt) -> Self {
        match perfect_square_root(&disc) {
            Some(root) if !coef.is_zero() => QuadraticSurd {
                rat: rat + coef * Rational::from_integer(root),
                coef: Rational::zero(),
                disc,
            },
            _ => QuadraticSurd { rat, coef, disc },
        }
    }

    pub fn from_rational(rat: Rational, disc: &BigInt) -> Self {
        QuadraticSurd {
            rat,
            coef: Rational::zero(),
            disc: disc.clone(),
        }
    }

    pub fn zero(disc: &BigInt) -> Self {
        Self::from_rational(Rational::zero(), disc)
    }

    pub fn one(disc: &BigInt) -> Self {
        Self::from_rational(Rational::one(), disc)
    }

    // Operands are already normalized, so results never need refolding.
    fn raw(rat: Rational, coef: Rational, disc: BigInt) -> Self {
        QuadraticSurd { rat, coef, disc }
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn coef(&self) -> &Rational {
        &self.coef
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.disc == other.disc {
            Ok(())
        } else {
            Err(Error::DiscriminantMismatch {
                left: self.disc.to_string(),
                right: other.disc.to_string(),
            })
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self::raw(
            &self.rat + &rhs.rat,
            &self.coef + &rhs.coef,
            self.disc.clone(),
        ))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self::raw(
            &self.rat - &rhs.rat,
            &self.coef - &rhs.coef,
            self.disc.clone(),
        ))
    }

    /// `(a + b√D)(c + d√D) = (ac + bdD) + (ad + bc)√D`
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        if self.coef.is_zero() {
            return Ok(rhs.scale(&self.rat));
        }
        if rhs.coef.is_zero() {
            return Ok(self.scale(&rhs.rat));
        }
        let d = Rational::from_integer(self.disc.clone());
        let rat = &self.rat * &rhs.rat + &self.coef * &rhs.coef * d;
        let coef = &self.rat * &rhs.coef + &self.coef * &rhs.rat;
        Ok(Self::raw(rat, coef, self.disc.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::raw(&self.rat * k, &self.coef * k, self.disc.clone())
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.rat.clone(), -&self.coef, self.disc.clone())
    }

    /// Field norm `x·conj(x) = a² − b²D`.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(self.disc.clone());
        &self.rat * &self.rat - &self.coef * &self.coef * d
    }

    pub fn inv(&self) -> Result<Self> {
        // The norm of a nonzero element vanishes only for a perfect-square
        // discriminant, and those never carry a surd part.
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = n.inv()?;
        Ok(self.conj().scale(&k))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.disc);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn as_rational(&self) -> Result<Rational> {
        if self.coef.is_zero() {
            Ok(self.rat.clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if !self.rat.is_zero() {
            write!(f, "{}", self.rat)?;
            if self.coef.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
        } else if self.coef.is_negative() {
            write!(f, "-")?;
        }
        let c = self.coef.abs();
        if c.is_one() {
            write!(f, "sqrt({})", self.disc)
        } else {
            write!(f, "{}*sqrt({})", c, self.disc)
        }
    }
}

// Operator forms are for values known to share a field (every value the
// engine builds from one `LucasParams`); they panic on a mismatch.
impl Add<&QuadraticSurd> for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn add(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.checked_add(rhs)
            .expect("operands share a discriminant")
    }
}

impl Sub<&QuadraticSurd> for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn sub(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.checked_sub(rhs)
            .expect("operands share a discriminant")
    }
}

impl Mul<&QuadraticSurd> for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.checked_mul(rhs)
            .expect("operands share a discriminant")
    }
}

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        QuadraticSurd::raw(-&self.rat, -&self.coef, self.disc.clone())
    }
}

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        -&self
    }
}
