//! Exact scalar arithmetic: arbitrary-precision rationals and cyclotomic
//! field elements, behind one [`Field`] trait so the polynomial, linear
//! algebra and arrangement layers are generic over the coefficient field.

mod cyclotomic;
pub(crate) mod grammar;
pub mod univar;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use cyclotomic::Cyclotomic;
pub use univar::{cyclotomic_polynomial, totient};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar. Kept reduced with positive
/// denominator by construction, so equality and hashing are canonical.
pub type Rational = num_rational::BigRational;

/// Which coefficient field an arrangement lives in. Mixed-field data is
/// rejected when files are loaded, so one descriptor covers a whole
/// arrangement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    /// Q(zeta_n) for the stored conductor n.
    Cyclotomic(u32),
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "rational"),
            FieldKind::Cyclotomic(n) => write!(f, "cyclotomic {n}"),
        }
    }
}

/// An exact computable field. All operations are total and exact apart from
/// inversion of zero; nothing here is approximate.
pub trait Field:
    Sized
    + Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse; `Err(DivisionByZero)` on zero.
    fn try_inv(&self) -> Result<Self>;

    fn from_int(n: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// The value as a rational number when it lies in Q.
    fn to_rational(&self) -> Option<Rational>;

    /// A primitive root of unity of the given order, when the field has one.
    fn root_of_unity(order: u32) -> Result<Self>;

    /// Conductor of the smallest cyclotomic field containing the value
    /// (1 for rationals).
    fn conductor(&self) -> u32;

    /// Parses the textual scalar grammar. `conductor` interprets the token
    /// `w` as zeta_n; rational parsing rejects `w` outright.
    fn parse_scalar(text: &str, conductor: u32) -> Result<Self>;

    /// Canonical, whitespace-free rendering in the same grammar.
    fn render(&self) -> String;

    /// A nonzero factor that rescales a matrix row to small representatives
    /// (integral entries with unit content); `None` for an all-zero row.
    /// Exact results never depend on this hint.
    fn row_scale(row: &[Self]) -> Option<Self>;
}

fn rational_row_scale<'a>(values: impl Iterator<Item = &'a Rational> + Clone) -> Option<Rational> {
    let mut den_lcm = BigInt::one();
    for v in values.clone() {
        if !v.denom().is_one() {
            den_lcm = den_lcm.lcm(v.denom());
        }
    }
    let mut num_gcd = BigInt::zero();
    for v in values {
        if v.is_zero() {
            continue;
        }
        num_gcd = num_gcd.gcd(v.numer());
        if num_gcd.is_one() {
            break;
        }
    }
    if num_gcd.is_zero() {
        return None;
    }
    if num_gcd.is_one() && den_lcm.is_one() {
        return None;
    }
    Some(Rational::new(den_lcm, num_gcd))
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_int(n: i64) -> Self {
        Rational::from(BigInt::from(n))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn root_of_unity(order: u32) -> Result<Self> {
        match order {
            1 => Ok(Self::one()),
            2 => Ok(-Self::one()),
            n => Err(Error::NoSuchRoot(n)),
        }
    }

    fn conductor(&self) -> u32 {
        1
    }

    fn parse_scalar(text: &str, _conductor: u32) -> Result<Self> {
        grammar::parse_rational(text)
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn row_scale(row: &[Self]) -> Option<Self> {
        rational_row_scale(row.iter())
    }
}

impl Field for Cyclotomic {
    fn try_inv(&self) -> Result<Self> {
        Cyclotomic::try_inv(self)
    }

    fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(Rational::from(BigInt::from(n)))
    }

    fn from_rational(q: &Rational) -> Self {
        Cyclotomic::from_rational(q.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        self.as_rational().cloned()
    }

    fn root_of_unity(order: u32) -> Result<Self> {
        Cyclotomic::root_of_unity(order)
    }

    fn conductor(&self) -> u32 {
        Cyclotomic::conductor(self)
    }

    fn parse_scalar(text: &str, conductor: u32) -> Result<Self> {
        grammar::parse_cyclotomic(text, conductor)
    }

    fn render(&self) -> String {
        grammar::render_cyclotomic(self)
    }

    fn row_scale(row: &[Self]) -> Option<Self> {
        rational_row_scale(row.iter().flat_map(|e| e.coords().iter()))
            .map(Cyclotomic::from_rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse() {
        let q = Rational::new(BigInt::from(2), BigInt::from(3));
        assert_eq!(q.try_inv().unwrap(), Rational::new(BigInt::from(3), BigInt::from(2)));
        assert!(Rational::zero().try_inv().is_err());
    }

    #[test]
    fn row_scale_clears_denominators_and_content() {
        let row = vec![
            Rational::new(BigInt::from(4), BigInt::from(6)),
            Rational::new(BigInt::from(-8), BigInt::from(3)),
            Rational::zero(),
        ];
        let s = Rational::row_scale(&row).unwrap();
        let scaled: Vec<Rational> = row.iter().map(|v| v * &s).collect();
        assert!(scaled.iter().all(|v| v.denom().is_one()));
        let g = scaled
            .iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()));
        assert!(g.is_one());
    }

    #[test]
    fn row_scale_none_for_zero_row() {
        assert!(Rational::row_scale(&[Rational::zero(), Rational::zero()]).is_none());
        assert!(Cyclotomic::row_scale(&[Cyclotomic::zero()]).is_none());
    }
}
