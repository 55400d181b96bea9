//! Elements of a cyclotomic field Q(zeta_n), stored in the power basis
//! 1, zeta, ..., zeta^(phi(n)-1) modulo the n-th cyclotomic polynomial.
//!
//! Purely rational values are kept at conductor 1, so arithmetic between a
//! rational constant and a conductor-n element lifts the constant on the fly.
//! Two elements with distinct conductors >= 3 never meet in a well-formed
//! arrangement; such a mix is a programming error and panics.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::univar::{self, cyclotomic_polynomial, totient};
use crate::scalar::Rational;

fn modulus(conductor: u32) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<Rational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(conductor)
        .or_insert_with(|| {
            cyclotomic_polynomial(conductor)
                .into_iter()
                .map(Rational::from)
                .collect()
        })
        .clone()
}

/// An element of Q or of a fixed cyclotomic extension Q(zeta_n).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    /// Builds an element from power-basis coordinates, reducing mod the
    /// cyclotomic polynomial and demoting rational values to conductor 1.
    pub fn from_coords(conductor: u32, coords: Vec<Rational>) -> Self {
        assert!(conductor >= 1);
        let phi = totient(conductor) as usize;
        let mut reduced = if coords.len() > phi {
            univar::rem_monic(&coords, &modulus(conductor))
        } else {
            coords
        };
        reduced.resize(phi.max(1), Rational::zero());
        Self { conductor, coords: reduced }.canonical()
    }

    pub fn from_rational(q: Rational) -> Self {
        Self { conductor: 1, coords: vec![q] }
    }

    /// zeta_n as an element of Q(zeta_n). Orders 1 and 2 are rational.
    pub fn root_of_unity(order: u32) -> Result<Self> {
        match order {
            0 => Err(Error::NoSuchRoot(0)),
            1 => Ok(Self::one()),
            2 => Ok(Self::from_rational(-Rational::one())),
            n => {
                let mut coords = vec![Rational::zero(); totient(n) as usize];
                if coords.len() == 1 {
                    // phi(n) = 1 only for n <= 2, unreachable here
                    unreachable!("totient({n}) = 1");
                }
                coords[1] = Rational::one();
                Ok(Self { conductor: n, coords })
            }
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.conductor == 1).then(|| &self.coords[0])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn canonical(mut self) -> Self {
        if self.conductor > 1 && self.coords[1..].iter().all(|c| c.is_zero()) {
            self.coords.truncate(1);
            self.conductor = 1;
        }
        self
    }

    fn lift(&self, conductor: u32) -> Vec<Rational> {
        debug_assert!(self.conductor == 1 || self.conductor == conductor);
        let mut coords = self.coords.clone();
        coords.resize(totient(conductor) as usize, Rational::zero());
        coords
    }

    fn join_conductor(&self, other: &Self) -> u32 {
        match (self.conductor, other.conductor) {
            (1, n) | (n, 1) => n,
            (n, m) if n == m => n,
            (n, m) => panic!("mixed cyclotomic conductors {n} and {m}"),
        }
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(Rational::one() / &self.coords[0]));
        }
        // Extended Euclid of the representative against the minimal polynomial:
        // s * self + t * Phi_n = 1, so s is the inverse mod Phi_n.
        let phi_n = modulus(self.conductor);
        let rep = univar::trim(self.coords.clone());
        let (g, s, _t) = univar::xgcd(&rep, &phi_n);
        debug_assert_eq!(g.len(), 1, "cyclotomic polynomial must be coprime to any nonzero element");
        Ok(Self::from_coords(self.conductor, s))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; {})", self.conductor, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::scalar::grammar::render_cyclotomic(self))
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    fn is_one(&self) -> bool {
        self.conductor == 1 && self.coords[0].is_one()
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in &mut self.coords {
            *c = -std::mem::take(c);
        }
        self
    }
}

fn add_impl(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    let n = a.join_conductor(b);
    let mut coords = a.lift(n);
    for (c, d) in coords.iter_mut().zip(b.lift(n)) {
        *c += d;
    }
    Cyclotomic { conductor: n, coords }.canonical()
}

fn sub_impl(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    let n = a.join_conductor(b);
    let mut coords = a.lift(n);
    for (c, d) in coords.iter_mut().zip(b.lift(n)) {
        *c -= d;
    }
    Cyclotomic { conductor: n, coords }.canonical()
}

fn mul_impl(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    let n = a.join_conductor(b);
    if n == 1 {
        return Cyclotomic::from_rational(&a.coords[0] * &b.coords[0]);
    }
    // Fast paths for rational factors keep the common case cheap.
    if a.conductor == 1 {
        let q = &a.coords[0];
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        let coords = b.coords.iter().map(|c| c * q).collect();
        return Cyclotomic { conductor: n, coords }.canonical();
    }
    if b.conductor == 1 {
        return mul_impl(b, a);
    }
    let product = univar::mul(&a.coords, &b.coords);
    Cyclotomic::from_coords(n, product)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $impl_fn(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                $impl_fn(&self, rhs)
            }
        }
        impl std::ops::$trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                $impl_fn(self, rhs)
            }
        }
        impl std::ops::$trait<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                $impl_fn(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl std::ops::Div for Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: Cyclotomic) -> Cyclotomic {
        let inv = rhs.try_inv().expect("division by zero");
        mul_impl(&self, &inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn zeta4_inverse_is_minus_zeta4() {
        // zeta_4^2 = -1, so zeta_4 * (-zeta_4) = 1; checked via extended gcd.
        let z = Cyclotomic::root_of_unity(4).unwrap();
        let inv = z.try_inv().unwrap();
        assert_eq!(inv, -z.clone());
        assert!((z * inv).is_one());
    }

    #[test]
    fn one_plus_zeta3_inverse() {
        // (1 + zeta_3)(-zeta_3) = -zeta_3 - zeta_3^2 = 1 from 1 + zeta + zeta^2 = 0.
        let z = Cyclotomic::root_of_unity(3).unwrap();
        let a = Cyclotomic::one() + &z;
        let inv = a.try_inv().unwrap();
        assert_eq!(inv, -z.clone());
        assert!((a * inv).is_one());
    }

    #[test]
    fn root_powers_wrap_to_one() {
        for n in [3u32, 4, 5, 6, 8, 12] {
            let z = Cyclotomic::root_of_unity(n).unwrap();
            let mut p = Cyclotomic::one();
            for _ in 0..n {
                p = p * &z;
            }
            assert!(p.is_one(), "zeta_{n}^{n} != 1");
        }
    }

    #[test]
    fn minimal_polynomial_vanishes_at_root() {
        for n in [3u32, 4, 5, 6] {
            let z = Cyclotomic::root_of_unity(n).unwrap();
            let phi = cyclotomic_polynomial(n);
            let mut acc = Cyclotomic::zero();
            let mut pw = Cyclotomic::one();
            for c in phi {
                acc = acc + Cyclotomic::from_rational(Rational::from(c)) * &pw;
                pw = pw * &z;
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) != 0");
        }
    }

    #[test]
    fn rational_demotion_is_canonical() {
        let z = Cyclotomic::root_of_unity(6).unwrap();
        // zeta_6 + zeta_6^5 = 1 (the two primitive 6th roots sum to 1).
        let mut z5 = Cyclotomic::one();
        for _ in 0..5 {
            z5 = z5 * &z;
        }
        let s = z.clone() + z5;
        assert_eq!(s.conductor(), 1);
        assert_eq!(s.as_rational(), Some(&q(1, 1)));
        assert_eq!(s, Cyclotomic::one());
    }

    #[test]
    fn division_by_zero_reports_error() {
        assert!(matches!(Cyclotomic::zero().try_inv(), Err(Error::DivisionByZero)));
    }
}
