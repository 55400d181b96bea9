//! Dense univariate polynomial helpers used by the cyclotomic field layer.
//!
//! Polynomials are coefficient vectors in ascending degree with no trailing
//! zeros (the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::Rational;

pub(crate) fn trim<T: Zero>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

pub(crate) fn degree<T>(p: &[T]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn mul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

/// Remainder of `p` modulo a monic divisor.
pub(crate) fn rem_monic(p: &[Rational], divisor: &[Rational]) -> Vec<Rational> {
    assert!(
        divisor.last().is_some_and(|c| c.is_one()),
        "divisor must be monic"
    );
    let d = divisor.len() - 1;
    let mut r: Vec<Rational> = p.to_vec();
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - d;
        for (k, c) in divisor[..d].iter().enumerate() {
            let sub = &lead * c;
            r[shift + k] -= sub;
        }
    }
    trim(r)
}

/// Quotient and remainder by an arbitrary nonzero divisor over the rationals.
pub(crate) fn divrem(p: &[Rational], divisor: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = degree(divisor).expect("division by the zero polynomial");
    let lead = divisor[dd].clone();
    let mut r: Vec<Rational> = p.to_vec();
    let mut q = vec![Rational::zero(); p.len().saturating_sub(dd)];
    while degree(&r).is_some_and(|dr| dr >= dd) {
        let dr = r.len() - 1;
        let coeff = &r[dr] / &lead;
        let shift = dr - dd;
        q[shift] = coeff.clone();
        for (k, c) in divisor.iter().enumerate() {
            let sub = &coeff * c;
            r[shift + k] -= sub;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Extended Euclid: returns (g, s, t) with s·p + t·q = g, g the monic gcd.
pub(crate) fn xgcd(p: &[Rational], q: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let one = || vec![Rational::one()];
    let (mut r0, mut r1) = (p.to_vec(), q.to_vec());
    let (mut s0, mut s1) = (one(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one());
    while !r1.is_empty() {
        let (qt, r2) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&qt, &s1));
        let t2 = sub(&t0, &mul(&qt, &t1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // Normalize the gcd to be monic.
    if let Some(d) = degree(&r0) {
        let lead = r0[d].clone();
        if !lead.is_one() {
            for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
                *c /= &lead;
            }
        }
    }
    (r0, s0, t0)
}

pub(crate) fn sub(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut out = p.to_vec();
    if out.len() < q.len() {
        out.resize(q.len(), Rational::zero());
    }
    for (o, b) in out.iter_mut().zip(q.iter()) {
        *o -= b;
    }
    trim(out)
}

fn int_mul(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Exact division in Z[t]; panics if the division is not exact.
fn int_div_exact(p: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let dd = divisor.len() - 1;
    let lead = divisor[dd].clone();
    let mut r: Vec<BigInt> = p.to_vec();
    let mut q = vec![BigInt::zero(); p.len() - dd];
    for shift in (0..=p.len() - 1 - dd).rev() {
        let top = r[shift + dd].clone();
        if top.is_zero() {
            continue;
        }
        let (coeff, rem) = num_integer::Integer::div_rem(&top, &lead);
        assert!(rem.is_zero(), "inexact leading coefficient");
        for (k, c) in divisor.iter().enumerate() {
            let sub = &coeff * c;
            r[shift + k] -= sub;
        }
        q[shift] = coeff;
    }
    assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    q
}

/// Euler totient.
pub fn totient(n: u32) -> u32 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            phi = phi / p * (p - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        phi = phi / m * (m - 1);
    }
    phi
}

/// The n-th cyclotomic polynomial as ascending integer coefficients,
/// obtained by exact division of t^n - 1 by the product of the
/// cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    let mut divisor_product = vec![BigInt::one()];
    for d in 1..n {
        if n % d == 0 {
            divisor_product = int_mul(&divisor_product, &cyclotomic_polynomial(d));
        }
    }
    let mut tn = vec![BigInt::zero(); n as usize + 1];
    tn[0] = BigInt::from(-1);
    tn[n as usize] = BigInt::one();
    let result = int_div_exact(&tn, &divisor_product);
    debug_assert_eq!(result.len() as u32 - 1, totient(n));
    debug_assert!(result.last().unwrap().is_one());
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(BigInt::from(n))
    }

    #[test]
    fn cyclotomic_base_cases() {
        // n = 1 -> t - 1 and n = 2 -> t + 1 are forced by (t^2-1)/(t-1).
        assert_eq!(cyclotomic_polynomial(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn cyclotomic_six_by_independent_division() {
        // Oracle: divide t^6 - 1 by phi_1 * phi_2 * phi_3 using the rational
        // divrem routine and compare against the production path.
        let to_q = |v: Vec<BigInt>| v.into_iter().map(Rational::from).collect::<Vec<_>>();
        let phi123 = mul(
            &mul(&to_q(cyclotomic_polynomial(1)), &to_q(cyclotomic_polynomial(2))),
            &to_q(cyclotomic_polynomial(3)),
        );
        let mut t6 = vec![Rational::zero(); 7];
        t6[0] = q(-1);
        t6[6] = q(1);
        let (quot, rem) = divrem(&t6, &phi123);
        assert!(rem.is_empty());
        assert_eq!(quot, vec![q(1), q(-1), q(1)]); // t^2 - t + 1
        assert_eq!(to_q(cyclotomic_polynomial(6)), quot);
    }

    #[test]
    fn degrees_match_totient() {
        for n in 1..=30 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, totient(n), "n={n}");
        }
    }

    #[test]
    fn xgcd_bezout_identity() {
        let p = vec![q(2), q(0), q(1)]; // t^2 + 2
        let f = vec![q(1), q(1), q(1)]; // t^2 + t + 1
        let (g, s, t) = xgcd(&p, &f);
        assert_eq!(g, vec![q(1)]);
        let lhs = sub(&mul(&s, &p), &mul(&mul(&t, &f), &[q(-1)]));
        assert_eq!(lhs, g);
    }
}
