//! Homogeneous polynomials in three variables over a [`Field`], with the
//! graded-sparse representation and the fixed graded-lexicographic monomial
//! order (x > y > z) that every linear-algebra layer indexes against.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// One of the three projective coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        })
    }
}

/// Exponent triple of a monomial x^a y^b z^c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: [u16; 3],
}

impl Monomial {
    pub fn new(a: u16, b: u16, c: u16) -> Self {
        Self { exps: [a, b, c] }
    }

    pub fn one() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [0; 3];
        exps[v.index()] = 1;
        Self { exps }
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: [
                self.exps[0] + other.exps[0],
                self.exps[1] + other.exps[1],
                self.exps[2] + other.exps[2],
            ],
        }
    }
}

/// Graded-lexicographic order with x > y > z: compare total degree first,
/// then exponent vectors lexicographically. Bigger means earlier in every
/// basis enumeration, so `Ord` here is the *reverse* enumeration order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, &e) in Var::ALL.iter().zip(self.exps.iter()) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of the given total degree in the fixed order
/// (graded-lex descending: x^m first, z^m last). Length is (m+1)(m+2)/2.
pub fn monomial_basis(m: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity((m + 1) * (m + 2) / 2);
    for a in (0..=m).rev() {
        for b in (0..=m - a).rev() {
            let c = m - a - b;
            out.push(Monomial::new(a as u16, b as u16, c as u16));
        }
    }
    out
}

/// A homogeneous polynomial: a degree tag plus a sparse term map with no
/// zero coefficients stored. The zero polynomial keeps its degree tag.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogPoly<K: Field> {
    degree: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> HomogPoly<K> {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn constant(value: K) -> Self {
        let mut p = Self::zero(0);
        p.add_term(Monomial::one(), value);
        p
    }

    pub fn variable(v: Var) -> Self {
        let mut p = Self::zero(1);
        p.add_term(Monomial::var(v), K::one());
        p
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &K)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: K) {
        debug_assert_eq!(m.degree(), self.degree, "term degree must match the grade");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = std::mem::replace(e.get_mut(), K::zero()) + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "grade mismatch in addition");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "grade mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &K) -> Self {
        if s.is_zero() {
            return Self::zero(self.degree);
        }
        Self {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.clone() * s))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    /// Exact product; degrees add.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1.clone() * c2);
            }
        }
        out
    }

    /// Product with a single monomial of the given degree.
    pub fn shift(&self, m: &Monomial) -> Self {
        Self {
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Exact formal partial derivative; the degree drops by one
    /// (zero polynomial of degree 0 when the input is constant).
    pub fn partial_derivative(&self, v: Var) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        let i = v.index();
        for (m, c) in self.terms() {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps;
            exps[i] -= 1;
            out.add_term(Monomial { exps }, c.clone() * &K::from_int(e as i64));
        }
        out
    }

    /// Exact evaluation at a representative of a projective point.
    pub fn evaluate(&self, point: &[K; 3]) -> Result<K> {
        if point.iter().all(|c| c.is_zero()) {
            return Err(Error::NotApplicable(
                "cannot evaluate at the zero triple".into(),
            ));
        }
        let mut acc = K::zero();
        for (m, c) in self.terms() {
            let mut term = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    term = term * &point[i];
                }
            }
            acc = acc + &term;
        }
        Ok(acc)
    }

    /// Quotient by a nonzero homogeneous divisor when the division is exact.
    /// Returns `None` when the divisor does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return (self.degree >= divisor.degree)
                .then(|| Self::zero(self.degree - divisor.degree));
        }
        if self.degree < divisor.degree {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.degree - divisor.degree);
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let (dm, dc) = (*dm, dc.clone());
        while let Some((rm, rc)) = rem.leading() {
            let exps = [
                rm.exps[0].checked_sub(dm.exps[0])?,
                rm.exps[1].checked_sub(dm.exps[1])?,
                rm.exps[2].checked_sub(dm.exps[2])?,
            ];
            let qm = Monomial { exps };
            let qc = rc.clone() / dc.clone();
            rem = rem.sub(&divisor.shift(&qm).scale(&qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

impl<K: Field> fmt::Display for HomogPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Print leading monomials first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for HomogPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogPoly[{}]({})", self.degree, self)
    }
}

/// A projective line a·x + b·y + c·z = 0, normalized so the first nonzero
/// coefficient is 1. Equality of lines is then literal equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm<K: Field> {
    coeffs: [K; 3],
}

impl<K: Field> LinearForm<K> {
    pub fn new(a: K, b: K, c: K) -> Result<Self> {
        let coeffs = [a, b, c];
        let lead = coeffs
            .iter()
            .find(|v| !v.is_zero())
            .ok_or(Error::ZeroLinearForm)?
            .clone();
        let inv = lead.try_inv()?;
        let normalized = [
            coeffs[0].clone() * &inv,
            coeffs[1].clone() * &inv,
            coeffs[2].clone() * &inv,
        ];
        Ok(Self { coeffs: normalized })
    }

    pub fn coeffs(&self) -> &[K; 3] {
        &self.coeffs
    }

    pub fn evaluate(&self, point: &[K; 3]) -> K {
        let mut acc = K::zero();
        for (c, p) in self.coeffs.iter().zip(point.iter()) {
            acc = acc + &(c.clone() * p);
        }
        acc
    }

    pub fn poly(&self) -> HomogPoly<K> {
        HomogPoly::from_terms(
            1,
            Var::ALL
                .iter()
                .zip(self.coeffs.iter())
                .map(|(v, c)| (Monomial::var(*v), c.clone())),
        )
    }
}

impl<K: Field> fmt::Display for LinearForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly())
    }
}

impl<K: Field> fmt::Debug for LinearForm<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({})", self)
    }
}

/// The product of the linear forms u - k·v for k = i..=j; degree j - i + 1.
pub fn g_range<K: Field>(i: i64, j: i64, u: Var, v: Var) -> Result<HomogPoly<K>> {
    if i > j {
        return Err(Error::ParameterRange(format!(
            "g range needs i <= j, got i={i}, j={j}"
        )));
    }
    assert_ne!(u, v, "g range needs two distinct variables");
    let mut acc = HomogPoly::constant(K::one());
    for k in i..=j {
        let factor = HomogPoly::from_terms(
            1,
            [
                (Monomial::var(u), K::one()),
                (Monomial::var(v), K::from_int(-k)),
            ],
        );
        acc = acc.multiply(&factor);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::Zero;

    type P = HomogPoly<Rational>;

    fn var(v: Var) -> P {
        P::variable(v)
    }

    #[test]
    fn basis_sizes_and_order() {
        assert_eq!(monomial_basis(0), vec![Monomial::one()]);
        assert_eq!(
            monomial_basis(1),
            vec![Monomial::var(Var::X), Monomial::var(Var::Y), Monomial::var(Var::Z)]
        );
        assert_eq!(monomial_basis(2).len(), 6);
        for m in 0..8 {
            assert_eq!(monomial_basis(m).len(), (m + 1) * (m + 2) / 2);
        }
    }

    #[test]
    fn simple_products() {
        let xy = var(Var::X).multiply(&var(Var::Y));
        assert_eq!(xy.degree(), 2);
        assert_eq!(xy.coeff(&Monomial::new(1, 1, 0)), Rational::from_int(1));

        // (x - y)(x + y) = x^2 - y^2
        let xm = var(Var::X).sub(&var(Var::Y));
        let xp = var(Var::X).add(&var(Var::Y));
        let p = xm.multiply(&xp);
        assert_eq!(p.coeff(&Monomial::new(2, 0, 0)), Rational::from_int(1));
        assert_eq!(p.coeff(&Monomial::new(0, 2, 0)), Rational::from_int(-1));
        assert_eq!(p.coeff(&Monomial::new(1, 1, 0)), Rational::from_int(0));
    }

    #[test]
    fn g_range_products_match_hand_expansion() {
        // Single factors from the degenerate range.
        let g11 = g_range::<Rational>(1, 1, Var::X, Var::Y).unwrap();
        assert_eq!(g11, var(Var::X).sub(&var(Var::Y)));
        let g55 = g_range::<Rational>(5, 5, Var::Y, Var::Z).unwrap();
        assert_eq!(
            g55.coeff(&Monomial::new(0, 0, 1)),
            Rational::from_int(-5)
        );

        // g_{2,3}(x,z) = (x-2z)(x-3z) = x^2 - 5xz + 6z^2, expanded by hand.
        let g23 = g_range::<Rational>(2, 3, Var::X, Var::Z).unwrap();
        let expected = P::from_terms(
            2,
            [
                (Monomial::new(2, 0, 0), Rational::from_int(1)),
                (Monomial::new(1, 0, 1), Rational::from_int(-5)),
                (Monomial::new(0, 0, 2), Rational::from_int(6)),
            ],
        );
        assert_eq!(g23, expected);

        // g_{1,1}(x,y) * g_{2,2}(x,z) = (x-y)(x-2z) = x^2 - xy - 2xz + 2yz.
        let p = g11.multiply(&g_range::<Rational>(2, 2, Var::X, Var::Z).unwrap());
        let expected = P::from_terms(
            2,
            [
                (Monomial::new(2, 0, 0), Rational::from_int(1)),
                (Monomial::new(1, 1, 0), Rational::from_int(-1)),
                (Monomial::new(1, 0, 1), Rational::from_int(-2)),
                (Monomial::new(0, 1, 1), Rational::from_int(2)),
            ],
        );
        assert_eq!(p, expected);

        assert!(g_range::<Rational>(3, 2, Var::X, Var::Y).is_err());
    }

    #[test]
    fn derivatives() {
        // d/dx (x^2 y) = 2xy, d/dz (xyz) = xy, d/dy (x^3 - 3xyz) = -3xz.
        let x2y = var(Var::X).multiply(&var(Var::X)).multiply(&var(Var::Y));
        let d = x2y.partial_derivative(Var::X);
        assert_eq!(d.coeff(&Monomial::new(1, 1, 0)), Rational::from_int(2));

        let xyz = var(Var::X).multiply(&var(Var::Y)).multiply(&var(Var::Z));
        assert_eq!(
            xyz.partial_derivative(Var::Z),
            var(Var::X).multiply(&var(Var::Y))
        );

        let x3 = var(Var::X).multiply(&var(Var::X)).multiply(&var(Var::X));
        let p = x3.sub(&xyz.scale(&Rational::from_int(3)));
        let d = p.partial_derivative(Var::Y);
        assert_eq!(d.coeff(&Monomial::new(1, 0, 1)), Rational::from_int(-3));
        assert_eq!(d.terms().count(), 1);
    }

    #[test]
    fn evaluation_at_points() {
        let one = Rational::from_int(1);
        let p = var(Var::X).sub(&var(Var::Y));
        assert!(p
            .evaluate(&[one.clone(), one.clone(), one.clone()])
            .unwrap()
            .is_zero());

        // x - 2y + z vanishes at (1:1:1).
        let q = P::from_terms(
            1,
            [
                (Monomial::var(Var::X), Rational::from_int(1)),
                (Monomial::var(Var::Y), Rational::from_int(-2)),
                (Monomial::var(Var::Z), Rational::from_int(1)),
            ],
        );
        assert!(q
            .evaluate(&[one.clone(), one.clone(), one.clone()])
            .unwrap()
            .is_zero());

        let xyz = var(Var::X).multiply(&var(Var::Y)).multiply(&var(Var::Z));
        assert!(xyz
            .evaluate(&[one.clone(), one.clone(), Rational::from_int(0)])
            .unwrap()
            .is_zero());

        assert!(p
            .evaluate(&[Rational::from_int(0), Rational::from_int(0), Rational::from_int(0)])
            .is_err());
    }

    #[test]
    fn leibniz_and_euler_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(401);
        for _ in 0..25 {
            let deg_p = rng.gen_range(1..=3);
            let deg_q = rng.gen_range(1..=3);
            let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng, deg: usize| {
                P::from_terms(
                    deg,
                    monomial_basis(deg)
                        .into_iter()
                        .map(|m| (m, Rational::from_int(rng.gen_range(-4..=4)))),
                )
            };
            let p = rand_poly(&mut rng, deg_p);
            let q = rand_poly(&mut rng, deg_q);
            let prod = p.multiply(&q);
            for v in Var::ALL {
                let lhs = prod.partial_derivative(v);
                let rhs = p
                    .partial_derivative(v)
                    .multiply(&q)
                    .add(&p.multiply(&q.partial_derivative(v)));
                assert_eq!(lhs, rhs, "Leibniz rule failed for {v}");
            }
            // Euler: x p_x + y p_y + z p_z = deg(p) * p, exactly.
            let mut euler = HomogPoly::zero(prod.degree());
            for v in Var::ALL {
                euler = euler.add(&P::variable(v).multiply(&prod.partial_derivative(v)));
            }
            assert_eq!(euler, prod.scale(&Rational::from_int(prod.degree() as i64)));
        }
    }

    #[test]
    fn exact_division() {
        let f = var(Var::X).multiply(&var(Var::Y)).multiply(&var(Var::Z));
        let tripled = f.scale(&Rational::from_int(3));
        let q = tripled.div_exact(&f).unwrap();
        assert_eq!(q, P::constant(Rational::from_int(3)));

        let xy = var(Var::X).multiply(&var(Var::Y));
        assert!(xy.div_exact(&var(Var::Z)).is_none());

        let g = g_range::<Rational>(1, 3, Var::X, Var::Y).unwrap();
        let h = g_range::<Rational>(1, 2, Var::X, Var::Y).unwrap();
        let q = g.div_exact(&h).unwrap();
        assert_eq!(q, g_range::<Rational>(3, 3, Var::X, Var::Y).unwrap());
    }

    #[test]
    fn linear_forms_normalize() {
        let l = LinearForm::new(
            Rational::from_int(-2),
            Rational::from_int(4),
            Rational::from_int(0),
        )
        .unwrap();
        assert_eq!(l.coeffs()[0], Rational::from_int(1));
        assert_eq!(l.coeffs()[1], Rational::from_int(-2));
        // Same projective line, same normal form.
        let l2 = LinearForm::new(
            Rational::from_int(1),
            Rational::from_int(-2),
            Rational::from_int(0),
        )
        .unwrap();
        assert_eq!(l, l2);
        assert!(LinearForm::<Rational>::new(
            Rational::from_int(0),
            Rational::from_int(0),
            Rational::from_int(0)
        )
        .is_err());
    }
}
