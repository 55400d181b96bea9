//! The graded module AR(f) of Jacobian syzygies a·f_x + b·f_y + c·f_z = 0:
//! graded dimensions, the minimal syzygy degree mdr(f), the free / nearly
//! free classification against the Tjurina number, deterministic minimal
//! generators, the Saito determinant check, the generator relation with its
//! jumping point, and the Jacobian Hilbert function.

use std::collections::HashMap;
use std::fmt;

use crate::arrangement::{Arrangement, ProjPoint};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::poly::{monomial_basis, HomogPoly, Monomial, Var};
use crate::scalar::Field;

/// A verified Jacobian syzygy: the relation is checked exactly on
/// construction.
#[derive(Clone)]
pub struct Syzygy<K: Field> {
    degree: usize,
    components: [HomogPoly<K>; 3],
}

impl<K: Field> Syzygy<K> {
    pub fn new(f: &HomogPoly<K>, a: HomogPoly<K>, b: HomogPoly<K>, c: HomogPoly<K>) -> Result<Self> {
        let degree = a.degree();
        if b.degree() != degree || c.degree() != degree {
            return Err(Error::Inconsistency("syzygy components of mixed degree".into()));
        }
        let s = Self { degree, components: [a, b, c] };
        if !s.contract(f).is_zero() {
            return Err(Error::Inconsistency(
                "claimed syzygy does not annihilate the gradient".into(),
            ));
        }
        Ok(s)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[HomogPoly<K>; 3] {
        &self.components
    }

    /// a·f_x + b·f_y + c·f_z for this triple.
    pub fn contract(&self, f: &HomogPoly<K>) -> HomogPoly<K> {
        let mut acc = HomogPoly::zero(self.degree + f.degree() - 1);
        for (comp, v) in self.components.iter().zip(Var::ALL) {
            acc = acc.add(&comp.multiply(&f.partial_derivative(v)));
        }
        acc
    }

    fn scale_add(&self, factor: &HomogPoly<K>, acc: &mut [HomogPoly<K>; 3]) {
        for (a, c) in acc.iter_mut().zip(self.components.iter()) {
            *a = a.add(&factor.multiply(c));
        }
    }
}

impl<K: Field> fmt::Debug for Syzygy<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Syzygy[{}]({}, {}, {})",
            self.degree, self.components[0], self.components[1], self.components[2]
        )
    }
}

/// The matrix of (a,b,c) -> a·f_x + b·f_y + c·f_z from S_m^3 to S_{m+d-1}
/// over the fixed monomial bases. Columns are slot-major: all a-monomials,
/// then b, then c, each in graded-lex order.
fn jacobian_matrix<K: Field>(f: &HomogPoly<K>, m: usize) -> Matrix<K> {
    let d = f.degree();
    assert!(d >= 1);
    let partials = [
        f.partial_derivative(Var::X),
        f.partial_derivative(Var::Y),
        f.partial_derivative(Var::Z),
    ];
    let source = monomial_basis(m);
    let target = monomial_basis(m + d - 1);
    let target_index: HashMap<Monomial, usize> =
        target.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut matrix = Matrix::zero(target.len(), 3 * source.len());
    for (slot, partial) in partials.iter().enumerate() {
        for (j, mono) in source.iter().enumerate() {
            let col = slot * source.len() + j;
            for (t, coeff) in partial.terms() {
                let row = target_index[&mono.mul(t)];
                matrix.set(row, col, coeff.clone());
            }
        }
    }
    matrix
}

fn vec_to_syzygy<K: Field>(f: &HomogPoly<K>, m: usize, v: &[K]) -> Result<Syzygy<K>> {
    let basis = monomial_basis(m);
    debug_assert_eq!(v.len(), 3 * basis.len());
    let mut comps = Vec::with_capacity(3);
    for slot in 0..3 {
        comps.push(HomogPoly::from_terms(
            m,
            basis
                .iter()
                .enumerate()
                .map(|(i, &mono)| (mono, v[slot * basis.len() + i].clone())),
        ));
    }
    let [a, b, c]: [HomogPoly<K>; 3] = comps.try_into().unwrap();
    Syzygy::new(f, a, b, c)
}

fn syzygy_to_vec<K: Field>(s: &Syzygy<K>) -> Vec<K> {
    let basis = monomial_basis(s.degree());
    let mut v = Vec::with_capacity(3 * basis.len());
    for comp in s.components() {
        for mono in &basis {
            v.push(comp.coeff(mono));
        }
    }
    v
}

/// Dimension of AR(f)_m.
pub fn ar_dimension<K: Field>(f: &HomogPoly<K>, m: usize) -> usize {
    let matrix = jacobian_matrix(f, m);
    matrix.cols() - matrix.rank()
}

/// Deterministic basis of AR(f)_m (the right-kernel unit construction).
pub fn ar_kernel<K: Field>(f: &HomogPoly<K>, m: usize) -> Result<Vec<Syzygy<K>>> {
    jacobian_matrix(f, m)
        .kernel_basis()
        .iter()
        .map(|v| vec_to_syzygy(f, m, v))
        .collect()
}

/// The minimal degree of a Jacobian syzygy, searching degrees 1..=cap.
/// The default cap d-1 always terminates: the Koszul relations live there.
/// Pencils (which would give mdr 0) are reported as a distinct condition.
pub fn mdr<K: Field>(f: &HomogPoly<K>, cap: Option<usize>) -> Result<usize> {
    let d = f.degree();
    assert!(d >= 2, "mdr needs a product of at least two lines");
    if ar_dimension(f, 0) > 0 {
        return Err(Error::Pencil);
    }
    let cap = cap.unwrap_or(d - 1);
    for m in 1..=cap {
        if ar_dimension(f, m) > 0 {
            return Ok(m);
        }
    }
    Err(Error::CapExceeded { cap })
}

/// dim M(f)_k for the Jacobian algebra M(f) = S/(f_x, f_y, f_z).
pub fn jacobian_hilbert<K: Field>(f: &HomogPoly<K>, k: usize) -> usize {
    let d = f.degree();
    let dim_sk = (k + 1) * (k + 2) / 2;
    if k + 1 < d {
        return dim_sk;
    }
    dim_sk - jacobian_matrix(f, k + 1 - d).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeClass {
    Free { exponents: (usize, usize) },
    NearlyFree { exponents: (usize, usize) },
    Other,
}

impl fmt::Display for FreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeClass::Free { exponents: (a, b) } => write!(f, "Free({a},{b})"),
            FreeClass::NearlyFree { exponents: (a, b) } => write!(f, "NearlyFree({a},{b})"),
            FreeClass::Other => write!(f, "Other"),
        }
    }
}

/// Outcome of the τ-versus-mdr comparison, with the degree of the ideal
/// measuring the distance from freeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub mdr: usize,
    pub class: FreeClass,
    pub tau: u64,
    pub deg_i: u64,
}

/// Classifies the arrangement by exact comparison of the lattice Tjurina
/// number against (d-1)^2 - r(d-1-r) for r = mdr(f). The two inputs are
/// computed independently (combinatorics vs linear algebra).
pub fn classify<K: Field>(arr: &Arrangement<K>, cap: Option<usize>) -> Result<Classification> {
    let f = arr.defining_poly();
    let d = arr.degree();
    let r = mdr(f, cap)?;
    let tau = arr.tjurina();
    let bound = ((d - 1) * (d - 1) - r * (d - 1 - r)) as u64;
    if tau > bound {
        return Err(Error::Inconsistency(format!(
            "tau = {tau} exceeds the syzygy bound {bound}"
        )));
    }
    let deg_i = bound - tau;
    let class = if deg_i == 0 {
        if 2 * r >= d {
            return Err(Error::Inconsistency(format!(
                "free arrangement with 2r >= d (r={r}, d={d})"
            )));
        }
        // Generator accounting cross-check: AR = S(-d1) + S(-d2) graded.
        let (d1, d2) = (r, d - 1 - r);
        let expect_low = if d1 == d2 { 2 } else { 1 };
        let expect_high = if d1 == d2 {
            2
        } else {
            (d2 - d1 + 1) * (d2 - d1 + 2) / 2 + 1
        };
        if ar_dimension(f, d1) != expect_low || ar_dimension(f, d2) != expect_high {
            return Err(Error::Inconsistency(
                "free classification contradicts the graded dimensions".into(),
            ));
        }
        FreeClass::Free { exponents: (d1, d2) }
    } else if deg_i == 1 {
        if 2 * r > d {
            return Err(Error::Inconsistency(format!(
                "nearly free arrangement with 2r > d (r={r}, d={d})"
            )));
        }
        FreeClass::NearlyFree { exponents: (r, d - r) }
    } else {
        FreeClass::Other
    };
    Ok(Classification { mdr: r, class, tau, deg_i })
}

/// Highest generator degree for the two classified shapes.
fn generator_degrees(class: &FreeClass) -> Option<Vec<usize>> {
    match class {
        FreeClass::Free { exponents: (d1, d2) } => Some(vec![*d1, *d2]),
        FreeClass::NearlyFree { exponents: (d1, d2) } => Some(vec![*d1, *d2, *d2]),
        FreeClass::Other => None,
    }
}

/// Deterministic minimal generators of AR(f) for a free or nearly free
/// arrangement: per degree, the image of S_1 times the lower part is
/// extended to a basis of AR(f)_m by kernel-basis vectors in their fixed
/// order; the vectors that extend are the new generators.
pub fn minimal_generators<K: Field>(
    arr: &Arrangement<K>,
    classification: &Classification,
) -> Result<Vec<Syzygy<K>>> {
    let expected = generator_degrees(&classification.class).ok_or_else(|| {
        Error::NotApplicable(
            "minimal generators are only computed for free and nearly free arrangements".into(),
        )
    })?;
    let f = arr.defining_poly();
    let lowest = expected[0];
    let highest = *expected.last().unwrap();
    let mut generators: Vec<Syzygy<K>> = Vec::new();
    // Basis of the degree-(m-1) part of the submodule generated so far.
    let mut lower_basis: Vec<Syzygy<K>> = Vec::new();
    for m in lowest..=highest {
        let dim_m = monomial_basis(m).len();
        let mut echelon = Echelon::new(3 * dim_m);
        let mut current_basis: Vec<Syzygy<K>> = Vec::new();
        for s in &lower_basis {
            for v in Var::ALL {
                let shifted = Syzygy {
                    degree: m,
                    components: [
                        s.components[0].multiply(&HomogPoly::variable(v)),
                        s.components[1].multiply(&HomogPoly::variable(v)),
                        s.components[2].multiply(&HomogPoly::variable(v)),
                    ],
                };
                if echelon.insert(syzygy_to_vec(&shifted)) {
                    current_basis.push(shifted);
                }
            }
        }
        for s in ar_kernel(f, m)? {
            if echelon.insert(syzygy_to_vec(&s)) {
                generators.push(s.clone());
                current_basis.push(s);
            }
        }
        lower_basis = current_basis;
    }
    let mut got: Vec<usize> = generators.iter().map(Syzygy::degree).collect();
    got.sort_unstable();
    let mut want = expected.clone();
    want.sort_unstable();
    if got != want {
        return Err(Error::Inconsistency(format!(
            "generator degrees {got:?} do not match the classified shape {want:?}"
        )));
    }
    Ok(generators)
}

/// Result of the Saito determinant test det[(x,y,z); ρ1; ρ2] = q·f.
#[derive(Clone, Debug)]
pub enum SaitoOutcome<K: Field> {
    /// Degrees summed to d-1: the quotient is a scalar, nonzero exactly when
    /// the pair is a free basis.
    Scalar(K),
    /// The polynomial quotient otherwise.
    Quotient(HomogPoly<K>),
}

/// Computes the determinant of the Euler vector with two syzygies and
/// verifies that f divides it. Non-divisibility is an implementation fault.
pub fn saito_check<K: Field>(
    arr: &Arrangement<K>,
    s1: &Syzygy<K>,
    s2: &Syzygy<K>,
) -> Result<SaitoOutcome<K>> {
    let f = arr.defining_poly();
    let [a1, b1, c1] = s1.components();
    let [a2, b2, c2] = s2.components();
    let minor =
        |p: &HomogPoly<K>, q: &HomogPoly<K>, r: &HomogPoly<K>, s: &HomogPoly<K>| {
            p.multiply(s).sub(&q.multiply(r))
        };
    let det = HomogPoly::variable(Var::X)
        .multiply(&minor(b1, c1, b2, c2))
        .sub(&HomogPoly::variable(Var::Y).multiply(&minor(a1, c1, a2, c2)))
        .add(&HomogPoly::variable(Var::Z).multiply(&minor(a1, b1, a2, b2)));
    let quotient = det.div_exact(f).ok_or_else(|| {
        Error::Inconsistency("Saito determinant is not divisible by f".into())
    })?;
    if s1.degree() + s2.degree() == arr.degree() - 1 {
        Ok(SaitoOutcome::Scalar(quotient.coeff(&Monomial::one())))
    } else {
        Ok(SaitoOutcome::Quotient(quotient))
    }
}

/// The unique (up to scale) relation h1·ρ1 + h2·ρ2 + h3·ρ3 = 0 among the
/// minimal generators of a nearly free arrangement, together with the
/// jumping point cut out by the two linear coefficients.
#[derive(Clone, Debug)]
pub struct GeneratorRelation<K: Field> {
    pub h1: HomogPoly<K>,
    pub h2: HomogPoly<K>,
    pub h3: HomogPoly<K>,
    pub jumping_point: ProjPoint<K>,
    /// True exactly when 2·d1 < d, i.e. d1 < d2: then the jumping point does
    /// not depend on the generator choice.
    pub unique: bool,
}

pub fn generator_relation<K: Field>(
    arr: &Arrangement<K>,
    classification: &Classification,
    generators: &[Syzygy<K>],
) -> Result<GeneratorRelation<K>> {
    let FreeClass::NearlyFree { exponents: (d1, d2) } = classification.class else {
        return Err(Error::NotApplicable(
            "the generator relation exists only for nearly free arrangements".into(),
        ));
    };
    let [g1, g2, g3] = generators else {
        return Err(Error::Inconsistency("expected exactly three generators".into()));
    };
    debug_assert_eq!(g1.degree(), d1);
    debug_assert_eq!(g2.degree(), d2);
    debug_assert_eq!(g3.degree(), d2);
    let relation_degree = d2 + 1;
    let h1_degree = d2 + 1 - d1;
    let h1_basis = monomial_basis(h1_degree);
    let target = monomial_basis(relation_degree);
    let target_index: HashMap<Monomial, usize> =
        target.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let rows = 3 * target.len();
    let cols = h1_basis.len() + 6;
    let mut matrix = Matrix::zero(rows, cols);
    let mut fill = |col: usize, s: &Syzygy<K>, shift: &Monomial| {
        for (slot, comp) in s.components().iter().enumerate() {
            for (mono, coeff) in comp.terms() {
                let row = slot * target.len() + target_index[&mono.mul(shift)];
                matrix.set(row, col, coeff.clone());
            }
        }
    };
    for (j, mono) in h1_basis.iter().enumerate() {
        fill(j, g1, mono);
    }
    for (j, v) in Var::ALL.iter().enumerate() {
        fill(h1_basis.len() + j, g2, &Monomial::var(*v));
        fill(h1_basis.len() + 3 + j, g3, &Monomial::var(*v));
    }
    let kernel = matrix.kernel_basis();
    if kernel.len() != 1 {
        return Err(Error::Inconsistency(format!(
            "relation space in degree {relation_degree} has dimension {}, expected 1",
            kernel.len()
        )));
    }
    let v = &kernel[0];
    let h1 = HomogPoly::from_terms(
        h1_degree,
        h1_basis.iter().enumerate().map(|(i, &m)| (m, v[i].clone())),
    );
    let linear = |offset: usize| {
        HomogPoly::from_terms(
            1,
            Var::ALL
                .iter()
                .enumerate()
                .map(|(i, &var)| (Monomial::var(var), v[offset + i].clone())),
        )
    };
    let h2 = linear(h1_basis.len());
    let h3 = linear(h1_basis.len() + 3);

    // The relation must hold exactly.
    let mut acc = [
        HomogPoly::zero(relation_degree),
        HomogPoly::zero(relation_degree),
        HomogPoly::zero(relation_degree),
    ];
    g1.scale_add(&h1, &mut acc);
    g2.scale_add(&h2, &mut acc);
    g3.scale_add(&h3, &mut acc);
    if acc.iter().any(|p| !p.is_zero()) {
        return Err(Error::Inconsistency("generator relation failed to verify".into()));
    }

    // h2, h3 must be independent linear forms; their common zero is the
    // jumping point.
    let coeff3 = |h: &HomogPoly<K>| {
        [
            h.coeff(&Monomial::var(Var::X)),
            h.coeff(&Monomial::var(Var::Y)),
            h.coeff(&Monomial::var(Var::Z)),
        ]
    };
    let c2 = coeff3(&h2);
    let c3 = coeff3(&h3);
    let cross = [
        c2[1].clone() * &c3[2] - &(c2[2].clone() * &c3[1]),
        c2[2].clone() * &c3[0] - &(c2[0].clone() * &c3[2]),
        c2[0].clone() * &c3[1] - &(c2[1].clone() * &c3[0]),
    ];
    if cross.iter().all(|x| x.is_zero()) {
        return Err(Error::Inconsistency(
            "relation coefficients h2, h3 are linearly dependent".into(),
        ));
    }
    let [x, y, z] = cross;
    let jumping_point = ProjPoint::new(x, y, z)?;
    debug_assert!(h2.evaluate(jumping_point.coords())?.is_zero());
    debug_assert!(h3.evaluate(jumping_point.coords())?.is_zero());
    Ok(GeneratorRelation { h1, h2, h3, jumping_point, unique: 2 * d1 < arr.degree() })
}

/// Stability check of the Jacobian Hilbert function and the degree of the
/// associated ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegICheck {
    /// dim M(f)_s at s = 3d (equal at 3d + 1 by the stability check).
    pub stabilized: u64,
    /// Degrees s = 3d and 3d + 1 agree.
    pub stable: bool,
    /// deg I from the classification equals (d-1)^2 - r(d-1-r) minus the
    /// stabilized value.
    pub matches: bool,
}

/// Verifies deg I = (d-1)^2 - r(d-1-r) - dim M(f)_s with s far beyond the
/// stable range (s = 3d and 3d+1 must agree). Mismatch is a hard failure.
pub fn deg_i_crosscheck<K: Field>(
    arr: &Arrangement<K>,
    classification: &Classification,
) -> Result<DegICheck> {
    let f = arr.defining_poly();
    let d = arr.degree();
    let s = 3 * d;
    let v0 = jacobian_hilbert(f, s) as u64;
    let v1 = jacobian_hilbert(f, s + 1) as u64;
    let stable = v0 == v1;
    let r = classification.mdr;
    let bound = ((d - 1) * (d - 1) - r * (d - 1 - r)) as u64;
    let matches = bound >= v0 && classification.deg_i == bound - v0;
    let check = DegICheck { stabilized: v0, stable, matches };
    if !stable || !matches {
        return Err(Error::Inconsistency(format!(
            "Jacobian Hilbert cross-check failed: {check:?} against deg_i = {}",
            classification.deg_i
        )));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::LinearForm;
    use crate::scalar::Rational;

    type K = Rational;

    fn lf(a: i64, b: i64, c: i64) -> LinearForm<K> {
        LinearForm::new(K::from_int(a), K::from_int(b), K::from_int(c)).unwrap()
    }

    fn triangle() -> Arrangement<K> {
        Arrangement::new(vec![lf(1, 0, 0), lf(0, 1, 0), lf(0, 0, 1)]).unwrap()
    }

    #[test]
    fn pencil_of_two_lines_has_constant_syzygy() {
        // f = xy: f_z = 0, so (0,0,1) is a syzygy in degree 0.
        let f: HomogPoly<K> =
            HomogPoly::variable(Var::X).multiply(&HomogPoly::variable(Var::Y));
        assert_eq!(ar_dimension(&f, 0), 1);
        assert!(matches!(mdr(&f, None), Err(Error::Pencil)));
    }

    #[test]
    fn triangle_dimensions_and_witnesses() {
        let f = triangle().defining_poly().clone();
        assert_eq!(ar_dimension(&f, 0), 0);
        assert_eq!(ar_dimension(&f, 1), 2);
        for s in ar_kernel(&f, 1).unwrap() {
            assert!(s.contract(&f).is_zero());
        }
        assert_eq!(mdr(&f, None).unwrap(), 1);
    }

    #[test]
    fn triangle_classifies_free_1_1() {
        let arr = triangle();
        let c = classify(&arr, None).unwrap();
        assert_eq!(c.mdr, 1);
        assert_eq!(c.class, FreeClass::Free { exponents: (1, 1) });
        assert_eq!(c.tau, 3);
        assert_eq!(c.deg_i, 0);
        let gens = minimal_generators(&arr, &c).unwrap();
        assert_eq!(
            gens.iter().map(Syzygy::degree).collect::<Vec<_>>(),
            vec![1, 1]
        );
    }

    #[test]
    fn saito_on_the_paper_witness_pair() {
        // f = xyz with rho1 = (x,-y,0), rho2 = (0,y,-z):
        // det [[x,y,z],[x,-y,0],[0,y,-z]] = 3xyz by cofactor expansion.
        let arr = triangle();
        let f = arr.defining_poly();
        let x = HomogPoly::variable(Var::X);
        let y = HomogPoly::variable(Var::Y);
        let z = HomogPoly::variable(Var::Z);
        let s1 = Syzygy::new(f, x.clone(), y.neg(), HomogPoly::zero(1)).unwrap();
        let s2 = Syzygy::new(f, HomogPoly::zero(1), y.clone(), z.neg()).unwrap();
        match saito_check(&arr, &s1, &s2).unwrap() {
            SaitoOutcome::Scalar(c) => assert_eq!(c, K::from_int(3)),
            other => panic!("expected a scalar, got {other:?}"),
        }
    }

    #[test]
    fn jacobian_hilbert_small_degrees_and_stabilization() {
        let arr = triangle();
        let f = arr.defining_poly();
        assert_eq!(jacobian_hilbert(f, 0), 1);
        // M(xyz) = S/(yz, xz, xy): dimension 3 in every positive degree.
        for k in [1, 2, 5, 9, 10] {
            assert_eq!(jacobian_hilbert(f, k), 3, "k={k}");
        }
        let c = classify(&arr, None).unwrap();
        let check = deg_i_crosscheck(&arr, &c).unwrap();
        assert!(check.stable && check.matches);
        assert_eq!(check.stabilized, 3);
    }

    #[test]
    fn monotonicity_under_multiplication() {
        // dim AR(f)_{m+1} >= dim of the image of S_1 * AR(f)_m.
        let arr = triangle();
        let f = arr.defining_poly();
        for m in 1..4 {
            let lower = ar_kernel(f, m).unwrap();
            let mut echelon = Echelon::new(3 * monomial_basis(m + 1).len());
            let mut image = 0;
            for s in &lower {
                for v in Var::ALL {
                    let shifted = Syzygy {
                        degree: m + 1,
                        components: [
                            s.components[0].multiply(&HomogPoly::variable(v)),
                            s.components[1].multiply(&HomogPoly::variable(v)),
                            s.components[2].multiply(&HomogPoly::variable(v)),
                        ],
                    };
                    if echelon.insert(syzygy_to_vec(&shifted)) {
                        image += 1;
                    }
                }
            }
            assert!(ar_dimension(f, m + 1) >= image);
        }
    }
}
