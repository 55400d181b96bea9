//! Deterministic constructors for the example families used as the
//! regression corpus. Each constructor checks the intersection pattern it
//! promises and fails loudly instead of silently producing a different
//! lattice. Genericity in the L and two-pencil families is realized by
//! explicit coefficient schemes (moment curve, shifted pencils) and then
//! verified.

use crate::arrangement::{Arrangement, FieldArrangement, ProjPoint, Solvability};
use crate::error::{Error, Result};
use crate::poly::LinearForm;
use crate::scalar::{Cyclotomic, Field, Rational};

fn line<K: Field>(a: i64, b: i64, c: i64) -> LinearForm<K> {
    LinearForm::new(K::from_int(a), K::from_int(b), K::from_int(c)).expect("nonzero line")
}

fn fail(family: &str, detail: impl Into<String>) -> Error {
    Error::GenericityFailure { family: family.to_string(), detail: detail.into() }
}

fn multiplicity_at<K: Field>(arr: &Arrangement<K>, p: &ProjPoint<K>) -> Option<usize> {
    arr.intersection_lattice()
        .points
        .iter()
        .find(|ip| &ip.point == p)
        .map(|ip| ip.multiplicity())
}

fn is_modular_at<K: Field>(arr: &Arrangement<K>, p: &ProjPoint<K>) -> bool {
    arr.modular_points().iter().any(|ip| &ip.point == p)
}

fn has_nearly_modular_pair<K: Field>(
    arr: &Arrangement<K>,
    p: &ProjPoint<K>,
    node: &ProjPoint<K>,
) -> bool {
    let lattice = arr.intersection_lattice();
    lattice.nearly_modular.iter().any(|nm| {
        &lattice.points[nm.point].point == p && &lattice.points[nm.node].point == node
    })
}

/// Lines of x·y·z·(x^m - y^m)(x^m - z^m)(y^m - z^m) = 0 over a field with a
/// primitive m-th root of unity: 3m + 3 lines.
fn full_monomial_lines<K: Field>(m: u32) -> Result<Vec<LinearForm<K>>> {
    let zeta = K::root_of_unity(m)?;
    let mut lines = vec![line(1, 0, 0), line(0, 1, 0), line(0, 0, 1)];
    for (u, v) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let mut power = K::one();
        for _ in 0..m {
            let mut coeffs = [K::zero(), K::zero(), K::zero()];
            coeffs[u] = K::one();
            coeffs[v] = -power.clone();
            let [a, b, c] = coeffs;
            lines.push(LinearForm::new(a, b, c)?);
            power = power * &zeta;
        }
    }
    Ok(lines)
}

fn verify_full_monomial<K: Field>(arr: &Arrangement<K>, m: u32) -> Result<()> {
    let lattice = arr.intersection_lattice();
    if lattice.solvability != Solvability::Supersolvable {
        return Err(fail("full_monomial", format!("expected supersolvable, got {}", lattice.solvability)));
    }
    let want = (m + 2) as usize;
    if !lattice
        .modular_points
        .iter()
        .all(|&i| lattice.points[i].multiplicity() == want)
        || lattice.modular_points.is_empty()
    {
        return Err(fail("full_monomial", format!("modular points of multiplicity != {want}")));
    }
    Ok(())
}

/// The full monomial family: supersolvable and free. Rational for m <= 2,
/// cyclotomic of conductor m beyond.
pub fn full_monomial(m: u32) -> Result<FieldArrangement> {
    if m < 1 {
        return Err(Error::ParameterRange("full_monomial needs m >= 1".into()));
    }
    if m <= 2 {
        let arr = Arrangement::new(full_monomial_lines::<Rational>(m)?)?;
        verify_full_monomial(&arr, m)?;
        Ok(FieldArrangement::Rational(arr))
    } else {
        let arr = Arrangement::new(full_monomial_lines::<Cyclotomic>(m)?)?;
        verify_full_monomial(&arr, m)?;
        Ok(FieldArrangement::Cyclotomic(m, arr))
    }
}

fn monomial_lines<K: Field>(m: u32) -> Result<Vec<LinearForm<K>>> {
    Ok(full_monomial_lines::<K>(m)?.split_off(3))
}

fn verify_monomial<K: Field>(arr: &Arrangement<K>, m: u32) -> Result<()> {
    let lattice = arr.intersection_lattice();
    if m == 2 {
        // The 6-line monomial arrangement is supersolvable.
        if lattice.solvability != Solvability::Supersolvable {
            return Err(fail("monomial", "expected the m = 2 case to be supersolvable"));
        }
        return Ok(());
    }
    if !lattice.modular_points.is_empty() {
        return Err(fail("monomial", "expected no modular points"));
    }
    if !lattice
        .multiplicity_counts
        .keys()
        .all(|&k| k == 3 || k == m as usize)
    {
        return Err(fail("monomial", "multiplicities other than 3 and m"));
    }
    Ok(())
}

/// The monomial family (x^m - y^m)(x^m - z^m)(y^m - z^m) = 0: 3m lines,
/// free, with no modular points for m >= 3.
pub fn monomial(m: u32) -> Result<FieldArrangement> {
    if m < 2 {
        return Err(Error::ParameterRange("monomial needs m >= 2".into()));
    }
    if m == 2 {
        let arr = Arrangement::new(monomial_lines::<Rational>(m)?)?;
        verify_monomial(&arr, m)?;
        Ok(FieldArrangement::Rational(arr))
    } else {
        let arr = Arrangement::new(monomial_lines::<Cyclotomic>(m)?)?;
        verify_monomial(&arr, m)?;
        Ok(FieldArrangement::Cyclotomic(m, arr))
    }
}

/// An arrangement with a single point of multiplicity m and only double
/// points elsewhere: m concurrent lines through (0:0:1) plus d - m lines on
/// moment-curve coefficients z - jx - j^2 y. The shape is verified.
pub fn l_family(d: u32, m: u32) -> Result<Arrangement<Rational>> {
    if !(d >= 4 && 3 <= m && m <= d - 1) {
        return Err(Error::ParameterRange(format!(
            "L family needs 3 <= m <= d-1 and d >= 4, got d={d}, m={m}"
        )));
    }
    let mut lines = Vec::new();
    for k in 1..=m as i64 {
        lines.push(line::<Rational>(-k, 1, 0)); // y - kx
    }
    for j in 1..=(d - m) as i64 {
        lines.push(line::<Rational>(-j, -j * j, 1)); // z - jx - j^2 y
    }
    let arr = Arrangement::new(lines)?;
    let lattice = arr.intersection_lattice();
    let center = ProjPoint::<Rational>::from_ints(0, 0, 1);
    for ip in &lattice.points {
        let k = ip.multiplicity();
        if ip.point == center {
            if k != m as usize {
                return Err(fail("L", format!("center has multiplicity {k}, wanted {m}")));
            }
        } else if k != 2 {
            return Err(fail("L", format!("unexpected point {} of multiplicity {k}", ip.point)));
        }
    }
    Ok(arr)
}

/// The two-modular-point family x · g(x,y) · g(x,z): d = m1 + m2 - 1 lines
/// with modular points of multiplicities m1 and m2; free.
pub fn hat_l(m1: u32, m2: u32) -> Result<Arrangement<Rational>> {
    if !(2 <= m1 && m1 <= m2) {
        return Err(Error::ParameterRange(format!(
            "hat_L needs 2 <= m1 <= m2, got ({m1}, {m2})"
        )));
    }
    let (d1, d2) = (m1 - 1, m2 - 1);
    let mut lines = vec![line::<Rational>(1, 0, 0)];
    for k in 1..=d1 as i64 {
        lines.push(line(1, -k, 0)); // x - ky
    }
    for k in 1..=d2 as i64 {
        lines.push(line(1, 0, -k)); // x - kz
    }
    let arr = Arrangement::new(lines)?;
    let p1 = ProjPoint::<Rational>::from_ints(0, 0, 1);
    let p2 = ProjPoint::<Rational>::from_ints(0, 1, 0);
    for (p, want) in [(&p1, m1 as usize), (&p2, m2 as usize)] {
        if multiplicity_at(&arr, p) != Some(want) || !is_modular_at(&arr, p) {
            return Err(fail("hat_L", format!("{p} is not modular of multiplicity {want}")));
        }
    }
    Ok(arr)
}

/// Two pencils in general position: m1 lines through (0:0:1) and m2 lines
/// through (0:1:0), all cross intersections distinct nodes (verified).
pub fn tilde_a(m1: u32, m2: u32) -> Result<Arrangement<Rational>> {
    if !(2 <= m1 && m1 <= m2) {
        return Err(Error::ParameterRange(format!(
            "tilde_A needs 2 <= m1 <= m2, got ({m1}, {m2})"
        )));
    }
    let mut lines = Vec::new();
    for k in 1..=m1 as i64 {
        lines.push(line::<Rational>(-k, 1, 0)); // y - kx
    }
    for k in 1..=m2 as i64 {
        lines.push(line::<Rational>(-k, 0, 1)); // z - kx
    }
    let arr = Arrangement::new(lines)?;
    let lattice = arr.intersection_lattice();
    let base1 = ProjPoint::<Rational>::from_ints(0, 0, 1);
    let base2 = ProjPoint::<Rational>::from_ints(0, 1, 0);
    if multiplicity_at(&arr, &base1) != Some(m1 as usize)
        || multiplicity_at(&arr, &base2) != Some(m2 as usize)
    {
        return Err(fail("tilde_A", "a base point lies on the other pencil"));
    }
    let expected_points = 2 + (m1 * m2) as usize;
    if lattice.points.len() != expected_points {
        return Err(fail(
            "tilde_A",
            format!("{} intersection points, wanted {expected_points}", lattice.points.len()),
        ));
    }
    for ip in &lattice.points {
        if ip.point != base1 && ip.point != base2 && ip.multiplicity() != 2 {
            return Err(fail("tilde_A", format!("cross point {} is not a node", ip.point)));
        }
    }
    Ok(arr)
}

/// The nearly free staircase family x (y-z) g_{1,d1-1}(x,y) g_{2,d2}(x,z):
/// d = d1 + d2 lines, nearly supersolvable with nearly modular point (0:1:0)
/// of multiplicity d2 and exceptional node (1:1:1).
pub fn example_b(d1: u32, d2: u32) -> Result<Arrangement<Rational>> {
    if !(2 <= d1 && d1 <= d2) {
        return Err(Error::ParameterRange(format!(
            "exB needs 2 <= d1 <= d2, got ({d1}, {d2})"
        )));
    }
    let mut lines = vec![line::<Rational>(1, 0, 0), line(0, 1, -1)];
    for k in 1..=(d1 - 1) as i64 {
        lines.push(line(1, -k, 0)); // x - ky
    }
    for k in 2..=d2 as i64 {
        lines.push(line(1, 0, -k)); // x - kz
    }
    let arr = Arrangement::new(lines)?;
    let p = ProjPoint::<Rational>::from_ints(0, 1, 0);
    let node = ProjPoint::<Rational>::from_ints(1, 1, 1);
    if multiplicity_at(&arr, &p) != Some(d2 as usize) {
        return Err(fail("exB", format!("{p} does not have multiplicity {d2}")));
    }
    if arr.classify_solvability() != Solvability::NearlySupersolvable
        || !has_nearly_modular_pair(&arr, &p, &node)
    {
        return Err(fail("exB", "expected a nearly modular point at (0:1:0) with node (1:1:1)"));
    }
    Ok(arr)
}

/// The free borderline family x (y-z) (y+x-z) g_{1,d1-1}(y,x) g_{2,d1}(z,x):
/// d = 2 d1 + 1 lines with two promised nearly modular points, free with
/// equal exponents. For d1 >= 3 the arrangement is nearly supersolvable;
/// at d1 = 2 the two triple points happen to be modular, so the strict
/// classification is supersolvable while both nearly modular points remain.
pub fn example_c(d1: u32) -> Result<Arrangement<Rational>> {
    if d1 < 2 {
        return Err(Error::ParameterRange("exC needs d1 >= 2".into()));
    }
    let mut lines = vec![
        line::<Rational>(1, 0, 0),
        line(0, 1, -1),
        line(1, 1, -1), // y + x - z
    ];
    for k in 1..=(d1 - 1) as i64 {
        lines.push(line(-k, 1, 0)); // y - kx
    }
    for k in 2..=d1 as i64 {
        lines.push(line(-k, 0, 1)); // z - kx
    }
    let arr = Arrangement::new(lines)?;
    let pairs = [
        (ProjPoint::<Rational>::from_ints(0, 1, 0), ProjPoint::from_ints(1, 1, 1)),
        (ProjPoint::from_ints(0, 0, 1), ProjPoint::from_ints(1, d1 as i64, d1 as i64)),
    ];
    if d1 >= 3 && arr.classify_solvability() != Solvability::NearlySupersolvable {
        return Err(fail("exC", "expected a nearly supersolvable arrangement"));
    }
    for (p, node) in &pairs {
        if !has_nearly_modular_pair(&arr, p, node) {
            return Err(fail("exC", format!("missing nearly modular pair {p} / {node}")));
        }
    }
    Ok(arr)
}

/// A family request as it arrives from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: Vec<u32>,
}

impl FamilySpec {
    pub fn new(name: &str, params: Vec<u32>) -> Self {
        Self { name: name.to_string(), params }
    }

    fn arity(&self) -> Result<usize> {
        match self.name.as_str() {
            "full_monomial" | "monomial" | "exC" => Ok(1),
            "L" | "hat_L" | "tilde_A" | "exB" => Ok(2),
            other => Err(Error::ParameterRange(format!(
                "unknown family `{other}` (expected full_monomial, monomial, L, hat_L, tilde_A, exB or exC)"
            ))),
        }
    }

    pub fn build(&self) -> Result<FieldArrangement> {
        let arity = self.arity()?;
        if self.params.len() != arity {
            return Err(Error::ParameterRange(format!(
                "family `{}` takes {arity} parameter(s), got {}",
                self.name,
                self.params.len()
            )));
        }
        let p = &self.params;
        Ok(match self.name.as_str() {
            "full_monomial" => full_monomial(p[0])?,
            "monomial" => monomial(p[0])?,
            "L" => FieldArrangement::Rational(l_family(p[0], p[1])?),
            "hat_L" => FieldArrangement::Rational(hat_l(p[0], p[1])?),
            "tilde_A" => FieldArrangement::Rational(tilde_a(p[0], p[1])?),
            "exB" => FieldArrangement::Rational(example_b(p[0], p[1])?),
            "exC" => FieldArrangement::Rational(example_c(p[0])?),
            _ => unreachable!(),
        })
    }

    /// Human-readable facts the constructor guarantees, used as comments in
    /// emitted arrangement files.
    pub fn promises(&self) -> Vec<String> {
        let p = &self.params;
        match (self.name.as_str(), p.as_slice()) {
            ("full_monomial", [m]) => vec![
                format!("d = {}", 3 * m + 3),
                format!("supersolvable; free with exponents ({}, {})", m + 1, 2 * m + 1),
            ],
            ("monomial", [m]) => {
                let (e1, e2) = (m + 1, 2 * m - 2);
                vec![
                    format!("d = {}", 3 * m),
                    format!(
                        "free with exponents ({}, {}){}",
                        e1.min(e2),
                        e1.max(e2),
                        if *m >= 3 { "; no modular points" } else { "; supersolvable" }
                    ),
                ]
            }
            ("L", [d, m]) => {
                let mut v = vec![
                    format!("d = {d}"),
                    format!("one point of multiplicity {m}, all other intersections double"),
                ];
                if *m == d - 1 {
                    v.push(format!("free with exponents (1, {})", d - 2));
                } else if *m == d - 2 {
                    v.push(format!("nearly free with exponents (2, {})", d - 2));
                }
                v
            }
            ("hat_L", [m1, m2]) => vec![
                format!("d = {}", m1 + m2 - 1),
                format!("two modular points of multiplicities {m1} and {m2}"),
                format!("free with exponents ({}, {})", m1 - 1, m2 - 1),
            ],
            ("tilde_A", [m1, m2]) => {
                let mut v = vec![
                    format!("d = {}", m1 + m2),
                    format!("two pencils of {m1} and {m2} lines in general position"),
                ];
                if *m1 == 2 {
                    v.push(format!("nearly free with exponents (2, {m2})"));
                } else {
                    v.push(format!("neither free nor nearly free; minimal syzygy degree {m1}"));
                }
                v
            }
            ("exB", [d1, d2]) => vec![
                format!("d = {}", d1 + d2),
                format!("nearly supersolvable; nearly free with exponents ({d1}, {d2})"),
                "exceptional node (1:1:1)".to_string(),
            ],
            ("exC", [d1]) => vec![
                format!("d = {}", 2 * d1 + 1),
                format!("free with exponents ({d1}, {d1}); nearly modular points at (0:1:0) and (0:0:1)"),
            ],
            _ => Vec::new(),
        }
    }
}

/// The fixed regression corpus: every family instance exercised by the
/// verification suite, labelled "name(params)".
pub fn standard_corpus() -> Vec<(String, FieldArrangement)> {
    let specs: Vec<FamilySpec> = vec![
        FamilySpec::new("full_monomial", vec![1]),
        FamilySpec::new("full_monomial", vec![2]),
        FamilySpec::new("full_monomial", vec![3]),
        FamilySpec::new("monomial", vec![2]),
        FamilySpec::new("monomial", vec![3]),
        FamilySpec::new("hat_L", vec![2, 3]),
        FamilySpec::new("hat_L", vec![3, 4]),
        FamilySpec::new("hat_L", vec![3, 5]),
        FamilySpec::new("hat_L", vec![3, 6]),
        FamilySpec::new("L", vec![4, 3]),
        FamilySpec::new("L", vec![5, 3]),
        FamilySpec::new("L", vec![6, 4]),
        FamilySpec::new("tilde_A", vec![2, 2]),
        FamilySpec::new("tilde_A", vec![2, 3]),
        FamilySpec::new("tilde_A", vec![3, 4]),
        FamilySpec::new("exB", vec![2, 2]),
        FamilySpec::new("exB", vec![2, 3]),
        FamilySpec::new("exB", vec![3, 3]),
        FamilySpec::new("exC", vec![2]),
        FamilySpec::new("exC", vec![3]),
    ];
    specs
        .into_iter()
        .map(|s| {
            let label = format!(
                "{}({})",
                s.name,
                s.params.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            );
            let arr = s.build().unwrap_or_else(|e| panic!("corpus {label}: {e}"));
            (label, arr)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts<K: Field>(arr: &Arrangement<K>) -> Vec<(usize, usize)> {
        arr.intersection_lattice()
            .multiplicity_counts
            .iter()
            .map(|(&k, &n)| (k, n))
            .collect()
    }

    #[test]
    fn full_monomial_small_lattices() {
        let FieldArrangement::Rational(a1) = full_monomial(1).unwrap() else {
            panic!("m = 1 is rational");
        };
        assert_eq!(a1.degree(), 6);
        // Four triple points and three nodes, found by the pairwise oracle.
        assert_eq!(counts(&a1), vec![(2, 3), (3, 4)]);
        assert_eq!(a1.tjurina(), 19);

        let FieldArrangement::Rational(a2) = full_monomial(2).unwrap() else {
            panic!("m = 2 is rational");
        };
        assert_eq!(a2.degree(), 9);
        assert_eq!(a2.intersection_lattice().max_multiplicity, 4);

        let FieldArrangement::Cyclotomic(3, a3) = full_monomial(3).unwrap() else {
            panic!("m = 3 is cyclotomic of conductor 3");
        };
        assert_eq!(a3.degree(), 12);
        assert_eq!(a3.tjurina(), 93);
    }

    #[test]
    fn monomial_three_lattice() {
        let FieldArrangement::Cyclotomic(3, arr) = monomial(3).unwrap() else {
            panic!("conductor 3 expected");
        };
        assert_eq!(arr.degree(), 9);
        // Twelve triple points, no nodes.
        assert_eq!(counts(&arr), vec![(3, 12)]);
        assert_eq!(arr.tjurina(), 48);
        assert!(arr.modular_points().is_empty());
        assert!(arr.nearly_modular_points().is_empty());
        assert_eq!(arr.classify_solvability(), Solvability::Neither);
    }

    #[test]
    fn l_family_lattice_and_ranges() {
        let a = l_family(5, 3).unwrap();
        assert_eq!(a.tjurina(), 11); // one triple + seven nodes
        let a = l_family(6, 4).unwrap();
        assert_eq!(a.tjurina(), 18);
        assert!(l_family(4, 5).is_err());
        assert!(l_family(4, 2).is_err());
    }

    #[test]
    fn hat_l_modular_points() {
        // The two promised modular points have multiplicities m1 and m2.
        // (The tiny (2,3) instance has two more modular double points; only
        // the promised pair is part of the contract.)
        let a = hat_l(2, 3).unwrap();
        assert_eq!(a.degree(), 4);
        let mods: Vec<usize> = a.modular_points().iter().map(|p| p.multiplicity()).collect();
        assert!(mods.contains(&2) && mods.contains(&3));

        let a = hat_l(3, 4).unwrap();
        let mods: Vec<usize> = a.modular_points().iter().map(|p| p.multiplicity()).collect();
        assert_eq!(mods, vec![3, 4]);
    }

    #[test]
    fn tilde_a_lattices() {
        assert_eq!(tilde_a(2, 2).unwrap().tjurina(), 6);
        assert_eq!(tilde_a(2, 3).unwrap().tjurina(), 11);
        assert_eq!(tilde_a(3, 4).unwrap().tjurina(), 25);
    }

    #[test]
    fn example_b_lattices() {
        let a = example_b(2, 2).unwrap();
        assert_eq!(counts(&a), vec![(2, 6)]);
        assert_eq!(a.tjurina(), 6);

        let a = example_b(2, 3).unwrap();
        assert_eq!(counts(&a), vec![(2, 7), (3, 1)]);
        assert_eq!(a.tjurina(), 11);
        // The connecting line of the promised nearly modular point is x - z.
        let lattice = a.intersection_lattice();
        let p = ProjPoint::<Rational>::from_ints(0, 1, 0);
        let nm = lattice
            .nearly_modular
            .iter()
            .find(|nm| lattice.points[nm.point].point == p)
            .unwrap();
        let xz = LinearForm::new(
            Rational::from_int(1),
            Rational::from_int(0),
            Rational::from_int(-1),
        )
        .unwrap();
        assert_eq!(nm.connecting_line, xz);

        let a = example_b(3, 3).unwrap();
        assert_eq!(a.tjurina(), 18);
    }

    #[test]
    fn example_c_lattice_and_pairs() {
        let a = example_c(2).unwrap();
        assert_eq!(a.degree(), 5);
        assert_eq!(counts(&a), vec![(2, 4), (3, 2)]);
        assert_eq!(a.tjurina(), 12);
    }

    #[test]
    fn family_spec_dispatch() {
        assert!(FamilySpec::new("exC", vec![2]).build().is_ok());
        assert!(FamilySpec::new("L", vec![5, 3]).build().is_ok());
        assert!(FamilySpec::new("L", vec![4, 5]).build().is_err());
        assert!(FamilySpec::new("nope", vec![1]).build().is_err());
        assert!(FamilySpec::new("exB", vec![2]).build().is_err());
    }
}
