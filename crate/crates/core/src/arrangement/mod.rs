//! Combinatorics of a line arrangement: the intersection lattice with
//! multiplicities and the Tjurina number, modular and nearly modular points,
//! the solvability classification, the completion of a nearly modular point,
//! combinatorial predictions for the minimal syzygy degree, splitting-type
//! reports, and Euler-characteristic cross checks.

mod io;
mod signature;

pub use io::{read_arrangement_str, write_arrangement, FieldArrangement};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{HomogPoly, LinearForm};
use crate::scalar::Field;

/// A point of the projective plane, normalized so its first nonzero
/// coordinate is 1. Equality and hashing are then literal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint<K: Field> {
    coords: [K; 3],
}

impl<K: Field> ProjPoint<K> {
    pub fn new(a: K, b: K, c: K) -> Result<Self> {
        let coords = [a, b, c];
        let lead = coords
            .iter()
            .find(|v| !v.is_zero())
            .ok_or_else(|| Error::NotApplicable("the zero triple is not a projective point".into()))?
            .clone();
        let inv = lead.try_inv()?;
        Ok(Self {
            coords: [
                coords[0].clone() * &inv,
                coords[1].clone() * &inv,
                coords[2].clone() * &inv,
            ],
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new(K::from_int(a), K::from_int(b), K::from_int(c)).expect("nonzero triple")
    }

    pub fn coords(&self) -> &[K; 3] {
        &self.coords
    }

    pub fn render(&self) -> [String; 3] {
        [
            self.coords[0].render(),
            self.coords[1].render(),
            self.coords[2].render(),
        ]
    }
}

impl<K: Field> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl<K: Field> fmt::Debug for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn cross<K: Field>(p: &[K; 3], q: &[K; 3]) -> [K; 3] {
    [
        p[1].clone() * &q[2] - &(p[2].clone() * &q[1]),
        p[2].clone() * &q[0] - &(p[0].clone() * &q[2]),
        p[0].clone() * &q[1] - &(p[1].clone() * &q[0]),
    ]
}

/// The line through two distinct projective points.
pub fn line_through<K: Field>(p: &ProjPoint<K>, q: &ProjPoint<K>) -> Result<LinearForm<K>> {
    let [a, b, c] = cross(p.coords(), q.coords());
    LinearForm::new(a, b, c)
}

/// The intersection point of two distinct projective lines.
pub fn intersection_of<K: Field>(l1: &LinearForm<K>, l2: &LinearForm<K>) -> Result<ProjPoint<K>> {
    let [a, b, c] = cross(l1.coeffs(), l2.coeffs());
    ProjPoint::new(a, b, c)
}

/// An intersection point of the arrangement with its incident lines.
#[derive(Clone, Debug)]
pub struct IntersectionPoint<K: Field> {
    pub point: ProjPoint<K>,
    /// Sorted indices of the lines through the point; length >= 2.
    pub incident: Vec<usize>,
}

impl<K: Field> IntersectionPoint<K> {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solvability {
    /// All lines through a single point; the syzygy theory is trivial.
    Pencil,
    Supersolvable,
    NearlySupersolvable,
    Neither,
}

impl fmt::Display for Solvability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solvability::Pencil => "Pencil",
            Solvability::Supersolvable => "Supersolvable",
            Solvability::NearlySupersolvable => "NearlySupersolvable",
            Solvability::Neither => "Neither",
        })
    }
}

/// A nearly modular point: every other intersection point except the single
/// double point `node` is joined to `point` by a line of the arrangement,
/// and the connecting line (not in the arrangement) meets no third
/// intersection point.
#[derive(Clone, Debug)]
pub struct NearlyModular<K: Field> {
    pub point: usize,
    pub node: usize,
    pub connecting_line: LinearForm<K>,
}

#[derive(Clone, Debug)]
pub struct LatticeReport<K: Field> {
    pub points: Vec<IntersectionPoint<K>>,
    /// k -> n_k, the number of points of multiplicity k.
    pub multiplicity_counts: BTreeMap<usize, usize>,
    pub tau: u64,
    pub max_multiplicity: usize,
    /// Indices into `points`.
    pub modular_points: Vec<usize>,
    pub nearly_modular: Vec<NearlyModular<K>>,
    pub solvability: Solvability,
}

/// A finite set of distinct projective lines with its defining polynomial
/// (the exact product of the normalized linear forms) and its fully
/// computed intersection lattice.
#[derive(Clone)]
pub struct Arrangement<K: Field> {
    lines: Vec<LinearForm<K>>,
    defining_poly: HomogPoly<K>,
    lattice: LatticeReport<K>,
}

impl<K: Field> Arrangement<K> {
    pub fn new(lines: Vec<LinearForm<K>>) -> Result<Self> {
        if lines.len() < 3 {
            return Err(Error::TooFewLines(lines.len()));
        }
        let mut seen = HashSet::new();
        for l in &lines {
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateForm(l.to_string()));
            }
        }
        let mut defining_poly = HomogPoly::constant(num_traits::One::one());
        for l in &lines {
            defining_poly = defining_poly.multiply(&l.poly());
        }
        let lattice = compute_lattice(&lines)?;
        Ok(Self { lines, defining_poly, lattice })
    }

    pub fn degree(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[LinearForm<K>] {
        &self.lines
    }

    pub fn defining_poly(&self) -> &HomogPoly<K> {
        &self.defining_poly
    }

    pub fn intersection_lattice(&self) -> &LatticeReport<K> {
        &self.lattice
    }

    /// Global Tjurina number: the sum of n_k (k-1)^2 over the multiplicity
    /// counts of the lattice.
    pub fn tjurina(&self) -> u64 {
        self.lattice.tau
    }

    pub fn modular_points(&self) -> Vec<&IntersectionPoint<K>> {
        self.lattice
            .modular_points
            .iter()
            .map(|&i| &self.lattice.points[i])
            .collect()
    }

    pub fn nearly_modular_points(&self) -> &[NearlyModular<K>] {
        &self.lattice.nearly_modular
    }

    pub fn classify_solvability(&self) -> Solvability {
        self.lattice.solvability
    }

    /// Combinatorial prediction of the minimal syzygy degree and of the
    /// free / nearly free class, from a modular or nearly modular point.
    pub fn predict_invariants(&self) -> Result<Prediction> {
        let d = self.degree();
        match self.lattice.solvability {
            Solvability::Supersolvable => {
                let p = self.lattice.modular_points[0];
                let m = self.lattice.points[p].multiplicity();
                let r = (m - 1).min(d - m);
                Ok(Prediction {
                    mdr: r,
                    class: PredictedClass::Free(r, d - 1 - r),
                    basis: PredictionBasis::ModularPoint,
                })
            }
            Solvability::NearlySupersolvable => {
                let nm = &self.lattice.nearly_modular[0];
                let m = self.lattice.points[nm.point].multiplicity();
                if 2 * m < d - 1 {
                    return Err(Error::Inconsistency(format!(
                        "nearly modular point of multiplicity {m} violates 2m >= d-1 (d={d})"
                    )));
                }
                if 2 * m >= d {
                    Ok(Prediction {
                        mdr: d - m,
                        class: PredictedClass::NearlyFree(d - m, m),
                        basis: PredictionBasis::NearlyModularPoint,
                    })
                } else {
                    // 2m = d - 1, the odd borderline: the arrangement is free.
                    let half = (d - 1) / 2;
                    Ok(Prediction {
                        mdr: half,
                        class: PredictedClass::Free(half, half),
                        basis: PredictionBasis::NearlyModularPoint,
                    })
                }
            }
            s => Err(Error::NotApplicable(format!(
                "no combinatorial prediction for solvability {s}"
            ))),
        }
    }

    /// Adds the connecting line of a nearly modular point, producing a
    /// supersolvable arrangement in which that point is modular with
    /// multiplicity one higher.
    pub fn complete(&self, p: &ProjPoint<K>) -> Result<Arrangement<K>> {
        let nm = self
            .lattice
            .nearly_modular
            .iter()
            .find(|nm| &self.lattice.points[nm.point].point == p)
            .ok_or_else(|| Error::NotNearlyModular(p.to_string()))?;
        let old_mult = self.lattice.points[nm.point].multiplicity();
        let mut lines = self.lines.clone();
        lines.push(nm.connecting_line.clone());
        let completed = Arrangement::new(lines)?;
        // The completion is supersolvable with p modular of multiplicity m+1.
        if completed.classify_solvability() != Solvability::Supersolvable {
            return Err(Error::Inconsistency(
                "completion of a nearly modular point is not supersolvable".into(),
            ));
        }
        let idx = completed
            .lattice
            .points
            .iter()
            .position(|ip| &ip.point == p)
            .ok_or_else(|| Error::Inconsistency("completed lattice lost the base point".into()))?;
        if completed.lattice.points[idx].multiplicity() != old_mult + 1
            || !completed.lattice.modular_points.contains(&idx)
        {
            return Err(Error::Inconsistency(
                "completed point is not modular with multiplicity m+1".into(),
            ));
        }
        Ok(completed)
    }

    /// Combinatorially predicted splitting types of the rank-two bundle of
    /// logarithmic vector fields. In the nearly free case with d1 < d2 the
    /// jumping point (computed from the syzygy module) must be supplied.
    pub fn splitting_report(
        &self,
        jumping_point: Option<&ProjPoint<K>>,
    ) -> Result<SplittingReport<K>> {
        let d = self.degree();
        match self.lattice.solvability {
            Solvability::Supersolvable => {
                let m = self.lattice.max_multiplicity;
                let generic = sorted_pair(m - 1, d - m);
                Ok(SplittingReport {
                    generic,
                    jumping: None,
                    per_line: vec![generic; d],
                })
            }
            Solvability::NearlySupersolvable => {
                let nm = &self.lattice.nearly_modular[0];
                let m = self.lattice.points[nm.point].multiplicity();
                if 2 * m < d {
                    // Odd borderline case: free with equal exponents.
                    let generic = (m, m);
                    Ok(SplittingReport { generic, jumping: None, per_line: vec![generic; d] })
                } else if 2 * m == d {
                    // Nearly free with equal exponents; no jumping lines.
                    let generic = (m - 1, m);
                    Ok(SplittingReport { generic, jumping: None, per_line: vec![generic; d] })
                } else {
                    let (d1, d2) = (d - m, m);
                    let p = jumping_point.ok_or_else(|| {
                        Error::NotApplicable(
                            "the jumping point is required when 2 m_p > d".into(),
                        )
                    })?;
                    let generic = (d1, d2 - 1);
                    let special = (d1 - 1, d2);
                    let mut lines_through = Vec::new();
                    let mut per_line = Vec::with_capacity(d);
                    for (i, l) in self.lines.iter().enumerate() {
                        if l.evaluate(p.coords()).is_zero() {
                            lines_through.push(i);
                            per_line.push(special);
                        } else {
                            per_line.push(generic);
                        }
                    }
                    Ok(SplittingReport {
                        generic,
                        jumping: Some(JumpingLines {
                            point: p.clone(),
                            splitting: special,
                            arrangement_lines: lines_through,
                        }),
                        per_line,
                    })
                }
            }
            s => Err(Error::NotApplicable(format!(
                "no splitting prediction for solvability {s}"
            ))),
        }
    }

    /// Euler characteristic of the complement from the Tjurina number,
    /// compared against the fibration prediction where one applies.
    pub fn euler_check(&self) -> EulerCheck {
        let d = self.degree() as i64;
        let chi = 1 + (d - 1) * (d - 2) - self.lattice.tau as i64;
        let predicted = match self.lattice.solvability {
            Solvability::Supersolvable => {
                let m = self.lattice.points[self.lattice.modular_points[0]].multiplicity() as i64;
                Some((m - 2) * (d - 1 - m))
            }
            Solvability::NearlySupersolvable => {
                let m =
                    self.lattice.points[self.lattice.nearly_modular[0].point].multiplicity() as i64;
                Some((m - 2) * (d - 1 - m) + 1)
            }
            _ => None,
        };
        EulerCheck { chi, predicted, matches: predicted.map(|p| p == chi) }
    }

    /// Canonical color-refinement signature of the line/point incidence
    /// structure. Equal signatures are necessary (not sufficient) for the
    /// two arrangements to have isomorphic intersection lattices; the value
    /// is invariant under line reordering and projective coordinate changes.
    pub fn combinatorial_signature(&self) -> String {
        signature::refinement_signature(self)
    }
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictionBasis {
    ModularPoint,
    NearlyModularPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictedClass {
    Free(usize, usize),
    NearlyFree(usize, usize),
}

/// Combinatorial prediction of mdr and the freeness class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub mdr: usize,
    pub class: PredictedClass,
    pub basis: PredictionBasis,
}

#[derive(Clone, Debug)]
pub struct JumpingLines<K: Field> {
    pub point: ProjPoint<K>,
    pub splitting: (usize, usize),
    /// Indices of arrangement lines through the jumping point.
    pub arrangement_lines: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SplittingReport<K: Field> {
    pub generic: (usize, usize),
    /// `None` when every line is generic.
    pub jumping: Option<JumpingLines<K>>,
    pub per_line: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub chi: i64,
    pub predicted: Option<i64>,
    pub matches: Option<bool>,
}

fn binomial2(n: usize) -> usize {
    n * (n - 1) / 2
}

fn compute_lattice<K: Field>(lines: &[LinearForm<K>]) -> Result<LatticeReport<K>> {
    let d = lines.len();
    // Group the pairwise intersections by normalized coordinates, keeping
    // discovery order so every report is reproducible for a given line order.
    let mut index: HashMap<ProjPoint<K>, usize> = HashMap::new();
    let mut points: Vec<ProjPoint<K>> = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let p = intersection_of(&lines[i], &lines[j])?;
            if !index.contains_key(&p) {
                index.insert(p.clone(), points.len());
                points.push(p);
            }
        }
    }
    let points: Vec<IntersectionPoint<K>> = points
        .into_iter()
        .map(|point| {
            let incident: Vec<usize> = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| l.evaluate(point.coords()).is_zero())
                .map(|(i, _)| i)
                .collect();
            IntersectionPoint { point, incident }
        })
        .collect();

    let mut multiplicity_counts = BTreeMap::new();
    let mut tau = 0u64;
    let mut max_multiplicity = 0;
    let mut pair_total = 0usize;
    for ip in &points {
        let k = ip.multiplicity();
        debug_assert!(k >= 2);
        *multiplicity_counts.entry(k).or_insert(0) += 1;
        tau += ((k - 1) * (k - 1)) as u64;
        max_multiplicity = max_multiplicity.max(k);
        pair_total += binomial2(k);
    }
    if pair_total != binomial2(d) {
        return Err(Error::Inconsistency(format!(
            "pair-count identity failed: sum n_k C(k,2) = {pair_total} != C({d},2) = {}",
            binomial2(d)
        )));
    }

    let line_set: HashSet<&LinearForm<K>> = lines.iter().collect();
    let in_arrangement = |l: &LinearForm<K>| line_set.contains(l);

    let mut modular_points = Vec::new();
    let mut nearly_modular = Vec::new();
    for (pi, p) in points.iter().enumerate() {
        // Intersection points q not joined to p by an arrangement line.
        let mut failures = Vec::new();
        for (qi, q) in points.iter().enumerate() {
            if qi == pi {
                continue;
            }
            let join = line_through(&p.point, &q.point)?;
            if !in_arrangement(&join) {
                failures.push(qi);
                if failures.len() > 1 {
                    break;
                }
            }
        }
        match failures.as_slice() {
            [] => modular_points.push(pi),
            &[qi] => {
                // Nearly modular needs the failure to be a double point and
                // the connecting line to carry no third intersection point.
                if points[qi].multiplicity() != 2 {
                    continue;
                }
                let connecting = line_through(&p.point, &points[qi].point)?;
                let clean = points.iter().enumerate().all(|(si, s)| {
                    si == pi || si == qi || !connecting.evaluate(s.point.coords()).is_zero()
                });
                if clean {
                    nearly_modular.push(NearlyModular {
                        point: pi,
                        node: qi,
                        connecting_line: connecting,
                    });
                }
            }
            _ => {}
        }
    }

    let solvability = if points.len() == 1 {
        Solvability::Pencil
    } else if !modular_points.is_empty() {
        Solvability::Supersolvable
    } else if !nearly_modular.is_empty() {
        Solvability::NearlySupersolvable
    } else {
        Solvability::Neither
    };

    Ok(LatticeReport {
        points,
        multiplicity_counts,
        tau,
        max_multiplicity,
        modular_points,
        nearly_modular,
        solvability,
    })
}

impl<K: Field> fmt::Debug for Arrangement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrangement(d={}, f={})", self.degree(), self.defining_poly)
    }
}
