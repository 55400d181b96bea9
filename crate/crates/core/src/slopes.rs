//! The slope-count certificate for rational point configurations: slope
//! classes of connecting lines, the unique-slope-pair hypothesis, projective
//! dualization into a line arrangement, and the w >= n bound, checked
//! together with the structural facts about the deleted dual that the bound
//! rests on.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::arrangement::{Arrangement, ProjPoint, Solvability};
use crate::error::{Error, Result};
use crate::poly::LinearForm;
use crate::scalar::{Field, Rational};

/// A direction in the affine plane: a finite slope or the vertical one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Vertical,
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Slope::Finite(a), Slope::Finite(b)) => a.cmp(b),
            (Slope::Finite(_), Slope::Vertical) => std::cmp::Ordering::Less,
            (Slope::Vertical, Slope::Finite(_)) => std::cmp::Ordering::Greater,
            (Slope::Vertical, Slope::Vertical) => std::cmp::Ordering::Equal,
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(s) => write!(f, "{s}"),
            Slope::Vertical => write!(f, "inf"),
        }
    }
}

/// n >= 3 distinct affine points with rational coordinates.
#[derive(Clone, Debug)]
pub struct PointConfig {
    points: Vec<(Rational, Rational)>,
}

impl PointConfig {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::TooFewPoints(points.len()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::NotApplicable(format!(
                        "points {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    /// Parses one `x y` rational pair per non-comment line.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::FileFormat {
                    line: i + 1,
                    reason: format!("expected `x y`, got {} token(s)", tokens.len()),
                });
            }
            let x = Rational::parse_scalar(tokens[0], 1)
                .map_err(|e| Error::FileFormat { line: i + 1, reason: e.to_string() })?;
            let y = Rational::parse_scalar(tokens[1], 1)
                .map_err(|e| Error::FileFormat { line: i + 1, reason: e.to_string() })?;
            points.push((x, y));
        }
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn all_collinear(&self) -> bool {
        connecting_lines(self).len() == 1
    }
}

fn slope_of(p: &(Rational, Rational), q: &(Rational, Rational)) -> Slope {
    let dx = &q.0 - &p.0;
    if dx.is_zero() {
        Slope::Vertical
    } else {
        Slope::Finite((&q.1 - &p.1) / dx)
    }
}

/// Groups the points into maximal connecting lines (each with >= 2 points).
fn connecting_lines(cfg: &PointConfig) -> Vec<(LinearForm<Rational>, Vec<usize>)> {
    let pts = &cfg.points;
    let mut by_line: HashMap<LinearForm<Rational>, Vec<usize>> = HashMap::new();
    let mut order: Vec<LinearForm<Rational>> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let pi = ProjPoint::new(pts[i].0.clone(), pts[i].1.clone(), Rational::one()).unwrap();
            let pj = ProjPoint::new(pts[j].0.clone(), pts[j].1.clone(), Rational::one()).unwrap();
            let line = crate::arrangement::line_through(&pi, &pj).expect("distinct points");
            let entry = by_line.entry(line.clone()).or_insert_with(|| {
                order.push(line);
                Vec::new()
            });
            for k in [i, j] {
                if !entry.contains(&k) {
                    entry.push(k);
                }
            }
        }
    }
    order
        .into_iter()
        .map(|l| {
            let pts = by_line.remove(&l).unwrap();
            (l, pts)
        })
        .collect()
}

/// One slope class: the connecting lines realizing the direction and all
/// unordered point pairs whose direction it is.
#[derive(Clone, Debug)]
pub struct SlopeClass {
    /// Point-index sets of the connecting lines with this slope.
    pub lines: Vec<Vec<usize>>,
    pub pairs: Vec<(usize, usize)>,
}

impl SlopeClass {
    /// The direction is a unique-pair direction when exactly one connecting
    /// line realizes it and that line carries exactly two of the points.
    pub fn is_unique_pair(&self) -> bool {
        self.lines.len() == 1 && self.lines[0].len() == 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The unique-slope-pair hypothesis holds and w >= n was checked.
    WGeqN,
    /// No unique slope pair; the classical real-plane bound w >= n-1 is
    /// observed empirically but not certified here.
    WGeqNMinus1Only,
    NotApplicable,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::WGeqN => "w >= n",
            Certificate::WGeqNMinus1Only => "w >= n-1 only",
            Certificate::NotApplicable => "not applicable",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SlopeReport {
    pub n: usize,
    pub w: usize,
    pub classes: BTreeMap<Slope, SlopeClass>,
    /// Directions realized by exactly one two-point line, in slope order.
    pub unique_slopes: Vec<Slope>,
    pub hypothesis_holds: bool,
    pub certificate: Certificate,
}

/// Computes the direction of every point pair and groups them into classes.
/// Errors when all points are collinear.
pub fn slope_classes(cfg: &PointConfig) -> Result<SlopeReport> {
    let lines = connecting_lines(cfg);
    if lines.len() == 1 {
        return Err(Error::CollinearInput);
    }
    let n = cfg.len();
    let mut classes: BTreeMap<Slope, SlopeClass> = BTreeMap::new();
    for (_, pts) in &lines {
        let s = slope_of(&cfg.points[pts[0]], &cfg.points[pts[1]]);
        let class = classes
            .entry(s)
            .or_insert_with(|| SlopeClass { lines: Vec::new(), pairs: Vec::new() });
        let mut sorted = pts.clone();
        sorted.sort_unstable();
        for a in 0..sorted.len() {
            for b in a + 1..sorted.len() {
                class.pairs.push((sorted[a], sorted[b]));
            }
        }
        class.lines.push(sorted);
    }
    let w = classes.len();
    let unique_slopes: Vec<Slope> = classes
        .iter()
        .filter(|(_, c)| c.is_unique_pair())
        .map(|(s, _)| s.clone())
        .collect();
    let hypothesis_holds = !unique_slopes.is_empty();
    let certificate = if hypothesis_holds && w >= n {
        Certificate::WGeqN
    } else if !hypothesis_holds && w + 1 >= n {
        Certificate::WGeqNMinus1Only
    } else {
        Certificate::NotApplicable
    };
    Ok(SlopeReport { n, w, classes, unique_slopes, hypothesis_holds, certificate })
}

/// The projective dual of a configuration: the point (a, b) becomes the line
/// a·x + b·y + z = 0, the direction of slope s becomes the line x + s·y = 0
/// (the vertical direction becomes y = 0), and the line at infinity becomes
/// the center (0:0:1), which is modular of multiplicity w.
#[derive(Clone, Debug)]
pub struct DualArrangement {
    pub arrangement: Arrangement<Rational>,
    pub center: ProjPoint<Rational>,
    /// Directions in the fixed slope order, parallel to the last w lines.
    pub directions: Vec<Slope>,
}

fn direction_line(s: &Slope) -> LinearForm<Rational> {
    match s {
        Slope::Finite(v) => {
            LinearForm::new(Rational::one(), v.clone(), Rational::zero()).unwrap()
        }
        Slope::Vertical => {
            LinearForm::new(Rational::zero(), Rational::one(), Rational::zero()).unwrap()
        }
    }
}

fn dual_lines(cfg: &PointConfig) -> Vec<LinearForm<Rational>> {
    cfg.points
        .iter()
        .map(|(a, b)| LinearForm::new(a.clone(), b.clone(), Rational::one()).unwrap())
        .collect()
}

pub fn dualize(cfg: &PointConfig) -> Result<DualArrangement> {
    let report = slope_classes(cfg)?;
    let mut lines = dual_lines(cfg);
    let directions: Vec<Slope> = report.classes.keys().cloned().collect();
    for s in &directions {
        lines.push(direction_line(s));
    }
    let arrangement = Arrangement::new(lines)?;
    let center = ProjPoint::from_ints(0, 0, 1);
    let mult = arrangement
        .intersection_lattice()
        .points
        .iter()
        .find(|ip| ip.point == center)
        .map(|ip| ip.multiplicity())
        .unwrap_or(0);
    if mult != report.w {
        return Err(Error::Inconsistency(format!(
            "dual center has multiplicity {mult}, expected w = {}",
            report.w
        )));
    }
    if !arrangement
        .modular_points()
        .iter()
        .any(|ip| ip.point == center)
    {
        return Err(Error::Inconsistency("dual center is not modular".into()));
    }
    Ok(DualArrangement { arrangement, center, directions })
}

/// Structural facts about the deleted dual the w >= n bound rests on.
#[derive(Clone, Debug)]
pub struct DeletedDualCheck {
    pub removed_direction: Slope,
    pub lines: usize,
    pub nearly_supersolvable: bool,
    pub center_nearly_modular: bool,
    /// 2 * multiplicity(center) >= lines - 1.
    pub multiplicity_bound_holds: bool,
}

#[derive(Clone, Debug)]
pub struct SlopeVerification {
    pub report: SlopeReport,
    /// w >= n, exact; checked only when the hypothesis holds.
    pub bound_holds: Option<bool>,
    pub deleted_dual: Option<DeletedDualCheck>,
}

/// Applies the unique-slope-pair criterion: when some direction comes from a
/// unique two-point line, w >= n is asserted and the deleted dual (the full
/// dual minus that direction line) is checked to be nearly supersolvable
/// with the center as a nearly modular point.
pub fn verify_slope_theorem(cfg: &PointConfig) -> Result<SlopeVerification> {
    let mut report = slope_classes(cfg)?;
    let n = report.n;
    if !report.hypothesis_holds {
        report.certificate = Certificate::NotApplicable;
        return Ok(SlopeVerification { report, bound_holds: None, deleted_dual: None });
    }
    let removed = report.unique_slopes[0].clone();
    let mut lines = dual_lines(cfg);
    for s in report.classes.keys() {
        if s != &removed {
            lines.push(direction_line(s));
        }
    }
    let deleted = Arrangement::new(lines)?;
    let center = ProjPoint::from_ints(0, 0, 1);
    let lattice = deleted.intersection_lattice();
    let center_mult = lattice
        .points
        .iter()
        .find(|ip| ip.point == center)
        .map(|ip| ip.multiplicity())
        .unwrap_or(0);
    let check = DeletedDualCheck {
        removed_direction: removed,
        lines: deleted.degree(),
        nearly_supersolvable: lattice.solvability == Solvability::NearlySupersolvable,
        center_nearly_modular: lattice
            .nearly_modular
            .iter()
            .any(|nm| lattice.points[nm.point].point == center),
        multiplicity_bound_holds: 2 * center_mult >= deleted.degree() - 1,
    };
    let bound = report.w >= n;
    if !bound {
        return Err(Error::Inconsistency(format!(
            "unique-slope-pair configuration with w = {} < n = {n}",
            report.w
        )));
    }
    report.certificate = Certificate::WGeqN;
    Ok(SlopeVerification {
        report,
        bound_holds: Some(bound),
        deleted_dual: Some(check),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(pts: &[(i64, i64)]) -> PointConfig {
        PointConfig::new(
            pts.iter()
                .map(|&(x, y)| (Rational::from_int(x), Rational::from_int(y)))
                .collect(),
        )
        .unwrap()
    }

    fn slopes_of(report: &SlopeReport) -> Vec<String> {
        report.classes.keys().map(Slope::to_string).collect()
    }

    #[test]
    fn right_triangle_has_three_slopes() {
        let report = slope_classes(&cfg(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert_eq!(report.w, 3);
        assert_eq!(slopes_of(&report), vec!["-1", "0", "inf"]);
        assert!(report.hypothesis_holds);
    }

    #[test]
    fn unit_square_slopes_and_uniques() {
        // All six pairs by hand: slopes 0, inf, 1, -1; the diagonals are the
        // unique two-point lines.
        let report = slope_classes(&cfg(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap();
        assert_eq!(report.w, 4);
        assert_eq!(slopes_of(&report), vec!["-1", "0", "1", "inf"]);
        let uniq: Vec<String> = report.unique_slopes.iter().map(Slope::to_string).collect();
        assert_eq!(uniq, vec!["-1", "1"]);
        for s in ["0", "inf"] {
            let class = report
                .classes
                .iter()
                .find(|(k, _)| k.to_string() == s)
                .map(|(_, c)| c)
                .unwrap();
            assert_eq!(class.lines.len(), 2);
            assert!(!class.is_unique_pair());
        }
    }

    #[test]
    fn collinear_triple_counts_one_direction() {
        // (0,0),(1,1),(2,2) share one line of slope 1; (0,1) adds slopes
        // inf, 0 and 1/2 -> w = 4, enumerated pairwise.
        let report = slope_classes(&cfg(&[(0, 0), (1, 1), (2, 2), (0, 1)])).unwrap();
        assert_eq!(report.w, 4);
        assert_eq!(slopes_of(&report), vec!["0", "1/2", "1", "inf"]);
        let one = report
            .classes
            .iter()
            .find(|(k, _)| k.to_string() == "1")
            .map(|(_, c)| c)
            .unwrap();
        assert_eq!(one.pairs.len(), 3);
        assert!(!one.is_unique_pair(), "a collinear triple is not a unique pair");
    }

    #[test]
    fn all_collinear_is_an_error() {
        let r = slope_classes(&cfg(&[(0, 0), (1, 1), (2, 2)]));
        assert!(matches!(r, Err(Error::CollinearInput)));
    }

    #[test]
    fn dual_center_is_modular_of_multiplicity_w() {
        for pts in [
            vec![(0, 0), (1, 0), (0, 1)],
            vec![(0, 0), (1, 0), (0, 1), (1, 1)],
            vec![(0, 0), (3, 1), (1, 2), (-1, 1)],
        ] {
            let c = cfg(&pts);
            let report = slope_classes(&c).unwrap();
            let dual = dualize(&c).unwrap();
            assert_eq!(dual.arrangement.degree(), c.len() + report.w);
            assert_eq!(
                dual.arrangement.classify_solvability(),
                Solvability::Supersolvable
            );
            // Every direction line passes through the center.
            for l in &dual.arrangement.lines()[c.len()..] {
                assert!(l.evaluate(dual.center.coords()).is_zero());
            }
        }
    }

    #[test]
    fn unit_square_certifies_w_geq_n() {
        let v = verify_slope_theorem(&cfg(&[(0, 0), (1, 0), (0, 1), (1, 1)])).unwrap();
        assert_eq!(v.report.certificate, Certificate::WGeqN);
        assert_eq!(v.bound_holds, Some(true));
        let dd = v.deleted_dual.unwrap();
        assert_eq!(dd.lines, 7);
        assert!(dd.nearly_supersolvable);
        assert!(dd.center_nearly_modular);
        assert!(dd.multiplicity_bound_holds);
    }

    #[test]
    fn grid_has_no_unique_pair() {
        // In the 3 x 3 integer grid every direction is realized by at least
        // two connecting lines.
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                pts.push((x, y));
            }
        }
        let v = verify_slope_theorem(&cfg(&pts)).unwrap();
        assert!(!v.report.hypothesis_holds);
        assert_eq!(v.report.certificate, Certificate::NotApplicable);
        assert!(v.deleted_dual.is_none());
        assert_eq!(v.report.w, 8);
    }

    #[test]
    fn points_file_parsing() {
        let text = "# square\n0 0\n1 0\n0 1\n1 1\n";
        let c = PointConfig::parse_str(text).unwrap();
        assert_eq!(c.len(), 4);
        assert!(PointConfig::parse_str("0 0\n1 1\n").is_err());
        assert!(PointConfig::parse_str("0 0\n1\n2 2\n").is_err());
        assert!(PointConfig::parse_str("0 0\n1 1\n0 0\n").is_err());
    }
}
