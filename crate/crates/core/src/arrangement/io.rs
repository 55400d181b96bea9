//! The arrangement text format.
//!
//! ```text
//! # comment
//! field rational            (or: field cyclotomic 5)
//! 1 0 0
//! 1 -1/2 w                  (three scalars per line: a b c for ax+by+cz=0)
//! ```
//!
//! The first significant line declares the coefficient field; every
//! subsequent non-comment line lists one projective line. Duplicate lines
//! (after normalization) are a load error, so one file is one arrangement
//! over one field.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::poly::LinearForm;
use crate::scalar::{Cyclotomic, Field, FieldKind, Rational};

/// An arrangement together with the declared coefficient field, as chosen by
/// the input file (or by a family constructor).
#[derive(Clone, Debug)]
pub enum FieldArrangement {
    Rational(Arrangement<Rational>),
    Cyclotomic(u32, Arrangement<Cyclotomic>),
}

impl FieldArrangement {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldArrangement::Rational(_) => FieldKind::Rational,
            FieldArrangement::Cyclotomic(n, _) => FieldKind::Cyclotomic(*n),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            FieldArrangement::Rational(a) => a.degree(),
            FieldArrangement::Cyclotomic(_, a) => a.degree(),
        }
    }
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_lines<K: Field>(
    rows: &[(usize, &str)],
    conductor: u32,
) -> Result<Vec<LinearForm<K>>> {
    let mut seen = HashSet::new();
    let mut lines = Vec::with_capacity(rows.len());
    for &(lineno, body) in rows {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(Error::FileFormat {
                line: lineno,
                reason: format!("expected three scalars, got {}", tokens.len()),
            });
        }
        let mut coeffs = Vec::with_capacity(3);
        for t in &tokens {
            coeffs.push(K::parse_scalar(t, conductor).map_err(|e| Error::FileFormat {
                line: lineno,
                reason: e.to_string(),
            })?);
        }
        let form = LinearForm::new(
            coeffs[0].clone(),
            coeffs[1].clone(),
            coeffs[2].clone(),
        )
        .map_err(|e| Error::FileFormat { line: lineno, reason: e.to_string() })?;
        if !seen.insert(form.clone()) {
            return Err(Error::DuplicateLine { line: lineno });
        }
        lines.push(form);
    }
    Ok(lines)
}

/// Parses the arrangement text format.
pub fn read_arrangement_str(text: &str) -> Result<FieldArrangement> {
    let rows: Vec<(usize, &str)> = significant_lines(text).collect();
    let Some(&(header_line, header)) = rows.first() else {
        return Err(Error::FileFormat { line: 1, reason: "empty arrangement file".into() });
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let kind = match tokens.as_slice() {
        ["field", "rational"] => FieldKind::Rational,
        ["field", "cyclotomic", n] => {
            let n: u32 = n.parse().map_err(|_| Error::FileFormat {
                line: header_line,
                reason: format!("bad conductor `{n}`"),
            })?;
            if n == 0 {
                return Err(Error::FileFormat {
                    line: header_line,
                    reason: "conductor must be positive".into(),
                });
            }
            FieldKind::Cyclotomic(n)
        }
        _ => {
            return Err(Error::FileFormat {
                line: header_line,
                reason: "expected `field rational` or `field cyclotomic <n>`".into(),
            })
        }
    };
    match kind {
        FieldKind::Rational => {
            let lines = parse_lines::<Rational>(&rows[1..], 1)?;
            Ok(FieldArrangement::Rational(Arrangement::new(lines)?))
        }
        FieldKind::Cyclotomic(n) => {
            let lines = parse_lines::<Cyclotomic>(&rows[1..], n)?;
            Ok(FieldArrangement::Cyclotomic(n, Arrangement::new(lines)?))
        }
    }
}

fn write_lines<K: Field>(out: &mut String, arr: &Arrangement<K>) {
    for l in arr.lines() {
        let [a, b, c] = l.coeffs();
        writeln!(out, "{} {} {}", a.render(), b.render(), c.render()).unwrap();
    }
}

/// Renders the arrangement text format; `comments` go at the top.
pub fn write_arrangement(fa: &FieldArrangement, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "field {}", fa.kind()).unwrap();
    match fa {
        FieldArrangement::Rational(a) => write_lines(&mut out, a),
        FieldArrangement::Cyclotomic(_, a) => write_lines(&mut out, a),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_rational() {
        let text = "# a triangle\nfield rational\n1 0 0\n0 1 0\n0 0 1\n";
        let fa = read_arrangement_str(text).unwrap();
        assert_eq!(fa.kind(), FieldKind::Rational);
        assert_eq!(fa.degree(), 3);
        let emitted = write_arrangement(&fa, &[]);
        let again = read_arrangement_str(&emitted).unwrap();
        assert_eq!(write_arrangement(&again, &[]), emitted);
    }

    #[test]
    fn round_trip_cyclotomic() {
        let text = "field cyclotomic 3\n1 0 0\n1 -w 0\n1 0 -w^2\n0 1 -1\n";
        let fa = read_arrangement_str(text).unwrap();
        assert_eq!(fa.kind(), FieldKind::Cyclotomic(3));
        let emitted = write_arrangement(&fa, &["demo".into()]);
        let again = read_arrangement_str(&emitted).unwrap();
        assert_eq!(write_arrangement(&again, &["demo".into()]), emitted);
    }

    #[test]
    fn reports_line_numbers() {
        let bad_scalar = "field rational\n1 0 0\n0 1 0\nx 2 3\n";
        match read_arrangement_str(bad_scalar) {
            Err(Error::FileFormat { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected a format error, got {other:?}"),
        }
        let dup = "field rational\n1 0 0\n0 1 0\n2 0 0\n";
        match read_arrangement_str(dup) {
            Err(Error::DuplicateLine { line }) => assert_eq!(line, 4),
            other => panic!("expected a duplicate error, got {other:?}"),
        }
        let w_in_rational = "field rational\n1 w 0\n0 1 0\n0 0 1\n";
        assert!(matches!(
            read_arrangement_str(w_in_rational),
            Err(Error::FileFormat { line: 2, .. })
        ));
    }
}
