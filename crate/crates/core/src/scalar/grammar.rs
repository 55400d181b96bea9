//! The textual scalar grammar shared by every file format: rationals such as
//! `-3` or `5/7`, and cyclotomic elements as whitespace-free polynomial
//! expressions in the token `w`, e.g. `1+w^2` or `-2/3*w`.

use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, Rational};

fn err(text: &str, reason: impl Into<String>) -> Error {
    Error::ScalarParse { text: text.to_string(), reason: reason.into() }
}

pub(crate) fn parse_rational(text: &str) -> Result<Rational> {
    if text.is_empty() {
        return Err(err(text, "empty scalar"));
    }
    if text.contains(char::is_whitespace) {
        return Err(err(text, "scalars may not contain whitespace"));
    }
    if text.contains('w') {
        return Err(err(text, "cyclotomic token `w` in a rational field"));
    }
    Rational::from_str(text).map_err(|e| err(text, e.to_string()))
}

/// One `[coeff][*]w[^k]` term: coefficient and power of `w`.
fn parse_term(full: &str, term: &str) -> Result<(Rational, u32)> {
    let (coeff_part, w_part) = match term.split_once('*') {
        Some((c, w)) => (Some(c), Some(w)),
        None if term.starts_with('w') || term.starts_with("-w") || term.starts_with("+w") => {
            let (sign, rest) = match term.strip_prefix('-') {
                Some(r) => (Some("-1"), r),
                None => (Some("1"), term.strip_prefix('+').unwrap_or(term)),
            };
            (sign, Some(rest))
        }
        None => (Some(term), None),
    };
    let coeff = match coeff_part {
        Some(c) if !c.is_empty() => {
            Rational::from_str(c).map_err(|e| err(full, format!("bad coefficient `{c}`: {e}")))?
        }
        _ => return Err(err(full, format!("bad term `{term}`"))),
    };
    let power = match w_part {
        None => 0,
        Some("w") => 1,
        Some(w) => {
            let k = w
                .strip_prefix("w^")
                .ok_or_else(|| err(full, format!("bad power token `{w}`")))?;
            k.parse::<u32>()
                .map_err(|e| err(full, format!("bad exponent `{k}`: {e}")))?
        }
    };
    Ok((coeff, power))
}

pub(crate) fn parse_cyclotomic(text: &str, conductor: u32) -> Result<Cyclotomic> {
    if text.is_empty() {
        return Err(err(text, "empty scalar"));
    }
    if text.contains(char::is_whitespace) {
        return Err(err(text, "scalars may not contain whitespace"));
    }
    if conductor <= 2 && text.contains('w') {
        return Err(err(text, "cyclotomic token `w` needs conductor >= 3"));
    }
    // Split into signed terms; '+' and '-' only ever occur as term signs.
    let mut terms: Vec<(Rational, u32)> = Vec::new();
    let mut start = 0;
    let bytes = text.as_bytes();
    for i in 1..bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            terms.push(parse_term(text, &text[start..i])?);
            start = i;
        }
    }
    terms.push(parse_term(text, &text[start..])?);

    let mut coords = vec![Rational::zero(); 1];
    for (coeff, power) in terms {
        let k = (power % conductor.max(1)) as usize;
        if coords.len() <= k {
            coords.resize(k + 1, Rational::zero());
        }
        coords[k] += coeff;
    }
    Ok(Cyclotomic::from_coords(conductor.max(1), coords))
}

pub(crate) fn render_cyclotomic(value: &Cyclotomic) -> String {
    if let Some(q) = value.as_rational() {
        return q.to_string();
    }
    let mut out = String::new();
    for (k, c) in value.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut piece = if k == 0 {
            c.to_string()
        } else {
            let var = if k == 1 { "w".to_string() } else { format!("w^{k}") };
            if c.is_one() {
                var
            } else if (-c).is_one() {
                format!("-{var}")
            } else {
                format!("{c}*{var}")
            }
        };
        if !out.is_empty() && !piece.starts_with('-') {
            piece.insert(0, '+');
        }
        out.push_str(&piece);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn rational_round_trips() {
        for s in ["-3", "5/7", "0", "12/5"] {
            let v = parse_rational(s).unwrap();
            assert_eq!(v.render(), s);
        }
    }

    #[test]
    fn rational_rejects_noise() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1 /2").is_err());
        assert!(parse_rational("w").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("5/0").is_err());
    }

    #[test]
    fn cyclotomic_round_trips() {
        // Canonical order is ascending powers of w.
        for s in ["1+w^2", "-2/3*w", "w", "-w", "-1/2+2*w^2", "-1+w", "1/3-w+5*w^3"] {
            let v = parse_cyclotomic(s, 5).unwrap();
            assert_eq!(v.render(), s, "round trip of `{s}`");
        }
        // Non-canonical input parses to the same value.
        let a = parse_cyclotomic("2*w^2-1/2", 5).unwrap();
        let b = parse_cyclotomic("-1/2+2*w^2", 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn high_powers_reduce() {
        // w^5 = 1 at conductor 5, and w^4 = -1-w-w^2-w^3.
        let v = parse_cyclotomic("w^5", 5).unwrap();
        assert!(v.is_one());
        let w4 = parse_cyclotomic("w^4", 5).unwrap();
        let alt = parse_cyclotomic("-1-w-w^2-w^3", 5).unwrap();
        assert_eq!(w4, alt);
    }

    #[test]
    fn zero_renders_as_zero() {
        let v = parse_cyclotomic("w-w", 5).unwrap();
        assert_eq!(v.render(), "0");
    }
}
