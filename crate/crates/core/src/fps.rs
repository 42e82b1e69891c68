//! The `.fps` scheme file format.
//!
//! ```text
//! # example00
//! field rational
//! ambient 2
//! point 0 1 0 mult 2
//! point 1 0 0 mult 2
//! point 1 1 0
//! point 0 0 1
//! ```
//!
//! One directive per line, `#` starts a comment. `field` is `rational` or
//! `prime <p>`; coordinates are integers or fractions `a/b`; `mult` defaults
//! to 1. Both `field` and `ambient` must precede the first `point`.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactalg::{FieldSpec, Scalar};
use crate::geometry::{FatPointScheme, ProjectivePoint};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("expected {expected} coordinates, found {got}")]
    BadArity { expected: usize, got: usize },
    #[error("point repeats the point on line {0}")]
    DuplicatePoint(usize),
    #[error("points span a space of rank {rank}, need {needed}")]
    RankDeficient { rank: usize, needed: usize },
    #[error("{0} is not a prime below 2^31")]
    NonPrime(u64),
    #[error("malformed number `{0}`")]
    BadNumber(String),
    #[error("missing `{0}` directive")]
    Missing(&'static str),
    #[error("`{0}` given twice")]
    Repeated(&'static str),
    #[error("malformed `{0}` line")]
    Malformed(&'static str),
    #[error("{0}")]
    Invalid(Error),
}

/// A parse failure and the 1-based line it refers to.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn at(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parses a scheme file. With `merge_duplicates`, repeated points are merged
/// keeping the larger multiplicity instead of being rejected.
pub fn parse_scheme_file(text: &str, merge_duplicates: bool) -> Result<FatPointScheme, ParseError> {
    let mut field: Option<FieldSpec> = None;
    let mut ambient: Option<usize> = None;
    let mut points: Vec<(ProjectivePoint, u32)> = Vec::new();
    let mut seen: HashMap<ProjectivePoint, (usize, usize)> = HashMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = words.split_first() else {
            continue;
        };
        last_line = line;
        match head {
            "field" => {
                if field.is_some() {
                    return Err(at(line, ParseErrorKind::Repeated("field")));
                }
                field = Some(match rest {
                    ["rational"] => FieldSpec::Rational,
                    ["prime", p] => {
                        let p: u64 = p
                            .parse()
                            .map_err(|_| at(line, ParseErrorKind::BadNumber(p.to_string())))?;
                        FieldSpec::prime(p).map_err(|_| at(line, ParseErrorKind::NonPrime(p)))?
                    }
                    _ => return Err(at(line, ParseErrorKind::Malformed("field"))),
                });
            }
            "ambient" => {
                if ambient.is_some() {
                    return Err(at(line, ParseErrorKind::Repeated("ambient")));
                }
                let [n] = rest else {
                    return Err(at(line, ParseErrorKind::Malformed("ambient")));
                };
                ambient = Some(
                    n.parse()
                        .map_err(|_| at(line, ParseErrorKind::BadNumber(n.to_string())))?,
                );
            }
            "point" => {
                let f = field.ok_or(at(line, ParseErrorKind::Missing("field")))?;
                let n = ambient.ok_or(at(line, ParseErrorKind::Missing("ambient")))?;
                let (coords, mult) = match rest {
                    [c @ .., "mult", m] => {
                        let m: u32 = m
                            .parse()
                            .map_err(|_| at(line, ParseErrorKind::BadNumber(m.to_string())))?;
                        (c, m)
                    }
                    c => (c, 1),
                };
                if coords.len() != n + 1 {
                    return Err(at(
                        line,
                        ParseErrorKind::BadArity {
                            expected: n + 1,
                            got: coords.len(),
                        },
                    ));
                }
                if mult == 0 {
                    return Err(at(line, ParseErrorKind::Invalid(Error::ZeroMultiplicity)));
                }
                let scalars = coords
                    .iter()
                    .map(|c| parse_scalar(f, c).map_err(|k| at(line, k)))
                    .collect::<Result<Vec<_>, _>>()?;
                let p = ProjectivePoint::new(scalars).map_err(|e| at(line, ParseErrorKind::Invalid(e)))?;
                match seen.get(&p) {
                    Some(&(_, pos)) if merge_duplicates => points[pos].1 = points[pos].1.max(mult),
                    Some(&(first, _)) => return Err(at(line, ParseErrorKind::DuplicatePoint(first))),
                    None => {
                        seen.insert(p.clone(), (line, points.len()));
                        points.push((p, mult));
                    }
                }
            }
            other => return Err(at(line, ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }

    let field = field.ok_or(at(last_line.max(1), ParseErrorKind::Missing("field")))?;
    let n = ambient.ok_or(at(last_line.max(1), ParseErrorKind::Missing("ambient")))?;
    FatPointScheme::new(field, n, points).map_err(|e| {
        let kind = match e {
            Error::RankDeficient { rank, needed } => ParseErrorKind::RankDeficient { rank, needed },
            other => ParseErrorKind::Invalid(other),
        };
        at(last_line.max(1), kind)
    })
}

fn parse_scalar(field: FieldSpec, token: &str) -> Result<Scalar, ParseErrorKind> {
    let bad = || ParseErrorKind::BadNumber(token.to_string());
    let (num, den) = match token.split_once('/') {
        Some((a, b)) => (a, b),
        None => (token, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    field.from_ratio(&num, &den).map_err(|_| bad())
}

/// Writes the scheme in `.fps` form; parsing the output gives back an equal
/// scheme.
pub fn serialize(z: &FatPointScheme) -> String {
    let mut out = String::new();
    match z.field() {
        FieldSpec::Rational => out.push_str("field rational\n"),
        FieldSpec::Prime(p) => writeln!(out, "field prime {p}").unwrap(),
    }
    writeln!(out, "ambient {}", z.ambient_dim()).unwrap();
    for (p, m) in z.points() {
        let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        write!(out, "point {}", coords.join(" ")).unwrap();
        if *m != 1 {
            write!(out, " mult {m}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE00: &str =
        "# example00\nfield rational\nambient 2\npoint 0 1 0 mult 2\npoint 1 0 0 mult 2\npoint 1 1 0\npoint 0 0 1\n";

    #[test]
    fn parses_example00() {
        let z = parse_scheme_file(EXAMPLE00, false).unwrap();
        assert_eq!(z.multiplicities(), vec![2, 2, 1, 1]);
        assert_eq!(serialize(&z), EXAMPLE00.trim_start_matches("# example00\n"));
    }

    #[test]
    fn fractions_are_normalized() {
        let z = parse_scheme_file(
            "field rational\nambient 1\npoint 2/3 4/3\npoint 0 1 # tail comment\n",
            false,
        )
        .unwrap();
        assert_eq!(z.points()[0].0.to_string(), "[1:2]");
    }

    #[test]
    fn errors_carry_lines() {
        let dup = "field rational\nambient 2\npoint 1 0 0\npoint 2 0 0\n";
        assert_eq!(
            parse_scheme_file(dup, false).unwrap_err(),
            at(4, ParseErrorKind::DuplicatePoint(3))
        );
        let merged = parse_scheme_file(
            "field rational\nambient 1\npoint 1 0\npoint 2 0 mult 3\npoint 0 1\n",
            true,
        )
        .unwrap();
        assert_eq!(merged.multiplicities(), vec![3, 1]);

        assert_eq!(
            parse_scheme_file("field prime 4\n", false).unwrap_err(),
            at(1, ParseErrorKind::NonPrime(4))
        );
        assert_eq!(
            parse_scheme_file("field rational\nambient 2\npoint 1 0\n", false).unwrap_err(),
            at(3, ParseErrorKind::BadArity { expected: 3, got: 2 })
        );
        assert_eq!(
            parse_scheme_file("field rational\nplane 2\n", false).unwrap_err(),
            at(2, ParseErrorKind::UnknownDirective("plane".into()))
        );
        assert_eq!(
            parse_scheme_file("field rational\nambient 2\npoint 1 0 0\npoint 0 1 0\n", false).unwrap_err(),
            at(4, ParseErrorKind::RankDeficient { rank: 2, needed: 3 })
        );
        assert_eq!(
            parse_scheme_file("field rational\nambient 1\npoint 1 x\n", false).unwrap_err(),
            at(3, ParseErrorKind::BadNumber("x".into()))
        );
        assert_eq!(
            parse_scheme_file("ambient 1\npoint 1 0\n", false).unwrap_err(),
            at(2, ParseErrorKind::Missing("field"))
        );
    }

    #[test]
    fn prime_field_coordinates() {
        let z = parse_scheme_file("field prime 3\nambient 1\npoint 1 2\npoint 1/2 0\n", false).unwrap();
        assert_eq!(serialize(&z), "field prime 3\nambient 1\npoint 1 2\npoint 1 0\n");
    }

    proptest! {
        #[test]
        fn round_trip(raw in proptest::collection::vec((proptest::collection::vec(-5i64..=5, 3), 1u32..4), 3..7)) {
            let pts: Vec<(&[i64], u32)> = raw.iter().map(|(c, m)| (c.as_slice(), *m)).collect();
            if let Ok(z) = FatPointScheme::from_integer_points(2, &pts) {
                let again = parse_scheme_file(&serialize(&z), false).unwrap();
                prop_assert_eq!(again, z);
            }
        }
    }
}
