//! Vertex files and coefficient lists.
//!
//! A vertex file holds one vertex per line as whitespace-separated integers.
//! Lines whose first non-blank character is `#` are comments, and blank
//! lines are skipped.

use std::str::FromStr;

use ehrhart_core::{GeometryError, LatticeVector, Polytope, RationalPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: `{token}` is not an integer")]
    NotInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    RaggedRow { line: usize, expected: usize, found: usize },
    #[error("no vertices")]
    Empty,
    #[error("`{0}` is not a rational number")]
    NotRational(String),
    #[error("polynomial has degree {0:?}; need at least 1")]
    ConstantPolynomial(Option<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The raw contents of a vertex file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolytopeFile {
    pub comments: Vec<String>,
    pub rows: Vec<Vec<BigInt>>,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut file = PolytopeFile::default();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(c) = trimmed.strip_prefix('#') {
                file.comments.push(c.trim().to_string());
                continue;
            }
            let row = trimmed
                .split_whitespace()
                .map(|t| {
                    BigInt::from_str(t).map_err(|_| ParseError::NotInteger { line: line_no, token: t.to_string() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(first) = file.rows.first() {
                if first.len() != row.len() {
                    return Err(ParseError::RaggedRow { line: line_no, expected: first.len(), found: row.len() });
                }
            }
            file.rows.push(row);
        }
        if file.rows.is_empty() {
            return Err(ParseError::Empty);
        }
        Ok(file)
    }

    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn polytope(&self) -> Result<Polytope, GeometryError> {
        let pts: Vec<LatticeVector> = self.rows.iter().cloned().map(LatticeVector::new).collect();
        Polytope::new(&pts)
    }
}

pub fn parse_polytope_file(text: &str) -> Result<Polytope, InputError> {
    Ok(PolytopeFile::parse(text)?.polytope()?)
}

/// `p/q` or an integer, with optional sign.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::NotRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

/// `"c0,c1,...,cd"`, lowest degree first.
pub fn parse_coeffs(s: &str) -> Result<RationalPolynomial, ParseError> {
    let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    let p = RationalPolynomial::new(coeffs);
    match p.degree() {
        Some(d) if d >= 1 => Ok(p),
        d => Err(ParseError::ConstantPolynomial(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ehrhart_core::catalog;
    use ehrhart_core::poly::rat;

    fn same_vertices(a: &Polytope, b: &Polytope) -> bool {
        let mut x = a.vertices().to_vec();
        let mut y = b.vertices().to_vec();
        x.sort();
        y.sort();
        x == y
    }

    #[test]
    fn triangle() {
        let p = parse_polytope_file("1 0\n0 1\n-1 -1\n").unwrap();
        assert!(same_vertices(&p, &catalog::reflexive_simplex(2)));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# cross\n1 0\n-1 0\n\n  0 1\n0 -1\n";
        let f = PolytopeFile::parse(text).unwrap();
        assert_eq!(f.comments, vec!["cross".to_string()]);
        assert!(same_vertices(&f.polytope().unwrap(), &catalog::cross_polytope(2)));
    }

    #[test]
    fn rejects_floats_and_ragged_rows() {
        assert_eq!(
            PolytopeFile::parse("1 0\n0 1.5\n"),
            Err(ParseError::NotInteger { line: 2, token: "1.5".into() })
        );
        assert_eq!(
            PolytopeFile::parse("1 0\n0 1 1\n"),
            Err(ParseError::RaggedRow { line: 2, expected: 2, found: 3 })
        );
        assert_eq!(PolytopeFile::parse("# nothing\n"), Err(ParseError::Empty));
    }

    #[test]
    fn flat_input() {
        assert!(matches!(
            parse_polytope_file("0 0\n1 1\n2 2\n"),
            Err(InputError::Geometry(GeometryError::NotFullDimensional { .. }))
        ));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("7/36").unwrap(), rat(7, 36));
        assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
        assert_eq!(parse_rational(" 6/-4 ").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn coefficient_lists() {
        let p = parse_coeffs("1,7/2,21/4").unwrap();
        assert_eq!(p.coeffs(), &[rat(1, 1), rat(7, 2), rat(21, 4)]);
        assert_eq!(parse_coeffs("5"), Err(ParseError::ConstantPolynomial(Some(0))));
        assert_eq!(parse_coeffs("1,0,0,0"), Err(ParseError::ConstantPolynomial(Some(0))));
        assert!(parse_coeffs("1,,2").is_err());
    }
}
