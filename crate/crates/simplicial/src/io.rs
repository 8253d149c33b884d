//! The complex text format.
//!
//! UTF-8 lines; every non-empty line not starting with `#` is one facet given
//! as whitespace-separated non-negative integers. Line order and the order of
//! integers within a line carry no meaning.

use std::path::Path;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::face::Vertex;

/// Parses a complex from text. Errors carry the 1-based line number and the
/// offending token.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut facet = Vec::new();
        for token in line.split_whitespace() {
            let v: Vertex = token.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected a non-negative integer, got {token:?}"),
            })?;
            if v > crate::face::MAX_VERTEX {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("vertex id {v} exceeds the supported universe (<= 63)"),
                });
            }
            facet.push(v);
        }
        facets.push(facet);
    }
    if facets.is_empty() {
        return Err(Error::EmptyInput);
    }
    Complex::build(&facets)
}

pub fn read_complex(path: impl AsRef<Path>) -> Result<Complex> {
    let text = std::fs::read_to_string(path)?;
    parse_complex(&text)
}

/// Writes a complex in the text format: one facet per line, vertices in
/// increasing order, facets in the canonical order.
pub fn write_complex(c: &Complex) -> String {
    let mut out = String::new();
    for f in c.facets() {
        let ids: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ignores_comments_and_order() {
        let c = parse_complex("# a strip\n3 2 1\n\n2 3 4\n  3 4 5  \n").unwrap();
        assert_eq!(
            c,
            Complex::build(&[vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]]).unwrap()
        );
    }

    #[test]
    fn parse_errors() {
        match parse_complex("1 2\nx 3\n") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("\"x\""));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse_complex("# only comments\n"), Err(Error::EmptyInput)));
        assert!(matches!(parse_complex(""), Err(Error::EmptyInput)));
        assert!(matches!(parse_complex("99 100"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn round_trip() {
        let c = Complex::build(&[vec![0, 2, 9], vec![1, 2, 3], vec![7, 8, 9]]).unwrap();
        assert_eq!(parse_complex(&write_complex(&c)).unwrap(), c);
    }
}
