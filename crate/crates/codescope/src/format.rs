//! Text format for linear codes.
//!
//! ```text
//! # ternary Hamming code
//! field 3 1
//! n 4
//! k 2
//! 1 0 1 1
//! 0 1 1 2
//! ```
//!
//! Extension fields may name their modulus, constant term first:
//! `field 2 3 poly 1 1 0 1`. Without it the default modulus is used.

use std::fmt::Write as _;
use std::sync::Arc;

use codescope_core::{Elem, Field, LinearCode, Matrix};

use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token.parse().map_err(|_| parse_err(line, format!("expected {what}, found `{token}`")))
}

/// Parses a code file. Rows must be linearly independent.
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty code file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() < 3 || tokens[0] != "field" {
        return Err(parse_err(ln, "expected `field <p> <r> [poly c0 ... 1]`"));
    }
    let p: u32 = number(ln, tokens[1], "a prime")?;
    let r: u32 = number(ln, tokens[2], "an extension degree")?;
    let poly_tokens = match tokens.get(3) {
        Some(&"poly") => &tokens[4..],
        Some(_) => &tokens[3..],
        None => &[][..],
    };
    let poly: Vec<u32> = poly_tokens.iter().map(|t| number(ln, t, "a coefficient")).collect::<Result<_>>()?;
    let field = Field::new(p, r, if poly.is_empty() { None } else { Some(&poly) })?;
    let field = Arc::new(field);

    let mut keyed = |key: &str| -> Result<usize> {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(ln, format!("missing `{key}` line")))?;
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            [k, v] if k == key => number(ln, v, "an integer"),
            _ => Err(parse_err(ln, format!("expected `{key} <int>`"))),
        }
    };
    let n = keyed("n")?;
    let k = keyed("k")?;
    if n == 0 {
        return Err(parse_err(ln, "length must be positive"));
    }

    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(ln, format!("expected {k} generator rows")))?;
        let row: Vec<Elem> = l
            .split_whitespace()
            .map(|t| {
                let v: u32 = number(ln, t, "an element code")?;
                field.check(v).map_err(|e| parse_err(ln, e.to_string()))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(ln, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected content after the generator rows"));
    }
    let g = Matrix::from_rows(&rows, n)?;
    Ok(LinearCode::new(field, g)?)
}

/// Field header line, naming the modulus for extension fields.
pub fn field_header(field: &Field) -> String {
    let mut s = format!("field {} {}", field.p(), field.degree());
    if field.degree() > 1 {
        s.push_str(" poly");
        for c in field.modulus() {
            let _ = write!(s, " {c}");
        }
    }
    s
}

/// Serializes a code; `parse_code(&write_code(c, None))` reproduces it exactly.
pub fn write_code(code: &LinearCode, comment: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(s, "# {line}");
        }
    }
    let _ = writeln!(s, "{}", field_header(code.field()));
    let _ = writeln!(s, "n {}", code.n());
    let _ = writeln!(s, "k {}", code.k());
    for i in 0..code.k() {
        let row: Vec<String> = code.generator().row(i).iter().map(|e| e.code().to_string()).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let c = parse_code("# hamming\nfield 3 1\nn 4 # length\nk 2\n1 0 1 1\n0 1 1 2\n").unwrap();
        assert_eq!((c.n(), c.k(), c.q()), (4, 2, 3));
        assert!(c.is_self_dual());
    }

    #[test]
    fn explicit_modulus() {
        let c = parse_code("field 2 3 poly 1 1 0 1\nn 2\nk 1\n1 7\n").unwrap();
        assert_eq!(c.field().modulus(), &[1, 1, 0, 1]);
        let bare = parse_code("field 2 3 1 1 0 1\nn 2\nk 1\n1 7\n").unwrap();
        assert_eq!(bare, c);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_code("field 5 1\nn 3\nk 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_code("field 5 1\nn 3\nk 1\n1 2 9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        assert!(parse_code("field 6 1\nn 3\nk 1\n1 2 3\n").is_err());
        assert!(parse_code("field 3 1\nn 2\nk 2\n1 1\n2 2\n").is_err());
        assert!(parse_code("").is_err());
    }

    #[test]
    fn round_trip() {
        let text = "field 2 2 poly 1 1 1\nn 4\nk 2\n1 0 2 3\n0 1 3 2\n";
        let c = parse_code(text).unwrap();
        assert_eq!(write_code(&c, None), text);
    }
}
