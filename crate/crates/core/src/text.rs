//! Text formats for scalars, Laurent polynomials, matrices, bundle files and
//! factorization certificates.
//!
//! ```text
//! file     := header? matrix
//! header   := "rank:" INT NEWLINE
//! matrix   := row (";" row)*
//! row      := entry ("," entry)*
//! entry    := term ("+" term)*
//! term     := coeff ("*" monomial)? | monomial
//! monomial := "z^" SINT
//! coeff    := rat | "(" rat "," rat ")"
//! rat      := SINT ("/" UINT)?
//! ```
//!
//! Whitespace, including line breaks, is insignificant between tokens.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bundle::VectorBundle;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use crate::laurent::LaurentPoly;
use crate::lmatrix::LaurentMatrix;
use crate::splitter::Factorization;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    /// Line number of `src[0]`, 1-based.
    first_line: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, first_line: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            first_line,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = self.first_line + before.iter().filter(|&&b| b == b'\n').count();
        let line_start = before
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |p| p + 1);
        Error::Parse {
            line,
            column: self.pos - line_start + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn sint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let negative = match self.src.get(self.pos) {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n = self.digits()?;
        Ok(if negative { -n } else { n })
    }

    fn rat(&mut self) -> Result<Rational> {
        let num = self.sint()?;
        if self.eat(b'/') {
            self.skip_ws();
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                self.pos = at;
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn coeff(&mut self) -> Result<GaussianRational> {
        if self.eat(b'(') {
            let re = self.rat()?;
            self.expect(b',')?;
            let im = self.rat()?;
            self.expect(b')')?;
            Ok(GaussianRational::new(re, im))
        } else {
            Ok(GaussianRational::from_real(self.rat()?))
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let at = self.pos;
        let n = self.sint()?;
        i64::try_from(n).map_err(|_| {
            self.pos = at;
            self.error("exponent out of range")
        })
    }

    fn monomial(&mut self) -> Result<i64> {
        self.expect(b'z')?;
        self.expect(b'^')?;
        self.exponent()
    }

    fn term(&mut self) -> Result<(i64, GaussianRational)> {
        match self.peek() {
            Some(b'z') => Ok((self.monomial()?, GaussianRational::one())),
            Some(b'(' | b'-' | b'+' | b'0'..=b'9') => {
                let c = self.coeff()?;
                if self.eat(b'*') {
                    Ok((self.monomial()?, c))
                } else {
                    Ok((0, c))
                }
            }
            Some(other) => Err(self.error(format!("unexpected '{}'", other as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn entry(&mut self) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        loop {
            let (e, c) = self.term()?;
            p.add_term(e, &c);
            if !self.eat(b'+') {
                return Ok(p);
            }
        }
    }

    fn matrix(&mut self) -> Result<LaurentMatrix> {
        let mut rows = Vec::new();
        loop {
            let row_start = self.pos;
            let mut row = vec![self.entry()?];
            while self.eat(b',') {
                row.push(self.entry()?);
            }
            if let Some(first) = rows.first().map(Vec::len) {
                if row.len() != first {
                    self.pos = row_start;
                    self.skip_ws();
                    return Err(
                        self.error(format!("row has {} entries, expected {first}", row.len()))
                    );
                }
            }
            rows.push(row);
            if !self.eat(b';') {
                break;
            }
        }
        if !self.at_end() {
            return Err(self.error("expected ';', ',', '+' or end of input"));
        }
        LaurentMatrix::from_rows(rows).map_err(|e| self.error(e.to_string()))
    }
}

/// A single scalar: `a`, `a/b` or `(a/b,c/d)`.
pub fn parse_scalar(s: &str) -> Result<GaussianRational> {
    let mut p = Parser::new(s, 1);
    let c = p.coeff()?;
    if !p.at_end() {
        return Err(p.error("trailing input after scalar"));
    }
    Ok(c)
}

/// One matrix entry in the term grammar.
pub fn parse_laurent(s: &str) -> Result<LaurentPoly> {
    let mut p = Parser::new(s, 1);
    let e = p.entry()?;
    if !p.at_end() {
        return Err(p.error("trailing input after polynomial"));
    }
    Ok(e)
}

pub fn parse_matrix(s: &str) -> Result<LaurentMatrix> {
    Parser::new(s, 1).matrix()
}

/// A parsed bundle file before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleDocument {
    pub declared_rank: Option<usize>,
    pub matrix: LaurentMatrix,
}

/// Splits off an optional `rank: k` header line.
pub fn parse_document(text: &str) -> Result<BundleDocument> {
    let body_start = text.len() - text.trim_start().len();
    let rest = &text[body_start..];
    let header_line = 1 + text[..body_start].matches('\n').count();
    let (declared_rank, body, body_line) = match rest.strip_prefix("rank:") {
        Some(after) => {
            let line_end = after.find('\n').unwrap_or(after.len());
            let value = after[..line_end].trim();
            let rank: usize = value.parse().map_err(|_| Error::Parse {
                line: header_line,
                column: 6,
                message: format!("invalid rank '{value}'"),
            })?;
            (Some(rank), &after[line_end..], header_line)
        }
        None => (None, text, 1),
    };
    let matrix = Parser::new(body, body_line).matrix()?;
    if let Some(k) = declared_rank {
        if k != matrix.rows() || k != matrix.cols() {
            return Err(Error::Parse {
                line: header_line,
                column: 1,
                message: format!(
                    "declared rank {k} does not match the {}x{} matrix",
                    matrix.rows(),
                    matrix.cols()
                ),
            });
        }
    }
    Ok(BundleDocument {
        declared_rank,
        matrix,
    })
}

/// Parses and validates a bundle.
pub fn parse_bundle(text: &str) -> Result<VectorBundle> {
    VectorBundle::new(parse_document(text)?.matrix)
}

/// Multi-line matrix text: one row per line, rows terminated by ` ;`.
pub fn format_matrix(m: &LaurentMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect::<Vec<_>>()
        .join(" ;\n")
}

pub fn format_bundle(e: &VectorBundle) -> String {
    format!("rank: {}\n{}\n", e.rank(), format_matrix(e.transition()))
}

/// Labeled `W:`, `U:`, `D:` blocks.
pub fn serialize_factorization(f: &Factorization) -> String {
    format!(
        "W:\n{}\nU:\n{}\nD:\n{}\n",
        format_matrix(&f.w),
        format_matrix(&f.u),
        format_matrix(&f.d)
    )
}

pub fn parse_factorization(text: &str) -> Result<Factorization> {
    let mut blocks: Vec<(char, usize, String)> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        let label = ['W', 'U', 'D']
            .into_iter()
            .find(|l| trimmed.strip_prefix(*l).is_some_and(|r| r.starts_with(':')));
        match (label, blocks.last_mut()) {
            (Some(l), _) => blocks.push((l, n + 1, trimmed[2..].to_string() + "\n")),
            (None, Some(block)) => {
                block.2.push_str(line);
                block.2.push('\n');
            }
            (None, None) if trimmed.is_empty() => {}
            (None, None) => {
                return Err(Error::Parse {
                    line: n + 1,
                    column: 1,
                    message: "expected a 'W:' block".into(),
                })
            }
        }
    }
    let order: Vec<char> = blocks.iter().map(|b| b.0).collect();
    if order != ['W', 'U', 'D'] {
        return Err(Error::Parse {
            line: blocks.first().map_or(1, |b| b.1),
            column: 1,
            message: "expected blocks W:, U:, D: in that order".into(),
        });
    }
    let mut mats = blocks
        .iter()
        .map(|(_, line, body)| Parser::new(body, *line).matrix());
    Ok(Factorization {
        w: mats.next().expect("three blocks")?,
        u: mats.next().expect("three blocks")?,
        d: mats.next().expect("three blocks")?,
    })
}
