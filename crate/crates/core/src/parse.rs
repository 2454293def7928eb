//! Recursive-descent parser for algebra specs such as `C(3) + spin(4) + O3`.
//!
//! ```text
//! spec   := factor ("+" factor)*
//! factor := "R(" int ")" | "C(" int ")" | "H(" int ")" | "O3" | "spin(" int ")"
//! ```
//!
//! Whitespace between tokens is ignored. `O(3)` is accepted as a synonym for
//! `O3`; any other octonionic size is a semantic error.

use std::str::FromStr;

use thiserror::Error;

use crate::jordan::{AlgebraDescriptor, SimpleFactor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax { offset: usize, expected: String, found: String },
    #[error("semantic error at byte {offset}: {message}")]
    Semantic { offset: usize, message: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::Semantic { offset, .. } => *offset,
        }
    }
}

pub fn parse_algebra_spec(text: &str) -> Result<AlgebraDescriptor, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut factors = vec![p.factor()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => {
                p.pos += 1;
                factors.push(p.factor()?);
            }
            Some(_) => return Err(p.unexpected("'+' or end of input")),
        }
    }
    Ok(AlgebraDescriptor { factors })
}

impl FromStr for AlgebraDescriptor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_algebra_spec(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const FACTOR_EXPECTED: &str = "a factor (R(k), C(k), H(k), O3 or spin(n))";

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                format!("'{}'", rest.chars().next().unwrap_or('?'))
            }
        };
        ParseError::Syntax { offset: self.pos, expected: expected.to_string(), found }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let v = digits.parse().map_err(|_| ParseError::Semantic {
            offset: start,
            message: format!("integer {digits} is out of range"),
        })?;
        Ok((v, start))
    }

    fn paren_int(&mut self) -> Result<(usize, usize), ParseError> {
        self.expect(b'(')?;
        let v = self.int()?;
        self.expect(b')')?;
        Ok(v)
    }

    fn factor(&mut self) -> Result<SimpleFactor, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with(b"spin") {
            self.pos += 4;
            let (n, at) = self.paren_int()?;
            if n < 2 {
                return Err(ParseError::Semantic {
                    offset: at,
                    message: format!("spin({n}): spin factors need n >= 2"),
                });
            }
            return Ok(SimpleFactor::Spin(n));
        }
        let Some(head) = self.peek() else {
            return Err(self.unexpected(FACTOR_EXPECTED));
        };
        match head {
            b'R' | b'C' | b'H' => {
                self.pos += 1;
                let (k, at) = self.paren_int()?;
                if k == 0 {
                    return Err(ParseError::Semantic {
                        offset: at,
                        message: "matrix size must be at least 1".into(),
                    });
                }
                Ok(match head {
                    b'R' => SimpleFactor::RealSym(k),
                    b'C' => SimpleFactor::ComplexHerm(k),
                    _ => SimpleFactor::QuatHerm(k),
                })
            }
            b'O' => {
                self.pos += 1;
                self.skip_ws();
                let (k, at) = if self.peek() == Some(b'(') { self.paren_int()? } else { self.int()? };
                if k != 3 {
                    return Err(ParseError::Semantic {
                        offset: at,
                        message: format!(
                            "O({k}): octonionic factor only k=3 (larger octonionic matrices are not Jordan algebras)"
                        ),
                    });
                }
                Ok(SimpleFactor::Albert)
            }
            _ => {
                self.pos = start;
                Err(self.unexpected(FACTOR_EXPECTED))
            }
        }
    }
}
