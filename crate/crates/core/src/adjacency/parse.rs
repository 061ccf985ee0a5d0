//! Text grammar for adjacency specs.
//!
//! ```text
//! spec := cu | head '(' spec (',' spec)+ ')'
//! head := 'NP' digits | 'T' | 'X' | 'L'
//! cu   := 'c' digits ('@' digits)?
//! ```
//!
//! Whitespace is ignored. Offsets in errors are 1-based character positions.

use std::fmt;

use thiserror::Error;

use super::{AdjacencySpec, ProductKind};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {expected}, found {found}")]
    Syntax { offset: usize, expected: String, found: String },
    #[error("arity error at offset {offset}: {message}")]
    Arity { offset: usize, message: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::Arity { offset, .. } => *offset,
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src_len: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let all: Vec<char> = src.chars().collect();
        let chars = all.iter().enumerate().filter(|(_, c)| !c.is_whitespace()).map(|(i, &c)| (i + 1, c)).collect();
        Parser { chars, pos: 0, src_len: all.len(), _src: src }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src_len + 1, |&(o, _)| o)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        ParseError::Syntax { offset: self.offset(), expected: expected.to_string(), found }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<usize, ParseError> {
        let start = self.offset();
        let mut value: usize = 0;
        let mut any = false;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(c as usize - '0' as usize))
                .ok_or_else(|| ParseError::Arity { offset: start, message: "number too large".into() })?;
            any = true;
            self.pos += 1;
        }
        if any {
            Ok(value)
        } else {
            Err(self.error("digit"))
        }
    }

    fn spec(&mut self) -> Result<AdjacencySpec, ParseError> {
        let start = self.offset();
        match self.peek() {
            Some('c') => {
                self.pos += 1;
                let u = self.digits()?;
                if u == 0 {
                    return Err(ParseError::Arity { offset: start, message: "c0 is not an adjacency".into() });
                }
                let dim = if self.eat('@') {
                    let at = self.offset();
                    let n = self.digits()?;
                    if n < u {
                        return Err(ParseError::Arity {
                            offset: at,
                            message: format!("c{u} needs dimension >= {u}, got {n}"),
                        });
                    }
                    Some(n)
                } else {
                    None
                };
                Ok(AdjacencySpec::Cu { u, dim })
            }
            Some('N') => {
                self.pos += 1;
                if !self.eat('P') {
                    return Err(self.error("'P'"));
                }
                let u = self.digits()?;
                let factors = self.factors()?;
                if u == 0 || u > factors.len() {
                    return Err(ParseError::Arity {
                        offset: start,
                        message: format!("NP{u} needs 1 <= {u} <= {} factors", factors.len()),
                    });
                }
                Ok(AdjacencySpec::Product { kind: ProductKind::Np(u), factors })
            }
            Some(c @ ('T' | 'X' | 'L')) => {
                self.pos += 1;
                let kind = match c {
                    'T' => ProductKind::Tensor,
                    'X' => ProductKind::Cartesian,
                    _ => ProductKind::Lex,
                };
                Ok(AdjacencySpec::Product { kind, factors: self.factors()? })
            }
            _ => Err(self.error("'c', 'NP', 'T', 'X' or 'L'")),
        }
    }

    fn factors(&mut self) -> Result<Vec<AdjacencySpec>, ParseError> {
        if !self.eat('(') {
            return Err(self.error("'('"));
        }
        let mut factors = vec![self.spec()?];
        loop {
            if self.eat(',') {
                factors.push(self.spec()?);
            } else if factors.len() >= 2 && self.eat(')') {
                return Ok(factors);
            } else if factors.len() < 2 {
                return Err(self.error("','"));
            } else {
                return Err(self.error("',' or ')'"));
            }
        }
    }
}

pub(super) fn parse(src: &str) -> Result<AdjacencySpec, ParseError> {
    let mut parser = Parser::new(src);
    let spec = parser.spec()?;
    if parser.peek().is_some() {
        return Err(parser.error("end of input"));
    }
    Ok(spec)
}

impl fmt::Display for AdjacencySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjacencySpec::Cu { u, dim: None } => write!(f, "c{u}"),
            AdjacencySpec::Cu { u, dim: Some(n) } => write!(f, "c{u}@{n}"),
            AdjacencySpec::Product { kind, factors } => {
                match kind {
                    ProductKind::Np(u) => write!(f, "NP{u}(")?,
                    ProductKind::Tensor => write!(f, "T(")?,
                    ProductKind::Cartesian => write!(f, "X(")?,
                    ProductKind::Lex => write!(f, "L(")?,
                }
                for (i, s) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["c1", "c3@4", "NP2(c1,c1,c2@2)", "T(c2,c1)", "L(X(c1,c1),c2@3)"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
        assert_eq!(parse(" T ( c2 , c1 ) ").unwrap().to_string(), "T(c2,c1)");
    }

    #[test]
    fn error_positions() {
        let e = parse("L(c1").unwrap_err();
        assert_eq!(e.offset(), 5);
        assert!(matches!(e, ParseError::Syntax { .. }));
        assert!(matches!(parse("NP3(c1,c1)"), Err(ParseError::Arity { offset: 1, .. })));
        assert_eq!(parse("T(c1)").unwrap_err().offset(), 5);
        assert_eq!(parse("c1 x").unwrap_err().offset(), 4);
        assert!(parse("c0").is_err());
        assert!(parse("c3@2").is_err());
        assert!(parse("").is_err());
    }
}
