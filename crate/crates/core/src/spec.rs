//! Textual ring specifications.
//!
//! ```text
//! ring  := zmod(INT) | product(ring, ring) | tables(STRING) | fixture(IDENT)
//!        | quotient(ring, ideal) | duplication(ring, ideal)
//!        | amalgam(ring, ring, hom, ideal)
//! ideal := ideal( [INT {, INT}] )
//! hom   := identity | reduction | map(INT {, INT})
//! ```
//!
//! Every production starts with a distinct keyword, so one token of
//! lookahead decides it. Integers in `ideal(...)` and `map(...)` are element
//! indices of the ring they refer to.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::amalgam::{amalgamate, duplication, AmalgamRing};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::hom::RingHom;
use crate::ideal::Ideal;
use crate::ring::{quotient_ring, Elem, FiniteRing};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    Zmod(usize),
    Product(Box<RingSpec>, Box<RingSpec>),
    Tables(String),
    Fixture(String),
    Quotient(Box<RingSpec>, Vec<Elem>),
    Duplication(Box<RingSpec>, Vec<Elem>),
    Amalgam { a: Box<RingSpec>, b: Box<RingSpec>, hom: HomSpec, ideal: Vec<Elem> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomSpec {
    Identity,
    Reduction,
    Map(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at line {line}, column {column}: {message} (expected {})", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn list(f: &mut fmt::Formatter<'_>, xs: &[Elem]) -> fmt::Result {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    write!(f, "{}", parts.join(", "))
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "zmod({n})"),
            RingSpec::Product(a, b) => write!(f, "product({a}, {b})"),
            RingSpec::Tables(p) => write!(f, "tables({p:?})"),
            RingSpec::Fixture(name) => write!(f, "fixture({name})"),
            RingSpec::Quotient(r, g) => {
                write!(f, "quotient({r}, ideal(")?;
                list(f, g)?;
                write!(f, "))")
            }
            RingSpec::Duplication(r, g) => {
                write!(f, "duplication({r}, ideal(")?;
                list(f, g)?;
                write!(f, "))")
            }
            RingSpec::Amalgam { a, b, hom, ideal } => {
                write!(f, "amalgam({a}, {b}, {hom}, ideal(")?;
                list(f, ideal)?;
                write!(f, "))")
            }
        }
    }
}

impl fmt::Display for HomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomSpec::Identity => write!(f, "identity"),
            HomSpec::Reduction => write!(f, "reduction"),
            HomSpec::Map(m) => {
                write!(f, "map(")?;
                list(f, m)?;
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Str(String),
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, column, message: message.into(), expected: vec!["a valid token".into()] }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn tokens(mut self) -> std::result::Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            if self.pos == self.src.len() {
                out.push((Tok::Eof, line, col));
                return Ok(out);
            }
            let c = self.src[self.pos];
            let tok = match c {
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b',' => {
                    self.bump();
                    Tok::Comma
                }
                b'"' => {
                    self.bump();
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos] != b'"' {
                        self.bump();
                    }
                    if self.pos == self.src.len() {
                        return Err(self.error(line, col, "unterminated string"));
                    }
                    let s = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                    self.bump();
                    Tok::Str(s)
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    Tok::Int(text.parse().map_err(|_| self.error(line, col, "integer too large"))?)
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || matches!(self.src[self.pos], b'_' | b'-'))
                    {
                        self.bump();
                    }
                    Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
                }
                _ => return Err(self.error(line, col, format!("unexpected character {:?}", c as char))),
            };
            out.push((tok, line, col));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

const RING_KEYWORDS: [&str; 7] = ["zmod", "product", "tables", "fixture", "quotient", "duplication", "amalgam"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn fail<T>(&self, expected: &[&str]) -> std::result::Result<T, ParseError> {
        let (tok, line, column) = &self.toks[self.pos];
        Err(ParseError {
            line: *line,
            column: *column,
            message: format!("unexpected {}", tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, want: Tok, name: &str) -> std::result::Result<(), ParseError> {
        if *self.peek() == want {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn int(&mut self) -> std::result::Result<usize, ParseError> {
        match *self.peek() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn ident(&mut self) -> std::result::Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(&["identifier"]),
        }
    }

    fn int_list(&mut self, allow_empty: bool) -> std::result::Result<Vec<usize>, ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen && allow_empty {
            self.pos += 1;
            return Ok(out);
        }
        out.push(self.int()?);
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.pos += 1;
                    out.push(self.int()?);
                }
                Tok::RParen => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.fail(&["','", "')'"]),
            }
        }
    }

    fn ideal(&mut self) -> std::result::Result<Vec<usize>, ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == "ideal" => {
                self.pos += 1;
                self.int_list(true)
            }
            _ => self.fail(&["'ideal'"]),
        }
    }

    fn hom(&mut self) -> std::result::Result<HomSpec, ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == "identity" => {
                self.pos += 1;
                Ok(HomSpec::Identity)
            }
            Tok::Ident(s) if s == "reduction" => {
                self.pos += 1;
                Ok(HomSpec::Reduction)
            }
            Tok::Ident(s) if s == "map" => {
                self.pos += 1;
                Ok(HomSpec::Map(self.int_list(false)?))
            }
            _ => self.fail(&["'identity'", "'reduction'", "'map'"]),
        }
    }

    fn ring(&mut self) -> std::result::Result<RingSpec, ParseError> {
        let kw = match self.peek() {
            Tok::Ident(s) if RING_KEYWORDS.contains(&s.as_str()) => s.clone(),
            _ => return self.fail(&RING_KEYWORDS),
        };
        self.pos += 1;
        self.expect(Tok::LParen, "'('")?;
        let spec = match kw.as_str() {
            "zmod" => RingSpec::Zmod(self.int()?),
            "product" => {
                let a = self.ring()?;
                self.expect(Tok::Comma, "','")?;
                RingSpec::Product(Box::new(a), Box::new(self.ring()?))
            }
            "tables" => match self.peek().clone() {
                Tok::Str(s) => {
                    self.pos += 1;
                    RingSpec::Tables(s)
                }
                _ => return self.fail(&["string"]),
            },
            "fixture" => RingSpec::Fixture(self.ident()?),
            "quotient" | "duplication" => {
                let r = Box::new(self.ring()?);
                self.expect(Tok::Comma, "','")?;
                let g = self.ideal()?;
                if kw == "quotient" {
                    RingSpec::Quotient(r, g)
                } else {
                    RingSpec::Duplication(r, g)
                }
            }
            "amalgam" => {
                let a = Box::new(self.ring()?);
                self.expect(Tok::Comma, "','")?;
                let b = Box::new(self.ring()?);
                self.expect(Tok::Comma, "','")?;
                let hom = self.hom()?;
                self.expect(Tok::Comma, "','")?;
                RingSpec::Amalgam { a, b, hom, ideal: self.ideal()? }
            }
            _ => unreachable!(),
        };
        self.expect(Tok::RParen, "')'")?;
        Ok(spec)
    }
}

pub fn parse_spec(text: &str) -> std::result::Result<RingSpec, ParseError> {
    let toks = Lexer { src: text.as_bytes(), pos: 0, line: 1, col: 1 }.tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let spec = p.ring()?;
    if *p.peek() != Tok::Eof {
        return p.fail(&["end of input"]);
    }
    Ok(spec)
}

impl std::str::FromStr for RingSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_spec(s)
    }
}

/// The result of evaluating a spec: a plain ring, or an amalgam that keeps
/// its construction data.
#[derive(Debug, Clone)]
pub enum Evaluated {
    Ring(FiniteRing),
    Amalgam(AmalgamRing),
}

impl Evaluated {
    pub fn ring(&self) -> &FiniteRing {
        match self {
            Evaluated::Ring(r) => r,
            Evaluated::Amalgam(w) => w.ring(),
        }
    }
}

impl HomSpec {
    pub fn eval(&self, a: &FiniteRing, b: &FiniteRing) -> Result<RingHom> {
        match self {
            HomSpec::Identity => {
                if !a.same_ring(b) {
                    return Err(Error::invalid("identity hom between different rings"));
                }
                Ok(RingHom::identity(a))
            }
            HomSpec::Reduction => RingHom::reduction(a, b),
            HomSpec::Map(m) => RingHom::new(a, b, m.clone()),
        }
    }
}

impl RingSpec {
    pub fn eval(&self, caps: &Caps) -> Result<Evaluated> {
        Ok(match self {
            RingSpec::Zmod(n) => Evaluated::Ring(FiniteRing::zmod(*n)?),
            RingSpec::Product(a, b) => {
                Evaluated::Ring(FiniteRing::product(&a.eval_ring(caps)?, &b.eval_ring(caps)?).ring)
            }
            RingSpec::Tables(path) => Evaluated::Ring(read_table_file(Path::new(path))?),
            RingSpec::Fixture(name) => Evaluated::Ring(
                fixtures::by_name(name).ok_or_else(|| Error::invalid(format!("unknown fixture {name}")))?,
            ),
            RingSpec::Quotient(r, gens) => {
                let r = r.eval_ring(caps)?;
                Evaluated::Ring(quotient_ring(&r, &Ideal::generated(&r, gens)?)?.0)
            }
            RingSpec::Duplication(r, gens) => {
                let r = r.eval_ring(caps)?;
                Evaluated::Amalgam(duplication(&r, &Ideal::generated(&r, gens)?, caps)?)
            }
            RingSpec::Amalgam { a, b, hom, ideal } => {
                let a = a.eval_ring(caps)?;
                let b = b.eval_ring(caps)?;
                let f = hom.eval(&a, &b)?;
                let j = Ideal::generated(&b, ideal)?;
                Evaluated::Amalgam(amalgamate(&a, &b, &f, &j, caps)?)
            }
        })
    }

    pub fn eval_ring(&self, caps: &Caps) -> Result<FiniteRing> {
        Ok(self.eval(caps)?.ring().clone())
    }

    pub fn eval_amalgam(&self, caps: &Caps) -> Result<AmalgamRing> {
        match self.eval(caps)? {
            Evaluated::Amalgam(w) => Ok(w),
            Evaluated::Ring(_) => Err(Error::invalid(format!("{self} is not an amalgam or duplication"))),
        }
    }
}

/// Parses the table format: `order n`, `n` addition rows, `n` multiplication
/// rows, `zero i`, `one j`. Blank lines and `#` comments are ignored.
pub fn parse_table_text(text: &str, label: &str) -> Result<FiniteRing> {
    let mut words = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .peekable();
    let mut keyword = |kw: &str| -> Result<usize> {
        match words.next() {
            Some(w) if w == kw => {}
            other => return Err(Error::invalid(format!("table file: expected '{kw}', found {other:?}"))),
        }
        words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| Error::invalid(format!("table file: '{kw}' needs an integer")))
    };
    let n = keyword("order")?;
    let mut table = |what: &str| -> Result<Vec<Elem>> {
        (0..n * n)
            .map(|_| {
                words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| Error::invalid(format!("table file: short {what} table")))
            })
            .collect()
    };
    let add = table("addition")?;
    let mul = table("multiplication")?;
    let mut keyword = |kw: &str| -> Result<usize> {
        match words.next() {
            Some(w) if w == kw => {}
            other => return Err(Error::invalid(format!("table file: expected '{kw}', found {other:?}"))),
        }
        words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| Error::invalid(format!("table file: '{kw}' needs an integer")))
    };
    let zero = keyword("zero")?;
    let one = keyword("one")?;
    FiniteRing::from_flat(n, add, mul, zero, one, label)
}

pub fn read_table_file(path: &Path) -> Result<FiniteRing> {
    let text = std::fs::read_to_string(path)?;
    parse_table_text(&text, &format!("tables({})", path.display()))
}

pub fn write_table_text(ring: &FiniteRing) -> String {
    let n = ring.order();
    let mut s = format!("order {n}\n");
    for t in [ring.add_table(), ring.mul_table()] {
        for row in t.chunks(n) {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
    }
    s.push_str(&format!("zero {}\none {}\n", ring.zero(), ring.one()));
    s
}
