//! Text form of germs.
//!
//! ```text
//! germ   := term (('+' | '-') term)*
//! term   := [sign] [integer] ('*'? factor)*
//! factor := ('x' | 'y') ['^' nat]
//! ```
//!
//! Whitespace is ignored between tokens. The Unicode minus sign is accepted.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{AdegError, Result};
use crate::jets::GermSpec;
use crate::poly::Exp;

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.char_indices().collect(), pos: 0, text }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(i, _)| i)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn err(&self, msg: impl Into<String>) -> AdegError {
        AdegError::Syntax { pos: self.offset(), msg: msg.into() }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.offset();
        let mut v: u64 = 0;
        let mut any = false;
        while let Some(d) = self.chars.get(self.pos).and_then(|(_, c)| c.to_digit(10)) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or(AdegError::Syntax { pos: start, msg: "number too large".into() })?;
            any = true;
            self.bump();
        }
        if any {
            Ok(v)
        } else {
            Err(self.err("expected a number"))
        }
    }
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

/// Parses text into a germ, combining like terms.
pub fn parse_germ(text: &str) -> Result<GermSpec> {
    let mut lx = Lexer::new(text);
    let mut terms: BTreeMap<Exp, i64> = BTreeMap::new();
    let mut first = true;
    loop {
        let mut sign: i64 = 1;
        match lx.peek() {
            None if first => return Err(lx.err("empty input")),
            None => return Err(lx.err("expected a term")),
            Some('+') => lx.bump(),
            Some(c) if is_minus(c) => {
                sign = -1;
                lx.bump();
            }
            Some(_) if first => {}
            Some(c) => return Err(lx.err(format!("expected '+' or '-', found '{c}'"))),
        }
        first = false;
        let (e, c) = term(&mut lx)?;
        let c = c.checked_mul(sign).ok_or_else(|| lx.err("coefficient overflow"))?;
        let slot = terms.entry(e).or_insert(0);
        *slot = slot.checked_add(c).ok_or_else(|| lx.err("coefficient overflow"))?;
        if lx.peek().is_none() {
            break;
        }
    }
    GermSpec::new(terms, text)
}

fn term(lx: &mut Lexer) -> Result<(Exp, i64)> {
    let mut coeff: i64 = 1;
    let mut seen = false;
    if lx.peek().is_some_and(|c| c.is_ascii_digit()) {
        let v = lx.number()?;
        coeff = i64::try_from(v).map_err(|_| lx.err("coefficient too large"))?;
        seen = true;
    }
    let (mut i, mut j) = (0u32, 0u32);
    loop {
        let star = lx.peek() == Some('*');
        if star {
            if !seen {
                return Err(lx.err("'*' needs a left operand"));
            }
            lx.bump();
        }
        match lx.peek() {
            Some(v @ ('x' | 'y')) => {
                lx.bump();
                let mut e = 1u32;
                if lx.peek() == Some('^') {
                    lx.bump();
                    e = u32::try_from(lx.number()?).map_err(|_| lx.err("exponent too large"))?;
                }
                let slot = if v == 'x' { &mut i } else { &mut j };
                *slot = slot.checked_add(e).ok_or_else(|| lx.err("exponent too large"))?;
                seen = true;
            }
            Some(c) if c.is_alphabetic() => {
                return Err(AdegError::UnknownVariable { name: c, pos: lx.offset() });
            }
            Some(c) if star => return Err(lx.err(format!("expected x or y after '*', found '{c}'"))),
            None if star => return Err(lx.err("expected x or y after '*'")),
            Some(c) if c == '+' || is_minus(c) => break,
            None => break,
            Some(c) => {
                if seen {
                    return Err(lx.err(format!("unexpected '{c}'")));
                }
                return Err(lx.err(format!("expected a term, found '{c}'")));
            }
        }
    }
    if !seen {
        return Err(lx.err("expected a term"));
    }
    Ok(((i, j), coeff))
}

/// Canonical text: by degree, then x-exponent descending.
pub fn format_germ(g: &GermSpec) -> String {
    let mut terms: Vec<(Exp, i64)> = g.terms().iter().map(|(e, c)| (*e, *c)).collect();
    terms.sort_by_key(|&((i, j), _)| (i + j, std::cmp::Reverse(i)));
    let mut out = String::new();
    for (k, ((i, j), c)) in terms.into_iter().enumerate() {
        let mag = c.unsigned_abs();
        if k == 0 {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        if mag != 1 {
            parts.push(mag.to_string());
        }
        for (v, e) in [('x', i), ('y', j)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        let _ = write!(out, "{}", parts.join("*"));
    }
    out
}
