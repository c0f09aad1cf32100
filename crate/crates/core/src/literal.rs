//! Text syntax for polynomial k-forms.
//!
//! ```text
//! form    := ['+'|'-'] term (('+'|'-') term)*
//! term    := [scalar] factor* [wedge]        (factors may be joined by '*')
//! scalar  := int ['/' int]
//! factor  := 'z' int ['^' int]
//! wedge   := 'dz' int ('^' 'dz' int)*
//! ```
//!
//! Whitespace between tokens is ignored. `3/2 z1^2 z3 dz1^dz2 - z2 dz1^dz3`
//! is a 2-form on any `ℂⁿ` with `n >= 3`. Unsorted wedges such as `dz2^dz1`
//! are normalised with the permutation sign; a repeated differential makes
//! the term vanish.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::PolyKForm;
use crate::index::{sort_with_sign, MultiIndex};
use crate::poly::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Slash,
    Plus,
    Minus,
    Star,
    Caret,
    Z(usize),
    Dz(usize),
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut p = 0;
    let err = |position: usize, message: &str| Error::FormLiteral {
        position,
        message: message.to_string(),
    };
    let digits = |mut q: usize| {
        let start = q;
        while q < bytes.len() && bytes[q].is_ascii_digit() {
            q += 1;
        }
        (start, q)
    };
    while p < bytes.len() {
        let c = bytes[p];
        let start = p;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                p += 1;
                continue;
            }
            b'0'..=b'9' => {
                let (s, e) = digits(p);
                let v: BigInt = text[s..e].parse().map_err(|_| err(s, "bad integer"))?;
                out.push((start, Token::Int(v)));
                p = e;
            }
            b'/' => {
                out.push((start, Token::Slash));
                p += 1;
            }
            b'+' => {
                out.push((start, Token::Plus));
                p += 1;
            }
            b'-' => {
                out.push((start, Token::Minus));
                p += 1;
            }
            b'*' => {
                out.push((start, Token::Star));
                p += 1;
            }
            b'^' => {
                out.push((start, Token::Caret));
                p += 1;
            }
            b'z' | b'd' => {
                let prefix = if c == b'd' {
                    if bytes.get(p + 1) != Some(&b'z') {
                        return Err(err(p, "expected 'dz'"));
                    }
                    2
                } else {
                    1
                };
                let (s, e) = digits(p + prefix);
                if s == e {
                    return Err(err(s, "expected a coordinate number"));
                }
                let i: usize = text[s..e].parse().map_err(|_| err(s, "coordinate number too large"))?;
                if i == 0 {
                    return Err(err(s, "coordinates are numbered from 1"));
                }
                out.push((start, if prefix == 2 { Token::Dz(i) } else { Token::Z(i) }));
                p = e;
            }
            _ => return Err(err(p, &format!("unexpected character {:?}", c as char))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::FormLiteral {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn coordinate(&self, i: usize) -> Result<usize> {
        if i > self.n {
            return Err(self.err(format!("coordinate {i} exceeds n = {}", self.n)));
        }
        Ok(i)
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.bump() {
            Some(Token::Int(v)) => u32::try_from(v).map_err(|_| self.err("exponent too large")),
            _ => {
                self.pos -= 1;
                Err(self.err("expected an exponent after '^'"))
            }
        }
    }

    /// Parses one term; returns the scalar (sign included by caller), the
    /// exponent vector and the raw, possibly unsorted, differential list.
    fn term(&mut self) -> Result<(Scalar, MultiIndex, Vec<usize>)> {
        let mut c = Scalar::one();
        let mut empty = true;
        if let Some(Token::Int(_)) = self.peek() {
            let Some(Token::Int(num)) = self.bump() else {
                unreachable!()
            };
            let mut den = BigInt::one();
            if self.peek() == Some(&Token::Slash) {
                self.bump();
                match self.bump() {
                    Some(Token::Int(d)) if !d.is_zero() => den = d,
                    _ => {
                        self.pos -= 1;
                        return Err(self.err("expected a nonzero denominator"));
                    }
                }
            }
            c = Scalar::new(num, den);
            empty = false;
        }
        let mut alpha = vec![0u32; self.n];
        let mut wedge = Vec::new();
        loop {
            if self.peek() == Some(&Token::Star) {
                if empty {
                    return Err(self.err("'*' must follow a factor"));
                }
                self.bump();
                if !matches!(self.peek(), Some(Token::Z(_) | Token::Dz(_))) {
                    return Err(self.err("expected a factor after '*'"));
                }
            }
            match self.peek() {
                Some(Token::Z(i)) => {
                    let i = self.coordinate(*i)?;
                    self.bump();
                    let mut e = 1;
                    if self.peek() == Some(&Token::Caret) {
                        self.bump();
                        e = self.exponent()?;
                    }
                    alpha[i - 1] += e;
                    empty = false;
                }
                Some(Token::Dz(i)) => {
                    wedge.push(self.coordinate(*i)?);
                    self.bump();
                    while self.peek() == Some(&Token::Caret) {
                        self.bump();
                        match self.peek() {
                            Some(Token::Dz(j)) => {
                                wedge.push(self.coordinate(*j)?);
                                self.bump();
                            }
                            _ => return Err(self.err("expected 'dz' after '^' in a wedge")),
                        }
                    }
                    empty = false;
                    break;
                }
                _ => break,
            }
        }
        if empty {
            return Err(self.err("expected a term"));
        }
        Ok((c, MultiIndex::new(alpha), wedge))
    }
}

/// Parses a form literal on `ℂⁿ`. The degree is read off the wedge blocks;
/// `degree_hint` fixes it for literals without any (e.g. `0`) and is checked
/// against it otherwise.
pub fn parse_form(text: &str, n: usize, degree_hint: Option<usize>) -> Result<PolyKForm> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        n,
    };
    let mut terms = Vec::new();
    let mut degree = degree_hint;
    let mut first = true;
    while parser.peek().is_some() || first {
        let mut negative = false;
        match parser.peek() {
            Some(Token::Plus) => {
                parser.bump();
            }
            Some(Token::Minus) => {
                parser.bump();
                negative = true;
            }
            _ if !first => return Err(parser.err("expected '+' or '-' between terms")),
            _ => {}
        }
        first = false;
        let at = parser.offset();
        let (c, alpha, wedge) = parser.term()?;
        // A zero scalar term carries no degree.
        if c.is_zero() && wedge.is_empty() {
            continue;
        }
        match degree {
            None => degree = Some(wedge.len()),
            Some(k) if k != wedge.len() => {
                return Err(Error::FormLiteral {
                    position: at,
                    message: format!("term of degree {} in a {k}-form", wedge.len()),
                })
            }
            Some(_) => {}
        }
        let Some((sign, index)) = sort_with_sign(&wedge) else {
            continue;
        };
        let c = if negative != (sign < 0) { -c } else { c };
        terms.push((alpha, index, c));
    }
    let k = degree.unwrap_or(0);
    if k > n {
        return Err(Error::DegreeTooLarge { k, n });
    }
    PolyKForm::from_terms(n, k, terms)
}

fn render_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical rendering; `parse_form(render_form(ω), n, Some(k)) == ω`.
pub fn render_form(form: &PolyKForm) -> String {
    if form.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (count, (alpha, index, c)) in form.terms().enumerate() {
        let negative = c.is_negative();
        match (count, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        let mut parts: Vec<String> = Vec::new();
        if !magnitude.is_one() || (alpha.is_constant() && index.is_empty()) {
            parts.push(render_scalar(&magnitude));
        }
        for (i, &e) in alpha.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("z{}", i + 1)),
                _ => parts.push(format!("z{}^{e}", i + 1)),
            }
        }
        if !index.is_empty() {
            let wedge: Vec<String> = index.indices().iter().map(|i| format!("dz{i}")).collect();
            parts.push(wedge.join("^"));
        }
        out.push_str(&parts.join(" "));
    }
    out
}
