//! Tokenizer and the element expression grammar shared by all file formats.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*      juxtaposition multiplies
//! factor := '-' factor | atom ('^' sign? integer)?
//! atom   := integer | label | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groupring::{GroupRing, GroupRingElem};
use crate::ring::Ring;
use crate::scalar::big;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub offset: usize,
}

/// Splits `text` into tokens; offsets are shifted by `base`.
pub fn tokenize(text: &str, base: usize) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Int(text[s..i].parse().unwrap()), offset: base + s });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(text[s..i].to_string()), offset: base + s });
        } else if "+-*/^(),;{}=<>:[]".contains(c) {
            out.push(Token { tok: Tok::Sym(c), offset: base + i });
            i += 1;
        } else {
            return Err(Error::parse(base + i, format!("unexpected character `{}`", text[i..].chars().next().unwrap())));
        }
    }
    Ok(out)
}

/// A parsed value `num / den`.
#[derive(Debug, Clone)]
pub struct RawFrac {
    pub num: GroupRingElem,
    pub den: GroupRingElem,
}

struct Parser<'a> {
    ring: &'a GroupRing,
    toks: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.offset(), msg))
    }

    fn unit(&self, x: GroupRingElem) -> RawFrac {
        RawFrac { num: x, den: self.ring.one() }
    }

    fn mul(&self, a: RawFrac, b: RawFrac) -> RawFrac {
        let r = self.ring;
        simplify(r, RawFrac { num: r.mul(&a.num, &b.num), den: r.mul(&a.den, &b.den) })
    }

    fn div(&self, a: RawFrac, b: RawFrac, at: usize) -> Result<RawFrac> {
        if b.num.is_zero() {
            return Err(Error::parse(at, "division by zero"));
        }
        let r = self.ring;
        if !r.is_commutative() && b.num.monomial_inverse().is_none() {
            return Err(Error::parse(at, "division by a non-unit in a noncommutative ring"));
        }
        Ok(simplify(r, RawFrac { num: r.mul(&a.num, &b.den), den: r.mul(&a.den, &b.num) }))
    }

    fn add(&self, a: RawFrac, b: RawFrac, negate: bool) -> RawFrac {
        let r = self.ring;
        let bn = if negate { r.neg(&b.num) } else { b.num };
        if a.den == b.den {
            return RawFrac { num: r.add(&a.num, &bn), den: a.den };
        }
        simplify(r, RawFrac { num: r.add(&r.mul(&a.num, &b.den), &r.mul(&bn, &a.den)), den: r.mul(&a.den, &b.den) })
    }

    fn expr(&mut self) -> Result<RawFrac> {
        let mut acc = if self.eat('-') {
            let t = self.term()?;
            self.add(self.unit(self.ring.zero()), t, true)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.add(acc, t, false);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.add(acc, t, true);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<RawFrac> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = self.mul(acc, f);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.offset();
                self.pos += 1;
                let f = self.factor()?;
                acc = self.div(acc, f, at)?;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = self.mul(acc, f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RawFrac> {
        if self.eat('-') {
            let f = self.factor()?;
            return Ok(RawFrac { num: self.ring.neg(&f.num), den: f.den });
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        let paren = self.eat('(');
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let e: i64 = match self.peek() {
            Some(Tok::Int(n)) => {
                let n = i64::try_from(n.clone()).map_err(|_| Error::parse(self.offset(), "exponent too large"))?;
                self.pos += 1;
                if neg { -n } else { n }
            }
            _ => return self.err("expected an integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.err("expected `)`");
        }
        if e.unsigned_abs() > 100_000 {
            return Err(Error::parse(at, "exponent too large"));
        }
        let r = self.ring;
        let mut acc = self.unit(r.one());
        let step = if e >= 0 { base } else { self.div(self.unit(r.one()), base, at)? };
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, step.clone());
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RawFrac> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let c = self.ring.coeff().coerce(&big(n))?;
                Ok(self.unit(self.ring.scalar(c)))
            }
            Some(Tok::Ident(l)) => {
                self.pos += 1;
                match self.ring.group().gen_index(&l) {
                    Some(i) => Ok(self.unit(self.ring.gen_pow(i, 1))),
                    None => Err(Error::parse(at, format!("unknown generator `{l}` for {}", self.ring.header()))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(at, "unexpected end of expression")),
        }
    }
}

/// Folds a unit denominator `c·g` into the numerator.
fn simplify(r: &GroupRing, f: RawFrac) -> RawFrac {
    match f.den.monomial_inverse() {
        Some(inv) => RawFrac { num: r.mul(&f.num, &inv), den: r.one() },
        None => f,
    }
}

/// Parses an expression as a fraction; `base` is the offset of `text` in
/// the enclosing file, used in error positions.
pub fn parse_frac(ring: &GroupRing, text: &str, base: usize) -> Result<RawFrac> {
    let toks = tokenize(text, base)?;
    let mut p = Parser { ring, toks, pos: 0, end: base + text.len() };
    if p.toks.is_empty() {
        return Err(Error::parse(base, "empty expression"));
    }
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parses a group-ring element; denominators must be units of the ring.
pub fn parse_elem(ring: &GroupRing, text: &str, base: usize) -> Result<GroupRingElem> {
    let f = parse_frac(ring, text, base)?;
    if f.den == ring.one() {
        Ok(f.num)
    } else {
        Err(Error::parse(base, format!("`{}` is not an element of {} (denominator {})", text.trim(), ring.header(), f.den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CoeffRing;

    fn zt() -> GroupRing {
        GroupRing::parse_header("Z[t]").unwrap()
    }

    #[test]
    fn basic_elements() {
        let r = zt();
        assert_eq!(parse_elem(&r, "2*t^2 - t + 1", 0).unwrap().to_string(), "2*t^2 - t + 1");
        assert_eq!(parse_elem(&r, "2t-1", 0).unwrap().to_string(), "2*t - 1");
        assert_eq!(parse_elem(&r, "(t+1)(t-1)", 0).unwrap().to_string(), "t^2 - 1");
        assert_eq!(parse_elem(&r, "t^-1 * t", 0).unwrap().to_string(), "1");
        assert_eq!(parse_elem(&r, "-t^(-2)", 0).unwrap().to_string(), "-t^-2");
        assert_eq!(parse_elem(&r, "(t^2-1)/t", 0).unwrap().to_string(), "t - t^-1");
    }

    #[test]
    fn fractions() {
        let r = zt();
        let f = parse_frac(&r, "1/(2t-1)", 0).unwrap();
        assert_eq!(f.num.to_string(), "1");
        assert_eq!(f.den.to_string(), "2*t - 1");
        assert!(parse_elem(&r, "1/(2t-1)", 0).is_err());
        assert!(parse_elem(&r, "1/2", 0).is_err());
        let q = GroupRing::parse_header("Q[t]").unwrap();
        assert_eq!(parse_elem(&q, "1/2 t", 0).unwrap().to_string(), "1/2*t");
    }

    #[test]
    fn errors_carry_offsets() {
        let r = zt();
        match parse_elem(&r, "t + x", 10) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 14),
            other => panic!("{other:?}"),
        }
        assert!(parse_elem(&r, "t +", 0).is_err());
        assert!(parse_elem(&r, "t $ 1", 0).is_err());
        assert!(parse_elem(&r, "1/0", 0).is_err());
    }

    #[test]
    fn finite_and_fp() {
        let r = GroupRing::parse_header("F5[C3:g]").unwrap();
        assert_eq!(r.coeff(), CoeffRing::Fp(5));
        assert_eq!(parse_elem(&r, "g^3 + 6g", 0).unwrap().to_string(), "1 + g");
        let d = GroupRing::parse_header("Z[D3:r,s]").unwrap();
        let e = parse_elem(&d, "s r s", 0).unwrap();
        assert_eq!(e, parse_elem(&d, "r^-1", 0).unwrap());
    }
}
