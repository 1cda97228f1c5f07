//! Words in the free group on S × G.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GElt, GroupDesc};
use crate::groupring::GroupRing;
use crate::parse::{parse_elem, tokenize, Tok, Token};
use crate::scalar::CoeffRing;

/// The letter `(sym, g)^exp` with `exp = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub sym: String,
    pub g: GElt,
    pub inv: bool,
}

impl Letter {
    pub fn new(sym: &str, g: GElt) -> Self {
        Letter { sym: sym.to_string(), g, inv: false }
    }

    pub fn inverse(&self) -> Letter {
        Letter { sym: self.sym.clone(), g: self.g.clone(), inv: !self.inv }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.sym == other.sym && self.g == other.g && self.inv != other.inv
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(vec![])
    }

    pub fn letter(sym: &str, g: GElt) -> Self {
        Word(vec![Letter::new(sym, g)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|p| p.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(&other.0).cloned())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::empty();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Right action of `g`: `(s, h) ↦ (s, hg)`.
    pub fn translate(&self, group: &GroupDesc, g: &GElt) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter { sym: l.sym.clone(), g: group.mul(&l.g, g), inv: l.inv })
                .collect(),
        )
    }

    /// Cyclically reduced form (conjugate with no cancelling ends).
    pub fn cyclic_reduce(&self) -> Word {
        let mut v = self.0.clone();
        while v.len() >= 2 && v[0].cancels(v.last().unwrap()) {
            v.pop();
            v.remove(0);
        }
        Word(v)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|l| l.sym.as_str())
    }

    /// Replaces every symbol through `f` (keeping group parts).
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Word {
        Word(self.0.iter().map(|l| Letter { sym: f(&l.sym), g: l.g.clone(), inv: l.inv }).collect())
    }

    /// Substitutes for each letter `(s, g)^±1` the word `images(s)·g` (inverted
    /// for inverse letters).
    pub fn substitute(&self, group: &GroupDesc, images: impl Fn(&str) -> Option<Word>) -> Result<Word> {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.0 {
            let w = images(&l.sym).ok_or_else(|| Error::InvalidMap(format!("no image for generator `{}`", l.sym)))?;
            let w = w.translate(group, &l.g);
            let w = if l.inv { w.inverse() } else { w };
            out.extend(w.0);
        }
        Ok(Word::reduce(out))
    }

    pub fn format(&self, group: &GroupDesc) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            let n = (j - i) as i64;
            let l = &self.0[i];
            let e = if l.inv { -n } else { n };
            let base = format!("({},{})", l.sym, group.format_elt(&l.g));
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
            i = j;
        }
        parts.join("")
    }
}

/// Displays a word together with its base group.
pub struct WordDisplay<'a>(pub &'a Word, pub &'a GroupDesc);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1))
    }
}

/// Parses a group element written as a monomial in the generator labels.
pub fn parse_gelt(group: &GroupDesc, text: &str, base: usize) -> Result<GElt> {
    let ring = GroupRing::new(group.clone(), CoeffRing::Z);
    let e = parse_elem(&ring, text, base)?;
    match e.terms().iter().next() {
        Some((g, c)) if e.terms().len() == 1 && *c == crate::scalar::int(1) => Ok(g.clone()),
        _ => Err(Error::parse(base, format!("`{}` is not a group element", text.trim()))),
    }
}

/// Parses a word: letters `(s, g)` or bare `s` (meaning `(s, 1)`), each
/// optionally raised to an integer power; `1` is the empty word.
pub fn parse_word(group: &GroupDesc, symbols: &[String], text: &str, base: usize) -> Result<Word> {
    let toks = tokenize(text, base)?;
    let end = base + text.len();
    let mut p = WordParser { group, symbols, toks, pos: 0, end, text, base };
    let w = p.word()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.offset(), "unexpected token in word"));
    }
    Ok(w)
}

struct WordParser<'a> {
    group: &'a GroupDesc,
    symbols: &'a [String],
    toks: Vec<Token>,
    pos: usize,
    end: usize,
    text: &'a str,
    base: usize,
}

impl WordParser<'_> {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn symbol(&mut self) -> Result<String> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) if self.symbols.contains(&s) => {
                self.pos += 1;
                Ok(s)
            }
            Some(Tok::Ident(s)) => Err(Error::parse(at, format!("unknown generator `{s}`"))),
            _ => Err(Error::parse(at, "expected a generator symbol")),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut acc = Word::empty();
        if matches!(self.peek(), Some(Tok::Int(n)) if *n == 1.into()) && self.toks.len() == 1 {
            self.pos += 1;
            return Ok(acc);
        }
        while let Some(t) = self.peek().cloned() {
            let w = match t {
                Tok::Sym('(') => {
                    self.pos += 1;
                    let s = self.symbol()?;
                    if !self.eat(',') {
                        return Err(Error::parse(self.offset(), "expected `,` in letter"));
                    }
                    // group element runs to the matching `)`
                    let start = self.offset();
                    let mut depth = 0;
                    while let Some(t) = self.peek() {
                        match t {
                            Tok::Sym('(') => depth += 1,
                            Tok::Sym(')') if depth == 0 => break,
                            Tok::Sym(')') => depth -= 1,
                            _ => {}
                        }
                        self.pos += 1;
                    }
                    let stop = self.offset();
                    if !self.eat(')') {
                        return Err(Error::parse(self.offset(), "expected `)`"));
                    }
                    let g = parse_gelt(self.group, &self.text[start - self.base..stop - self.base], start)?;
                    Word::letter(&s, g)
                }
                Tok::Ident(_) => {
                    let s = self.symbol()?;
                    Word::letter(&s, self.group.identity())
                }
                _ => break,
            };
            let w = if self.eat('^') {
                let neg = self.eat('-');
                match self.peek().cloned() {
                    Some(Tok::Int(n)) => {
                        self.pos += 1;
                        let n = i64::try_from(n).map_err(|_| Error::parse(self.offset(), "exponent too large"))?;
                        if n > 10_000 {
                            return Err(Error::parse(self.offset(), "exponent too large"));
                        }
                        w.pow(if neg { -n } else { n })
                    }
                    _ => return Err(Error::parse(self.offset(), "expected integer exponent")),
                }
            } else {
                w
            };
            acc = acc.mul(&w);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let g = GroupDesc::infinite_cyclic("t").unwrap();
        let syms = vec!["s".to_string()];
        let w = parse_word(&g, &syms, "(s,t)(s,1)^-2", 0).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.format(&g), "(s,t)(s,1)^-2");
        assert_eq!(parse_word(&g, &syms, "s s^-1", 0).unwrap(), Word::empty());
        assert_eq!(parse_word(&g, &syms, "1", 0).unwrap(), Word::empty());
        assert!(parse_word(&g, &syms, "(x,1)", 0).is_err());
        assert!(parse_word(&g, &syms, "(s,2t)", 0).is_err());
    }

    #[test]
    fn translation_and_inverse() {
        let g = GroupDesc::cyclic(2, "g").unwrap();
        let syms = vec!["s".to_string()];
        let w = parse_word(&g, &syms, "(s,1)(s,g)", 0).unwrap();
        let h = g.generator(0);
        assert_eq!(w.translate(&g, &h).format(&g), "(s,g)(s,1)");
        assert!(w.mul(&w.inverse()).is_empty());
    }
}
