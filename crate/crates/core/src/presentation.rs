//! Group presentations `< gens | relations >`.
//!
//! Relations are words (read as `w = 1`) or chains `w1 = w2 = ... = wk`,
//! which expand to the relators `w1 w2^-1, w2 w3^-1, ...` in that order.
//! Products are written by juxtaposition or `*`, powers as `w^k`, and
//! `(w)^g` conjugates by the generator `g`, meaning `g^-1 w g`.

use std::fmt;

use crate::error::{Error, Result};

/// A word in the free group: syllables `(generator index, exponent)`,
/// freely reduced, with no zero exponents and no two adjacent syllables on
/// the same generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![(g, 1)])
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut w = Word::identity();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters, counting `x^5` as five.
    pub fn len(&self) -> usize {
        self.0.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    /// Letters as `(generator, +1 | -1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.0.iter().flat_map(|&(g, e)| std::iter::repeat_n((g, e < 0), e.unsigned_abs() as usize))
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut w = self.clone();
        for &(g, e) in &other.0 {
            w.push(g, e);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    fn write(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char('*')?;
            }
            f.write_str(&names[g])?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for w in &relators {
            if let Some(&(g, _)) = w.syllables().iter().find(|(g, _)| *g >= generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{g}")));
            }
        }
        let relators = relators.into_iter().filter(|w| !w.is_empty()).collect();
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn word_to_string(&self, w: &Word) -> String {
        let mut s = String::new();
        w.write(&self.generators, &mut s).expect("writing to a String");
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generators.join(","))?;
        for (i, w) in self.relators.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            w.write(&self.generators, f)?;
        }
        f.write_str(" >")
    }
}

impl std::str::FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_presentation(s)
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser { src: text, pos: 0, generators: Vec::new() };
    p.presentation()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    generators: Vec<String>,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, what: &[char]) -> Result<()> {
        for &c in what {
            if self.eat(c) {
                return Ok(());
            }
        }
        self.err(format!("expected `{}`", what[0]))
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek_raw() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return self.err("expected an identifier"),
        }
        while let Some(c) = self.peek_raw() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((start, self.src[start..self.pos].to_string()))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let v: i64 = self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Syntax { position: start, message: "integer out of range".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect(&['<', '⟨'])?;
        if self.peek() != Some('|') {
            loop {
                let (at, name) = self.ident()?;
                if self.generators.contains(&name) {
                    return Err(Error::Syntax { position: at, message: format!("duplicate generator `{name}`") });
                }
                self.generators.push(name);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect(&['|'])?;
        let mut relators = Vec::new();
        if !matches!(self.peek(), Some('>') | Some('⟩')) {
            loop {
                let mut words = vec![self.word()?];
                while self.eat('=') {
                    words.push(self.word()?);
                }
                if words.len() == 1 {
                    relators.push(words.pop().unwrap());
                } else {
                    for pair in words.windows(2) {
                        relators.push(pair[0].concat(&pair[1].inverse()));
                    }
                }
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect(&['>', '⟩'])?;
        if self.peek().is_some() {
            return self.err("trailing input after `>`");
        }
        Presentation::new(std::mem::take(&mut self.generators), relators)
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    w = w.concat(&self.factor()?);
                }
                Some(c) if c == '(' || c == '1' || c.is_ascii_alphabetic() || c == '_' => {
                    w = w.concat(&self.factor()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let (mut w, parenthesized) = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(&[')'])?;
                (inner, true)
            }
            Some('1') => {
                self.pos += 1;
                (Word::identity(), false)
            }
            _ => (self.atom()?, false),
        };
        while self.eat('^') {
            let c = self.peek();
            if c == Some('(') {
                self.pos += 1;
                let k = self.integer()?;
                self.expect(&[')'])?;
                w = w.pow(k);
            } else if matches!(c, Some(ch) if ch == '-' || ch.is_ascii_digit()) {
                w = w.pow(self.integer()?);
            } else if parenthesized {
                let (at, name) = self.ident()?;
                let g = self.generators.iter().position(|x| *x == name).ok_or_else(|| {
                    if name.len() > 1 {
                        Error::Syntax { position: at, message: format!("conjugator `{name}` must be one generator") }
                    } else {
                        Error::UnknownGenerator(name.clone())
                    }
                })?;
                let g = Word::generator(g);
                w = g.inverse().concat(&w).concat(&g);
            } else {
                return self.err("conjugation `w^g` needs parentheses: `(w)^g`");
            }
        }
        Ok(w)
    }

    /// A generator name, or a run of single-letter generator names such as `xy`.
    fn atom(&mut self) -> Result<Word> {
        let (_, name) = self.ident()?;
        if let Some(g) = self.generators.iter().position(|x| *x == name) {
            return Ok(Word::generator(g));
        }
        let mut w = Word::identity();
        for ch in name.chars() {
            let s = ch.to_string();
            match self.generators.iter().position(|x| *x == s) {
                Some(g) => w = w.concat(&Word::generator(g)),
                None => return Err(Error::UnknownGenerator(name)),
            }
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclic_presentation() {
        let p = parse_presentation("< x | x^5 >").unwrap();
        assert_eq!(p.generators(), ["x"]);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].len(), 5);
    }

    #[test]
    fn quaternion_presentation() {
        let p = parse_presentation("< x,y | y^4, x^2*y^-2, x*y*x^-1*y >").unwrap();
        assert_eq!(p.relators().len(), 3);
        assert_eq!(p.relators()[1].syllables(), &[(0, 2), (1, -2)]);
        assert_eq!(p.to_string(), "< x,y | y^4, x^2*y^-2, x*y*x^-1*y >");
    }

    #[test]
    fn equation_chains_expand_pairwise() {
        let a = parse_presentation("< x,y | x^2 = (xy)^3 = y^4, x^4 >").unwrap();
        let b = parse_presentation("< x,y | x^2*(x*y)^-3, (x y)^3 y^-4, x^4 >").unwrap();
        assert_eq!(a, b);
        let c = parse_presentation("< x,y | x^2*(x*y)^-3, x^2*y^-4, x^4 >").unwrap();
        assert_eq!(c.relators()[1].syllables(), &[(0, 2), (1, -4)]);
    }

    #[test]
    fn conjugation_and_identity() {
        let p = parse_presentation("< x,y,z | (x)^z = y, y^2 = 1 >").unwrap();
        // z^-1 x z y^-1
        assert_eq!(p.relators()[0].syllables(), &[(2, -1), (0, 1), (2, 1), (1, -1)]);
        assert_eq!(p.relators()[1].syllables(), &[(1, 2)]);
        let q = parse_presentation("< a | a^(-2) a^2 >").unwrap();
        assert!(q.relators().is_empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_presentation("< x | y^2 >"), Err(Error::UnknownGenerator(s)) if s == "y"));
        assert!(matches!(parse_presentation("< x | x^ >"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("< x,y | x^y >"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("< x | x^2 "), Err(Error::Syntax { position: 10, .. })));
        assert!(matches!(parse_presentation("< x,x | x >"), Err(Error::Syntax { .. })));
        assert!(parse_presentation("< | >").unwrap().generators().is_empty());
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        let word = prop::collection::vec((0usize..3, -4i64..=4), 0..6).prop_map(Word::from_syllables);
        prop::collection::vec(word, 0..4)
            .prop_map(|rels| Presentation::new(vec!["a".into(), "b".into(), "c2".into()], rels).unwrap())
    }

    proptest! {
        #[test]
        fn print_parse_fixed_point(p in arb_presentation()) {
            let printed = p.to_string();
            let reparsed = parse_presentation(&printed).unwrap();
            prop_assert_eq!(&reparsed, &p);
            prop_assert_eq!(reparsed.to_string(), printed);
        }

        #[test]
        fn words_are_reduced(w in prop::collection::vec((0usize..2, -3i64..=3), 0..10)) {
            let w = Word::from_syllables(w);
            prop_assert!(w.syllables().iter().all(|&(_, e)| e != 0));
            prop_assert!(w.syllables().windows(2).all(|p| p[0].0 != p[1].0));
            prop_assert!(w.concat(&w.inverse()).is_empty());
        }
    }
}
