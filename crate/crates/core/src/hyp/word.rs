use std::fmt::Write as _;

use crate::error::{Error, Result};

/// One generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column index in a coset table: `2·gen` for the generator, `2·gen + 1`
    /// for its inverse.
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }

    pub fn from_column(col: usize) -> Self {
        Self::new(col / 2, col % 2 == 1)
    }
}

/// Freely reduced word in a finite generating set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn generator(gen: usize) -> Self {
        Word(vec![Letter::new(gen, false)])
    }

    /// `gen^exp`.
    pub fn power(gen: usize, exp: i64) -> Self {
        let l = Letter::new(gen, exp < 0);
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut w = Word::empty();
        for _ in 0..n {
            w = w.concat(self);
        }
        w
    }

    /// Parse text like `"xz^3"`, `"z^-2x"`; generator names are single
    /// characters.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut w = Word::empty();
        let mut i = 0;
        if chars == ['1'] || chars.is_empty() {
            return Ok(w);
        }
        while i < chars.len() {
            let c = chars[i];
            let gen = names
                .iter()
                .position(|n| n.chars().eq(std::iter::once(c)))
                .ok_or_else(|| Error::parse(format!("unknown generator {c:?} in word {text:?}")))?;
            i += 1;
            let mut exp: i64 = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                exp = s
                    .parse()
                    .map_err(|_| Error::parse(format!("bad exponent in word {text:?}")))?;
            }
            for l in Word::power(gen, exp).0 {
                w.push(l);
            }
        }
        Ok(w)
    }

    /// Inverse of [`Word::parse`]; runs of one letter are written as powers.
    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            let exp = if l.inverse { -run } else { run };
            out.push_str(&names[l.gen]);
            if exp != 1 {
                let _ = write!(out, "^{exp}");
            }
            i = j;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_format() {
        let w = Word::parse("xz^3", &names()).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.format(&names()), "xz^3");
        let w = Word::parse("z^-2x", &names()).unwrap();
        assert_eq!(w.format(&names()), "z^-2x");
        assert_eq!(Word::parse("zz^-1", &names()).unwrap(), Word::empty());
        assert_eq!(Word::empty().format(&names()), "1");
        assert!(Word::parse("q", &names()).is_err());
    }

    #[test]
    fn inverse_cancels() {
        let w = Word::parse("xyz^2y^-1", &names()).unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
    }
}
