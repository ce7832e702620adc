//! Words over a single generator family, and their text form.
//!
//! Tokens are whitespace separated; the empty string is the empty word.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;
use core::ops::{Deref, Mul};

use crate::error::{DomainError, ParseError};
use crate::generator::{
    BraidLetter, DoublePrimeGenerator, Gn2Generator, PairLetter, PlainGenerator, PrimeGenerator,
    StrandCount,
};

/// A generator of one of the involution-generated families.
pub trait Letter: Copy + Ord + Hash + fmt::Debug + fmt::Display {
    /// Family name used in messages.
    const FAMILY: &'static str;

    fn parse_token(tok: &str) -> Result<Self, String>;

    /// Largest strand index mentioned by the letter.
    fn max_index(&self) -> usize;
}

impl Letter for PrimeGenerator {
    const FAMILY: &'static str = "prime";
    fn parse_token(tok: &str) -> Result<Self, String> {
        PrimeGenerator::parse_token(tok)
    }
    fn max_index(&self) -> usize {
        let (i, j, k) = self.indices();
        i.max(j).max(k)
    }
}

impl Letter for PlainGenerator {
    const FAMILY: &'static str = "plain";
    fn parse_token(tok: &str) -> Result<Self, String> {
        PlainGenerator::parse_token(tok)
    }
    fn max_index(&self) -> usize {
        self.indices()[2]
    }
}

impl Letter for DoublePrimeGenerator {
    const FAMILY: &'static str = "double-prime";
    fn parse_token(tok: &str) -> Result<Self, String> {
        DoublePrimeGenerator::parse_token(tok)
    }
    fn max_index(&self) -> usize {
        let (i, j, k) = self.indices();
        i.max(j).max(k)
    }
}

impl Letter for Gn2Generator {
    const FAMILY: &'static str = "gn2";
    fn parse_token(tok: &str) -> Result<Self, String> {
        Gn2Generator::parse_token(tok)
    }
    fn max_index(&self) -> usize {
        Gn2Generator::max_index(*self)
    }
}

impl Letter for PairLetter {
    const FAMILY: &'static str = "z2free";
    fn parse_token(tok: &str) -> Result<Self, String> {
        PairLetter::parse_token(tok)
    }
    fn max_index(&self) -> usize {
        self.first().max(self.second())
    }
}

/// A finite product of involutive generators of one family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word<G>(Vec<G>);

impl<G> Default for Word<G> {
    fn default() -> Self {
        Word(Vec::new())
    }
}

impl<G: Letter> Word<G> {
    pub fn new(letters: Vec<G>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[G] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<G> {
        self.0
    }

    pub fn push(&mut self, g: G) {
        self.0.push(g);
    }

    /// The inverse word. Every generator is an involution, so this is the
    /// reversal.
    pub fn inverse(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word repeated twice.
    pub fn squared(&self) -> Self {
        self.concat(self)
    }

    /// Fails if some letter mentions a strand beyond `n`.
    pub fn check_strands(&self, n: StrandCount) -> Result<(), DomainError> {
        match self.0.iter().map(Letter::max_index).max() {
            Some(m) if m > n.get() => Err(DomainError::IndexOutOfRange {
                index: m,
                n: n.get(),
            }),
            _ => Ok(()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        tokens(text)
            .map(|(token, offset, tok)| {
                G::parse_token(tok).map_err(|message| ParseError {
                    token,
                    offset,
                    message,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Inverse of a word over involutions: its reversal.
pub fn invert_word<G: Letter>(w: &Word<G>) -> Word<G> {
    w.inverse()
}

impl<G> Deref for Word<G> {
    type Target = [G];
    fn deref(&self) -> &[G] {
        &self.0
    }
}

impl<G: Letter> FromIterator<G> for Word<G> {
    fn from_iter<I: IntoIterator<Item = G>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<G: Letter> Mul for &Word<G> {
    type Output = Word<G>;
    fn mul(self, rhs: Self) -> Word<G> {
        self.concat(rhs)
    }
}

impl<G: fmt::Display> fmt::Display for Word<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}

fn write_spaced<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (k, g) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{g}")?;
    }
    Ok(())
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.split_ascii_whitespace()
        .enumerate()
        .map(move |(k, tok)| (k, tok.as_ptr() as usize - text.as_ptr() as usize, tok))
}

/// A word in the pure braid generators `b_{ij}^{±1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(Vec<BraidLetter>);

impl BraidWord {
    pub fn new(letters: Vec<BraidLetter>) -> Self {
        BraidWord(letters)
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reversed with every exponent flipped.
    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|b| b.inverted()).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BraidWord(v)
    }

    pub fn check_strands(&self, n: StrandCount) -> Result<(), DomainError> {
        for b in &self.0 {
            let (_, j) = b.strands();
            n.check(j)?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        tokens(text)
            .map(|(token, offset, tok)| {
                BraidLetter::parse_token(tok).map_err(|message| ParseError {
                    token,
                    offset,
                    message,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BraidWord)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.0)
    }
}
