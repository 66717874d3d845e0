//! Freely reduced words over an indexed generator alphabet.
//!
//! A [`Word`] stores a sequence of signed letters with exponents `±1`
//! (powers are never aggregated) and is kept freely reduced at all
//! times: no letter is ever adjacent to its own inverse.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A named generator of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    name: String,
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator { name: name.into() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// One signed letter: generator index plus exponent `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, exp: 1 }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, exp: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter refers to generator {index} but only {limit} generators exist")]
    InvalidGenerator { index: usize, limit: usize },
    #[error("letter exponent must be +1 or -1, got {0}")]
    InvalidExponent(i32),
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Single-letter word.
    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter::pos(gen)] }
    }

    /// Freely reduce a raw letter sequence. The result is the unique
    /// reduced form; applying it twice changes nothing.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in raw {
            debug_assert!(letter.exp == 1 || letter.exp == -1);
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word { letters: stack }
    }

    /// Freely reduce after validating every generator index against the
    /// alphabet size.
    pub fn reduce_checked(
        raw: &[Letter],
        num_generators: usize,
    ) -> Result<Self, WordError> {
        for letter in raw {
            if letter.gen >= num_generators {
                return Err(WordError::InvalidGenerator {
                    index: letter.gen,
                    limit: num_generators,
                });
            }
            if letter.exp != 1 && letter.exp != -1 {
                return Err(WordError::InvalidExponent(letter.exp as i32));
            }
        }
        Ok(Word::reduce(raw.iter().copied()))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        // Reversing a reduced word keeps it reduced.
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Reduced concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word::reduce(
            self.letters.iter().copied().chain(other.letters.iter().copied()),
        )
    }

    /// Reduced product of several factors.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Word>) -> Word {
        Word::reduce(
            factors
                .into_iter()
                .flat_map(|w| w.letters.iter().copied()),
        )
    }

    /// Conjugate `u · self · u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        Word::product([u, self, &u.inverse()])
    }

    /// Largest generator index occurring in the word.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Signed exponent sum of a given generator.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.exp as i64)
            .sum()
    }

    pub fn is_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }
}
