//! Finite group presentations and their abelianization.
//!
//! The JSON schema is fixed: `{"generators": [names…], "relators":
//! [[[name, exponent], …], …]}` with every exponent `+1` or `-1`
//! (powers repeated, never aggregated), so serialization round-trips
//! bit-exactly. Word text syntax is whitespace-separated tokens `name`
//! or `name^-1`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{AbelianInvariants, IntegerMatrix};
use crate::word::{Generator, Letter, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator name must be nonempty")]
    EmptyGeneratorName,
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("relator {relator}: {source}")]
    BadRelator { relator: usize, source: WordError },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("cannot parse word token {0:?}")]
    BadToken(String),
    #[error("exponent must be +1 or -1, got {0}")]
    BadExponent(i64),
}

/// A finite presentation: generator names plus freely reduced relators.
///
/// Relators are stored freely reduced but not cyclically reduced, so
/// constructors can preserve the verbatim shape of textbook relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr", into = "PresentationRepr")]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        generators: Vec<Generator>,
        relators: Vec<Word>,
    ) -> Result<Self, PresentationError> {
        let mut seen = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.name().is_empty() {
                return Err(PresentationError::EmptyGeneratorName);
            }
            if seen.insert(g.name().to_string(), i).is_some() {
                return Err(PresentationError::DuplicateGenerator(
                    g.name().to_string(),
                ));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            Word::reduce_checked(r.letters(), generators.len())
                .map_err(|source| PresentationError::BadRelator { relator: i, source })?;
        }
        Ok(Presentation { generators, relators })
    }

    pub fn free(names: &[&str]) -> Result<Self, PresentationError> {
        Presentation::new(names.iter().map(|n| Generator::new(*n)).collect(), Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name() == name)
    }

    /// One row per relator, one column per generator; entries are the
    /// signed exponent sums. This matrix presents the abelianization.
    pub fn exponent_sum_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for letter in r.letters() {
                m[(i, letter.gen)] += letter.exp as i128;
            }
        }
        m
    }

    /// Invariant factors of the abelianized group.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        AbelianInvariants::from_relation_matrix(&self.exponent_sum_matrix())
    }

    /// Render a word in `name` / `name^-1` token syntax.
    pub fn format_word(&self, word: &Word) -> String {
        word.letters()
            .iter()
            .map(|l| {
                let name = self.generators[l.gen].name();
                if l.exp == 1 {
                    name.to_string()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parse whitespace-separated `name` / `name^-1` tokens.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.strip_suffix("^-1") {
                Some(base) => (base, -1),
                None => match token.split_once('^') {
                    Some((base, "1")) => (base, 1),
                    Some(_) => return Err(PresentationError::BadToken(token.to_string())),
                    None => (token, 1),
                },
            };
            let gen = self
                .generator_index(name)
                .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))?;
            letters.push(Letter { gen, exp });
        }
        Ok(Word::reduce(letters))
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

impl From<Presentation> for PresentationRepr {
    fn from(p: Presentation) -> Self {
        let relators = p
            .relators
            .iter()
            .map(|r| {
                r.letters()
                    .iter()
                    .map(|l| (p.generators[l.gen].name().to_string(), l.exp as i64))
                    .collect()
            })
            .collect();
        PresentationRepr {
            generators: p.generators.into_iter().map(|g| g.name().to_string()).collect(),
            relators,
        }
    }
}

impl TryFrom<PresentationRepr> for Presentation {
    type Error = PresentationError;

    fn try_from(repr: PresentationRepr) -> Result<Self, Self::Error> {
        let generators: Vec<Generator> =
            repr.generators.iter().map(Generator::new).collect();
        let index: HashMap<&str, usize> = repr
            .generators
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut relators = Vec::with_capacity(repr.relators.len());
        for letters in &repr.relators {
            let mut word = Vec::with_capacity(letters.len());
            for (name, exp) in letters {
                let gen = *index
                    .get(name.as_str())
                    .ok_or_else(|| PresentationError::UnknownGenerator(name.clone()))?;
                if *exp != 1 && *exp != -1 {
                    return Err(PresentationError::BadExponent(*exp));
                }
                word.push(Letter { gen, exp: *exp as i8 });
            }
            relators.push(Word::reduce(word));
        }
        Presentation::new(generators, relators)
    }
}
