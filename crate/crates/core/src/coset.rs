//! Coset tables of kernels of permutation representations, Schreier
//! transversals, and Reidemeister–Schreier rewriting.
//!
//! Because every subgroup handled here is the kernel of a verified
//! homomorphism onto a finite permutation group, the coset table comes
//! directly from the regular action: cosets are the image-group
//! elements in the canonical enumeration order of
//! [`PermHomomorphism::enumerate_image`], and a generator acts by right
//! multiplication. No Todd–Coxeter enumeration is needed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::AbelianInvariants;
use crate::perm::{PermError, PermHomomorphism};
use crate::presentation::Presentation;
use crate::word::{Generator, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CosetError {
    #[error("homomorphism does not verify; violated relators: {0:?}")]
    UnverifiedHomomorphism(Vec<usize>),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Right-coset action of the base presentation's generators on the
/// cosets of the kernel. Row 0 is the subgroup coset.
#[derive(Clone, Debug)]
pub struct CosetTable {
    degree: usize,
    num_generators: usize,
    /// forward[c][g] = c · g
    forward: Vec<Vec<usize>>,
    /// backward[c][g] = c · g⁻¹
    backward: Vec<Vec<usize>>,
    base: Presentation,
}

impl CosetTable {
    pub const DEFAULT_DEGREE_BOUND: usize = 3_628_800; // 10!

    /// Table of the regular action of the image group: one coset per
    /// image element, so the degree equals the image order.
    pub fn regular(h: &PermHomomorphism, bound: usize) -> Result<Self, CosetError> {
        let violations = h.verify_relators();
        if !violations.is_empty() {
            return Err(CosetError::UnverifiedHomomorphism(violations));
        }
        let elements = h.enumerate_image(bound)?;
        let index: std::collections::HashMap<_, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let degree = elements.len();
        let num_generators = h.domain().num_generators();
        let mut forward = vec![vec![0; num_generators]; degree];
        let mut backward = vec![vec![0; num_generators]; degree];
        for (c, elem) in elements.iter().enumerate() {
            for (g, image) in h.generator_images().iter().enumerate() {
                let product = image.compose(elem).expect("equal degrees");
                let d = index[&product];
                forward[c][g] = d;
                backward[d][g] = c;
            }
        }
        Ok(CosetTable {
            degree,
            num_generators,
            forward,
            backward,
            base: h.domain().clone(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn step(&self, coset: usize, letter: Letter) -> usize {
        if letter.exp == 1 {
            self.forward[coset][letter.gen]
        } else {
            self.backward[coset][letter.gen]
        }
    }

    /// Trace a word from a coset, letters applied left to right.
    pub fn trace(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.step(c, l))
    }

    /// Every relator traced from every coset must return to it.
    pub fn relator_trace_closure_holds(&self) -> bool {
        self.base.relators().iter().all(|r| {
            (0..self.degree).all(|c| self.trace(c, r) == c)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransversalStrategy {
    Bfs,
    Dfs,
}

impl std::fmt::Display for TransversalStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransversalStrategy::Bfs => write!(f, "bfs"),
            TransversalStrategy::Dfs => write!(f, "dfs"),
        }
    }
}

/// A prefix-closed set of coset representatives (Schreier transversal).
#[derive(Clone, Debug)]
pub struct SchreierTransversal {
    strategy: TransversalStrategy,
    representatives: Vec<Word>,
}

/// Letters in exploration order: generator index ascending, positive
/// exponent before negative.
fn letter_order(num_generators: usize) -> impl Iterator<Item = Letter> {
    (0..num_generators).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
}

impl SchreierTransversal {
    /// BFS yields the shortest representative per coset, ties broken by
    /// the letter order, so representatives are shortest-lex. DFS yields
    /// the first-visit spanning tree under the same letter order. Both
    /// trees are prefix-closed.
    pub fn new(table: &CosetTable, strategy: TransversalStrategy) -> Self {
        let n = table.degree();
        let mut representatives: Vec<Option<Word>> = vec![None; n];
        representatives[0] = Some(Word::empty());
        match strategy {
            TransversalStrategy::Bfs => {
                let mut queue = std::collections::VecDeque::from([0usize]);
                while let Some(c) = queue.pop_front() {
                    let rep = representatives[c].clone().expect("queued cosets have reps");
                    for letter in letter_order(table.num_generators()) {
                        let d = table.step(c, letter);
                        if representatives[d].is_none() {
                            representatives[d] =
                                Some(rep.concat(&Word::reduce([letter])));
                            queue.push_back(d);
                        }
                    }
                }
            }
            TransversalStrategy::Dfs => {
                let mut stack = vec![0usize];
                while let Some(c) = stack.pop() {
                    let rep = representatives[c].clone().expect("stacked cosets have reps");
                    // reversed so the first letter in order is explored first
                    let letters: Vec<Letter> =
                        letter_order(table.num_generators()).collect();
                    for letter in letters.into_iter().rev() {
                        let d = table.step(c, letter);
                        if representatives[d].is_none() {
                            representatives[d] =
                                Some(rep.concat(&Word::reduce([letter])));
                            stack.push(d);
                        }
                    }
                }
            }
        }
        SchreierTransversal {
            strategy,
            representatives: representatives
                .into_iter()
                .map(|r| r.expect("coset graph is connected"))
                .collect(),
        }
    }

    pub fn strategy(&self) -> TransversalStrategy {
        self.strategy
    }

    pub fn representative(&self, coset: usize) -> &Word {
        &self.representatives[coset]
    }

    pub fn representatives(&self) -> &[Word] {
        &self.representatives
    }

    /// Schreier property: every prefix of a representative is itself a
    /// representative.
    pub fn is_prefix_closed(&self, table: &CosetTable) -> bool {
        self.representatives.iter().all(|rep| {
            (0..rep.len()).all(|k| {
                let prefix = Word::reduce(rep.letters()[..k].iter().copied());
                let coset = table.trace(0, &prefix);
                self.representatives[coset] == prefix
            })
        })
    }
}

/// Rewriting statistics, kept auditable against the Schreier index
/// formula: nontrivial generators = degree·|gens| − (degree − 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStats {
    pub degree: usize,
    pub base_generators: usize,
    pub base_relators: usize,
    /// All (coset, generator) pairs: degree × base_generators.
    pub schreier_pairs: usize,
    /// Pairs whose Schreier word is freely trivial (spanning tree edges).
    pub trivial_pairs: usize,
    /// Schreier generators kept after deleting trivial ones.
    pub subgroup_generators: usize,
    /// Rewritten relators before any reduction: degree × base_relators.
    pub relators_rewritten: usize,
    /// Relators kept after free reduction (nonempty ones).
    pub subgroup_relators: usize,
}

/// A presentation of the kernel subgroup, with provenance.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    presentation: Presentation,
    /// Expansion of each subgroup generator as a word in the base group,
    /// aligned with the presentation's generator list.
    schreier_words: Vec<Word>,
    base: Presentation,
    strategy: TransversalStrategy,
    stats: RewriteStats,
}

impl SubgroupPresentation {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// The presentation this subgroup was rewritten from.
    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn schreier_words(&self) -> &[Word] {
        &self.schreier_words
    }

    pub fn strategy(&self) -> TransversalStrategy {
        self.strategy
    }

    pub fn stats(&self) -> &RewriteStats {
        &self.stats
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        self.presentation.abelian_invariants()
    }

    /// Length-1 relators force their generator trivial; substitute and
    /// repeat. This is the only simplification applied, so the output
    /// stays recognizable against the raw Schreier data.
    pub fn simplified(&self) -> SubgroupPresentation {
        let mut generators: Vec<Generator> = self.presentation.generators().to_vec();
        let mut words: Vec<Word> = self.schreier_words.clone();
        let mut relators: Vec<Word> = self.presentation.relators().to_vec();
        while let Some(trivial_gen) = relators
            .iter()
            .find(|r| r.len() == 1)
            .map(|r| r.letters()[0].gen)
        {
            generators.remove(trivial_gen);
            words.remove(trivial_gen);
            relators = relators
                .iter()
                .map(|r| {
                    Word::reduce(r.letters().iter().filter(|l| l.gen != trivial_gen).map(
                        |l| Letter {
                            gen: if l.gen > trivial_gen { l.gen - 1 } else { l.gen },
                            exp: l.exp,
                        },
                    ))
                })
                .filter(|r| !r.is_empty())
                .collect();
        }
        let mut stats = self.stats.clone();
        stats.subgroup_generators = generators.len();
        stats.subgroup_relators = relators.len();
        SubgroupPresentation {
            presentation: Presentation::new(generators, relators)
                .expect("simplification preserves validity"),
            schreier_words: words,
            base: self.base.clone(),
            strategy: self.strategy,
            stats,
        }
    }
}

/// The Schreier generator of a (coset, generator) pair:
/// `rep(c) · g · rep(c·g)⁻¹`.
pub fn schreier_word(
    table: &CosetTable,
    transversal: &SchreierTransversal,
    coset: usize,
    gen: usize,
) -> Word {
    let target = table.forward[coset][gen];
    Word::product([
        transversal.representative(coset),
        &Word::generator(gen),
        &transversal.representative(target).inverse(),
    ])
}

/// Reidemeister–Schreier rewriting of the kernel presentation.
///
/// Generators are the nontrivial Schreier words `x_{c,g}`, named
/// `x{c}_{g-name}`; relators are the rewritten conjugates
/// `rep(c)·r·rep(c)⁻¹` for every coset `c` and base relator `r`, in
/// (coset, relator) order.
pub fn rewrite_subgroup_presentation(
    table: &CosetTable,
    transversal: &SchreierTransversal,
) -> SubgroupPresentation {
    let degree = table.degree();
    let gens = table.num_generators();

    // symbol (c, g) -> kept generator index, or usize::MAX for trivial
    let mut symbol_map = vec![usize::MAX; degree * gens];
    let mut generators = Vec::new();
    let mut schreier_words = Vec::new();
    let mut trivial_pairs = 0usize;
    for c in 0..degree {
        for g in 0..gens {
            let word = schreier_word(table, transversal, c, g);
            if word.is_empty() {
                trivial_pairs += 1;
            } else {
                symbol_map[c * gens + g] = generators.len();
                generators.push(Generator::new(format!(
                    "x{c}_{}",
                    table.base.generators()[g].name()
                )));
                schreier_words.push(word);
            }
        }
    }

    // Rewrite rep(c)·r·rep(c)⁻¹ by tracing r from coset c: a positive
    // letter g read at coset d contributes x_{d,g}; a negative letter
    // contributes x_{d·g⁻¹,g}⁻¹.
    let mut relators = Vec::new();
    let mut rewritten = 0usize;
    for c in 0..degree {
        for relator in table.base.relators() {
            rewritten += 1;
            let mut symbols = Vec::with_capacity(relator.len());
            let mut cur = c;
            for &letter in relator.letters() {
                if letter.exp == 1 {
                    let sym = symbol_map[cur * gens + letter.gen];
                    if sym != usize::MAX {
                        symbols.push(Letter::pos(sym));
                    }
                    cur = table.forward[cur][letter.gen];
                } else {
                    cur = table.backward[cur][letter.gen];
                    let sym = symbol_map[cur * gens + letter.gen];
                    if sym != usize::MAX {
                        symbols.push(Letter::neg(sym));
                    }
                }
            }
            debug_assert_eq!(cur, c, "relator trace must close");
            let word = Word::reduce(symbols);
            if !word.is_empty() {
                relators.push(word);
            }
        }
    }

    let stats = RewriteStats {
        degree,
        base_generators: gens,
        base_relators: table.base.relators().len(),
        schreier_pairs: degree * gens,
        trivial_pairs,
        subgroup_generators: generators.len(),
        relators_rewritten: rewritten,
        subgroup_relators: relators.len(),
    };
    SubgroupPresentation {
        presentation: Presentation::new(generators, relators)
            .expect("rewriting produces valid relators"),
        schreier_words,
        base: table.base.clone(),
        strategy: transversal.strategy(),
        stats,
    }
}

/// Abelian invariants of the kernel of `h`, via the full pipeline.
/// The result does not depend on the transversal strategy.
pub fn kernel_abelianization(
    h: &PermHomomorphism,
    strategy: TransversalStrategy,
    bound: usize,
) -> Result<AbelianInvariants, CosetError> {
    let table = CosetTable::regular(h, bound)?;
    let transversal = SchreierTransversal::new(&table, strategy);
    Ok(rewrite_subgroup_presentation(&table, &transversal).abelian_invariants())
}
