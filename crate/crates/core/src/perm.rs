//! Permutations and homomorphisms of presented groups into symmetric
//! groups.
//!
//! Composition convention, used consistently by the coset machinery:
//! word letters act left to right, so `eval(u·v) = eval(v) ∘ eval(u)`
//! as functions. Points are `0..n` internally; displays are 1-based.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("images {0:?} are not a bijection")]
    NotABijection(Vec<usize>),
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("homomorphism needs {expected} generator images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("word uses generator {index} outside the domain alphabet of size {limit}")]
    WordOutOfRange { index: usize, limit: usize },
    #[error("image subgroup order exceeds the bound {bound}")]
    ImageOrderExceedsBound { bound: usize },
}

/// A permutation of `{0, …, n-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(PermError::NotABijection(images));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The transposition `(a b)`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a < n && b < n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// Function composition: `(self ∘ inner)(x) = self(inner(x))`.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != inner.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), inner.degree()));
        }
        Ok(Permutation {
            images: inner.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    /// All permutations of `{0..n}` in lexicographic one-line order.
    /// Intended for small `n`; orbit classification never needs more.
    pub fn all(n: usize) -> Vec<Permutation> {
        assert!(n <= 8, "refusing to materialize S({n})");
        let mut out = Vec::with_capacity((1..=n).product());
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation { images: images.clone() });
            // next lexicographic permutation
            let Some(pivot) = images.windows(2).rposition(|w| w[0] < w[1]) else {
                return out;
            };
            let successor = images
                .iter()
                .rposition(|&v| v > images[pivot])
                .expect("pivot has a successor");
            images.swap(pivot, successor);
            images[pivot + 1..].reverse();
        }
    }

    /// Nontrivial cycles, each rotated to start at its minimum, sorted
    /// by that minimum. Points are 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Assignment of a permutation to each generator of a presentation.
#[derive(Clone, Debug)]
pub struct PermHomomorphism {
    domain: Presentation,
    degree: usize,
    images: Vec<Permutation>,
}

/// Outcome of relator verification; `image` is populated only when all
/// relators map to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub violations: Vec<usize>,
    pub image: Option<ImageReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageReport {
    pub order: usize,
    pub transitive: bool,
}

impl PermHomomorphism {
    pub const DEFAULT_IMAGE_BOUND: usize = 3_628_800; // 10!

    pub fn new(
        domain: Presentation,
        images: Vec<Permutation>,
    ) -> Result<Self, PermError> {
        if images.len() != domain.num_generators() {
            return Err(PermError::ArityMismatch {
                expected: domain.num_generators(),
                got: images.len(),
            });
        }
        let degree = images.first().map_or(0, Permutation::degree);
        for p in &images {
            if p.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, p.degree()));
            }
        }
        Ok(PermHomomorphism { domain, degree, images })
    }

    pub fn domain(&self) -> &Presentation {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    /// Image of a word: letters applied left to right, the empty word
    /// evaluating to the identity.
    pub fn evaluate(&self, word: &Word) -> Result<Permutation, PermError> {
        let mut result = Permutation::identity(self.degree);
        for letter in word.letters() {
            if letter.gen >= self.images.len() {
                return Err(PermError::WordOutOfRange {
                    index: letter.gen,
                    limit: self.images.len(),
                });
            }
            let step = if letter.exp == 1 {
                self.images[letter.gen].clone()
            } else {
                self.images[letter.gen].inverse()
            };
            result = step.compose(&result)?;
        }
        Ok(result)
    }

    /// Indices of relators whose image is not the identity.
    pub fn verify_relators(&self) -> Vec<usize> {
        self.domain
            .relators()
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                !self.evaluate(r).expect("relators validated by Presentation").is_identity()
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Relator verification plus, on success, a summary of the
    /// generated image subgroup.
    pub fn verify(&self) -> VerifyOutcome {
        let violations = self.verify_relators();
        let image = if violations.is_empty() {
            // None here means the image was too large to enumerate, not
            // that verification failed.
            self.enumerate_image(Self::DEFAULT_IMAGE_BOUND).ok().map(|elements| {
                ImageReport { order: elements.len(), transitive: self.is_transitive() }
            })
        } else {
            None
        };
        VerifyOutcome { violations, image }
    }

    /// All elements of the subgroup generated by the images, in the
    /// canonical order used for coset enumeration: breadth-first from
    /// the identity over right multiplication by generator images,
    /// levels sorted lexicographically by one-line notation.
    pub fn enumerate_image(
        &self,
        bound: usize,
    ) -> Result<Vec<Permutation>, PermError> {
        let id = Permutation::identity(self.degree);
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(id.clone(), 0);
        let mut ordered = vec![id];
        let mut frontier: Vec<usize> = vec![0];
        while !frontier.is_empty() {
            let mut next_level: Vec<Permutation> = Vec::new();
            for &ci in &frontier {
                let base = ordered[ci].clone();
                for image in &self.images {
                    // right multiplication: word w·g acts as eval(g) ∘ eval(w)
                    let product = image.compose(&base).expect("equal degrees");
                    if !index.contains_key(&product) {
                        next_level.push(product);
                    }
                }
            }
            next_level.sort();
            next_level.dedup();
            frontier = Vec::with_capacity(next_level.len());
            for p in next_level {
                if ordered.len() >= bound {
                    return Err(PermError::ImageOrderExceedsBound { bound });
                }
                index.insert(p.clone(), ordered.len());
                frontier.push(ordered.len());
                ordered.push(p);
            }
        }
        Ok(ordered)
    }

    /// Whether the generated subgroup acts transitively on `0..degree`.
    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(p) = stack.pop() {
            for image in &self.images {
                for q in [image.apply(p), image.inverse().apply(p)] {
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }
}
