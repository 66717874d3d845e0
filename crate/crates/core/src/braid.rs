//! Presentations of the torus braid group `B_n(T²)` and the Artin
//! braid group `B_n`, the epimorphism `μ` onto the symmetric group,
//! and the normal-series metadata of the pure subgroup.
//!
//! Zariski's presentation of `B_n(T²)` has generators
//! `σ_1, …, σ_{n-1}, a_1, a_2` and six relation families:
//!
//! 1. `σ_i σ_j = σ_j σ_i` for `|i-j| ≥ 2` — emitted over the standard
//!    Artin range `i, j = 1, …, n-1`. (The printed source gives the
//!    range as `i, j = 1, …, n-3`, which would leave e.g. `σ_1` and
//!    `σ_3` unrelated; see the audit notes in the README.)
//! 2. `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}` for `i = 1, …, n-2`;
//! 3. `σ_i a_k = a_k σ_i` for `k = 1, 2` and `i = 2, …, n-1` exactly —
//!    `i = 1` is deliberately excluded, otherwise family 4 would be
//!    redundant;
//! 4. `(σ_1⁻¹ a_k)² = (a_k σ_1⁻¹)²` for `k = 1, 2`;
//! 5. `σ_1 ⋯ σ_{n-2} σ_{n-1}² σ_{n-2} ⋯ σ_1 = a_1 a_2⁻¹ a_1⁻¹ a_2`;
//! 6. `a_2 σ_1⁻¹ a_1⁻¹ σ_1 a_2⁻¹ σ_1⁻¹ a_1 σ_1 = σ_1²`.
//!
//! Every relation `L = R` is emitted as the freely reduced word
//! `L·R⁻¹`, in the family order above, so output is deterministic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{PermHomomorphism, Permutation};
use crate::presentation::Presentation;
use crate::word::{Generator, Letter, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid groups need at least 2 strands, got {0}")]
    TooFewStrands(usize),
}

/// Which braid group family a presentation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BraidKind {
    /// Zariski's presentation of the torus braid group `B_n(T²)`.
    TorusZariski,
    /// Artin's presentation of the plane braid group `B_n`.
    ArtinPlane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidFamily {
    pub kind: BraidKind,
    pub n: usize,
}

impl BraidFamily {
    pub fn new(kind: BraidKind, n: usize) -> Result<Self, BraidError> {
        if n < 2 {
            return Err(BraidError::TooFewStrands(n));
        }
        Ok(BraidFamily { kind, n })
    }

    pub fn presentation(&self) -> Presentation {
        match self.kind {
            BraidKind::TorusZariski => zariski_presentation(self.n)
                .expect("strand count validated"),
            BraidKind::ArtinPlane => artin_presentation(self.n)
                .expect("strand count validated"),
        }
    }
}

fn sigma(i: usize) -> Letter {
    // σ_i is generator index i-1
    Letter::pos(i - 1)
}

/// a_k for k = 1, 2 lives after the σ generators.
fn a(n: usize, k: usize) -> Letter {
    Letter::pos(n - 1 + (k - 1))
}

fn relation(lhs: Vec<Letter>, rhs: Vec<Letter>) -> Word {
    Word::reduce(lhs).concat(&Word::reduce(rhs).inverse())
}

/// Commutation family `σ_i σ_j = σ_j σ_i`, `|i-j| ≥ 2`, over the
/// standard range `1 ≤ i < j ≤ max_index`.
fn commutation_family(max_index: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for i in 1..=max_index {
        for j in i + 2..=max_index {
            out.push(relation(vec![sigma(i), sigma(j)], vec![sigma(j), sigma(i)]));
        }
    }
    out
}

/// Braid family `σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}`, `i = 1, …, max_index-1`.
fn braid_family(max_index: usize) -> Vec<Word> {
    (1..max_index)
        .map(|i| {
            relation(
                vec![sigma(i), sigma(i + 1), sigma(i)],
                vec![sigma(i + 1), sigma(i), sigma(i + 1)],
            )
        })
        .collect()
}

/// Generators `s1 … s{n-1}, a1, a2`; relator families 1–6 in order.
pub fn zariski_presentation(n: usize) -> Result<Presentation, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    let mut generators: Vec<Generator> =
        (1..n).map(|i| Generator::new(format!("s{i}"))).collect();
    generators.push(Generator::new("a1"));
    generators.push(Generator::new("a2"));

    let mut relators = commutation_family(n - 1);
    relators.extend(braid_family(n - 1));

    // family 3: σ_i a_k = a_k σ_i, k = 1,2 and i = 2..n-1
    for k in 1..=2 {
        for i in 2..n {
            relators.push(relation(
                vec![sigma(i), a(n, k)],
                vec![a(n, k), sigma(i)],
            ));
        }
    }

    // family 4: (σ_1^-1 a_k)^2 = (a_k σ_1^-1)^2, k = 1,2
    for k in 1..=2 {
        let s1i = sigma(1).inverse();
        relators.push(relation(
            vec![s1i, a(n, k), s1i, a(n, k)],
            vec![a(n, k), s1i, a(n, k), s1i],
        ));
    }

    // family 5: σ_1 … σ_{n-2} σ_{n-1}^2 σ_{n-2} … σ_1 = [a_1, a_2^-1]
    let mut lhs: Vec<Letter> = (1..n - 1).map(sigma).collect();
    lhs.push(sigma(n - 1));
    lhs.push(sigma(n - 1));
    lhs.extend((1..n - 1).rev().map(sigma));
    let rhs = vec![a(n, 1), a(n, 2).inverse(), a(n, 1).inverse(), a(n, 2)];
    relators.push(relation(lhs, rhs));

    // family 6: a_2 σ_1^-1 a_1^-1 σ_1 a_2^-1 σ_1^-1 a_1 σ_1 = σ_1^2
    let s1 = sigma(1);
    let s1i = s1.inverse();
    relators.push(relation(
        vec![
            a(n, 2),
            s1i,
            a(n, 1).inverse(),
            s1,
            a(n, 2).inverse(),
            s1i,
            a(n, 1),
            s1,
        ],
        vec![s1, s1],
    ));

    Ok(Presentation::new(generators, relators).expect("constructed relators are valid"))
}

/// Generators `s1 … s{n-1}`; commutation and braid families only.
pub fn artin_presentation(n: usize) -> Result<Presentation, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    let generators: Vec<Generator> =
        (1..n).map(|i| Generator::new(format!("s{i}"))).collect();
    let mut relators = commutation_family(n - 1);
    relators.extend(braid_family(n - 1));
    Ok(Presentation::new(generators, relators).expect("constructed relators are valid"))
}

/// The epimorphism `μ: B_n(T²) → S(n)`: `σ_i ↦ (i, i+1)`, `a_1, a_2 ↦ 1`.
pub fn mu_homomorphism(n: usize) -> Result<PermHomomorphism, BraidError> {
    let domain = zariski_presentation(n)?;
    let mut images: Vec<Permutation> =
        (0..n - 1).map(|i| Permutation::transposition(n, i, i + 1)).collect();
    images.push(Permutation::identity(n));
    images.push(Permutation::identity(n));
    Ok(PermHomomorphism::new(domain, images).expect("one image per generator"))
}

/// The standard epimorphism `B_n → S(n)` on the Artin presentation.
pub fn artin_symmetric_homomorphism(n: usize) -> Result<PermHomomorphism, BraidError> {
    let domain = artin_presentation(n)?;
    let images: Vec<Permutation> =
        (0..n - 1).map(|i| Permutation::transposition(n, i, i + 1)).collect();
    Ok(PermHomomorphism::new(domain, images).expect("one image per generator"))
}

/// The inclusion `B_n → B_n(T²)` sends each Artin generator to the
/// torus generator of the same name. Entry `i` is the image of `s{i+1}`.
pub fn artin_inclusion_words(n: usize) -> Result<Vec<Word>, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    Ok((0..n - 1).map(Word::generator).collect())
}

/// One factor of the normal series of `P_n(T²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "rank")]
pub enum SeriesFactor {
    /// A free group `F_rank`.
    Free(usize),
    /// The top factor `P_n(T²)/P_{n-1;1} ≅ Z²`.
    FreeAbelianRank2,
}

impl std::fmt::Display for SeriesFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesFactor::Free(rank) => write!(f, "F_{rank}"),
            SeriesFactor::FreeAbelianRank2 => write!(f, "Z^2"),
        }
    }
}

/// The series `{1} ⊂ P_{1;n-1} ⊂ ⋯ ⊂ P_{n-1;1} ⊂ P_n(T²)` with its
/// factors listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSeriesReport {
    pub n: usize,
    /// Subgroup labels from the trivial group up, length `n + 1`.
    pub chain: Vec<String>,
    /// Quotients of consecutive chain members, length `n`; exactly one
    /// non-free factor, at the top.
    pub factors: Vec<SeriesFactor>,
}

/// Factors bottom to top: `F_{n-1}, F_{n-2}, …, F_1, Z²`, where
/// `P_{n-m;m}/P_{n-m-1;m+1} ≅ F_m` and the bottom group is
/// `P_{1;n-1} ≅ F_{n-1}`.
pub fn normal_series_factors(n: usize) -> Result<NormalSeriesReport, BraidError> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    let mut chain = vec!["1".to_string()];
    for s in (0..n).rev() {
        // subgroup P_{n-s;s}
        chain.push(format!("P_{{{};{}}}", n - s, s));
    }
    let mut factors: Vec<SeriesFactor> =
        (1..n).rev().map(SeriesFactor::Free).collect();
    factors.push(SeriesFactor::FreeAbelianRank2);
    Ok(NormalSeriesReport { n, chain, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::AbelianInvariants;

    /// Counted from the family index ranges:
    /// commutation (n-2)(n-3)/2, braid n-2, a/σ commutation 2(n-2),
    /// squared 2, long 1, final 1.
    fn expected_zariski_relators(n: usize) -> usize {
        (n - 2) * (n - 3) / 2 + (n - 2) + 2 * (n - 2) + 4
    }

    #[test]
    fn zariski_generator_and_relator_counts() {
        let p = zariski_presentation(5).unwrap();
        assert_eq!(p.num_generators(), 6);
        assert_eq!(p.relators().len(), expected_zariski_relators(5));
        assert_eq!(p.relators().len(), 16);

        for n in 2..=10 {
            let p = zariski_presentation(n).unwrap();
            assert_eq!(p.num_generators(), n + 1);
            if n >= 3 {
                assert_eq!(p.relators().len(), expected_zariski_relators(n));
            }
        }
    }

    #[test]
    fn zariski_n3_families() {
        // no pair with |i-j| >= 2 among {1,2}; exactly one braid relator
        let p = zariski_presentation(3).unwrap();
        // 0 commutation + 1 braid + 2 a/σ + 2 squared + 1 + 1
        assert_eq!(p.relators().len(), 7);
        let braid = &p.relators()[0];
        assert_eq!(p.format_word(braid), "s1 s2 s1 s2^-1 s1^-1 s2^-1");
    }

    #[test]
    fn zariski_n2_has_only_sigma1_families() {
        let p = zariski_presentation(2).unwrap();
        assert_eq!(p.num_generators(), 3);
        // families 1-3 empty; 2 squared relators + long + final
        assert_eq!(p.relators().len(), 4);
        // family 5 degenerates to σ_1^2 = [a_1, a_2^-1]
        assert_eq!(p.format_word(&p.relators()[2]), "s1 s1 a2^-1 a1 a2 a1^-1");
    }

    #[test]
    fn zariski_rejects_small_n() {
        assert_eq!(zariski_presentation(1), Err(BraidError::TooFewStrands(1)));
        assert_eq!(artin_presentation(0), Err(BraidError::TooFewStrands(0)));
    }

    #[test]
    fn artin_counts() {
        assert_eq!(artin_presentation(2).unwrap().relators().len(), 0);
        assert_eq!(artin_presentation(3).unwrap().relators().len(), 1);
        // 3 commutation + 3 braid
        assert_eq!(artin_presentation(5).unwrap().relators().len(), 6);
    }

    #[test]
    fn zariski_abelianization_is_z2_plus_z2() {
        for n in 2..=8 {
            assert_eq!(
                zariski_presentation(n).unwrap().abelian_invariants(),
                AbelianInvariants { torsion: vec![2], free_rank: 2 },
                "n = {n}"
            );
        }
    }

    #[test]
    fn artin_abelianization_is_z() {
        for n in 2..=8 {
            assert_eq!(
                artin_presentation(n).unwrap().abelian_invariants(),
                AbelianInvariants { torsion: vec![], free_rank: 1 },
                "n = {n}"
            );
        }
    }

    #[test]
    fn mu_verifies_with_full_symmetric_image() {
        for n in 2..=5 {
            let outcome = mu_homomorphism(n).unwrap().verify();
            assert_eq!(outcome.violations, Vec::<usize>::new(), "n = {n}");
            let image = outcome.image.unwrap();
            assert_eq!(image.order, (1..=n).product::<usize>());
            assert!(image.transitive);
        }
    }

    #[test]
    fn mu_images_are_adjacent_transpositions() {
        let h = mu_homomorphism(2).unwrap();
        assert_eq!(h.generator_images()[0].to_string(), "(1 2)");
        assert!(h.generator_images()[1].is_identity());
        assert!(h.generator_images()[2].is_identity());
    }

    #[test]
    fn inclusion_is_name_preserving_and_compatible_with_mu() {
        let n = 4;
        let words = artin_inclusion_words(n).unwrap();
        let torus = zariski_presentation(n).unwrap();
        let artin = artin_presentation(n).unwrap();
        for (i, w) in words.iter().enumerate() {
            assert_eq!(torus.format_word(w), artin.generators()[i].name());
        }
        // μ ∘ i = standard epimorphism: σ_2 ↦ (2 3)
        let mu = mu_homomorphism(n).unwrap();
        let image = mu.evaluate(&words[1]).unwrap();
        assert_eq!(image, Permutation::transposition(4, 1, 2));

        // an Artin braid relator maps to a torus relator word
        let braid_relator = artin.relators()[0].clone();
        assert!(torus
            .relators()
            .iter()
            .any(|r| r == &braid_relator));
    }

    #[test]
    fn normal_series_shape() {
        let report = normal_series_factors(5).unwrap();
        assert_eq!(report.chain.len(), 6);
        assert_eq!(report.chain[0], "1");
        assert_eq!(report.chain[1], "P_{1;4}");
        assert_eq!(report.chain[5], "P_{5;0}");
        assert_eq!(
            report.factors,
            vec![
                SeriesFactor::Free(4),
                SeriesFactor::Free(3),
                SeriesFactor::Free(2),
                SeriesFactor::Free(1),
                SeriesFactor::FreeAbelianRank2,
            ]
        );

        assert_eq!(
            normal_series_factors(2).unwrap().factors,
            vec![SeriesFactor::Free(1), SeriesFactor::FreeAbelianRank2]
        );
        assert_eq!(
            normal_series_factors(3).unwrap().factors,
            vec![
                SeriesFactor::Free(2),
                SeriesFactor::Free(1),
                SeriesFactor::FreeAbelianRank2
            ]
        );

        for n in 2..=8 {
            let r = normal_series_factors(n).unwrap();
            assert_eq!(r.chain.len(), n + 1);
            assert_eq!(r.factors.len(), n);
            let non_free = r
                .factors
                .iter()
                .filter(|f| matches!(f, SeriesFactor::FreeAbelianRank2))
                .count();
            assert_eq!(non_free, 1);
            assert_eq!(r.factors.last(), Some(&SeriesFactor::FreeAbelianRank2));
        }
    }
}
