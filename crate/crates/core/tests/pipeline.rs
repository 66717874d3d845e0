//! Cross-module integration checks for the subgroup-rewriting pipeline,
//! including a fully hand-built oracle for the pure braid group P_3
//! that shares nothing with the coset machinery it validates.

use tbl_core::braid::{artin_presentation, artin_symmetric_homomorphism, mu_homomorphism};
use tbl_core::coset::{
    kernel_abelianization, rewrite_subgroup_presentation, CosetTable, SchreierTransversal,
    TransversalStrategy,
};
use tbl_core::matrix::{AbelianInvariants, IntegerMatrix};
use tbl_core::presentation::Presentation;
use tbl_core::word::Word;

/// Independent oracle for `H_1(P_3) = Z^3`.
///
/// Everything below is hand-rolled: S_3 elements as arrays, the right
/// multiplication table, a spelled-out Schreier transversal, and the
/// exponent matrix of the rewritten relator. Only the Smith normal form
/// is shared with the implementation, and that is validated separately
/// against the determinant-divisor formula.
#[test]
fn hand_built_p3_abelianization_oracle() {
    type P = [usize; 3];
    const ID: P = [0, 1, 2];
    const S1: P = [1, 0, 2]; // (1 2)
    const S2: P = [0, 2, 1]; // (2 3)

    fn compose(g: P, x: P) -> P {
        // g ∘ x, matching "letters act left to right"
        [g[x[0]], g[x[1]], g[x[2]]]
    }

    // all six elements, in an arbitrary fixed order of our own
    let elements: Vec<P> = vec![
        ID,
        S1,
        S2,
        compose(S2, S1), // s1 then s2
        compose(S1, S2), // s2 then s1
        compose(S1, compose(S2, S1)),
    ];
    let index_of = |p: P| elements.iter().position(|&e| e == p).unwrap();

    // right action: coset (element x) * generator g = g ∘ x
    let gens = [S1, S2];
    let mut action = [[0usize; 2]; 6];
    for (c, &x) in elements.iter().enumerate() {
        for (gi, &g) in gens.iter().enumerate() {
            action[c][gi] = index_of(compose(g, x));
        }
    }

    // hand transversal: coset c is reached by these generator words
    // (all positive letters, so no inverse bookkeeping is needed)
    let reps: [&[usize]; 6] = [&[], &[0], &[1], &[0, 1], &[1, 0], &[0, 1, 0]];
    let trace = |start: usize, word: &[usize]| -> usize {
        word.iter().fold(start, |c, &g| action[c][g])
    };
    for (c, rep) in reps.iter().enumerate() {
        assert_eq!(trace(0, rep), c, "hand transversal is wrong");
        for k in 0..rep.len() {
            let prefix_coset = trace(0, &rep[..k]);
            assert!(
                reps[prefix_coset].len() == k,
                "hand transversal is not prefix-closed"
            );
        }
    }

    // Schreier pairs: symbol (c, g) is trivial iff rep(c)·g equals
    // rep(c·g) as a word; with all-positive reps this is just a length
    // check after tracing.
    let mut symbol_ids = [[usize::MAX; 2]; 6];
    let mut next_symbol = 0usize;
    for c in 0..6 {
        for g in 0..2 {
            let target = action[c][g];
            let mut extended: Vec<usize> = reps[c].to_vec();
            extended.push(g);
            if extended == reps[target] {
                continue; // tree edge
            }
            symbol_ids[c][g] = next_symbol;
            next_symbol += 1;
        }
    }
    assert_eq!(next_symbol, 6 * 2 - 5, "Schreier index formula");

    // rewrite the braid relator s1 s2 s1 s2^-1 s1^-1 s2^-1 from every
    // coset, collecting exponent sums per symbol
    let relator: [(usize, i64); 6] =
        [(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)];
    let backward = |c: usize, g: usize| (0..6).find(|&d| action[d][g] == c).unwrap();
    let mut rows = Vec::new();
    for c in 0..6 {
        let mut row = vec![0i128; next_symbol];
        let mut cur = c;
        for &(g, e) in &relator {
            if e == 1 {
                if symbol_ids[cur][g] != usize::MAX {
                    row[symbol_ids[cur][g]] += 1;
                }
                cur = action[cur][g];
            } else {
                cur = backward(cur, g);
                if symbol_ids[cur][g] != usize::MAX {
                    row[symbol_ids[cur][g]] -= 1;
                }
            }
        }
        assert_eq!(cur, c);
        rows.push(row);
    }
    let matrix = IntegerMatrix::from_rows(rows).unwrap();
    let oracle = AbelianInvariants::from_relation_matrix(&matrix);
    assert_eq!(oracle, AbelianInvariants { torsion: vec![], free_rank: 3 });

    // and the pipeline agrees
    let h = artin_symmetric_homomorphism(3).unwrap();
    for strategy in [TransversalStrategy::Bfs, TransversalStrategy::Dfs] {
        assert_eq!(kernel_abelianization(&h, strategy, 100).unwrap(), oracle);
    }
}

/// Computed output, recorded as a regression: the kernel abelianization
/// comes out as Z^{2n} for every n tested, torsion-free as predicted by
/// the fibration structure of the ordered configuration space. The
/// n = 2 value has an independent derivation: the translation action
/// splits the ordered 2-point space as T² × (T² ∖ {0}), whose
/// fundamental group Z² × F₂ abelianizes to Z⁴.
#[test]
fn torus_kernel_abelianizations_are_free_of_rank_2n() {
    for n in 2..=4usize {
        let h = mu_homomorphism(n).unwrap();
        let inv = kernel_abelianization(&h, TransversalStrategy::Bfs, 100_000).unwrap();
        assert_eq!(
            inv,
            AbelianInvariants { torsion: vec![], free_rank: 2 * n },
            "n = {n}"
        );
    }
}

#[test]
fn subgroup_presentation_round_trips_through_json() {
    let h = mu_homomorphism(3).unwrap();
    let table = CosetTable::regular(&h, 100).unwrap();
    let tr = SchreierTransversal::new(&table, TransversalStrategy::Bfs);
    let sub = rewrite_subgroup_presentation(&table, &tr);
    let json = serde_json::to_string(sub.presentation()).unwrap();
    let back: Presentation = serde_json::from_str(&json).unwrap();
    assert_eq!(&back, sub.presentation());
    assert_eq!(serde_json::to_string(&back).unwrap(), json);
}

#[test]
fn artin_relators_embed_in_zariski_relators() {
    // the inclusion is name-preserving, so Artin relator words are
    // literally among the torus relators for every n
    for n in 3..=6 {
        let artin = artin_presentation(n).unwrap();
        let torus = tbl_core::braid::zariski_presentation(n).unwrap();
        for relator in artin.relators() {
            assert!(
                torus.relators().contains(relator),
                "n = {n}: missing {:?}",
                artin.format_word(relator)
            );
        }
    }
}

#[test]
fn rewritten_relator_count_scales_with_degree() {
    for n in [3usize, 4] {
        let h = mu_homomorphism(n).unwrap();
        let table = CosetTable::regular(&h, 100_000).unwrap();
        let tr = SchreierTransversal::new(&table, TransversalStrategy::Dfs);
        let sub = rewrite_subgroup_presentation(&table, &tr);
        let stats = sub.stats();
        let factorial: usize = (1..=n).product();
        assert_eq!(stats.degree, factorial);
        assert_eq!(stats.relators_rewritten, factorial * stats.base_relators);
        // every kept subgroup relator expands to a kernel element
        for relator in sub.presentation().relators().iter().take(20) {
            let words: Vec<Word> = relator
                .letters()
                .iter()
                .map(|l| {
                    let w = &sub.schreier_words()[l.gen];
                    if l.exp == 1 {
                        w.clone()
                    } else {
                        w.inverse()
                    }
                })
                .collect();
            let expanded = Word::product(words.iter());
            assert!(h.evaluate(&expanded).unwrap().is_identity());
        }
    }
}
