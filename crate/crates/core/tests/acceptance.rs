//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//! Every expected value and time bound is pinned in the assertions.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tbl_core::audit::{audit_lemmas, rule_oracle_disagreements, simplex_structure_violations};
use tbl_core::braid::{mu_homomorphism, zariski_presentation};
use tbl_core::complex::{
    act_on_simplex, max_dimension, normal_simplex, orbit_classify, vertex_set, GraphKind,
    NormalFormKind, Simplex,
};
use tbl_core::coset::{
    kernel_abelianization, CosetTable, SchreierTransversal, TransversalStrategy,
    rewrite_subgroup_presentation,
};
use tbl_core::lattice::{LatticeClass, Marker, RingElement};
use tbl_core::matrix::AbelianInvariants;
use tbl_core::perm::Permutation;
use tbl_core::tame::{induced_vertex_map, probe_simplex, tame_descriptor, Sign};
use tbl_core::torus::{
    diagonal_orbit_equal, endo_kernel, is_exceptional_exact, is_exceptional_necessary,
    Configuration, Rat, TorusAutomorphism, TorusPoint,
};

fn pass(criterion: u32, message: &str) {
    println!("[acceptance] criterion {criterion}: PASS — {message}");
}

fn assert_within(criterion: u32, elapsed: Duration, bound: Duration) {
    assert!(
        elapsed <= bound,
        "criterion {criterion}: took {elapsed:?}, bound {bound:?}"
    );
}

/// 1. Abelianization of the torus braid group is Z/2 ⊕ Z² for n = 3..=10.
#[test]
fn criterion_01_zariski_h1() {
    let start = Instant::now();
    for n in 3..=10 {
        let invariants = zariski_presentation(n).unwrap().abelian_invariants();
        assert_eq!(
            invariants,
            AbelianInvariants { torsion: vec![2], free_rank: 2 },
            "n = {n}"
        );
    }
    assert_within(1, start.elapsed(), Duration::from_secs(1));
    pass(1, "abelian_invariants(zariski(n)) = Z/2 + Z^2 for n = 3..=10, < 1 s");
}

/// 2. μ is well defined with transitive image of order n! for n = 2..=8.
#[test]
fn criterion_02_mu_well_defined() {
    let start = Instant::now();
    for n in 2..=8usize {
        let outcome = mu_homomorphism(n).unwrap().verify();
        assert_eq!(outcome.violations, Vec::<usize>::new(), "n = {n}");
        let image = outcome.image.expect("image enumerable for n <= 8");
        assert_eq!(image.order, (1..=n).product::<usize>(), "n = {n}");
        assert!(image.transitive, "n = {n}");
    }
    assert_within(2, start.elapsed(), Duration::from_secs(5));
    pass(2, "verify(mu(n)) has zero violations, transitive image of order n!, n = 2..=8, < 5 s");
}

/// 3. The pure-subgroup pipeline: degrees, Schreier counts, transversal
///    independence, and the surjection onto Z²; n = 5 within a minute.
#[test]
fn criterion_03_pure_subgroup_pipeline() {
    for (n, expected_degree) in [(3usize, 6usize), (4, 24)] {
        let h = mu_homomorphism(n).unwrap();
        let table = CosetTable::regular(&h, 100_000).unwrap();
        assert_eq!(table.degree(), expected_degree, "n = {n}");

        let bfs = SchreierTransversal::new(&table, TransversalStrategy::Bfs);
        let sub = rewrite_subgroup_presentation(&table, &bfs);
        let expected_gens =
            expected_degree * (n + 1) - (expected_degree - 1);
        assert_eq!(sub.stats().subgroup_generators, expected_gens, "n = {n}");
        if n == 3 {
            assert_eq!(sub.stats().subgroup_generators, 19);
        }

        let inv_bfs = kernel_abelianization(&h, TransversalStrategy::Bfs, 100_000).unwrap();
        let inv_dfs = kernel_abelianization(&h, TransversalStrategy::Dfs, 100_000).unwrap();
        assert_eq!(inv_bfs, inv_dfs, "n = {n}");
        assert!(inv_bfs.free_rank >= 2, "n = {n}: {inv_bfs:?}");
    }

    let start = Instant::now();
    let h = mu_homomorphism(5).unwrap();
    let table = CosetTable::regular(&h, 100_000).unwrap();
    assert_eq!(table.degree(), 120);
    let inv_bfs = kernel_abelianization(&h, TransversalStrategy::Bfs, 100_000).unwrap();
    let inv_dfs = kernel_abelianization(&h, TransversalStrategy::Dfs, 100_000).unwrap();
    assert_eq!(inv_bfs, inv_dfs);
    assert!(inv_bfs.free_rank >= 2);
    assert_within(3, start.elapsed(), Duration::from_secs(60));
    pass(3, "pipeline degrees 6/24/120, 19 Schreier generators at n=3, BFS = DFS, free rank >= 2, n=5 < 60 s");
}

/// 4. Vertex counts, top dimension n−2, and orbit counts with exactly
///    one normal representative per orbit.
#[test]
fn criterion_04_difference_complex_counts() {
    let start = Instant::now();
    for class in LatticeClass::ALL {
        for n in 2..=6 {
            let vertices = vertex_set(n, class).unwrap();
            assert_eq!(vertices.len(), class.marker_count() * n * (n - 1));
        }
    }
    let card_m = |class: LatticeClass| 2 * class.marker_count();
    for class in [LatticeClass::Generic, LatticeClass::Square] {
        for n in 3..=6 {
            assert_eq!(
                max_dimension(n, class, GraphKind::Oracle).unwrap(),
                n - 2,
                "{class} n = {n}"
            );
            for s in 0..=n - 2 {
                let report = orbit_classify(n, class, s).unwrap();
                let expected =
                    if s == 0 { card_m(class) / 2 } else { card_m(class) };
                assert_eq!(report.orbit_count(), expected, "{class} n={n} s={s}");
                let sizes: usize = report.orbits.iter().map(|o| o.size).sum();
                assert_eq!(sizes, report.total_simplices, "{class} n={n} s={s}");
                for orbit in &report.orbits {
                    assert_eq!(
                        orbit.normal_members.len(),
                        1,
                        "{class} n={n} s={s}: orbit sized {}",
                        orbit.size
                    );
                }
            }
        }
    }
    assert_within(4, start.elapsed(), Duration::from_secs(30));
    pass(4, "vertex counts |M+|n(n-1), top dim n-2, orbit counts card M (card M/2 at s=0), one normal per orbit, n <= 6, < 30 s");
}

/// 5. Rule ≡ oracle on generic and square; on hexagonal the
///    disagreement list is exactly the same-support unit-difference pairs,
///    deterministically, and the audit flags it as a finding.
#[test]
fn criterion_05_rule_oracle_equivalence() {
    for class in [LatticeClass::Generic, LatticeClass::Square] {
        for n in 2..=6 {
            assert_eq!(
                rule_oracle_disagreements(n, class).unwrap(),
                vec![],
                "{class} n = {n}"
            );
        }
    }
    for n in 2..=6usize {
        let class = LatticeClass::Hexagonal;
        let got = rule_oracle_disagreements(n, class).unwrap();
        let again = rule_oracle_disagreements(n, class).unwrap();
        assert_eq!(got, again, "determinism at n = {n}");

        // predicted independently: same unordered support, signed
        // coefficient difference a unit
        let vertices = vertex_set(n, class).unwrap();
        let mut predicted = Vec::new();
        for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                let (va, vb) = (vertices[a], vertices[b]);
                if va.support() != vb.support() {
                    continue;
                }
                let coeff = |d: &tbl_core::Difference| {
                    let m = d.marker.element(class);
                    if d.i < d.j {
                        m
                    } else {
                        -m
                    }
                };
                if class.norm(coeff(&va) - coeff(&vb)) == 1 {
                    predicted.push((va, vb));
                }
            }
        }
        assert_eq!(got, predicted, "n = {n}");
        assert_eq!(got.len(), 6 * n * (n - 1) / 2, "6 per support pair, n = {n}");
    }
    let report = audit_lemmas(4, LatticeClass::Hexagonal).unwrap();
    assert!(report.has_findings());
    pass(5, "rule == oracle on generic/square (n <= 6); hexagonal disagreements are exactly the same-support unit-difference pairs and audit reports a finding");
}

/// 6. Every oracle simplex on generic and square has equal markers and
///    pairwise/total support intersections of cardinality one.
#[test]
fn criterion_06_simplex_structure() {
    for class in [LatticeClass::Generic, LatticeClass::Square] {
        for n in 3..=6 {
            let violations = simplex_structure_violations(n, class).unwrap();
            assert!(violations.is_empty(), "{class} n = {n}: {violations:?}");
        }
    }
    pass(6, "zero structure violations on generic and square, n <= 6");
}

/// 7. Kernel order equals the norm and kernels are subgroups, for every
///    endomorphism with norm in [2, 12] in all three classes.
#[test]
fn criterion_07_endomorphism_kernels() {
    let start = Instant::now();
    let mut checked = 0usize;
    for class in LatticeClass::ALL {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let alpha = RingElement::new(a, b);
                if !class.contains(alpha) || alpha.is_zero() {
                    continue;
                }
                let norm = class.norm(alpha);
                if !(2..=12).contains(&norm) {
                    continue;
                }
                let kernel = endo_kernel(class, alpha).unwrap();
                assert_eq!(kernel.len() as i64, norm, "{class} {alpha}");
                assert!(kernel.contains(&TorusPoint::zero()));
                for p in &kernel {
                    for q in &kernel {
                        assert!(
                            kernel.contains(&p.add(q)),
                            "{class} {alpha}: kernel not closed"
                        );
                    }
                }
                checked += 1;
            }
        }
    }
    // 4 generic (±2, ±3) + 32 square + 36 hexagonal elements in range
    assert_eq!(checked, 72, "exhaustive sweep shrank unexpectedly");
    assert_within(7, start.elapsed(), Duration::from_secs(5));
    pass(7, "|ker α| = norm(α) and subgroup closure for all 2 <= norm <= 12, all classes, < 5 s");
}

/// 8. Tame-descriptor round trip over all permutations, units, and
///    signs on generic and square for n = 4, 5.
#[test]
fn criterion_08_tame_descriptor_round_trip() {
    let start = Instant::now();
    let mut cases = 0usize;
    for class in [LatticeClass::Generic, LatticeClass::Square] {
        for n in [4usize, 5] {
            let probe = probe_simplex(n).unwrap();
            for sigma in Permutation::all(n) {
                for &unit in &class.units() {
                    for sign in Sign::BOTH {
                        let image: Vec<_> = probe
                            .iter()
                            .map(|v| {
                                induced_vertex_map(class, &sigma, unit, sign, v).unwrap()
                            })
                            .collect();
                        let descriptor = tame_descriptor(n, class, &image).unwrap();

                        // expected marker and form from ±u
                        let product = match sign {
                            Sign::Plus => unit,
                            Sign::Minus => -unit,
                        };
                        let (marker, negated) =
                            Marker::canonicalize(class, product).unwrap();
                        let form = if negated {
                            NormalFormKind::Nabla
                        } else {
                            NormalFormKind::Delta
                        };
                        assert_eq!(descriptor.marker, marker);
                        assert_eq!(descriptor.form, form);

                        // σ recovered up to the stabilizer of the normal
                        // form: both must send the image apex σ⁻¹(1) to 1
                        let apex = sigma.inverse().apply(0);
                        assert_eq!(descriptor.sigma.apply(apex), 0);
                        let image_simplex = Simplex::new(image).unwrap();
                        assert_eq!(
                            act_on_simplex(&descriptor.sigma, &image_simplex).unwrap(),
                            normal_simplex(form, marker, n - 2, n).unwrap()
                        );
                        cases += 1;
                    }
                }
            }
        }
    }
    assert_eq!(cases, (24 + 120) * (2 * 2 + 4 * 2));
    assert_within(8, start.elapsed(), Duration::from_secs(30));
    pass(8, "descriptor recovers (marker, form) exactly and sigma up to the stabilizer for all cases, n in {4,5}, generic+square, < 30 s");
}

/// 9. Orbit-equality soundness on 200 seeded random cases per class,
///    with the negative control.
#[test]
fn criterion_09_orbit_equality_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7b1);
    for class in LatticeClass::ALL {
        let units = class.units();
        for case in 0..200 {
            let n = rng.gen_range(2..=5);
            let mut points: Vec<TorusPoint> = Vec::new();
            while points.len() < n {
                let p = TorusPoint::new(
                    Rat::new(rng.gen_range(0..12), 12),
                    Rat::new(rng.gen_range(0..12), 12),
                );
                if !points.contains(&p) {
                    points.push(p);
                }
            }
            let q = Configuration::new(points).unwrap();
            let unit = units[rng.gen_range(0..units.len())];
            let translation = TorusPoint::new(
                Rat::new(rng.gen_range(0..12), 12),
                Rat::new(rng.gen_range(0..12), 12),
            );
            let a = TorusAutomorphism::new(class, unit, translation).unwrap();
            let q_prime = a.apply_config(class, &q);

            let witness = diagonal_orbit_equal(class, &q, &q_prime)
                .unwrap()
                .unwrap_or_else(|| panic!("{class} case {case}: no witness found"));
            assert!(
                witness.apply_config(class, &q).same_set(&q_prime),
                "{class} case {case}: witness is not exact"
            );
        }
    }

    // negative control
    let q = Configuration::new(vec![
        TorusPoint::zero(),
        TorusPoint::from_fractions(1, 2, 0, 1),
    ])
    .unwrap();
    let q_prime = Configuration::new(vec![
        TorusPoint::zero(),
        TorusPoint::from_fractions(1, 5, 0, 1),
    ])
    .unwrap();
    assert_eq!(
        diagonal_orbit_equal(LatticeClass::Generic, &q, &q_prime).unwrap(),
        None
    );
    pass(9, "witnesses found and exact for 200 seeded cases per class; negative control returns none");
}

/// 10. Exact exceptionality implies the necessary condition on the full
///     coordinate grid, sizes 2..4, all classes.
#[test]
fn criterion_10_exceptionality_inclusion() {
    let coords: Vec<Rat> = vec![
        Rat::new(0, 1),
        Rat::new(1, 4),
        Rat::new(1, 3),
        Rat::new(1, 2),
        Rat::new(2, 3),
        Rat::new(3, 4),
    ];
    let mut grid = Vec::new();
    for &x in &coords {
        for &y in &coords {
            grid.push(TorusPoint::new(x, y));
        }
    }
    assert_eq!(grid.len(), 36);

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        if k > n {
            return out;
        }
        loop {
            out.push(idx.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    let mut exact_seen = 0usize;
    let mut total = 0usize;
    for class in LatticeClass::ALL {
        for m in 2..=4usize {
            for combo in combinations(grid.len(), m) {
                let config =
                    Configuration::new(combo.iter().map(|&i| grid[i]).collect()).unwrap();
                total += 1;
                if let Some(witness) = is_exceptional_exact(class, &config) {
                    exact_seen += 1;
                    assert!(
                        is_exceptional_necessary(class, &config),
                        "{class}: exact witness {witness:?} without necessary condition on {config:?}"
                    );
                }
            }
        }
    }
    assert_eq!(total, 3 * (630 + 7140 + 58905));
    assert!(exact_seen > 0, "grid contains no exceptional configuration at all");
    pass(10, "is_exceptional_exact ⇒ is_exceptional_necessary on the exhaustive grid, zero counterexamples");
}
