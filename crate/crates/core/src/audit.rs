//! Exhaustive audits of the combinatorial structure of the difference
//! complex against its closed-form descriptions.
//!
//! Four checks run per (n, lattice class):
//!
//! 1. the closed-form edge rule against the symbolic oracle, over all
//!    vertex pairs;
//! 2. the structure of every oracle simplex: equal markers, pairwise
//!    and total support intersections of cardinality one;
//! 3. orbit counts of the `S(n)` action per dimension, against
//!    `card 𝔐` (`card 𝔐 / 2` for vertices), plus one normal
//!    representative per orbit;
//! 4. the top dimension against `n − 2`.
//!
//! On the generic and square classes every check is expected to
//! confirm. On the hexagonal class the oracle genuinely admits more
//! edges than the rule (same-support pairs whose signed coefficients
//! differ by a unit), so checks 1 and 2 report findings there, while
//! checks 3 and 4 are emitted as measurements, not asserted. A finding
//! is a reproducible discrepancy, not a failure of the software.

use serde::Serialize;

use crate::complex::{
    enumerate_simplices, max_dimension, orbit_classify, proper_remainder_oracle,
    proper_remainder_rule, vertex_set, ComplexError, Difference, GraphKind, Simplex,
};
use crate::lattice::LatticeClass;

/// Hard cap for the exhaustive audits; the CLI default stays at 6.
pub const AUDIT_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    /// The closed-form claim holds verbatim.
    Confirmed,
    /// A reproducible discrepancy was found; details list it.
    Finding,
    /// Values reported without an expectation to compare against.
    Measured,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub summary: String,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub lattice: LatticeClass,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn has_findings(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Finding)
    }
}

/// All unordered vertex pairs on which the rule and the oracle
/// disagree, in lexicographic pair order.
pub fn rule_oracle_disagreements(
    n: usize,
    class: LatticeClass,
) -> Result<Vec<(Difference, Difference)>, ComplexError> {
    let vertices = vertex_set(n, class)?;
    let mut out = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let oracle = proper_remainder_oracle(class, &vertices[a], &vertices[b])?
                .is_some();
            let rule = proper_remainder_rule(&vertices[a], &vertices[b])?;
            if oracle != rule {
                out.push((vertices[a], vertices[b]));
            }
        }
    }
    Ok(out)
}

/// Violations of the simplex structure lemma on the oracle complex:
/// for every simplex of dimension ≥ 1, markers must agree and every
/// pairwise and total support intersection must have cardinality one.
pub fn simplex_structure_violations(
    n: usize,
    class: LatticeClass,
) -> Result<Vec<(Simplex, String)>, ComplexError> {
    let mut out = Vec::new();
    let top = max_dimension(n, class, GraphKind::Oracle)?;
    for s in 1..=top {
        for simplex in enumerate_simplices(n, class, s, GraphKind::Oracle)? {
            let verts = simplex.vertices();
            if verts.iter().any(|v| v.marker != verts[0].marker) {
                out.push((simplex.clone(), "markers differ".to_string()));
                continue;
            }
            let mut pairwise_ok = true;
            for a in 0..verts.len() {
                for b in a + 1..verts.len() {
                    let sa = verts[a].support();
                    let sb = verts[b].support();
                    let common = sa.iter().filter(|x| sb.contains(x)).count();
                    if common != 1 {
                        out.push((
                            simplex.clone(),
                            format!(
                                "support intersection of {} and {} has cardinality {}",
                                verts[a], verts[b], common
                            ),
                        ));
                        pairwise_ok = false;
                    }
                }
            }
            if !pairwise_ok {
                continue;
            }
            let total = (0..n)
                .filter(|k| verts.iter().all(|v| v.support().contains(k)))
                .count();
            if total != 1 {
                out.push((
                    simplex.clone(),
                    format!("total support intersection has cardinality {total}"),
                ));
            }
        }
    }
    Ok(out)
}

fn asserted_class(class: LatticeClass) -> bool {
    matches!(class, LatticeClass::Generic | LatticeClass::Square)
}

/// Run all four checks for one (n, class) pair.
pub fn audit_lemmas(n: usize, class: LatticeClass) -> Result<AuditReport, ComplexError> {
    if n > AUDIT_MAX_N {
        return Err(ComplexError::AuditBound { n, max: AUDIT_MAX_N });
    }
    if n < 2 {
        return Err(ComplexError::TooFewPoints(n));
    }
    let mut checks = Vec::new();

    // 1. rule vs oracle
    let disagreements = rule_oracle_disagreements(n, class)?;
    checks.push(AuditCheck {
        name: "rule-vs-oracle",
        status: if disagreements.is_empty() {
            CheckStatus::Confirmed
        } else {
            CheckStatus::Finding
        },
        summary: format!(
            "{} disagreement(s) between the closed-form rule and the symbolic oracle",
            disagreements.len()
        ),
        details: disagreements
            .iter()
            .map(|(a, b)| format!("{a} vs {b}: oracle=edge rule=no-edge"))
            .collect(),
    });

    // 2. simplex structure
    let violations = simplex_structure_violations(n, class)?;
    checks.push(AuditCheck {
        name: "simplex-structure",
        status: if violations.is_empty() {
            CheckStatus::Confirmed
        } else {
            CheckStatus::Finding
        },
        summary: format!(
            "{} simplex structure violation(s) (equal markers, support intersections)",
            violations.len()
        ),
        details: violations
            .iter()
            .map(|(s, why)| format!("{s}: {why}"))
            .collect(),
    });

    // 3. orbit counts per dimension
    let top = max_dimension(n, class, GraphKind::Oracle)?;
    let card_m = 2 * class.marker_count();
    let mut orbit_details = Vec::new();
    let mut orbit_ok = true;
    for s in 0..=top {
        let report = orbit_classify(n, class, s)?;
        let expected = if s == 0 { card_m / 2 } else { card_m };
        let normals_ok = report.orbits.iter().all(|o| o.normal_members.len() == 1);
        let line = format!(
            "s={}: orbits={} expected={} one-normal-per-orbit={}",
            s,
            report.orbit_count(),
            expected,
            normals_ok
        );
        if report.orbit_count() != expected || !normals_ok {
            orbit_ok = false;
        }
        orbit_details.push(line);
    }
    checks.push(AuditCheck {
        name: "orbit-counts",
        status: if !asserted_class(class) {
            CheckStatus::Measured
        } else if orbit_ok {
            CheckStatus::Confirmed
        } else {
            CheckStatus::Finding
        },
        summary: format!("orbit counts for dimensions 0..={top}"),
        details: orbit_details,
    });

    // 4. top dimension
    let dim_ok = top == n - 2;
    checks.push(AuditCheck {
        name: "max-dimension",
        status: if !asserted_class(class) {
            CheckStatus::Measured
        } else if dim_ok {
            CheckStatus::Confirmed
        } else {
            CheckStatus::Finding
        },
        summary: format!("max simplex dimension = {top}, n-2 = {}", n - 2),
        details: vec![],
    });

    Ok(AuditReport { n, lattice: class, checks })
}
