//! Command handlers. Each returns a `CommandOutput` or an input-error
//! message; determinism is inherited from the library (sorted
//! structures everywhere, no floating point).

use std::io::Read;

use serde_json::{json, Value};

use tbl_core::audit::{audit_lemmas, AuditReport, CheckStatus};
use tbl_core::braid::{
    artin_symmetric_homomorphism, mu_homomorphism, normal_series_factors, BraidFamily,
    BraidKind,
};
use tbl_core::complex::{
    enumerate_simplices, max_dimension, normalize_simplex, orbit_classify, vertex_set,
    Difference, GraphKind, OrbitReport, Simplex,
};
use tbl_core::coset::{
    rewrite_subgroup_presentation, CosetTable, SchreierTransversal, SubgroupPresentation,
    TransversalStrategy,
};
use tbl_core::lattice::{marker_group, LatticeClass, RingElement};
use tbl_core::perm::{PermHomomorphism, Permutation};
use tbl_core::presentation::Presentation;
use tbl_core::tame::tame_descriptor;
use tbl_core::torus::{
    diagonal_orbit_equal, endo_kernel, is_exceptional_exact, is_exceptional_necessary,
    Configuration,
};

use crate::output::CommandOutput;
use crate::{Group, Transversal};

type CmdResult = Result<CommandOutput, String>;

fn one_based(p: &Permutation) -> Vec<usize> {
    p.one_line().iter().map(|&v| v + 1).collect()
}

fn presentation_payload(p: &Presentation) -> Value {
    serde_json::to_value(p).expect("presentation is serializable")
}

fn build_presentation(group: Group, n: usize) -> Result<Presentation, String> {
    let kind = match group {
        Group::Torus => BraidKind::TorusZariski,
        Group::Artin => BraidKind::ArtinPlane,
    };
    BraidFamily::new(kind, n)
        .map(|family| family.presentation())
        .map_err(|e| e.to_string())
}

fn build_homomorphism(group: Group, n: usize) -> Result<PermHomomorphism, String> {
    match group {
        Group::Torus => mu_homomorphism(n).map_err(|e| e.to_string()),
        Group::Artin => artin_symmetric_homomorphism(n).map_err(|e| e.to_string()),
    }
}

/// The commutation family is emitted over the standard Artin range;
/// the historically printed range stops at n-3 and would leave e.g.
/// σ_1 σ_3 unrelated. Recorded on every torus presentation report.
const COMMUTATION_RANGE_NOTE: &str = "commutation family uses the standard range \
i,j = 1..n-1 with |i-j| >= 2 (the printed source range i,j = 1..n-3 is \
narrower); a/sigma commutation keeps the printed range i = 2..n-1";

pub fn present(group: Group, n: usize) -> CmdResult {
    let p = build_presentation(group, n)?;
    let mut text = vec![
        format!("group: {group}"),
        format!("n: {n}"),
        format!(
            "generators ({}): {}",
            p.num_generators(),
            p.generators()
                .iter()
                .map(|g| g.name().to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
        format!("relators ({}):", p.relators().len()),
    ];
    for r in p.relators() {
        text.push(format!("  {}", p.format_word(r)));
    }
    let notes: Vec<&str> = match group {
        Group::Torus => vec![COMMUTATION_RANGE_NOTE],
        Group::Artin => vec![],
    };
    for note in &notes {
        text.push(format!("note: {note}"));
    }
    let payload = json!({
        "group": group.to_string(),
        "n": n,
        "generator_count": p.num_generators(),
        "relator_count": p.relators().len(),
        "presentation": presentation_payload(&p),
        "notes": notes,
    });
    Ok(CommandOutput::ok(payload, text))
}

/// Accepts a bare presentation object, a `present` payload, or a whole
/// envelope; `-` reads standard input.
fn read_presentation_json(source: &str) -> Result<Presentation, String> {
    let raw = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(source).map_err(|e| format!("cannot read {source}: {e}"))?
    };
    let mut value: Value =
        serde_json::from_str(&raw).map_err(|e| format!("invalid JSON: {e}"))?;
    for key in ["payload", "presentation"] {
        if let Some(inner) = value.get(key) {
            value = inner.clone();
        }
    }
    serde_json::from_value(value).map_err(|e| format!("not a presentation: {e}"))
}

pub fn abelianize(
    group: Option<Group>,
    n: Option<usize>,
    input: Option<String>,
) -> CmdResult {
    let (p, source) = match (input, group, n) {
        (Some(path), _, _) => {
            let p = read_presentation_json(&path)?;
            (p, if path == "-" { "stdin".to_string() } else { path })
        }
        (None, Some(group), Some(n)) => {
            (build_presentation(group, n)?, format!("{group} n={n}"))
        }
        _ => return Err("need either --in or both --group and -n".to_string()),
    };
    let invariants = p.abelian_invariants();
    let payload = json!({
        "source": source,
        "torsion": invariants.torsion,
        "free_rank": invariants.free_rank,
        "pretty": invariants.to_string(),
    });
    let text = vec![
        format!("source: {source}"),
        format!("abelian invariants: {invariants}"),
    ];
    Ok(CommandOutput::ok(payload, text))
}

pub fn mu_check(n: usize) -> CmdResult {
    let h = mu_homomorphism(n).map_err(|e| e.to_string())?;
    let violations = h.verify_relators();
    if violations.is_empty() {
        // the image is all of S(n); enumerate it only while n! is small
        let image_line;
        let (order, transitive) = if n <= 10 {
            let elements = h
                .enumerate_image(PermHomomorphism::DEFAULT_IMAGE_BOUND)
                .map_err(|e| e.to_string())?;
            let transitive = h.is_transitive();
            image_line = format!("image order {}, transitive: {transitive}", elements.len());
            (json!(elements.len()), json!(transitive))
        } else {
            image_line = "image not enumerated (order exceeds the 10! bound)".to_string();
            (Value::Null, Value::Null)
        };
        let payload = json!({
            "n": n,
            "verified": true,
            "violations": [],
            "image_order": order,
            "transitive": transitive,
        });
        let text = vec![format!(
            "mu({n}) verified: all {} relators map to the identity; {image_line}",
            h.domain().relators().len(),
        )];
        Ok(CommandOutput::ok(payload, text))
    } else {
        let payload = json!({
            "n": n,
            "verified": false,
            "violations": violations,
        });
        let text = vec![format!(
            "mu({n}) NOT verified; violated relator indices: {violations:?}"
        )];
        Ok(CommandOutput::finding(payload, text))
    }
}

pub fn normal_series(n: usize) -> CmdResult {
    let report = normal_series_factors(n).map_err(|e| e.to_string())?;
    let factors_pretty: Vec<String> =
        report.factors.iter().map(|f| f.to_string()).collect();
    let payload = json!({
        "n": n,
        "chain": report.chain,
        "factors": serde_json::to_value(&report.factors).expect("serializable"),
        "factors_pretty": factors_pretty,
    });
    let text = vec![
        format!("n: {n}"),
        format!("chain: {}", report.chain.join(" < ")),
        format!("factors (bottom to top): {}", factors_pretty.join(", ")),
    ];
    Ok(CommandOutput::ok(payload, text))
}

fn subgroup_payload(sub: &SubgroupPresentation) -> Value {
    let schreier: Vec<String> = sub
        .schreier_words()
        .iter()
        .map(|w| sub.base().format_word(w))
        .collect();
    json!({
        "stats": serde_json::to_value(sub.stats()).expect("serializable"),
        "presentation": presentation_payload(sub.presentation()),
        "schreier_words": schreier,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn pure_subgroup(
    n: usize,
    group: Group,
    transversal: Transversal,
    simplify: bool,
    abelianize: bool,
    degree_bound: usize,
) -> CmdResult {
    let h = build_homomorphism(group, n)?;
    let table = CosetTable::regular(&h, degree_bound).map_err(|e| e.to_string())?;
    let strategy = match transversal {
        Transversal::Bfs => TransversalStrategy::Bfs,
        Transversal::Dfs => TransversalStrategy::Dfs,
    };
    let tr = SchreierTransversal::new(&table, strategy);
    let mut sub = rewrite_subgroup_presentation(&table, &tr);
    if simplify {
        sub = sub.simplified();
    }
    let stats = sub.stats().clone();
    let mut payload = subgroup_payload(&sub);
    let obj = payload.as_object_mut().expect("payload is an object");
    obj.insert("n".to_string(), json!(n));
    obj.insert("group".to_string(), json!(group.to_string()));
    obj.insert("transversal".to_string(), json!(strategy.to_string()));
    obj.insert("simplified".to_string(), json!(simplify));

    let mut text = vec![
        format!("group: {group}  n: {n}  transversal: {strategy}"),
        format!("degree: {}", stats.degree),
        format!(
            "schreier pairs: {} (trivial: {})",
            stats.schreier_pairs, stats.trivial_pairs
        ),
        format!("subgroup generators: {}", stats.subgroup_generators),
        format!(
            "relators: {} rewritten, {} kept",
            stats.relators_rewritten, stats.subgroup_relators
        ),
    ];
    if abelianize {
        let invariants = sub.abelian_invariants();
        obj.insert(
            "abelianization".to_string(),
            json!({
                "torsion": invariants.torsion,
                "free_rank": invariants.free_rank,
                "pretty": invariants.to_string(),
            }),
        );
        text.push(format!("abelianization: {invariants}"));
    }
    Ok(CommandOutput::ok(payload, text))
}

pub fn lattice_markers(class: LatticeClass) -> CmdResult {
    let (units, markers) = marker_group(class);
    let unit_strings: Vec<String> = units.iter().map(|u| u.to_string()).collect();
    let marker_entries: Vec<Value> = markers
        .iter()
        .map(|m| {
            json!({
                "name": m.name(),
                "element": m.element(class).to_string(),
            })
        })
        .collect();
    let payload = json!({
        "lattice": class.to_string(),
        "unit_count": units.len(),
        "units": unit_strings,
        "canonical_markers": marker_entries,
    });
    let text = vec![
        format!("lattice: {class}"),
        format!("units ({}): {}", units.len(), unit_strings.join(", ")),
        format!(
            "canonical half M+: {}",
            markers.iter().map(|m| m.name().to_string()).collect::<Vec<_>>().join(", ")
        ),
    ];
    Ok(CommandOutput::ok(payload, text))
}

pub fn lattice_kernel(class: LatticeClass, alpha_text: &str) -> CmdResult {
    let alpha = RingElement::parse(alpha_text)
        .ok_or_else(|| format!("cannot parse ring element {alpha_text:?}"))?;
    let kernel = endo_kernel(class, alpha).map_err(|e| e.to_string())?;
    let points: Vec<String> = kernel.iter().map(|p| p.to_string()).collect();
    let payload = json!({
        "lattice": class.to_string(),
        "alpha": alpha.to_string(),
        "norm": class.norm(alpha),
        "order": kernel.len(),
        "kernel": points,
    });
    let text = vec![
        format!("lattice: {class}  alpha: {alpha}  norm: {}", class.norm(alpha)),
        format!("kernel ({} points): {}", kernel.len(), points.join(", ")),
    ];
    Ok(CommandOutput::ok(payload, text))
}

pub fn config_exceptional(class: LatticeClass, points: &str) -> CmdResult {
    let config = Configuration::parse(points)
        .ok_or_else(|| format!("cannot parse configuration {points:?}"))?;
    let necessary = is_exceptional_necessary(class, &config);
    let exact = is_exceptional_exact(class, &config);
    let witness = exact.as_ref().map(|w| {
        json!({
            "i": w.i + 1,
            "j": w.j + 1,
            "alpha": w.alpha.to_string(),
        })
    });
    let payload = json!({
        "lattice": class.to_string(),
        "points": config.to_string(),
        "size": config.len(),
        "necessary": necessary,
        "exact_witness": witness,
    });
    let mut text = vec![
        format!("lattice: {class}  size: {}", config.len()),
        format!("necessary condition (close pair): {necessary}"),
    ];
    match &exact {
        Some(w) => text.push(format!(
            "exceptional: yes — alpha = {} collapses q_{} - q_{} with kernel inside the configuration",
            w.alpha,
            w.j + 1,
            w.i + 1
        )),
        None => text.push("exceptional: no witness".to_string()),
    }
    Ok(CommandOutput::ok(payload, text))
}

pub fn orbit_equal(class: LatticeClass, q: &str, q_prime: &str) -> CmdResult {
    let q = Configuration::parse(q).ok_or_else(|| format!("cannot parse --q {q:?}"))?;
    let q_prime = Configuration::parse(q_prime)
        .ok_or_else(|| format!("cannot parse --qprime {q_prime:?}"))?;
    let witness = diagonal_orbit_equal(class, &q, &q_prime).map_err(|e| e.to_string())?;
    let payload = json!({
        "lattice": class.to_string(),
        "q": q.to_string(),
        "qprime": q_prime.to_string(),
        "witness": witness.map(|w| json!({
            "unit": w.unit.to_string(),
            "translation": w.translation.to_string(),
        })),
    });
    let text = vec![match witness {
        Some(w) => format!(
            "same orbit: yes — p -> {}·p + {}",
            w.unit, w.translation
        ),
        None => "same orbit: no".to_string(),
    }];
    Ok(CommandOutput::ok(payload, text))
}

fn orbit_report_payload(report: &OrbitReport) -> Value {
    json!({
        "dimension": report.dimension,
        "total_simplices": report.total_simplices,
        "orbit_count": report.orbit_count(),
        "orbits": report.orbits.iter().map(|o| json!({
            "representative": o.representative.to_string(),
            "size": o.size,
            "normal_members": o.normal_members.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn audit_payload(report: &AuditReport) -> Value {
    serde_json::to_value(report).expect("audit report is serializable")
}

fn audit_text(report: &AuditReport, text: &mut Vec<String>) {
    text.push(format!("audit: n={} lattice={}", report.n, report.lattice));
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Confirmed => "confirmed",
            CheckStatus::Finding => "FINDING",
            CheckStatus::Measured => "measured",
        };
        text.push(format!("  [{status}] {}: {}", check.name, check.summary));
        for d in &check.details {
            text.push(format!("    {d}"));
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn complex_cmd(
    n: usize,
    class: LatticeClass,
    dim: Option<usize>,
    orbits: bool,
    audit: bool,
    graph: GraphKind,
) -> CmdResult {
    if n > tbl_core::audit::AUDIT_MAX_N {
        return Err(format!(
            "complex enumeration is limited to n <= {}",
            tbl_core::audit::AUDIT_MAX_N
        ));
    }
    let vertices = vertex_set(n, class).map_err(|e| e.to_string())?;
    let mut payload = json!({
        "n": n,
        "lattice": class.to_string(),
        "graph": graph.to_string(),
        "vertex_count": vertices.len(),
        "vertices": vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    });
    let obj = payload.as_object_mut().expect("payload is an object");
    let mut text = vec![format!(
        "n: {n}  lattice: {class}  graph: {graph}  vertices: {}",
        vertices.len()
    )];

    if let Some(s) = dim {
        let simplices =
            enumerate_simplices(n, class, s, graph).map_err(|e| e.to_string())?;
        obj.insert("dimension".to_string(), json!(s));
        obj.insert("simplex_count".to_string(), json!(simplices.len()));
        obj.insert(
            "simplices".to_string(),
            json!(simplices.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        );
        text.push(format!("{}-simplices: {}", s, simplices.len()));
    } else {
        let top = max_dimension(n, class, graph).map_err(|e| e.to_string())?;
        obj.insert("max_dimension".to_string(), json!(top));
        text.push(format!("max dimension: {top}"));
    }

    if orbits {
        let dims: Vec<usize> = match dim {
            Some(s) => vec![s],
            None => {
                let top = max_dimension(n, class, GraphKind::Oracle)
                    .map_err(|e| e.to_string())?;
                (0..=top).collect()
            }
        };
        let mut reports = Vec::new();
        for s in dims {
            let report = orbit_classify(n, class, s).map_err(|e| e.to_string())?;
            text.push(format!(
                "s={}: {} orbit(s) over {} simplices",
                s,
                report.orbit_count(),
                report.total_simplices
            ));
            for o in &report.orbits {
                text.push(format!(
                    "  orbit size {} rep {} ({} normal member(s))",
                    o.size,
                    o.representative,
                    o.normal_members.len()
                ));
            }
            reports.push(orbit_report_payload(&report));
        }
        obj.insert("orbits".to_string(), json!(reports));
    }

    if audit {
        let report = audit_lemmas(n, class).map_err(|e| e.to_string())?;
        obj.insert("audit".to_string(), audit_payload(&report));
        audit_text(&report, &mut text);
        if report.has_findings() {
            return Ok(CommandOutput::finding(payload, text));
        }
    }
    Ok(CommandOutput::ok(payload, text))
}

pub fn normalize_simplex_cmd(n: usize, class: LatticeClass, simplex: &str) -> CmdResult {
    let vertices = Difference::parse_list(simplex)
        .ok_or_else(|| format!("cannot parse simplex {simplex:?}"))?;
    let simplex = Simplex::new(vertices).map_err(|e| e.to_string())?;
    let (sigma, form) = normalize_simplex(n, &simplex).map_err(|e| e.to_string())?;
    let normal = tbl_core::complex::normal_simplex(form.kind, form.marker, form.dim, n)
        .map_err(|e| e.to_string())?;
    let _ = class; // lattice only selects the marker alphabet, already encoded
    let payload = json!({
        "n": n,
        "input": simplex.to_string(),
        "sigma": one_based(&sigma),
        "sigma_cycles": sigma.to_string(),
        "form": form.kind.to_string(),
        "marker": form.marker.name(),
        "dimension": form.dim,
        "normal_simplex": normal.to_string(),
    });
    let text = vec![
        format!("input: {simplex}"),
        format!("sigma (one-line, 1-based): {:?}", one_based(&sigma)),
        format!("normal form: {} with marker {} -> {}", form.kind, form.marker, normal),
    ];
    Ok(CommandOutput::ok(payload, text))
}

pub fn tame_descriptor_cmd(n: usize, class: LatticeClass, image: &str) -> CmdResult {
    let vertices = Difference::parse_list(image)
        .ok_or_else(|| format!("cannot parse image {image:?}"))?;
    let descriptor = tame_descriptor(n, class, &vertices).map_err(|e| e.to_string())?;
    let payload = json!({
        "n": n,
        "lattice": class.to_string(),
        "image": vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "sigma": one_based(&descriptor.sigma),
        "sigma_cycles": descriptor.sigma.to_string(),
        "marker": descriptor.marker.name(),
        "form": descriptor.form.to_string(),
    });
    let text = vec![
        format!(
            "descriptor: sigma = {} (one-line {:?}), marker = {}, form = {}",
            descriptor.sigma,
            one_based(&descriptor.sigma),
            descriptor.marker,
            descriptor.form
        ),
    ];
    Ok(CommandOutput::ok(payload, text))
}

pub fn audit_cmd(n: usize, class: Option<LatticeClass>, bound: usize) -> CmdResult {
    if n > bound {
        return Err(format!(
            "n = {n} exceeds the audit bound {bound}; raise --bound (hard cap {})",
            tbl_core::audit::AUDIT_MAX_N
        ));
    }
    let classes = match class {
        Some(c) => vec![c],
        None => LatticeClass::ALL.to_vec(),
    };
    let mut reports = Vec::new();
    let mut text = Vec::new();
    let mut any_finding = false;
    for c in classes {
        let report = audit_lemmas(n, c).map_err(|e| e.to_string())?;
        any_finding |= report.has_findings();
        audit_text(&report, &mut text);
        reports.push(audit_payload(&report));
    }
    let payload = json!({ "n": n, "reports": reports });
    text.push(if any_finding {
        "result: findings present (exit 2)".to_string()
    } else {
        "result: all checks confirmed".to_string()
    });
    if any_finding {
        Ok(CommandOutput::finding(payload, text))
    } else {
        Ok(CommandOutput::ok(payload, text))
    }
}
