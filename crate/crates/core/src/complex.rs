//! The complex of differences `L(𝔈ⁿ(T²))` and its flag structure.
//!
//! Vertices are the differences `e_{m;i,j}(q) = m(q_i − q_j)` with `m`
//! a canonical marker and `i ≠ j`; `e_{m;i,j}` and `e_{m;j,i}` are
//! distinct vertices. Two vertices are joined by an edge when their
//! pointwise difference is again a difference (the proper-remainder
//! relation), and simplices are the cliques of that graph.
//!
//! Ground truth for the edge relation is the symbolic oracle: expand
//! `μ − ν` as a ring-linear combination of the `q_k` and test whether
//! exactly two opposite unit coefficients survive. A unit coefficient
//! is required because a non-unit has nontrivial kernel and the map
//! would hit `0` on some valid configuration. The closed-form rule
//! (equal markers, exactly one shared support slot) is a fast path that
//! the audit compares against the oracle; on the hexagonal lattice the
//! two genuinely disagree on same-support pairs whose coefficients
//! differ by a unit.
//!
//! Indices are 0-based internally; text renderings are 1-based.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::{LatticeClass, Marker, RingElement};
use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("the difference complex needs n ≥ 2, got {0}")]
    TooFewPoints(usize),
    #[error("difference indices must be distinct")]
    EqualIndices,
    #[error("vertex index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("the two vertices must be distinct")]
    EqualVertices,
    #[error("permutation degree {degree} does not cover vertex index {index}")]
    DegreeMismatch { degree: usize, index: usize },
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,
    #[error("simplex vertices must be distinct")]
    DuplicateVertices,
    #[error("simplex mixes markers, no normal form applies")]
    MixedMarkerSimplex,
    #[error("simplex is neither common-first-index nor common-second-index")]
    NotNormalizable,
    #[error("{0} is not a unit of the endomorphism ring")]
    NotAUnit(RingElement),
    #[error("vertex pair ({0}, {1}) violates the flag condition")]
    NotASimplex(Difference, Difference),
    #[error("normal forms need s + 2 ≤ n, got s = {s}, n = {n}")]
    DimensionTooLarge { s: usize, n: usize },
    #[error("exhaustive audit is limited to n ≤ {max}, got {n}")]
    AuditBound { n: usize, max: usize },
}

/// A vertex `e_{m;i,j}` of the difference complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Difference {
    pub marker: Marker,
    pub i: usize,
    pub j: usize,
}

impl Difference {
    pub fn new(marker: Marker, i: usize, j: usize) -> Result<Self, ComplexError> {
        if i == j {
            return Err(ComplexError::EqualIndices);
        }
        Ok(Difference { marker, i, j })
    }

    /// Unordered support `{q_i, q_j}`.
    pub fn support(&self) -> [usize; 2] {
        if self.i < self.j {
            [self.i, self.j]
        } else {
            [self.j, self.i]
        }
    }
}

impl Difference {
    /// Parse `marker:i,j` with marker ∈ {1, t, t2} and 1-based indices.
    pub fn parse(text: &str) -> Option<Difference> {
        let (marker, indices) = text.trim().split_once(':')?;
        let marker = Marker::parse(marker)?;
        let (i, j) = indices.split_once(',')?;
        let i = i.trim().parse::<usize>().ok()?;
        let j = j.trim().parse::<usize>().ok()?;
        if i == 0 || j == 0 {
            return None;
        }
        Difference::new(marker, i - 1, j - 1).ok()
    }

    /// Parse a semicolon-separated vertex list (e.g. `1:1,2;1:1,3`),
    /// preserving order.
    pub fn parse_list(text: &str) -> Option<Vec<Difference>> {
        text.split(';').map(Difference::parse).collect()
    }
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.marker, self.i + 1, self.j + 1)
    }
}

/// All differences for `n` points, ordered by (marker, i, j); the count
/// is `|𝔐₊|·n·(n−1)`.
pub fn vertex_set(n: usize, class: LatticeClass) -> Result<Vec<Difference>, ComplexError> {
    if n < 2 {
        return Err(ComplexError::TooFewPoints(n));
    }
    let mut out = Vec::with_capacity(class.marker_count() * n * (n - 1));
    for marker in Marker::all(class) {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(Difference { marker, i, j });
                }
            }
        }
    }
    Ok(out)
}

/// A finitely supported ring-linear form `Σ c_k q_k`; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalCombination {
    coeffs: BTreeMap<usize, RingElement>,
}

impl FormalCombination {
    pub fn new() -> Self {
        FormalCombination::default()
    }

    pub fn add_term(&mut self, index: usize, value: RingElement) {
        let entry = self.coeffs.entry(index).or_insert(RingElement::ZERO);
        *entry = *entry + value;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn coefficient(&self, index: usize) -> RingElement {
        self.coeffs.get(&index).copied().unwrap_or(RingElement::ZERO)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, RingElement)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient form of a single difference.
    pub fn from_difference(class: LatticeClass, d: &Difference) -> Self {
        let mut f = FormalCombination::new();
        let m = d.marker.element(class);
        f.add_term(d.i, m);
        f.add_term(d.j, -m);
        f
    }

    pub fn sub(&self, other: &FormalCombination) -> FormalCombination {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k, -v);
        }
        out
    }

    /// Permutation action matching the vertex action: the coefficient
    /// of `q_{σ(k)}` in `σ·f` is the coefficient of `q_k` in `f`.
    pub fn act(&self, sigma: &Permutation) -> Result<FormalCombination, ComplexError> {
        let mut out = FormalCombination::new();
        for (k, v) in self.terms() {
            if k >= sigma.degree() {
                return Err(ComplexError::DegreeMismatch {
                    degree: sigma.degree(),
                    index: k,
                });
            }
            out.add_term(sigma.apply(k), v);
        }
        Ok(out)
    }
}

/// `μ − ν` as a formal ring-linear combination.
pub fn formal_difference(
    class: LatticeClass,
    mu: &Difference,
    nu: &Difference,
) -> FormalCombination {
    FormalCombination::from_difference(class, mu)
        .sub(&FormalCombination::from_difference(class, nu))
}

/// Decide whether a formal combination is itself a difference: exactly
/// two nonzero coefficients, opposite, and units. The marker is then
/// canonicalized into `𝔐₊`, swapping the indices when the unit had to
/// be negated.
pub fn is_difference(
    class: LatticeClass,
    f: &FormalCombination,
) -> Option<Difference> {
    if f.len() != 2 {
        return None;
    }
    let terms: Vec<(usize, RingElement)> = f.terms().collect();
    let (e, ue) = terms[0];
    let (g, ug) = terms[1];
    if ue != -ug {
        return None;
    }
    let (marker, negated) = Marker::canonicalize(class, ue)?;
    Some(if negated {
        Difference { marker, i: g, j: e }
    } else {
        Difference { marker, i: e, j: g }
    })
}

/// The proper-remainder relation, decided by the symbolic oracle:
/// `ν ∣ μ` iff `μ − ν` is again a difference. Symmetric in its
/// arguments.
pub fn proper_remainder_oracle(
    class: LatticeClass,
    mu: &Difference,
    nu: &Difference,
) -> Result<Option<Difference>, ComplexError> {
    if mu == nu {
        return Err(ComplexError::EqualVertices);
    }
    Ok(is_difference(class, &formal_difference(class, mu, nu)))
}

/// Closed-form edge predicate: equal markers and exactly one shared
/// index slot (first indices equal xor second indices equal).
pub fn proper_remainder_rule(
    mu: &Difference,
    nu: &Difference,
) -> Result<bool, ComplexError> {
    if mu == nu {
        return Err(ComplexError::EqualVertices);
    }
    Ok(mu.marker == nu.marker && ((mu.i == nu.i) != (mu.j == nu.j)))
}

/// Which graph underlies clique enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Oracle,
    Rule,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Oracle => write!(f, "oracle"),
            GraphKind::Rule => write!(f, "rule"),
        }
    }
}

/// A simplex of the flag complex: a clique of differences, stored
/// sorted for canonical serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<Difference>,
}

impl Simplex {
    pub fn new(mut vertices: Vec<Difference>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertices);
        }
        Ok(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[Difference] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

fn adjacency(
    class: LatticeClass,
    vertices: &[Difference],
    graph: GraphKind,
) -> Vec<Vec<bool>> {
    let n = vertices.len();
    let mut adj = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let edge = match graph {
                GraphKind::Oracle => {
                    proper_remainder_oracle(class, &vertices[a], &vertices[b])
                        .expect("distinct vertices")
                        .is_some()
                }
                GraphKind::Rule => proper_remainder_rule(&vertices[a], &vertices[b])
                    .expect("distinct vertices"),
            };
            adj[a][b] = edge;
            adj[b][a] = edge;
        }
    }
    adj
}

/// All `(s+1)`-cliques of the chosen graph, in lexicographic vertex
/// order. Empty when none exist.
pub fn enumerate_simplices(
    n: usize,
    class: LatticeClass,
    s: usize,
    graph: GraphKind,
) -> Result<Vec<Simplex>, ComplexError> {
    let vertices = vertex_set(n, class)?;
    let adj = adjacency(class, &vertices, graph);
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(s + 1);
    fn extend(
        target: usize,
        start: usize,
        adj: &[Vec<bool>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == target {
            out.push(current.clone());
            return;
        }
        for v in start..adj.len() {
            if current.iter().all(|&u| adj[u][v]) {
                current.push(v);
                extend(target, v + 1, adj, current, out);
                current.pop();
            }
        }
    }
    let mut cliques = Vec::new();
    extend(s + 1, 0, &adj, &mut current, &mut cliques);
    for clique in cliques {
        out.push(
            Simplex::new(clique.into_iter().map(|v| vertices[v]).collect())
                .expect("cliques are duplicate-free"),
        );
    }
    Ok(out)
}

/// Largest `s` with a nonempty set of `s`-simplices in the chosen graph.
pub fn max_dimension(
    n: usize,
    class: LatticeClass,
    graph: GraphKind,
) -> Result<usize, ComplexError> {
    let mut s = 0;
    loop {
        if enumerate_simplices(n, class, s + 1, graph)?.is_empty() {
            return Ok(s);
        }
        s += 1;
    }
}

/// The symmetric-group action `σ·e_{m;i,j} = e_{m;σ(i),σ(j)}`, induced
/// from `(σλ)(q) = λ(σ⁻¹q)`. Markers are untouched.
pub fn act_on_difference(
    sigma: &Permutation,
    d: &Difference,
) -> Result<Difference, ComplexError> {
    for index in [d.i, d.j] {
        if index >= sigma.degree() {
            return Err(ComplexError::DegreeMismatch { degree: sigma.degree(), index });
        }
    }
    Ok(Difference { marker: d.marker, i: sigma.apply(d.i), j: sigma.apply(d.j) })
}

pub fn act_on_simplex(
    sigma: &Permutation,
    simplex: &Simplex,
) -> Result<Simplex, ComplexError> {
    Simplex::new(
        simplex
            .vertices()
            .iter()
            .map(|v| act_on_difference(sigma, v))
            .collect::<Result<Vec<_>, _>>()?,
    )
}

/// Δ- or ∇-form of a normal simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormKind {
    /// Common first support index 1: `{e_{m;1,2}, …, e_{m;1,s+2}}`.
    Delta,
    /// Common second support index 1: `{e_{m;2,1}, …, e_{m;s+2,1}}`.
    Nabla,
}

impl fmt::Display for NormalFormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalFormKind::Delta => write!(f, "delta"),
            NormalFormKind::Nabla => write!(f, "nabla"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub kind: NormalFormKind,
    pub marker: Marker,
    pub dim: usize,
}

/// The normal simplex `Δ^s_m` or `∇^s_m` inside the `n`-point complex.
pub fn normal_simplex(
    kind: NormalFormKind,
    marker: Marker,
    s: usize,
    n: usize,
) -> Result<Simplex, ComplexError> {
    if s + 2 > n {
        return Err(ComplexError::DimensionTooLarge { s, n });
    }
    let vertices = (1..=s + 1)
        .map(|k| match kind {
            NormalFormKind::Delta => Difference { marker, i: 0, j: k },
            NormalFormKind::Nabla => Difference { marker, i: k, j: 0 },
        })
        .collect();
    Simplex::new(vertices)
}

/// Whether a simplex is literally a normal form. A single vertex counts
/// as normal only in its Δ⁰ shape `e_{m;1,2}`, so every orbit carries
/// exactly one normal representative in every dimension.
pub fn as_normal_form(simplex: &Simplex) -> Option<NormalForm> {
    let verts = simplex.vertices();
    let marker = verts[0].marker;
    if verts.iter().any(|v| v.marker != marker) {
        return None;
    }
    let s = simplex.dim();
    let delta: Vec<Difference> = (1..=s + 1)
        .map(|k| Difference { marker, i: 0, j: k })
        .collect();
    if verts == delta.as_slice() {
        return Some(NormalForm { kind: NormalFormKind::Delta, marker, dim: s });
    }
    if s > 0 {
        let nabla: Vec<Difference> = (1..=s + 1)
            .map(|k| Difference { marker, i: k, j: 0 })
            .collect();
        if verts == nabla.as_slice() {
            return Some(NormalForm { kind: NormalFormKind::Nabla, marker, dim: s });
        }
    }
    None
}

/// Carry a pure-marker simplex to its normal form. Returns the
/// lexicographically smallest permutation (in one-line notation) doing
/// so, together with the form reached.
pub fn normalize_simplex(
    n: usize,
    simplex: &Simplex,
) -> Result<(Permutation, NormalForm), ComplexError> {
    let verts = simplex.vertices();
    for v in verts {
        for index in [v.i, v.j] {
            if index >= n {
                return Err(ComplexError::IndexOutOfRange { index, n });
            }
        }
    }
    let marker = verts[0].marker;
    if verts.iter().any(|v| v.marker != marker) {
        return Err(ComplexError::MixedMarkerSimplex);
    }
    let s = simplex.dim();

    let all_first_equal = verts.iter().all(|v| v.i == verts[0].i);
    let all_second_equal = verts.iter().all(|v| v.j == verts[0].j);
    let (kind, apex, tails): (NormalFormKind, usize, Vec<usize>) =
        if all_first_equal && (s == 0 || !all_second_equal) {
            (NormalFormKind::Delta, verts[0].i, verts.iter().map(|v| v.j).collect())
        } else if all_second_equal {
            (NormalFormKind::Nabla, verts[0].j, verts.iter().map(|v| v.i).collect())
        } else {
            return Err(ComplexError::NotNormalizable);
        };

    // Lexicographically minimal one-line completion: the apex goes to 0,
    // tail positions forward-fill {1..s+1}, everything else forward-fills
    // the remainder.
    let mut tail_values: std::collections::VecDeque<usize> = (1..=s + 1).collect();
    let mut other_values: std::collections::VecDeque<usize> = (s + 2..n).collect();
    let mut images = Vec::with_capacity(n);
    for pos in 0..n {
        if pos == apex {
            images.push(0);
        } else if tails.contains(&pos) {
            images.push(tail_values.pop_front().expect("one tail value per tail"));
        } else {
            images.push(other_values.pop_front().expect("enough leftover values"));
        }
    }
    let sigma = Permutation::new(images).expect("constructed a bijection");
    let form = NormalForm { kind, marker, dim: s };
    debug_assert_eq!(
        act_on_simplex(&sigma, simplex).unwrap(),
        normal_simplex(kind, marker, s, n).unwrap()
    );
    Ok((sigma, form))
}

/// One orbit of the symmetric-group action on `s`-simplices.
#[derive(Clone, Debug)]
pub struct OrbitInfo {
    /// Lexicographically smallest member.
    pub representative: Simplex,
    pub size: usize,
    /// Members that are literal normal forms.
    pub normal_members: Vec<Simplex>,
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub n: usize,
    pub dimension: usize,
    pub total_simplices: usize,
    pub orbits: Vec<OrbitInfo>,
}

impl OrbitReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }
}

/// Partition the `s`-simplices of the oracle graph into orbits of the
/// `S(n)` action. Orbits are keyed by their lexicographically smallest
/// member, so the report is deterministic.
pub fn orbit_classify(
    n: usize,
    class: LatticeClass,
    s: usize,
) -> Result<OrbitReport, ComplexError> {
    let simplices = enumerate_simplices(n, class, s, GraphKind::Oracle)?;
    let perms = Permutation::all(n);
    let mut groups: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
    for simplex in &simplices {
        let canonical = perms
            .iter()
            .map(|p| act_on_simplex(p, simplex).expect("degrees match"))
            .min()
            .expect("S(n) is nonempty");
        groups.entry(canonical).or_default().push(simplex.clone());
    }
    let orbits = groups
        .into_iter()
        .map(|(representative, members)| {
            let normal_members = members
                .iter()
                .filter(|m| as_normal_form(m).is_some())
                .cloned()
                .collect();
            OrbitInfo { representative, size: members.len(), normal_members }
        })
        .collect();
    Ok(OrbitReport { n, dimension: s, total_simplices: simplices.len(), orbits })
}
