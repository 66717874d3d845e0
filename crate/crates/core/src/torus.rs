//! Rational points of the torus `T² = C/Λ`, its automorphism group,
//! endomorphism kernels, and configuration-level operations.
//!
//! Points are pairs of exact rationals in `[0, 1)` over the lattice
//! basis `(1, τ)`; only torsion points are representable, which is all
//! the combinatorics downstream ever needs.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::lattice::{LatticeClass, Marker, RingElement};
use crate::matrix::smith_normal_form;

pub type Rat = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorusError {
    #[error("the zero endomorphism is excluded (constant map)")]
    ZeroEndomorphism,
    #[error("{0} is not a unit, so it is not an automorphism")]
    NotAUnit(RingElement),
    #[error("{elem} does not lie in the {class} endomorphism ring")]
    NotInRing { class: LatticeClass, elem: RingElement },
    #[error("configuration points must be pairwise distinct")]
    DuplicatePoints,
    #[error("configuration must be nonempty")]
    EmptyConfiguration,
    #[error("configurations have different sizes: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("kernel of {alpha} has {norm} points, above the enumeration cap {cap}")]
    KernelTooLarge { alpha: RingElement, norm: i64, cap: i64 },
    #[error("coefficients of {0} are too large for exact kernel arithmetic")]
    CoefficientsTooLarge(RingElement),
    #[error("point index {index} out of range for a configuration of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("difference indices must be distinct")]
    EqualIndices,
}

/// A point of the torus with rational coordinates, reduced mod 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    x: Rat,
    y: Rat,
}

fn frac(r: Rat) -> Rat {
    let f = r - r.floor();
    debug_assert!(!f.is_negative() && f < Rat::from_integer(1));
    f
}

impl TorusPoint {
    pub const fn zero() -> Self {
        TorusPoint { x: Ratio::new_raw(0, 1), y: Ratio::new_raw(0, 1) }
    }

    pub fn new(x: Rat, y: Rat) -> Self {
        TorusPoint { x: frac(x), y: frac(y) }
    }

    pub fn from_fractions(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        TorusPoint::new(Ratio::new(xn, xd), Ratio::new(yn, yd))
    }

    pub fn x(&self) -> Rat {
        self.x
    }

    pub fn y(&self) -> Rat {
        self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::new(self.x + other.x, self.y + other.y)
    }

    pub fn sub(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::new(self.x - other.x, self.y - other.y)
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(-self.x, -self.y)
    }

    /// Order in the torsion group: lcm of the reduced denominators.
    pub fn order(&self) -> i64 {
        num_integer::lcm(*self.x.denom(), *self.y.denom())
    }
}

impl TorusPoint {
    /// Parse `num/den:num/den` (bare integers allowed per coordinate).
    pub fn parse(text: &str) -> Option<TorusPoint> {
        let (x, y) = text.split_once(':')?;
        Some(TorusPoint::new(parse_rat(x)?, parse_rat(y)?))
    }
}

fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let den = d.parse::<i64>().ok()?;
            if den == 0 {
                return None;
            }
            Some(Ratio::new(n.parse::<i64>().ok()?, den))
        }
        None => Some(Ratio::from_integer(text.parse::<i64>().ok()?)),
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}:{}/{}",
            self.x.numer(),
            self.x.denom(),
            self.y.numer(),
            self.y.denom()
        )
    }
}

/// `point_order(p)`: exposed standalone to mirror the operation map.
pub fn point_order(p: &TorusPoint) -> i64 {
    p.order()
}

/// Apply a nonzero endomorphism `α` to a point via its multiplication
/// matrix; additive in the point.
pub fn apply_endo(
    class: LatticeClass,
    alpha: RingElement,
    p: &TorusPoint,
) -> Result<TorusPoint, TorusError> {
    if alpha.is_zero() {
        return Err(TorusError::ZeroEndomorphism);
    }
    if !class.contains(alpha) {
        return Err(TorusError::NotInRing { class, elem: alpha });
    }
    let m = class.multiplication_matrix(alpha);
    Ok(TorusPoint::new(
        p.x * Rat::from_integer(m[0][0]) + p.y * Rat::from_integer(m[0][1]),
        p.x * Rat::from_integer(m[1][0]) + p.y * Rat::from_integer(m[1][1]),
    ))
}

/// All points killed by `α`, i.e. solutions of `A·v ∈ Z²` where `A` is
/// the multiplication matrix. Solved exactly through the Smith normal
/// form `U·A·V = D`: the kernel is `{V·(i/d₁, j/d₂)}`, of size
/// `d₁·d₂ = norm(α)`. Returned sorted.
pub fn endo_kernel(
    class: LatticeClass,
    alpha: RingElement,
) -> Result<Vec<TorusPoint>, TorusError> {
    const KERNEL_CAP: i64 = 4096;
    if alpha.is_zero() {
        return Err(TorusError::ZeroEndomorphism);
    }
    if !class.contains(alpha) {
        return Err(TorusError::NotInRing { class, elem: alpha });
    }
    if alpha.a.unsigned_abs() > 1_000_000 || alpha.b.unsigned_abs() > 1_000_000 {
        return Err(TorusError::CoefficientsTooLarge(alpha));
    }
    let norm = class.norm(alpha);
    if norm > KERNEL_CAP {
        return Err(TorusError::KernelTooLarge { alpha, norm, cap: KERNEL_CAP });
    }
    let snf = smith_normal_form(&class.multiplication_integer_matrix(alpha));
    let d1 = snf.d[(0, 0)] as i64;
    let d2 = snf.d[(1, 1)] as i64;
    debug_assert_eq!((d1 * d2) as i128, (class.norm(alpha)) as i128);
    let v00 = snf.v[(0, 0)] as i64;
    let v01 = snf.v[(0, 1)] as i64;
    let v10 = snf.v[(1, 0)] as i64;
    let v11 = snf.v[(1, 1)] as i64;
    let mut points = Vec::with_capacity((d1 * d2) as usize);
    for i in 0..d1 {
        for j in 0..d2 {
            let w0 = Rat::new(i, d1);
            let w1 = Rat::new(j, d2);
            points.push(TorusPoint::new(
                w0 * Rat::from_integer(v00) + w1 * Rat::from_integer(v01),
                w0 * Rat::from_integer(v10) + w1 * Rat::from_integer(v11),
            ));
        }
    }
    points.sort();
    points.dedup();
    Ok(points)
}

/// An automorphism `p ↦ u·p + c` with `u` a unit of the endomorphism
/// ring (any element of `𝔐`) and `c` a translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusAutomorphism {
    pub unit: RingElement,
    pub translation: TorusPoint,
}

impl TorusAutomorphism {
    pub fn new(
        class: LatticeClass,
        unit: RingElement,
        translation: TorusPoint,
    ) -> Result<Self, TorusError> {
        if !class.contains(unit) {
            return Err(TorusError::NotInRing { class, elem: unit });
        }
        if !class.is_unit(unit) {
            return Err(TorusError::NotAUnit(unit));
        }
        Ok(TorusAutomorphism { unit, translation })
    }

    pub fn identity() -> Self {
        TorusAutomorphism { unit: RingElement::ONE, translation: TorusPoint::zero() }
    }

    pub fn apply(&self, class: LatticeClass, p: &TorusPoint) -> TorusPoint {
        apply_endo(class, self.unit, p)
            .expect("unit is nonzero")
            .add(&self.translation)
    }

    /// `(u₂,c₂) ∘ (u₁,c₁) = (u₂u₁, u₂c₁ + c₂)`: `self` applied after `inner`.
    pub fn compose(&self, class: LatticeClass, inner: &TorusAutomorphism) -> Self {
        TorusAutomorphism {
            unit: class.mul(self.unit, inner.unit),
            translation: self.apply(class, &inner.translation),
        }
    }

    pub fn invert(&self, class: LatticeClass) -> Self {
        let inv = class.conj(self.unit);
        TorusAutomorphism {
            unit: inv,
            translation: apply_endo(class, inv, &self.translation)
                .expect("unit is nonzero")
                .neg(),
        }
    }

    /// Apply to every point of a configuration; distinctness survives
    /// because automorphisms are injective.
    pub fn apply_config(
        &self,
        class: LatticeClass,
        config: &Configuration,
    ) -> Configuration {
        Configuration::new(
            config.points().iter().map(|p| self.apply(class, p)).collect(),
        )
        .expect("automorphisms preserve distinctness")
    }
}

/// An ordered configuration of pairwise distinct torus points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    points: Vec<TorusPoint>,
}

impl Configuration {
    pub fn new(points: Vec<TorusPoint>) -> Result<Self, TorusError> {
        if points.is_empty() {
            return Err(TorusError::EmptyConfiguration);
        }
        let mut sorted = points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(TorusError::DuplicatePoints);
        }
        Ok(Configuration { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Result<&TorusPoint, TorusError> {
        self.points.get(index).ok_or(TorusError::IndexOutOfRange {
            index,
            size: self.points.len(),
        })
    }

    /// The unordered view: points in sorted order.
    pub fn sorted_points(&self) -> Vec<TorusPoint> {
        let mut pts = self.points.clone();
        pts.sort();
        pts
    }

    pub fn contains(&self, p: &TorusPoint) -> bool {
        self.points.contains(p)
    }

    /// Same underlying point set, ignoring order.
    pub fn same_set(&self, other: &Configuration) -> bool {
        self.sorted_points() == other.sorted_points()
    }

    /// Parse comma-separated points in `num/den:num/den` syntax.
    pub fn parse(text: &str) -> Option<Configuration> {
        let points = text
            .split(',')
            .map(|p| TorusPoint::parse(p.trim()))
            .collect::<Option<Vec<_>>>()?;
        Configuration::new(points).ok()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `s(q) = q_1 + … + q_n`, invariant under reordering.
pub fn sum_map(config: &Configuration) -> TorusPoint {
    config
        .points()
        .iter()
        .fold(TorusPoint::zero(), |acc, p| acc.add(p))
}

/// `e_{m;i,j}(q) = m(q_i − q_j)`; nonzero on every valid configuration
/// because markers are units.
pub fn difference_eval(
    class: LatticeClass,
    marker: Marker,
    i: usize,
    j: usize,
    config: &Configuration,
) -> Result<TorusPoint, TorusError> {
    if i == j {
        return Err(TorusError::EqualIndices);
    }
    let qi = config.point(i)?;
    let qj = config.point(j)?;
    apply_endo(class, marker.element(class), &qi.sub(qj))
}

/// Necessary condition for exceptionality: some difference of
/// configuration points has order at most the configuration size.
pub fn is_exceptional_necessary(_class: LatticeClass, config: &Configuration) -> bool {
    let m = config.len() as i64;
    let pts = config.points();
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if i != j && pts[j].sub(&pts[i]).order() <= m {
                return true;
            }
        }
    }
    false
}

/// A witness that a configuration is exceptional: `α(q_j − q_i) = 0`
/// and the whole kernel of `α`, translated to `q_i`, sits inside the
/// configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalWitness {
    pub i: usize,
    pub j: usize,
    pub alpha: RingElement,
}

/// Endomorphisms with norm in `[2, max_norm]`, one representative per
/// unit-multiple class (kernels only depend on that class), ordered by
/// (norm, a, b). The representative is the lexicographically greatest
/// of its unit multiples.
pub fn endo_candidates(class: LatticeClass, max_norm: i64) -> Vec<RingElement> {
    let mut out: Vec<(i64, RingElement)> = Vec::new();
    if max_norm < 2 {
        return Vec::new();
    }
    // |a|, |b| ≤ max_norm safely covers all three positive definite forms
    let range = max_norm;
    for a in -range..=range {
        let brange = if class == LatticeClass::Generic { 0..=0 } else { -range..=range };
        for b in brange {
            let alpha = RingElement::new(a, b);
            let norm = class.norm(alpha);
            if norm < 2 || norm > max_norm {
                continue;
            }
            let canonical = class
                .units()
                .iter()
                .map(|&u| class.mul(u, alpha))
                .max()
                .expect("unit group is nonempty");
            if canonical == alpha {
                out.push((norm, alpha));
            }
        }
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|(_, alpha)| alpha).collect()
}

/// Exact exceptionality test by exhaustive search over endomorphisms
/// with kernel order bounded by the configuration size. Returns the
/// first witness in (norm, a, b, i, j) order.
pub fn is_exceptional_exact(
    class: LatticeClass,
    config: &Configuration,
) -> Option<ExceptionalWitness> {
    let m = config.len() as i64;
    let pts = config.points();
    for alpha in endo_candidates(class, m) {
        let kernel = endo_kernel(class, alpha).expect("candidates are nonzero");
        for i in 0..pts.len() {
            // q_i + ker α must lie inside the configuration
            if !kernel.iter().all(|t| config.contains(&pts[i].add(t))) {
                continue;
            }
            for j in 0..pts.len() {
                if i == j {
                    continue;
                }
                let diff = pts[j].sub(&pts[i]);
                if apply_endo(class, alpha, &diff)
                    .expect("candidates are nonzero")
                    .is_zero()
                {
                    return Some(ExceptionalWitness { i, j, alpha });
                }
            }
        }
    }
    None
}

/// Search for an automorphism carrying `Q` to `Q'` as unordered sets.
/// Complete: any such automorphism maps `q_1` to some `q'_k`, so trying
/// every unit and every candidate translation `q'_k − u·q_1` exhausts
/// the possibilities.
pub fn diagonal_orbit_equal(
    class: LatticeClass,
    q: &Configuration,
    q_prime: &Configuration,
) -> Result<Option<TorusAutomorphism>, TorusError> {
    if q.len() != q_prime.len() {
        return Err(TorusError::SizeMismatch(q.len(), q_prime.len()));
    }
    let q1 = q.point(0)?;
    for &unit in &class.units() {
        let u_q1 = apply_endo(class, unit, q1).expect("units are nonzero");
        for k in 0..q_prime.len() {
            let translation = q_prime.point(k)?.sub(&u_q1);
            let candidate = TorusAutomorphism { unit, translation };
            if candidate.apply_config(class, q).same_set(q_prime) {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}
