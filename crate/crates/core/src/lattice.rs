//! Exact arithmetic in the endomorphism rings of the three torus
//! lattice classes.
//!
//! * `Generic` — no complex multiplication; the ring is `Z` and the
//!   unit group is `{±1}`.
//! * `Square` — Gaussian lattice, `τ² = −1`; units `{±1, ±τ}`.
//! * `Hexagonal` — `τ = e^{iπ/3}` with `τ² = τ − 1`; units
//!   `{±1, ±τ, ±τ²}`. This basis makes all six units powers of the
//!   single generator `τ` and puts `1, τ, τ²` (arguments `0, π/3,
//!   2π/3`) in the canonical half `𝔐₊`.
//!
//! Elements are `a + bτ` with integer coefficients; the marker group
//! `𝔐` is the unit group, and `𝔐₊` is the half with argument in
//! `[0, π)`, one unit from each `±` pair.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntegerMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("{elem} does not lie in the {class} endomorphism ring")]
    NotInRing { class: LatticeClass, elem: RingElement },
    #[error("{elem} is not a unit (norm {norm})")]
    NotAUnit { elem: RingElement, norm: i64 },
    #[error("{elem} is a unit but not in the canonical half")]
    NotCanonical { elem: RingElement },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeClass {
    Generic,
    Square,
    Hexagonal,
}

impl LatticeClass {
    pub const ALL: [LatticeClass; 3] =
        [LatticeClass::Generic, LatticeClass::Square, LatticeClass::Hexagonal];

    /// Whether `x` is an element of this class's endomorphism ring
    /// (`Generic` forces the τ coefficient to vanish).
    pub fn contains(self, x: RingElement) -> bool {
        self != LatticeClass::Generic || x.b == 0
    }

    pub fn mul(self, x: RingElement, y: RingElement) -> RingElement {
        debug_assert!(self.contains(x) && self.contains(y));
        match self {
            LatticeClass::Generic => RingElement::new(x.a * y.a, 0),
            // τ² = −1
            LatticeClass::Square => {
                RingElement::new(x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a)
            }
            // τ² = τ − 1
            LatticeClass::Hexagonal => RingElement::new(
                x.a * y.a - x.b * y.b,
                x.a * y.b + x.b * y.a + x.b * y.b,
            ),
        }
    }

    /// `|x|²`: multiplicative, positive definite.
    pub fn norm(self, x: RingElement) -> i64 {
        debug_assert!(self.contains(x));
        match self {
            LatticeClass::Generic => x.a * x.a,
            LatticeClass::Square => x.a * x.a + x.b * x.b,
            LatticeClass::Hexagonal => x.a * x.a + x.a * x.b + x.b * x.b,
        }
    }

    /// Complex conjugate; for a unit this is its inverse.
    pub fn conj(self, x: RingElement) -> RingElement {
        debug_assert!(self.contains(x));
        match self {
            LatticeClass::Generic => x,
            LatticeClass::Square => RingElement::new(x.a, -x.b),
            // conj(τ) = 1 − τ
            LatticeClass::Hexagonal => RingElement::new(x.a + x.b, -x.b),
        }
    }

    pub fn is_unit(self, x: RingElement) -> bool {
        self.contains(x) && self.norm(x) == 1
    }

    /// The full unit group `𝔐`, canonical half first: `𝔐₊` followed by
    /// its negatives in the same order.
    pub fn units(self) -> Vec<RingElement> {
        let mut out: Vec<RingElement> =
            self.canonical_units().into_iter().collect();
        let negatives: Vec<RingElement> = out.iter().map(|&u| -u).collect();
        out.extend(negatives);
        out
    }

    /// `𝔐₊`: units with argument in `[0, π)`.
    pub fn canonical_units(self) -> Vec<RingElement> {
        match self {
            LatticeClass::Generic => vec![RingElement::ONE],
            LatticeClass::Square => vec![RingElement::ONE, RingElement::TAU],
            LatticeClass::Hexagonal => vec![
                RingElement::ONE,
                RingElement::TAU,
                RingElement::new(-1, 1), // τ² = τ − 1
            ],
        }
    }

    pub fn marker_count(self) -> usize {
        self.canonical_units().len()
    }

    /// Matrix of multiplication by `u` on `(x, y)` coordinates over the
    /// basis `(1, τ)`; its determinant is `norm(u)`.
    pub fn multiplication_matrix(self, u: RingElement) -> [[i64; 2]; 2] {
        debug_assert!(self.contains(u));
        match self {
            LatticeClass::Generic => [[u.a, 0], [0, u.a]],
            LatticeClass::Square => [[u.a, -u.b], [u.b, u.a]],
            LatticeClass::Hexagonal => [[u.a, -u.b], [u.b, u.a + u.b]],
        }
    }

    pub fn multiplication_integer_matrix(self, u: RingElement) -> IntegerMatrix {
        let m = self.multiplication_matrix(u);
        IntegerMatrix::from_rows(vec![
            vec![m[0][0] as i128, m[0][1] as i128],
            vec![m[1][0] as i128, m[1][1] as i128],
        ])
        .expect("2x2")
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeClass::Generic => write!(f, "generic"),
            LatticeClass::Square => write!(f, "square"),
            LatticeClass::Hexagonal => write!(f, "hexagonal"),
        }
    }
}

/// `a + bτ` with exact integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElement {
    pub a: i64,
    pub b: i64,
}

impl RingElement {
    pub const ZERO: RingElement = RingElement { a: 0, b: 0 };
    pub const ONE: RingElement = RingElement { a: 1, b: 0 };
    pub const TAU: RingElement = RingElement { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        RingElement { a, b }
    }

    pub const fn integer(a: i64) -> Self {
        RingElement { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl std::ops::Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        RingElement::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl std::ops::Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        RingElement::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl std::ops::Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::new(-self.a, -self.b)
    }
}

impl RingElement {
    /// Parse the element syntax `a`, `a+b*t`, or `a-b*t` with integer
    /// coefficients (the format produced by `Display`).
    pub fn parse(text: &str) -> Option<RingElement> {
        let text = text.trim();
        if let Ok(a) = text.parse::<i64>() {
            return Some(RingElement::integer(a));
        }
        // split at the sign of the τ term, skipping a leading sign
        let split = text
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')?;
        let (a_part, rest) = text.split_at(split.0);
        let b_part = rest.strip_suffix("*t")?;
        let a = a_part.parse::<i64>().ok()?;
        let b = match b_part.strip_prefix('+') {
            Some(pos) => pos.parse::<i64>().ok()?,
            None => b_part.parse::<i64>().ok()?,
        };
        Some(RingElement::new(a, b))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else if self.b < 0 {
            write!(f, "{}-{}*t", self.a, -self.b)
        } else {
            write!(f, "{}+{}*t", self.a, self.b)
        }
    }
}

/// A canonical marker: an element of `𝔐₊`, stored as its index in
/// [`LatticeClass::canonical_units`]. Display names are `1`, `t`, `t2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Marker(pub u8);

impl Marker {
    pub const ONE: Marker = Marker(0);

    pub fn all(class: LatticeClass) -> Vec<Marker> {
        (0..class.marker_count() as u8).map(Marker).collect()
    }

    pub fn element(self, class: LatticeClass) -> RingElement {
        class.canonical_units()[self.0 as usize]
    }

    /// Marker for a canonical unit.
    pub fn from_canonical(
        class: LatticeClass,
        u: RingElement,
    ) -> Result<Marker, LatticeError> {
        class
            .canonical_units()
            .iter()
            .position(|&m| m == u)
            .map(|i| Marker(i as u8))
            .ok_or(if class.is_unit(u) {
                LatticeError::NotCanonical { elem: u }
            } else {
                LatticeError::NotAUnit { elem: u, norm: class.norm(u) }
            })
    }

    /// Canonicalize an arbitrary unit: returns the marker of `u` or of
    /// `−u`, with `negated` telling which. `None` when `u` is not a unit.
    pub fn canonicalize(class: LatticeClass, u: RingElement) -> Option<(Marker, bool)> {
        if let Ok(m) = Marker::from_canonical(class, u) {
            return Some((m, false));
        }
        Marker::from_canonical(class, -u).ok().map(|m| (m, true))
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            0 => "1",
            1 => "t",
            2 => "t2",
            _ => unreachable!("marker index out of range"),
        }
    }

    pub fn parse(text: &str) -> Option<Marker> {
        match text {
            "1" => Some(Marker(0)),
            "t" => Some(Marker(1)),
            "t2" => Some(Marker(2)),
            _ => None,
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The pair `(𝔐, 𝔐₊)` of an endomorphism ring.
pub fn marker_group(class: LatticeClass) -> (Vec<RingElement>, Vec<Marker>) {
    (class.units(), Marker::all(class))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_group_sizes() {
        assert_eq!(LatticeClass::Generic.units().len(), 2);
        assert_eq!(LatticeClass::Square.units().len(), 4);
        assert_eq!(LatticeClass::Hexagonal.units().len(), 6);
        let (m, m_plus) = marker_group(LatticeClass::Generic);
        assert_eq!(m, vec![RingElement::ONE, -RingElement::ONE]);
        assert_eq!(m_plus, vec![Marker(0)]);
        assert_eq!(
            marker_group(LatticeClass::Hexagonal).1,
            vec![Marker(0), Marker(1), Marker(2)]
        );
    }

    #[test]
    fn canonical_half_is_one_per_sign_pair() {
        for class in LatticeClass::ALL {
            let units = class.units();
            let plus = class.canonical_units();
            assert_eq!(units.len(), 2 * plus.len());
            for &u in &plus {
                assert!(units.contains(&u));
                assert!(units.contains(&(-u)));
                assert!(!plus.contains(&(-u)), "{class}: both ±{u} canonical");
            }
        }
    }

    #[test]
    fn square_tau_squared_is_minus_one() {
        let t = RingElement::TAU;
        assert_eq!(
            LatticeClass::Square.mul(t, t),
            RingElement::integer(-1)
        );
    }

    #[test]
    fn hexagonal_tau_squared_is_tau_minus_one() {
        let t = RingElement::TAU;
        assert_eq!(LatticeClass::Hexagonal.mul(t, t), RingElement::new(-1, 1));
    }

    #[test]
    fn hexagonal_norm_of_one_plus_tau_is_three() {
        // |1 + e^{iπ/3}|² = 1 + 1 + 2cos(π/3) = 3
        assert_eq!(LatticeClass::Hexagonal.norm(RingElement::new(1, 1)), 3);
    }

    #[test]
    fn norm_is_multiplicative() {
        for class in LatticeClass::ALL {
            for a1 in -5..=5i64 {
                for b1 in -5..=5i64 {
                    for a2 in -5..=5i64 {
                        for b2 in -5..=5i64 {
                            let x = RingElement::new(a1, if class == LatticeClass::Generic { 0 } else { b1 });
                            let y = RingElement::new(a2, if class == LatticeClass::Generic { 0 } else { b2 });
                            assert_eq!(
                                class.norm(class.mul(x, y)),
                                class.norm(x) * class.norm(y)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn units_are_exactly_norm_one() {
        for class in LatticeClass::ALL {
            let units = class.units();
            for a in -3..=3i64 {
                for b in -3..=3i64 {
                    let x = RingElement::new(a, b);
                    if !class.contains(x) {
                        continue;
                    }
                    assert_eq!(class.norm(x) == 1, units.contains(&x), "{class} {x}");
                }
            }
        }
    }

    #[test]
    fn conjugate_inverts_units() {
        for class in LatticeClass::ALL {
            for &u in &class.units() {
                assert_eq!(class.mul(u, class.conj(u)), RingElement::ONE);
            }
        }
    }

    #[test]
    fn multiplication_matrices() {
        assert_eq!(
            LatticeClass::Square.multiplication_matrix(RingElement::ONE),
            [[1, 0], [0, 1]]
        );
        // τ(x + yτ) = −y + xτ
        assert_eq!(
            LatticeClass::Square.multiplication_matrix(RingElement::TAU),
            [[0, -1], [1, 0]]
        );
        // τ(x + yτ) = −y + (x + y)τ
        assert_eq!(
            LatticeClass::Hexagonal.multiplication_matrix(RingElement::TAU),
            [[0, -1], [1, 1]]
        );
    }

    #[test]
    fn multiplication_matrix_is_a_ring_homomorphism() {
        for class in LatticeClass::ALL {
            for a1 in -4..=4i64 {
                for b1 in -4..=4i64 {
                    for a2 in -4..=4i64 {
                        for b2 in -4..=4i64 {
                            let x = RingElement::new(a1, if class == LatticeClass::Generic { 0 } else { b1 });
                            let y = RingElement::new(a2, if class == LatticeClass::Generic { 0 } else { b2 });
                            let mx = class.multiplication_integer_matrix(x);
                            let my = class.multiplication_integer_matrix(y);
                            let mxy =
                                class.multiplication_integer_matrix(class.mul(x, y));
                            assert_eq!(mx.mul(&my), mxy);
                            assert_eq!(
                                mx.determinant().unwrap(),
                                class.norm(x) as i128
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn marker_canonicalization() {
        let hex = LatticeClass::Hexagonal;
        // τ − 1 = τ² is already canonical
        assert_eq!(
            Marker::canonicalize(hex, RingElement::new(-1, 1)),
            Some((Marker(2), false))
        );
        // −τ canonicalizes to τ with negation
        assert_eq!(
            Marker::canonicalize(hex, RingElement::new(0, -1)),
            Some((Marker(1), true))
        );
        // 1 − τ = −τ² canonicalizes to τ²
        assert_eq!(
            Marker::canonicalize(hex, RingElement::new(1, -1)),
            Some((Marker(2), true))
        );
        // non-units are rejected
        assert_eq!(Marker::canonicalize(hex, RingElement::integer(2)), None);
        assert_eq!(
            Marker::from_canonical(hex, RingElement::integer(2)),
            Err(LatticeError::NotAUnit {
                elem: RingElement::integer(2),
                norm: 4
            })
        );
    }

    #[test]
    fn marker_names_round_trip() {
        for class in LatticeClass::ALL {
            for m in Marker::all(class) {
                assert_eq!(Marker::parse(m.name()), Some(m));
            }
        }
    }

    #[test]
    fn ring_element_text_round_trip() {
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                let x = RingElement::new(a, b);
                assert_eq!(RingElement::parse(&x.to_string()), Some(x), "{x}");
            }
        }
        assert_eq!(RingElement::parse("2"), Some(RingElement::integer(2)));
        assert_eq!(RingElement::parse("-1+1*t"), Some(RingElement::new(-1, 1)));
        assert_eq!(RingElement::parse("0-2*t"), Some(RingElement::new(0, -2)));
        assert_eq!(RingElement::parse("t"), None);
        assert_eq!(RingElement::parse("1+t"), None);
    }
}
