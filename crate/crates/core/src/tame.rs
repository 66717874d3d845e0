//! Combinatorial shadows of tame configuration-space maps.
//!
//! A synthetic tame map `f(q) = σ(±u·q + c)` induces a vertex map on
//! the difference complex: translations cancel inside differences, so
//! `e_{m;i,j} ∘ f` is again a difference with marker `±m·u` (then
//! canonicalized) and indices pulled back through `σ`. The descriptor
//! recovery runs the other way: given the image of the probe simplex
//! `Δ₁ = {e_{1;1,2}, …, e_{1;1,n}}`, it verifies the image is an
//! `(n−2)`-simplex, normalizes it, and reads off the permutation,
//! marker, and Δ/∇ form.

use std::fmt;

use crate::complex::{
    normalize_simplex, proper_remainder_oracle, ComplexError, Difference, NormalFormKind,
    Simplex,
};
use crate::lattice::{LatticeClass, Marker, RingElement};
use crate::perm::Permutation;

/// Sign of the linear part of a synthetic tame map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    fn apply(self, x: RingElement) -> RingElement {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// `λ ∘ f` for `f(q) = σ(±u·q + c)`: the translation drops out and
/// `e_{m;i,j} ↦ canonicalize(±m·u; σ⁻¹(i), σ⁻¹(j))`.
pub fn induced_vertex_map(
    class: LatticeClass,
    sigma: &Permutation,
    unit: RingElement,
    sign: Sign,
    lambda: &Difference,
) -> Result<Difference, ComplexError> {
    if !class.is_unit(unit) {
        return Err(ComplexError::NotAUnit(unit));
    }
    for index in [lambda.i, lambda.j] {
        if index >= sigma.degree() {
            return Err(ComplexError::DegreeMismatch { degree: sigma.degree(), index });
        }
    }
    let product = sign.apply(class.mul(lambda.marker.element(class), unit));
    let (marker, negated) =
        Marker::canonicalize(class, product).expect("product of units is a unit");
    let inv = sigma.inverse();
    let (i, j) = if negated {
        (inv.apply(lambda.j), inv.apply(lambda.i))
    } else {
        (inv.apply(lambda.i), inv.apply(lambda.j))
    };
    Ok(Difference { marker, i, j })
}

/// The probe simplex `Δ₁ = {e_{1;1,2}, …, e_{1;1,n}}`, in order of the
/// second index. Its marker is fixed to `1`.
pub fn probe_simplex(n: usize) -> Result<Vec<Difference>, ComplexError> {
    if n < 2 {
        return Err(ComplexError::TooFewPoints(n));
    }
    Ok((1..n).map(|j| Difference { marker: Marker::ONE, i: 0, j }).collect())
}

/// The data recovered from a simplicial self-map: a permutation, a
/// canonical marker, and whether the image of `Δ₁` normalized to the
/// Δ or the ∇ form. ∇ corresponds to a sign-reversed linear part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameDescriptor {
    pub sigma: Permutation,
    pub marker: Marker,
    pub form: NormalFormKind,
}

/// Recover a descriptor from the images of the probe vertices
/// `e_{1;1,2}, …, e_{1;1,n}` (in that order). Fails when the image is
/// not an `(n−2)`-simplex of the oracle graph — such an image cannot
/// come from a strictly equivariant map, which must preserve simplex
/// dimension.
pub fn tame_descriptor(
    n: usize,
    class: LatticeClass,
    image: &[Difference],
) -> Result<TameDescriptor, ComplexError> {
    if n < 2 || image.len() != n - 1 {
        return Err(ComplexError::TooFewPoints(n));
    }
    for a in 0..image.len() {
        for b in a + 1..image.len() {
            if image[a] == image[b] {
                return Err(ComplexError::DuplicateVertices);
            }
            if proper_remainder_oracle(class, &image[a], &image[b])?.is_none() {
                return Err(ComplexError::NotASimplex(image[a], image[b]));
            }
        }
    }
    let simplex = Simplex::new(image.to_vec())?;
    let (sigma, form) = normalize_simplex(n, &simplex)?;
    Ok(TameDescriptor { sigma, marker: form.marker, form: form.kind })
}
