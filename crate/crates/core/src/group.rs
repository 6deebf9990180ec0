//! The simply connected group of the Aristotle algebra in second-kind
//! coordinates
//!
//! ```text
//! g = exp(aΛ + bY) · exp(tE + ζF) · exp(xP)
//! ```
//!
//! The canonical multiplication law is obtained by shuffling factors with the
//! BCH formula; the literal printed law is kept as [`compose_printed`] for
//! comparison only.

use serde::{Deserialize, Serialize};

use crate::lie::{bch, AdjointMatrix, AlgebraElement, BasisIndex};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupElement<S> {
    /// Space translation, the `P` factor.
    pub x: S,
    /// Time translation, the `E` coordinate.
    pub t: S,
    /// First extension coordinate, along `F`.
    pub zeta: S,
    /// Central `Λ` coordinate.
    pub a: S,
    /// Central `Y` coordinate.
    pub b: S,
}

impl<S: Scalar> GroupElement<S> {
    pub fn new(x: S, t: S, zeta: S, a: S, b: S) -> Self {
        Self { x, t, zeta, a, b }
    }

    pub fn identity() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn from_array([x, t, zeta, a, b]: [S; 5]) -> Self {
        Self::new(x, t, zeta, a, b)
    }

    pub fn to_array(&self) -> [S; 5] {
        [
            self.x.clone(),
            self.t.clone(),
            self.zeta.clone(),
            self.a.clone(),
            self.b.clone(),
        ]
    }

    /// Element of the quotient by the center: `(x, t, ζ, 0, 0)`.
    pub fn quotient(&self) -> Self {
        Self::new(self.x.clone(), self.t.clone(), self.zeta.clone(), S::zero(), S::zero())
    }

    fn central_factor(&self) -> AlgebraElement<S> {
        AlgebraElement::new([S::zero(), S::zero(), S::zero(), self.a.clone(), self.b.clone()])
    }

    fn time_factor(&self) -> AlgebraElement<S> {
        AlgebraElement::new([S::zero(), self.t.clone(), self.zeta.clone(), S::zero(), S::zero()])
    }

    fn space_factor(&self) -> AlgebraElement<S> {
        AlgebraElement::basis_scaled(BasisIndex::P, self.x.clone())
    }
}

/// `exp(ad X)` applied to `v`; exact since `ad X` is nilpotent of order 3.
fn exp_ad_apply<S: Scalar>(x: &AlgebraElement<S>, v: &AlgebraElement<S>) -> AlgebraElement<S> {
    let once = x.bracket(v);
    let twice = x.bracket(&once);
    &(v + &once) + &twice.scale(&S::half())
}

/// Group product in second-kind coordinates.
///
/// `exp(C)exp(T)exp(X) · exp(C')exp(T')exp(X')` is reordered by moving
/// `exp(X)` right past `exp(T')` (conjugation gives `exp(Ad_{exp X} T')`),
/// merging the two `E,F` factors with [`bch`] and collecting everything
/// central in front.
pub fn compose<S: Scalar>(g: &GroupElement<S>, h: &GroupElement<S>) -> GroupElement<S> {
    let conjugated = exp_ad_apply(&g.space_factor(), &h.time_factor());
    // conjugated = t'E + (ζ' + xt')F + (central part)
    let merged = bch(&g.time_factor(), &conjugated);
    let central = &(&g.central_factor() + &h.central_factor()) + &merged;
    GroupElement::new(
        g.x.clone() + h.x.clone(),
        merged.coeffs[BasisIndex::E.index()].clone(),
        merged.coeffs[BasisIndex::F.index()].clone(),
        central.coeffs[BasisIndex::Lambda.index()].clone(),
        central.coeffs[BasisIndex::Y.index()].clone(),
    )
}

/// Literal transcription of the multiplication law as printed:
///
/// ```text
/// (x + x', t + t', ζ + ζ' + xt', a + a' + xζ' + ½x²t', b + b' + ζ't' + ½xt'²)
/// ```
///
/// This law is not associative. Use [`compose`] for anything but comparison.
pub fn compose_printed<S: Scalar>(g: &GroupElement<S>, h: &GroupElement<S>) -> GroupElement<S> {
    let half = S::half();
    let (x, t, z, a, b) = (&g.x, &g.t, &g.zeta, &g.a, &g.b);
    let (x2, t2, z2, a2, b2) = (&h.x, &h.t, &h.zeta, &h.a, &h.b);
    GroupElement::new(
        x.clone() + x2.clone(),
        t.clone() + t2.clone(),
        z.clone() + z2.clone() + x.clone() * t2.clone(),
        a.clone()
            + a2.clone()
            + x.clone() * z2.clone()
            + half.clone() * x.clone() * x.clone() * t2.clone(),
        b.clone()
            + b2.clone()
            + z2.clone() * t2.clone()
            + half * x.clone() * t2.clone() * t2.clone(),
    )
}

/// First-kind coordinates: the `A` with `exp(A) = g`.
pub fn to_single_exponential<S: Scalar>(g: &GroupElement<S>) -> AlgebraElement<S> {
    bch(&g.central_factor(), &bch(&g.time_factor(), &g.space_factor()))
}

/// Inverse of [`to_single_exponential`]. Factors are peeled right to left:
/// first `exp(xP)`, then `exp(tE + ζF)`; the remainder is central.
pub fn from_single_exponential<S: Scalar>(a: &AlgebraElement<S>) -> GroupElement<S> {
    let x = a.coeff(BasisIndex::P).clone();
    let without_space = bch(a, &AlgebraElement::basis_scaled(BasisIndex::P, -x.clone()));
    debug_assert!(without_space.coeff(BasisIndex::P).is_zero());
    let t = without_space.coeff(BasisIndex::E).clone();
    let zeta = without_space.coeff(BasisIndex::F).clone();
    let time = AlgebraElement::new([S::zero(), t.clone(), zeta.clone(), S::zero(), S::zero()]);
    let central = bch(&without_space, &-time);
    GroupElement::new(
        x,
        t,
        zeta,
        central.coeff(BasisIndex::Lambda).clone(),
        central.coeff(BasisIndex::Y).clone(),
    )
}

pub fn inverse<S: Scalar>(g: &GroupElement<S>) -> GroupElement<S> {
    from_single_exponential(&-to_single_exponential(g))
}

/// `Ad_g v`. The central factor acts trivially, so only `exp(ad xP)` and
/// then `exp(ad(tE + ζF))` are applied.
pub fn adjoint_apply<S: Scalar>(g: &GroupElement<S>, v: &AlgebraElement<S>) -> AlgebraElement<S> {
    exp_ad_apply(&g.time_factor(), &exp_ad_apply(&g.space_factor(), v))
}

/// `Ad_{g⁻¹} v`, without forming `g⁻¹`.
pub fn adjoint_inverse_apply<S: Scalar>(g: &GroupElement<S>, v: &AlgebraElement<S>) -> AlgebraElement<S> {
    exp_ad_apply(&-g.space_factor(), &exp_ad_apply(&-g.time_factor(), v))
}

/// Matrix of `Ad_g`, column `j` being `Ad_g` of the `j`-th basis vector.
pub fn adjoint_of_group<S: Scalar>(g: &GroupElement<S>) -> AdjointMatrix<S> {
    AdjointMatrix::from_columns(std::array::from_fn(|j| {
        adjoint_apply(g, &AlgebraElement::basis(BasisIndex::ALL[j]))
    }))
}

/// `(x, t, ζ)(x', t', ζ') = (x + x', t + t', ζ + ζ' + xt')`, the law of the
/// first (one-dimensional) central extension.
pub fn compose_first_extension<S: Scalar>(g: &[S; 3], h: &[S; 3]) -> [S; 3] {
    [
        g[0].clone() + h[0].clone(),
        g[1].clone() + h[1].clone(),
        g[2].clone() + h[2].clone() + g[0].clone() * h[1].clone(),
    ]
}

/// Inverse in the first extension: `(-x, -t, -ζ + xt)`.
pub fn inverse_first_extension<S: Scalar>(g: &[S; 3]) -> [S; 3] {
    [
        -g[0].clone(),
        -g[1].clone(),
        -g[2].clone() + g[0].clone() * g[1].clone(),
    ]
}
