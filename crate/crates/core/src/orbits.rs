//! Dual space, coadjoint action, orbit invariants and classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{adjoint_inverse_apply, GroupElement};
use crate::lie::{ad, AlgebraElement, BasisIndex, DIM};
use crate::scalar::Scalar;

/// Relative zero tolerance used by float-backend classification.
pub const DEFAULT_CLASS_TOL: f64 = 1e-12;

/// A point `(p, e, f, k, y)` of the dual of the algebra, paired with
/// `(P, E, F, Λ, Y)` in that order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualElement<S> {
    /// Linear momentum.
    pub p: S,
    /// Energy.
    pub e: S,
    /// Force.
    pub f: S,
    /// Hooke constant.
    pub k: S,
    /// Yank.
    pub y: S,
}

impl<S: Scalar> DualElement<S> {
    pub fn new(p: S, e: S, f: S, k: S, y: S) -> Self {
        Self { p, e, f, k, y }
    }

    pub fn from_array([p, e, f, k, y]: [S; DIM]) -> Self {
        Self::new(p, e, f, k, y)
    }

    pub fn to_array(&self) -> [S; DIM] {
        [
            self.p.clone(),
            self.e.clone(),
            self.f.clone(),
            self.k.clone(),
            self.y.clone(),
        ]
    }

    pub fn zero() -> Self {
        Self::from_array(std::array::from_fn(|_| S::zero()))
    }

    /// Largest absolute component as `f64`; reference scale for float zero
    /// tests.
    pub fn scale(&self) -> f64 {
        self.to_array()
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// `⟨μ, A⟩ = p·A_P + e·A_E + f·A_F + k·A_Λ + y·A_Y`.
pub fn pair<S: Scalar>(mu: &DualElement<S>, a: &AlgebraElement<S>) -> S {
    mu.to_array()
        .into_iter()
        .zip(a.coeffs.iter())
        .fold(S::zero(), |acc, (m, c)| acc + m * c.clone())
}

/// `Ad*_g μ = μ ∘ Ad_{g⁻¹}`.
pub fn coadjoint<S: Scalar>(g: &GroupElement<S>, mu: &DualElement<S>) -> DualElement<S> {
    DualElement::from_array(std::array::from_fn(|j| {
        pair(mu, &adjoint_inverse_apply(g, &AlgebraElement::basis(BasisIndex::ALL[j])))
    }))
}

/// The coadjoint action written out in the `(x, t, ζ)` coordinates of the
/// first extension:
///
/// ```text
/// p' = p + ft + k(ζ − xt) + yt²/2
/// e' = e − fx + kx²/2 − yζ
/// f' = f − kx + yt
/// ```
pub fn coadjoint_printed<S: Scalar>(x: &S, t: &S, zeta: &S, mu: &DualElement<S>) -> DualElement<S> {
    let half = S::half();
    let DualElement { p, e, f, k, y } = mu.clone();
    DualElement::new(
        p + f.clone() * t.clone()
            + k.clone() * (zeta.clone() - x.clone() * t.clone())
            + half.clone() * y.clone() * t.clone() * t.clone(),
        e - f.clone() * x.clone() + half * k.clone() * x.clone() * x.clone() - y.clone() * zeta.clone(),
        f - k.clone() * x.clone() + y.clone() * t.clone(),
        k,
        y,
    )
}

/// How the explicit coordinate action relates to the derived `Ad*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConventionMap {
    /// `coadjoint(g, μ) = coadjoint_printed(x, t, ζ, μ)`.
    Identity,
    /// `coadjoint(g, μ) = coadjoint_printed(g⁻¹, μ)` in first-extension
    /// coordinates.
    Inverse,
    /// `coadjoint(g, μ) = coadjoint_printed(σ_x x, σ_t t, σ_ζ ζ, μ)`.
    Sign([i8; 3]),
}

impl ConventionMap {
    /// Coordinates to feed to [`coadjoint_printed`] for the group element `g`.
    pub fn printed_arguments<S: Scalar>(&self, g: &GroupElement<S>) -> [S; 3] {
        match self {
            ConventionMap::Identity => [g.x.clone(), g.t.clone(), g.zeta.clone()],
            ConventionMap::Inverse => crate::group::inverse_first_extension(&[
                g.x.clone(),
                g.t.clone(),
                g.zeta.clone(),
            ]),
            ConventionMap::Sign(s) => {
                let sign = |c: &S, s: i8| if s < 0 { -c.clone() } else { c.clone() };
                [sign(&g.x, s[0]), sign(&g.t, s[1]), sign(&g.zeta, s[2])]
            }
        }
    }

    pub fn candidates() -> Vec<ConventionMap> {
        let mut out = vec![ConventionMap::Identity, ConventionMap::Inverse];
        for bits in 1..8u8 {
            let s = |i: u8| if bits & (1 << i) != 0 { -1 } else { 1 };
            out.push(ConventionMap::Sign([s(0), s(1), s(2)]));
        }
        out
    }

    /// Whether this map reconciles the two actions on every sample.
    pub fn holds_on<S: Scalar>(&self, samples: &[(GroupElement<S>, DualElement<S>)]) -> bool {
        samples.iter().all(|(g, mu)| {
            let [x, t, z] = self.printed_arguments(g);
            coadjoint(g, mu) == coadjoint_printed(&x, &t, &z, mu)
        })
    }
}

impl fmt::Display for ConventionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConventionMap::Identity => f.write_str("identity"),
            ConventionMap::Inverse => f.write_str("inverse"),
            ConventionMap::Sign(s) => write!(f, "sign({:+},{:+},{:+})", s[0], s[1], s[2]),
        }
    }
}

/// Relation between [`coadjoint`] and [`coadjoint_printed`], fixed by
/// exhaustive comparison over the candidates of [`ConventionMap::candidates`].
pub const PRINTED_ACTION_CONVENTION: ConventionMap = ConventionMap::Identity;

/// First candidate that reconciles the two actions on all samples.
pub fn determine_convention<S: Scalar>(
    samples: &[(GroupElement<S>, DualElement<S>)],
) -> Option<ConventionMap> {
    ConventionMap::candidates()
        .into_iter()
        .find(|c| c.holds_on(samples))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrbitClass {
    /// `k ≠ 0, y ≠ 0`.
    Generic,
    /// `k ≠ 0, y = 0`.
    HookeOnly,
    /// `k = 0, y ≠ 0`.
    YankOnly,
    /// `k = y = 0, f ≠ 0`.
    ForceOnly,
    /// `k = y = f = 0`; every point is fixed by the action.
    FixedPoint,
}

impl OrbitClass {
    pub const ALL: [OrbitClass; 5] = [
        OrbitClass::Generic,
        OrbitClass::HookeOnly,
        OrbitClass::YankOnly,
        OrbitClass::ForceOnly,
        OrbitClass::FixedPoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrbitClass::Generic => "GENERIC",
            OrbitClass::HookeOnly => "HOOKE_ONLY",
            OrbitClass::YankOnly => "YANK_ONLY",
            OrbitClass::ForceOnly => "FORCE_ONLY",
            OrbitClass::FixedPoint => "FIXED_POINT",
        }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Orbit invariants. Entries whose defining division does not exist are
/// `None`, never zero-filled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantSet<S> {
    pub k: S,
    pub y: S,
    /// `y / k`.
    pub v: Option<S>,
    /// `f / k`.
    pub q: Option<S>,
    /// `k / y`.
    pub s: Option<S>,
    /// `f / y`.
    pub tau: Option<S>,
    /// `e − kq²/2 + pv`.
    pub u: Option<S>,
    /// `p − yτ²/2 + es`.
    pub pi: Option<S>,
    /// `2ke − f² + 2py`.
    pub psi: S,
    /// Echoed only for the force-only class, where it is the orbit label.
    pub f: Option<S>,
}

fn nonzero<S: Scalar>(c: &S, scale: f64, tol: f64) -> bool {
    !c.is_negligible(scale, tol)
}

/// `2ke − f² + 2py`.
pub fn psi<S: Scalar>(mu: &DualElement<S>) -> S {
    let two = S::from_i64(2);
    two.clone() * mu.k.clone() * mu.e.clone() - mu.f.clone() * mu.f.clone()
        + two * mu.p.clone() * mu.y.clone()
}

/// `e − kq²/2 + pv` with `q = f/k`, `v = y/k`. Requires `k ≠ 0`.
pub fn internal_energy<S: Scalar>(mu: &DualElement<S>) -> S {
    let q = mu.f.clone() / mu.k.clone();
    let v = mu.y.clone() / mu.k.clone();
    mu.e.clone() - S::half() * mu.k.clone() * q.clone() * q + mu.p.clone() * v
}

/// `p − yτ²/2 + es` with `τ = f/y`, `s = k/y`. Requires `y ≠ 0`.
pub fn internal_momentum<S: Scalar>(mu: &DualElement<S>) -> S {
    let tau = mu.f.clone() / mu.y.clone();
    let s = mu.k.clone() / mu.y.clone();
    mu.p.clone() - S::half() * mu.y.clone() * tau.clone() * tau + mu.e.clone() * s
}

pub fn invariants<S: Scalar>(mu: &DualElement<S>) -> InvariantSet<S> {
    invariants_with_tol(mu, DEFAULT_CLASS_TOL)
}

pub fn invariants_with_tol<S: Scalar>(mu: &DualElement<S>, tol: f64) -> InvariantSet<S> {
    let scale = mu.scale();
    let has_k = nonzero(&mu.k, scale, tol);
    let has_y = nonzero(&mu.y, scale, tol);
    let class = classify_with_tol(mu, tol);
    InvariantSet {
        k: mu.k.clone(),
        y: mu.y.clone(),
        v: has_k.then(|| mu.y.clone() / mu.k.clone()),
        q: has_k.then(|| mu.f.clone() / mu.k.clone()),
        s: has_y.then(|| mu.k.clone() / mu.y.clone()),
        tau: has_y.then(|| mu.f.clone() / mu.y.clone()),
        u: has_k.then(|| internal_energy(mu)),
        pi: has_y.then(|| internal_momentum(mu)),
        psi: psi(mu),
        f: (class == OrbitClass::ForceOnly).then(|| mu.f.clone()),
    }
}

pub fn classify<S: Scalar>(mu: &DualElement<S>) -> OrbitClass {
    classify_with_tol(mu, DEFAULT_CLASS_TOL)
}

/// Case split on `(k, y, f)`. Float zero tests are relative to the largest
/// component of `μ`; rationals are tested exactly.
pub fn classify_with_tol<S: Scalar>(mu: &DualElement<S>, tol: f64) -> OrbitClass {
    let scale = mu.scale();
    match (
        nonzero(&mu.k, scale, tol),
        nonzero(&mu.y, scale, tol),
        nonzero(&mu.f, scale, tol),
    ) {
        (true, true, _) => OrbitClass::Generic,
        (true, false, _) => OrbitClass::HookeOnly,
        (false, true, _) => OrbitClass::YankOnly,
        (false, false, true) => OrbitClass::ForceOnly,
        (false, false, false) => OrbitClass::FixedPoint,
    }
}

/// Rows are the infinitesimal coadjoint generators `−μ∘ad_X` at `μ` for
/// `X ∈ {P, E, F}`; i.e. `d/ds Ad*_{exp(sX)} μ` at `s = 0`.
pub fn infinitesimal_generators<S: Scalar>(mu: &DualElement<S>) -> Vec<Vec<S>> {
    let row = mu.to_array();
    [BasisIndex::P, BasisIndex::E, BasisIndex::F]
        .into_iter()
        .map(|b| {
            ad(&AlgebraElement::<S>::basis(b))
                .apply_transpose(&row)
                .into_iter()
                .map(|c| -c)
                .collect()
        })
        .collect()
}

pub fn orbit_dimension<S: Scalar>(mu: &DualElement<S>) -> usize {
    orbit_dimension_with_tol(mu, DEFAULT_CLASS_TOL)
}

pub fn orbit_dimension_with_tol<S: Scalar>(mu: &DualElement<S>, tol: f64) -> usize {
    S::rank(&infinitesimal_generators(mu), tol)
}
