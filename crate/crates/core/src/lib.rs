//! Exact arithmetic for the doubly centrally extended (1+1) Aristotle group.
//!
//! * [`lie`]: the algebra `[P, E] = F, [P, F] = Λ, [F, E] = Y`, its structure
//!   tensor, adjoint matrices and the terminating BCH product.
//! * [`group`]: second-kind coordinates `(x, t, ζ, a, b)` and the derived
//!   multiplication law.
//! * [`orbits`]: the dual `(p, e, f, k, y)`, coadjoint action, invariants and
//!   orbit classes.
//! * [`dynamics`]: evolution in time and in space, closed forms, right-hand
//!   sides, Hamiltonians and a Runge–Kutta cross-check.
//!
//! Everything is generic over [`Scalar`]; use [`Rational`] wherever equality
//! must be decided exactly.

pub mod dynamics;
pub mod group;
pub mod lie;
pub mod orbits;
pub mod scalar;
pub mod trajectory;

pub use dynamics::{
    ChartState, DynamicsError, IntegratorConfig, OrbitParams, Picture, SpaceState, TimeState,
};
pub use group::{compose, compose_printed, inverse, GroupElement};
pub use lie::{bch, AdjointMatrix, AlgebraElement, BasisIndex, StructureTensor};
pub use orbits::{classify, coadjoint, coadjoint_printed, invariants, DualElement, InvariantSet, OrbitClass};
pub use scalar::{Rational, Scalar};
pub use trajectory::{Chart, Source, Trajectory, TrajectorySample};
