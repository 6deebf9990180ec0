//! Sampled flows with a tracked conserved quantity.

use serde::{Deserialize, Serialize};

use crate::dynamics::OrbitParams;
use crate::scalar::Scalar;

/// Coordinate chart a trajectory is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `(q, p)` against time; tracks `U`.
    Time,
    /// `(τ, e)` against space; tracks `π`.
    Space,
    /// `(p, e, f)` under the time flow; tracks `Ψ`.
    DualTime,
    /// `(p, e, f)` under the space flow; tracks `Ψ`.
    DualSpace,
}

impl Chart {
    pub fn parameter_name(self) -> &'static str {
        match self {
            Chart::Time | Chart::DualTime => "t",
            Chart::Space | Chart::DualSpace => "x",
        }
    }

    pub fn coordinate_names(self) -> &'static [&'static str] {
        match self {
            Chart::Time => &["q", "p"],
            Chart::Space => &["tau", "e"],
            Chart::DualTime | Chart::DualSpace => &["p", "e", "f"],
        }
    }

    pub fn invariant_name(self) -> &'static str {
        match self {
            Chart::Time => "U",
            Chart::Space => "pi",
            Chart::DualTime | Chart::DualSpace => "psi",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source<S> {
    ClosedForm,
    RungeKutta4 { step: S },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample<S> {
    pub param: S,
    pub coords: Vec<S>,
    pub invariant: S,
    /// `|invariant − invariant at sample 0|`.
    pub drift: S,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory<S> {
    pub chart: Chart,
    pub params: OrbitParams<S>,
    pub source: Source<S>,
    pub samples: Vec<TrajectorySample<S>>,
}

impl<S: Scalar> Trajectory<S> {
    pub fn new(chart: Chart, params: OrbitParams<S>, source: Source<S>) -> Self {
        Self {
            chart,
            params,
            source,
            samples: Vec::new(),
        }
    }

    /// Appends a sample. Panics if `param` does not strictly increase.
    pub fn push(&mut self, param: S, coords: Vec<S>, invariant: S) {
        if let Some(last) = self.samples.last() {
            assert!(param > last.param, "trajectory parameters must strictly increase");
        }
        let drift = match self.samples.first() {
            Some(first) => (invariant.clone() - first.invariant.clone()).abs(),
            None => S::zero(),
        };
        self.samples.push(TrajectorySample {
            param,
            coords,
            invariant,
            drift,
        });
    }

    pub fn max_drift(&self) -> S {
        self.samples
            .iter()
            .map(|s| s.drift.clone())
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }
}
