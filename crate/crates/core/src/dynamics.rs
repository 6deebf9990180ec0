//! Evolution in time and in space on a coadjoint orbit.
//!
//! Both pictures are one-parameter coadjoint flows: time evolution is the
//! action of `exp(−tE)`, space evolution that of `exp(−xP)`. The `(q, p)` chart
//! uses `f = kq` and needs `k ≠ 0`; the `(τ, e)` chart uses `f = yτ` and needs
//! `y ≠ 0`. The flows on the dual space are total.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orbits::{coadjoint_printed, psi, DualElement};
use crate::scalar::Scalar;
use crate::trajectory::{Chart, Source, Trajectory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("the {chart} chart needs {needs} != 0; use the dual-space flow instead")]
    ChartUndefined {
        chart: &'static str,
        needs: &'static str,
    },
    #[error("integration step must be positive")]
    NonPositiveStep,
    #[error("parameter range must satisfy start <= end")]
    EmptyRange,
    #[error("at least one sample is required")]
    NoSamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Time,
    Space,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitParams<S> {
    /// Hooke constant.
    pub k: S,
    /// Yank.
    pub y: S,
}

impl<S: Scalar> OrbitParams<S> {
    pub fn new(k: S, y: S) -> Self {
        Self { k, y }
    }

    pub fn of(mu: &DualElement<S>) -> Self {
        Self::new(mu.k.clone(), mu.y.clone())
    }

    /// Invariant velocity `y / k`.
    pub fn velocity(&self) -> Option<S> {
        (!self.k.is_zero()).then(|| self.y.clone() / self.k.clone())
    }

    /// Invariant slowness `k / y`.
    pub fn slowness(&self) -> Option<S> {
        (!self.y.is_zero()).then(|| self.k.clone() / self.y.clone())
    }

    fn require_velocity(&self) -> Result<S, DynamicsError> {
        self.velocity().ok_or(DynamicsError::ChartUndefined {
            chart: "time (q, p)",
            needs: "k",
        })
    }

    fn require_slowness(&self) -> Result<S, DynamicsError> {
        self.slowness().ok_or(DynamicsError::ChartUndefined {
            chart: "space (tau, e)",
            needs: "y",
        })
    }
}

/// State in the `(q, p)` chart. `e` is inert here and only enters the
/// conserved internal energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeState<S> {
    pub q: S,
    pub p: S,
    pub t: S,
    pub e: S,
}

impl<S: Scalar> TimeState<S> {
    /// Chart reading of a dual point; needs `k ≠ 0`.
    pub fn from_dual(mu: &DualElement<S>, t: S) -> Result<Self, DynamicsError> {
        OrbitParams::of(mu).require_velocity()?;
        Ok(Self {
            q: mu.f.clone() / mu.k.clone(),
            p: mu.p.clone(),
            t,
            e: mu.e.clone(),
        })
    }

    /// `pv − kq²/2 + e`, constant along the time flow.
    pub fn internal_energy(&self, params: &OrbitParams<S>) -> Result<S, DynamicsError> {
        let v = params.require_velocity()?;
        Ok(self.p.clone() * v - S::half() * params.k.clone() * self.q.clone() * self.q.clone()
            + self.e.clone())
    }

    /// `P(t) = −f₀t + yt²/2`, the part of `p(t)` generated by the flow.
    pub fn potential_momentum(f0: &S, params: &OrbitParams<S>, t: &S) -> S {
        -(f0.clone() * t.clone()) + S::half() * params.y.clone() * t.clone() * t.clone()
    }
}

/// State in the `(τ, e)` chart. `p` is inert here and only enters the
/// conserved internal momentum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceState<S> {
    pub tau: S,
    pub e: S,
    pub x: S,
    pub p: S,
}

impl<S: Scalar> SpaceState<S> {
    /// Chart reading of a dual point; needs `y ≠ 0`.
    pub fn from_dual(mu: &DualElement<S>, x: S) -> Result<Self, DynamicsError> {
        OrbitParams::of(mu).require_slowness()?;
        Ok(Self {
            tau: mu.f.clone() / mu.y.clone(),
            e: mu.e.clone(),
            x,
            p: mu.p.clone(),
        })
    }

    /// `p − yτ²/2 + es`, constant along the space flow.
    pub fn internal_momentum(&self, params: &OrbitParams<S>) -> Result<S, DynamicsError> {
        let s = params.require_slowness()?;
        Ok(self.p.clone() - S::half() * params.y.clone() * self.tau.clone() * self.tau.clone()
            + self.e.clone() * s)
    }

    /// `f₀x + kx²/2`, the part of `e(x)` generated by the flow.
    pub fn potential_energy(f0: &S, params: &OrbitParams<S>, x: &S) -> S {
        f0.clone() * x.clone() + S::half() * params.k.clone() * x.clone() * x.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ChartState<S> {
    Time(TimeState<S>),
    Space(SpaceState<S>),
}

impl<S: Scalar> ChartState<S> {
    pub fn picture(&self) -> Picture {
        match self {
            ChartState::Time(_) => Picture::Time,
            ChartState::Space(_) => Picture::Space,
        }
    }

    pub fn from_dual(picture: Picture, mu: &DualElement<S>, param: S) -> Result<Self, DynamicsError> {
        Ok(match picture {
            Picture::Time => ChartState::Time(TimeState::from_dual(mu, param)?),
            Picture::Space => ChartState::Space(SpaceState::from_dual(mu, param)?),
        })
    }

    fn coords(&self) -> Vec<S> {
        match self {
            ChartState::Time(s) => vec![s.q.clone(), s.p.clone()],
            ChartState::Space(s) => vec![s.tau.clone(), s.e.clone()],
        }
    }

    fn invariant(&self, params: &OrbitParams<S>) -> Result<S, DynamicsError> {
        match self {
            ChartState::Time(s) => s.internal_energy(params),
            ChartState::Space(s) => s.internal_momentum(params),
        }
    }
}

/// Time evolution on the dual: the coadjoint action of `exp(−tE)`.
///
/// `p(t) = p₀ − f₀t + yt²/2`, `f(t) = f₀ − yt`, `e`, `k`, `y` constant.
pub fn time_flow<S: Scalar>(mu0: &DualElement<S>, t: &S) -> DualElement<S> {
    coadjoint_printed(&S::zero(), &-t.clone(), &S::zero(), mu0)
}

/// Space evolution on the dual: the coadjoint action of `exp(−xP)`.
///
/// `e(x) = e₀ + f₀x + kx²/2`, `f(x) = f₀ + kx`, `p`, `k`, `y` constant.
pub fn space_flow<S: Scalar>(mu0: &DualElement<S>, x: &S) -> DualElement<S> {
    coadjoint_printed(&-x.clone(), &S::zero(), &S::zero(), mu0)
}

/// `q(t) = q₀ − vt`, `p(t) = p₀ − kq₀t + yt²/2`.
pub fn time_closed_form<S: Scalar>(
    q0: &S,
    p0: &S,
    params: &OrbitParams<S>,
    t: &S,
) -> Result<(S, S), DynamicsError> {
    let v = params.require_velocity()?;
    let f0 = params.k.clone() * q0.clone();
    Ok((
        q0.clone() - v * t.clone(),
        p0.clone() + TimeState::potential_momentum(&f0, params, t),
    ))
}

/// `τ(x) = τ₀ + sx`, `e(x) = e₀ + f₀x + kx²/2`.
pub fn space_closed_form<S: Scalar>(
    tau0: &S,
    e0: &S,
    f0: &S,
    params: &OrbitParams<S>,
    x: &S,
) -> Result<(S, S), DynamicsError> {
    let s = params.require_slowness()?;
    Ok((
        tau0.clone() + s * x.clone(),
        e0.clone() + SpaceState::potential_energy(f0, params, x),
    ))
}

/// `(dq/dt, dp/dt) = (−v, −kq)`, the derivative of the time flow.
pub fn time_rhs<S: Scalar>(state: &TimeState<S>, params: &OrbitParams<S>) -> Result<(S, S), DynamicsError> {
    let v = params.require_velocity()?;
    Ok((-v, -(params.k.clone() * state.q.clone())))
}

/// Damped form as printed: `dp/dt = −kq + c(t)·dq/dt` with `c(t) = kt` and
/// `dq/dt = −v`, i.e. `−kq − yt`. Kept for comparison only.
pub fn time_rhs_printed<S: Scalar>(
    state: &TimeState<S>,
    params: &OrbitParams<S>,
) -> Result<(S, S), DynamicsError> {
    let v = params.require_velocity()?;
    let (c, _) = scalar_coefficients(&state.t, params);
    let dq = -v;
    Ok((dq.clone(), -(params.k.clone() * state.q.clone()) + c * dq))
}

/// `(dτ/dx, de/dx) = (s, yτ)`, the derivative of the space flow.
pub fn space_rhs<S: Scalar>(state: &SpaceState<S>, params: &OrbitParams<S>) -> Result<(S, S), DynamicsError> {
    let s = params.require_slowness()?;
    Ok((s, params.y.clone() * state.tau.clone()))
}

/// Damped form as printed: `de/dx = yτ + W(x)·dτ/dx` with `W(x) = yx`.
/// Kept for comparison only.
pub fn space_rhs_printed<S: Scalar>(
    state: &SpaceState<S>,
    params: &OrbitParams<S>,
) -> Result<(S, S), DynamicsError> {
    let s = params.require_slowness()?;
    let (_, w) = scalar_coefficients(&state.x, params);
    Ok((s.clone(), params.y.clone() * state.tau.clone() + w * s))
}

/// `H = kq²/2 − (p + c(t)q)v`, evaluated as written.
pub fn hamiltonian_time<S: Scalar>(p: &S, q: &S, t: &S, params: &OrbitParams<S>) -> Result<S, DynamicsError> {
    let v = params.require_velocity()?;
    let (c, _) = scalar_coefficients(t, params);
    Ok(S::half() * params.k.clone() * q.clone() * q.clone() - (p.clone() + c * q.clone()) * v)
}

/// `Π = yτ²/2 − (e − W(x)τ)s`, evaluated as written.
pub fn hamiltonian_space<S: Scalar>(e: &S, tau: &S, x: &S, params: &OrbitParams<S>) -> Result<S, DynamicsError> {
    let s = params.require_slowness()?;
    let (_, w) = scalar_coefficients(x, params);
    Ok(S::half() * params.y.clone() * tau.clone() * tau.clone() - (e.clone() - w * tau.clone()) * s)
}

/// Action of `(x, t, ζ)` on the `(p, q)` chart:
/// `(p − kqt − kζ + yt²/2, q + x − vt)`.
pub fn realization_time<S: Scalar>(
    x: &S,
    t: &S,
    zeta: &S,
    (p, q): (&S, &S),
    params: &OrbitParams<S>,
) -> Result<(S, S), DynamicsError> {
    let v = params.require_velocity()?;
    let k = &params.k;
    Ok((
        p.clone() - k.clone() * q.clone() * t.clone() - k.clone() * zeta.clone()
            + S::half() * params.y.clone() * t.clone() * t.clone(),
        q.clone() + x.clone() - v * t.clone(),
    ))
}

/// Action of `(x, t, ζ)` on the `(e, τ)` chart:
/// `(e + yτx + y(ζ − xt) + kx²/2, τ − t + sx)`.
pub fn realization_space<S: Scalar>(
    x: &S,
    t: &S,
    zeta: &S,
    (e, tau): (&S, &S),
    params: &OrbitParams<S>,
) -> Result<(S, S), DynamicsError> {
    let s = params.require_slowness()?;
    let y = &params.y;
    Ok((
        e.clone()
            + y.clone() * tau.clone() * x.clone()
            + y.clone() * (zeta.clone() - x.clone() * t.clone())
            + S::half() * params.k.clone() * x.clone() * x.clone(),
        tau.clone() - t.clone() + s * x.clone(),
    ))
}

/// Damping coefficient `c = k·λ` and power `W = y·λ` at parameter `λ`.
pub fn scalar_coefficients<S: Scalar>(param: &S, params: &OrbitParams<S>) -> (S, S) {
    (params.k.clone() * param.clone(), params.y.clone() * param.clone())
}

/// Fixed-step classical Runge–Kutta configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig<S> {
    pub step: S,
    pub start: S,
    pub end: S,
}

impl<S: Scalar> IntegratorConfig<S> {
    pub fn new(step: S, start: S, end: S) -> Self {
        Self { step, start, end }
    }

    fn validate(&self) -> Result<(), DynamicsError> {
        if self.step <= S::zero() {
            return Err(DynamicsError::NonPositiveStep);
        }
        if self.end < self.start {
            return Err(DynamicsError::EmptyRange);
        }
        Ok(())
    }

    /// Grid `start, start + h, …, end`; the last interval may be shorter.
    /// A float node within `1e-9·h` of `end` is snapped onto it.
    pub fn grid(&self) -> Vec<S> {
        let mut nodes = vec![self.start.clone()];
        if self.end == self.start {
            return nodes;
        }
        let h_scale = self.step.to_f64().abs();
        let mut i = 1i64;
        loop {
            let next = self.start.clone() + self.step.clone() * S::from_i64(i);
            if next >= self.end || (self.end.clone() - next.clone()).is_negligible(h_scale, 1e-9) {
                nodes.push(self.end.clone());
                return nodes;
            }
            nodes.push(next);
            i += 1;
        }
    }
}

fn rk4_step<S: Scalar>(y: [S; 2], h: &S, f: impl Fn(&[S; 2]) -> [S; 2]) -> [S; 2] {
    let half_h = h.clone() * S::half();
    let add = |y: &[S; 2], k: &[S; 2], c: &S| -> [S; 2] {
        [
            y[0].clone() + k[0].clone() * c.clone(),
            y[1].clone() + k[1].clone() * c.clone(),
        ]
    };
    let k1 = f(&y);
    let k2 = f(&add(&y, &k1, &half_h));
    let k3 = f(&add(&y, &k2, &half_h));
    let k4 = f(&add(&y, &k3, h));
    let two = S::from_i64(2);
    let sixth = h.clone() / S::from_i64(6);
    std::array::from_fn(|i| {
        y[i].clone()
            + sixth.clone()
                * (k1[i].clone()
                    + two.clone() * k2[i].clone()
                    + two.clone() * k3[i].clone()
                    + k4[i].clone())
    })
}

/// Integrates the flow-derived right-hand side with classical fourth-order
/// Runge–Kutta. `state0` is taken to hold at `config.start`; every grid node
/// becomes a sample carrying the conserved quantity and its drift.
pub fn integrate<S: Scalar>(
    state0: &ChartState<S>,
    params: &OrbitParams<S>,
    config: &IntegratorConfig<S>,
) -> Result<Trajectory<S>, DynamicsError> {
    config.validate()?;
    let chart = match state0.picture() {
        Picture::Time => Chart::Time,
        Picture::Space => Chart::Space,
    };
    // fail early on an undefined chart, even for a zero-length range
    state0.invariant(params)?;
    let mut traj = Trajectory::new(chart, params.clone(), Source::RungeKutta4 { step: config.step.clone() });
    let grid = config.grid();
    let mut state = state0.clone();
    traj.push(grid[0].clone(), state.coords(), state.invariant(params)?);
    for pair in grid.windows(2) {
        let h = pair[1].clone() - pair[0].clone();
        state = match state {
            ChartState::Time(s) => {
                let [q, p] = rk4_step([s.q.clone(), s.p.clone()], &h, |y| {
                    let probe = TimeState { q: y[0].clone(), ..s.clone() };
                    let (dq, dp) = time_rhs(&probe, params).expect("chart checked");
                    [dq, dp]
                });
                ChartState::Time(TimeState { q, p, t: pair[1].clone(), e: s.e })
            }
            ChartState::Space(s) => {
                let [tau, e] = rk4_step([s.tau.clone(), s.e.clone()], &h, |y| {
                    let probe = SpaceState { tau: y[0].clone(), ..s.clone() };
                    let (dt, de) = space_rhs(&probe, params).expect("chart checked");
                    [dt, de]
                });
                ChartState::Space(SpaceState { tau, e, x: pair[1].clone(), p: s.p })
            }
        };
        traj.push(pair[1].clone(), state.coords(), state.invariant(params)?);
    }
    Ok(traj)
}

fn sample_params<S: Scalar>(start: &S, end: &S, n: usize) -> Result<Vec<S>, DynamicsError> {
    if n == 0 {
        return Err(DynamicsError::NoSamples);
    }
    if end < start {
        return Err(DynamicsError::EmptyRange);
    }
    if n == 1 || end == start {
        return Ok(vec![start.clone()]);
    }
    let span = end.clone() - start.clone();
    let denom = S::from_i64(n as i64 - 1);
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                end.clone()
            } else {
                start.clone() + span.clone() * S::from_i64(i as i64) / denom.clone()
            }
        })
        .collect())
}

/// Samples the exact chart solution at `n` evenly spaced parameters in
/// `[start, end]`; `state0` holds at `start`.
pub fn sample_closed_form<S: Scalar>(
    state0: &ChartState<S>,
    params: &OrbitParams<S>,
    start: &S,
    end: &S,
    n: usize,
) -> Result<Trajectory<S>, DynamicsError> {
    let chart = match state0.picture() {
        Picture::Time => Chart::Time,
        Picture::Space => Chart::Space,
    };
    let mut traj = Trajectory::new(chart, params.clone(), Source::ClosedForm);
    for param in sample_params(start, end, n)? {
        let elapsed = param.clone() - start.clone();
        let state = match state0 {
            ChartState::Time(s) => {
                let (q, p) = time_closed_form(&s.q, &s.p, params, &elapsed)?;
                ChartState::Time(TimeState { q, p, t: param.clone(), e: s.e.clone() })
            }
            ChartState::Space(s) => {
                let f0 = params.y.clone() * s.tau.clone();
                let (tau, e) = space_closed_form(&s.tau, &s.e, &f0, params, &elapsed)?;
                ChartState::Space(SpaceState { tau, e, x: param.clone(), p: s.p.clone() })
            }
        };
        traj.push(param, state.coords(), state.invariant(params)?);
    }
    Ok(traj)
}

/// Samples the dual-space flow of `picture` through `mu0`; coordinates are
/// `(p, e, f)` and the tracked invariant is `Ψ`. Defined for every orbit.
pub fn sample_dual_flow<S: Scalar>(
    picture: Picture,
    mu0: &DualElement<S>,
    start: &S,
    end: &S,
    n: usize,
) -> Result<Trajectory<S>, DynamicsError> {
    let chart = match picture {
        Picture::Time => Chart::DualTime,
        Picture::Space => Chart::DualSpace,
    };
    let mut traj = Trajectory::new(chart, OrbitParams::of(mu0), Source::ClosedForm);
    for param in sample_params(start, end, n)? {
        let elapsed = param.clone() - start.clone();
        let mu = match picture {
            Picture::Time => time_flow(mu0, &elapsed),
            Picture::Space => space_flow(mu0, &elapsed),
        };
        traj.push(param, vec![mu.p.clone(), mu.e.clone(), mu.f.clone()], psi(&mu));
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn qr(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn params(k: i64, y: i64) -> OrbitParams<Q> {
        OrbitParams::new(q(k), q(y))
    }

    fn tstate(qv: Q, t: Q) -> TimeState<Q> {
        TimeState { q: qv, p: q(0), t, e: q(0) }
    }

    fn sstate(tau: Q, x: Q) -> SpaceState<Q> {
        SpaceState { tau, e: q(0), x, p: q(0) }
    }

    #[test]
    fn time_flow_examples() {
        let mu = DualElement::new(q(0), q(0), q(1), q(1), q(1));
        assert_eq!(time_flow(&mu, &q(0)), mu);
        assert_eq!(
            time_flow(&mu, &q(1)),
            DualElement::new(qr(-1, 2), q(0), q(0), q(1), q(1))
        );
    }

    #[test]
    fn space_flow_examples() {
        let mu = DualElement::new(q(0), q(0), q(1), q(1), q(1));
        assert_eq!(space_flow(&mu, &q(0)), mu);
        assert_eq!(
            space_flow(&mu, &q(1)),
            DualElement::new(q(0), qr(3, 2), q(2), q(1), q(1))
        );
    }

    #[test]
    fn time_closed_form_examples() {
        assert_eq!(time_closed_form(&q(0), &q(0), &params(1, 1), &q(2)).unwrap(), (q(-2), q(2)));
        assert_eq!(time_closed_form(&qr(2, 3), &q(5), &params(3, 7), &q(0)).unwrap(), (qr(2, 3), q(5)));
        assert_eq!(time_closed_form(&q(1), &q(1), &params(1, 2), &q(1)).unwrap(), (q(-1), q(1)));
        assert!(matches!(
            time_closed_form(&q(1), &q(1), &params(0, 2), &q(1)),
            Err(DynamicsError::ChartUndefined { .. })
        ));
    }

    #[test]
    fn space_closed_form_examples() {
        assert_eq!(
            space_closed_form(&q(0), &q(0), &q(0), &params(1, 1), &q(2)).unwrap(),
            (q(2), q(2))
        );
        assert_eq!(
            space_closed_form(&q(4), &q(-1), &q(3), &params(1, 1), &q(0)).unwrap(),
            (q(4), q(-1))
        );
        assert_eq!(
            space_closed_form(&q(0), &q(0), &q(1), &params(2, 1), &q(1)).unwrap(),
            (q(2), q(2))
        );
        assert!(space_closed_form(&q(0), &q(0), &q(0), &params(1, 0), &q(1)).is_err());
    }

    #[test]
    fn time_rhs_examples() {
        assert_eq!(time_rhs(&tstate(q(0), q(0)), &params(1, 1)).unwrap().1, q(0));
        assert_eq!(time_rhs(&tstate(q(3), q(0)), &params(2, 5)).unwrap(), (qr(-5, 2), q(-6)));
        assert!(time_rhs(&tstate(q(3), q(0)), &params(0, 5)).is_err());
    }

    #[test]
    fn time_rhs_printed_examples() {
        let p = params(1, 1);
        assert_eq!(
            time_rhs_printed(&tstate(q(2), q(0)), &p).unwrap(),
            time_rhs(&tstate(q(2), q(0)), &p).unwrap()
        );
        assert_eq!(time_rhs_printed(&tstate(q(0), q(1)), &p).unwrap().1, q(-1));
        assert_eq!(time_rhs(&tstate(q(0), q(1)), &p).unwrap().1, q(0));
        assert_eq!(time_rhs_printed(&tstate(q(1), q(2)), &p).unwrap().1, q(-3));
    }

    #[test]
    fn space_rhs_examples() {
        assert_eq!(space_rhs(&sstate(q(0), q(0)), &params(1, 1)).unwrap().1, q(0));
        assert_eq!(space_rhs(&sstate(q(2), q(0)), &params(1, 3)).unwrap(), (qr(1, 3), q(6)));
        assert!(space_rhs(&sstate(q(2), q(0)), &params(1, 0)).is_err());
    }

    #[test]
    fn space_rhs_printed_examples() {
        let p = params(1, 1);
        assert_eq!(
            space_rhs_printed(&sstate(q(5), q(0)), &p).unwrap(),
            space_rhs(&sstate(q(5), q(0)), &p).unwrap()
        );
        assert_eq!(space_rhs_printed(&sstate(q(0), q(1)), &p).unwrap().1, q(1));
        assert_eq!(space_rhs(&sstate(q(0), q(1)), &p).unwrap().1, q(0));
        assert_eq!(space_rhs_printed(&sstate(q(1), q(2)), &p).unwrap().1, q(3));
    }

    #[test]
    fn hamiltonians() {
        let p = params(1, 1);
        assert_eq!(hamiltonian_time(&q(0), &q(0), &q(5), &p).unwrap(), q(0));
        assert_eq!(hamiltonian_time(&q(1), &q(1), &q(0), &p).unwrap(), qr(-1, 2));
        assert_eq!(hamiltonian_time(&q(0), &q(1), &q(1), &p).unwrap(), qr(-1, 2));
        assert_eq!(hamiltonian_space(&q(0), &q(0), &q(5), &p).unwrap(), q(0));
        assert_eq!(hamiltonian_space(&q(1), &q(1), &q(0), &p).unwrap(), qr(-1, 2));
        assert_eq!(hamiltonian_space(&q(0), &q(1), &q(1), &p).unwrap(), qr(3, 2));
    }

    #[test]
    fn realizations() {
        let p = params(1, 1);
        let (z, o) = (q(0), q(1));
        let (pp, qq) = (qr(3, 2), qr(-2, 3));
        assert_eq!(realization_time(&z, &z, &z, (&pp, &qq), &p).unwrap(), (pp.clone(), qq.clone()));
        assert_eq!(
            realization_time(&o, &z, &z, (&pp, &qq), &p).unwrap(),
            (pp.clone(), qq.clone() + q(1))
        );
        assert_eq!(realization_time(&z, &z, &o, (&z, &z), &p).unwrap(), (q(-1), q(0)));

        assert_eq!(realization_space(&z, &z, &z, (&pp, &qq), &p).unwrap(), (pp.clone(), qq.clone()));
        assert_eq!(
            realization_space(&z, &o, &z, (&pp, &qq), &p).unwrap(),
            (pp.clone(), qq.clone() - q(1))
        );
        assert_eq!(realization_space(&o, &z, &z, (&z, &z), &p).unwrap(), (qr(1, 2), q(1)));
    }

    #[test]
    fn coefficients() {
        assert_eq!(scalar_coefficients(&q(0), &params(3, 5)), (q(0), q(0)));
        assert_eq!(scalar_coefficients(&q(2), &params(3, 5)), (q(6), q(10)));
    }

    #[test]
    fn degenerate_flows() {
        // y = 0: p(t) = p₀ − f t, f constant
        let mu = DualElement::new(q(1), q(2), q(3), q(4), q(0));
        let moved = time_flow(&mu, &q(2));
        assert_eq!(moved.p, q(1) - q(3) * q(2));
        assert_eq!(moved.f, q(3));
        // k = 0: e(x) = e₀ + f x, f constant
        let mu = DualElement::new(q(1), q(2), q(3), q(0), q(5));
        let moved = space_flow(&mu, &q(2));
        assert_eq!(moved.e, q(2) + q(3) * q(2));
        assert_eq!(moved.f, q(3));
    }

    #[test]
    fn integrate_zero_length_range() {
        let s0 = ChartState::Time(TimeState { q: 1.0, p: 2.0, t: 0.0, e: 0.5 });
        let cfg = IntegratorConfig::new(1e-3, 0.0, 0.0);
        let traj = integrate(&s0, &OrbitParams::new(1.0, 1.0), &cfg).unwrap();
        assert_eq!(traj.samples.len(), 1);
        assert_eq!(traj.samples[0].coords, vec![1.0, 2.0]);
    }

    #[test]
    fn integrate_time_picture_matches_closed_form() {
        let s0 = ChartState::Time(TimeState { q: 0.0, p: 0.0, t: 0.0, e: 0.0 });
        let cfg = IntegratorConfig::new(1e-3, 0.0, 2.0);
        let traj = integrate(&s0, &OrbitParams::new(1.0, 1.0), &cfg).unwrap();
        let last = traj.samples.last().unwrap();
        assert_eq!(last.param, 2.0);
        assert!((last.coords[0] + 2.0).abs() < 1e-10);
        assert!((last.coords[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn integrate_space_picture_matches_closed_form() {
        let s0 = ChartState::Space(SpaceState { tau: 0.0, e: 0.0, x: 0.0, p: 0.0 });
        let cfg = IntegratorConfig::new(1e-3, 0.0, 2.0);
        let traj = integrate(&s0, &OrbitParams::new(1.0, 1.0), &cfg).unwrap();
        let last = traj.samples.last().unwrap();
        assert!((last.coords[0] - 2.0).abs() < 1e-10);
        assert!((last.coords[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn integrate_rejects_bad_config() {
        let s0 = ChartState::Time(TimeState { q: 0.0, p: 0.0, t: 0.0, e: 0.0 });
        let p = OrbitParams::new(1.0, 1.0);
        assert_eq!(
            integrate(&s0, &p, &IntegratorConfig::new(0.0, 0.0, 1.0)).unwrap_err(),
            DynamicsError::NonPositiveStep
        );
        assert_eq!(
            integrate(&s0, &p, &IntegratorConfig::new(0.1, 1.0, 0.0)).unwrap_err(),
            DynamicsError::EmptyRange
        );
        assert!(matches!(
            integrate(&s0, &OrbitParams::new(0.0, 1.0), &IntegratorConfig::new(0.1, 0.0, 1.0)),
            Err(DynamicsError::ChartUndefined { .. })
        ));
    }

    #[test]
    fn grid_lands_on_end() {
        let g = IntegratorConfig::new(0.1, 0.0, 0.3).grid();
        assert_eq!(g.len(), 4);
        assert_eq!(*g.last().unwrap(), 0.3);
        let g = IntegratorConfig::new(qr(1, 4), q(0), qr(3, 5)).grid();
        assert_eq!(g, vec![q(0), qr(1, 4), qr(1, 2), qr(3, 5)]);
    }

    #[test]
    fn rational_rk4_is_exact_for_quadratic_flows() {
        let p = params(2, 3);
        let s0 = ChartState::Time(TimeState { q: qr(1, 2), p: q(1), t: q(0), e: q(2) });
        let traj = integrate(&s0, &p, &IntegratorConfig::new(qr(1, 4), q(0), q(1))).unwrap();
        let (qe, pe) = time_closed_form(&qr(1, 2), &q(1), &p, &q(1)).unwrap();
        assert_eq!(traj.samples.last().unwrap().coords, vec![qe, pe]);
        assert!(traj.samples.iter().all(|s| s.drift == q(0)));
    }
}
