mod common;

use aristotle_core::dynamics::{
    integrate, realization_space, realization_time, sample_closed_form, sample_dual_flow,
    space_closed_form, space_flow, space_rhs, time_closed_form, time_flow, time_rhs,
    ChartState, IntegratorConfig, OrbitParams, Picture, SpaceState, TimeState,
};
use aristotle_core::group::inverse_first_extension;
use aristotle_core::orbits::{coadjoint_printed, internal_energy, internal_momentum, psi, DualElement};
use aristotle_core::Scalar;
use common::*;
use proptest::prelude::*;

fn params_of(mu: &DualElement<Q>) -> OrbitParams<Q> {
    OrbitParams::of(mu)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn time_closed_form_reads_the_time_flow(mu in generic_dual_element(), t in rational()) {
        let p = params_of(&mu);
        let q0 = mu.f.clone() / mu.k.clone();
        let (qt, pt) = time_closed_form(&q0, &mu.p, &p, &t).unwrap();
        let moved = time_flow(&mu, &t);
        prop_assert_eq!(qt, moved.f.clone() / moved.k.clone());
        prop_assert_eq!(pt, moved.p.clone());
        prop_assert_eq!(&moved.e, &mu.e);
    }

    #[test]
    fn space_closed_form_reads_the_space_flow(mu in generic_dual_element(), x in rational()) {
        let p = params_of(&mu);
        let tau0 = mu.f.clone() / mu.y.clone();
        let (tau, e) = space_closed_form(&tau0, &mu.e, &mu.f, &p, &x).unwrap();
        let moved = space_flow(&mu, &x);
        prop_assert_eq!(tau, moved.f.clone() / moved.y.clone());
        prop_assert_eq!(e, moved.e.clone());
        prop_assert_eq!(&moved.p, &mu.p);
    }

    #[test]
    fn flows_are_one_parameter_groups(mu in dual_element(), a in rational(), b in rational()) {
        prop_assert_eq!(time_flow(&time_flow(&mu, &a), &b), time_flow(&mu, &(a.clone() + b.clone())));
        prop_assert_eq!(space_flow(&space_flow(&mu, &a), &b), space_flow(&mu, &(a + b)));
    }

    #[test]
    fn flows_conserve_internal_quantities(mu in generic_dual_element(), s in rational()) {
        prop_assert_eq!(internal_energy(&time_flow(&mu, &s)), internal_energy(&mu));
        prop_assert_eq!(internal_momentum(&space_flow(&mu, &s)), internal_momentum(&mu));
        prop_assert_eq!(psi(&time_flow(&mu, &s)), psi(&mu));
        prop_assert_eq!(psi(&space_flow(&mu, &s)), psi(&mu));
    }

    #[test]
    fn time_rhs_is_the_exact_derivative(mu in generic_dual_element(), t in rational(), d in nonzero_rational()) {
        // closed forms are quadratic in t: the symmetric quotient is exact
        let p = params_of(&mu);
        let q0 = mu.f.clone() / mu.k.clone();
        let (qf, pf) = time_closed_form(&q0, &mu.p, &p, &(t.clone() + d.clone())).unwrap();
        let (qb, pb) = time_closed_form(&q0, &mu.p, &p, &(t.clone() - d.clone())).unwrap();
        let (qt, pt) = time_closed_form(&q0, &mu.p, &p, &t).unwrap();
        let two_d = q(2) * d;
        let state = TimeState { q: qt, p: pt, t, e: mu.e.clone() };
        let (dq, dp) = time_rhs(&state, &p).unwrap();
        prop_assert_eq!(dq, (qf - qb) / two_d.clone());
        prop_assert_eq!(dp, (pf - pb) / two_d);
    }

    #[test]
    fn space_rhs_is_the_exact_derivative(mu in generic_dual_element(), x in rational(), d in nonzero_rational()) {
        let p = params_of(&mu);
        let tau0 = mu.f.clone() / mu.y.clone();
        let at = |x: &Q| space_closed_form(&tau0, &mu.e, &mu.f, &p, x).unwrap();
        let (tf, ef) = at(&(x.clone() + d.clone()));
        let (tb, eb) = at(&(x.clone() - d.clone()));
        let (tx, ex) = at(&x);
        let two_d = q(2) * d;
        let state = SpaceState { tau: tx, e: ex, x, p: mu.p.clone() };
        let (dt, de) = space_rhs(&state, &p).unwrap();
        prop_assert_eq!(dt, (tf - tb) / two_d.clone());
        prop_assert_eq!(de, (ef - eb) / two_d);
    }

    #[test]
    fn realizations_act_through_the_inverse(mu in generic_dual_element(), g in proptest::array::uniform3(rational())) {
        let p = params_of(&mu);
        let [x, t, z] = g.clone();
        let inv = inverse_first_extension(&g);
        let moved = coadjoint_printed(&inv[0], &inv[1], &inv[2], &mu);

        let q0 = mu.f.clone() / mu.k.clone();
        let (pt, qt) = realization_time(&x, &t, &z, (&mu.p, &q0), &p).unwrap();
        prop_assert_eq!(pt, moved.p.clone());
        prop_assert_eq!(qt, moved.f.clone() / mu.k.clone());

        let tau0 = mu.f.clone() / mu.y.clone();
        let (es, taus) = realization_space(&x, &t, &z, (&mu.e, &tau0), &p).unwrap();
        prop_assert_eq!(es, moved.e.clone());
        prop_assert_eq!(taus, moved.f.clone() / mu.y.clone());
    }

    #[test]
    fn pure_time_translation_in_realizations(mu in generic_dual_element(), t in rational()) {
        let p = params_of(&mu);
        let zero = q(0);
        let q0 = mu.f.clone() / mu.k.clone();
        let (pt, qt) = realization_time(&zero, &t, &zero, (&mu.p, &q0), &p).unwrap();
        prop_assert_eq!((qt, pt), time_closed_form(&q0, &mu.p, &p, &t).unwrap());
        let tau0 = mu.f.clone() / mu.y.clone();
        let (es, taus) = realization_space(&zero, &t, &zero, (&mu.e, &tau0), &p).unwrap();
        prop_assert_eq!(es, mu.e.clone());
        prop_assert_eq!(taus, tau0 - t);
    }
}

fn central_difference(f: impl Fn(f64) -> [f64; 2], at: f64, h: f64) -> [f64; 2] {
    let (a, b) = (f(at + h), f(at - h));
    [(a[0] - b[0]) / (2.0 * h), (a[1] - b[1]) / (2.0 * h)]
}

#[test]
fn float_rhs_matches_central_differences() {
    let params = OrbitParams::new(1.7, -0.6);
    let (q0, p0, tau0, e0) = (0.4, -1.3, 2.2, 0.9);
    let f0 = params.y * tau0;
    for i in 0..=20 {
        let s = i as f64 * 0.5;
        let fd = central_difference(
            |t| {
                let (q, p) = time_closed_form(&q0, &p0, &params, &t).unwrap();
                [q, p]
            },
            s,
            1e-4,
        );
        let (q, p) = time_closed_form(&q0, &p0, &params, &s).unwrap();
        let (dq, dp) = time_rhs(&TimeState { q, p, t: s, e: 0.0 }, &params).unwrap();
        assert!((fd[0] - dq).abs() <= 1e-6 && (fd[1] - dp).abs() <= 1e-6, "time at {s}");

        let fd = central_difference(
            |x| {
                let (tau, e) = space_closed_form(&tau0, &e0, &f0, &params, &x).unwrap();
                [tau, e]
            },
            s,
            1e-4,
        );
        let (tau, e) = space_closed_form(&tau0, &e0, &f0, &params, &s).unwrap();
        let (dt, de) = space_rhs(&SpaceState { tau, e, x: s, p: 0.0 }, &params).unwrap();
        assert!((fd[0] - dt).abs() <= 1e-6 && (fd[1] - de).abs() <= 1e-6, "space at {s}");
    }
}

#[test]
fn rk4_tracks_closed_forms_over_ten_units() {
    let mu = DualElement::new(0.7, -1.1, 0.3, 1.3, 0.8);
    let params = OrbitParams::of(&mu);
    let cfg = IntegratorConfig::new(1e-3, 0.0, 10.0);
    for picture in [Picture::Time, Picture::Space] {
        let s0 = ChartState::from_dual(picture, &mu, 0.0).unwrap();
        let traj = integrate(&s0, &params, &cfg).unwrap();
        let exact = sample_closed_form(&s0, &params, &0.0, &10.0, 2).unwrap();
        let (got, want) = (traj.samples.last().unwrap(), exact.samples.last().unwrap());
        assert_eq!(got.param, 10.0);
        for (a, b) in got.coords.iter().zip(&want.coords) {
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1.0), "{picture:?}: {a} vs {b}");
        }
        assert!(traj.max_drift() <= 1e-8, "{picture:?} drift {}", traj.max_drift());
    }
}

#[test]
fn dual_flow_is_total_for_degenerate_orbits() {
    let mu = DualElement::new(q(1), q(2), q(3), q(0), q(0));
    assert!(ChartState::from_dual(Picture::Time, &mu, q(0)).is_err());
    let traj = sample_dual_flow(Picture::Time, &mu, &q(0), &q(2), 3).unwrap();
    assert_eq!(traj.samples.len(), 3);
    // p(t) = p₀ − f t with everything else fixed
    assert_eq!(traj.samples[2].coords, vec![q(1) - q(6), q(2), q(3)]);
    assert!(traj.samples.iter().all(|s| s.drift == q(0)));
    let sp = sample_dual_flow(Picture::Space, &mu, &q(0), &q(2), 3).unwrap();
    assert_eq!(sp.samples[2].coords, vec![q(1), q(2) + q(6), q(3)]);
    assert_eq!(sp.samples[1].param, q(1));
}

#[test]
fn closed_form_sampling_matches_example() {
    let mu = DualElement::new(q(0), q(0), q(0), q(1), q(1));
    let s0 = ChartState::from_dual(Picture::Time, &mu, q(0)).unwrap();
    let traj = sample_closed_form(&s0, &OrbitParams::of(&mu), &q(0), &q(2), 5).unwrap();
    assert_eq!(traj.samples.len(), 5);
    let last = traj.samples.last().unwrap();
    assert_eq!(last.coords, vec![q(-2), q(2)]);
    assert_eq!(last.drift, q(0));
    assert_eq!(traj.samples[1].param, qr(1, 2));
    let f = |c: &Q| c.to_f64();
    assert_eq!(f(&traj.samples[2].param), 1.0);
}
