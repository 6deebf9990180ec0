//! `verify`: the seeded law-checking suite.
//!
//! Every check draws from one [`Sampler`] in a fixed order, so a seed pins
//! the whole report. On the rational backend comparisons are exact; on
//! floats `a ≈ b` means `|a − b| ≤ tol·max(1, |a|, |b|)`.

use aristotle_core::dynamics::{
    integrate, realization_space, realization_time, sample_closed_form, space_closed_form, space_flow,
    space_rhs, time_closed_form, time_flow, time_rhs,
};
use aristotle_core::group::{
    adjoint_of_group, compose_first_extension, inverse_first_extension,
};
use aristotle_core::lie::basis_triples;
use aristotle_core::orbits::{
    classify_with_tol, coadjoint_printed, internal_energy, internal_momentum, orbit_dimension_with_tol,
    psi, ConventionMap, DEFAULT_CLASS_TOL, PRINTED_ACTION_CONVENTION,
};
use aristotle_core::{
    bch, coadjoint, compose, inverse, AdjointMatrix, AlgebraElement, BasisIndex, ChartState, DualElement,
    GroupElement, IntegratorConfig, OrbitParams, Picture, Scalar, SpaceState, StructureTensor, TimeState,
};
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig, MUTATION_ID};
use crate::output::pretty_json;
use crate::sampling::Sampler;

pub const DEFAULT_COMPARE_TOL: f64 = 1e-9;
/// Relative bound for the Runge–Kutta cross-check on `[0, 10]` with `h = 10⁻³`.
pub const INTEGRATOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect()
    }
}

struct Cmp<S> {
    tol: f64,
    _backend: std::marker::PhantomData<S>,
}

impl<S: Scalar> Cmp<S> {
    fn close(&self, a: &S, b: &S) -> bool {
        if S::EXACT {
            return a == b;
        }
        let (a, b) = (a.to_f64(), b.to_f64());
        (a - b).abs() <= self.tol * 1f64.max(a.abs()).max(b.abs())
    }

    fn close_all<'a>(&self, a: impl IntoIterator<Item = &'a S>, b: impl IntoIterator<Item = &'a S>) -> bool {
        a.into_iter().zip(b).all(|(x, y)| self.close(x, y))
    }

    fn is_zero(&self, a: &S) -> bool {
        self.close(a, &S::zero())
    }
}

fn record(
    checks: &mut Vec<CheckResult>,
    name: &'static str,
    cases: usize,
    mut case: impl FnMut(usize) -> Result<(), String>,
) {
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        if let Err(msg) = case(i) {
            failures += 1;
            first_failure.get_or_insert(format!("case {i}: {msg}"));
        }
    }
    checks.push(CheckResult { name, cases, failures, first_failure });
}

fn render_all<'a, S: Scalar + 'a>(v: impl IntoIterator<Item = &'a S>) -> String {
    let parts: Vec<String> = v.into_iter().map(Scalar::render).collect();
    format!("({})", parts.join(", "))
}

fn group_str<S: Scalar>(g: &GroupElement<S>) -> String {
    render_all(&g.to_array())
}

fn dual_str<S: Scalar>(mu: &DualElement<S>) -> String {
    render_all(&mu.to_array())
}

fn first_ext<S: Scalar>(g: &GroupElement<S>) -> [S; 3] {
    [g.x.clone(), g.t.clone(), g.zeta.clone()]
}

/// Bracket table with `[F, E] = F` in place of `Y`.
pub fn mutated_tensor<S: Scalar>() -> StructureTensor<S> {
    let mut t = StructureTensor::aristotle();
    t.set_bracket(BasisIndex::F, BasisIndex::E, &AlgebraElement::basis(BasisIndex::F));
    t
}

pub fn run_suite<S: Scalar>(seed: u64, count: usize, mutate: bool, tol: f64) -> Report {
    let mut rng = Sampler::new(seed);
    let cmp = Cmp::<S> { tol, _backend: std::marker::PhantomData };
    let mut checks = Vec::new();
    let n = count;
    let tensor = if mutate { mutated_tensor::<S>() } else { StructureTensor::aristotle() };

    // algebra
    let triples: Vec<_> = basis_triples().collect();
    record(&mut checks, "jacobi", triples.len(), |i| {
        let (a, b, c) = triples[i];
        let sum = tensor.jacobi_cyclic_sum(a, b, c);
        if sum.coeffs.iter().all(|v| cmp.is_zero(v)) {
            Ok(())
        } else {
            Err(format!("cyclic sum over ({a}, {b}, {c}) is {}", render_all(&sum.coeffs)))
        }
    });
    record(&mut checks, "antisymmetry", 1, |_| {
        let r = tensor.antisymmetry_residual();
        cmp.is_zero(&r).then_some(()).ok_or(format!("residual {}", r.render()))
    });
    record(&mut checks, "nilpotency", 1, |_| {
        let r = tensor.nested_bracket_residual(4);
        cmp.is_zero(&r)
            .then_some(())
            .ok_or(format!("a four-letter bracket has coefficient {}", r.render()))
    });

    // group
    let cases: Vec<_> = (0..n).map(|_| (rng.group::<S>(), rng.group::<S>(), rng.group::<S>())).collect();
    record(&mut checks, "associativity", n, |i| {
        let (g, h, k) = &cases[i];
        let (l, r) = (compose(&compose(g, h), k), compose(g, &compose(h, k)));
        cmp.close_all(&l.to_array(), &r.to_array()).then_some(()).ok_or_else(|| {
            format!("{} != {} at {}, {}, {}", group_str(&l), group_str(&r), group_str(g), group_str(h), group_str(k))
        })
    });
    let elems: Vec<GroupElement<S>> = (0..n).map(|_| rng.group()).collect();
    record(&mut checks, "group_axioms", n, |i| {
        let g = &elems[i];
        let (id, gi) = (GroupElement::identity(), inverse(g));
        let ok = [
            (compose(g, &gi), id.clone()),
            (compose(&gi, g), id.clone()),
            (compose(g, &id), g.clone()),
            (compose(&id, g), g.clone()),
        ]
        .iter()
        .all(|(a, b)| cmp.close_all(&a.to_array(), &b.to_array()));
        ok.then_some(()).ok_or_else(|| format!("identity or inverse fails at {}", group_str(g)))
    });
    let pairs: Vec<_> = (0..n).map(|_| (rng.group::<S>(), rng.group::<S>())).collect();
    record(&mut checks, "adjoint_homomorphism", n, |i| {
        let (g, h) = &pairs[i];
        let (mg, mh) = (adjoint_of_group(g), adjoint_of_group(h));
        let lhs = adjoint_of_group(&compose(g, h));
        let rhs = mg.mul(&mh);
        let flat = |m: &AdjointMatrix<S>| m.m.iter().flatten().cloned().collect::<Vec<S>>();
        if !cmp.close_all(&flat(&lhs), &flat(&rhs)) {
            return Err(format!("Ad(gh) != Ad(g)Ad(h) at {}, {}", group_str(g), group_str(h)));
        }
        let cube = mg.sub(&AdjointMatrix::identity()).pow(3);
        if !flat(&cube).iter().all(|v| cmp.is_zero(v)) {
            return Err(format!("Ad(g) is not unipotent at {}", group_str(g)));
        }
        let det = mg.determinant();
        cmp.close(&det, &S::one()).then_some(()).ok_or_else(|| format!("det Ad(g) = {}", det.render()))
    });
    record(&mut checks, "quotient_law", n, |i| {
        let (g, h) = &pairs[i];
        let prod = compose(g, h);
        let expected = compose_first_extension(&first_ext(g), &first_ext(h));
        cmp
            .close_all(&first_ext(&prod), &expected)
            .then_some(())
            .ok_or_else(|| format!("quotient of {} differs from {}", group_str(&prod), render_all(&expected)))
    });
    record(&mut checks, "bch_inversion", n, |i| {
        let (g, h) = &pairs[i];
        let (a, b) = (AlgebraElement::new(g.to_array()), AlgebraElement::new(h.to_array()));
        let l = bch(&a, &b);
        let r = -bch(&-b.clone(), &-a.clone());
        cmp.close_all(&l.coeffs, &r.coeffs).then_some(()).ok_or_else(|| {
            format!("{} != {}", render_all(&l.coeffs), render_all(&r.coeffs))
        })
    });

    // coadjoint action
    let action: Vec<_> = (0..n).map(|_| (rng.group::<S>(), rng.group::<S>(), rng.dual::<S>())).collect();
    record(&mut checks, "coadjoint_left_action", n, |i| {
        let (g, h, mu) = &action[i];
        let l = coadjoint(&compose(g, h), mu);
        let r = coadjoint(g, &coadjoint(h, mu));
        cmp.close_all(&l.to_array(), &r.to_array()).then_some(()).ok_or_else(|| {
            format!("{} != {} for mu = {}", dual_str(&l), dual_str(&r), dual_str(mu))
        })
    });
    record(&mut checks, "center_trivial", n, |i| {
        let (g, _, mu) = &action[i];
        let central = GroupElement::new(S::zero(), S::zero(), S::zero(), g.a.clone(), g.b.clone());
        let ok = cmp.close_all(&coadjoint(&central, mu).to_array(), &mu.to_array())
            && cmp.close_all(&coadjoint(g, mu).to_array(), &coadjoint(&g.quotient(), mu).to_array());
        ok.then_some(()).ok_or_else(|| format!("center acts on {} via {}", dual_str(mu), group_str(g)))
    });
    record(&mut checks, "printed_action_law", n, |i| {
        let (g, h, mu) = &action[i];
        let (g, h) = (first_ext(g), first_ext(h));
        let once = coadjoint_printed(&h[0], &h[1], &h[2], mu);
        let twice = coadjoint_printed(&g[0], &g[1], &g[2], &once);
        let gh = compose_first_extension(&g, &h);
        let direct = coadjoint_printed(&gh[0], &gh[1], &gh[2], mu);
        cmp.close_all(&twice.to_array(), &direct.to_array()).then_some(()).ok_or_else(|| {
            format!("{} != {} for mu = {}", dual_str(&twice), dual_str(&direct), dual_str(mu))
        })
    });
    record(&mut checks, "frozen_convention", ConventionMap::candidates().len(), |i| {
        let candidate = ConventionMap::candidates()[i];
        let holds = action.iter().all(|(g, _, mu)| {
            let [x, t, z] = candidate.printed_arguments(g);
            cmp.close_all(&coadjoint(g, mu).to_array(), &coadjoint_printed(&x, &t, &z, mu).to_array())
        });
        match (holds, candidate == PRINTED_ACTION_CONVENTION) {
            (true, true) | (false, false) => Ok(()),
            (false, true) => Err(format!("frozen convention {candidate} does not reconcile the actions")),
            (true, false) => Err(format!("convention {candidate} also reconciles the actions")),
        }
    });

    // invariants
    let inv_cases: Vec<_> = (0..n).map(|_| (rng.group::<S>(), rng.generic_dual::<S>())).collect();
    record(&mut checks, "invariant_preservation", n, |i| {
        let (g, mu) = &inv_cases[i];
        let quantities = |m: &DualElement<S>| [m.k.clone(), m.y.clone(), psi(m), internal_energy(m), internal_momentum(m)];
        let before = quantities(mu);
        for moved in [coadjoint(g, mu), coadjoint_printed(&g.x, &g.t, &g.zeta, mu)] {
            let after = quantities(&moved);
            if !cmp.close_all(&before, &after) {
                return Err(format!(
                    "(k, y, psi, U, pi) moved from {} to {} at mu = {}",
                    render_all(&before),
                    render_all(&after),
                    dual_str(mu)
                ));
            }
        }
        Ok(())
    });
    record(&mut checks, "energy_momentum_relation", n, |i| {
        let mu = &inv_cases[i].1;
        let u = internal_energy(mu);
        let pi_v = internal_momentum(mu) * (mu.y.clone() / mu.k.clone());
        cmp.close(&u, &pi_v).then_some(()).ok_or_else(|| {
            format!("U = {} but pi v = {} at {}", u.render(), pi_v.render(), dual_str(mu))
        })
    });
    let class_tol = DEFAULT_CLASS_TOL;
    let reps: Vec<DualElement<S>> = [
        [1, 1, 1, 1, 1],
        [1, 2, 3, 4, 0],
        [1, 2, 3, 0, 5],
        [0, 0, 5, 0, 0],
    ]
    .iter()
    .map(|r| DualElement::from_array(r.map(S::from_i64)))
    .collect();
    record(&mut checks, "orbit_dimension", n + reps.len() + 1, |i| {
        if i < reps.len() {
            let d = orbit_dimension_with_tol(&reps[i], class_tol);
            return (d == 2).then_some(()).ok_or_else(|| format!("{} has dimension {d}", dual_str(&reps[i])));
        }
        if i == reps.len() {
            let d = orbit_dimension_with_tol(&DualElement::<S>::zero(), class_tol);
            return (d == 0).then_some(()).ok_or_else(|| format!("zero point has dimension {d}"));
        }
        let (g, _, mu) = &action[i - reps.len() - 1];
        let moved = coadjoint(g, mu);
        let same = orbit_dimension_with_tol(&moved, class_tol) == orbit_dimension_with_tol(mu, class_tol)
            && classify_with_tol(&moved, class_tol) == classify_with_tol(mu, class_tol);
        same.then_some(()).ok_or_else(|| format!("class or dimension changes along the orbit of {}", dual_str(mu)))
    });

    // dynamics
    let dyn_cases: Vec<_> = (0..n)
        .map(|_| (rng.generic_dual::<S>(), rng.scalar::<S>(), rng.nonzero::<S>()))
        .collect();
    record(&mut checks, "closed_form_flow", n, |i| {
        let (mu, s, _) = &dyn_cases[i];
        let params = OrbitParams::of(mu);
        let q0 = mu.f.clone() / mu.k.clone();
        let (qt, pt) = time_closed_form(&q0, &mu.p, &params, s).map_err(|e| e.to_string())?;
        let moved = time_flow(mu, s);
        if !cmp.close_all(&[qt, pt], &[moved.f.clone() / mu.k.clone(), moved.p.clone()]) {
            return Err(format!("time closed form leaves the flow at {} , t = {}", dual_str(mu), s.render()));
        }
        let tau0 = mu.f.clone() / mu.y.clone();
        let (tx, ex) = space_closed_form(&tau0, &mu.e, &mu.f, &params, s).map_err(|e| e.to_string())?;
        let moved = space_flow(mu, s);
        cmp
            .close_all(&[tx, ex], &[moved.f.clone() / mu.y.clone(), moved.e.clone()])
            .then_some(())
            .ok_or_else(|| format!("space closed form leaves the flow at {}, x = {}", dual_str(mu), s.render()))
    });
    record(&mut checks, "rhs_derivative", n, |i| {
        let (mu, s, d) = &dyn_cases[i];
        let params = OrbitParams::of(mu);
        let two_d = S::from_i64(2) * d.clone();
        let q0 = mu.f.clone() / mu.k.clone();
        let at = |t: &S| time_closed_form(&q0, &mu.p, &params, t).expect("k != 0");
        let ((qf, pf), (qb, pb), (q, p)) = (at(&(s.clone() + d.clone())), at(&(s.clone() - d.clone())), at(s));
        let (dq, dp) = time_rhs(&TimeState { q, p, t: s.clone(), e: mu.e.clone() }, &params)
            .map_err(|e| e.to_string())?;
        if !cmp.close_all(&[dq, dp], &[(qf - qb) / two_d.clone(), (pf - pb) / two_d.clone()]) {
            return Err(format!("time rhs is not the derivative at {}", dual_str(mu)));
        }
        let tau0 = mu.f.clone() / mu.y.clone();
        let at = |x: &S| space_closed_form(&tau0, &mu.e, &mu.f, &params, x).expect("y != 0");
        let ((tf, ef), (tb, eb), (tau, e)) = (at(&(s.clone() + d.clone())), at(&(s.clone() - d.clone())), at(s));
        let (dt, de) = space_rhs(&SpaceState { tau, e, x: s.clone(), p: mu.p.clone() }, &params)
            .map_err(|e| e.to_string())?;
        cmp
            .close_all(&[dt, de], &[(tf - tb) / two_d.clone(), (ef - eb) / two_d])
            .then_some(())
            .ok_or_else(|| format!("space rhs is not the derivative at {}", dual_str(mu)))
    });
    record(&mut checks, "flow_group_law", n, |i| {
        let (mu, a, b) = &dyn_cases[i];
        let ab = a.clone() + b.clone();
        let ok = cmp.close_all(&time_flow(&time_flow(mu, a), b).to_array(), &time_flow(mu, &ab).to_array())
            && cmp.close_all(&space_flow(&space_flow(mu, a), b).to_array(), &space_flow(mu, &ab).to_array());
        if !ok {
            return Err(format!("flows are not one-parameter groups at {}", dual_str(mu)));
        }
        let (tm, sm) = (time_flow(mu, a), space_flow(mu, a));
        let conserved = cmp.close(&internal_energy(&tm), &internal_energy(mu))
            && cmp.close(&internal_momentum(&sm), &internal_momentum(mu))
            && cmp.close(&psi(&tm), &psi(mu))
            && cmp.close(&psi(&sm), &psi(mu));
        conserved.then_some(()).ok_or_else(|| format!("flows do not conserve U, pi, psi at {}", dual_str(mu)))
    });
    let real_cases: Vec<_> = (0..n).map(|_| (rng.generic_dual::<S>(), rng.first_extension::<S>())).collect();
    record(&mut checks, "realization_consistency", n, |i| {
        let (mu, g) = &real_cases[i];
        let params = OrbitParams::of(mu);
        let inv = inverse_first_extension(g);
        let moved = coadjoint_printed(&inv[0], &inv[1], &inv[2], mu);
        let q0 = mu.f.clone() / mu.k.clone();
        let (p, q) = realization_time(&g[0], &g[1], &g[2], (&mu.p, &q0), &params).map_err(|e| e.to_string())?;
        let tau0 = mu.f.clone() / mu.y.clone();
        let (e, tau) =
            realization_space(&g[0], &g[1], &g[2], (&mu.e, &tau0), &params).map_err(|e| e.to_string())?;
        let want = [
            moved.p.clone(),
            moved.f.clone() / mu.k.clone(),
            moved.e.clone(),
            moved.f.clone() / mu.y.clone(),
        ];
        cmp
            .close_all(&[p, q, e, tau], &want)
            .then_some(())
            .ok_or_else(|| format!("chart actions disagree with the inverse coadjoint action at {}", dual_str(mu)))
    });

    checks.push(integrator_check());
    Report { checks }
}

/// Runge–Kutta against the closed forms on floats, whatever the backend.
pub fn integrator_check() -> CheckResult {
    let mu = DualElement::new(0.7, -1.1, 0.3, 1.3, 0.8);
    let params = OrbitParams::of(&mu);
    let cfg = IntegratorConfig::new(1e-3, 0.0, 10.0);
    let mut failures = 0;
    let mut first_failure = None;
    for picture in [Picture::Time, Picture::Space] {
        let verdict = (|| -> Result<(), String> {
            let s0 = ChartState::from_dual(picture, &mu, 0.0).map_err(|e| e.to_string())?;
            let traj = integrate(&s0, &params, &cfg).map_err(|e| e.to_string())?;
            let exact = sample_closed_form(&s0, &params, &0.0, &10.0, 2).map_err(|e| e.to_string())?;
            let (got, want) = (traj.samples.last().expect("nonempty"), exact.samples.last().expect("nonempty"));
            for (a, b) in got.coords.iter().zip(&want.coords) {
                if (a - b).abs() > INTEGRATOR_TOL * b.abs().max(1.0) {
                    return Err(format!("{picture:?} picture ends at {a}, closed form gives {b}"));
                }
            }
            let drift = traj.max_drift();
            if drift > INTEGRATOR_TOL {
                return Err(format!("{picture:?} picture invariant drift {drift}"));
            }
            Ok(())
        })();
        if let Err(msg) = verdict {
            failures += 1;
            first_failure.get_or_insert(msg);
        }
    }
    CheckResult { name: "integrator", cases: 2, failures, first_failure }
}

pub fn run<S: Scalar>(config: &RunConfig) -> (String, Report) {
    let tol = config.tol.unwrap_or(DEFAULT_COMPARE_TOL);
    let report = run_suite::<S>(config.seed, config.count, config.mutate, tol);
    let text = match config.format {
        Format::Text => render_text(&report),
        _ => render_json(config, tol, &report),
    };
    (text, report)
}

fn render_json(config: &RunConfig, tol: f64, report: &Report) -> String {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let mut obj = Map::new();
            obj.insert("name".into(), json!(c.name));
            obj.insert("passed".into(), json!(c.passed()));
            obj.insert("cases".into(), json!(c.cases));
            obj.insert("failures".into(), json!(c.failures));
            if let Some(f) = &c.first_failure {
                obj.insert("first_failure".into(), json!(f));
            }
            Value::Object(obj)
        })
        .collect();
    let exact = config.backend == crate::config::Backend::Rational;
    pretty_json(&json!({
        "command": "verify",
        "backend": config.backend.name(),
        "seed": config.seed,
        "count": config.count,
        "mutation": if config.mutate { json!(MUTATION_ID) } else { Value::Null },
        "tolerance": if exact { Value::Null } else { json!(tol) },
        "passed": report.passed(),
        "checks": checks,
    }))
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {} ({} cases)\n", c.name, c.cases));
        if let Some(f) = &c.first_failure {
            out.push_str(&format!("     {} failures; first: {f}\n", c.failures));
        }
    }
    let failed = report.failed_names().len();
    if failed == 0 {
        out.push_str(&format!("all {} checks passed\n", report.checks.len()));
    } else {
        out.push_str(&format!("{failed} of {} checks failed\n", report.checks.len()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use aristotle_core::Rational;

    #[test]
    fn small_rational_suite_passes() {
        let r = run_suite::<Rational>(3, 20, false, 0.0);
        assert!(r.passed(), "{:?}", r.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
    }

    #[test]
    fn small_float_suite_passes() {
        let r = run_suite::<f64>(3, 20, false, DEFAULT_COMPARE_TOL);
        assert!(r.passed(), "{:?}", r.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
    }

    #[test]
    fn mutation_breaks_jacobi() {
        let r = run_suite::<Rational>(3, 5, true, 0.0);
        assert!(r.failed_names().contains(&"jacobi"));
        let jac = r.checks.iter().find(|c| c.name == "jacobi").unwrap();
        assert!(jac.first_failure.as_ref().unwrap().contains("(P, E, F)"), "{jac:?}");
    }
}
