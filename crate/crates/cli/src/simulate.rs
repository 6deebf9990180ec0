//! `simulate`: one trajectory from one dual point.

use aristotle_core::dynamics::{integrate, sample_closed_form, sample_dual_flow};
use aristotle_core::{ChartState, DualElement, DynamicsError, IntegratorConfig, Scalar, Source, Trajectory};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::output::{csv_table, pretty_json, scalar_json};

pub fn run<S: Scalar>(config: &RunConfig, points: &[DualElement<S>]) -> Result<String, CliError> {
    let [mu] = points else {
        return Err(CliError::Usage(format!(
            "simulate needs exactly one initial dual point, got {}",
            points.len()
        )));
    };
    let (start, end) = config.range_as::<S>()?;
    let traj = if config.dual {
        sample_dual_flow(config.picture, mu, &start, &end, config.samples)?
    } else {
        let state0 = ChartState::from_dual(config.picture, mu, start.clone()).map_err(guidance)?;
        let params = aristotle_core::OrbitParams::of(mu);
        if config.closed_form {
            sample_closed_form(&state0, &params, &start, &end, config.samples)?
        } else {
            let step = RunConfig::parse_scalar_flag::<S>("step", &config.step)?;
            integrate(&state0, &params, &IntegratorConfig::new(step, start, end))?
        }
    };
    match config.format {
        Format::Csv => render_csv(&traj),
        _ => Ok(render_json(config, &traj)),
    }
}

fn guidance(e: DynamicsError) -> CliError {
    match e {
        DynamicsError::ChartUndefined { .. } => {
            CliError::Usage(format!("{e} (rerun with --dual)"))
        }
        other => other.into(),
    }
}

fn header<S>(traj: &Trajectory<S>) -> Vec<&'static str> {
    let mut h = vec![traj.chart.parameter_name()];
    h.extend_from_slice(traj.chart.coordinate_names());
    h.push(traj.chart.invariant_name());
    h.push("drift");
    h
}

fn render_csv<S: Scalar>(traj: &Trajectory<S>) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = traj
        .samples
        .iter()
        .map(|s| {
            std::iter::once(&s.param)
                .chain(&s.coords)
                .chain([&s.invariant, &s.drift])
                .map(Scalar::render)
                .collect()
        })
        .collect();
    csv_table(&header(traj), &rows)
}

fn render_json<S: Scalar>(config: &RunConfig, traj: &Trajectory<S>) -> String {
    let source = match &traj.source {
        Source::ClosedForm => json!({ "kind": "closed_form" }),
        Source::RungeKutta4 { step } => json!({ "kind": "runge_kutta4", "step": scalar_json(step) }),
    };
    let rows: Vec<Value> = traj
        .samples
        .iter()
        .map(|s| {
            Value::Array(
                std::iter::once(&s.param)
                    .chain(&s.coords)
                    .chain([&s.invariant, &s.drift])
                    .map(scalar_json)
                    .collect(),
            )
        })
        .collect();
    let chart = serde_json::to_value(traj.chart).expect("chart serializes");
    pretty_json(&json!({
        "command": "simulate",
        "backend": config.backend.name(),
        "chart": chart,
        "source": source,
        "params": { "k": scalar_json(&traj.params.k), "y": scalar_json(&traj.params.y) },
        "columns": header(traj),
        "max_drift": scalar_json(&traj.max_drift()),
        "rows": rows,
    }))
}
