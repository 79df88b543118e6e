//! CSV and JSON output for trajectories, metric profiles and outcomes.

use std::io::{Read, Write};

use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::reconstruct::MetricProfile;
use crate::phase_system::{Coeffs, PhaseState};

use super::run::{residual_norms, Asymptotics, Sample, ShootSpec, Trajectory};

pub const TRAJECTORY_HEADER: [&str; 12] =
    ["eta", "X1", "X2", "X3", "X4", "Z1", "Z2", "Z3", "Z4", "res_hyper", "res_cons", "res_spin"];
pub const METRIC_HEADER: [&str; 6] = ["t", "a", "b", "c", "f", "trL_inv"];

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidRequest(format!("csv output: {e}"))
}

fn fmt(v: f64) -> String {
    format!("{v:.17e}")
}

pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRAJECTORY_HEADER).map_err(csv_err)?;
    for s in &traj.samples {
        let mut rec = vec![fmt(s.eta)];
        rec.extend(s.state.to_array().iter().map(|&v| fmt(v)));
        let r = &s.residuals;
        rec.extend([r.hyperplane, r.conservation, r.spin].map(fmt));
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::InvalidRequest(format!("csv output: {e}")))
}

/// Reads a trajectory CSV written by [`write_trajectory_csv`]. Residual columns
/// are recomputed from the state; `spec` supplies the parameters and mode.
pub fn read_trajectory_csv<R: Read>(spec: ShootSpec, input: R) -> Result<Trajectory> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(parse_err)?.clone();
    if header.iter().ne(TRAJECTORY_HEADER) {
        return Err(Error::Parse(format!("unexpected trajectory header {:?}", header.iter().collect::<Vec<_>>())));
    }
    let co = Coeffs::<f64>::new(&spec.params);
    let ch = spec.chirality();
    let mut samples = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(parse_err)?;
        let mut v = [0.0; 9];
        for (j, slot) in v.iter_mut().enumerate() {
            let field = rec.get(j).ok_or_else(|| Error::Parse(format!("row {}: missing column {j}", i + 1)))?;
            *slot = field.trim().parse().map_err(|_| Error::Parse(format!("row {}: bad number {field:?}", i + 1)))?;
        }
        let state = PhaseState::from_array(std::array::from_fn(|j| v[j + 1]));
        let residuals = residual_norms(&co, &state, ch);
        samples.push(Sample { eta: v[0], state, residuals });
    }
    Trajectory::from_samples(spec, samples)
}

fn parse_err(e: csv::Error) -> Error {
    Error::Parse(format!("csv input: {e}"))
}

pub fn write_metric_csv<W: Write>(profile: &MetricProfile, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(METRIC_HEADER).map_err(csv_err)?;
    for r in &profile.rows {
        w.write_record([r.t, r.a, r.b, r.c, r.f, r.trl_inv].map(fmt)).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::InvalidRequest(format!("csv output: {e}")))
}

pub fn outcome_json(o: &Asymptotics) -> Value {
    let mut v = json!({
        "kind": o.kind.name(),
        "limit_point": o.limit_point.map(|l| l.name()),
        "distance": finite_or_null(o.limit_distance),
        "eta": finite_or_null(o.eta_at_decision),
    });
    if let Some(c) = o.limit_coords {
        v["limit_coords"] = json!(c);
    }
    if let Some(n) = &o.note {
        v["note"] = json!(n);
    }
    v
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() { json!(x) } else { Value::Null }
}

pub fn classification_json(traj: &Trajectory) -> Value {
    let spec = &traj.spec;
    json!({
        "params": {"k": spec.params.k, "l": spec.params.l},
        "bundle": spec.bundle.name(),
        "mode": spec.mode.name(),
        "s": spec.s,
        "outcome": outcome_json(&traj.outcome),
    })
}
