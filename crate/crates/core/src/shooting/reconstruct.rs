//! Recovery of the metric coefficients a, b, c, f along a trajectory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_system::{Coeffs, PhaseState};

use super::run::Trajectory;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub eta: f64,
    pub t: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub f: f64,
    pub trl_inv: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricProfile {
    /// Value of 1/trL at the first row.
    pub gauge: f64,
    pub rows: Vec<MetricRow>,
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 30)
}

fn state_at(traj: &Trajectory, eta: f64, fallback: &PhaseState<f64>) -> PhaseState<f64> {
    traj.eval(eta).unwrap_or_else(|| fallback.clone())
}

/// Rows at every stored sample, with `1/trL = gauge` at the first row.
///
/// The first sample is skipped when it sits on a degenerate orbit (a vanishing
/// Z-product); a vanishing product anywhere later is an error.
pub fn reconstruct_metric(traj: &Trajectory, gauge: f64) -> Result<MetricProfile> {
    if !(gauge > 0.0 && gauge.is_finite()) {
        return Err(Error::InvalidRequest(format!("gauge must be positive, got {gauge}")));
    }
    if traj.samples.len() < 2 {
        return Err(Error::InvalidRequest("trajectory needs at least two samples".into()));
    }
    let co = Coeffs::<f64>::new(&traj.spec.params);
    let tol = traj.spec.integrator.rel_tol;
    let products = |s: &PhaseState<f64>| {
        let z = &s.z;
        [z[1] * z[2], z[0] * z[2], z[0] * z[1]]
    };

    let mut start = 0;
    if products(&traj.samples[0].state).iter().any(|&v| v <= 0.0) {
        start = 1;
    }
    for (i, s) in traj.samples.iter().enumerate().skip(start) {
        if products(&s.state).iter().any(|&v| !(v > 0.0)) {
            return Err(Error::ReconstructionDomain {
                index: i,
                eta: s.eta,
                message: format!("vanishing Z-product at Z = {:?}", s.state.z),
            });
        }
    }

    let first = &traj.samples[start];
    let g = |eta: f64, fb: &PhaseState<f64>| co.scalar_terms(&state_at(traj, eta, fb)).g;
    let g0 = co.scalar_terms(&first.state).g;
    if !(g0 > 0.0) {
        return Err(Error::ReconstructionDomain {
            index: start,
            eta: first.eta,
            message: format!("non-positive expansion rate {g0} at the first sample"),
        });
    }

    let row = |eta: f64, s: &PhaseState<f64>, t: f64, trl_inv: f64| {
        let [p1, p2, p3] = products(s);
        MetricRow {
            eta,
            t,
            a: trl_inv / p1.sqrt(),
            b: trl_inv / p2.sqrt(),
            c: trl_inv / p3.sqrt(),
            f: trl_inv * s.z[3],
            trl_inv,
        }
    };

    let mut rows = Vec::with_capacity(traj.samples.len() - start);
    let mut log_l = gauge.ln();
    let mut t = gauge / g0;
    rows.push(row(first.eta, &first.state, t, gauge));
    for w in traj.samples[start..].windows(2) {
        let (s0, s1) = (&w[0], &w[1]);
        let (e0, e1) = (s0.eta, s1.eta);
        let gi = |eta: f64| g(eta, &s0.state);
        let base = log_l;
        let trl = |eta: f64| (base + adaptive_simpson(&gi, e0, eta, tol * (eta - e0).abs().max(1e-300))).exp();
        let dlog = adaptive_simpson(&gi, e0, e1, tol * (e1 - e0));
        let dt = adaptive_simpson(&trl, e0, e1, tol * (e1 - e0) * base.exp());
        log_l += dlog;
        t += dt;
        rows.push(row(e1, &s1.state, t, log_l.exp()));
    }
    Ok(MetricProfile { gauge, rows })
}
