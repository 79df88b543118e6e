//! Independent runs over a grid of directions, in parallel.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::run::{integrate, Asymptotics, ShootSpec};

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "SPIN7_THREADS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub s: [f64; 3],
    pub outcome: std::result::Result<Asymptotics, String>,
}

/// `n` directions at angles `(j + ½)/n · π/2`, strictly inside the first quadrant.
pub fn quadrant_grid(n: usize) -> Vec<[f64; 3]> {
    arc_grid(0.0, std::f64::consts::FRAC_PI_2, n)
}

/// `n` directions at midpoints of `n` equal sub-arcs of `[θ₀, θ₁]`.
pub fn arc_grid(theta0: f64, theta1: f64, n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|j| {
            let th = theta0 + (j as f64 + 0.5) / n as f64 * (theta1 - theta0);
            [th.cos(), th.sin(), 0.0]
        })
        .collect()
}

fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidRequest(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        b = b.num_threads(n.max(1));
    }
    b.build().map_err(|e| Error::InvalidRequest(format!("thread pool: {e}")))
}

/// Runs `base` once per grid direction; output order follows `grid`.
pub fn sweep(base: &ShootSpec, grid: &[[f64; 3]]) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::InvalidRequest("empty sweep grid".into()));
    }
    let run = |s: &[f64; 3]| {
        let spec = ShootSpec { s: *s, ..base.clone() };
        let outcome = spec.validate().and_then(|_| integrate(&spec)).map(|t| t.outcome).map_err(|e| e.to_string());
        SweepPoint { s: *s, outcome }
    };
    Ok(pool()?.install(|| grid.par_iter().map(run).collect()))
}
