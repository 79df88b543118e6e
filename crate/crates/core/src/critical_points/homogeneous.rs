//! The conical fixed points X = (1/7, …, 1/7): solutions of ℛᵢ(z) = 6/49.

use crate::aw_algebra::AWParams;
use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::phase_system::Coeffs;

const TARGET: f64 = 6.0 / 49.0;
const DEDUP_TOL: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-12;

/// Reduced system in (z₁, z₂, z₃) after eliminating z₄ through ℛ₄ = 6/49.
struct Reduced {
    a: [f64; 3],
}

impl Reduced {
    fn weights(&self, z: [f64; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
        let [z1, z2, z3] = z;
        let [a1, a2, a3] = self.a;
        let t = [a1 * z2 * z2 * z3 * z3, a2 * z1 * z1 * z3 * z3, a3 * z1 * z1 * z2 * z2];
        let dt = [
            [0.0, 2.0 * a1 * z2 * z3 * z3, 2.0 * a1 * z2 * z2 * z3],
            [2.0 * a2 * z1 * z3 * z3, 0.0, 2.0 * a2 * z1 * z1 * z3],
            [2.0 * a3 * z1 * z2 * z2, 2.0 * a3 * z1 * z1 * z2, 0.0],
        ];
        (t, dt)
    }

    fn z4(&self, z: [f64; 3]) -> f64 {
        let (t, _) = self.weights(z);
        (TARGET / (t[0] + t[1] + t[2])).sqrt()
    }

    fn eval(&self, z: [f64; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
        let [z1, z2, z3] = z;
        let (t, dt) = self.weights(z);
        let s: f64 = t.iter().sum();
        let ds: [f64; 3] = std::array::from_fn(|j| dt[0][j] + dt[1][j] + dt[2][j]);
        let quad = [
            6.0 * z2 * z3 + z1 * z1 - z2 * z2 - z3 * z3,
            6.0 * z1 * z3 + z2 * z2 - z3 * z3 - z1 * z1,
            6.0 * z1 * z2 + z3 * z3 - z1 * z1 - z2 * z2,
        ];
        let dquad = [
            [2.0 * z1, 6.0 * z3 - 2.0 * z2, 6.0 * z2 - 2.0 * z3],
            [6.0 * z3 - 2.0 * z1, 2.0 * z2, 6.0 * z1 - 2.0 * z3],
            [6.0 * z2 - 2.0 * z1, 6.0 * z1 - 2.0 * z2, 2.0 * z3],
        ];
        let mut f = [0.0; 3];
        let mut j = [[0.0; 3]; 3];
        for i in 0..3 {
            f[i] = quad[i] - TARGET * t[i] / s - TARGET;
            for c in 0..3 {
                j[i][c] = dquad[i][c] - TARGET * (dt[i][c] * s - t[i] * ds[c]) / (s * s);
            }
        }
        (f, j)
    }
}

fn solve3(j: [[f64; 3]; 3], f: [f64; 3]) -> Option<[f64; 3]> {
    let m = nalgebra::Matrix3::from_fn(|r, c| j[r][c]);
    let b = nalgebra::Vector3::from_column_slice(&f);
    m.lu().solve(&b).map(|x| [x[0], x[1], x[2]])
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn newton(sys: &Reduced, start: [f64; 3]) -> Option<[f64; 3]> {
    let mut z = start;
    let (mut f, mut j) = sys.eval(z);
    for _ in 0..100 {
        let norm = max_abs(&f);
        if !norm.is_finite() {
            return None;
        }
        if norm <= 1e-15 {
            break;
        }
        let step = solve3(j, f)?;
        let mut lambda = 1.0;
        loop {
            let trial: [f64; 3] = std::array::from_fn(|i| z[i] - lambda * step[i]);
            let (tf, tj) = sys.eval(trial);
            let tn = max_abs(&tf);
            if tn.is_finite() && tn < norm * (1.0 - 1e-4 * lambda) {
                z = trial;
                f = tf;
                j = tj;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-10 {
                return if norm <= RESIDUAL_TOL { Some(z) } else { None };
            }
        }
    }
    (max_abs(&f) <= RESIDUAL_TOL).then_some(z)
}

/// Positive solutions `(z₁, z₂, z₃, z₄)` of ℛᵢ = 6/49 (i = 1..4), sorted by z₁.
///
/// Damped Newton from the grid {0.05, 0.10, …, 0.50}³; the result is an error
/// unless exactly two distinct positive solutions turn up.
pub fn solve(p: &AWParams) -> Result<Vec<[f64; 4]>> {
    let co = Coeffs::<f64>::new(p);
    let sys = Reduced { a: co.a };
    let grid: Vec<f64> = (1..=10).map(|i| 0.05 * i as f64).collect();
    let mut found: Vec<[f64; 4]> = Vec::new();
    for &a in &grid {
        for &b in &grid {
            for &c in &grid {
                let Some(z) = newton(&sys, [a, b, c]) else { continue };
                if z.iter().any(|&v| v <= 0.0) {
                    continue;
                }
                let z4 = sys.z4(z);
                if !(z4.is_finite() && z4 > 0.0) {
                    continue;
                }
                let cand = [z[0], z[1], z[2], z4];
                if residual(&co, &cand) > RESIDUAL_TOL {
                    continue;
                }
                if !found.iter().any(|f| max_abs(&std::array::from_fn::<f64, 4, _>(|i| f[i] - cand[i])) <= DEDUP_TOL * (1.0 + cand[3])) {
                    found.push(cand);
                }
            }
        }
    }
    found.sort_by(|a, b| a[0].total_cmp(&b[0]));
    if found.len() != 2 {
        return Err(Error::SolverIncomplete {
            message: format!("expected two positive solutions for {p}, found {}", found.len()),
            candidates: found,
        });
    }
    Ok(found)
}

/// max |ℛᵢ(z) − 6/49| over i = 1..4.
pub fn residual(co: &Coeffs<f64>, z: &[f64; 4]) -> f64 {
    let s = crate::phase_system::PhaseState { x: [1.0 / 7.0; 4], z: *z };
    let st = co.scalar_terms(&s);
    st.r.iter().fold(0.0, |m, r| m.max((r - f64::from_ratio(6, 49)).abs()))
}
