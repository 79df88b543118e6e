//! The 8-dimensional and reduced 4-dimensional flows as ODE systems with their
//! constraint projections.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::aw_algebra::AWParams;
use crate::phase_system::{Chirality, Coeffs, PhaseState};

use super::integrator::OdeSystem;

pub type Constraint<const N: usize> = (f64, [f64; N]);

/// Minimum-norm Gauss–Newton projection onto `{c(y) = 0}`.
///
/// Returns the projected point and the final max residual.
pub fn project_min_norm<const N: usize>(
    mut y: [f64; N],
    constraints: impl Fn(&[f64; N]) -> Vec<Constraint<N>>,
    max_iter: usize,
    tol: f64,
) -> ([f64; N], f64) {
    for _ in 0..max_iter {
        let cs = constraints(&y);
        let res = max_residual(&cs);
        if res <= tol || !res.is_finite() {
            break;
        }
        let m = cs.len();
        let j = DMatrix::from_fn(m, N, |r, c| cs[r].1[c]);
        let r = DVector::from_fn(m, |i, _| cs[i].0);
        let jjt = &j * j.transpose();
        let Some(lam) = jjt.lu().solve(&r) else { break };
        let dy = j.transpose() * lam;
        for i in 0..N {
            y[i] -= dy[i];
        }
    }
    let res = max_residual(&constraints(&y));
    (y, res)
}

fn max_residual<const N: usize>(cs: &[Constraint<N>]) -> f64 {
    cs.iter().fold(0.0, |m: f64, (r, _)| m.max(r.abs()))
}

/// One-dimensional invariant curves on the boundary of the compact sets for (1,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryCurve {
    /// `{Z₂ = Z₃, Z₂Z₃Z₄² = 9}` on the Plus set, through P₀^{(2)}.
    SPlusEdge,
    /// `{Z₂ + Z₃ = Z₁, (Z₂ + Z₃)Z₄ = 6}` on the Minus set, through P₀^{(1)}.
    TMinusEdge,
}

impl BoundaryCurve {
    pub fn constraints(&self, z: &[f64; 4]) -> [Constraint<4>; 2] {
        let [z1, z2, z3, z4] = *z;
        match self {
            BoundaryCurve::SPlusEdge => [
                (z2 - z3, [0.0, 1.0, -1.0, 0.0]),
                (z2 * z3 * z4 * z4 - 9.0, [0.0, z3 * z4 * z4, z2 * z4 * z4, 2.0 * z2 * z3 * z4]),
            ],
            BoundaryCurve::TMinusEdge => [
                (z2 + z3 - z1, [-1.0, 1.0, 1.0, 0.0]),
                ((z2 + z3) * z4 - 6.0, [0.0, z4, z4, z2 + z3]),
            ],
        }
    }

    pub fn chirality(&self) -> Chirality {
        match self {
            BoundaryCurve::SPlusEdge => Chirality::Plus,
            BoundaryCurve::TMinusEdge => Chirality::Minus,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BoundaryCurve::SPlusEdge => "Z2=Z3, Z2*Z3*Z4^2=9",
            BoundaryCurve::TMinusEdge => "Z2+Z3=Z1, (Z2+Z3)*Z4=6",
        }
    }
}

/// The reduced flow in Z on one chirality's Spin(7) set.
pub struct SpinSystem {
    pub co: Coeffs<f64>,
    pub chirality: Chirality,
    pub boundary: Option<BoundaryCurve>,
}

impl SpinSystem {
    pub fn new(p: &AWParams, chirality: Chirality, boundary: Option<BoundaryCurve>) -> Self {
        Self { co: Coeffs::new(p), chirality, boundary }
    }

    pub fn constraints(&self, z: &[f64; 4]) -> Vec<Constraint<4>> {
        let mut out = vec![(self.co.zcons(z, self.chirality), self.co.zcons_grad(z, self.chirality))];
        if let Some(b) = self.boundary {
            out.extend(b.constraints(z));
        }
        out
    }

    pub fn state(&self, z: &[f64; 4]) -> PhaseState<f64> {
        PhaseState { x: self.co.x_from_z(z, self.chirality), z: *z }
    }
}

impl OdeSystem<4> for SpinSystem {
    fn rhs(&self, y: &[f64; 4]) -> [f64; 4] {
        self.co.reduced_field(y, self.chirality)
    }

    fn project(&self, y: [f64; 4]) -> [f64; 4] {
        project_min_norm(y, |z| self.constraints(z), 4, 1e-15).0
    }
}

/// The full flow, projected onto the hyperplane and the conservation law.
pub struct FullSystem {
    pub co: Coeffs<f64>,
}

impl FullSystem {
    pub fn new(p: &AWParams) -> Self {
        Self { co: Coeffs::new(p) }
    }

    pub fn constraints(&self, y: &[f64; 8]) -> Vec<Constraint<8>> {
        let s = PhaseState::from_array(*y);
        let r = self.co.residuals(&s);
        vec![
            (r.hyperplane, Coeffs::<f64>::hyperplane_grad()),
            (r.conservation, self.co.conservation_grad(&s)),
        ]
    }
}

impl OdeSystem<8> for FullSystem {
    fn rhs(&self, y: &[f64; 8]) -> [f64; 8] {
        self.co.vector_field(&PhaseState::from_array(*y)).to_array()
    }

    fn project(&self, y: [f64; 8]) -> [f64; 8] {
        project_min_norm(y, |v| self.constraints(v), 4, 1e-15).0
    }
}
