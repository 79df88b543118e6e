//! Dormand–Prince 5(4) with the standard fourth-order continuous extension and
//! an optional projection after every accepted step.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_step: 1.0 }
    }
}

impl IntegratorConfig {
    pub fn halved(&self) -> Self {
        Self { rel_tol: self.rel_tol / 2.0, abs_tol: self.abs_tol / 2.0, max_step: self.max_step }
    }
}

pub trait OdeSystem<const N: usize> {
    fn rhs(&self, y: &[f64; N]) -> [f64; N];

    /// Pulls a state back onto the constraint manifold; identity by default.
    fn project(&self, y: [f64; N]) -> [f64; N] {
        y
    }
}

/// One accepted step's interpolant on `[t0, t0 + h]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseSegment<const N: usize> {
    pub t0: f64,
    pub h: f64,
    r: [[f64; N]; 5],
}

impl<const N: usize> DenseSegment<N> {
    pub fn eval(&self, t: f64) -> [f64; N] {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let r = &self.r;
        std::array::from_fn(|i| r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i]))))
    }

    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }
}

/// Piecewise interpolant over the accepted steps.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DenseOutput<const N: usize> {
    pub segments: Vec<DenseSegment<N>>,
}

impl<const N: usize> DenseOutput<N> {
    pub fn t_range(&self) -> Option<(f64, f64)> {
        Some((self.segments.first()?.t0, self.segments.last()?.t1()))
    }

    pub fn eval(&self, t: f64) -> Option<[f64; N]> {
        let (a, b) = self.t_range()?;
        if t < a || t > b {
            return None;
        }
        let i = self.segments.partition_point(|s| s.t1() < t);
        let seg = &self.segments[i.min(self.segments.len() - 1)];
        Some(seg.eval(t))
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

fn comb<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepControl {
    Continue,
    Stop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Termination {
    Reached,
    Stopped,
    StepUnderflow,
    NonFinite,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

pub struct Solution<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
    pub dense: DenseOutput<N>,
    pub stats: StepStats,
    pub termination: Termination,
}

/// Integrates from `(t0, y0)` towards `t_end`, calling `on_step` with each new
/// segment after it is accepted and projected.
pub fn integrate<const N: usize, S: OdeSystem<N>>(
    sys: &S,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    cfg: &IntegratorConfig,
    mut on_step: impl FnMut(&DenseSegment<N>, &[f64; N]) -> StepControl,
) -> Solution<N> {
    let mut stats = StepStats::default();
    let mut dense = DenseOutput { segments: Vec::new() };
    let mut t = t0;
    let mut y = y0;
    let mut k1 = sys.rhs(&y);
    stats.evaluations += 1;
    let sk = |a: f64, b: f64| cfg.abs_tol + cfg.rel_tol * a.abs().max(b.abs());

    // Initial step from the first-derivative scale.
    let d0 = rms(&y, &y, &sk);
    let d1 = rms(&k1, &y, &sk);
    let mut h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h = h.min(cfg.max_step).min(t_end - t).max(1e-12);

    let mut termination = Termination::Reached;
    let mut last_rejected = false;
    while t < t_end {
        if h < 1e-14 * t.abs().max(1.0) {
            termination = Termination::StepUnderflow;
            break;
        }
        let h_try = h.min(t_end - t);
        let k2 = sys.rhs(&comb(&y, h_try, &[(A21, &k1)]));
        let k3 = sys.rhs(&comb(&y, h_try, &[(A31, &k1), (A32, &k2)]));
        let k4 = sys.rhs(&comb(&y, h_try, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = sys.rhs(&comb(&y, h_try, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let y6 = comb(&y, h_try, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]);
        let k6 = sys.rhs(&y6);
        let y1 = comb(&y, h_try, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = sys.rhs(&y1);
        stats.evaluations += 6;

        let errv: [f64; N] = std::array::from_fn(|i| {
            h_try * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i])
        });
        let err = {
            let s: f64 = (0..N).map(|i| (errv[i] / sk(y[i], y1[i])).powi(2)).sum();
            (s / N as f64).sqrt()
        };
        if !err.is_finite() || y1.iter().any(|v| !v.is_finite()) {
            if h_try < 1e-12 {
                termination = Termination::NonFinite;
                break;
            }
            h = h_try * 0.1;
            stats.rejected += 1;
            last_rejected = true;
            continue;
        }
        if err > 1.0 {
            h = h_try * (0.9 * err.powf(-0.2)).max(0.2);
            stats.rejected += 1;
            last_rejected = true;
            continue;
        }

        let ydiff: [f64; N] = std::array::from_fn(|i| y1[i] - y[i]);
        let bspl: [f64; N] = std::array::from_fn(|i| h_try * k1[i] - ydiff[i]);
        let r = [
            y,
            ydiff,
            bspl,
            std::array::from_fn(|i| ydiff[i] - h_try * k7[i] - bspl[i]),
            std::array::from_fn(|i| {
                h_try * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])
            }),
        ];
        let seg = DenseSegment { t0: t, h: h_try, r };
        let yp = sys.project(y1);
        stats.accepted += 1;
        t += h_try;
        y = yp;
        k1 = if yp == y1 { k7 } else { stats.evaluations += 1; sys.rhs(&y) };
        let ctl = on_step(&seg, &y);
        dense.segments.push(seg);
        if ctl == StepControl::Stop {
            termination = Termination::Stopped;
            break;
        }
        let mut fac = (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
        if last_rejected {
            fac = fac.min(1.0);
        }
        last_rejected = false;
        h = (h_try * fac).min(cfg.max_step);
    }
    Solution { t, y, dense, stats, termination }
}

fn rms<const N: usize>(v: &[f64; N], y: &[f64; N], sk: &impl Fn(f64, f64) -> f64) -> f64 {
    let s: f64 = (0..N).map(|i| (v[i] / sk(y[i], y[i])).powi(2)).sum();
    (s / N as f64).sqrt()
}
