//! Shooting from P₀ along the unstable frame, and ω-limit classification.

use serde::{Deserialize, Serialize};

use crate::aw_algebra::{bundle, AWParams, BundleTag};
use crate::critical_points::{
    alc_b_points, p0_chirality, p0_point, p1_point, solve_homogeneous_einstein, unstable_frame_exact, CpLabel,
    FrameConstraint,
};
use crate::error::{Error, Result};
use crate::exact::rat_to_f64;
use crate::phase_system::{Chirality, Coeffs, PhaseState};

use super::integrator::{self, DenseOutput, IntegratorConfig, StepControl, StepStats, Termination};
use super::system::{project_min_norm, BoundaryCurve, Constraint, FullSystem, SpinSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    RicciFlat8D,
    SpinReduced4D(Chirality),
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::RicciFlat8D => "ricci-flat",
            Mode::SpinReduced4D(Chirality::Plus) => "spin+",
            Mode::SpinReduced4D(Chirality::Minus) => "spin-",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ricci" | "ricci-flat" | "rf" | "ricciflat" | "8d" => Ok(Mode::RicciFlat8D),
            "spin+" | "plus" | "spin-plus" => Ok(Mode::SpinReduced4D(Chirality::Plus)),
            "spin-" | "spin\u{2212}" | "minus" | "spin-minus" => Ok(Mode::SpinReduced4D(Chirality::Minus)),
            other => Err(Error::InvalidRequest(format!("unknown mode {other:?}"))),
        }
    }

    /// The Spin(7) mode whose set contains the bundle's P₀.
    pub fn spin_for(tag: BundleTag) -> Self {
        Mode::SpinReduced4D(p0_chirality(tag))
    }
}

/// Whether to hold a (1,1) run on a boundary curve when it starts tangent to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryMode {
    Auto,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub window: f64,
    pub radius: f64,
    pub escape: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self { window: 5.0, radius: 1e-6, escape: 1e3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShootSpec {
    pub params: AWParams,
    pub bundle: BundleTag,
    pub mode: Mode,
    pub s: [f64; 3],
    pub epsilon: f64,
    pub eta_max: f64,
    pub integrator: IntegratorConfig,
    pub boundary: BoundaryMode,
    pub sample_step: f64,
    pub classify: ClassifyConfig,
}

pub const DEFAULT_EPSILON: f64 = 1e-6;
pub const DEFAULT_ETA_MAX: f64 = 150.0;
pub const DEFAULT_SAMPLE_STEP: f64 = 0.1;

impl ShootSpec {
    /// Spec with default amplitude, horizon, tolerances and sampling.
    pub fn new(params: AWParams, bundle_tag: BundleTag, mode: Mode, s: [f64; 3]) -> Result<Self> {
        let spec = Self {
            params,
            bundle: bundle_tag,
            mode,
            s,
            epsilon: DEFAULT_EPSILON,
            eta_max: DEFAULT_ETA_MAX,
            integrator: IntegratorConfig::default(),
            boundary: BoundaryMode::Auto,
            sample_step: DEFAULT_SAMPLE_STEP,
            classify: ClassifyConfig::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Spin(7) spec for the bundle's own chirality with `s = (s₁, s₂, 0)`.
    pub fn spin(params: AWParams, bundle_tag: BundleTag, s1: f64, s2: f64) -> Result<Self> {
        Self::new(params, bundle_tag, Mode::spin_for(bundle_tag), [s1, s2, 0.0])
    }

    /// Chirality used for the Spin(7) residual columns.
    pub fn chirality(&self) -> Chirality {
        match self.mode {
            Mode::SpinReduced4D(ch) => ch,
            Mode::RicciFlat8D => p0_chirality(self.bundle),
        }
    }

    pub fn validate(&self) -> Result<()> {
        bundle(&self.params, self.bundle)?;
        if self.s.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidRequest("non-finite s".into()));
        }
        let norm = self.s.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidRequest(format!("s must lie on the unit sphere, |s| = {norm}")));
        }
        if let Mode::SpinReduced4D(ch) = self.mode {
            if self.s[2] != 0.0 {
                return Err(Error::InvalidRequest("s3 must vanish in Spin(7) modes".into()));
            }
            if ch != p0_chirality(self.bundle) {
                return Err(Error::InvalidRequest(format!(
                    "P0({}) lies on the {:?} Spin(7) set, mode asks for {ch:?}",
                    self.bundle.name(),
                    p0_chirality(self.bundle)
                )));
            }
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1e-2) {
            return Err(Error::InvalidRequest(format!("epsilon must lie in (0, 1e-2], got {}", self.epsilon)));
        }
        let cfg = &self.integrator;
        if !(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0 && cfg.max_step > 0.0) {
            return Err(Error::InvalidRequest("integrator tolerances and max_step must be positive".into()));
        }
        if !(self.sample_step > 0.0 && self.eta_max.is_finite()) {
            return Err(Error::InvalidRequest("sample_step must be positive and eta_max finite".into()));
        }
        Ok(())
    }

    fn frame_constraint(&self) -> FrameConstraint {
        match self.mode {
            Mode::RicciFlat8D => FrameConstraint::RicciFlat,
            Mode::SpinReduced4D(Chirality::Plus) => FrameConstraint::SpinPlus,
            Mode::SpinReduced4D(Chirality::Minus) => FrameConstraint::SpinMinus,
        }
    }
}

/// Starting data of a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InitialData {
    pub state: PhaseState<f64>,
    /// Value of η matching the linearized solution `P₀ + e^{2η/3}(s₁v₁ + s₂v₂ + s₃v₃)`.
    pub eta0: f64,
    /// Offset direction scaled to unit max-norm.
    pub direction: [f64; 8],
    pub boundary: Option<BoundaryCurve>,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Raw combination `s₁v₁ + s₂v₂ + s₃v₃` of the unnormalized frame.
pub fn raw_direction(spec: &ShootSpec) -> Result<[f64; 8]> {
    let frame = unstable_frame_exact(&spec.params, spec.bundle, spec.frame_constraint())?;
    let frame: Vec<[f64; 8]> = frame.iter().map(|v| v.clone().map(|x| rat_to_f64(&x))).collect();
    Ok(std::array::from_fn(|i| frame.iter().zip(spec.s.iter()).map(|(v, s)| s * v[i]).sum()))
}

/// Boundary curve through the bundle's P₀ for (1,1), if there is one in this mode.
pub fn boundary_curve(p: &AWParams, tag: BundleTag, mode: Mode) -> Option<BoundaryCurve> {
    if (p.k, p.l) != (1, 1) {
        return None;
    }
    match (tag, mode) {
        (BundleTag::KplusL, Mode::SpinReduced4D(Chirality::Plus)) => Some(BoundaryCurve::SPlusEdge),
        (BundleTag::K, Mode::SpinReduced4D(Chirality::Minus)) => Some(BoundaryCurve::TMinusEdge),
        _ => None,
    }
}

/// Direction `s` on the upper unit half-circle along which the Spin(7) frame
/// combination is tangent to the (1,1) boundary curve through P₀.
pub fn boundary_tangent_s(p: &AWParams, tag: BundleTag) -> Result<[f64; 2]> {
    let mode = Mode::spin_for(tag);
    let curve = boundary_curve(p, tag, mode)
        .ok_or_else(|| Error::InvalidRequest(format!("no boundary curve through P0({}) for {p}", tag.name())))?;
    let p0 = p0_point(p, tag).expect("bundle exists").to_f64();
    let frame = unstable_frame_exact(p, tag, ShootSpec::spin(*p, tag, 1.0, 0.0)?.frame_constraint())?;
    let fz: Vec<[f64; 4]> = frame.iter().map(|v| std::array::from_fn(|i| rat_to_f64(&v[4 + i]))).collect();
    let dot = |a: &[f64; 4], b: &[f64; 4]| (0..4).map(|i| a[i] * b[i]).sum::<f64>();
    let mut s: Option<[f64; 2]> = None;
    for (_, g) in curve.constraints(&p0.z) {
        let (a, b) = (dot(&g, &fz[0]), dot(&g, &fz[1]));
        let n = (a * a + b * b).sqrt();
        if n <= 1e-12 * max_abs(&g).max(1.0) {
            continue;
        }
        let mut cand = [b / n, -a / n];
        if cand[1] < 0.0 {
            cand = [-cand[0], -cand[1]];
        }
        match s {
            None => s = Some(cand),
            Some(prev) if (prev[0] - cand[0]).abs() + (prev[1] - cand[1]).abs() > 1e-9 => {
                return Err(Error::InvalidRequest("boundary constraints admit no common tangent direction".into()))
            }
            Some(_) => {}
        }
    }
    s.ok_or_else(|| Error::InvalidRequest("frame is tangent to the boundary in every direction".into()))
}

fn spin_initial_constraints<'a>(
    sys: &'a SpinSystem,
    anchor: [f64; 4],
    dir: [f64; 4],
) -> impl Fn(&[f64; 4]) -> Vec<Constraint<4>> + 'a {
    move |z| {
        let mut c = sys.constraints(z);
        let off: f64 = (0..4).map(|i| (z[i] - anchor[i]) * dir[i]).sum();
        c.push((off, dir));
        c
    }
}

/// Offset start point, projected onto the run's constraints with corrections
/// orthogonal to the offset direction.
pub fn prepare(spec: &ShootSpec) -> Result<InitialData> {
    spec.validate()?;
    let p = &spec.params;
    let p0 = p0_point(p, spec.bundle).expect("validated bundle").to_f64();
    let raw = raw_direction(spec)?;
    let scale = max_abs(&raw);
    if scale == 0.0 {
        return Err(Error::Initialization("offset direction vanishes".into()));
    }
    let direction = raw.map(|v| v / scale);
    let eta0 = 1.5 * (spec.epsilon / scale).ln();
    let y0: [f64; 8] = std::array::from_fn(|i| p0.to_array()[i] + spec.epsilon * direction[i]);

    match spec.mode {
        Mode::SpinReduced4D(ch) => {
            let dz: [f64; 4] = std::array::from_fn(|i| direction[4 + i]);
            let boundary = match spec.boundary {
                BoundaryMode::Off => None,
                BoundaryMode::Auto => boundary_curve(p, spec.bundle, spec.mode).filter(|b| {
                    b.constraints(&p0.z).iter().all(|(_, g)| {
                        let gd: f64 = (0..4).map(|i| g[i] * dz[i]).sum();
                        let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                        let dn = dz.iter().map(|v| v * v).sum::<f64>().sqrt();
                        gd.abs() <= 1e-9 * gn * dn
                    })
                }),
            };
            let sys = SpinSystem::new(p, ch, boundary);
            let z0: [f64; 4] = std::array::from_fn(|i| y0[4 + i]);
            let (z, res) = project_min_norm(z0, spin_initial_constraints(&sys, z0, dz), 50, 1e-14);
            if !(res <= 1e-12) {
                return Err(Error::Initialization(format!("projection did not converge (residual {res:e})")));
            }
            Ok(InitialData { state: sys.state(&z), eta0, direction, boundary })
        }
        Mode::RicciFlat8D => {
            let sys = FullSystem::new(p);
            let cons = |y: &[f64; 8]| {
                let mut c = sys.constraints(y);
                let off: f64 = (0..8).map(|i| (y[i] - y0[i]) * direction[i]).sum();
                c.push((off, direction));
                c
            };
            let (y, res) = project_min_norm(y0, cons, 50, 1e-14);
            if !(res <= 1e-12) {
                return Err(Error::Initialization(format!("projection did not converge (residual {res:e})")));
            }
            Ok(InitialData { state: PhaseState::from_array(y), eta0, direction, boundary: None })
        }
    }
}

pub fn initial_state(spec: &ShootSpec) -> Result<PhaseState<f64>> {
    Ok(prepare(spec)?.state)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualNorms {
    pub hyperplane: f64,
    pub conservation: f64,
    /// max |Fᵢ| or |Hᵢ| for the bundle's chirality.
    pub spin: f64,
    pub zcons: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub eta: f64,
    pub state: PhaseState<f64>,
    pub residuals: ResidualNorms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    BoundaryConstrained,
    Converged,
    Escaped,
    Drift,
    StiffFailure,
    EtaMax,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub eta: f64,
    pub kind: EventKind,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeKind {
    Alc,
    Ac,
    Undetermined,
    Escape,
}

impl OutcomeKind {
    pub fn name(&self) -> &'static str {
        match self {
            OutcomeKind::Alc => "ALC",
            OutcomeKind::Ac => "AC",
            OutcomeKind::Undetermined => "Undetermined",
            OutcomeKind::Escape => "Escape",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Asymptotics {
    pub kind: OutcomeKind,
    pub limit_point: Option<CpLabel>,
    pub limit_coords: Option<[f64; 8]>,
    /// Distance of the last sample to the limit (or to the nearest candidate).
    pub limit_distance: f64,
    /// η at which the run entered the decision radius for good.
    pub eta_entered: Option<f64>,
    /// η at which the decision was made (last sample η for undecided runs).
    pub eta_at_decision: f64,
    pub note: Option<String>,
}

impl Asymptotics {
    pub fn is_alc_p1(&self) -> bool {
        self.kind == OutcomeKind::Alc && self.limit_point == Some(CpLabel::P1)
    }
}

/// Candidate ω-limits: P₁, the other ALC points, and the conical points.
#[derive(Clone, Debug)]
pub struct LimitSet {
    pub points: Vec<(CpLabel, OutcomeKind, PhaseState<f64>)>,
}

impl LimitSet {
    pub fn new(p: &AWParams) -> Self {
        let mut points = vec![(CpLabel::P1, OutcomeKind::Alc, p1_point().to_f64())];
        for cp in alc_b_points() {
            points.push((cp.label, OutcomeKind::Alc, cp.state()));
        }
        if let Ok(ac) = solve_homogeneous_einstein(p) {
            for cp in ac {
                points.push((cp.label, OutcomeKind::Ac, cp.state()));
            }
        }
        Self { points }
    }

    pub fn nearest(&self, s: &PhaseState<f64>) -> (usize, f64) {
        self.points
            .iter()
            .enumerate()
            .map(|(i, (_, _, q))| (i, s.max_dist(q)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("limit set is never empty")
    }
}

fn ac_note(p: &AWParams, label: CpLabel, coords: &PhaseState<f64>) -> Option<String> {
    if (p.k, p.l) != (1, 1) || !matches!(label, CpLabel::Ac(_)) {
        return None;
    }
    let z = coords.z;
    Some(format!(
        "conical limit identified by coordinates Z = ({:.6}, {:.6}, {:.6}, {:.6}); names of the two (1,1) conical points are not used",
        z[0], z[1], z[2], z[3]
    ))
}

/// Decides the ω-limit from the sample record alone.
pub fn classify_samples(samples: &[Sample], p: &AWParams, cfg: &ClassifyConfig, limits: &LimitSet) -> Asymptotics {
    let undecided = |d: f64, eta: f64| Asymptotics {
        kind: OutcomeKind::Undetermined,
        limit_point: None,
        limit_coords: None,
        limit_distance: d,
        eta_entered: None,
        eta_at_decision: eta,
        note: None,
    };
    let Some(last) = samples.last() else { return undecided(f64::INFINITY, f64::NAN) };
    if let Some(esc) = samples.iter().find(|s| !s.state.is_finite() || s.state.max_norm() > cfg.escape) {
        return Asymptotics {
            kind: OutcomeKind::Escape,
            limit_point: None,
            limit_coords: None,
            limit_distance: f64::INFINITY,
            eta_entered: None,
            eta_at_decision: esc.eta,
            note: None,
        };
    }
    let (idx, dist) = limits.nearest(&last.state);
    let (label, kind, point) = &limits.points[idx];
    let mut entered = None;
    for s in samples.iter().rev() {
        if s.state.max_dist(point) <= cfg.radius {
            entered = Some(s.eta);
        } else {
            break;
        }
    }
    match entered {
        Some(e) if last.eta - e >= cfg.window - 1e-9 => Asymptotics {
            kind: *kind,
            limit_point: Some(*label),
            limit_coords: Some(point.to_array()),
            limit_distance: dist,
            eta_entered: Some(e),
            eta_at_decision: e + cfg.window,
            note: ac_note(p, *label, point),
        },
        _ => undecided(dist, last.eta),
    }
}

pub fn classify(traj: &Trajectory, p: &AWParams) -> Asymptotics {
    classify_samples(&traj.samples, p, &traj.spec.classify, &LimitSet::new(p))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Dense {
    Spin { params: AWParams, chirality: Chirality, out: DenseOutput<4> },
    Full(DenseOutput<8>),
    /// Cubic Hermite interpolation between stored samples, using the field as slope.
    Samples(AWParams),
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub spec: ShootSpec,
    pub eta0: f64,
    pub samples: Vec<Sample>,
    pub events: Vec<Event>,
    pub outcome: Asymptotics,
    pub stats: StepStats,
    pub termination: Termination,
    pub dense: Dense,
}

impl Trajectory {
    /// State at any η inside the integrated range, from the dense output.
    pub fn eval(&self, eta: f64) -> Option<PhaseState<f64>> {
        match &self.dense {
            Dense::Spin { params, chirality, out } => {
                let z = out.eval(eta)?;
                Some(PhaseState { x: Coeffs::<f64>::new(params).x_from_z(&z, *chirality), z })
            }
            Dense::Full(out) => out.eval(eta).map(PhaseState::from_array),
            Dense::Samples(params) => self.hermite(params, eta),
        }
    }

    /// Trajectory rebuilt from stored samples, for example read back from CSV.
    pub fn from_samples(spec: ShootSpec, samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidRequest("trajectory has no samples".into()));
        }
        if samples.windows(2).any(|w| !(w[1].eta > w[0].eta)) {
            return Err(Error::InvalidRequest("sample eta values must be strictly increasing".into()));
        }
        let p = spec.params;
        let outcome = classify_samples(&samples, &p, &spec.classify, &LimitSet::new(&p));
        Ok(Trajectory {
            eta0: samples[0].eta,
            spec,
            samples,
            events: Vec::new(),
            outcome,
            stats: StepStats::default(),
            termination: Termination::Reached,
            dense: Dense::Samples(p),
        })
    }

    fn hermite(&self, p: &AWParams, eta: f64) -> Option<PhaseState<f64>> {
        let (lo, hi) = self.eta_range();
        if !(eta >= lo && eta <= hi) {
            return None;
        }
        let i = self.samples.partition_point(|s| s.eta <= eta).clamp(1, self.samples.len() - 1);
        let (a, b) = (&self.samples[i - 1], &self.samples[i]);
        let h = b.eta - a.eta;
        if h == 0.0 {
            return Some(a.state.clone());
        }
        let co = Coeffs::<f64>::new(p);
        let (ya, yb) = (a.state.to_array(), b.state.to_array());
        let (fa, fb) = (co.vector_field(&a.state).to_array(), co.vector_field(&b.state).to_array());
        let t = (eta - a.eta) / h;
        let (t2, t3) = (t * t, t * t * t);
        let (h00, h10, h01, h11) = (2.0 * t3 - 3.0 * t2 + 1.0, t3 - 2.0 * t2 + t, -2.0 * t3 + 3.0 * t2, t3 - t2);
        Some(PhaseState::from_array(std::array::from_fn(|j| {
            h00 * ya[j] + h10 * h * fa[j] + h01 * yb[j] + h11 * h * fb[j]
        })))
    }

    pub fn eta_range(&self) -> (f64, f64) {
        (self.samples.first().map_or(f64::NAN, |s| s.eta), self.samples.last().map_or(f64::NAN, |s| s.eta))
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectories hold at least the initial sample")
    }

    /// Sample whose η is closest to `eta`.
    pub fn sample_near(&self, eta: f64) -> &Sample {
        let i = self.samples.partition_point(|s| s.eta < eta);
        let cands = [i.saturating_sub(1), i.min(self.samples.len() - 1)];
        cands
            .iter()
            .map(|&j| &self.samples[j])
            .min_by(|a, b| (a.eta - eta).abs().total_cmp(&(b.eta - eta).abs()))
            .expect("non-empty")
    }

    pub fn has_event(&self, kind: EventKind) -> bool {
        self.events.iter().any(|e| e.kind == kind)
    }
}

pub(crate) fn residual_norms(co: &Coeffs<f64>, s: &PhaseState<f64>, ch: Chirality) -> ResidualNorms {
    let r = co.residuals(s);
    ResidualNorms {
        hyperplane: r.hyperplane.abs(),
        conservation: r.conservation.abs(),
        spin: max_abs(r.spin(ch)),
        zcons: r.zcons(ch).abs(),
    }
}

struct Recorder<'a> {
    spec: &'a ShootSpec,
    co: Coeffs<f64>,
    chirality: Chirality,
    limits: LimitSet,
    samples: Vec<Sample>,
    events: Vec<Event>,
    next_index: usize,
    eta0: f64,
    run: Option<(usize, f64)>,
}

impl Recorder<'_> {
    fn next_eta(&self) -> f64 {
        self.eta0 + self.next_index as f64 * self.spec.sample_step
    }

    /// Adds a sample; returns `Stop` once a decision or failure is reached.
    fn push(&mut self, eta: f64, state: PhaseState<f64>) -> StepControl {
        let residuals = residual_norms(&self.co, &state, self.chirality);
        let cfg = &self.spec.classify;
        let norm = state.max_norm();
        let (idx, dist) = self.limits.nearest(&state);
        self.samples.push(Sample { eta, state, residuals });
        self.next_index += 1;

        if !norm.is_finite() || norm > cfg.escape {
            self.events.push(Event { eta, kind: EventKind::Escaped, detail: format!("state norm {norm:e}") });
            return StepControl::Stop;
        }
        let drift_tol = 100.0 * self.spec.integrator.rel_tol;
        let drift = match self.spec.mode {
            Mode::RicciFlat8D => residuals.hyperplane.max(residuals.conservation),
            Mode::SpinReduced4D(_) => residuals.zcons,
        };
        if drift > drift_tol {
            self.events.push(Event { eta, kind: EventKind::Drift, detail: format!("constraint residual {drift:e}") });
            return StepControl::Stop;
        }
        if dist <= cfg.radius {
            let start = match self.run {
                Some((i, e)) if i == idx => e,
                _ => eta,
            };
            self.run = Some((idx, start));
            if eta - start >= cfg.window - 1e-9 {
                let label = self.limits.points[idx].0;
                self.events.push(Event { eta, kind: EventKind::Converged, detail: label.name() });
                return StepControl::Stop;
            }
        } else {
            self.run = None;
        }
        StepControl::Continue
    }
}

/// Integrates one run up to `eta_max` or an early decision.
pub fn integrate(spec: &ShootSpec) -> Result<Trajectory> {
    let init = prepare(spec)?;
    let p = &spec.params;
    let chirality = spec.chirality();
    let mut rec = Recorder {
        spec,
        co: Coeffs::new(p),
        chirality,
        limits: LimitSet::new(p),
        samples: Vec::new(),
        events: Vec::new(),
        next_index: 0,
        eta0: init.eta0,
        run: None,
    };
    if let Some(b) = init.boundary {
        rec.events.push(Event {
            eta: init.eta0,
            kind: EventKind::BoundaryConstrained,
            detail: format!("projected onto {} at every step", b.name()),
        });
    }
    let first = rec.push(init.eta0, init.state.clone());
    let t_end = spec.eta_max.max(init.eta0);

    let (dense, stats, termination) = match spec.mode {
        Mode::SpinReduced4D(ch) => {
            let sys = SpinSystem::new(p, ch, init.boundary);
            let sol = if first == StepControl::Stop {
                None
            } else {
                Some(integrator::integrate(&sys, init.eta0, init.state.z, t_end, &spec.integrator, |seg, _| {
                    while rec.next_eta() <= seg.t1() + 1e-12 {
                        let eta = rec.next_eta();
                        let z = integrator_sample(&sys, seg.eval(eta.min(seg.t1())));
                        if rec.push(eta, sys.state(&z)) == StepControl::Stop {
                            return StepControl::Stop;
                        }
                    }
                    StepControl::Continue
                }))
            };
            let (out, stats, term) = match sol {
                Some(s) => (s.dense, s.stats, s.termination),
                None => (DenseOutput::default(), StepStats::default(), Termination::Stopped),
            };
            (Dense::Spin { params: *p, chirality: ch, out }, stats, term)
        }
        Mode::RicciFlat8D => {
            let sys = FullSystem::new(p);
            let sol = if first == StepControl::Stop {
                None
            } else {
                Some(integrator::integrate(&sys, init.eta0, init.state.to_array(), t_end, &spec.integrator, |seg, _| {
                    while rec.next_eta() <= seg.t1() + 1e-12 {
                        let eta = rec.next_eta();
                        let y = integrator_sample(&sys, seg.eval(eta.min(seg.t1())));
                        if rec.push(eta, PhaseState::from_array(y)) == StepControl::Stop {
                            return StepControl::Stop;
                        }
                    }
                    StepControl::Continue
                }))
            };
            let (out, stats, term) = match sol {
                Some(s) => (s.dense, s.stats, s.termination),
                None => (DenseOutput::default(), StepStats::default(), Termination::Stopped),
            };
            (Dense::Full(out), stats, term)
        }
    };
    let last_eta = rec.samples.last().map_or(init.eta0, |s| s.eta);
    match termination {
        Termination::StepUnderflow | Termination::NonFinite => rec.events.push(Event {
            eta: last_eta,
            kind: EventKind::StiffFailure,
            detail: format!("{termination:?}"),
        }),
        Termination::Reached => rec.events.push(Event { eta: last_eta, kind: EventKind::EtaMax, detail: String::new() }),
        Termination::Stopped => {}
    }
    let outcome = classify_samples(&rec.samples, p, &spec.classify, &rec.limits);
    Ok(Trajectory {
        spec: spec.clone(),
        eta0: init.eta0,
        samples: rec.samples,
        events: rec.events,
        outcome,
        stats,
        termination,
        dense,
    })
}

fn integrator_sample<const N: usize, S: integrator::OdeSystem<N>>(sys: &S, y: [f64; N]) -> [f64; N] {
    sys.project(y)
}

/// Frame vectors at P₀ scaled to unit max-norm, for display.
pub fn normalized_frame(p: &AWParams, tag: BundleTag, mode: Mode) -> Result<Vec<[f64; 8]>> {
    let c = match mode {
        Mode::RicciFlat8D => FrameConstraint::RicciFlat,
        Mode::SpinReduced4D(Chirality::Plus) => FrameConstraint::SpinPlus,
        Mode::SpinReduced4D(Chirality::Minus) => FrameConstraint::SpinMinus,
    };
    Ok(unstable_frame_exact(p, tag, c)?
        .iter()
        .map(|v| {
            let f = v.clone().map(|x| rat_to_f64(&x));
            let m = max_abs(&f);
            f.map(|x| x / m)
        })
        .collect())
}
