//! Trajectories from P₀ along the unstable frame: integration, ω-limit
//! classification, metric reconstruction, sweeps and file output.

pub mod integrator;
pub mod io;
pub mod reconstruct;
pub mod run;
pub mod sweep;
pub mod system;

pub use integrator::IntegratorConfig;
pub use reconstruct::{reconstruct_metric, MetricProfile, MetricRow};
pub use run::{
    boundary_tangent_s, classify, classify_samples, initial_state, integrate, prepare, Asymptotics, BoundaryMode,
    ClassifyConfig, Event, EventKind, LimitSet, Mode, OutcomeKind, ResidualNorms, Sample, ShootSpec, Trajectory,
    DEFAULT_EPSILON, DEFAULT_ETA_MAX, DEFAULT_SAMPLE_STEP,
};
pub use sweep::{quadrant_grid, sweep, SweepPoint};
pub use system::BoundaryCurve;
