//! Command-line flags and the run configuration built from them.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spin7_core::aw_algebra::{normalize, AWParams, BundleTag};
use spin7_core::exact::{parse_rational, parse_real, Rat};
use spin7_core::shooting::{IntegratorConfig, Mode, ShootSpec, DEFAULT_EPSILON, DEFAULT_ETA_MAX};

use crate::exit::Failure;

#[derive(Parser, Debug)]
#[command(name = "spin7", version, about = "Cohomogeneity-one Spin(7) metrics on Aloff-Wallach bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fixed points of the flow with exact coordinates, spectra and tangency flags (JSON).
    CriticalPoints,
    /// Integrate one run and write its trajectory (CSV) or classification (JSON).
    Integrate {
        /// Also write the classification JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Classify one run, or a saved trajectory with --input (JSON).
    Classify {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Classify runs over directions (cos θ, sin θ) on the unit circle (CSV).
    Sweep {
        /// Number of directions.
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Single direction; requires --n 1.
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// Start of the arc (default 0).
        #[arg(long, allow_hyphen_values = true)]
        theta0: Option<String>,
        /// End of the arc (default π; directions with s2 < 0 start outside Z ≥ 0).
        #[arg(long, allow_hyphen_values = true)]
        theta1: Option<String>,
    },
    /// Metric functions a, b, c, f against t (CSV), from --input or a fresh run.
    Reconstruct {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Certify non-negativity of a resultant polynomial (JSON).
    Certify {
        /// `r` (q-slice resultant) or `rtilde` (reduced p-slice resultant).
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = spin7_core::polycert::DEFAULT_MAX_DEPTH)]
        max_depth: u32,
        /// Exclusion-ball radius around the known zeros (default 1/100).
        #[arg(long)]
        radius: Option<String>,
    },
    /// Run the built-in invariant checks.
    Verify,
}

#[derive(Args, Debug, Default)]
pub struct RunArgs {
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l: Option<String>,
    /// Bundle: k+l, k or l.
    #[arg(long, global = true)]
    pub bundle: Option<String>,
    /// Mode: ricci, spin+ or spin-. Defaults to the Spin(7) mode of the bundle.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s1: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s2: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s3: Option<String>,
    #[arg(long, global = true)]
    pub eps: Option<String>,
    #[arg(long, global = true)]
    pub eta_max: Option<String>,
    #[arg(long, global = true)]
    pub rel_tol: Option<String>,
    #[arg(long, global = true)]
    pub abs_tol: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Value of 1/trL at the first reconstructed sample.
    #[arg(long, global = true)]
    pub gauge: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn real(flag: &str, v: &Option<String>) -> Result<Option<f64>, Failure> {
    v.as_deref()
        .map(|s| parse_real(s).map_err(|e| usage(format!("--{flag}: {e}"))))
        .transpose()
}

pub fn rational(flag: &str, v: &str) -> Result<Rat, Failure> {
    parse_rational(v).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn integer(flag: &str, v: &str) -> Result<i64, Failure> {
    let r = rational(flag, v)?;
    if !r.is_integer() {
        return Err(usage(format!("--{flag} must be an integer, got {v}")));
    }
    r.to_integer().try_into().map_err(|_| usage(format!("--{flag} is out of range")))
}

/// Flags resolved into typed values.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: AWParams,
    pub bundle: BundleTag,
    pub mode: Mode,
    pub s: Option<[f64; 3]>,
    pub eps: f64,
    pub eta_max: f64,
    pub integrator: IntegratorConfig,
}

impl RunArgs {
    pub fn params(&self) -> Result<AWParams, Failure> {
        let k = self.k.as_deref().ok_or_else(|| usage("--k is required"))?;
        let l = self.l.as_deref().ok_or_else(|| usage("--l is required"))?;
        let (k, l) = (integer("k", k)?, integer("l", l)?);
        normalize(k, l).map_err(|e| usage(e.to_string()))
    }

    pub fn gauge(&self) -> Result<f64, Failure> {
        Ok(real("gauge", &self.gauge)?.unwrap_or(1.0))
    }

    pub fn config(&self) -> Result<RunConfig, Failure> {
        let params = self.params()?;
        let bundle = match &self.bundle {
            Some(b) => BundleTag::parse(b).map_err(|e| usage(e.to_string()))?,
            None => BundleTag::KplusL,
        };
        let mode = match &self.mode {
            Some(m) => Mode::parse(m).map_err(|e| usage(e.to_string()))?,
            None => Mode::spin_for(bundle),
        };
        let s = match (real("s1", &self.s1)?, real("s2", &self.s2)?) {
            (Some(a), Some(b)) => Some([a, b, real("s3", &self.s3)?.unwrap_or(0.0)]),
            (None, None) if self.s3.is_none() => None,
            _ => return Err(usage("--s1 and --s2 must be given together")),
        };
        let mut integrator = IntegratorConfig::default();
        if let Some(r) = real("rel-tol", &self.rel_tol)? {
            integrator.rel_tol = r;
        }
        if let Some(a) = real("abs-tol", &self.abs_tol)? {
            integrator.abs_tol = a;
        }
        Ok(RunConfig {
            params,
            bundle,
            mode,
            s,
            eps: real("eps", &self.eps)?.unwrap_or(DEFAULT_EPSILON),
            eta_max: real("eta-max", &self.eta_max)?.unwrap_or(DEFAULT_ETA_MAX),
            integrator,
        })
    }
}

impl RunConfig {
    /// Shooting spec; `fallback_s` is used when no direction was given.
    pub fn spec(&self, fallback_s: Option<[f64; 3]>) -> Result<ShootSpec, Failure> {
        let s = self
            .s
            .or(fallback_s)
            .ok_or_else(|| usage("--s1 and --s2 are required"))?;
        let mut spec = ShootSpec::new(self.params, self.bundle, self.mode, s).map_err(|e| usage(e.to_string()))?;
        spec.epsilon = self.eps;
        spec.eta_max = self.eta_max;
        spec.integrator = self.integrator;
        spec.validate().map_err(|e| usage(e.to_string()))?;
        Ok(spec)
    }
}
