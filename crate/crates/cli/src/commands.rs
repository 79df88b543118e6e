//! One function per subcommand; each returns the process exit code.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use spin7_core::aw_algebra::bundle;
use spin7_core::critical_points::{catalog, eigen, CpLabel};
use spin7_core::exact::{parse_real, rat, rat_to_string, Rat};
use spin7_core::polycert::{
    ball, certify_nonneg, q_resultant, rtilde, rtilde_zeros, CertStatus, Exclusion, RatBox,
};
use spin7_core::shooting::io::{classification_json, read_trajectory_csv, write_metric_csv, write_trajectory_csv};
use spin7_core::shooting::{integrate, reconstruct_metric, sweep, OutcomeKind, ShootSpec, Trajectory};

use crate::config::{rational, Format, RunArgs};
use crate::exit::{self, Failure};

type CmdResult = Result<u8, Failure>;

const COORD_NAMES: [&str; 8] = ["X1", "X2", "X3", "X4", "Z1", "Z2", "Z3", "Z4"];

/// Writes to `--out` when given, otherwise to stdout.
fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(bytes).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn write_json(path: &Path, v: &Value) -> Result<(), Failure> {
    std::fs::write(path, format!("{}\n", pretty(v))).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values built here always serialize")
}

fn outcome_code(kind: OutcomeKind) -> u8 {
    match kind {
        OutcomeKind::Alc | OutcomeKind::Ac => exit::OK,
        OutcomeKind::Undetermined | OutcomeKind::Escape => exit::NOT_CONVERGED,
    }
}

/// Exit code for a finished run: drift or integrator failure count as non-convergence.
fn run_code(traj: &Trajectory) -> u8 {
    use spin7_core::shooting::EventKind;
    if traj.has_event(EventKind::Drift) || traj.has_event(EventKind::StiffFailure) {
        return exit::NOT_CONVERGED;
    }
    outcome_code(traj.outcome.kind)
}

pub fn critical_points(args: &RunArgs) -> CmdResult {
    let p = args.params()?;
    let cat = catalog(&p)?;
    let mut out = Vec::new();
    for cp in &cat.points {
        let coords: serde_json::Map<String, Value> =
            COORD_NAMES.iter().zip(cp.coords.display()).map(|(n, v)| (n.to_string(), json!(v))).collect();
        let mut entry = json!({
            "label": cp.label.name(),
            "coords": coords,
            "exact": cp.coords.is_exact(),
            "field_residual": cp.field_residual(&p),
        });
        if let CpLabel::P0(tag) = cp.label {
            entry["bundle"] = json!(tag.name());
            entry["bundle_order"] = json!(bundle(&p, tag)?.order);
        }
        match eigen(&p, cp) {
            Ok(e) => {
                entry["eigenvalues"] = json!(e.eigenvalues);
                entry["tangency"] = json!(e.tangency_flags);
            }
            Err(err) => entry["eigen_error"] = json!(err.to_string()),
        }
        out.push(entry);
    }
    for f in &cat.families {
        out.push(json!({
            "label": f.label.name(),
            "family": true,
            "dimension": f.dimension,
            "description": f.description,
        }));
    }
    for note in &cat.notes {
        eprintln!("note: {note}");
    }
    emit(&args.out, format!("{}\n", pretty(&Value::Array(out))).as_bytes())?;
    Ok(exit::OK)
}

fn run_one(args: &RunArgs) -> Result<Trajectory, Failure> {
    let spec = args.config()?.spec(None)?;
    integrate(&spec).map_err(Failure::from)
}

pub fn integrate_cmd(args: &RunArgs, json_path: &Option<PathBuf>) -> CmdResult {
    let traj = run_one(args)?;
    let class = classification_json(&traj);
    match args.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut buf = Vec::new();
            write_trajectory_csv(&traj, &mut buf)?;
            emit(&args.out, &buf)?;
        }
        Format::Json => emit(&args.out, format!("{}\n", pretty(&class)).as_bytes())?,
    }
    if let Some(path) = json_path {
        write_json(path, &class)?;
    }
    Ok(run_code(&traj))
}

/// Spec for commands that read a saved trajectory: the direction only labels the output.
fn file_spec(args: &RunArgs) -> Result<ShootSpec, Failure> {
    let cfg = args.config()?;
    cfg.spec(Some([1.0, 0.0, 0.0]))
}

fn load(args: &RunArgs, path: &Path) -> Result<Trajectory, Failure> {
    let spec = file_spec(args)?;
    let f = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    read_trajectory_csv(spec, BufReader::new(f)).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn classify_cmd(args: &RunArgs, input: &Option<PathBuf>) -> CmdResult {
    let traj = match input {
        Some(path) => load(args, path)?,
        None => run_one(args)?,
    };
    let mut class = classification_json(&traj);
    if input.is_some() {
        class["s"] = Value::Null;
        class["source"] = json!(input.as_ref().map(|p| p.display().to_string()));
    }
    emit(&args.out, format!("{}\n", pretty(&class)).as_bytes())?;
    Ok(if input.is_some() { outcome_code(traj.outcome.kind) } else { run_code(&traj) })
}

pub fn sweep_cmd(
    args: &RunArgs,
    n: usize,
    theta: &Option<String>,
    theta0: &Option<String>,
    theta1: &Option<String>,
) -> CmdResult {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let angle = |flag: &str, v: &Option<String>| {
        v.as_deref().map(|s| parse_real(s).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))).transpose()
    };
    let thetas: Vec<f64> = match angle("theta", theta)? {
        Some(t) => {
            if n != 1 || theta0.is_some() || theta1.is_some() {
                return Err(Failure::Usage("--theta selects a single direction and needs --n 1".into()));
            }
            vec![t]
        }
        None => {
            let a = angle("theta0", theta0)?.unwrap_or(0.0);
            let b = angle("theta1", theta1)?.unwrap_or(std::f64::consts::PI);
            (0..n).map(|j| a + (j as f64 + 0.5) / n as f64 * (b - a)).collect()
        }
    };
    let grid: Vec<[f64; 3]> = thetas.iter().map(|t| [t.cos(), t.sin(), 0.0]).collect();
    let base = args.config()?.spec(Some(grid[0]))?;
    let rows = sweep(&base, &grid)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theta", "s1", "s2", "outcome", "limit_point", "eta_decision"]).map_err(csv_io)?;
    let mut any_ok = false;
    for (t, row) in thetas.iter().zip(&rows) {
        let (outcome, limit, eta) = match &row.outcome {
            Ok(a) => {
                any_ok = true;
                (a.kind.name().to_string(), a.limit_point.map(|l| l.name()).unwrap_or_default(), format!("{:.6}", a.eta_at_decision))
            }
            Err(e) => {
                eprintln!("theta = {t}: {e}");
                ("error".to_string(), String::new(), String::new())
            }
        };
        let rec = [format!("{t:.17e}"), format!("{:.17e}", row.s[0]), format!("{:.17e}", row.s[1]), outcome, limit, eta];
        w.write_record(&rec).map_err(csv_io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    emit(&args.out, &bytes)?;
    Ok(if any_ok { exit::OK } else { exit::FAILURE })
}

fn csv_io(e: csv::Error) -> Failure {
    Failure::Io(e.to_string())
}

pub fn reconstruct_cmd(args: &RunArgs, input: &Option<PathBuf>) -> CmdResult {
    let traj = match input {
        Some(path) => load(args, path)?,
        None => run_one(args)?,
    };
    let profile = reconstruct_metric(&traj, args.gauge()?)?;
    let mut buf = Vec::new();
    write_metric_csv(&profile, &mut buf)?;
    emit(&args.out, &buf)?;
    Ok(exit::OK)
}

pub fn certify_cmd(args: &RunArgs, target: &str, max_depth: u32, radius: &Option<String>) -> CmdResult {
    let radius: Rat = match radius {
        Some(r) => rational("radius", r)?,
        None => rat(1, 100),
    };
    let exclusion = |c: &[Rat]| -> Exclusion {
        let mut b = ball(c);
        b.radius = radius.clone();
        b
    };
    let (f, bx, balls) = match target.trim().to_ascii_lowercase().as_str() {
        "r" => {
            let p = spin7_core::normalize(1, 0).expect("valid pair");
            let bx = RatBox::new(vec![rat(0, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 1)], vec![false; 2], vec![false; 2])?;
            (q_resultant(&p), bx, vec![exclusion(&[rat(0, 1), rat(1, 1)])])
        }
        "rtilde" => {
            let p = args.params()?;
            let balls = rtilde_zeros(&p).iter().map(|z| exclusion(z)).collect();
            (rtilde(&p)?, RatBox::unit(3), balls)
        }
        other => return Err(Failure::Usage(format!("unknown target {other:?}; expected r or rtilde"))),
    };
    let cert = certify_nonneg(&f, &bx, &balls, max_depth)?;
    let mut v = cert.to_json();
    v["target"] = json!(target);
    v["box"] = json!({
        "lo": bx.lo.iter().map(rat_to_string).collect::<Vec<_>>(),
        "hi": bx.hi.iter().map(rat_to_string).collect::<Vec<_>>(),
    });
    emit(&args.out, format!("{}\n", pretty(&v)).as_bytes())?;
    Ok(match cert.status {
        CertStatus::NonNegative => exit::OK,
        CertStatus::CounterexampleFound { .. } => exit::COUNTEREXAMPLE,
        CertStatus::Inconclusive { .. } => exit::INCONCLUSIVE,
    })
}
