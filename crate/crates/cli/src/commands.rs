use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use distort_core::distortion::{analyze, shadow, DistortionOptions, DEFAULT_TOL_ARGMAX};
use distort_core::generators::{
    apply_twist, make_comet, make_dragons_tooth, make_ngon, make_torus_knot, TwistSpec, DEFAULT_TORUS_RADII,
};
use distort_core::io::{format_curve, read_curve, write_curve, write_shadow_csv};
use distort_core::optimizer::{anneal, saturation_report, AnnealConfig};
use distort_core::verify::{ds_bound_suite, measure_lemma_suite};
use distort_core::{Error, PolygonalCurve};

use crate::{AnnealArgs, Cli, Command, ComputeArgs, GenerateArgs, Kind, SaturationArgs, VerifyCommand};

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

const THREADS_VAR: &str = "DISTORT_THREADS";

enum Failure {
    Usage(String),
    Io(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Failure::Io(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cli: Cli) -> u8 {
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Generate(a) => generate(a),
        Command::Compute(a) => compute(a),
        Command::Verify(v) => verify(v),
        Command::Anneal(a) => run_anneal(a),
        Command::Saturation(a) => saturation(a),
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            EXIT_IO
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            EXIT_VERIFY
        }
    }
}

fn configure_threads() -> Outcome {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR}={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn need<T>(v: Option<T>, flag: &str, kind: Kind) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{kind:?} needs --{flag}")))
}

fn reject(present: bool, flag: &str, kind: Kind) -> Outcome {
    if present {
        return Err(Failure::Usage(format!("--{flag} does not apply to {kind:?}")));
    }
    Ok(())
}

fn generate(a: GenerateArgs) -> Outcome {
    let k = a.kind;
    let curve = match k {
        Kind::Ngon => {
            for (p, f) in [(a.phi.is_some(), "phi"), (a.r.is_some(), "r"), (a.big_r.is_some(), "R")] {
                reject(p, f, k)?;
            }
            make_ngon(need(a.n, "n", k)?, a.radius.unwrap_or(1.0))?
        }
        Kind::Comet => {
            reject(a.n.is_some(), "n", k)?;
            make_comet(need(a.phi, "phi", k)?, a.segment_len.unwrap_or(1.0), a.arc_radius, a.arc_samples)?
        }
        Kind::DragonsTooth => {
            reject(a.n.is_some(), "n", k)?;
            make_dragons_tooth(need(a.phi, "phi", k)?, need(a.r, "r", k)?, need(a.big_r, "R", k)?, a.arc_samples)?
        }
        Kind::TorusKnot => {
            reject(a.phi.is_some(), "phi", k)?;
            let radii = (a.big_r.unwrap_or(DEFAULT_TORUS_RADII.0), a.r.unwrap_or(DEFAULT_TORUS_RADII.1));
            make_torus_knot(need(a.p, "p", k)?, need(a.q, "q", k)?, need(a.n, "n", k)?, radii)?
        }
    };
    let curve = match a.eps_twist {
        Some(eps) => {
            let spec = TwistSpec {
                loop_len: a.twist_loop,
                ..TwistSpec::new(eps)
            };
            apply_twist(&curve, a.twist_edge, &spec)?
        }
        None => curve,
    };
    match a.out {
        Some(path) => write_curve(&path, &curve)?,
        None => emit_stdout(&format_curve(&curve))?,
    }
    Ok(())
}

fn emit_stdout(text: &str) -> Outcome {
    std::io::stdout()
        .write_all(text.as_bytes())
        .map_err(|e| Failure::Io(e.to_string()))
}

/// Report envelope: version, command and an echo of the inputs ahead of the payload.
fn envelope(command: &str, inputs: Value, payload: Value) -> Value {
    let mut m = Map::new();
    m.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("inputs".into(), inputs);
    if let Value::Object(p) = payload {
        m.extend(p);
    } else {
        m.insert("result".into(), payload);
    }
    Value::Object(m)
}

fn write_json(path: Option<&Path>, v: &Value) -> Outcome {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Usage(e.to_string()))? + "\n";
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => emit_stdout(&text),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure::Usage(e.to_string()))
}

fn load(path: &Path) -> Result<PolygonalCurve, Failure> {
    read_curve(path).map_err(|e| match e {
        Error::Io(m) => Failure::Io(format!("{}: {m}", path.display())),
        other => Failure::Usage(format!("{}: {other}", path.display())),
    })
}

fn curve_echo(path: &Path, c: &PolygonalCurve) -> Value {
    json!({
        "path": path.display().to_string(),
        "closed": c.is_closed(),
        "vertices": c.vertex_count(),
        "length": c.length(),
    })
}

fn compute(a: ComputeArgs) -> Outcome {
    let curve = load(&a.curve)?;
    let opts = DistortionOptions {
        density: a.density,
        tol_argmax: a.tol_argmax.unwrap_or(DEFAULT_TOL_ARGMAX),
        thickness_b: a.b,
        drc_k: a.drc_k,
        ..DistortionOptions::default()
    };
    let report = analyze(&curve, &opts)?;
    if let Some(path) = &a.shadow_csv {
        let sh = shadow(&curve, report.sample_density)?;
        write_shadow_csv(path, &sh)?;
    }
    let inputs = json!({
        "curve": curve_echo(&a.curve, &curve),
        "density": a.density,
        "b": a.b,
        "drc_k": a.drc_k,
        "tol_argmax": opts.tol_argmax,
        "shadow_csv": a.shadow_csv.as_ref().map(|p| p.display().to_string()),
    });
    write_json(a.report.as_deref(), &envelope("compute", inputs, to_value(&report)?))
}

fn dump_counterexample(path: Option<PathBuf>, default: &str, v: &Value) -> Outcome {
    let path = path.unwrap_or_else(|| PathBuf::from(default));
    write_json(Some(&path), v)?;
    eprintln!("counterexample written to {}", path.display());
    Ok(())
}

fn verify(v: VerifyCommand) -> Outcome {
    match v {
        VerifyCommand::DsBound(a) => {
            let r = ds_bound_suite(a.trials, a.seed, a.max_edges)?;
            let inputs = json!({"trials": a.trials, "seed": a.seed, "max_edges": a.max_edges});
            let doc = envelope("verify ds-bound", inputs, to_value(&r)?);
            write_json(a.report.as_deref(), &doc)?;
            if r.passed() {
                Ok(())
            } else {
                dump_counterexample(a.counterexample, "ds_counterexample.json", &doc)?;
                Err(Failure::Verify(format!("{} of {} arcs exceed sec(κ/2)", r.violations, r.trials)))
            }
        }
        VerifyCommand::MeasureLemma(a) => {
            let r = measure_lemma_suite(a.trials, a.seed)?;
            let inputs = json!({"trials": a.trials, "seed": a.seed});
            let doc = envelope("verify measure-lemma", inputs, to_value(&r)?);
            write_json(a.report.as_deref(), &doc)?;
            if r.passed() {
                Ok(())
            } else {
                dump_counterexample(a.counterexample, "measure_counterexample.json", &doc)?;
                Err(Failure::Verify(format!(
                    "{} scale failures, {} of {} atomic inputs rejected",
                    r.failures, r.atomic_rejected, r.trials
                )))
            }
        }
    }
}

fn run_anneal(a: AnnealArgs) -> Outcome {
    let cfg = AnnealConfig::from_path(&a.config).map_err(|e| match e {
        Error::Io(m) => Failure::Io(format!("{}: {m}", a.config.display())),
        other => Failure::Usage(format!("{}: {other}", a.config.display())),
    })?;
    let seed = load(&a.curve)?;
    let out = anneal(&seed, &cfg)?;
    write_curve(&a.out, &out.best)?;
    out.trace.write_csv_path(&a.trace)?;
    let inputs = json!({
        "config": a.config.display().to_string(),
        "settings": to_value(&cfg)?,
        "curve": curve_echo(&a.curve, &seed),
        "out": a.out.display().to_string(),
        "trace": a.trace.display().to_string(),
    });
    let payload = json!({
        "initial_objective": out.initial_objective,
        "best_objective": out.best_objective,
        "best_length": out.best.length(),
        "steps": out.trace.records.len(),
        "accepted": out.trace.accepted_count(),
        "feasible": out.trace.records.iter().filter(|r| r.feasible).count(),
    });
    write_json(a.report.as_deref(), &envelope("anneal", inputs, payload))
}

fn saturation(a: SaturationArgs) -> Outcome {
    let curve = load(&a.curve)?;
    let r = saturation_report(&curve, a.kappa_min, a.eta, a.window)?;
    let inputs = json!({
        "curve": curve_echo(&a.curve, &curve),
        "eta": a.eta,
        "window": a.window,
        "kappa_min": a.kappa_min,
    });
    write_json(a.report.as_deref(), &envelope("saturation", inputs, to_value(&r)?))
}
