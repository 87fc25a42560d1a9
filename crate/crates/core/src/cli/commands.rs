use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use super::config::{Format, Functions, Grid, Mode, RunConfig};
use crate::error::{Error, Result};
use crate::expr;
use crate::jc::{wigner, Example, JcSystem};
use crate::star::{integrate, Moyal};
use crate::susy::{check_conditions, Report, SusyInputs, SusySystem};

/// What a command produced and whether every check in it passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    /// 0 on success, 1 when a verification failed.
    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

fn moyal_for(cfg: &RunConfig) -> Moyal {
    Moyal::new(cfg.effective_mode().hbar_mode())
}

fn explicit_inputs(w1: &str, w2: &str, p1: &str, p2: &str) -> Result<SusyInputs> {
    let parse = |key: &str, src: &str| {
        expr::parse(src).map_err(|e| Error::BadExpression { key: key.into(), line: 0, source: Box::new(e) })
    };
    Ok(SusyInputs::new(parse("W1", w1)?, parse("W2", w2)?, parse("P1", p1)?, parse("P2", p2)?))
}

fn example_system(cfg: &RunConfig, example: Example, k: &str) -> Result<JcSystem> {
    if cfg.effective_mode() != Mode::HbarOne {
        return Err(Error::InvalidArgument("the example systems use hbar_one mode".into()));
    }
    let k = expr::parse(k).map_err(|e| Error::BadExpression { key: "K".into(), line: 0, source: Box::new(e) })?;
    JcSystem::new(example, k)
}

/// Runs every identity that applies to the configured system.
pub fn verification_report(cfg: &RunConfig) -> Result<Report> {
    match &cfg.functions {
        Functions::Example { example, k } => example_system(cfg, *example, k)?.verify_all(),
        Functions::Explicit { w1, w2, p1, p2 } => {
            let m = moyal_for(cfg);
            let inputs = explicit_inputs(w1, w2, p1, p2)?;
            inputs.validate()?;
            let conditions = check_conditions(&m, &inputs)?;
            if !conditions.all_pass() {
                return Ok(conditions);
            }
            SusySystem::new(m, inputs)?.verify_all()
        }
    }
}

fn report_csv(r: &Report) -> String {
    let mut out = String::from("condition,pass,residual\n");
    for c in &r.checks {
        let _ = writeln!(out, "{},{},\"{}\"", c.condition, c.pass, c.residual.replace('"', "\"\""));
    }
    out
}

/// Verification report as JSON (or CSV); succeeds iff zero failures.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let r = verification_report(cfg)?;
    let output = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => r.to_json() + "\n",
        Format::Csv => report_csv(&r),
    };
    Ok(Outcome { output, success: r.all_pass() })
}

/// Eigenvalue table for all indices up to `nmax` (default 2).
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Outcome> {
    let (example, k) = cfg
        .example()
        .ok_or_else(|| Error::InvalidArgument("spectrum requires an example system".into()))?;
    let jc = example_system(cfg, example, k)?;
    let report = jc.verify_spectrum(cfg.nmax.unwrap_or(2))?;
    let output = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json() + "\n",
    };
    Ok(Outcome { output, success: report.failures() == 0 })
}

#[derive(Serialize)]
struct WignerJson<'a> {
    state: [i64; 3],
    slice: [f64; 2],
    normalization: String,
    function: String,
    q1: Vec<f64>,
    p1: Vec<f64>,
    /// `values[a][b]` is the sample at `(q1[a], p1[b])`.
    values: &'a [Vec<f64>],
}

/// Samples the scalar Wigner function of `(j, nA, nB)` on the `(q1, p1)`
/// grid at fixed `(q2, p2)`.
pub fn cmd_wigner(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.mode == Some(Mode::FormalHbar) {
        return Err(Error::InvalidArgument("Wigner functions need hbar_one mode".into()));
    }
    let state = cfg.state.unwrap_or([1, 0, 0]);
    if !(1..=2).contains(&state[0]) {
        return Err(Error::IndexOutOfRange(format!("j = {}", state[0])));
    }
    let n = [wigner::checked_index(state[1], "nA")?, wigner::checked_index(state[2], "nB")?];
    let grid = cfg.grid.unwrap_or(Grid { q1_min: -1.0, q1_max: 1.0, p1_min: -1.0, p1_max: 1.0, samples: 3 });
    let [q2, p2] = cfg.slice.unwrap_or([0.0, 0.0]);

    let f = wigner::diagonal_wigner(n)?;
    let total = integrate(&f)?;
    let normalization = format!("integral = {}", total.value);
    let qs: Vec<f64> = (0..grid.samples).map(|k| Grid::coordinate(grid.q1_min, grid.q1_max, k, grid.samples)).collect();
    let ps: Vec<f64> = (0..grid.samples).map(|k| Grid::coordinate(grid.p1_min, grid.p1_max, k, grid.samples)).collect();
    let values: Vec<Vec<f64>> =
        qs.iter().map(|&q1| ps.iter().map(|&p1| f.evaluate_f64([q1, q2, p1, p2]).re).collect()).collect();

    let output = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "# state = {},{},{}", state[0], state[1], state[2]);
            let _ = writeln!(out, "# slice = q2={q2},p2={p2}");
            let _ = writeln!(out, "# normalization = {normalization}");
            let _ = writeln!(out, "# function = {f}");
            out.push_str("q1,p1,value\n");
            for (a, q1) in qs.iter().enumerate() {
                for (b, p1) in ps.iter().enumerate() {
                    let _ = writeln!(out, "{q1},{p1},{}", values[a][b]);
                }
            }
            out
        }
        Format::Json => {
            let json = WignerJson {
                state,
                slice: [q2, p2],
                normalization,
                function: f.to_string(),
                q1: qs,
                p1: ps,
                values: &values,
            };
            serde_json::to_string_pretty(&json).expect("grid serializes") + "\n"
        }
    };
    Ok(Outcome { output, success: true })
}

/// Human-readable PASS/FAIL listing of the verification report.
pub fn cmd_report(cfg: &RunConfig, color: bool) -> Result<Outcome> {
    let r = verification_report(cfg)?;
    let paint = |pass: bool| match (pass, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    };
    let mut out = String::new();
    for c in &r.checks {
        if c.pass {
            let _ = writeln!(out, "{} {}", paint(true), c.condition);
        } else {
            let _ = writeln!(out, "{} {}: residual {}", paint(false), c.condition, c.residual);
        }
    }
    let _ = writeln!(out, "{} checks, {} failed", r.checks.len(), r.failures());
    Ok(Outcome { output: out, success: r.all_pass() })
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}
