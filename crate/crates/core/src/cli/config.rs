//! Run configuration: a small `key = value` format with `#` comments.
//!
//! ```text
//! # Example 1 with a constant coupling
//! example = 1
//! K = 0
//! nmax = 2
//! ```
//!
//! Recognized keys: `mode` (`formal_hbar` | `hbar_one`), `example` (1 | 2),
//! `K`, `W1`, `W2`, `P1`, `P2`, `nmax`, `state` (`j,nA,nB` or `nA,nB`),
//! `grid` (`q1min,q1max,p1min,p1max,n`), `slice` (`q2,p2`), `format`
//! (`csv` | `json`) and `out`.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr;
use crate::jc::Example;
use crate::star::{HbarMode, PhaseSpaceFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    FormalHbar,
    HbarOne,
}

impl Mode {
    pub fn hbar_mode(self) -> HbarMode {
        match self {
            Mode::FormalHbar => HbarMode::Formal,
            Mode::HbarOne => HbarMode::One,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mode::FormalHbar => "formal_hbar",
            Mode::HbarOne => "hbar_one",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Rectangular sample grid on the `(q1, p1)` plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub q1_min: f64,
    pub q1_max: f64,
    pub p1_min: f64,
    pub p1_max: f64,
    pub samples: usize,
}

impl Grid {
    pub fn parse(s: &str) -> Result<Grid> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidArgument(format!("grid must be q1min,q1max,p1min,p1max,n: got '{s}'"));
        if parts.len() != 5 {
            return Err(bad());
        }
        let f = |k: usize| parts[k].parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad);
        let grid = Grid {
            q1_min: f(0)?,
            q1_max: f(1)?,
            p1_min: f(2)?,
            p1_max: f(3)?,
            samples: parts[4].parse().map_err(|_| bad())?,
        };
        if grid.q1_max <= grid.q1_min || grid.p1_max <= grid.p1_min {
            return Err(Error::InvalidArgument("grid extent must be positive on both axes".into()));
        }
        if grid.samples < 2 {
            return Err(Error::InvalidArgument("grid needs at least 2 samples per axis".into()));
        }
        Ok(grid)
    }

    /// The `k`-th of `samples` equally spaced points of `[lo, hi]`.
    pub fn coordinate(lo: f64, hi: f64, k: usize, samples: usize) -> f64 {
        lo + (hi - lo) * k as f64 / (samples - 1) as f64
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.q1_min, self.q1_max, self.p1_min, self.p1_max, self.samples)
    }
}

/// Which functions define the system.
#[derive(Clone, Debug, PartialEq)]
pub enum Functions {
    /// Explicit `W1, W2, P1, P2` source texts; absent entries are zero.
    Explicit { w1: String, w2: String, p1: String, p2: String },
    Example { example: Example, k: String },
}

impl Default for Functions {
    fn default() -> Self {
        Functions::Explicit { w1: "0".into(), w2: "0".into(), p1: "0".into(), p2: "0".into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub functions: Functions,
    pub nmax: Option<u32>,
    /// `(j, nA, nB)` as given; validated when used.
    pub state: Option<[i64; 3]>,
    pub grid: Option<Grid>,
    /// Fixed `(q2, p2)` of the sampled slice.
    pub slice: Option<[f64; 2]>,
    pub format: Option<Format>,
    pub out: Option<String>,
}

impl RunConfig {
    /// `hbar_one` for the JC examples, `formal_hbar` otherwise, unless set.
    pub fn effective_mode(&self) -> Mode {
        self.mode.unwrap_or(match self.functions {
            Functions::Example { .. } => Mode::HbarOne,
            Functions::Explicit { .. } => Mode::FormalHbar,
        })
    }

    pub fn example(&self) -> Option<(Example, &str)> {
        match &self.functions {
            Functions::Example { example, k } => Some((*example, k.as_str())),
            Functions::Explicit { .. } => None,
        }
    }

    /// Switches to an example system, keeping `K` if one was set.
    pub fn set_example(&mut self, example: Example) {
        let k = match &self.functions {
            Functions::Example { k, .. } => k.clone(),
            Functions::Explicit { .. } => "0".into(),
        };
        self.functions = Functions::Example { example, k };
    }

    pub fn set_k(&mut self, k: &str) -> Result<()> {
        check_polynomial("K", 0, k)?;
        match &mut self.functions {
            Functions::Example { k: slot, .. } => {
                *slot = k.trim().to_string();
                Ok(())
            }
            Functions::Explicit { .. } => Err(Error::InvalidArgument("K requires an example system".into())),
        }
    }
}

/// Parses a `j,nA,nB` or `nA,nB` state (the latter on level 1).
pub fn parse_state(s: &str) -> Result<[i64; 3]> {
    let parts: Result<Vec<i64>> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Error::InvalidArgument(format!("bad state '{s}'"))))
        .collect();
    match parts?.as_slice() {
        [j, a, b] => Ok([*j, *a, *b]),
        [a, b] => Ok([1, *a, *b]),
        _ => Err(Error::InvalidArgument(format!("state must be j,nA,nB or nA,nB: got '{s}'"))),
    }
}

fn check_polynomial(key: &str, line: usize, src: &str) -> Result<PhaseSpaceFunction> {
    let f = expr::parse_at(src, line.max(1), 0)?;
    if !f.is_polynomial() || f.pi_power() != 0 {
        return Err(Error::BadExpression {
            key: key.to_string(),
            line,
            source: Box::new(Error::EnvelopeUnsupported),
        });
    }
    Ok(f)
}

/// Parses configuration text. Expression syntax errors are reported with
/// line and column in the configuration text.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut explicit: [Option<String>; 4] = Default::default();
    let mut example: Option<Example> = None;
    let mut k: Option<String> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let column = content.len() - content.trim_start().len() + 1;
            return Err(Error::Parse {
                line,
                column,
                token: content.trim().to_string(),
                message: "expected 'key = value'".into(),
            });
        };
        let key = content[..eq].trim();
        let value_raw = &content[eq + 1..];
        let value = value_raw.trim();
        let value_col = eq + 1 + (value_raw.len() - value_raw.trim_start().len());
        let invalid = |what: &str| Error::Parse {
            line,
            column: value_col + 1,
            token: value.to_string(),
            message: format!("invalid value for {key}: {what}"),
        };
        let expression = |key: &str| -> Result<String> {
            let f = expr::parse_at(value, line, value_col)?;
            if !f.is_polynomial() || f.pi_power() != 0 {
                return Err(Error::BadExpression {
                    key: key.to_string(),
                    line,
                    source: Box::new(Error::EnvelopeUnsupported),
                });
            }
            Ok(value.to_string())
        };
        match key {
            "mode" => {
                cfg.mode = Some(match value {
                    "formal_hbar" => Mode::FormalHbar,
                    "hbar_one" => Mode::HbarOne,
                    _ => return Err(invalid("expected formal_hbar or hbar_one")),
                })
            }
            "example" => {
                let n: i64 = value.parse().map_err(|_| invalid("expected 1 or 2"))?;
                example = Some(Example::from_number(n).map_err(|_| invalid("expected 1 or 2"))?);
            }
            "K" => k = Some(expression("K")?),
            "W1" => explicit[0] = Some(expression("W1")?),
            "W2" => explicit[1] = Some(expression("W2")?),
            "P1" => explicit[2] = Some(expression("P1")?),
            "P2" => explicit[3] = Some(expression("P2")?),
            "nmax" => cfg.nmax = Some(value.parse().map_err(|_| invalid("expected a nonnegative integer"))?),
            "state" => cfg.state = Some(parse_state(value).map_err(|e| invalid(&e.to_string()))?),
            "grid" => cfg.grid = Some(Grid::parse(value).map_err(|e| invalid(&e.to_string()))?),
            "slice" => {
                let parts: Vec<f64> = value.split(',').filter_map(|p| p.trim().parse().ok()).collect();
                match parts.as_slice() {
                    [q2, p2] if q2.is_finite() && p2.is_finite() => cfg.slice = Some([*q2, *p2]),
                    _ => return Err(invalid("expected q2,p2")),
                }
            }
            "format" => cfg.format = Some(Format::parse(value).ok_or_else(|| invalid("expected csv or json"))?),
            "out" => cfg.out = Some(value.to_string()),
            _ => return Err(Error::UnknownKey { key: key.to_string(), line }),
        }
    }

    let any_explicit = explicit.iter().any(Option::is_some);
    cfg.functions = match example {
        Some(example) => {
            if any_explicit {
                return Err(Error::InvalidArgument(
                    "example and explicit W1/W2/P1/P2 are mutually exclusive".into(),
                ));
            }
            Functions::Example { example, k: k.unwrap_or_else(|| "0".into()) }
        }
        None => {
            if k.is_some() {
                return Err(Error::InvalidArgument("K requires an example system".into()));
            }
            let [w1, w2, p1, p2] = explicit.map(|e| e.unwrap_or_else(|| "0".into()));
            Functions::Explicit { w1, w2, p1, p2 }
        }
    };
    Ok(cfg)
}

/// Renders a configuration that [`parse_config`] reads back unchanged.
pub fn serialize_config(cfg: &RunConfig) -> String {
    let mut out = String::new();
    if let Some(m) = cfg.mode {
        out.push_str(&format!("mode = {}\n", m.name()));
    }
    match &cfg.functions {
        Functions::Example { example, k } => {
            out.push_str(&format!("example = {}\nK = {k}\n", example.number()));
        }
        Functions::Explicit { w1, w2, p1, p2 } => {
            out.push_str(&format!("W1 = {w1}\nW2 = {w2}\nP1 = {p1}\nP2 = {p2}\n"));
        }
    }
    if let Some(n) = cfg.nmax {
        out.push_str(&format!("nmax = {n}\n"));
    }
    if let Some([j, a, b]) = cfg.state {
        out.push_str(&format!("state = {j},{a},{b}\n"));
    }
    if let Some(g) = cfg.grid {
        out.push_str(&format!("grid = {g}\n"));
    }
    if let Some([q2, p2]) = cfg.slice {
        out.push_str(&format!("slice = {q2},{p2}\n"));
    }
    if let Some(f) = cfg.format {
        out.push_str(&format!("format = {}\n", f.name()));
    }
    if let Some(o) = &cfg.out {
        out.push_str(&format!("out = {o}\n"));
    }
    out
}
