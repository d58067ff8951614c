//! Flat `key = value` run configuration with one `[section]` per run.
//!
//! Keys before the first section header are shared defaults; section keys
//! override them, and command-line flags override both. Unknown keys are
//! rejected so a typo fails loudly instead of silently running defaults.

use std::collections::BTreeMap;
use std::path::PathBuf;

use asdm_core::suite::fixture_with;
use asdm_core::{Fixture, FixtureOptions, Point, SolverParams, StepRule};

use crate::error::CliError;

const KEYS: &[&str] = &[
    "problem", "solver", "rule", "beta", "eps0", "v", "grad_tol", "max_iters", "i_cap", "x0",
    "seed", "output", "format", "dim", "spectrum",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Asdm,
    FixedStep,
    ClassicArmijo,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Asdm => "asdm",
            Solver::FixedStep => "fixed_step",
            Solver::ClassicArmijo => "classic_armijo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// One run, before problem resolution: a label plus raw key/value pairs.
#[derive(Clone, Debug, Default)]
pub struct RawRun {
    pub label: String,
    pub kv: BTreeMap<String, String>,
}

impl RawRun {
    pub fn set(&mut self, key: &str, value: String) {
        self.kv.insert(key.to_string(), value);
    }
}

/// A fully resolved run. `params.start` already reflects `x0` or the
/// fixture default.
pub struct RunSpec {
    pub label: String,
    pub problem: String,
    pub solver: Solver,
    pub params: SolverParams,
    pub options: FixtureOptions,
    pub output: Option<PathBuf>,
    pub format: Format,
}

pub fn parse_config(text: &str) -> Result<Vec<RawRun>, CliError> {
    let mut defaults: BTreeMap<String, String> = BTreeMap::new();
    let mut sections: Vec<RawRun> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| CliError::Config(format!("line {lineno}: unclosed section header")))?
                .trim();
            if name.is_empty() {
                return Err(CliError::Config(format!("line {lineno}: empty section name")));
            }
            if sections.iter().any(|s| s.label == name) {
                return Err(CliError::Config(format!(
                    "line {lineno}: duplicate section `{name}`"
                )));
            }
            sections.push(RawRun {
                label: name.to_string(),
                kv: defaults.clone(),
            });
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("line {lineno}: expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KEYS.contains(&key) {
            return Err(CliError::Config(format!(
                "line {lineno}: unknown key `{key}` (known: {})",
                KEYS.join(", ")
            )));
        }
        match sections.last_mut() {
            Some(section) => {
                section.kv.insert(key.to_string(), value.to_string());
            }
            None => {
                defaults.insert(key.to_string(), value.to_string());
            }
        }
    }
    if sections.is_empty() {
        sections.push(RawRun {
            label: "run".to_string(),
            kv: defaults,
        });
    }
    Ok(sections)
}

fn parse_f64(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("key `{key}`: `{value}` is not a number")))
}

fn parse_int<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("key `{key}`: `{value}` is not an integer")))
}

fn parse_floats(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    value
        .split(',')
        .map(|part| parse_f64(key, part.trim()))
        .collect()
}

fn parse_solver(value: &str) -> Result<Solver, CliError> {
    let folded: String = value
        .chars()
        .filter(|c| *c != '_' && *c != '-')
        .collect::<String>()
        .to_lowercase();
    match folded.as_str() {
        "asdm" => Ok(Solver::Asdm),
        "fixedstep" => Ok(Solver::FixedStep),
        "classicarmijo" => Ok(Solver::ClassicArmijo),
        _ => Err(CliError::Config(format!(
            "key `solver`: `{value}` is not one of ASDM, FixedStep, ClassicArmijo"
        ))),
    }
}

fn parse_rule(value: &str) -> Result<StepRule, CliError> {
    match value {
        "1" => Ok(StepRule::Rule1),
        "2" => Ok(StepRule::Rule2),
        _ => Err(CliError::Config(format!(
            "key `rule`: `{value}` is not 1 or 2"
        ))),
    }
}

fn parse_format(value: &str) -> Result<Format, CliError> {
    match value.to_lowercase().as_str() {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(CliError::Config(format!(
            "key `format`: `{value}` is not csv or json"
        ))),
    }
}

/// Resolves raw keys into a runnable spec plus its problem fixture.
/// Parameter bounds are not checked here; the solver validates them so the
/// error text names the violated requirement.
pub fn resolve(raw: &RawRun) -> Result<(RunSpec, Fixture), CliError> {
    let problem = raw
        .kv
        .get("problem")
        .ok_or_else(|| CliError::Config(format!("run `{}`: missing key `problem`", raw.label)))?
        .clone();
    let mut options = FixtureOptions::default();
    if let Some(v) = raw.kv.get("dim") {
        options.dim = Some(parse_int("dim", v)?);
    }
    if let Some(v) = raw.kv.get("spectrum") {
        options.spectrum = Some(parse_floats("spectrum", v)?);
    }
    let fixture = fixture_with(&problem, &options)?;

    let start = match raw.kv.get("x0") {
        Some(v) => Point::new(parse_floats("x0", v)?),
        None => fixture.default_start.clone(),
    };
    let mut params = SolverParams::new(start);
    if let Some(v) = raw.kv.get("rule") {
        params.rule = parse_rule(v)?;
    }
    if let Some(v) = raw.kv.get("beta") {
        params.beta = parse_f64("beta", v)?;
    }
    if let Some(v) = raw.kv.get("eps0") {
        params.eps0 = parse_f64("eps0", v)?;
    }
    if let Some(v) = raw.kv.get("v") {
        params.v = parse_f64("v", v)?;
    }
    if let Some(v) = raw.kv.get("grad_tol") {
        params.grad_tol = parse_f64("grad_tol", v)?;
    }
    if let Some(v) = raw.kv.get("max_iters") {
        params.max_iters = parse_int("max_iters", v)?;
    }
    if let Some(v) = raw.kv.get("i_cap") {
        params.i_cap = parse_int("i_cap", v)?;
    }
    if let Some(v) = raw.kv.get("seed") {
        params.seed = parse_int("seed", v)?;
    }

    let spec = RunSpec {
        label: raw.label.clone(),
        problem,
        solver: raw
            .kv
            .get("solver")
            .map(|v| parse_solver(v))
            .transpose()?
            .unwrap_or(Solver::Asdm),
        params,
        options,
        output: raw.kv.get("output").map(PathBuf::from),
        format: raw
            .kv
            .get("format")
            .map(|v| parse_format(v))
            .transpose()?
            .unwrap_or(Format::Json),
    };
    Ok((spec, fixture))
}
