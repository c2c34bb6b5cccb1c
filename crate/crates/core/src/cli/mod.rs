//! Task configuration, dispatch and reports behind the `glab` binary.

mod grammar;
mod tasks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::chevalley::ChevalleyError;
use crate::ext::ExtError;
use crate::group::GroupError;
use crate::perm::PermError;
use crate::roots::RootError;
use crate::thick::ThickError;

pub use grammar::{parse_group_spec, parse_subset_spec, resolve_subset, SubsetSpec};
pub use tasks::TASKS;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("syntax error at {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Thick(#[from] ThickError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Root(#[from] RootError),
}

impl CliError {
    fn group_error(&self) -> Option<&GroupError> {
        match self {
            CliError::Group(e)
            | CliError::Thick(ThickError::Group(e))
            | CliError::Perm(PermError::Group(e))
            | CliError::Chevalley(ChevalleyError::Group(e))
            | CliError::Ext(ExtError::Group(e)) => Some(e),
            _ => None,
        }
    }

    /// 1 for a failed property, 2 for bad input, 3 when a size cap is hit.
    pub fn exit_code(&self) -> i32 {
        if matches!(self.group_error(), Some(GroupError::OrderCapExceeded { .. })) {
            return 3;
        }
        match self {
            CliError::Chevalley(ChevalleyError::SearchExhausted { .. }) => 1,
            CliError::Perm(PermError::IdentityFailed(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(CliError::Input(format!("unknown output format {s:?}"))),
        }
    }
}

/// One task invocation. The text form is one `key=value` per line; `set`
/// may repeat and unknown keys are kept as task-specific parameters.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TaskConfig {
    pub task: String,
    pub group: Option<String>,
    pub sets: Vec<String>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub p: Option<u32>,
    pub cap: Option<usize>,
    pub seed: u64,
    pub format: OutputFormat,
    pub params: BTreeMap<String, String>,
}


impl TaskConfig {
    pub fn new(task: &str) -> Self {
        TaskConfig {
            task: task.to_string(),
            ..Default::default()
        }
    }

    pub fn with_group(mut self, spec: &str) -> Self {
        self.group = Some(spec.to_string());
        self
    }

    pub fn with_set(mut self, spec: &str) -> Self {
        self.sets.push(spec.to_string());
        self
    }

    pub fn with_param(mut self, key: &str, value: &str) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.get(key).map(String::as_str)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = TaskConfig::default();
        let mut have_task = false;
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |msg: String| CliError::Config { line: line_no, msg };
            let (key, value) = trimmed.split_once('=').ok_or_else(|| err("expected key=value".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| v.parse::<usize>().map_err(|_| err(format!("{key} must be a non-negative integer")));
            match key {
                "task" => {
                    cfg.task = value.to_string();
                    have_task = true;
                }
                "group" => cfg.group = Some(value.to_string()),
                "set" => cfg.sets.push(value.to_string()),
                "n" => cfg.n = Some(num(value)?),
                "m" => cfg.m = Some(num(value)?),
                "p" => cfg.p = Some(value.parse().map_err(|_| err("p must be an integer".into()))?),
                "cap" => cfg.cap = Some(num(value)?),
                "seed" => cfg.seed = value.parse().map_err(|_| err("seed must be an integer".into()))?,
                "format" => cfg.format = value.parse().map_err(|e: CliError| err(e.to_string()))?,
                "" => return Err(err("empty key".into())),
                _ => {
                    if cfg.params.insert(key.to_string(), value.to_string()).is_some() {
                        return Err(err(format!("{key} given twice")));
                    }
                }
            }
        }
        if !have_task || cfg.task.is_empty() {
            return Err(CliError::Config {
                line: 0,
                msg: "missing task".into(),
            });
        }
        Ok(cfg)
    }
}

impl fmt::Display for TaskConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "task={}", self.task)?;
        if let Some(g) = &self.group {
            writeln!(f, "group={g}")?;
        }
        for s in &self.sets {
            writeln!(f, "set={s}")?;
        }
        for (k, v) in [("n", self.n), ("m", self.m), ("cap", self.cap)] {
            if let Some(v) = v {
                writeln!(f, "{k}={v}")?;
            }
        }
        if let Some(p) = self.p {
            writeln!(f, "p={p}")?;
        }
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "format={}", self.format)?;
        for (k, v) in &self.params {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Header and rows for CSV output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub(crate) struct TaskOutput {
    pub passed: bool,
    pub results: Value,
    pub witnesses: Value,
    pub table: Option<Table>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub toolkit_version: String,
    pub config: TaskConfig,
    pub seed: u64,
    pub passed: bool,
    pub results: Value,
    /// Witnesses are replayed through code-level multiplication before
    /// they are emitted.
    pub witnesses: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    /// The deterministic part of the report: results and witnesses.
    pub fn results_json(&self) -> String {
        serde_json::to_string(&serde_json::json!({
            "results": self.results,
            "witnesses": self.witnesses,
        }))
        .expect("json values serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let table = self
            .table
            .as_ref()
            .ok_or_else(|| CliError::Input(format!("task {} has no tabular output", self.config.task)))?;
        let esc = |s: &str| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut out = String::new();
        for row in std::iter::once(&table.header).chain(&table.rows) {
            out.push_str(&row.iter().map(|c| esc(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        Ok(out)
    }

    /// Report in the configured output format.
    pub fn render(&self) -> Result<String, CliError> {
        match self.config.format {
            OutputFormat::Json => Ok(self.to_json()),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

/// Runs one task.
pub fn run(config: &TaskConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let task = TASKS
        .iter()
        .find(|t| t.name == config.task)
        .ok_or_else(|| CliError::Input(format!("unknown task {:?}", config.task)))?;
    if config.format == OutputFormat::Csv && !task.tabular {
        return Err(CliError::Input(format!("task {} has no CSV form", task.name)));
    }
    let out = (task.run)(config)?;
    let mut timings = BTreeMap::new();
    timings.insert("total".to_string(), start.elapsed().as_secs_f64() * 1e3);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        toolkit_version: TOOLKIT_VERSION.to_string(),
        config: config.clone(),
        seed: config.seed,
        passed: out.passed,
        results: out.results,
        witnesses: out.witnesses,
        table: out.table,
        timings_ms: timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let cfg = TaskConfig::new("thick-analyze")
            .with_group("Cyc(12)")
            .with_set("arc(1)")
            .with_param("sigma", "(1,2,3)");
        let text = cfg.to_string();
        assert_eq!(TaskConfig::parse(&text).unwrap(), cfg);
        assert!(matches!(TaskConfig::parse("group=Cyc(3)"), Err(CliError::Config { .. })));
        assert!(matches!(TaskConfig::parse("task=x\nn=abc"), Err(CliError::Config { line: 2, .. })));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::Group(GroupError::OrderCapExceeded { cap: 5 }).exit_code(), 3);
        assert_eq!(
            CliError::Thick(ThickError::Group(GroupError::OrderCapExceeded { cap: 5 })).exit_code(),
            3
        );
        let e = ChevalleyError::SearchExhausted {
            tried: 1,
            exhaustive: true,
        };
        assert_eq!(CliError::Chevalley(e).exit_code(), 1);
    }

    #[test]
    fn unknown_task() {
        assert!(matches!(run(&TaskConfig::new("nope")), Err(CliError::Input(_))));
    }
}
