//! Golden-file regression corpus: `NAME.cfg` job files next to `NAME.json`
//! expected reports.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::Value;

use crate::{run_job, JobConfig};

pub const DEFAULT_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("corpus setup: {0}")]
    Setup(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Output differs from the golden file; the path locates the first
    /// difference.
    Mismatch {
        path: String,
    },
    MissingGolden,
    Blessed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub name: String,
    pub status: Status,
    pub output: String,
}

impl FixtureOutcome {
    pub fn line(&self) -> String {
        match &self.status {
            Status::Pass => format!("PASS {}", self.name),
            Status::Blessed => format!("BLESS {}", self.name),
            Status::MissingGolden => {
                format!("FAIL {}: missing golden {}.json", self.name, self.name)
            }
            Status::Mismatch { path } => format!("FAIL {}: first divergence at {path}", self.name),
        }
    }

    pub fn ok(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Blessed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSummary {
    pub outcomes: Vec<FixtureOutcome>,
}

impl CorpusSummary {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(FixtureOutcome::ok)
    }

    pub fn render(&self) -> String {
        let mut s: String = self.outcomes.iter().map(|o| o.line() + "\n").collect();
        let failed = self.outcomes.iter().filter(|o| !o.ok()).count();
        s.push_str(&format!(
            "{} fixtures, {} failed\n",
            self.outcomes.len(),
            failed
        ));
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub sequential: bool,
    pub bless: bool,
}

/// The JSON a fixture produces: the report, or the error document if the
/// job fails.
pub fn fixture_output(cfg_text: &str) -> String {
    let result = JobConfig::from_text(cfg_text).and_then(|cfg| run_job(&cfg));
    match result {
        Ok(doc) => doc.to_json(),
        Err(e) => e.document().to_json(),
    }
}

pub fn fixtures(dir: &Path) -> Result<Vec<PathBuf>, CorpusError> {
    let entries = fs::read_dir(dir)
        .map_err(|e| CorpusError::Setup(format!("cannot read {}: {e}", dir.display())))?;
    let mut out: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cfg"))
        .collect();
    if out.is_empty() {
        return Err(CorpusError::Setup(format!(
            "no .cfg fixtures in {}",
            dir.display()
        )));
    }
    out.sort();
    Ok(out)
}

fn run_one(path: &Path, bless: bool) -> Result<FixtureOutcome, CorpusError> {
    let name = path
        .file_stem()
        .unwrap_or_default()
        .to_string_lossy()
        .into_owned();
    let text = fs::read_to_string(path)
        .map_err(|e| CorpusError::Setup(format!("cannot read {}: {e}", path.display())))?;
    let output = fixture_output(&text);
    let golden_path = path.with_extension("json");
    if bless {
        fs::write(&golden_path, &output).map_err(|e| {
            CorpusError::Setup(format!("cannot write {}: {e}", golden_path.display()))
        })?;
        return Ok(FixtureOutcome {
            name,
            status: Status::Blessed,
            output,
        });
    }
    let status = match fs::read_to_string(&golden_path) {
        Err(_) => Status::MissingGolden,
        Ok(golden) if golden == output => Status::Pass,
        Ok(golden) => Status::Mismatch {
            path: first_divergence(&golden, &output),
        },
    };
    Ok(FixtureOutcome {
        name,
        status,
        output,
    })
}

pub fn run_corpus(dir: &Path, opts: RunOptions) -> Result<CorpusSummary, CorpusError> {
    let paths = fixtures(dir)?;
    let outcomes: Result<Vec<_>, _> = if opts.sequential {
        paths.iter().map(|p| run_one(p, opts.bless)).collect()
    } else {
        // collect() on an indexed parallel iterator preserves input order
        paths.par_iter().map(|p| run_one(p, opts.bless)).collect()
    };
    Ok(CorpusSummary {
        outcomes: outcomes?,
    })
}

/// JSON-pointer-like path of the first difference between two documents,
/// or `$` with a byte offset if either fails to parse or they differ only
/// in formatting.
pub fn first_divergence(expected: &str, actual: &str) -> String {
    match (
        serde_json::from_str::<Value>(expected),
        serde_json::from_str::<Value>(actual),
    ) {
        (Ok(a), Ok(b)) => value_divergence(&a, &b, "$".to_string())
            .unwrap_or_else(|| byte_divergence(expected, actual)),
        _ => byte_divergence(expected, actual),
    }
}

fn byte_divergence(a: &str, b: &str) -> String {
    let at = a
        .bytes()
        .zip(b.bytes())
        .position(|(x, y)| x != y)
        .unwrap_or(a.len().min(b.len()));
    format!("$ (byte {at})")
}

fn value_divergence(a: &Value, b: &Value, path: String) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            keys.into_iter().find_map(|k| match (x.get(k), y.get(k)) {
                (Some(u), Some(v)) => value_divergence(u, v, format!("{path}.{k}")),
                _ => Some(format!("{path}.{k}")),
            })
        }
        (Value::Array(x), Value::Array(y)) => x
            .iter()
            .zip(y)
            .enumerate()
            .find_map(|(i, (u, v))| value_divergence(u, v, format!("{path}[{i}]")))
            .or_else(|| (x.len() != y.len()).then(|| format!("{path}[{}]", x.len().min(y.len())))),
        _ => (a != b).then_some(path),
    }
}
