use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use tropical_rb::{Error, ErrorKind, Result};

use crate::config::RunConfig;

/// Version stamped into golden fixtures; bump when report layouts change.
pub const FIXTURE_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CERTIFICATION: i32 = 4;
pub const EXIT_CAP: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e.kind() {
        ErrorKind::Parse => EXIT_PARSE,
        ErrorKind::Domain => EXIT_DOMAIN,
        ErrorKind::Certification => EXIT_CERTIFICATION,
        ErrorKind::Cap => EXIT_CAP,
    }
}

/// What a subcommand hands back: its result and whether every check it ran passed.
pub struct Outcome {
    pub result: Value,
    pub oracles: Vec<&'static str>,
    pub checks_passed: bool,
}

impl Outcome {
    pub fn new(result: impl Serialize, oracles: Vec<&'static str>, checks_passed: bool) -> Result<Outcome> {
        let result = serde_json::to_value(result).map_err(|e| Error::Parse(format!("cannot serialize report: {e}")))?;
        Ok(Outcome { result, oracles, checks_passed })
    }
}

#[derive(Serialize)]
pub struct Report<'a> {
    pub command: &'a str,
    pub inputs: Value,
    pub config: &'a RunConfig,
    pub oracles: Vec<&'static str>,
    pub result: Value,
    pub checks_passed: bool,
    pub exit_status: i32,
}

impl Report<'_> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

fn fixture(report: &Report<'_>) -> Value {
    json!({ "fixture_version": FIXTURE_VERSION, "report": report })
}

pub fn write_golden(path: &Path, report: &Report<'_>) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("cannot create {}: {e}", dir.display())))?;
    }
    let text = serde_json::to_string_pretty(&fixture(report)).expect("reports serialize") + "\n";
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

/// Compares a report with a stored fixture; any difference is a certification failure.
pub fn check_golden(path: &Path, report: &Report<'_>) -> Result<()> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let stored: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("fixture {}: {e}", path.display())))?;
    let version = stored.get("fixture_version").and_then(Value::as_u64);
    if version != Some(u64::from(FIXTURE_VERSION)) {
        return Err(Error::Certification(format!(
            "fixture {} has version {version:?}, expected {FIXTURE_VERSION}",
            path.display()
        )));
    }
    // Parse the fresh report from text too, so both sides see the same float parsing.
    let fresh: Value = serde_json::from_str(&fixture(report).to_string()).expect("reports serialize");
    if let Some(at) = first_difference(&stored["report"], &fresh["report"], String::new()) {
        return Err(Error::Certification(format!("report differs from fixture {} at {at}", path.display())));
    }
    Ok(())
}

fn first_difference(a: &Value, b: &Value, at: String) -> Option<String> {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let keys: std::collections::BTreeSet<&String> = x.keys().chain(y.keys()).collect();
            keys.into_iter().find_map(|k| match (x.get(k), y.get(k)) {
                (Some(u), Some(v)) => first_difference(u, v, format!("{at}/{k}")),
                _ => Some(format!("{at}/{k}")),
            })
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            x.iter().zip(y).enumerate().find_map(|(i, (u, v))| first_difference(u, v, format!("{at}/{i}")))
        }
        _ if a == b => None,
        _ => Some(if at.is_empty() { "/".into() } else { at }),
    }
}
