//! Batch drivers for the lattice, building, strata and GGP crates with
//! deterministic JSON reports and a content-addressed result cache.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ggp_intersect::GgError;
use padic_forms::PfError;
use quadspace_fq::{Budget, QsError};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use sp_building::SbError;
use strata_count::ScError;

pub mod commands;
pub mod criteria;

pub use criteria::{determinism, run_criterion, verify_all, CriterionResult, VerifyReport};

pub const MAX_P: u32 = 13;
pub const MAX_RADIUS: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Invalid(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<QsError> for CliError {
    fn from(e: QsError) -> Self {
        match e {
            QsError::ResourceLimit(s) => CliError::Resource(s),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<PfError> for CliError {
    fn from(e: PfError) -> Self {
        match e {
            PfError::ResourceLimit(s) => CliError::Resource(s),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<SbError> for CliError {
    fn from(e: SbError) -> Self {
        match e {
            SbError::ResourceLimit(s) => CliError::Resource(s),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<ScError> for CliError {
    fn from(e: ScError) -> Self {
        match e {
            ScError::ResourceLimit(s) => CliError::Resource(s),
            ScError::InvalidInput(s) => CliError::Invalid(s),
        }
    }
}

impl From<GgError> for CliError {
    fn from(e: GgError) -> Self {
        match e {
            GgError::ResourceLimit(s) => CliError::Resource(s),
            GgError::InternalInvariantViolation(s) => CliError::Mismatch(s),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<ffpoly::FfError> for CliError {
    fn from(e: ffpoly::FfError) -> Self {
        CliError::from(QsError::from(e))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    QuadCounts,
    Vrt,
    Building,
    StrataS { m: usize },
    StrataFermat,
    StrataKlingen,
    StrataLocalModel,
    StrataEven { m: usize },
    StrataHypersurface { expr: String, nvars: usize },
    GgpReport { poly: Vec<i64> },
    GgpCatalog { degrees: Vec<usize> },
    VerifyAll,
}

impl Command {
    pub fn label(&self) -> &'static str {
        match self {
            Command::QuadCounts => "quad-counts",
            Command::Vrt => "vrt",
            Command::Building => "building",
            Command::StrataS { .. } => "strata-s",
            Command::StrataFermat => "strata-fermat",
            Command::StrataKlingen => "strata-klingen",
            Command::StrataLocalModel => "strata-local-model",
            Command::StrataEven { .. } => "strata-even",
            Command::StrataHypersurface { .. } => "strata-hypersurface",
            Command::GgpReport { .. } => "ggp-report",
            Command::GgpCatalog { .. } => "ggp-catalog",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub p: u32,
    pub k: u32,
    pub radius: u32,
    pub budget: Budget,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, p: 3, k: 1, radius: 1, budget: Budget::default(), cache_dir: None, format: Format::Json }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let p = self.p;
        if p == 2 || !ffpoly::is_prime(p as u64) {
            return Err(CliError::Invalid(format!("p = {p} is not an odd prime")));
        }
        if p > MAX_P {
            return Err(CliError::Invalid(format!("p = {p} exceeds {MAX_P}")));
        }
        if self.k == 0 {
            return Err(CliError::Invalid("k must be positive".into()));
        }
        if !(1..=MAX_RADIUS).contains(&self.radius) {
            return Err(CliError::Invalid(format!("radius must be between 1 and {MAX_RADIUS}")));
        }
        if self.budget.max_subspaces == 0 {
            return Err(CliError::Invalid("subspace budget must be positive".into()));
        }
        Ok(())
    }

    /// Everything that can change a result; output format and cache
    /// location are left out.
    pub fn canonical(&self) -> Value {
        json!({
            "command": self.command,
            "p": self.p,
            "k": self.k,
            "radius": self.radius,
            "budget": self.budget,
        })
    }

    pub fn cache_key(&self) -> String {
        let text = serde_json::to_string(&self.canonical()).expect("config serializes");
        hex::encode(Sha256::digest(format!("{}\n{text}", self.command.label()).as_bytes()))
    }
}

/// Plain JSON files under `<dir>/<command>/<sha256>.json`.
#[derive(Debug, Clone)]
pub struct Cache {
    pub dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn path(&self, cfg: &RunConfig) -> PathBuf {
        self.dir.join(cfg.command.label()).join(format!("{}.json", cfg.cache_key()))
    }

    pub fn load(&self, cfg: &RunConfig) -> Option<Value> {
        let text = fs::read_to_string(self.path(cfg)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        (v.get("config") == Some(&cfg.canonical())).then_some(v)
    }

    pub fn store(&self, cfg: &RunConfig, doc: &Value) -> Result<(), CliError> {
        let path = self.path(cfg);
        let parent = path.parent().expect("cache path has a parent");
        fs::create_dir_all(parent)?;
        let tmp = parent.join(format!(".{}.tmp{}", cfg.cache_key(), std::process::id()));
        fs::write(&tmp, render_json(doc))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// A finished run: the report document and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub doc: Value,
    pub ok: bool,
    pub cached: bool,
}

fn cache_of(cfg: &RunConfig) -> Option<Cache> {
    if cfg.command == Command::VerifyAll {
        return None;
    }
    cfg.cache_dir.as_deref().map(Cache::new)
}

/// Runs a command, consulting the cache first.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let cache = cache_of(cfg);
    if let Some(doc) = cache.as_ref().and_then(|c| c.load(cfg)) {
        let ok = doc.get("ok").and_then(Value::as_bool).unwrap_or(false);
        return Ok(Outcome { doc, ok, cached: true });
    }
    let (result, ok) = commands::execute(cfg)?;
    let doc = json!({
        "command": cfg.command.label(),
        "config": cfg.canonical(),
        "ok": ok,
        "result": result,
    });
    if let Some(c) = &cache {
        c.store(cfg, &doc)?;
    }
    Ok(Outcome { doc, ok, cached: false })
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(","))
        }
        Value::Array(a) if a.len() <= 16 && a.iter().all(|x| x.is_array() && scalar(x).is_some()) => {
            Some(a.iter().map(|x| format!("[{}]", scalar(x).unwrap_or_default())).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

const MAX_TABLE_ROWS: usize = 200;

fn table_rows(out: &mut String, key: &str, rows: &[Value]) {
    let Some(Value::Object(first)) = rows.first() else { return };
    let cols: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c.as_str()).map(|x| scalar(x).unwrap_or_else(|| x.to_string())).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> =
        cols.iter().enumerate().map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0)).collect();
    let _ = writeln!(out, "{key}:");
    let line = |vals: Vec<&str>| vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect::<Vec<_>>().join("  ");
    let _ = writeln!(out, "  {}", line(cols.iter().map(|c| c.as_str()).collect()).trim_end());
    for r in &cells {
        let _ = writeln!(out, "  {}", line(r.iter().map(|c| c.as_str()).collect()).trim_end());
    }
}

fn table_into(out: &mut String, prefix: &str, v: &Value) {
    let Value::Object(map) = v else {
        let _ = writeln!(out, "{prefix}: {}", scalar(v).unwrap_or_else(|| v.to_string()));
        return;
    };
    for (k, x) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match x {
            Value::Object(_) => table_into(out, &key, x),
            Value::Array(a) if !a.is_empty() && a.len() <= MAX_TABLE_ROWS && a.iter().all(Value::is_object) => {
                table_rows(out, &key, a)
            }
            _ => {
                let s = scalar(x).unwrap_or_else(|| format!("[{} entries]", x.as_array().map_or(0, Vec::len)));
                let _ = writeln!(out, "{key}: {s}");
            }
        }
    }
}

/// Flattened `key: value` lines, with lists of records as aligned columns.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    table_into(&mut out, "", v);
    out
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => render_json(doc),
        Format::Table => render_table(doc),
    }
}

/// `STRATA_LAB_CACHE` wins over the flag.
pub fn resolve_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    match std::env::var_os("STRATA_LAB_CACHE") {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag.map(Path::to_path_buf),
    }
}

pub fn parse_poly(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| CliError::Invalid(format!("bad coefficient {t:?} in {s:?}"))))
        .collect()
}
