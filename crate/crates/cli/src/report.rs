//! Command reports: stable JSON and aligned human-readable tables.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use dgforge_core::resolution::Periodicity;
use dgforge_core::{BettiTable, CohomologyTable, Status, Verdict};

pub const REPORT_FORMAT: &str = "dgforge-report/1";

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Options {
    pub field: String,
    pub stages: usize,
    pub window: String,
    pub seed: u64,
    pub bar_length: usize,
    pub validate: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputDigest {
    pub role: String,
    pub source: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(role: &str, source: &str, bytes: &[u8]) -> Self {
        let hash = Sha256::digest(bytes);
        let sha256 = hash.iter().map(|b| format!("{b:02x}")).collect();
        InputDigest { role: role.into(), source: source.into(), sha256 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TableEntry {
    pub degree: i32,
    pub dim: usize,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TableReport {
    pub name: String,
    pub entries: Vec<TableEntry>,
}

impl TableReport {
    pub fn new(name: &str, t: &CohomologyTable) -> Self {
        let entries = t.entries.iter().map(|(d, e)| TableEntry { degree: *d, dim: e.dim, certified: e.certified }).collect();
        TableReport { name: name.into(), entries }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BettiEntry {
    pub stage: usize,
    pub degree: i32,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BettiReport {
    pub name: String,
    pub complete: bool,
    pub per_stage: Vec<usize>,
    pub entries: Vec<BettiEntry>,
}

impl BettiReport {
    pub fn new(name: &str, b: &BettiTable) -> Self {
        let entries = b.entries.iter().map(|((s, d), c)| BettiEntry { stage: *s, degree: *d, count: *c }).collect();
        BettiReport { name: name.into(), complete: b.complete, per_stage: b.per_stage(), entries }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub earlier: i64,
    pub later: i64,
    pub shift: i32,
}

impl From<Periodicity> for PeriodicityReport {
    fn from(p: Periodicity) -> Self {
        PeriodicityReport { earlier: p.earlier, later: p.later, shift: p.shift }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub format: &'static str,
    pub command: String,
    pub options: Options,
    pub inputs: Vec<InputDigest>,
    pub status: String,
    pub exit_code: i32,
    pub summary: String,
    pub tables: Vec<TableReport>,
    pub betti: Vec<BettiReport>,
    pub periodicity: Option<PeriodicityReport>,
    /// Command-specific data; object keys are sorted.
    pub details: Value,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Outcome labels for commands that are not yes/no questions.
pub const STATUS_OK: &str = "ok";
pub const STATUS_ERROR: &str = "input-error";

impl Report {
    pub fn new(command: &str, options: Options) -> Self {
        Report {
            format: REPORT_FORMAT,
            command: command.into(),
            options,
            inputs: Vec::new(),
            status: STATUS_OK.into(),
            exit_code: 0,
            summary: String::new(),
            tables: Vec::new(),
            betti: Vec::new(),
            periodicity: None,
            details: Value::Object(Default::default()),
            wall_time: Duration::ZERO,
        }
    }

    pub fn set_status(&mut self, s: Status) {
        self.status = s.to_string();
        self.exit_code = s.exit_code();
    }

    pub fn absorb(&mut self, v: &Verdict) {
        self.set_status(v.status);
        self.summary = v.summary.clone();
        self.tables.extend(v.tables.iter().map(|(n, t)| TableReport::new(n, t)));
        self.betti.extend(v.betti.iter().map(|(n, b)| BettiReport::new(n, b)));
        if let Some(p) = v.periodicity {
            self.periodicity = Some(p.into());
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report details serialize");
        if let Value::Object(map) = &mut self.details {
            map.insert(key.into(), v);
        }
    }

    pub fn input_error(mut self, message: &str) -> Self {
        self.status = STATUS_ERROR.into();
        self.exit_code = 3;
        self.summary = message.into();
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dgforge {}: {}", self.command, self.status);
        if !self.summary.is_empty() {
            let _ = writeln!(out, "  {}", self.summary);
        }
        let o = &self.options;
        let _ = writeln!(
            out,
            "  field {}  stages {}  window {}  seed {}  bar length {}{}",
            o.field,
            o.stages,
            o.window,
            o.seed,
            o.bar_length,
            if o.validate { "" } else { "  (validation off)" }
        );
        for i in &self.inputs {
            let _ = writeln!(out, "  {} {} sha256:{}", i.role, i.source, &i.sha256[..16]);
        }
        for t in &self.tables {
            out.push('\n');
            out.push_str(&human_table(t));
        }
        for b in &self.betti {
            out.push('\n');
            out.push_str(&human_betti(b));
        }
        if let Some(p) = &self.periodicity {
            let _ = writeln!(out, "\nperiodic: Ω^{} ≅ Σ^{} Ω^{}, with Ω^0 = M", p.later + 1, p.shift, p.earlier + 1);
        }
        if let Value::Object(map) = &self.details {
            if !map.is_empty() {
                out.push('\n');
            }
            for (k, v) in map {
                let _ = writeln!(out, "{k}: {}", compact(v));
            }
        }
        let _ = writeln!(out, "\nexit {}  ({:.3} s)", self.exit_code, self.wall_time.as_secs_f64());
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:>w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn human_table(t: &TableReport) -> String {
    let mut rows = vec![vec!["degree".to_string()], vec!["dim".to_string()], vec!["certified".to_string()]];
    for e in &t.entries {
        rows[0].push(e.degree.to_string());
        rows[1].push(e.dim.to_string());
        rows[2].push(if e.certified { "yes" } else { "-" }.to_string());
    }
    format!("{}\n{}", t.name, aligned(&rows))
}

fn human_betti(b: &BettiReport) -> String {
    let mut rows = vec![vec!["stage".to_string(), "degree".to_string(), "count".to_string()]];
    for e in &b.entries {
        rows.push(vec![e.stage.to_string(), e.degree.to_string(), e.count.to_string()]);
    }
    let tail = if b.complete { "complete" } else { "truncated" };
    format!("Betti numbers of {} ({tail})\n{}", b.name, aligned(&rows))
}
