//! Run reports and their text, CSV and JSON renderings.
//!
//! Reports carry no timestamps, so identical jobs render byte-identically.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::predictor::{CongruenceResult, DiffReport, ExtTable};
use crate::resolution::{BettiRecord, BettiTable, ResolutionBounds};

/// JSON Schema for [`Report`] as emitted by [`Report::to_json`].
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Which theorem, if any, covers the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "proved (d≥4)")]
    ProvedD4,
    #[serde(rename = "proved (d=2)")]
    ProvedD2,
    #[serde(rename = "conjecture-evidence")]
    ConjectureEvidence,
    #[serde(rename = "out-of-hypothesis")]
    OutOfHypothesis,
}

impl Status {
    /// Label for a detected relation degree.
    pub fn for_degree(d: Option<usize>) -> Self {
        match d {
            Some(2) => Status::ProvedD2,
            Some(3) => Status::ConjectureEvidence,
            Some(d) if d >= 4 => Status::ProvedD4,
            _ => Status::OutOfHypothesis,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::ProvedD4 => "proved (d≥4)",
            Status::ProvedD2 => "proved (d=2)",
            Status::ConjectureEvidence => "conjecture-evidence",
            Status::OutOfHypothesis => "out-of-hypothesis",
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Status::ProvedD4 | Status::ProvedD2)
    }
}

/// How the run ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    NotAlmostLinear {
        witness: Cell,
        conflicting: Option<Cell>,
        message: String,
    },
    Mismatch { count: usize },
    ResourceGuard { stage: String, estimate: u128, cap: u128 },
    /// The cost guard stopped an example run; only closed forms are reported.
    Unverified { stage: String, estimate: u128, cap: u128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub p: usize,
    pub s: usize,
}

impl From<(usize, usize)> for Cell {
    fn from((p, s): (usize, usize)) -> Self {
        Cell { p, s }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsRecord {
    pub max_p: usize,
    pub max_deg: usize,
}

impl From<ResolutionBounds> for BoundsRecord {
    fn from(b: ResolutionBounds) -> Self {
        BoundsRecord {
            max_p: b.max_homological,
            max_deg: b.max_internal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtEntry {
    pub p: usize,
    pub s: usize,
    #[serde(serialize_with = "exact")]
    pub dim: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleEntry {
    pub p: usize,
    pub s: usize,
    pub dim: u64,
    pub frontier: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MismatchEntry {
    pub p: usize,
    pub s: usize,
    #[serde(serialize_with = "exact")]
    pub predicted: BigUint,
    pub oracle: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DiffRecord {
    pub agreed: Vec<Cell>,
    pub mismatched: Vec<MismatchEntry>,
    pub frontier_excluded: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceRecord {
    pub pass: bool,
    pub witnesses: Vec<Cell>,
    pub modulus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub characteristic: u32,
    pub bounds: BoundsRecord,
    pub ring: Option<String>,
    pub d: Option<usize>,
    pub b: Vec<u64>,
    #[serde(rename = "betti_over_A")]
    pub betti_over_a: Vec<BettiRecord>,
    pub dual_dims: Vec<u64>,
    pub ext_predicted: Vec<ExtEntry>,
    pub ext_oracle: Vec<OracleEntry>,
    pub diff: Option<DiffRecord>,
    pub congruence: Option<CongruenceRecord>,
    pub status: Option<Status>,
    pub outcome: Outcome,
    pub verified: bool,
    pub pattern: Option<String>,
    pub series: Option<String>,
    pub series_at_u1: Vec<String>,
    pub closed_form: Option<ClosedForm>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub betti_grid: Option<String>,
    #[serde(skip)]
    pub oracle_grid: Option<String>,
}

/// Closed-form data of the determinantal examples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub b: Vec<u64>,
    pub numerator: String,
    pub denominator: String,
    pub matches_oracle: Option<bool>,
    pub matrix: Option<String>,
}

/// Writes a dimension as a JSON integer of any size.
fn exact<S: Serializer>(v: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    let n: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(ser)
}

impl Report {
    pub fn new(command: &str, characteristic: u32, bounds: ResolutionBounds) -> Self {
        Report {
            command: command.to_string(),
            characteristic,
            bounds: bounds.into(),
            ring: None,
            d: None,
            b: Vec::new(),
            betti_over_a: Vec::new(),
            dual_dims: Vec::new(),
            ext_predicted: Vec::new(),
            ext_oracle: Vec::new(),
            diff: None,
            congruence: None,
            status: None,
            outcome: Outcome::Ok,
            verified: false,
            pattern: None,
            series: None,
            series_at_u1: Vec::new(),
            closed_form: None,
            notes: Vec::new(),
            betti_grid: None,
            oracle_grid: None,
        }
    }

    pub fn set_predicted(&mut self, t: &ExtTable) {
        self.ext_predicted = t
            .entries()
            .map(|((p, s), v)| ExtEntry { p, s, dim: v.clone() })
            .collect();
    }

    pub fn set_oracle(&mut self, bt: &BettiTable) {
        self.ext_oracle = bt
            .entries()
            .map(|((p, s), r)| OracleEntry {
                p,
                s,
                dim: r as u64,
                frontier: bt.is_frontier(p, s),
            })
            .collect();
        self.oracle_grid = Some(bt.to_string());
    }

    pub fn set_ambient(&mut self, bt: &BettiTable) {
        self.betti_over_a = bt.records();
        self.betti_grid = Some(bt.to_string());
    }

    pub fn set_diff(&mut self, diff: &DiffReport) {
        self.diff = Some(DiffRecord {
            agreed: diff.agreed.iter().map(|&c| c.into()).collect(),
            mismatched: diff
                .mismatched
                .iter()
                .map(|m| MismatchEntry {
                    p: m.p,
                    s: m.s,
                    predicted: m.predicted.clone(),
                    oracle: m.oracle as u64,
                })
                .collect(),
            frontier_excluded: diff.frontier_excluded.iter().map(|&c| c.into()).collect(),
        });
    }

    pub fn set_congruence(&mut self, c: &CongruenceResult) {
        self.congruence = Some(CongruenceRecord {
            pass: c.pass,
            witnesses: c.witnesses.iter().map(|&w| w.into()).collect(),
            modulus: c.modulus,
        });
    }

    pub fn mismatch_count(&self) -> usize {
        self.diff.as_ref().map_or(0, |d| d.mismatched.len())
    }

    /// 0 success, 2 hypothesis failure, 3 mismatch under a proved status,
    /// 4 resource guard.
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::NotAlmostLinear { .. } => 2,
            Outcome::Mismatch { .. } => 3,
            Outcome::ResourceGuard { .. } => 4,
            Outcome::Ok | Outcome::Unverified { .. } => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per `(p, s)` in either Ext table.
    pub fn to_csv(&self) -> String {
        let mut rows: BTreeMap<(usize, usize), (Option<String>, Option<String>)> = BTreeMap::new();
        for e in &self.ext_predicted {
            rows.entry((e.p, e.s)).or_default().0 = Some(e.dim.to_string());
        }
        for e in &self.ext_oracle {
            rows.entry((e.p, e.s)).or_default().1 = Some(e.dim.to_string());
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["p", "s", "predicted", "oracle", "state"])
            .expect("in-memory write");
        for ((p, s), (pred, orc)) in rows {
            w.write_record([
                p.to_string(),
                s.to_string(),
                pred.unwrap_or_default(),
                orc.unwrap_or_default(),
                self.cell_state(p, s).to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    fn cell_state(&self, p: usize, s: usize) -> &'static str {
        let Some(diff) = &self.diff else {
            return "unchecked";
        };
        let c = Cell { p, s };
        if diff.agreed.contains(&c) {
            "agreed"
        } else if diff.mismatched.iter().any(|m| m.p == p && m.s == s) {
            "mismatched"
        } else {
            "frontier"
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "command: {}", self.command);
        if let Some(r) = &self.ring {
            let _ = writeln!(w, "ring: {r}");
        }
        let _ = writeln!(w, "characteristic: {}", self.characteristic);
        let _ = writeln!(
            w,
            "bounds: max_p = {}, max_deg = {}",
            self.bounds.max_p, self.bounds.max_deg
        );
        if let Some(grid) = &self.betti_grid {
            let _ = writeln!(w, "\nBetti table of R over A:\n{grid}");
        }
        match (&self.outcome, self.d) {
            (Outcome::NotAlmostLinear { message, .. }, _) => {
                let _ = writeln!(w, "not almost linear: {message}");
            }
            (_, Some(d)) => {
                let _ = writeln!(w, "almost linear: d = {d}, b = {:?}", self.b);
            }
            _ => {}
        }
        if let Some(cf) = &self.closed_form {
            let _ = writeln!(w, "closed form: b = {:?}", cf.b);
            let _ = writeln!(w, "closed form at u = 1: {} / ({})", cf.numerator, cf.denominator);
            if let Some(m) = cf.matches_oracle {
                let _ = writeln!(w, "closed-form b matches oracle: {}", if m { "yes" } else { "NO" });
            }
            if let Some(m) = &cf.matrix {
                let _ = writeln!(w, "matrix:\n{m}");
            }
        }
        if !self.dual_dims.is_empty() {
            let dims: Vec<String> = self.dual_dims.iter().map(u64::to_string).collect();
            let _ = writeln!(w, "Koszul dual dims: {}", dims.join(" "));
        }
        if let Some(s) = &self.series {
            let _ = writeln!(w, "predicted series: {s}");
        }
        if !self.series_at_u1.is_empty() {
            let _ = writeln!(w, "predicted series at u = 1: {}", self.series_at_u1.join(" "));
        }
        if !self.ext_predicted.is_empty() || !self.ext_oracle.is_empty() {
            let _ = writeln!(w, "\n{:>3} {:>4} {:>12} {:>12}  state", "p", "s", "predicted", "oracle");
            for line in self.to_csv().lines().skip(1) {
                let f: Vec<&str> = line.split(',').collect();
                let blank = |x: &str| if x.is_empty() { "-".to_string() } else { x.to_string() };
                let _ = writeln!(
                    w,
                    "{:>3} {:>4} {:>12} {:>12}  {}",
                    f[0],
                    f[1],
                    blank(f[2]),
                    blank(f[3]),
                    f[4]
                );
            }
            let _ = writeln!(w);
        }
        if let Some(grid) = &self.oracle_grid {
            let _ = writeln!(w, "Betti table of k over R:\n{grid}");
        }
        if let Some(d) = &self.diff {
            let _ = writeln!(
                w,
                "diff: agreed {}, mismatched {}, frontier excluded {}",
                d.agreed.len(),
                d.mismatched.len(),
                d.frontier_excluded.len()
            );
            for m in &d.mismatched {
                let _ = writeln!(
                    w,
                    "  MISMATCH (p={}, s={}): predicted {}, oracle {}",
                    m.p, m.s, m.predicted, m.oracle
                );
            }
        }
        if let Some(c) = &self.congruence {
            let _ = write!(w, "congruence mod {}: {}", c.modulus, if c.pass { "pass" } else { "FAIL" });
            if !c.witnesses.is_empty() {
                let ws: Vec<String> = c.witnesses.iter().map(|c| format!("({},{})", c.p, c.s)).collect();
                let _ = write!(w, " at {}", ws.join(", "));
            }
            let _ = writeln!(w);
        }
        if let Some(p) = &self.pattern {
            let _ = writeln!(w, "degree pattern: {p}");
        }
        match &self.outcome {
            Outcome::ResourceGuard { stage, estimate, cap } => {
                let _ = writeln!(w, "resource guard: {stage} needs about {estimate} matrix cells (cap {cap})");
            }
            Outcome::Unverified { stage, estimate, cap } => {
                let _ = writeln!(
                    w,
                    "UNVERIFIED: {stage} skipped, about {estimate} matrix cells exceeds the cap {cap}"
                );
            }
            _ => {}
        }
        if let Some(s) = self.status {
            let _ = writeln!(w, "status: {}", s.label());
        }
        if !self.notes.is_empty() {
            let _ = writeln!(w, "notes:");
            for n in &self.notes {
                let _ = writeln!(w, "  - {n}");
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}
