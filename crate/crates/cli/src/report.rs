//! Reports: per-item status, numeric payloads and the ledger entries that
//! flagged items point at.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use gcs_core::ledger::Discrepancy;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Flagged,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Flagged => "flagged",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(default)]
    pub values: BTreeMap<String, Value>,
    #[serde(default)]
    pub ledger: Vec<String>,
}

impl Item {
    pub fn pass(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Item { id: id.into(), status: Status::Pass, detail: detail.into(), values: BTreeMap::new(), ledger: vec![] }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>) -> Self {
        Item { status: Status::Fail, ..Item::pass(id, detail) }
    }

    /// A flagged item must name at least one ledger entry.
    pub fn flagged(id: impl Into<String>, detail: impl Into<String>, refs: &[Discrepancy]) -> Self {
        assert!(!refs.is_empty(), "flagged items need a ledger reference");
        let mut item = Item { status: Status::Flagged, ..Item::pass(id, detail) };
        item.ledger = refs.iter().map(|d| d.id().to_string()).collect();
        item
    }

    /// Pass when `ok`, otherwise fail.
    pub fn check(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Item::pass(id, detail)
        } else {
            Item::fail(id, detail)
        }
    }

    /// Pass when `ok`; otherwise flagged against `refs`, or failed when
    /// there are none.
    pub fn check_or_flag(id: impl Into<String>, ok: bool, detail: impl Into<String>, refs: &[Discrepancy]) -> Self {
        match (ok, refs.is_empty()) {
            (true, _) => Item::pass(id, detail),
            (false, true) => Item::fail(id, detail),
            (false, false) => Item::flagged(id, detail, refs),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.values.insert(key.to_string(), serde_json::to_value(value).expect("serializable value"));
        self
    }

    /// Adds ledger references without changing the status.
    pub fn noting(mut self, refs: &[Discrepancy]) -> Self {
        self.ledger.extend(refs.iter().map(|d| d.id().to_string()));
        self.ledger.sort();
        self.ledger.dedup();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub id: String,
    pub summary: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub config: RunConfig,
    pub items: Vec<Item>,
    pub ledger: Vec<LedgerEntry>,
    #[serde(default)]
    pub payload: Option<Value>,
}

impl Report {
    /// Sorts items by id and collects the ledger entries they reference.
    pub fn new(command: Vec<String>, config: RunConfig, mut items: Vec<Item>, payload: Option<Value>) -> Self {
        items.sort_by(|a, b| a.id.cmp(&b.id));
        let referenced: BTreeSet<&str> = items.iter().flat_map(|i| i.ledger.iter().map(String::as_str)).collect();
        let ledger = Discrepancy::ALL
            .iter()
            .filter(|d| referenced.contains(d.id()))
            .map(|d| LedgerEntry { id: d.id().to_string(), summary: d.summary().to_string() })
            .collect();
        Report { command, config, items, ledger, payload }
    }

    pub fn count(&self, status: Status) -> usize {
        self.items.iter().filter(|i| i.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    /// Every flagged item names a ledger entry present in the report.
    pub fn is_well_formed(&self) -> bool {
        let known: BTreeSet<&str> = self.ledger.iter().map(|e| e.id.as_str()).collect();
        self.items.iter().all(|i| {
            (i.status != Status::Flagged || !i.ledger.is_empty()) && i.ledger.iter().all(|l| known.contains(l.as_str()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(
            out,
            "config:  n={} tol={:e} seed={}",
            self.config.n.map_or("default".to_string(), |n| n.to_string()),
            self.config.tol,
            self.config.seed
        );
        let width = self.items.iter().map(|i| i.id.len()).max().unwrap_or(0);
        let _ = writeln!(out);
        for item in &self.items {
            let refs = if item.ledger.is_empty() { String::new() } else { format!(" [{}]", item.ledger.join(", ")) };
            let _ = writeln!(
                out,
                "{:<7} {:<width$}  {}{}",
                item.status.as_str().to_uppercase(),
                item.id,
                item.detail,
                refs
            );
            for (k, v) in &item.values {
                let _ = writeln!(out, "        {:<width$}    {k} = {}", "", compact(v));
            }
        }
        let _ = writeln!(
            out,
            "\n{} pass, {} flagged, {} fail",
            self.count(Status::Pass),
            self.count(Status::Flagged),
            self.count(Status::Fail)
        );
        if !self.ledger.is_empty() {
            let _ = writeln!(out, "\nledger:");
            for e in &self.ledger {
                let _ = writeln!(out, "  {:<20} {}", e.id, e.summary);
            }
        }
        if let Some(p) = &self.payload {
            let _ = writeln!(out, "\npayload:\n{}", serde_json::to_string_pretty(p).expect("payload serializes"));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 160 {
        format!("{}…", &s[..s.char_indices().nth(157).map_or(s.len(), |(i, _)| i)])
    } else {
        s
    }
}
