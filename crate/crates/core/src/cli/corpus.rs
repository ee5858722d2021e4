use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abst::AbelianStructure;
use crate::classify::{classify, tf_rank_oracle};
use crate::error::{Error, Result};
use crate::matgrp::LinearGroupSpec;

/// The corpus shipped with the crate.
pub const BUILTIN_CORPUS: &str = include_str!("../../data/corpus.tsv");

const COLUMNS: &[&str] = &["id", "n", "q", "p", "det", "z", "expected", "case_tag", "family", "source", "cap_class"];

/// Expected outcome of a corpus row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    /// Display form of the result, e.g. `Z + Z/2` or `EXT(Z/2; Z/2)`.
    Result(String),
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub n: u64,
    pub q: u64,
    pub p: u64,
    pub det: u64,
    pub z: u64,
    pub expected: Expected,
    pub case_tag: String,
    pub family: String,
    pub source: String,
    pub cap_class: String,
}

impl CorpusEntry {
    /// A column by header name, as text.
    pub fn column(&self, key: &str) -> String {
        match key {
            "id" => self.id.clone(),
            "n" => self.n.to_string(),
            "q" => self.q.to_string(),
            "p" => self.p.to_string(),
            "det" => self.det.to_string(),
            "z" => self.z.to_string(),
            "expected" => match &self.expected {
                Expected::Result(s) => s.clone(),
                Expected::Ambiguous => "AMBIGUOUS".into(),
            },
            "case_tag" => self.case_tag.clone(),
            "family" => self.family.clone(),
            "source" => self.source.clone(),
            "cap_class" => self.cap_class.clone(),
            _ => String::new(),
        }
    }

    pub fn spec(&self) -> Result<LinearGroupSpec> {
        LinearGroupSpec::new(self.n as usize, self.q, self.det, self.z)
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or_else(|| Error::domain("corpus is empty"))?;
    if header.split('\t').collect::<Vec<_>>() != COLUMNS {
        return Err(Error::domain(format!("corpus header must be: {}", COLUMNS.join(" "))));
    }
    let mut out = Vec::new();
    for (no, line) in lines {
        let f: Vec<&str> = line.split('\t').map(str::trim).collect();
        let bad = |what: &str| Error::domain(format!("corpus line {}: {what}", no + 1));
        if f.len() != COLUMNS.len() {
            return Err(bad(&format!("expected {} columns, found {}", COLUMNS.len(), f.len())));
        }
        let num = |i: usize| f[i].parse::<u64>().map_err(|_| bad(&format!("{} is not a number", COLUMNS[i])));
        let expected = if f[6] == "AMBIGUOUS" { Expected::Ambiguous } else { Expected::Result(f[6].to_string()) };
        if !matches!(f[10], "enumerable" | "formula-only") {
            return Err(bad("cap_class must be enumerable or formula-only"));
        }
        if f[9] == "published" && (f[7].is_empty() || f[7] == "-") {
            return Err(bad("published entries must name their case tag"));
        }
        out.push(CorpusEntry {
            id: f[0].into(),
            n: num(1)?,
            q: num(2)?,
            p: num(3)?,
            det: num(4)?,
            z: num(5)?,
            expected,
            case_tag: f[7].into(),
            family: f[8].into(),
            source: f[9].into(),
            cap_class: f[10].into(),
        });
    }
    Ok(out)
}

pub fn load_corpus(path: Option<&Path>) -> Result<Vec<CorpusEntry>> {
    match path {
        None => parse_corpus(BUILTIN_CORPUS),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::domain(format!("cannot read corpus {}: {e}", p.display())))?;
            parse_corpus(&text)
        }
    }
}

/// `key=value` conditions, all of which must hold.
pub fn parse_filter(items: &[String]) -> Result<Vec<(String, String)>> {
    items
        .iter()
        .map(|s| {
            let (k, v) = s.split_once('=').ok_or_else(|| Error::Usage(format!("filter {s:?} is not key=value")))?;
            if !COLUMNS.contains(&k) {
                return Err(Error::Usage(format!("unknown corpus column {k:?}; columns: {}", COLUMNS.join(", "))));
            }
            Ok((k.to_string(), v.to_string()))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub id: String,
    pub formula: Outcome,
    pub oracle: Outcome,
    pub got: String,
    pub got_tag: String,
    pub diff: Vec<String>,
}

impl EntryReport {
    pub fn status(&self) -> Outcome {
        if self.formula == Outcome::Fail || self.oracle == Outcome::Fail {
            Outcome::Fail
        } else {
            Outcome::Pass
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub failed: usize,
    pub oracle_runs: usize,
}

fn run_entry(e: &CorpusEntry, cap: usize, oracles: bool) -> EntryReport {
    let mut diff = Vec::new();
    let (got, got_tag, tf) = match classify(e.n, e.q, e.p, e.det, e.z) {
        Ok(c) => (c.result.to_string(), c.case_tag.clone(), Some(c.tf_rank)),
        Err(Error::Ambiguous(_)) => ("AMBIGUOUS".to_string(), "-".to_string(), None),
        Err(err) => (format!("error: {err}"), "-".to_string(), None),
    };
    let want = e.column("expected");
    let same = match &e.expected {
        Expected::Ambiguous => got == "AMBIGUOUS",
        // tolerate non-canonical spellings of plain groups
        Expected::Result(w) => match (w.parse::<AbelianStructure>(), got.parse::<AbelianStructure>()) {
            (Ok(a), Ok(b)) => a == b,
            _ => *w == got,
        },
    };
    if !same {
        diff.push(format!("expected {want}, got {got}"));
    }
    if got_tag != e.case_tag {
        diff.push(format!("expected tag {}, got {got_tag}", e.case_tag));
    }
    let formula = if diff.is_empty() { Outcome::Pass } else { Outcome::Fail };
    let oracle = match (oracles && e.cap_class == "enumerable", tf) {
        (true, Some(tf)) => match e.spec().and_then(|s| tf_rank_oracle(&s, e.p, cap)) {
            Ok(r) if r.tf_rank as u32 == tf => Outcome::Pass,
            Ok(r) => {
                diff.push(format!("oracle tf_rank {} (n_G = {}), formula {tf}", r.tf_rank, r.n_g));
                Outcome::Fail
            }
            Err(Error::CapExceeded { .. }) => Outcome::Skip,
            Err(err) => {
                diff.push(format!("oracle error: {err}"));
                Outcome::Fail
            }
        },
        _ => Outcome::Skip,
    };
    EntryReport { id: e.id.clone(), formula, oracle, got, got_tag, diff }
}

/// Runs every entry matching `filter` in parallel; reports keep corpus order.
pub fn corpus_run(entries: &[CorpusEntry], filter: &[(String, String)], cap: usize, oracles: bool) -> CorpusReport {
    let selected: Vec<&CorpusEntry> = entries.iter().filter(|e| filter.iter().all(|(k, v)| e.column(k) == *v)).collect();
    let reports: Vec<EntryReport> = selected.par_iter().map(|e| run_entry(e, cap, oracles)).collect();
    let failed = reports.iter().filter(|r| r.status() == Outcome::Fail).count();
    let oracle_runs = reports.iter().filter(|r| r.oracle != Outcome::Skip).count();
    CorpusReport { passed: reports.len() - failed, failed, oracle_runs, entries: reports }
}
