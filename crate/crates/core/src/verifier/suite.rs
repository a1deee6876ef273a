//! Parameter-grid manifests and suite runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{DiffValuation, IdentityId, VerifyReport};
use super::{verify_identity_with, PrecisionConfig};
use crate::error::{Error, Result};

const DEFAULT_MANIFEST: &str = include_str!("../../manifest/default_suite.json");

/// A versioned list of parameter grids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    /// Applied to every point unless the grid sets the key.
    #[serde(default)]
    pub defaults: BTreeMap<String, String>,
    pub entries: Vec<ManifestEntry>,
}

/// Cartesian product of the listed values. A key such as `"h,k"` binds
/// several parameters at once from comma-separated values like `"1,3"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub identity: IdentityId,
    pub grid: BTreeMap<String, Vec<String>>,
}

impl Manifest {
    pub fn default_suite() -> Manifest {
        Manifest::from_json(DEFAULT_MANIFEST).expect("embedded manifest parses")
    }

    pub fn from_json(s: &str) -> Result<Manifest> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("manifest: {e}")))
    }

    /// Keeps only the entries for `ids`.
    pub fn select(&self, ids: &[IdentityId]) -> Manifest {
        Manifest {
            entries: self.entries.iter().filter(|e| ids.contains(&e.identity)).cloned().collect(),
            ..self.clone()
        }
    }

    /// Every parameter point in manifest order, with `overrides` taking the
    /// place of the defaults.
    pub fn points(&self, overrides: &BTreeMap<String, String>) -> Result<Vec<(IdentityId, BTreeMap<String, String>)>> {
        let mut out = Vec::new();
        for e in &self.entries {
            let mut rows: Vec<BTreeMap<String, String>> = vec![BTreeMap::new()];
            for (key, vals) in &e.grid {
                let keys: Vec<&str> = key.split(',').map(str::trim).collect();
                let mut next = Vec::with_capacity(rows.len() * vals.len());
                for row in &rows {
                    for v in vals {
                        let parts: Vec<&str> = v.split(',').map(str::trim).collect();
                        if parts.len() != keys.len() {
                            return Err(Error::Parse(format!("grid value {v:?} does not match key {key:?}")));
                        }
                        let mut r = row.clone();
                        for (k, p) in keys.iter().zip(parts) {
                            r.insert(k.to_string(), p.to_string());
                        }
                        next.push(r);
                    }
                }
                rows = next;
            }
            for mut r in rows {
                for (k, v) in self.defaults.iter().chain(overrides) {
                    if !e.grid.keys().any(|g| g.split(',').any(|x| x.trim() == k)) {
                        r.insert(k.clone(), v.clone());
                    }
                }
                out.push((e.identity, r));
            }
        }
        Ok(out)
    }
}

/// Result of one suite point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointOutcome {
    Report(VerifyReport),
    /// The point violates a stated hypothesis of its identity.
    Skipped {
        identity_id: IdentityId,
        parameters: BTreeMap<String, String>,
        skipped: String,
    },
    Error {
        identity_id: IdentityId,
        parameters: BTreeMap<String, String>,
        error: String,
    },
}

impl PointOutcome {
    pub fn identity(&self) -> IdentityId {
        match self {
            PointOutcome::Report(r) => r.identity_id,
            PointOutcome::Skipped { identity_id, .. } | PointOutcome::Error { identity_id, .. } => *identity_id,
        }
    }

    pub fn failed(&self) -> bool {
        match self {
            PointOutcome::Report(r) => !r.pass,
            PointOutcome::Skipped { .. } => false,
            PointOutcome::Error { .. } => true,
        }
    }

    pub fn report(&self) -> Option<&VerifyReport> {
        match self {
            PointOutcome::Report(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub outcomes: Vec<PointOutcome>,
}

/// Per-identity tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub identity_id: IdentityId,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
    /// Least difference valuation among p-adic reports.
    pub min_valuation: Option<u32>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        !self.outcomes.iter().any(PointOutcome::failed)
    }

    pub fn for_identity(&self, id: IdentityId) -> impl Iterator<Item = &PointOutcome> {
        self.outcomes.iter().filter(move |o| o.identity() == id)
    }

    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut rows: BTreeMap<IdentityId, SummaryRow> = BTreeMap::new();
        for o in &self.outcomes {
            let id = o.identity();
            let row = rows.entry(id).or_insert(SummaryRow {
                identity_id: id,
                passed: 0,
                failed: 0,
                skipped: 0,
                errors: 0,
                min_valuation: None,
            });
            match o {
                PointOutcome::Report(r) => {
                    if r.pass {
                        row.passed += 1;
                    } else {
                        row.failed += 1;
                    }
                    if let DiffValuation::Valuation(v) = r.difference_valuation {
                        row.min_valuation = Some(row.min_valuation.map_or(v, |m| m.min(v)));
                    }
                }
                PointOutcome::Skipped { .. } => row.skipped += 1,
                PointOutcome::Error { .. } => row.errors += 1,
            }
        }
        rows.into_values().collect()
    }

    /// Fixed-width table of [`SuiteReport::summary`].
    pub fn summary_table(&self) -> String {
        let mut s =
            format!("{:<16} {:>7} {:>7} {:>7} {:>7} {:>8}\n", "identity", "pass", "fail", "skip", "error", "min val");
        for r in self.summary() {
            let v = r.min_valuation.map_or_else(|| "exact".to_string(), |v| v.to_string());
            let _ = writeln!(
                s,
                "{:<16} {:>7} {:>7} {:>7} {:>7} {:>8}",
                r.identity_id.name(),
                r.passed,
                r.failed,
                r.skipped,
                r.errors,
                v
            );
        }
        let _ = writeln!(s, "overall: {}", if self.all_pass() { "PASS" } else { "FAIL" });
        s
    }
}

/// Evaluates every manifest point concurrently; outcomes keep manifest order.
pub fn run_suite(
    manifest: &Manifest,
    overrides: &BTreeMap<String, String>,
    cfg: &PrecisionConfig,
    mutate: bool,
) -> Result<SuiteReport> {
    let points = manifest.points(overrides)?;
    let outcomes = points
        .into_par_iter()
        .map(|(id, params)| match verify_identity_with(id, &params, cfg, mutate) {
            Ok(r) => PointOutcome::Report(r),
            Err(Error::HypothesisViolation(reason)) => {
                PointOutcome::Skipped { identity_id: id, parameters: params, skipped: reason }
            }
            Err(e) => PointOutcome::Error { identity_id: id, parameters: params, error: e.to_string() },
        })
        .collect();
    Ok(SuiteReport { outcomes })
}
