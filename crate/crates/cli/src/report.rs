//! Reports in human-readable text or machine-readable JSON. Both renderings
//! are deterministic: no timings, no absolute paths beyond what was given.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::Check;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputInfo {
    pub path: String,
    /// `sha256:<hex>` of the file bytes.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockRow {
    pub index: usize,
    pub dim: usize,
    pub semisimple: bool,
    /// `M_n`, `not split (...)` or `-` for non-semisimple blocks.
    pub split: String,
    pub indecomposable: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationVerdict {
    pub factorizable: bool,
    pub reason: String,
    /// `(dim X_i, dim Y_i)` of the certificate's summands.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub summands: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionRow {
    pub block: usize,
    pub kind: String,
    pub length: usize,
    pub term_dims: Vec<usize>,
    /// Present with `--verify`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_digest: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub depth: usize,
    pub blocks: Vec<ResolutionRow>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputInfo>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<BlockRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorizationVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.into(),
            seed,
            ..Self::default()
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        if !self.notes.contains(&s) {
            self.notes.push(s);
        }
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "fdalg {}", self.command);
        if let Some(i) = &self.input {
            let _ = writeln!(out, "input: {} ({})", i.path, i.digest);
        }
        let _ = writeln!(out, "seed: {:#x}", self.seed);
        if let Some(d) = self.dim {
            let _ = writeln!(out, "dimension: {d}");
        }
        if !self.blocks.is_empty() {
            let _ = writeln!(out, "blocks: {}", self.blocks.len());
            let _ = writeln!(
                out,
                "  {:>3} {:>5}  {:<10}  {:<28}  indecomposable",
                "#", "dim", "semisimple", "split"
            );
            for b in &self.blocks {
                let _ = writeln!(
                    out,
                    "  {:>3} {:>5}  {:<10}  {:<28}  {}",
                    b.index,
                    b.dim,
                    if b.semisimple { "yes" } else { "no" },
                    b.split,
                    b.indecomposable
                );
            }
        }
        if let Some(s) = self.semisimple {
            let _ = writeln!(out, "{}", if s { "semisimple" } else { "not semisimple" });
        }
        if let Some(f) = &self.factorization {
            if f.factorizable {
                let _ = writeln!(out, "factorizable: {}", f.reason);
            } else {
                let _ = writeln!(out, "not factorizable: {}", f.reason);
            }
        }
        if let Some(r) = &self.resolution {
            let _ = writeln!(out, "resolution (depth {}):", r.depth);
            for b in &r.blocks {
                let _ = write!(
                    out,
                    "  block {}: {}, length {}, terms {:?}",
                    b.block, b.kind, b.length, b.term_dims
                );
                if let Some(e) = b.exact {
                    let _ = write!(out, ", {}", if e { "exact" } else { "NOT exact" });
                }
                if let Some(d) = &b.certificate_digest {
                    let _ = write!(out, ", certificate {d}");
                }
                out.push('\n');
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let tag = if c.passed { "pass" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(out, "  [{tag}] {}", c.name);
                } else {
                    let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
                }
            }
        }
        for o in &self.outputs {
            let _ = writeln!(out, "wrote {o}");
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "notes:");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        out
    }
}
