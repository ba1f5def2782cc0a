//! Machine-readable reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::document::SchemaError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub field: String,
    pub kernel_family: String,
    /// `None` for infinite-dimensional kernels.
    pub kernel_dim: Option<usize>,
    pub kernel_generators: Vec<String>,
    pub quotient: Vec<String>,
    pub module_dim: usize,
    pub kernel_acts_trivially: bool,
    /// `dim R^q` for each row of the double complex.
    pub rows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTables {
    /// `dim H^n(g, M)`; absent when the kernel is infinite-dimensional.
    pub g: Option<Vec<usize>>,
    /// `dim H^q(n, M)`.
    pub n: Vec<usize>,
    /// `dim H^p(h, M)`.
    pub h: Vec<usize>,
    /// `dim H^p(h, H^q(n, M))`, indexed `[p][q]`.
    pub e2: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialEntry {
    pub p: usize,
    pub q: usize,
    pub rank: usize,
    /// Row-major, in the coset-representative bases of source and target.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageReport {
    pub r: usize,
    /// `dim E_r^{p,q}`, indexed `[p][q]`.
    pub grid: Vec<Vec<usize>>,
    /// Nonzero `d_r^{p,q}` only.
    pub differentials: Vec<DifferentialEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusItem {
    pub r: usize,
    pub p: usize,
    pub q: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub infinity_page: usize,
    pub infinity: Vec<Vec<usize>>,
    /// Totals `Σ_{p+q=n} dim E_∞^{p,q}`.
    pub totals: Vec<usize>,
    pub length: usize,
    pub collapse_page: usize,
    pub census: Vec<CensusItem>,
    /// `false` when `--max-page` stopped the computation before `E_∞`.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    HypothesesUnmet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremItem {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<SchemaError>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomologyTables>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pages: Vec<PageReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral_sequence: Option<SpectralSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub theorems: Vec<TheoremItem>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            name: None,
            valid: true,
            errors: Vec::new(),
            summary: None,
            cohomology: None,
            pages: Vec::new(),
            spectral_sequence: None,
            theorems: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn any_theorem_failed(&self) -> bool {
        self.theorems.iter().any(|t| t.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let title = self.name.as_deref().unwrap_or("extension");
        let _ = writeln!(out, "{}: {title}", self.command);
        if !self.valid {
            let _ = writeln!(out, "invalid input:");
            for e in &self.errors {
                let _ = writeln!(out, "  {e}");
            }
            return out;
        }
        if let Some(s) = &self.summary {
            let kernel = match s.kernel_dim {
                Some(d) => format!("{} (dim {d})", s.kernel_family),
                None => s.kernel_family.clone(),
            };
            let _ = writeln!(out, "field      {}", s.field);
            let _ = writeln!(out, "kernel     {kernel}, generators {}", s.kernel_generators.join(" "));
            let _ = writeln!(out, "quotient   dim {} {}", s.quotient.len(), s.quotient.join(" "));
            let action = if s.kernel_acts_trivially { "trivial" } else { "nontrivial" };
            let _ = writeln!(out, "module     dim {}, kernel action {action}", s.module_dim);
            let _ = writeln!(out, "rows       {:?}", s.rows);
        }
        if let Some(c) = &self.cohomology {
            let _ = writeln!(out);
            match &c.g {
                Some(g) => {
                    let _ = writeln!(out, "H^*(g,M)   {g:?}");
                }
                None => {
                    let _ = writeln!(out, "H^*(g,M)   unavailable");
                }
            }
            let _ = writeln!(out, "H^*(n,M)   {:?}", c.n);
            let _ = writeln!(out, "H^*(h,M)   {:?}", c.h);
            let _ = writeln!(out, "H^p(h,H^q(n,M)):");
            out.push_str(&grid_text(&c.e2));
        }
        for page in &self.pages {
            let _ = writeln!(out, "\nE_{}:", page.r);
            out.push_str(&grid_text(&page.grid));
            for d in &page.differentials {
                let _ = writeln!(
                    out,
                    "  d_{}^({},{}) → ({},{}) rank {}",
                    page.r,
                    d.p,
                    d.q,
                    d.p + page.r,
                    (d.q + 1).saturating_sub(page.r),
                    d.rank
                );
            }
        }
        if let Some(s) = &self.spectral_sequence {
            let _ = writeln!(out, "\nE_∞ (= E_{}):", s.infinity_page);
            out.push_str(&grid_text(&s.infinity));
            let _ = writeln!(out, "totals     {:?}", s.totals);
            let _ = writeln!(out, "length     {}", s.length);
            let _ = writeln!(out, "collapse   E_{}", s.collapse_page);
            if s.census.is_empty() {
                let _ = writeln!(out, "census     all d_r = 0 for r ≥ 2");
            } else {
                let _ = writeln!(out, "census:");
                for c in &s.census {
                    let _ = writeln!(out, "  d_{}^({},{}) rank {}", c.r, c.p, c.q, c.rank);
                }
            }
        }
        if !self.theorems.is_empty() {
            let _ = writeln!(out);
            for t in &self.theorems {
                let status = match t.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::HypothesesUnmet => "n/a ",
                };
                match &t.detail {
                    Some(d) => {
                        let _ = writeln!(out, "{status} {:<18} {d}", t.name);
                    }
                    None => {
                        let _ = writeln!(out, "{status} {}", t.name);
                    }
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed    {ms} ms");
        }
        out
    }
}

/// Rows printed from the top `q` down, columns by `p`.
fn grid_text(grid: &[Vec<usize>]) -> String {
    let mut out = String::new();
    let qmax = grid.first().map_or(0, Vec::len);
    for q in (0..qmax).rev() {
        let _ = write!(out, "  q={q:<2}|");
        for col in grid {
            let _ = write!(out, " {:>3}", col[q]);
        }
        out.push('\n');
    }
    let _ = write!(out, "      +");
    for _ in grid {
        out.push_str("----");
    }
    out.push('\n');
    let _ = write!(out, "       ");
    for p in 0..grid.len() {
        let _ = write!(out, " {:>3}", format!("p{p}"));
    }
    out.push('\n');
    out
}
