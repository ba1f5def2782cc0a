//! Command execution: document text in, report and exit code out.

use std::time::Instant;

use liess_core::cochain::{betti_numbers, complex_cohomology};
use liess_core::resolution::coefficient_rows;
use liess_core::specseq::{e2_expected, oracle_betti, verify_theorems, SpecSeqError, Verdict};
use liess_core::{DoubleComplex, KernelSpec, SpectralPage, SpectralSequence, SplitExtension};

use crate::document::{self, SchemaError};
use crate::report::{
    CensusItem, CohomologyTables, DifferentialEntry, PageReport, Report, SpectralSummary, Status, Summary,
    TheoremItem,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Cohomology,
    Ss,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Cohomology => "cohomology",
            Command::Ss => "ss",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Highest page listed by `ss`; `None` lists every page up to `E_∞`.
    pub max_page: Option<usize>,
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InvalidInput = 1,
    TheoremViolation = 2,
    InternalFailure = 3,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub status: ExitStatus,
}

/// Parses and runs one document. Never panics on bad input.
pub fn execute(command: Command, text: &str, options: Options) -> Outcome {
    let start = Instant::now();
    let mut report = Report::new(command.name());
    let status = match document::parse(text) {
        Err(errors) => {
            report.valid = false;
            report.errors = errors;
            ExitStatus::InvalidInput
        }
        Ok(doc) => {
            report.name = doc.name;
            match run(command, &doc.extension, options, &mut report) {
                Ok(()) if report.any_theorem_failed() => ExitStatus::TheoremViolation,
                Ok(()) => ExitStatus::Success,
                Err(e) => {
                    report.errors.push(SchemaError {
                        path: "$".into(),
                        message: format!("internal invariant failure: {e}"),
                    });
                    ExitStatus::InternalFailure
                }
            }
        }
    };
    if options.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Outcome { report, status }
}

fn run(command: Command, ext: &SplitExtension, options: Options, report: &mut Report) -> Result<(), SpecSeqError> {
    let rows = coefficient_rows(ext);
    report.summary = Some(summary(ext, &rows.dims()));
    rows.check(ext.quotient())?;
    let dc = DoubleComplex::from_rows(ext.quotient(), &rows)?;
    dc.check()?;
    let infinite = !matches!(ext.kernel(), KernelSpec::FiniteDim(_));
    match command {
        Command::Check => {}
        Command::Cohomology => {
            let n = complex_cohomology(&rows.d_vert).iter().map(|d| d.betti).collect();
            report.cohomology = Some(CohomologyTables {
                g: oracle_betti(ext),
                n,
                h: betti_numbers(&ext.quotient_module()),
                e2: e2_expected(ext, &rows)?,
            });
            if infinite {
                report.notes.push(
                    "kernel is infinite-dimensional: H^*(g,M) has no Chevalley–Eilenberg oracle; \
                     H^*(n,M) comes from the minimal resolution"
                        .into(),
                );
            }
        }
        Command::Ss => {
            let ss = SpectralSequence::new(dc);
            let pages = ss.pages()?;
            let last = options.max_page.unwrap_or(usize::MAX);
            report.pages = pages.iter().filter(|p| p.r <= last).map(page_report).collect();
            report.spectral_sequence = Some(spectral_summary(&ss, &pages, last >= ss.infinity_index()));
        }
        Command::Verify => {
            let verdicts = verify_theorems(ext)?;
            report.theorems = verdicts
                .checks
                .iter()
                .map(|c| {
                    let (status, detail) = match &c.verdict {
                        Verdict::Pass => (Status::Pass, None),
                        Verdict::Fail(w) => (Status::Fail, Some(w.clone())),
                        Verdict::HypothesesUnmet(w) => (Status::HypothesesUnmet, Some(w.clone())),
                    };
                    TheoremItem {
                        name: c.name.to_string(),
                        status,
                        detail,
                    }
                })
                .collect();
            let ss = SpectralSequence::new(dc);
            let pages = ss.pages()?;
            report.spectral_sequence = Some(spectral_summary(&ss, &pages, true));
            if infinite {
                report.notes.push("kernel is infinite-dimensional: convergence is not checked against an oracle".into());
            }
        }
    }
    Ok(())
}

fn summary(ext: &SplitExtension, rows: &[usize]) -> Summary {
    let kernel_dim = match ext.kernel() {
        KernelSpec::FiniteDim(n) => Some(n.dim()),
        _ => None,
    };
    Summary {
        field: ext.field().to_string(),
        kernel_family: ext.kernel().family().to_string(),
        kernel_dim,
        kernel_generators: ext.kernel().generator_labels(),
        quotient: ext.quotient().labels().to_vec(),
        module_dim: ext.module().dim(),
        kernel_acts_trivially: ext.kernel_acts_trivially(),
        rows: rows.to_vec(),
    }
}

fn page_report(page: &SpectralPage) -> PageReport {
    let differentials = page
        .nonzero_differentials()
        .into_iter()
        .map(|(p, q, rank)| {
            let m = page.differential(p, q).expect("listed differential exists");
            let matrix = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
                .collect();
            DifferentialEntry { p, q, rank, matrix }
        })
        .collect();
    PageReport {
        r: page.r,
        grid: page.grid(),
        differentials,
    }
}

fn spectral_summary(ss: &SpectralSequence, pages: &[SpectralPage], complete: bool) -> SpectralSummary {
    let infinity = pages.last().expect("at least E_2");
    let length = SpectralSequence::length_and_collapse(pages);
    let top = ss.double_complex.p_max() + ss.double_complex.q_max();
    SpectralSummary {
        infinity_page: infinity.r,
        infinity: infinity.grid(),
        totals: (0..=top).map(|n| infinity.total_dim(n)).collect(),
        length: length.length,
        collapse_page: length.collapse_page,
        census: length
            .census
            .iter()
            .map(|c| CensusItem {
                r: c.r,
                p: c.p,
                q: c.q,
                rank: c.rank,
            })
            .collect(),
        complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIVIAL: &str = r#"{
        "field": "Q",
        "kernel": {"variant": "finite", "labels": ["x"]},
        "quotient": {"labels": ["a"]},
        "phi": {}
    }"#;

    #[test]
    fn trivial_line_by_line() {
        let out = execute(Command::Ss, TRIVIAL, Options::default());
        assert_eq!(out.status, ExitStatus::Success);
        assert_eq!(out.report.pages[0].grid, vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(out.report.spectral_sequence.unwrap().length, 2);
    }

    #[test]
    fn max_page_truncates_the_listing() {
        let opts = Options {
            max_page: Some(2),
            timing: false,
        };
        let out = execute(Command::Ss, TRIVIAL, opts);
        assert_eq!(out.report.pages.len(), 1);
        assert!(!out.report.spectral_sequence.unwrap().complete);
    }

    #[test]
    fn invalid_input_exits_one() {
        let out = execute(Command::Check, "{}", Options::default());
        assert_eq!(out.status, ExitStatus::InvalidInput);
        assert!(!out.report.valid);
        assert!(!out.report.errors.is_empty());
    }

    #[test]
    fn timing_only_on_request() {
        assert!(execute(Command::Check, TRIVIAL, Options::default()).report.elapsed_ms.is_none());
        let opts = Options {
            max_page: None,
            timing: true,
        };
        assert!(execute(Command::Check, TRIVIAL, opts).report.elapsed_ms.is_some());
    }
}
