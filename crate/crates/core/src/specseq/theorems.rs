use std::fmt;

use crate::cochain::{betti_numbers, complex_cohomology, induced_h_action_on_cohomology, quotient_actions};
use crate::extension::SplitExtension;
use crate::lie::LieModule;
use crate::resolution::{coefficient_rows, CoefficientRows, KernelSpec};

use super::{DoubleComplex, LengthReport, SpecSeqError, SpectralPage, SpectralSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    HypothesesUnmet(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail(w) => write!(f, "FAIL ({w})"),
            Verdict::HypothesesUnmet(why) => write!(f, "hypotheses unmet ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub checks: Vec<TheoremCheck>,
    pub length: LengthReport,
    pub e2: Vec<Vec<usize>>,
    pub e_infinity: Vec<Vec<usize>>,
    pub oracle: Option<Vec<usize>>,
}

impl TheoremReport {
    pub fn any_failure(&self) -> bool {
        self.checks.iter().any(|c| c.verdict.is_fail())
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.verdict)
    }
}

/// `dim H^p(h, H^q)` indexed `[p][q]`, where `H^q` is the cohomology of row `q` with its
/// induced `h`-action. For finite kernels the action on `H^q(n, M)` is computed from the
/// extension itself rather than from the rows.
pub fn e2_expected(ext: &SplitExtension, rows: &CoefficientRows) -> Result<Vec<Vec<usize>>, SpecSeqError> {
    let h = ext.quotient();
    let qmax = rows.max_q();
    let mut grid = vec![vec![0; qmax + 1]; h.dim() + 1];
    let finite = matches!(ext.kernel(), KernelSpec::FiniteDim(_));
    let row_cohomology = complex_cohomology(&rows.d_vert);
    for (q, degree) in row_cohomology.iter().enumerate() {
        let actions = if finite {
            induced_h_action_on_cohomology(ext, q)?
        } else {
            quotient_actions(degree, &rows.h_action[q])?
        };
        let module = LieModule::new(h, degree.betti, actions)?;
        for (p, b) in betti_numbers(&module).into_iter().enumerate() {
            grid[p][q] = b;
        }
    }
    Ok(grid)
}

/// `dim H^n(g, M)` straight from the Chevalley–Eilenberg complex of `g`.
pub fn oracle_betti(ext: &SplitExtension) -> Option<Vec<usize>> {
    ext.g_module().map(|m| betti_numbers(&m))
}

fn check(name: &'static str, verdict: Verdict) -> TheoremCheck {
    TheoremCheck { name, verdict }
}

/// Runs the full theorem suite; hypotheses are checked against the input and reported.
pub fn verify_theorems(ext: &SplitExtension) -> Result<TheoremReport, SpecSeqError> {
    let rows = coefficient_rows(ext);
    let dc = DoubleComplex::from_rows(ext.quotient(), &rows)?;
    let ss = SpectralSequence::new(dc);
    let pages = ss.pages()?;
    let length = SpectralSequence::length_and_collapse(&pages);
    let e2 = e2_expected(ext, &rows)?;
    let infinity = pages.last().expect("at least one page");
    let oracle = oracle_betti(ext);
    let trivial = ext.kernel_acts_trivially();
    let mut checks = Vec::new();

    checks.push(check("e2_identification", e2_verdict(&pages[0], &e2)));
    checks.push(check(
        "page_homology",
        match SpectralSequence::check_page_homology(&pages) {
            None => Verdict::Pass,
            Some((r, p, q)) => Verdict::Fail(format!("r={r}, (p,q)=({p},{q})")),
        },
    ));
    checks.push(check(
        "convergence",
        match &oracle {
            None => Verdict::HypothesesUnmet("no oracle for an infinite-dimensional kernel".into()),
            Some(betti) => convergence_verdict(infinity, betti),
        },
    ));
    checks.push(check("zero_row", zero_row_verdict(&rows, &length)));
    checks.push(check(
        "collapse",
        if !trivial {
            Verdict::HypothesesUnmet("kernel acts nontrivially on M".into())
        } else if !ext.kernel().is_collapse_family() {
            Verdict::HypothesesUnmet("kernel is not abelian, free, a sum or a free product of those".into())
        } else if length.length != 2 {
            Verdict::Fail(format!("length {}", length.length))
        } else if pages[0].grid() != infinity.grid() {
            Verdict::Fail("E_2 and E_∞ differ".into())
        } else {
            Verdict::Pass
        },
    ));

    let length_hyp = match ext.kernel() {
        KernelSpec::FiniteDim(n) if trivial => Ok(n.dim()),
        KernelSpec::FiniteDim(_) => Err("kernel acts nontrivially on M".to_string()),
        _ => Err("kernel is infinite-dimensional".to_string()),
    };
    match length_hyp {
        Err(why) => {
            for name in ["length_a", "length_b", "length_c"] {
                checks.push(check(name, Verdict::HypothesesUnmet(why.clone())));
            }
        }
        Ok(m) => {
            let bad = length.census.iter().find(|c| c.q == m);
            checks.push(check(
                "length_a",
                match bad {
                    None => Verdict::Pass,
                    Some(c) => Verdict::Fail(format!("d_{}^({},{}) has rank {}", c.r, c.p, c.q, c.rank)),
                },
            ));
            let bound = m.max(2);
            checks.push(check(
                "length_b",
                if length.length <= bound {
                    Verdict::Pass
                } else {
                    Verdict::Fail(format!("length {} > {bound}", length.length))
                },
            ));
            checks.push(check("length_c", length_c_verdict(ext, &e2, m, oracle.as_deref())));
        }
    }

    Ok(TheoremReport {
        checks,
        length,
        e2,
        e_infinity: infinity.grid(),
        oracle,
    })
}

fn e2_verdict(page2: &SpectralPage, expected: &[Vec<usize>]) -> Verdict {
    for (p, col) in expected.iter().enumerate() {
        for (q, &want) in col.iter().enumerate() {
            let got = page2.dim(p as i64, q as i64);
            if got != want {
                return Verdict::Fail(format!("E_2^({p},{q}) = {got}, expected {want}"));
            }
        }
    }
    Verdict::Pass
}

fn convergence_verdict(infinity: &SpectralPage, betti: &[usize]) -> Verdict {
    for (n, &b) in betti.iter().enumerate() {
        let got = infinity.total_dim(n);
        if got != b {
            return Verdict::Fail(format!("degree {n}: E_∞ total {got}, H^{n}(g,M) = {b}"));
        }
    }
    let top = infinity.entries.len() + infinity.entries[0].len();
    if (betti.len()..top).any(|n| infinity.total_dim(n) != 0) {
        return Verdict::Fail("E_∞ nonzero above the dimension of g".into());
    }
    Verdict::Pass
}

/// Rows `q ≥ 1` whose incoming vertical differential `d^{q−1}` vanishes.
pub(crate) fn zero_rows(rows: &CoefficientRows) -> Vec<usize> {
    (1..=rows.max_q()).filter(|&q| rows.d_vert[q - 1].is_zero()).collect()
}

fn zero_row_verdict(rows: &CoefficientRows, length: &LengthReport) -> Verdict {
    let qs = zero_rows(rows);
    if qs.is_empty() {
        return Verdict::HypothesesUnmet("no vanishing row differential".into());
    }
    for &q in &qs {
        if let Some(c) = length.census.iter().find(|c| c.q == q || c.q + 2 == q + c.r) {
            return Verdict::Fail(format!("row {q}: d_{}^({},{}) has rank {}", c.r, c.p, c.q, c.rank));
        }
    }
    Verdict::Pass
}

fn length_c_verdict(ext: &SplitExtension, e2: &[Vec<usize>], m: usize, oracle: Option<&[usize]>) -> Verdict {
    if m == 0 {
        return Verdict::HypothesesUnmet("kernel is zero".into());
    }
    let Some(g) = oracle else {
        return Verdict::HypothesesUnmet("no oracle".into());
    };
    let h_betti = betti_numbers(&ext.quotient_module());
    for (p, col) in e2.iter().enumerate() {
        let left = col.get(m).copied().unwrap_or(0) + h_betti.get(p + m).copied().unwrap_or(0);
        let right = g.get(p + m).copied().unwrap_or(0);
        if left > right {
            return Verdict::Fail(format!("p={p}: {left} > dim H^{}(g,M) = {right}", p + m));
        }
    }
    Verdict::Pass
}
