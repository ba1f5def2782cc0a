use std::collections::BTreeMap;

use crate::linalg::{induced_map_on_quotients, preimage, rank, LinalgError, Matrix, Subspace};

use super::{DoubleComplex, SpecSeqError, TotalComplex};

/// `E_r^{p,q} = Z_r^{p,q} / divisor` inside the coordinate space of `T^{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageEntry {
    pub dim: usize,
    pub cycles: Subspace,
    pub divisor: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    /// `entries[p][q]`
    pub entries: Vec<Vec<PageEntry>>,
    /// `d_r^{p,q} : E_r^{p,q} → E_r^{p+r,q−r+1}` for targets inside the grid.
    pub differentials: BTreeMap<(usize, usize), Matrix>,
}

impl SpectralPage {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 {
            return 0;
        }
        self.entries
            .get(p as usize)
            .and_then(|c| c.get(q as usize))
            .map_or(0, |e| e.dim)
    }

    /// Dimension table indexed `[p][q]`.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        self.entries
            .iter()
            .map(|col| col.iter().map(|e| e.dim).collect())
            .collect()
    }

    pub fn differential(&self, p: usize, q: usize) -> Option<&Matrix> {
        self.differentials.get(&(p, q))
    }

    pub fn differential_rank(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 {
            return 0;
        }
        self.differentials.get(&(p as usize, q as usize)).map_or(0, rank)
    }

    /// `(p, q, rank)` for every nonzero `d_r`.
    pub fn nonzero_differentials(&self) -> Vec<(usize, usize, usize)> {
        self.differentials
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&(p, q), m)| (p, q, rank(m)))
            .collect()
    }

    /// Sum of dimensions on the antidiagonal `p + q = n`.
    pub fn total_dim(&self, n: usize) -> usize {
        (0..=n).map(|p| self.dim(p as i64, (n - p) as i64)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub r: usize,
    pub p: usize,
    pub q: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthReport {
    /// Smallest `t ≥ 2` with `d_r = 0` for all `r ≥ t`.
    pub length: usize,
    /// Smallest `t ≥ 2` whose dimension table equals that of `E_∞`.
    pub collapse_page: usize,
    pub census: Vec<CensusEntry>,
}

/// The column-filtration spectral sequence of a double complex, every page computed
/// directly from the `Z_r` / `B_r` subspaces.
#[derive(Clone, Debug)]
pub struct SpectralSequence {
    pub double_complex: DoubleComplex,
    pub total: TotalComplex,
}

impl SpectralSequence {
    pub fn new(dc: DoubleComplex) -> Self {
        let total = TotalComplex::new(&dc);
        Self {
            double_complex: dc,
            total,
        }
    }

    /// The page index at which `E_∞` is read off.
    pub fn infinity_index(&self) -> usize {
        self.double_complex.p_max() + self.double_complex.q_max() + 2
    }

    /// `Z_r^{p, n−p} = F^p T^n ∩ D^{-1}(F^{p+r} T^{n+1})`
    fn cycles(&self, r: i64, p: i64, n: i64) -> Subspace {
        let fp = self.total.filtration(n, p);
        let target = self.total.filtration(n + 1, p + r);
        let d = self.total.differential(n);
        let pre = preimage(&d, &target).expect("shapes agree");
        fp.intersection(&pre).expect("same ambient")
    }

    /// `B_r^{p, n−p} = F^p T^n ∩ D(F^{p−r} T^{n−1})`
    fn boundaries(&self, r: i64, p: i64, n: i64) -> Subspace {
        let fp = self.total.filtration(n, p);
        if n == 0 {
            return Subspace::zero(self.total.field, fp.ambient_dim());
        }
        let src = self.total.filtration(n - 1, p - r);
        let img = src.image_under(&self.total.differential(n - 1)).expect("shapes agree");
        fp.intersection(&img).expect("same ambient")
    }

    fn entry(&self, r: usize, p: usize, q: usize) -> PageEntry {
        let (r, p, n) = (r as i64, p as i64, (p + q) as i64);
        let cycles = self.cycles(r, p, n);
        let divisor = self
            .cycles(r - 1, p + 1, n)
            .sum(&self.boundaries(r - 1, p, n))
            .expect("same ambient");
        debug_assert!(divisor.is_subspace_of(&cycles));
        let dim = cycles.dim() - divisor.dim();
        PageEntry { dim, cycles, divisor }
    }

    pub fn page(&self, r: usize) -> Result<SpectralPage, SpecSeqError> {
        let (pm, qm) = (self.double_complex.p_max(), self.double_complex.q_max());
        let entries: Vec<Vec<PageEntry>> = (0..=pm)
            .map(|p| (0..=qm).map(|q| self.entry(r, p, q)).collect())
            .collect();
        let mut differentials = BTreeMap::new();
        for p in 0..=pm {
            for q in 0..=qm {
                let (tp, tq) = (p + r, q as i64 - r as i64 + 1);
                if tp > pm || tq < 0 || tq as usize > qm {
                    continue;
                }
                let src = &entries[p][q];
                let dst = &entries[tp][tq as usize];
                let d = self.total.differential((p + q) as i64);
                let m = induced_map_on_quotients(&d, &src.cycles, &src.divisor, &dst.cycles, &dst.divisor)
                    .map_err(|e| match e {
                        LinalgError::Precondition(inclusion) => SpecSeqError::Quotient { r, p, q, inclusion },
                        other => panic!("shape error in page computation: {other}"),
                    })?;
                differentials.insert((p, q), m);
            }
        }
        Ok(SpectralPage {
            r,
            entries,
            differentials,
        })
    }

    pub fn infinity(&self) -> Result<SpectralPage, SpecSeqError> {
        self.page(self.infinity_index())
    }

    /// Pages `2..=infinity_index()`.
    pub fn pages(&self) -> Result<Vec<SpectralPage>, SpecSeqError> {
        (2..=self.infinity_index()).map(|r| self.page(r)).collect()
    }

    /// Length, collapse page and census of nonzero differentials from already computed pages
    /// `2..=infinity_index()`.
    pub fn length_and_collapse(pages: &[SpectralPage]) -> LengthReport {
        let census: Vec<CensusEntry> = pages
            .iter()
            .flat_map(|pg| {
                pg.nonzero_differentials()
                    .into_iter()
                    .map(move |(p, q, rank)| CensusEntry { r: pg.r, p, q, rank })
            })
            .collect();
        let length = census.iter().map(|c| c.r + 1).max().unwrap_or(2).max(2);
        let infinity = pages.last().map(SpectralPage::grid).unwrap_or_default();
        let collapse_page = pages
            .iter()
            .find(|pg| pg.grid() == infinity)
            .map_or(2, |pg| pg.r);
        LengthReport {
            length,
            collapse_page,
            census,
        }
    }

    /// `dim E_{r+1}^{p,q} = dim ker d_r^{p,q} − rank d_r^{p−r,q+r−1}`; returns the first
    /// `(r, p, q)` where it fails.
    pub fn check_page_homology(pages: &[SpectralPage]) -> Option<(usize, usize, usize)> {
        for w in pages.windows(2) {
            let (cur, next) = (&w[0], &w[1]);
            let r = cur.r as i64;
            for (p, col) in cur.entries.iter().enumerate() {
                for (q, e) in col.iter().enumerate() {
                    let (pi, qi) = (p as i64, q as i64);
                    let out = cur.differential_rank(pi, qi);
                    let incoming = cur.differential_rank(pi - r, qi + r - 1);
                    if next.dim(pi, qi) + out + incoming != e.dim {
                        return Some((cur.r, p, q));
                    }
                }
            }
        }
        None
    }
}
