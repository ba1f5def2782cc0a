//! The double complex `C^{p,q} = Hom_k(Λ^p h, R^q)`, its total complex, and the spectral
//! sequence of the column filtration.

mod pages;
mod theorems;

pub use pages::{CensusEntry, LengthReport, PageEntry, SpectralPage, SpectralSequence};
pub use theorems::{
    e2_expected, oracle_betti, verify_theorems, TheoremCheck, TheoremReport, Verdict,
};

use crate::cochain::{complex_cohomology, ce_cochain_differential, CochainError, ExteriorBasis};
use crate::extension::SplitExtension;
use crate::lie::{LieError, LieModule};
use crate::linalg::{Field, Inclusion, Matrix, Subspace};
use crate::resolution::{coefficient_rows, CoefficientRows, RowViolation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecSeqError {
    #[error("coefficient rows: {0}")]
    Rows(#[from] RowViolation),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("double complex: {0}")]
    DoubleComplex(#[from] DoubleComplexViolation),
    #[error("page {r}, ({p},{q}): induced differential not well defined ({inclusion})")]
    Quotient { r: usize, p: usize, q: usize, inclusion: Inclusion },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DoubleComplexViolation {
    #[error("d_h² != 0 at ({p},{q})")]
    Horizontal { p: usize, q: usize },
    #[error("d_v² != 0 at ({p},{q})")]
    Vertical { p: usize, q: usize },
    #[error("d_h d_v + d_v d_h != 0 at ({p},{q})")]
    Anticommutation { p: usize, q: usize },
    #[error("total differential squares to a nonzero map in degree {n}")]
    Total { n: usize },
}

/// A bounded first-quadrant double complex with `d_h : C^{p,q} → C^{p+1,q}` and
/// `d_v : C^{p,q} → C^{p,q+1}` anticommuting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    pub field: Field,
    /// `dims[p][q]`
    pub dims: Vec<Vec<usize>>,
    pub d_h: Vec<Vec<Matrix>>,
    pub d_v: Vec<Vec<Matrix>>,
}

impl DoubleComplex {
    /// Builds `Hom_k(Λ^p h, R^q)` with `d_h` the CE differential of `h` with coefficients in
    /// `R^q` and `d_v = (−1)^p (I ⊗ d_vert)`.
    pub fn from_rows(h: &crate::lie::LieAlgebra, rows: &CoefficientRows) -> Result<Self, SpecSeqError> {
        rows.check(h)?;
        let field = rows.field;
        let hd = h.dim();
        let qmax = rows.max_q();
        let modules: Vec<LieModule> = (0..=qmax)
            .map(|q| LieModule::new(h, rows.dim(q), rows.h_action[q].clone()))
            .collect::<Result<_, _>>()?;
        let mut dims = vec![vec![0; qmax + 1]; hd + 1];
        let mut d_h = vec![Vec::with_capacity(qmax + 1); hd + 1];
        let mut d_v = vec![Vec::with_capacity(qmax + 1); hd + 1];
        for p in 0..=hd {
            let wedge = ExteriorBasis::new_or_empty(hd, p).len();
            let sign = field.from_i64(if p % 2 == 0 { 1 } else { -1 });
            for (q, module) in modules.iter().enumerate() {
                dims[p][q] = wedge * rows.dim(q);
                d_h[p].push(ce_cochain_differential(module, p));
                d_v[p].push(Matrix::identity(field, wedge).kron(&rows.d_vert[q]).scale(&sign));
            }
        }
        let dc = Self { field, dims, d_h, d_v };
        dc.check()?;
        Ok(dc)
    }

    pub fn p_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn q_max(&self) -> usize {
        self.dims[0].len() - 1
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 {
            return 0;
        }
        self.dims
            .get(p as usize)
            .and_then(|col| col.get(q as usize))
            .copied()
            .unwrap_or(0)
    }

    /// Checks `d_h² = 0`, `d_v² = 0`, anticommutation, and `D² = 0` on the total complex.
    pub fn check(&self) -> Result<(), DoubleComplexViolation> {
        let (pm, qm) = (self.p_max(), self.q_max());
        for p in 0..=pm {
            for q in 0..=qm {
                if p < pm && !(&self.d_h[p + 1][q] * &self.d_h[p][q]).is_zero() {
                    return Err(DoubleComplexViolation::Horizontal { p, q });
                }
                if q < qm && !(&self.d_v[p][q + 1] * &self.d_v[p][q]).is_zero() {
                    return Err(DoubleComplexViolation::Vertical { p, q });
                }
                if p < pm && q < qm {
                    let a = &self.d_v[p + 1][q] * &self.d_h[p][q];
                    let b = &self.d_h[p][q + 1] * &self.d_v[p][q];
                    if !(&a + &b).is_zero() {
                        return Err(DoubleComplexViolation::Anticommutation { p, q });
                    }
                }
            }
        }
        let total = TotalComplex::new(self);
        for n in 0..total.top() {
            if !(&total.differentials[n + 1] * &total.differentials[n]).is_zero() {
                return Err(DoubleComplexViolation::Total { n });
            }
        }
        Ok(())
    }

    /// The same total complex with the roles of `p` and `q` exchanged.
    pub fn transpose(&self) -> DoubleComplex {
        let (pm, qm) = (self.p_max(), self.q_max());
        let mut dims = vec![vec![0; pm + 1]; qm + 1];
        let mut d_h = vec![Vec::new(); qm + 1];
        let mut d_v = vec![Vec::new(); qm + 1];
        for q in 0..=qm {
            for p in 0..=pm {
                dims[q][p] = self.dims[p][q];
                d_h[q].push(self.d_v[p][q].clone());
                d_v[q].push(self.d_h[p][q].clone());
            }
        }
        DoubleComplex {
            field: self.field,
            dims,
            d_h,
            d_v,
        }
    }
}

/// `T^n = ⊕_{p+q=n} C^{p,q}` with blocks in ascending `p`, so `F^p T^n` is a coordinate tail.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub field: Field,
    /// `blocks[n]` lists `(p, start)` for each nonempty-range column in degree `n`.
    pub blocks: Vec<Vec<(usize, usize)>>,
    pub dims: Vec<usize>,
    /// `differentials[n] : T^n → T^{n+1}`
    pub differentials: Vec<Matrix>,
}

impl TotalComplex {
    pub fn new(dc: &DoubleComplex) -> Self {
        let (pm, qm) = (dc.p_max(), dc.q_max());
        let top = pm + qm;
        let mut blocks = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut start = 0;
            let mut bl = Vec::new();
            for p in n.saturating_sub(qm)..=n.min(pm) {
                bl.push((p, start));
                start += dc.dims[p][n - p];
            }
            blocks.push(bl);
            dims.push(start);
        }
        let mut differentials = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let rows = dims.get(n + 1).copied().unwrap_or(0);
            let mut d = Matrix::zeros(dc.field, rows, dims[n]);
            for &(p, col) in &blocks[n] {
                let q = n - p;
                if n < top {
                    for &(p2, row) in &blocks[n + 1] {
                        if p2 == p + 1 {
                            d.set_block(row, col, &dc.d_h[p][q]);
                        } else if p2 == p && q < qm {
                            d.set_block(row, col, &dc.d_v[p][q]);
                        }
                    }
                }
            }
            differentials.push(d);
        }
        Self {
            field: dc.field,
            blocks,
            dims,
            differentials,
        }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < 0 {
            0
        } else {
            self.dims.get(n as usize).copied().unwrap_or(0)
        }
    }

    /// `F^p T^n`; the whole space for `p ≤ 0`.
    pub fn filtration(&self, n: i64, p: i64) -> Subspace {
        let dim = self.dim(n);
        if dim == 0 {
            return Subspace::zero(self.field, 0);
        }
        let start = self.blocks[n as usize]
            .iter()
            .find(|&&(k, _)| k as i64 >= p)
            .map_or(dim, |&(_, s)| s);
        Subspace::coordinate(self.field, dim, start, dim)
    }

    /// `D^n`, with empty shapes outside the range.
    pub fn differential(&self, n: i64) -> Matrix {
        if n < 0 {
            Matrix::zeros(self.field, self.dim(0), 0)
        } else if n as usize >= self.differentials.len() {
            Matrix::zeros(self.field, 0, 0)
        } else {
            self.differentials[n as usize].clone()
        }
    }
}

/// Builds the rows for the extension's kernel family and assembles the double complex.
pub fn build_double_complex(ext: &SplitExtension) -> Result<DoubleComplex, SpecSeqError> {
    DoubleComplex::from_rows(ext.quotient(), &coefficient_rows(ext))
}

/// Betti numbers of the total complex.
pub fn total_cohomology(dc: &DoubleComplex) -> Vec<usize> {
    complex_cohomology(&TotalComplex::new(dc).differentials)
        .iter()
        .map(|c| c.betti)
        .collect()
}

#[cfg(test)]
mod tests;
