//! The Chevalley–Eilenberg cochain complex `Hom_k(Λ^q L, M)`.
//!
//! Cochain coordinates put the exterior monomial index slowest and the module coordinate
//! fastest. The differential is the standard one,
//! `(df)(x_0,…,x_q) = Σ_i (−1)^i x_i·f(…x̂_i…) + Σ_{i<j} (−1)^{i+j} f([x_i,x_j], …x̂_i…x̂_j…)`.

mod exterior;

pub use exterior::{dual_action, exterior_derivation, sort_with_sign, ExteriorBasis};

use crate::extension::SplitExtension;
use crate::lie::{restrict_action_to_cochains, LieModule};
use crate::linalg::{image_basis, induced_map_on_quotients, kernel_basis, Inclusion, LinalgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CochainError {
    #[error("degree {degree} exceeds dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("action does not descend to cohomology: {0}")]
    Equivariance(Inclusion),
    #[error("cohomology of the kernel needs a finite-dimensional kernel")]
    InfiniteKernel,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `d^q : C^q → C^{q+1}`; a zero map of the right shape above the top degree.
pub fn ce_cochain_differential(module: &LieModule, q: usize) -> Matrix {
    let l = module.algebra();
    let field = l.field();
    let n = l.dim();
    let dm = module.dim();
    let src = ExteriorBasis::new_or_empty(n, q);
    let tgt = ExteriorBasis::new_or_empty(n, q + 1);
    let mut out = Matrix::zeros(field, tgt.len() * dm, src.len() * dm);
    for (row, mono) in tgt.monomials().iter().enumerate() {
        for i in 0..mono.len() {
            let mut rest = mono.clone();
            let x = rest.remove(i);
            let col = src.index_of(&rest).expect("face of a sorted monomial is sorted");
            let rho = module.action(x);
            for a in 0..dm {
                for b in 0..dm {
                    let v = rho.get(a, b);
                    if !v.is_zero() {
                        out.add_at(row * dm + a, col * dm + b, &v.signed(i % 2 == 1));
                    }
                }
            }
        }
        for i in 0..mono.len() {
            for j in i + 1..mono.len() {
                let br = l.bracket_basis(mono[i], mono[j]);
                let rest: Vec<usize> = mono
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i && t != j)
                    .map(|(_, &x)| x)
                    .collect();
                for (k, c) in br.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut tuple = Vec::with_capacity(rest.len() + 1);
                    tuple.push(k);
                    tuple.extend_from_slice(&rest);
                    if let Some((col, negate)) = src.sort_wedge(&tuple) {
                        let v = c.signed(negate ^ ((i + j) % 2 == 1));
                        for a in 0..dm {
                            out.add_at(row * dm + a, col * dm + a, &v);
                        }
                    }
                }
            }
        }
    }
    out
}

/// All differentials `d^0 … d^{dim L}` of the CE complex.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    pub differentials: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(module: &LieModule) -> Self {
        let n = module.algebra().dim();
        let dims = (0..=n)
            .map(|q| ExteriorBasis::new_or_empty(n, q).len() * module.dim())
            .collect();
        let differentials = (0..=n).map(|q| ce_cochain_differential(module, q)).collect();
        Self { dims, differentials }
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyDegree {
    pub betti: usize,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
}

/// Cocycles, coboundaries and Betti numbers of an arbitrary finite cochain complex given by
/// its differentials `d^q : C^q → C^{q+1}` for `q = 0..len`.
pub fn complex_cohomology(differentials: &[Matrix]) -> Vec<CohomologyDegree> {
    let mut out = Vec::with_capacity(differentials.len());
    for (q, d) in differentials.iter().enumerate() {
        let cocycles = kernel_basis(d);
        let coboundaries = if q == 0 {
            Subspace::zero(d.field(), d.cols())
        } else {
            image_basis(&differentials[q - 1])
        };
        out.push(CohomologyDegree {
            betti: cocycles.dim() - coboundaries.dim(),
            cocycles,
            coboundaries,
        });
    }
    out
}

/// `H^q(L, M)` for `q = 0..=dim L`.
pub fn cohomology(module: &LieModule) -> Vec<CohomologyDegree> {
    complex_cohomology(&CochainComplex::new(module).differentials)
}

pub fn betti_numbers(module: &LieModule) -> Vec<usize> {
    cohomology(module).iter().map(|c| c.betti).collect()
}

/// Matrices of `actions` on `cocycles / coboundaries`.
pub fn quotient_actions(degree: &CohomologyDegree, actions: &[Matrix]) -> Result<Vec<Matrix>, CochainError> {
    actions
        .iter()
        .map(|a| {
            induced_map_on_quotients(a, &degree.cocycles, &degree.coboundaries, &degree.cocycles, &degree.coboundaries)
                .map_err(|e| match e {
                    LinalgError::Precondition(inc) => CochainError::Equivariance(inc),
                    other => CochainError::Linalg(other),
                })
        })
        .collect()
}

/// The `h`-action on `H^q(n, M)` for a finite-dimensional kernel, one matrix per quotient
/// basis element, in the coset-representative basis of `ker d^q / im d^{q−1}`.
pub fn induced_h_action_on_cohomology(ext: &SplitExtension, q: usize) -> Result<Vec<Matrix>, CochainError> {
    let (n_module, phi) = ext.finite_kernel_data().ok_or(CochainError::InfiniteKernel)?;
    let all = cohomology(&n_module);
    let Some(degree) = all.get(q) else {
        return Ok(vec![Matrix::zeros(ext.field(), 0, 0); ext.quotient().dim()]);
    };
    let actions: Vec<Matrix> = (0..ext.quotient().dim())
        .map(|a| restrict_action_to_cochains(phi.matrix(a), ext.module().quotient_action(a), q))
        .collect();
    quotient_actions(degree, &actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::lie::LieAlgebra;
    use crate::linalg::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn abelian_differentials_vanish() {
        let l = LieAlgebra::abelian(Q, &["a", "b", "c"]);
        let m = LieModule::trivial(&l, 2);
        for q in 0..=3 {
            assert!(ce_cochain_differential(&m, q).is_zero());
        }
    }

    #[test]
    fn two_dim_nonabelian_d1() {
        // [x,y] = y: d(x*) = 0, d(y*) = −(x∧y)*
        let l = catalog::two_dim_nonabelian(Q);
        let d1 = ce_cochain_differential(&LieModule::trivial(&l, 1), 1);
        assert_eq!(d1, Matrix::from_i64(Q, &[&[0, -1]]));
    }

    #[test]
    fn heisenberg_d1() {
        // basis (x,y,z), [x,y] = z; monomials of degree 2: x∧y, x∧z, y∧z
        let l = catalog::heisenberg(Q);
        let d1 = ce_cochain_differential(&LieModule::trivial(&l, 1), 1);
        assert_eq!(d1, Matrix::from_i64(Q, &[&[0, 0, -1], &[0, 0, 0], &[0, 0, 0]]));
    }

    #[test]
    fn golden_betti_numbers() {
        let sl2 = catalog::sl2(Q);
        assert_eq!(betti_numbers(&LieModule::trivial(&sl2, 1)), vec![1, 0, 0, 1]);
        let heis = catalog::heisenberg(Q);
        assert_eq!(betti_numbers(&LieModule::trivial(&heis, 1)), vec![1, 2, 2, 1]);
        let b = catalog::two_dim_nonabelian(Q);
        assert_eq!(betti_numbers(&LieModule::trivial(&b, 1)), vec![1, 1, 0]);
    }

    #[test]
    fn differential_squares_to_zero_with_coefficients() {
        let sl2 = catalog::sl2(Q);
        let m = LieModule::adjoint(&sl2);
        let c = CochainComplex::new(&m);
        for q in 0..c.top_degree() {
            assert!((&c.differentials[q + 1] * &c.differentials[q]).is_zero());
        }
        // Whitehead: H^*(sl2, ad) = 0
        assert!(betti_numbers(&m).iter().all(|&b| b == 0));
    }
}
