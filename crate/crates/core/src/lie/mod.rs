//! Lie algebras from structure constants, their modules, derivation actions and
//! semidirect products.

mod algebra;
mod derivation;
mod module;

pub use algebra::{validate_algebra, AlgebraReport, AxiomViolation, LieAlgebra, StructureConstants};
pub use derivation::{
    validate_derivation_action, DerivationAction, DerivationReport, DerivationViolation,
};
pub use module::{combine, validate_module, LieModule, ModuleReport};

use crate::cochain::{dual_action, exterior_derivation, ExteriorBasis};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(AlgebraReport),
    #[error("invalid module: {0}")]
    InvalidModule(ModuleReport),
    #[error("invalid action: {0}")]
    InvalidDerivation(DerivationReport),
    #[error("{0}")]
    Shape(String),
}

/// `n ⋊_φ h` on the basis (kernel basis, then quotient basis), with
/// `[(s,α),(t,β)] = ([s,t] + φ(α)t − φ(β)s, [α,β])`.
pub fn semidirect_sum(
    n: &LieAlgebra,
    h: &LieAlgebra,
    phi: &DerivationAction,
) -> Result<LieAlgebra, LieError> {
    if n.field() != h.field() {
        return Err(LieError::Shape("kernel and quotient over different fields".into()));
    }
    if phi.n_dim() != n.dim() || phi.matrices().len() != h.dim() {
        return Err(LieError::Shape("action does not match kernel and quotient".into()));
    }
    let (dn, dh) = (n.dim(), h.dim());
    let field = n.field();
    let labels = n.labels().iter().chain(h.labels()).cloned().collect();
    let mut sc = StructureConstants::zero(field, labels);
    for s in 0..dn {
        for t in 0..dn {
            for k in 0..dn {
                sc.set(s, t, k, n.constant(s, t, k).clone());
            }
        }
    }
    for a in 0..dh {
        for b in 0..dh {
            for k in 0..dh {
                sc.set(dn + a, dn + b, dn + k, h.constant(a, b, k).clone());
            }
        }
        let d = phi.matrix(a);
        for t in 0..dn {
            for k in 0..dn {
                // [(0,α),(t,0)] = (φ(α)t, 0)
                sc.set(dn + a, t, k, d.get(k, t).clone());
                sc.set(t, dn + a, k, d.get(k, t).neg());
            }
        }
    }
    LieAlgebra::new(sc)
}

/// Matrix of `f ↦ α∘f − Σ_j f(x_1∧…∧D x_j∧…∧x_q)` on `Hom_k(Λ^q n, M)`, where `D = φ(α)` and
/// `α` acts on `M` by `module_action`.
pub fn restrict_action_to_cochains(derivation: &Matrix, module_action: &Matrix, q: usize) -> Matrix {
    let basis = ExteriorBasis::new_or_empty(derivation.rows(), q);
    let theta = exterior_derivation(derivation, &basis);
    dual_action(derivation.field(), &theta, module_action)
}
