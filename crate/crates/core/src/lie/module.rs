use std::fmt;

use crate::linalg::{FieldElem, Matrix};

use super::{LieAlgebra, LieError};

/// Basis pairs `(i, j)` where `ρ([e_i,e_j]) != [ρ(e_i), ρ(e_j)]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleReport {
    pub labels: Vec<String>,
    pub violations: Vec<(usize, usize)>,
}

impl ModuleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ModuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid module");
        }
        let l = |i: usize| self.labels.get(i).map_or("?", String::as_str);
        let pairs: Vec<String> = self
            .violations
            .iter()
            .map(|&(i, j)| format!("({},{})", l(i), l(j)))
            .collect();
        write!(f, "representation property fails on {}", pairs.join(", "))
    }
}

/// `Σ_k v_k ρ(e_k)`
pub fn combine(field: crate::Field, dim: usize, rho: &[Matrix], v: &[FieldElem]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (c, m) in v.iter().zip(rho) {
        if !c.is_zero() {
            out = &out + &m.scale(c);
        }
    }
    out
}

pub fn validate_module(algebra: &LieAlgebra, rho: &[Matrix]) -> ModuleReport {
    let d = algebra.dim();
    let dim = rho.first().map_or(0, Matrix::rows);
    let mut violations = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let lhs = combine(algebra.field(), dim, rho, &algebra.bracket_basis(i, j));
            if lhs != Matrix::commutator(&rho[i], &rho[j]) {
                violations.push((i, j));
            }
        }
    }
    ModuleReport {
        labels: algebra.labels().to_vec(),
        violations,
    }
}

/// A finite-dimensional representation, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule {
    algebra: LieAlgebra,
    dim: usize,
    rho: Vec<Matrix>,
}

impl LieModule {
    pub fn new(algebra: &LieAlgebra, dim: usize, rho: Vec<Matrix>) -> Result<Self, LieError> {
        if rho.len() != algebra.dim() {
            return Err(LieError::Shape(format!(
                "module needs {} action matrices, found {}",
                algebra.dim(),
                rho.len()
            )));
        }
        if let Some(m) = rho.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(LieError::Shape(format!(
                "action matrix is {}x{}, module has dimension {dim}",
                m.rows(),
                m.cols()
            )));
        }
        if rho.iter().any(|m| m.field() != algebra.field()) {
            return Err(LieError::Shape("action matrices over the wrong field".into()));
        }
        let report = validate_module(algebra, &rho);
        if !report.is_valid() {
            return Err(LieError::InvalidModule(report));
        }
        Ok(Self {
            algebra: algebra.clone(),
            dim,
            rho,
        })
    }

    pub fn trivial(algebra: &LieAlgebra, dim: usize) -> Self {
        let rho = vec![Matrix::zeros(algebra.field(), dim, dim); algebra.dim()];
        Self::new(algebra, dim, rho).expect("trivial module is valid")
    }

    pub fn adjoint(algebra: &LieAlgebra) -> Self {
        let rho = (0..algebra.dim()).map(|i| algebra.ad(i)).collect();
        Self::new(algebra, algebra.dim(), rho).expect("adjoint representation satisfies Jacobi")
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    pub fn is_trivial(&self) -> bool {
        self.rho.iter().all(Matrix::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn trivial_and_adjoint_are_modules() {
        let sl2 = catalog::sl2(Q);
        assert!(validate_module(&sl2, LieModule::trivial(&sl2, 2).rho()).is_valid());
        let ad: Vec<Matrix> = (0..3).map(|i| sl2.ad(i)).collect();
        assert!(validate_module(&sl2, &ad).is_valid());
    }

    #[test]
    fn identity_on_e_and_h_is_not_a_module() {
        let sl2 = catalog::sl2(Q);
        let id = Matrix::identity(Q, 2);
        let rho = vec![id.clone(), Matrix::zeros(Q, 2, 2), id];
        let report = validate_module(&sl2, &rho);
        // basis (e,f,h): [h,e] = 2e forces ρ(2e) = 0, but ρ(e) = I
        assert!(report.violations.contains(&(0, 2)));
        assert!(!report.is_valid());
        assert!(LieModule::new(&sl2, 2, rho).is_err());
    }
}
