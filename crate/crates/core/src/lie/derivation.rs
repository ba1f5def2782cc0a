use std::fmt;

use crate::linalg::Matrix;

use super::module::combine;
use super::{LieAlgebra, LieError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivationViolation {
    /// `φ(e_a)` fails the Leibniz rule on the kernel basis pair `(s, t)`.
    Leibniz { generator: usize, s: usize, t: usize },
    /// `φ([e_a, e_b]) != [φ(e_a), φ(e_b)]`
    Homomorphism { a: usize, b: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationReport {
    pub kernel_labels: Vec<String>,
    pub quotient_labels: Vec<String>,
    pub violations: Vec<DerivationViolation>,
}

impl DerivationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DerivationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid action by derivations");
        }
        let n = |i: usize| self.kernel_labels.get(i).map_or("?", String::as_str);
        let h = |i: usize| self.quotient_labels.get(i).map_or("?", String::as_str);
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                DerivationViolation::Leibniz { generator, s, t } => {
                    format!("φ({}) is not a derivation on ({},{})", h(*generator), n(*s), n(*t))
                }
                DerivationViolation::Homomorphism { a, b } => {
                    format!("φ is not a homomorphism on ({},{})", h(*a), h(*b))
                }
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate_derivation_action(n: &LieAlgebra, h: &LieAlgebra, phi: &[Matrix]) -> DerivationReport {
    let mut violations = Vec::new();
    for (a, d) in phi.iter().enumerate() {
        for s in 0..n.dim() {
            for t in s + 1..n.dim() {
                let lhs = d.mul_vec(&n.bracket_basis(s, t));
                let rhs1 = n.bracket(&d.column(s), &n.basis_vector(t));
                let rhs2 = n.bracket(&n.basis_vector(s), &d.column(t));
                let ok = lhs
                    .iter()
                    .zip(rhs1.iter().zip(&rhs2))
                    .all(|(l, (x, y))| *l == x.add(y));
                if !ok {
                    violations.push(DerivationViolation::Leibniz { generator: a, s, t });
                }
            }
        }
    }
    for a in 0..h.dim() {
        for b in a + 1..h.dim() {
            let lhs = combine(h.field(), n.dim(), phi, &h.bracket_basis(a, b));
            if lhs != Matrix::commutator(&phi[a], &phi[b]) {
                violations.push(DerivationViolation::Homomorphism { a, b });
            }
        }
    }
    DerivationReport {
        kernel_labels: n.labels().to_vec(),
        quotient_labels: h.labels().to_vec(),
        violations,
    }
}

/// A homomorphism `φ: h → Der(n)`, one matrix per basis element of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationAction {
    n_dim: usize,
    phi: Vec<Matrix>,
}

impl DerivationAction {
    pub fn new(n: &LieAlgebra, h: &LieAlgebra, phi: Vec<Matrix>) -> Result<Self, LieError> {
        if phi.len() != h.dim() {
            return Err(LieError::Shape(format!(
                "need one derivation per quotient basis element ({}), found {}",
                h.dim(),
                phi.len()
            )));
        }
        if let Some(m) = phi.iter().find(|m| m.rows() != n.dim() || m.cols() != n.dim()) {
            return Err(LieError::Shape(format!(
                "derivation matrix is {}x{}, kernel has dimension {}",
                m.rows(),
                m.cols(),
                n.dim()
            )));
        }
        let report = validate_derivation_action(n, h, &phi);
        if !report.is_valid() {
            return Err(LieError::InvalidDerivation(report));
        }
        Ok(Self { n_dim: n.dim(), phi })
    }

    pub fn zero(n: &LieAlgebra, h: &LieAlgebra) -> Self {
        Self {
            n_dim: n.dim(),
            phi: vec![Matrix::zeros(n.field(), n.dim(), n.dim()); h.dim()],
        }
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.phi
    }

    pub fn matrix(&self, a: usize) -> &Matrix {
        &self.phi[a]
    }

    pub fn is_zero(&self) -> bool {
        self.phi.iter().all(Matrix::is_zero)
    }
}
