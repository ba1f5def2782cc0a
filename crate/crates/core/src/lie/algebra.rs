use std::fmt;

use crate::linalg::{Field, FieldElem, Matrix};

use super::LieError;

/// `(i, j, [(k, c), …])`: `[e_i, e_j] = Σ c e_k`.
pub type SparseBracket<'a> = (usize, usize, &'a [(usize, i64)]);

/// Raw structure constants: `[e_i, e_j] = Σ_k c[i][j][k] e_k`. Not validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub field: Field,
    pub labels: Vec<String>,
    /// Flattened `c[i][j][k]` at `(i * dim + j) * dim + k`.
    pub c: Vec<FieldElem>,
}

impl StructureConstants {
    pub fn zero(field: Field, labels: Vec<String>) -> Self {
        let d = labels.len();
        Self {
            field,
            labels,
            c: vec![field.zero(); d * d * d],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &FieldElem {
        let d = self.dim();
        &self.c[(i * d + j) * d + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: FieldElem) {
        let d = self.dim();
        self.c[(i * d + j) * d + k] = value;
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[FieldElem]) {
        for (k, x) in v.iter().enumerate() {
            self.set(i, j, k, x.clone());
            self.set(j, i, k, x.neg());
        }
    }

    fn bracket_vec(&self, u: &[FieldElem], v: &[FieldElem]) -> Vec<FieldElem> {
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a.mul(b);
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *slot = slot.add(&ab.mul(c));
                    }
                }
            }
        }
        out
    }
}

/// A violated Lie algebra axiom, indices into the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `c[i][j][k] != -c[j][i][k]`
    Antisymmetry { i: usize, j: usize, k: usize },
    /// `c[i][i][k] != 0`
    Alternating { i: usize, k: usize },
    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] != 0`
    Jacobi { i: usize, j: usize, k: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    pub labels: Vec<String>,
    pub violations: Vec<AxiomViolation>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid Lie algebra");
        }
        let l = |i: usize| self.labels.get(i).map_or("?", String::as_str);
        for (n, v) in self.violations.iter().enumerate() {
            if n > 0 {
                write!(f, "; ")?;
            }
            match *v {
                AxiomViolation::Antisymmetry { i, j, k } => write!(
                    f,
                    "antisymmetry fails at ({},{},{})",
                    l(i),
                    l(j),
                    l(k)
                )?,
                AxiomViolation::Alternating { i, k } => {
                    write!(f, "[{},{}] has nonzero {}-component", l(i), l(i), l(k))?
                }
                AxiomViolation::Jacobi { i, j, k } => {
                    write!(f, "Jacobi fails on ({},{},{})", l(i), l(j), l(k))?
                }
            }
        }
        Ok(())
    }
}

/// Checks antisymmetry, the alternating condition and Jacobi, listing every violation.
pub fn validate_algebra(sc: &StructureConstants) -> AlgebraReport {
    let d = sc.dim();
    let mut violations = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if i < j && sc.get(i, j, k).add(sc.get(j, i, k)) != sc.field.zero() {
                    violations.push(AxiomViolation::Antisymmetry { i, j, k });
                }
            }
        }
        for k in 0..d {
            if !sc.get(i, i, k).is_zero() {
                violations.push(AxiomViolation::Alternating { i, k });
            }
        }
    }
    if violations.is_empty() {
        let basis = |i: usize| -> Vec<FieldElem> {
            (0..d).map(|k| sc.field.from_i64((i == k) as i64)).collect()
        };
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (x, y, z) = (basis(i), basis(j), basis(k));
                    let t1 = sc.bracket_vec(&x, &sc.bracket_vec(&y, &z));
                    let t2 = sc.bracket_vec(&y, &sc.bracket_vec(&z, &x));
                    let t3 = sc.bracket_vec(&z, &sc.bracket_vec(&x, &y));
                    if t1.iter().zip(&t2).zip(&t3).any(|((a, b), c)| !a.add(b).add(c).is_zero()) {
                        violations.push(AxiomViolation::Jacobi { i, j, k });
                    }
                }
            }
        }
    }
    AlgebraReport {
        labels: sc.labels.clone(),
        violations,
    }
}

/// A finite-dimensional Lie algebra, validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    sc: StructureConstants,
}

impl LieAlgebra {
    pub fn new(sc: StructureConstants) -> Result<Self, LieError> {
        let c_len = sc.dim() * sc.dim() * sc.dim();
        if sc.c.len() != c_len {
            return Err(LieError::Shape(format!(
                "expected {c_len} structure constants, found {}",
                sc.c.len()
            )));
        }
        if sc.c.iter().any(|x| x.field() != sc.field) {
            return Err(LieError::Shape("structure constants over the wrong field".into()));
        }
        let report = validate_algebra(&sc);
        if !report.is_valid() {
            return Err(LieError::InvalidAlgebra(report));
        }
        Ok(Self { sc })
    }

    /// Builds from a sparse bracket table `[e_i, e_j] = Σ coef e_k`, filling in antisymmetry.
    pub fn from_brackets(
        field: Field,
        labels: &[&str],
        brackets: &[SparseBracket<'_>],
    ) -> Result<Self, LieError> {
        let mut sc = StructureConstants::zero(field, labels.iter().map(|s| s.to_string()).collect());
        for &(i, j, terms) in brackets {
            let mut v = vec![field.zero(); labels.len()];
            for &(k, c) in terms {
                v[k] = v[k].add(&field.from_i64(c));
            }
            sc.set_bracket(i, j, &v);
        }
        Self::new(sc)
    }

    pub fn abelian(field: Field, labels: &[&str]) -> Self {
        Self::from_brackets(field, labels, &[]).expect("abelian algebra is valid")
    }

    pub fn field(&self) -> Field {
        self.sc.field
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.sc.labels
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &FieldElem {
        self.sc.get(i, j, k)
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<FieldElem> {
        (0..self.dim()).map(|k| self.sc.get(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, u: &[FieldElem], v: &[FieldElem]) -> Vec<FieldElem> {
        self.sc.bracket_vec(u, v)
    }

    /// `ad(e_i)`: column `j` is `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> Matrix {
        let d = self.dim();
        Matrix::from_fn(self.field(), d, d, |k, j| self.sc.get(i, j, k).clone())
    }

    pub fn is_abelian(&self) -> bool {
        self.sc.c.iter().all(FieldElem::is_zero)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldElem> {
        (0..self.dim()).map(|k| self.field().from_i64((i == k) as i64)).collect()
    }
}
