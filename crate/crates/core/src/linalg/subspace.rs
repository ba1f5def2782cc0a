//! Subspaces of `k^n` in canonical form, and the calculus the spectral sequence runs on.

use super::{Field, FieldElem, LinalgError, Matrix};

/// A subspace of `k^ambient_dim`.
///
/// The basis is stored as the columns of a matrix in reduced column echelon form, so two
/// subspaces with the same span compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::zeros(field, ambient_dim, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given columns.
    pub fn span(columns: &Matrix) -> Self {
        let (r, pivots) = columns.transpose().rref();
        let k = pivots.len();
        let basis = Matrix::from_fn(columns.field(), columns.rows(), k, |i, j| r.get(j, i).clone());
        Self {
            ambient_dim: columns.rows(),
            basis,
            pivots,
        }
    }

    pub fn span_vectors(field: Field, ambient_dim: usize, vectors: &[Vec<FieldElem>]) -> Self {
        Self::span(&Matrix::from_columns(field, ambient_dim, vectors))
    }

    /// Span of the standard basis vectors `e_start .. e_end`.
    pub fn coordinate(field: Field, ambient_dim: usize, start: usize, end: usize) -> Self {
        let end = end.min(ambient_dim);
        let start = start.min(end);
        let basis = Matrix::from_fn(field, ambient_dim, end - start, |i, j| {
            if i == start + j {
                field.one()
            } else {
                field.zero()
            }
        });
        Self {
            ambient_dim,
            basis,
            pivots: (start..end).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as columns, in canonical form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElem>> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Reduces `v` against the echelon basis; the remainder is zero iff `v` is in the span.
    pub fn contains_vector(&self, v: &[FieldElem]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut rem = v.to_vec();
        for (j, &p) in self.pivots.iter().enumerate() {
            let c = rem[p].clone();
            if c.is_zero() {
                continue;
            }
            for (i, slot) in rem.iter_mut().enumerate() {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    *slot = slot.sub(&c.mul(b));
                }
            }
        }
        rem.iter().all(FieldElem::is_zero)
    }

    /// `self ⊆ other`
    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.dim() <= other.dim()
            && (0..self.dim()).all(|j| other.contains_vector(&self.basis.column(j)))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(Subspace::span(&self.basis.hstack(&other.basis)))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field(), self.ambient_dim));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        // a x = b y  <=>  [a | -b] (x, y) = 0
        let joint = self.basis.hstack(&-&other.basis);
        let solutions = kernel_basis(&joint);
        let a = self.dim();
        let vectors: Vec<Vec<FieldElem>> = solutions
            .basis_vectors()
            .into_iter()
            .map(|s| self.basis.mul_vec(&s[..a]))
            .collect();
        Ok(Subspace::span_vectors(self.field(), self.ambient_dim, &vectors))
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace, LinalgError> {
        if m.cols() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.cols(),
            });
        }
        Ok(Subspace::span(&(m * &self.basis)))
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// `ker(m)` inside `k^cols`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let field = m.field();
    let n = m.cols();
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<FieldElem>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, f).neg();
            }
            v
        })
        .collect();
    Subspace::span_vectors(field, n, &vectors)
}

/// Column span of `m`.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    a.sum(b)
}

pub fn subspace_intersection(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    a.intersection(b)
}

/// `{ v : m v ∈ s }`
pub fn preimage(m: &Matrix, s: &Subspace) -> Result<Subspace, LinalgError> {
    if s.ambient_dim() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            found: s.ambient_dim(),
        });
    }
    if s.is_full() {
        return Ok(Subspace::full(m.field(), m.cols()));
    }
    // m v = s y  <=>  [m | -s] (v, y) = 0
    let joint = m.hstack(&-s.basis());
    let solutions = kernel_basis(&joint);
    let n = m.cols();
    let vectors: Vec<Vec<FieldElem>> = solutions
        .basis_vectors()
        .into_iter()
        .map(|v| v[..n].to_vec())
        .collect();
    Ok(Subspace::span_vectors(m.field(), n, &vectors))
}

/// A chosen basis of the quotient `sub / by`, with coordinates for vectors of `sub`.
///
/// Coset representatives complete the canonical basis of `by` greedily, scanning the canonical
/// basis of `sub` in order.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    by_dim: usize,
    representatives: Vec<Vec<FieldElem>>,
    // left inverse of [by | reps]
    left_inverse: Matrix,
    full: Matrix,
}

impl QuotientBasis {
    pub fn new(sub: &Subspace, by: &Subspace) -> Result<Self, LinalgError> {
        sub.check_ambient(by)?;
        if !by.is_subspace_of(sub) {
            return Err(LinalgError::NotNested);
        }
        let field = sub.field();
        let n = sub.ambient_dim();
        let mut current = by.clone();
        let mut representatives = Vec::new();
        for v in sub.basis_vectors() {
            if current.dim() == sub.dim() {
                break;
            }
            if !current.contains_vector(&v) {
                current = current.sum(&Subspace::span_vectors(field, n, std::slice::from_ref(&v)))?;
                representatives.push(v);
            }
        }
        let reps = Matrix::from_columns(field, n, &representatives);
        let full = by.basis().hstack(&reps);
        let left_inverse = left_inverse(&full);
        Ok(Self {
            by_dim: by.dim(),
            representatives,
            left_inverse,
            full,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<FieldElem>] {
        &self.representatives
    }

    /// Coordinates of the coset of `v` in the representative basis, or `None` if `v ∉ sub`.
    pub fn coordinates(&self, v: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let all = self.left_inverse.mul_vec(v);
        if self.full.mul_vec(&all) != v {
            return None;
        }
        Some(all[self.by_dim..].to_vec())
    }
}

/// Left inverse of a matrix with independent columns.
fn left_inverse(m: &Matrix) -> Matrix {
    let field = m.field();
    let d = m.cols();
    let (_, rows) = m.transpose().rref();
    debug_assert_eq!(rows.len(), d, "columns must be independent");
    let square = Matrix::from_fn(field, d, d, |i, j| m.get(rows[i], j).clone());
    let inv = square.inverse().expect("selected rows are independent");
    let mut out = Matrix::zeros(field, d, m.rows());
    for (k, &r) in rows.iter().enumerate() {
        for i in 0..d {
            out.set(i, r, inv.get(i, k).clone());
        }
    }
    out
}

/// Which containment failed when inducing a map on quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inclusion {
    DomainDivisorInDomain,
    CodomainDivisorInCodomain,
    MapPreservesSubspace,
    MapPreservesDivisor,
}

impl std::fmt::Display for Inclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Inclusion::DomainDivisorInDomain => "domain divisor is not contained in domain subspace",
            Inclusion::CodomainDivisorInCodomain => {
                "codomain divisor is not contained in codomain subspace"
            }
            Inclusion::MapPreservesSubspace => "map does not send domain subspace into codomain subspace",
            Inclusion::MapPreservesDivisor => "map does not send domain divisor into codomain divisor",
        })
    }
}

/// The map `dom_sub / dom_quot_by -> cod_sub / cod_quot_by` induced by `m`, in the
/// representative bases of [`QuotientBasis`].
pub fn induced_map_on_quotients(
    m: &Matrix,
    dom_sub: &Subspace,
    dom_quot_by: &Subspace,
    cod_sub: &Subspace,
    cod_quot_by: &Subspace,
) -> Result<Matrix, LinalgError> {
    if m.cols() != dom_sub.ambient_dim() || m.rows() != cod_sub.ambient_dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: dom_sub.ambient_dim(),
            found: m.cols(),
        });
    }
    if !dom_quot_by.is_subspace_of(dom_sub) {
        return Err(LinalgError::Precondition(Inclusion::DomainDivisorInDomain));
    }
    if !cod_quot_by.is_subspace_of(cod_sub) {
        return Err(LinalgError::Precondition(Inclusion::CodomainDivisorInCodomain));
    }
    if !dom_sub.image_under(m)?.is_subspace_of(cod_sub) {
        return Err(LinalgError::Precondition(Inclusion::MapPreservesSubspace));
    }
    if !dom_quot_by.image_under(m)?.is_subspace_of(cod_quot_by) {
        return Err(LinalgError::Precondition(Inclusion::MapPreservesDivisor));
    }
    let dom = QuotientBasis::new(dom_sub, dom_quot_by)?;
    let cod = QuotientBasis::new(cod_sub, cod_quot_by)?;
    let columns: Vec<Vec<FieldElem>> = dom
        .representatives()
        .iter()
        .map(|r| {
            cod.coordinates(&m.mul_vec(r))
                .expect("image lies in codomain subspace")
        })
        .collect();
    Ok(Matrix::from_columns(m.field(), cod.dim(), &columns))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn e(n: usize, i: usize) -> Vec<FieldElem> {
        (0..n).map(|j| Q.from_i64((i == j) as i64)).collect()
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace {
        let vs: Vec<Vec<FieldElem>> = vs.iter().map(|v| v.iter().map(|&x| Q.from_i64(x)).collect()).collect();
        Subspace::span_vectors(Q, n, &vs)
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(Q, 3)).is_zero());
        assert!(kernel_basis(&Matrix::zeros(Q, 2, 3)).is_full());
        let k = kernel_basis(&Matrix::from_i64(Q, &[&[1, 1]]));
        assert_eq!(k, span(2, &[&[1, -1]]));
    }

    #[test]
    fn image_examples() {
        assert!(image_basis(&Matrix::identity(Q, 3)).is_full());
        assert!(image_basis(&Matrix::zeros(Q, 3, 2)).is_zero());
        assert_eq!(image_basis(&Matrix::from_i64(Q, &[&[1], &[2]])), span(2, &[&[1, 2]]));
        // canonical form: scaled spanning sets give identical representations
        assert_eq!(span(2, &[&[3, 6]]), span(2, &[&[-1, -2]]));
    }

    #[test]
    fn sum_examples() {
        let v = span(3, &[&[1, 2, 3], &[0, 1, 1]]);
        let zero = Subspace::zero(Q, 3);
        assert_eq!(v.sum(&v).unwrap(), v);
        assert_eq!(v.sum(&zero).unwrap(), v);
        let s = span(3, &[&[1, 0, 0]]).sum(&span(3, &[&[0, 1, 0]])).unwrap();
        assert_eq!(s, Subspace::coordinate(Q, 3, 0, 2));
        assert!(v.sum(&Subspace::zero(Q, 2)).is_err());
    }

    #[test]
    fn intersection_examples() {
        let v = span(3, &[&[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(v.intersection(&v).unwrap(), v);
        assert!(v.intersection(&Subspace::zero(Q, 3)).unwrap().is_zero());
        let a = Subspace::coordinate(Q, 3, 0, 2);
        let b = Subspace::coordinate(Q, 3, 1, 3);
        assert_eq!(a.intersection(&b).unwrap(), span(3, &[&[0, 1, 0]]));
    }

    #[test]
    fn preimage_examples() {
        let m = Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]);
        assert!(preimage(&m, &Subspace::full(Q, 2)).unwrap().is_full());
        assert_eq!(preimage(&m, &Subspace::zero(Q, 2)).unwrap(), kernel_basis(&m));
        assert!(preimage(&m, &span(2, &[&[1, 0]])).unwrap().is_full());
        assert!(preimage(&m, &Subspace::zero(Q, 3)).is_err());
    }

    #[test]
    fn induced_map_identity_and_zero() {
        let m = Matrix::identity(Q, 3);
        let sub = span(3, &[&[1, 0, 0], &[0, 1, 1]]);
        let by = span(3, &[&[1, 0, 0]]);
        let induced = induced_map_on_quotients(&m, &sub, &by, &sub, &by).unwrap();
        assert_eq!(induced, Matrix::identity(Q, 1));

        // everything lands in the codomain divisor
        let proj = Matrix::from_i64(Q, &[&[1, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let full = Subspace::full(Q, 3);
        let line = span(3, &[&[1, 0, 0]]);
        let induced = induced_map_on_quotients(&proj, &full, &Subspace::zero(Q, 3), &full, &line).unwrap();
        assert_eq!(induced, Matrix::zeros(Q, 2, 3));
    }

    #[test]
    fn induced_map_nilpotent_block() {
        // m e1 = 0, m e2 = e1
        let m = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        let full = Subspace::full(Q, 2);
        let e1 = Subspace::span_vectors(Q, 2, &[e(2, 0)]);
        let e2 = Subspace::span_vectors(Q, 2, &[e(2, 1)]);
        // dividing by span(e2) is not preserved: m e2 = e1 is a nonzero coset
        assert_eq!(
            induced_map_on_quotients(&m, &full, &e2, &full, &e2),
            Err(LinalgError::Precondition(Inclusion::MapPreservesDivisor))
        );
        // dividing by span(e1): representative is e2, m e2 = e1 ≡ 0
        let induced = induced_map_on_quotients(&m, &full, &e1, &full, &e1).unwrap();
        assert_eq!(induced, Matrix::zeros(Q, 1, 1));
        let q = QuotientBasis::new(&full, &e1).unwrap();
        assert_eq!(q.representatives(), &[e(2, 1)]);
    }

    #[test]
    fn induced_map_reports_each_inclusion() {
        let m = Matrix::identity(Q, 2);
        let full = Subspace::full(Q, 2);
        let zero = Subspace::zero(Q, 2);
        let line = Subspace::span_vectors(Q, 2, &[e(2, 0)]);
        assert_eq!(
            induced_map_on_quotients(&m, &line, &full, &full, &zero),
            Err(LinalgError::Precondition(Inclusion::DomainDivisorInDomain))
        );
        assert_eq!(
            induced_map_on_quotients(&m, &full, &zero, &line, &full),
            Err(LinalgError::Precondition(Inclusion::CodomainDivisorInCodomain))
        );
        assert_eq!(
            induced_map_on_quotients(&m, &full, &zero, &line, &zero),
            Err(LinalgError::Precondition(Inclusion::MapPreservesSubspace))
        );
    }
}
