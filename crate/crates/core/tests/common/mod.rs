//! Seeded random split extensions with nilpotent kernels.

#![allow(dead_code)]

use liess_core::cochain::{ce_cochain_differential, ExteriorBasis};
use liess_core::lie::StructureConstants;
use liess_core::linalg::kernel_basis;
use liess_core::{
    CoefficientModule, DerivationAction, Field, FieldElem, LieAlgebra, LieModule, Matrix, SplitExtension,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn small(field: Field, rng: &mut impl Rng) -> FieldElem {
    field.from_i64(rng.gen_range(-2..=2))
}

fn random_combination(field: Field, basis: &[Vec<FieldElem>], len: usize, rng: &mut impl Rng) -> Vec<FieldElem> {
    let mut out = vec![field.zero(); len];
    for v in basis {
        let c = small(field, rng);
        for (o, x) in out.iter_mut().zip(v) {
            *o = o.add(&c.mul(x));
        }
    }
    out
}

/// Kernel of a linear map on `n×n` matrices, returned as matrices.
fn matrix_kernel(field: Field, n: usize, f: impl Fn(&Matrix) -> Vec<FieldElem>) -> Vec<Matrix> {
    let columns: Vec<Vec<FieldElem>> = (0..n * n)
        .map(|e| {
            let mut m = Matrix::zeros(field, n, n);
            m.set(e / n.max(1), e % n.max(1), field.one());
            f(&m)
        })
        .collect();
    let rows = columns.first().map_or(0, Vec::len);
    let k = kernel_basis(&Matrix::from_columns(field, rows, &columns));
    k.basis_vectors()
        .into_iter()
        .map(|v| Matrix::from_fn(field, n, n, |i, j| v[i * n + j].clone()))
        .collect()
}

fn random_matrix_in(field: Field, n: usize, basis: &[Matrix], rng: &mut impl Rng) -> Matrix {
    let vecs: Vec<Vec<FieldElem>> = basis
        .iter()
        .map(|m| (0..n * n).map(|e| m.get(e / n, e % n).clone()).collect())
        .collect();
    let v = random_combination(field, &vecs, n * n, rng);
    Matrix::from_fn(field, n, n, |i, j| v[i * n + j].clone())
}

fn flatten(m: &Matrix) -> Vec<FieldElem> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Random nilpotent algebra of dimension `dim`, built by repeated central extensions by
/// random 2-cocycles of an abelian seed.
pub fn random_nilpotent(field: Field, dim: usize, rng: &mut impl Rng) -> LieAlgebra {
    let seed = rng.gen_range(1..=dim.clamp(1, 2)).min(dim);
    let label = |i: usize| format!("e{}", i + 1);
    let mut sc = StructureConstants::zero(field, (0..seed).map(label).collect());
    while sc.dim() < dim {
        let g = LieAlgebra::new(sc.clone()).expect("central extensions satisfy Jacobi");
        let d = g.dim();
        let d2 = ce_cochain_differential(&LieModule::trivial(&g, 1), 2);
        let cocycles = kernel_basis(&d2).basis_vectors();
        let c = random_combination(field, &cocycles, ExteriorBasis::new_or_empty(d, 2).len(), rng);
        let mut next = StructureConstants::zero(field, (0..=d).map(label).collect());
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    next.set(i, j, k, sc.get(i, j, k).clone());
                }
            }
        }
        for (idx, mono) in ExteriorBasis::new_or_empty(d, 2).monomials().iter().enumerate() {
            let (i, j) = (mono[0], mono[1]);
            next.set(i, j, d, c[idx].clone());
            next.set(j, i, d, c[idx].neg());
        }
        sc = next;
    }
    LieAlgebra::new(sc).expect("central extensions satisfy Jacobi")
}

/// `Der(n)` as a list of matrices.
pub fn derivations(n: &LieAlgebra) -> Vec<Matrix> {
    let field = n.field();
    let d = n.dim();
    matrix_kernel(field, d, |m| {
        let mut out = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let br = n.bracket_basis(i, j);
                let lhs = m.mul_vec(&br);
                let a = n.bracket(&m.column(i), &n.basis_vector(j));
                let b = n.bracket(&n.basis_vector(i), &m.column(j));
                for k in 0..d {
                    out.push(lhs[k].sub(&a[k]).sub(&b[k]));
                }
            }
        }
        out
    })
}

/// Solutions `X` in `span(basis)` of `[A, X] = λ X`.
fn eigen_commutant(field: Field, a: &Matrix, lambda: i64, basis: &[Matrix], rng: &mut impl Rng) -> Matrix {
    let n = a.rows();
    // parametrise X = Σ c_i B_i and solve for c
    let columns: Vec<Vec<FieldElem>> = basis
        .iter()
        .map(|b| {
            let lhs = Matrix::commutator(a, b);
            flatten(&(&lhs + &b.scale(&field.from_i64(-lambda))))
        })
        .collect();
    if basis.is_empty() {
        return Matrix::zeros(field, n, n);
    }
    let coeffs = kernel_basis(&Matrix::from_columns(field, n * n, &columns)).basis_vectors();
    let c = random_combination(field, &coeffs, basis.len(), rng);
    let mut x = Matrix::zeros(field, n, n);
    for (ci, b) in c.iter().zip(basis) {
        x = &x + &b.scale(ci);
    }
    x
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientShape {
    Line,
    Plane,
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleShape {
    Trivial,
    QuotientOnly,
    Adjoint,
}

fn quotient_algebra(field: Field, shape: QuotientShape) -> LieAlgebra {
    match shape {
        QuotientShape::Line => LieAlgebra::abelian(field, &["a"]),
        QuotientShape::Plane => LieAlgebra::abelian(field, &["a", "b"]),
        QuotientShape::Affine => {
            LieAlgebra::from_brackets(field, &["a", "b"], &[(0, 1, &[(1, 1)])]).expect("valid")
        }
    }
}

/// `h`-representations: any matrix for a line, commuting pairs for the plane, and
/// `a ↦ A, b ↦ B` with `[A,B] = B` for the affine algebra.
fn quotient_rep(field: Field, shape: QuotientShape, dim: usize, rng: &mut impl Rng) -> Vec<Matrix> {
    let all: Vec<Matrix> = (0..dim * dim)
        .map(|e| {
            let mut m = Matrix::zeros(field, dim, dim);
            m.set(e / dim, e % dim, field.one());
            m
        })
        .collect();
    let a = random_matrix_in(field, dim, &all, rng);
    match shape {
        QuotientShape::Line => vec![a],
        QuotientShape::Plane => {
            let b = eigen_commutant(field, &a, 0, &all, rng);
            vec![a, b]
        }
        QuotientShape::Affine => {
            let b = eigen_commutant(field, &a, 1, &all, rng);
            vec![a, b]
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomExtension {
    pub description: String,
    pub extension: SplitExtension,
}

/// One random split extension with `dim n ≤ 4`, `dim h ≤ 2`.
pub fn random_extension(field: Field, rng: &mut impl Rng) -> RandomExtension {
    let shape = *[QuotientShape::Line, QuotientShape::Plane, QuotientShape::Affine]
        .choose(rng)
        .expect("nonempty");
    let h = quotient_algebra(field, shape);
    let max_n = if h.dim() == 1 { 4 } else { 3 };
    let n = random_nilpotent(field, rng.gen_range(1..=max_n), rng);
    let der = derivations(&n);
    let da = random_matrix_in(field, n.dim(), &der, rng);
    let phi = match shape {
        QuotientShape::Line => vec![da],
        QuotientShape::Plane => vec![da.clone(), eigen_commutant(field, &da, 0, &der, rng)],
        QuotientShape::Affine => vec![da.clone(), eigen_commutant(field, &da, 1, &der, rng)],
    };
    let phi = DerivationAction::new(&n, &h, phi).expect("commutant construction gives a homomorphism");
    let module_shape = *[ModuleShape::Trivial, ModuleShape::QuotientOnly, ModuleShape::Adjoint]
        .choose(rng)
        .expect("nonempty");
    let module = match module_shape {
        ModuleShape::Trivial => CoefficientModule::trivial(field, 1, n.dim(), h.dim()),
        ModuleShape::QuotientOnly => {
            let dim = rng.gen_range(1..=2);
            let zero = vec![Matrix::zeros(field, dim, dim); n.dim()];
            CoefficientModule::new(field, dim, zero, quotient_rep(field, shape, dim, rng))
        }
        ModuleShape::Adjoint => {
            let g = liess_core::lie::semidirect_sum(&n, &h, &phi).expect("valid");
            CoefficientModule::from_g_module(&LieModule::adjoint(&g), n.dim())
        }
    };
    let description = format!("{field} n={} h={shape:?} M={module_shape:?}", n.dim());
    let extension = SplitExtension::finite(n, h, &phi, module).expect("random extensions are valid");
    RandomExtension { description, extension }
}

/// `(D_a, D_b)` in `span(basis)` with `[D_a, D_b] = 0` (or `= D_b` when `affine`).
pub fn random_pair(field: Field, basis: &[Matrix], affine: bool, rng: &mut impl Rng) -> Vec<Matrix> {
    let n = basis.first().map_or(0, Matrix::rows);
    let da = random_matrix_in(field, n, basis, rng);
    let db = eigen_commutant(field, &da, affine as i64, basis, rng);
    vec![da, db]
}
