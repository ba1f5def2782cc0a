use super::*;
use crate::catalog::{self, from_images};
use crate::extension::{CoefficientModule, KernelAction};
use crate::linalg::Field;

const Q: Field = Field::Rational;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn finite(name: &str) -> SplitExtension {
    catalog::finite_corpus()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap()
        .extension
}

fn family(name: &str) -> SplitExtension {
    catalog::family_corpus()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap()
        .extension
}

fn line() -> LieAlgebra {
    LieAlgebra::abelian(Q, &["a"])
}

#[test]
fn heisenberg_kernel_rows_are_exterior_powers() {
    let rows = coefficient_rows(&finite("heisenberg_kernel_weighted"));
    assert_eq!(rows.dims(), vec![1, 3, 3, 1]);
    assert_eq!(rows.basis[2], labels(&["x∧y", "x∧z", "y∧z"]));
    // d z* = −x*∧y*, all other generators closed
    assert!(!rows.d_vert[1].is_zero());
    assert!(rows.d_vert[0].is_zero() && rows.d_vert[2].is_zero());
}

#[test]
fn free_rows_have_two_terms() {
    let rows = coefficient_rows(&family("free3_f3"));
    assert_eq!(rows.dims(), vec![1, 3]);
    assert_eq!(rows.basis[1], labels(&["x1", "x2", "x3"]));
    assert!(rows.d_vert.iter().all(Matrix::is_zero));
}

#[test]
fn bracket_image_acts_trivially_on_generators() {
    let rows = coefficient_rows(&family("free2_bracket_image"));
    assert!(rows.h_action[1][0].is_zero());
}

#[test]
fn linear_image_gives_dual_action() {
    // φ(a)x1 = x2, so (a·f)(x1) = −f(x2)
    let rows = coefficient_rows(&family("free2_nilpotent"));
    assert_eq!(rows.h_action[1][0], Matrix::from_i64(Q, &[&[0, -1], &[0, 0]]));
}

#[test]
fn nontrivial_module_on_free_kernel() {
    let rows = coefficient_rows(&family("free2_nontrivial_module"));
    // d^0 stacks ρ(x1), ρ(x2)
    let expected = Matrix::from_i64(Q, &[&[0, 1], &[0, 0], &[0, 0], &[0, 0]]);
    assert_eq!(rows.d_vert[0], expected);
    rows.check(&line()).unwrap();
}

#[test]
fn free_one_generator_matches_line() {
    for c in [0, 2, -1] {
        let free = from_images(KernelSpec::Free(labels(&["x"])), line(), &[&[&format!("{c} x")]], None);
        let fin = SplitExtension::new(
            KernelSpec::FiniteDim(LieAlgebra::abelian(Q, &["x"])),
            line(),
            KernelAction::Matrices(vec![Matrix::from_i64(Q, &[&[c]])]),
            CoefficientModule::trivial(Q, 1, 1, 1),
        )
        .unwrap();
        let (a, b) = (coefficient_rows(&free), coefficient_rows(&fin));
        assert_eq!(a.dims(), b.dims());
        assert_eq!(a.h_action, b.h_action);
        assert_eq!(a.h_action[1][0], Matrix::from_i64(Q, &[&[-c]]));
    }
}

#[test]
fn free_plus_abelian_cross_term_sign() {
    let kernel = KernelSpec::DirectSumFreeAbelian {
        free: labels(&["x"]),
        abelian: labels(&["t"]),
    };
    let ext = from_images(kernel, line(), &[&["t", "0"]], None);
    let rows = coefficient_rows(&ext);
    assert_eq!(rows.dims(), vec![1, 2, 1]);
    assert_eq!(rows.basis[1], labels(&["t", "x"]));
    // a·x = t: (a·f)(x) = −f(t)
    assert_eq!(rows.h_action[1][0], Matrix::from_i64(Q, &[&[0, 0], &[-1, 0]]));
    assert!(rows.h_action[2][0].is_zero());
}

#[test]
fn family_row_dimensions() {
    let cases: [(&str, &[usize]); 5] = [
        ("free_plus_abelian_cross", &[1, 3, 2]),
        ("free1_plus_abelian2", &[1, 3, 3, 1]),
        ("free_plus_free", &[1, 4, 4]),
        ("free_product_abelian_free", &[1, 4, 1]),
        ("free_product_three_factors", &[1, 5, 3, 1]),
    ];
    for (name, dims) in cases {
        assert_eq!(coefficient_rows(&family(name)).dims(), dims, "{name}");
    }
}

#[test]
fn free_plus_free_top_row_is_tensor_product() {
    let rows = coefficient_rows(&family("free_plus_free"));
    assert_eq!(rows.basis[2], labels(&["x1⊗y1", "x1⊗y2", "x2⊗y1", "x2⊗y2"]));
}

#[test]
fn every_corpus_member_has_valid_rows() {
    for e in catalog::finite_corpus().into_iter().chain(catalog::family_corpus()) {
        let rows = coefficient_rows(&e.extension);
        rows.check(e.extension.quotient()).unwrap_or_else(|v| panic!("{}: {v}", e.name));
        assert_eq!(rows.quotient_dim(), e.extension.quotient().dim());
    }
}

#[test]
fn broken_rows_are_reported() {
    let h = line();
    let mut rows = coefficient_rows(&finite("heisenberg_kernel_weighted"));
    rows.h_action[1][0] = Matrix::zeros(Q, 3, 3);
    assert!(matches!(rows.check(&h), Err(RowViolation::NotEquivariant { .. })));
    let mut rows = coefficient_rows(&finite("heisenberg_kernel_weighted"));
    rows.d_vert[0] = Matrix::from_i64(Q, &[&[1], &[0], &[0]]);
    rows.d_vert[1] = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
    assert_eq!(rows.check(&h), Err(RowViolation::SquareNonzero { q: 0 }));
}

#[test]
fn kernel_families_are_named() {
    assert_eq!(family("free_plus_free").kernel().family(), "free_plus_free");
    assert_eq!(finite("heisenberg").kernel().family(), "finite");
    assert!(!finite("heisenberg_kernel_weighted").kernel().is_collapse_family());
    assert!(finite("heisenberg").kernel().is_collapse_family());
}
