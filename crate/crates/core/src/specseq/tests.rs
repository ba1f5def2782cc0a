use super::*;
use crate::catalog;
use crate::linalg::rank;

const Q: Field = Field::Rational;

fn corpus(name: &str) -> SplitExtension {
    catalog::finite_corpus()
        .into_iter()
        .chain(catalog::family_corpus())
        .find(|e| e.name == name)
        .unwrap()
        .extension
}

fn sequence(name: &str) -> SpectralSequence {
    SpectralSequence::new(build_double_complex(&corpus(name)).unwrap())
}

fn totals(page: &SpectralPage, top: usize) -> Vec<usize> {
    (0..=top).map(|n| page.total_dim(n)).collect()
}

fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(Q, rows)
}

fn z(r: usize, c: usize) -> Matrix {
    Matrix::zeros(Q, r, c)
}

/// `a ∈ C^{0,1}, b ∈ C^{1,0}, c ∈ C^{1,1}, e ∈ C^{2,0}` with `d_h a = c`, `d_v b = c`,
/// `d_h b = e`: the class of `a` is hit by nothing until `d_2 [a] = ±[e]`.
fn zigzag() -> DoubleComplex {
    let one = || m(&[&[1]]);
    DoubleComplex {
        field: Q,
        dims: vec![vec![0, 1], vec![1, 1], vec![1, 0]],
        d_h: vec![
            vec![z(1, 0), one()],
            vec![one(), z(0, 1)],
            vec![z(0, 1), z(0, 0)],
        ],
        d_v: vec![
            vec![z(1, 0), z(0, 1)],
            vec![one(), z(0, 1)],
            vec![z(0, 1), z(0, 0)],
        ],
    }
}

fn unit_square() -> DoubleComplex {
    DoubleComplex {
        field: Q,
        dims: vec![vec![1, 1], vec![1, 1]],
        d_h: vec![vec![z(1, 1), z(1, 1)], vec![z(0, 1), z(0, 1)]],
        d_v: vec![vec![z(1, 1), z(0, 1)], vec![z(1, 1), z(0, 1)]],
    }
}

#[test]
fn zero_square_has_binomial_totals() {
    let dc = unit_square();
    dc.check().unwrap();
    assert_eq!(total_cohomology(&dc), vec![1, 2, 1]);
    let ss = SpectralSequence::new(dc);
    assert_eq!(ss.page(2).unwrap().grid(), vec![vec![1, 1], vec![1, 1]]);
}

#[test]
fn zigzag_has_a_nonzero_d2() {
    let dc = zigzag();
    dc.check().unwrap();
    assert_eq!(total_cohomology(&dc), vec![0, 0, 0, 0]);
    let ss = SpectralSequence::new(dc);
    assert_eq!(ss.page(0).unwrap().grid(), vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
    assert_eq!(ss.page(1).unwrap().grid(), vec![vec![0, 1], vec![0, 0], vec![1, 0]]);
    let e2 = ss.page(2).unwrap();
    assert_eq!(e2.grid(), vec![vec![0, 1], vec![0, 0], vec![1, 0]]);
    assert_eq!(e2.nonzero_differentials(), vec![(0, 1, 1)]);
    assert_eq!(ss.page(3).unwrap().grid(), vec![vec![0, 0], vec![0, 0], vec![0, 0]]);

    let pages = ss.pages().unwrap();
    let report = SpectralSequence::length_and_collapse(&pages);
    assert_eq!(report.length, 3);
    assert_eq!(report.collapse_page, 3);
    assert_eq!(report.census, vec![CensusEntry { r: 2, p: 0, q: 1, rank: 1 }]);
    assert_eq!(SpectralSequence::check_page_homology(&pages), None);
}

#[test]
fn broken_double_complexes_are_rejected() {
    let line = DoubleComplex {
        field: Q,
        dims: vec![vec![1], vec![1], vec![1]],
        d_h: vec![vec![m(&[&[1]])], vec![m(&[&[1]])], vec![z(0, 1)]],
        d_v: vec![vec![z(0, 1)], vec![z(0, 1)], vec![z(0, 1)]],
    };
    assert_eq!(line.check(), Err(DoubleComplexViolation::Horizontal { p: 0, q: 0 }));
    let mut dc = unit_square();
    // a commuting square instead of an anticommuting one
    for (p, q) in [(0, 0), (0, 1)] {
        dc.d_h[p][q] = m(&[&[1]]);
    }
    for (p, q) in [(0, 0), (1, 0)] {
        dc.d_v[p][q] = m(&[&[1]]);
    }
    assert_eq!(dc.check(), Err(DoubleComplexViolation::Anticommutation { p: 0, q: 0 }));
}

#[test]
fn page_homology_detects_a_wrong_page() {
    let mut pages = SpectralSequence::new(zigzag()).pages().unwrap();
    pages[1].entries[0][1].dim = 1;
    assert_eq!(SpectralSequence::check_page_homology(&pages), Some((2, 0, 1)));
}

#[test]
fn two_dim_nonabelian_totals() {
    let dc = build_double_complex(&corpus("two_dim_nonabelian")).unwrap();
    assert_eq!(total_cohomology(&dc), vec![1, 1, 0]);
}

#[test]
fn heisenberg_pages() {
    let ss = sequence("heisenberg");
    let e2 = ss.page(2).unwrap();
    assert_eq!(e2.grid(), vec![vec![1, 1, 1], vec![1, 1, 1]]);
    assert_eq!(totals(&ss.infinity().unwrap(), 3), vec![1, 2, 2, 1]);
    assert!(e2.nonzero_differentials().is_empty());
}

#[test]
fn heisenberg_by_plane_has_length_three() {
    let ss = sequence("heisenberg_by_plane");
    let pages = ss.pages().unwrap();
    let report = SpectralSequence::length_and_collapse(&pages);
    assert_eq!(report.length, 3);
    assert_eq!(report.census, vec![CensusEntry { r: 2, p: 0, q: 2, rank: 2 }]);
    assert_eq!(pages[0].grid(), vec![vec![1, 2, 2, 1], vec![2, 4, 4, 2], vec![1, 2, 2, 1]]);
    assert_eq!(
        ss.infinity().unwrap().grid(),
        vec![vec![1, 2, 0, 1], vec![2, 4, 4, 2], vec![1, 0, 2, 1]]
    );
    assert_eq!(totals(&pages[pages.len() - 1], 5), vec![1, 4, 5, 5, 4, 1]);
}

#[test]
fn free_kernel_totals() {
    let ss = sequence("free2_trivial_action");
    assert_eq!(totals(&ss.infinity().unwrap(), 2), vec![1, 3, 2]);
}

#[test]
fn pages_stabilize_after_infinity_index() {
    for name in ["heisenberg_by_plane", "k2_by_sl2_standard", "free_plus_free_two_dim"] {
        let ss = sequence(name);
        let inf = ss.infinity().unwrap();
        let later = ss.page(ss.infinity_index() + 3).unwrap();
        assert_eq!(inf.grid(), later.grid(), "{name}");
        assert!(later.nonzero_differentials().is_empty());
    }
}

#[test]
fn transpose_preserves_total_cohomology() {
    for name in ["heisenberg_kernel_weighted", "heisenberg_by_plane", "free_plus_abelian_two_dim"] {
        let dc = build_double_complex(&corpus(name)).unwrap();
        let t = dc.transpose();
        t.check().unwrap();
        assert_eq!(total_cohomology(&dc), total_cohomology(&t), "{name}");
    }
}

#[test]
fn filtration_is_a_coordinate_tail() {
    let dc = zigzag();
    let total = TotalComplex::new(&dc);
    assert_eq!(total.dims, vec![0, 2, 2, 0]);
    assert_eq!(total.filtration(1, 0).dim(), 2);
    assert_eq!(total.filtration(1, 1).dim(), 1);
    assert_eq!(total.filtration(1, 2).dim(), 0);
    assert_eq!(rank(&total.differential(1)), 2);
}

#[test]
fn verify_theorems_reports_hypotheses() {
    let report = verify_theorems(&corpus("heisenberg_kernel_adjoint")).unwrap();
    assert!(matches!(report.verdict("collapse"), Some(Verdict::HypothesesUnmet(_))));
    assert_eq!(report.verdict("convergence"), Some(&Verdict::Pass));
    let report = verify_theorems(&corpus("free_plus_free")).unwrap();
    assert_eq!(report.verdict("collapse"), Some(&Verdict::Pass));
    assert!(matches!(report.verdict("convergence"), Some(Verdict::HypothesesUnmet(_))));
    assert!(!report.any_failure());
}

#[test]
fn every_corpus_member_verifies() {
    for e in catalog::finite_corpus().into_iter().chain(catalog::family_corpus()) {
        let report = verify_theorems(&e.extension).unwrap();
        assert!(!report.any_failure(), "{}: {:?}", e.name, report.checks);
    }
}
