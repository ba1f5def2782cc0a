//! Named Lie algebras and a fixed corpus of split extensions used by tests, benches and the
//! command line examples.

use crate::extension::{CoefficientModule, KernelAction, SplitExtension};
use crate::lie::{semidirect_sum, DerivationAction, LieAlgebra, LieModule};
use crate::linalg::{Field, Matrix};
use crate::resolution::words::LieExpr;
use crate::resolution::{FreeFactor, KernelSpec};

pub fn abelian(field: Field, dim: usize) -> LieAlgebra {
    let labels: Vec<String> = (1..=dim).map(|i| format!("t{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    LieAlgebra::abelian(field, &refs)
}

/// Basis `(e, f, h)` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2(field: Field) -> LieAlgebra {
    LieAlgebra::from_brackets(
        field,
        &["e", "f", "h"],
        &[(2, 0, &[(0, 2)]), (2, 1, &[(1, -2)]), (0, 1, &[(2, 1)])],
    )
    .expect("sl2 satisfies Jacobi")
}

/// Basis `(x, y, z)` with `[x,y] = z`.
pub fn heisenberg(field: Field) -> LieAlgebra {
    LieAlgebra::from_brackets(field, &["x", "y", "z"], &[(0, 1, &[(2, 1)])]).expect("valid")
}

/// Basis `(x, y)` with `[x,y] = y`.
pub fn two_dim_nonabelian(field: Field) -> LieAlgebra {
    LieAlgebra::from_brackets(field, &["x", "y"], &[(0, 1, &[(1, 1)])]).expect("valid")
}

/// The Heisenberg algebra as `span{y,z} ⋊ span{x}` with `φ(x)y = z`, basis `(y, z, x)`.
pub fn heisenberg_as_extension(field: Field) -> LieAlgebra {
    LieAlgebra::from_brackets(field, &["y", "z", "x"], &[(2, 0, &[(1, 1)])]).expect("valid")
}

/// The standard two-dimensional representation of `sl2` on `(e, f, h)`.
pub fn sl2_standard(field: Field) -> Vec<Matrix> {
    vec![
        Matrix::from_i64(field, &[&[0, 1], &[0, 0]]),
        Matrix::from_i64(field, &[&[0, 0], &[1, 0]]),
        Matrix::from_i64(field, &[&[1, 0], &[0, -1]]),
    ]
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub extension: SplitExtension,
}

fn entry(name: &'static str, extension: SplitExtension) -> CorpusEntry {
    CorpusEntry { name, extension }
}

fn phi(n: &LieAlgebra, h: &LieAlgebra, matrices: Vec<Matrix>) -> DerivationAction {
    DerivationAction::new(n, h, matrices).expect("catalog derivations are valid")
}

fn with_trivial(n: LieAlgebra, h: LieAlgebra, d: &DerivationAction) -> SplitExtension {
    SplitExtension::finite_trivial(n, h, d).expect("catalog extensions are valid")
}

/// `M` = the adjoint module of `g = n ⋊ h`.
fn with_adjoint(n: LieAlgebra, h: LieAlgebra, d: &DerivationAction) -> SplitExtension {
    let g = semidirect_sum(&n, &h, d).expect("valid");
    let module = CoefficientModule::from_g_module(&LieModule::adjoint(&g), n.dim());
    SplitExtension::finite(n, h, d, module).expect("adjoint module is a g-module")
}

/// Split extensions with finite-dimensional kernels, `dim g ≤ 6`.
pub fn finite_corpus() -> Vec<CorpusEntry> {
    let q = Field::Rational;
    let f2 = Field::prime(2).expect("prime");
    let f3 = Field::prime(3).expect("prime");
    let mut out = Vec::new();

    let n = LieAlgebra::abelian(q, &["s", "t"]);
    let h = LieAlgebra::abelian(q, &["a"]);
    out.push(entry("abelian_by_abelian", with_trivial(n.clone(), h.clone(), &DerivationAction::zero(&n, &h))));

    let heis_phi = |field| {
        let n = LieAlgebra::abelian(field, &["y", "z"]);
        let h = LieAlgebra::abelian(field, &["x"]);
        let d = phi(&n, &h, vec![Matrix::from_i64(field, &[&[0, 0], &[1, 0]])]);
        (n, h, d)
    };
    let (n, h, d) = heis_phi(q);
    out.push(entry("heisenberg", with_trivial(n, h, &d)));

    let n = LieAlgebra::abelian(q, &["y"]);
    let h = LieAlgebra::abelian(q, &["x"]);
    let d = phi(&n, &h, vec![Matrix::identity(q, 1)]);
    out.push(entry("two_dim_nonabelian", with_trivial(n.clone(), h.clone(), &d)));
    out.push(entry("two_dim_nonabelian_adjoint", with_adjoint(n.clone(), h.clone(), &d)));
    // ρ(x) = 1 on k: trivial on the kernel, nontrivial on the quotient
    let module = CoefficientModule::new(q, 1, vec![Matrix::zeros(q, 1, 1)], vec![Matrix::identity(q, 1)]);
    out.push(entry("two_dim_nonabelian_weight_one", SplitExtension::finite(n, h, &d, module).expect("valid")));

    let s = sl2(q);
    let n = LieAlgebra::abelian(q, &["u", "v", "w"]);
    let d = phi(&n, &s, (0..3).map(|i| s.ad(i)).collect());
    out.push(entry("k3_by_sl2_adjoint", with_trivial(n, s.clone(), &d)));

    let n = LieAlgebra::abelian(q, &["u", "v"]);
    let d = phi(&n, &s, sl2_standard(q));
    out.push(entry("k2_by_sl2_standard", with_trivial(n, s.clone(), &d)));

    let heis = heisenberg(q);
    let h = LieAlgebra::abelian(q, &["a"]);
    let diag = Matrix::from_i64(q, &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
    let d = phi(&heis, &h, vec![diag]);
    out.push(entry("heisenberg_kernel_weighted", with_trivial(heis.clone(), h.clone(), &d)));
    out.push(entry("heisenberg_kernel_adjoint", with_adjoint(heis.clone(), h.clone(), &d)));

    // φ(a)x = z, φ(b)y = z: the smallest corpus member with a nonzero d_2
    let plane = LieAlgebra::abelian(q, &["a", "b"]);
    let ex = Matrix::from_i64(q, &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
    let ey = Matrix::from_i64(q, &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]);
    let d = phi(&heis, &plane, vec![ex, ey]);
    out.push(entry("heisenberg_by_plane", with_trivial(heis.clone(), plane, &d)));

    let zero = LieAlgebra::abelian(q, &[]);
    out.push(entry("sl2_kernel_trivial_quotient", with_trivial(s.clone(), zero.clone(), &DerivationAction::zero(&s, &zero))));

    let (n, h, d) = heis_phi(q);
    out.push(entry("heisenberg_adjoint", with_adjoint(n, h, &d)));

    let (n, h, d) = heis_phi(f2);
    out.push(entry("heisenberg_f2", with_trivial(n, h, &d)));

    let n = LieAlgebra::abelian(f2, &["s", "t"]);
    let h = LieAlgebra::abelian(f2, &["a"]);
    let d = phi(&n, &h, vec![Matrix::from_i64(f2, &[&[1, 1], &[0, 1]])]);
    out.push(entry("jordan_block_f2", with_trivial(n, h, &d)));

    let s3 = sl2(f3);
    let n = LieAlgebra::abelian(f3, &["u", "v"]);
    let d = phi(&n, &s3, sl2_standard(f3));
    out.push(entry("k2_by_sl2_standard_f3", with_trivial(n, s3, &d)));

    let heis3 = heisenberg(f3);
    let h = LieAlgebra::abelian(f3, &["a"]);
    let diag = Matrix::from_i64(f3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
    let d = phi(&heis3, &h, vec![diag]);
    out.push(entry("heisenberg_kernel_f3", with_trivial(heis3.clone(), h.clone(), &d)));
    out.push(entry("heisenberg_kernel_adjoint_f3", with_adjoint(heis3, h, &d)));

    out
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Builds an extension from generator images written as bracket expressions, one row per
/// quotient basis element.
pub fn from_images(
    kernel: KernelSpec,
    h: LieAlgebra,
    images: &[&[&str]],
    module: Option<CoefficientModule>,
) -> SplitExtension {
    let field = h.field();
    let gens = kernel.generator_labels();
    let rows: Vec<Vec<LieExpr>> = images
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| LieExpr::parse(s, &gens, field).expect("catalog expressions parse"))
                .collect()
        })
        .collect();
    let module = module.unwrap_or_else(|| CoefficientModule::trivial(field, 1, gens.len(), h.dim()));
    SplitExtension::new(kernel, h, KernelAction::Expressions(rows), module).expect("catalog extensions are valid")
}

/// Extensions whose kernels are free, sums of free and abelian, or free products.
pub fn family_corpus() -> Vec<CorpusEntry> {
    let q = Field::Rational;
    let f3 = Field::prime(3).expect("prime");
    let a = || LieAlgebra::abelian(q, &["a"]);
    let b = || two_dim_nonabelian(q);
    let mut out = Vec::with_capacity(16);

    out.push(entry("free2_trivial_action", from_images(KernelSpec::Free(labels(&["x1", "x2"])), a(), &[&["0", "0"]], None)));
    out.push(entry(
        "free2_bracket_image",
        from_images(KernelSpec::Free(labels(&["x1", "x2"])), a(), &[&["[x1,x2]", "0"]], None),
    ));
    out.push(entry(
        "free2_nilpotent",
        from_images(KernelSpec::Free(labels(&["x1", "x2"])), a(), &[&["x2", "0"]], None),
    ));
    // [x,y] = y in h: φ(x) scales x2 and [x1,x2], φ(y) sends x1 to x2
    out.push(entry(
        "free2_by_two_dim",
        from_images(KernelSpec::Free(labels(&["x1", "x2"])), b(), &[&["0", "x2"], &["x2", "0"]], None),
    ));
    let module = CoefficientModule::new(
        q,
        2,
        vec![Matrix::from_i64(q, &[&[0, 1], &[0, 0]]), Matrix::zeros(q, 2, 2)],
        vec![Matrix::from_i64(q, &[&[1, 0], &[0, 0]])],
    );
    out.push(entry(
        "free2_nontrivial_module",
        from_images(KernelSpec::Free(labels(&["x1", "x2"])), a(), &[&["x1", "0"]], Some(module)),
    ));
    out.push(entry(
        "free3_f3",
        from_images(
            KernelSpec::Free(labels(&["x1", "x2", "x3"])),
            LieAlgebra::abelian(f3, &["a"]),
            &[&["[x2,x3]", "2 x3", "0"]],
            None,
        ),
    ));

    let fa = KernelSpec::DirectSumFreeAbelian {
        free: labels(&["x1", "x2"]),
        abelian: labels(&["t"]),
    };
    out.push(entry("free_plus_abelian_cross", from_images(fa.clone(), a(), &[&["t", "x2", "t"]], None)));
    out.push(entry(
        "free_plus_abelian_two_dim",
        from_images(fa, b(), &[&["0", "0", "t"], &["t", "0", "0"]], None),
    ));
    let fa2 = KernelSpec::DirectSumFreeAbelian {
        free: labels(&["x"]),
        abelian: labels(&["t1", "t2"]),
    };
    out.push(entry("free1_plus_abelian2", from_images(fa2, a(), &[&["x + t2", "t2", "0"]], None)));

    let ff = KernelSpec::DirectSumFreeFree {
        left: labels(&["x1", "x2"]),
        right: labels(&["y1", "y2"]),
    };
    out.push(entry(
        "free_plus_free",
        from_images(ff.clone(), a(), &[&["x2", "0", "y1", "[y1,y2]"]], None),
    ));
    out.push(entry(
        "free_plus_free_two_dim",
        from_images(ff, b(), &[&["0", "x2", "0", "y2"], &["x2", "0", "0", "0"]], None),
    ));

    let fp = KernelSpec::FreeProduct(vec![
        FreeFactor::Abelian(labels(&["s1", "s2"])),
        FreeFactor::Free(labels(&["x1", "x2"])),
    ]);
    out.push(entry("free_product_abelian_free", from_images(fp, a(), &[&["s2", "0", "[x1,x2]", "x1"]], None)));
    let fp3 = KernelSpec::FreeProduct(vec![
        FreeFactor::Abelian(labels(&["s"])),
        FreeFactor::Abelian(labels(&["t1", "t2", "t3"])),
        FreeFactor::Free(labels(&["x"])),
    ]);
    out.push(entry(
        "free_product_three_factors",
        from_images(fp3, a(), &[&["s", "t2", "t3", "0", "x"]], None),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        let finite = finite_corpus();
        assert!(finite.len() >= 8);
        for e in &finite {
            let g = e.extension.semidirect().unwrap();
            assert!(g.dim() <= 6, "{}", e.name);
        }
        assert!(finite.iter().any(|e| !e.extension.kernel_acts_trivially()));
        assert!(finite.iter().any(|e| e.extension.field().characteristic() == 2));
        assert!(finite.iter().any(|e| e.extension.field().characteristic() == 3));
        let fam = family_corpus();
        for family in ["free", "free_plus_abelian", "free_plus_free", "free_product"] {
            assert!(fam.iter().any(|e| e.extension.kernel().family() == family));
        }
    }

    #[test]
    fn heisenberg_entry_matches_named_algebra() {
        let e = finite_corpus().into_iter().find(|e| e.name == "heisenberg").unwrap();
        assert_eq!(e.extension.semidirect().unwrap(), heisenberg_as_extension(Field::Rational));
    }
}
