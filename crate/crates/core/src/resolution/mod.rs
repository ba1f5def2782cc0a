//! Coefficient rows `R^q = Hom_n(F_q, M)` for each supported kernel family: the graded spaces,
//! their vertical differentials and the induced `h`-module structure.
//!
//! Every row is stored as `Hom_k(A_q, M)` for a finite basis `A_q` of generators of `F_q`,
//! with the basis of `A_q` slowest and the module coordinate fastest.

mod blocks;
pub mod words;

pub use blocks::{
    Block, BlockDerivation, BlockElem, BlockKind, DirectSumAlgebra, GeneratorAction, GeneratorActionError,
};

use crate::cochain::{ce_cochain_differential, dual_action, exterior_derivation, ExteriorBasis};
use crate::extension::SplitExtension;
use crate::lie::{combine, restrict_action_to_cochains, LieAlgebra};
use crate::linalg::{Field, FieldElem, Matrix};

/// One factor of a free product kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeFactor {
    Abelian(Vec<String>),
    Free(Vec<String>),
}

impl FreeFactor {
    pub fn labels(&self) -> &[String] {
        match self {
            FreeFactor::Abelian(l) | FreeFactor::Free(l) => l,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelSpec {
    FiniteDim(LieAlgebra),
    /// Free Lie algebra on the given generators.
    Free(Vec<String>),
    /// `f(free) ⊕ k^{abelian}`
    DirectSumFreeAbelian { free: Vec<String>, abelian: Vec<String> },
    /// `f(left) ⊕ f(right)`
    DirectSumFreeFree { left: Vec<String>, right: Vec<String> },
    FreeProduct(Vec<FreeFactor>),
}

impl KernelSpec {
    pub fn family(&self) -> &'static str {
        match self {
            KernelSpec::FiniteDim(_) => "finite",
            KernelSpec::Free(_) => "free",
            KernelSpec::DirectSumFreeAbelian { .. } => "free_plus_abelian",
            KernelSpec::DirectSumFreeFree { .. } => "free_plus_free",
            KernelSpec::FreeProduct(_) => "free_product",
        }
    }

    pub fn field(&self) -> Option<Field> {
        match self {
            KernelSpec::FiniteDim(n) => Some(n.field()),
            _ => None,
        }
    }

    /// Basis labels for finite kernels, generator labels otherwise.
    pub fn generator_labels(&self) -> Vec<String> {
        match self {
            KernelSpec::FiniteDim(n) => n.labels().to_vec(),
            KernelSpec::Free(x) => x.clone(),
            KernelSpec::DirectSumFreeAbelian { free, abelian } => free.iter().chain(abelian).cloned().collect(),
            KernelSpec::DirectSumFreeFree { left, right } => left.iter().chain(right).cloned().collect(),
            KernelSpec::FreeProduct(fs) => fs.iter().flat_map(|f| f.labels().iter().cloned()).collect(),
        }
    }

    /// Free and abelian blocks of the generator list; a finite kernel is one abelian block
    /// only when it is abelian, otherwise empty.
    pub fn blocks(&self) -> Vec<Block> {
        let mut offset = 0;
        let mut out = Vec::new();
        let mut push = |kind, rank: usize| {
            out.push(Block { kind, offset, rank });
            offset += rank;
        };
        match self {
            KernelSpec::FiniteDim(_) => {}
            KernelSpec::Free(x) => push(BlockKind::Free, x.len()),
            KernelSpec::DirectSumFreeAbelian { free, abelian } => {
                push(BlockKind::Free, free.len());
                push(BlockKind::Abelian, abelian.len());
            }
            KernelSpec::DirectSumFreeFree { left, right } => {
                push(BlockKind::Free, left.len());
                push(BlockKind::Free, right.len());
            }
            KernelSpec::FreeProduct(fs) => {
                for f in fs {
                    match f {
                        FreeFactor::Abelian(l) => push(BlockKind::Abelian, l.len()),
                        FreeFactor::Free(l) => push(BlockKind::Free, l.len()),
                    }
                }
            }
        }
        out
    }

    /// Kernels covered by the collapse theorem when the kernel acts trivially on `M`.
    pub fn is_collapse_family(&self) -> bool {
        match self {
            KernelSpec::FiniteDim(n) => n.is_abelian(),
            _ => true,
        }
    }
}

/// The rows `R^q`, `q = 0..=max_q`, of the double complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRows {
    pub field: Field,
    pub module_dim: usize,
    /// Labels of the basis of `A_q`.
    pub basis: Vec<Vec<String>>,
    /// `d_vert[q] : R^q → R^{q+1}`; the last one maps to the zero space.
    pub d_vert: Vec<Matrix>,
    /// `h_action[q][α]` acts on `R^q`.
    pub h_action: Vec<Vec<Matrix>>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RowViolation {
    #[error("d_vert^{} d_vert^{q} != 0", q + 1)]
    SquareNonzero { q: usize },
    #[error("d_vert^{q} does not commute with the action of quotient element #{alpha}")]
    NotEquivariant { q: usize, alpha: usize },
    #[error("action on row {q} is not a homomorphism on (#{a}, #{b})")]
    NotAHomomorphism { q: usize, a: usize, b: usize },
}

impl CoefficientRows {
    pub fn max_q(&self) -> usize {
        self.d_vert.len() - 1
    }

    pub fn dim(&self, q: usize) -> usize {
        self.basis.get(q).map_or(0, |b| b.len() * self.module_dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.max_q()).map(|q| self.dim(q)).collect()
    }

    pub fn quotient_dim(&self) -> usize {
        self.h_action.first().map_or(0, Vec::len)
    }

    /// Checks `d_vert² = 0`, equivariance and the commutator identity on every row.
    pub fn check(&self, h: &LieAlgebra) -> Result<(), RowViolation> {
        for q in 0..self.max_q() {
            if !(&self.d_vert[q + 1] * &self.d_vert[q]).is_zero() {
                return Err(RowViolation::SquareNonzero { q });
            }
        }
        for q in 0..self.max_q() {
            for alpha in 0..h.dim() {
                let lhs = &self.h_action[q + 1][alpha] * &self.d_vert[q];
                let rhs = &self.d_vert[q] * &self.h_action[q][alpha];
                if lhs != rhs {
                    return Err(RowViolation::NotEquivariant { q, alpha });
                }
            }
        }
        for (q, acts) in self.h_action.iter().enumerate() {
            for a in 0..h.dim() {
                for b in a + 1..h.dim() {
                    let lhs = combine(self.field, self.dim(q), acts, &h.bracket_basis(a, b));
                    if lhs != Matrix::commutator(&acts[a], &acts[b]) {
                        return Err(RowViolation::NotAHomomorphism { q, a, b });
                    }
                }
            }
        }
        Ok(())
    }

    /// Rows with zero vertical differentials and `h` acting through maps `Θ` on each `A_q`.
    fn from_augmented(field: Field, basis: Vec<Vec<String>>, thetas: Vec<Vec<Matrix>>, rho: &[Matrix], module_dim: usize) -> Self {
        let dims: Vec<usize> = basis.iter().map(|b| b.len() * module_dim).collect();
        let d_vert = (0..dims.len())
            .map(|q| Matrix::zeros(field, dims.get(q + 1).copied().unwrap_or(0), dims[q]))
            .collect();
        let h_action = thetas
            .iter()
            .map(|per_a| per_a.iter().zip(rho).map(|(t, r)| dual_action(field, t, r)).collect())
            .collect();
        Self {
            field,
            module_dim,
            basis,
            d_vert,
            h_action,
        }
    }
}

fn wedge_label(labels: &[String], mono: &[usize]) -> String {
    if mono.is_empty() {
        "1".into()
    } else {
        mono.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("∧")
    }
}

fn wedge_labels(labels: &[String], q: usize) -> Vec<String> {
    ExteriorBasis::new_or_empty(labels.len(), q)
        .monomials()
        .iter()
        .map(|m| wedge_label(labels, m))
        .collect()
}

/// Rows of the dual Chevalley–Eilenberg complex of a finite-dimensional kernel.
pub fn rows_finite_dim(ext: &SplitExtension) -> Option<CoefficientRows> {
    let (module, phi) = ext.finite_kernel_data()?;
    let n = module.algebra();
    let rho = ext.module().quotient_actions();
    let top = n.dim();
    Some(CoefficientRows {
        field: ext.field(),
        module_dim: module.dim(),
        basis: (0..=top).map(|q| wedge_labels(n.labels(), q)).collect(),
        d_vert: (0..=top).map(|q| ce_cochain_differential(&module, q)).collect(),
        h_action: (0..=top)
            .map(|q| {
                (0..rho.len())
                    .map(|a| restrict_action_to_cochains(phi.matrix(a), &rho[a], q))
                    .collect()
            })
            .collect(),
    })
}

/// Rows `M → M^m` of `0 → J → k{X} → k → 0` for a free kernel.
pub fn rows_free_kernel(ext: &SplitExtension) -> Option<CoefficientRows> {
    let KernelSpec::Free(labels) = ext.kernel() else {
        return None;
    };
    let action = ext.generator_action()?;
    let field = ext.field();
    let m = labels.len();
    let module = ext.module();
    let dm = module.dim();
    let rho_n = module.kernel_actions();

    let mut d0 = Matrix::zeros(field, m * dm, dm);
    for (i, r) in rho_n.iter().enumerate() {
        d0.set_block(i * dm, 0, r);
    }
    let mut act0 = Vec::new();
    let mut act1 = Vec::new();
    for (a, d) in action.derivations.iter().enumerate() {
        let ra = module.quotient_action(a);
        act0.push(ra.clone());
        let mut big = Matrix::identity(field, m).kron(ra);
        for i in 0..m {
            let parts = d
                .free_image(i, 0)
                .split_last_letter(m)
                .expect("Lie elements have no constant term");
            for (j, u) in parts.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let block = u.evaluate(rho_n, dm);
                let cur = big.block(i * dm, j * dm, dm, dm);
                big.set_block(i * dm, j * dm, &(&cur - &block));
            }
        }
        act1.push(big);
    }
    Some(CoefficientRows {
        field,
        module_dim: dm,
        basis: vec![vec!["1".into()], labels.clone()],
        d_vert: vec![d0, Matrix::zeros(field, 0, m * dm)],
        h_action: vec![act0, act1],
    })
}

/// Rows for `f ⊕ k^n` and `f_1 ⊕ f_2` with trivial kernel action.
pub fn rows_direct_sum(ext: &SplitExtension) -> Option<CoefficientRows> {
    match ext.kernel() {
        KernelSpec::DirectSumFreeAbelian { free, abelian } => rows_free_plus_abelian(ext, free, abelian),
        KernelSpec::DirectSumFreeFree { left, right } => rows_free_plus_free(ext, left, right),
        _ => None,
    }
}

fn rows_free_plus_abelian(ext: &SplitExtension, free: &[String], abelian: &[String]) -> Option<CoefficientRows> {
    let action = ext.generator_action()?;
    let field = ext.field();
    let (m, n) = (free.len(), abelian.len());
    let blocks = &action.blocks;

    // A_0 = k; A_p = Λ^p(k^n) ⊕ Λ^{p−1}(k^n) ⊗ X
    let mut basis = vec![vec!["1".to_string()]];
    for p in 1..=n + 1 {
        let mut b = wedge_labels(abelian, p);
        for j in wedge_labels(abelian, p - 1) {
            for x in free {
                b.push(if p == 1 { x.clone() } else { format!("{j}⊗{x}") });
            }
        }
        basis.push(b);
    }

    let mut thetas: Vec<Vec<Matrix>> = vec![Vec::new(); n + 2];
    for d in &action.derivations {
        let l = d.linear_block(blocks, 0, field);
        let t = d.linear_block(blocks, 1, field);
        let v: Vec<Vec<FieldElem>> = (0..m).map(|k| d.images[k][1].linear_part(n)).collect();
        thetas[0].push(Matrix::zeros(field, 1, 1));
        for p in 1..=n + 1 {
            let wedge = ExteriorBasis::new_or_empty(n, p);
            let lower = ExteriorBasis::new_or_empty(n, p - 1);
            let w = wedge.len();
            let size = w + lower.len() * m;
            let mut theta = Matrix::zeros(field, size, size);
            theta.set_block(0, 0, &exterior_derivation(&t, &wedge));
            let lower_t = exterior_derivation(&t, &lower);
            for (ji, jmono) in lower.monomials().iter().enumerate() {
                for k in 0..m {
                    let col = w + ji * m + k;
                    for jr in 0..lower.len() {
                        let c = lower_t.get(jr, ji);
                        if !c.is_zero() {
                            theta.add_at(w + jr * m + k, col, c);
                        }
                    }
                    for j in 0..m {
                        let c = l.get(j, k);
                        if !c.is_zero() {
                            theta.add_at(w + ji * m + j, col, c);
                        }
                    }
                    // (−1)^{p−1} t_J ∧ v_k
                    for (i, c) in v[k].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut tuple = jmono.clone();
                        tuple.push(i);
                        if let Some((row, negate)) = wedge.sort_wedge(&tuple) {
                            theta.add_at(row, col, &c.signed(negate ^ ((p - 1) % 2 == 1)));
                        }
                    }
                }
            }
            thetas[p].push(theta);
        }
    }
    Some(CoefficientRows::from_augmented(
        field,
        basis,
        thetas,
        ext.module().quotient_actions(),
        ext.module().dim(),
    ))
}

fn rows_free_plus_free(ext: &SplitExtension, left: &[String], right: &[String]) -> Option<CoefficientRows> {
    let action = ext.generator_action()?;
    let field = ext.field();
    let (m1, m2) = (left.len(), right.len());
    let blocks = &action.blocks;
    let basis = vec![
        vec!["1".to_string()],
        left.iter().chain(right).cloned().collect(),
        left.iter()
            .flat_map(|x| right.iter().map(move |y| format!("{x}⊗{y}")))
            .collect(),
    ];
    let mut thetas: Vec<Vec<Matrix>> = vec![Vec::new(); 3];
    for d in &action.derivations {
        let lx = d.linear_block(blocks, 0, field);
        let ly = d.linear_block(blocks, 1, field);
        thetas[0].push(Matrix::zeros(field, 1, 1));
        thetas[1].push(Matrix::block_diagonal(field, &[lx.clone(), ly.clone()]));
        thetas[2].push(&lx.kron(&Matrix::identity(field, m2)) + &Matrix::identity(field, m1).kron(&ly));
    }
    Some(CoefficientRows::from_augmented(
        field,
        basis,
        thetas,
        ext.module().quotient_actions(),
        ext.module().dim(),
    ))
}

/// Rows for a factor-preserving free product with trivial kernel action.
pub fn rows_free_product(ext: &SplitExtension) -> Option<CoefficientRows> {
    let KernelSpec::FreeProduct(factors) = ext.kernel() else {
        return None;
    };
    let action = ext.generator_action()?;
    let field = ext.field();
    let blocks = &action.blocks;
    let top = factors
        .iter()
        .map(|f| match f {
            FreeFactor::Abelian(l) => l.len(),
            FreeFactor::Free(l) => usize::from(!l.is_empty()),
        })
        .max()
        .unwrap_or(0);
    let factor_degree_basis = |f: &FreeFactor, q: usize| -> Vec<String> {
        match f {
            FreeFactor::Abelian(l) => wedge_labels(l, q),
            FreeFactor::Free(l) if q == 1 => l.clone(),
            FreeFactor::Free(_) => Vec::new(),
        }
    };
    let mut basis = vec![vec!["1".to_string()]];
    for q in 1..=top {
        basis.push(factors.iter().flat_map(|f| factor_degree_basis(f, q)).collect());
    }
    let mut thetas: Vec<Vec<Matrix>> = vec![Vec::new(); top + 1];
    for d in &action.derivations {
        thetas[0].push(Matrix::zeros(field, 1, 1));
        for (q, theta_q) in thetas.iter_mut().enumerate().skip(1) {
            let parts: Vec<Matrix> = factors
                .iter()
                .enumerate()
                .map(|(b, f)| {
                    let lin = d.linear_block(blocks, b, field);
                    match f {
                        FreeFactor::Abelian(l) => exterior_derivation(&lin, &ExteriorBasis::new_or_empty(l.len(), q)),
                        FreeFactor::Free(_) if q == 1 => lin,
                        FreeFactor::Free(_) => Matrix::zeros(field, 0, 0),
                    }
                })
                .collect();
            theta_q.push(Matrix::block_diagonal(field, &parts));
        }
    }
    Some(CoefficientRows::from_augmented(
        field,
        basis,
        thetas,
        ext.module().quotient_actions(),
        ext.module().dim(),
    ))
}

/// The rows for whichever family the extension's kernel belongs to.
pub fn coefficient_rows(ext: &SplitExtension) -> CoefficientRows {
    match ext.kernel() {
        KernelSpec::FiniteDim(_) => rows_finite_dim(ext),
        KernelSpec::Free(_) => rows_free_kernel(ext),
        KernelSpec::DirectSumFreeAbelian { .. } | KernelSpec::DirectSumFreeFree { .. } => rows_direct_sum(ext),
        KernelSpec::FreeProduct(_) => rows_free_product(ext),
    }
    .expect("extension data matches its kernel family")
}

#[cfg(test)]
mod tests;
