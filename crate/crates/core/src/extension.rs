//! Split extensions `0 → n → n ⋊_φ h → h → 0` together with a coefficient module.

use crate::lie::{
    combine, semidirect_sum, validate_derivation_action, DerivationAction, LieAlgebra, LieError, LieModule,
};
use crate::linalg::{Field, Matrix};
use crate::resolution::words::{LieExpr, StructureCoordinates, WordError};
use crate::resolution::{Block, BlockKind, GeneratorAction, GeneratorActionError, KernelSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("{0}")]
    Shape(String),
    #[error("M is not a g-module: [ρ({alpha}), ρ({generator})] != ρ(φ({alpha}){generator})")]
    NotAGModule { alpha: String, generator: String },
    #[error("the {family} kernel family needs the kernel to act trivially on M")]
    NontrivialKernelAction { family: &'static str },
    #[error("φ({alpha})({generator}) leaves the summand or factor it must stay in")]
    ForeignImage { alpha: String, generator: String },
    #[error("φ is not a homomorphism on ({a}, {b})")]
    NotAHomomorphism { a: String, b: String },
    #[error("{0}")]
    ActionKind(String),
}

/// How the quotient acts on the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelAction {
    /// One derivation matrix per quotient basis element (finite-dimensional kernels).
    Matrices(Vec<Matrix>),
    /// `images[α][i]` is the image of kernel generator `i` under `φ(α)`.
    Expressions(Vec<Vec<LieExpr>>),
}

/// A vector space with one matrix per kernel generator and one per quotient basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientModule {
    field: Field,
    dim: usize,
    kernel_action: Vec<Matrix>,
    quotient_action: Vec<Matrix>,
}

impl CoefficientModule {
    pub fn new(field: Field, dim: usize, kernel_action: Vec<Matrix>, quotient_action: Vec<Matrix>) -> Self {
        Self {
            field,
            dim,
            kernel_action,
            quotient_action,
        }
    }

    pub fn trivial(field: Field, dim: usize, kernel_generators: usize, quotient_dim: usize) -> Self {
        let z = Matrix::zeros(field, dim, dim);
        Self::new(field, dim, vec![z.clone(); kernel_generators], vec![z; quotient_dim])
    }

    /// Splits a module over `n ⋊ h` (kernel basis first) into its two halves.
    pub fn from_g_module(module: &LieModule, kernel_dim: usize) -> Self {
        let rho = module.rho();
        Self::new(
            module.algebra().field(),
            module.dim(),
            rho[..kernel_dim].to_vec(),
            rho[kernel_dim..].to_vec(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kernel_action(&self, i: usize) -> &Matrix {
        &self.kernel_action[i]
    }

    pub fn kernel_actions(&self) -> &[Matrix] {
        &self.kernel_action
    }

    pub fn quotient_action(&self, a: usize) -> &Matrix {
        &self.quotient_action[a]
    }

    pub fn quotient_actions(&self) -> &[Matrix] {
        &self.quotient_action
    }

    pub fn kernel_acts_trivially(&self) -> bool {
        self.kernel_action.iter().all(Matrix::is_zero)
    }
}

/// A validated split extension with coefficients.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    kernel: KernelSpec,
    quotient: LieAlgebra,
    action: KernelAction,
    module: CoefficientModule,
    derivations: Option<DerivationAction>,
    generator_action: Option<GeneratorAction>,
}

impl SplitExtension {
    pub fn new(
        kernel: KernelSpec,
        quotient: LieAlgebra,
        action: KernelAction,
        module: CoefficientModule,
    ) -> Result<Self, ExtensionError> {
        let field = quotient.field();
        if module.field != field || kernel.field().is_some_and(|f| f != field) {
            return Err(ExtensionError::Shape("kernel, quotient and module use different fields".into()));
        }
        let gens = kernel.generator_labels();
        let check_square = |m: &Matrix, what: &str| {
            if m.rows() != module.dim || m.cols() != module.dim {
                Err(ExtensionError::Shape(format!(
                    "{what} action matrix is {}x{}, module has dimension {}",
                    m.rows(),
                    m.cols(),
                    module.dim
                )))
            } else {
                Ok(())
            }
        };
        if module.kernel_action.len() != gens.len() {
            return Err(ExtensionError::Shape(format!(
                "module needs {} kernel action matrices, found {}",
                gens.len(),
                module.kernel_action.len()
            )));
        }
        if module.quotient_action.len() != quotient.dim() {
            return Err(ExtensionError::Shape(format!(
                "module needs {} quotient action matrices, found {}",
                quotient.dim(),
                module.quotient_action.len()
            )));
        }
        for m in &module.kernel_action {
            check_square(m, "kernel")?;
        }
        for m in &module.quotient_action {
            check_square(m, "quotient")?;
        }
        LieModule::new(&quotient, module.dim, module.quotient_action.clone())?;

        let mut ext = Self {
            kernel,
            quotient,
            action,
            module,
            derivations: None,
            generator_action: None,
        };
        match &ext.kernel {
            KernelSpec::FiniteDim(n) => ext.derivations = Some(ext.validate_finite(n)?),
            _ => ext.generator_action = Some(ext.validate_generated()?),
        }
        Ok(ext)
    }

    /// Finite-dimensional kernel with derivation matrices.
    pub fn finite(
        n: LieAlgebra,
        h: LieAlgebra,
        phi: &DerivationAction,
        module: CoefficientModule,
    ) -> Result<Self, ExtensionError> {
        Self::new(KernelSpec::FiniteDim(n), h, KernelAction::Matrices(phi.matrices().to_vec()), module)
    }

    /// Finite-dimensional kernel with coefficients in `k` with trivial action.
    pub fn finite_trivial(n: LieAlgebra, h: LieAlgebra, phi: &DerivationAction) -> Result<Self, ExtensionError> {
        let module = CoefficientModule::trivial(n.field(), 1, n.dim(), h.dim());
        Self::finite(n, h, phi, module)
    }

    fn validate_finite(&self, n: &LieAlgebra) -> Result<DerivationAction, ExtensionError> {
        let h = &self.quotient;
        let matrices = match &self.action {
            KernelAction::Matrices(m) => m.clone(),
            KernelAction::Expressions(rows) => {
                let alg = StructureCoordinates(n);
                rows.iter()
                    .map(|row| {
                        if row.len() != n.dim() {
                            return Err(ExtensionError::Shape(format!(
                                "need an image for each of the {} kernel basis elements",
                                n.dim()
                            )));
                        }
                        let cols: Vec<_> = row.iter().map(|e| e.eval(&alg)).collect();
                        Ok(Matrix::from_columns(n.field(), n.dim(), &cols))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        let phi = DerivationAction::new(n, h, matrices)?;
        debug_assert!(validate_derivation_action(n, h, phi.matrices()).is_valid());
        LieModule::new(n, self.module.dim, self.module.kernel_action.clone())?;
        for a in 0..h.dim() {
            let ra = &self.module.quotient_action[a];
            for s in 0..n.dim() {
                let lhs = Matrix::commutator(ra, &self.module.kernel_action[s]);
                let rhs = combine(n.field(), self.module.dim, &self.module.kernel_action, &phi.matrix(a).column(s));
                if lhs != rhs {
                    return Err(ExtensionError::NotAGModule {
                        alpha: h.labels()[a].clone(),
                        generator: n.labels()[s].clone(),
                    });
                }
            }
        }
        Ok(phi)
    }

    fn validate_generated(&self) -> Result<GeneratorAction, ExtensionError> {
        let h = &self.quotient;
        let field = h.field();
        let KernelAction::Expressions(rows) = &self.action else {
            return Err(ExtensionError::ActionKind(
                "kernels given by generators need φ as generator images".into(),
            ));
        };
        let labels = self.kernel.generator_labels();
        if rows.len() != h.dim() || rows.iter().any(|r| r.len() != labels.len()) {
            return Err(ExtensionError::Shape(format!(
                "need {} rows of {} generator images",
                h.dim(),
                labels.len()
            )));
        }
        let blocks = self.kernel.blocks();
        if !matches!(self.kernel, KernelSpec::Free(_)) && !self.module.kernel_acts_trivially() {
            return Err(ExtensionError::NontrivialKernelAction {
                family: self.kernel.family(),
            });
        }
        let owner = |g: usize| blocks.iter().position(|b| b.contains(g)).unwrap();
        if let KernelSpec::FreeProduct(_) = self.kernel {
            for (a, row) in rows.iter().enumerate() {
                for (g, e) in row.iter().enumerate() {
                    if e.generators().iter().any(|&u| owner(u) != owner(g)) {
                        return Err(ExtensionError::ForeignImage {
                            alpha: h.labels()[a].clone(),
                            generator: labels[g].clone(),
                        });
                    }
                }
            }
        }
        let is_free_abelian = matches!(self.kernel, KernelSpec::DirectSumFreeAbelian { .. });
        let allowed = |g: usize, b: usize| {
            let own = owner(g);
            own == b || (is_free_abelian && blocks[own].kind == BlockKind::Free && blocks[b].kind == BlockKind::Abelian)
        };
        let action = GeneratorAction::new(field, blocks.clone(), h, rows, allowed).map_err(|e| match e {
            GeneratorActionError::ForeignComponent { alpha, generator, .. } => ExtensionError::ForeignImage {
                alpha: h.labels()[alpha].clone(),
                generator: labels[generator].clone(),
            },
            GeneratorActionError::Homomorphism { a, b } => ExtensionError::NotAHomomorphism {
                a: h.labels()[a].clone(),
                b: h.labels()[b].clone(),
            },
        })?;
        if let KernelSpec::Free(_) = self.kernel {
            // n is free, so any matrices define an n-module; only compatibility with h remains
            let rho = &self.module.kernel_action;
            for (a, d) in action.derivations.iter().enumerate() {
                for (i, label) in labels.iter().enumerate() {
                    let lhs = Matrix::commutator(&self.module.quotient_action[a], &rho[i]);
                    let rhs = d.free_image(i, 0).evaluate(rho, self.module.dim);
                    if lhs != rhs {
                        return Err(ExtensionError::NotAGModule {
                            alpha: h.labels()[a].clone(),
                            generator: label.clone(),
                        });
                    }
                }
            }
        }
        Ok(action)
    }

    pub fn field(&self) -> Field {
        self.quotient.field()
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn quotient(&self) -> &LieAlgebra {
        &self.quotient
    }

    pub fn action(&self) -> &KernelAction {
        &self.action
    }

    pub fn module(&self) -> &CoefficientModule {
        &self.module
    }

    /// `φ` as derivation matrices, for finite-dimensional kernels.
    pub fn derivations(&self) -> Option<&DerivationAction> {
        self.derivations.as_ref()
    }

    /// `φ` on generators, for the free families.
    pub fn generator_action(&self) -> Option<&GeneratorAction> {
        self.generator_action.as_ref()
    }

    pub fn blocks(&self) -> Vec<Block> {
        self.kernel.blocks()
    }

    pub fn kernel_acts_trivially(&self) -> bool {
        self.module.kernel_acts_trivially()
    }

    /// `M` as an `n`-module together with `φ`, when `n` is finite-dimensional.
    pub fn finite_kernel_data(&self) -> Option<(LieModule, &DerivationAction)> {
        let KernelSpec::FiniteDim(n) = &self.kernel else {
            return None;
        };
        let m = LieModule::new(n, self.module.dim, self.module.kernel_action.clone())
            .expect("validated at construction");
        Some((m, self.derivations.as_ref()?))
    }

    /// `M` as an `h`-module.
    pub fn quotient_module(&self) -> LieModule {
        LieModule::new(&self.quotient, self.module.dim, self.module.quotient_action.clone())
            .expect("validated at construction")
    }

    /// `g = n ⋊ h`, when `n` is finite-dimensional.
    pub fn semidirect(&self) -> Option<LieAlgebra> {
        let KernelSpec::FiniteDim(n) = &self.kernel else {
            return None;
        };
        Some(semidirect_sum(n, &self.quotient, self.derivations.as_ref()?).expect("validated at construction"))
    }

    /// `M` as a `g`-module, when `n` is finite-dimensional.
    pub fn g_module(&self) -> Option<LieModule> {
        let g = self.semidirect()?;
        let rho = self
            .module
            .kernel_action
            .iter()
            .chain(&self.module.quotient_action)
            .cloned()
            .collect();
        Some(LieModule::new(&g, self.module.dim, rho).expect("g-module condition validated at construction"))
    }
}
