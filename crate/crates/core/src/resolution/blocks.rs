//! Kernels assembled from free and abelian blocks, and derivations of them given by
//! generator images.

use crate::lie::LieAlgebra;
use crate::linalg::{Field, FieldElem, Matrix};

use super::words::{BracketAlgebra, LieExpr, NcPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Free,
    Abelian,
}

/// A run of consecutive kernel generators `offset..offset+rank` forming one free or abelian
/// summand or factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub offset: usize,
    pub rank: usize,
}

impl Block {
    pub fn contains(&self, generator: usize) -> bool {
        (self.offset..self.offset + self.rank).contains(&generator)
    }
}

/// One component of an element of a direct sum of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockElem {
    Free(NcPolynomial),
    Abelian(Vec<FieldElem>),
}

impl BlockElem {
    fn zero(field: Field, block: &Block) -> Self {
        match block.kind {
            BlockKind::Free => BlockElem::Free(NcPolynomial::zero(field)),
            BlockKind::Abelian => BlockElem::Abelian(vec![field.zero(); block.rank]),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            BlockElem::Free(p) => p.is_zero(),
            BlockElem::Abelian(v) => v.iter().all(FieldElem::is_zero),
        }
    }

    /// Coordinates of the degree-one part on the block's generators.
    pub fn linear_part(&self, rank: usize) -> Vec<FieldElem> {
        match self {
            BlockElem::Free(p) => p.linear_part(rank),
            BlockElem::Abelian(v) => v.clone(),
        }
    }

    fn add(&self, other: &BlockElem) -> BlockElem {
        match (self, other) {
            (BlockElem::Free(a), BlockElem::Free(b)) => BlockElem::Free(a.add(b)),
            (BlockElem::Abelian(a), BlockElem::Abelian(b)) => {
                BlockElem::Abelian(a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            }
            _ => unreachable!("block kinds agree componentwise"),
        }
    }

    fn scale(&self, c: &FieldElem) -> BlockElem {
        match self {
            BlockElem::Free(a) => BlockElem::Free(a.scale(c)),
            BlockElem::Abelian(a) => BlockElem::Abelian(a.iter().map(|x| x.mul(c)).collect()),
        }
    }
}

/// `⊕ blocks` as a Lie algebra: commutators inside free blocks, everything else commutes.
/// Also correct for a free product as long as no expression mixes factors.
pub struct DirectSumAlgebra<'a> {
    pub field: Field,
    pub blocks: &'a [Block],
}

impl DirectSumAlgebra<'_> {
    pub fn locate(&self, generator: usize) -> (usize, usize) {
        let b = self
            .blocks
            .iter()
            .position(|b| b.contains(generator))
            .expect("generator belongs to a block");
        (b, generator - self.blocks[b].offset)
    }
}

impl BracketAlgebra for DirectSumAlgebra<'_> {
    type Elem = Vec<BlockElem>;

    fn zero(&self) -> Vec<BlockElem> {
        self.blocks.iter().map(|b| BlockElem::zero(self.field, b)).collect()
    }

    fn generator(&self, i: usize) -> Vec<BlockElem> {
        let (b, local) = self.locate(i);
        let mut out = self.zero();
        out[b] = match self.blocks[b].kind {
            BlockKind::Free => BlockElem::Free(NcPolynomial::generator(self.field, local)),
            BlockKind::Abelian => {
                let mut v = vec![self.field.zero(); self.blocks[b].rank];
                v[local] = self.field.one();
                BlockElem::Abelian(v)
            }
        };
        out
    }

    fn add(&self, a: &Vec<BlockElem>, b: &Vec<BlockElem>) -> Vec<BlockElem> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    fn scale(&self, c: &FieldElem, a: &Vec<BlockElem>) -> Vec<BlockElem> {
        a.iter().map(|x| x.scale(c)).collect()
    }

    fn bracket(&self, a: &Vec<BlockElem>, b: &Vec<BlockElem>) -> Vec<BlockElem> {
        a.iter()
            .zip(b)
            .zip(self.blocks)
            .map(|((x, y), blk)| match (x, y) {
                (BlockElem::Free(p), BlockElem::Free(q)) => BlockElem::Free(p.commutator(q)),
                _ => BlockElem::zero(self.field, blk),
            })
            .collect()
    }
}

/// A derivation of the block kernel given by the images of all generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDerivation {
    pub images: Vec<Vec<BlockElem>>,
}

impl BlockDerivation {
    /// Applies the derivation to an element of the direct sum. Inside a free block the
    /// derivation acts on words letter by letter; components leaving a block can only come
    /// from the degree-one part, since everything outside a block commutes with it.
    pub fn apply(&self, alg: &DirectSumAlgebra<'_>, elem: &[BlockElem]) -> Vec<BlockElem> {
        let mut out = alg.zero();
        for (b, (block, component)) in alg.blocks.iter().zip(elem).enumerate() {
            let lin = component.linear_part(block.rank);
            for (local, c) in lin.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (t, img) in self.images[block.offset + local].iter().enumerate() {
                    if t != b || block.kind == BlockKind::Abelian {
                        out[t] = out[t].add(&img.scale(c));
                    }
                }
            }
            if let BlockElem::Free(p) = component {
                let own: Vec<NcPolynomial> = (0..block.rank)
                    .map(|local| match &self.images[block.offset + local][b] {
                        BlockElem::Free(q) => q.clone(),
                        BlockElem::Abelian(_) => unreachable!(),
                    })
                    .collect();
                out[b] = out[b].add(&BlockElem::Free(p.apply_derivation(&own)));
            }
        }
        out
    }

    pub fn commutator(&self, other: &BlockDerivation, alg: &DirectSumAlgebra<'_>) -> BlockDerivation {
        let images = (0..self.images.len())
            .map(|g| {
                let ab = self.apply(alg, &other.images[g]);
                let ba = other.apply(alg, &self.images[g]);
                alg.add(&ab, &alg.scale(&alg.field.from_i64(-1), &ba))
            })
            .collect();
        BlockDerivation { images }
    }

    pub fn combine(alg: &DirectSumAlgebra<'_>, ds: &[BlockDerivation], coeffs: &[FieldElem], generators: usize) -> BlockDerivation {
        let mut images = vec![alg.zero(); generators];
        for (d, c) in ds.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (g, img) in images.iter_mut().enumerate() {
                *img = alg.add(img, &alg.scale(c, &d.images[g]));
            }
        }
        BlockDerivation { images }
    }

    /// Image of a free-block generator as an element of the free associative algebra of its
    /// own block.
    pub fn free_image(&self, generator: usize, block: usize) -> &NcPolynomial {
        match &self.images[generator][block] {
            BlockElem::Free(p) => p,
            BlockElem::Abelian(_) => panic!("generator {generator} is not in a free block"),
        }
    }

    /// Matrix of the induced map on the degree-one span of block `b`: column `k` holds the
    /// block-`b` coordinates of the linear part of the image of generator `k` of that block.
    pub fn linear_block(&self, blocks: &[Block], b: usize, field: Field) -> Matrix {
        let block = blocks[b];
        let mut m = Matrix::zeros(field, block.rank, block.rank);
        for k in 0..block.rank {
            for (j, c) in self.images[block.offset + k][b].linear_part(block.rank).into_iter().enumerate() {
                m.set(j, k, c);
            }
        }
        m
    }
}

/// Derivations of the block kernel for every quotient basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAction {
    pub blocks: Vec<Block>,
    pub derivations: Vec<BlockDerivation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorActionError {
    /// The image of a generator has a component outside the allowed blocks.
    ForeignComponent { alpha: usize, generator: usize, block: usize },
    /// `φ([α,β]) != [φ(α), φ(β)]`
    Homomorphism { a: usize, b: usize },
}

impl GeneratorAction {
    /// Evaluates the images and checks that each stays in the blocks `allowed(generator)`
    /// permits, then checks the homomorphism property on the quotient.
    pub fn new(
        field: Field,
        blocks: Vec<Block>,
        h: &LieAlgebra,
        images: &[Vec<LieExpr>],
        allowed: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, GeneratorActionError> {
        let generators: usize = blocks.iter().map(|b| b.rank).sum();
        let alg = DirectSumAlgebra {
            field,
            blocks: &blocks,
        };
        let mut derivations = Vec::with_capacity(images.len());
        for (alpha, row) in images.iter().enumerate() {
            let mut imgs = Vec::with_capacity(generators);
            for (g, expr) in row.iter().enumerate() {
                let value = expr.eval(&alg);
                for (b, comp) in value.iter().enumerate() {
                    if !comp.is_zero() && !allowed(g, b) {
                        return Err(GeneratorActionError::ForeignComponent { alpha, generator: g, block: b });
                    }
                }
                imgs.push(value);
            }
            derivations.push(BlockDerivation { images: imgs });
        }
        for a in 0..h.dim() {
            for b in a + 1..h.dim() {
                let lhs = BlockDerivation::combine(&alg, &derivations, &h.bracket_basis(a, b), generators);
                let rhs = derivations[a].commutator(&derivations[b], &alg);
                if lhs != rhs {
                    return Err(GeneratorActionError::Homomorphism { a, b });
                }
            }
        }
        Ok(Self { blocks, derivations })
    }

    pub fn algebra(&self, field: Field) -> DirectSumAlgebra<'_> {
        DirectSumAlgebra {
            field,
            blocks: &self.blocks,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cross_term_reaches_abelian_block() {
        // f on x1,x2 plus k on t; α(x1) = t, α(x2) = [x1,x2]
        let blocks = vec![
            Block { kind: BlockKind::Free, offset: 0, rank: 2 },
            Block { kind: BlockKind::Abelian, offset: 2, rank: 1 },
        ];
        let l = labels(&["x1", "x2", "t"]);
        let h = LieAlgebra::abelian(Q, &["a"]);
        let row: Vec<LieExpr> = ["t", "[x1,x2]", "0"]
            .iter()
            .map(|s| LieExpr::parse(s, &l, Q).unwrap())
            .collect();
        let act = GeneratorAction::new(Q, blocks, &h, &[row], |_, _| true).unwrap();
        let alg = act.algebra(Q);
        // α(x1 + [x1,x2]) = t + [t,x2] + [x1,[x1,x2]] = t + [x1,[x1,x2]]
        let elem = LieExpr::parse("x1 + [x1,x2]", &l, Q).unwrap().eval(&alg);
        let image = act.derivations[0].apply(&alg, &elem);
        let expected = LieExpr::parse("t + [x1,[x1,x2]]", &l, Q).unwrap().eval(&alg);
        assert_eq!(image, expected);
    }

    #[test]
    fn homomorphism_failure_detected() {
        let blocks = vec![Block { kind: BlockKind::Free, offset: 0, rank: 1 }];
        let l = labels(&["x"]);
        // [a,b] = b in h but φ(a) = φ(b) = id has zero commutator
        let h = LieAlgebra::from_brackets(Q, &["a", "b"], &[(0, 1, &[(1, 1)])]).unwrap();
        let x = LieExpr::parse("x", &l, Q).unwrap();
        let err = GeneratorAction::new(Q, blocks, &h, &[vec![x.clone()], vec![x]], |_, _| true).unwrap_err();
        assert_eq!(err, GeneratorActionError::Homomorphism { a: 0, b: 1 });
    }

    #[test]
    fn foreign_component_detected() {
        let blocks = vec![
            Block { kind: BlockKind::Free, offset: 0, rank: 1 },
            Block { kind: BlockKind::Free, offset: 1, rank: 1 },
        ];
        let l = labels(&["x", "y"]);
        let h = LieAlgebra::abelian(Q, &["a"]);
        let row = vec![LieExpr::parse("y", &l, Q).unwrap(), LieExpr::Zero];
        let err = GeneratorAction::new(Q, blocks, &h, &[row], |g, b| (g == 0) == (b == 0)).unwrap_err();
        assert_eq!(err, GeneratorActionError::ForeignComponent { alpha: 0, generator: 0, block: 1 });
    }
}
