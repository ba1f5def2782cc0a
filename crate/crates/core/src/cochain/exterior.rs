use std::collections::HashMap;

use crate::linalg::{Field, Matrix};

use super::CochainError;

/// Lexicographically ordered strictly increasing index tuples of length `degree` from `0..n_dim`.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    n_dim: usize,
    degree: usize,
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ExteriorBasis {
    pub fn new(n_dim: usize, degree: usize) -> Result<Self, CochainError> {
        if degree > n_dim {
            return Err(CochainError::DegreeOutOfRange { degree, dim: n_dim });
        }
        let mut monomials = Vec::new();
        let mut current = Vec::with_capacity(degree);
        combinations(n_dim, degree, 0, &mut current, &mut monomials);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(Self {
            n_dim,
            degree,
            monomials,
            index,
        })
    }

    /// Like [`ExteriorBasis::new`] but empty above the top degree.
    pub fn new_or_empty(n_dim: usize, degree: usize) -> Self {
        Self::new(n_dim, degree).unwrap_or_else(|_| Self {
            n_dim,
            degree,
            monomials: Vec::new(),
            index: HashMap::new(),
        })
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &[usize] {
        &self.monomials[i]
    }

    pub fn index_of(&self, sorted: &[usize]) -> Option<usize> {
        self.index.get(sorted).copied()
    }

    /// Position of `±` the sorted wedge of `tuple`, with `true` meaning a minus sign.
    /// `None` when an index repeats, since the wedge then vanishes.
    pub fn sort_wedge(&self, tuple: &[usize]) -> Option<(usize, bool)> {
        let (sorted, negate) = sort_with_sign(tuple)?;
        self.index_of(&sorted).map(|i| (i, negate))
    }
}

fn combinations(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Sorts a tuple, returning the permutation parity; `None` on repeated entries.
pub fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = tuple.to_vec();
    let mut negate = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negate = !negate;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negate))
}

/// The derivation extension of `d` to `Λ^q`:
/// `x_1∧…∧x_q ↦ Σ_j x_1∧…∧d(x_j)∧…∧x_q`.
pub fn exterior_derivation(d: &Matrix, basis: &ExteriorBasis) -> Matrix {
    let field = d.field();
    let n = basis.len();
    let mut out = Matrix::zeros(field, n, n);
    for (col, mono) in basis.monomials().iter().enumerate() {
        for (pos, &x) in mono.iter().enumerate() {
            for k in 0..d.rows() {
                let c = d.get(k, x);
                if c.is_zero() {
                    continue;
                }
                let mut replaced = mono.clone();
                replaced[pos] = k;
                if let Some((row, negate)) = basis.sort_wedge(&replaced) {
                    out.add_at(row, col, &c.signed(negate));
                }
            }
        }
    }
    out
}

/// The action `(α·f)(a) = ρ(α) f(a) − f(θ(α) a)` on `Hom_k(A, M)`, where `θ` acts on `A`
/// and `ρ` on `M`. Coordinates: basis of `A` slowest, module coordinate fastest.
pub fn dual_action(field: Field, theta: &Matrix, rho: &Matrix) -> Matrix {
    let a = theta.rows();
    let m = rho.rows();
    let mut out = Matrix::identity(field, a).kron(rho);
    for i in 0..a {
        for ip in 0..a {
            let t = theta.get(ip, i);
            if t.is_zero() {
                continue;
            }
            let neg = t.neg();
            for k in 0..m {
                out.add_at(i * m + k, ip * m + k, &neg);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        let b = ExteriorBasis::new(3, 0).unwrap();
        assert_eq!(b.monomials(), &[Vec::<usize>::new()]);
        let b = ExteriorBasis::new(3, 2).unwrap();
        assert_eq!(b.monomials(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(ExteriorBasis::new(3, 4).is_err());
        assert!(ExteriorBasis::new_or_empty(3, 4).is_empty());
    }

    #[test]
    fn wedge_sorting() {
        let b = ExteriorBasis::new(3, 2).unwrap();
        assert_eq!(b.sort_wedge(&[1, 0]), Some((0, true)));
        assert_eq!(b.sort_wedge(&[0, 2]), Some((1, false)));
        assert_eq!(b.sort_wedge(&[2, 2]), None);
        let b3 = ExteriorBasis::new(3, 3).unwrap();
        assert_eq!(b3.sort_wedge(&[2, 0, 1]), Some((0, false)));
        assert_eq!(b3.sort_wedge(&[2, 1, 0]), Some((0, true)));
    }

    #[test]
    fn binomial_counts() {
        for n in 0..7 {
            for q in 0..=n {
                let b = ExteriorBasis::new(n, q).unwrap();
                let expected = (0..q).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
                assert_eq!(b.len(), expected);
            }
        }
    }

    #[test]
    fn exterior_derivation_of_identity_scales_by_degree() {
        let q = Field::Rational;
        let b = ExteriorBasis::new(4, 2).unwrap();
        let d = exterior_derivation(&Matrix::identity(q, 4), &b);
        assert_eq!(d, Matrix::identity(q, 6).scale(&q.from_i64(2)));
    }
}
