//! Bracket expressions over kernel generators and the free associative algebra `k{X}`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::linalg::{Field, FieldElem, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("cannot parse {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("expression has a nonzero constant term, so it is not in the augmentation ideal")]
    ConstantTerm,
}

/// Something Lie expressions can be evaluated in.
pub trait BracketAlgebra {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn generator(&self, i: usize) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &FieldElem, a: &Self::Elem) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// A linear combination of iterated brackets of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieExpr {
    Zero,
    Gen(usize),
    Scaled(FieldElem, Box<LieExpr>),
    Sum(Vec<LieExpr>),
    Bracket(Box<LieExpr>, Box<LieExpr>),
}

impl LieExpr {
    pub fn bracket(a: LieExpr, b: LieExpr) -> LieExpr {
        LieExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn scaled(c: FieldElem, a: LieExpr) -> LieExpr {
        LieExpr::Scaled(c, Box::new(a))
    }

    /// Parses e.g. `"[x1,x2] - 2*x3 + 1/2 [x1,[x1,x2]]"` against the generator labels.
    pub fn parse(text: &str, labels: &[String], field: Field) -> Result<LieExpr, WordError> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            text,
            tokens,
            pos: 0,
            labels,
            field,
        };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    /// Indices of all generators mentioned.
    pub fn generators(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut BTreeSet<usize>) {
        match self {
            LieExpr::Zero => {}
            LieExpr::Gen(i) => {
                out.insert(*i);
            }
            LieExpr::Scaled(_, e) => e.collect_generators(out),
            LieExpr::Sum(es) => es.iter().for_each(|e| e.collect_generators(out)),
            LieExpr::Bracket(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
        }
    }

    pub fn eval<A: BracketAlgebra>(&self, algebra: &A) -> A::Elem {
        match self {
            LieExpr::Zero => algebra.zero(),
            LieExpr::Gen(i) => algebra.generator(*i),
            LieExpr::Scaled(c, e) => algebra.scale(c, &e.eval(algebra)),
            LieExpr::Sum(es) => es
                .iter()
                .fold(algebra.zero(), |acc, e| algebra.add(&acc, &e.eval(algebra))),
            LieExpr::Bracket(a, b) => algebra.bracket(&a.eval(algebra), &b.eval(algebra)),
        }
    }

    /// Renames generator indices.
    pub fn remap(&self, f: &impl Fn(usize) -> usize) -> LieExpr {
        match self {
            LieExpr::Zero => LieExpr::Zero,
            LieExpr::Gen(i) => LieExpr::Gen(f(*i)),
            LieExpr::Scaled(c, e) => LieExpr::scaled(c.clone(), e.remap(f)),
            LieExpr::Sum(es) => LieExpr::Sum(es.iter().map(|e| e.remap(f)).collect()),
            LieExpr::Bracket(a, b) => LieExpr::bracket(a.remap(f), b.remap(f)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Number(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, WordError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            out.push(Token::Number(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*[](),".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(WordError::Parse {
                text: text.into(),
                reason: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    labels: &'a [String],
    field: Field,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> WordError {
        WordError::Parse {
            text: self.text.into(),
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LieExpr, WordError> {
        let mut terms = Vec::new();
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            terms.push(if negate {
                LieExpr::scaled(self.field.from_i64(-1), t)
            } else {
                t
            });
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            LieExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<LieExpr, WordError> {
        if let Some(Token::Number(n)) = self.peek().cloned() {
            self.pos += 1;
            let c = self
                .field
                .parse(&n)
                .map_err(|_| self.error(&format!("bad coefficient {n}")))?;
            let has_star = self.eat('*');
            let starts_atom = matches!(self.peek(), Some(Token::Ident(_)) | Some(Token::Sym('[')) | Some(Token::Sym('(')));
            if !has_star && !starts_atom {
                return if c.is_zero() {
                    Ok(LieExpr::Zero)
                } else {
                    Err(self.error("constant terms are not Lie elements"))
                };
            }
            let a = self.atom()?;
            return Ok(LieExpr::scaled(c, a));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<LieExpr, WordError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .labels
                    .iter()
                    .position(|l| *l == name)
                    .ok_or(WordError::UnknownGenerator(name))?;
                Ok(LieExpr::Gen(i))
            }
            Some(Token::Sym('[')) => {
                self.pos += 1;
                let a = self.expr()?;
                if !self.eat(',') {
                    return Err(self.error("expected ',' inside bracket"));
                }
                let b = self.expr()?;
                if !self.eat(']') {
                    return Err(self.error("expected ']'"));
                }
                Ok(LieExpr::bracket(a, b))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let a = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(a)
            }
            _ => Err(self.error("expected a generator, '[' or '('")),
        }
    }
}

/// An element of the free associative algebra, in normal form: words sorted, like terms
/// merged, zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NcPolynomial {
    field: Field,
    terms: BTreeMap<Vec<usize>, FieldElem>,
}

impl NcPolynomial {
    pub fn zero(field: Field) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field, Vec::new(), field.one())
    }

    pub fn generator(field: Field, i: usize) -> Self {
        Self::monomial(field, vec![i], field.one())
    }

    pub fn monomial(field: Field, word: Vec<usize>, c: FieldElem) -> Self {
        let mut p = Self::zero(field);
        p.add_term(word, &c);
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &FieldElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Vec<usize>, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> NcPolynomial {
        let mut out = NcPolynomial::zero(self.field);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &NcPolynomial) -> NcPolynomial {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn mul(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &a.mul(b));
            }
        }
        out
    }

    /// `uv − vu`
    pub fn commutator(&self, other: &NcPolynomial) -> NcPolynomial {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn constant_term(&self) -> FieldElem {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Coefficients of the single-letter words `x_0 … x_{rank−1}`.
    pub fn linear_part(&self, rank: usize) -> Vec<FieldElem> {
        (0..rank)
            .map(|i| self.terms.get(&vec![i]).cloned().unwrap_or_else(|| self.field.zero()))
            .collect()
    }

    /// Writes the polynomial as `Σ_j u_j x_j` by splitting off the last letter of each word,
    /// i.e. as an element of the augmentation ideal viewed as a free left module.
    pub fn split_last_letter(&self, rank: usize) -> Result<Vec<NcPolynomial>, WordError> {
        let mut out = vec![NcPolynomial::zero(self.field); rank];
        for (w, c) in &self.terms {
            let Some((&last, prefix)) = w.split_last() else {
                return Err(WordError::ConstantTerm);
            };
            out[last].add_term(prefix.to_vec(), c);
        }
        Ok(out)
    }

    /// Extends `x_i ↦ images[i]` to a derivation of `k{X}` and applies it.
    pub fn apply_derivation(&self, images: &[NcPolynomial]) -> NcPolynomial {
        let mut out = NcPolynomial::zero(self.field);
        for (w, c) in &self.terms {
            for (pos, &letter) in w.iter().enumerate() {
                let left = NcPolynomial::monomial(self.field, w[..pos].to_vec(), c.clone());
                let right = NcPolynomial::monomial(self.field, w[pos + 1..].to_vec(), self.field.one());
                out = out.add(&left.mul(&images[letter]).mul(&right));
            }
        }
        out
    }

    /// Image under the algebra map `x_i ↦ rho[i]` on a module of dimension `dim`.
    pub fn evaluate(&self, rho: &[Matrix], dim: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, dim, dim);
        for (w, c) in &self.terms {
            let mut m = Matrix::identity(self.field, dim);
            for &letter in w {
                m = &m * &rho[letter];
            }
            out = &out + &m.scale(c);
        }
        out
    }

    pub fn display(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|&i| labels.get(i).map_or("?", String::as_str)).collect::<Vec<_>>().join("*")
                };
                if c.is_one() {
                    word
                } else {
                    format!("{c}*{word}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..64).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display(&labels))
    }
}

/// The free Lie algebra inside `k{X}`, brackets as commutators.
pub struct FreeAssociative {
    pub field: Field,
}

impl BracketAlgebra for FreeAssociative {
    type Elem = NcPolynomial;
    fn zero(&self) -> NcPolynomial {
        NcPolynomial::zero(self.field)
    }
    fn generator(&self, i: usize) -> NcPolynomial {
        NcPolynomial::generator(self.field, i)
    }
    fn add(&self, a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
        a.add(b)
    }
    fn scale(&self, c: &FieldElem, a: &NcPolynomial) -> NcPolynomial {
        a.scale(c)
    }
    fn bracket(&self, a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
        a.commutator(b)
    }
}

/// Coordinates in an abelian Lie algebra: every bracket vanishes.
pub struct AbelianCoordinates {
    pub field: Field,
    pub dim: usize,
}

impl BracketAlgebra for AbelianCoordinates {
    type Elem = Vec<FieldElem>;
    fn zero(&self) -> Vec<FieldElem> {
        vec![self.field.zero(); self.dim]
    }
    fn generator(&self, i: usize) -> Vec<FieldElem> {
        (0..self.dim).map(|k| self.field.from_i64((k == i) as i64)).collect()
    }
    fn add(&self, a: &Vec<FieldElem>, b: &Vec<FieldElem>) -> Vec<FieldElem> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }
    fn scale(&self, c: &FieldElem, a: &Vec<FieldElem>) -> Vec<FieldElem> {
        a.iter().map(|x| x.mul(c)).collect()
    }
    fn bracket(&self, _: &Vec<FieldElem>, _: &Vec<FieldElem>) -> Vec<FieldElem> {
        self.zero()
    }
}

/// Coordinates in a finite-dimensional Lie algebra.
pub struct StructureCoordinates<'a>(pub &'a crate::lie::LieAlgebra);

impl BracketAlgebra for StructureCoordinates<'_> {
    type Elem = Vec<FieldElem>;
    fn zero(&self) -> Vec<FieldElem> {
        vec![self.0.field().zero(); self.0.dim()]
    }
    fn generator(&self, i: usize) -> Vec<FieldElem> {
        self.0.basis_vector(i)
    }
    fn add(&self, a: &Vec<FieldElem>, b: &Vec<FieldElem>) -> Vec<FieldElem> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }
    fn scale(&self, c: &FieldElem, a: &Vec<FieldElem>) -> Vec<FieldElem> {
        a.iter().map(|x| x.mul(c)).collect()
    }
    fn bracket(&self, a: &Vec<FieldElem>, b: &Vec<FieldElem>) -> Vec<FieldElem> {
        self.0.bracket(a, b)
    }
}
