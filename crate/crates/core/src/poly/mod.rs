//! Sparse multivariate polynomials with exact complex-rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
//! always lexicographic by multi-index. Zero coefficients are never stored.

mod parse;

pub use parse::{parse_polynomial, parse_polynomial_with, DEFAULT_MAX_DEGREE};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{QComplex, Q};

/// Exponent vector `(i_1, …, i_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn to_rationals(&self) -> Vec<Q> {
        self.0.iter().map(|&e| Q::from_integer(BigInt::from(e))).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A point of `Cⁿ` in floating arithmetic.
pub type ComplexPoint = Vec<Complex64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, QComplex>,
}

impl SparsePolynomial {
    /// Builds a polynomial, dropping zero coefficients. Fails if nothing survives.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, QComplex)>,
    {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut acc: BTreeMap<MultiIndex, QComplex> = BTreeMap::new();
        for (idx, c) in terms {
            if idx.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: idx.dim() });
            }
            add_term(&mut acc, idx, c);
        }
        if acc.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(SparsePolynomial { dim, terms: acc })
    }

    pub fn monomial(exponents: Vec<u32>, coeff: QComplex) -> Result<Self> {
        let dim = exponents.len();
        Self::from_terms(dim, [(MultiIndex(exponents), coeff)])
    }

    pub fn constant(dim: usize, coeff: QComplex) -> Result<Self> {
        Self::from_terms(dim, [(MultiIndex::zero(dim), coeff)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, QComplex> {
        &self.terms
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Option<&QComplex> {
        self.terms.get(idx)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().map(MultiIndex::total_degree).max().unwrap_or(0)
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> BTreeSet<MultiIndex> {
        self.terms.keys().cloned().collect()
    }

    /// `G(x) = F(x + x0)`, computed exactly by binomial expansion.
    pub fn taylor_shift(&self, x0: &[QComplex]) -> Result<Self> {
        if x0.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x0.len() });
        }
        let mut acc: BTreeMap<MultiIndex, QComplex> = BTreeMap::new();
        for (idx, c) in &self.terms {
            // Partial products over the first k variables.
            let mut partial: Vec<(Vec<u32>, QComplex)> = vec![(Vec::with_capacity(self.dim), c.clone())];
            for (k, &e) in idx.0.iter().enumerate() {
                let shift = &x0[k];
                let expansion = binomial_expansion(e, shift);
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (exps, coeff) in &partial {
                    for (j, b) in &expansion {
                        if b.is_zero() {
                            continue;
                        }
                        let mut e2 = exps.clone();
                        e2.push(*j);
                        next.push((e2, coeff * b));
                    }
                }
                partial = next;
            }
            for (exps, coeff) in partial {
                add_term(&mut acc, MultiIndex(exps), coeff);
            }
        }
        if acc.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(SparsePolynomial { dim: self.dim, terms: acc })
    }

    /// Floating-point value at `x`, summing terms in lexicographic order.
    pub fn evaluate(&self, x: &[Complex64]) -> Result<Complex64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let mut sum = Complex64::zero();
        for (idx, c) in &self.terms {
            let mut t = c.to_c64();
            for (xk, &e) in x.iter().zip(&idx.0) {
                if e > 0 {
                    t *= xk.powu(e);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut acc: BTreeMap<MultiIndex, QComplex> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let idx = MultiIndex(i.0.iter().zip(&j.0).map(|(x, y)| x + y).collect());
                add_term(&mut acc, idx, a * b);
            }
        }
        if acc.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(SparsePolynomial { dim: self.dim, terms: acc })
    }
}

fn add_term(acc: &mut BTreeMap<MultiIndex, QComplex>, idx: MultiIndex, c: QComplex) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match acc.entry(idx) {
        Entry::Occupied(mut e) => {
            let sum = e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// `(x + a)^e = Σ_j C(e,j) a^(e-j) x^j`, as `(j, coefficient)` pairs.
fn binomial_expansion(e: u32, a: &QComplex) -> Vec<(u32, QComplex)> {
    let mut out = Vec::with_capacity(e as usize + 1);
    let mut binom = BigInt::one();
    for j in 0..=e {
        let c = a.pow(e - j).scale(&Q::from_integer(binom.clone()));
        out.push((j, c));
        binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
    }
    out
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let negative = c.im.is_zero() && c.re.is_negative();
            let c = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = idx.0.iter().all(|&e| e == 0);
            let unit = c.im.is_zero() && c.re.is_one();
            if is_const || !unit {
                write!(f, "{c}")?;
            }
            let mut first = is_const || !unit;
            for (k, &e) in idx.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if first {
                    write!(f, "*")?;
                }
                first = true;
                write!(f, "x{}", k + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, q_frac};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn c(n: i64) -> QComplex {
        QComplex::real(q(n))
    }

    #[test]
    fn linear_shift() {
        let f = parse_polynomial("x1", 1).unwrap();
        let g = f.taylor_shift(&[c(1)]).unwrap();
        assert_eq!(g.coeff(&mi(&[1])), Some(&c(1)));
        assert_eq!(g.coeff(&mi(&[0])), Some(&c(1)));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn square_shift_matches_binomial_oracle() {
        // (x + 1)^2 expanded by hand: 1, 2, 1.
        let f = parse_polynomial("x1^2", 1).unwrap();
        let g = f.taylor_shift(&[c(1)]).unwrap();
        let expected = [(2u32, 1i64), (1, 2), (0, 1)];
        for (e, k) in expected {
            assert_eq!(g.coeff(&mi(&[e])), Some(&c(k)), "coefficient of x^{e}");
        }
        assert_eq!(g.support(), [mi(&[2]), mi(&[1]), mi(&[0])].into_iter().collect());
        let at = g.evaluate(&[Complex64::new(-1.0, 0.0)]).unwrap();
        assert_eq!(at, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_shift_is_identity() {
        let f = parse_polynomial("(1/2,3)*x1^3*x2 - 7*x2^2 + 4", 2).unwrap();
        let g = f.taylor_shift(&[QComplex::zero(), QComplex::zero()]).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn shift_dimension_mismatch() {
        let f = parse_polynomial("x1", 2).unwrap();
        assert!(matches!(f.taylor_shift(&[c(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn shift_can_cancel_to_constant() {
        // (x - 1) shifted by 1 is x, the constant vanishes exactly.
        let f = parse_polynomial("x1 - 1", 1).unwrap();
        let g = f.taylor_shift(&[c(1)]).unwrap();
        assert_eq!(g.support(), [mi(&[1])].into_iter().collect());
    }

    #[test]
    fn evaluate_examples() {
        let f = parse_polynomial("x1^2*x2 + x2^3", 2).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(f.evaluate(&[one, one]).unwrap(), Complex64::new(2.0, 0.0));
        let g = parse_polynomial("x1", 2).unwrap();
        assert_eq!(g.evaluate(&[Complex64::zero(), one]).unwrap(), Complex64::zero());
    }

    #[test]
    fn support_examples() {
        let f = parse_polynomial("x1^2*x2 + x2^3", 2).unwrap();
        assert_eq!(f.support(), [mi(&[2, 1]), mi(&[0, 3])].into_iter().collect());
        let one = parse_polynomial("1", 2).unwrap();
        assert_eq!(one.support(), [mi(&[0, 0])].into_iter().collect());
    }

    #[test]
    fn product_collects_terms() {
        let f = parse_polynomial("x1 + 1", 1).unwrap();
        let g = parse_polynomial("x1 - 1", 1).unwrap();
        let h = f.mul(&g).unwrap();
        assert_eq!(h, parse_polynomial("x1^2 - 1", 1).unwrap());
        let half = parse_polynomial("1/2", 1).unwrap();
        assert_eq!(half.mul(&half).unwrap().coeff(&mi(&[0])), Some(&QComplex::real(q_frac(1, 4))));
    }

    #[test]
    fn display_reparses() {
        let f = parse_polynomial("(1/2,-3)*x1^3*x2 - 7*x2^2 + 4 + x1", 2).unwrap();
        let g = parse_polynomial(&f.to_string(), 2).unwrap();
        assert_eq!(f, g);
    }
}
