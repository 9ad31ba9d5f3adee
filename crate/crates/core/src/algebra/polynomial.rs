use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{int, text, Monomial, Rational};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over ℚ.
///
/// Zero coefficients are never stored and every exponent vector has length
/// `dim`. Iteration follows the graded-lex order of [`Monomial`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::from_terms(dim, [(Monomial::one(dim), c)])
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn var(dim: usize, index: usize) -> Self {
        assert!(index < dim, "variable index {index} out of range for dimension {dim}");
        Self::from_terms(dim, [(Monomial::var(dim, index), Rational::one())])
    }

    pub fn monomial(dim: usize, exponents: Vec<u32>, c: Rational) -> Self {
        Self::from_terms(dim, [(Monomial::new(exponents), c)])
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging
    /// duplicates. Panics if a monomial has the wrong length.
    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "monomial length does not match dimension");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a nonzero term, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.dim))
    }

    /// Returns the constant when the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.constant_term()),
            Some(_) => None,
        }
    }

    pub fn homogeneous_component(&self, degree: usize) -> Polynomial {
        self.filter(|m| m.degree() == degree)
    }

    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    /// Drops every term of total degree above `degree`.
    pub fn truncated(&self, degree: usize) -> Polynomial {
        self.filter(|m| m.degree() <= degree)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        Ok(self.mul_filtered(other, None))
    }

    /// Product with every term above `degree` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, degree: usize) -> Polynomial {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.mul_filtered(other, Some(degree))
    }

    fn mul_filtered(&self, other: &Polynomial, max_degree: Option<usize>) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if let Some(d) = max_degree {
                    // terms are graded, so every later term of `other` is too big as well
                    if da + mb.degree() > d {
                        break;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn derivative(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(index) {
                out.add_term(dm, c * int(e as i64));
            }
        }
        out
    }

    /// Re-embeds into `new_dim` variables, sending variable `i` to
    /// `mapping[i]`.
    pub fn remap(&self, new_dim: usize, mapping: &[usize]) -> Polynomial {
        assert_eq!(mapping.len(), self.dim);
        let mut out = Polynomial::zero(new_dim);
        for (m, c) in &self.terms {
            let mut e = vec![0; new_dim];
            for (i, &k) in m.exponents().iter().enumerate() {
                e[mapping[i]] += k;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_polynomial(
            self,
            &text::indexed_names("x", self.dim),
        ))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x(dim: usize, i: usize) -> Polynomial {
        Polynomial::var(dim, i)
    }

    #[test]
    fn difference_of_squares() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let got = poly_arith(&a, &b, ArithOp::Mul).unwrap();
        let want = &(&x(2, 0) * &x(2, 0)) - &(&x(2, 1) * &x(2, 1));
        assert_eq!(got, want);
        assert_eq!(got.num_terms(), 2);
    }

    #[test]
    fn zero_is_additive_identity() {
        let p = &x(2, 0) * &x(2, 1);
        assert_eq!(poly_arith(&p, &Polynomial::zero(2), ArithOp::Add).unwrap(), p);
    }

    #[test]
    fn rational_coefficient_product() {
        let a = Polynomial::monomial(1, vec![2], rat(1, 2));
        let b = Polynomial::monomial(1, vec![1], rat(1, 3));
        assert_eq!(&a * &b, Polynomial::monomial(1, vec![3], rat(1, 6)));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = x(1, 0).checked_add(&x(2, 0)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 1, found: 2 });
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &x(1, 0) - &x(1, 0);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn derivative_and_remap() {
        // x1^2 x2 / 2
        let p = Polynomial::monomial(2, vec![2, 1], rat(1, 2));
        assert_eq!(p.derivative(0), Polynomial::monomial(2, vec![1, 1], int(1)));
        assert_eq!(p.derivative(1), Polynomial::monomial(2, vec![2, 0], rat(1, 2)));
        let q = p.remap(3, &[2, 0]);
        assert_eq!(q, Polynomial::monomial(3, vec![1, 0, 2], rat(1, 2)));
    }

    #[test]
    fn mul_truncated_drops_high_terms() {
        let a = &Polynomial::one(1) + &x(1, 0);
        let sq = a.mul_truncated(&a, 1);
        assert_eq!(sq, &Polynomial::one(1) + &x(1, 0).scale(&int(2)));
    }
}
