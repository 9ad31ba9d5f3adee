use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{factorial, Matrix, Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

/// Symmetric tensor of order `m` in dimension `n`, stored once per index
/// multiset (sorted, 0-based index tuple).
///
/// The link to polynomials is `p(x) = T(x,…,x)/m!`, so the entry for
/// multiset α is `α!·coeff(p, x^α)` with `α! = Π αᵢ!`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricTensor {
    dim: usize,
    order: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

fn multiset_factorial(m: &Monomial) -> BigInt {
    m.exponents()
        .iter()
        .map(|&e| factorial(e as u64))
        .product()
}

impl SymmetricTensor {
    pub fn zero(dim: usize, order: usize) -> Self {
        SymmetricTensor {
            dim,
            order,
            entries: BTreeMap::new(),
        }
    }

    /// `p` must be homogeneous of degree `order`.
    pub fn from_homogeneous(p: &Polynomial, order: usize) -> Result<Self> {
        if !p.is_homogeneous(order) {
            return Err(Error::NotHomogeneous { degree: order });
        }
        let mut t = SymmetricTensor::zero(p.dim(), order);
        for (m, c) in p.terms() {
            let entry = c * Rational::from_integer(multiset_factorial(m));
            t.entries.insert(m.to_multiset(), entry);
        }
        Ok(t)
    }

    pub fn from_matrix(a: &Matrix) -> Self {
        let mut t = SymmetricTensor::zero(a.dim(), 2);
        for i in 0..a.dim() {
            for j in i..a.dim() {
                t.set(&[i, j], a.get(i, j).clone());
            }
        }
        t
    }

    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.order, 2);
        let mut a = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                a.set(i, j, self.get(&[i, j]));
            }
        }
        a
    }

    /// Inverse of [`SymmetricTensor::from_homogeneous`]: `T(x,…,x)/m!`.
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.dim,
            self.entries.iter().map(|(k, v)| {
                let m = Monomial::from_multiset(self.dim, k);
                let c = v / Rational::from_integer(multiset_factorial(&m));
                (m, c)
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries keyed by sorted index tuple.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.entries.iter()
    }

    /// Entry at any index tuple, in any order.
    pub fn get(&self, indices: &[usize]) -> Rational {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, indices: &[usize], v: Rational) {
        assert_eq!(indices.len(), self.order);
        assert!(indices.iter().all(|&i| i < self.dim));
        let mut key = indices.to_vec();
        key.sort_unstable();
        if v.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, v);
        }
    }

    pub fn neg(&self) -> SymmetricTensor {
        SymmetricTensor {
            dim: self.dim,
            order: self.order,
            entries: self.entries.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Contracts `order - 1` slots with the given vectors, leaving one free
    /// index: `out_j = Σ T[i₁…i_{m-1} j] · s₁[i₁] ⋯ s_{m-1}[i_{m-1}]`.
    pub fn contract_vector(&self, slots: &[Vec<Polynomial>]) -> Result<Vec<Polynomial>> {
        if slots.len() + 1 != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order - 1,
                found: slots.len(),
            });
        }
        let var_dim = self.check_slots(slots)?;
        let dense = self.contract_dense(slots, var_dim);
        debug_assert_eq!(dense.len(), self.dim);
        Ok(dense)
    }

    /// Contracts every slot, giving a scalar polynomial.
    pub fn contract_full(&self, slots: &[Vec<Polynomial>]) -> Result<Polynomial> {
        if slots.len() != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: slots.len(),
            });
        }
        let var_dim = self.check_slots(slots)?;
        let mut dense = self.contract_dense(slots, var_dim);
        Ok(dense.pop().unwrap_or_else(|| Polynomial::zero(var_dim)))
    }

    fn check_slots(&self, slots: &[Vec<Polynomial>]) -> Result<usize> {
        let var_dim = slots
            .first()
            .and_then(|s| s.first())
            .map(Polynomial::dim)
            .unwrap_or(0);
        for s in slots {
            if s.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: s.len(),
                });
            }
            if let Some(p) = s.iter().find(|p| p.dim() != var_dim) {
                return Err(Error::DimensionMismatch {
                    expected: var_dim,
                    found: p.dim(),
                });
            }
        }
        Ok(var_dim)
    }

    /// Contracts slots one at a time against a dense expansion of the tensor.
    /// Returns the remaining dense tensor, flattened row-major.
    fn contract_dense(&self, slots: &[Vec<Polynomial>], var_dim: usize) -> Vec<Polynomial> {
        let n = self.dim;
        let mut rank = self.order;
        let mut dense: Vec<Polynomial> = vec![Polynomial::zero(var_dim); n.pow(rank as u32)];
        for (flat, slot) in dense.iter_mut().enumerate() {
            let idx = unflatten(flat, n, rank);
            let v = self.get(&idx);
            if !v.is_zero() {
                *slot = Polynomial::constant(var_dim, v);
            }
        }
        for s in slots {
            let rest = n.pow(rank as u32 - 1);
            let mut next = vec![Polynomial::zero(var_dim); rest];
            for (i, si) in s.iter().enumerate() {
                if si.is_zero() {
                    continue;
                }
                for (r, acc) in next.iter_mut().enumerate() {
                    let t = &dense[i * rest + r];
                    if !t.is_zero() {
                        *acc = &*acc + &(t * si);
                    }
                }
            }
            dense = next;
            rank -= 1;
        }
        dense
    }
}

fn unflatten(mut flat: usize, n: usize, rank: usize) -> Vec<usize> {
    let mut idx = vec![0; rank];
    for k in (0..rank).rev() {
        idx[k] = flat % n;
        flat /= n;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn cubic_one_variable() {
        let p = Polynomial::monomial(1, vec![3], rat(1, 6));
        let t = SymmetricTensor::from_homogeneous(&p, 3).unwrap();
        assert_eq!(t.get(&[0, 0, 0]), int(1));
        assert_eq!(t.to_polynomial(), p);
    }

    #[test]
    fn mixed_multiset_factorial() {
        let c = rat(5, 7);
        let p = Polynomial::monomial(2, vec![2, 1], c.clone());
        let t = SymmetricTensor::from_homogeneous(&p, 3).unwrap();
        assert_eq!(t.get(&[1, 0, 0]), c * int(2));
    }

    #[test]
    fn quadratic_gives_hessian_matrix() {
        let p = Polynomial::monomial(1, vec![2], rat(1, 2));
        let t = SymmetricTensor::from_homogeneous(&p, 2).unwrap();
        assert_eq!(t.to_matrix(), Matrix::identity(1));
    }

    #[test]
    fn rejects_inhomogeneous() {
        let p = &Polynomial::var(1, 0) + &Polynomial::monomial(1, vec![2], int(1));
        assert_eq!(
            SymmetricTensor::from_homogeneous(&p, 2).unwrap_err(),
            Error::NotHomogeneous { degree: 2 }
        );
    }

    #[test]
    fn contraction_examples() {
        let y = Polynomial::var(1, 0);
        let t = {
            let mut t = SymmetricTensor::zero(1, 3);
            t.set(&[0, 0, 0], rat(3, 2));
            t
        };
        let out = t.contract_vector(&[vec![y.clone()], vec![y.clone()]]).unwrap();
        assert_eq!(out, vec![Polynomial::monomial(1, vec![2], rat(3, 2))]);

        let zero = vec![Polynomial::zero(1)];
        let out = t.contract_vector(&[vec![y.clone()], zero]).unwrap();
        assert!(out.iter().all(Polynomial::is_zero));

        let id = SymmetricTensor::from_matrix(&Matrix::identity(2));
        let v = vec![Polynomial::var(2, 0), Polynomial::var(2, 1)];
        assert_eq!(id.contract_vector(std::slice::from_ref(&v)).unwrap(), v);
    }

    #[test]
    fn contraction_is_symmetric_in_slots() {
        let mut t = SymmetricTensor::zero(2, 3);
        t.set(&[0, 0, 1], int(2));
        t.set(&[0, 1, 1], rat(-1, 3));
        t.set(&[1, 1, 1], int(5));
        let a = vec![Polynomial::var(2, 0), &Polynomial::var(2, 1) + &Polynomial::var(2, 0)];
        let b = vec![Polynomial::var(2, 1).scale(&int(3)), Polynomial::zero(2)];
        assert_eq!(
            t.contract_vector(&[a.clone(), b.clone()]).unwrap(),
            t.contract_vector(&[b, a]).unwrap()
        );
    }

    #[test]
    fn full_contraction_recovers_polynomial() {
        // T(x,x,x)/3! = p
        let p = &Polynomial::monomial(2, vec![2, 1], rat(1, 2)) + &Polynomial::monomial(2, vec![0, 3], int(4));
        let t = SymmetricTensor::from_homogeneous(&p, 3).unwrap();
        let x = vec![Polynomial::var(2, 0), Polynomial::var(2, 1)];
        let full = t.contract_full(&[x.clone(), x.clone(), x]).unwrap();
        assert_eq!(full.scale(&rat(1, 6)), p);
    }

    #[test]
    fn slot_count_is_checked() {
        let t = SymmetricTensor::zero(1, 3);
        assert!(matches!(
            t.contract_vector(&[vec![Polynomial::var(1, 0)]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            t.contract_vector(&[vec![Polynomial::var(1, 0)], vec![]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
