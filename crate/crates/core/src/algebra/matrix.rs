use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Dense square matrix over ℚ, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix is not square");
        Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let mut out = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Rational::zero();
                for k in 0..self.n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `A·v` for a vector of polynomials.
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.n);
        let dim = v.first().map(Polynomial::dim).unwrap_or(0);
        (0..self.n)
            .map(|i| {
                let mut acc = Polynomial::zero(dim);
                for (j, p) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc = &acc + &p.scale(a);
                    }
                }
                acc
            })
            .collect()
    }

    /// Gauss-Jordan elimination over ℚ.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).recip();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a.get(col, col).clone();
            det *= &p;
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) / &p;
                a.sub_row_multiple(r, col, &factor);
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Rational) {
        for j in 0..self.n {
            self.entries[r * self.n + j] *= c;
        }
    }

    /// row[r] -= factor * row[src]
    fn sub_row_multiple(&mut self, r: usize, src: usize, factor: &Rational) {
        for j in 0..self.n {
            let v = &self.entries[src * self.n + j] * factor;
            self.entries[r * self.n + j] -= v;
        }
    }
}

/// Square matrix of polynomials, used for Hessian and Jacobian matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    var_dim: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_fn(n: usize, var_dim: usize, f: impl Fn(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = f(i, j);
                assert_eq!(p.dim(), var_dim);
                entries.push(p);
            }
        }
        PolyMatrix { n, var_dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Constant parts of all entries, i.e. the matrix evaluated at the origin.
    pub fn at_origin(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).constant_term());
            }
        }
        m
    }

    /// Exact determinant by cofactor expansion along rows, memoised on the
    /// set of remaining columns. O(n·2ⁿ) polynomial products.
    pub fn det(&self) -> Polynomial {
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        assert!(self.n < 64);
        self.minor_det(0, (1u64 << self.n) - 1, &mut memo)
    }

    fn minor_det(&self, row: usize, cols: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if row == self.n {
            return Polynomial::one(self.var_dim);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Polynomial::zero(self.var_dim);
        let mut sign_positive = true;
        for col in 0..self.n {
            if cols & (1 << col) == 0 {
                continue;
            }
            let entry = self.get(row, col);
            if !entry.is_zero() {
                let sub = self.minor_det(row + 1, cols & !(1 << col), memo);
                let term = entry * &sub;
                acc = if sign_positive { &acc + &term } else { &acc - &term };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn identity_is_self_inverse() {
        assert_eq!(Matrix::identity(3).inverse().unwrap(), Matrix::identity(3));
    }

    #[test]
    fn diagonal_inverse() {
        let a = Matrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), rat(1, 2)]]);
        let want = Matrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(0), int(2)]]);
        assert_eq!(a.inverse().unwrap(), want);
    }

    #[test]
    fn swap_is_involution() {
        let a = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(a.inverse().unwrap(), a);
        assert_eq!(a.det(), int(-1));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert_eq!(a.inverse().unwrap_err(), Error::SingularMatrix);
        assert_eq!(a.det(), int(0));
    }

    #[test]
    fn poly_det_matches_rational_det() {
        let rows = vec![
            vec![int(2), int(-1), int(3)],
            vec![rat(1, 2), int(0), int(1)],
            vec![int(4), int(5), int(-2)],
        ];
        let a = Matrix::from_rows(rows.clone());
        let pm = PolyMatrix::from_fn(3, 1, |i, j| Polynomial::constant(1, rows[i][j].clone()));
        assert_eq!(pm.det().as_constant(), Some(a.det()));
    }
}
