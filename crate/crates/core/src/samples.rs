//! Seeded random families used by the verification suite and tests.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, rat, Matrix, Monomial, Polynomial, Rational, SymmetricTensor};
use crate::inversion::PolynomialMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every exponent vector of total degree `degree` in `dim` variables.
pub fn monomials_of_degree(dim: usize, degree: usize) -> Vec<Monomial> {
    fn go(dim: usize, left: usize, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if acc.len() + 1 == dim {
            acc.push(left as u32);
            out.push(Monomial::new(acc.clone()));
            acc.pop();
            return;
        }
        for e in 0..=left {
            acc.push(e as u32);
            go(dim, left - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if dim > 0 {
        go(dim, degree, &mut Vec::new(), &mut out);
    }
    out
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.gen_range(-3..=3);
    let den = *[1, 1, 2, 3].choose(rng).unwrap();
    rat(num, den)
}

/// Symmetric integer matrix with entries in `[-3, 3]` and nonzero determinant.
pub fn random_nonsingular_symmetric(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let mut a = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = int(rng.gen_range(-3..=3));
                a.set(i, j, v.clone());
                a.set(j, i, v);
            }
        }
        if a.det() != int(0) {
            return a;
        }
    }
}

/// `(1/2)·xᵀAx`.
pub fn quadratic_form(a: &Matrix) -> Polynomial {
    SymmetricTensor::from_matrix(a).to_polynomial()
}

/// Homogeneous polynomial with each monomial present with probability
/// `density` and a small rational coefficient.
pub fn random_homogeneous(rng: &mut impl Rng, dim: usize, degree: usize, density: f64) -> Polynomial {
    let mut terms = Vec::new();
    for m in monomials_of_degree(dim, degree) {
        if rng.gen_bool(density) {
            terms.push((m, small_rational(rng)));
        }
    }
    Polynomial::from_terms(dim, terms)
}

/// Random potential with `n ∈ {1, 2, 3}`, integer nonsingular `T₂` with
/// entries in `[-3, 3]`, and cubic and quartic parts with small rational
/// coefficients.
pub fn random_potential(rng: &mut impl Rng) -> Polynomial {
    let n = rng.gen_range(1..=3);
    random_potential_in(rng, n, 4)
}

pub fn random_potential_in(rng: &mut impl Rng, n: usize, max_degree: usize) -> Polynomial {
    let a = random_nonsingular_symmetric(rng, n);
    let mut phi = quadratic_form(&a);
    for d in 3..=max_degree {
        phi = &phi + &random_homogeneous(rng, n, d, 0.6);
    }
    phi
}

/// Map `x + (quadratic and cubic terms)` in `n` variables.
pub fn random_unipotent_map(rng: &mut impl Rng, n: usize, max_degree: usize) -> PolynomialMap {
    let comps = (0..n)
        .map(|i| {
            let mut p = Polynomial::var(n, i);
            for d in 2..=max_degree {
                p = &p + &random_homogeneous(rng, n, d, 0.5);
            }
            p
        })
        .collect();
    PolynomialMap::new(comps).expect("no constant terms")
}

/// A Keller map with a polynomial inverse known by construction.
#[derive(Debug, Clone)]
pub struct KellerSample {
    pub map: PolynomialMap,
    pub inverse: PolynomialMap,
}

/// Product of elementary shears with rational entries; determinant 1.
fn random_shear_product(rng: &mut impl Rng, n: usize) -> (Matrix, Matrix) {
    let mut a = Matrix::identity(n);
    for _ in 0..3 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(n);
        e.set(i, j, small_rational(rng));
        a = e.mul(&a);
    }
    let inv = a.inverse().expect("shears are invertible");
    (a, inv)
}

/// `xᵢ + hᵢ(x_{i+1}, …, xₙ)` and its inverse by back-substitution.
fn random_triangular(rng: &mut impl Rng, n: usize) -> (PolynomialMap, PolynomialMap) {
    let hs: Vec<Polynomial> = (0..n)
        .map(|i| {
            let later: Vec<usize> = (i + 1..n).collect();
            if later.is_empty() {
                return Polynomial::zero(n);
            }
            let k = later.len();
            let mut h = Polynomial::zero(k);
            for d in 2..=3 {
                h = &h + &random_homogeneous(rng, k, d, 0.5);
            }
            h.remap(n, &later)
        })
        .collect();
    let forward = PolynomialMap::new(
        (0..n).map(|i| &Polynomial::var(n, i) + &hs[i]).collect(),
    )
    .expect("no constant terms");
    // x_i = y_i - h_i(x_{i+1}, ..., x_n), solved from the last coordinate up
    let mut inv: Vec<Polynomial> = vec![Polynomial::zero(n); n];
    for i in (0..n).rev() {
        let partial = PolynomialMap::new(
            (0..n)
                .map(|k| if k > i { inv[k].clone() } else { Polynomial::var(n, k) })
                .collect(),
        )
        .expect("no constant terms");
        let h_of_x = PolynomialMap::new(
            (0..n).map(|k| if k == i { hs[i].clone() } else { Polynomial::zero(n) }).collect(),
        )
        .expect("no constant terms")
        .compose(&partial);
        inv[i] = &Polynomial::var(n, i) - &h_of_x.components()[i];
    }
    (forward, PolynomialMap::new(inv).expect("no constant terms"))
}

/// `L₂ ∘ T ∘ L₁` with shear products `Lₖ` and triangular `T`; Jacobian 1.
pub fn keller_sample(rng: &mut impl Rng, n: usize) -> KellerSample {
    let (l1, l1inv) = random_shear_product(rng, n);
    let (l2, l2inv) = random_shear_product(rng, n);
    let (t, tinv) = random_triangular(rng, n);
    let map = PolynomialMap::linear(&l2).compose(&t).compose(&PolynomialMap::linear(&l1));
    let inverse = PolynomialMap::linear(&l1inv)
        .compose(&tinv)
        .compose(&PolynomialMap::linear(&l2inv));
    KellerSample { map, inverse }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inversion::jacobian_det;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(1, 4).len(), 1);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
    }

    #[test]
    fn keller_samples_are_inverse_pairs() {
        let mut r = rng(7);
        for n in 1..=3 {
            let s = keller_sample(&mut r, n);
            let id = PolynomialMap::identity(n);
            assert_eq!(s.map.compose(&s.inverse), id);
            assert_eq!(s.inverse.compose(&s.map), id);
            assert_eq!(jacobian_det(&s.map).as_constant(), Some(int(1)));
        }
    }

    #[test]
    fn same_seed_same_family() {
        let a: Vec<Polynomial> = (0..5).map({
            let mut r = rng(3);
            move |_| random_potential(&mut r)
        }).collect();
        let b: Vec<Polynomial> = (0..5).map({
            let mut r = rng(3);
            move |_| random_potential(&mut r)
        }).collect();
        assert_eq!(a, b);
    }
}
