//! Formal inversion of polynomial maps, directly by graded fixed point and
//! through the Legendre bridge `φ(v, x) = v·f(x)`, whose transform is
//! `φ̄(y, w) = w·f⁻¹(y)`.

use num_traits::Zero;

use crate::algebra::{substitute, Matrix, Monomial, PolyMatrix, Polynomial, TruncatedSeries};
use crate::error::{Error, Result};
use crate::legendre::{hessian_det, legendre_transform, HessianClass, Potential};

/// Square polynomial map `Kⁿ → Kⁿ` with `f(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    components: Vec<Polynomial>,
}

impl PolynomialMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for (index, c) in components.iter().enumerate() {
            if c.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.dim(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(Error::NonzeroMapConstant { index });
            }
        }
        Ok(PolynomialMap { components })
    }

    pub fn identity(n: usize) -> Self {
        PolynomialMap {
            components: (0..n).map(|i| Polynomial::var(n, i)).collect(),
        }
    }

    pub fn linear(a: &Matrix) -> Self {
        let n = a.dim();
        let x: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        PolynomialMap { components: a.apply(&x) }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn degree(&self) -> usize {
        self.components.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// Jacobian matrix at the origin.
    pub fn linear_part(&self) -> Matrix {
        self.jacobian_matrix().at_origin()
    }

    pub fn jacobian_matrix(&self) -> PolyMatrix {
        let n = self.dim();
        PolyMatrix::from_fn(n, n, |i, j| self.components[i].derivative(j))
    }

    /// Exact composition `self ∘ inner`.
    pub fn compose(&self, inner: &PolynomialMap) -> PolynomialMap {
        let bound = self.degree().max(1) * inner.degree().max(1);
        let args: Vec<TruncatedSeries> = inner
            .components
            .iter()
            .map(|p| TruncatedSeries::new(p.clone(), bound))
            .collect();
        PolynomialMap {
            components: self
                .components
                .iter()
                .map(|f| substitute(f, &args, bound).expect("maps fix the origin").into_body())
                .collect(),
        }
    }

    /// `self(args)` truncated at `degree`.
    pub fn apply_series(&self, args: &[TruncatedSeries], degree: usize) -> Result<Vec<TruncatedSeries>> {
        self.components.iter().map(|f| substitute(f, args, degree)).collect()
    }
}

pub fn jacobian_det(f: &PolynomialMap) -> Polynomial {
    f.jacobian_matrix().det()
}

/// Jacobian determinant is a nonzero constant.
pub fn is_keller_map(f: &PolynomialMap) -> bool {
    matches!(HessianClass::of_determinant(jacobian_det(f)), HessianClass::Constant(_))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InversionMethod {
    Direct,
    Legendre,
}

/// `g` with `f(g(y)) = y` through `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalInverse {
    pub components: Vec<TruncatedSeries>,
    pub degree: usize,
    pub method: InversionMethod,
}

impl FormalInverse {
    /// Same components and degree, whichever method produced them.
    pub fn agrees_with(&self, other: &FormalInverse) -> bool {
        self.degree == other.degree && self.components == other.components
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree == 0 {
        return Err(Error::InvalidDegree {
            degree,
            reason: "inversion needs degree at least 1",
        });
    }
    Ok(())
}

/// Graded fixed point `g ← J⁻¹·(y − (f − J·x)(g))` from `g = J⁻¹·y`.
pub fn invert_map_direct(f: &PolynomialMap, degree: usize) -> Result<FormalInverse> {
    check_degree(degree)?;
    let n = f.dim();
    let j = f.linear_part();
    let jinv = j.inverse()?;
    let nonlinear: Vec<Polynomial> = f
        .components
        .iter()
        .map(|p| p.filter(|m| m.degree() >= 2))
        .collect();
    let y: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let mut g = jinv.apply(&y);
    for _ in 1..degree {
        let args: Vec<TruncatedSeries> = g.iter().map(|p| TruncatedSeries::new(p.clone(), degree)).collect();
        let rhs = y
            .iter()
            .zip(&nonlinear)
            .map(|(yi, q)| Ok(yi - substitute(q, &args, degree)?.body()))
            .collect::<Result<Vec<_>>>()?;
        g = jinv.apply(&rhs);
    }
    Ok(FormalInverse {
        components: g.into_iter().map(|p| TruncatedSeries::new(p, degree)).collect(),
        degree,
        method: InversionMethod::Direct,
    })
}

/// `φ(v, x) = Σ vᵢ fᵢ(x)` in `2n` variables ordered `(v₁…vₙ, x₁…xₙ)`.
pub fn bridge_potential(f: &PolynomialMap) -> Polynomial {
    let n = f.dim();
    let shift: Vec<usize> = (n..2 * n).collect();
    let mut phi = Polynomial::zero(2 * n);
    for (i, fi) in f.components.iter().enumerate() {
        let vi = Polynomial::var(2 * n, i);
        phi = &phi + &(&vi * &fi.remap(2 * n, &shift));
    }
    phi
}

/// Inverse read off from the Legendre transform of the bridge potential.
///
/// The dual variables are ordered `(y₁…yₙ, w₁…wₙ)`: `y` is dual to `v` and
/// `w` to `x`. `φ̄` is computed through `degree + 1` and every term must be
/// linear in `w`; `f⁻¹ⱼ(y)` is the coefficient of `wⱼ`.
pub fn invert_map_legendre(f: &PolynomialMap, degree: usize) -> Result<FormalInverse> {
    check_degree(degree)?;
    let n = f.dim();
    let pot = Potential::new(bridge_potential(f))?;
    let phibar = legendre_transform(&pot, degree + 1)?;
    let mut comps = vec![Polynomial::zero(n); n];
    for (m, c) in phibar.body().terms() {
        let e = m.exponents();
        let w_degree: u32 = e[n..].iter().sum();
        if w_degree != 1 {
            return Err(Error::Inconsistent(format!(
                "bridge transform has a term of w-degree {w_degree}"
            )));
        }
        let j = (0..n).find(|&j| e[n + j] == 1).expect("w-degree is one");
        comps[j] = &comps[j] + &Polynomial::from_terms(n, [(Monomial::new(e[..n].to_vec()), c.clone())]);
    }
    Ok(FormalInverse {
        components: comps.into_iter().map(|p| TruncatedSeries::new(p, degree)).collect(),
        degree,
        method: InversionMethod::Legendre,
    })
}

/// Hessian of `v·f(x)`; equals `(−1)ⁿ·(det J_f)²` identically.
pub fn bridge_hessian(f: &PolynomialMap) -> Polynomial {
    hessian_det(&bridge_potential(f))
}

/// Classifies the bridge Hessian; a Keller map with Jacobian `c` gives the
/// constant `(−1)ⁿ·c²`.
pub fn bridge_hessian_check(f: &PolynomialMap) -> HessianClass {
    HessianClass::of_determinant(bridge_hessian(f))
}

/// `f(g(y)) = y` and `g(f(x)) = x` through `g.degree`.
pub fn is_two_sided_inverse(f: &PolynomialMap, g: &FormalInverse) -> Result<bool> {
    let n = f.dim();
    let d = g.degree;
    let fg = f.apply_series(&g.components, d)?;
    let left = fg.iter().enumerate().all(|(i, s)| *s.body() == Polynomial::var(n, i).truncated(d));
    let fx: Vec<TruncatedSeries> = f
        .components
        .iter()
        .map(|p| TruncatedSeries::new(p.clone(), d))
        .collect();
    let right = g
        .components
        .iter()
        .enumerate()
        .map(|(i, gi)| Ok(*substitute(gi.body(), &fx, d)?.body() == Polynomial::var(n, i).truncated(d)))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(left && right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn keller() -> PolynomialMap {
        // (x1 + x2^2, x2)
        PolynomialMap::new(vec![
            &Polynomial::var(2, 0) + &Polynomial::monomial(2, vec![0, 2], int(1)),
            Polynomial::var(2, 1),
        ])
        .unwrap()
    }

    fn keller_inverse() -> Vec<Polynomial> {
        vec![
            &Polynomial::var(2, 0) - &Polynomial::monomial(2, vec![0, 2], int(1)),
            Polynomial::var(2, 1),
        ]
    }

    fn catalan_map() -> PolynomialMap {
        PolynomialMap::new(vec![&Polynomial::var(1, 0) - &Polynomial::monomial(1, vec![2], int(1))]).unwrap()
    }

    fn catalan(d: u32) -> Polynomial {
        let c = [1, 1, 2, 5, 14, 42];
        Polynomial::from_terms(1, (1..=d).map(|k| (Monomial::new(vec![k]), int(c[k as usize - 1]))))
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_det(&keller()).as_constant(), Some(int(1)));
        assert!(is_keller_map(&keller()));
        assert!(is_keller_map(&PolynomialMap::identity(3)));
        let sq = PolynomialMap::new(vec![Polynomial::monomial(2, vec![2, 0], int(1)), Polynomial::var(2, 1)]).unwrap();
        assert_eq!(jacobian_det(&sq), Polynomial::monomial(2, vec![1, 0], int(2)));
        assert!(!is_keller_map(&sq));
    }

    #[test]
    fn direct_catalan() {
        let g = invert_map_direct(&catalan_map(), 5).unwrap();
        assert_eq!(g.components[0].body(), &catalan(5));
        assert!(is_two_sided_inverse(&catalan_map(), &g).unwrap());
    }

    #[test]
    fn legendre_catalan() {
        let g = invert_map_legendre(&catalan_map(), 4).unwrap();
        assert_eq!(g.components[0].body(), &catalan(4));
        assert!(g.agrees_with(&invert_map_direct(&catalan_map(), 4).unwrap()));
    }

    #[test]
    fn keller_map_both_paths() {
        for inv in [invert_map_direct(&keller(), 3).unwrap(), invert_map_legendre(&keller(), 3).unwrap()] {
            let bodies: Vec<Polynomial> = inv.components.iter().map(|s| s.body().clone()).collect();
            assert_eq!(bodies, keller_inverse());
        }
    }

    #[test]
    fn linear_and_identity() {
        let a = Matrix::from_rows(vec![vec![int(2), int(1)], vec![int(1), int(1)]]);
        let f = PolynomialMap::linear(&a);
        let g = invert_map_direct(&f, 3).unwrap();
        let y: Vec<Polynomial> = (0..2).map(|i| Polynomial::var(2, i)).collect();
        let want = a.inverse().unwrap().apply(&y);
        assert_eq!(g.components.iter().map(|s| s.body().clone()).collect::<Vec<_>>(), want);
        let id = invert_map_legendre(&PolynomialMap::identity(2), 4).unwrap();
        assert_eq!(id.components.iter().map(|s| s.body().clone()).collect::<Vec<_>>(), y);
    }

    #[test]
    fn bridge_hessians() {
        assert_eq!(bridge_hessian_check(&keller()), HessianClass::Constant(int(1)));
        assert_eq!(bridge_hessian_check(&PolynomialMap::identity(1)), HessianClass::Constant(int(-1)));
        let two_x = PolynomialMap::new(vec![Polynomial::monomial(1, vec![1], int(2))]).unwrap();
        assert_eq!(bridge_hessian_check(&two_x), HessianClass::Constant(int(-4)));
    }

    #[test]
    fn bridge_legendre_transform_is_w_dot_inverse() {
        let pot = Potential::new(bridge_potential(&keller())).unwrap();
        let phibar = legendre_transform(&pot, 3).unwrap();
        // w1 (y1 - y2^2) + w2 y2 with variables (y1, y2, w1, w2)
        let want = Polynomial::from_terms(
            4,
            [
                (Monomial::new(vec![1, 0, 1, 0]), int(1)),
                (Monomial::new(vec![0, 2, 1, 0]), int(-1)),
                (Monomial::new(vec![0, 1, 0, 1]), int(1)),
            ],
        );
        assert_eq!(phibar.body(), &want);
    }

    #[test]
    fn singular_linear_part() {
        let f = PolynomialMap::new(vec![Polynomial::monomial(1, vec![2], rat(1, 2))]).unwrap();
        assert_eq!(invert_map_direct(&f, 3).unwrap_err(), Error::SingularMatrix);
        assert_eq!(invert_map_legendre(&f, 3).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn map_validation() {
        assert_eq!(
            PolynomialMap::new(vec![&Polynomial::var(1, 0) + &Polynomial::one(1)]).unwrap_err(),
            Error::NonzeroMapConstant { index: 0 }
        );
        assert!(PolynomialMap::new(vec![Polynomial::var(2, 0)]).is_err());
    }
}
