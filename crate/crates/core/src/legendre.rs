//! Gradient and Hessian machinery and the formal Legendre transform
//! `φ̄(y) = [x·y − φ(x)]` at `x = g(y)`, where `g` inverts `y = ∇φ(x)`.

use num_traits::Zero;

use crate::algebra::{substitute, Matrix, PolyMatrix, Polynomial, Rational, TruncatedSeries};
use crate::error::{Error, Result};

/// A validated potential: zero linear part and nonsingular quadratic part.
///
/// A constant term is accepted and discarded. When built from a truncated
/// series, transforms are only available up to its truncation degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    phi: Polynomial,
    known_degree: Option<usize>,
    quadratic: Matrix,
    propagator: Matrix,
}

impl Potential {
    pub fn new(phi: Polynomial) -> Result<Self> {
        Self::build(phi, None)
    }

    pub fn from_series(s: &TruncatedSeries) -> Result<Self> {
        Self::build(s.body().clone(), Some(s.degree()))
    }

    fn build(phi: Polynomial, known_degree: Option<usize>) -> Result<Self> {
        if phi.dim() == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let phi = phi.filter(|m| !m.is_one());
        if !phi.homogeneous_component(1).is_zero() {
            return Err(Error::NonzeroLinearTerm);
        }
        let quadratic = hessian_matrix(&phi.homogeneous_component(2)).at_origin();
        let propagator = quadratic.inverse()?;
        Ok(Potential {
            phi,
            known_degree,
            quadratic,
            propagator,
        })
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.phi
    }

    /// The matrix `T₂` of the quadratic part.
    pub fn quadratic(&self) -> &Matrix {
        &self.quadratic
    }

    /// `T₂⁻¹`.
    pub fn propagator(&self) -> &Matrix {
        &self.propagator
    }

    pub fn known_degree(&self) -> Option<usize> {
        self.known_degree
    }

    /// Highest degree present, at least 2.
    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap_or(2).max(2)
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        gradient(&self.phi)
    }

    fn check_degree(&self, degree: usize, min: usize) -> Result<()> {
        if degree < min {
            return Err(Error::InvalidDegree {
                degree,
                reason: "below the minimum working degree",
            });
        }
        if let Some(k) = self.known_degree {
            if degree > k {
                return Err(Error::InvalidDegree {
                    degree,
                    reason: "above the truncation degree of the input series",
                });
            }
        }
        Ok(())
    }
}

pub fn gradient(phi: &Polynomial) -> Vec<Polynomial> {
    (0..phi.dim()).map(|i| phi.derivative(i)).collect()
}

pub fn hessian_matrix(phi: &Polynomial) -> PolyMatrix {
    let grad = gradient(phi);
    PolyMatrix::from_fn(phi.dim(), phi.dim(), |i, j| grad[i].derivative(j))
}

pub fn hessian_det(phi: &Polynomial) -> Polynomial {
    hessian_matrix(phi).det()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HessianClass {
    /// Nonzero constant determinant.
    Constant(Rational),
    /// Identically zero.
    Zero,
    NonConstant(Polynomial),
}

impl HessianClass {
    pub fn of_determinant(h: Polynomial) -> Self {
        match h.as_constant() {
            Some(c) if c.is_zero() => HessianClass::Zero,
            Some(c) => HessianClass::Constant(c),
            None => HessianClass::NonConstant(h),
        }
    }
}

pub fn is_constant_hessian(phi: &Polynomial) -> HessianClass {
    HessianClass::of_determinant(hessian_det(phi))
}

/// The formal inverse `x = g(y)` of `y = ∇φ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientInverse {
    pub components: Vec<TruncatedSeries>,
    pub degree: usize,
}

/// Graded fixed point `x ← T₂⁻¹·(y − ∇ψ(x))` from `x = T₂⁻¹·y`, where `ψ` is
/// the part of `φ` of degree ≥ 3. Each of the `degree − 1` steps fixes at
/// least one more degree.
pub fn invert_gradient(pot: &Potential, degree: usize) -> Result<GradientInverse> {
    pot.check_degree(degree, 1)?;
    let n = pot.dim();
    let grad_rest: Vec<Polynomial> = pot
        .gradient()
        .iter()
        .map(|p| p.filter(|m| m.degree() >= 2))
        .collect();
    let y: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let ainv = pot.propagator();

    let mut x = ainv.apply(&y);
    for _ in 1..degree {
        let args: Vec<TruncatedSeries> = x.iter().map(|p| TruncatedSeries::new(p.clone(), degree)).collect();
        let mut rhs = Vec::with_capacity(n);
        for (yi, gi) in y.iter().zip(&grad_rest) {
            let v = substitute(gi, &args, degree)?;
            rhs.push(yi - v.body());
        }
        x = ainv.apply(&rhs);
    }
    Ok(GradientInverse {
        components: x.into_iter().map(|p| TruncatedSeries::new(p, degree)).collect(),
        degree,
    })
}

/// `φ̄ = Σ gᵢ(y)·yᵢ − φ(g(y))`, truncated at `degree`.
pub fn legendre_transform(pot: &Potential, degree: usize) -> Result<TruncatedSeries> {
    pot.check_degree(degree, 2)?;
    let g = invert_gradient(pot, degree)?;
    Ok(legendre_from_inverse(pot, &g))
}

pub(crate) fn legendre_from_inverse(pot: &Potential, g: &GradientInverse) -> TruncatedSeries {
    let n = pot.dim();
    let degree = g.degree;
    let mut pairing = Polynomial::zero(n);
    for (i, gi) in g.components.iter().enumerate() {
        pairing = &pairing + &gi.body().mul_truncated(&Polynomial::var(n, i), degree);
    }
    let phi_at_g = substitute(pot.polynomial(), &g.components, degree)
        .expect("components of g have zero constant term and full precision");
    TruncatedSeries::new(&pairing - phi_at_g.body(), degree)
}

/// Checks `∇φ̄ = g` through degree `degree − 1`, with `φ̄` and `g` computed
/// independently.
pub fn verify_potential(pot: &Potential, degree: usize) -> Result<bool> {
    let phibar = legendre_transform(pot, degree)?;
    let g = invert_gradient(pot, degree - 1)?;
    Ok(gradient(phibar.body())
        .iter()
        .zip(&g.components)
        .all(|(lhs, rhs)| lhs.truncated(degree - 1) == *rhs.body()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, truncate};

    fn poly1(coeffs: &[(u32, Rational)]) -> Polynomial {
        Polynomial::from_terms(
            1,
            coeffs
                .iter()
                .map(|(e, c)| (crate::algebra::Monomial::new(vec![*e]), c.clone())),
        )
    }

    fn cubic() -> Polynomial {
        poly1(&[(2, rat(1, 2)), (3, rat(1, 6))])
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(gradient(&cubic()), vec![poly1(&[(1, int(1)), (2, rat(1, 2))])]);
        let x1x2 = Polynomial::monomial(2, vec![1, 1], int(1));
        assert_eq!(gradient(&x1x2), vec![Polynomial::var(2, 1), Polynomial::var(2, 0)]);
    }

    #[test]
    fn hessian_of_cubic() {
        let h = hessian_matrix(&cubic());
        assert_eq!(h.get(0, 0), &poly1(&[(0, int(1)), (1, int(1))]));
        assert_eq!(
            is_constant_hessian(&cubic()),
            HessianClass::NonConstant(poly1(&[(0, int(1)), (1, int(1))]))
        );
        assert_eq!(
            is_constant_hessian(&poly1(&[(2, rat(1, 2))])),
            HessianClass::Constant(int(1))
        );
        assert_eq!(is_constant_hessian(&poly1(&[(3, int(1))])), HessianClass::NonConstant(poly1(&[(1, int(6))])));
        assert_eq!(is_constant_hessian(&poly1(&[(1, int(1))])), HessianClass::Zero);
    }

    #[test]
    fn cubic_gradient_inverse() {
        // g = -1 + sqrt(1 + 2y)
        let pot = Potential::new(cubic()).unwrap();
        let g = invert_gradient(&pot, 4).unwrap();
        let want = poly1(&[(1, int(1)), (2, rat(-1, 2)), (3, rat(1, 2)), (4, rat(-5, 8))]);
        assert_eq!(g.components[0].body(), &want);
    }

    #[test]
    fn quartic_gradient_inverse_has_only_odd_terms() {
        let pot = Potential::new(poly1(&[(2, rat(1, 2)), (4, rat(1, 24))])).unwrap();
        let g = invert_gradient(&pot, 4).unwrap();
        assert_eq!(g.components[0].body(), &poly1(&[(1, int(1)), (3, rat(-1, 6))]));
    }

    #[test]
    fn cubic_legendre_transform() {
        let pot = Potential::new(cubic()).unwrap();
        let phibar = legendre_transform(&pot, 5).unwrap();
        let want = poly1(&[(2, rat(1, 2)), (3, rat(-1, 6)), (4, rat(1, 8)), (5, rat(-1, 8))]);
        assert_eq!(phibar.body(), &want);
        assert!(verify_potential(&pot, 6).unwrap());
    }

    #[test]
    fn quadratic_is_self_dual() {
        // φ = (1/2) xᵀ A x with A = [[2, 1], [1, 3]]
        let phi = Polynomial::from_terms(
            2,
            [
                (crate::algebra::Monomial::new(vec![2, 0]), int(1)),
                (crate::algebra::Monomial::new(vec![1, 1]), int(1)),
                (crate::algebra::Monomial::new(vec![0, 2]), rat(3, 2)),
            ],
        );
        let pot = Potential::new(phi.clone()).unwrap();
        assert_eq!(hessian_det(&phi).as_constant(), Some(int(5)));
        let ainv = pot.propagator().clone();
        let g = invert_gradient(&pot, 5).unwrap();
        let y = vec![Polynomial::var(2, 0), Polynomial::var(2, 1)];
        let lin = ainv.apply(&y);
        for (gi, li) in g.components.iter().zip(&lin) {
            assert_eq!(gi.body(), li);
        }
        // (1/2) yᵀ A⁻¹ y; A⁻¹ = [[3/5, -1/5], [-1/5, 2/5]]
        let phibar = legendre_transform(&pot, 4).unwrap();
        let want = Polynomial::from_terms(
            2,
            [
                (crate::algebra::Monomial::new(vec![2, 0]), rat(3, 10)),
                (crate::algebra::Monomial::new(vec![1, 1]), rat(-1, 5)),
                (crate::algebra::Monomial::new(vec![0, 2]), rat(1, 5)),
            ],
        );
        assert_eq!(phibar.body(), &want);
        assert!(verify_potential(&pot, 5).unwrap());
    }

    #[test]
    fn validation() {
        let lin = &cubic() + &Polynomial::var(1, 0);
        assert_eq!(Potential::new(lin).unwrap_err(), Error::NonzeroLinearTerm);
        let degenerate = poly1(&[(3, int(1))]);
        assert_eq!(Potential::new(degenerate).unwrap_err(), Error::SingularMatrix);
        let shifted = &cubic() + &Polynomial::constant(1, int(9));
        assert_eq!(Potential::new(shifted).unwrap().polynomial(), &cubic());
        let pot = Potential::new(cubic()).unwrap();
        assert!(matches!(legendre_transform(&pot, 1), Err(Error::InvalidDegree { .. })));
        let series = Potential::from_series(&truncate(&cubic(), 3)).unwrap();
        assert!(matches!(legendre_transform(&series, 4), Err(Error::InvalidDegree { .. })));
    }

    #[test]
    fn involution_on_cubic() {
        let pot = Potential::new(cubic()).unwrap();
        let phibar = legendre_transform(&pot, 6).unwrap();
        let back = legendre_transform(&Potential::from_series(&phibar).unwrap(), 6).unwrap();
        assert_eq!(back, truncate(&cubic(), 6));
    }
}
