use num_traits::Zero;

use super::Polynomial;
use crate::error::{Error, Result};

/// A polynomial body known exactly through `degree`; terms above it are
/// unknown and never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    body: Polynomial,
    degree: usize,
}

impl TruncatedSeries {
    pub fn new(body: Polynomial, degree: usize) -> Self {
        TruncatedSeries {
            body: body.truncated(degree),
            degree,
        }
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        TruncatedSeries::new(Polynomial::zero(dim), degree)
    }

    pub fn body(&self) -> &Polynomial {
        &self.body
    }

    pub fn into_body(self) -> Polynomial {
        self.body
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    /// Lowers the truncation degree. Raising it is not meaningful and panics.
    pub fn retruncate(&self, degree: usize) -> TruncatedSeries {
        assert!(degree <= self.degree, "cannot raise truncation degree");
        TruncatedSeries::new(self.body.clone(), degree)
    }
}

pub fn truncate(p: &Polynomial, degree: usize) -> TruncatedSeries {
    TruncatedSeries::new(p.clone(), degree)
}

/// Formal composition `f(args)` truncated at `degree`.
///
/// Every argument must have zero constant term and be known through at least
/// `degree`. Powers of the arguments are cached and every product is
/// truncated, so intermediates never exceed `degree`.
pub fn substitute(f: &Polynomial, args: &[TruncatedSeries], degree: usize) -> Result<TruncatedSeries> {
    if args.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: args.len(),
        });
    }
    let out_dim = match args.first() {
        Some(a) => a.dim(),
        None => {
            // f is a constant in zero variables
            let c = f.constant_term();
            return Ok(TruncatedSeries::new(Polynomial::constant(0, c), degree));
        }
    };
    for (index, a) in args.iter().enumerate() {
        if a.dim() != out_dim {
            return Err(Error::DimensionMismatch {
                expected: out_dim,
                found: a.dim(),
            });
        }
        if !a.body().constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm { index });
        }
        if a.degree() < degree {
            return Err(Error::InsufficientPrecision {
                index,
                have: a.degree(),
                want: degree,
            });
        }
    }

    // powers[i][k] = args[i]^k truncated at `degree`
    let mut powers: Vec<Vec<Polynomial>> = args
        .iter()
        .map(|a| vec![Polynomial::one(out_dim), a.body().truncated(degree)])
        .collect();

    let mut out = Polynomial::zero(out_dim);
    for (m, c) in f.terms() {
        // each argument has valuation >= 1
        if m.degree() > degree {
            break;
        }
        let mut term = Polynomial::constant(out_dim, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let e = e as usize;
            while powers[i].len() <= e {
                let next = powers[i]
                    .last()
                    .unwrap()
                    .mul_truncated(&powers[i][1], degree);
                powers[i].push(next);
            }
            term = term.mul_truncated(&powers[i][e], degree);
            if term.is_zero() {
                break;
            }
        }
        for (tm, tc) in term.terms() {
            out.add_term(tm.clone(), tc.clone());
        }
    }
    Ok(TruncatedSeries::new(out, degree))
}

/// `(x_1, ..., x_n)` as truncated series, the identity argument list.
pub fn identity_args(dim: usize, degree: usize) -> Vec<TruncatedSeries> {
    (0..dim)
        .map(|i| TruncatedSeries::new(Polynomial::var(dim, i), degree))
        .collect()
}
