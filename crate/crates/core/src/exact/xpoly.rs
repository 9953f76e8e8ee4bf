//! Polynomials in the variable X = (-q)^(-2r) with [`ExactScalar`]
//! coefficients. Density series and their derivative at X = 1 live here.

use super::ExactScalar;

/// Coefficient list in ascending powers of X, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct XPolynomial {
    coeffs: Vec<ExactScalar>,
}

impl XPolynomial {
    pub fn zero() -> Self {
        XPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPolynomial {
            coeffs: vec![ExactScalar::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        XPolynomial { coeffs }
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the trimmed polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Self::from_coeffs(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_at_one(&self) -> ExactScalar {
        self.eval(&ExactScalar::one())
    }

    /// -p'(1): derivatives in X carry a global negation here.
    pub fn derivative_at_one(&self) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            acc = acc.add(&c.mul(&ExactScalar::from_int(i as i64)));
        }
        acc.neg()
    }

    /// Coefficient reversal X^deg * p(1/X); helper for functional equations.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::from_coeffs(c)
    }
}
