//! Exact scalar arithmetic: arbitrary-precision rationals for concrete-q work
//! and reduced rational functions in an indeterminate `qhat` for symbolic
//! identity checking. No rounding anywhere.

pub mod linalg;
pub mod ratfun;
pub mod xpoly;
pub mod zpoly;

pub use linalg::{interpolate, solve_linear};
pub use xpoly::XPolynomial;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use ratfun::RatFun;

/// Chooses the scalar backend: a fixed prime power q, or the indeterminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QMode {
    Concrete(u64),
    Symbolic,
}

impl QMode {
    /// (-q)^e in this mode, for any integer exponent e.
    pub fn neg_q_pow(&self, e: i64) -> ExactScalar {
        match self {
            QMode::Concrete(q) => ExactScalar::from_rational(rat_pow(
                &BigRational::from(BigInt::from(-(*q as i64))),
                e,
            )),
            QMode::Symbolic => ExactScalar::Sym(RatFun::neg_qhat_pow(e)),
        }
    }

    /// q^e in this mode, for any integer exponent e.
    pub fn q_pow(&self, e: i64) -> ExactScalar {
        match self {
            QMode::Concrete(q) => {
                ExactScalar::from_rational(rat_pow(&BigRational::from(BigInt::from(*q as i64)), e))
            }
            QMode::Symbolic => ExactScalar::Sym(RatFun::qhat_pow(e)),
        }
    }

    pub fn q(&self) -> ExactScalar {
        self.q_pow(1)
    }
}

fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::one();
    let b = if e > 0 { base.clone() } else { base.recip() };
    for _ in 0..e.unsigned_abs() {
        acc *= &b;
    }
    acc
}

/// An exact number: a rational, or a rational function in `qhat`.
#[derive(Clone, Debug)]
pub enum ExactScalar {
    Rat(BigRational),
    Sym(RatFun),
}

/// Equality compares values: a constant rational function equals the same
/// rational. Reduced fractions are canonical, so promotion plus structural
/// comparison is exact.
impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => a == b,
            _ => self.promote() == other.promote(),
        }
    }
}

impl Eq for ExactScalar {}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::Rat(BigRational::from(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactScalar::Rat(BigRational::from(n))
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        ExactScalar::Rat(BigRational::from(BigInt::from(n.clone())))
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar::Rat(r)
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ExactScalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rat(r) => r.is_zero(),
            ExactScalar::Sym(s) => s.is_zero(),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, ExactScalar::Sym(_))
    }

    fn promote(&self) -> RatFun {
        match self {
            ExactScalar::Rat(r) => RatFun::from_rational(r),
            ExactScalar::Sym(s) => s.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => ExactScalar::Rat(a + b),
            _ => ExactScalar::Sym(self.promote().add(&other.promote())),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => ExactScalar::Rat(a - b),
            _ => ExactScalar::Sym(self.promote().sub(&other.promote())),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => ExactScalar::Rat(a * b),
            _ => ExactScalar::Sym(self.promote().mul(&other.promote())),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        match (self, other) {
            (ExactScalar::Rat(a), ExactScalar::Rat(b)) => {
                assert!(!b.is_zero(), "division by zero");
                ExactScalar::Rat(a / b)
            }
            _ => ExactScalar::Sym(self.promote().div(&other.promote())),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactScalar::Rat(r) => ExactScalar::Rat(-r),
            ExactScalar::Sym(s) => ExactScalar::Sym(s.neg()),
        }
    }

    /// Evaluate a symbolic scalar at qhat = q; identity on concrete scalars.
    pub fn eval_at_q(&self, q: u64) -> BigRational {
        match self {
            ExactScalar::Rat(r) => r.clone(),
            ExactScalar::Sym(s) => s.eval(&BigRational::from(BigInt::from(q))),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rat(r) => Some(r),
            ExactScalar::Sym(_) => None,
        }
    }
}

/// Serialization used by the CLI: "num/den" in lowest terms, "n" when den = 1.
impl std::fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactScalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.denom().is_negative() {
                    // BigRational keeps denom positive, but stay defensive-free:
                    write!(f, "{}/{}", -r.numer(), -r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            ExactScalar::Sym(s) => write!(f, "{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_num_den_convention() {
        assert_eq!(ExactScalar::ratio(4, 3).to_string(), "4/3");
        assert_eq!(ExactScalar::ratio(-1, 8).to_string(), "-1/8");
        assert_eq!(ExactScalar::from_int(0).to_string(), "0");
        assert_eq!(ExactScalar::ratio(6, 3).to_string(), "2");
    }

    #[test]
    fn symbolic_matches_concrete_at_q() {
        let m = QMode::Symbolic;
        // (-q)^3 / (1 - (-q)^2) evaluated at q = 3 equals -27 / -8 = 27/8
        let e = m.neg_q_pow(3).div(
            &ExactScalar::one().sub(&m.neg_q_pow(2)),
        );
        assert_eq!(e.eval_at_q(3), BigRational::new(BigInt::from(27), BigInt::from(8)));
        let c = QMode::Concrete(3);
        let e2 = c.neg_q_pow(3).div(&ExactScalar::one().sub(&c.neg_q_pow(2)));
        assert_eq!(e2.eval_at_q(3), e.eval_at_q(3));
    }

    #[test]
    fn mixed_mode_promotes() {
        let s = QMode::Symbolic.q_pow(2).add(&ExactScalar::from_int(1));
        assert_eq!(s.eval_at_q(5), BigRational::from(BigInt::from(26)));
    }
}
