//! Rational functions in the indeterminate `qhat`: reduced ratios of
//! integer-coefficient polynomials, the symbolic backend of [`ExactScalar`].
//!
//! [`ExactScalar`]: super::ExactScalar

use super::zpoly::ZPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A reduced fraction num/den of integer polynomials, den != 0, den has
/// positive leading coefficient, gcd(num, den) = 1 up to integer content 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    pub num: ZPoly,
    pub den: ZPoly,
}

impl RatFun {
    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFun { num, den };
        r.reduce();
        r
    }

    pub fn zero() -> Self {
        RatFun {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFun {
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        RatFun::new(
            ZPoly::constant(r.numer().clone()),
            ZPoly::constant(r.denom().clone()),
        )
    }

    /// (-qhat)^e for any integer e, as a reduced fraction.
    pub fn neg_qhat_pow(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        if e >= 0 {
            RatFun::new(ZPoly::monomial(sign, e as usize), ZPoly::one())
        } else {
            RatFun::new(
                ZPoly::constant(sign),
                ZPoly::monomial(BigInt::one(), (-e) as usize),
            )
        }
    }

    /// qhat^e for any integer e.
    pub fn qhat_pow(e: i64) -> Self {
        if e >= 0 {
            RatFun::new(ZPoly::monomial(BigInt::one(), e as usize), ZPoly::one())
        } else {
            RatFun::new(
                ZPoly::one(),
                ZPoly::monomial(BigInt::one(), (-e) as usize),
            )
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = ZPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_zero() && g != ZPoly::one() {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        if self.den.leading().is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFun::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatFun::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFun::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Evaluate at a concrete rational value of qhat.
    pub fn eval(&self, q: &BigRational) -> BigRational {
        let d = self.den.eval_rational(q);
        assert!(!d.is_zero(), "pole of rational function at evaluation point");
        self.num.eval_rational(q) / d
    }
}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = |p: &ZPoly| -> String {
            if p.is_zero() {
                return "0".into();
            }
            let mut terms = Vec::new();
            for (i, c) in p.coeffs.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let t = match i {
                    0 => format!("{c}"),
                    1 if c.is_one() => "q^1".into(),
                    1 => format!("{c}*q^1"),
                    _ if c.is_one() => format!("q^{i}"),
                    _ => format!("{c}*q^{i}"),
                };
                terms.push(t);
            }
            terms.join(" + ").replace("+ -", "- ")
        };
        if self.den == ZPoly::one() {
            write!(f, "{}", side(&self.num))
        } else {
            write!(f, "({}) / ({})", side(&self.num), side(&self.den))
        }
    }
}
