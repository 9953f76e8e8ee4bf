//! Dense univariate polynomials with integer coefficients, used as the
//! numerator/denominator of symbolic rational functions in the indeterminate
//! `qhat`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer-coefficient polynomial, ascending degree order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly {
    pub coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial c * qhat^k.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact division; panics if not divisible (internal use after gcd).
    pub fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let mut rem = self.coeffs.clone();
        let dlen = other.coeffs.len();
        let lead = other.leading();
        assert!(rem.len() >= dlen);
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dlen - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            assert!(r.is_zero(), "non-exact polynomial division");
            for (i, c) in other.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
        Self::from_coeffs(quot)
    }

    /// GCD of all coefficients, nonnegative; zero polynomial has content 0.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    /// Content-and-primitive-part gcd via primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().mul_scalar(&cont).normalize_sign()
    }

    fn normalize_sign(&self) -> Self {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Pseudo-remainder of self by other (lead(other)^k * self mod other).
    fn pseudo_rem(&self, other: &Self) -> Self {
        let d = other.coeffs.len();
        let lead = other.leading();
        let mut rem = self.clone();
        while !rem.is_zero() && rem.coeffs.len() >= d {
            let k = rem.coeffs.len() - d;
            let top = rem.leading();
            rem = rem.mul_scalar(&lead);
            let mut sub = vec![BigInt::zero(); k + d];
            for (i, c) in other.coeffs.iter().enumerate() {
                sub[k + i] = &top * c;
            }
            rem = rem.sub(&Self::from_coeffs(sub));
        }
        rem
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_common_factor() {
        // (x+1)(x-2) and (x+1)(x+3) have gcd x+1
        let a = zp(&[1, 1]).mul(&zp(&[-2, 1]));
        let b = zp(&[1, 1]).mul(&zp(&[3, 1]));
        assert_eq!(a.gcd(&b), zp(&[1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = zp(&[2, 2]); // 2(x+1)
        let b = zp(&[4, 4, 0]).add(&zp(&[0])); // 4(x+1) after trim -> [4,4]
        assert_eq!(a.gcd(&b), zp(&[2, 2]));
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = zp(&[3, 1]);
        let b = zp(&[-1, 0, 2]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), b);
        assert_eq!(prod.div_exact(&b), a);
    }
}
