//! Arithmetic in R_d = O_E / pi^d for an unramified quadratic extension E/F
//! with residue field of size q = p^f. R_d is the Galois ring
//! Z/p^d [x] / (g) for a monic degree-2f polynomial g that is irreducible
//! mod p, carrying the order-2 automorphism sigma lifting x -> x^q.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Context for one choice of (p, f, d).
#[derive(Clone, Debug)]
pub struct RingCtx {
    pub p: u64,
    pub f: u32,
    pub d: u32,
    /// p^d
    pub modulus: u64,
    /// q = p^f
    pub q: u64,
    /// Monic defining polynomial of degree 2f: coefficients of x^0..x^(2f-1);
    /// the leading coefficient 1 is implicit.
    pub def_poly: Vec<u64>,
    /// sigma on the polynomial basis: column j holds the coefficients of
    /// sigma(x^j).
    sigma: Vec<Vec<u64>>,
}

/// Element of R_d in the polynomial basis, coefficients reduced mod p^d.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub coeffs: Vec<u64>,
}

/// Either a finite valuation k < d, or "every digit vanishes" (>= d).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(u32),
    AtLeastD,
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).expect("modulus overflow");
    }
    acc
}

// ---- polynomial helpers over Z/m (m = p^d or p) ----

fn poly_mul_mod(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ((x as u128 * y as u128) % m as u128) as u64) % m;
        }
    }
    out
}

/// Reduce by the monic polynomial (def coefficients low..high, leading 1 implicit).
fn poly_reduce_mod(mut a: Vec<u64>, def: &[u64], m: u64) -> Vec<u64> {
    let n = def.len();
    while a.len() > n {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let k = a.len() - n;
        for (i, &c) in def.iter().enumerate() {
            let sub = (top as u128 * c as u128) % m as u128;
            let idx = k + i;
            a[idx] = ((a[idx] as u128 + m as u128 - sub) % m as u128) as u64;
        }
    }
    a.resize(n, 0);
    a
}

fn fp_poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b over F_p
        let inv_lead = mod_inverse_prime(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let factor = (*a.last().unwrap() as u128 * inv_lead as u128 % p as u128) as u64;
            for (i, &c) in b.iter().enumerate() {
                let sub = factor as u128 * c as u128 % p as u128;
                a[shift + i] = ((a[shift + i] as u128 + p as u128 - sub) % p as u128) as u64;
            }
            trim(&mut a);
            if a.len() < b.len() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    a
}

fn mod_inverse_prime(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc: u64 = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// x^(p^i) mod (g, p) by repeated squaring on polynomials.
fn frobenius_power(def: &[u64], p: u64, i: u32) -> Vec<u64> {
    let mut acc = vec![0u64, 1]; // x
    acc.resize(def.len(), 0);
    let mut e = BigUint::from(p).pow(i);
    let mut base = acc.clone();
    acc = vec![0u64; def.len()];
    acc[0] = 1;
    while !e.is_zero() {
        if (&e % 2u32) == BigUint::one() {
            acc = poly_reduce_mod(poly_mul_mod(&acc, &base, p), def, p);
        }
        base = poly_reduce_mod(poly_mul_mod(&base, &base, p), def, p);
        e >>= 1;
    }
    acc
}

fn is_irreducible_fp(def: &[u64], p: u64) -> bool {
    let n = def.len() as u32;
    // x^(p^n) = x and gcd(x^(p^(n/k)) - x, g) trivial for prime divisors k of n
    let xpn = frobenius_power(def, p, n);
    let mut x = vec![0u64, 1];
    x.resize(def.len(), 0);
    if xpn != x {
        return false;
    }
    let mut k = 2;
    let mut m = n;
    let mut prime_divs = Vec::new();
    while k * k <= m {
        if m % k == 0 {
            prime_divs.push(k);
            while m % k == 0 {
                m /= k;
            }
        }
        k += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for pd in prime_divs {
        let mut h = frobenius_power(def, p, n / pd);
        // h - x
        h[1] = (h[1] + p - 1) % p;
        let g = fp_poly_gcd(h, def.iter().copied().chain([1]).collect(), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl RingCtx {
    pub fn new(p: u64, f: u32, d: u32) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::InvalidArgument("p must be an odd prime".into()));
        }
        if f == 0 || d == 0 {
            return Err(Error::InvalidArgument("f and d must be >= 1".into()));
        }
        let bits = (p as f64).log2() * d as f64;
        if bits > 62.0 {
            return Err(Error::ExceedsDeskScale(format!("p^d too large: p={p} d={d}")));
        }
        let modulus = pow_u64(p, d);
        let q = pow_u64(p, f);
        let def_poly = Self::find_def_poly(p, f)?;
        let mut ctx = RingCtx {
            p,
            f,
            d,
            modulus,
            q,
            def_poly,
            sigma: Vec::new(),
        };
        ctx.sigma = ctx.build_sigma()?;
        Ok(ctx)
    }

    /// Lexicographically smallest monic degree-2f lift of an irreducible
    /// polynomial over F_p, ordered by the coefficient tuple
    /// (c_{2f-1}, ..., c_1, c_0).
    fn find_def_poly(p: u64, f: u32) -> Result<Vec<u64>> {
        let deg = (2 * f) as usize;
        let mut coeffs = vec![0u64; deg];
        loop {
            if is_irreducible_fp(&coeffs, p) {
                return Ok(coeffs);
            }
            // increment the tuple (c_{deg-1},...,c_0) lexicographically:
            // c_0 is the fastest-moving digit.
            let mut i = 0;
            loop {
                if i == deg {
                    return Err(Error::InvalidArgument(
                        "no irreducible polynomial found".into(),
                    ));
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    /// sigma = the unique ring automorphism reducing to the q-power Frobenius,
    /// computed by Newton-lifting the root of g near x^q and stored as a
    /// coefficient matrix on the polynomial basis.
    fn build_sigma(&self) -> Result<Vec<Vec<u64>>> {
        let deg = self.def_poly.len();
        // starting approximation: x^q reduced mod (g, p^d); correct mod p
        let mut r = {
            let mut acc = vec![0u64; deg];
            acc[0] = 1;
            let mut base = vec![0u64, 1];
            base.resize(deg, 0);
            let mut e = self.q;
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_reduce_mod(poly_mul_mod(&acc, &base, self.modulus), &self.def_poly, self.modulus);
                }
                base = poly_reduce_mod(
                    poly_mul_mod(&base, &base, self.modulus),
                    &self.def_poly,
                    self.modulus,
                );
                e >>= 1;
            }
            RingElem { coeffs: acc }
        };
        // Newton: r <- r - g(r)/g'(r)
        for _ in 0..(64 - self.d.leading_zeros() + 2) {
            let gr = self.eval_def_poly(&r);
            if gr.coeffs.iter().all(|&c| c == 0) {
                break;
            }
            let gpr = self.eval_def_poly_derivative(&r);
            let inv = self.inverse(&gpr)?;
            let delta = self.mul(&gr, &inv);
            r = self.sub(&r, &delta);
        }
        let gr = self.eval_def_poly(&r);
        if !gr.coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument("sigma root lift failed".into()));
        }
        // columns: sigma(x^j) = r^j
        let mut cols = Vec::with_capacity(deg);
        let mut acc = self.one();
        for _ in 0..deg {
            cols.push(acc.coeffs.clone());
            acc = self.mul(&acc, &r);
        }
        Ok(cols)
    }

    fn eval_def_poly(&self, x: &RingElem) -> RingElem {
        // g(x) = x^deg + sum c_i x^i
        let deg = self.def_poly.len();
        let mut acc = self.one();
        let mut powers = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            powers.push(acc.clone());
            acc = self.mul(&acc, x);
        }
        let mut out = powers[deg].clone();
        for (i, &c) in self.def_poly.iter().enumerate() {
            out = self.add(&out, &self.scale(&powers[i], c));
        }
        out
    }

    fn eval_def_poly_derivative(&self, x: &RingElem) -> RingElem {
        let deg = self.def_poly.len();
        let mut acc = self.one();
        let mut powers = Vec::with_capacity(deg);
        for _ in 0..deg {
            powers.push(acc.clone());
            acc = self.mul(&acc, x);
        }
        let mut out = self.scale(&powers[deg - 1], deg as u64 % self.modulus);
        for (i, &c) in self.def_poly.iter().enumerate().skip(1) {
            let coef = (c as u128 * i as u128 % self.modulus as u128) as u64;
            out = self.add(&out, &self.scale(&powers[i - 1], coef));
        }
        out
    }

    // ---- element constructors ----

    pub fn zero(&self) -> RingElem {
        RingElem {
            coeffs: vec![0; self.def_poly.len()],
        }
    }

    pub fn one(&self) -> RingElem {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> RingElem {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % self.modulus).collect();
        c.resize(self.def_poly.len(), 0);
        RingElem { coeffs: c }
    }

    pub fn from_u64(&self, n: u64) -> RingElem {
        let mut e = self.zero();
        e.coeffs[0] = n % self.modulus;
        e
    }

    pub fn from_i64(&self, n: i64) -> RingElem {
        let m = self.modulus as i128;
        self.from_u64(((n as i128).rem_euclid(m)) as u64)
    }

    /// Generator of the polynomial basis (the class of x).
    pub fn generator(&self) -> RingElem {
        let mut e = self.zero();
        if e.coeffs.len() > 1 {
            e.coeffs[1] = 1;
        }
        e
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| {
                    let s = x as u128 + y as u128;
                    (s % self.modulus as u128) as u64
                })
                .collect(),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| {
                    ((x as u128 + self.modulus as u128 - y as u128) % self.modulus as u128) as u64
                })
                .collect(),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        self.sub(&self.zero(), a)
    }

    pub fn scale(&self, a: &RingElem, s: u64) -> RingElem {
        RingElem {
            coeffs: a
                .coeffs
                .iter()
                .map(|&x| (x as u128 * s as u128 % self.modulus as u128) as u64)
                .collect(),
        }
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        RingElem {
            coeffs: poly_reduce_mod(
                poly_mul_mod(&a.coeffs, &b.coeffs, self.modulus),
                &self.def_poly,
                self.modulus,
            ),
        }
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// sigma, applied as a linear map on the polynomial basis.
    pub fn conj(&self, a: &RingElem) -> RingElem {
        let deg = self.def_poly.len();
        let mut out = vec![0u128; deg];
        for (j, &c) in a.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &s) in self.sigma[j].iter().enumerate() {
                out[i] += c as u128 * s as u128 % self.modulus as u128;
            }
        }
        RingElem {
            coeffs: out
                .into_iter()
                .map(|x| (x % self.modulus as u128) as u64)
                .collect(),
        }
    }

    /// x * sigma(x); lands in the sigma-fixed subring O_F / pi^d.
    pub fn norm(&self, a: &RingElem) -> RingElem {
        self.mul(a, &self.conj(a))
    }

    /// x + sigma(x); lands in the sigma-fixed subring.
    pub fn trace(&self, a: &RingElem) -> RingElem {
        self.add(a, &self.conj(a))
    }

    /// Largest k < d with a in p^k R_d, or AtLeastD for zero.
    pub fn valuation(&self, a: &RingElem) -> Valuation {
        let mut best = Valuation::AtLeastD;
        for &c in &a.coeffs {
            if c == 0 {
                continue;
            }
            let mut v = 0u32;
            let mut x = c;
            while x % self.p == 0 {
                v += 1;
                x /= self.p;
            }
            match best {
                Valuation::AtLeastD => best = Valuation::Finite(v),
                Valuation::Finite(b) if v < b => best = Valuation::Finite(v),
                _ => {}
            }
            if best == Valuation::Finite(0) {
                break;
            }
        }
        best
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        self.valuation(a) == Valuation::Finite(0)
    }

    /// Inverse of a unit: invert in the residue field, then Hensel-lift.
    pub fn inverse(&self, a: &RingElem) -> Result<RingElem> {
        if !self.is_unit(a) {
            return Err(Error::InvalidArgument("inverse of a non-unit".into()));
        }
        // inverse mod p via Fermat in F_{p^{2f}}: a^(p^{2f} - 2)
        let card = BigUint::from(self.p).pow(2 * self.f);
        let e = &card - 2u32;
        let mut inv = {
            // compute in the mod-p reduction, then lift digits via Newton below
            let mut acc = self.one();
            let mut base = a.clone();
            let mut bits = e.clone();
            while !bits.is_zero() {
                if (&bits % 2u32) == BigUint::one() {
                    acc = self.mul(&acc, &base);
                }
                base = self.mul(&base, &base);
                bits >>= 1;
            }
            acc
        };
        // Newton refinement: inv <- inv (2 - a*inv); also corrects higher digits
        for _ in 0..self.d.ilog2() + 2 {
            let prod = self.mul(a, &inv);
            let two = self.from_u64(2);
            let corr = self.sub(&two, &prod);
            inv = self.mul(&inv, &corr);
        }
        debug_assert_eq!(self.mul(a, &inv), self.one());
        Ok(inv)
    }

    /// All q^{2d} elements, lexicographic in the coefficient vector.
    pub fn enumerate(&self) -> impl Iterator<Item = RingElem> + '_ {
        let deg = self.def_poly.len();
        let total = BigUint::from(self.modulus).pow(deg as u32);
        let total: u64 = total.try_into().unwrap_or(u64::MAX);
        (0..total).map(move |mut n| {
            let mut coeffs = vec![0u64; deg];
            for c in coeffs.iter_mut() {
                *c = n % self.modulus;
                n /= self.modulus;
            }
            RingElem { coeffs }
        })
    }
}

/// #\{x in O_E/pi^s : N(x) = v mod pi^s\} as a function of the class of v,
/// valid for every unramified E/F with residue size q.
///
/// For v of even valuation 2j < s the fiber has size q^{s-1}(q+1); for the
/// zero class (val >= s) it is q^{2*floor(s/2)}; odd valuations are not norms.
pub fn norm_fiber_count(q: u64, s: u32, val_of_v: Option<u32>) -> BigUint {
    match val_of_v {
        None => BigUint::from(q).pow(2 * (s / 2)),
        Some(v) if v >= s => BigUint::from(q).pow(2 * (s / 2)),
        Some(v) if v % 2 == 1 => BigUint::zero(),
        Some(_) => BigUint::from(q).pow(s - 1) * BigUint::from(q + 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn q3_defining_poly_is_x2_plus_1() {
        let ctx = RingCtx::new(3, 1, 1).unwrap();
        assert_eq!(ctx.def_poly, vec![1, 0]); // x^2 + 1
    }

    #[test]
    fn conj_of_generator_q3() {
        // p=3, f=1, d=1, x^2+1: conj(w) = -w since w^3 = -w in F_9
        let ctx = RingCtx::new(3, 1, 1).unwrap();
        let w = ctx.generator();
        assert_eq!(ctx.conj(&w), ctx.neg(&w));
    }

    #[test]
    fn conj_is_involution_and_fixes_prime_subring() {
        for d in [1u32, 2, 3] {
            let ctx = RingCtx::new(3, 1, d).unwrap();
            for x in ctx.enumerate() {
                assert_eq!(ctx.conj(&ctx.conj(&x)), x);
            }
            for n in 0..ctx.modulus {
                let x = ctx.from_u64(n);
                assert_eq!(ctx.conj(&x), x);
            }
        }
    }

    #[test]
    fn conj_nontrivial() {
        let ctx = RingCtx::new(3, 1, 2).unwrap();
        let w = ctx.generator();
        assert_ne!(ctx.conj(&w), w);
    }

    #[test]
    fn norm_trace_are_fixed_by_sigma() {
        for d in [1u32, 2] {
            let ctx = RingCtx::new(3, 1, d).unwrap();
            for x in ctx.enumerate() {
                let n = ctx.norm(&x);
                let t = ctx.trace(&x);
                assert_eq!(ctx.conj(&n), n);
                assert_eq!(ctx.conj(&t), t);
            }
        }
    }

    #[test]
    fn norm_one_and_trace_one() {
        let ctx = RingCtx::new(3, 1, 2).unwrap();
        let one = ctx.one();
        assert_eq!(ctx.norm(&one), one);
        assert_eq!(ctx.trace(&one), ctx.from_u64(2));
    }

    #[test]
    fn norm_of_generator_q3() {
        // w^2 = -1, norm(w) = w * (-w) = -w^2 = 1
        let ctx = RingCtx::new(3, 1, 1).unwrap();
        let w = ctx.generator();
        assert_eq!(ctx.norm(&w), ctx.one());
    }

    #[test]
    fn count_norm_one_is_q_plus_1() {
        let ctx = RingCtx::new(3, 1, 1).unwrap();
        let n = ctx
            .enumerate()
            .filter(|x| ctx.norm(x) == ctx.one())
            .count();
        assert_eq!(n, 4);
    }

    #[test]
    fn cardinalities() {
        for d in [1u32, 2] {
            let ctx = RingCtx::new(3, 1, d).unwrap();
            let total = ctx.enumerate().count();
            let units = ctx.enumerate().filter(|x| ctx.is_unit(x)).count();
            let q2d = 9u64.pow(d);
            assert_eq!(total as u64, q2d);
            assert_eq!(units as u64, q2d - q2d / 9);
        }
    }

    #[test]
    fn unit_norm_fibers_have_equal_size() {
        for d in [1u32, 2] {
            let ctx = RingCtx::new(3, 1, d).unwrap();
            let mut fibers: HashMap<Vec<u64>, usize> = HashMap::new();
            for x in ctx.enumerate() {
                if ctx.is_unit(&x) {
                    *fibers.entry(ctx.norm(&x).coeffs).or_default() += 1;
                }
            }
            let sizes: Vec<usize> = fibers.values().copied().collect();
            assert!(sizes.windows(2).all(|w| w[0] == w[1]));
            // fiber size q^{d-1}(q+1)
            assert_eq!(sizes[0] as u64, 3u64.pow(d - 1) * 4);
        }
    }

    #[test]
    fn valuation_basics() {
        let ctx = RingCtx::new(3, 1, 3).unwrap();
        assert_eq!(ctx.valuation(&ctx.one()), Valuation::Finite(0));
        assert_eq!(ctx.valuation(&ctx.from_u64(3)), Valuation::Finite(1));
        assert_eq!(
            ctx.valuation(&ctx.scale(&ctx.from_u64(3), 2)),
            Valuation::Finite(1)
        );
        assert_eq!(ctx.valuation(&ctx.zero()), Valuation::AtLeastD);
    }

    #[test]
    fn inverse_of_units() {
        let ctx = RingCtx::new(3, 1, 3).unwrap();
        for x in ctx.enumerate().filter(|x| ctx.is_unit(x)).take(200) {
            let inv = ctx.inverse(&x).unwrap();
            assert_eq!(ctx.mul(&x, &inv), ctx.one());
        }
    }

    #[test]
    fn f2_sigma_is_order_two_nontrivial() {
        let ctx = RingCtx::new(3, 2, 2).unwrap();
        let w = ctx.generator();
        let c = ctx.conj(&w);
        assert_ne!(c, w);
        assert_eq!(ctx.conj(&c), w);
        // fixed subring has q^d = 9^2 elements among... spot-check norms land fixed
        let n = ctx.norm(&w);
        assert_eq!(ctx.conj(&n), n);
    }

    #[test]
    fn norm_fiber_count_matches_enumeration() {
        for (p, f, s) in [(3u64, 1u32, 1u32), (3, 1, 2), (3, 1, 3), (5, 1, 2), (3, 2, 1)] {
            let ctx = RingCtx::new(p, f, s).unwrap();
            let q = ctx.q;
            let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
            for x in ctx.enumerate() {
                *counts.entry(ctx.norm(&x).coeffs).or_default() += 1;
            }
            for (v, c) in counts {
                let elem = RingElem { coeffs: v };
                let val = match ctx.valuation(&elem) {
                    Valuation::Finite(k) => Some(k),
                    Valuation::AtLeastD => None,
                };
                assert_eq!(
                    norm_fiber_count(q, s, val),
                    BigUint::from(c),
                    "mismatch at p={p} f={f} s={s}"
                );
            }
        }
    }
}
