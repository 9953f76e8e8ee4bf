//! Partitions (lattice types), hermitian Gram matrices over the quadratic
//! extension E with bounded denominators, Jordan-splitting type
//! classification, and the block surgeries A^[r] and B^(dual_h).
//!
//! Entries live in the exact field Q(w) with w^2 = -c0, where x^2 + c0 is the
//! defining quadratic chosen for the prime p. That field embeds into E with p
//! inert, so pi-adic valuations are plain p-valuations of the coordinates and
//! every computation here is exact.

use crate::error::{Error, Result};
use crate::gring::RingCtx;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// exact field elements
// ---------------------------------------------------------------------------

/// Parameters of the exact quadratic model of E for a fixed prime p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EFieldCtx {
    pub p: u64,
    pub f: u32,
    /// w^2 = -c0; for f >= 2 only rational entries (b = 0) are supported.
    pub c0: u64,
}

impl EFieldCtx {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        // the quadratic defining polynomial for this p, as in the Galois ring
        let rc = RingCtx::new(p, 1, 1)?;
        debug_assert_eq!(rc.def_poly[1], 0, "defining quadratic has zero linear term");
        Ok(EFieldCtx {
            p,
            f,
            c0: rc.def_poly[0],
        })
    }

    pub fn q(&self) -> u64 {
        let mut acc = 1u64;
        for _ in 0..self.f {
            acc *= self.p;
        }
        acc
    }
}

/// a + b*w with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EElem {
    pub a: BigRational,
    pub b: BigRational,
}

fn val_p_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut x = n.abs();
    loop {
        let (q, r) = x.div_rem(&p);
        if r.is_zero() {
            v += 1;
            x = q;
        } else {
            return Some(v);
        }
    }
}

fn val_p_rat(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(val_p_int(r.numer(), p).unwrap() - val_p_int(r.denom(), p).unwrap())
}

impl EElem {
    pub fn zero() -> Self {
        EElem {
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        EElem {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        EElem {
            a: BigRational::from(BigInt::from(n)),
            b: BigRational::zero(),
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        EElem {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_pair(a: BigRational, b: BigRational) -> Self {
        EElem { a, b }
    }

    /// pi^k = p^k for any integer k.
    pub fn pi_pow(p: u64, k: i64) -> Self {
        let base = BigRational::from(BigInt::from(p));
        let mut acc = BigRational::one();
        let b = if k >= 0 { base.clone() } else { base.recip() };
        for _ in 0..k.unsigned_abs() {
            acc *= &b;
        }
        EElem::from_rational(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        EElem {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        EElem {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn neg(&self) -> Self {
        EElem {
            a: -&self.a,
            b: -&self.b,
        }
    }

    pub fn mul(&self, o: &Self, ctx: &EFieldCtx) -> Self {
        // (a + bw)(c + dw) = (ac - c0*bd) + (ad + bc)w
        let c0 = BigRational::from(BigInt::from(ctx.c0));
        EElem {
            a: &self.a * &o.a - &c0 * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn conj(&self) -> Self {
        EElem {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// N(x) = x * conj(x) = a^2 + c0 b^2, a rational.
    pub fn norm(&self, ctx: &EFieldCtx) -> BigRational {
        let c0 = BigRational::from(BigInt::from(ctx.c0));
        &self.a * &self.a + c0 * &self.b * &self.b
    }

    pub fn inverse(&self, ctx: &EFieldCtx) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("division by zero in E".into()));
        }
        let n = self.norm(ctx);
        let c = self.conj();
        Ok(EElem {
            a: &c.a / &n,
            b: &c.b / &n,
        })
    }

    pub fn div(&self, o: &Self, ctx: &EFieldCtx) -> Result<Self> {
        Ok(self.mul(&o.inverse(ctx)?, ctx))
    }

    /// pi-adic valuation; None for zero. Valid because p is inert in Q(w).
    pub fn val(&self, ctx: &EFieldCtx) -> Option<i64> {
        match (val_p_rat(&self.a, ctx.p), val_p_rat(&self.b, ctx.p)) {
            (None, None) => None,
            (Some(v), None) | (None, Some(v)) => Some(v),
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    /// Reduce an integral (at p) element to coefficient pairs mod p^dd.
    pub fn reduce_mod(&self, p: u64, dd: u32) -> Result<(u64, u64)> {
        let m = BigInt::from(p).pow(dd);
        let red = |r: &BigRational| -> Result<u64> {
            if val_p_rat(r, p).map_or(false, |v| v < 0) {
                return Err(Error::InvalidArgument(
                    "reduce_mod of a non-integral element".into(),
                ));
            }
            // numer * denom^{-1} mod p^dd; denom is prime to p
            let den = r.denom().mod_floor(&m);
            let inv = mod_inverse_big(&den, &m).ok_or_else(|| {
                Error::InvalidArgument("denominator not invertible mod p^d".into())
            })?;
            let num = r.numer().mod_floor(&m);
            Ok(((num * inv).mod_floor(&m)).to_u64().unwrap())
        };
        Ok((red(&self.a)?, red(&self.b)?))
    }
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// partitions and Y-classes
// ---------------------------------------------------------------------------

/// Weakly decreasing integer vector; parts may be negative in general.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn val(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn t(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// E_k = #\{parts equal to k\}, for k >= 0 (the partition convention).
    pub fn e_stat(&self, k: i64) -> usize {
        self.0.iter().filter(|&&x| x == k).count()
    }

    pub fn e0(&self) -> usize {
        self.e_stat(0)
    }

    pub fn e1(&self) -> usize {
        self.e_stat(1)
    }

    /// lambda_s^+: replace s zeros by ones.
    pub fn zeros_to_ones(&self, s: usize) -> Result<Partition> {
        if self.e0() < s {
            return Err(Error::InvalidArgument(format!(
                "partition has only {} zeros, cannot promote {s}",
                self.e0()
            )));
        }
        let mut v = self.0.clone();
        let mut left = s;
        for x in v.iter_mut() {
            if *x == 0 && left > 0 {
                *x = 1;
                left -= 1;
            }
        }
        Ok(Partition::new(v))
    }

    /// lambda_p^-: replace p ones by zeros.
    pub fn ones_to_zeros(&self, p: usize) -> Result<Partition> {
        if self.e1() < p {
            return Err(Error::InvalidArgument(format!(
                "partition has only {} ones, cannot demote {p}",
                self.e1()
            )));
        }
        let mut v = self.0.clone();
        let mut left = p;
        for x in v.iter_mut().rev() {
            if *x == 1 && left > 0 {
                *x = 0;
                left -= 1;
            }
        }
        Ok(Partition::new(v))
    }

    /// lambda^(vee_l): drop l zeros.
    pub fn drop_zeros(&self, l: usize) -> Result<Partition> {
        if self.e0() < l {
            return Err(Error::InvalidArgument(format!(
                "partition has only {} zeros, cannot drop {l}",
                self.e0()
            )));
        }
        let mut v = self.0.clone();
        let mut left = l;
        v.retain(|&x| {
            if x == 0 && left > 0 {
                left -= 1;
                false
            } else {
                true
            }
        });
        Ok(Partition(v))
    }

    /// All of R_n^{0k}: n nonnegative parts bounded by k, in lexicographic
    /// order with the largest part compared first, descending.
    pub fn enumerate_r_n0k(n: usize, k: i64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(out: &mut Vec<Partition>, cur: &mut Vec<i64>, n: usize, bound: i64) {
            if cur.len() == n {
                out.push(Partition(cur.clone()));
                return;
            }
            for v in (0..=bound).rev() {
                cur.push(v);
                rec(out, cur, n, v);
                cur.pop();
            }
        }
        rec(&mut out, &mut cur, n, k);
        out
    }
}

/// Exponent multiset of a diagonal-up-to-permutation Y; the E-statistics here
/// follow the Y-class convention: E_0 counts exponents >= 0, and E_k for
/// k >= 1 counts exponents equal to -k. Do not conflate with the partition
/// convention of [`Partition::e_stat`]; the bridge between the two lives in
/// the closed-form module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YClass(Vec<i64>);

impl YClass {
    pub fn new(mut exps: Vec<i64>) -> Self {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        YClass(exps)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn e0(&self) -> usize {
        self.0.iter().filter(|&&e| e >= 0).count()
    }

    /// E_k(Y) = #\{e_i = -k\} for k >= 1.
    pub fn e_stat(&self, k: i64) -> usize {
        debug_assert!(k >= 1);
        self.0.iter().filter(|&&e| e == -k).count()
    }

    /// Canonical representative of the class C_eta: E_0(eta) zeros and, for
    /// k >= 1, E_k(eta) copies of -k.
    pub fn canonical_for(eta: &Partition) -> YClass {
        let exps = eta.parts().iter().map(|&k| -k).collect();
        YClass::new(exps)
    }
}

// ---------------------------------------------------------------------------
// hermitian matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct HermMatrix {
    pub n: usize,
    pub ctx: EFieldCtx,
    entries: Vec<EElem>,
}

#[derive(Serialize, Deserialize)]
struct HermMatrixDto {
    n: usize,
    denom_pow: i64,
    entries: Vec<Vec<[String; 2]>>,
}

impl HermMatrix {
    pub fn from_entries(n: usize, ctx: EFieldCtx, entries: Vec<EElem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries",
                n * n
            )));
        }
        let m = HermMatrix { n, ctx, entries };
        for i in 0..n {
            for j in 0..=i {
                if *m.get(j, i) != m.get(i, j).conj() {
                    return Err(Error::InvalidArgument(
                        "matrix is not hermitian".into(),
                    ));
                }
            }
        }
        Ok(m)
    }

    pub fn zero(n: usize, ctx: EFieldCtx) -> Self {
        HermMatrix {
            n,
            ctx,
            entries: vec![EElem::zero(); n * n],
        }
    }

    pub fn identity(n: usize, ctx: EFieldCtx) -> Self {
        let mut m = Self::zero(n, ctx);
        for i in 0..n {
            m.entries[i * n + i] = EElem::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &EElem {
        &self.entries[i * self.n + j]
    }

    /// Set (i, j) and mirror conj into (j, i).
    pub fn set_sym(&mut self, i: usize, j: usize, v: EElem) {
        self.entries[j * self.n + i] = v.conj();
        self.entries[i * self.n + j] = v;
    }

    /// diag(pi^{lambda_1}, ..., pi^{lambda_n}).
    pub fn gram_of_partition(lambda: &Partition, ctx: EFieldCtx) -> Self {
        Self::diagonal_pi(lambda.parts(), ctx)
    }

    /// Diagonal pi-power matrix in the given entry order.
    pub fn diagonal_pi(exponents: &[i64], ctx: EFieldCtx) -> Self {
        let n = exponents.len();
        let mut m = Self::zero(n, ctx);
        for (i, &e) in exponents.iter().enumerate() {
            m.entries[i * n + i] = EElem::pi_pow(m.ctx.p, e);
        }
        m
    }

    /// A_t = diag(1_{2n-t}, pi^{-1} 1_t), a 2n x 2n matrix.
    pub fn a_t_matrix(t: usize, n: usize, ctx: EFieldCtx) -> Result<Self> {
        if t > n {
            return Err(Error::InvalidArgument(format!("t = {t} out of range 0..={n}")));
        }
        let size = 2 * n;
        let mut m = Self::zero(size, ctx);
        for i in 0..size {
            m.entries[i * size + i] = if i < size - t {
                EElem::one()
            } else {
                EElem::pi_pow(m.ctx.p, -1)
            };
        }
        Ok(m)
    }

    /// Block diagonal diag(self, 1_{2r}).
    pub fn extend_r(&self, r: usize) -> Self {
        let n = self.n + 2 * r;
        let mut m = Self::zero(n, self.ctx.clone());
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in self.n..n {
            m.entries[i * n + i] = EElem::one();
        }
        m
    }

    /// The dual block rearrangement: writing self = [[A, B], [C, D]] with A of
    /// size (2n-h) and D of size h, returns [[pi D, C], [B, pi^{-1} A]].
    pub fn dual_flip(&self, h: usize) -> Result<Self> {
        let size = self.n;
        if h > size {
            return Err(Error::DimensionMismatch(format!(
                "h = {h} exceeds matrix size {size}"
            )));
        }
        let a = size - h;
        let pi = EElem::pi_pow(self.ctx.p, 1);
        let pi_inv = EElem::pi_pow(self.ctx.p, -1);
        let mut m = Self::zero(size, self.ctx.clone());
        for i in 0..size {
            for j in 0..size {
                let v = if i < h && j < h {
                    // pi * D
                    self.get(a + i, a + j).mul(&pi, &self.ctx)
                } else if i < h {
                    // C block
                    self.get(a + i, j - h).clone()
                } else if j < h {
                    // B block
                    self.get(i - h, a + j).clone()
                } else {
                    // pi^{-1} * A
                    self.get(i - h, j - h).mul(&pi_inv, &self.ctx)
                };
                m.entries[i * size + j] = v;
            }
        }
        Ok(m)
    }

    /// Shared denominator bound c = max(0, -min entry valuation).
    pub fn denom_pow(&self) -> i64 {
        let mut c = 0i64;
        for e in &self.entries {
            if let Some(v) = e.val(&self.ctx) {
                c = c.max(-v);
            }
        }
        c
    }

    pub fn is_integral(&self) -> bool {
        self.denom_pow() == 0
    }

    pub fn scale_pi_pow(&self, k: i64) -> Self {
        let pi = EElem::pi_pow(self.ctx.p, k);
        let mut m = self.clone();
        for e in m.entries.iter_mut() {
            *e = e.mul(&pi, &self.ctx);
        }
        m
    }

    /// Exact determinant by Gaussian elimination over the field.
    pub fn det(&self) -> EElem {
        let n = self.n;
        let mut a: Vec<EElem> = self.entries.clone();
        let mut det = EElem::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !a[r * n + col].is_zero()) {
                Some(r) => r,
                None => return EElem::zero(),
            };
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                det = det.neg();
            }
            let pivot = a[col * n + col].clone();
            det = det.mul(&pivot, &self.ctx);
            let inv = pivot.inverse(&self.ctx).expect("nonzero pivot");
            for r in (col + 1)..n {
                let factor = a[r * n + col].mul(&inv, &self.ctx);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor.mul(&a[col * n + c], &self.ctx);
                    a[r * n + c] = a[r * n + c].sub(&sub);
                }
            }
        }
        det
    }

    pub fn val_det(&self) -> Option<i64> {
        self.det().val(&self.ctx)
    }

    /// U^* self U for a square matrix U over E (columns = new basis).
    pub fn congruence(&self, u: &[EElem]) -> Result<Self> {
        let n = self.n;
        if u.len() != n * n {
            return Err(Error::DimensionMismatch("congruence matrix size".into()));
        }
        // tmp = self * U
        let mut tmp = vec![EElem::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = EElem::zero();
                for l in 0..n {
                    acc = acc.add(&self.get(i, l).mul(&u[l * n + j], &self.ctx));
                }
                tmp[i * n + j] = acc;
            }
        }
        // out = U^* tmp
        let mut out = vec![EElem::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = EElem::zero();
                for l in 0..n {
                    acc = acc.add(&u[l * n + i].conj().mul(&tmp[l * n + j], &self.ctx));
                }
                out[i * n + j] = acc;
            }
        }
        HermMatrix::from_entries(n, self.ctx.clone(), out)
    }

    /// The unique lambda with self = A_lambda[U] for unimodular U, computed by
    /// hermitian Jordan splitting. Exact; fails only on degenerate input.
    pub fn classify_type(&self) -> Result<Partition> {
        let ctx = self.ctx.clone();
        let mut size = self.n;
        let mut a: Vec<EElem> = self.entries.clone();
        let mut parts: Vec<i64> = Vec::new();
        while size > 0 {
            // locate the entry of minimal valuation
            let mut min_val: Option<i64> = None;
            let mut min_pos = (0usize, 0usize);
            let mut min_on_diag = false;
            for i in 0..size {
                for j in 0..size {
                    if let Some(v) = a[i * size + j].val(&ctx) {
                        let better = match min_val {
                            None => true,
                            Some(mv) => {
                                v < mv || (v == mv && !min_on_diag && i == j)
                            }
                        };
                        if better {
                            min_val = Some(v);
                            min_pos = (i, j);
                            min_on_diag = i == j;
                        }
                    }
                }
            }
            let e = min_val.ok_or(Error::PrecisionExhausted)?;
            let (pi, pj) = min_pos;
            if pi != pj {
                // off-diagonal pivot: col_pi += c * col_pj (and the mirrored
                // row op) for a unit c making the new diagonal hit valuation e
                let mut done = false;
                'search: for bb in 0..ctx.p {
                    for aa in 0..ctx.p {
                        if aa == 0 && bb == 0 {
                            continue;
                        }
                        if bb != 0 && ctx.f != 1 {
                            continue;
                        }
                        let c = EElem::from_pair(
                            BigRational::from(BigInt::from(aa)),
                            BigRational::from(BigInt::from(bb)),
                        );
                        // candidate new diagonal value gii + tr(c*gij) + N(c)gjj
                        let gij = a[pi * size + pj].clone();
                        let gii = a[pi * size + pi].clone();
                        let gjj = a[pj * size + pj].clone();
                        let cross = c.mul(&gij, &ctx);
                        let tr = cross.add(&cross.conj());
                        let nn = EElem::from_rational(c.norm(&ctx));
                        let cand = gii.add(&tr).add(&nn.mul(&gjj, &ctx));
                        if cand.val(&ctx) == Some(e) {
                            // apply col_pi += c * col_pj, row_pi += conj(c) * row_pj
                            for r in 0..size {
                                let add = a[r * size + pj].mul(&c, &ctx);
                                a[r * size + pi] = a[r * size + pi].add(&add);
                            }
                            let cc = c.conj();
                            for cl in 0..size {
                                let add = a[pj * size + cl].mul(&cc, &ctx);
                                a[pi * size + cl] = a[pi * size + cl].add(&add);
                            }
                            done = true;
                            break 'search;
                        }
                    }
                }
                if !done {
                    return Err(Error::PrecisionExhausted);
                }
            }
            let piv = pi; // diagonal pivot index now holds valuation e
            debug_assert_eq!(a[piv * size + piv].val(&ctx), Some(e));
            // swap pivot to position 0
            if piv != 0 {
                for c in 0..size {
                    a.swap(piv * size + c, c);
                }
                for r in 0..size {
                    a.swap(r * size + piv, r * size);
                }
            }
            // clear with row ops; the matching column ops do not change the
            // trailing block once column 0 is zeroed, so the Schur complement
            // below is already the congruence-reduced block
            let pivot = a[0].clone();
            let inv = pivot.inverse(&ctx)?;
            for r in 1..size {
                let factor = a[r * size].mul(&inv, &ctx);
                if factor.is_zero() {
                    continue;
                }
                for c in 0..size {
                    let sub = factor.mul(&a[c], &ctx);
                    a[r * size + c] = a[r * size + c].sub(&sub);
                }
            }
            parts.push(e);
            // shrink to the trailing (size-1) x (size-1) block
            let mut next = Vec::with_capacity((size - 1) * (size - 1));
            for r in 1..size {
                for c in 1..size {
                    next.push(a[r * size + c].clone());
                }
            }
            a = next;
            size -= 1;
        }
        Ok(Partition::new(parts))
    }

    // ---- JSON ----

    pub fn to_json(&self) -> Result<String> {
        let c = self.denom_pow();
        let pi_c = EElem::pi_pow(self.ctx.p, c);
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                let scaled = self.get(i, j).mul(&pi_c, &self.ctx);
                if !scaled.a.denom().is_one() || !scaled.b.denom().is_one() {
                    return Err(Error::InvalidArgument(
                        "entries are not pi-power denominated".into(),
                    ));
                }
                row.push([scaled.a.numer().to_string(), scaled.b.numer().to_string()]);
            }
            rows.push(row);
        }
        let dto = HermMatrixDto {
            n: self.n,
            denom_pow: c,
            entries: rows,
        };
        Ok(serde_json::to_string(&dto)?)
    }

    pub fn from_json(s: &str, ctx: EFieldCtx) -> Result<Self> {
        let dto: HermMatrixDto = serde_json::from_str(s)?;
        if dto.entries.len() != dto.n || dto.entries.iter().any(|r| r.len() != dto.n) {
            return Err(Error::DimensionMismatch("entries grid".into()));
        }
        let scale = EElem::pi_pow(ctx.p, -dto.denom_pow);
        let mut entries = Vec::with_capacity(dto.n * dto.n);
        for row in &dto.entries {
            for [a, b] in row {
                let a: BigInt = a
                    .parse()
                    .map_err(|_| Error::InvalidArgument("bad integer in matrix json".into()))?;
                let b: BigInt = b
                    .parse()
                    .map_err(|_| Error::InvalidArgument("bad integer in matrix json".into()))?;
                if !b.is_zero() && ctx.f != 1 {
                    return Err(Error::InvalidArgument(
                        "omega components need f = 1".into(),
                    ));
                }
                entries.push(
                    EElem::from_pair(BigRational::from(a), BigRational::from(b))
                        .mul(&scale, &ctx),
                );
            }
        }
        HermMatrix::from_entries(dto.n, ctx, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx3() -> EFieldCtx {
        EFieldCtx::new(3, 1).unwrap()
    }

    fn diag(parts: &[i64]) -> HermMatrix {
        HermMatrix::gram_of_partition(&Partition::new(parts.to_vec()), ctx3())
    }

    #[test]
    fn partition_stats() {
        let p = Partition::new(vec![0, 2, 1, 1, 0]);
        assert_eq!(p.parts(), &[2, 1, 1, 0, 0]);
        assert_eq!(p.val(), 4);
        assert_eq!(p.t(), 3);
        assert_eq!(p.e0(), 2);
        assert_eq!(p.e1(), 2);
        assert_eq!(p.e_stat(2), 1);
    }

    #[test]
    fn partition_surgeries() {
        let p = Partition::new(vec![3, 1, 1, 0, 0]);
        assert_eq!(p.zeros_to_ones(1).unwrap().parts(), &[3, 1, 1, 1, 0]);
        assert_eq!(p.ones_to_zeros(2).unwrap().parts(), &[3, 0, 0, 0, 0]);
        assert_eq!(p.drop_zeros(2).unwrap().parts(), &[3, 1, 1]);
        assert!(p.drop_zeros(3).is_err());
    }

    #[test]
    fn r_n0k_enumeration_lex() {
        let all = Partition::enumerate_r_n0k(2, 1);
        let got: Vec<Vec<i64>> = all.iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 1], vec![1, 0], vec![0, 0]]);
        assert_eq!(Partition::enumerate_r_n0k(2, 2).len(), 6);
        assert_eq!(Partition::enumerate_r_n0k(3, 3).len(), 20);
    }

    #[test]
    fn yclass_statistics() {
        let y = YClass::new(vec![2, 0, -1, -3]);
        assert_eq!(y.e0(), 2);
        assert_eq!(y.e_stat(1), 1);
        assert_eq!(y.e_stat(3), 1);
        assert_eq!(y.e_stat(2), 0);
        let eta = Partition::new(vec![2, 1, 0]);
        assert_eq!(YClass::canonical_for(&eta).exponents(), &[0, -1, -2]);
    }

    #[test]
    fn gram_and_at_and_extend() {
        let g = diag(&[1, 0]);
        assert_eq!(g.get(0, 0), &EElem::from_int(3));
        assert_eq!(g.get(1, 1), &EElem::one());
        let at = HermMatrix::a_t_matrix(1, 1, ctx3()).unwrap();
        assert_eq!(at.get(0, 0), &EElem::one());
        assert_eq!(at.get(1, 1), &EElem::pi_pow(3, -1));
        let at22 = HermMatrix::a_t_matrix(2, 2, ctx3()).unwrap();
        assert_eq!(at22.n, 4);
        assert_eq!(at22.get(0, 0), &EElem::one());
        assert_eq!(at22.get(3, 3), &EElem::pi_pow(3, -1));
        let e = at.extend_r(2);
        assert_eq!(e.n, 6);
        assert_eq!(e.get(1, 1), &EElem::pi_pow(3, -1));
        assert_eq!(e.get(5, 5), &EElem::one());
        assert_eq!(at.extend_r(0), at);
    }

    #[test]
    fn dual_flip_small_cases() {
        let ctx = ctx3();
        let id2 = HermMatrix::identity(2, ctx.clone());
        let f0 = id2.dual_flip(0).unwrap();
        assert_eq!(f0.get(0, 0), &EElem::pi_pow(3, -1));
        assert_eq!(f0.get(1, 1), &EElem::pi_pow(3, -1));
        // h=1 on [[a,b],[conj b,d]] -> [[pi d, conj b],[b, pi^{-1} a]]
        let mut m = HermMatrix::zero(2, ctx.clone());
        m.set_sym(0, 0, EElem::from_int(2));
        m.set_sym(
            0,
            1,
            EElem::from_pair(BigRational::from(BigInt::from(1)), BigRational::from(BigInt::from(1))),
        );
        m.set_sym(1, 1, EElem::from_int(5));
        let f = m.dual_flip(1).unwrap();
        assert_eq!(f.get(0, 0), &EElem::from_int(15));
        assert_eq!(f.get(0, 1), &m.get(1, 0).clone());
        assert_eq!(
            f.get(1, 1),
            &EElem::from_rational(BigRational::new(BigInt::from(2), BigInt::from(3)))
        );
        // involution with the index swap
        let back = f.dual_flip(1).unwrap();
        assert_eq!(back, m);
        let m4 = HermMatrix::a_t_matrix(1, 2, ctx).unwrap();
        let f3 = m4.dual_flip(3).unwrap().dual_flip(1).unwrap();
        assert_eq!(f3, m4);
    }

    #[test]
    fn classify_diagonal() {
        let g = diag(&[2, 1, 0]);
        assert_eq!(g.classify_type().unwrap().parts(), &[2, 1, 0]);
    }

    #[test]
    fn classify_antidiagonal_pi() {
        // [[0, pi], [pi, 0]] is equivalent to diag(pi, pi)
        let ctx = ctx3();
        let mut m = HermMatrix::zero(2, ctx);
        m.set_sym(0, 1, EElem::from_int(3));
        assert_eq!(m.classify_type().unwrap().parts(), &[1, 1]);
    }

    #[test]
    fn classify_fractional() {
        let at = HermMatrix::a_t_matrix(1, 1, ctx3()).unwrap();
        assert_eq!(at.classify_type().unwrap().parts(), &[0, -1]);
    }

    #[test]
    fn val_det_equals_type_val() {
        let mut m = HermMatrix::zero(2, ctx3());
        m.set_sym(0, 0, EElem::from_int(6));
        m.set_sym(0, 1, EElem::from_int(3));
        m.set_sym(1, 1, EElem::from_int(12));
        let t = m.classify_type().unwrap();
        assert_eq!(m.val_det(), Some(t.val()));
    }

    #[test]
    fn classify_identity_on_all_diagonals_up_to_rank4() {
        // classify(gram(lambda)) = lambda for parts in [-3, 3], n <= 4
        let ctx = ctx3();
        for n in 1..=4usize {
            let mut stack = vec![-3i64; n];
            loop {
                let lam = Partition::new(stack.clone());
                let g = HermMatrix::gram_of_partition(&lam, ctx.clone());
                assert_eq!(g.classify_type().unwrap(), lam);
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    stack[i] += 1;
                    if stack[i] <= 3 {
                        break;
                    }
                    stack[i] = -3;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let at = HermMatrix::a_t_matrix(1, 1, ctx3()).unwrap();
        let s = at.to_json().unwrap();
        let back = HermMatrix::from_json(&s, ctx3()).unwrap();
        assert_eq!(back, at);
        assert!(s.contains("\"denom_pow\":1"));
    }
}
