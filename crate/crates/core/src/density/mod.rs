//! The brute-force oracle: exact congruence counting over Galois rings,
//! representation densities alpha(A, B), the density polynomial
//! alpha(A, B; X) in X = (-q)^(-2r), derivatives at X = 1, and the weighted
//! densities W_{h,t}(B, r) with dual-lattice column constraints.

pub mod cache;
pub mod engine;

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, XPolynomial};
use crate::gring::RingCtx;
use crate::herm::{EFieldCtx, HermMatrix, Partition};
use engine::{MixedProblem, MixedRow, TransKey, TypedProblem, TypedRow};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

/// Per-column lattice tags for a weighted count: the leading `dual_cols`
/// columns range over L_t^dual coordinates (last t coordinates pi-divisible),
/// the rest over integral coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainSpec {
    pub dual_cols: usize,
    pub total_cols: usize,
    pub t: usize,
}

impl DomainSpec {
    pub fn all_integral(total_cols: usize) -> Self {
        DomainSpec {
            dual_cols: 0,
            total_cols,
            t: 0,
        }
    }

    /// The domain of 1_{h,t} on 2n columns: (L_t^dual)^(2n-h) x (L_t)^h.
    pub fn weighted(h: usize, t: usize, n: usize) -> Self {
        DomainSpec {
            dual_cols: 2 * n - h,
            total_cols: 2 * n,
            t,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.dual_cols == 0 || self.t == 0
    }

    fn tag(&self) -> String {
        format!("dual{}of{}t{}", self.dual_cols, self.total_cols, self.t)
    }
}

/// Raw and normalized result of one congruence count at a fixed precision.
#[derive(Clone, Debug)]
pub struct CountResult {
    pub raw: BigUint,
    pub d: u32,
    /// The count is normalized as raw * q^(-norm_exponent).
    pub norm_exponent: i64,
    pub normalized: ExactScalar,
    pub stabilized: bool,
}

pub struct DensityCtx {
    pub p: u64,
    pub f: u32,
    pub state_cap: usize,
    pub efield: EFieldCtx,
    transitions: Mutex<HashMap<TransKey, Arc<Vec<(Vec<u8>, BigUint)>>>>,
    alpha_memo: Mutex<HashMap<(Vec<i64>, Vec<i64>), ExactScalar>>,
    series_memo: Mutex<HashMap<(Vec<i64>, Vec<i64>), XPolynomial>>,
    disk: Option<Mutex<cache::DiskCache>>,
    cache_hits: AtomicU64,
    cache_misses: AtomicU64,
}

impl DensityCtx {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        Ok(DensityCtx {
            p,
            f,
            state_cap: 1 << 28,
            efield: EFieldCtx::new(p, f)?,
            transitions: Mutex::new(HashMap::new()),
            alpha_memo: Mutex::new(HashMap::new()),
            series_memo: Mutex::new(HashMap::new()),
            disk: None,
            cache_hits: AtomicU64::new(0),
            cache_misses: AtomicU64::new(0),
        })
    }

    pub fn with_disk_cache(mut self, path: &std::path::Path) -> Result<Self> {
        self.disk = Some(Mutex::new(cache::DiskCache::open(path)?));
        Ok(self)
    }

    pub fn q(&self) -> u64 {
        self.efield.q()
    }

    pub fn cache_stats(&self) -> (u64, u64) {
        (
            self.cache_hits.load(Ordering::Relaxed),
            self.cache_misses.load(Ordering::Relaxed),
        )
    }

    fn transition(&self, key: &TransKey) -> Arc<Vec<(Vec<u8>, BigUint)>> {
        if let Some(t) = self.transitions.lock().unwrap().get(key) {
            return Arc::clone(t);
        }
        let built = Arc::new(engine::build_transition(self.p, key));
        self.transitions
            .lock()
            .unwrap()
            .entry(key.clone())
            .or_insert(built)
            .clone()
    }

    // -----------------------------------------------------------------------
    // raw counts
    // -----------------------------------------------------------------------

    fn diag_pi_parts(&self, m: &HermMatrix) -> Option<Vec<i64>> {
        let ef = &self.efield;
        let mut parts = Vec::with_capacity(m.n);
        for i in 0..m.n {
            for j in 0..m.n {
                let e = m.get(i, j);
                if i == j {
                    let v = e.val(ef)?;
                    if *e != crate::herm::EElem::pi_pow(self.p, v) {
                        return None;
                    }
                    parts.push(v);
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(parts)
    }

    /// Raw number of X in M_{m,k}(O_E/pi^(d+c)) in the domain with
    /// pi^c A[X] = pi^c B mod pi^(d+c).
    fn raw_count(
        &self,
        a: &HermMatrix,
        b: &HermMatrix,
        d: u32,
        dom: &DomainSpec,
    ) -> Result<BigUint> {
        let c = self.clearing_exponent(a, b);
        let dcap = d + c;
        let cache_key = self.disk.as_ref().map(|_| {
            format!(
                "p{}f{}d{}:{}:a{}:b{}",
                self.p,
                self.f,
                d,
                dom.tag(),
                a.to_json().unwrap_or_else(|_| "?".into()),
                b.to_json().unwrap_or_else(|_| "?".into())
            )
        });
        if let (Some(disk), Some(key)) = (&self.disk, &cache_key) {
            if let Some(v) = disk.lock().unwrap().get(key) {
                self.cache_hits.fetch_add(1, Ordering::Relaxed);
                return Ok(v);
            }
            self.cache_misses.fetch_add(1, Ordering::Relaxed);
        }
        let raw = self.raw_count_uncached(a, b, d, c, dcap, dom)?;
        if let (Some(disk), Some(key)) = (&self.disk, &cache_key) {
            disk.lock().unwrap().put(key, &raw)?;
        }
        Ok(raw)
    }

    fn clearing_exponent(&self, a: &HermMatrix, b: &HermMatrix) -> u32 {
        a.denom_pow().max(b.denom_pow()).max(0) as u32
    }

    fn raw_count_uncached(
        &self,
        a: &HermMatrix,
        b: &HermMatrix,
        d: u32,
        c: u32,
        dcap: u32,
        dom: &DomainSpec,
    ) -> Result<BigUint> {
        let m = a.n;
        let k = b.n;
        if self.f != 1 {
            return self.naive_count(a, b, c, dcap, dom);
        }
        if dom.is_trivial() {
            let a_parts = a.classify_type()?;
            let b_parts = b.classify_type()?;
            let target = self.capped_target(&b_parts, c, dcap, k);
            let rows = a_parts
                .parts()
                .iter()
                .map(|&e| TypedRow {
                    sigma: (c as i64 + e) as u32,
                    masked: false,
                })
                .collect();
            let prob = TypedProblem {
                k,
                dcap,
                target,
                rows,
            };
            return engine::count_typed(&prob, self.q(), |key| self.transition(key).to_vec());
        }
        // dual-column domains need a diagonal pi-power A
        let a_parts = self.diag_pi_parts(a).ok_or_else(|| {
            Error::InvalidArgument("weighted counts need a diagonal pi-power A".into())
        })?;
        if dom.dual_cols == k {
            // uniform masks: substitute v = pi w on the masked coordinate rows
            let b_parts = b.classify_type()?;
            let target = self.capped_target(&b_parts, c, dcap, k);
            let rows = a_parts
                .iter()
                .enumerate()
                .map(|(i, &e)| {
                    let masked = i >= dom.total_cols - dom.t && i < dom.total_cols;
                    TypedRow {
                        sigma: (c as i64 + e + if masked { 2 } else { 0 }) as u32,
                        masked,
                    }
                })
                .collect();
            let prob = TypedProblem {
                k,
                dcap,
                target,
                rows,
            };
            return engine::count_typed(&prob, self.q(), |key| self.transition(key).to_vec());
        }
        // mixed dual/integral columns
        let b_parts = self.diag_pi_parts(b).ok_or_else(|| {
            Error::InvalidArgument("mixed-domain counts need a diagonal pi-power B".into())
        })?;
        // W_{n,n}(A_n, 0): the dual-column substitution separates the system
        // into two all-integral Gram counts once the cross pairings are
        // eliminated, so this one domain shape is counted by factorization.
        let n2 = dom.total_cols;
        let n = n2 / 2;
        if dom.t == n
            && dom.dual_cols == n
            && m == k
            && k == n2
            && c == 1
            && *a == HermMatrix::a_t_matrix(n, n, self.efield.clone())?
            && *b == HermMatrix::a_t_matrix(n, n, self.efield.clone())?
        {
            return self.w_nn_factorized(n, d);
        }
        let rows = a_parts
            .iter()
            .enumerate()
            .map(|(i, &e)| MixedRow {
                sigma: (c as i64 + e) as u32,
                col_masked: (0..k)
                    .map(|col| {
                        col < dom.dual_cols
                            && i >= dom.total_cols - dom.t
                            && i < dom.total_cols
                    })
                    .collect(),
            })
            .collect();
        let target: Vec<u8> = b_parts
            .iter()
            .map(|&mu| ((mu + c as i64).max(0) as u32).min(dcap) as u8)
            .collect();
        let prob = MixedProblem {
            k,
            dcap,
            target,
            rows,
        };
        engine::count_mixed_raw(&prob, self.p, self.efield.c0, self.state_cap)
    }

    /// Raw count for W_{n,n}(A_n, 0) at precision d: C1(d) * C2(d+1) * q^(4n^2)
    /// with C1 the count of diag(1_n, pi 1_n) representing 1_n mod pi^d and
    /// C2 the count of 1_n representing 1_n mod pi^(d+1).
    fn w_nn_factorized(&self, n: usize, d: u32) -> Result<BigUint> {
        let c1 = {
            let mut rows: Vec<TypedRow> = Vec::new();
            for _ in 0..n {
                rows.push(TypedRow {
                    sigma: 0,
                    masked: false,
                });
            }
            for _ in 0..n {
                rows.push(TypedRow {
                    sigma: 1,
                    masked: false,
                });
            }
            let prob = TypedProblem {
                k: n,
                dcap: d,
                target: vec![0u8; n],
                rows,
            };
            engine::count_typed(&prob, self.q(), |key| self.transition(key).to_vec())?
        };
        let c2 = {
            let rows = (0..n)
                .map(|_| TypedRow {
                    sigma: 0,
                    masked: false,
                })
                .collect();
            let prob = TypedProblem {
                k: n,
                dcap: d + 1,
                target: vec![0u8; n],
                rows,
            };
            engine::count_typed(&prob, self.q(), |key| self.transition(key).to_vec())?
        };
        Ok(c1 * c2 * BigUint::from(self.q()).pow(4 * (n as u32) * (n as u32)))
    }

    fn capped_target(&self, b_type: &Partition, c: u32, dcap: u32, k: usize) -> Vec<u8> {
        let mut t: Vec<u8> = b_type
            .parts()
            .iter()
            .map(|&mu| ((mu + c as i64).max(0) as u32).min(dcap) as u8)
            .collect();
        t.resize(k, 0);
        t.sort_unstable();
        t
    }

    fn naive_count(
        &self,
        a: &HermMatrix,
        b: &HermMatrix,
        c: u32,
        dcap: u32,
        dom: &DomainSpec,
    ) -> Result<BigUint> {
        let ring = RingCtx::new(self.p, self.f, dcap)?;
        let m = a.n;
        let k = b.n;
        let a_parts = match self.diag_pi_parts(a) {
            Some(p) => p,
            None if dom.is_trivial() => a.classify_type()?.parts().to_vec(),
            None => {
                return Err(Error::InvalidArgument(
                    "weighted counts need a diagonal pi-power A".into(),
                ))
            }
        };
        let sigmas: Vec<u32> = a_parts.iter().map(|&e| (c as i64 + e) as u32).collect();
        let masks: Vec<Vec<bool>> = (0..m)
            .map(|i| {
                (0..k)
                    .map(|col| {
                        col < dom.dual_cols
                            && i >= dom.total_cols.saturating_sub(dom.t)
                            && i < dom.total_cols
                    })
                    .collect()
            })
            .collect();
        let pic = crate::herm::EElem::pi_pow(self.p, c as i64);
        let mut target = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let e = b.get(i, j).mul(&pic, &self.efield);
                let (x, y) = e.reduce_mod(self.p, dcap)?;
                let mut coeffs = vec![0u64; 2 * self.f as usize];
                coeffs[0] = x;
                if coeffs.len() > 1 {
                    coeffs[1] = y;
                }
                target.push(ring.from_coeffs(&coeffs));
            }
        }
        engine::count_naive(&ring, &sigmas, &masks, &target, k)
    }

    // -----------------------------------------------------------------------
    // normalized counts and stabilization
    // -----------------------------------------------------------------------

    /// Exact cardinality and normalization of the congruence count at a fixed
    /// precision d.
    pub fn count_congruence(
        &self,
        a: &HermMatrix,
        b: &HermMatrix,
        d: u32,
        dom: &DomainSpec,
    ) -> Result<CountResult> {
        let c = self.clearing_exponent(a, b);
        let raw = self.raw_count(a, b, d, dom)?;
        let m = a.n as i64;
        let k = b.n as i64;
        let norm_exponent = d as i64 * k * (2 * m - k) + 2 * c as i64 * m * k;
        let normalized = normalize(&raw, self.q(), norm_exponent);
        Ok(CountResult {
            raw,
            d,
            norm_exponent,
            normalized,
            stabilized: false,
        })
    }

    fn stabilization_floor(&self, a: &HermMatrix, b: &HermMatrix) -> Result<u32> {
        let vdet = b
            .val_det()
            .ok_or_else(|| Error::InvalidArgument("degenerate B".into()))?;
        let amax = if a.n == 0 {
            0
        } else {
            *a.classify_type()?.parts().first().unwrap_or(&0)
        };
        Ok(1 + vdet.max(amax).max(0) as u32)
    }

    fn stabilized(
        &self,
        a: &HermMatrix,
        b: &HermMatrix,
        dom: &DomainSpec,
    ) -> Result<CountResult> {
        let d_star = self.stabilization_floor(a, b)?;
        let mut d = d_star;
        let mut cur = self.count_congruence(a, b, d, dom)?;
        loop {
            let next = self.count_congruence(a, b, d + 1, dom)?;
            if next.normalized == cur.normalized {
                cur.stabilized = true;
                return Ok(cur);
            }
            cur = next;
            d += 1;
            if d > d_star + 8 {
                return Err(Error::NotStabilized(d));
            }
        }
    }

    // -----------------------------------------------------------------------
    // densities
    // -----------------------------------------------------------------------

    /// alpha(A, B): the stabilized normalized count.
    pub fn alpha(&self, a: &HermMatrix, b: &HermMatrix) -> Result<ExactScalar> {
        let key = (
            a.classify_type()?.parts().to_vec(),
            b.classify_type()?.parts().to_vec(),
        );
        if let Some(v) = self.alpha_memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let res = self
            .stabilized(a, b, &DomainSpec::all_integral(b.n))?
            .normalized;
        self.alpha_memo.lock().unwrap().insert(key, res.clone());
        Ok(res)
    }

    /// alpha(A, B; X) as a polynomial in X = (-q)^(-2r), recovered by
    /// sampling r = 0..r_max and interpolating, with a degree-confirmation
    /// sample at r_max + 1 (r_max is raised on failure).
    pub fn alpha_series(
        &self,
        a: &HermMatrix,
        b: &HermMatrix,
        r_max: Option<u32>,
    ) -> Result<XPolynomial> {
        let key = (
            a.classify_type()?.parts().to_vec(),
            b.classify_type()?.parts().to_vec(),
        );
        if r_max.is_none() {
            if let Some(v) = self.series_memo.lock().unwrap().get(&key) {
                return Ok(v.clone());
            }
        }
        let base = r_max.unwrap_or(b.n as u32);
        let poly = self.series_of(base, base + 8, |r| {
            self.alpha(&a.extend_r(r as usize), b)
        })?;
        if r_max.is_none() {
            self.series_memo.lock().unwrap().insert(key, poly.clone());
        }
        Ok(poly)
    }

    fn node_x(&self, r: u32) -> ExactScalar {
        // X = (-q)^(-2r) = q^(-2r)
        let q = BigRational::from(BigInt::from(self.q()));
        let mut acc = BigRational::one();
        for _ in 0..(2 * r) {
            acc /= &q;
        }
        ExactScalar::Rat(acc)
    }

    fn series_of<F>(&self, mut r_max: u32, r_limit: u32, value_at: F) -> Result<XPolynomial>
    where
        F: Fn(u32) -> Result<ExactScalar>,
    {
        let mut values: Vec<ExactScalar> = Vec::new();
        loop {
            while values.len() <= r_max as usize + 1 {
                values.push(value_at(values.len() as u32)?);
            }
            let pts: Vec<(ExactScalar, ExactScalar)> = (0..=r_max)
                .map(|r| (self.node_x(r), values[r as usize].clone()))
                .collect();
            let poly = crate::exact::interpolate(&pts)?;
            let confirm = &values[r_max as usize + 1];
            if poly.eval(&self.node_x(r_max + 1)) == *confirm {
                return Ok(poly);
            }
            r_max += 2;
            if r_max > r_limit {
                return Err(Error::DegreeNotConfirmed(r_max));
            }
        }
    }

    /// alpha'(A, B) = -d/dX alpha(A, B; X) at X = 1.
    pub fn alpha_prime(&self, a: &HermMatrix, b: &HermMatrix) -> Result<ExactScalar> {
        Ok(self.alpha_series(a, b, None)?.derivative_at_one())
    }

    /// W_{h,t}(B, r): normalized count over the 1_{h,t} column domain.
    pub fn weighted_w(&self, h: usize, t: usize, b: &HermMatrix, r: u32) -> Result<ExactScalar> {
        let n2 = b.n;
        if n2 % 2 != 0 {
            return Err(Error::DimensionMismatch("W needs a 2n x 2n B".into()));
        }
        let n = n2 / 2;
        if h > n || t > n {
            return Err(Error::InvalidArgument(format!(
                "h = {h}, t = {t} out of range 0..={n}"
            )));
        }
        let a = HermMatrix::a_t_matrix(t, n, self.efield.clone())?.extend_r(r as usize);
        let dom = DomainSpec::weighted(h, t, n);
        Ok(self.stabilized(&a, b, &dom)?.normalized)
    }

    /// W_{h,t}(B, r) for r = 0..r_max as a polynomial in X = (-q)^(-2r).
    pub fn weighted_w_series(
        &self,
        h: usize,
        t: usize,
        b: &HermMatrix,
        r_max: Option<u32>,
    ) -> Result<XPolynomial> {
        let base = r_max.unwrap_or(b.n as u32);
        self.series_of(base, base + 8, |r| self.weighted_w(h, t, b, r))
    }

    /// W'_{h,t}(B, 0) = -d/dX W_{h,t}(B, r) at X = 1.
    pub fn weighted_w_prime(&self, h: usize, t: usize, b: &HermMatrix) -> Result<ExactScalar> {
        Ok(self.weighted_w_series(h, t, b, None)?.derivative_at_one())
    }
}

pub fn normalize(raw: &BigUint, q: u64, exponent: i64) -> ExactScalar {
    let num = BigInt::from(raw.clone());
    let mut val = BigRational::from(num);
    let q = BigRational::from(BigInt::from(q));
    if exponent >= 0 {
        for _ in 0..exponent {
            val /= &q;
        }
    } else {
        for _ in 0..(-exponent) {
            val *= &q;
        }
    }
    ExactScalar::Rat(val)
}
