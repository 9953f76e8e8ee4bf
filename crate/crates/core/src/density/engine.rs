//! Counting kernels for matrix congruences A[X] = B over O_E/pi^D.
//!
//! The workhorse is a row DP: for diagonal A = diag(pi^{e_1},...,pi^{e_m}),
//! X^*AX is a sum of scaled rank-one hermitian contributions, one per row of
//! X. The DP state is the remaining target reduced to its unimodular
//! congruence type mod pi^D (capped elementary-divisor exponents), which is
//! sound because a row-space bijection v -> vV carries a remaining target H
//! to H[V] without changing the count. Transitions are aggregated over norm
//! classes of the row vector: for diagonal H the invariant factors of
//! H - pi^sigma v^*v depend only on the coordinate norms N(v_i) and coordinate
//! valuations, which we enumerate as (valuation j, unit norm u mod p^(s-j))
//! classes of exactly the right resolution.
//!
//! A raw-state DP (`count_mixed_raw`) covers small instances whose dual/
//! integral column structure breaks the uniform-scaling reduction, and a
//! naive full enumeration (`count_naive`) over the Galois ring is kept as an
//! independent cross-check oracle.

use crate::error::{Error, Result};
use crate::gring::{RingCtx, Valuation};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::HashMap;

const VAL_INF: i64 = i64::MAX / 4;

/// One coordinate-norm class of a row vector: the exact scaled value
/// pi^sigma * N(v_i) mod p^P, the valuation of v_i (VAL_INF for v_i = 0), and
/// the number of coordinate values in the class.
#[derive(Clone, Copy)]
struct NormClass {
    term: u128,
    w: i64,
    weight: u64,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TransKey {
    pub parts: Vec<u8>,
    pub sigma: u32,
    pub s: u32,
    pub dcap: u32,
}

pub struct TypedRow {
    /// Full scale exponent of the row: c + e_i + 2*(masked).
    pub sigma: u32,
    /// Whether the row was substituted v = pi*w (uniform dual-column mask).
    pub masked: bool,
}

pub struct TypedProblem {
    pub k: usize,
    /// D = d + c.
    pub dcap: u32,
    /// Ascending capped parts of pi^c * B.
    pub target: Vec<u8>,
    pub rows: Vec<TypedRow>,
}

fn pow_u128(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128).expect("modulus overflow");
    }
    acc
}

fn val_u128(mut x: u128, p: u64, cap: u32) -> i64 {
    if x == 0 {
        return VAL_INF;
    }
    let p = p as u128;
    let mut v = 0i64;
    while x % p == 0 {
        x /= p;
        v += 1;
        if v >= cap as i64 {
            return VAL_INF;
        }
    }
    v
}

/// All norm classes of one coordinate over O_E/pi^s (f = 1, q = p).
fn norm_classes(p: u64, s: u32, sigma: u32, p_pow_cap: u128) -> Vec<NormClass> {
    let mut out = Vec::new();
    let pi_sigma = pow_u128(p, sigma) % p_pow_cap;
    for j in 0..s {
        let m = pow_u128(p, s - j);
        let p2j = pow_u128(p, 2 * j);
        // fiber of the norm over a unit class mod p^(s-j): q^(s-j-1) (q+1)
        let weight_u128 = pow_u128(p, s - j - 1) * (p as u128 + 1);
        let weight = u64::try_from(weight_u128).expect("class weight overflow");
        let mut u: u128 = 1;
        while u < m {
            if u % p as u128 != 0 {
                let nu = p2j * u;
                out.push(NormClass {
                    term: (nu % p_pow_cap) * pi_sigma % p_pow_cap,
                    w: j as i64,
                    weight,
                });
            }
            u += 1;
        }
    }
    out.push(NormClass {
        term: 0,
        w: VAL_INF,
        weight: 1,
    });
    out
}

/// Capped congruence type of diag(pi^h) - pi^sigma v^*v from per-coordinate
/// norm data, via the valuations of the gcds of j x j minors.
fn capped_type(
    hparts: &[u8],
    hvals: &[u128],
    picked: &[NormClass],
    sigma: u32,
    dcap: u32,
    p: u64,
    p_pow_cap: u128,
    pcap: u32,
) -> Vec<u8> {
    let k = hparts.len();
    let full = 1usize << k;
    // subset DP for principal minors: P_{I+j} = h_j P_I - term_j * prodh_I
    let mut prodh = [0u128; 16];
    let mut pi_val = [0u128; 16];
    prodh[0] = 1 % p_pow_cap;
    pi_val[0] = 1 % p_pow_cap;
    for idx in 1..full {
        let j = idx.trailing_zeros() as usize;
        let rest = idx & (idx - 1);
        let hj = hvals[j];
        let sub = picked[j].term * prodh[rest] % p_pow_cap;
        pi_val[idx] = (hj * pi_val[rest] % p_pow_cap + p_pow_cap - sub) % p_pow_cap;
        prodh[idx] = hj * prodh[rest] % p_pow_cap;
    }
    let part_val = |i: usize| -> i64 {
        if hparts[i] >= dcap as u8 {
            VAL_INF
        } else {
            hparts[i] as i64
        }
    };
    let mut out = Vec::with_capacity(k);
    let mut gprev: i64 = 0;
    for jj in 1..=k {
        let mut best = VAL_INF;
        for idx in 1..full {
            if (idx as u32).count_ones() as usize == jj {
                let v = val_u128(pi_val[idx], p, pcap);
                if v < best {
                    best = v;
                }
            }
        }
        // cross minors: sigma + w_{i0} + w_{j0} + sum of smallest (jj-1)
        // h-parts over the remaining coordinates
        if jj + 1 <= k {
            for i0 in 0..k {
                for j0 in (i0 + 1)..k {
                    if picked[i0].w >= VAL_INF || picked[j0].w >= VAL_INF {
                        continue;
                    }
                    let mut rest: Vec<i64> = (0..k)
                        .filter(|&i| i != i0 && i != j0)
                        .map(part_val)
                        .collect();
                    rest.sort_unstable();
                    let mut cand = sigma as i64 + picked[i0].w + picked[j0].w;
                    for r in rest.iter().take(jj - 1) {
                        cand = cand.saturating_add(*r);
                    }
                    if cand < best {
                        best = cand;
                    }
                }
            }
        }
        if best >= gprev + dcap as i64 {
            while out.len() < k {
                out.push(dcap as u8);
            }
            break;
        }
        let t = best - gprev;
        debug_assert!(t >= *out.last().map(|&x| x as i64).get_or_insert(0));
        out.push(t as u8);
        gprev = best;
    }
    while out.len() < k {
        out.push(dcap as u8);
    }
    out
}

/// Flat distribution indexed by the type key digits in base (dcap + 1).
fn flat_index(parts: &[u8], dcap: u32) -> usize {
    let base = dcap as usize + 1;
    let mut idx = 0usize;
    for &t in parts {
        idx = idx * base + t as usize;
    }
    idx
}

fn unflatten(mut idx: usize, k: usize, dcap: u32) -> Vec<u8> {
    let base = dcap as usize + 1;
    let mut out = vec![0u8; k];
    for i in (0..k).rev() {
        out[i] = (idx % base) as u8;
        idx /= base;
    }
    out
}

/// Distribution of the new state over all row values v in (O_E/pi^s)^k.
pub fn build_transition(p: u64, key: &TransKey) -> Vec<(Vec<u8>, BigUint)> {
    let k = key.parts.len();
    let dcap = key.dcap;
    if key.s == 0 {
        return vec![(key.parts.clone(), BigUint::one())];
    }
    let pcap = (k as u32) * dcap + 2;
    let p_pow_cap = pow_u128(p, pcap);
    let hvals: Vec<u128> = key
        .parts
        .iter()
        .map(|&t| {
            if t as u32 >= dcap {
                0
            } else {
                pow_u128(p, t as u32)
            }
        })
        .collect();
    let classes = norm_classes(p, key.s, key.sigma, p_pow_cap);
    let dist_len = (dcap as usize + 1).pow(k as u32);
    let merged: Vec<u128> = if k == 2 {
        build_transition_k2(p, key, &hvals, &classes, p_pow_cap, pcap, dist_len)
    } else {
        build_transition_generic(p, key, &hvals, &classes, p_pow_cap, pcap, dist_len)
    };
    let mut out: Vec<(Vec<u8>, BigUint)> = merged
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(idx, &v)| (unflatten(idx, k, dcap), BigUint::from(v)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Rank-2 fast path: the capped type of a 2 x 2 hermitian is (t1, t2) with
/// t1 the minimal entry valuation and t2 = val(det) - t1, both capped.
#[allow(clippy::too_many_arguments)]
fn build_transition_k2(
    p: u64,
    key: &TransKey,
    hvals: &[u128],
    classes: &[NormClass],
    p_pow_cap: u128,
    pcap: u32,
    dist_len: usize,
) -> Vec<u128> {
    let dcap = key.dcap;
    let d = dcap as i64;
    let (h1, h2) = (hvals[0], hvals[1]);
    let det_base = h1 * h2 % p_pow_cap;
    let n = classes.len();
    // per-class tables for each slot
    let mut diag0 = vec![0i64; n];
    let mut diag1 = vec![0i64; n];
    let mut det0 = vec![0u128; n];
    let mut det1 = vec![0u128; n];
    let mut wv = vec![0i64; n];
    let mut wgt = vec![0u64; n];
    for (i, c) in classes.iter().enumerate() {
        diag0[i] = val_u128((h1 + p_pow_cap - c.term) % p_pow_cap, p, pcap);
        diag1[i] = val_u128((h2 + p_pow_cap - c.term) % p_pow_cap, p, pcap);
        det0[i] = c.term * h2 % p_pow_cap;
        det1[i] = c.term * h1 % p_pow_cap;
        wv[i] = c.w;
        wgt[i] = c.weight;
    }
    let sigma = key.sigma as i64;
    let work = |range: std::ops::Range<usize>| -> Vec<u128> {
        let mut dist = vec![0u128; dist_len];
        let base = dcap as usize + 1;
        for i1 in range {
            let d0 = diag0[i1];
            let s0 = det0[i1];
            let w1 = wv[i1];
            let wt1 = wgt[i1] as u128;
            for i2 in 0..n {
                let cross = sigma.saturating_add(w1).saturating_add(wv[i2]);
                let t1 = d0.min(diag1[i2]).min(cross);
                let idx = if t1 >= d {
                    dist_len - 1 // both capped
                } else {
                    let det = (det_base + 2 * p_pow_cap - s0 - det1[i2]) % p_pow_cap;
                    let g2 = val_u128(det, p, pcap);
                    let t2 = if g2 >= t1 + d { d } else { g2 - t1 };
                    (t1 as usize) * base + t2 as usize
                };
                dist[idx] += wt1 * wgt[i2] as u128;
            }
        }
        dist
    };
    if n > 512 {
        let threads = rayon::current_num_threads().max(1);
        let chunk = (n / (4 * threads)).max(1);
        let ranges: Vec<std::ops::Range<usize>> = (0..n)
            .step_by(chunk)
            .map(|s| s..(s + chunk).min(n))
            .collect();
        ranges
            .into_par_iter()
            .map(work)
            .reduce(
                || vec![0u128; dist_len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    } else {
        work(0..n)
    }
}

#[allow(clippy::too_many_arguments)]
fn build_transition_generic(
    p: u64,
    key: &TransKey,
    hvals: &[u128],
    classes: &[NormClass],
    p_pow_cap: u128,
    pcap: u32,
    dist_len: usize,
) -> Vec<u128> {
    let k = key.parts.len();
    let dcap = key.dcap;
    let single = |chunk: &[NormClass]| -> Vec<u128> {
        let mut dist = vec![0u128; dist_len];
        let mut picked: Vec<NormClass> = vec![classes[0]; k];
        let mut stack = vec![0usize; k];
        for c0 in chunk {
            picked[0] = *c0;
            if k == 1 {
                let t = capped_type(&key.parts, hvals, &picked, key.sigma, dcap, p, p_pow_cap, pcap);
                dist[flat_index(&t, dcap)] += c0.weight as u128;
                continue;
            }
            stack.iter_mut().for_each(|x| *x = 0);
            loop {
                for i in 1..k {
                    picked[i] = classes[stack[i]];
                }
                let mut weight = c0.weight as u128;
                for i in 1..k {
                    weight *= picked[i].weight as u128;
                }
                let t = capped_type(&key.parts, hvals, &picked, key.sigma, dcap, p, p_pow_cap, pcap);
                dist[flat_index(&t, dcap)] += weight;
                let mut i = 1;
                loop {
                    if i == k {
                        break;
                    }
                    stack[i] += 1;
                    if stack[i] < classes.len() {
                        break;
                    }
                    stack[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
        dist
    };
    let total: f64 = (classes.len() as f64).powi(k as i32);
    if total > 200_000.0 && classes.len() > 8 {
        let chunk = (classes.len() / (8 * rayon::current_num_threads().max(1))).max(1);
        classes
            .par_chunks(chunk)
            .map(single)
            .reduce(
                || vec![0u128; dist_len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    } else {
        single(classes)
    }
}

/// Row DP over canonical types. Returns the raw count of X mod pi^dcap
/// solving the congruence (the caller applies the normalization).
pub fn count_typed<F>(prob: &TypedProblem, q: u64, mut transition: F) -> Result<BigUint>
where
    F: FnMut(&TransKey) -> Vec<(Vec<u8>, BigUint)>,
{
    let k = prob.k;
    let dcap = prob.dcap;
    let mut states: HashMap<Vec<u8>, BigUint> = HashMap::new();
    states.insert(prob.target.clone(), BigUint::one());
    let mut free_exp: u64 = 0;
    for row in &prob.rows {
        let delta = if row.masked { 1u32 } else { 0 };
        let s = dcap.saturating_sub(row.sigma);
        debug_assert!(s + delta <= dcap);
        free_exp += 2 * (k as u64) * ((dcap - delta - s) as u64);
        if s == 0 {
            continue;
        }
        let mut next: HashMap<Vec<u8>, BigUint> = HashMap::new();
        for (h, w) in states.iter() {
            let key = TransKey {
                parts: h.clone(),
                sigma: row.sigma,
                s,
                dcap,
            };
            for (h2, c) in transition(&key) {
                *next.entry(h2).or_insert_with(BigUint::zero) += w * &c;
            }
        }
        states = next;
    }
    let zero_state = vec![dcap as u8; k];
    let hits = states.remove(&zero_state).unwrap_or_else(BigUint::zero);
    Ok(hits * BigUint::from(q).pow(free_exp.try_into().unwrap_or(u32::MAX)))
}

// ---------------------------------------------------------------------------
// raw-state DP for mixed dual/integral column patterns (f = 1)
// ---------------------------------------------------------------------------

pub struct MixedRow {
    /// c + e_i, without mask shifts.
    pub sigma: u32,
    /// Per-column: does this row's coordinate of that column lie in pi*O_E?
    pub col_masked: Vec<bool>,
}

pub struct MixedProblem {
    pub k: usize,
    pub dcap: u32,
    /// Diagonal pi-power parts of pi^c B (length k), already clamped to
    /// [0, dcap]; part >= dcap means the zero class.
    pub target: Vec<u8>,
    pub rows: Vec<MixedRow>,
}

/// Packed hermitian matrix mod p^D for f = 1: k diagonal residues then
/// (a, b) pairs for each i < j.
type RawState = Vec<u64>;

fn raw_target(parts: &[u8], dcap: u32, p: u64) -> RawState {
    let k = parts.len();
    let pd = pow_u128(p, dcap) as u64;
    let mut st = vec![0u64; k + k * (k - 1)];
    for (i, &t) in parts.iter().enumerate() {
        st[i] = if (t as u32) >= dcap {
            0
        } else {
            (pow_u128(p, t as u32) as u64) % pd
        };
    }
    st
}

/// Contribution of one row vector v (pairs (a_i, b_i) mod p^s) with scale
/// sigma: entries of pi^sigma v^* v mod p^D.
#[allow(clippy::too_many_arguments)]
fn row_contribution(
    coords: &[(u64, u64)],
    sigma: u32,
    k: usize,
    pd: u64,
    c0: u64,
    p: u64,
) -> RawState {
    let scale = pow_u128(p, sigma) % pd as u128;
    let mut st = vec![0u64; k + k * (k - 1)];
    let m = pd as u128;
    for i in 0..k {
        let (a, b) = coords[i];
        // N(v_i) = a^2 + c0 b^2
        let n = (a as u128 * a as u128 + c0 as u128 * b as u128 * b as u128) % m;
        st[i] = (n * scale % m) as u64;
    }
    let mut idx = k;
    for i in 0..k {
        for j in (i + 1)..k {
            let (ai, bi) = coords[i];
            let (aj, bj) = coords[j];
            // conj(v_i) v_j = (a_i a_j + c0 b_i b_j) + (a_i b_j - b_i a_j) w
            let re = (ai as u128 * aj as u128 + c0 as u128 * bi as u128 * bj as u128) % m;
            let im = (ai as u128 * bj as u128 % m + m - (bi as u128 * aj as u128 % m)) % m;
            st[idx] = (re * scale % m) as u64;
            st[idx + 1] = (im * scale % m) as u64;
            idx += 2;
        }
    }
    st
}

fn state_sub(a: &RawState, b: &RawState, pd: u64) -> RawState {
    a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| (x + pd - y) % pd)
        .collect()
}

/// Enumerate all row values of a mixed row at effective precision s and
/// fold them as contributions.
fn mixed_row_values(
    row: &MixedRow,
    s: u32,
    k: usize,
    pd: u64,
    c0: u64,
    p: u64,
) -> HashMap<RawState, u64> {
    let ps = pow_u128(p, s) as u64;
    let mut dist: HashMap<RawState, u64> = HashMap::new();
    // coordinate spaces: masked -> p * (0..p^(s-1)) twice, free -> 0..p^s twice
    let coord_vals: Vec<Vec<(u64, u64)>> = (0..k)
        .map(|cidx| {
            let masked = row.col_masked[cidx];
            let (step, count) = if masked { (p, ps / p) } else { (1, ps) };
            let mut v = Vec::with_capacity((count * count) as usize);
            for a in 0..count {
                for b in 0..count {
                    v.push((a * step % ps, b * step % ps));
                }
            }
            v
        })
        .collect();
    let mut picked = vec![(0u64, 0u64); k];
    let mut stack = vec![0usize; k];
    loop {
        for i in 0..k {
            picked[i] = coord_vals[i][stack[i]];
        }
        let contrib = row_contribution(&picked, row.sigma, k, pd, c0, p);
        *dist.entry(contrib).or_insert(0) += 1;
        let mut i = 0;
        loop {
            if i == k {
                break;
            }
            stack[i] += 1;
            if stack[i] < coord_vals[i].len() {
                break;
            }
            stack[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    dist
}

/// Raw-state DP with per-(row, column) masks. Exact but only for desk-scale
/// instances; the last row is folded by lookup instead of fan-out.
pub fn count_mixed_raw(prob: &MixedProblem, p: u64, c0: u64, state_cap: usize) -> Result<BigUint> {
    let k = prob.k;
    let dcap = prob.dcap;
    let pd = pow_u128(p, dcap) as u64;
    let q = p; // f = 1
    let mut free_exp: u64 = 0;
    let mut effective: Vec<(usize, u32)> = Vec::new();
    for (i, row) in prob.rows.iter().enumerate() {
        let s = dcap.saturating_sub(row.sigma);
        let masked_count = row.col_masked.iter().filter(|&&m| m).count() as u64;
        if s == 0 {
            // whole row free: q^{2(dcap)} per free coordinate, q^{2(dcap-1)}
            // per masked coordinate
            free_exp += 2 * (k as u64) * dcap as u64 - 2 * masked_count;
            continue;
        }
        // classes live mod pi^s; masked and free coordinates both lift with
        // q^{2(dcap - s)} representatives per class
        free_exp += 2 * (k as u64) * ((dcap - s) as u64);
        let size = {
            let mut total: f64 = 1.0;
            for &m in &row.col_masked {
                let per = if m {
                    (pow_u128(p, s - 1) as f64).powi(2)
                } else {
                    (pow_u128(p, s) as f64).powi(2)
                };
                total *= per;
            }
            total
        };
        if size > 3.0e8 {
            return Err(Error::ExceedsDeskScale(format!(
                "mixed row enumeration of ~{size:.2e} values"
            )));
        }
        effective.push((i, s));
    }
    if effective.is_empty() {
        // all rows free: solution iff target is the zero class
        let target = raw_target(&prob.target, dcap, p);
        let zero = vec![0u64; target.len()];
        return Ok(if target == zero {
            BigUint::from(q).pow(u32::try_from(free_exp).unwrap())
        } else {
            BigUint::zero()
        });
    }
    let mut states: HashMap<RawState, BigUint> = HashMap::new();
    states.insert(raw_target(&prob.target, dcap, p), BigUint::one());
    for (pos, &(ridx, s)) in effective.iter().enumerate() {
        let row = &prob.rows[ridx];
        let dist = mixed_row_values(row, s, k, pd, c0, p);
        let last = pos + 1 == effective.len();
        if last {
            let mut acc = BigUint::zero();
            for (h, w) in states.iter() {
                if let Some(c) = dist.get(h) {
                    acc += w * BigUint::from(*c);
                }
            }
            return Ok(acc * BigUint::from(q).pow(u32::try_from(free_exp).unwrap()));
        }
        let mut next: HashMap<RawState, BigUint> = HashMap::new();
        for (h, w) in states.iter() {
            for (contrib, c) in dist.iter() {
                let h2 = state_sub(h, contrib, pd);
                *next.entry(h2).or_insert_with(BigUint::zero) += w * BigUint::from(*c);
            }
            if next.len() > state_cap {
                return Err(Error::ExceedsDeskScale(format!(
                    "raw DP exceeded {state_cap} states"
                )));
            }
        }
        states = next;
    }
    unreachable!("loop returns on the last effective row");
}

// ---------------------------------------------------------------------------
// naive full enumeration over the Galois ring (any f); cross-check oracle
// ---------------------------------------------------------------------------

/// Count X in M_{m,k}(O_E/pi^dcap) with the per-(row, column) masks satisfying
/// sum_i pi^{sigma_i} conj(X_{i,j}) X_{i,l} = target_{j,l} mod pi^dcap, by full
/// enumeration. `target` entries are Galois-ring elements of the scaled B.
pub fn count_naive(
    ring: &RingCtx,
    sigmas: &[u32],
    masks: &[Vec<bool>],
    target: &[crate::gring::RingElem],
    k: usize,
) -> Result<BigUint> {
    let m = sigmas.len();
    let elems: Vec<crate::gring::RingElem> = ring.enumerate().collect();
    let total_bits = (elems.len() as f64).log2() * (m * k) as f64;
    if total_bits > 27.0 {
        return Err(Error::ExceedsDeskScale(format!(
            "naive enumeration of 2^{total_bits:.1} matrices"
        )));
    }
    let total: u64 = (elems.len() as u64).pow((m * k) as u32);
    let scaled: Vec<crate::gring::RingElem> = sigmas
        .iter()
        .map(|&s| {
            let mut acc = ring.one();
            for _ in 0..s {
                acc = ring.scale(&acc, ring.p);
            }
            acc
        })
        .collect();
    let mut hits: u64 = 0;
    let mut entries = vec![ring.zero(); m * k];
    'outer: for code in 0..total {
        let mut c = code;
        for e in entries.iter_mut() {
            *e = elems[(c % elems.len() as u64) as usize].clone();
            c /= elems.len() as u64;
        }
        // masks
        for i in 0..m {
            for j in 0..k {
                if masks[i][j] {
                    match ring.valuation(&entries[i * k + j]) {
                        Valuation::Finite(0) => continue 'outer,
                        _ => {}
                    }
                }
            }
        }
        // congruence
        let mut ok = true;
        'cong: for j in 0..k {
            for l in j..k {
                let mut acc = ring.zero();
                for i in 0..m {
                    let prod = ring.mul(
                        &ring.conj(&entries[i * k + j]),
                        &entries[i * k + l],
                    );
                    acc = ring.add(&acc, &ring.mul(&scaled[i], &prod));
                }
                if acc != target[j * k + l] {
                    ok = false;
                    break 'cong;
                }
            }
        }
        if ok {
            hits += 1;
        }
    }
    Ok(BigUint::from(hits))
}
