//! Every explicit constant and finite formula: the C and D coefficients of
//! the density-derivative expansions, the beta/delta system and its closed
//! form, self-densities of diagonal lattices, the d_il / K_l / A_jl tables,
//! the F_0 closed forms and their derivative displays, and the linear
//! independence matrices. Everything here evaluates in symbolic mode (an
//! indeterminate q) or at a concrete prime power; constants with two
//! computation paths verify both internally and fail loudly on mismatch.

use crate::density::DensityCtx;
use crate::error::{Error, Result};
use crate::exact::{solve_linear, ExactScalar, QMode, XPolynomial};
use crate::herm::{Partition, YClass};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

// ---------------------------------------------------------------------------
// constant-evaluation context
// ---------------------------------------------------------------------------

/// Evaluation mode plus the cache of the zero-partition coefficients
/// C_{(0^k)} = alpha'(1_k,1_k)/alpha(1_k,1_k), the only constants without a
/// closed form. k = 1, 2 have exact ratios in q and work symbolically;
/// concrete mode computes higher k on demand through the counting oracle.
pub struct ConstCtx {
    pub mode: QMode,
    density: Option<Arc<DensityCtx>>,
    c_zero: Mutex<HashMap<usize, ExactScalar>>,
}

fn c_zero_closed(mode: &QMode, k: usize) -> Option<ExactScalar> {
    let q = mode.q_pow(1);
    match k {
        // alpha'(1_1,1_1)/alpha(1_1,1_1) = -1/(q+1)
        1 => Some(ExactScalar::from_int(-1).div(&q.add(&ExactScalar::one()))),
        // alpha'(1_2,1_2)/alpha(1_2,1_2) = -(q-2)/(q^2-1)
        2 => Some(
            q.sub(&ExactScalar::from_int(2))
                .neg()
                .div(&mode.q_pow(2).sub(&ExactScalar::one())),
        ),
        _ => None,
    }
}

impl ConstCtx {
    pub fn symbolic() -> Self {
        ConstCtx {
            mode: QMode::Symbolic,
            density: None,
            c_zero: Mutex::new(HashMap::new()),
        }
    }

    pub fn concrete(density: Arc<DensityCtx>) -> Self {
        let q = density.q();
        ConstCtx {
            mode: QMode::Concrete(q),
            density: Some(density),
            c_zero: Mutex::new(HashMap::new()),
        }
    }

    pub fn density(&self) -> Option<&Arc<DensityCtx>> {
        self.density.as_ref()
    }

    /// C_{(0^k)}; in symbolic mode only k <= 2 are available.
    pub fn c_zero(&self, k: usize) -> Result<ExactScalar> {
        if k == 0 {
            return Ok(ExactScalar::zero());
        }
        if let Some(v) = self.c_zero.lock().unwrap().get(&k) {
            return Ok(v.clone());
        }
        let value = if let Some(v) = c_zero_closed(&self.mode, k) {
            v
        } else {
            match (&self.mode, &self.density) {
                (QMode::Concrete(_), Some(dc)) => {
                    let ef = dc.efield.clone();
                    let one_k = crate::herm::HermMatrix::identity(k, ef);
                    let num = dc.alpha_prime(&one_k, &one_k)?;
                    let den = dc.alpha(&one_k, &one_k)?;
                    num.div(&den)
                }
                _ => return Err(Error::RequiresConcreteQ),
            }
        };
        self.c_zero.lock().unwrap().insert(k, value.clone());
        Ok(value)
    }
}

/// prod over the given exponents e of (1 - (-q)^e).
fn prod_one_minus_negq<I: IntoIterator<Item = i64>>(mode: &QMode, exps: I) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for e in exps {
        acc = acc.mul(&ExactScalar::one().sub(&mode.neg_q_pow(e)));
    }
    acc
}

/// prod_{l=1}^{k} (1 - (-q)^{-l}), with the empty-product convention for
/// k <= 0.
pub fn prod_desc(mode: &QMode, k: i64) -> ExactScalar {
    if k <= 0 {
        return ExactScalar::one();
    }
    prod_one_minus_negq(mode, (1..=k).map(|l| -l))
}

/// Closed form of W_{n,n}(A_n, 0) = q^{-3n^2} (prod_{l<=n} (1-(-q)^{-l}))^2.
pub fn w_nn_closed(n: usize, mode: &QMode) -> ExactScalar {
    let nn = n as i64;
    mode.q_pow(-3 * nn * nn)
        .mul(&prod_desc(mode, nn))
        .mul(&prod_desc(mode, nn))
}

// ---------------------------------------------------------------------------
// m(a; X) and m(a)
// ---------------------------------------------------------------------------

/// m(a; X) = prod_{i=0}^{a-1} (1 - (-q)^i X); m(0; X) = 1.
pub fn m_poly(a: u32, mode: &QMode) -> XPolynomial {
    let mut acc = XPolynomial::one();
    for i in 0..a {
        acc = acc.mul(&XPolynomial::from_coeffs(vec![
            ExactScalar::one(),
            mode.neg_q_pow(i as i64).neg(),
        ]));
    }
    acc
}

/// m(a) = -d/dX m(a; X) at X = 1: m(0) = 0, m(1) = 1, and
/// prod_{i=1}^{a-1} (1 - (-q)^i) for a >= 2.
pub fn m_deriv(a: u32, mode: &QMode) -> ExactScalar {
    match a {
        0 => ExactScalar::zero(),
        1 => ExactScalar::one(),
        _ => prod_one_minus_negq(mode, 1..=(a as i64 - 1)),
    }
}

// ---------------------------------------------------------------------------
// C and D coefficients
// ---------------------------------------------------------------------------

/// C_lambda for lambda in R_n^{0+}: the coefficient of
/// alpha(A_lambda, B)/alpha(A_lambda, A_lambda) in the expansion of
/// alpha'(1_n, B)/alpha(1_n, 1_n).
pub fn c_const(lambda: &Partition, cc: &ConstCtx) -> Result<ExactScalar> {
    if !lambda.is_nonnegative() {
        return Err(Error::InvalidArgument("C needs nonnegative parts".into()));
    }
    let t = lambda.t() as i64;
    if t == 0 {
        return cc.c_zero(lambda.len());
    }
    let base = prod_one_minus_negq(&cc.mode, 1..=(t - 1));
    Ok(if lambda.val() % 2 == 1 {
        base
    } else {
        base.neg()
    })
}

/// Self-density alpha(B, B) of B = blockdiag(pi^{a_j} 1_{k_j}) with strictly
/// decreasing scale exponents a_j.
pub fn self_density_diag(blocks: &[(i64, usize)], mode: &QMode) -> Result<ExactScalar> {
    for w in blocks.windows(2) {
        if w[0].0 <= w[1].0 {
            return Err(Error::InvalidArgument(
                "self-density blocks need strictly decreasing exponents".into(),
            ));
        }
    }
    let mut acc = ExactScalar::one();
    let mut n_prev: i64 = 0;
    for &(a, k) in blocks {
        let n_j = n_prev + k as i64;
        acc = acc.mul(&mode.q_pow(a * (n_j * n_j - n_prev * n_prev)));
        acc = acc.mul(&prod_desc(mode, k as i64));
        n_prev = n_j;
    }
    Ok(acc)
}

/// alpha(A_lambda, A_lambda) for any lambda, by grouping equal parts.
pub fn self_density_of_partition(lambda: &Partition, mode: &QMode) -> Result<ExactScalar> {
    let mut blocks: Vec<(i64, usize)> = Vec::new();
    for &part in lambda.parts() {
        match blocks.last_mut() {
            Some((a, k)) if *a == part => *k += 1,
            _ => blocks.push((part, 1)),
        }
    }
    self_density_diag(&blocks, mode)
}

/// D_lambda of the main expansion, for lambda in R_{2n}^{0+}.
pub fn d_const(lambda: &Partition, n: usize, cc: &ConstCtx) -> Result<ExactScalar> {
    if lambda.len() != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "D needs a partition of length {}",
            2 * n
        )));
    }
    if !lambda.is_nonnegative() {
        return Err(Error::InvalidArgument("D needs nonnegative parts".into()));
    }
    let mode = &cc.mode;
    let nn = n as i64;
    let e0 = lambda.e0() as i64;
    let e1 = lambda.e1() as i64;
    let lead_num = prod_one_minus_negq(mode, (nn + 1..=2 * nn).map(|l| -l));
    let mut acc = mode
        .q_pow(nn * nn)
        .mul(&lead_num)
        .div(&prod_desc(mode, nn))
        .mul(&c_const(lambda, cc)?);
    let w_nn = w_nn_closed(n, mode);
    for i in 1..=nn {
        let p_lo = (i - e0).max(0);
        let p_hi = i.min(e1);
        for p in p_lo..=p_hi {
            let sub = lambda.ones_to_zeros(p as usize)?.drop_zeros(i as usize)?;
            let c_sub = c_const(&sub, cc)?;
            let fac1 = prod_desc(mode, 2 * nn - i).div(&w_nn);
            let exp2 = (nn + 1) * (i - p) + (3 * nn - i + 1) * (nn - i) / 2 - 4 * nn * nn;
            let sign = if (i - p) % 2 == 0 {
                ExactScalar::one()
            } else {
                ExactScalar::from_int(-1)
            };
            let fac2 = mode.neg_q_pow(exp2).mul(&sign);
            let mut num3 = ExactScalar::one();
            for j in 1..=(nn - p) {
                num3 = num3.mul(&mode.neg_q_pow(nn).sub(&mode.neg_q_pow(j - 1)));
            }
            let mut den3 = ExactScalar::one();
            for j in 1..=(i - p) {
                den3 = den3.mul(&mode.neg_q_pow(j).sub(&ExactScalar::one()));
            }
            for j in 1..=(nn - i) {
                den3 = den3.mul(&mode.neg_q_pow(j).sub(&ExactScalar::one()));
            }
            let fac3 = num3.div(&den3);
            let fac4 = prod_desc(mode, e0)
                .mul(&prod_desc(mode, e1))
                .div(&prod_desc(mode, e0 - i + p).mul(&prod_desc(mode, e1 - p)));
            let fac5 = mode.q_pow(p * (4 * nn - 2 * e0 - p));
            acc = acc.add(
                &c_sub
                    .mul(&fac1)
                    .mul(&fac2)
                    .mul(&fac3)
                    .mul(&fac4)
                    .mul(&fac5),
            );
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// beta system
// ---------------------------------------------------------------------------

/// Solver output and closed form of the beta/delta system for (n, h).
pub struct BetaSystem {
    pub n: usize,
    pub h: usize,
    /// Solution entries in system order:
    /// beta_0^h..beta_{n-1}^h, -beta_0^{2n-h}..-beta_{n-1}^{2n-h}, delta_h.
    pub solution: Vec<ExactScalar>,
    /// Closed-form values of the first 2n solution entries.
    pub closed: Vec<ExactScalar>,
    pub beta_h: Vec<ExactScalar>,
    pub beta_2nh: Vec<ExactScalar>,
    pub delta_h: ExactScalar,
}

fn beta_nodes(mode: &QMode, n: i64) -> Vec<ExactScalar> {
    let mut x = Vec::with_capacity(2 * n as usize + 1);
    for i in 1..=n {
        x.push(mode.neg_q_pow(n + 1 - i));
    }
    for i in (n + 1)..=(2 * n) {
        x.push(mode.neg_q_pow(i - 2 * n - 1));
    }
    x.push(ExactScalar::one());
    x
}

fn beta_alphas(mode: &QMode, n: i64, h: i64) -> Vec<ExactScalar> {
    let mut a = Vec::with_capacity(2 * n as usize + 1);
    for i in 1..=n {
        a.push(mode.neg_q_pow((n + 1 - i) * (2 * n - h)));
    }
    for i in (n + 1)..=(2 * n) {
        a.push(mode.neg_q_pow((2 * n + 1 - i) * (2 * n + h)));
    }
    a.push(ExactScalar::one());
    a
}

fn beta_matrix(mode: &QMode, n: i64, h: i64) -> Vec<Vec<ExactScalar>> {
    let size = (2 * n + 1) as usize;
    let mut m = Vec::with_capacity(size);
    for i in 1..=(2 * n + 1) {
        let mut row = Vec::with_capacity(size);
        let m_it = |t: i64| mode.neg_q_pow((n - t) * (i - (2 * n - h + 1)) - 2 * t * (2 * n - h));
        let n_it = |t: i64| {
            mode.q_pow(-(2 * n - h) * (2 * n - h) + h * h)
                .mul(&mode.neg_q_pow(-(n - t) * (i - (2 * n - h + 1)) - 2 * t * h))
        };
        for t in 0..n {
            row.push(m_it(t));
        }
        for t in 0..n {
            row.push(n_it(t));
        }
        row.push(m_it(n));
        m.push(row);
    }
    m
}

/// Builds the (2n+1)-square system, verifies its Vandermonde factorization,
/// solves it, and cross-checks the first 2n entries against the closed form.
pub fn beta_consts(n: usize, h: usize, mode: &QMode) -> Result<BetaSystem> {
    if n == 0 || h > n {
        return Err(Error::InvalidArgument(format!(
            "beta system needs n >= 1 and 0 <= h <= n, got ({n}, {h})"
        )));
    }
    let nn = n as i64;
    let hh = h as i64;
    let size = 2 * n + 1;
    let mat = beta_matrix(mode, nn, hh);
    let scale = mode.neg_q_pow(-2 * nn * (2 * nn - hh));
    let rhs: Vec<ExactScalar> = (1..=(2 * nn + 1))
        .map(|j| ExactScalar::from_int(j - (2 * nn - hh + 1)).mul(&scale))
        .collect();
    // factorization invariant: (-q)^{2n(2n-h)} B = X a_h entrywise
    let nodes = beta_nodes(mode, nn);
    let alphas = beta_alphas(mode, nn, hh);
    let lhs_scale = mode.neg_q_pow(2 * nn * (2 * nn - hh));
    for (i, row) in mat.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let mut node_pow = ExactScalar::one();
            for _ in 0..i {
                node_pow = node_pow.mul(&nodes[j]);
            }
            if entry.mul(&lhs_scale) != node_pow.mul(&alphas[j]) {
                return Err(Error::BetaCrossCheck(format!(
                    "factorization failed at entry ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let solution = solve_linear(&mat, &rhs)?;
    let mut closed = Vec::with_capacity(2 * n);
    for i in 0..(2 * n) {
        let mut num = ExactScalar::one();
        for (m_idx, x) in nodes.iter().enumerate().take(2 * n) {
            if m_idx != i {
                num = num.mul(&ExactScalar::one().sub(x));
            }
        }
        let mut den = ExactScalar::one();
        for (m_idx, x) in nodes.iter().enumerate().take(size) {
            if m_idx != i {
                den = den.mul(&x.sub(&nodes[i]));
            }
        }
        closed.push(num.div(&den).div(&alphas[i]));
    }
    for i in 0..(2 * n) {
        if solution[i] != closed[i] {
            return Err(Error::BetaCrossCheck(format!(
                "solver and closed form disagree at entry {}",
                i + 1
            )));
        }
    }
    let beta_h = solution[0..n].to_vec();
    let beta_2nh: Vec<ExactScalar> = solution[n..2 * n].iter().map(|x| x.neg()).collect();
    let delta_h = solution[2 * n].clone();
    Ok(BetaSystem {
        n,
        h,
        solution,
        closed,
        beta_h,
        beta_2nh,
        delta_h,
    })
}

// ---------------------------------------------------------------------------
// d_il, K_l, A_jl
// ---------------------------------------------------------------------------

fn m_l_matrix(mode: &QMode, l: usize, n: i64) -> Vec<Vec<ExactScalar>> {
    (0..=l as i64)
        .map(|j| {
            (0..=l as i64)
                .map(|s| mode.neg_q_pow(s * (2 * n - j)))
                .collect()
        })
        .collect()
}

/// d_{0l}..d_{ll}: solved from M_l d = e_last and checked against the
/// closed form.
pub fn d_coeffs(l: usize, n: usize, mode: &QMode) -> Result<Vec<ExactScalar>> {
    if l > 2 * n {
        return Err(Error::InvalidArgument(format!(
            "d coefficients need l <= 2n, got l = {l}, n = {n}"
        )));
    }
    let nn = n as i64;
    let mat = m_l_matrix(mode, l, nn);
    let mut rhs = vec![ExactScalar::zero(); l + 1];
    rhs[l] = ExactScalar::one();
    let solved = solve_linear(&mat, &rhs)?;
    let mut closed = Vec::with_capacity(l + 1);
    for i in 0..=(l as i64) {
        let mut acc = mode.neg_q_pow(-2 * i * nn);
        for m in 0..=(l as i64) {
            if m != i {
                acc = acc.div(&mode.neg_q_pow(-i).sub(&mode.neg_q_pow(-m)));
            }
        }
        closed.push(acc);
    }
    if solved != closed {
        return Err(Error::BetaCrossCheck(format!(
            "d_il solver/closed-form mismatch at l = {l}, n = {n}"
        )));
    }
    Ok(solved)
}

/// K_0..K_{2n}: the recurrence values, cross-checked against the triangular
/// system Delta K = rhs.
pub fn k_consts(n: usize, mode: &QMode) -> Result<Vec<ExactScalar>> {
    if n == 0 {
        return Err(Error::InvalidArgument("K needs n >= 1".into()));
    }
    let nn = n as i64;
    let size = 2 * n + 1;
    let mut d_cols: Vec<Vec<ExactScalar>> = Vec::with_capacity(size);
    for l in 0..size {
        d_cols.push(d_coeffs(l, n, mode)?);
    }
    let mut k = vec![ExactScalar::zero(); size];
    k[n] = mode.neg_q_pow(-4 * nn * nn).div(&d_cols[n][n]);
    for l in 1..=(nn - 1) {
        let idx = (nn - l) as usize;
        let prev = (nn - l + 1) as usize;
        let factor = mode
            .neg_q_pow(nn + l)
            .mul(&mode.neg_q_pow(nn).sub(&mode.neg_q_pow(l - 1)))
            .div(&mode.neg_q_pow(l).sub(&ExactScalar::one()));
        k[idx] = factor
            .mul(&d_cols[prev][prev])
            .mul(&k[prev])
            .div(&d_cols[idx][idx]);
    }
    // cross-check against the triangular system
    let mut delta = vec![vec![ExactScalar::zero(); size]; size];
    for (l, col) in d_cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            delta[i][l] = v.clone();
        }
    }
    let mut rhs = vec![ExactScalar::zero(); size];
    rhs[0] = mode.neg_q_pow(-2 * nn * nn).neg();
    rhs[n] = mode.neg_q_pow(-4 * nn * nn);
    let solved = solve_linear(&delta, &rhs)?;
    if solved != k {
        return Err(Error::BetaCrossCheck(format!(
            "K recurrence/triangular-system mismatch at n = {n}"
        )));
    }
    Ok(k)
}

/// The telescoping identity behind the K recurrence:
/// sum_{1<=j<=k} (-1)^(j-1) prod_{1<=m<=j} ((-q)^{-m+1} - (-q)^{-k}) / (1 - (-q)^{-m}) = 1.
pub fn telescoping_sum(k: u32, mode: &QMode) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for j in 1..=(k as i64) {
        let mut prod = ExactScalar::one();
        for m in 1..=j {
            prod = prod.mul(
                &mode
                    .neg_q_pow(-m + 1)
                    .sub(&mode.neg_q_pow(-(k as i64)))
                    .div(&ExactScalar::one().sub(&mode.neg_q_pow(-m))),
            );
        }
        if (j - 1) % 2 == 1 {
            prod = prod.neg();
        }
        acc = acc.add(&prod);
    }
    acc
}

/// The full (2n+1) x (2n+1) table A[j][l]; column l is
/// M_{2n} (d_{0l}, ..., d_{ll}, 0, ..., 0).
pub fn a_table(n: usize, mode: &QMode) -> Result<Vec<Vec<ExactScalar>>> {
    let size = 2 * n + 1;
    let m2n = m_l_matrix(mode, 2 * n, n as i64);
    let mut table = vec![vec![ExactScalar::zero(); size]; size];
    for l in 0..size {
        let d = d_coeffs(l, n, mode)?;
        for j in 0..size {
            let mut acc = ExactScalar::zero();
            for (i, di) in d.iter().enumerate() {
                acc = acc.add(&m2n[j][i].mul(di));
            }
            table[j][l] = acc;
        }
    }
    for l in 0..size {
        for j in 0..size {
            if j < l && !table[j][l].is_zero() {
                return Err(Error::BetaCrossCheck(format!(
                    "A table not triangular at ({j}, {l})"
                )));
            }
            if j == l && table[j][l] != ExactScalar::one() {
                return Err(Error::BetaCrossCheck(format!(
                    "A table diagonal not 1 at {l}"
                )));
            }
        }
    }
    Ok(table)
}

// ---------------------------------------------------------------------------
// frak b_i^0
// ---------------------------------------------------------------------------

/// Both evaluations of the lattice-side correction constant. The defining
/// ratio is authoritative; the expanded display's (-q)-power prefactor flips
/// its sign whenever i + n is odd, so the two are stored side by side and
/// `agree` records whether they match.
pub struct FrakB {
    pub defining: ExactScalar,
    pub expanded: ExactScalar,
    pub agree: bool,
}

impl FrakB {
    pub fn value(&self) -> ExactScalar {
        self.defining.clone()
    }
}

pub fn frakb0(i: usize, n: usize, mode: &QMode) -> Result<FrakB> {
    if i >= n {
        return Err(Error::InvalidArgument(format!(
            "frak b needs 0 <= i <= n-1, got i = {i}, n = {n}"
        )));
    }
    let nn = n as i64;
    let ii = i as i64;
    let beta = beta_consts(n, 0, mode)?;
    let beta_i = beta.beta_h[i].clone();
    let lam = Partition::new(
        std::iter::repeat(1)
            .take(i)
            .chain(std::iter::repeat(0).take(2 * n - i))
            .collect(),
    );
    let self_density = self_density_of_partition(&lam, mode)?;
    let defining = mode
        .neg_q_pow(-4 * ii * nn)
        .mul(&beta_i)
        .mul(&self_density)
        .div(&w_nn_closed(n, mode));
    let expanded = beta_i
        .mul(&mode.neg_q_pow(-4 * ii * nn + ii * ii + 3 * nn * nn))
        .mul(&prod_desc(mode, 2 * nn - ii))
        .mul(&prod_desc(mode, ii))
        .div(&prod_desc(mode, nn).mul(&prod_desc(mode, nn)));
    let agree = defining == expanded;
    Ok(FrakB {
        defining,
        expanded,
        agree,
    })
}

// ---------------------------------------------------------------------------
// F_0 closed forms
// ---------------------------------------------------------------------------

/// B_k(Y) = sum_i min(0, e_i + k) - min(0, e_i), for k >= 0.
pub fn b_stat(k: i64, y: &YClass) -> i64 {
    debug_assert!(k >= 0);
    y.exponents().iter().map(|&e| 0.min(e + k) - 0.min(e)).sum()
}

/// f(Y) = (-q)^{n sum_j min(0, e_j)}.
pub fn f_weight(y: &YClass, mode: &QMode) -> ExactScalar {
    let n = y.len() as i64;
    let s: i64 = y.exponents().iter().map(|&e| 0.min(e)).sum();
    mode.neg_q_pow(n * s)
}

/// F_0(Y, A_lambda) = (-q)^{sum_i B_{lambda_i}(Y)} f(Y).
pub fn f0_closed(y: &YClass, lambda: &Partition, mode: &QMode) -> ExactScalar {
    let total: i64 = lambda.parts().iter().map(|&li| b_stat(li, y)).sum();
    mode.neg_q_pow(total).mul(&f_weight(y, mode))
}

/// B_alpha(eta) = sum_{i,j} min(alpha_i, eta_j).
pub fn b_pair(alpha: &Partition, eta: &Partition) -> i64 {
    let mut acc = 0;
    for &a in alpha.parts() {
        for &e in eta.parts() {
            acc += a.min(e);
        }
    }
    acc
}

/// F_0(Y_eta, A_alpha) through the eta-statistics route.
pub fn f0_closed_eta(alpha: &Partition, eta: &Partition, mode: &QMode) -> ExactScalar {
    let y = YClass::canonical_for(eta);
    mode.neg_q_pow(b_pair(alpha, eta)).mul(&f_weight(&y, mode))
}

/// F_0'(Y, A_n^[0]) closed display.
pub fn f0_prime_an(y: &YClass, n: usize, mode: &QMode) -> ExactScalar {
    let nn = n as i64;
    let min_sum: i64 = y.exponents().iter().map(|&e| 0.min(e)).sum();
    ExactScalar::from_int(min_sum)
        .mul(&mode.neg_q_pow(-4 * nn * nn))
        .mul(&mode.neg_q_pow(nn * b_stat(1, y)))
        .mul(&f_weight(y, mode))
}

/// F_0'(Y, A_0^[0]) closed display.
pub fn f0_prime_a0(y: &YClass, mode: &QMode) -> ExactScalar {
    let min_sum: i64 = y.exponents().iter().map(|&e| 0.min(e)).sum();
    ExactScalar::from_int(min_sum).mul(&f_weight(y, mode))
}

/// The matrix (F_0(Y_eta, A_alpha)) over R_n^{0k} x R_n^{0k}, rows eta and
/// columns alpha in lexicographic order.
pub fn lin_indep_matrix(n: usize, k: i64, mode: &QMode) -> Vec<Vec<ExactScalar>> {
    let index = Partition::enumerate_r_n0k(n, k);
    index
        .iter()
        .map(|eta| {
            let y = YClass::canonical_for(eta);
            index
                .iter()
                .map(|alpha| f0_closed(&y, alpha, mode))
                .collect()
        })
        .collect()
}

/// Exact nonsingularity by elimination on an identity right-hand side.
pub fn matrix_invertible(m: &[Vec<ExactScalar>]) -> bool {
    let rhs = vec![ExactScalar::zero(); m.len()];
    !matches!(solve_linear(m, &rhs), Err(Error::SingularSystem))
}

// ---------------------------------------------------------------------------
// the two function-level identities of the derivative expansion
// ---------------------------------------------------------------------------

/// Left side of the derivative-difference identity at Y:
/// F_0'(Y, A_n^[0]) - (-q)^{-2n^2} F_0'(Y, A_0^[0]).
pub fn derivative_difference_lhs(y: &YClass, n: usize, mode: &QMode) -> ExactScalar {
    let nn = n as i64;
    f0_prime_an(y, n, mode).sub(&mode.neg_q_pow(-2 * nn * nn).mul(&f0_prime_a0(y, mode)))
}

/// Right side of the same identity through the K and A tables:
/// sum_l K_l * (0 if E_0(Y) < l, else A_{E0(Y), l} (sum_j min(0, e_j)) f(Y)).
pub fn derivative_difference_rhs(
    y: &YClass,
    k: &[ExactScalar],
    a: &[Vec<ExactScalar>],
    mode: &QMode,
) -> ExactScalar {
    let e0 = y.e0();
    let min_sum: i64 = y.exponents().iter().map(|&e| 0.min(e)).sum();
    let base = ExactScalar::from_int(min_sum).mul(&f_weight(y, mode));
    let mut acc = ExactScalar::zero();
    for (l, kl) in k.iter().enumerate() {
        if e0 < l || kl.is_zero() {
            continue;
        }
        acc = acc.add(&kl.mul(&a[e0][l]).mul(&base));
    }
    acc
}

/// One instance of the annihilation identity: for lambda with
/// E_0(lambda) >= l, sum_{i<=l} d_il F_0(Y, A_{lambda_i^+}) equals
/// A_{E0(Y), l} F_0(Y, A_lambda), and in particular vanishes for E_0(Y) < l.
pub fn annihilation_identity_holds(
    lambda: &Partition,
    l: usize,
    y: &YClass,
    d: &[ExactScalar],
    a: &[Vec<ExactScalar>],
    mode: &QMode,
) -> bool {
    let mut lhs = ExactScalar::zero();
    for (i, di) in d.iter().enumerate() {
        let lam_i = match lambda.zeros_to_ones(i) {
            Ok(p) => p,
            Err(_) => return false,
        };
        lhs = lhs.add(&di.mul(&f0_closed(y, &lam_i, mode)));
    }
    let j = y.e0();
    let rhs = if j < l {
        ExactScalar::zero()
    } else {
        a[j][l].mul(&f0_closed(y, lambda, mode))
    };
    lhs == rhs
}
