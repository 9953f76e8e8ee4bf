//! Overlattice enumeration and the lattice-counting side of every identity:
//! counts by type, the overlattice polynomial matching the density ratio, its
//! functional equation, and both displayed forms of the intersection-number
//! formula.
//!
//! A lattice L' containing L (the span of the given Gram basis) is stored by
//! a column basis matrix T over E with T^{-1} integral; enumeration walks
//! index-q^2 steps L -> L + O_E pi^{-1} v and deduplicates by a canonical
//! upper-triangular Hermite form over the local ring.

use crate::closedform::{self, ConstCtx};
use crate::density::DensityCtx;
use crate::error::{Error, Result};
use crate::exact::{ExactScalar, QMode, XPolynomial};
use crate::herm::{EElem, EFieldCtx, HermMatrix, Partition};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap, HashSet};

/// An overlattice of the reference lattice, with its cached invariants.
#[derive(Clone, Debug)]
pub struct Lattice {
    /// k x k column basis of L' in L-coordinates, row-major.
    pub basis: Vec<EElem>,
    /// Gram matrix of L' under the ambient form.
    pub gram: HermMatrix,
    pub invariants: LatticeInvariants,
}

#[derive(Clone, Debug)]
pub struct LatticeInvariants {
    /// Congruence type of the Gram matrix.
    pub type_: Partition,
    /// Number of nonzero type parts.
    pub t: usize,
    /// Sum of the type parts.
    pub val: i64,
    /// Module length of L'/L.
    pub ell: i64,
}

// ---------------------------------------------------------------------------
// canonical Hermite form over the local ring
// ---------------------------------------------------------------------------

fn val_p_rat(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let vp = |mut x: BigInt| {
        let mut v = 0i64;
        x = x.abs();
        loop {
            let (q, rem) = x.div_rem(&p);
            if rem.is_zero() {
                v += 1;
                x = q;
            } else {
                return v;
            }
        }
    };
    Some(vp(r.numer().clone()) - vp(r.denom().clone()))
}

/// Canonical representative of x mod Z_(p): the p-denominator part with
/// numerator reduced into [0, p^e).
fn frac_p(r: &BigRational, p: u64) -> BigRational {
    let v = val_p_rat(r, p).unwrap_or(0);
    if v >= 0 {
        return BigRational::zero();
    }
    let e = (-v) as u32;
    let pe = BigInt::from(p).pow(e);
    let den_val = {
        let d = BigRational::from(r.denom().clone());
        val_p_rat(&d, p).unwrap_or(0) as u32
    };
    let den_p_free = r.denom() / BigInt::from(p).pow(den_val);
    let inv = mod_inverse(&den_p_free.mod_floor(&pe), &pe).expect("unit denominator mod p^e");
    let num = (r.numer() * &inv).mod_floor(&pe);
    BigRational::new(num, pe)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn e_frac(x: &EElem, p: u64) -> EElem {
    EElem::from_pair(frac_p(&x.a, p), frac_p(&x.b, p))
}

fn e_int_part(x: &EElem, p: u64) -> EElem {
    x.sub(&e_frac(x, p))
}

/// Canonical upper-triangular basis of the lattice spanned by the given
/// length-k columns; exact over the localized ring.
fn hnf_canonical(ctx: &EFieldCtx, k: usize, mut cols: Vec<Vec<EElem>>) -> Result<Vec<EElem>> {
    let p = ctx.p;
    let mut result = vec![EElem::zero(); k * k];
    for row in (0..k).rev() {
        let mut best: Option<(usize, i64)> = None;
        for (ci, col) in cols.iter().enumerate() {
            if let Some(v) = col[row].val(ctx) {
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((ci, v));
                }
            }
        }
        let (ci, v) = best
            .ok_or_else(|| Error::InvalidArgument("columns do not span full rank".into()))?;
        let mut pivot_col = cols.swap_remove(ci);
        // normalize by the unit pi^v / entry so the pivot is exactly pi^v
        let unit = EElem::pi_pow(p, v).div(&pivot_col[row], ctx)?;
        for e in pivot_col.iter_mut() {
            *e = e.mul(&unit, ctx);
        }
        for col in cols.iter_mut() {
            if col[row].is_zero() {
                continue;
            }
            let factor = col[row].div(&pivot_col[row], ctx)?;
            for (ei, e) in col.iter_mut().enumerate() {
                *e = e.sub(&factor.mul(&pivot_col[ei], ctx));
            }
        }
        for (ei, e) in pivot_col.iter().enumerate() {
            result[ei * k + row] = e.clone();
        }
    }
    // reduce above-diagonal entries mod the pivot ideals, descending
    for j in (0..k).rev() {
        for i in (0..j).rev() {
            let pivot = result[i * k + i].clone();
            let ratio = result[i * k + j].div(&pivot, ctx)?;
            let int_part = e_int_part(&ratio, p);
            if int_part.is_zero() {
                continue;
            }
            for r in 0..k {
                let sub = int_part.mul(&result[r * k + i], ctx);
                result[r * k + j] = result[r * k + j].sub(&sub);
            }
        }
    }
    Ok(result)
}

fn basis_key(basis: &[EElem]) -> String {
    let mut s = String::new();
    for e in basis {
        s.push_str(&format!("{}|{};", e.a, e.b));
    }
    s
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

fn line_representatives(ctx: &EFieldCtx, k: usize) -> Result<Vec<Vec<EElem>>> {
    if ctx.f != 1 {
        return Err(Error::InvalidArgument(
            "overlattice enumeration needs f = 1".into(),
        ));
    }
    let p = ctx.p;
    let residues: Vec<EElem> = (0..p)
        .flat_map(|a| {
            (0..p).map(move |bb| {
                EElem::from_pair(
                    BigRational::from(BigInt::from(a)),
                    BigRational::from(BigInt::from(bb)),
                )
            })
        })
        .collect();
    let mut lines = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        let mut stack = vec![0usize; free];
        loop {
            let mut v = vec![EElem::zero(); k];
            v[lead] = EElem::one();
            for (off, &ri) in stack.iter().enumerate() {
                v[lead + 1 + off] = residues[ri].clone();
            }
            lines.push(v);
            let mut i = 0;
            loop {
                if i == free {
                    break;
                }
                stack[i] += 1;
                if stack[i] < residues.len() {
                    break;
                }
                stack[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }
    Ok(lines)
}

/// All overlattices L' of L with length(L'/L) <= max_ell, via index-q^2 BFS
/// steps with canonical-form deduplication.
pub fn overlattices_within(b: &HermMatrix, max_ell: i64, cap: usize) -> Result<Vec<Lattice>> {
    let ctx = b.ctx.clone();
    let k = b.n;
    let p = ctx.p;
    let lines = line_representatives(&ctx, k)?;
    let identity: Vec<EElem> = {
        let mut m = vec![EElem::zero(); k * k];
        for i in 0..k {
            m[i * k + i] = EElem::one();
        }
        m
    };
    let mut seen: HashMap<String, ()> = HashMap::new();
    seen.insert(basis_key(&identity), ());
    let mut levels: Vec<(Vec<EElem>, i64)> = vec![(identity.clone(), 0)];
    let mut frontier = vec![identity];
    for ell in 1..=max_ell {
        let mut next = Vec::new();
        for t in &frontier {
            for v in &lines {
                // adjoin the generator pi^{-1} (T v)
                let mut w = vec![EElem::zero(); k];
                for (row, wr) in w.iter_mut().enumerate() {
                    let mut acc = EElem::zero();
                    for (col, vc) in v.iter().enumerate() {
                        if !vc.is_zero() {
                            acc = acc.add(&t[row * k + col].mul(vc, &ctx));
                        }
                    }
                    *wr = acc.mul(&EElem::pi_pow(p, -1), &ctx);
                }
                let mut cols: Vec<Vec<EElem>> = (0..k)
                    .map(|j| (0..k).map(|i| t[i * k + j].clone()).collect())
                    .collect();
                cols.push(w);
                let hnf = hnf_canonical(&ctx, k, cols)?;
                let key = basis_key(&hnf);
                if seen.insert(key, ()).is_none() {
                    levels.push((hnf.clone(), ell));
                    next.push(hnf);
                    if seen.len() > cap {
                        return Err(Error::ExceedsDeskScale(format!(
                            "overlattice enumeration exceeded {cap} candidates"
                        )));
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    let mut out = Vec::with_capacity(levels.len());
    for (basis, ell) in levels {
        let gram = b.congruence(&basis)?;
        let type_ = gram.classify_type()?;
        let invariants = LatticeInvariants {
            t: type_.t(),
            val: type_.val(),
            ell,
            type_,
        };
        out.push(Lattice {
            basis,
            gram,
            invariants,
        });
    }
    Ok(out)
}

/// All O_E-overlattices of L inside pi^{-N} L (N = val det B), optionally
/// filtered to the integral ones.
pub fn overlattices(b: &HermMatrix, integral_only: bool) -> Result<Vec<Lattice>> {
    let vdet = b
        .val_det()
        .ok_or_else(|| Error::InvalidArgument("degenerate B".into()))?;
    let n = vdet.max(0);
    let max_ell = if integral_only {
        // [L':L]^2 divides the determinant-ratio q-power, so 2 ell <= val B
        n / 2
    } else {
        n * b.n as i64
    };
    let all = overlattices_within(b, max_ell, 200_000)?;
    Ok(if integral_only {
        all.into_iter().filter(|l| l.gram.is_integral()).collect()
    } else {
        all
    })
}

/// Counts of integral overlattices grouped by type.
pub fn type_counts(b: &HermMatrix) -> Result<BTreeMap<Partition, usize>> {
    let mut map = BTreeMap::new();
    for l in overlattices(b, true)? {
        *map.entry(l.invariants.type_).or_insert(0) += 1;
    }
    Ok(map)
}

/// Number of overlattices of L with Gram type lambda; equals
/// alpha(A_lambda, B)/alpha(A_lambda, A_lambda).
pub fn count_by_type(b: &HermMatrix, lambda: &Partition) -> Result<usize> {
    let vdet = b
        .val_det()
        .ok_or_else(|| Error::InvalidArgument("degenerate B".into()))?;
    let diff = vdet - lambda.val();
    if diff < 0 || diff % 2 != 0 {
        return Ok(0);
    }
    let all = overlattices_within(b, diff / 2, 200_000)?;
    Ok(all.iter().filter(|l| l.invariants.type_ == *lambda).count())
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

/// The overlattice polynomial sum over L in L' in L'dual of
/// X^{2 l(L'/L)} m(t(L'); X); equals alpha(1_k, B; X)/alpha(1_k, 1_k; X).
pub fn cho_yamauchi_series(b: &HermMatrix, mode: &QMode) -> Result<XPolynomial> {
    let mut acc = XPolynomial::zero();
    for l in overlattices(b, true)? {
        let base = closedform::m_poly(l.invariants.t as u32, mode);
        let shift = 2 * l.invariants.ell as usize;
        let mut coeffs = vec![ExactScalar::zero(); shift];
        coeffs.extend(base.coeffs().iter().cloned());
        acc = acc.add(&XPolynomial::from_coeffs(coeffs));
    }
    Ok(acc)
}

/// Verifies R(X) = (-X)^{val} R(1/X) for R the overlattice polynomial, as an
/// exact identity of Laurent polynomials. Inner Err reports the offending
/// coefficient.
pub fn check_functional_equation(
    b: &HermMatrix,
    mode: &QMode,
) -> Result<std::result::Result<(), String>> {
    let vdet = b
        .val_det()
        .ok_or_else(|| Error::InvalidArgument("degenerate B".into()))?;
    let r = cho_yamauchi_series(b, mode)?;
    let deg = r.degree() as i64;
    for i in 0..=deg.max(vdet) {
        let lhs = r.coeff(i as usize);
        let j = vdet - i;
        let mut rhs = if j < 0 {
            ExactScalar::zero()
        } else {
            r.coeff(j as usize)
        };
        if vdet % 2 != 0 {
            rhs = rhs.neg();
        }
        if lhs != rhs {
            return Ok(Err(format!(
                "coefficient {i}: {lhs} vs mirrored {rhs}"
            )));
        }
    }
    Ok(Ok(()))
}

/// sum over realized types of C_lambda #\{L' of type lambda\}; equals
/// alpha'(1_k, B)/alpha(1_k, 1_k).
pub fn derivative_sum_c(b: &HermMatrix, cc: &ConstCtx) -> Result<ExactScalar> {
    let mut acc = ExactScalar::zero();
    for (lambda, count) in type_counts(b)? {
        let c = closedform::c_const(&lambda, cc)?;
        acc = acc.add(&c.mul(&ExactScalar::from_int(count as i64)));
    }
    Ok(acc)
}

/// Both displayed forms of the intersection-number formula.
pub struct IntersectionResult {
    /// The lattice-form value (authoritative).
    pub value: ExactScalar,
    /// The density-form value, when the oracle was run.
    pub density_value: Option<ExactScalar>,
    /// Whether every density ratio matched its lattice count exactly and the
    /// two forms agree.
    pub density_agrees: Option<bool>,
    /// Realized types with counts and their D coefficients.
    pub terms: Vec<(Partition, usize, ExactScalar)>,
}

/// Evaluates sum_lambda D_lambda #\{L' in A_lambda containing L\} minus
/// sum_{i<n} frakb_i^0 #\{L' in A_{(1^i,0^{2n-i})}\}, and optionally the same
/// expression with density ratios in place of counts.
pub fn intersection_number(
    b: &HermMatrix,
    n: usize,
    cc: &ConstCtx,
    density: Option<&DensityCtx>,
) -> Result<IntersectionResult> {
    if b.n != 2 * n {
        return Err(Error::DimensionMismatch(format!(
            "intersection number needs a {0} x {0} Gram matrix",
            2 * n
        )));
    }
    if !b.is_integral() {
        return Err(Error::NotIntegral);
    }
    let counts = type_counts(b)?;
    let mut value = ExactScalar::zero();
    let mut terms = Vec::new();
    for (lambda, count) in &counts {
        let d = closedform::d_const(lambda, n, cc)?;
        value = value.add(&d.mul(&ExactScalar::from_int(*count as i64)));
        terms.push((lambda.clone(), *count, d));
    }
    let one_i_partition = |i: usize| {
        Partition::new(
            std::iter::repeat(1)
                .take(i)
                .chain(std::iter::repeat(0).take(2 * n - i))
                .collect(),
        )
    };
    for i in 0..n {
        let lam = one_i_partition(i);
        let cnt = counts.get(&lam).copied().unwrap_or(0);
        if cnt == 0 {
            continue;
        }
        let fb = closedform::frakb0(i, n, &cc.mode)?;
        value = value.sub(&fb.value().mul(&ExactScalar::from_int(cnt as i64)));
    }
    let (density_value, density_agrees) = if let Some(dc) = density {
        let mut dv = ExactScalar::zero();
        let mut ratios_match = true;
        for (lambda, count) in &counts {
            let a_lam = HermMatrix::gram_of_partition(lambda, b.ctx.clone());
            let ratio = dc.alpha(&a_lam, b)?.div(&dc.alpha(&a_lam, &a_lam)?);
            if ratio != ExactScalar::from_int(*count as i64) {
                ratios_match = false;
            }
            let d = closedform::d_const(lambda, n, cc)?;
            dv = dv.add(&d.mul(&ratio));
        }
        for i in 0..n {
            let lam = one_i_partition(i);
            let a_lam = HermMatrix::gram_of_partition(&lam, b.ctx.clone());
            let ratio = dc.alpha(&a_lam, b)?.div(&dc.alpha(&a_lam, &a_lam)?);
            let fb = closedform::frakb0(i, n, &cc.mode)?;
            dv = dv.sub(&fb.value().mul(&ratio));
        }
        let agree = ratios_match && dv == value;
        (Some(dv), Some(agree))
    } else {
        (None, None)
    };
    Ok(IntersectionResult {
        value,
        density_value,
        density_agrees,
        terms,
    })
}

/// The rank-2 identity of the final lattice-count display: for a Gram B of
/// (x, y) with val h(y,y) >= 2, the weighted count differences
/// -(q-1)[type (1,1)] - (q^2-1)[both parts >= 2] + [(l,1), l >= 2] +
/// [(l,0), l >= 2], each bracket counting 1_{L'}(x,y) - 1_{L'}(x, y/pi),
/// equal -q #\{(1,1) containing (x,y)\} + #\{(0,0) containing (x, y/pi)\}.
pub fn n1_remark_check(b: &HermMatrix, mode: &QMode) -> Result<bool> {
    if b.n != 2 {
        return Err(Error::DimensionMismatch("remark check needs 2 x 2".into()));
    }
    let vy = b
        .get(1, 1)
        .val(&b.ctx)
        .ok_or_else(|| Error::InvalidArgument("h(y,y) = 0".into()))?;
    if vy < 2 {
        return Err(Error::InvalidArgument(
            "remark check needs val h(y,y) >= 2".into(),
        ));
    }
    // Gram of (x, y/pi)
    let s = [
        EElem::one(),
        EElem::zero(),
        EElem::zero(),
        EElem::pi_pow(b.ctx.p, -1),
    ];
    let b_resc = b.congruence(&s)?;
    let counts = type_counts(b)?;
    let counts_resc = if b_resc.is_integral() {
        type_counts(&b_resc)?
    } else {
        BTreeMap::new()
    };
    let all_types: HashSet<Partition> = counts.keys().chain(counts_resc.keys()).cloned().collect();
    let q = mode.q_pow(1);
    let mut lhs = ExactScalar::zero();
    for lam in &all_types {
        let dc = counts.get(lam).copied().unwrap_or(0) as i64
            - counts_resc.get(lam).copied().unwrap_or(0) as i64;
        if dc == 0 {
            continue;
        }
        let parts = lam.parts();
        let weight = if parts == [1, 1] {
            q.sub(&ExactScalar::one()).neg()
        } else if parts.iter().all(|&x| x >= 2) {
            mode.q_pow(2).sub(&ExactScalar::one()).neg()
        } else if parts.len() == 2 && parts[0] >= 2 && (parts[1] == 1 || parts[1] == 0) {
            ExactScalar::one()
        } else {
            // the (0,0) term cancels in the display
            ExactScalar::zero()
        };
        lhs = lhs.add(&weight.mul(&ExactScalar::from_int(dc)));
    }
    let rhs = q
        .neg()
        .mul(&ExactScalar::from_int(
            counts.get(&Partition::new(vec![1, 1])).copied().unwrap_or(0) as i64,
        ))
        .add(&ExactScalar::from_int(
            counts_resc
                .get(&Partition::new(vec![0, 0]))
                .copied()
                .unwrap_or(0) as i64,
        ));
    Ok(lhs == rhs)
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

    fn part(v: &[i64]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn unimodular_has_no_proper_overlattice() {
        let all = overlattices(&diag(&[0, 0]), true).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].invariants.ell, 0);
    }

    #[test]
    fn rank1_pi2_overlattices() {
        let all = overlattices(&diag(&[2]), true).unwrap();
        let mut types: Vec<Vec<i64>> = all
            .iter()
            .map(|l| l.invariants.type_.parts().to_vec())
            .collect();
        types.sort();
        assert_eq!(types, vec![vec![0], vec![2]]);
    }

    #[test]
    fn diag_pi_pi_counts() {
        // one type-(1,1) lattice (L itself) and q + 1 = 4 unimodular ones
        // among the q^2 + 1 = 10 index-q^2 overlattices
        let b = diag(&[1, 1]);
        let counts = type_counts(&b).unwrap();
        assert_eq!(counts.get(&part(&[1, 1])), Some(&1));
        assert_eq!(counts.get(&part(&[0, 0])), Some(&4));
        assert_eq!(counts.len(), 2);
        let level1 = overlattices_within(&b, 1, 10_000).unwrap();
        assert_eq!(level1.len(), 11);
    }

    #[test]
    fn count_by_type_rank1() {
        let b = diag(&[2]);
        assert_eq!(count_by_type(&b, &part(&[0])).unwrap(), 1);
        assert_eq!(count_by_type(&b, &part(&[2])).unwrap(), 1);
        assert_eq!(count_by_type(&b, &part(&[1])).unwrap(), 0);
    }

    #[test]
    fn cho_yamauchi_examples() {
        let mode = QMode::Concrete(3);
        assert_eq!(
            cho_yamauchi_series(&diag(&[0, 0]), &mode).unwrap(),
            XPolynomial::one()
        );
        let r = cho_yamauchi_series(&diag(&[2]), &mode).unwrap();
        assert_eq!(
            r,
            XPolynomial::from_coeffs(vec![
                ExactScalar::from_int(1),
                ExactScalar::from_int(-1),
                ExactScalar::from_int(1),
            ])
        );
        let r = cho_yamauchi_series(&diag(&[1]), &mode).unwrap();
        assert_eq!(
            r,
            XPolynomial::from_coeffs(vec![ExactScalar::from_int(1), ExactScalar::from_int(-1)])
        );
    }

    #[test]
    fn functional_equation_examples() {
        let mode = QMode::Concrete(3);
        for b in [diag(&[2]), diag(&[0, 0]), diag(&[1, 1]), diag(&[2, 2])] {
            assert!(check_functional_equation(&b, &mode).unwrap().is_ok());
        }
    }

    #[test]
    fn derivative_sum_examples() {
        let cc = ConstCtx::symbolic();
        // B = (pi^3): types (3) and (1): C_3 + C_1 = 2
        let v = derivative_sum_c(&diag(&[3]), &cc).unwrap();
        assert_eq!(v, ExactScalar::from_int(2));
        // B = (pi^2): C_2 + C_0 = -1 - 1/(q+1) = -5/4 at q = 3
        let v = derivative_sum_c(&diag(&[2]), &cc).unwrap();
        assert_eq!(
            v.eval_at_q(3),
            BigRational::new(BigInt::from(-5), BigInt::from(4))
        );
    }

    #[test]
    fn intersection_diag_pi_pi() {
        // D_(1,1) + 4 D_(0,0) - 4 frakb_0^0 = -(q-1) = -2 at q = 3
        let cc = ConstCtx::symbolic();
        let r = intersection_number(&diag(&[1, 1]), 1, &cc, None).unwrap();
        assert_eq!(r.value.eval_at_q(3), BigRational::from(BigInt::from(-2)));
        // odd-valuation B realizes only odd-parity types
        let r2 = intersection_number(&diag(&[1, 0]), 1, &cc, None).unwrap();
        for (lam, _, _) in &r2.terms {
            assert_eq!(lam.val().rem_euclid(2), 1);
        }
        let at = HermMatrix::a_t_matrix(1, 1, ctx3()).unwrap();
        assert!(matches!(
            intersection_number(&at, 1, &cc, None),
            Err(Error::NotIntegral)
        ));
    }

    #[test]
    fn remark_instances() {
        let mode = QMode::Concrete(3);
        // val h(y,y) >= 2: the second diagonal entry carries the valuation
        let un = |parts: &[i64]| HermMatrix::diagonal_pi(parts, ctx3());
        assert!(n1_remark_check(&un(&[0, 2]), &mode).unwrap());
        assert!(n1_remark_check(&un(&[1, 3]), &mode).unwrap());
        assert!(n1_remark_check(&un(&[2, 2]), &mode).unwrap());
        assert!(n1_remark_check(&un(&[1, 1]), &mode).is_err());
    }

    #[test]
    fn hnf_dedup_is_generator_order_independent() {
        let ctx = ctx3();
        let c1 = vec![EElem::pi_pow(3, -1), EElem::zero()];
        let c2 = vec![EElem::one(), EElem::one()];
        // same lattice, different generator presentations
        let mut c2_mixed = c2.clone();
        c2_mixed[0] = c2_mixed[0].add(&c1[0]);
        c2_mixed[1] = c2_mixed[1].add(&c1[1]);
        let h1 = hnf_canonical(&ctx, 2, vec![c1.clone(), c2.clone()]).unwrap();
        let h2 = hnf_canonical(&ctx, 2, vec![c2_mixed, c1]).unwrap();
        assert_eq!(basis_key(&h1), basis_key(&h2));
    }
}
