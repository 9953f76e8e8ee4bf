//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Every comparison here is exact (rational equality); there are no
//! tolerances anywhere.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use hermlab::closedform::{self, ConstCtx};
use hermlab::density::DensityCtx;
use hermlab::exact::{ExactScalar, QMode};
use hermlab::herm::{HermMatrix, Partition, YClass};
use hermlab::lattice;
use hermlab::suites::{self, SuiteCtx};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::sync::{Arc, OnceLock};

fn ctx() -> &'static SuiteCtx {
    static CTX: OnceLock<SuiteCtx> = OnceLock::new();
    CTX.get_or_init(|| SuiteCtx::new(3, 1).expect("q = 3 context"))
}

fn diag(parts: &[i64]) -> HermMatrix {
    HermMatrix::gram_of_partition(
        &Partition::new(parts.to_vec()),
        ctx().density.efield.clone(),
    )
}

fn report_line(criterion: u32, pass: bool, what: &str) {
    println!(
        "criterion {criterion}: {} — {what} (exact)",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {what}");
}

#[test]
fn criterion_01_anchor_value_reproduction() {
    let dc = &ctx().density;
    let q = 3i64;
    let mut ok = true;
    ok &= dc.alpha(&diag(&[0]), &diag(&[0])).unwrap() == ExactScalar::ratio(q + 1, q);
    ok &= dc.alpha(&diag(&[0, 0]), &diag(&[0, 0])).unwrap()
        == ExactScalar::ratio((q + 1) * (q * q - 1), q.pow(3));
    for k in 1..=4u32 {
        ok &= dc.alpha(&diag(&[k as i64]), &diag(&[k as i64])).unwrap()
            == ExactScalar::from_int(q.pow(k - 1) * (q + 1));
    }
    for n in 1..=2usize {
        let an = HermMatrix::a_t_matrix(n, n, ctx().density.efield.clone()).unwrap();
        let w = dc.weighted_w(n, n, &an, 0).unwrap();
        ok &= w == closedform::w_nn_closed(n, &QMode::Concrete(3));
    }
    // the n = 1 case of the anchor is the (q+1)^2/q^5 value
    let a1 = HermMatrix::a_t_matrix(1, 1, ctx().density.efield.clone()).unwrap();
    ok &= dc.weighted_w(1, 1, &a1, 0).unwrap().to_string() == "16/243";
    // rank-1 values again at q = 5
    let dc5 = DensityCtx::new(5, 1).unwrap();
    let ef5 = dc5.efield.clone();
    let d5 = |k: i64| {
        HermMatrix::gram_of_partition(&Partition::new(vec![k]), ef5.clone())
    };
    ok &= dc5.alpha(&d5(0), &d5(0)).unwrap() == ExactScalar::ratio(6, 5);
    for k in 1..=4u32 {
        ok &= dc5.alpha(&d5(k as i64), &d5(k as i64)).unwrap()
            == ExactScalar::from_int(5i64.pow(k - 1) * 6);
    }
    report_line(
        1,
        ok,
        "alpha and W anchors reproduced by brute-force counting at q = 3 (q = 5 rank 1)",
    );
}

#[test]
fn criterion_02_derivative_anchors() {
    let dc = &ctx().density;
    let one1 = diag(&[0]);
    let one2 = diag(&[0, 0]);
    let r1 = dc
        .alpha_prime(&one1, &one1)
        .unwrap()
        .div(&dc.alpha(&one1, &one1).unwrap());
    let r2 = dc
        .alpha_prime(&one2, &one2)
        .unwrap()
        .div(&dc.alpha(&one2, &one2).unwrap());
    let ok = r1 == ExactScalar::ratio(-1, 4) && r2 == ExactScalar::ratio(-1, 8);
    report_line(2, ok, "derivative ratios -1/4 and -1/8 via series interpolation");
}

#[test]
fn criterion_03_lattice_density_oracle_equivalence() {
    let report = suites::run_suite("lattice-oracle", ctx()).unwrap();
    report_line(
        3,
        report.all_pass(),
        &format!(
            "count-by-type times self-density equals density on {} checks (rank-2 corpus incl. non-diagonal)",
            report.checks.len()
        ),
    );
}

#[test]
fn criterion_04_overlattice_polynomial_and_functional_equation() {
    let cy = suites::run_suite("cy", ctx()).unwrap();
    let fe = suites::run_suite("funceq", ctx()).unwrap();
    report_line(
        4,
        cy.all_pass() && fe.all_pass(),
        &format!(
            "series factorization on {} instances, functional equation on {} even-valuation instances",
            cy.checks.len(),
            fe.checks.len()
        ),
    );
}

#[test]
fn criterion_05_constants_cross_paths() {
    let report = suites::run_suite("consts", ctx()).unwrap();
    report_line(
        5,
        report.all_pass(),
        &format!(
            "beta/d/K/A cross-path checks symbolic in q, telescoping to k = 12 ({} checks)",
            report.checks.len()
        ),
    );
}

#[test]
fn criterion_06_rank2_coefficient_table() {
    // all six rows, a representative per row, at q in {3, 5, 7}
    let rows: Vec<(Vec<i64>, fn(i64) -> BigRational)> = vec![
        (vec![3, 2], |q| BigRational::from(BigInt::from(q * q - 1))),
        (vec![2, 0], |_| BigRational::from(BigInt::from(1))),
        (vec![2, 1], |_| BigRational::from(BigInt::from(-1))),
        (vec![1, 1], |q| BigRational::from(BigInt::from(-(q - 1)))),
        (vec![1, 0], |q| {
            BigRational::new(BigInt::from(-(q + 2)), BigInt::from(q + 1))
        }),
        (vec![0, 0], |q| {
            BigRational::new(BigInt::from(1), BigInt::from(q + 1))
        }),
    ];
    let cc = ConstCtx::symbolic();
    let mut ok = true;
    for (lam, expect) in rows {
        let d = closedform::d_const(&Partition::new(lam), 1, &cc).unwrap();
        for q in [3i64, 5, 7] {
            ok &= d.eval_at_q(q as u64) == expect(q);
        }
    }
    report_line(
        6,
        ok,
        "the six coefficient rows at n = 1 reproduced at q = 3, 5, 7",
    );
}

#[test]
fn criterion_07_main_derivative_identity() {
    let report = suites::run_suite("thm47", ctx()).unwrap();
    report_line(
        7,
        report.all_pass(),
        "weighted derivative ratio equals the D-weighted lattice count on three even instances",
    );
}

#[test]
fn criterion_08_function_level_identities() {
    let report = suites::run_suite("f0", ctx()).unwrap();
    report_line(
        8,
        report.all_pass(),
        "annihilation and derivative-difference identities on Y exponents in [-4,4], n <= 2; restriction matrices invertible",
    );
}

#[test]
fn criterion_09_intersection_evaluator() {
    let conj = suites::run_suite("conj49", ctx()).unwrap();
    let remark = suites::run_suite("remark-n1", ctx()).unwrap();
    report_line(
        9,
        conj.all_pass() && remark.all_pass(),
        "both displayed forms agree, parity terms vanish, rank-2 remark holds on three instances",
    );
}

#[test]
fn criterion_10_determinism() {
    // two consecutive full verify runs of the CLI produce byte-identical
    // data sections (the report's timing section is outside the data section)
    let bin = env!("CARGO_BIN_EXE_hermlab");
    let cache = std::env::temp_dir().join(format!("hermlab-acc-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&cache);
    let run = || {
        let out = std::process::Command::new(bin)
            .args(["verify", "all", "--q", "3", "--format", "json"])
            .arg("--cache")
            .arg(&cache)
            .output()
            .expect("spawn hermlab");
        assert!(out.status.success(), "verify all failed");
        let text = String::from_utf8(out.stdout).expect("utf-8 report");
        let cut = text.find("\"timing\"").expect("timing section present");
        text[..cut].to_string()
    };
    let first = run();
    let second = run();
    let _ = std::fs::remove_dir_all(&cache);
    report_line(
        10,
        first == second && first.contains("\"fail\": 0"),
        "byte-identical JSON data sections across two verify-all runs",
    );
}

// supplementary exactness guard: the full suite set reports zero failures
#[test]
fn criterion_summary_all_suites_green() {
    let mut pass = 0;
    let mut fail = 0;
    for name in suites::SUITE_NAMES.iter().filter(|&&s| s != "all") {
        let r = suites::run_suite(name, ctx()).unwrap();
        pass += r.passed();
        fail += r.failed();
    }
    println!("summary: {pass} checks pass, {fail} fail across all suites");
    assert_eq!(fail, 0);
}

// self-test pinning the dual-column measure normalization
#[test]
fn w_normalization_pinned_by_anchors() {
    let dc = &ctx().density;
    let a1 = HermMatrix::a_t_matrix(1, 1, dc.efield.clone()).unwrap();
    let anchor1 = dc.weighted_w(1, 1, &a1, 0).unwrap() == ExactScalar::ratio(16, 243);
    let b = diag(&[1, 1]);
    let lhs = dc.weighted_w(0, 1, &b, 0).unwrap();
    let rhs = dc
        .alpha(&diag(&[1, 0]), &b)
        .unwrap()
        .mul(&QMode::Concrete(3).neg_q_pow(-4));
    assert!(
        anchor1 && lhs == rhs,
        "normalization unpinned: the two anchors disagree"
    );
}

// cross-check that the concrete zero-partition coefficients match both the
// closed ratios (k <= 2) and the product-form derivative
// sum_{l<=k} (-q)^{-l} / (1 - (-q)^{-l}) of the unimodular series
#[test]
fn c_zero_cache_matches_counting() {
    let dc = Arc::clone(&ctx().density);
    let conc = ConstCtx::concrete(dc);
    let frozen = ["-1/4", "-1/8", "-9/56", "-83/560"];
    let mut product_form = ExactScalar::zero();
    let mode = QMode::Concrete(3);
    for k in 1..=4usize {
        let v = conc.c_zero(k).unwrap();
        let c = mode.neg_q_pow(-(k as i64));
        product_form = product_form.add(&c.div(&ExactScalar::one().sub(&c)));
        assert_eq!(v, product_form, "product form at k = {k}");
        assert_eq!(v.to_string(), frozen[k - 1], "frozen value at k = {k}");
        if k <= 2 {
            let closed = ConstCtx::symbolic().c_zero(k).unwrap().eval_at_q(3);
            assert_eq!(v.eval_at_q(3), closed, "closed ratio at k = {k}");
        }
    }
    let y: YClass = YClass::new(vec![0, -1]);
    assert_eq!(y.e0(), 1);
}

// direct lattice-route vs density-route for the derivative expansion
#[test]
fn derivative_sum_matches_density_route() {
    let dc = &ctx().density;
    let cc = ConstCtx::concrete(Arc::clone(&ctx().density));
    for bparts in [vec![3i64], vec![2], vec![2, 1], vec![2, 2]] {
        let b = diag(&bparts);
        let lhs = lattice::derivative_sum_c(&b, &cc).unwrap();
        let k = b.n;
        let one_k = diag(&vec![0i64; k]);
        let rhs = dc
            .alpha_prime(&one_k, &b)
            .unwrap()
            .div(&dc.alpha(&one_k, &one_k).unwrap());
        assert_eq!(
            lhs.eval_at_q(3),
            rhs.eval_at_q(3),
            "B = diag(pi^{bparts:?})"
        );
    }
}
