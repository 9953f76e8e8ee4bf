//! Property tests for the exact substrate: interpolation round-trips, exact
//! solving, the derivative product rule, and Hermite-form stability.

use hermlab::exact::{interpolate, solve_linear, ExactScalar, QMode, XPolynomial};
use proptest::prelude::*;

fn scalar_strategy() -> impl Strategy<Value = ExactScalar> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| ExactScalar::ratio(n, d))
}

fn poly_strategy() -> impl Strategy<Value = XPolynomial> {
    prop::collection::vec(scalar_strategy(), 1..6).prop_map(XPolynomial::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interpolation_roundtrip(p in poly_strategy()) {
        // sample at deg + 1 distinct integer nodes and recover exactly
        let n = p.degree() + 1;
        let pts: Vec<(ExactScalar, ExactScalar)> = (0..n as i64)
            .map(|x| {
                let xs = ExactScalar::from_int(x);
                (xs.clone(), p.eval(&xs))
            })
            .collect();
        let back = interpolate(&pts).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn solve_then_multiply_reproduces_rhs(
        a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, d in -5i64..=5,
        v1 in scalar_strategy(), v2 in scalar_strategy(),
    ) {
        prop_assume!(a * d - b * c != 0);
        let m = vec![
            vec![ExactScalar::from_int(a), ExactScalar::from_int(b)],
            vec![ExactScalar::from_int(c), ExactScalar::from_int(d)],
        ];
        let v = vec![v1, v2];
        let x = solve_linear(&m, &v).unwrap();
        for (row, rhs) in m.iter().zip(v.iter()) {
            let mut acc = ExactScalar::zero();
            for (coef, xi) in row.iter().zip(x.iter()) {
                acc = acc.add(&coef.mul(xi));
            }
            prop_assert_eq!(acc, rhs.clone());
        }
    }

    #[test]
    fn derivative_product_rule(p in poly_strategy(), r in poly_strategy()) {
        let lhs = p.mul(&r).derivative_at_one();
        let rhs = p
            .derivative_at_one()
            .mul(&r.eval_at_one())
            .add(&p.eval_at_one().mul(&r.derivative_at_one()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_arithmetic_matches_concrete(e1 in -6i64..=6, e2 in -6i64..=6, q in prop::sample::select(vec![3u64, 5, 7])) {
        // ((-q)^e1 + (-q)^e2)^2 / (1 + (-q)^e1) evaluated two ways
        let check = |mode: &QMode| {
            let x = mode.neg_q_pow(e1).add(&mode.neg_q_pow(e2));
            let den = ExactScalar::one().add(&mode.neg_q_pow(e1));
            x.mul(&x).div(&den).eval_at_q(q)
        };
        prop_assert_eq!(check(&QMode::Symbolic), check(&QMode::Concrete(q)));
    }
}
