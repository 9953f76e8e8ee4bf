//! Exact linear algebra over [`ExactScalar`]: Lagrange interpolation and
//! Gaussian elimination with exact pivoting.

use super::{ExactScalar, XPolynomial};
use crate::error::{Error, Result};

/// Unique polynomial of degree < points.len() through the given points.
pub fn interpolate(points: &[(ExactScalar, ExactScalar)]) -> Result<XPolynomial> {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i].0 == points[j].0 {
                return Err(Error::DegenerateNodes);
            }
        }
    }
    let mut acc = XPolynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Lagrange basis polynomial for node i.
        let mut basis = XPolynomial::one();
        let mut denom = ExactScalar::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&XPolynomial::from_coeffs(vec![
                xj.neg(),
                ExactScalar::one(),
            ]));
            denom = denom.mul(&xi.sub(xj));
        }
        acc = acc.add(&basis.scale(&yi.div(&denom)));
    }
    Ok(acc)
}

/// Exact solution of M x = v by Gaussian elimination; the residual is zero by
/// construction and is re-checked before returning.
pub fn solve_linear(m: &[Vec<ExactScalar>], v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
    let n = m.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.iter().any(|row| row.len() != n) || v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "solve_linear needs square {n}x{n} and rhs of length {n}"
        )));
    }
    let mut a: Vec<Vec<ExactScalar>> = m.to_vec();
    let mut b: Vec<ExactScalar> = v.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].div(&pivot);
            for c in col..n {
                let sub = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&sub);
            }
            b[r] = b[r].sub(&factor.mul(&b[col]));
        }
    }
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        if a[i][i].is_zero() {
            return Err(Error::SingularSystem);
        }
        x.push(b[i].div(&a[i][i]));
    }
    // residual must be exactly zero
    for (row, rhs) in m.iter().zip(v.iter()) {
        let mut acc = ExactScalar::zero();
        for (coef, xi) in row.iter().zip(x.iter()) {
            acc = acc.add(&coef.mul(xi));
        }
        debug_assert!(acc.sub(rhs).is_zero(), "nonzero residual in exact solve");
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::QMode;

    fn es(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn interpolate_constant() {
        let p = interpolate(&[(es(0), es(1)), (es(1), es(1))]).unwrap();
        assert_eq!(p, XPolynomial::constant(es(1)));
    }

    #[test]
    fn interpolate_line() {
        // through (1,0) and (-1,2): 1 - X
        let p = interpolate(&[(es(1), es(0)), (es(-1), es(2))]).unwrap();
        assert_eq!(p, XPolynomial::from_coeffs(vec![es(1), es(-1)]));
    }

    #[test]
    fn interpolate_duplicate_nodes_rejected() {
        assert!(matches!(
            interpolate(&[(es(1), es(0)), (es(1), es(2))]),
            Err(Error::DegenerateNodes)
        ));
    }

    #[test]
    fn interpolate_m2_at_q3() {
        // m(2;X) = (1 - X)(1 + 3X) = 1 + 2X - 3X^2 at q = 3; sample at
        // X in {1, -3, -9} by expanding the product by hand.
        let m2 = |x: i64| (1 - x) * (1 + 3 * x);
        let pts: Vec<_> = [1i64, -3, -9]
            .iter()
            .map(|&x| (es(x), es(m2(x))))
            .collect();
        let p = interpolate(&pts).unwrap();
        assert_eq!(p, XPolynomial::from_coeffs(vec![es(1), es(2), es(-3)]));
    }

    #[test]
    fn solve_identity() {
        let m = vec![vec![es(1), es(0)], vec![es(0), es(1)]];
        let v = vec![es(7), es(-2)];
        assert_eq!(solve_linear(&m, &v).unwrap(), v);
    }

    #[test]
    fn solve_vandermonde_q3() {
        // nodes {1, -q} at q = 3: [[1,1],[1,-3]] x = (0,1)
        // elimination by hand: x = (1/4, -1/4)
        let m = vec![vec![es(1), es(1)], vec![es(1), es(-3)]];
        let v = vec![es(0), es(1)];
        let x = solve_linear(&m, &v).unwrap();
        assert_eq!(x, vec![ExactScalar::ratio(1, 4), ExactScalar::ratio(-1, 4)]);
    }

    #[test]
    fn solve_singular_rejected() {
        let m = vec![vec![es(1), es(2)], vec![es(2), es(4)]];
        let v = vec![es(0), es(1)];
        assert!(matches!(solve_linear(&m, &v), Err(Error::SingularSystem)));
    }

    #[test]
    fn symbolic_vandermonde_roundtrip() {
        // 3x3 Vandermonde on nodes (-q)^1, (-q)^-1, 1 in symbolic mode.
        let mode = QMode::Symbolic;
        let nodes = [mode.neg_q_pow(1), mode.neg_q_pow(-1), mode.neg_q_pow(0)];
        let m: Vec<Vec<ExactScalar>> = (0..3)
            .map(|r| {
                nodes
                    .iter()
                    .map(|x| {
                        let mut acc = ExactScalar::one();
                        for _ in 0..r {
                            acc = acc.mul(x);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let v = vec![es(0), es(1), es(2)];
        let x = solve_linear(&m, &v).unwrap();
        // verify residual over the symbolic field
        for r in 0..3 {
            let mut acc = ExactScalar::zero();
            for c in 0..3 {
                acc = acc.add(&m[r][c].mul(&x[c]));
            }
            assert!(acc.sub(&v[r]).is_zero());
        }
    }
}
