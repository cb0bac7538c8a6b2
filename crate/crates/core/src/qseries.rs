//! q-Pochhammer symbols and regularized terminating basic hypergeometric sums.

use crate::error::{Error, Result};
use crate::scalar::{require_uniform, Scalar};

/// Extended q-Pochhammer symbol `(x; q)_n` for any integer `n`:
///
/// ```text
/// (x;q)_n = (1-x)(1-qx)...(1-q^{n-1}x)                      n > 0
///         = 1                                               n = 0
///         = [ (1-q^n x)(1-q^{n+1} x)...(1-q^{-1} x) ]^{-1}  n < 0
/// ```
///
/// For `n < 0` a vanishing factor is a pole; the error names the offending
/// exponent `m`.
pub fn q_pochhammer(x: &Scalar, q: &Scalar, n: i64) -> Result<Scalar> {
    let backend = require_uniform("q_pochhammer", &[x, q])?;
    let one = Scalar::one(backend);
    if n == 0 {
        return Ok(one);
    }
    if n > 0 {
        let mut acc = one.clone();
        let mut qk = one;
        for _ in 0..n {
            acc *= &(&Scalar::one(backend) - &(&qk * x));
            qk *= q;
        }
        return Ok(acc);
    }
    // n < 0: product over m = n..=-1 of (1 - q^m x), inverted.
    let mut acc = Scalar::one(backend);
    for m in n..0 {
        let factor = &Scalar::one(backend) - &(&q.pow_i(m, "q_pochhammer")? * x);
        if factor.is_zero() {
            return Err(Error::PochhammerPole { m });
        }
        acc *= &factor;
    }
    acc.inv("q_pochhammer")
}

/// Regularized terminating basic hypergeometric sum of order `r`:
///
/// ```text
/// phibar(n; a_1..a_r; b_1..b_r | q, z)
///   = sum_{k=0}^{n} z^k (q^{-n};q)_k / (q;q)_k
///       * prod_{i=1}^{r} (a_i;q)_k (b_i q^k;q)_{n-k}
/// ```
///
/// A finite sum, polynomial in all of its arguments.
pub fn regularized_phi(
    n: i64,
    a: &[Scalar],
    b: &[Scalar],
    q: &Scalar,
    z: &Scalar,
) -> Result<Scalar> {
    if n < 0 {
        return Err(Error::Precondition(format!("regularized_phi: n = {n} < 0")));
    }
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::Precondition(format!(
            "regularized_phi: need r >= 1 with matching parameter lists, got {} upper and {} lower",
            a.len(),
            b.len()
        )));
    }
    let mut all: Vec<&Scalar> = vec![q, z];
    all.extend(a.iter());
    all.extend(b.iter());
    let backend = require_uniform("regularized_phi", &all)?;

    let q_neg_n = q.pow_i(-n, "regularized_phi")?;
    let mut total = Scalar::zero(backend);
    for k in 0..=n {
        let mut term = z.pow_i(k, "regularized_phi")?;
        term *= &q_pochhammer(&q_neg_n, q, k)?;
        term = term.try_div(&q_pochhammer(q, q, k)?, "regularized_phi")?;
        let qk = q.pow_i(k, "regularized_phi")?;
        for i in 0..a.len() {
            term *= &q_pochhammer(&a[i], q, k)?;
            term *= &q_pochhammer(&(&b[i] * &qk), q, n - k)?;
        }
        total += &term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Backend;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    /// Independent oracle: plain loop over the defining product, positive n.
    fn pochhammer_loop(x: &Scalar, q: &Scalar, n: u32) -> Scalar {
        let one = Scalar::one(x.backend());
        let mut acc = one.clone();
        for k in 0..n {
            acc = &acc * &(&one - &(&q.pow_i(k as i64, "t").unwrap() * x));
        }
        acc
    }

    #[test]
    fn empty_product_is_one() {
        assert!(q_pochhammer(&r(3, 7), &r(1, 2), 0).unwrap().is_one());
    }

    #[test]
    fn negative_one_matches_reciprocal() {
        // (x;q)_{-1} = 1/(1 - q^{-1} x)
        let x = r(1, 3);
        let q = r(2, 5);
        let got = q_pochhammer(&x, &q, -1).unwrap();
        let expect = (&Scalar::one(Backend::Exact)
            - &(&q.inv("t").unwrap() * &x))
            .inv("t")
            .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn direct_product_example() {
        // (1/2; 1/3)_2 = (1/2)(5/6) = 5/12
        let got = q_pochhammer(&r(1, 2), &r(1, 3), 2).unwrap();
        assert_eq!(got, r(5, 12));
        assert_eq!(got, pochhammer_loop(&r(1, 2), &r(1, 3), 2));
    }

    #[test]
    fn negative_index_pole_named() {
        // q = 1/2, x = 2: factor at m = -1 is 1 - 2*2 ... pick x so 1 - q^m x = 0 at m=-2.
        // q^{-2} x = 1 => x = q^2 = 1/4.
        let err = q_pochhammer(&r(1, 4), &r(1, 2), -3).unwrap_err();
        match err {
            Error::PochhammerPole { m } => assert_eq!(m, -2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn concatenation_identity() {
        // (x;q)_m (q^m x;q)_n = (x;q)_{m+n} across sign combinations.
        let x = r(2, 7);
        let q = r(3, 5);
        for m in -3i64..=3 {
            for n in -3i64..=3 {
                let qm_x = &q.pow_i(m, "t").unwrap() * &x;
                let lhs = &q_pochhammer(&x, &q, m).unwrap() * &q_pochhammer(&qm_x, &q, n).unwrap();
                let rhs = q_pochhammer(&x, &q, m + n).unwrap();
                assert_eq!(lhs, rhs, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn phi_n0_is_one() {
        let a = vec![r(2, 1), r(3, 1)];
        let b = vec![r(5, 1), r(7, 1)];
        assert!(regularized_phi(0, &a, &b, &r(1, 2), &r(1, 3)).unwrap().is_one());
    }

    #[test]
    fn phi_unit_upper_parameter_collapses() {
        // With some a_i = 1 only the k = 0 term survives:
        // phibar = prod_i (b_i;q)_n.
        let q = r(1, 2);
        let a = vec![r(2, 1), Scalar::one(Backend::Exact), r(5, 1)];
        let b = vec![r(7, 1), r(11, 1), r(13, 1)];
        for n in 1..=3 {
            let got = regularized_phi(n, &a, &b, &q, &r(1, 3)).unwrap();
            let mut expect = Scalar::one(Backend::Exact);
            for bi in &b {
                expect = &expect * &q_pochhammer(bi, &q, n).unwrap();
            }
            assert_eq!(got, expect, "n={n}");
        }
    }

    #[test]
    fn phi_two_term_hand_sum() {
        // r=3, n=1: hand loop over k in {0,1}.
        let q = r(1, 2);
        let z = r(1, 2);
        let a = [r(2, 1), r(3, 1), r(5, 1)];
        let b = [r(7, 1), r(11, 1), r(13, 1)];
        let got = regularized_phi(1, &a, &b, &q, &z).unwrap();

        let mut expect = Scalar::zero(Backend::Exact);
        for k in 0..=1i64 {
            // z^k (q^{-1};q)_k / (q;q)_k
            let mut term = z.pow_i(k, "t").unwrap();
            term = &term * &pochhammer_loop(&q.inv("t").unwrap(), &q, k as u32);
            term = term
                .try_div(&pochhammer_loop(&q, &q, k as u32), "t")
                .unwrap();
            for i in 0..3 {
                term = &term * &pochhammer_loop(&a[i], &q, k as u32);
                let bqk = &b[i] * &q.pow_i(k, "t").unwrap();
                term = &term * &pochhammer_loop(&bqk, &q, (1 - k) as u32);
            }
            expect = &expect + &term;
        }
        assert_eq!(got, expect);
        assert!(!got.is_zero());
    }

    #[test]
    fn phi_truncates_below_upper_q_powers() {
        // All a_i = q^{-n'} with n' > n: the (a_i;q)_k factor vanishes for k > n',
        // which never triggers within k <= n; the sum is still well defined and
        // the k-th term vanishes once (q^{-n};q)_k does, i.e. for k > n.
        let q = r(1, 3);
        let a = vec![q.pow_i(-5, "t").unwrap()];
        let b = vec![r(2, 1)];
        let v = regularized_phi(2, &a, &b, &q, &r(1, 7)).unwrap();
        assert!(!v.is_zero());
    }
}
