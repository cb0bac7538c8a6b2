//! Closed-form evaluations: symmetrization formulas for F and G, principal
//! specializations, the classical Hall-Littlewood polynomial, determinant
//! forms of the q = 0 degenerations, the rational (XXX) limit, and two small
//! algebraic identities used by the multi-row computations.

use itertools::Itertools;
use serde_json::json;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::qseries::q_pochhammer;
use crate::report::{CheckKind, Diagnostics, Report};
use crate::scalar::{require_uniform, Backend, Scalar};
use crate::signature::Signature;

fn perms(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

fn require_distinct(vars: &[Scalar], what: &str) -> Result<()> {
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            if (&vars[i] - &vars[j]).is_zero() {
                return Err(Error::SymmetrizationPole(format!(
                    "{what} must be pairwise distinct (positions {i} and {j})"
                )));
            }
        }
    }
    Ok(())
}

/// Matrix of pair ratios (x_a - q x_b)/(x_a - x_b) for a != b; every
/// Bethe-type symmetrization multiplies these along permutations, so they are
/// divided out once per call rather than once per permutation.
fn pair_ratio_matrix(vars: &[Scalar], q: &Scalar) -> Result<Vec<Vec<Scalar>>> {
    let backend = q.backend();
    let n = vars.len();
    let mut m = vec![vec![Scalar::one(backend); n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let num = &vars[a] - &(q * &vars[b]);
            let den = &vars[a] - &vars[b];
            m[a][b] = num.try_div(&den, "bethe factor").map_err(|_| {
                Error::SymmetrizationPole("coincident variables in Bethe factor".into())
            })?;
        }
    }
    Ok(m)
}

/// prod_{i<j} ratio[s(i)][s(j)] for one permutation s.
fn ordered_product(ratios: &[Vec<Scalar>], perm: &[usize], backend: Backend) -> Scalar {
    let mut acc = Scalar::one(backend);
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            acc *= &ratios[perm[a]][perm[b]];
        }
    }
    acc
}

/// prod_{i<j} (x_{s(i)} - q x_{s(j)}) / (x_{s(i)} - x_{s(j)}) for one
/// permutation s; the common factor of every Bethe-type symmetrization.
fn bethe_factor(vars: &[Scalar], perm: &[usize], q: &Scalar) -> Result<Scalar> {
    let ratios = pair_ratio_matrix(vars, q)?;
    Ok(ordered_product(&ratios, perm, q.backend()))
}

/// Symmetrization formula for the non-skew F:
///
/// ```text
/// F_mu(u_1..u_M) = (1-q)^M / prod(1 - s u_i)
///   * sum_{sigma} prod_{i<j} (u_si - q u_sj)/(u_si - u_sj) * prod_i xi(u_si)^{mu_i}
/// ```
pub fn f_symmetrized(mu: &Signature, us: &[Scalar], params: &Params) -> Result<Scalar> {
    let backend = params.backend();
    if !mu.is_nonnegative() {
        return Err(Error::Precondition("F needs a nonnegative signature".into()));
    }
    if mu.len() != us.len() {
        return Err(Error::Precondition(format!(
            "F takes exactly len(mu) variables; got {} for {}",
            us.len(),
            mu.len()
        )));
    }
    let m = us.len();
    if m == 0 {
        return Ok(Scalar::one(backend));
    }
    require_distinct(us, "u variables")?;
    let one = Scalar::one(backend);
    let xi: Vec<Scalar> = us.iter().map(|u| params.xi(u)).collect::<Result<_>>()?;

    let mut pref = (&one - params.q()).pow_i(m as i64, "f_symmetrized")?;
    for u in us {
        pref = pref.try_div(&(&one - &(params.s() * u)), "f_symmetrized")?;
    }

    let ratios = pair_ratio_matrix(us, params.q())?;
    let mut powers = vec![vec![Scalar::one(backend); m]; m];
    for idx in 0..m {
        for slot in 0..m {
            powers[idx][slot] = xi[idx].pow_i(mu.parts()[slot], "f_symmetrized")?;
        }
    }
    let mut total = Scalar::zero(backend);
    for perm in perms(m) {
        let mut term = ordered_product(&ratios, &perm, backend);
        for (slot, &idx) in perm.iter().enumerate() {
            term *= &powers[idx][slot];
        }
        total += &term;
    }
    Ok(&pref * &total)
}

/// Symmetrization formula for the non-skew G (fully symmetrized form). With
/// n = len(nu), k trailing zeros, and N >= n - k variables:
///
/// ```text
/// G_nu(v_1..v_N) = (1-q)^N (s^2;q)_n / ( (q;q)_{N-n+k} (s^2;q)_k )
///   * sum_{sigma} prod_{i<j} (v_si - q v_sj)/(v_si - v_sj)
///       * prod_{i<=n-k} v_si /((1-s v_si)(v_si - s)) * xi(v_si)^{nu_i}
///       * prod_{j>n-k} (1 - q^k s v_sj)/(1 - s v_sj)
/// ```
///
/// Fewer variables than nonzero parts means no admissible path ensemble:
/// the value is identically 0.
pub fn g_symmetrized(nu: &Signature, vs: &[Scalar], params: &Params) -> Result<Scalar> {
    let backend = params.backend();
    if !nu.is_nonnegative() {
        return Err(Error::Precondition("G needs a nonnegative signature".into()));
    }
    let n = nu.len();
    let k = nu.zero_count();
    let nn = vs.len();
    if nn < n - k {
        return Ok(Scalar::zero(backend));
    }
    require_distinct(vs, "v variables")?;
    let one = Scalar::one(backend);
    let s = params.s();
    let q = params.q();
    let qk = q.pow_i(k as i64, "g_symmetrized")?;
    let s2 = s * s;

    let mut pref = (&one - q).pow_i(nn as i64, "g_symmetrized")?;
    pref *= &q_pochhammer(&s2, q, n as i64)?;
    let den = &q_pochhammer(q, q, (nn - (n - k)) as i64)? * &q_pochhammer(&s2, q, k as i64)?;
    pref = pref.try_div(&den, "g_symmetrized")?;

    // Per-(variable, slot) factors, shared across all permutations.
    let ratios = pair_ratio_matrix(vs, q)?;
    let mut factors = vec![vec![Scalar::one(backend); nn]; nn];
    for (idx, v) in vs.iter().enumerate() {
        let nonzero_part = {
            let den = &(&one - &(s * v)) * &(v - s);
            v.try_div(&den, "g_symmetrized")
                .map_err(|_| Error::SymmetrizationPole("v = s or 1 - s v = 0".into()))?
        };
        let zero_part = {
            let num = &one - &(&(&qk * s) * v);
            num.try_div(&(&one - &(s * v)), "g_symmetrized")?
        };
        let xi = params.xi(v)?;
        for slot in 0..nn {
            factors[idx][slot] = if slot < n - k {
                &nonzero_part * &xi.pow_i(nu.parts()[slot], "g_symmetrized")?
            } else {
                zero_part.clone()
            };
        }
    }
    let mut total = Scalar::zero(backend);
    for perm in perms(nn) {
        let mut term = ordered_product(&ratios, &perm, backend);
        for (slot, &idx) in perm.iter().enumerate() {
            term *= &factors[idx][slot];
        }
        total += &term;
    }
    Ok(&pref * &total)
}

/// Partially symmetrized (subset) form of the same G formula: the variables
/// not carrying a nonzero part are summed out, leaving a sum over subsets I
/// of size n - k and bijections onto I.
pub fn g_symmetrized_subset(nu: &Signature, vs: &[Scalar], params: &Params) -> Result<Scalar> {
    let backend = params.backend();
    if !nu.is_nonnegative() {
        return Err(Error::Precondition("G needs a nonnegative signature".into()));
    }
    let n = nu.len();
    let k = nu.zero_count();
    let nn = vs.len();
    let r = n - k;
    if nn < r {
        return Ok(Scalar::zero(backend));
    }
    require_distinct(vs, "v variables")?;
    let one = Scalar::one(backend);
    let s = params.s();
    let q = params.q();
    let qk = q.pow_i(k as i64, "g_symmetrized_subset")?;
    let s2 = s * s;

    let mut pref = (&one - q).pow_i(r as i64, "g_symmetrized_subset")?;
    pref *= &q_pochhammer(&s2, q, n as i64)?;
    pref = pref.try_div(&q_pochhammer(&s2, q, k as i64)?, "g_symmetrized_subset")?;

    let ratios = pair_ratio_matrix(vs, q)?;
    let mut nonzero_factor = Vec::with_capacity(nn);
    let mut zero_factor = Vec::with_capacity(nn);
    let mut powers = vec![vec![Scalar::one(backend); r]; nn];
    for (idx, v) in vs.iter().enumerate() {
        let den = &(&one - &(s * v)) * &(v - s);
        nonzero_factor.push(
            v.try_div(&den, "g_symmetrized_subset")
                .map_err(|_| Error::SymmetrizationPole("v = s or 1 - s v = 0".into()))?,
        );
        let num = &one - &(&(&qk * s) * v);
        zero_factor.push(num.try_div(&(&one - &(s * v)), "g_symmetrized_subset")?);
        let xi = params.xi(v)?;
        for slot in 0..r {
            powers[idx][slot] = xi.pow_i(nu.parts()[slot], "g_symmetrized_subset")?;
        }
    }

    let mut total = Scalar::zero(backend);
    for subset in (0..nn).combinations(r) {
        let complement: Vec<usize> = (0..nn).filter(|i| !subset.contains(i)).collect();
        let mut outer = Scalar::one(backend);
        for &i in &subset {
            outer *= &nonzero_factor[i];
        }
        for &j in &complement {
            outer *= &zero_factor[j];
        }
        for &i in &subset {
            for &j in &complement {
                outer *= &ratios[i][j];
            }
        }
        // Inner Bethe sum over orderings of the chosen subset.
        let mut inner = Scalar::zero(backend);
        for assignment in subset.iter().copied().permutations(r) {
            let mut term = ordered_product(&ratios, &assignment, backend);
            for (slot, &idx) in assignment.iter().enumerate() {
                term *= &powers[idx][slot];
            }
            inner += &term;
        }
        total += &(&outer * &inner);
    }
    Ok(&pref * &total)
}

/// Principal specialization of F at the geometric progression (u, qu, ..., q^{M-1}u):
///
/// ```text
/// F_mu = (q;q)_M / (s u;q)_M * prod_i xi(q^{i-1} u)^{mu_i}
/// ```
pub fn f_principal(mu: &Signature, u: &Scalar, params: &Params) -> Result<Scalar> {
    if !mu.is_nonnegative() {
        return Err(Error::Precondition("F needs a nonnegative signature".into()));
    }
    let m = mu.len() as i64;
    let su = params.s() * u;
    let den = q_pochhammer(&su, params.q(), m)?;
    if den.is_zero() {
        return Err(Error::SymmetrizationPole("(s u;q)_M vanishes".into()));
    }
    let mut acc = q_pochhammer(params.q(), params.q(), m)?.try_div(&den, "f_principal")?;
    for (i, &part) in mu.parts().iter().enumerate() {
        let ui = &params.q().pow_i(i as i64, "f_principal")? * u;
        acc *= &params.xi(&ui)?.pow_i(part, "f_principal")?;
    }
    Ok(acc)
}

/// Principal specialization of G at (v, qv, ..., q^{N-1}v):
///
/// ```text
/// G_nu = (q;q)_N (s^2;q)_n (s v;q)_{N+k}
///        / ( (q;q)_{N-n+k} (s^2;q)_k (s v;q)_n (s v;q)_N (s/v;1/q)_{n-k} )
///        * prod_{i<=n-k} xi(q^{i-1} v)^{nu_i}
/// ```
pub fn g_principal(nu: &Signature, v: &Scalar, nvars: usize, params: &Params) -> Result<Scalar> {
    let backend = params.backend();
    if !nu.is_nonnegative() {
        return Err(Error::Precondition("G needs a nonnegative signature".into()));
    }
    let n = nu.len();
    let k = nu.zero_count();
    if nvars < n - k {
        return Ok(Scalar::zero(backend));
    }
    let q = params.q();
    let s = params.s();
    let s2 = s * s;
    let sv = s * v;
    let mut num = q_pochhammer(q, q, nvars as i64)?;
    num *= &q_pochhammer(&s2, q, n as i64)?;
    num *= &q_pochhammer(&sv, q, (nvars + k) as i64)?;

    let mut den = q_pochhammer(q, q, (nvars - (n - k)) as i64)?;
    den *= &q_pochhammer(&s2, q, k as i64)?;
    den *= &q_pochhammer(&sv, q, n as i64)?;
    den *= &q_pochhammer(&sv, q, nvars as i64)?;
    if n > k {
        let s_over_v = s.try_div(v, "g_principal")?;
        let q_inv = q.inv("g_principal")?;
        den *= &q_pochhammer(&s_over_v, &q_inv, (n - k) as i64)?;
    }
    if den.is_zero() {
        return Err(Error::SymmetrizationPole(
            "principal G denominator vanishes".into(),
        ));
    }

    let mut acc = num.try_div(&den, "g_principal")?;
    for (i, &part) in nu.parts()[..n - k].iter().enumerate() {
        let vi = &q.pow_i(i as i64, "g_principal")? * v;
        acc *= &params.xi(&vi)?.pow_i(part, "g_principal")?;
    }
    Ok(acc)
}

/// The classical Hall-Littlewood polynomial
///
/// ```text
/// P_lambda(x_1..x_n) = const(lambda) sum_{sigma} sigma( prod_{i<j} (x_i - q x_j)/(x_i - x_j)
///                      * prod_i x_i^{lambda_i} )
/// ```
///
/// with the monic normalization const(lambda) = prod_{j>=0} (1-q)^{m_j} / (q;q)_{m_j}
/// over the part multiplicities of lambda padded with zeros to n.
pub fn hall_littlewood_p(lambda: &Signature, xs: &[Scalar], q: &Scalar) -> Result<Scalar> {
    let backend = require_uniform("hall_littlewood_p", &[q])?;
    if !lambda.is_nonnegative() {
        return Err(Error::Precondition(
            "Hall-Littlewood P needs a nonnegative signature".into(),
        ));
    }
    let n = xs.len();
    if lambda.len() > n {
        return Err(Error::Precondition(format!(
            "Hall-Littlewood P needs at least len(lambda) variables; got {n} for {}",
            lambda.len()
        )));
    }
    require_distinct(xs, "x variables")?;
    let padded = lambda.pad_zeros(n)?;
    let one = Scalar::one(backend);

    let mut constant = Scalar::one(backend);
    for (_, count) in padded.clusters() {
        let c = count as i64;
        constant *= &(&one - q).pow_i(c, "hall_littlewood_p")?;
        constant = constant.try_div(&q_pochhammer(q, q, c)?, "hall_littlewood_p")?;
    }

    let mut total = Scalar::zero(backend);
    for perm in perms(n) {
        let mut term = bethe_factor(xs, &perm, q)?;
        for (slot, &idx) in perm.iter().enumerate() {
            term *= &xs[idx].pow_i(padded.parts()[slot], "hall_littlewood_p")?;
        }
        total += &term;
    }
    Ok(&constant * &total)
}

/// Determinant of a small square matrix of scalars by cofactor expansion.
pub fn det_small(rows: &[Vec<Scalar>], backend: Backend) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one(backend);
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut acc = Scalar::zero(backend);
    for c in 0..n {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = rows[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let signed = if c % 2 == 0 {
            rows[0][c].clone()
        } else {
            -&rows[0][c]
        };
        acc += &(&signed * &det_small(&minor, backend));
    }
    acc
}

/// Which q = 0 determinant form to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetKind {
    /// F at q = 0 (Schur-like): det[ u_i^{M-j}/(1-s u_i) xi(u_i)^{mu_j} ] / Vandermonde.
    FQ0,
    /// G at q = 0: (1-s^2)^{[k=0]} det[ v_i^{N-j}/(1-s v_i) (v_i/(v_i-s))^{[nu_j>0]} xi(v_i)^{nu_j} ] / Vandermonde.
    GQ0,
    /// Inhomogeneous Schur F: det[ z_i^{M-j} (z_i-1)^{mu_j} ] / Vandermonde.
    FInhom,
    /// Inhomogeneous Schur G: det[ w_i^{N-j} (w_i/(w_i-1))^{[nu_j>0]} (w_i-1)^{nu_j} ] / Vandermonde.
    GInhom,
}

/// Ratio-of-determinants forms taken by the q = 0 symmetrization formulas.
/// The signature length must equal the number of variables.
pub fn schur_like_determinant(
    kind: DetKind,
    sig: &Signature,
    vars: &[Scalar],
    params: &Params,
) -> Result<Scalar> {
    let backend = params.backend();
    let n = vars.len();
    if sig.len() != n {
        return Err(Error::Precondition(format!(
            "determinant form needs len(sig) = #vars; got {} and {n}",
            sig.len()
        )));
    }
    if !sig.is_nonnegative() {
        return Err(Error::Precondition(
            "determinant form needs nonnegative parts".into(),
        ));
    }
    require_distinct(vars, "variables")?;
    if n == 0 {
        return Ok(Scalar::one(backend));
    }
    let one = Scalar::one(backend);
    let s = params.s();

    let mut rows = Vec::with_capacity(n);
    for x in vars {
        let mut row = Vec::with_capacity(n);
        for (c, &part) in sig.parts().iter().enumerate() {
            let power = x.pow_i((n - 1 - c) as i64, "schur det")?;
            let entry = match kind {
                DetKind::FQ0 => {
                    let den = &one - &(s * x);
                    &power.try_div(&den, "schur det")? * &params.xi(x)?.pow_i(part, "schur det")?
                }
                DetKind::GQ0 => {
                    let den = &one - &(s * x);
                    let mut e = power.try_div(&den, "schur det")?;
                    if part > 0 {
                        e = &e * &x.try_div(&(x - s), "schur det")?;
                    }
                    &e * &params.xi(x)?.pow_i(part, "schur det")?
                }
                DetKind::FInhom => &power * &(x - &one).pow_i(part, "schur det")?,
                DetKind::GInhom => {
                    let mut e = power;
                    if part > 0 {
                        e = &e * &x.try_div(&(x - &one), "schur det")?;
                    }
                    &e * &(x - &one).pow_i(part, "schur det")?
                }
            };
            row.push(entry);
        }
        rows.push(row);
    }

    let mut vandermonde = Scalar::one(backend);
    for i in 0..n {
        for j in i + 1..n {
            vandermonde *= &(&vars[i] - &vars[j]);
        }
    }
    let mut value = det_small(&rows, backend).try_div(&vandermonde, "schur det")?;
    if kind == DetKind::GQ0 && sig.zero_count() == 0 {
        value *= &(&one - &(s * s));
    }
    Ok(value)
}

/// Rising factorial (a)_m = a (a+1) ... (a+m-1), with (a)_0 = 1.
pub fn rising_factorial(a: &Scalar, m: i64) -> Result<Scalar> {
    if m < 0 {
        return Err(Error::Precondition("rising factorial needs m >= 0".into()));
    }
    let backend = a.backend();
    let mut acc = Scalar::one(backend);
    for i in 0..m {
        acc *= &(a + &Scalar::from_int(i, backend));
    }
    Ok(acc)
}

/// F in the rational (XXX) limit:
///
/// ```text
/// F_mu(x_1..x_M) = 1/prod(zeta + x_i)
///   * sum_sigma prod_{i<j} (x_si - x_sj - 1)/(x_si - x_sj)
///     * prod_i ((zeta - x_si)/(zeta + x_si))^{mu_i}
/// ```
pub fn rational_limit_f(mu: &Signature, xs: &[Scalar], zeta: &Scalar) -> Result<Scalar> {
    let backend = zeta.backend();
    if mu.len() != xs.len() {
        return Err(Error::Precondition("rational F takes len(mu) variables".into()));
    }
    require_distinct(xs, "x variables")?;
    let one = Scalar::one(backend);
    let mut pref = Scalar::one(backend);
    for x in xs {
        let d = zeta + x;
        if d.is_zero() {
            return Err(Error::SymmetrizationPole("zeta + x vanishes".into()));
        }
        pref = pref.try_div(&d, "rational_limit_f")?;
    }
    let m = xs.len();
    let mut total = Scalar::zero(backend);
    for perm in perms(m) {
        let mut term = Scalar::one(backend);
        for a in 0..m {
            for b in a + 1..m {
                let num = &(&xs[perm[a]] - &xs[perm[b]]) - &one;
                let den = &xs[perm[a]] - &xs[perm[b]];
                term *= &num.try_div(&den, "rational_limit_f")?;
            }
        }
        for (slot, &idx) in perm.iter().enumerate() {
            let ratio = (zeta - &xs[idx]).try_div(&(zeta + &xs[idx]), "rational_limit_f")?;
            term *= &ratio.pow_i(mu.parts()[slot], "rational_limit_f")?;
        }
        total += &term;
    }
    Ok(&pref * &total)
}

/// G in the rational (XXX) limit, with rising-factorial prefactors:
///
/// ```text
/// G_nu(y_1..y_N) = (2 zeta)_n / ( (N-n+k)! (2 zeta)_k )
///   * sum_sigma prod_{i<j} (y_si - y_sj - 1)/(y_si - y_sj)
///     * prod_{i<=n-k} 1/((zeta+y_si)(zeta-y_si)) ((zeta-y_si)/(zeta+y_si))^{nu_i}
///     * prod_{j>n-k} (k + zeta + y_sj)/(zeta + y_sj)
/// ```
pub fn rational_limit_g(nu: &Signature, ys: &[Scalar], zeta: &Scalar) -> Result<Scalar> {
    let backend = zeta.backend();
    if !nu.is_nonnegative() {
        return Err(Error::Precondition("rational G needs a nonnegative signature".into()));
    }
    let n = nu.len();
    let k = nu.zero_count();
    let nn = ys.len();
    if nn < n - k {
        return Ok(Scalar::zero(backend));
    }
    require_distinct(ys, "y variables")?;
    let one = Scalar::one(backend);
    let two_zeta = zeta + zeta;
    let mut pref = rising_factorial(&two_zeta, n as i64)?;
    let mut fact = Scalar::one(backend);
    for i in 1..=(nn - (n - k)) as i64 {
        fact *= &Scalar::from_int(i, backend);
    }
    pref = pref.try_div(
        &(&fact * &rising_factorial(&two_zeta, k as i64)?),
        "rational_limit_g",
    )?;

    let kk = Scalar::from_int(k as i64, backend);
    let mut total = Scalar::zero(backend);
    for perm in perms(nn) {
        let mut term = Scalar::one(backend);
        for a in 0..nn {
            for b in a + 1..nn {
                let num = &(&ys[perm[a]] - &ys[perm[b]]) - &one;
                let den = &ys[perm[a]] - &ys[perm[b]];
                term *= &num.try_div(&den, "rational_limit_g")?;
            }
        }
        for (slot, &idx) in perm.iter().enumerate() {
            let y = &ys[idx];
            if slot < n - k {
                let den = &(zeta + y) * &(zeta - y);
                if den.is_zero() {
                    return Err(Error::SymmetrizationPole("zeta +- y vanishes".into()));
                }
                term = term.try_div(&den, "rational_limit_g")?;
                let ratio = (zeta - y).try_div(&(zeta + y), "rational_limit_g")?;
                term *= &ratio.pow_i(nu.parts()[slot], "rational_limit_g")?;
            } else {
                let num = &(&kk + zeta) + y;
                term *= &num.try_div(&(zeta + y), "rational_limit_g")?;
            }
        }
        total += &term;
    }
    Ok(&pref * &total)
}

/// Inhomogeneous Hall-Littlewood F (the s -> 0 limit with variables scaled
/// by s):
///
/// ```text
/// F_mu(z_1..z_M) = (1-q)^M sum_sigma prod_{i<j} (z_si - q z_sj)/(z_si - z_sj)
///                  * prod_i (z_si - 1)^{mu_i}
/// ```
pub fn inhom_hl_f(mu: &Signature, zs: &[Scalar], q: &Scalar) -> Result<Scalar> {
    let backend = q.backend();
    if mu.len() != zs.len() {
        return Err(Error::Precondition(
            "inhomogeneous F takes len(mu) variables".into(),
        ));
    }
    require_distinct(zs, "z variables")?;
    let one = Scalar::one(backend);
    let m = zs.len();
    let pref = (&one - q).pow_i(m as i64, "inhom_hl_f")?;
    let mut total = Scalar::zero(backend);
    for perm in perms(m) {
        let mut term = bethe_factor(zs, &perm, q)?;
        for (slot, &idx) in perm.iter().enumerate() {
            term *= &(&zs[idx] - &one).pow_i(mu.parts()[slot], "inhom_hl_f")?;
        }
        total += &term;
    }
    Ok(&pref * &total)
}

/// Inhomogeneous Hall-Littlewood G:
///
/// ```text
/// G_nu(w_1..w_N) = (1-q)^N / (q;q)_{N-n+k}
///   * sum_sigma prod_{i<j} (w_si - q w_sj)/(w_si - w_sj)
///     * prod_{i<=n-k} w_si (w_si - 1)^{nu_i - 1}
/// ```
pub fn inhom_hl_g(nu: &Signature, ws: &[Scalar], q: &Scalar) -> Result<Scalar> {
    let backend = q.backend();
    if !nu.is_nonnegative() {
        return Err(Error::Precondition(
            "inhomogeneous G needs a nonnegative signature".into(),
        ));
    }
    let n = nu.len();
    let k = nu.zero_count();
    let nn = ws.len();
    if nn < n - k {
        return Ok(Scalar::zero(backend));
    }
    require_distinct(ws, "w variables")?;
    let one = Scalar::one(backend);
    let mut pref = (&one - q).pow_i(nn as i64, "inhom_hl_g")?;
    pref = pref.try_div(&q_pochhammer(q, q, (nn - (n - k)) as i64)?, "inhom_hl_g")?;
    let mut total = Scalar::zero(backend);
    for perm in perms(nn) {
        let mut term = bethe_factor(ws, &perm, q)?;
        for (slot, &idx) in perm.iter().enumerate() {
            if slot < n - k {
                let w = &ws[idx];
                term *= w;
                term *= &(w - &one).pow_i(nu.parts()[slot] - 1, "inhom_hl_g")?;
            }
        }
        total += &term;
    }
    Ok(&pref * &total)
}

/// The closed form (q;q)_p / (1-q)^p of the Bethe symmetrization sum
/// sum_sigma prod_{i<j} (z_i - q z_j)/(z_i - z_j).
pub fn symmetrization_constant(p: usize, q: &Scalar) -> Result<Scalar> {
    let one = Scalar::one(q.backend());
    q_pochhammer(q, q, p as i64)?.try_div(
        &(&one - q).pow_i(p as i64, "symmetrization_constant")?,
        "symmetrization_constant",
    )
}

/// The left side of the same identity, evaluated at explicit distinct z's.
pub fn symmetrization_sum(zs: &[Scalar], q: &Scalar) -> Result<Scalar> {
    require_distinct(zs, "z variables")?;
    let mut total = Scalar::zero(q.backend());
    for perm in perms(zs.len()) {
        total += &bethe_factor(zs, &perm, q)?;
    }
    Ok(total)
}

/// One-pole residue identity used when collapsing a cluster of size c1:
///
/// ```text
/// sum_{l=1}^{c1} prod_{i != l} (u_i - q u_l)/(u_i - u_l) * (u_l - q^{c1} w)/(u_l - w)
///   = (1 - q^{c1})/(1 - q) * prod_{i=1}^{c1} (u_i - q w)/(u_i - w)
/// ```
///
/// Evaluates both sides exactly and reports whether they agree.
pub fn residue_identity_check(us: &[Scalar], w: &Scalar, q: &Scalar) -> Result<Report> {
    let backend = q.backend();
    let c1 = us.len();
    if c1 == 0 {
        return Err(Error::Precondition("residue identity needs c1 >= 1".into()));
    }
    require_distinct(us, "u variables")?;
    for u in us {
        if (u - w).is_zero() {
            return Err(Error::SymmetrizationPole("u_l = w".into()));
        }
    }
    let one = Scalar::one(backend);
    let qc = q.pow_i(c1 as i64, "residue identity")?;

    let mut lhs = Scalar::zero(backend);
    for l in 0..c1 {
        let mut term = (&us[l] - &(&qc * w)).try_div(&(&us[l] - w), "residue identity")?;
        for (i, u) in us.iter().enumerate() {
            if i == l {
                continue;
            }
            let num = u - &(q * &us[l]);
            term *= &num.try_div(&(u - &us[l]), "residue identity")?;
        }
        lhs += &term;
    }

    let mut rhs = (&one - &qc).try_div(&(&one - q), "residue identity")?;
    for u in us {
        let num = u - &(q * w);
        rhs *= &num.try_div(&(u - w), "residue identity")?;
    }

    let residual = (&lhs - &rhs).abs();
    Ok(Report {
        id: "residue-identity".into(),
        paper_ref: "single-cluster residue summation identity".into(),
        kind: CheckKind::Exact,
        params: json!({
            "q": q.to_string(),
            "u": us.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
            "w": w.to_string(),
            "c1": c1,
        }),
        residual,
        tolerance: 0.0,
        pass: lhs == rhs,
        diagnostics: Diagnostics {
            terms: Some(c1 as u64),
            ..Default::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{f_lattice, g_lattice};
    use crate::params::sample_generic;
    use crate::qseries::q_pochhammer;

    fn params() -> Params {
        Params::new(Scalar::ratio(1, 3), Scalar::ratio(1, 5), 12).unwrap()
    }

    fn sig(parts: &[i64]) -> Signature {
        Signature::new(parts.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn f_single_variable() {
        // mu = (m): (1-q)/(1-su) xi(u)^m.
        let p = params();
        let u = r(2, 1);
        let one = Scalar::one(Backend::Exact);
        for m in 0..4 {
            let got = f_symmetrized(&sig(&[m]), &[u.clone()], &p).unwrap();
            let expect = &(&one - p.q())
                .try_div(&(&one - &(p.s() * &u)), "t")
                .unwrap()
                * &p.xi(&u).unwrap().pow_i(m, "t").unwrap();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn f_zero_signature_collapses() {
        // mu = 0^M: (q;q)_M / prod(1 - s u_i).
        let p = params();
        let us = vec![r(2, 1), r(3, 1), r(5, 2)];
        let got = f_symmetrized(&Signature::zeros(3), &us, &p).unwrap();
        let one = Scalar::one(Backend::Exact);
        let mut expect = q_pochhammer(p.q(), p.q(), 3).unwrap();
        for u in &us {
            expect = expect.try_div(&(&one - &(p.s() * u)), "t").unwrap();
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn f_matches_lattice() {
        let p = params();
        let us = vec![r(2, 1), r(3, 1), r(5, 2)];
        for mu in crate::signature::enumerate_signatures(3, 3) {
            let a = f_symmetrized(&mu, &us, &p).unwrap();
            let b = f_lattice(&mu, &us, &p).unwrap();
            assert_eq!(a, b, "mu={mu}");
        }
    }

    #[test]
    fn g_single_variable_cases() {
        let p = params();
        let v = r(2, 1);
        let one = Scalar::one(Backend::Exact);
        // nu = 0^n, one variable: (1 - s q^n v)/(1 - s v).
        for n in 1..4usize {
            let got = g_symmetrized(&Signature::zeros(n), &[v.clone()], &p).unwrap();
            let expect = (&one - &(&(p.s() * &p.q().pow_i(n as i64, "t").unwrap()) * &v))
                .try_div(&(&one - &(p.s() * &v)), "t")
                .unwrap();
            assert_eq!(got, expect, "n={n}");
        }
        // nu = (a, 0^{n-1}), a > 0: (1-q)(1-s^2 q^{n-1}) v/((v-s)(1-sv)) xi^a.
        for n in 1..4usize {
            for a in 1..3i64 {
                let mut parts = vec![0i64; n];
                parts[0] = a;
                let nu = Signature::new(parts).unwrap();
                let got = g_symmetrized(&nu, &[v.clone()], &p).unwrap();
                let s2q = &(p.s() * p.s()) * &p.q().pow_i(n as i64 - 1, "t").unwrap();
                let num = &(&(&one - p.q()) * &(&one - &s2q)) * &v;
                let den = &(&v - p.s()) * &(&one - &(p.s() * &v));
                let expect =
                    &num.try_div(&den, "t").unwrap() * &p.xi(&v).unwrap().pow_i(a, "t").unwrap();
                assert_eq!(got, expect, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn g_two_forms_agree_and_match_lattice() {
        let p = params();
        let vs = vec![r(2, 1), r(5, 2), r(7, 3)];
        for nu in crate::signature::enumerate_signatures(3, 3) {
            let a = g_symmetrized(&nu, &vs, &p).unwrap();
            let b = g_symmetrized_subset(&nu, &vs, &p).unwrap();
            assert_eq!(a, b, "nu={nu}");
            let c = g_lattice(&nu, &vs, &p).unwrap();
            assert_eq!(a, c, "nu={nu}");
        }
        // More variables than parts.
        let nu = sig(&[2, 1]);
        let a = g_symmetrized(&nu, &vs, &p).unwrap();
        let b = g_symmetrized_subset(&nu, &vs, &p).unwrap();
        let c = g_lattice(&nu, &vs, &p).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        // Fewer variables than nonzero parts: identically zero.
        assert!(g_symmetrized(&sig(&[2, 1, 1]), &[r(2, 1)], &p).unwrap().is_zero());
    }

    #[test]
    fn coincident_variables_refused() {
        let p = params();
        let err = f_symmetrized(&sig(&[1, 0]), &[r(2, 1), r(2, 1)], &p);
        assert!(matches!(err, Err(Error::SymmetrizationPole(_))));
    }

    #[test]
    fn principal_specializations_match_substitution() {
        let p = params();
        let u = r(2, 1);
        for mu in crate::signature::enumerate_signatures(3, 3) {
            let us: Vec<Scalar> = (0..3).map(|i| &p.q().pow_i(i, "t").unwrap() * &u).collect();
            let direct = f_symmetrized(&mu, &us, &p).unwrap();
            let closed = f_principal(&mu, &u, &p).unwrap();
            assert_eq!(direct, closed, "mu={mu}");
        }
        for nvars in 3..=4usize {
            let vs: Vec<Scalar> = (0..nvars)
                .map(|i| &p.q().pow_i(i as i64, "t").unwrap() * &u)
                .collect();
            for nu in crate::signature::enumerate_signatures(3, 2) {
                let direct = g_symmetrized(&nu, &vs, &p).unwrap();
                let closed = g_principal(&nu, &u, nvars, &p).unwrap();
                assert_eq!(direct, closed, "nu={nu} N={nvars}");
            }
        }
        // M = 1 consistency with the single-variable formula.
        let direct = f_symmetrized(&sig(&[3]), &[u.clone()], &p).unwrap();
        assert_eq!(direct, f_principal(&sig(&[3]), &u, &p).unwrap());
    }

    #[test]
    fn hall_littlewood_basics() {
        let q = r(1, 3);
        let xs = vec![r(2, 1), r(3, 1), r(7, 2)];
        // lambda = 0^n -> 1.
        assert!(hall_littlewood_p(&Signature::zeros(3), &xs, &q).unwrap().is_one());
        // lambda = (1), one variable -> x_1.
        let got = hall_littlewood_p(&sig(&[1]), &[r(5, 3)], &q).unwrap();
        assert_eq!(got, r(5, 3));
    }

    #[test]
    fn determinant_forms_match_lattice_q0() {
        // q = 0 lattice (Schur-like weights) against the determinant ratios.
        let p0 = Params::with_relaxations(
            Scalar::zero(Backend::Exact),
            r(1, 5),
            8,
            &[crate::params::Relaxation::ZeroQ],
        )
        .unwrap();
        let us = vec![r(2, 1), r(3, 1)];
        for mu in crate::signature::enumerate_signatures(2, 3) {
            let det = schur_like_determinant(DetKind::FQ0, &mu, &us, &p0).unwrap();
            let lat = crate::lattice::skew_f(
                &mu,
                &Signature::empty(),
                &us,
                &crate::weights::WeightFamily::Degenerate(crate::weights::DegenerateFamily::SchurQ0),
                &p0,
            )
            .unwrap();
            assert_eq!(det, lat, "mu={mu}");
            let gdet = schur_like_determinant(DetKind::GQ0, &mu, &us, &p0).unwrap();
            let glat = crate::lattice::skew_g(
                &mu,
                &Signature::zeros(2),
                &us,
                &crate::weights::WeightFamily::Degenerate(crate::weights::DegenerateFamily::SchurQ0),
                &p0,
            )
            .unwrap();
            assert_eq!(gdet, glat, "mu={mu}");
        }
    }

    #[test]
    fn inhom_determinant_one_by_one() {
        // mu = (1), one variable: det[(z-1)^1] / 1 = z - 1.
        let p = params();
        let z = r(9, 2);
        let got = schur_like_determinant(DetKind::FInhom, &sig(&[1]), &[z.clone()], &p).unwrap();
        assert_eq!(got, &z - &Scalar::one(Backend::Exact));
    }

    #[test]
    fn rational_limit_values() {
        // mu = (0), one variable: 1/(zeta + x).
        let zeta = r(7, 1);
        let x = r(2, 1);
        let got = rational_limit_f(&sig(&[0]), &[x.clone()], &zeta).unwrap();
        assert_eq!(got, (&zeta + &x).inv("t").unwrap());

        // Lattice oracle: mu = (1,0), x = (2,3), zeta = 7.
        let p = params();
        let fam = crate::weights::WeightFamily::Degenerate(
            crate::weights::DegenerateFamily::Rational { zeta: zeta.clone() },
        );
        let xs = vec![r(2, 1), r(3, 1)];
        let lat = crate::lattice::skew_f(&sig(&[1, 0]), &Signature::empty(), &xs, &fam, &p).unwrap();
        let cls = rational_limit_f(&sig(&[1, 0]), &xs, &zeta).unwrap();
        assert_eq!(lat, cls);

        // G side with zero parts and extra variables.
        let nu = sig(&[2, 0]);
        let ys = vec![r(2, 1), r(3, 1), r(9, 2)];
        let lat = crate::lattice::skew_g(&nu, &Signature::zeros(2), &ys, &fam, &p).unwrap();
        let cls = rational_limit_g(&nu, &ys, &zeta).unwrap();
        assert_eq!(lat, cls);
    }

    #[test]
    fn symmetrization_constant_examples() {
        let q = r(1, 3);
        assert!(symmetrization_constant(0, &q).unwrap().is_one());
        assert!(symmetrization_constant(1, &q).unwrap().is_one());
        // p = 3 against the brute-force sum at random distinct points.
        let pt = sample_generic(17, 4, 3).unwrap();
        let lhs = symmetrization_sum(&pt.us, &q).unwrap();
        assert_eq!(lhs, symmetrization_constant(3, &q).unwrap());
    }

    #[test]
    fn residue_identity_examples() {
        let q = r(1, 3);
        // c1 = 1: both sides are (u1 - q w)/(u1 - w).
        let rep = residue_identity_check(&[r(2, 1)], &r(7, 1), &q).unwrap();
        assert!(rep.pass);
        // c1 = 2 at the stated point.
        let rep = residue_identity_check(&[r(2, 1), r(5, 1)], &r(7, 1), &q).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.residual, 0.0);
        // c1 = 4 at a sampled generic point.
        let pt = sample_generic(23, 6, 5).unwrap();
        let rep = residue_identity_check(&pt.us[..4], &pt.us[4], pt.params.q()).unwrap();
        assert!(rep.pass);
    }
}
