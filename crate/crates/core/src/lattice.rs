//! Skew functions F and G as partition functions of up-right path ensembles,
//! in column-transfer form.
//!
//! A row is scanned left to right over columns 0..=max part. At column x the
//! vertex configuration is fully forced by the boundary multiplicities and
//! the horizontal carry: i1 = mult_x(bottom), i2 = mult_x(top), j1 = carry in,
//! j2 = i1 + j1 - i2. One row is therefore a plain product of weights;
//! multi-row values are sums over interlacing chains of intermediate
//! signatures, enumerated depth-first with memoization.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::scalar::Scalar;
use crate::signature::{c_factor, Signature};
use crate::weights::{HorizontalSupport, WeightFamily};

/// Boundary data of a single row. F-rows carry one entering arrow on the left
/// (top length = bottom length + 1); G-rows carry none (equal lengths).
#[derive(Clone, Debug)]
pub struct RowBoundary {
    pub bottom: Signature,
    pub top: Signature,
    pub left_arrow: bool,
}

impl RowBoundary {
    pub fn f_row(bottom: Signature, top: Signature) -> Result<Self> {
        if top.len() != bottom.len() + 1 {
            return Err(Error::Validation(format!(
                "F-row needs top length = bottom length + 1, got {} over {}",
                top.len(),
                bottom.len()
            )));
        }
        Ok(RowBoundary { bottom, top, left_arrow: true })
    }

    pub fn g_row(bottom: Signature, top: Signature) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::Validation(format!(
                "G-row needs equal boundary lengths, got {} over {}",
                top.len(),
                bottom.len()
            )));
        }
        Ok(RowBoundary { bottom, top, left_arrow: false })
    }
}

/// The weight of one row together with its forced column trace.
#[derive(Clone, Debug)]
pub struct PathEnsembleWeight {
    pub value: Scalar,
    pub column_trace: Vec<(i64, crate::weights::VertexConfig)>,
}

/// One-row partition function. The column scan is fully forced, so the result
/// is a single product of family weights; it is 0 whenever the carry would go
/// negative, exceed the family's horizontal capacity, or fail to drain.
pub fn one_row_weight(
    row: &RowBoundary,
    spectral: &Scalar,
    family: &WeightFamily,
    params: &Params,
) -> Result<Scalar> {
    Ok(one_row_traced(row, spectral, family, params)?.value)
}

pub fn one_row_traced(
    row: &RowBoundary,
    spectral: &Scalar,
    family: &WeightFamily,
    params: &Params,
) -> Result<PathEnsembleWeight> {
    let backend = params.backend();
    let zero = PathEnsembleWeight {
        value: Scalar::zero(backend),
        column_trace: Vec::new(),
    };

    // G-rows allow general signatures; translate both boundaries together
    // into nonnegative range (weights depend on column occupancies only).
    let (bottom, top);
    if row.left_arrow {
        if !row.bottom.is_nonnegative() || !row.top.is_nonnegative() {
            return Err(Error::Validation(
                "F-row boundaries must be nonnegative signatures".into(),
            ));
        }
        bottom = row.bottom.clone();
        top = row.top.clone();
    } else {
        let min = row
            .bottom
            .parts()
            .iter()
            .chain(row.top.parts().iter())
            .copied()
            .min()
            .unwrap_or(0)
            .min(0);
        bottom = row.bottom.shifted(-min);
        top = row.top.shifted(-min);
    }

    let max_col = bottom.first().unwrap_or(0).max(top.first().unwrap_or(0));
    let mut carry: i64 = if row.left_arrow { 1 } else { 0 };
    let mut value = Scalar::one(backend);
    let mut trace = Vec::new();
    for x in 0..=max_col {
        let i1 = bottom.multiplicity(x) as i64;
        let i2 = top.multiplicity(x) as i64;
        let j1 = carry;
        let j2 = i1 + j1 - i2;
        if j2 < 0 {
            return Ok(zero);
        }
        let cfg = crate::weights::VertexConfig::new(i1 as usize, j1 as usize, i2 as usize, j2 as usize);
        if !family.supports(&cfg) {
            return Ok(zero);
        }
        let w = family
            .evaluate(&cfg, spectral, params)
            .map_err(|e| Error::WeightPole(format!("at column {x}: {e}")))?;
        if w.is_zero() {
            return Ok(zero);
        }
        value *= &w;
        trace.push((x, cfg));
        carry = j2;
    }
    if carry != 0 {
        return Ok(zero);
    }
    Ok(PathEnsembleWeight { value, column_trace: trace })
}

/// All signatures reachable from `bottom` by one row with nonzero weight,
/// parts capped by `max_part`, each exactly once. The shape of the support
/// depends only on the family's horizontal capacity:
/// capacity one -> interlacing (horizontal strips), unbounded -> componentwise
/// domination, unit step -> parts grow by at most one.
pub fn one_row_image_support_for(
    bottom: &Signature,
    left_arrow: bool,
    max_part: i64,
    support: HorizontalSupport,
) -> Vec<Signature> {
    let b = bottom.parts();
    let out_len = b.len() + usize::from(left_arrow);
    let mut out = Vec::new();
    let mut current: Vec<i64> = Vec::with_capacity(out_len);

    // Bounds for the i-th top part (0-based), given the previous chosen part.
    fn bounds(
        b: &[i64],
        i: usize,
        prev: Option<i64>,
        max_part: i64,
        support: HorizontalSupport,
    ) -> (i64, i64) {
        let bi = |k: usize| b.get(k).copied();
        let (lo, mut hi) = match support {
            HorizontalSupport::CapacityOne => {
                // top_1 >= bot_1 >= top_2 >= bot_2 >= ...
                let lo = bi(i).unwrap_or(0);
                let hi = if i == 0 { max_part } else { bi(i - 1).unwrap_or(max_part) };
                (lo, hi)
            }
            HorizontalSupport::Unbounded => (bi(i).unwrap_or(0), max_part),
            HorizontalSupport::UnitStep => {
                let base = bi(i).unwrap_or(0);
                (base, base + 1)
            }
        };
        if let Some(p) = prev {
            hi = hi.min(p);
        }
        (lo, hi)
    }

    fn rec(
        b: &[i64],
        out_len: usize,
        max_part: i64,
        support: HorizontalSupport,
        current: &mut Vec<i64>,
        out: &mut Vec<Signature>,
    ) {
        if current.len() == out_len {
            out.push(Signature::new(current.clone()).expect("sorted by construction"));
            return;
        }
        let i = current.len();
        let prev = current.last().copied();
        let (lo, hi) = bounds(b, i, prev, max_part, support);
        for v in lo..=hi {
            current.push(v);
            rec(b, out_len, max_part, support, current, out);
            current.pop();
        }
    }

    rec(b, out_len, max_part, support, &mut current, &mut out);
    out
}

/// Support stream for the basic (capacity-one) family, which drives the
/// truncated Cauchy/Pieri sums.
pub fn one_row_image_support(bottom: &Signature, left_arrow: bool, max_part: i64) -> Vec<Signature> {
    one_row_image_support_for(bottom, left_arrow, max_part, HorizontalSupport::CapacityOne)
}

/// Predecessors: bottoms with nonzero one-row weight under `top`, optionally
/// pruned to dominate `floor` (paths only move right, so intermediates below
/// the running floor can never reach it).
fn one_row_predecessors(
    top: &Signature,
    left_arrow: bool,
    support: HorizontalSupport,
    floor: Option<&Signature>,
) -> Vec<Signature> {
    let t = top.parts();
    let in_len = match (left_arrow, t.len()) {
        (true, 0) => return Vec::new(),
        (true, n) => n - 1,
        (false, n) => n,
    };
    let floor_at = |i: usize| -> i64 {
        floor
            .and_then(|f| f.parts().get(i).copied())
            .unwrap_or(0)
            .max(0)
    };
    let mut out = Vec::new();
    let mut current: Vec<i64> = Vec::with_capacity(in_len);

    fn rec(
        t: &[i64],
        in_len: usize,
        left_arrow: bool,
        support: HorizontalSupport,
        floor_at: &dyn Fn(usize) -> i64,
        current: &mut Vec<i64>,
        out: &mut Vec<Signature>,
    ) {
        if current.len() == in_len {
            out.push(Signature::new(current.clone()).expect("sorted by construction"));
            return;
        }
        let i = current.len();
        let prev = current.last().copied();
        let (mut lo, mut hi) = match support {
            HorizontalSupport::CapacityOne => {
                // Strips: t_1 >= b_1 >= t_2 >= b_2 >= ... (b_i in [t_{i+1}, t_i]).
                (t.get(i + 1).copied().unwrap_or(0), t[i])
            }
            HorizontalSupport::Unbounded => (0, t[i]),
            HorizontalSupport::UnitStep => ((t[i] - 1).max(0), t[i]),
        };
        lo = lo.max(floor_at(i));
        if let Some(p) = prev {
            hi = hi.min(p);
        }
        // Parts of intermediates stay nonnegative.
        lo = lo.max(0);
        let mut v = hi;
        while v >= lo {
            current.push(v);
            rec(t, in_len, left_arrow, support, floor_at, current, out);
            current.pop();
            v -= 1;
        }
    }

    rec(t, in_len, left_arrow, support, &floor_at, &mut current, &mut out);
    out
}

/// Skew function F_{lambda/mu}(u_1..u_R) for R = len(lambda) - len(mu) rows,
/// row j (from the bottom) using us[j].
pub fn skew_f(
    lambda: &Signature,
    mu: &Signature,
    us: &[Scalar],
    family: &WeightFamily,
    params: &Params,
) -> Result<Scalar> {
    if !lambda.is_nonnegative() || !mu.is_nonnegative() {
        return Err(Error::Precondition(
            "skew F needs nonnegative signatures".into(),
        ));
    }
    if lambda.len() < mu.len() || us.len() != lambda.len() - mu.len() {
        return Err(Error::Precondition(format!(
            "skew F needs len(us) = len(lambda) - len(mu) >= 0; got {} variables for {} over {}",
            us.len(),
            lambda.len(),
            mu.len()
        )));
    }
    chain_sum(lambda, mu, us, family, params, true)
}

/// Skew function G_{lambda/nu}(v_1..v_N); boundary lengths equal, general
/// signatures allowed (jointly translated into nonnegative range).
pub fn skew_g(
    lambda: &Signature,
    nu: &Signature,
    vs: &[Scalar],
    family: &WeightFamily,
    params: &Params,
) -> Result<Scalar> {
    if lambda.len() != nu.len() {
        return Err(Error::Precondition(format!(
            "skew G needs equal boundary lengths, got {} and {}",
            lambda.len(),
            nu.len()
        )));
    }
    let min = lambda
        .parts()
        .iter()
        .chain(nu.parts().iter())
        .copied()
        .min()
        .unwrap_or(0)
        .min(0);
    let (lambda, nu) = (lambda.shifted(-min), nu.shifted(-min));
    chain_sum(&lambda, &nu, vs, family, params, false)
}

fn chain_sum(
    top: &Signature,
    bottom: &Signature,
    vars: &[Scalar],
    family: &WeightFamily,
    params: &Params,
    f_rows: bool,
) -> Result<Scalar> {
    let backend = params.backend();
    let rows = vars.len();
    if rows == 0 {
        return Ok(if top == bottom {
            Scalar::one(backend)
        } else {
            Scalar::zero(backend)
        });
    }
    let support = family.horizontal_support();
    // memo[(r, sig)] = value of the r-row strip from `bottom` up to sig.
    let mut memo: HashMap<(usize, Signature), Scalar> = HashMap::new();

    fn value(
        r: usize,
        sig: &Signature,
        bottom: &Signature,
        vars: &[Scalar],
        family: &WeightFamily,
        params: &Params,
        f_rows: bool,
        support: HorizontalSupport,
        memo: &mut HashMap<(usize, Signature), Scalar>,
    ) -> Result<Scalar> {
        let backend = params.backend();
        if r == 0 {
            return Ok(if sig == bottom {
                Scalar::one(backend)
            } else {
                Scalar::zero(backend)
            });
        }
        if let Some(v) = memo.get(&(r, sig.clone())) {
            return Ok(v.clone());
        }
        let mut acc = Scalar::zero(backend);
        for prev in one_row_predecessors(sig, f_rows, support, Some(bottom)) {
            let below = value(r - 1, &prev, bottom, vars, family, params, f_rows, support, memo)?;
            if below.is_zero() {
                continue;
            }
            let row = RowBoundary {
                bottom: prev,
                top: sig.clone(),
                left_arrow: f_rows,
            };
            let w = one_row_weight(&row, &vars[r - 1], family, params)?;
            if w.is_zero() {
                continue;
            }
            acc += &(&below * &w);
        }
        memo.insert((r, sig.clone()), acc.clone());
        Ok(acc)
    }

    value(rows, top, bottom, vars, family, params, f_rows, support, &mut memo)
}

/// Which route computes a conjugated skew function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjugationRoute {
    /// Multiply the plain value by c(lambda)/c(mu).
    CFactorRatio,
    /// Run the lattice with the conjugated weight family.
    ConjugatedWeights,
}

/// F^c_{lambda/mu} = c(lambda)/c(mu) F_{lambda/mu}; both routes implemented,
/// their equality is a test.
pub fn skew_f_conjugated(
    lambda: &Signature,
    mu: &Signature,
    us: &[Scalar],
    params: &Params,
    route: ConjugationRoute,
) -> Result<Scalar> {
    match route {
        ConjugationRoute::CFactorRatio => {
            let plain = skew_f(lambda, mu, us, &WeightFamily::Basic, params)?;
            let ratio = c_factor(lambda, params)?.try_div(&c_factor(mu, params)?, "conjugation")?;
            Ok(&plain * &ratio)
        }
        ConjugationRoute::ConjugatedWeights => {
            skew_f(lambda, mu, us, &WeightFamily::Conjugated, params)
        }
    }
}

pub fn skew_g_conjugated(
    lambda: &Signature,
    nu: &Signature,
    vs: &[Scalar],
    params: &Params,
    route: ConjugationRoute,
) -> Result<Scalar> {
    match route {
        ConjugationRoute::CFactorRatio => {
            if !lambda.is_nonnegative() || !nu.is_nonnegative() {
                return Err(Error::Precondition(
                    "conjugated skew G needs nonnegative signatures".into(),
                ));
            }
            let plain = skew_g(lambda, nu, vs, &WeightFamily::Basic, params)?;
            let ratio = c_factor(lambda, params)?.try_div(&c_factor(nu, params)?, "conjugation")?;
            Ok(&plain * &ratio)
        }
        ConjugationRoute::ConjugatedWeights => {
            skew_g(lambda, nu, vs, &WeightFamily::Conjugated, params)
        }
    }
}

/// Non-skew F_mu = F_{mu / empty}.
pub fn f_lattice(mu: &Signature, us: &[Scalar], params: &Params) -> Result<Scalar> {
    skew_f(mu, &Signature::empty(), us, &WeightFamily::Basic, params)
}

/// Non-skew G_nu = G_{nu / 0^n}.
pub fn g_lattice(nu: &Signature, vs: &[Scalar], params: &Params) -> Result<Scalar> {
    skew_g(nu, &Signature::zeros(nu.len()), vs, &WeightFamily::Basic, params)
}

/// One forward sweep computing F_mu(us[..len(mu)]) for every nonnegative mu
/// with length <= len(us) and parts <= max_part. Level r of the sweep holds
/// all r-row strips grown from the empty signature, so each level is a full
/// table of non-skew F values.
pub fn f_lattice_all(
    us: &[Scalar],
    max_part: i64,
    family: &WeightFamily,
    params: &Params,
) -> Result<std::collections::BTreeMap<Signature, Scalar>> {
    let support = family.horizontal_support();
    let mut out = std::collections::BTreeMap::new();
    let mut frontier = std::collections::BTreeMap::new();
    frontier.insert(Signature::empty(), Scalar::one(params.backend()));
    out.insert(Signature::empty(), Scalar::one(params.backend()));
    for u in us {
        let mut next: std::collections::BTreeMap<Signature, Scalar> =
            std::collections::BTreeMap::new();
        for (bottom, value) in &frontier {
            for top in one_row_image_support_for(bottom, true, max_part, support) {
                let row = RowBoundary {
                    bottom: bottom.clone(),
                    top: top.clone(),
                    left_arrow: true,
                };
                let w = one_row_weight(&row, u, family, params)?;
                if w.is_zero() {
                    continue;
                }
                let contribution = value * &w;
                match next.get_mut(&top) {
                    Some(acc) => *acc += &contribution,
                    None => {
                        next.insert(top, contribution);
                    }
                }
            }
        }
        out.extend(next.iter().map(|(k, v)| (k.clone(), v.clone())));
        frontier = next;
    }
    Ok(out)
}

/// One forward sweep computing G_{nu/bottom}(vs) for every nu dominating
/// `bottom` with parts <= max_part.
pub fn g_lattice_all(
    bottom: &Signature,
    vs: &[Scalar],
    max_part: i64,
    family: &WeightFamily,
    params: &Params,
) -> Result<std::collections::BTreeMap<Signature, Scalar>> {
    let support = family.horizontal_support();
    let mut frontier = std::collections::BTreeMap::new();
    frontier.insert(bottom.clone(), Scalar::one(params.backend()));
    for v in vs {
        let mut next: std::collections::BTreeMap<Signature, Scalar> =
            std::collections::BTreeMap::new();
        for (prev, value) in &frontier {
            for top in one_row_image_support_for(prev, false, max_part, support) {
                let row = RowBoundary {
                    bottom: prev.clone(),
                    top: top.clone(),
                    left_arrow: false,
                };
                let w = one_row_weight(&row, v, family, params)?;
                if w.is_zero() {
                    continue;
                }
                let contribution = value * &w;
                match next.get_mut(&top) {
                    Some(acc) => *acc += &contribution,
                    None => {
                        next.insert(top, contribution);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(frontier)
}
