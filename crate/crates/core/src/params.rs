//! Global parameter pair (q, s), genericity loci, and deterministic sampling
//! of generic rational evaluation points.
//!
//! Rational-function identities are certified by exact evaluation at random
//! generic points. "Generic" means a fixed list of algebraic loci (vanishing
//! denominators, degenerate q-powers) was verified non-vanishing when the
//! point was constructed; the verified names are carried along for reporting.

use crate::error::{Error, Result};
use crate::rng::DetRng;
use crate::scalar::{require_uniform, Backend, Scalar};

/// Numerator/denominator bound for sampled rationals. Small enough to keep
/// exact intermediates cheap, huge as a generic set.
pub const SAMPLE_BOUND: i64 = 64;

const MAX_ATTEMPTS: usize = 20_000;

/// Degeneracy loci that degenerate parameter families may lift explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relaxation {
    /// Allow s = 0 (Hall-Littlewood reduction).
    ZeroS,
    /// Allow q = 0 (Schur-like reduction).
    ZeroQ,
}

/// The global pair (q, s) plus the genericity metadata verified at
/// construction time for a given depth D: q^j != 1 (1 <= j <= D) and
/// s^2 q^j != 1 (0 <= j <= D), q != 0, s != 0.
#[derive(Clone, Debug)]
pub struct Params {
    q: Scalar,
    s: Scalar,
    depth: usize,
    excluded_loci: Vec<String>,
    relaxed: Vec<Relaxation>,
}

/// Zero test used for locus verification: exact zero on the exact backend, a
/// small threshold on the complex one.
fn locus_vanishes(x: &Scalar) -> bool {
    match x.backend() {
        Backend::Exact => x.is_zero(),
        Backend::Complex => x.abs() < 1e-11,
    }
}

impl Params {
    pub fn new(q: Scalar, s: Scalar, depth: usize) -> Result<Self> {
        Self::with_relaxations(q, s, depth, &[])
    }

    pub fn with_relaxations(
        q: Scalar,
        s: Scalar,
        depth: usize,
        relaxed: &[Relaxation],
    ) -> Result<Self> {
        let backend = require_uniform("Params::new", &[&q, &s])?;
        let one = Scalar::one(backend);
        let mut loci = Vec::new();
        let mut check = |name: String, value: &Scalar| -> Result<()> {
            if locus_vanishes(value) {
                return Err(Error::Precondition(format!(
                    "degenerate parameters: locus {name} vanishes"
                )));
            }
            loci.push(name);
            Ok(())
        };

        if !relaxed.contains(&Relaxation::ZeroQ) {
            check("q".into(), &q)?;
            let mut qj = q.clone();
            for j in 1..=depth.max(1) {
                check(format!("1 - q^{j}"), &(&one - &qj))?;
                qj = &qj * &q;
            }
        }
        if !relaxed.contains(&Relaxation::ZeroS) {
            check("s".into(), &s)?;
        }
        let s2 = &s * &s;
        let mut s2qj = s2;
        for j in 0..=depth {
            check(format!("1 - s^2 q^{j}"), &(&one - &s2qj))?;
            s2qj = &s2qj * &q;
        }

        Ok(Params {
            q,
            s,
            depth,
            excluded_loci: loci,
            relaxed: relaxed.to_vec(),
        })
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn backend(&self) -> Backend {
        self.q.backend()
    }

    /// Names of the degeneracy loci verified non-vanishing at construction.
    pub fn excluded_loci(&self) -> &[String] {
        &self.excluded_loci
    }

    pub fn relaxations(&self) -> &[Relaxation] {
        &self.relaxed
    }

    /// Same parameters on the complex backend (for quadrature and limits).
    pub fn to_complex(&self) -> Params {
        Params {
            q: self.q.as_complex_scalar(),
            s: self.s.as_complex_scalar(),
            depth: self.depth,
            excluded_loci: self.excluded_loci.clone(),
            relaxed: self.relaxed.clone(),
        }
    }

    /// The fractional-linear image xi(u) = (u - s)/(1 - s u) that carries all
    /// signature-part exponents.
    pub fn xi(&self, u: &Scalar) -> Result<Scalar> {
        let den = &Scalar::one(self.backend()) - &(&self.s * u);
        (u - &self.s).try_div(&den, "xi")
    }
}

/// A sampled generic evaluation point: parameters plus two variable lists.
#[derive(Clone, Debug)]
pub struct GenericPoint {
    pub params: Params,
    pub us: Vec<Scalar>,
    pub vs: Vec<Scalar>,
}

fn sample_rational(rng: &mut DetRng, bound: i64) -> Scalar {
    let num = rng.int_range(1, bound);
    let den = rng.int_range(1, bound);
    let sign = if rng.bool() { 1 } else { -1 };
    Scalar::ratio(sign * num, den)
}

/// Checks the variable-list loci for a candidate point: variables pairwise
/// distinct, u_i != q^{+-1} u_j, 1 - s x != 0, x != s (unless `near_s`),
/// 1 - u_i v_j != 0.
fn variables_generic(params: &Params, us: &[Scalar], vs: &[Scalar], near_s: bool) -> bool {
    let one = Scalar::one(params.backend());
    let all: Vec<&Scalar> = us.iter().chain(vs.iter()).collect();
    for (i, x) in all.iter().enumerate() {
        if locus_vanishes(&(&one - &(params.s() * *x))) {
            return false;
        }
        if !near_s && locus_vanishes(&(*x - params.s())) {
            return false;
        }
        if locus_vanishes(x) {
            return false;
        }
        for y in all.iter().skip(i + 1) {
            if locus_vanishes(&(*x - *y)) {
                return false;
            }
            if locus_vanishes(&(*x - &(params.q() * *y))) {
                return false;
            }
            if locus_vanishes(&(*y - &(params.q() * *x))) {
                return false;
            }
        }
    }
    for u in us {
        for v in vs {
            if locus_vanishes(&(&one - &(u * v))) {
                return false;
            }
        }
    }
    true
}

/// Deterministic generic sampling: seed-reproducible rationals with
/// numerators and denominators bounded by [`SAMPLE_BOUND`], rejected until
/// every parameter and variable locus holds. `count` variables per list.
pub fn sample_generic(seed: u64, depth: usize, count: usize) -> Result<GenericPoint> {
    if depth < 1 {
        return Err(Error::Precondition("sample_generic: depth must be >= 1".into()));
    }
    let mut rng = DetRng::new(seed);
    for _ in 0..MAX_ATTEMPTS {
        let q = sample_rational(&mut rng, SAMPLE_BOUND);
        let s = sample_rational(&mut rng, SAMPLE_BOUND);
        let params = match Params::new(q, s, depth) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let us: Vec<Scalar> = (0..count).map(|_| sample_rational(&mut rng, SAMPLE_BOUND)).collect();
        let vs: Vec<Scalar> = (0..count).map(|_| sample_rational(&mut rng, SAMPLE_BOUND)).collect();
        if !variables_generic(&params, &us, &vs, false) {
            continue;
        }
        return Ok(GenericPoint { params, us, vs });
    }
    Err(Error::GenericitySamplingFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// Variables in a punctured disc around s: x = s + r with 0 < |r| <= 1/radius_inv.
/// Used where an identity is stated for variables in a small neighborhood of s,
/// and to manufacture points with small convergence ratio.
pub fn sample_near_s(rng: &mut DetRng, params: &Params, count: usize, radius_inv: i64) -> Vec<Scalar> {
    let den = radius_inv * SAMPLE_BOUND;
    (0..count)
        .map(|_| {
            let num = rng.int_range(1, SAMPLE_BOUND);
            let sign = if rng.bool() { 1 } else { -1 };
            params.s() + &Scalar::ratio(sign * num, den)
        })
        .collect()
}

/// A generic point whose u- and v-lists sit near s, so that the geometric
/// ratio rho = max |xi(u_i) xi(v_j)| is at most `rho_max`. Rejects and
/// resamples until every locus holds and the ratio bound is met.
pub fn sample_convergent(
    seed: u64,
    depth: usize,
    m: usize,
    n: usize,
    rho_max: f64,
) -> Result<GenericPoint> {
    let mut rng = DetRng::new(seed);
    for _ in 0..MAX_ATTEMPTS {
        let q = sample_rational(&mut rng, SAMPLE_BOUND);
        let s = sample_rational(&mut rng, SAMPLE_BOUND);
        let params = match Params::new(q, s, depth) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let us = sample_near_s(&mut rng, &params, m, 50);
        let vs = sample_near_s(&mut rng, &params, n, 50);
        if !variables_generic(&params, &us, &vs, true) {
            continue;
        }
        let rho = match convergence_ratio(&params, &us, &vs) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if rho > rho_max {
            continue;
        }
        return Ok(GenericPoint { params, us, vs });
    }
    Err(Error::GenericitySamplingFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// rho = max over pairs of |xi(u_i) xi(v_j)|; the geometric decay ratio of the
/// Cauchy-type series tails.
pub fn convergence_ratio(params: &Params, us: &[Scalar], vs: &[Scalar]) -> Result<f64> {
    let mut rho: f64 = 0.0;
    for u in us {
        for v in vs {
            let r = (&params.xi(u)? * &params.xi(v)?).abs();
            rho = rho.max(r);
        }
    }
    Ok(rho)
}
