//! Signatures: weakly decreasing integer tuples, their multiplicity view,
//! cluster structure, and enumeration.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::qseries::q_pochhammer;
use crate::scalar::Scalar;

/// A weakly decreasing integer tuple; the empty signature is valid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    parts: Vec<i64>,
}

impl Signature {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!(
                "signature parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Signature { parts })
    }

    pub fn empty() -> Self {
        Signature { parts: Vec::new() }
    }

    /// `0^n`.
    pub fn zeros(n: usize) -> Self {
        Signature { parts: vec![0; n] }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, or None for the empty signature.
    pub fn first(&self) -> Option<i64> {
        self.parts.first().copied()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.parts.last().map_or(true, |&p| p >= 0)
    }

    pub fn sum(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Multiplicity of the value `v` among the parts.
    pub fn multiplicity(&self, v: i64) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }

    /// The multiplicity map j -> m_j with finite support.
    pub fn multiplicities(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn from_multiplicities(m: &BTreeMap<i64, usize>) -> Self {
        let mut parts = Vec::new();
        for (&v, &count) in m.iter().rev() {
            parts.extend(std::iter::repeat(v).take(count));
        }
        Signature { parts }
    }

    /// Maximal runs of equal parts, in order: (3,3,1,0,0,0) -> [(3,2),(1,1),(0,3)].
    pub fn clusters(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Number of zero parts (all trailing, for nonnegative signatures).
    pub fn zero_count(&self) -> usize {
        self.multiplicity(0)
    }

    /// All parts shifted by `a`.
    pub fn shifted(&self, a: i64) -> Self {
        Signature {
            parts: self.parts.iter().map(|p| p + a).collect(),
        }
    }

    /// Extend with zeros to length `n` (parts must be nonnegative).
    pub fn pad_zeros(&self, n: usize) -> Result<Self> {
        if n < self.len() || !self.is_nonnegative() {
            return Err(Error::Validation(format!(
                "cannot pad {self} with zeros to length {n}"
            )));
        }
        let mut parts = self.parts.clone();
        parts.resize(n, 0);
        Ok(Signature { parts })
    }

    /// Componentwise `self[i] >= other[i]` (equal lengths).
    pub fn dominates(&self, other: &Signature) -> bool {
        self.len() == other.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a >= b)
    }

    /// Parse comma-separated parts; the empty string is the empty signature.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Ok(Signature::empty());
        }
        let parts: Vec<i64> = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Validation(format!("invalid signature part: {p:?}")))
            })
            .collect::<Result<_>>()?;
        Signature::new(parts)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// All nonnegative signatures of length `len` with parts <= `max_part`, in
/// lexicographic order, each exactly once. A negative `max_part` yields an
/// empty range for positive lengths (the empty signature has no parts to
/// bound, so length 0 still yields it).
pub fn enumerate_signatures(len: usize, max_part: i64) -> SignatureIter {
    let start = if max_part < 0 && len > 0 {
        None
    } else {
        Some(vec![0; len])
    };
    SignatureIter {
        len,
        max_part,
        next: start,
    }
}

pub struct SignatureIter {
    len: usize,
    max_part: i64,
    next: Option<Vec<i64>>,
}

impl Iterator for SignatureIter {
    type Item = Signature;

    fn next(&mut self) -> Option<Signature> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Lexicographic successor among weakly decreasing tuples with bounded parts:
        // increment the last incrementable position, reset the suffix to zero.
        let mut pos = self.len;
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            let i = pos - 1;
            let cap = if i == 0 { self.max_part } else { succ[i - 1] };
            if succ[i] < cap {
                succ[i] += 1;
                for p in succ.iter_mut().skip(pos) {
                    *p = 0;
                }
                self.next = Some(succ);
                break;
            }
            pos -= 1;
        }
        Some(Signature { parts: current })
    }
}

/// The normalization constant c(nu) = prod_k (s^2;q)_{n_k} / (q;q)_{n_k}
/// over the multiplicities n_k of a nonnegative signature.
pub fn c_factor(nu: &Signature, params: &Params) -> Result<Scalar> {
    if !nu.is_nonnegative() {
        return Err(Error::Precondition(format!(
            "c_factor: signature must be nonnegative, got {nu}"
        )));
    }
    let s2 = params.s() * params.s();
    let mut acc = Scalar::one(params.backend());
    for (_, count) in nu.clusters() {
        let num = q_pochhammer(&s2, params.q(), count as i64)?;
        let den = q_pochhammer(params.q(), params.q(), count as i64)?;
        acc *= &num.try_div(&den, "c_factor")?;
    }
    Ok(acc)
}
