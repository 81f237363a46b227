//! Period sequences by brute force: constant terms of powers of a potential.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{factorial, LaurentPoly, TSeries};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::potential::graph_potential;
use crate::tqft::trace_formula;

/// `pi[k] = [W^k]_0` for `k = 0..=order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodSequence {
    pub order: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub pi: Vec<BigInt>,
    /// `g<genus>e<parity>` when the sequence comes from a closed graph
    pub graph_fingerprint: Option<String>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// `phat[k] = pi[k] / k!`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceSequence {
    pub order: usize,
    pub phat: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Tqft,
    Both,
}

/// Limits for the brute-force engine.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteOptions {
    /// fail instead of growing the running product past this many terms
    pub max_terms: Option<usize>,
}

/// Exponent vectors packed into one `i128`, one digit of base `2h+1` per
/// variable, each stored with offset `h`. Sums of packed keys stay valid
/// as long as every partial exponent stays in `[-h, h]`.
struct Packer {
    n: usize,
    h: i64,
    base: i128,
    offset: i128,
}

impl Packer {
    fn new(n: usize, h: i64) -> Result<Self> {
        let base = 2 * i128::from(h) + 1;
        let mut offset = 0i128;
        let mut place = 1i128;
        for _ in 0..n {
            offset = offset
                .checked_add(place.checked_mul(i128::from(h)).ok_or_else(too_wide)?)
                .ok_or_else(too_wide)?;
            place = place.checked_mul(base).ok_or_else(too_wide)?;
        }
        Ok(Packer { n, h, base, offset })
    }

    fn pack(&self, e: &[i32]) -> i128 {
        e.iter()
            .rev()
            .fold(0i128, |acc, &a| acc * self.base + i128::from(i64::from(a) + self.h))
    }

    fn unpack(&self, mut k: i128) -> Vec<i32> {
        let mut e = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            e.push((k.rem_euclid(self.base) as i64 - self.h) as i32);
            k = k.div_euclid(self.base);
        }
        e
    }

    fn add(&self, a: i128, b: i128) -> i128 {
        a + b - self.offset
    }
}

fn too_wide() -> Error {
    Error::Unsupported("too many variables or too high an order for the brute-force engine".into())
}

type Terms = Vec<(i128, BigInt)>;

fn multiply(cur: &Terms, w: &Terms, packer: &Packer) -> HashMap<i128, BigInt> {
    let expand = |chunk: &[(i128, BigInt)]| {
        let mut out: HashMap<i128, BigInt> = HashMap::with_capacity(chunk.len() * w.len());
        for (k1, c1) in chunk {
            for (k2, c2) in w {
                *out.entry(packer.add(*k1, *k2)).or_default() += c1 * c2;
            }
        }
        out
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let chunk = (cur.len() / (4 * rayon::current_num_threads())).max(256);
        cur.par_chunks(chunk)
            .map(expand)
            .reduce(HashMap::new, |mut a, b| {
                if a.len() < b.len() {
                    return merge(b, a);
                }
                for (k, c) in b {
                    *a.entry(k).or_default() += c;
                }
                a
            })
    }
    #[cfg(not(feature = "parallel"))]
    {
        expand(cur)
    }
}

#[cfg(feature = "parallel")]
fn merge(mut a: HashMap<i128, BigInt>, b: HashMap<i128, BigInt>) -> HashMap<i128, BigInt> {
    for (k, c) in b {
        *a.entry(k).or_default() += c;
    }
    a
}

/// Per order k, the surviving monomials over the non-internal variables.
pub(crate) type ConstantParts = Vec<Vec<(Vec<i32>, BigInt)>>;

/// For each `k = 0..=order`, the part of `p^k` whose exponents vanish in
/// every coordinate flagged in `internal`, as (remaining exponents,
/// coefficient) pairs sorted by exponent.
///
/// Terms whose internal 1-norm exceeds `(order - k) * L`, where `L` is the
/// largest internal 1-norm of a monomial of `p`, can never come back to
/// zero and are dropped.
pub(crate) fn internal_constant_parts(
    p: &LaurentPoly,
    internal: &[bool],
    order: usize,
    opts: BruteOptions,
) -> Result<ConstantParts> {
    let terms = p.integer_terms().ok_or_else(|| {
        Error::Unsupported("the brute-force engine needs integer coefficients".into())
    })?;
    let n = p.vars().len();
    let max_abs = terms
        .iter()
        .flat_map(|(e, _)| e.iter().map(|a| a.unsigned_abs()))
        .max()
        .unwrap_or(0);
    let h = i64::from(max_abs) * order as i64;
    let packer = Packer::new(n, h.max(1))?;
    let l1 = |e: &[i32]| -> i64 {
        e.iter()
            .zip(internal)
            .filter(|(_, &m)| m)
            .map(|(a, _)| i64::from(a.unsigned_abs()))
            .sum()
    };
    let step = terms.iter().map(|(e, _)| l1(e)).max().unwrap_or(0);
    let w: Terms = terms.iter().map(|(e, c)| (packer.pack(e), c.clone())).collect();
    let split = |e: &[i32]| -> Option<Vec<i32>> {
        e.iter()
            .zip(internal)
            .all(|(a, &m)| !m || *a == 0)
            .then(|| e.iter().zip(internal).filter(|(_, &m)| !m).map(|(a, _)| *a).collect())
    };

    let mut cur: Terms = vec![(packer.pack(&vec![0; n]), BigInt::one())];
    let mut out = vec![vec![(vec![0; internal.iter().filter(|m| !**m).count()], BigInt::one())]];
    for k in 1..=order {
        let budget = (order - k) as i64 * step;
        let next = multiply(&cur, &w, &packer);
        let mut kept: Vec<(i128, BigInt, Vec<i32>)> = next
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(key, c)| (key, c, packer.unpack(key)))
            .filter(|(_, _, e)| l1(e) <= budget)
            .collect();
        kept.sort_unstable_by_key(|t| t.0);
        let mut part: Vec<(Vec<i32>, BigInt)> = kept
            .iter()
            .filter_map(|(_, c, e)| split(e).map(|rest| (rest, c.clone())))
            .collect();
        part.sort();
        out.push(part);
        if let Some(cap) = opts.max_terms {
            if kept.len() > cap {
                return Err(Error::Unsupported(format!(
                    "running product reached {} terms at k = {k} (cap {cap})",
                    kept.len()
                )));
            }
        }
        cur = kept.into_iter().map(|(key, c, _)| (key, c)).collect();
    }
    Ok(out)
}

pub fn periods_bruteforce(p: &LaurentPoly, order: usize) -> Result<PeriodSequence> {
    periods_bruteforce_with(p, order, BruteOptions::default())
}

pub fn periods_bruteforce_with(
    p: &LaurentPoly,
    order: usize,
    opts: BruteOptions,
) -> Result<PeriodSequence> {
    let internal = vec![true; p.vars().len()];
    let parts = internal_constant_parts(p, &internal, order, opts)?;
    let pi = parts
        .into_iter()
        .map(|part| part.into_iter().map(|(_, c)| c).sum())
        .collect();
    Ok(PeriodSequence {
        order,
        pi,
        graph_fingerprint: None,
    })
}

pub fn inverse_laplace(s: &PeriodSequence) -> LaplaceSequence {
    LaplaceSequence {
        order: s.order,
        phat: s
            .pi
            .iter()
            .enumerate()
            .map(|(k, p)| BigRational::new(p.clone(), factorial(k)))
            .collect(),
    }
}

/// `pi[k] = k! * phat[k]`; fails if any of these is not an integer.
pub fn laplace_to_periods(series: &TSeries<BigRational>) -> Result<Vec<BigInt>> {
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let v = c * BigRational::from_integer(factorial(k));
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NonIntegral {
                    k,
                    value: v.to_string(),
                })
            }
        })
        .collect()
}

pub fn fingerprint(genus: usize, parity: u8) -> String {
    format!("g{genus}e{parity}")
}

/// Periods of a closed connected graph by the chosen method. `Both` runs
/// the two and fails with [`Error::Mismatch`] at the first disagreement.
pub fn periods_of_graph(g: &ColoredGraph, order: usize, method: Method) -> Result<PeriodSequence> {
    periods_of_graph_with(g, order, method, BruteOptions::default())
}

pub fn periods_of_graph_with(
    g: &ColoredGraph,
    order: usize,
    method: Method,
    opts: BruteOptions,
) -> Result<PeriodSequence> {
    g.check()?;
    let genus = g.genus();
    let parity = g.parity();
    let fp = (g.is_connected() && g.leaves.is_empty() && genus >= 0)
        .then(|| fingerprint(genus as usize, parity));
    let brute = || -> Result<PeriodSequence> {
        let b = graph_potential(g)?;
        Ok(PeriodSequence {
            graph_fingerprint: fp.clone(),
            ..periods_bruteforce_with(&b.potential, order, opts)?
        })
    };
    let tqft = || -> Result<PeriodSequence> {
        if !g.leaves.is_empty() || !g.is_connected() || genus < 2 {
            return Err(Error::Unsupported(
                "the trace formula needs a closed connected graph of genus at least 2".into(),
            ));
        }
        let series = trace_formula(genus as usize, parity, order)?;
        Ok(PeriodSequence {
            order,
            pi: laplace_to_periods(&series)?,
            graph_fingerprint: fp.clone(),
        })
    };
    match method {
        Method::Brute => brute(),
        Method::Tqft => tqft(),
        Method::Both => {
            let (b, t) = (brute()?, tqft()?);
            if let Some(k) = (0..=order).find(|&k| b.pi[k] != t.pi[k]) {
                return Err(Error::Mismatch {
                    k,
                    brute: b.pi[k].to_string(),
                    tqft: t.pi[k].to_string(),
                });
            }
            Ok(b)
        }
    }
}
