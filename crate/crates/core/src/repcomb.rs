//! Partitions and Young diagram combinatorics: transposes, the `O(m)`
//! admissibility condition, the `m/2` weight shift, `gl(k)` dimensions and
//! Kostka numbers.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::{fmt_rational, Error, Rational, Result};

/// A weakly decreasing sequence of non-negative integers, stored without
/// trailing zeros so `(2,1)` and `(2,1,0)` compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Parses a comma-separated list such as `2,1` or `0,0`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad partition entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `a_i` for 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to length `k`.
    pub fn padded(&self, k: usize) -> Result<Vec<u32>> {
        if self.len() > k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: self.len(),
            });
        }
        let mut v = self.0.clone();
        v.resize(k, 0);
        Ok(v)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A weight `(lambda_1, ..., lambda_k)` with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<Rational>);

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(fmt_rational).collect();
        v.serialize(s)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", v.join(","))
    }
}

/// Column lengths: `a'_j = #{i : a_i >= j}`.
pub fn transpose(a: &Partition) -> Partition {
    let cols = a.0.first().copied().unwrap_or(0);
    Partition(
        (1..=cols)
            .map(|j| a.0.iter().filter(|&&ai| ai >= j).count() as u32)
            .collect(),
    )
}

/// `(a')_1 + (a')_2 <= m`: the first two columns of the diagram hold at most
/// `m` boxes.
pub fn is_admissible(a: &Partition, m: usize) -> bool {
    let t = transpose(a);
    (t.part(1) + t.part(2)) as usize <= m
}

/// `a_i + m/2`, padded with `m/2` up to length `k`.
pub fn shift(a: &Partition, m: usize, k: usize) -> Result<WeightVector> {
    let half = Rational::new(BigInt::from(m), BigInt::from(2));
    Ok(WeightVector(
        a.padded(k)?
            .into_iter()
            .map(|ai| Rational::from_integer(ai.into()) + &half)
            .collect(),
    ))
}

/// Dimension of the irreducible `gl(k)` module with highest weight `a`:
/// `prod_{i<j} (a_i - a_j + j - i) / (j - i)`.
pub fn gl_dim(a: &Partition, k: usize) -> Result<u64> {
    let p = a.padded(k)?;
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        for j in (i + 1)..k {
            num *= BigInt::from(p[i] as i64 - p[j] as i64 + (j - i) as i64);
            den *= BigInt::from(j - i);
        }
    }
    Ok((num / den).to_u64().expect("gl dimension overflows u64"))
}

/// Number of semistandard tableaux of shape `a` and content `content`
/// (entry `t` used `content[t-1]` times).
pub fn kostka(a: &Partition, content: &[u32]) -> u64 {
    if a.size() != content.iter().sum::<u32>() {
        return 0;
    }
    let mut memo = HashMap::new();
    kostka_rec(a.parts(), content, &mut memo)
}

// Removes the cells holding the largest entry, which form a horizontal strip.
fn kostka_rec(shape: &[u32], content: &[u32], memo: &mut HashMap<(Vec<u32>, usize), u64>) -> u64 {
    let Some((&last, rest)) = content.split_last() else {
        return u64::from(shape.is_empty());
    };
    let key = (shape.to_vec(), content.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // inner shapes mu with shape[i+1] <= mu[i] <= shape[i] and |shape/mu| = last
    let mut total = 0;
    let mut mu = vec![0u32; shape.len()];
    fn strips(
        shape: &[u32],
        i: usize,
        remaining: u32,
        mu: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if i == shape.len() {
            if remaining == 0 {
                let mut inner = mu.clone();
                while inner.last() == Some(&0) {
                    inner.pop();
                }
                visit(&inner);
            }
            return;
        }
        let lo = shape.get(i + 1).copied().unwrap_or(0);
        let hi = shape[i];
        for mi in lo..=hi {
            let removed = hi - mi;
            if removed > remaining {
                continue;
            }
            mu[i] = mi;
            strips(shape, i + 1, remaining - removed, mu, visit);
        }
    }
    let mut inners = Vec::new();
    strips(shape, 0, last, &mut mu, &mut |inner| {
        inners.push(inner.to_vec())
    });
    for inner in inners {
        total += kostka_rec(&inner, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Partitions of `n` with at most `max_len` parts, each at most `max_part`,
/// in reverse lexicographic order.
pub fn partitions(n: u32, max_len: usize, max_part: u32) -> Vec<Partition> {
    fn go(n: u32, max_len: usize, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if max_len == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            prefix.push(p);
            go(n - p, max_len - 1, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions with at most `max_len` parts and largest part at most
/// `max_part`.
pub fn partitions_in_box(max_len: usize, max_part: u32) -> Vec<Partition> {
    (0..=(max_len as u32 * max_part))
        .flat_map(|n| partitions(n, max_len, max_part))
        .collect()
}
