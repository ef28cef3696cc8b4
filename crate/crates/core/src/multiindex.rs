//! Multiindices in ℕ^d and their two lengths.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of ℕ^d. Positions are 1-based in every external form
/// (flags, files, rendering) and 0-based in the backing vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// Standard basis multiindex `e_k`, `k` 1-based.
    pub fn unit(dim: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= dim, "e_{k} out of range for dimension {dim}");
        let mut v = vec![0; dim];
        v[k - 1] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// |α| = Σ αᵢ.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// l(α): coordinates `1..=d1` weigh 1, the rest weigh 2.
    pub fn hom_len(&self, dim_v1: usize) -> u32 {
        self.0.iter().enumerate().map(|(i, &a)| if i < dim_v1 { a } else { 2 * a }).sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    /// Every β with β ≤ self, in mixed-radix order (last coordinate fastest).
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.dim()];
        loop {
            out.push(MultiIndex(cur.clone()));
            let mut pos = self.dim();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if cur[pos] < self.0[pos] {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = 0;
            }
        }
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), rhs.dim(), "multiindex dimension mismatch");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, a) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Comma-separated exponents, e.g. `"0,0,2"`.
impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Schema("empty multiindex".into()));
        }
        s.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Schema(format!("bad multiindex entry {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

/// (|α|, l(α)).
pub fn lengths(alpha: &MultiIndex, dim_v1: usize) -> (u32, u32) {
    (alpha.order(), alpha.hom_len(dim_v1))
}

/// Graded order used for monomials and term listings: lower total degree
/// first, then the larger exponent in the earliest differing position first.
pub fn graded_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.iter().zip(b).find(|(x, y)| x != y).map_or(Ordering::Equal, |(x, y)| y.cmp(x)))
}

/// Sort key wrapper ordering exponent vectors by [`graded_cmp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedKey(pub Vec<u32>);

impl Ord for GradedKey {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for GradedKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All α ∈ ℕ^d with l(α) ≤ `max_hom_len`, sorted by l(α) and then by
/// [`graded_cmp`].
pub fn multiindices_up_to(dim: usize, dim_v1: usize, max_hom_len: u32) -> Vec<MultiIndex> {
    fn rec(pos: usize, budget: u32, dim_v1: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos == cur.len() {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        let w = if pos < dim_v1 { 1 } else { 2 };
        let mut e = 0;
        while e * w <= budget {
            cur[pos] = e;
            rec(pos + 1, budget - e * w, dim_v1, cur, out);
            e += 1;
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_hom_len, dim_v1, &mut vec![0; dim], &mut out);
    out.sort_by(|a, b| a.hom_len(dim_v1).cmp(&b.hom_len(dim_v1)).then_with(|| graded_cmp(a.as_slice(), b.as_slice())));
    out
}

/// Every vector of length `len` with entries summing to at most `max_sum`.
pub(crate) fn bounded_vectors(len: usize, max_sum: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=budget {
            cur[pos] = e;
            rec(pos + 1, budget - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_sum, &mut vec![0; len], &mut out);
    out
}

/// Every composition of `total` into `parts` non-negative parts.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(pos: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == cur.len() {
            cur[pos] = rest;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rest).rev() {
            cur[pos] = e;
            rec(pos + 1, rest - e, cur, out);
        }
    }
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, total, &mut vec![0; parts], &mut out);
    out
}
