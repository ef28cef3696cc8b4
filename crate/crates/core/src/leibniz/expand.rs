use std::collections::HashMap;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::multiindex::{bounded_vectors, GradedKey, MultiIndex};
use crate::rational::{factorial_table, Rational};
use crate::tensor::{StructureTensor, Triple};

use super::coeff::c_sigma;
use super::index::SigmaIndex;

/// One summand `coeff · T^left f * T^right g` of a merged expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeibnizTerm {
    pub left: MultiIndex,
    pub right: MultiIndex,
    pub coeff: Rational,
}

/// One unmerged `(β, γ, σ)` summand; `left = β + σ₁`, `right = γ + σ₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub beta: MultiIndex,
    pub gamma: MultiIndex,
    pub sigma: SigmaIndex,
    pub left: MultiIndex,
    pub right: MultiIndex,
    pub coeff: Rational,
}

/// Merged expansion plus the bookkeeping behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub alpha: MultiIndex,
    pub terms: Vec<LeibnizTerm>,
    /// Number of `(β, γ, σ)` triples before merging.
    pub raw_count: usize,
    /// `(left, right)` pairs whose merged coefficient summed to zero.
    pub cancelled: Vec<(MultiIndex, MultiIndex)>,
}

/// Every σ ∈ ℕ^D with σ₀ ≤ `bound`, ordered by |σ| and then
/// lexicographically on the count vector over D sorted by `(k, i, j)`.
pub fn sigma_indices(tensor: &StructureTensor, bound: &MultiIndex) -> Vec<SigmaIndex> {
    let mut groups: Vec<(Vec<Triple>, u32)> = Vec::new();
    for k in 1..=tensor.dim() {
        let b = bound.as_slice().get(k - 1).copied().unwrap_or(0);
        let keys: Vec<Triple> = tensor.support().filter(|t| t.k == k).collect();
        if b > 0 && !keys.is_empty() {
            groups.push((keys, b));
        }
    }
    let mut acc: Vec<Vec<(Triple, u32)>> = vec![Vec::new()];
    for (keys, b) in &groups {
        let options = bounded_vectors(keys.len(), *b);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.extend(keys.iter().copied().zip(v.iter().copied()));
                    p
                })
            })
            .collect();
    }
    let mut keyed: Vec<(u32, Vec<u32>, SigmaIndex)> = acc
        .into_iter()
        .map(|pairs| {
            let counts: Vec<u32> = pairs.iter().map(|(_, c)| *c).collect();
            (counts.iter().sum(), counts, SigmaIndex::from_counts(pairs))
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, s)| s).collect()
}

pub(super) fn check_alpha(tensor: &StructureTensor, alpha: &MultiIndex) -> Result<()> {
    if alpha.dim() != tensor.dim() {
        return Err(Error::DimensionMismatch { expected: tensor.dim(), got: alpha.dim() });
    }
    tensor.ensure_valid()
}

pub(super) fn fact_product(table: &[BigInt], v: &[u32]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, &x| acc * &table[x as usize])
}

/// Visits every `(β, γ, σ)` with `β + γ + σ₀ = α` in enumeration order:
/// σ as in [`sigma_indices`], β in mixed-radix order within each σ.
fn for_each_raw(
    tensor: &StructureTensor,
    alpha: &MultiIndex,
    mut visit: impl FnMut(&MultiIndex, &MultiIndex, &SigmaIndex, MultiIndex, MultiIndex, Rational),
) -> Result<()> {
    check_alpha(tensor, alpha)?;
    let dim = tensor.dim();
    let table = factorial_table(alpha.as_slice().iter().copied().max().unwrap_or(0));
    let alpha_fact = fact_product(&table, alpha.as_slice());
    for sigma in sigma_indices(tensor, alpha) {
        let rest = alpha.checked_sub(&sigma.target_projection(dim)).expect("σ₀ ≤ α by construction");
        let s1 = sigma.left_projection(dim);
        let s2 = sigma.right_projection(dim);
        let sigma_fact = sigma.counts().fold(BigInt::one(), |acc, (_, c)| acc * &table[c as usize]);
        let base = c_sigma(tensor, &sigma)? * Rational::new(alpha_fact.clone(), sigma_fact);
        for beta in rest.below() {
            let gamma = rest.checked_sub(&beta).expect("β ≤ α - σ₀");
            let den = fact_product(&table, beta.as_slice()) * fact_product(&table, gamma.as_slice());
            let coeff = &base / Rational::from_integer(den);
            let left = &beta + &s1;
            let right = &gamma + &s2;
            visit(&beta, &gamma, &sigma, left, right, coeff);
        }
    }
    Ok(())
}

/// All unmerged summands of the rule for `T^α(f * g)`.
pub fn raw_terms(tensor: &StructureTensor, alpha: &MultiIndex) -> Result<Vec<RawTerm>> {
    let mut out = Vec::new();
    for_each_raw(tensor, alpha, |beta, gamma, sigma, left, right, coeff| {
        out.push(RawTerm { beta: beta.clone(), gamma: gamma.clone(), sigma: sigma.clone(), left, right, coeff })
    })?;
    Ok(out)
}

/// Sums coefficients of equal `(left, right)` pairs, drops exact zeros and
/// sorts by the graded order of the concatenated exponents `left ‖ right`.
/// Returns the merged terms and the pairs that cancelled.
pub fn merge_terms(terms: impl IntoIterator<Item = LeibnizTerm>) -> (Vec<LeibnizTerm>, Vec<(MultiIndex, MultiIndex)>) {
    let mut map: HashMap<(MultiIndex, MultiIndex), Rational> = HashMap::new();
    for t in terms {
        *map.entry((t.left, t.right)).or_insert_with(Rational::zero) += t.coeff;
    }
    let mut cancelled = Vec::new();
    let mut merged = Vec::with_capacity(map.len());
    for ((left, right), coeff) in map {
        if coeff.is_zero() {
            cancelled.push((left, right));
        } else {
            merged.push(LeibnizTerm { left, right, coeff });
        }
    }
    merged.sort_by_cached_key(|t| pair_key(&t.left, &t.right));
    cancelled.sort_by_cached_key(|(l, r)| pair_key(l, r));
    (merged, cancelled)
}

fn pair_key(left: &MultiIndex, right: &MultiIndex) -> GradedKey {
    GradedKey(left.as_slice().iter().chain(right.as_slice()).copied().collect())
}

pub fn expand_leibniz_detailed(tensor: &StructureTensor, alpha: &MultiIndex) -> Result<Expansion> {
    let mut map: HashMap<(MultiIndex, MultiIndex), Rational> = HashMap::new();
    let mut raw_count = 0usize;
    for_each_raw(tensor, alpha, |_, _, _, left, right, coeff| {
        raw_count += 1;
        *map.entry((left, right)).or_insert_with(Rational::zero) += coeff;
    })?;
    let (terms, cancelled) =
        merge_terms(map.into_iter().map(|((left, right), coeff)| LeibnizTerm { left, right, coeff }));
    Ok(Expansion { alpha: alpha.clone(), terms, raw_count, cancelled })
}

/// The merged rule for `T^α(f * g)`: one term per distinct `(left, right)`.
pub fn expand_leibniz(tensor: &StructureTensor, alpha: &MultiIndex) -> Result<Vec<LeibnizTerm>> {
    expand_leibniz_detailed(tensor, alpha).map(|e| e.terms)
}
