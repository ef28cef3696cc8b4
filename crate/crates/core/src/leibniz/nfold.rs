use std::collections::HashMap;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::multiindex::{bounded_vectors, compositions, GradedKey, MultiIndex};
use crate::rational::{factorial_table, Rational};
use crate::tensor::StructureTensor;

use super::coeff::c_tau;
use super::expand::{check_alpha, expand_leibniz, fact_product};
use super::index::{TauIndex, TauKey};

/// One summand `coeff · T^{f₁} f₁ * ... * T^{fₙ} fₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NFoldTerm {
    pub factors: Vec<MultiIndex>,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NFoldExpansion {
    pub alpha: MultiIndex,
    pub n: usize,
    pub terms: Vec<NFoldTerm>,
    pub raw_count: usize,
    pub cancelled: Vec<Vec<MultiIndex>>,
}

/// Every τ ∈ ℕ^{D^(n)} with τ₀ ≤ `bound`, ordered by |τ| and then
/// lexicographically on the count vector over the sorted keys.
pub fn tau_indices(tensor: &StructureTensor, bound: &MultiIndex, n: usize) -> Vec<TauIndex> {
    let mut groups: Vec<(Vec<TauKey>, u32)> = Vec::new();
    for k in 1..=tensor.dim() {
        let b = bound.as_slice().get(k - 1).copied().unwrap_or(0);
        let mut keys = Vec::new();
        for triple in tensor.support().filter(|t| t.k == k) {
            for r in 1..=n {
                for s in r + 1..=n {
                    keys.push(TauKey { triple, r, s });
                }
            }
        }
        if b > 0 && !keys.is_empty() {
            keys.sort();
            groups.push((keys, b));
        }
    }
    let mut acc: Vec<Vec<(TauKey, u32)>> = vec![Vec::new()];
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
    let mut keyed: Vec<(u32, Vec<u32>, TauIndex)> = acc
        .into_iter()
        .map(|pairs| {
            let counts: Vec<u32> = pairs.iter().map(|(_, c)| *c).collect();
            (counts.iter().sum(), counts, TauIndex::from_counts(pairs))
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, t)| t).collect()
}

/// Every way to write `rest` as an ordered sum of `n` multiindices.
fn splits(rest: &MultiIndex, n: usize) -> Vec<Vec<MultiIndex>> {
    let dim = rest.dim();
    let mut acc: Vec<Vec<Vec<u32>>> = vec![vec![Vec::with_capacity(dim); n]];
    for &r in rest.as_slice() {
        let parts = compositions(r, n);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p| {
                    let mut next = prefix.clone();
                    for (slot, &x) in next.iter_mut().zip(p) {
                        slot.push(x);
                    }
                    next
                })
            })
            .collect();
    }
    acc.into_iter().map(|v| v.into_iter().map(MultiIndex::new).collect()).collect()
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("n-fold rule needs n >= 2, got {n}")));
    }
    Ok(())
}

fn factors_key(factors: &[MultiIndex]) -> GradedKey {
    GradedKey(factors.iter().flat_map(|f| f.as_slice().iter().copied()).collect())
}

/// Sums coefficients of equal factor lists, drops exact zeros and sorts by
/// the graded order of the concatenated factors.
pub fn merge_nfold_terms(terms: impl IntoIterator<Item = NFoldTerm>) -> (Vec<NFoldTerm>, Vec<Vec<MultiIndex>>) {
    let mut map: HashMap<Vec<MultiIndex>, Rational> = HashMap::new();
    for t in terms {
        *map.entry(t.factors).or_insert_with(Rational::zero) += t.coeff;
    }
    let mut cancelled = Vec::new();
    let mut merged = Vec::with_capacity(map.len());
    for (factors, coeff) in map {
        if coeff.is_zero() {
            cancelled.push(factors);
        } else {
            merged.push(NFoldTerm { factors, coeff });
        }
    }
    merged.sort_by_cached_key(|t| factors_key(&t.factors));
    cancelled.sort_by_cached_key(|f| factors_key(f));
    (merged, cancelled)
}

pub fn expand_leibniz_nfold_detailed(tensor: &StructureTensor, alpha: &MultiIndex, n: usize) -> Result<NFoldExpansion> {
    check_n(n)?;
    check_alpha(tensor, alpha)?;
    let dim = tensor.dim();
    let table = factorial_table(alpha.as_slice().iter().copied().max().unwrap_or(0));
    let alpha_fact = fact_product(&table, alpha.as_slice());
    let mut map: HashMap<Vec<MultiIndex>, Rational> = HashMap::new();
    let mut raw_count = 0usize;
    for tau in tau_indices(tensor, alpha, n) {
        let rest = alpha.checked_sub(&tau.target_projection(dim)).expect("τ₀ ≤ α by construction");
        let projections: Vec<MultiIndex> = (1..=n).map(|m| tau.factor_projection(dim, m)).collect();
        let tau_fact = tau.counts().fold(BigInt::one(), |acc, (_, c)| acc * &table[c as usize]);
        let base = c_tau(tensor, &tau)? * Rational::new(alpha_fact.clone(), tau_fact);
        for betas in splits(&rest, n) {
            let den = betas.iter().fold(BigInt::one(), |acc, b| acc * fact_product(&table, b.as_slice()));
            let coeff = &base / Rational::from_integer(den);
            let factors: Vec<MultiIndex> = betas.iter().zip(&projections).map(|(b, p)| b + p).collect();
            raw_count += 1;
            *map.entry(factors).or_insert_with(Rational::zero) += coeff;
        }
    }
    let (terms, cancelled) = merge_nfold_terms(map.into_iter().map(|(factors, coeff)| NFoldTerm { factors, coeff }));
    Ok(NFoldExpansion { alpha: alpha.clone(), n, terms, raw_count, cancelled })
}

/// The merged rule for `T^α(f₁ * ... * fₙ)`.
pub fn expand_leibniz_nfold(tensor: &StructureTensor, alpha: &MultiIndex, n: usize) -> Result<Vec<NFoldTerm>> {
    expand_leibniz_nfold_detailed(tensor, alpha, n).map(|e| e.terms)
}

/// The n-fold rule obtained by bracketing `((f₁ * f₂) * f₃) * ...` and
/// applying the two-fold rule at each level, merged.
pub fn compose_twofold(tensor: &StructureTensor, alpha: &MultiIndex, n: usize) -> Result<Vec<NFoldTerm>> {
    check_n(n)?;
    let mut cache = HashMap::new();
    let raw = compose_rec(tensor, alpha, n, &mut cache)?;
    Ok(merge_nfold_terms(raw).0)
}

fn compose_rec(
    tensor: &StructureTensor,
    alpha: &MultiIndex,
    n: usize,
    cache: &mut HashMap<(MultiIndex, usize), Vec<NFoldTerm>>,
) -> Result<Vec<NFoldTerm>> {
    if let Some(hit) = cache.get(&(alpha.clone(), n)) {
        return Ok(hit.clone());
    }
    let mut out = Vec::new();
    for t in expand_leibniz(tensor, alpha)? {
        if n == 2 {
            out.push(NFoldTerm { factors: vec![t.left, t.right], coeff: t.coeff });
            continue;
        }
        for inner in compose_rec(tensor, &t.left, n - 1, cache)? {
            let mut factors = inner.factors;
            factors.push(t.right.clone());
            out.push(NFoldTerm { factors, coeff: &inner.coeff * &t.coeff });
        }
    }
    let (merged, _) = merge_nfold_terms(out);
    cache.insert((alpha.clone(), n), merged.clone());
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::heisenberg;
    use crate::rational::{int, rat};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn heisenberg_threefold_first_order() {
        let terms = expand_leibniz_nfold(&heisenberg(1), &mi(&[0, 0, 1]), 3).unwrap();
        assert_eq!(terms.len(), 9);
        let ones = terms.iter().filter(|t| t.coeff == int(1)).count();
        let halves = terms.iter().filter(|t| t.coeff == rat(1, 2)).count();
        let neg = terms.iter().filter(|t| t.coeff == rat(-1, 2)).count();
        assert_eq!((ones, halves, neg), (3, 3, 3));
        assert_eq!(terms[0].factors, vec![mi(&[0, 0, 1]), mi(&[0, 0, 0]), mi(&[0, 0, 0])]);
    }

    #[test]
    fn zero_alpha() {
        let terms = expand_leibniz_nfold(&heisenberg(2), &MultiIndex::zeros(5), 4).unwrap();
        assert_eq!(terms, vec![NFoldTerm { factors: vec![MultiIndex::zeros(5); 4], coeff: int(1) }]);
    }

    #[test]
    fn rejects_small_n() {
        assert!(matches!(expand_leibniz_nfold(&heisenberg(1), &mi(&[0, 0, 1]), 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn matches_iterated_composition() {
        let h = heisenberg(1);
        for alpha in [mi(&[1, 0, 1]), mi(&[0, 1, 2]), mi(&[2, 1, 0])] {
            for n in 2..=4 {
                assert_eq!(
                    expand_leibniz_nfold(&h, &alpha, n).unwrap(),
                    compose_twofold(&h, &alpha, n).unwrap(),
                    "alpha = {alpha}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn split_counts() {
        // (2+2 choose 2)·(1+2 choose 2) = 6·3
        assert_eq!(splits(&mi(&[2, 1]), 3).len(), 18);
    }
}
