use std::collections::BTreeMap;

use crate::multiindex::MultiIndex;
use crate::tensor::Triple;

/// σ ∈ ℕ^D, stored sparsely (zero counts are never kept).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaIndex {
    counts: BTreeMap<Triple, u32>,
}

impl SigmaIndex {
    pub fn zero() -> Self {
        SigmaIndex::default()
    }

    /// Repeated keys add up.
    pub fn from_counts(counts: impl IntoIterator<Item = (Triple, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (t, c) in counts {
            if c > 0 {
                *map.entry(t).or_insert(0) += c;
            }
        }
        SigmaIndex { counts: map }
    }

    pub fn get(&self, t: Triple) -> u32 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> impl Iterator<Item = (Triple, u32)> + '_ {
        self.counts.iter().map(|(t, c)| (*t, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    /// |σ| = Σ σ(i,j,k).
    pub fn total(&self) -> u32 {
        self.counts.values().sum()
    }

    /// Largest index mentioned by any key.
    pub(crate) fn max_index(&self) -> usize {
        self.counts.keys().map(|t| t.i.max(t.j).max(t.k)).max().unwrap_or(0)
    }

    fn project(&self, dim: usize, pick: impl Fn(Triple) -> usize) -> MultiIndex {
        let mut v = vec![0u32; dim];
        for (t, c) in &self.counts {
            v[pick(*t) - 1] += c;
        }
        MultiIndex::new(v)
    }

    /// σ₀: `σ₀,k = Σ_{i,j} σ(i,j,k)`.
    pub fn target_projection(&self, dim: usize) -> MultiIndex {
        self.project(dim, |t| t.k)
    }

    /// σ₁: `σ₁,i = Σ_{j,k} σ(i,j,k)`.
    pub fn left_projection(&self, dim: usize) -> MultiIndex {
        self.project(dim, |t| t.i)
    }

    /// σ₂: `σ₂,j = Σ_{i,k} σ(i,j,k)`.
    pub fn right_projection(&self, dim: usize) -> MultiIndex {
        self.project(dim, |t| t.j)
    }

    /// σᵀ: every key `(i,j,k)` becomes `(j,i,k)`.
    pub fn transposed(&self) -> SigmaIndex {
        SigmaIndex { counts: self.counts.iter().map(|(t, c)| (t.swapped(), *c)).collect() }
    }

    pub fn add(&self, other: &SigmaIndex) -> SigmaIndex {
        SigmaIndex::from_counts(self.counts().chain(other.counts()))
    }

    pub fn checked_sub(&self, other: &SigmaIndex) -> Option<SigmaIndex> {
        let mut out = self.counts.clone();
        for (t, c) in other.counts() {
            let slot = out.get_mut(&t)?;
            *slot = slot.checked_sub(c)?;
            if *slot == 0 {
                out.remove(&t);
            }
        }
        Some(SigmaIndex { counts: out })
    }

    /// Every σ' with σ' ≤ σ keywise.
    pub fn below(&self) -> Vec<SigmaIndex> {
        let keys: Vec<(Triple, u32)> = self.counts().collect();
        let bound = MultiIndex::new(keys.iter().map(|(_, c)| *c).collect());
        bound
            .below()
            .into_iter()
            .map(|v| SigmaIndex::from_counts(keys.iter().zip(v.as_slice()).map(|((t, _), c)| (*t, *c))))
            .collect()
    }
}

/// A key `(i, j, k, r, s)` of D^(n): triple `(i,j,k)` in the support and
/// factor slots `1 <= r < s <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauKey {
    pub triple: Triple,
    pub r: usize,
    pub s: usize,
}

/// τ ∈ ℕ^{D^(n)}, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauIndex {
    counts: BTreeMap<TauKey, u32>,
}

impl TauIndex {
    pub fn from_counts(counts: impl IntoIterator<Item = (TauKey, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (key, c) in counts {
            if c > 0 {
                *map.entry(key).or_insert(0) += c;
            }
        }
        TauIndex { counts: map }
    }

    pub fn counts(&self) -> impl Iterator<Item = (TauKey, u32)> + '_ {
        self.counts.iter().map(|(t, c)| (*t, *c))
    }

    pub fn total(&self) -> u32 {
        self.counts.values().sum()
    }

    /// τ₀: `τ₀,k = Σ_{i,j,r,s} τ(i,j,k,r,s)`.
    pub fn target_projection(&self, dim: usize) -> MultiIndex {
        let mut v = vec![0u32; dim];
        for (key, c) in &self.counts {
            v[key.triple.k - 1] += c;
        }
        MultiIndex::new(v)
    }

    /// τ_[m] for factor `m` (1-based): `Σ_{j,k,s} τ(l,j,k,m,s) + Σ_{i,k,r} τ(i,l,k,r,m)`.
    pub fn factor_projection(&self, dim: usize, m: usize) -> MultiIndex {
        let mut v = vec![0u32; dim];
        for (key, c) in &self.counts {
            if key.r == m {
                v[key.triple.i - 1] += c;
            }
            if key.s == m {
                v[key.triple.j - 1] += c;
            }
        }
        MultiIndex::new(v)
    }

    /// Keys with `(r, s) = (1, 2)` as a σ; the identification D^(2) ≅ D.
    pub fn as_sigma(&self) -> Option<SigmaIndex> {
        if self.counts.keys().any(|k| (k.r, k.s) != (1, 2)) {
            return None;
        }
        Some(SigmaIndex::from_counts(self.counts().map(|(k, c)| (k.triple, c))))
    }
}
