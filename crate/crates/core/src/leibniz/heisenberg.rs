use num::{BigInt, One};

use crate::multiindex::{compositions, MultiIndex};
use crate::rational::{factorial_table, inv_pow2, Rational};

use super::expand::{merge_terms, LeibnizTerm};

/// `T_{2n+1}^k (f * g)` on ℍₙ from the closed form, without touching the
/// structure tensor.
///
/// Summands are indexed by `l + m + Σ(aᵢ + bᵢ) = k` where `aᵢ` counts the
/// bracket `(i, n+i)` and `bᵢ` counts `(n+i, i)`. The weight is
/// `k! / (l! m! a! b!) · 2^{-Σ(a+b)} · (-1)^{Σb}`.
pub fn heisenberg_tk_terms(n: usize, k: u32) -> Vec<LeibnizTerm> {
    assert!(n >= 1, "ℍₙ needs n >= 1");
    let table = factorial_table(k);
    let mut raw = Vec::new();
    for parts in compositions(k, 2 * n + 2) {
        let (l, m) = (parts[0], parts[1]);
        let a = &parts[2..2 + n];
        let b = &parts[2 + n..];
        let sc: u32 = a.iter().chain(b).sum();
        let den = parts.iter().fold(BigInt::one(), |acc, &x| acc * &table[x as usize]);
        let mut coeff = Rational::new(table[k as usize].clone(), den) * inv_pow2(sc);
        if b.iter().sum::<u32>() % 2 == 1 {
            coeff = -coeff;
        }
        let left = [a, b, &[l]].concat();
        let right = [b, a, &[m]].concat();
        raw.push(LeibnizTerm { left: MultiIndex::new(left), right: MultiIndex::new(right), coeff });
    }
    merge_terms(raw).0
}
