#![allow(dead_code)]

use std::collections::HashMap;

use nilbniz_core::fuzz::seeded_tensor;
use nilbniz_core::presets::heisenberg;
use nilbniz_core::rational::{int, rat};
use nilbniz_core::{LeibnizTerm, MultiIndex, Rational, StructureTensor};
use num::Zero;

/// Seeded random tensors used across suites, `d <= 6`.
pub fn fuzz_suite() -> Vec<(String, StructureTensor)> {
    [(3, 2, 11), (4, 2, 12), (5, 3, 13), (6, 4, 14), (6, 3, 15)]
        .into_iter()
        .map(|(d, d1, seed)| {
            let t = seeded_tensor(d, d1, 0.8, seed).unwrap();
            assert!(!t.is_abelian(), "fuzz tensor ({d},{d1},{seed}) came out empty");
            (format!("fuzz(d={d},d1={d1},seed={seed})"), t)
        })
        .collect()
}

/// ℍ₁, ℍ₂ and the fuzz suite.
pub fn all_tensors() -> Vec<(String, StructureTensor)> {
    let mut v = vec![("H1".to_string(), heisenberg(1)), ("H2".to_string(), heisenberg(2))];
    v.extend(fuzz_suite());
    v
}

pub fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex::new(v.to_vec())
}

/// Term list as a map, for order-free comparison.
pub fn term_map(terms: &[LeibnizTerm]) -> HashMap<(MultiIndex, MultiIndex), Rational> {
    terms.iter().map(|t| ((t.left.clone(), t.right.clone()), t.coeff.clone())).collect()
}

pub type Terms = HashMap<(MultiIndex, MultiIndex), Rational>;

// Heisenberg expansions written out by hand from the known formulas for
// `T_{2n+1}` and `T_{2n+1}²`, independently of the engine.

/// Accumulates `c · T^{ls} f * T^{rs} g`, where `ls`/`rs` list 1-based
/// coordinates with repetition.
struct Builder {
    dim: usize,
    terms: Terms,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { dim: 2 * n + 1, terms: HashMap::new() }
    }

    fn idx(&self, coords: &[usize]) -> MultiIndex {
        let mut v = vec![0; self.dim];
        for &c in coords {
            v[c - 1] += 1;
        }
        MultiIndex::new(v)
    }

    fn add(&mut self, c: Rational, ls: &[usize], rs: &[usize]) {
        let key = (self.idx(ls), self.idx(rs));
        *self.terms.entry(key).or_insert_with(Rational::zero) += c;
    }

    fn finish(mut self) -> Terms {
        self.terms.retain(|_, c| !c.is_zero());
        self.terms
    }
}

pub fn first_order(n: usize) -> Terms {
    let z = 2 * n + 1;
    let mut b = Builder::new(n);
    b.add(int(1), &[z], &[]);
    b.add(int(1), &[], &[z]);
    for i in 1..=n {
        b.add(rat(1, 2), &[i], &[n + i]);
        b.add(rat(-1, 2), &[n + i], &[i]);
    }
    b.finish()
}

pub fn second_order(n: usize) -> Terms {
    let z = 2 * n + 1;
    let mut b = Builder::new(n);
    b.add(int(1), &[z, z], &[]);
    b.add(int(1), &[], &[z, z]);
    b.add(int(2), &[z], &[z]);
    for i in 1..=n {
        b.add(int(1), &[z, i], &[n + i]);
        b.add(int(1), &[i], &[z, n + i]);
        b.add(int(-1), &[z, n + i], &[i]);
        b.add(int(-1), &[n + i], &[z, i]);
    }
    let q = rat(1, 4);
    for i in 1..=n {
        for j in 1..=n {
            b.add(q.clone(), &[j, i], &[n + j, n + i]);
            b.add(-q.clone(), &[n + j, i], &[j, n + i]);
            b.add(-q.clone(), &[j, n + i], &[n + j, i]);
            b.add(q.clone(), &[n + j, n + i], &[j, i]);
        }
    }
    b.finish()
}
