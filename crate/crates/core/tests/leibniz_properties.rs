mod common;

use std::collections::HashMap;

use common::{all_tensors, mi, term_map};
use nilbniz_core::check::oracle_check;
use nilbniz_core::leibniz::{compose_twofold, merge_terms, sigma_indices};
use nilbniz_core::multiindex::multiindices_up_to;
use nilbniz_core::presets::{abelian, heisenberg};
use nilbniz_core::rational::int;
use nilbniz_core::{
    expand_leibniz, expand_leibniz_detailed, expand_leibniz_nfold, group_coordinate_polys, heisenberg_tk_terms, power,
    raw_terms, LeibnizTerm, MultiIndex,
};
use num::Zero;

#[test]
fn oracle_equivalence_up_to_length_six() {
    for (name, t) in all_tensors() {
        let r = oracle_check(&t, 6, 2).unwrap();
        if let Some(f) = r.first_failure() {
            panic!("{name}: alpha = ({}) diff = {:?}", f.alpha, f.diff.as_ref().map(|p| p.render(t.dim())));
        }
        assert_eq!(r.length_violations(), 0, "{name}");
    }
}

#[test]
fn nfold_oracle_up_to_length_four() {
    for (name, t) in all_tensors() {
        let r = oracle_check(&t, 4, 3).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.first_failure().map(|f| f.alpha.to_string()));
    }
    let r = oracle_check(&heisenberg(1), 3, 4).unwrap();
    assert!(r.passed());
}

#[test]
fn nfold_with_two_factors_is_the_two_fold_rule() {
    for (name, t) in all_tensors() {
        for alpha in multiindices_up_to(t.dim(), t.dim_v1(), 4) {
            let two: Vec<LeibnizTerm> = expand_leibniz_nfold(&t, &alpha, 2)
                .unwrap()
                .into_iter()
                .map(|nt| LeibnizTerm { left: nt.factors[0].clone(), right: nt.factors[1].clone(), coeff: nt.coeff })
                .collect();
            assert_eq!(two, expand_leibniz(&t, &alpha).unwrap(), "{name} alpha = ({alpha})");
        }
    }
}

#[test]
fn nfold_matches_iterated_two_fold() {
    for (name, t) in all_tensors() {
        for alpha in multiindices_up_to(t.dim(), t.dim_v1(), 4) {
            assert_eq!(
                expand_leibniz_nfold(&t, &alpha, 3).unwrap(),
                compose_twofold(&t, &alpha, 3).unwrap(),
                "{name} alpha = ({alpha})"
            );
        }
    }
}

#[test]
fn homogeneous_lengths_and_edge_terms() {
    for (name, t) in all_tensors() {
        let d1 = t.dim_v1();
        for alpha in multiindices_up_to(t.dim(), d1, 6) {
            let terms = expand_leibniz(&t, &alpha).unwrap();
            let l = alpha.hom_len(d1);
            let zero = MultiIndex::zeros(t.dim());
            for term in &terms {
                assert_eq!(term.left.hom_len(d1) + term.right.hom_len(d1), l, "{name} ({alpha})");
                assert!(!term.coeff.is_zero());
            }
            if alpha.is_zero() {
                continue;
            }
            let map = term_map(&terms);
            assert_eq!(map.get(&(alpha.clone(), zero.clone())), Some(&int(1)), "{name} ({alpha})");
            assert_eq!(map.get(&(zero.clone(), alpha.clone())), Some(&int(1)), "{name} ({alpha})");
            for term in &terms {
                let ll = term.left.hom_len(d1);
                let edge = (term.left == alpha && term.right == zero) || (term.left == zero && term.right == alpha);
                assert!(edge || (0 < ll && ll < l), "{name} ({alpha}): ({}) ({})", term.left, term.right);
            }
        }
    }
}

#[test]
fn abelian_terms_are_binomial() {
    let t = abelian(4, 2);
    for alpha in multiindices_up_to(4, 4, 5) {
        let mut expect = HashMap::new();
        for beta in alpha.below() {
            let gamma = alpha.checked_sub(&beta).unwrap();
            let c: i64 = alpha
                .as_slice()
                .iter()
                .zip(beta.as_slice())
                .map(|(&a, &b)| num::integer::binomial(a as i64, b as i64))
                .product();
            expect.insert((beta, gamma), int(c));
        }
        assert_eq!(term_map(&expand_leibniz(&t, &alpha).unwrap()), expect, "({alpha})");
    }
}

#[test]
fn swapping_slots_matches_transposed_tensor() {
    for (name, t) in all_tensors() {
        let tt = t.transposed();
        for alpha in multiindices_up_to(t.dim(), t.dim_v1(), 5) {
            let swapped: HashMap<_, _> =
                term_map(&expand_leibniz(&t, &alpha).unwrap()).into_iter().map(|((l, r), c)| ((r, l), c)).collect();
            assert_eq!(swapped, term_map(&expand_leibniz(&tt, &alpha).unwrap()), "{name} ({alpha})");
        }
    }
}

#[test]
fn raw_terms_transpose_pairwise() {
    // The (γ, β, σᵀ) summand carries (α choose γ)_{σᵀ} c_{σᵀ} = (-1)^{|σ|} times the (β, γ, σ) weight.
    let t = heisenberg(2);
    let alpha = mi(&[1, 0, 1, 0, 2]);
    let raw = raw_terms(&t, &alpha).unwrap();
    let index: HashMap<_, _> = raw.iter().map(|r| ((r.beta.clone(), r.sigma.clone()), r.coeff.clone())).collect();
    for r in &raw {
        let partner = &index[&(r.gamma.clone(), r.sigma.transposed())];
        let sign = if r.sigma.total() % 2 == 0 { int(1) } else { int(-1) };
        assert_eq!(partner, &(&r.coeff * sign));
    }
}

#[test]
fn composing_expansions_gives_the_sum_expansion() {
    for (name, t) in all_tensors() {
        let alphas = multiindices_up_to(t.dim(), t.dim_v1(), 3);
        for a1 in &alphas {
            let e1 = expand_leibniz(&t, a1).unwrap();
            for a2 in &alphas {
                let e2 = expand_leibniz(&t, a2).unwrap();
                let products = e1.iter().flat_map(|x| {
                    e2.iter().map(move |y| LeibnizTerm {
                        left: &x.left + &y.left,
                        right: &x.right + &y.right,
                        coeff: &x.coeff * &y.coeff,
                    })
                });
                let (composed, _) = merge_terms(products);
                assert_eq!(composed, expand_leibniz(&t, &(a1 + a2)).unwrap(), "{name} ({a1}) + ({a2})");
            }
        }
    }
}

#[test]
fn heisenberg_raw_count_is_tetrahedral() {
    for k in 0..=8u32 {
        let e = expand_leibniz_detailed(&heisenberg(1), &mi(&[0, 0, k])).unwrap();
        let k = k as usize;
        assert_eq!(e.raw_count, (k + 1) * (k + 2) * (k + 3) / 6);
    }
}

#[test]
fn closed_form_agrees_with_engine() {
    for n in 1..=3 {
        for k in 0..=4 {
            let mut alpha = vec![0; 2 * n + 1];
            alpha[2 * n] = k;
            assert_eq!(
                heisenberg_tk_terms(n, k),
                expand_leibniz(&heisenberg(n), &MultiIndex::new(alpha)).unwrap(),
                "n = {n}, k = {k}"
            );
        }
    }
}

#[test]
fn oracle_degree_bound() {
    for (name, t) in all_tensors() {
        let coords = group_coordinate_polys(&t, 2).unwrap();
        for alpha in multiindices_up_to(t.dim(), t.dim_v1(), 6) {
            let p = power(&alpha, &coords).unwrap();
            let top: u32 = alpha.as_slice()[t.dim_v1()..].iter().sum();
            assert!(p.total_degree() <= alpha.order() + top, "{name} ({alpha})");
        }
    }
}

#[test]
fn sigma_enumeration_is_ordered() {
    let t = heisenberg(2);
    let s = sigma_indices(&t, &mi(&[0, 0, 0, 0, 3]));
    // four keys, total at most 3
    assert_eq!(s.len(), 35);
    assert!(s.windows(2).all(|w| w[0].total() <= w[1].total()));
    let mut dedup = s.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), s.len());
}

#[test]
fn expansion_is_deterministic() {
    let t = common::fuzz_suite().remove(3).1;
    let alpha = mi(&[1, 1, 0, 0, 1, 1]);
    let a = expand_leibniz(&t, &alpha).unwrap();
    let b = expand_leibniz(&t, &alpha).unwrap();
    assert_eq!(a, b);
}
