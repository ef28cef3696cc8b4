mod common;

use nilbniz_core::group::product;
use nilbniz_core::presets::heisenberg;
use nilbniz_core::rational::rat;
use nilbniz_core::{bch_multiply, dilate, inverse, GroupElement, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

const CASES: u32 = 128;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=30, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn element(dim: usize) -> impl Strategy<Value = GroupElement<Rational>> {
    proptest::collection::vec(rational(), dim).prop_map(GroupElement::new)
}

/// Runs `check` on `CASES` samples of `strategy(d)` for every test tensor.
fn for_all_tensors<S, F>(strategy: impl Fn(usize) -> S, check: F)
where
    S: Strategy,
    F: Fn(&nilbniz_core::StructureTensor, S::Value) -> Result<(), TestCaseError>,
{
    for (name, t) in common::all_tensors() {
        let mut runner = TestRunner::new(Config { failure_persistence: None, ..Config::with_cases(CASES) });
        runner.run(&strategy(t.dim()), |v| check(&t, v)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn associativity() {
    for_all_tensors(
        |d| (element(d), element(d), element(d)),
        |t, (x, y, z)| {
            let left = bch_multiply(t, &bch_multiply(t, &x, &y).unwrap(), &z).unwrap();
            let right = bch_multiply(t, &x, &bch_multiply(t, &y, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            Ok(())
        },
    );
}

#[test]
fn identity_and_inverse() {
    for_all_tensors(element, |t, x| {
        let zero = GroupElement::zero(t.dim());
        prop_assert_eq!(bch_multiply(t, &x, &zero).unwrap(), x.clone());
        prop_assert_eq!(bch_multiply(t, &zero, &x).unwrap(), x.clone());
        prop_assert_eq!(bch_multiply(t, &x, &inverse(&x)).unwrap(), zero.clone());
        prop_assert_eq!(bch_multiply(t, &inverse(&x), &x).unwrap(), zero);
        Ok(())
    });
}

#[test]
fn dilation_is_homomorphism() {
    for_all_tensors(
        |d| (element(d), element(d), positive_rational()),
        |t, (x, y, s)| {
            let lhs = dilate(t, &s, &bch_multiply(t, &x, &y).unwrap()).unwrap();
            let rhs = bch_multiply(t, &dilate(t, &s, &x).unwrap(), &dilate(t, &s, &y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    );
}

#[test]
fn inverse_of_product() {
    for_all_tensors(
        |d| (element(d), element(d)),
        |t, (x, y)| {
            let xy = bch_multiply(t, &x, &y).unwrap();
            prop_assert_eq!(inverse(&xy), bch_multiply(t, &inverse(&y), &inverse(&x)).unwrap());
            Ok(())
        },
    );
}

proptest! {
    #[test]
    fn folded_product_is_associative(
        x in element(3), y in element(3), z in element(3), w in element(3)
    ) {
        let h = heisenberg(1);
        let folded = product(&h, &[x.clone(), y.clone(), z.clone(), w.clone()]).unwrap().unwrap();
        let zw = bch_multiply(&h, &z, &w).unwrap();
        let nested = bch_multiply(&h, &x, &bch_multiply(&h, &y, &zw).unwrap()).unwrap();
        prop_assert_eq!(folded, nested);
    }

    #[test]
    fn hom_len_is_additive(
        a in proptest::collection::vec(0u32..6, 5),
        b in proptest::collection::vec(0u32..6, 5),
        d1 in 1usize..5,
    ) {
        let (a, b) = (common::mi(&a), common::mi(&b));
        prop_assert_eq!((&a + &b).hom_len(d1), a.hom_len(d1) + b.hom_len(d1));
    }
}

#[test]
fn rational_dilations() {
    let h = heisenberg(1);
    let x = GroupElement::from_ints(&[3, -2, 7]);
    assert_eq!(dilate(&h, &rat(1, 1), &x).unwrap(), x);
    assert_eq!(dilate(&h, &rat(1, 2), &x).unwrap(), GroupElement::new(vec![rat(3, 2), rat(-1, 1), rat(7, 4)]));
}
