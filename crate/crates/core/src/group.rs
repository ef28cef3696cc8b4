//! The Campbell-Hausdorff group law `x ∘ y = x + y + ½[x, y]`.
//!
//! Group elements are generic over [`Scalar`], so the same product serves
//! exact rationals, doubles, and polynomials (the latter is how the
//! polynomial oracle builds `(x ∘ y)_k` symbolically). Exact and numeric
//! modes are distinct types and cannot mix.

use num::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::StructureTensor;

/// The ring operations the group law needs: sums, products, negation and
/// multiplication by a rational constant.
pub trait Scalar: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
}

impl Scalar for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Scalar for f64 {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<S> {
    coords: Vec<S>,
}

impl<S: Scalar> GroupElement<S> {
    pub fn new(coords: Vec<S>) -> Self {
        GroupElement { coords }
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl GroupElement<Rational> {
    pub fn zero(dim: usize) -> Self {
        GroupElement { coords: vec![Rational::zero(); dim] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        GroupElement { coords: v.iter().map(|&x| Rational::from_integer(x.into())).collect() }
    }
}

impl GroupElement<f64> {
    pub fn zero_f64(dim: usize) -> Self {
        GroupElement { coords: vec![0.0; dim] }
    }
}

fn check_dim<S: Scalar>(tensor: &StructureTensor, x: &GroupElement<S>) -> Result<()> {
    if x.dim() != tensor.dim() {
        return Err(Error::DimensionMismatch { expected: tensor.dim(), got: x.dim() });
    }
    Ok(())
}

/// `(x ∘ y)_k = x_k + y_k + ½ Σ_{i,j} a_{i,j,k} x_i y_j`.
pub fn bch_multiply<S: Scalar>(
    tensor: &StructureTensor,
    x: &GroupElement<S>,
    y: &GroupElement<S>,
) -> Result<GroupElement<S>> {
    check_dim(tensor, x)?;
    check_dim(tensor, y)?;
    let mut out: Vec<S> = x.coords.iter().zip(&y.coords).map(|(a, b)| a.add(b)).collect();
    let half = Rational::new(1.into(), 2.into());
    for (t, a) in tensor.entries() {
        let c = a * &half;
        let term = x.coords[t.i - 1].mul(&y.coords[t.j - 1]).scale(&c);
        out[t.k - 1] = out[t.k - 1].add(&term);
    }
    Ok(GroupElement { coords: out })
}

/// `x⁻¹ = -x`: at step two `[x, -x] = 0`.
pub fn inverse<S: Scalar>(x: &GroupElement<S>) -> GroupElement<S> {
    GroupElement { coords: x.coords.iter().map(Scalar::neg).collect() }
}

/// `δ_t`: first-layer coordinates scale by `t`, second-layer ones by `t²`.
pub fn dilate<S: Scalar>(tensor: &StructureTensor, t: &Rational, x: &GroupElement<S>) -> Result<GroupElement<S>> {
    check_dim(tensor, x)?;
    if !t.is_positive() {
        return Err(Error::Precondition(format!("dilation parameter must be positive, got {t}")));
    }
    let t2 = t * t;
    let coords =
        x.coords.iter().enumerate().map(|(i, c)| if i < tensor.dim_v1() { c.scale(t) } else { c.scale(&t2) }).collect();
    Ok(GroupElement { coords })
}

/// `x ∘ y ∘ ...` folded left to right; `None` for an empty list.
pub fn product<S: Scalar>(tensor: &StructureTensor, factors: &[GroupElement<S>]) -> Result<Option<GroupElement<S>>> {
    let mut it = factors.iter();
    let Some(first) = it.next() else { return Ok(None) };
    let mut acc = first.clone();
    for f in it {
        acc = bch_multiply(tensor, &acc, f)?;
    }
    Ok(Some(acc))
}
