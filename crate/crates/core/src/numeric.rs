//! Quadrature check of the Leibniz rule on Gaussian test functions.
//!
//! The left side `x^α (f * g)(x)` integrates `f(x ∘ y⁻¹) g(y)` over `y`.
//! The right side integrates `Σ c · u^left (u⁻¹ ∘ x)^right · f(u) g(u⁻¹ ∘ x)`
//! over `u`, all terms in one pass. Using different integration variables
//! keeps the two sides numerically independent, so their gap measures
//! quadrature error rather than cancelling identically.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{bch_multiply, inverse, GroupElement};
use crate::leibniz::{expand_leibniz, LeibnizTerm};
use crate::multiindex::MultiIndex;
use crate::tensor::StructureTensor;

pub const MAX_DIM: usize = 5;
pub const REL_ERR_FLOOR: f64 = 1e-12;

/// `u ↦ exp(-scale · |u - center|²)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianSpec {
    pub center: Vec<f64>,
    pub scale: f64,
}

impl GaussianSpec {
    pub fn new(center: Vec<f64>, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Precondition(format!("Gaussian scale must be positive, got {scale}")));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("Gaussian center".into()));
        }
        Ok(GaussianSpec { center, scale })
    }

    /// Centered at the origin.
    pub fn standard(dim: usize, scale: f64) -> Result<Self> {
        GaussianSpec::new(vec![0.0; dim], scale)
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        let r2: f64 = u.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum();
        (-self.scale * r2).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    GaussLegendre,
    Trapezoid,
}

impl std::fmt::Display for QuadratureRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            QuadratureRule::GaussLegendre => "gauss-legendre",
            QuadratureRule::Trapezoid => "trapezoid",
        })
    }
}

impl std::str::FromStr for QuadratureRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gauss-legendre" => Ok(QuadratureRule::GaussLegendre),
            "trapezoid" => Ok(QuadratureRule::Trapezoid),
            _ => Err(Error::Schema(format!("unknown quadrature rule {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Half side length of the integration box on every axis.
    pub half_width: f64,
    pub points_per_axis: usize,
    pub rule: QuadratureRule,
}

impl QuadratureSpec {
    pub fn new(half_width: f64, points_per_axis: usize, rule: QuadratureRule) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Precondition(format!("half width must be positive, got {half_width}")));
        }
        if points_per_axis < 8 {
            return Err(Error::Precondition(format!("need at least 8 points per axis, got {points_per_axis}")));
        }
        Ok(QuadratureSpec { half_width, points_per_axis, rule })
    }

    /// Box of half width `6/√scale` with 48 Gauss-Legendre points.
    pub fn default_for(scale: f64) -> Self {
        QuadratureSpec { half_width: 6.0 / scale.sqrt(), points_per_axis: 48, rule: QuadratureRule::GaussLegendre }
    }

    pub fn with_points(self, points_per_axis: usize) -> Result<Self> {
        QuadratureSpec::new(self.half_width, points_per_axis, self.rule)
    }

    /// Nodes and weights on `[-1, 1]`.
    fn reference_rule(&self) -> Vec<(f64, f64)> {
        let n = self.points_per_axis;
        match self.rule {
            QuadratureRule::GaussLegendre => {
                GaussLegendre::new(NonZeroUsize::new(n).expect("n >= 8")).as_node_weight_pairs().to_vec()
            }
            QuadratureRule::Trapezoid => {
                let h = 2.0 / (n - 1) as f64;
                (0..n)
                    .map(|i| {
                        let w = if i == 0 || i == n - 1 { h / 2.0 } else { h };
                        (-1.0 + i as f64 * h, w)
                    })
                    .collect()
            }
        }
    }
}

/// Deterministic pairwise sum.
fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Tensor-product quadrature of `integrand` over the box centred at
/// `center`. The outermost axis is split across threads; every axis is
/// reduced pairwise in node order, so the result does not depend on the
/// thread count.
fn integrate_box<F>(center: &[f64], q: &QuadratureSpec, integrand: F) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let dim = center.len();
    let rule = q.reference_rule();
    let axes: Vec<Vec<(f64, f64)>> =
        center.iter().map(|c| rule.iter().map(|(x, w)| (c + q.half_width * x, q.half_width * w)).collect()).collect();

    fn inner<F: Fn(&[f64]) -> f64>(axis: usize, axes: &[Vec<(f64, f64)>], u: &mut Vec<f64>, f: &F) -> f64 {
        if axis == axes.len() {
            return f(u);
        }
        let mut parts = Vec::with_capacity(axes[axis].len());
        for &(x, w) in &axes[axis] {
            u[axis] = x;
            parts.push(w * inner(axis + 1, axes, u, f));
        }
        pairwise_sum(&parts)
    }

    if dim == 0 {
        return Ok(integrand(&[]));
    }
    let outer: Vec<f64> = axes[0]
        .par_iter()
        .map(|&(x, w)| {
            let mut u = vec![0.0; dim];
            u[0] = x;
            w * inner(1, &axes, &mut u, &integrand)
        })
        .collect();
    let total = pairwise_sum(&outer);
    if !total.is_finite() {
        return Err(Error::NonFinite("quadrature sum".into()));
    }
    Ok(total)
}

fn check_inputs(tensor: &StructureTensor, f: &GaussianSpec, g: &GaussianSpec, x: &[f64]) -> Result<()> {
    let d = tensor.dim();
    if d > MAX_DIM {
        return Err(Error::Precondition(format!("numeric harness supports d <= {MAX_DIM}, got {d}")));
    }
    for len in [f.center.len(), g.center.len(), x.len()] {
        if len != d {
            return Err(Error::DimensionMismatch { expected: d, got: len });
        }
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("evaluation point".into()));
    }
    Ok(())
}

fn mul(tensor: &StructureTensor, a: &[f64], b: &[f64]) -> Vec<f64> {
    bch_multiply(tensor, &GroupElement::new(a.to_vec()), &GroupElement::new(b.to_vec()))
        .expect("dimensions checked")
        .into_coords()
}

fn neg(a: &[f64]) -> Vec<f64> {
    inverse(&GroupElement::new(a.to_vec())).into_coords()
}

fn monomial(u: &[f64], e: &MultiIndex) -> f64 {
    u.iter().zip(e.as_slice()).map(|(x, &k)| x.powi(k as i32)).product()
}

/// `(f * g)(x) = ∫ f(x ∘ y⁻¹) g(y) dy`, box centred at `g`'s center.
pub fn convolve_at(
    tensor: &StructureTensor,
    f: &GaussianSpec,
    g: &GaussianSpec,
    x: &[f64],
    q: &QuadratureSpec,
) -> Result<f64> {
    check_inputs(tensor, f, g, x)?;
    tensor.ensure_valid()?;
    integrate_box(&g.center, q, |y| f.eval(&mul(tensor, x, &neg(y))) * g.eval(y))
}

/// `Σ c · (T^left f * T^right g)(x)`, integrated over `u` with
/// `y = u⁻¹ ∘ x`, box centred at `f`'s center.
pub fn convolve_terms_at(
    tensor: &StructureTensor,
    terms: &[LeibnizTerm],
    f: &GaussianSpec,
    g: &GaussianSpec,
    x: &[f64],
    q: &QuadratureSpec,
) -> Result<f64> {
    check_inputs(tensor, f, g, x)?;
    tensor.ensure_valid()?;
    let weights: Vec<(f64, &MultiIndex, &MultiIndex)> = terms
        .iter()
        .map(|t| {
            let c = t.coeff.to_f64().ok_or_else(|| Error::NonFinite(format!("coefficient {}", t.coeff)))?;
            Ok((c, &t.left, &t.right))
        })
        .collect::<Result<_>>()?;
    integrate_box(&f.center, q, |u| {
        let y = mul(tensor, &neg(u), x);
        let poly: f64 = weights.iter().map(|(c, l, r)| c * monomial(u, l) * monomial(&y, r)).sum();
        f.eval(u) * g.eval(&y) * poly
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResult {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericReport {
    pub alpha: Vec<u32>,
    pub points: Vec<Vec<f64>>,
    pub max_rel_err: f64,
    pub per_point: Vec<PointResult>,
}

pub fn rel_err(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / lhs.abs().max(REL_ERR_FLOOR)
}

/// Both sides of the rule for `T^α(f * g)` at each point.
pub fn check_theorem_numeric(
    tensor: &StructureTensor,
    alpha: &MultiIndex,
    f: &GaussianSpec,
    g: &GaussianSpec,
    points: &[Vec<f64>],
    q: &QuadratureSpec,
) -> Result<NumericReport> {
    let terms = expand_leibniz(tensor, alpha)?;
    let mut per_point = Vec::with_capacity(points.len());
    for x in points {
        let lhs = monomial(x, alpha) * convolve_at(tensor, f, g, x, q)?;
        let rhs = convolve_terms_at(tensor, &terms, f, g, x, q)?;
        per_point.push(PointResult { lhs, rhs, rel_err: rel_err(lhs, rhs) });
    }
    let max_rel_err = per_point.iter().map(|p| p.rel_err).fold(0.0, f64::max);
    Ok(NumericReport { alpha: alpha.as_slice().to_vec(), points: points.to_vec(), max_rel_err, per_point })
}

/// Max relative error for each point count in `ladder`, other settings
/// taken from `q`.
pub fn refinement_errors(
    tensor: &StructureTensor,
    alpha: &MultiIndex,
    f: &GaussianSpec,
    g: &GaussianSpec,
    points: &[Vec<f64>],
    q: &QuadratureSpec,
    ladder: &[usize],
) -> Result<Vec<f64>> {
    ladder
        .iter()
        .map(|&n| Ok(check_theorem_numeric(tensor, alpha, f, g, points, &q.with_points(n)?)?.max_rel_err))
        .collect()
}
