use num::Zero;
use rand::RngExt;

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::rational::Rational;
use crate::tensor::StructureTensor;

use super::coeff::gen_multinomial;
use super::expand::sigma_indices;
use super::index::SigmaIndex;

fn check_keys(tensor: &StructureTensor, sigma: &SigmaIndex) -> Result<()> {
    match sigma.counts().find(|(t, _)| tensor.get(*t).is_none()) {
        Some((t, _)) => Err(Error::OutsideSupport(t)),
        None => Ok(()),
    }
}

/// Both sides of the product identity for the generalized multinomial:
/// `(α¹+α² choose β)_σ` and the sum over splittings `β = β¹+β²`,
/// `σ = σ¹+σ²` with `βᵐ + σᵐ₀ ≤ αᵐ` of `(α¹ choose β¹)_{σ¹} (α² choose β²)_{σ²}`.
pub fn pasru_sides(
    tensor: &StructureTensor,
    alpha1: &MultiIndex,
    alpha2: &MultiIndex,
    beta: &MultiIndex,
    sigma: &SigmaIndex,
) -> Result<(Rational, Rational)> {
    let dim = tensor.dim();
    for a in [alpha1, alpha2, beta] {
        if a.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: a.dim() });
        }
    }
    check_keys(tensor, sigma)?;
    let lhs = gen_multinomial(&(alpha1 + alpha2), beta, sigma)?;
    let mut rhs = Rational::zero();
    for s1 in sigma.below() {
        let s2 = sigma.checked_sub(&s1).expect("σ¹ ≤ σ");
        let (t1, t2) = (s1.target_projection(dim), s2.target_projection(dim));
        for b1 in beta.below() {
            let b2 = beta.checked_sub(&b1).expect("β¹ ≤ β");
            if !(&b1 + &t1).le(alpha1) || !(&b2 + &t2).le(alpha2) {
                continue;
            }
            rhs += gen_multinomial(alpha1, &b1, &s1)? * gen_multinomial(alpha2, &b2, &s2)?;
        }
    }
    Ok((lhs, rhs))
}

/// Whether the two sides of [`pasru_sides`] agree. Always true for a correct
/// implementation.
pub fn check_pasru(
    tensor: &StructureTensor,
    alpha1: &MultiIndex,
    alpha2: &MultiIndex,
    beta: &MultiIndex,
    sigma: &SigmaIndex,
) -> Result<bool> {
    let (lhs, rhs) = pasru_sides(tensor, alpha1, alpha2, beta, sigma)?;
    Ok(lhs == rhs)
}

/// Every admissible `(β, σ)` for `α = α¹ + α²`: σ supported on D and
/// `β + σ₀ ≤ α`.
pub fn pasru_cases(tensor: &StructureTensor, alpha: &MultiIndex) -> Vec<(MultiIndex, SigmaIndex)> {
    let dim = tensor.dim();
    let mut out = Vec::new();
    for sigma in sigma_indices(tensor, alpha) {
        let rest = alpha.checked_sub(&sigma.target_projection(dim)).expect("σ₀ ≤ α");
        for beta in rest.below() {
            out.push((beta, sigma.clone()));
        }
    }
    out
}

/// One `(β, σ)` drawn uniformly from [`pasru_cases`].
pub fn sample_pasru_case<R: RngExt + ?Sized>(
    tensor: &StructureTensor,
    alpha: &MultiIndex,
    rng: &mut R,
) -> (MultiIndex, SigmaIndex) {
    let mut cases = pasru_cases(tensor, alpha);
    let i = rng.random_range(0..cases.len());
    cases.swap_remove(i)
}
