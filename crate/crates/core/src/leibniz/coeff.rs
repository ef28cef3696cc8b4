use num::{BigInt, One};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::rational::{factorial, inv_pow2, Rational};
use crate::tensor::StructureTensor;

use super::index::{SigmaIndex, TauIndex};

fn check_same_dim(alpha: &MultiIndex, other: &MultiIndex) -> Result<()> {
    if alpha.dim() != other.dim() {
        return Err(Error::DimensionMismatch { expected: alpha.dim(), got: other.dim() });
    }
    Ok(())
}

fn multi_factorial(a: &MultiIndex) -> BigInt {
    a.as_slice().iter().map(|&x| factorial(x)).product()
}

/// (α choose β)_σ = α! / (β! σ! (α - β - σ₀)!), defined for β + σ₀ ≤ α.
pub fn gen_multinomial(alpha: &MultiIndex, beta: &MultiIndex, sigma: &SigmaIndex) -> Result<Rational> {
    check_same_dim(alpha, beta)?;
    let dim = alpha.dim();
    if sigma.max_index() > dim {
        return Err(Error::Precondition(format!("σ has a key outside 1..={dim}")));
    }
    let gamma = alpha
        .checked_sub(&(beta + &sigma.target_projection(dim)))
        .ok_or_else(|| Error::Precondition(format!("β + σ₀ ≤ α fails for α = ({alpha}), β = ({beta})")))?;
    let den =
        multi_factorial(beta) * multi_factorial(&gamma) * sigma.counts().map(|(_, c)| factorial(c)).product::<BigInt>();
    Ok(Rational::new(multi_factorial(alpha), den))
}

/// c_σ = 2^{-|σ|} Π a_{i,j,k}^{σ(i,j,k)}; every key must lie in the support.
pub fn c_sigma(tensor: &StructureTensor, sigma: &SigmaIndex) -> Result<Rational> {
    let mut acc = inv_pow2(sigma.total());
    for (t, c) in sigma.counts() {
        let a = tensor.get(t).ok_or(Error::OutsideSupport(t))?;
        acc *= num::pow(a.clone(), c as usize);
    }
    Ok(acc)
}

/// (α choose β¹ … βⁿ)_τ = α! / (β¹! ⋯ βⁿ! τ!), defined for Σ βᵐ + τ₀ = α.
pub fn gen_multinomial_nfold(alpha: &MultiIndex, betas: &[MultiIndex], tau: &TauIndex) -> Result<Rational> {
    let dim = alpha.dim();
    let mut sum = tau_target(tau, dim)?;
    for b in betas {
        check_same_dim(alpha, b)?;
        sum = &sum + b;
    }
    if &sum != alpha {
        return Err(Error::Precondition(format!("Σ βᵐ + τ₀ = ({sum}) does not equal α = ({alpha})")));
    }
    let den = betas.iter().map(multi_factorial).product::<BigInt>()
        * tau.counts().map(|(_, c)| factorial(c)).product::<BigInt>();
    Ok(Rational::new(multi_factorial(alpha), den))
}

fn tau_target(tau: &TauIndex, dim: usize) -> Result<MultiIndex> {
    if tau.counts().any(|(k, _)| k.triple.k > dim || k.triple.k == 0) {
        return Err(Error::Precondition(format!("τ has a key outside 1..={dim}")));
    }
    Ok(tau.target_projection(dim))
}

/// c̃_τ = 2^{-|τ|} Π a_{i,j,k}^{τ(i,j,k,r,s)}.
pub fn c_tau(tensor: &StructureTensor, tau: &TauIndex) -> Result<Rational> {
    let mut acc = Rational::one();
    for (key, c) in tau.counts() {
        let a = tensor.get(key.triple).ok_or(Error::OutsideSupport(key.triple))?;
        if key.r == 0 || key.r >= key.s {
            return Err(Error::Precondition(format!("τ key needs 1 <= r < s, got r = {}, s = {}", key.r, key.s)));
        }
        acc *= num::pow(a.clone(), c as usize);
    }
    Ok(acc * inv_pow2(tau.total()))
}
