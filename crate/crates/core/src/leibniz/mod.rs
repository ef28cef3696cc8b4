//! Term expansion of the generalized Leibniz rule.
//!
//! For a two-step group with support `D = {(i,j,k) : a_{i,j,k} != 0}` and
//! `σ ∈ ℕ^D`,
//!
//! ```text
//! T^α(f * g) = Σ_{β+γ+σ₀=α} α!/(β! σ! γ!) · 2^{-|σ|} Π a_{i,j,k}^{σ(i,j,k)} · T^{β+σ₁} f * T^{γ+σ₂} g
//! ```
//!
//! where `σ₀, σ₁, σ₂` project σ onto the target, left and right slots of
//! each triple. The n-fold version indexes by `(i,j,k,r,s)` with
//! `1 <= r < s <= n`, routing `i` to factor `r` and `j` to factor `s`.

mod coeff;
mod expand;
mod heisenberg;
mod index;
mod nfold;
mod pasru;

pub use coeff::{c_sigma, c_tau, gen_multinomial, gen_multinomial_nfold};
pub use expand::{
    expand_leibniz, expand_leibniz_detailed, merge_terms, raw_terms, sigma_indices, Expansion, LeibnizTerm, RawTerm,
};
pub use heisenberg::heisenberg_tk_terms;
pub use index::{SigmaIndex, TauIndex, TauKey};
pub use nfold::{
    compose_twofold, expand_leibniz_nfold, expand_leibniz_nfold_detailed, merge_nfold_terms, tau_indices,
    NFoldExpansion, NFoldTerm,
};
pub use pasru::{check_pasru, pasru_cases, pasru_sides, sample_pasru_case};
