//! Exact generalized Leibniz rules for convolution on two-step nilpotent Lie
//! groups.
//!
//! A group is given by its structure constants `a_{i,j,k}` (see
//! [`StructureTensor`]) and carries the Campbell-Hausdorff product
//! `x ∘ y = x + y + ½[x, y]`. For a multiindex `α` the crate enumerates every
//! term of
//!
//! ```text
//! T^α(f * g) = Σ_{β+γ+σ₀=α} (α choose β)_σ c_σ  T^{β+σ₁} f * T^{γ+σ₂} g
//! ```
//!
//! with exact rational coefficients, together with the n-fold version, the
//! Fourier-side rendering `D^α(f # g)`, and two independent checks: a
//! brute-force polynomial expansion of `(x ∘ y)^α` ([`poly`]) and a numeric
//! quadrature harness on Gaussians ([`numeric`]).
//!
//! ```
//! use nilbniz_core::{expand_leibniz, presets, MultiIndex};
//!
//! let h1 = presets::heisenberg(1);
//! let terms = expand_leibniz(&h1, &MultiIndex::new(vec![0, 0, 1])).unwrap();
//! assert_eq!(terms.len(), 4);
//! ```

pub mod check;
pub mod error;
pub mod fuzz;
pub mod group;
pub mod io;
pub mod leibniz;
pub mod multiindex;
pub mod numeric;
pub mod poly;
pub mod presets;
pub mod rational;
pub mod render;
pub mod tensor;

pub use error::{Error, Result};
pub use group::{bch_multiply, dilate, inverse, GroupElement, Scalar};
pub use leibniz::{
    c_sigma, c_tau, check_pasru, expand_leibniz, expand_leibniz_detailed, expand_leibniz_nfold,
    expand_leibniz_nfold_detailed, gen_multinomial, gen_multinomial_nfold, heisenberg_tk_terms, raw_terms, Expansion,
    LeibnizTerm, NFoldExpansion, NFoldTerm, RawTerm, SigmaIndex, TauIndex, TauKey,
};
pub use multiindex::{lengths, MultiIndex};
pub use poly::{group_coordinate_polys, nfold_terms_to_poly, power, terms_to_poly, Polynomial};
pub use rational::Rational;
pub use render::{render_nfold_terms, render_terms, Format, Side};
pub use tensor::{validate, StructureTensor, Triple, ValidationReport, Violation};
