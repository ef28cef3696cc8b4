//! Drivers that compare the engine against the polynomial oracle and the
//! multinomial product identity, shared by the CLI and the test suites.

use rand::RngExt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzz::{random_tensor, rng_from_seed};
use crate::leibniz::{
    expand_leibniz_detailed, expand_leibniz_nfold_detailed, pasru_cases, pasru_sides, sample_pasru_case, SigmaIndex,
};
use crate::multiindex::{multiindices_up_to, MultiIndex};
use crate::poly::{group_coordinate_polys, nfold_terms_to_poly, power, terms_to_poly, Polynomial};
use crate::rational::{format_rational, Rational};
use crate::tensor::StructureTensor;

/// Result of checking one multiindex against the oracle.
#[derive(Clone, Debug)]
pub struct AlphaOutcome {
    pub alpha: MultiIndex,
    pub terms: usize,
    pub raw_terms: usize,
    pub cancelled: usize,
    /// Terms whose homogeneous lengths do not add up to `l(α)`.
    pub length_violations: usize,
    /// Engine minus oracle; `None` when they agree.
    pub diff: Option<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub n: usize,
    pub outcomes: Vec<AlphaOutcome>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.diff.is_none() && o.length_violations == 0)
    }

    pub fn first_failure(&self) -> Option<&AlphaOutcome> {
        self.outcomes.iter().find(|o| o.diff.is_some() || o.length_violations > 0)
    }

    pub fn max_terms(&self) -> usize {
        self.outcomes.iter().map(|o| o.terms).max().unwrap_or(0)
    }

    pub fn max_raw_terms(&self) -> usize {
        self.outcomes.iter().map(|o| o.raw_terms).max().unwrap_or(0)
    }

    pub fn total_terms(&self) -> usize {
        self.outcomes.iter().map(|o| o.terms).sum()
    }

    pub fn length_violations(&self) -> usize {
        self.outcomes.iter().map(|o| o.length_violations).sum()
    }

    pub fn cancelled(&self) -> usize {
        self.outcomes.iter().map(|o| o.cancelled).sum()
    }
}

/// Compares the `n`-fold expansion of `T^α` with `power(α, coords)`, where
/// `coords` are the `n`-block group coordinate polynomials.
pub fn oracle_check_alpha(
    tensor: &StructureTensor,
    coords: &[Polynomial],
    alpha: &MultiIndex,
    n: usize,
) -> Result<AlphaOutcome> {
    let d = tensor.dim();
    let d1 = tensor.dim_v1();
    let target = alpha.hom_len(d1);
    let (engine, terms, raw_terms, cancelled, length_violations) = if n == 2 {
        let e = expand_leibniz_detailed(tensor, alpha)?;
        let bad = e.terms.iter().filter(|t| t.left.hom_len(d1) + t.right.hom_len(d1) != target).count();
        (terms_to_poly(&e.terms, d), e.terms.len(), e.raw_count, e.cancelled.len(), bad)
    } else {
        let e = expand_leibniz_nfold_detailed(tensor, alpha, n)?;
        let bad = e.terms.iter().filter(|t| t.factors.iter().map(|f| f.hom_len(d1)).sum::<u32>() != target).count();
        (nfold_terms_to_poly(&e.terms, d, n), e.terms.len(), e.raw_count, e.cancelled.len(), bad)
    };
    let diff = engine.sub(&power(alpha, coords)?);
    Ok(AlphaOutcome {
        alpha: alpha.clone(),
        terms,
        raw_terms,
        cancelled,
        length_violations,
        diff: (!diff.is_zero()).then_some(diff),
    })
}

/// [`oracle_check_alpha`] for every α with `l(α) <= max_hom_len`, in
/// enumeration order. Multiindices are checked in parallel.
pub fn oracle_check(tensor: &StructureTensor, max_hom_len: u32, n: usize) -> Result<OracleReport> {
    let coords = group_coordinate_polys(tensor, n)?;
    let alphas = multiindices_up_to(tensor.dim(), tensor.dim_v1(), max_hom_len);
    let outcomes = alphas.par_iter().map(|a| oracle_check_alpha(tensor, &coords, a, n)).collect::<Result<Vec<_>>>()?;
    Ok(OracleReport { n, outcomes })
}

/// A failing instance of the multinomial product identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PasruWitness {
    pub alpha1: MultiIndex,
    pub alpha2: MultiIndex,
    pub beta: MultiIndex,
    pub sigma: SigmaIndex,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl std::fmt::Display for PasruWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sigma: Vec<String> = self.sigma.counts().map(|(t, c)| format!("{t}:{c}")).collect();
        write!(
            f,
            "alpha1 = ({}), alpha2 = ({}), beta = ({}), sigma = {{{}}}: lhs = {}, rhs = {}",
            self.alpha1,
            self.alpha2,
            self.beta,
            sigma.join(", "),
            format_rational(&self.lhs),
            format_rational(&self.rhs)
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PasruReport {
    pub cases: usize,
    pub failures: Vec<PasruWitness>,
}

impl PasruReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, other: PasruReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }
}

fn run_case(
    tensor: &StructureTensor,
    alpha1: &MultiIndex,
    alpha2: &MultiIndex,
    beta: MultiIndex,
    sigma: SigmaIndex,
    report: &mut PasruReport,
) -> Result<()> {
    let (lhs, rhs) = pasru_sides(tensor, alpha1, alpha2, &beta, &sigma)?;
    report.cases += 1;
    if lhs != rhs {
        report.failures.push(PasruWitness { alpha1: alpha1.clone(), alpha2: alpha2.clone(), beta, sigma, lhs, rhs });
    }
    Ok(())
}

/// Every admissible `(β, σ)` for one pair.
pub fn pasru_exhaustive_pair(
    tensor: &StructureTensor,
    alpha1: &MultiIndex,
    alpha2: &MultiIndex,
) -> Result<PasruReport> {
    let mut report = PasruReport::default();
    for (beta, sigma) in pasru_cases(tensor, &(alpha1 + alpha2)) {
        run_case(tensor, alpha1, alpha2, beta, sigma, &mut report)?;
    }
    Ok(report)
}

/// Every pair with `l(α¹), l(α²) <= max_hom_len` and every admissible
/// `(β, σ)`. Pairs run in parallel; failures keep enumeration order.
pub fn pasru_exhaustive(tensor: &StructureTensor, max_hom_len: u32) -> Result<PasruReport> {
    let alphas = multiindices_up_to(tensor.dim(), tensor.dim_v1(), max_hom_len);
    let pairs: Vec<(&MultiIndex, &MultiIndex)> =
        alphas.iter().flat_map(|a| alphas.iter().map(move |b| (a, b))).collect();
    let parts = pairs.par_iter().map(|(a, b)| pasru_exhaustive_pair(tensor, a, b)).collect::<Result<Vec<_>>>()?;
    let mut report = PasruReport::default();
    for p in parts {
        report.absorb(p);
    }
    Ok(report)
}

/// `samples` uniformly drawn cases for a fixed pair.
pub fn pasru_sampled_pair<R: RngExt + ?Sized>(
    tensor: &StructureTensor,
    alpha1: &MultiIndex,
    alpha2: &MultiIndex,
    samples: usize,
    rng: &mut R,
) -> Result<PasruReport> {
    let alpha = alpha1 + alpha2;
    let mut report = PasruReport::default();
    for _ in 0..samples {
        let (beta, sigma) = sample_pasru_case(tensor, &alpha, rng);
        run_case(tensor, alpha1, alpha2, beta, sigma, &mut report)?;
    }
    Ok(report)
}

/// `samples` cases, each with a fresh random pair of homogeneous length at
/// most `max_hom_len` and a uniformly drawn `(β, σ)`.
pub fn pasru_sampled<R: RngExt + ?Sized>(
    tensor: &StructureTensor,
    max_hom_len: u32,
    samples: usize,
    rng: &mut R,
) -> Result<PasruReport> {
    let alphas = multiindices_up_to(tensor.dim(), tensor.dim_v1(), max_hom_len);
    let mut report = PasruReport::default();
    for _ in 0..samples {
        let a1 = &alphas[rng.random_range(0..alphas.len())];
        let a2 = &alphas[rng.random_range(0..alphas.len())];
        let (beta, sigma) = sample_pasru_case(tensor, &(a1 + a2), rng);
        run_case(tensor, a1, a2, beta, sigma, &mut report)?;
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzTrial {
    pub trial: usize,
    pub support: usize,
    pub valid: bool,
    pub oracle_alphas: usize,
    pub oracle_ok: bool,
    pub pasru_cases: usize,
    pub pasru_ok: bool,
}

impl FuzzTrial {
    pub fn passed(&self) -> bool {
        self.valid && self.oracle_ok && self.pasru_ok
    }
}

pub const FUZZ_ORACLE_LEN: u32 = 4;
pub const FUZZ_PASRU_SAMPLES: usize = 100;

/// Generates `trials` tensors from one seeded stream and runs validation,
/// the oracle check at `l(α) <= 4` and 100 sampled product-identity cases
/// on each. Trials run in parallel; results are in trial order.
pub fn run_fuzz(dim: usize, dim_v1: usize, density: f64, seed: u64, trials: usize) -> Result<Vec<FuzzTrial>> {
    let mut rng = rng_from_seed(seed);
    let tensors = (0..trials).map(|_| random_tensor(dim, dim_v1, density, &mut rng)).collect::<Result<Vec<_>>>()?;
    tensors
        .par_iter()
        .enumerate()
        .map(|(trial, t)| {
            let valid = t.validate().is_valid();
            if !valid {
                return Ok(FuzzTrial {
                    trial,
                    support: t.support_len(),
                    valid,
                    oracle_alphas: 0,
                    oracle_ok: false,
                    pasru_cases: 0,
                    pasru_ok: false,
                });
            }
            let oracle = oracle_check(t, FUZZ_ORACLE_LEN, 2)?;
            let mut prng = rng_from_seed(seed.wrapping_add(trial as u64 + 1));
            let pasru = pasru_sampled(t, FUZZ_ORACLE_LEN, FUZZ_PASRU_SAMPLES, &mut prng)?;
            Ok(FuzzTrial {
                trial,
                support: t.support_len(),
                valid,
                oracle_alphas: oracle.outcomes.len(),
                oracle_ok: oracle.passed(),
                pasru_cases: pasru.cases,
                pasru_ok: pasru.passed(),
            })
        })
        .collect()
}

/// Parses a `NILBNIZ_THREADS`-style value.
pub fn parse_threads(value: &str) -> Result<usize> {
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Schema(format!("thread count must be a positive integer, got {value:?}"))),
    }
}
