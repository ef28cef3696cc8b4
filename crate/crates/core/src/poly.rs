//! Sparse multivariate polynomials over ℚ, used as the brute-force oracle.
//!
//! The oracle side never calls into [`crate::leibniz`]: coordinate
//! polynomials come from the group law alone, instantiated with polynomial
//! scalars.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{bch_multiply, GroupElement, Scalar};
use crate::leibniz::{LeibnizTerm, NFoldTerm};
use crate::multiindex::{graded_cmp, MultiIndex};
use crate::rational::{format_rational, Rational};
use crate::tensor::StructureTensor;

/// Exponent vector ordered by [`graded_cmp`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_cmp(&self.0, &other.0).then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    /// The variable with 0-based index `v`.
    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable {v} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[v] = 1;
        let mut p = Polynomial::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn monomial(exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Polynomial::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exponents: &[u32]) -> Rational {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.0.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        assert_eq!(exponents.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        let key = Monomial(exponents);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients keyed by comma-separated exponents.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .terms
            .iter()
            .map(|(m, c)| (MultiIndex::new(m.0.clone()).to_string(), serde_json::Value::from(format_rational(c))))
            .collect::<serde_json::Map<_, _>>();
        serde_json::Value::Object(map)
    }

    /// Human-readable form with variables split into blocks of `block_dim`
    /// named `x`, `y`, `z`, ... and 1-based subscripts.
    pub fn render(&self, block_dim: usize) -> String {
        const NAMES: &[&str] = &["x", "y", "z", "w", "u", "v"];
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || m.0.iter().all(|&e| e == 0) {
                factors.push(format_rational(&abs));
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let block = v / block_dim.max(1);
                let name = NAMES.get(block).map_or_else(|| format!("b{block}_"), |s| s.to_string());
                let sub = v % block_dim.max(1) + 1;
                factors.push(if e == 1 { format!("{name}{sub}") } else { format!("{name}{sub}^{e}") });
            }
            out.push_str(&factors.join(" "));
        }
        out
    }
}

impl Scalar for Polynomial {
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut acc: std::collections::HashMap<Vec<u32>, Rational> = std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (Monomial(e), c)).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    fn neg(&self) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.nvars))
    }
}

/// Coordinates of `y¹ ∘ y² ∘ ... ∘ yⁿ` as polynomials in `n·d` variables;
/// block `r` (0-based) holds variables `r·d .. (r+1)·d`.
pub fn group_coordinate_polys(tensor: &StructureTensor, n_blocks: usize) -> Result<Vec<Polynomial>> {
    if n_blocks < 2 {
        return Err(Error::Precondition(format!("need at least 2 blocks, got {n_blocks}")));
    }
    tensor.ensure_valid()?;
    let d = tensor.dim();
    let nvars = n_blocks * d;
    let block = |r: usize| GroupElement::new((0..d).map(|k| Polynomial::var(nvars, r * d + k)).collect());
    let mut acc = block(0);
    for r in 1..n_blocks {
        acc = bch_multiply(tensor, &acc, &block(r))?;
    }
    Ok(acc.into_coords())
}

/// Π_k coords_k^{α_k}.
pub fn power(alpha: &MultiIndex, coords: &[Polynomial]) -> Result<Polynomial> {
    if alpha.dim() != coords.len() {
        return Err(Error::DimensionMismatch { expected: coords.len(), got: alpha.dim() });
    }
    let nvars = coords.first().map_or(0, Polynomial::nvars);
    let mut acc = Polynomial::one(nvars);
    for (c, &e) in coords.iter().zip(alpha.as_slice()) {
        if e > 0 {
            acc = acc.mul(&c.pow(e));
        }
    }
    Ok(acc)
}

/// Σ coeff · x^left · y^right in `2d` variables.
pub fn terms_to_poly(terms: &[LeibnizTerm], dim: usize) -> Polynomial {
    let mut p = Polynomial::zero(2 * dim);
    for t in terms {
        let e: Vec<u32> = t.left.as_slice().iter().chain(t.right.as_slice()).copied().collect();
        p.add_term(e, t.coeff.clone());
    }
    p
}

/// Σ coeff · Π_m (yᵐ)^{factor_m} in `n·d` variables.
pub fn nfold_terms_to_poly(terms: &[NFoldTerm], dim: usize, n: usize) -> Polynomial {
    let mut p = Polynomial::zero(n * dim);
    for t in terms {
        assert_eq!(t.factors.len(), n, "term has {} factors, expected {n}", t.factors.len());
        let e: Vec<u32> = t.factors.iter().flat_map(|f| f.as_slice().iter().copied()).collect();
        p.add_term(e, t.coeff.clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::heisenberg;
    use crate::rational::{int, rat};

    fn x(v: usize) -> Polynomial {
        Polynomial::var(6, v)
    }

    #[test]
    fn heisenberg_coordinates() {
        let c = group_coordinate_polys(&heisenberg(1), 2).unwrap();
        assert_eq!(c[0], x(0).add(&x(3)));
        let expect = x(2).add(&x(5)).add(&x(0).mul(&x(4)).scale(&rat(1, 2))).sub(&x(1).mul(&x(3)).scale(&rat(1, 2)));
        assert_eq!(c[2], expect);
        assert_eq!(c[2].render(3), "x3 + y3 + 1/2 x1 y2 - 1/2 x2 y1");
    }

    #[test]
    fn three_blocks() {
        let c = group_coordinate_polys(&heisenberg(1), 3).unwrap();
        // 3 linear terms and 2 cross monomials per pair
        assert_eq!(c[2].len(), 9);
        assert_eq!(c[2].coeff(&[0, 0, 0, 0, 1, 0, 1, 0, 0]), rat(-1, 2));
        assert!(c[2].render(3).starts_with("x3 + y3 + z3"));
    }

    #[test]
    fn power_basics() {
        let c = group_coordinate_polys(&heisenberg(1), 2).unwrap();
        assert_eq!(power(&MultiIndex::zeros(3), &c).unwrap(), Polynomial::one(6));
        assert_eq!(power(&MultiIndex::new(vec![0, 0, 1]), &c).unwrap(), c[2]);
        let sq = power(&MultiIndex::new(vec![0, 0, 2]), &c).unwrap();
        assert_eq!(sq.len(), 10);
        assert_eq!(sq.total_degree(), 4);
        assert!(power(&MultiIndex::zeros(2), &c).is_err());
    }

    #[test]
    fn pow_and_zero() {
        let p = x(0).add(&Polynomial::constant(6, int(1)));
        assert_eq!(p.pow(3).len(), 4);
        assert_eq!(p.pow(0), Polynomial::one(6));
        assert!(p.sub(&p).is_zero());
        assert_eq!(Polynomial::zero(6).to_string(), "0");
        assert!(p.scale(&int(0)).is_zero());
    }

    #[test]
    fn json_dump() {
        let p = x(0).scale(&rat(-3, 2));
        assert_eq!(p.to_json(), serde_json::json!({"1,0,0,0,0,0": "-3/2"}));
    }

    #[test]
    fn empty_terms_give_zero() {
        assert!(terms_to_poly(&[], 3).is_zero());
        assert!(nfold_terms_to_poly(&[], 3, 3).is_zero());
    }
}
