//! Structure constants of a two-step homogeneous nilpotent Lie algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// An index triple `(i, j, k)` of `a_{i,j,k}`, 1-based.
///
/// Triples order by `(k, i, j)`; that is the enumeration order of the
/// support `D` everywhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Triple {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        Triple { i, j, k }
    }

    /// `(j, i, k)`.
    pub const fn swapped(self) -> Self {
        Triple { i: self.j, j: self.i, k: self.k }
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.i, self.j).cmp(&(other.k, other.i, other.j))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// Dimension `d`, first-layer dimension `d1` and the nonzero structure
/// constants, fully materialized (both `a_{i,j,k}` and `a_{j,i,k}` stored).
///
/// Construction only checks shape (indices in range, no duplicates); the
/// algebraic invariants are checked by [`validate`], so that invalid tensors
/// can be represented and reported on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensor {
    dim: usize,
    dim_v1: usize,
    entries: BTreeMap<Triple, Rational>,
}

impl StructureTensor {
    /// Tensor from fully materialized entries, stored as given (zeros and
    /// asymmetric pairs included).
    pub fn from_raw_entries(
        dim: usize,
        dim_v1: usize,
        entries: impl IntoIterator<Item = (Triple, Rational)>,
    ) -> Result<Self> {
        check_dims(dim, dim_v1)?;
        let mut map = BTreeMap::new();
        for (t, v) in entries {
            check_range(t, dim)?;
            if map.insert(t, v).is_some() {
                return Err(Error::Schema(format!("duplicate entry {t}")));
            }
        }
        Ok(StructureTensor { dim, dim_v1, entries: map })
    }

    /// Tensor from entries with `i < j` only; each partner
    /// `a_{j,i,k} = -a_{i,j,k}` is synthesized. Zero values are rejected.
    pub fn from_upper_entries(
        dim: usize,
        dim_v1: usize,
        entries: impl IntoIterator<Item = (Triple, Rational)>,
    ) -> Result<Self> {
        check_dims(dim, dim_v1)?;
        let mut map = BTreeMap::new();
        for (t, v) in entries {
            check_range(t, dim)?;
            if t.i >= t.j {
                return Err(Error::Schema(format!("entry {t} must have i < j")));
            }
            if v.is_zero() {
                return Err(Error::Schema(format!("entry {t} has an explicit zero value")));
            }
            if map.contains_key(&t) {
                return Err(Error::Schema(format!("duplicate entry {t}")));
            }
            map.insert(t.swapped(), -v.clone());
            map.insert(t, v);
        }
        Ok(StructureTensor { dim, dim_v1, entries: map })
    }

    /// The Abelian group ℝ^d with the given layer split.
    pub fn abelian(dim: usize, dim_v1: usize) -> Result<Self> {
        Self::from_raw_entries(dim, dim_v1, [])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dim_v1(&self) -> usize {
        self.dim_v1
    }

    pub fn get(&self, t: Triple) -> Option<&Rational> {
        self.entries.get(&t)
    }

    /// The support `D` with values, ordered by `(k, i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (Triple, &Rational)> + '_ {
        self.entries.iter().map(|(t, v)| (*t, v))
    }

    pub fn support(&self) -> impl Iterator<Item = Triple> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored entries with `i < j`, the form used by tensor files.
    pub fn upper_entries(&self) -> impl Iterator<Item = (Triple, &Rational)> + '_ {
        self.entries().filter(|(t, _)| t.i < t.j)
    }

    /// The tensor with `a'_{i,j,k} = a_{j,i,k}`, i.e. the opposite group.
    pub fn transposed(&self) -> StructureTensor {
        StructureTensor {
            dim: self.dim,
            dim_v1: self.dim_v1,
            entries: self.entries.iter().map(|(t, v)| (t.swapped(), v.clone())).collect(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// `Err(InvalidTensor)` unless [`validate`] reports nothing.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidTensor(report.to_string()))
        }
    }
}

fn check_dims(dim: usize, dim_v1: usize) -> Result<()> {
    if dim == 0 || dim_v1 == 0 || dim_v1 > dim {
        return Err(Error::Schema(format!("need 1 <= dim_v1 <= dim, got dim = {dim}, dim_v1 = {dim_v1}")));
    }
    Ok(())
}

fn check_range(t: Triple, dim: usize) -> Result<()> {
    let ok = |x: usize| (1..=dim).contains(&x);
    if ok(t.i) && ok(t.j) && ok(t.k) {
        Ok(())
    } else {
        Err(Error::Schema(format!("entry {t} has an index outside 1..={dim}")))
    }
}

/// Which support condition an entry breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportRule {
    /// `i = j`
    Diagonal,
    /// `max(i, j) >= k`
    NotBelowTarget,
    /// `max(i, j) > d1`
    OutsideFirstLayer,
    /// `k <= d1`
    TargetInFirstLayer,
}

impl fmt::Display for SupportRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportRule::Diagonal => "i = j",
            SupportRule::NotBelowTarget => "max(i,j) >= k",
            SupportRule::OutsideFirstLayer => "max(i,j) > d1",
            SupportRule::TargetInFirstLayer => "k <= d1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A stored entry equal to zero.
    ZeroEntry(Triple),
    /// `a_{at} != -a_{at.swapped()}`; `found` is the stored value at `at`
    /// (zero when missing).
    Antisymmetry {
        at: Triple,
        expected: Rational,
        found: Rational,
    },
    Support {
        at: Triple,
        rule: SupportRule,
    },
    /// Nonzero Jacobi sum for `[[X_i, X_j], X_l] + cyclic` in coordinate `m`.
    Jacobi {
        i: usize,
        j: usize,
        l: usize,
        m: usize,
        value: Rational,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroEntry(t) => write!(f, "zero entry stored at {t}"),
            Violation::Antisymmetry { at, expected, found } => write!(
                f,
                "antisymmetry violated at {at}: expected {}, found {}",
                format_rational(expected),
                format_rational(found)
            ),
            Violation::Support { at, rule } => {
                write!(f, "support violated at {at}: {rule}")
            }
            Violation::Jacobi { i, j, l, m, value } => write!(
                f,
                "Jacobi identity fails for (i,j,l) = ({i},{j},{l}) in coordinate {m}: sum = {}",
                format_rational(value)
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (n, v) in self.violations.iter().enumerate() {
            if n > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lists every violated invariant: zero entries, antisymmetry, the
/// two-step support conditions, and the Jacobi identity (evaluated in full
/// even though the support conditions already force it).
pub fn validate(tensor: &StructureTensor) -> ValidationReport {
    let mut violations = Vec::new();
    let d1 = tensor.dim_v1;

    for (t, v) in tensor.entries() {
        if v.is_zero() {
            violations.push(Violation::ZeroEntry(t));
        }
    }

    for (t, v) in tensor.entries() {
        let partner = t.swapped();
        let expected = -v.clone();
        match tensor.get(partner) {
            // Report a present pair once, at the (j,i,k) member with i < j.
            Some(found) if *found != expected && t.i < t.j => {
                violations.push(Violation::Antisymmetry { at: partner, expected, found: found.clone() })
            }
            Some(_) => {}
            None if !v.is_zero() => {
                violations.push(Violation::Antisymmetry { at: partner, expected, found: Rational::zero() })
            }
            None => {}
        }
    }

    for (t, v) in tensor.entries() {
        if v.is_zero() {
            continue;
        }
        let top = t.i.max(t.j);
        let rules = [
            (t.i == t.j, SupportRule::Diagonal),
            (top >= t.k, SupportRule::NotBelowTarget),
            (top > d1, SupportRule::OutsideFirstLayer),
            (t.k <= d1, SupportRule::TargetInFirstLayer),
        ];
        for (broken, rule) in rules {
            if broken {
                violations.push(Violation::Support { at: t, rule });
            }
        }
    }

    // J(i,j,l;m) = Σ_k a_{i,j,k} a_{k,l,m} + a_{j,l,k} a_{k,i,m} + a_{l,i,k} a_{k,j,m}.
    // Each product pairs an entry (p,q,k) with an entry (k,r,m) and lands in
    // three of the sums, so only pairs of stored entries need visiting.
    let mut by_first: BTreeMap<usize, Vec<(Triple, &Rational)>> = BTreeMap::new();
    for (t, v) in tensor.entries() {
        by_first.entry(t.i).or_default().push((t, v));
    }
    let mut sums: BTreeMap<(usize, usize, usize, usize), Rational> = BTreeMap::new();
    for (outer, a) in tensor.entries() {
        let Some(inner) = by_first.get(&outer.k) else { continue };
        for (t2, b) in inner {
            let prod = a * *b;
            let (p, q, r, m) = (outer.i, outer.j, t2.j, t2.k);
            for key in [(p, q, r, m), (r, p, q, m), (q, r, p, m)] {
                *sums.entry(key).or_insert_with(Rational::zero) += &prod;
            }
        }
    }
    for ((i, j, l, m), value) in sums {
        if !value.is_zero() {
            violations.push(Violation::Jacobi { i, j, l, m, value });
        }
    }

    ValidationReport { violations }
}
