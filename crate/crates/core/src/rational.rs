//! Exact rational scalars.
//!
//! `BigRational` keeps every value in lowest terms with a positive
//! denominator, so structural equality is numeric equality.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};

pub use num::BigRational as Rational;

/// `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p"` or `"p/q"` with arbitrary-precision integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Schema(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Schema(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `0!, 1!, ..., n!`.
pub fn factorial_table(n: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = BigInt::one();
    out.push(acc.clone());
    for m in 1..=n {
        acc *= m;
        out.push(acc.clone());
    }
    out
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, m| acc * m)
}

/// `2^{-n}`.
pub fn inv_pow2(n: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n as usize)
}
