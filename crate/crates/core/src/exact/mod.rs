//! Exact rational and integer linear algebra.
//!
//! Everything here is pure and allocation-owned, so values can be shared
//! freely across threads.

mod lattice;
pub mod lp;
mod matrix;
mod sparse;

pub use lattice::{lattice_index, primitive, quotient_map, row_echelon_with_transform, IntMatrix};
pub use matrix::{bareiss_rank, QMatrix};
pub use sparse::{sparse_integer_rank, SparseMatrix};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Scales a rational vector by the lcm of its denominators. The result spans
/// the same line, so ranks and signs are unchanged.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

pub(crate) fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub(crate) fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

/// Serde adapter storing a [`Rational`] as its canonical string.
pub mod rational_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
