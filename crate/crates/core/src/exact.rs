//! Exact rational scalars, complex rationals, and their string encodings.
//!
//! Rationals are serialized as `"p/q"` (or `"p"` when the denominator is one)
//! so that reports round-trip without loss.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 only fails on overflow of both parts.
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Parse `p/q`, a signed integer, or a decimal literal such as `-0.125`.
/// Decimals convert exactly: `0.1` is `1/10`.
pub fn parse_q(text: &str) -> Result<Q> {
    let s = text.trim();
    let bad = || Error::BadRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_decimal(num.trim()).ok_or_else(bad)?;
        let d = parse_decimal(den.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(n / d);
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_decimal(s: &str) -> Option<Q> {
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    let v = Q::new(n, d);
    Some(if neg { -v } else { v })
}

pub fn format_q(x: &Q) -> String {
    x.to_string()
}

/// Serde adapter: a rational as a `"p/q"` string. Accepts JSON integers on input.
pub mod q_str {
    use super::*;
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        d.deserialize_any(QVisitor)
    }

    pub(crate) struct QVisitor;

    impl<'de> Visitor<'de> for QVisitor {
        type Value = Q;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as \"p/q\", a decimal string, or an integer")
        }
        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
            parse_q(v).map_err(E::custom)
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
            Ok(q(v))
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
            Ok(Q::from_integer(BigInt::from(v)))
        }
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod q_vec {
    use super::*;
    use serde::de::Deserializer;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Serializer};

    #[derive(Deserialize)]
    struct Wrapped(#[serde(with = "super::q_str")] Q);

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v: Vec<Wrapped> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

/// Serde adapter for `Vec<Vec<Q>>`.
pub mod q_mat {
    use super::*;
    use serde::de::Deserializer;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "super::q_vec")] Vec<Q>);

    pub fn serialize<S: Serializer>(rows: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in rows {
            seq.serialize_element(&Row(r.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Q>>, D::Error> {
        let v: Vec<Row> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|r| r.0).collect())
    }
}

/// A complex number with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QComplex {
    pub re: Q,
    pub im: Q,
}

impl QComplex {
    pub fn new(re: Q, im: Q) -> Self {
        QComplex { re, im }
    }

    pub fn real(re: Q) -> Self {
        QComplex { re, im: Q::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Q::zero())
    }

    pub fn one() -> Self {
        Self::real(Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn scale(&self, k: &Q) -> Self {
        QComplex::new(&self.re * k, &self.im * k)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QComplex::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Squared modulus, exact.
    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Display for QComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({},{})", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a QComplex> for &'a QComplex {
    type Output = QComplex;
    fn add(self, o: &QComplex) -> QComplex {
        QComplex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a QComplex> for &'a QComplex {
    type Output = QComplex;
    fn sub(self, o: &QComplex) -> QComplex {
        QComplex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a QComplex> for &'a QComplex {
    type Output = QComplex;
    fn mul(self, o: &QComplex) -> QComplex {
        QComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_are_exact() {
        assert_eq!(parse_q("0.1").unwrap(), q_frac(1, 10));
        assert_eq!(parse_q("-2.50").unwrap(), q_frac(-5, 2));
        assert_eq!(parse_q("3/6").unwrap(), q_frac(1, 2));
        assert_eq!(parse_q(".5").unwrap(), q_frac(1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q(".").is_err());
    }

    #[test]
    fn formatting_uses_p_over_q() {
        assert_eq!(format_q(&q_frac(6, 4)), "3/2");
        assert_eq!(format_q(&q(2)), "2");
        assert_eq!(format_q(&q_frac(-1, 3)), "-1/3");
    }
}
