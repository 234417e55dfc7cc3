//! Exact integer primitives: unbounded integers, gcd, the sign convention,
//! and the shifted remainder that drives the orbit algorithms.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Signed integer of unbounded magnitude; all scalar quantities use it.
pub type Int = num_bigint::BigInt;

/// Exact rational with canonical (positive, coprime) denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Domain errors for the scalar operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// The shifted remainder needs both arguments nonzero.
    #[error("shifted remainder requires nonzero arguments, got ({x}, {y})")]
    ZeroOperand { x: Int, y: Int },
}

/// Nonnegative greatest common divisor, with gcd(0, 0) = 0.
pub fn gcd(x: &Int, y: &Int) -> Int {
    x.gcd(y)
}

/// The paper's sign convention: 1 for x ≥ 0, otherwise −1.
pub fn sign(x: &Int) -> Int {
    if x.is_negative() {
        -Int::from(1)
    } else {
        Int::from(1)
    }
}

/// Shifted remainder SR(x, y): the representative of x mod y of least
/// absolute value over nonzero shifts, so |SR(x,y)| = min_{k≠0} |x + yk|
/// and SR(x,y) ≡ x (mod y) with SR(x,y) ≠ x.
pub fn shifted_remainder(x: &Int, y: &Int) -> Result<Int, ArithError> {
    if x.is_zero() || y.is_zero() {
        return Err(ArithError::ZeroOperand { x: x.clone(), y: y.clone() });
    }
    let t = x - y * x.div_floor(y);
    if &t == &(x + y) {
        return Ok(t);
    }
    if &t != x && int(2) * t.abs() <= y.abs() {
        Ok(t)
    } else {
        Ok(t - y)
    }
}

#[cfg(test)]
pub(crate) fn shifted_remainder_i(x: i64, y: i64) -> i64 {
    use num_traits::ToPrimitive;
    shifted_remainder(&int(x), &int(y)).unwrap().to_i64().unwrap()
}

/// Serialize [`Int`] fields as decimal strings (readable, round-trippable).
pub mod serde_int {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let text = String::deserialize(d)?;
        Int::from_str(&text).map_err(serde::de::Error::custom)
    }
}

/// Serialize `Option<Int>` as an optional decimal string.
pub mod serde_opt_int {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(x: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| Int::from_str(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Serialize `Vec<Int>` as a list of decimal strings.
pub mod serde_int_vec {
    use super::Int;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(xs: &[Int], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| Int::from_str(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
