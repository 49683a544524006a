//! Exact rationals and their `{"num": .., "den": ..}` JSON form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn ratio(num: u64, den: u64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `2^-e`.
pub fn inv_pow2(e: u32) -> Rational {
    BigRational::new(BigInt::one(), BigInt::one() << e as usize)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3/10"`, `"0.3"` or `"7"` into an exact rational.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches('-');
        let whole: BigInt = if ip.is_empty() { BigInt::zero() } else { ip.parse().ok()? };
        let frac: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().ok()? };
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let v = BigRational::new(whole * &den + frac, den);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

fn int_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(v.to_string()),
    }
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &int_json(r.numer()))?;
    st.serialize_field("den", &int_json(r.denom()))?;
    st.end()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

impl IntRepr {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Num(n) => Ok(BigInt::from(n)),
            IntRepr::Str(s) => s.parse().map_err(|_| E::custom(format!("bad integer `{s}`"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Pair { num: IntRepr, den: IntRepr },
    Text(String),
    Num(f64),
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    match RatRepr::deserialize(d)? {
        RatRepr::Pair { num, den } => {
            let den = den.into_bigint::<D::Error>()?;
            if den.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            Ok(BigRational::new(num.into_bigint::<D::Error>()?, den))
        }
        RatRepr::Text(s) => parse(&s).ok_or_else(|| de::Error::custom(format!("bad rational `{s}`"))),
        // shortest round-trip decimal, so 0.3 reads as 3/10
        RatRepr::Num(x) if x.is_finite() => parse(&format!("{x}")).ok_or_else(|| de::Error::custom(format!("bad rational {x}"))),
        RatRepr::Num(_) => Err(de::Error::custom("non-finite rational")),
    }
}

/// `serde(with = ..)` adapter for `Option<Rational>`.
pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => super::serialize(r, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "super")] Rational);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

/// Wrapper giving `Rational` a serde implementation inside collections.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exact(#[serde(with = "crate::rational")] pub Rational);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/10"), Some(ratio(3, 10)));
        assert_eq!(parse("0.3"), Some(ratio(3, 10)));
        assert_eq!(parse("2"), Some(int(2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(Exact(ratio(2, 4))).unwrap();
        assert_eq!(v, serde_json::json!({"num": 1, "den": 2}));
        let back: Exact = serde_json::from_value(v).unwrap();
        assert_eq!(back.0, ratio(1, 2));
        let s: Exact = serde_json::from_str("\"3/10\"").unwrap();
        assert_eq!(s.0, ratio(3, 10));
    }
}
