//! `B_α = ⋃_{a_n = 1} (2^{n-1} + 2^n ℕ)` for a finite dyadic `α = 0.a_1 a_2 ...`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::periodic::EventuallyPeriodicSet;
use crate::rational::Rational;

/// Longest digit string accepted (the period is `2^len`).
pub const MAX_BITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicUnion {
    /// `a_1, a_2, ...`, trailing zeros removed.
    bits: Vec<bool>,
}

impl DyadicUnion {
    pub fn from_bits(bits: &str) -> Result<Self> {
        let mut v = Vec::with_capacity(bits.len());
        for c in bits.chars() {
            match c {
                '0' => v.push(false),
                '1' => v.push(true),
                _ => return Err(Error::invalid("bits", format!("unexpected character {c:?}"))),
            }
        }
        while v.last() == Some(&false) {
            v.pop();
        }
        if v.is_empty() {
            return Err(Error::invalid("bits", "at least one digit must be 1"));
        }
        if v.len() > MAX_BITS {
            return Err(Error::LimitExceeded { what: "dyadic digits", value: v.len() as u128, limit: MAX_BITS as u128 });
        }
        Ok(DyadicUnion { bits: v })
    }

    /// Digits of a dyadic rational in `(0, 1)`.
    pub fn from_alpha(alpha: &Rational) -> Result<Self> {
        if *alpha <= Rational::zero() || *alpha >= Rational::one() {
            return Err(Error::invalid("alpha", "must lie in (0, 1)"));
        }
        let den = alpha.denom();
        let two = BigInt::from(2);
        let mut d = den.clone();
        let mut e = 0usize;
        while d.is_even() {
            d /= &two;
            e += 1;
        }
        if !d.is_one() {
            return Err(Error::invalid("alpha", format!("{alpha} is not a dyadic rational")));
        }
        let num = alpha.numer();
        let s: String = (1..=e).map(|n| if (num >> (e - n)).is_odd() { '1' } else { '0' }).collect();
        Self::from_bits(&s)
    }

    pub fn bits_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn alpha(&self) -> Rational {
        let len = self.bits.len();
        let num = self.bits.iter().fold(BigInt::zero(), |acc, &b| acc * 2 + u8::from(b));
        Rational::new(num, BigInt::one() << len)
    }

    /// `min {n : a_n = 1}`.
    pub fn first_one(&self) -> u32 {
        self.bits.iter().position(|&b| b).unwrap() as u32 + 1
    }

    pub fn is_power_of_two(&self) -> bool {
        self.bits.iter().filter(|&&b| b).count() == 1
    }

    /// `n ∈ B_α` iff `n > 0` and `a_{v+1} = 1` where `2^v ∥ n`.
    pub fn contains(&self, n: u64) -> bool {
        n != 0 && self.bits.get(n.trailing_zeros() as usize) == Some(&true)
    }

    pub fn to_periodic(&self) -> EventuallyPeriodicSet {
        let terms: Vec<(u64, u64)> = self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| (1u64 << i, 1u64 << (i + 1))).collect();
        EventuallyPeriodicSet::from_progressions(&terms).expect("at most 2^20 period")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn odd_numbers() {
        let b = DyadicUnion::from_bits("1").unwrap();
        assert_eq!(b.alpha(), ratio(1, 2));
        assert_eq!(b.to_periodic(), EventuallyPeriodicSet::from_progressions(&[(1, 2)]).unwrap());
    }

    #[test]
    fn quarter() {
        let b = DyadicUnion::from_bits("01").unwrap();
        assert_eq!(b.to_periodic(), EventuallyPeriodicSet::from_progressions(&[(2, 4)]).unwrap());
        let p = b.to_periodic();
        let s = p.sumset(&p).unwrap();
        assert_eq!(s, EventuallyPeriodicSet::from_progressions(&[(4, 4)]).unwrap());
        assert_eq!(s.natural_density(), ratio(1, 4));
    }

    #[test]
    fn three_quarters() {
        let b = DyadicUnion::from_bits("11").unwrap();
        assert_eq!(b.to_periodic().natural_density(), ratio(3, 4));
        assert_eq!(b.to_periodic().modular_profile(4).unwrap().attained.members(), vec![1, 2, 3]);
    }

    #[test]
    fn digits_from_alpha() {
        assert_eq!(DyadicUnion::from_alpha(&ratio(3, 16)).unwrap().bits_string(), "0011");
        assert_eq!(DyadicUnion::from_bits("0110").unwrap().bits_string(), "011");
        assert!(DyadicUnion::from_alpha(&ratio(1, 3)).is_err());
        assert!(DyadicUnion::from_bits("000").is_err());
        assert!(DyadicUnion::from_bits("102").is_err());
    }

    #[test]
    fn membership_agrees_with_periodic_form() {
        let b = DyadicUnion::from_bits("1011").unwrap();
        let p = b.to_periodic();
        for n in 0..500 {
            assert_eq!(b.contains(n), p.contains(n));
        }
    }
}
