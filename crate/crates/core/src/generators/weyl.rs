//! Bohr-type sets `A_α = {n : {θn} < α}` evaluated in 64-bit fixed point.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest `n` evaluated; beyond it the truncation error of `θ` can exceed
/// `2^-32`.
pub const MAX_ARGUMENT: u64 = 1 << 32;

/// Membership is flagged when `|{θn} - α| < 2^-30`.
const AMBIGUITY: u128 = 1 << 34;

/// The fractional part of an irrational `θ > 0`, truncated to 64 bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Theta {
    label: String,
    frac: u64,
}

fn sqrt_frac(n: u64) -> Result<u64> {
    let r = (n as f64).sqrt() as u64;
    if (r.saturating_sub(1)..=r + 1).any(|s| s * s == n) {
        return Err(Error::invalid("theta", format!("sqrt of the perfect square {n} is rational")));
    }
    let scaled = (BigUint::from(n) << 128u32).sqrt();
    Ok((scaled & BigUint::from(u64::MAX)).to_u64().unwrap())
}

impl Theta {
    /// Accepts `sqrt2`, `sqrt3`, `golden`, `pi`, `e`, `sqrt:N`, or a positive
    /// decimal string.
    pub fn parse(s: &str) -> Result<Self> {
        let label = s.trim().to_string();
        let frac = match label.as_str() {
            "sqrt2" => sqrt_frac(2)?,
            "sqrt3" => sqrt_frac(3)?,
            "golden" => {
                // (1 + sqrt 5) / 2
                let s5 = (BigUint::from(5u32) << 128u32).sqrt();
                let v: BigUint = ((BigUint::one() << 64u32) + s5) >> 1u32;
                (v & BigUint::from(u64::MAX)).to_u64().unwrap()
            }
            "pi" => 0x243F_6A88_85A3_08D3,
            "e" => 0xB7E1_5162_8AED_2A6A,
            other => {
                if let Some(n) = other.strip_prefix("sqrt:") {
                    let n: u64 = n.parse().map_err(|_| Error::invalid("theta", format!("bad radicand in {other:?}")))?;
                    sqrt_frac(n)?
                } else {
                    let r = rational::parse(other).ok_or_else(|| Error::invalid("theta", format!("unrecognized value {other:?}")))?;
                    if !r.is_positive() {
                        return Err(Error::invalid("theta", "must be positive"));
                    }
                    let f = r.fract();
                    let scaled = (f.numer() << 64usize) / f.denom();
                    scaled.to_u64().unwrap_or(u64::MAX)
                }
            }
        };
        Ok(Theta { label, frac })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `⌊2^64 {θ}⌋`.
    pub fn frac_bits(&self) -> u64 {
        self.frac
    }

    /// `⌊2^64 {θn}⌋` up to the truncation error.
    #[inline]
    pub fn frac_of_multiple(&self, n: u64) -> u64 {
        self.frac.wrapping_mul(n)
    }

    pub fn frac_of_multiple_f64(&self, n: u64) -> f64 {
        self.frac_of_multiple(n) as f64 / 18_446_744_073_709_551_616.0
    }
}

/// `2^64 α` rounded up, for `α ∈ [0, 1]`.
fn scaled_cut(alpha: &Rational) -> u128 {
    let n: BigInt = alpha.numer() << 64usize;
    let d = alpha.denom();
    let q = &n / d;
    let q = if (&q * d) == n { q } else { q + 1 };
    q.to_u128().unwrap_or(0)
}

/// `{n : {θn} < α}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FractionalWindow {
    theta: Theta,
    alpha: Rational,
    cut: u128,
}

impl FractionalWindow {
    pub fn new(theta: Theta, alpha: Rational) -> Result<Self> {
        if alpha <= Rational::zero() || alpha >= Rational::one() {
            return Err(Error::invalid("alpha", "must lie in (0, 1)"));
        }
        let cut = scaled_cut(&alpha);
        Ok(FractionalWindow { theta, alpha, cut })
    }

    pub fn theta(&self) -> &Theta {
        &self.theta
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        (self.theta.frac_of_multiple(n) as u128) < self.cut
    }

    /// True when `{θn}` lies within `2^-30` of `α`, so the fixed-point answer
    /// may be unreliable.
    pub fn near_boundary(&self, n: u64) -> bool {
        (self.theta.frac_of_multiple(n) as u128).abs_diff(self.cut) < AMBIGUITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn sqrt2_digits() {
        let t = Theta::parse("sqrt2").unwrap();
        assert!((t.frac_of_multiple_f64(1) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        let g = Theta::parse("golden").unwrap();
        assert!((g.frac_of_multiple_f64(1) - 0.618_033_988_749_895).abs() < 1e-15);
        let d = Theta::parse("1.4142135623730950488016887").unwrap();
        assert!(d.frac_bits().abs_diff(t.frac_bits()) < 1 << 12);
        assert!(Theta::parse("sqrt:16").is_err());
        assert!(Theta::parse("-2.5").is_err());
        assert!(Theta::parse("tau").is_err());
    }

    #[test]
    fn half_window() {
        let w = FractionalWindow::new(Theta::parse("sqrt2").unwrap(), ratio(1, 2)).unwrap();
        assert!(w.contains(0));
        assert!(w.contains(1));
        assert!(!w.contains(2));
        assert!(FractionalWindow::new(Theta::parse("sqrt2").unwrap(), ratio(1, 1)).is_err());
    }

    #[test]
    fn agrees_with_float_away_from_boundary() {
        let w = FractionalWindow::new(Theta::parse("sqrt3").unwrap(), ratio(3, 10)).unwrap();
        let th = 3f64.sqrt();
        for n in 0..20_000u64 {
            let f = (th * n as f64).fract();
            if (f - 0.3).abs() > 1e-9 {
                assert_eq!(w.contains(n), f < 0.3, "n = {n}");
            }
        }
    }
}
