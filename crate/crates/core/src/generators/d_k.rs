//! Integers whose binary digits vanish on a prescribed position set `K`, and
//! the exact bookkeeping for the complement of their doubled set.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::rational::{one, Rational};
use crate::zmod::ResidueSet;

/// How `K` continues past its explicit prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KRule {
    /// `K` is exactly the prefix.
    None,
    /// Each gap doubles the previous one. A one-term prefix `k0` continues as
    /// `k_{t+1} = 2 k_t + 1`.
    DoubleGap,
    /// Constant gap `g` after the prefix.
    ConstantGap(u64),
}

/// A strictly increasing sequence `k_0 < k_1 < ...` given by a prefix and a rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KSequence {
    prefix: Vec<u64>,
    rule: KRule,
}

impl KSequence {
    pub fn new(prefix: Vec<u64>, rule: KRule) -> Result<Self> {
        if prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("k_prefix", "must be strictly increasing"));
        }
        if rule != KRule::None && prefix.is_empty() {
            return Err(Error::invalid("k_prefix", "a continuation rule needs at least one term"));
        }
        if rule == KRule::ConstantGap(0) {
            return Err(Error::invalid("gap", "must be positive"));
        }
        Ok(KSequence { prefix, rule })
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn rule(&self) -> KRule {
        self.rule
    }

    pub fn is_infinite(&self) -> bool {
        self.rule != KRule::None
    }

    /// True when every large position lies in `K` (then `D_K` is finite).
    pub fn is_cofinite(&self) -> bool {
        self.rule == KRule::ConstantGap(1)
    }

    fn next_after(&self, terms: &[u64]) -> Option<u64> {
        let n = terms.len();
        if n < self.prefix.len() {
            return Some(self.prefix[n]);
        }
        let last = *terms.last()?;
        match self.rule {
            KRule::None => None,
            KRule::ConstantGap(g) => last.checked_add(g),
            KRule::DoubleGap if n == 1 => last.checked_mul(2)?.checked_add(1),
            KRule::DoubleGap => last.checked_add(2 * (last - terms[n - 2])),
        }
    }

    /// `k_0, ..., k_{count-1}`; shorter if `K` is finite.
    pub fn first_terms(&self, count: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            match self.next_after(&out) {
                Some(k) => out.push(k),
                None => break,
            }
        }
        out
    }

    /// All `k_t < bound`.
    pub fn terms_below(&self, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while let Some(k) = self.next_after(&out) {
            if k >= bound {
                break;
            }
            out.push(k);
        }
        out
    }

    /// `k_t`, if it exists.
    pub fn term(&self, t: usize) -> Option<u64> {
        self.first_terms(t + 1).get(t).copied()
    }

    fn mask_below(&self, e: u64) -> u64 {
        self.terms_below(e.min(64)).iter().fold(0, |m, &k| m | 1 << k)
    }
}

/// `D_K = {n : the binary digit of n at every position of K is 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitAvoiding {
    k: KSequence,
    mask: u64,
}

impl DigitAvoiding {
    pub fn new(k: KSequence) -> Self {
        let mask = k.mask_below(64);
        DigitAvoiding { k, mask }
    }

    /// Base-4 digits in `{0, 1}`: `K` is the set of odd positions.
    pub fn base4_01() -> Self {
        Self::new(KSequence::new(vec![1], KRule::ConstantGap(2)).unwrap())
    }

    pub fn k(&self) -> &KSequence {
        &self.k
    }

    pub fn contains(&self, n: u64) -> bool {
        n & self.mask == 0
    }

    pub fn indicator(&self, len: u64) -> Bits {
        let mut b = Bits::new(len as usize);
        // D_K ∩ [0, len) is a set of submasks of the complement of K
        let free = !self.mask & (len.max(1).next_power_of_two() - 1).max(1);
        let mut sub = 0u64;
        loop {
            if sub < len {
                b.set(sub as usize);
            }
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
        b
    }

    /// Log2 of the modulus if `m` is a power of two within range.
    fn exponent(m: u64) -> Option<u32> {
        (m.is_power_of_two() && m <= 1 << 20).then(|| m.trailing_zeros())
    }

    pub fn attained(&self, m: u64) -> Option<ResidueSet> {
        let e = Self::exponent(m)?;
        let mask = self.k.mask_below(e as u64);
        let free = !mask & (m - 1);
        let mut s = ResidueSet::empty(m).ok()?;
        let mut sub = 0u64;
        loop {
            s.insert(sub).ok()?;
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
        Some(s)
    }

    pub fn infinitely_attained(&self, m: u64) -> Option<ResidueSet> {
        if self.k.is_cofinite() {
            return ResidueSet::empty(m).ok().filter(|_| Self::exponent(m).is_some());
        }
        self.attained(m)
    }

    pub fn cofinitely_attained(&self, m: u64) -> Option<ResidueSet> {
        let e = Self::exponent(m)? as u64;
        if !self.k.is_infinite() && self.k.prefix.iter().all(|&k| k < e) {
            return self.attained(m);
        }
        ResidueSet::empty(m).ok()
    }

    /// `2^{k_{t-1} + 1}` with `k_{-1} = -1`.
    fn low_block(ks: &[u64], t: usize) -> BigInt {
        if t == 0 {
            BigInt::one()
        } else {
            BigInt::one() << (ks[t - 1] + 1) as usize
        }
    }

    fn terms_through(&self, t_max: usize) -> Result<Vec<u64>> {
        let ks = self.k.first_terms(t_max + 1);
        if ks.len() <= t_max {
            return Err(Error::invalid("T", format!("K has only {} terms", ks.len())));
        }
        if ks[t_max] > 4096 {
            return Err(Error::LimitExceeded { what: "k_T", value: ks[t_max] as u128, limit: 4096 });
        }
        Ok(ks)
    }

    /// `M_t = 2^{k_t+1} - 2^{k_{t-1}+1}` for `t = 0..=t_max`.
    pub fn m_sequence(&self, t_max: usize) -> Result<Vec<BigInt>> {
        let ks = self.terms_through(t_max)?;
        Ok((0..=t_max).map(|t| (BigInt::one() << (ks[t] + 1) as usize) - Self::low_block(&ks, t)).collect())
    }

    /// `|Z_T|` by the block recursion over `t = 0..=T`.
    pub fn z_count(&self, t_max: usize) -> Result<BigInt> {
        let ks = self.terms_through(t_max)?;
        let ms = self.m_sequence(t_max)?;
        let mut z = BigInt::one(); // Z_0 = {M_0} mod 2^{k_0+1}
        for t in 1..=t_max {
            let full = BigInt::one() << (ks[t] + 1) as usize;
            let prev = BigInt::one() << (ks[t - 1] + 1) as usize;
            z = &full - &ms[t] + &ms[t] / prev * z;
        }
        Ok(z)
    }

    /// `ξ_{K,T} = |Z_T| / 2^{k_T+1}`.
    pub fn xi(&self, t_max: usize) -> Result<Rational> {
        let ks = self.terms_through(t_max)?;
        Ok(Rational::new(self.z_count(t_max)?, BigInt::one() << (ks[t_max] + 1) as usize))
    }

    /// `∏_{t ≤ T} (1 - 2^{k_{t-1} - k_t})`.
    pub fn delta_partial(&self, t_max: usize) -> Result<Rational> {
        let ks = self.terms_through(t_max)?;
        let mut p = one();
        for t in 0..=t_max {
            let low = Self::low_block(&ks, t);
            let high = BigInt::one() << (ks[t] + 1) as usize;
            p *= Rational::new(&high - low, high);
        }
        Ok(p)
    }

    /// A certified lower bound for the infinite product `δ_K`, from the
    /// partial product through `T` and the tail `∏_{t>T}(1 - 2^{-g_t})`.
    pub fn delta_lower_bound(&self, t_max: usize) -> Result<Rational> {
        let p = self.delta_partial(t_max)?;
        match self.k.rule {
            // finite K: the product is exact
            KRule::None => match self.k.prefix.len() {
                0 => Ok(one()),
                n => self.delta_partial(n - 1),
            },
            KRule::ConstantGap(_) => Ok(Rational::zero()),
            KRule::DoubleGap => {
                // gaps strictly increase, so sum_{t>T} 2^{-g_t} <= 2 * 2^{-g_{T+1}}
                let ks = self.terms_through(t_max + 1)?;
                let g = ks[t_max + 1] - ks[t_max];
                let tail = Rational::new(BigInt::from(2), BigInt::one() << g as usize);
                Ok(p * (one() - tail).max(Rational::zero()))
            }
        }
    }

    /// `Z_T ⊆ [0, 2^{k_T+1})`, the union of the blocks
    /// `[0, 2^{k_{t-1}+1}) + M_t + 2^{k_t+1} ℕ` for `t ≤ T`.
    pub fn z_set(&self, t_max: usize) -> Result<Bits> {
        let ks = self.terms_through(t_max)?;
        if ks[t_max] + 1 > 26 {
            return Err(Error::LimitExceeded { what: "2^(k_T+1)", value: 1u128 << (ks[t_max] + 1).min(127), limit: 1 << 26 });
        }
        let len = 1u64 << (ks[t_max] + 1);
        let mut z = Bits::new(len as usize);
        for t in 0..=t_max {
            let low = if t == 0 { 1 } else { 1u64 << (ks[t - 1] + 1) };
            let step = 1u64 << (ks[t] + 1);
            let mut base = step - low;
            while base < len {
                for x in base..base + low {
                    z.set(x as usize);
                }
                base += step;
            }
        }
        Ok(z)
    }

    pub fn derived(&self, t_max: usize) -> Result<DkDerived> {
        let ks = self.terms_through(t_max)?;
        Ok(DkDerived {
            k: ks,
            m: self.m_sequence(t_max)?.iter().map(ToString::to_string).collect(),
            z_size: self.z_count(t_max)?.to_string(),
            xi: (0..=t_max).map(|t| self.xi(t)).collect::<Result<_>>()?,
            delta_partial: (0..=t_max).map(|t| self.delta_partial(t)).collect::<Result<_>>()?,
        })
    }
}

/// Closed-form data attached to `D_K` through index `T`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DkDerived {
    pub k: Vec<u64>,
    /// `M_t` as decimal strings.
    pub m: Vec<String>,
    pub z_size: String,
    #[serde(serialize_with = "ser_rationals")]
    pub xi: Vec<Rational>,
    #[serde(serialize_with = "ser_rationals")]
    pub delta_partial: Vec<Rational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| crate::rational::Exact(r.clone())))
}
