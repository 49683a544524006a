//! Thin additive bases of `Z/mZ` and their products along a modulus list.

use serde::Serialize;

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::zmod::ResidueSet;

/// `A_m = {0, ..., s} ∪ {js + j - 1 : 2 ≤ j ≤ q}` with `q = ⌊√m⌋` and
/// `s = q - 1` if `m < q(q+1)`, else `s = q`.
///
/// The result is checked: `A_m + A_m ⊇ [0, m)` and `|A_m|² < 4m`.
pub fn thin_basis(m: u64) -> Result<Vec<u64>> {
    if m < 2 {
        return Err(Error::invalid("m", "must be at least 2"));
    }
    if m > 1 << 40 {
        return Err(Error::LimitExceeded { what: "m", value: m as u128, limit: 1 << 40 });
    }
    let q = isqrt(m);
    let s = if m < q * (q + 1) { q - 1 } else { q };
    let mut a: Vec<u64> = (0..=s).collect();
    a.extend((2..=q).map(|j| j * s + j - 1));
    a.dedup();
    if !covers(&a, m) {
        return Err(Error::invalid("m", format!("construction failed to cover [0, {m})")));
    }
    if (a.len() as u128).pow(2) >= 4 * m as u128 {
        return Err(Error::invalid("m", format!("|A_{m}| = {} is not below 2 sqrt(m)", a.len())));
    }
    Ok(a)
}

/// `[0, m) ⊆ A + A` for a sorted `A`.
pub fn covers(a: &[u64], m: u64) -> bool {
    let mut hit = vec![false; m as usize];
    for (i, &x) in a.iter().enumerate() {
        if x >= m {
            break;
        }
        for &y in &a[i..] {
            match hit.get_mut((x + y) as usize) {
                Some(h) => *h = true,
                None => break,
            }
        }
    }
    hit.into_iter().all(|h| h)
}

/// `2⌊√(m + 1/4) - 1/2⌋ = 2 max{j : j(j+1) ≤ m}`.
pub fn refined_bound(m: u64) -> u64 {
    let mut j = isqrt(m);
    while j * (j + 1) > m {
        j -= 1;
    }
    2 * j
}

/// `B_k = A_{m_1} + m_1 A_{m_2} + ... + (m_1⋯m_{k-1}) A_{m_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisChain {
    pub moduli: Vec<u64>,
    pub sparsified: bool,
    /// `∏ m_i`.
    pub modulus: u64,
    /// Sorted, distinct.
    pub elements: Vec<u128>,
    /// `∏ |A_{m_i}|`.
    pub factor_product: u128,
}

/// Largest `∏ m_i` accepted.
pub const MAX_CHAIN_MODULUS: u64 = 1 << 20;

impl BasisChain {
    /// With `sparsify`, the `j`-th nonzero element `a` of `A_{m_i}` becomes
    /// `a + λ m_i` with `λ = 2^j · M / (m_1⋯m_i)`, so every element moves by a
    /// multiple of `M = ∏ m_i` and all residues mod `M` are unchanged.
    pub fn new(moduli: &[u64], sparsify: bool) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::invalid("moduli", "at least one modulus is required"));
        }
        let mut modulus = 1u64;
        for &m in moduli {
            if m < 2 {
                return Err(Error::invalid("moduli", format!("modulus {m} is below 2")));
            }
            modulus = modulus.saturating_mul(m);
            if modulus > MAX_CHAIN_MODULUS {
                return Err(Error::LimitExceeded { what: "product of moduli", value: modulus as u128, limit: MAX_CHAIN_MODULUS as u128 });
            }
        }
        let overflow = || Error::LimitExceeded { what: "sparsified element", value: u128::MAX, limit: u128::MAX };
        let mut elements = vec![0u128];
        let mut scale = 1u128;
        let mut factor_product = 1u128;
        for &m in moduli {
            let a = thin_basis(m)?;
            factor_product *= a.len() as u128;
            let next_scale = scale * m as u128;
            let lambda_unit = modulus as u128 / next_scale;
            let level: Vec<u128> = a
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    if !sparsify || x == 0 {
                        return Ok(scale * x as u128);
                    }
                    let lambda = 1u128.checked_shl(j as u32).and_then(|p| p.checked_mul(lambda_unit)).ok_or_else(overflow)?;
                    lambda.checked_mul(m as u128).and_then(|v| v.checked_add(x as u128)).and_then(|v| v.checked_mul(scale)).ok_or_else(overflow)
                })
                .collect::<Result<_>>()?;
            let mut next = Vec::with_capacity(elements.len() * level.len());
            for &e in &elements {
                for &l in &level {
                    next.push(e.checked_add(l).ok_or_else(overflow)?);
                }
            }
            next.sort_unstable();
            next.dedup();
            elements = next;
            scale = next_scale;
        }
        Ok(BasisChain { moduli: moduli.to_vec(), sparsified: sparsify, modulus, elements, factor_product })
    }

    pub fn len(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn residues(&self) -> ResidueSet {
        ResidueSet::from_reduced(self.modulus, self.elements.iter().map(|&e| (e % self.modulus as u128) as u64)).expect("modulus within cap")
    }

    /// `(B + B) mod M = Z/MZ`.
    pub fn doubles_to_full_ring(&self) -> bool {
        let r = self.residues();
        r.add(&r).map(|s| s.is_full()).unwrap_or(false)
    }

    /// `|B|² < 4^k M`, the squared form of `|B| < 2^k √M`.
    pub fn within_size_bound(&self) -> bool {
        let k = self.moduli.len() as u32;
        let lhs = (self.len() as u128).pow(2);
        match 4u128.checked_pow(k).and_then(|p| p.checked_mul(self.modulus as u128)) {
            Some(rhs) => lhs < rhs,
            None => true,
        }
    }
}
