//! Blocks `A_k = {N_k ≤ n ≤ N_k/(1-γ) : {θn} < β, n mod 2^k ∈ R_k}` whose
//! union separates asymptotic, Banach and Buck upper densities.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

use super::weyl::{FractionalWindow, Theta};

/// Levels of the residue chain precomputed.
pub const MAX_LEVEL: u32 = 40;

/// The block anchors `N_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockRule {
    /// `N_k = 4^k · 10^{k(k+1)/2}`.
    SuperGeometric,
    /// `N_k = c^k`, `c ≥ 10`.
    Geometric(u64),
}

impl BlockRule {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "super_geometric" => Ok(BlockRule::SuperGeometric),
            _ => {
                let c =
                    s.strip_prefix("geometric:").and_then(|c| c.parse::<u64>().ok()).ok_or_else(|| Error::invalid("n_rule", format!("unknown rule {s:?}")))?;
                if c < 10 {
                    return Err(Error::invalid("n_rule", "geometric ratio must be at least 10"));
                }
                Ok(BlockRule::Geometric(c))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            BlockRule::SuperGeometric => "super_geometric".into(),
            BlockRule::Geometric(c) => format!("geometric:{c}"),
        }
    }

    /// `N_k`, or `None` past `u64`.
    pub fn anchor(&self, k: u32) -> Option<u64> {
        match self {
            BlockRule::SuperGeometric => {
                let p = 4u64.checked_pow(k)?;
                p.checked_mul(10u64.checked_pow(k * (k + 1) / 2)?)
            }
            BlockRule::Geometric(c) => c.checked_pow(k),
        }
    }
}

/// Nested residue sets `R_k ⊆ [0, 2^k)` with `|R_k| = ⌊α 2^k⌋` and
/// `R_k + 2^k ℕ ⊆ R_{k+1} + 2^{k+1} ℕ`, each level adding the least residue
/// not already forced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NestedResidues {
    /// `extras[k]`: residues mod `2^k` added at level `k` (at most one past level 1).
    extras: Vec<Vec<u64>>,
    sizes: Vec<u64>,
}

impl NestedResidues {
    pub fn new(alpha: &Rational, levels: u32) -> Result<Self> {
        let mut chain = NestedResidues { extras: vec![Vec::new()], sizes: vec![0] };
        for k in 1..=levels {
            let r = (alpha * Rational::from_integer(BigInt::one() << k as usize)).floor().to_integer();
            let r = r.to_u64().ok_or_else(|| Error::invalid("alpha", "out of range"))?;
            let forced = 2 * chain.sizes[k as usize - 1];
            let mut added = Vec::new();
            if r == forced + 1 {
                let x = (0..).find(|&x| !chain.lifted_contains(x, k)).unwrap();
                added.push(x);
            } else if r != forced {
                return Err(Error::invalid("alpha", format!("level {k} needs {r} residues after {forced} forced ones")));
            }
            chain.extras.push(added);
            chain.sizes.push(r);
        }
        Ok(chain)
    }

    /// Membership in `R_{k-1} + 2^{k-1}ℕ` for `x < 2^k`.
    fn lifted_contains(&self, x: u64, k: u32) -> bool {
        (1..k.min(self.extras.len() as u32)).any(|j| self.extras[j as usize].iter().any(|&e| x % (1 << j) == e))
    }

    pub fn levels(&self) -> u32 {
        self.extras.len() as u32 - 1
    }

    /// `|R_k|`.
    pub fn size(&self, k: u32) -> u64 {
        self.sizes[k as usize]
    }

    /// `x mod 2^k ∈ R_k`.
    pub fn contains(&self, x: u64, k: u32) -> bool {
        (1..=k).any(|j| self.extras[j as usize].iter().any(|&e| x % (1 << j) == e))
    }

    /// `R_k` listed, for small `k`.
    pub fn level(&self, k: u32) -> Vec<u64> {
        (0..1u64 << k).filter(|&x| self.contains(x, k)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeparatedBlocks {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub rule: BlockRule,
    window: FractionalWindow,
    residues: NestedResidues,
}

impl SeparatedBlocks {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, theta: Theta, rule: BlockRule) -> Result<Self> {
        for (name, v) in [("alpha", &alpha), ("gamma", &gamma)] {
            if *v <= Rational::zero() || *v >= Rational::one() {
                return Err(Error::invalid(name, "must lie in (0, 1)"));
            }
        }
        let window = FractionalWindow::new(theta, beta.clone())?;
        let residues = NestedResidues::new(&alpha, MAX_LEVEL)?;
        Ok(SeparatedBlocks { alpha, beta, gamma, rule, window, residues })
    }

    pub fn residues(&self) -> &NestedResidues {
        &self.residues
    }

    pub fn theta(&self) -> &Theta {
        self.window.theta()
    }

    /// `n ≤ N / (1 - γ)` in exact arithmetic.
    fn below_block_end(&self, n: u64, anchor: u64) -> bool {
        let lhs = BigInt::from(n) * (self.gamma.denom() - self.gamma.numer());
        let rhs = BigInt::from(anchor) * self.gamma.denom();
        lhs <= rhs
    }

    pub fn contains(&self, n: u64) -> bool {
        if !self.window.contains(n) {
            return false;
        }
        (1..=self.residues.levels()).any(|k| match self.rule.anchor(k) {
            Some(a) => a <= n && self.below_block_end(n, a) && self.residues.contains(n, k),
            None => false,
        })
    }
}
