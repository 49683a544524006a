//! `X = {r + K_r : r ≥ 1}` with `K_r = k_1⋯k_r` and every positive integer
//! dividing some `K_r`.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HookRule {
    /// `k_r = r`, so `K_r = r!`.
    Factorial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorialHook {
    pub rule: HookRule,
}

impl FactorialHook {
    /// Members `r + K_r ≤ horizon`, ascending.
    pub fn members_up_to(&self, horizon: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut k: u128 = 1;
        for r in 1u128.. {
            k = match self.rule {
                HookRule::Factorial => match k.checked_mul(r) {
                    Some(k) => k,
                    None => break,
                },
            };
            let x = r + k;
            if x > horizon as u128 {
                break;
            }
            out.push(x as u64);
        }
        out
    }

    pub fn contains(&self, n: u64) -> bool {
        self.members_up_to(n).last() == Some(&n)
    }

    pub fn indicator(&self, len: u64) -> Bits {
        Bits::from_indices(len as usize, self.members_up_to(len.saturating_sub(1)).into_iter().map(|x| x as usize))
    }
}
