//! Integers with few distinct prime factors, and the counting function
//! `φ_t(k) = |{1 ≤ a ≤ k : ω(gcd(a, k)) ≤ t}|`.

use crate::arith::{divisors, euler_phi, omega};
use crate::bits::Bits;

/// `P_t = {n ≥ 2 : ω(n) ≤ t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FewPrimeFactors {
    pub t: u32,
}

impl FewPrimeFactors {
    pub fn contains(&self, n: u64) -> bool {
        n >= 2 && omega(n) <= self.t
    }

    /// Membership of `[0, len)` via an `ω` sieve.
    pub fn indicator(&self, len: u64) -> Bits {
        let len = len as usize;
        let mut w = vec![0u8; len];
        let mut b = Bits::new(len);
        for p in 2..len {
            if w[p] == 0 {
                let mut x = p;
                while x < len {
                    w[x] = w[x].saturating_add(1);
                    x += p;
                }
            }
        }
        // w[p] counts p itself for primes, so primes end at 1 as well
        for (n, &count) in w.iter().enumerate().skip(2) {
            if u32::from(count) <= self.t {
                b.set(n);
            }
        }
        b
    }
}

/// `Σ_{d | k, ω(d) ≤ t} φ(k / d)`.
pub fn phi_t(k: u64, t: u32) -> u64 {
    divisors(k).into_iter().filter(|&d| omega(d) <= t).map(|d| euler_phi(k / d)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;

    #[test]
    fn totient_cases() {
        assert_eq!(phi_t(6, 0), 2);
        assert_eq!(phi_t(6, 1), 5);
        for k in 1..300u64 {
            assert_eq!(phi_t(k, 0), euler_phi(k));
            for t in 0..4 {
                let direct = (1..=k).filter(|&a| omega(gcd(a, k)) <= t).count() as u64;
                assert_eq!(phi_t(k, t), direct, "k = {k}, t = {t}");
            }
        }
    }

    #[test]
    fn prime_powers() {
        let p1 = FewPrimeFactors { t: 1 };
        let got: Vec<u64> = (0..=10).filter(|&n| p1.contains(n)).collect();
        assert_eq!(got, vec![2, 3, 4, 5, 7, 8, 9]);
        let b = p1.indicator(5000);
        for n in 0..5000u64 {
            assert_eq!(b.get(n as usize), p1.contains(n));
        }
        let p2 = FewPrimeFactors { t: 2 };
        let b = p2.indicator(3000);
        for n in 0..3000u64 {
            assert_eq!(b.get(n as usize), p2.contains(n));
        }
    }
}
