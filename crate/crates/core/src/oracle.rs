//! Brute-force references over `ℤ/mℤ` for small `m`, with subsets encoded as
//! `u32` masks. Searches visit encodings in ascending order and report the
//! lowest counterexample regardless of scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::zmod::{self, Convention, ResidueSet};

/// Largest modulus the exhaustive searches accept.
pub const MAX_EXHAUSTIVE_MODULUS: u64 = 12;

pub type Mask = u32;

fn check_range(m: u64) -> Result<()> {
    if m == 0 || m > MAX_EXHAUSTIVE_MODULUS {
        return Err(Error::invalid("m", format!("exhaustive search needs 1 <= m <= {MAX_EXHAUSTIVE_MODULUS}")));
    }
    Ok(())
}

fn full(m: u32) -> Mask {
    ((1u64 << m) - 1) as Mask
}

/// `S + k`.
fn rot(s: Mask, k: u32, m: u32) -> Mask {
    let k = k % m;
    if k == 0 {
        return s;
    }
    ((s << k) | (s >> (m - k))) & full(m)
}

fn add(a: Mask, b: Mask, m: u32) -> Mask {
    let mut out = 0;
    for x in 0..m {
        if a >> x & 1 == 1 {
            out |= rot(b, x, m);
        }
    }
    out
}

/// `S + ⟨d⟩`.
fn coset_hull(s: Mask, d: u32, m: u32) -> Mask {
    (0..m / d).fold(0, |acc, j| acc | rot(s, j * d, m))
}

fn period(s: Mask, m: u32) -> u32 {
    divisors(m as u64).into_iter().map(|d| d as u32).find(|&d| rot(s, d, m) == s).unwrap_or(m)
}

pub fn to_residue_set(s: Mask, m: u64) -> ResidueSet {
    ResidueSet::new(m, (0..m).filter(|&x| s >> x & 1 == 1)).expect("mask within modulus")
}

pub fn to_mask(s: &ResidueSet) -> Mask {
    s.iter().fold(0, |acc, x| acc | 1 << x)
}

/// Every `(S1, S2)` of nonempty subsets, ascending by `(S1, S2)`; the first
/// violation of `|S1+S2| ≥ |S1+H| + |S2+H| - |H|` with `H` the period group of `S1+S2`.
pub fn exhaustive_kneser(m: u64) -> Result<Option<(ResidueSet, ResidueSet)>> {
    Ok(kneser_sweep(m)?.violation.map(|(a, b)| (to_residue_set(a, m), to_residue_set(b, m))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserSweep {
    pub m: u64,
    pub pairs: u64,
    /// Pairs with `|S1+S2| < |S1| + |S2| - 1`.
    pub deficient: u64,
    pub violation: Option<(Mask, Mask)>,
    /// Deficient pairs where `|S1+S2| ≠ |S1+H| + |S2+H| - |H|`.
    pub equality_failure: Option<(Mask, Mask)>,
}

/// Per leading set: pairs, deficient pairs, first violation, first equality failure.
type SweepRow = (u64, u64, Option<Mask>, Option<Mask>);

pub fn kneser_sweep(m: u64) -> Result<KneserSweep> {
    check_range(m)?;
    let mu = m as u32;
    let all = full(mu);
    let per_first: Vec<(u64, u64, Option<Mask>, Option<Mask>)> = (1..=all)
        .into_par_iter()
        .map(|a| {
            let (mut pairs, mut deficient) = (0u64, 0u64);
            let (mut violation, mut equality) = (None, None);
            for b in 1..=all {
                pairs += 1;
                let s = add(a, b, mu);
                let d = period(s, mu);
                let h = mu / d;
                let lhs = s.count_ones();
                let rhs = coset_hull(a, d, mu).count_ones() + coset_hull(b, d, mu).count_ones() - h;
                if lhs < rhs && violation.is_none() {
                    violation = Some(b);
                }
                if lhs + 1 < a.count_ones() + b.count_ones() {
                    deficient += 1;
                    if lhs != rhs && equality.is_none() {
                        equality = Some(b);
                    }
                }
            }
            (pairs, deficient, violation, equality)
        })
        .collect();
    let first = |pick: fn(&SweepRow) -> Option<Mask>| per_first.iter().enumerate().find_map(|(i, row)| pick(row).map(|b| (i as Mask + 1, b)));
    Ok(KneserSweep {
        m,
        pairs: per_first.iter().map(|r| r.0).sum(),
        deficient: per_first.iter().map(|r| r.1).sum(),
        violation: first(|r| r.2),
        equality_failure: first(|r| r.3),
    })
}

/// `S = {a, a+d, ..., a+(|S|-1)d}` with distinct terms, for some `a, d`.
pub fn brute_is_progression(s: Mask, m: u32) -> bool {
    let n = s.count_ones();
    if n <= 1 {
        return n == 1;
    }
    (1..m).any(|d| {
        (0..m).filter(|&a| s >> a & 1 == 1).any(|a| {
            let mut seen: Mask = 0;
            (0..n).all(|i| {
                let x = (a + i * d) % m;
                let fresh = seen >> x & 1 == 0 && s >> x & 1 == 1;
                seen |= 1 << x;
                fresh
            })
        })
    })
}

/// Tries every proper nontrivial subgroup `K = ⟨d⟩`, every `s ∈ S`, with the
/// trace `S'' = (S - s) ∩ K` forced; periodic `S` is never quasi-periodic.
pub fn brute_quasi_periodic_mask(s: Mask, m: u32, convention: Convention) -> bool {
    if s == 0 || period(s, m) < m {
        return false;
    }
    for d in divisors(m as u64).into_iter().map(|d| d as u32).filter(|&d| d > 1 && d < m) {
        let k: Mask = (0..m / d).fold(0, |acc, j| acc | 1 << (j * d));
        for x in (0..m).filter(|&x| s >> x & 1 == 1) {
            let trace = rot(s, m - x, m) & k;
            if trace == k {
                continue;
            }
            let rest = s & !rot(trace, x, m);
            if convention.requires_nonempty() && rest == 0 {
                continue;
            }
            if coset_hull(rest, d, m) == rest {
                return true;
            }
        }
    }
    false
}

pub fn brute_quasi_periodic(s: &ResidueSet, convention: Convention) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    check_range(s.modulus())?;
    Ok(brute_quasi_periodic_mask(to_mask(s), s.modulus() as u32, convention))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempermanSweep {
    pub m: u64,
    pub convention: Convention,
    /// Sets with `|S+S| = 2|S| - 1`.
    pub critical: u64,
    /// Critical sets whose doubling is periodic (outside the claim's scope).
    pub periodic_doublings: u64,
    pub counterexample: Option<Mask>,
}

/// The first critical `S` with `S+S` neither periodic nor quasi-periodic
/// under `convention` while `S` is not a progression.
pub fn exhaustive_kemperman_ap(m: u64, convention: Convention) -> Result<Option<ResidueSet>> {
    Ok(kemperman_sweep(m, convention)?.counterexample.map(|s| to_residue_set(s, m)))
}

pub fn kemperman_sweep(m: u64, convention: Convention) -> Result<KempermanSweep> {
    check_range(m)?;
    let mu = m as u32;
    let rows: Vec<(bool, bool, bool)> = (1..=full(mu))
        .into_par_iter()
        .map(|s| {
            let ss = add(s, s, mu);
            let critical = ss.count_ones() == 2 * s.count_ones() - 1;
            if !critical {
                return (false, false, false);
            }
            let periodic = period(ss, mu) < mu;
            let bad = !periodic && !brute_quasi_periodic_mask(ss, mu, convention) && !brute_is_progression(s, mu);
            (true, periodic, bad)
        })
        .collect();
    Ok(KempermanSweep {
        m,
        convention,
        critical: rows.iter().filter(|r| r.0).count() as u64,
        periodic_doublings: rows.iter().filter(|r| r.1).count() as u64,
        counterexample: rows.iter().position(|r| r.2).map(|i| i as Mask + 1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agreement {
    pub m: u64,
    pub convention: Convention,
    pub sets: u64,
    /// Sets where the detector and the brute force disagree, or the
    /// detector's witness fails its own definition.
    pub disagreements: Vec<Mask>,
}

/// `zmod::detect_quasi_periodic` against [`brute_quasi_periodic_mask`] on
/// every nonempty subset.
pub fn quasi_periodic_agreement(m: u64, convention: Convention) -> Result<Agreement> {
    check_range(m)?;
    let mu = m as u32;
    let disagreements = (1..=full(mu))
        .into_par_iter()
        .filter_map(|s| {
            let set = to_residue_set(s, m);
            let detected = zmod::detect_quasi_periodic(&set, convention.requires_nonempty()).expect("nonempty");
            let valid = detected.as_ref().is_none_or(|w| w.is_valid_for(&set, convention));
            let brute = brute_quasi_periodic_mask(s, mu, convention);
            (!valid || detected.is_some() != brute).then_some(s)
        })
        .collect();
    Ok(Agreement { m, convention, sets: full(mu) as u64, disagreements })
}

/// All sums `x + y <= horizon`, ascending and distinct.
pub fn brute_sumset_members(xs: &[u64], ys: &[u64], horizon: u64) -> Vec<u64> {
    let mut hit = vec![false; horizon as usize + 1];
    for &x in xs.iter().take_while(|&&x| x <= horizon) {
        for &y in ys.iter().take_while(|&&y| x + y <= horizon) {
            hit[(x + y) as usize] = true;
        }
    }
    hit.iter().enumerate().filter(|(_, &h)| h).map(|(n, _)| n as u64).collect()
}
