//! Subsets of the cyclic group Z/mZ: sumsets, stabilizers, Kneser-bound
//! bookkeeping, and detection of arithmetic progressions and quasi-periodic
//! sets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd};
use crate::bits::Bits;
use crate::error::{Error, Result};

/// Largest modulus accepted for dense residue vectors.
pub const MAX_MODULUS: u64 = 1 << 20;

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::invalid("modulus", "must be positive"));
    }
    if m > MAX_MODULUS {
        return Err(Error::LimitExceeded { what: "modulus", value: m as u128, limit: MAX_MODULUS as u128 });
    }
    Ok(())
}

/// A subset of Z/mZ stored as a dense membership vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ResidueSetRepr", into = "ResidueSetRepr")]
pub struct ResidueSet {
    modulus: u64,
    bits: Bits,
}

#[derive(Serialize, Deserialize)]
struct ResidueSetRepr {
    modulus: u64,
    members: Vec<u64>,
}

impl TryFrom<ResidueSetRepr> for ResidueSet {
    type Error = Error;

    fn try_from(r: ResidueSetRepr) -> Result<Self> {
        ResidueSet::new(r.modulus, r.members)
    }
}

impl From<ResidueSet> for ResidueSetRepr {
    fn from(s: ResidueSet) -> Self {
        ResidueSetRepr { modulus: s.modulus, members: s.members() }
    }
}

impl ResidueSet {
    pub fn empty(modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(ResidueSet { modulus, bits: Bits::new(modulus as usize) })
    }

    pub fn full(modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(ResidueSet { modulus, bits: Bits::full(modulus as usize) })
    }

    /// Builds the set from residues already in `[0, modulus)`.
    pub fn new<I: IntoIterator<Item = u64>>(modulus: u64, members: I) -> Result<Self> {
        let mut s = ResidueSet::empty(modulus)?;
        for x in members {
            if x >= modulus {
                return Err(Error::ResidueOutOfRange { value: x, modulus });
            }
            s.bits.set(x as usize);
        }
        Ok(s)
    }

    /// Builds the set from arbitrary integers, reducing each modulo `modulus`.
    pub fn from_reduced<I: IntoIterator<Item = u64>>(modulus: u64, values: I) -> Result<Self> {
        let mut s = ResidueSet::empty(modulus)?;
        for x in values {
            s.bits.set((x % modulus) as usize);
        }
        Ok(s)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> u64 {
        self.bits.count() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.modulus
    }

    pub fn contains(&self, x: u64) -> bool {
        x < self.modulus && self.bits.get(x as usize)
    }

    pub fn insert(&mut self, x: u64) -> Result<()> {
        if x >= self.modulus {
            return Err(Error::ResidueOutOfRange { value: x, modulus: self.modulus });
        }
        self.bits.set(x as usize);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.ones().map(|i| i as u64)
    }

    pub fn members(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<u64> {
        self.bits.first_one().map(|i| i as u64)
    }

    pub(crate) fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn complement(&self) -> ResidueSet {
        let mut bits = self.bits.clone();
        bits.negate();
        ResidueSet { modulus: self.modulus, bits }
    }

    fn same_modulus(&self, other: &ResidueSet) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        Ok(())
    }

    pub fn union(&self, other: &ResidueSet) -> Result<ResidueSet> {
        self.same_modulus(other)?;
        let mut bits = self.bits.clone();
        bits.or_assign(&other.bits);
        Ok(ResidueSet { modulus: self.modulus, bits })
    }

    pub fn intersection(&self, other: &ResidueSet) -> Result<ResidueSet> {
        self.same_modulus(other)?;
        let mut bits = self.bits.clone();
        bits.and_assign(&other.bits);
        Ok(ResidueSet { modulus: self.modulus, bits })
    }

    pub fn difference(&self, other: &ResidueSet) -> Result<ResidueSet> {
        self.same_modulus(other)?;
        let mut bits = self.bits.clone();
        bits.and_not_assign(&other.bits);
        Ok(ResidueSet { modulus: self.modulus, bits })
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.modulus == other.modulus && self.bits.is_subset(&other.bits)
    }

    /// `S + c`.
    pub fn translate(&self, c: u64) -> ResidueSet {
        ResidueSet { modulus: self.modulus, bits: self.bits.rotated((c % self.modulus) as usize) }
    }

    /// Cyclic sumset of two sets (empty if either is empty).
    pub fn add(&self, other: &ResidueSet) -> Result<ResidueSet> {
        self.same_modulus(other)?;
        Ok(ResidueSet { modulus: self.modulus, bits: self.bits.cyclic_sumset(&other.bits) })
    }

    /// Lifts `self` (a set mod `m`) to the modulus `m * factor`:
    /// `{x + m*j : x in S, 0 <= j < factor}`.
    pub fn lift(&self, factor: u64) -> Result<ResidueSet> {
        let big = self.modulus.checked_mul(factor).ok_or(Error::LimitExceeded { what: "modulus", value: u128::MAX, limit: MAX_MODULUS as u128 })?;
        check_modulus(big)?;
        let mut out = ResidueSet::empty(big)?;
        for j in 0..factor {
            out.bits.or_shifted(&self.bits, (j * self.modulus) as usize);
        }
        Ok(out)
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (mod {})", self.bits, self.modulus)
    }
}

/// A subgroup of Z/mZ, encoded by the smallest positive `d | m` generating it.
/// `d == m` is the trivial subgroup, `d == 1` the whole group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    pub modulus: u64,
    pub generator: u64,
}

impl Subgroup {
    pub fn new(modulus: u64, generator: u64) -> Result<Self> {
        check_modulus(modulus)?;
        if generator == 0 || !modulus.is_multiple_of(generator) {
            return Err(Error::NotDivisor { divisor: generator, modulus });
        }
        Ok(Subgroup { modulus, generator })
    }

    pub fn trivial(modulus: u64) -> Self {
        Subgroup { modulus, generator: modulus }
    }

    pub fn order(&self) -> u64 {
        self.modulus / self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.generator == self.modulus
    }

    pub fn is_full(&self) -> bool {
        self.generator == 1
    }

    pub fn contains(&self, x: u64) -> bool {
        x.is_multiple_of(self.generator)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.order()).map(move |i| i * self.generator)
    }

    pub fn to_residue_set(&self) -> ResidueSet {
        ResidueSet::new(self.modulus, self.elements()).expect("subgroup elements lie below the modulus")
    }
}

/// `(x_1 + ... + x_k) mod m` over all choices `x_i in S_i`.
pub fn sumset(sets: &[ResidueSet]) -> Result<ResidueSet> {
    let (first, rest) = sets.split_first().ok_or_else(|| Error::invalid("sets", "at least one set is required"))?;
    if first.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut acc = first.clone();
    for s in rest {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        acc = acc.add(s)?;
    }
    Ok(acc)
}

/// Largest subgroup `H` with `S + H = S`.
pub fn stabilizer(s: &ResidueSet) -> Result<Subgroup> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = s.modulus;
    // The period set is a subgroup, so its least positive element divides m.
    for d in divisors(m) {
        if d == m || s.bits.rotated(d as usize) == s.bits {
            return Ok(Subgroup { modulus: m, generator: d });
        }
    }
    unreachable!("d = m always stabilizes")
}

pub fn is_periodic(s: &ResidueSet) -> Result<bool> {
    Ok(!stabilizer(s)?.is_trivial())
}

/// `{x mod d : x in S}` for `d | m`.
pub fn project(s: &ResidueSet, d: u64) -> Result<ResidueSet> {
    if d == 0 || !s.modulus.is_multiple_of(d) {
        return Err(Error::NotDivisor { divisor: d, modulus: s.modulus });
    }
    if d == s.modulus {
        return Ok(s.clone());
    }
    let mut out = ResidueSet::empty(d)?;
    let mut start = 0;
    while start < s.modulus {
        let chunk = s.bits.slice(start as usize, d as usize);
        out.bits.or_assign(&chunk);
        start += d;
    }
    Ok(out)
}

/// `S = {start + i*difference : 0 <= i < length}` with all terms distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApWitness {
    pub start: u64,
    pub difference: u64,
    pub length: u64,
}

impl ApWitness {
    pub fn terms(&self, modulus: u64) -> impl Iterator<Item = u64> + '_ {
        (0..self.length).map(move |i| (self.start + i * self.difference) % modulus)
    }
}

/// Finds the arithmetic-progression presentation of `S` with the smallest
/// difference, then the smallest start.
pub fn detect_arithmetic_progression(s: &ResidueSet) -> Result<Option<ApWitness>> {
    let len = s.len();
    let first = s.min().ok_or(Error::EmptySet)?;
    if len == 1 {
        return Ok(Some(ApWitness { start: first, difference: 1, length: 1 }));
    }
    let m = s.modulus;
    for d in 1..m {
        let order = m / gcd(d, m);
        if len > order {
            continue;
        }
        // elements with no predecessor x - d in S
        let mut heads = s.bits.clone();
        heads.and_not_assign(&s.bits.rotated(d as usize));
        let start = match (heads.count(), len == order) {
            (0, true) => first,
            (1, false) => heads.first_one().unwrap() as u64,
            _ => continue,
        };
        let w = ApWitness { start, difference: d, length: len };
        if w.terms(m).all(|x| s.contains(x)) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Whether a quasi-periodic decomposition may leave an empty periodic part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `S'` may be empty.
    #[default]
    AllowEmpty,
    /// `S'` must be nonempty.
    RequireNonempty,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::AllowEmpty, Convention::RequireNonempty];

    pub fn requires_nonempty(self) -> bool {
        matches!(self, Convention::RequireNonempty)
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::AllowEmpty => "allow-empty",
            Convention::RequireNonempty => "require-nonempty",
        }
    }
}

/// `S = S' ∪ (s + S'')` with `S'' ⊊ K` nonempty and `S' + K = S'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPeriodicWitness {
    pub subgroup: Subgroup,
    pub element: u64,
    /// `S''`, as residues mod m lying in the subgroup.
    pub trace: Vec<u64>,
    /// `S'`.
    pub periodic_part: ResidueSet,
}

impl QuasiPeriodicWitness {
    /// Checks the defining properties against `s` directly.
    pub fn is_valid_for(&self, s: &ResidueSet, convention: Convention) -> bool {
        let k = &self.subgroup;
        let m = s.modulus;
        if k.modulus != m || k.is_trivial() || k.is_full() || !s.contains(self.element) {
            return false;
        }
        if self.trace.is_empty() || self.trace.len() as u64 >= k.order() || !self.trace.iter().all(|&x| k.contains(x)) {
            return false;
        }
        let removed = ResidueSet::from_reduced(m, self.trace.iter().map(|&x| x + self.element)).unwrap();
        let rest = s.difference(&removed).unwrap();
        if rest != self.periodic_part {
            return false;
        }
        if convention.requires_nonempty() && rest.is_empty() {
            return false;
        }
        rest.is_empty() || rest.translate(k.generator) == rest
    }
}

/// Searches proper nontrivial subgroups `K` by decreasing order; returns `None`
/// for periodic input.
pub fn detect_quasi_periodic(s: &ResidueSet, require_nonempty_periodic_part: bool) -> Result<Option<QuasiPeriodicWitness>> {
    if is_periodic(s)? {
        return Ok(None);
    }
    let m = s.modulus;
    for g in divisors(m) {
        if g == 1 || g == m {
            continue;
        }
        let coset = m / g;
        let mut counts = vec![0u64; g as usize];
        for x in s.iter() {
            counts[(x % g) as usize] += 1;
        }
        let mut partial = counts.iter().enumerate().filter(|(_, &c)| c != 0 && c != coset);
        let Some((class, _)) = partial.next() else { continue };
        if partial.next().is_some() {
            continue;
        }
        let class = class as u64;
        let has_full = counts.contains(&coset);
        if require_nonempty_periodic_part && !has_full {
            continue;
        }
        let element = s.iter().find(|x| x % g == class).unwrap();
        let trace: Vec<u64> = {
            let mut t: Vec<u64> = s.iter().filter(|x| x % g == class).map(|x| (x + m - element) % m).collect();
            t.sort_unstable();
            t
        };
        let periodic_part = ResidueSet::new(m, s.iter().filter(|x| x % g != class)).unwrap();
        return Ok(Some(QuasiPeriodicWitness { subgroup: Subgroup { modulus: m, generator: g }, element, trace, periodic_part }));
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureTag {
    Periodic,
    QuasiPeriodic,
    ArithmeticProgression,
    ApAndQuasiPeriodic,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureClass {
    pub tag: StructureTag,
    pub modulus: u64,
    pub size: u64,
    /// Stabilizer, when nontrivial.
    pub period: Option<Subgroup>,
    pub quasi_periodic: Option<QuasiPeriodicWitness>,
    pub progression: Option<ApWitness>,
    pub convention: Convention,
}

impl StructureClass {
    pub fn is_quasi_periodic(&self) -> bool {
        self.quasi_periodic.is_some()
    }

    pub fn is_progression(&self) -> bool {
        self.progression.is_some()
    }
}

pub fn classify(s: &ResidueSet, convention: Convention) -> Result<StructureClass> {
    let stab = stabilizer(s)?;
    let progression = detect_arithmetic_progression(s)?;
    let quasi_periodic = detect_quasi_periodic(s, convention.requires_nonempty())?;
    let tag = match (!stab.is_trivial(), quasi_periodic.is_some(), progression.is_some()) {
        (true, _, _) => StructureTag::Periodic,
        (false, true, true) => StructureTag::ApAndQuasiPeriodic,
        (false, true, false) => StructureTag::QuasiPeriodic,
        (false, false, true) => StructureTag::ArithmeticProgression,
        (false, false, false) => StructureTag::None,
    };
    Ok(StructureClass { tag, modulus: s.modulus, size: s.len(), period: (!stab.is_trivial()).then_some(stab), quasi_periodic, progression, convention })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempermanReport {
    pub sumset: ResidueSet,
    pub class: StructureClass,
    /// AP presentation of the summand itself, if it has one.
    pub summand_progression: Option<ApWitness>,
}

/// Classifies `S + S` for a critical set (`|S+S| = 2|S| - 1`).
pub fn kemperman_classify(s: &ResidueSet, convention: Convention) -> Result<KempermanReport> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let doubled = s.add(s)?;
    let expected = 2 * s.len() - 1;
    if doubled.len() != expected {
        return Err(Error::NotCriticalPair { sumset_size: doubled.len(), expected });
    }
    Ok(KempermanReport { class: classify(&doubled, convention)?, sumset: doubled, summand_progression: detect_arithmetic_progression(s)? })
}

/// Kneser data for `S_1 + ... + S_k` against its stabilizer `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KneserDeficiency {
    pub stabilizer: Subgroup,
    /// `|S_i + H| / |H|`.
    pub r: Vec<u64>,
    pub summand_sizes: Vec<u64>,
    pub sum_size: u64,
    /// `(sum(r_i - 1) + 1) * |H|`.
    pub bound: u64,
    /// `|sum| < sum |S_i| - (k - 1)`.
    pub deficient: bool,
}

impl KneserDeficiency {
    fn k(&self) -> u64 {
        self.r.len() as u64
    }

    fn total(&self) -> u64 {
        self.summand_sizes.iter().sum()
    }

    /// `|sum| < sum |S_i|`, i.e. a positive shrinking ratio.
    pub fn is_small(&self) -> bool {
        self.sum_size < self.total()
    }

    pub fn satisfies_kneser_bound(&self) -> bool {
        self.sum_size >= self.bound
    }

    /// Whenever the sumset is small, the Kneser bound is attained exactly.
    pub fn satisfies_equality_case(&self) -> bool {
        !self.is_small() || self.sum_size == self.bound
    }

    /// `sum r_i <= (k - 1) / eta'` with `eta' = 1 - |sum| / sum |S_i|`, checked
    /// in integers whenever the sumset is small.
    pub fn satisfies_r_bound(&self) -> bool {
        if !self.is_small() {
            return true;
        }
        let total = self.total() as u128;
        let r_sum: u128 = self.r.iter().map(|&r| r as u128).sum();
        r_sum * (total - self.sum_size as u128) <= (self.k() as u128 - 1) * total
    }
}

pub fn kneser_deficiency(sets: &[ResidueSet]) -> Result<KneserDeficiency> {
    let sum = sumset(sets)?;
    let h = stabilizer(&sum)?;
    let r: Vec<u64> = sets.iter().map(|s| project(s, h.generator).map(|p| p.len())).collect::<Result<_>>()?;
    let summand_sizes: Vec<u64> = sets.iter().map(ResidueSet::len).collect();
    let k = sets.len() as u64;
    let bound = (r.iter().map(|r| r - 1).sum::<u64>() + 1) * h.order();
    let sum_size = sum.len();
    let deficient = sum_size + (k - 1) < summand_sizes.iter().sum::<u64>();
    Ok(KneserDeficiency { stabilizer: h, r, summand_sizes, sum_size, bound, deficient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(m: u64, xs: &[u64]) -> ResidueSet {
        ResidueSet::new(m, xs.iter().copied()).unwrap()
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(sumset(&[rs(5, &[0, 1]), rs(5, &[0, 1])]).unwrap(), rs(5, &[0, 1, 2]));
        assert_eq!(sumset(&[rs(4, &[1, 3]), rs(4, &[1, 3])]).unwrap(), rs(4, &[0, 2]));
        let s = rs(9, &[1, 4, 5]);
        assert_eq!(sumset(&[s.clone(), rs(9, &[0])]).unwrap(), s);
    }

    #[test]
    fn sumset_errors() {
        assert!(matches!(sumset(&[rs(5, &[0]), rs(6, &[0])]), Err(Error::ModulusMismatch { .. })));
        assert_eq!(sumset(&[rs(5, &[0]), rs(5, &[])]), Err(Error::EmptySet));
        assert!(sumset(&[]).is_err());
        assert!(matches!(ResidueSet::new(4, [4]), Err(Error::ResidueOutOfRange { .. })));
        assert!(ResidueSet::empty(MAX_MODULUS + 1).unwrap_err().is_limit());
    }

    #[test]
    fn stabilizer_examples() {
        let h = stabilizer(&rs(4, &[0, 2])).unwrap();
        assert_eq!((h.generator, h.order()), (2, 2));
        let h = stabilizer(&rs(6, &[0, 2, 4])).unwrap();
        assert_eq!((h.generator, h.order()), (2, 3));
        assert!(stabilizer(&rs(6, &[0, 1])).unwrap().is_trivial());
        assert_eq!(stabilizer(&rs(6, &[])), Err(Error::EmptySet));
    }

    #[test]
    fn periodicity_examples() {
        assert!(is_periodic(&rs(6, &[0, 3])).unwrap());
        assert!(!is_periodic(&rs(6, &[0, 1])).unwrap());
        assert!(is_periodic(&ResidueSet::full(7).unwrap()).unwrap());
        assert!(!is_periodic(&rs(1, &[0])).unwrap());
    }

    #[test]
    fn progression_examples() {
        assert_eq!(detect_arithmetic_progression(&rs(7, &[1, 3, 5])).unwrap(), Some(ApWitness { start: 1, difference: 2, length: 3 }));
        assert_eq!(detect_arithmetic_progression(&rs(5, &[2])).unwrap(), Some(ApWitness { start: 2, difference: 1, length: 1 }));
        assert_eq!(detect_arithmetic_progression(&rs(8, &[0, 1, 4])).unwrap(), None);
        // wrap-around progression 5,6,0 with difference 1 starts at 5
        assert_eq!(detect_arithmetic_progression(&rs(7, &[0, 5, 6])).unwrap(), Some(ApWitness { start: 5, difference: 1, length: 3 }));
        // a full coset of <2> in Z/8
        assert_eq!(detect_arithmetic_progression(&rs(8, &[1, 3, 5, 7])).unwrap(), Some(ApWitness { start: 1, difference: 2, length: 4 }));
        // a full coset plus a run in another coset is not an AP
        assert_eq!(detect_arithmetic_progression(&rs(8, &[0, 2, 4, 6, 1])).unwrap(), None);
    }

    #[test]
    fn quasi_periodic_examples() {
        let w = detect_quasi_periodic(&rs(4, &[0, 1, 2]), false).unwrap().unwrap();
        assert_eq!(w.subgroup.generator, 2);
        assert_eq!(w.element, 1);
        assert_eq!(w.trace, vec![0]);
        assert_eq!(w.periodic_part, rs(4, &[0, 2]));
        assert!(w.is_valid_for(&rs(4, &[0, 1, 2]), Convention::AllowEmpty));

        assert_eq!(detect_quasi_periodic(&rs(4, &[0, 1]), true).unwrap(), None);
        assert_eq!(detect_quasi_periodic(&rs(6, &[0, 3]), false).unwrap(), None);
        assert_eq!(detect_quasi_periodic(&rs(4, &[0, 1]), false).unwrap(), None);
        // S' empty is allowed only under the permissive convention
        assert!(detect_quasi_periodic(&rs(4, &[0]), false).unwrap().is_some());
        assert_eq!(detect_quasi_periodic(&rs(4, &[0]), true).unwrap(), None);
    }

    #[test]
    fn kneser_examples() {
        let d = kneser_deficiency(&[rs(6, &[0, 3]), rs(6, &[0, 3])]).unwrap();
        assert_eq!((d.stabilizer.generator, d.r.clone(), d.sum_size, d.bound, d.deficient), (3, vec![1, 1], 2, 2, true));

        let d = kneser_deficiency(&[rs(6, &[0, 1]), rs(6, &[0, 1])]).unwrap();
        assert!(d.stabilizer.is_trivial());
        assert_eq!((d.r.clone(), d.sum_size, d.bound, d.deficient), (vec![2, 2], 3, 3, false));

        let d = kneser_deficiency(&[rs(5, &[0, 1, 2]), rs(5, &[0, 1, 2])]).unwrap();
        assert!(d.stabilizer.is_full());
        assert_eq!((d.sum_size, d.bound, d.deficient), (5, 5, false));
        assert!(d.satisfies_kneser_bound() && d.satisfies_equality_case() && d.satisfies_r_bound());
    }

    #[test]
    fn kemperman_examples() {
        let r = kemperman_classify(&rs(7, &[0, 1]), Convention::AllowEmpty).unwrap();
        assert_eq!(r.sumset, rs(7, &[0, 1, 2]));
        assert_eq!(r.class.tag, StructureTag::ArithmeticProgression);
        assert!(r.summand_progression.is_some());

        let r = kemperman_classify(&rs(4, &[0, 1]), Convention::AllowEmpty).unwrap();
        assert_eq!(r.class.tag, StructureTag::ApAndQuasiPeriodic);
        assert_eq!(r.class.quasi_periodic.as_ref().unwrap().element, 1);

        let r = kemperman_classify(&rs(2, &[0]), Convention::AllowEmpty).unwrap();
        assert_eq!(r.sumset, rs(2, &[0]));
        assert_eq!(r.summand_progression.unwrap().length, 1);

        let e = kemperman_classify(&rs(8, &[0, 1, 3]), Convention::AllowEmpty).unwrap_err();
        assert!(matches!(e, Error::NotCriticalPair { sumset_size: 6, expected: 5 }));
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project(&rs(6, &[1, 4]), 3).unwrap(), rs(3, &[1]));
        assert_eq!(project(&rs(6, &[0, 1]), 6).unwrap(), rs(6, &[0, 1]));
        assert_eq!(project(&rs(8, &[3, 7]), 4).unwrap(), rs(4, &[3]));
        assert!(matches!(project(&rs(8, &[3]), 3), Err(Error::NotDivisor { .. })));
    }

    #[test]
    fn residue_set_json() {
        let s = rs(6, &[1, 4]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, serde_json::json!({"modulus": 6, "members": [1, 4]}));
        assert_eq!(serde_json::from_value::<ResidueSet>(v).unwrap(), s);
        assert!(serde_json::from_str::<ResidueSet>(r#"{"modulus":3,"members":[3]}"#).is_err());
    }

    fn arb_set() -> impl Strategy<Value = (u64, Vec<u64>, Vec<u64>)> {
        (1u64..40).prop_flat_map(|m| (Just(m), proptest::collection::vec(0..m, 1..8), proptest::collection::vec(0..m, 1..8)))
    }

    proptest! {
        #[test]
        fn sumset_commutes_and_projects((m, a, b) in arb_set()) {
            let sa = rs(m, &a);
            let sb = rs(m, &b);
            let ab = sumset(&[sa.clone(), sb.clone()]).unwrap();
            prop_assert_eq!(&ab, &sumset(&[sb.clone(), sa.clone()]).unwrap());
            for d in divisors(m) {
                let lhs = project(&ab, d).unwrap();
                let rhs = sumset(&[project(&sa, d).unwrap(), project(&sb, d).unwrap()]).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn stabilizer_is_maximal((m, a, _b) in arb_set()) {
            let s = rs(m, &a);
            let h = stabilizer(&s).unwrap();
            prop_assert_eq!(s.translate(h.generator), s.clone());
            for d in divisors(m) {
                if s.translate(d) == s {
                    prop_assert_eq!(d % h.generator, 0);
                }
            }
        }

        #[test]
        fn progression_doubles((m, a, _b) in arb_set()) {
            let s = rs(m, &a);
            if let Some(w) = detect_arithmetic_progression(&s).unwrap() {
                let order = m / gcd(w.difference, m);
                if 2 * w.length - 1 <= order {
                    let doubled = s.add(&s).unwrap();
                    let expect = ResidueSet::from_reduced(m, ApWitness { start: 2 * w.start, difference: w.difference, length: 2 * w.length - 1 }.terms(m)).unwrap();
                    prop_assert_eq!(doubled, expect);
                }
            }
        }

        #[test]
        fn quasi_periodic_witnesses_are_valid((m, a, _b) in arb_set(), strict in any::<bool>()) {
            let s = rs(m, &a);
            let conv = if strict { Convention::RequireNonempty } else { Convention::AllowEmpty };
            if let Some(w) = detect_quasi_periodic(&s, strict).unwrap() {
                prop_assert!(w.is_valid_for(&s, conv));
            }
        }
    }
}
