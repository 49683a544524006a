//! Eventually periodic subsets of ℕ (finite unions of arithmetic progressions)
//! in canonical `(q, T, prefix, tail)` form.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, lcm_checked, round_up};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::zmod::{self, ResidueSet, MAX_MODULUS};

/// Largest threshold (length of the explicit prefix).
pub const MAX_THRESHOLD: u64 = 1 << 26;

/// `n ∈ A` iff `n < T` and `n ∈ prefix`, or `n ≥ T` and `n mod q ∈ tail`.
///
/// Always canonical: `q` is the least period of the tail and `T` the least
/// multiple of `q` that works.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetRepr", into = "PartsRepr")]
pub struct EventuallyPeriodicSet {
    q: u64,
    threshold: u64,
    prefix: Bits,
    tail: ResidueSet,
}

/// Residues attained, attained infinitely often and attained cofinitely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularProfile {
    pub modulus: u64,
    pub attained: ResidueSet,
    pub infinitely_attained: ResidueSet,
    pub cofinitely_attained: ResidueSet,
}

impl ModularProfile {
    pub fn is_nested(&self) -> bool {
        self.cofinitely_attained.is_subset(&self.infinitely_attained) && self.infinitely_attained.is_subset(&self.attained)
    }
}

fn check_threshold(t: u64) -> Result<()> {
    if t > MAX_THRESHOLD {
        return Err(Error::LimitExceeded { what: "threshold", value: t as u128, limit: MAX_THRESHOLD as u128 });
    }
    Ok(())
}

fn lcm(a: u64, b: u64) -> Result<u64> {
    let l = lcm_checked(a, b).unwrap_or(u64::MAX);
    if l > MAX_MODULUS {
        return Err(Error::LimitExceeded { what: "period", value: l as u128, limit: MAX_MODULUS as u128 });
    }
    Ok(l)
}

/// Membership of `[0, len)` given a prefix below `start` and a tail pattern
/// of period `q` from `start` on (`start` a multiple of `q`).
fn tile(prefix: &Bits, start: u64, tail: &ResidueSet, len: u64) -> Bits {
    let mut out = Bits::new(len as usize);
    out.or_shifted(prefix, 0);
    if len <= start || tail.is_empty() {
        return out;
    }
    let q = tail.modulus();
    // widen the tile so each shift moves at least a few words
    let reps = 1024u64.div_ceil(q).max(1);
    let block = tail.lift(reps).map(|b| b.bits().clone()).unwrap_or_else(|_| tail.bits().clone());
    let step = block.len() as u64;
    let mut pos = start;
    while pos < len {
        out.or_shifted(&block, pos as usize);
        pos += step;
    }
    out
}

impl EventuallyPeriodicSet {
    /// Builds and canonicalizes from raw parts; `prefix.len()` is the threshold.
    fn build(prefix: Bits, tail: ResidueSet) -> Result<Self> {
        let threshold = prefix.len() as u64;
        let (q, tail) = if tail.is_empty() {
            (1, ResidueSet::empty(1)?)
        } else {
            let d = zmod::stabilizer(&tail)?.generator;
            (d, zmod::project(&tail, d)?)
        };
        let mut t = threshold;
        debug_assert_eq!(t % q, 0);
        while t >= q && prefix.slice((t - q) as usize, q as usize) == *tail.bits() {
            t -= q;
        }
        let prefix = if t == threshold { prefix } else { prefix.slice(0, t as usize) };
        Ok(EventuallyPeriodicSet { q, threshold: t, prefix, tail })
    }

    /// Validated constructor from explicit parts.
    pub fn from_parts(q: u64, threshold: u64, prefix: &[u64], tail: &[u64]) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("q", "period must be positive"));
        }
        if !threshold.is_multiple_of(q) {
            return Err(Error::invalid("T", format!("threshold {threshold} is not a multiple of q = {q}")));
        }
        check_threshold(threshold)?;
        let tail = ResidueSet::new(q, tail.iter().copied())?;
        let mut bits = Bits::new(threshold as usize);
        for &x in prefix {
            if x >= threshold {
                return Err(Error::invalid("prefix", format!("{x} is not below T = {threshold}")));
            }
            bits.set(x as usize);
        }
        Self::build(bits, tail)
    }

    pub fn empty() -> Self {
        Self::build(Bits::new(0), ResidueSet::empty(1).unwrap()).unwrap()
    }

    /// ℕ itself.
    pub fn naturals() -> Self {
        Self::build(Bits::new(0), ResidueSet::full(1).unwrap()).unwrap()
    }

    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> Result<Self> {
        let members: Vec<u64> = members.into_iter().collect();
        let t = members.iter().max().map_or(0, |m| m + 1);
        check_threshold(t)?;
        let bits = Bits::from_indices(t as usize, members.iter().map(|&x| x as usize));
        Self::build(bits, ResidueSet::empty(1)?)
    }

    /// `a + qℕ ∪ ...` for a residue set mod `q` (`T = 0`).
    pub fn from_residues(tail: &ResidueSet) -> Self {
        Self::build(Bits::new(0), tail.clone()).expect("residue sets are within caps")
    }

    /// `⋃ (a_i + k_i ℕ)`.
    pub fn from_progressions(terms: &[(u64, u64)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("progressions", "at least one progression is required"));
        }
        let mut q = 1;
        let mut max_a = 0;
        for &(a, k) in terms {
            if k == 0 {
                return Err(Error::invalid("progressions", format!("difference of ({a}, {k}) must be positive")));
            }
            q = lcm(q, k)?;
            max_a = max_a.max(a);
        }
        let t = round_up(max_a, q);
        check_threshold(t)?;
        let mut tail = ResidueSet::empty(q)?;
        let mut prefix = Bits::new(t as usize);
        for &(a, k) in terms {
            for j in 0..q / k {
                tail.insert((a + j * k) % q)?;
            }
            let mut x = a;
            while x < t {
                prefix.set(x as usize);
                x += k;
            }
        }
        Self::build(prefix, tail)
    }

    pub fn period(&self) -> u64 {
        self.q
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn tail(&self) -> &ResidueSet {
        &self.tail
    }

    pub fn prefix_members(&self) -> Vec<u64> {
        self.prefix.ones().map(|i| i as u64).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.prefix.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.threshold {
            self.prefix.get(n as usize)
        } else {
            self.tail.contains(n % self.q)
        }
    }

    /// Membership of `[0, len)`.
    pub fn indicator(&self, len: u64) -> Bits {
        if len <= self.threshold {
            return self.prefix.slice(0, len as usize);
        }
        tile(&self.prefix, self.threshold, &self.tail, len)
    }

    /// Members `<= horizon`, ascending.
    pub fn members_up_to(&self, horizon: u64) -> Vec<u64> {
        self.indicator(horizon.saturating_add(1)).ones().map(|i| i as u64).collect()
    }

    /// `|tail| / q`.
    pub fn natural_density(&self) -> Rational {
        ratio(self.tail.len(), self.q)
    }

    /// Common `(Q, T)` and both sets expanded to it.
    fn aligned(&self, other: &Self) -> Result<(Bits, ResidueSet, Bits, ResidueSet)> {
        let q = lcm(self.q, other.q)?;
        let t = round_up(self.threshold, q).max(round_up(other.threshold, q));
        check_threshold(t)?;
        Ok((self.indicator(t), self.tail.lift(q / self.q)?, other.indicator(t), other.tail.lift(q / other.q)?))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        let (mut pa, ta, pb, tb) = self.aligned(other)?;
        pa.or_assign(&pb);
        Self::build(pa, ta.union(&tb)?)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let (mut pa, ta, pb, tb) = self.aligned(other)?;
        pa.and_assign(&pb);
        Self::build(pa, ta.intersection(&tb)?)
    }

    /// `A \ B`.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        let (mut pa, ta, pb, tb) = self.aligned(other)?;
        pa.and_not_assign(&pb);
        Self::build(pa, ta.difference(&tb)?)
    }

    pub fn complement(&self) -> Self {
        let mut p = self.prefix.clone();
        p.negate();
        Self::build(p, self.tail.complement()).expect("complement stays within caps")
    }

    /// `A + c = {a + c : a ∈ A}`.
    pub fn shift(&self, c: u64) -> Result<Self> {
        let t = round_up(self.threshold.saturating_add(c), self.q);
        check_threshold(t)?;
        let mut p = Bits::new(t as usize);
        p.or_shifted(&self.indicator(t - c), c as usize);
        Self::build(p, self.tail.translate(c))
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// `A + B = {a + b}`.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty());
        }
        let q = lcm(self.q, other.q)?;
        // beyond T_A + T_B + Q membership depends only on n mod Q
        let t = round_up(self.threshold + other.threshold + q, q);
        check_threshold(t)?;
        let ia = self.indicator(t);
        let ib = other.indicator(t);
        let work = (ia.count().min(ib.count()) as u128) * (t as u128 / 64 + 1);
        if work > 1 << 36 {
            return Err(Error::LimitExceeded { what: "sumset work", value: work, limit: 1 << 36 });
        }
        let prefix = ia.linear_sumset(&ib, t as usize);
        let pa = self.modular_profile(q)?;
        let pb = other.modular_profile(q)?;
        let tail = pa.attained.add(&pb.infinitely_attained)?.union(&pa.infinitely_attained.add(&pb.attained)?)?;
        Self::build(prefix, tail)
    }

    /// `X^(m)`, `X_∞^(m)` and `X_*^(m)`.
    pub fn modular_profile(&self, m: u64) -> Result<ModularProfile> {
        if m == 0 {
            return Err(Error::invalid("modulus", "must be positive"));
        }
        let mut infinitely = ResidueSet::empty(m)?;
        let mut cofinitely = ResidueSet::empty(m)?;
        let g = gcd(self.q, m);
        let fiber = self.q / g;
        let mut counts = vec![0u64; g as usize];
        for t in self.tail.iter() {
            counts[(t % g) as usize] += 1;
        }
        // class r mod m meets the tail residue t mod q iff r ≡ t (mod g)
        for r in 0..m {
            let c = counts[(r % g) as usize];
            if c > 0 {
                infinitely.insert(r)?;
            }
            if c == fiber {
                cofinitely.insert(r)?;
            }
        }
        let mut attained = infinitely.clone();
        for x in self.prefix.ones() {
            attained.insert(x as u64 % m)?;
        }
        Ok(ModularProfile { modulus: m, attained, infinitely_attained: infinitely, cofinitely_attained: cofinitely })
    }
}

impl std::fmt::Debug for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EventuallyPeriodicSet")
            .field("q", &self.q)
            .field("T", &self.threshold)
            .field("prefix", &self.prefix)
            .field("tail", &self.tail.members())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct PartsRepr {
    q: u64,
    #[serde(rename = "T")]
    threshold: u64,
    prefix: Vec<u64>,
    tail: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SetRepr {
    Parts(PartsRepr),
    Progressions { progressions: Vec<(u64, u64)> },
}

impl TryFrom<SetRepr> for EventuallyPeriodicSet {
    type Error = Error;

    fn try_from(r: SetRepr) -> Result<Self> {
        match r {
            SetRepr::Parts(p) => Self::from_parts(p.q, p.threshold, &p.prefix, &p.tail),
            SetRepr::Progressions { progressions } => Self::from_progressions(&progressions),
        }
    }
}

/// `path: message` from a failed deserialization, naming a missing field
/// when serde reports one.
pub(crate) fn field_error(e: serde_path_to_error::Error<serde_json::Error>, fallback: &str) -> Error {
    let path = e.path().to_string();
    let msg = e.into_inner().to_string();
    let missing = msg.strip_prefix("missing field `").and_then(|m| m.split('`').next()).map(str::to_string);
    let field = match (path.as_str(), missing) {
        (".", Some(m)) => m,
        (".", None) => fallback.to_string(),
        (p, Some(m)) => format!("{p}.{m}"),
        (p, None) => p.to_string(),
    };
    Error::invalid(field, msg)
}

impl EventuallyPeriodicSet {
    /// `{"q", "T", "prefix", "tail"}` or `{"progressions": [[a, k], ...]}`,
    /// with errors naming the offending field.
    pub fn from_json(v: serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Progressions {
            progressions: Vec<(u64, u64)>,
        }
        if v.get("progressions").is_some() {
            let p: Progressions = serde_path_to_error::deserialize(v).map_err(|e| field_error(e, "progressions"))?;
            return Self::from_progressions(&p.progressions);
        }
        let p: PartsRepr = serde_path_to_error::deserialize(v).map_err(|e| field_error(e, "set"))?;
        Self::from_parts(p.q, p.threshold, &p.prefix, &p.tail)
    }
}

impl From<EventuallyPeriodicSet> for PartsRepr {
    fn from(s: EventuallyPeriodicSet) -> Self {
        PartsRepr { q: s.q, threshold: s.threshold, prefix: s.prefix_members(), tail: s.tail.members() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, one, zero};
    use proptest::prelude::*;

    fn prog(terms: &[(u64, u64)]) -> EventuallyPeriodicSet {
        EventuallyPeriodicSet::from_progressions(terms).unwrap()
    }

    fn rs(m: u64, xs: &[u64]) -> ResidueSet {
        ResidueSet::new(m, xs.iter().copied()).unwrap()
    }

    #[test]
    fn progression_examples() {
        let a = prog(&[(1, 3)]);
        assert_eq!(a.period(), 3);
        assert_eq!(a.threshold(), 0);
        assert_eq!(a.members_up_to(10), vec![1, 4, 7, 10]);
        assert_eq!(a.natural_density(), ratio(1, 3));

        let b = prog(&[(1, 3), (2, 6)]);
        assert_eq!(b.natural_density(), ratio(1, 2));
        assert_eq!(b.tail(), &rs(6, &[1, 2, 4]));
        assert_eq!(b.members_up_to(9), vec![1, 2, 4, 7, 8]);

        assert_eq!(prog(&[(0, 1)]), EventuallyPeriodicSet::naturals());
        assert_eq!(prog(&[(0, 1)]).natural_density(), one());
        assert!(EventuallyPeriodicSet::from_progressions(&[(1, 0)]).is_err());
    }

    #[test]
    fn late_start_keeps_a_prefix() {
        // 5 + 2ℕ = {5, 7, ...}: 1 and 3 are missing
        let a = prog(&[(5, 2)]);
        assert_eq!((a.period(), a.threshold()), (2, 4));
        assert!(!a.contains(3) && a.contains(5) && !a.contains(1));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(EventuallyPeriodicSet::naturals().complement(), EventuallyPeriodicSet::empty());
        let c = prog(&[(1, 2)]).complement();
        assert_eq!(c, prog(&[(0, 2)]));
        assert_eq!(c.natural_density(), ratio(1, 2));
        let b = prog(&[(1, 3), (2, 6)]);
        assert_eq!(b.complement().complement(), b);
        assert!(prog(&[(1, 3)]).complement().contains(6));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(prog(&[(0, 2)]).union(&prog(&[(1, 2)])).unwrap(), EventuallyPeriodicSet::naturals());
        let i = prog(&[(0, 2)]).intersect(&prog(&[(0, 3)])).unwrap();
        assert_eq!(i, prog(&[(0, 6)]));
        assert_eq!(i.natural_density(), ratio(1, 6));
        let s = prog(&[(1, 2)]).shift(1).unwrap();
        assert_eq!(s, prog(&[(2, 2)]));
        assert_eq!(s.natural_density(), ratio(1, 2));
    }

    #[test]
    fn density_examples() {
        assert_eq!(prog(&[(0, 4), (1, 2)]).natural_density(), ratio(3, 4));
        assert_eq!(EventuallyPeriodicSet::empty().natural_density(), zero());
        assert_eq!(EventuallyPeriodicSet::finite([3, 9]).unwrap().natural_density(), zero());
    }

    #[test]
    fn profile_examples() {
        let p = prog(&[(1, 2)]).modular_profile(4).unwrap();
        assert_eq!((p.attained.members(), p.infinitely_attained.members(), p.cofinitely_attained.members()), (vec![1, 3], vec![1, 3], vec![1, 3]));

        let a = prog(&[(1, 2)]).union(&EventuallyPeriodicSet::finite([0]).unwrap()).unwrap();
        let p = a.modular_profile(2).unwrap();
        assert_eq!((p.attained.members(), p.infinitely_attained.members(), p.cofinitely_attained.members()), (vec![0, 1], vec![1], vec![1]));

        let p = EventuallyPeriodicSet::naturals().modular_profile(7).unwrap();
        assert!(p.attained.is_full() && p.infinitely_attained.is_full() && p.cofinitely_attained.is_full());

        // 1 + 3ℕ meets every class mod 2 infinitely often but covers none
        let p = prog(&[(1, 3)]).modular_profile(2).unwrap();
        assert!(p.infinitely_attained.is_full());
        assert!(p.cofinitely_attained.is_empty());
    }

    #[test]
    fn sumset_examples() {
        let odd = prog(&[(1, 2)]);
        assert_eq!(odd.sumset(&odd).unwrap(), prog(&[(2, 2)]));
        let b = prog(&[(2, 4)]);
        assert_eq!(b.sumset(&b).unwrap(), prog(&[(4, 4)]));
        let f = EventuallyPeriodicSet::finite([0, 5]).unwrap();
        assert_eq!(f.sumset(&f).unwrap(), EventuallyPeriodicSet::finite([0, 5, 10]).unwrap());
        assert!(f.sumset(&EventuallyPeriodicSet::empty()).unwrap().is_empty());
        let a = prog(&[(0, 4), (1, 4)]);
        assert_eq!(a.sumset(&a).unwrap().tail(), &rs(4, &[0, 1, 2]));
    }

    #[test]
    fn json_forms() {
        let b = prog(&[(1, 3), (2, 6)]);
        let v = serde_json::to_value(&b).unwrap();
        assert_eq!(v, serde_json::json!({"q": 6, "T": 0, "prefix": [], "tail": [1, 2, 4]}));
        assert_eq!(serde_json::from_value::<EventuallyPeriodicSet>(v).unwrap(), b);
        let p: EventuallyPeriodicSet = serde_json::from_str(r#"{"progressions":[[1,3],[2,6]]}"#).unwrap();
        assert_eq!(p, b);
        assert!(serde_json::from_str::<EventuallyPeriodicSet>(r#"{"q":4,"T":3,"prefix":[],"tail":[]}"#).is_err());
        // non-canonical input is canonicalized
        let p: EventuallyPeriodicSet = serde_json::from_str(r#"{"q":4,"T":8,"prefix":[1,3,5,7],"tail":[1,3]}"#).unwrap();
        assert_eq!(p, prog(&[(1, 2)]));
    }

    #[test]
    fn caps() {
        assert!(EventuallyPeriodicSet::from_progressions(&[(0, 1 << 21)]).unwrap_err().is_limit());
        assert!(EventuallyPeriodicSet::finite([1 << 27]).unwrap_err().is_limit());
    }

    fn arb_set() -> impl Strategy<Value = EventuallyPeriodicSet> {
        (proptest::collection::vec((0u64..30, 1u64..13), 0..4), proptest::collection::vec(0u64..60, 0..6)).prop_map(|(terms, extra)| {
            let fin = EventuallyPeriodicSet::finite(extra).unwrap();
            if terms.is_empty() {
                fin
            } else {
                EventuallyPeriodicSet::from_progressions(&terms).unwrap().union(&fin).unwrap()
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn pointwise_ops(a in arb_set(), b in arb_set(), c in 0u64..40) {
            let u = a.union(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            let d = a.complement();
            let s = a.shift(c).unwrap();
            for n in 0..10_000u64 {
                prop_assert_eq!(u.contains(n), a.contains(n) || b.contains(n));
                prop_assert_eq!(i.contains(n), a.contains(n) && b.contains(n));
                prop_assert_eq!(d.contains(n), !a.contains(n));
                prop_assert_eq!(s.contains(n), n >= c && a.contains(n - c));
            }
        }

        #[test]
        fn canonical_is_unique(a in arb_set(), b in arb_set()) {
            let u1 = a.union(&b).unwrap();
            let u2 = b.union(&a).unwrap();
            prop_assert_eq!(&u1, &u2);
            prop_assert_eq!(u1.complement().complement(), u1.clone());
            prop_assert_eq!(u1.threshold() % u1.period(), 0);
        }

        #[test]
        fn sumset_matches_pairs(a in arb_set(), b in arb_set()) {
            let s = a.sumset(&b).unwrap();
            let h = 600u64;
            let ma = a.members_up_to(h);
            let mb = b.members_up_to(h);
            let mut want = vec![false; (h + 1) as usize];
            for &x in &ma {
                for &y in &mb {
                    if x + y <= h {
                        want[(x + y) as usize] = true;
                    }
                }
            }
            for n in 0..=h {
                prop_assert_eq!(s.contains(n), want[n as usize], "n = {}", n);
            }
        }

        #[test]
        fn density_laws(a in arb_set(), b in arb_set()) {
            let da = a.natural_density();
            let db = b.natural_density();
            let u = a.union(&b).unwrap();
            prop_assert!(u.natural_density() <= &da + &db);
            if a.intersect(&b).unwrap().is_finite() {
                prop_assert_eq!(u.natural_density(), &da + &db);
            }
            prop_assert_eq!(a.complement().natural_density(), one() - &da);
            // X ⊆ A periodic: d(A) = d(X) + d(A \ X)
            let x = a.intersect(&b).unwrap();
            prop_assert_eq!(a.natural_density(), x.natural_density() + a.difference(&x).unwrap().natural_density());
            prop_assert!(da >= zero() && da <= int(1));
        }

        #[test]
        fn profile_projects(a in arb_set(), m in 1u64..40) {
            let p = a.modular_profile(m).unwrap();
            prop_assert!(p.is_nested());
            for d in crate::arith::divisors(m) {
                let pd = a.modular_profile(d).unwrap();
                prop_assert_eq!(zmod::project(&p.attained, d).unwrap(), pd.attained);
            }
            // brute force: attained residues among members far past the threshold
            let h = a.threshold() + 4 * m * a.period();
            let seen = ResidueSet::from_reduced(m, a.members_up_to(h)).unwrap();
            prop_assert_eq!(seen, p.attained);
        }
    }
}
