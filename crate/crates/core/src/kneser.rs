//! Structure of sumsets with small upper Buck density: minimal modulus,
//! residue profiles, density identity, and the companion checks (sparse
//! periodicity, maximal density in a periodic hull, Ruzsa-type inequalities).

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::density::{buck_lower, buck_upper, ChainKind, DensityEstimate, EstimateKind, ModulusChain};
use crate::error::{Error, Result};
use crate::generators::{sampled_residues, KRule, KSequence, SetDescription};
use crate::periodic::EventuallyPeriodicSet;
use crate::rational::{self, ratio, Rational};
use crate::zmod::{self, Convention, ResidueSet, StructureClass, MAX_MODULUS};

/// Cap on the default search range for `q`.
pub const MAX_Q: u64 = 1 << 12;

/// Chain used when the caller gives none: powers of two when every summand
/// has an exact profile there, factorials otherwise.
pub fn default_chain(xs: &[SetDescription]) -> ModulusChain {
    let pow2 = ModulusChain::new(ChainKind::PowersOfTwo, 16).expect("fixed depth");
    if xs.iter().all(|x| pow2.values.iter().all(|&m| x.attained(m).is_some())) {
        pow2
    } else {
        ModulusChain::new(ChainKind::Factorial, 8).expect("fixed depth")
    }
}

/// `Ā^(q)` from the exact oracle when there is one, else from members `<= horizon`.
fn residues(x: &SetDescription, q: u64, horizon: u64) -> Result<(ResidueSet, bool)> {
    match x.attained(q) {
        Some(s) => Ok((s, true)),
        None => Ok((sampled_residues(x, q, horizon)?, false)),
    }
}

/// [`residues`] with the members already enumerated.
fn residues_from(x: &SetDescription, q: u64, members: &[u64]) -> Result<(ResidueSet, bool)> {
    match x.attained(q) {
        Some(s) => Ok((s, true)),
        None => Ok((ResidueSet::from_reduced(q, members.iter().map(|&n| n % q))?, false)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseRow {
    pub m: u64,
    pub pass: bool,
    /// Residues mod `mq` in `S^(q) + q{0..m-1}` not reached.
    pub missing: Vec<u64>,
    /// Backed by an infinitely-attained oracle rather than samples.
    pub certified: bool,
}

/// `S^(q) + q{0, ..., m-1} ⊆ S_∞^(mq)` for `m = 1..=m_max`.
///
/// With an exact oracle each target class is checked to be hit infinitely
/// often; otherwise members `<= horizon` only witness a hit.
pub fn verify_sparse_periodicity(s: &SetDescription, q: u64, m_max: u64, horizon: u64) -> Result<Vec<SparseRow>> {
    if q == 0 || m_max == 0 {
        return Err(Error::invalid("q", "q and m_max must be positive"));
    }
    let base = residues(s, q, horizon)?.0;
    (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let big = m.checked_mul(q).filter(|&b| b <= MAX_MODULUS).ok_or(Error::LimitExceeded {
                what: "m * q",
                value: m as u128 * q as u128,
                limit: MAX_MODULUS as u128,
            })?;
            let (reached, certified) = match s.infinitely_attained(big) {
                Some(r) => (r, true),
                None => (sampled_residues(s, big, horizon)?, false),
            };
            let missing: Vec<u64> = base.iter().flat_map(|a| (0..m).map(move |h| a + h * q)).filter(|&r| !reached.contains(r)).collect();
            Ok(SparseRow { m, pass: missing.is_empty(), missing, certified })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDensityRow {
    pub m: u64,
    /// Tail residue `a_j` of `A`.
    pub a: u64,
    pub k: u64,
    /// Least member `x ≡ a + kq (mod mq)` with `x ≥ a + kq`.
    pub witness: Option<u64>,
}

/// For every `m ≤ m_max`, tail residue `a_j` of `A` and `k < m`, a member of
/// `X` in `a_j + kq + mqℕ` among members `<= horizon`. A full pass is the
/// finite trace of `b̄(X) = d(A)`.
pub fn verify_max_density_condition(x: &SetDescription, a: &EventuallyPeriodicSet, m_max: u64, horizon: u64) -> Result<Vec<MaxDensityRow>> {
    let members = x.members_up_to(horizon)?;
    if let Some(&bad) = members.iter().find(|&&n| !a.contains(n)) {
        return Err(Error::NotContained { element: bad });
    }
    let q = a.period();
    let tail = a.tail().members();
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let big = m * q;
        // least member at or above each threshold in each class mod mq
        let mut by_class: Vec<Vec<u64>> = vec![Vec::new(); big as usize];
        for &n in &members {
            by_class[(n % big) as usize].push(n);
        }
        for &aj in &tail {
            for k in 0..m {
                let start = aj + k * q;
                let witness = by_class[(start % big) as usize].iter().copied().find(|&n| n >= start);
                rows.push(MaxDensityRow { m, a: aj, k, witness });
            }
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuzsaCheck {
    /// `|R| |S+S|`.
    pub lhs: u64,
    /// `|R+S|²`.
    pub rhs: u64,
    pub holds: bool,
}

/// `|R| |S+S| ≤ |R+S|²` for `R ⊆ S`.
pub fn ruzsa_inequality_check(r: &ResidueSet, s: &ResidueSet) -> Result<RuzsaCheck> {
    if r.modulus() != s.modulus() {
        return Err(Error::ModulusMismatch { left: r.modulus(), right: s.modulus() });
    }
    if r.is_empty() {
        return Err(Error::EmptySet);
    }
    if !r.is_subset(s) {
        return Err(Error::invalid("R", "R must be a subset of S"));
    }
    let lhs = r.len() * s.add(s)?.len();
    let rhs = r.add(s)?.len().pow(2);
    Ok(RuzsaCheck { lhs, rhs, holds: lhs <= rhs })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuckInequalityReport {
    pub bdo_aa: DensityEstimate,
    pub bdo_a: DensityEstimate,
    pub bup_aa: DensityEstimate,
    /// `b̲(A+A)² - b̲(A) b̄(A+A)`, when all three are exact.
    #[serde(with = "crate::rational::opt")]
    pub margin_squared: Option<Rational>,
    /// `b̲(A+A) - sqrt(b̲(A) b̄(A+A))` from the estimates.
    pub margin: f64,
    /// False only when certified sides contradict `b̲(A+A) ≥ sqrt(b̲(A) b̄(A+A))`.
    pub consistent: bool,
}

/// `b̲(A+A) ≥ sqrt(b̲(A) b̄(A+A))`.
pub fn buck_inequality_report(a: &SetDescription, chain: &ModulusChain, horizon: u64) -> Result<BuckInequalityReport> {
    let aa = a.doubled();
    let bdo_aa = buck_lower(&aa, chain, horizon)?;
    let bdo_a = buck_lower(a, chain, horizon)?;
    let bup_aa = buck_upper(&aa, chain, horizon)?;
    let margin_squared = match (bdo_aa.exact_value(), bdo_a.exact_value(), bup_aa.exact_value()) {
        (Some(x), Some(y), Some(z)) => Some(x * x - y * z),
        _ => None,
    };
    let f = rational::to_f64;
    let margin = f(&bdo_aa.estimate) - (f(&bdo_a.estimate) * f(&bup_aa.estimate)).sqrt();
    let refuted = match (bdo_aa.certified_hi(), bdo_a.certified_lo(), bup_aa.certified_lo()) {
        (Some(x), Some(y), Some(z)) => x * x < y * z,
        _ => false,
    };
    Ok(BuckInequalityReport { bdo_aa, bdo_a, bup_aa, margin_squared, margin, consistent: !refuted })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KneserReport {
    pub k: usize,
    pub q_max: u64,
    pub q: Option<u64>,
    /// A qualifying `q` was found, and it is the least one.
    pub minimal: bool,
    /// `Ā_i^(q)`.
    pub profiles: Vec<ResidueSet>,
    /// Profiles came from exact oracles.
    pub profiles_exact: bool,
    pub r: Vec<u64>,
    pub sumset: Option<ResidueSet>,
    pub sumset_size: Option<u64>,
    pub classification: Option<StructureClass>,
    /// At least two `r_i ≥ 2` forces a quasi-periodic or progression sumset.
    pub structure_claim_holds: Option<bool>,
    pub summand_densities: Vec<DensityEstimate>,
    pub sumset_density: DensityEstimate,
    #[serde(with = "crate::rational")]
    pub sigma: Rational,
    #[serde(with = "crate::rational")]
    pub eta: Rational,
    /// `η` and `σ` come from exact densities.
    pub eta_certified: bool,
    /// `(2k - 2) / (ησ)`, when `η > 0`.
    #[serde(with = "crate::rational::opt")]
    pub q_bound: Option<Rational>,
    pub q_bound_holds: Option<bool>,
    /// `(1/k) Σ (r_i/q - b̄(X_i))`.
    #[serde(with = "crate::rational::opt")]
    pub average_excess: Option<Rational>,
    /// `0 ≤ average_excess < (k-1)/(kq)`, asserted only for exact densities.
    pub average_excess_holds: Option<bool>,
    /// `b̄(X_1 + ... + X_k) = (Σ(r_i - 1) + 1) / q`.
    pub density_identity_holds: bool,
    pub sparse_periodicity: Vec<SparseRow>,
}

impl KneserReport {
    pub fn r_density(&self) -> Option<Rational> {
        let q = self.q?;
        let k = self.r.len() as u64;
        Some(ratio(self.r.iter().sum::<u64>() - k + 1, q))
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Defaults to `⌈(2k-2)/(η̂σ̂)⌉`, capped at [`MAX_Q`].
    pub q_max: Option<u64>,
    pub horizon: u64,
    pub chain: Option<ModulusChain>,
    pub m_max: u64,
    pub convention: Convention,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { q_max: None, horizon: 1 << 16, chain: None, m_max: 8, convention: Convention::AllowEmpty }
    }
}

fn is_exactish(e: &DensityEstimate) -> bool {
    matches!(e.kind, EstimateKind::Exact)
}

/// The least `q ≤ q_max` such that the projected sumset
/// `S = Ā_1^(q) + ... + Ā_k^(q)` is not periodic in `ℤ/qℤ`,
/// `|S| = Σ(r_i - 1) + 1`, and `|S|/q` equals the estimate of
/// `b̄(X_1 + ... + X_k)`; then the structural fields for that `q`.
pub fn analyze_sumset(xs: &[SetDescription], opts: &AnalyzeOptions) -> Result<KneserReport> {
    let k = xs.len();
    if k < 2 {
        return Err(Error::invalid("sets", "at least two summands are required"));
    }
    let chain = opts.chain.clone().unwrap_or_else(|| default_chain(xs));
    let horizon = opts.horizon;
    let sum = SetDescription::sumset(xs.to_vec())?;
    let summand_densities = xs.iter().map(|x| buck_upper(x, &chain, horizon)).collect::<Result<Vec<_>>>()?;
    let sumset_density = buck_upper(&sum, &chain, horizon)?;
    let sigma: Rational = summand_densities.iter().map(|e| e.estimate.clone()).sum();
    let eta = if sigma.is_zero() { rational::zero() } else { rational::one() - &sumset_density.estimate / &sigma };
    let eta_certified = is_exactish(&sumset_density) && summand_densities.iter().all(is_exactish);
    let q_bound = (eta > rational::zero()).then(|| Rational::from_integer(BigInt::from(2 * k as u64 - 2)) / (&eta * &sigma));
    let q_max = match opts.q_max {
        Some(q) if q >= 1 => q,
        Some(_) => return Err(Error::invalid("q_max", "must be at least 1")),
        None => q_bound.as_ref().and_then(|b| b.ceil().to_integer().to_u64()).unwrap_or(MAX_Q).clamp(1, MAX_Q),
    };
    let target = sumset_density.estimate.clone();
    let members = xs.iter().map(|x| x.members_up_to(horizon)).collect::<Result<Vec<_>>>()?;

    let probe = |q: u64| -> Result<Option<(Vec<ResidueSet>, bool, ResidueSet)>> {
        let mut profiles = Vec::with_capacity(k);
        let mut exact = true;
        for (x, ms) in xs.iter().zip(&members) {
            let (p, e) = residues_from(x, q, ms)?;
            exact &= e;
            profiles.push(p);
        }
        let s = zmod::sumset(&profiles)?;
        let expected: u64 = profiles.iter().map(|p| p.len() - 1).sum::<u64>() + 1;
        let ok = !zmod::is_periodic(&s)? && s.len() == expected && ratio(s.len(), q) == target;
        Ok(ok.then_some((profiles, exact, s)))
    };
    let found = (1..=q_max).into_par_iter().map(|q| probe(q).map(|r| r.map(|v| (q, v)))).find_first(|r| !matches!(r, Ok(None))).transpose()?.flatten();

    let mut report = KneserReport {
        k,
        q_max,
        q: None,
        minimal: false,
        profiles: Vec::new(),
        profiles_exact: false,
        r: Vec::new(),
        sumset: None,
        sumset_size: None,
        classification: None,
        structure_claim_holds: None,
        summand_densities,
        sumset_density,
        sigma,
        eta,
        eta_certified,
        q_bound,
        q_bound_holds: None,
        average_excess: None,
        average_excess_holds: None,
        density_identity_holds: false,
        sparse_periodicity: Vec::new(),
    };
    let Some((q, (profiles, exact, s))) = found else {
        return Ok(report);
    };
    let r: Vec<u64> = profiles.iter().map(ResidueSet::len).collect();
    let class = zmod::classify(&s, opts.convention)?;
    let two_big = r.iter().filter(|&&ri| ri >= 2).count() >= 2;
    report.structure_claim_holds = two_big.then(|| class.is_quasi_periodic() || class.is_progression());
    report.q = Some(q);
    report.minimal = true;
    report.profiles_exact = exact;
    report.sumset_size = Some(s.len());
    report.sumset = Some(s);
    report.classification = Some(class);
    report.density_identity_holds =
        is_exactish(&report.sumset_density) && report.sumset_density.estimate == ratio(r.iter().map(|ri| ri - 1).sum::<u64>() + 1, q);
    if report.eta_certified {
        report.q_bound_holds = report.q_bound.as_ref().map(|b| Rational::from_integer(BigInt::from(q)) <= *b);
        let excess: Rational = r.iter().zip(&report.summand_densities).map(|(&ri, d)| ratio(ri, q) - &d.estimate).sum::<Rational>()
            / Rational::from_integer(BigInt::from(k as u64));
        let limit = ratio(k as u64 - 1, k as u64 * q);
        report.average_excess_holds = Some(excess >= rational::zero() && excess < limit);
        report.average_excess = Some(excess);
    }
    report.r = r;
    report.profiles = profiles;
    report.sparse_periodicity = verify_sparse_periodicity(&sum, q, opts.m_max, horizon)?;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositiveDensityGapReport {
    pub bits: String,
    #[serde(with = "crate::rational")]
    pub alpha: Rational,
    pub k_prefix: Vec<u64>,
    /// Bit that every element of `(B+B) ∪ (B+D)` leaves clear.
    pub cleared_bit: u64,
    pub horizon: u64,
    /// First element of `(B+B) ∪ (B+D)` with that bit set, if any.
    pub violation: Option<u64>,
    /// Certified `b̲(A+A) ≤ 1/2` from the periodic superset (given the inclusion).
    #[serde(with = "crate::rational")]
    pub bdo_upper: Rational,
    /// Certified lower bound on `δ_K ≤ b̄(A+A)`.
    #[serde(with = "crate::rational")]
    pub bup_lower: Rational,
    pub terms_used: usize,
    pub holds: bool,
}

/// `A = B_α ∪ D_K` with `α = 3/16` and `K = (1, 3, 7, 15, ...)`:
/// `(B+B) ∪ (B+D)` avoids bit 1 up to the horizon, so `b̲(A+A) ≤ 1/2`,
/// while `b̄(A+A) ≥ δ_K > 1/2`.
pub fn positive_density_gap(horizon: u64, terms: usize) -> Result<PositiveDensityGapReport> {
    let bits = "0011";
    let b = SetDescription::b_alpha(bits)?;
    let k = KSequence::new(vec![1], KRule::DoubleGap)?;
    let d = SetDescription::d_k(k.clone());
    let len = horizon + 1;
    let mut union: Bits = b.doubled().indicator(len)?;
    union.or_assign(&SetDescription::sumset(vec![b.clone(), d.clone()])?.indicator(len)?);
    let cleared_bit = 1u64;
    let violation = union.ones().map(|n| n as u64).find(|n| n >> cleared_bit & 1 == 1);
    let superset = EventuallyPeriodicSet::from_progressions(&[(0, 4), (1, 4)])?;
    let bdo_upper = superset.natural_density();
    let crate::generators::Family::DK(dk) = d.family() else { unreachable!() };
    let bup_lower = dk.delta_lower_bound(terms)?;
    let holds = violation.is_none() && bdo_upper <= ratio(1, 2) && bup_lower > ratio(1, 2);
    Ok(PositiveDensityGapReport {
        bits: bits.into(),
        alpha: ratio(3, 16),
        k_prefix: k.first_terms(terms + 1),
        cleared_bit,
        horizon,
        violation,
        bdo_upper,
        bup_lower,
        terms_used: terms,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowRow {
    pub q: u64,
    /// Residues mod `q` met by `A + A` up to the horizon.
    pub classes: u64,
    /// Longest run `[c, d]` on which `A + A` contains all of `S + qℕ`.
    pub longest_window: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylFalsification {
    pub theta: String,
    #[serde(with = "crate::rational")]
    pub alpha: Rational,
    pub horizon: u64,
    pub window_limit: u64,
    pub rows: Vec<WindowRow>,
    /// No `q ≤ q_max` admits a window of length `window_limit` or more.
    pub falsified: bool,
}

/// Bounded search for `(S + qℕ) ∩ [c, d] ⊆ A + A ⊆ S + qℕ` with long
/// `[c, d]`, for `A = {n : {θn} < α}` and every `q ≤ q_max`. `S` is the
/// least admissible choice, the residues met by `A + A`.
pub fn weyl_falsification(theta: &str, alpha: Rational, q_max: u64, horizon: u64, window_limit: u64) -> Result<WeylFalsification> {
    let a = SetDescription::weyl(theta, alpha.clone())?;
    let aa = a.doubled().indicator(horizon + 1)?;
    let rows: Vec<WindowRow> = (1..=q_max)
        .into_par_iter()
        .map(|q| {
            let mut s = vec![false; q as usize];
            for n in aa.ones() {
                s[n % q as usize] = true;
            }
            let (mut best, mut run) = (0u64, 0u64);
            for n in 0..=horizon as usize {
                if s[n % q as usize] && !aa.get(n) {
                    run = 0;
                } else {
                    run += 1;
                    best = best.max(run);
                }
            }
            WindowRow { q, classes: s.iter().filter(|&&b| b).count() as u64, longest_window: best }
        })
        .collect();
    let falsified = rows.iter().all(|r| r.longest_window < window_limit);
    Ok(WeylFalsification { theta: theta.into(), alpha, horizon, window_limit, rows, falsified })
}
