//! Buck upper/lower densities along divisibility chains, and the four window
//! densities, as exact values or intervals with certified sides marked.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{isqrt, primes};
use crate::error::{Error, Result};
use crate::generators::{sampled_residues, SetDescription};
use crate::rational::{self, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// `n!`.
    Factorial,
    /// `(p_1⋯p_n)^n`.
    Primorial,
    /// `2^n`, not exhaustive.
    PowersOfTwo,
    Custom,
}

impl ChainKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "factorial" => Ok(ChainKind::Factorial),
            "primorial" => Ok(ChainKind::Primorial),
            "pow2" | "powers_of_two" => Ok(ChainKind::PowersOfTwo),
            _ => Err(Error::invalid("chain", format!("unknown chain kind {s:?}"))),
        }
    }
}

/// `m_1 | m_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusChain {
    pub kind: ChainKind,
    pub values: Vec<u64>,
    /// Every positive integer divides some `m_n`.
    pub exhaustive: bool,
}

impl ModulusChain {
    pub fn new(kind: ChainKind, depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::invalid("depth", "must be at least 1"));
        }
        let overflow = |what| Error::LimitExceeded { what, value: depth as u128, limit: u64::MAX as u128 };
        let values = match kind {
            ChainKind::Factorial => {
                let mut v = Vec::new();
                let mut f = 1u64;
                for n in 1..=depth as u64 {
                    f = f.checked_mul(n).ok_or_else(|| overflow("factorial chain depth"))?;
                    v.push(f);
                }
                v
            }
            ChainKind::Primorial => {
                let ps = primes(depth as usize);
                let mut v = Vec::new();
                let mut radical = 1u64;
                for (n, p) in ps.iter().enumerate() {
                    radical = radical.checked_mul(*p).ok_or_else(|| overflow("primorial chain depth"))?;
                    v.push(radical.checked_pow(n as u32 + 1).ok_or_else(|| overflow("primorial chain depth"))?);
                }
                v
            }
            ChainKind::PowersOfTwo => {
                if depth > 63 {
                    return Err(overflow("power-of-two chain depth"));
                }
                (1..=depth).map(|n| 1u64 << n).collect()
            }
            ChainKind::Custom => return Err(Error::invalid("chain", "custom chains are built with ModulusChain::custom")),
        };
        Ok(ModulusChain { kind, exhaustive: kind != ChainKind::PowersOfTwo, values })
    }

    /// `base, base², ..., base^depth`.
    pub fn powers(base: u64, depth: u32) -> Result<Self> {
        let values = (1..=depth)
            .map(|n| base.checked_pow(n).ok_or(Error::LimitExceeded { what: "chain value", value: base as u128, limit: u64::MAX as u128 }))
            .collect::<Result<Vec<_>>>()?;
        Self::custom(values)
    }

    /// A caller-supplied divisibility chain; never flagged exhaustive.
    pub fn custom(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || values.contains(&0) {
            return Err(Error::invalid("chain", "needs at least one positive modulus"));
        }
        if let Some(w) = values.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::invalid("chain", format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(ModulusChain { kind: ChainKind::Custom, values, exhaustive: false })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Exact,
    UpperBoundSequence,
    LowerBoundSequence,
    Sampled,
}

impl EstimateKind {
    pub fn name(self) -> &'static str {
        match self {
            EstimateKind::Exact => "exact",
            EstimateKind::UpperBoundSequence => "upper_bound_sequence",
            EstimateKind::LowerBoundSequence => "lower_bound_sequence",
            EstimateKind::Sampled => "sampled",
        }
    }
}

/// One chain point: `|X^(m)|` (or `|X_*^(m)|`) with its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRow {
    pub m: u64,
    pub count: u64,
    #[serde(with = "crate::rational")]
    pub ratio: Rational,
    /// `exact` for oracle counts, `sampled` for counts from members up to the horizon.
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub kind: EstimateKind,
    /// Best single value: the exact density, the tightest bound, or the sample.
    #[serde(with = "crate::rational")]
    pub estimate: Rational,
    #[serde(with = "crate::rational")]
    pub lo: Rational,
    #[serde(with = "crate::rational")]
    pub hi: Rational,
    pub lo_certified: bool,
    pub hi_certified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ModulusChain>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<ChainRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl DensityEstimate {
    pub fn exact(value: Rational) -> Self {
        DensityEstimate {
            kind: EstimateKind::Exact,
            estimate: value.clone(),
            lo: value.clone(),
            hi: value,
            lo_certified: true,
            hi_certified: true,
            chain: None,
            horizon: None,
            points: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn sampled(estimate: Rational, lo: Rational, hi: Rational, horizon: u64) -> Self {
        DensityEstimate {
            kind: EstimateKind::Sampled,
            estimate,
            lo,
            hi,
            lo_certified: false,
            hi_certified: false,
            chain: None,
            horizon: Some(horizon),
            points: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// The value, when exact.
    pub fn exact_value(&self) -> Option<&Rational> {
        (self.kind == EstimateKind::Exact).then_some(&self.estimate)
    }

    pub fn certified_lo(&self) -> Option<&Rational> {
        self.lo_certified.then_some(&self.lo)
    }

    pub fn certified_hi(&self) -> Option<&Rational> {
        self.hi_certified.then_some(&self.hi)
    }
}

fn profile_rows(
    x: &SetDescription,
    chain: &ModulusChain,
    horizon: Option<u64>,
    profile: impl Fn(&SetDescription, u64) -> Option<crate::zmod::ResidueSet> + Sync,
) -> Result<(Vec<ChainRow>, bool)> {
    let rows: Vec<Option<ChainRow>> =
        chain.values.par_iter().map(|&m| profile(x, m).map(|s| ChainRow { m, count: s.len(), ratio: ratio(s.len(), m), kind: "exact".into() })).collect();
    if rows.iter().all(Option::is_some) {
        return Ok((rows.into_iter().flatten().collect(), true));
    }
    let Some(horizon) = horizon else {
        return Ok((Vec::new(), false));
    };
    let sampled = chain
        .values
        .par_iter()
        .map(|&m| {
            let s = sampled_residues(x, m, horizon)?;
            Ok(ChainRow { m, count: s.len(), ratio: ratio(s.len(), m), kind: "sampled".into() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((sampled, false))
}

/// `(m_n, |X^(m_n)|, ratio)` along the chain; exact when the profile oracle
/// covers every point, otherwise from members `<= horizon`.
pub fn density_chain_report(x: &SetDescription, chain: &ModulusChain, horizon: u64) -> Result<Vec<ChainRow>> {
    Ok(profile_rows(x, chain, Some(horizon), SetDescription::attained)?.0)
}

/// `b̄(X) = lim |X^(m_n)| / m_n`.
///
/// Exact for eventually periodic sets. With an exact profile oracle the upper
/// end is the minimum over the chain of `|X_∞^(m)| / m`, which bounds `b̄`
/// because finitely many leftovers have Buck density zero. Without one the
/// ratio at the deepest point, from members `<= horizon`, is reported as an
/// uncertified lower end with `1` above.
pub fn buck_upper(x: &SetDescription, chain: &ModulusChain, horizon: u64) -> Result<DensityEstimate> {
    if let Some(p) = x.to_periodic() {
        return Ok(DensityEstimate::exact(p.natural_density()));
    }
    let (rows, exact) = profile_rows(x, chain, Some(horizon), SetDescription::attained)?;
    if !exact {
        let deepest = rows.last().expect("chain is nonempty").ratio.clone();
        let mut e = DensityEstimate::sampled(deepest.clone(), deepest, rational::one(), horizon);
        e.hi_certified = true;
        e.chain = Some(chain.clone());
        e.points = rows;
        e.warnings.push("no exact profile oracle for this chain; ratios come from members up to the horizon".into());
        return Ok(e);
    }
    let (inf_rows, inf_exact) = profile_rows(x, chain, None, SetDescription::infinitely_attained)?;
    let upper_rows = if inf_exact { &inf_rows } else { &rows };
    let hi = upper_rows.iter().map(|r| r.ratio.clone()).min().expect("chain is nonempty");
    let lo = cofinite_floor(x, chain)?.unwrap_or_else(rational::zero);
    Ok(DensityEstimate {
        kind: EstimateKind::UpperBoundSequence,
        estimate: hi.clone(),
        lo,
        hi,
        lo_certified: true,
        hi_certified: true,
        chain: Some(chain.clone()),
        horizon: None,
        points: rows,
        warnings: Vec::new(),
    })
}

/// `max |X_*^(m)| / m` over the chain, when the oracle covers it.
fn cofinite_floor(x: &SetDescription, chain: &ModulusChain) -> Result<Option<Rational>> {
    let (rows, exact) = profile_rows(x, chain, None, SetDescription::cofinitely_attained)?;
    Ok(exact.then(|| rows.into_iter().map(|r| r.ratio).max().expect("chain is nonempty")))
}

/// `b̲(X) = lim |X_*^(m_n)| / m_n`.
///
/// The lower end is certified from the cofinite profile oracle when it covers
/// the chain (and `0` otherwise); the upper end is that of [`buck_upper`].
pub fn buck_lower(x: &SetDescription, chain: &ModulusChain, horizon: u64) -> Result<DensityEstimate> {
    if let Some(p) = x.to_periodic() {
        return Ok(DensityEstimate::exact(p.natural_density()));
    }
    let upper = buck_upper(x, chain, horizon)?;
    let (rows, exact) = profile_rows(x, chain, None, SetDescription::cofinitely_attained)?;
    let mut e = DensityEstimate {
        kind: EstimateKind::LowerBoundSequence,
        estimate: rational::zero(),
        lo: rational::zero(),
        hi: upper.hi.clone(),
        lo_certified: true,
        hi_certified: upper.hi_certified,
        chain: Some(chain.clone()),
        horizon: None,
        points: Vec::new(),
        warnings: upper.warnings.clone(),
    };
    if exact {
        e.lo = rows.iter().map(|r| r.ratio.clone()).max().expect("chain is nonempty");
        e.estimate = e.lo.clone();
        e.points = rows;
    } else {
        e.kind = EstimateKind::Sampled;
        e.horizon = Some(horizon);
        e.warnings.push("cofiniteness is not decidable from samples; lower end is 0".into());
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDensities {
    pub d_lower: DensityEstimate,
    pub d_upper: DensityEstimate,
    pub banach_lower: DensityEstimate,
    pub banach_upper: DensityEstimate,
    /// Banach window length `⌊√H⌋`.
    pub window: u64,
}

/// Checkpoints in the upper half of `[1, H]` for the asymptotic densities.
const CHECKPOINTS: u64 = 128;

/// `d̲, d̄` from `|X ∩ [1, n]| / n` over checkpoints `n ∈ [H/2, H]`, and the
/// Banach densities from extremal counts over windows of length `⌊√H⌋`
/// sliding across `[0, H]`.
pub fn window_densities(x: &SetDescription, horizon: u64) -> Result<WindowDensities> {
    if horizon == 0 {
        return Err(Error::invalid("horizon", "must be at least 1"));
    }
    let window = isqrt(horizon).max(1);
    if let Some(p) = x.to_periodic() {
        let d = DensityEstimate::exact(p.natural_density());
        return Ok(WindowDensities { d_lower: d.clone(), d_upper: d.clone(), banach_lower: d.clone(), banach_upper: d, window });
    }
    let bits = x.indicator(horizon + 1)?;
    let len = horizon as usize + 1;
    // prefix[n] = |X ∩ [0, n)|
    let mut prefix = vec![0u64; len + 1];
    for n in 0..len {
        prefix[n + 1] = prefix[n] + bits.get(n) as u64;
    }
    let at = |n: u64| ratio(prefix[n as usize + 1] - prefix[1], n);
    let start = (horizon / 2).max(1);
    let step = ((horizon - start) / CHECKPOINTS).max(1);
    let mut checkpoints: Vec<u64> = (start..=horizon).step_by(step as usize).collect();
    if checkpoints.last() != Some(&horizon) {
        checkpoints.push(horizon);
    }
    let tail: Vec<Rational> = checkpoints.iter().map(|&n| at(n)).collect();
    let (tmin, tmax) = (tail.iter().min().unwrap().clone(), tail.iter().max().unwrap().clone());
    let last = at(horizon);
    let d_upper = DensityEstimate::sampled(tmax.clone(), last.clone(), tmax, horizon);
    let d_lower = DensityEstimate::sampled(tmin.clone(), tmin, last, horizon);

    let w = window as usize;
    let (mut wmin, mut wmax) = (u64::MAX, 0u64);
    for k in 0..=(len - w) {
        let c = prefix[k + w] - prefix[k];
        wmin = wmin.min(c);
        wmax = wmax.max(c);
    }
    let (bmin, bmax) = (ratio(wmin, window), ratio(wmax, window));
    let banach_upper = DensityEstimate::sampled(bmax.clone(), bmax.clone(), bmax, horizon);
    let banach_lower = DensityEstimate::sampled(bmin.clone(), bmin.clone(), bmin, horizon);
    Ok(WindowDensities { d_lower, d_upper, banach_lower, banach_upper, window })
}
