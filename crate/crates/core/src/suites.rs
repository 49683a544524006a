//! Verification suites, one per acceptance criterion. Each returns a table of
//! named checks; a suite passes when every check does.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::density::{buck_lower, buck_upper, window_densities, ChainKind, ModulusChain};
use crate::error::{Error, Result};
use crate::generators::{refined_bound, sampled_residues, thin_basis, BasisChain, DigitAvoiding, KRule, KSequence, SetDescription};
use crate::kneser::{
    analyze_sumset, buck_inequality_report, positive_density_gap, ruzsa_inequality_check, verify_sparse_periodicity, weyl_falsification, AnalyzeOptions,
};
use crate::oracle::{kemperman_sweep, kneser_sweep, quasi_periodic_agreement};
use crate::periodic::EventuallyPeriodicSet;
use crate::rational::{self, ratio, Rational};
use crate::zmod::{Convention, ResidueSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    KneserExhaustive,
    KempermanAp,
    BAlpha,
    DkXi,
    #[serde(rename = "prop67")]
    DensityGap,
    ThinBasis,
    BasisChain,
    X0,
    Ruzsa,
    Weyl,
    SparsePeriodicity,
}

impl Suite {
    /// In acceptance-criterion order.
    pub const ALL: [Suite; 11] = [
        Suite::KneserExhaustive,
        Suite::KempermanAp,
        Suite::BAlpha,
        Suite::DkXi,
        Suite::DensityGap,
        Suite::ThinBasis,
        Suite::BasisChain,
        Suite::X0,
        Suite::Ruzsa,
        Suite::Weyl,
        Suite::SparsePeriodicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::KneserExhaustive => "kneser-exhaustive",
            Suite::KempermanAp => "kemperman-ap",
            Suite::BAlpha => "b-alpha",
            Suite::DkXi => "dk-xi",
            Suite::DensityGap => "prop67",
            Suite::ThinBasis => "thin-basis",
            Suite::BasisChain => "basis-chain",
            Suite::X0 => "x0",
            Suite::Ruzsa => "ruzsa",
            Suite::Weyl => "weyl",
            Suite::SparsePeriodicity => "sparse-periodicity",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::invalid("suite", format!("unknown suite {s:?}")))
    }

    /// 1-based acceptance criterion number.
    pub fn criterion(self) -> usize {
        Suite::ALL.iter().position(|&x| x == self).unwrap() + 1
    }

    pub fn title(self) -> &'static str {
        match self {
            Suite::KneserExhaustive => "Kneser bound over all pairs in Z/mZ, m <= 10",
            Suite::KempermanAp => "critical doublings are quasi-periodic or come from progressions, m <= 12",
            Suite::BAlpha => "dyadic unions B_alpha: density alpha and doubling",
            Suite::DkXi => "digit-avoiding sets: closed form for the missed sums",
            Suite::DensityGap => "B_alpha u D_K: lower Buck density of A+A at most 1/2, upper above 1/2",
            Suite::ThinBasis => "thin bases of Z/mZ, m <= 10^4",
            Suite::BasisChain => "basis chains: full doubling and size bound, product <= 10^4",
            Suite::X0 => "base-4 digits in {0,1}: profile sizes 2^m and 3^m",
            Suite::Ruzsa => "Ruzsa inequality on random pairs and Buck inequality on periodic sets",
            Suite::Weyl => "Weyl sets at horizon 10^6 against periodic structure for q <= 64",
            Suite::SparsePeriodicity => "sumset analysis end to end and sparse periodicity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub criterion: usize,
    pub title: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0x5eed_b0c4 }
    }
}

pub fn run(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut notes = Vec::new();
    let checks = match suite {
        Suite::KneserExhaustive => kneser_exhaustive(&start)?,
        Suite::KempermanAp => kemperman_ap(&mut notes)?,
        Suite::BAlpha => b_alpha()?,
        Suite::DkXi => dk_xi()?,
        Suite::DensityGap => density_gap()?,
        Suite::ThinBasis => thin_bases(&mut notes)?,
        Suite::BasisChain => basis_chains(&mut notes)?,
        Suite::X0 => x0()?,
        Suite::Ruzsa => ruzsa(config.seed)?,
        Suite::Weyl => weyl()?,
        Suite::SparsePeriodicity => sparse_periodicity()?,
    };
    Ok(SuiteReport {
        suite,
        criterion: suite.criterion(),
        title: suite.title().into(),
        pass: !checks.is_empty() && checks.iter().all(|c| c.pass),
        checks,
        notes,
        elapsed: start.elapsed(),
    })
}

fn kneser_exhaustive(start: &Instant) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in 1..=10 {
        let s = kneser_sweep(m)?;
        out.push(check(
            format!("m={m}"),
            s.violation.is_none() && s.equality_failure.is_none(),
            format!("{} pairs, {} deficient, violation {:?}, equality failure {:?}", s.pairs, s.deficient, s.violation, s.equality_failure),
        ));
    }
    out.push(check("runtime", start.elapsed() < Duration::from_secs(300), "under 5 minutes"));
    Ok(out)
}

fn kemperman_ap(notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut valid = Vec::new();
    for c in Convention::ALL {
        let mut first = None;
        let mut critical = 0;
        for m in 1..=12 {
            let s = kemperman_sweep(m, c)?;
            critical += s.critical;
            if first.is_none() {
                first = s.counterexample.map(|x| (m, crate::oracle::to_residue_set(x, m).members()));
            }
        }
        if first.is_none() {
            valid.push(c.name());
        }
        notes.push(format!("convention {}: {critical} critical sets, first counterexample {first:?}", c.name()));
    }
    out.push(check("no counterexample under some convention", !valid.is_empty(), format!("valid conventions: {valid:?}")));
    for c in Convention::ALL {
        let mut disagreements = 0;
        let mut sets = 0;
        for m in 1..=10 {
            let a = quasi_periodic_agreement(m, c)?;
            disagreements += a.disagreements.len();
            sets += a.sets;
        }
        out.push(check(format!("detector agreement ({})", c.name()), disagreements == 0, format!("{sets} sets, {disagreements} disagreements")));
    }
    Ok(out)
}

/// Every bit string of length `<= max_len` ending in 1.
fn dyadic_bit_strings(max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for x in 0..1u32 << (len - 1) {
            let head: String = (0..len - 1).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect();
            out.push(head + "1");
        }
    }
    out
}

/// `⌊log2(1/α)⌋`.
fn floor_log2_inverse(alpha: &Rational) -> u32 {
    let inv = rational::one() / alpha;
    let mut e = 0;
    while Rational::from_integer(BigInt::one() << (e + 1) as usize) <= inv {
        e += 1;
    }
    e
}

fn b_alpha() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let chain = ModulusChain::new(ChainKind::PowersOfTwo, 10)?;
    let strings = dyadic_bit_strings(8);
    let mut bad = Vec::new();
    for bits in &strings {
        let alpha = bits.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| rational::inv_pow2(i as u32 + 1)).sum::<Rational>();
        let b = SetDescription::b_alpha(bits)?;
        let up = buck_upper(&b, &chain, 0)?;
        let lo = buck_lower(&b, &chain, 0)?;
        if up.exact_value() != Some(&alpha) || lo.exact_value() != Some(&alpha) {
            bad.push(bits.clone());
        }
    }
    out.push(check("Buck density equals alpha", bad.is_empty(), format!("{} strings of <= 8 bits, failures {bad:?}", strings.len())));

    let horizon = 1u64 << 16;
    for r in 1..=6u32 {
        let bits = format!("{}1", "0".repeat(r as usize - 1));
        let b = SetDescription::b_alpha(&bits)?;
        let bb = b.doubled();
        let target = EventuallyPeriodicSet::from_progressions(&[(0, 1 << r)])?;
        let got = bb.indicator(horizon + 1)?;
        let diff: Vec<u64> = (0..=horizon).filter(|&n| got.get(n as usize) != target.contains(n)).collect();
        let p = bb.to_periodic().expect("dyadic unions are periodic");
        let exact_diff = p.difference(&target)?.union(&target.difference(p)?)?;
        out.push(check(
            format!("B+B = 2^{r}N up to a finite set"),
            exact_diff.is_finite() && diff.len() <= 1 && diff.iter().all(|&n| n < 1 << (r + 1)),
            format!("differs on {diff:?} up to 2^16"),
        ));
    }

    let mut bad = Vec::new();
    let mut count = 0;
    for bits in dyadic_bit_strings(6) {
        let b = SetDescription::b_alpha(&bits)?;
        let crate::generators::Family::BAlpha(d) = b.family() else { unreachable!() };
        if d.is_power_of_two() {
            continue;
        }
        count += 1;
        let want = rational::inv_pow2(floor_log2_inverse(&d.alpha()));
        let got = buck_upper(&b.doubled(), &chain, 0)?;
        if got.exact_value() != Some(&want) {
            bad.push(bits);
        }
    }
    out.push(check("b(B+B) = 2^-floor(log2(1/alpha))", bad.is_empty(), format!("{count} non-power-of-two alphas, failures {bad:?}")));
    Ok(out)
}

/// `|[0, len) \ (D + D)|` from the indicator.
fn missed_sums(d: &DigitAvoiding, len: u64) -> u64 {
    let ind: Bits = d.indicator(len);
    let sums = ind.linear_sumset(&ind, len as usize);
    len - sums.count() as u64
}

fn dk_prefixes() -> Vec<KSequence> {
    let mut ks: Vec<KSequence> = (1u32..1 << 12).map(|mask| KSequence::new((0..12).filter(|&i| mask >> i & 1 == 1).collect(), KRule::None).unwrap()).collect();
    for k0 in 0..8 {
        ks.push(KSequence::new(vec![k0], KRule::DoubleGap).unwrap());
    }
    for k0 in 0..4 {
        for g in 1..5 {
            ks.push(KSequence::new(vec![k0], KRule::ConstantGap(g)).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1_61_75);
    for _ in 0..48 {
        let mut v: Vec<u64> = (0..16).filter(|_| rng.random_bool(0.3)).collect();
        if v.is_empty() || *v.last().unwrap() < 12 {
            v.push(15);
        }
        ks.push(KSequence::new(v, KRule::None).unwrap());
    }
    ks
}

fn dk_xi() -> Result<Vec<Check>> {
    let ks = dk_prefixes();
    let rows: Vec<(String, Option<String>)> = ks
        .par_iter()
        .map(|k| {
            let terms = k.terms_below(16);
            let d = DigitAvoiding::new(k.clone());
            let mut prev = rational::zero();
            for t in 0..terms.len() {
                let len = 1u64 << (terms[t] + 1);
                let xi = d.xi(t)?;
                let brute = missed_sums(&d, len);
                if Rational::from_integer(BigInt::from(brute)) != &xi * Rational::from_integer(BigInt::from(len)) {
                    return Ok((format!("{terms:?}"), Some(format!("T={t}: |E| = {brute}, xi = {xi}"))));
                }
                if xi < prev {
                    return Ok((format!("{terms:?}"), Some(format!("xi decreases at T={t}"))));
                }
                if d.delta_partial(t)? != rational::one() - &xi {
                    return Ok((format!("{terms:?}"), Some(format!("delta partial differs from 1 - xi at T={t}"))));
                }
                prev = xi;
            }
            Ok((format!("{terms:?}"), None))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<String> = rows.iter().filter_map(|(k, e)| e.as_ref().map(|e| format!("K={k}: {e}"))).collect();
    let mut out = vec![check(
        "|E_K| = xi 2^(k_T+1), xi nondecreasing, delta partial = 1 - xi",
        failures.is_empty(),
        format!("{} sequences with k_T <= 15, failures {:?}", rows.len(), failures.iter().take(3).collect::<Vec<_>>()),
    )];
    let d = DigitAvoiding::new(KSequence::new(vec![1, 3], KRule::None)?);
    out.push(check("K=(1,3)", d.z_count(1)? == BigInt::from(7) && d.xi(1)? == ratio(7, 16), "|Z_1| = 7, xi = 7/16"));
    Ok(out)
}

fn density_gap() -> Result<Vec<Check>> {
    let rep = positive_density_gap(1 << 16, 4)?;
    let mut out = vec![
        check("(B+B) u (B+D) avoids bit 1 up to 2^16", rep.violation.is_none(), format!("first violation {:?}", rep.violation)),
        check("lower Buck density of A+A <= 1/2", rep.bdo_upper <= ratio(1, 2), format!("periodic superset density {}", rep.bdo_upper)),
        check(
            "upper Buck density of A+A > 1/2",
            rep.bup_lower > ratio(1, 2),
            format!("delta_K >= {} ~ {:.6} for K = {:?}", rep.bup_lower, rational::to_f64(&rep.bup_lower), rep.k_prefix),
        ),
    ];
    let d = DigitAvoiding::new(KSequence::new(vec![1], KRule::DoubleGap)?);
    let chain = ModulusChain::powers(2, 16)?;
    let dd = SetDescription::d_k(d.k().clone()).doubled();
    let up = buck_upper(&dd, &chain, 0)?;
    out.push(check(
        "oracle upper bound for D+D is consistent with the delta bound",
        up.hi >= rep.bup_lower,
        format!("min over 2^1..2^16 of |(D+D)^(m)|/m = {}", up.hi),
    ));
    Ok(out)
}

fn thin_bases(notes: &mut Vec<String>) -> Result<Vec<Check>> {
    type Row = (u64, Option<String>, Option<(usize, u64)>);
    let rows: Vec<Row> = (2..=10_000u64)
        .into_par_iter()
        .map(|m| {
            let a = thin_basis(m)?;
            let ind = Bits::from_indices(m as usize, a.iter().filter(|&&x| x < m).map(|&x| x as usize));
            let covered = ind.linear_sumset(&ind, m as usize).count() as u64 == m;
            let small = (a.len() as u128).pow(2) < 4 * m as u128;
            let err = (!covered || !small).then(|| format!("m={m}: covered {covered}, |A| = {}", a.len()));
            let discrepancy = (a.len() as u64 > refined_bound(m)).then_some((a.len(), refined_bound(m)));
            Ok((m, err, discrepancy))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<&String> = rows.iter().filter_map(|r| r.1.as_ref()).collect();
    let disc: Vec<String> = rows.iter().filter_map(|(m, _, d)| d.map(|(a, b)| format!("m={m}: |A|={a} > {b}"))).collect();
    notes.push(format!(
        "refined floor bound exceeded for {} moduli (reported, not asserted); first: {:?}",
        disc.len(),
        disc.iter().take(5).collect::<Vec<_>>()
    ));
    Ok(vec![
        check("A+A covers [0,m) and |A|^2 < 4m", failures.is_empty(), format!("9999 moduli, failures {:?}", failures.iter().take(3).collect::<Vec<_>>())),
        check("m=10 discrepancy is reported", disc.iter().any(|d| d == "m=10: |A|=5 > 4"), format!("{} moduli over the refined bound", disc.len())),
    ])
}

fn chain_lists() -> Vec<Vec<u64>> {
    let mut lists: Vec<Vec<u64>> = (2..=10_000).map(|m| vec![m]).collect();
    for a in 2..=100 {
        for b in 2..=100 {
            lists.push(vec![a, b]);
        }
    }
    for a in 2..=21u64 {
        for b in 2..=21 {
            for c in 2..=21 {
                if a * b * c <= 10_000 {
                    lists.push(vec![a, b, c]);
                }
            }
        }
    }
    for a in 2..=10u64 {
        for b in 2..=10 {
            for c in 2..=10 {
                for d in 2..=10 {
                    lists.push(vec![a, b, c, d]);
                }
            }
        }
    }
    lists
}

fn basis_chains(notes: &mut Vec<String>) -> Result<Vec<Check>> {
    let lists = chain_lists();
    let rows: Vec<(Option<String>, Option<bool>)> = lists
        .par_iter()
        .map(|ms| {
            let b = BasisChain::new(ms, false)?;
            let err = (!b.doubles_to_full_ring() || !b.within_size_bound()).then(|| format!("{ms:?}: |B| = {}", b.len()));
            let sparse = match BasisChain::new(ms, true) {
                Ok(s) => Some(s.residues() == b.residues()),
                Err(e) if e.is_limit() => None,
                Err(e) => return Err(e),
            };
            Ok((err, sparse))
        })
        .collect::<Result<_>>()?;
    let failures: Vec<&String> = rows.iter().filter_map(|r| r.0.as_ref()).collect();
    let sparse_checked = rows.iter().filter(|r| r.1.is_some()).count();
    let sparse_bad = rows.iter().filter(|r| r.1 == Some(false)).count();
    notes.push(format!("{} lists skipped for sparsification: elements past 128 bits", rows.len() - sparse_checked));
    Ok(vec![
        check(
            "(B+B) mod M is the full ring and |B|^2 < 4^k M",
            failures.is_empty(),
            format!("{} modulus lists, failures {:?}", lists.len(), failures.iter().take(3).collect::<Vec<_>>()),
        ),
        check("sparsified chain keeps residues", sparse_bad == 0 && sparse_checked > 0, format!("{sparse_checked} lists checked, {sparse_bad} changed")),
    ])
}

fn x0() -> Result<Vec<Check>> {
    let x = SetDescription::x0();
    let xx = x.doubled();
    let mut out = Vec::new();
    for m in 1..=8u32 {
        let q = 4u64.pow(m);
        let oracle = (x.attained(q).map(|s| s.len()), xx.attained(q).map(|s| s.len()));
        let members = x.members_up_to(q - 1)?;
        let sampled = ResidueSet::from_reduced(q, members.iter().copied())?.len();
        let sums = crate::oracle::brute_sumset_members(&members, &members, 2 * q);
        let sampled_sum = ResidueSet::from_reduced(q, sums)?.len();
        let (a, b) = (2u64.pow(m), 3u64.pow(m));
        out.push(check(
            format!("m={m}"),
            oracle == (Some(a), Some(b)) && sampled == a && sampled_sum == b,
            format!("oracle {oracle:?}, from members ({sampled}, {sampled_sum}), expected ({a}, {b})"),
        ));
    }
    Ok(out)
}

fn ruzsa(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let trials = 10_000;
    for _ in 0..trials {
        let q = rng.random_range(1..=200u64);
        let p = rng.random_range(0.05..0.95);
        let mut s = ResidueSet::new(q, (0..q).filter(|_| rng.random_bool(p)))?;
        if s.is_empty() {
            s.insert(rng.random_range(0..q))?;
        }
        let members = s.members();
        let pr = rng.random_range(0.05..1.0);
        let mut r = ResidueSet::new(q, members.iter().copied().filter(|_| rng.random_bool(pr)))?;
        if r.is_empty() {
            r.insert(members[rng.random_range(0..members.len())])?;
        }
        if !ruzsa_inequality_check(&r, &s)?.holds {
            violations += 1;
        }
    }
    let mut out = vec![check("|R||S+S| <= |R+S|^2", violations == 0, format!("{trials} random pairs, seed {seed:#x}, {violations} violations"))];
    let chain = ModulusChain::new(ChainKind::Factorial, 6)?;
    let sets: Vec<Vec<(u64, u64)>> = vec![vec![(1, 2)], vec![(0, 1)], vec![(0, 4), (1, 4)], vec![(1, 3), (2, 6)], vec![(0, 5), (2, 5), (3, 7)]];
    for terms in sets {
        let a: SetDescription = EventuallyPeriodicSet::from_progressions(&terms)?.into();
        let rep = buck_inequality_report(&a, &chain, 0)?;
        out.push(check(
            format!("Buck inequality on {terms:?}"),
            rep.margin_squared.as_ref().is_some_and(|m| *m >= rational::zero()),
            format!("lower(A+A) = {}, lower(A) = {}, upper(A+A) = {}", rep.bdo_aa.estimate, rep.bdo_a.estimate, rep.bup_aa.estimate),
        ));
    }
    Ok(out)
}

fn weyl() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let horizon = 1_000_000;
    for alpha in [ratio(3, 10), ratio(1, 2)] {
        let a = SetDescription::weyl("sqrt2", alpha.clone())?;
        let w = window_densities(&a, horizon)?;
        let err = (rational::to_f64(&w.d_upper.estimate) - rational::to_f64(&alpha)).abs();
        out.push(check(format!("upper density of A_{alpha}"), err < 0.02, format!("estimate {:.5}, error {err:.5}", rational::to_f64(&w.d_upper.estimate))));
        let missing: Vec<u64> = (1..=64u64)
            .into_par_iter()
            .map(|m| sampled_residues(&a, m, horizon).map(|s| if s.is_full() { 0 } else { m }))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&m| m != 0)
            .collect();
        out.push(check(format!("A_{alpha} meets every class mod m <= 64"), missing.is_empty(), format!("moduli with a missed class: {missing:?}")));
    }
    let f = weyl_falsification("sqrt2", ratio(3, 10), 64, 1 << 16, 256)?;
    let worst = f.rows.iter().max_by_key(|r| r.longest_window).unwrap();
    out.push(check(
        "no periodic window structure for A+A, q <= 64",
        f.falsified,
        format!("longest window {} at q = {} (limit {})", worst.longest_window, worst.q, f.window_limit),
    ));
    Ok(out)
}

fn sparse_periodicity() -> Result<Vec<Check>> {
    let odds: SetDescription = EventuallyPeriodicSet::from_progressions(&[(1, 2)])?.into();
    let rep = analyze_sumset(&[odds.clone(), odds], &AnalyzeOptions::default())?;
    let r = rep.r.first().copied();
    let b = rep.sumset_density.exact_value().cloned();
    let mut out = vec![
        check("odds: q = 2, r = 1", rep.q == Some(2) && rep.r == vec![1, 1], format!("q = {:?}, r = {:?}", rep.q, rep.r)),
        check(
            "odds: upper density of X+X = (2r-1)/q = 1/2",
            b == Some(ratio(1, 2)) && rep.r_density() == Some(ratio(1, 2)) && rep.density_identity_holds,
            format!("{:?}", b.map(|b| b.to_string())),
        ),
        check(
            "odds: sparse periodicity for m <= 8",
            rep.sparse_periodicity.len() == 8 && rep.sparse_periodicity.iter().all(|s| s.pass && s.certified),
            format!("{} rows, r = {r:?}", rep.sparse_periodicity.len()),
        ),
    ];
    let mut bad = Vec::new();
    let strings = dyadic_bit_strings(5);
    for bits in &strings {
        let b = SetDescription::b_alpha(bits)?;
        let rep = analyze_sumset(&[b.clone(), b.clone()], &AnalyzeOptions { q_max: Some(1 << 10), ..Default::default() })?;
        let q = rep.q.unwrap_or(1);
        let rows = verify_sparse_periodicity(&b.doubled(), q, 8, 1 << 16)?;
        if !rows.iter().all(|s| s.pass && s.certified) {
            bad.push(bits.clone());
        }
    }
    out.push(check("B_alpha + B_alpha sparse periodicity, m <= 8", bad.is_empty(), format!("{} strings, failures {bad:?}", strings.len())));
    Ok(out)
}
