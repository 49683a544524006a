//! Worked values and closed forms for the named set families.

use buckdens::density::{buck_lower, buck_upper, window_densities};
use buckdens::generators::{phi_t, HookRule};
use buckdens::rational::{inv_pow2, ratio, to_f64, zero};
use buckdens::{ChainKind, EventuallyPeriodicSet, ModulusChain, SetDescription};

#[test]
fn b_alpha_half_is_the_odd_numbers() {
    let b = SetDescription::b_alpha("1").unwrap();
    let odds = EventuallyPeriodicSet::from_progressions(&[(1, 2)]).unwrap();
    assert_eq!(b.to_periodic(), Some(&odds));
    assert_eq!(buck_upper(&b, &ModulusChain::new(ChainKind::Factorial, 4).unwrap(), 0).unwrap().exact_value(), Some(&ratio(1, 2)));
}

#[test]
fn b_alpha_quarter_doubles_to_multiples_of_four() {
    let b = SetDescription::b_alpha("01").unwrap();
    let bb = b.doubled();
    let four = EventuallyPeriodicSet::from_progressions(&[(0, 4)]).unwrap();
    let p = bb.to_periodic().unwrap();
    // equal to 4N except for 0
    assert_eq!(four.difference(p).unwrap().members_up_to(1000), vec![0]);
    assert!(p.difference(&four).unwrap().is_empty());
    assert_eq!(p.natural_density(), ratio(1, 4));
}

/// `B + B = 2^r N ∪ (2^(r-1) + 2^(s-1) + 2^r N)` up to `{0}`, with `r`, `s`
/// the first two set bits (1-based).
#[test]
fn b_alpha_doubling_closed_form() {
    for len in 2..=8usize {
        for x in 0..1u32 << (len - 1) {
            let bits: String = (0..len - 1).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect::<String>() + "1";
            let ones: Vec<u64> = bits.char_indices().filter(|(_, c)| *c == '1').map(|(i, _)| i as u64 + 1).collect();
            if ones.len() < 2 {
                continue;
            }
            let (r, s) = (ones[0], ones[1]);
            let want = EventuallyPeriodicSet::from_progressions(&[(0, 1 << r), ((1 << (r - 1)) + (1 << (s - 1)), 1 << r)]).unwrap();
            let got = SetDescription::b_alpha(&bits).unwrap().doubled();
            let got = got.to_periodic().unwrap();
            assert!(got.difference(&want).unwrap().is_finite(), "{bits}");
            assert!(want.difference(got).unwrap().is_finite(), "{bits}");
            // 2^-(r-1), the value of 2^-floor(log2(1/alpha))
            assert_eq!(got.natural_density(), inv_pow2(r as u32 - 1), "{bits}");
        }
    }
}

#[test]
fn b_alpha_three_quarters_on_a_dyadic_chain() {
    let b = SetDescription::b_alpha("11").unwrap();
    let chain = ModulusChain::new(ChainKind::PowersOfTwo, 4).unwrap();
    let ratios: Vec<_> = chain.values.iter().map(|&m| ratio(b.attained(m).unwrap().len(), m)).collect();
    // mod 2 both classes are hit (1 and 2 are members); from 4 on the ratio is alpha
    assert_eq!(ratios, [ratio(1, 1), ratio(3, 4), ratio(3, 4), ratio(3, 4)]);
    assert_eq!(buck_upper(&b, &chain, 0).unwrap().exact_value(), Some(&ratio(3, 4)));
}

#[test]
fn x0_profiles_give_the_geometric_bounds() {
    let x = SetDescription::x0();
    let chain = ModulusChain::powers(4, 5).unwrap();
    let up = buck_upper(&x, &chain, 0).unwrap();
    let ratios: Vec<_> = up.points.iter().map(|p| p.ratio.clone()).collect();
    assert_eq!(ratios, (1..=5).map(inv_pow2).collect::<Vec<_>>());
    assert_eq!(up.hi, inv_pow2(5));
    assert_eq!(up.lo, zero());

    let xx = x.doubled();
    assert_eq!(xx.attained(16).unwrap().len(), 9);
    for m in 1..=6u32 {
        let q = 4u64.pow(m);
        assert_eq!(ratio(xx.attained(q).unwrap().len(), q), ratio(3u64.pow(m), 4u64.pow(m)));
    }
}

#[test]
fn totient_is_the_zero_case() {
    assert_eq!(phi_t(6, 0), 2);
    for k in 1..200u64 {
        let naive = (1..=k).filter(|&a| num_integer::gcd(a, k) == 1).count() as u64;
        assert_eq!(phi_t(k, 0), naive, "k = {k}");
    }
}

#[test]
fn factorial_hook_has_zero_lower_density() {
    let h = SetDescription::hook(HookRule::Factorial);
    let chain = ModulusChain::new(ChainKind::Factorial, 6).unwrap();
    let lo = buck_lower(&h, &chain, 1 << 16).unwrap();
    assert_eq!(lo.lo, zero());
    assert_eq!(lo.estimate, zero());
    assert_eq!(buck_upper(&h, &chain, 1 << 16).unwrap().hi, ratio(1, 1));
}

#[test]
fn weyl_half_has_density_one_half() {
    let a = SetDescription::weyl("sqrt2", ratio(1, 2)).unwrap();
    let w = window_densities(&a, 1_000_000).unwrap();
    assert!((to_f64(&w.d_upper.estimate) - 0.5).abs() < 0.02);
    assert!((to_f64(&w.d_lower.estimate) - 0.5).abs() < 0.02);
}

/// The long intervals belong to the complement of `D_K + D_K`; they appear
/// at the scales `2^(k_T+1)`, so the sliding-window maximum is full there.
#[test]
fn missed_sums_contain_long_intervals() {
    use buckdens::generators::{KRule, KSequence};
    let d = SetDescription::d_k(KSequence::new(vec![1], KRule::DoubleGap).unwrap());
    let e = SetDescription::complement(d.doubled());
    let longest_run = |len: u64| {
        let ind = e.indicator(len).unwrap();
        let (mut best, mut run) = (0, 0);
        for i in 0..len as usize {
            run = if ind.get(i) { run + 1 } else { 0 };
            best = best.max(run);
        }
        best
    };
    let runs: Vec<u64> = [4u32, 8, 16].iter().map(|&t| longest_run(1 << t)).collect();
    assert!(runs.windows(2).all(|w| w[0] < w[1]), "{runs:?}");
    assert_eq!(window_densities(&e, 1 << 16).unwrap().banach_upper.estimate, ratio(1, 1));
}
