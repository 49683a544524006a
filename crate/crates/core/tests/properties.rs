//! Cross-module invariants, each checked against a naive oracle written here.

use std::collections::BTreeSet;

use buckdens::generators::{sampled_residues, BasisChain, KRule, KSequence};
use buckdens::kneser::{analyze_sumset, verify_sparse_periodicity};
use buckdens::rational::{inv_pow2, ratio};
use buckdens::zmod::kneser_deficiency;
use buckdens::{AnalyzeOptions, EventuallyPeriodicSet, Rational, ResidueSet, SetDescription};
use proptest::prelude::*;

fn bit_string() -> impl Strategy<Value = String> {
    proptest::collection::vec(any::<bool>(), 0..10).prop_map(|v| v.into_iter().map(|b| if b { '1' } else { '0' }).collect::<String>() + "1")
}

fn progressions() -> impl Strategy<Value = Vec<(u64, u64)>> {
    proptest::collection::vec((0u64..12, 1u64..10), 1..4)
}

/// `n ∈ B_α` iff the bit of `α` at the 2-adic valuation of `n` is set.
fn naive_b_alpha(bits: &str, n: u64) -> bool {
    n > 0 && bits.as_bytes().get(n.trailing_zeros() as usize) == Some(&b'1')
}

/// Residues of `{a + k j}` mod `m`, from the definition.
fn naive_profile(terms: &[(u64, u64)], m: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for &(a, k) in terms {
        for j in 0..m {
            out.insert((a + k * j) % m);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn b_alpha_density_is_the_dyadic_value(bits in bit_string()) {
        let b = SetDescription::b_alpha(&bits).unwrap();
        let period = 1u64 << bits.len();
        let count = (1..=period).filter(|&n| naive_b_alpha(&bits, n)).count() as u64;
        let alpha: Rational = bits.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| inv_pow2(i as u32 + 1)).sum();
        prop_assert_eq!(ratio(count, period), alpha.clone());
        prop_assert_eq!(b.to_periodic().unwrap().natural_density(), alpha);
        for n in 0..300 {
            prop_assert_eq!(b.contains(n), naive_b_alpha(&bits, n));
        }
    }

    #[test]
    fn sampled_residues_match_oracles(bits in bit_string(), prefix in proptest::collection::btree_set(0u64..9, 1..5),
                                      doubling in any::<bool>(), j in 0u32..11) {
        let m = 1u64 << j;
        let rule = if doubling { KRule::DoubleGap } else { KRule::None };
        let sets = [
            SetDescription::b_alpha(&bits).unwrap(),
            SetDescription::d_k(KSequence::new(prefix.into_iter().collect(), rule).unwrap()),
            SetDescription::x0(),
        ];
        for x in &sets {
            let Some(oracle) = x.attained(m) else { continue };
            let sampled = sampled_residues(x, m, 1 << 16).unwrap();
            prop_assert!(sampled.is_subset(&oracle));
            prop_assert_eq!(&sampled, &oracle, "{} mod {}", x.family_name(), m);
        }
    }

    #[test]
    fn profile_ratio_shrinks_along_divisibility(terms in progressions(), m in 1u64..30, c in 1u64..6) {
        let x: SetDescription = EventuallyPeriodicSet::from_progressions(&terms).unwrap().into();
        let small = x.attained(m).unwrap();
        let big = x.attained(m * c).unwrap();
        prop_assert!(ratio(big.len(), m * c) <= ratio(small.len(), m));
        prop_assert_eq!(small.members(), naive_profile(&terms, m).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn digit_profiles_shrink_along_powers_of_two(prefix in proptest::collection::btree_set(0u64..12, 1..6), a in 0u32..10, b in 0u32..4) {
        let x = SetDescription::d_k(KSequence::new(prefix.into_iter().collect(), KRule::None).unwrap());
        let (m, mm) = (1u64 << a, 1u64 << (a + b));
        let small = x.attained(m).unwrap();
        let big = x.attained(mm).unwrap();
        prop_assert!(ratio(big.len(), mm) <= ratio(small.len(), m));
    }

    #[test]
    fn sparsified_chains_keep_residues(moduli in proptest::collection::vec(2u64..14, 1..4)) {
        let plain = BasisChain::new(&moduli, false).unwrap();
        let sparse = BasisChain::new(&moduli, true).unwrap();
        prop_assert_eq!(plain.residues(), sparse.residues());
        prop_assert!(plain.doubles_to_full_ring());
        let modulus: u64 = moduli.iter().product();
        let r = plain.residues().members();
        let mut hit = vec![false; modulus as usize];
        for &x in &r {
            for &y in &r {
                hit[((x + y) % modulus) as usize] = true;
            }
        }
        prop_assert!(hit.into_iter().all(|h| h));
    }

    #[test]
    fn structure_is_stable_under_periodic_hulls(a in progressions(), b in progressions()) {
        let xs: Vec<SetDescription> = [a, b].iter().map(|t| EventuallyPeriodicSet::from_progressions(t).unwrap().into()).collect();
        let opts = AnalyzeOptions { q_max: Some(840), m_max: 4, ..Default::default() };
        let rep = analyze_sumset(&xs, &opts).unwrap();
        let Some(q) = rep.q else { return Ok(()) };
        let hulls: Vec<SetDescription> = rep.profiles.iter().map(|p| EventuallyPeriodicSet::from_residues(p).into()).collect();
        let again = analyze_sumset(&hulls, &opts).unwrap();
        prop_assert_eq!(again.q, Some(q));
        prop_assert_eq!(&again.r, &rep.r);
        prop_assert_eq!(
            again.classification.as_ref().map(|c| c.tag),
            rep.classification.as_ref().map(|c| c.tag)
        );
    }

    #[test]
    fn periodic_sumsets_fill_their_lifted_classes(a in progressions(), b in progressions(), m in 1u64..5) {
        let pa = EventuallyPeriodicSet::from_progressions(&a).unwrap();
        let pb = EventuallyPeriodicSet::from_progressions(&b).unwrap();
        let xs: Vec<SetDescription> = vec![pa.clone().into(), pb.clone().into()];
        let rep = analyze_sumset(&xs, &AnalyzeOptions { q_max: Some(840), m_max: 1, ..Default::default() }).unwrap();
        let (Some(q), Some(s)) = (rep.q, rep.sumset.clone()) else { return Ok(()) };
        let sum = pa.sumset(&pb).unwrap();
        let cof = sum.modular_profile(m * q).unwrap().cofinitely_attained;
        for r in s.iter() {
            for h in 0..m {
                prop_assert!(cof.contains(r + h * q), "class {} mod {}", r + h * q, m * q);
            }
        }
    }

    #[test]
    fn b_alpha_doublings_are_sparsely_periodic(bits in proptest::collection::vec(any::<bool>(), 0..6)) {
        let bits = bits.into_iter().map(|b| if b { '1' } else { '0' }).collect::<String>() + "1";
        let b = SetDescription::b_alpha(&bits).unwrap();
        let rep = analyze_sumset(&[b.clone(), b.clone()], &AnalyzeOptions { q_max: Some(256), ..Default::default() }).unwrap();
        let rows = verify_sparse_periodicity(&b.doubled(), rep.q.unwrap_or(1), 8, 1 << 16).unwrap();
        prop_assert!(rows.iter().all(|r| r.pass && r.certified));
    }
}

#[test]
fn deficiency_agrees_with_direct_counts() {
    for m in 1..=8u64 {
        let sets: Vec<Vec<u64>> = (1u32..1 << m).map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect()).collect();
        for a in &sets {
            for b in &sets {
                let sum: BTreeSet<u64> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x + y) % m)).collect();
                // largest subgroup dH of Z/mZ fixing the sum
                let d = (1..=m).filter(|d| m % d == 0).find(|&d| sum.iter().all(|&s| sum.contains(&((s + d) % m)))).unwrap();
                let classes = |s: &[u64]| s.iter().map(|x| x % d).collect::<BTreeSet<_>>().len() as u64;
                let order = m / d;
                let rep = kneser_deficiency(&[ResidueSet::new(m, a.clone()).unwrap(), ResidueSet::new(m, b.clone()).unwrap()]).unwrap();
                assert_eq!(rep.sum_size, sum.len() as u64);
                assert_eq!(rep.stabilizer.order(), order);
                assert_eq!(rep.r, vec![classes(a), classes(b)]);
                assert_eq!(rep.deficient, (sum.len() as u64) + 1 < (a.len() + b.len()) as u64);
                assert!(sum.len() as u64 >= (classes(a) + classes(b) - 1) * order);
            }
        }
    }
}
