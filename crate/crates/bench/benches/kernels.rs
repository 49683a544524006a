use std::hint::black_box;

use buckdens::density::buck_upper;
use buckdens::generators::{thin_basis, KRule, KSequence};
use buckdens::kneser::analyze_sumset;
use buckdens::oracle::kneser_sweep;
use buckdens::zmod::{classify, stabilizer, sumset};
use buckdens::{AnalyzeOptions, ChainKind, Convention, EventuallyPeriodicSet, ModulusChain, ResidueSet, SetDescription};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn residue_kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("zmod");
    for m in [1u64 << 8, 1 << 12, 1 << 16] {
        let a = ResidueSet::new(m, (0..m).filter(|x| x % 7 < 3)).unwrap();
        let b = ResidueSet::new(m, (0..m).filter(|x| x % 11 == 4)).unwrap();
        g.bench_with_input(BenchmarkId::new("sumset", m), &m, |bench, _| bench.iter(|| sumset(black_box(&[a.clone(), b.clone()]))));
        let s = sumset(&[a.clone(), b.clone()]).unwrap();
        g.bench_with_input(BenchmarkId::new("stabilizer", m), &m, |bench, _| bench.iter(|| stabilizer(black_box(&s))));
    }
    let s = ResidueSet::new(360, (0..360).filter(|x| x % 12 < 5 || *x == 7)).unwrap();
    g.bench_function("classify/360", |bench| bench.iter(|| classify(black_box(&s), Convention::AllowEmpty)));
    g.finish();
}

fn exhaustive(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for m in [6u64, 8] {
        g.bench_with_input(BenchmarkId::new("kneser_sweep", m), &m, |bench, &m| bench.iter(|| kneser_sweep(m)));
    }
    g.finish();
}

fn densities(c: &mut Criterion) {
    let mut g = c.benchmark_group("density");
    let chain = ModulusChain::new(ChainKind::Factorial, 8).unwrap();
    let d = SetDescription::d_k(KSequence::new(vec![1], KRule::DoubleGap).unwrap());
    g.bench_function("buck_upper/d_k+d_k", |bench| bench.iter(|| buck_upper(black_box(&d.doubled()), &chain, 1 << 16)));
    let pow2 = ModulusChain::new(ChainKind::PowersOfTwo, 16).unwrap();
    g.bench_function("buck_upper/d_k+d_k pow2", |bench| bench.iter(|| buck_upper(black_box(&d.doubled()), &pow2, 1 << 16)));
    g.bench_function("thin_basis/10^4", |bench| bench.iter(|| thin_basis(black_box(10_000))));
    g.finish();
}

fn analysis(c: &mut Criterion) {
    let odds: SetDescription = EventuallyPeriodicSet::from_progressions(&[(1, 2)]).unwrap().into();
    let mixed: SetDescription = EventuallyPeriodicSet::from_progressions(&[(0, 5), (1, 5), (3, 7)]).unwrap().into();
    let opts = AnalyzeOptions::default();
    c.bench_function("analyze/odds", |bench| bench.iter(|| analyze_sumset(black_box(&[odds.clone(), odds.clone()]), &opts)));
    c.bench_function("analyze/mixed", |bench| bench.iter(|| analyze_sumset(black_box(&[mixed.clone(), mixed.clone()]), &opts)));
}

criterion_group!(benches, residue_kernels, exhaustive, densities, analysis);
criterion_main!(benches);
