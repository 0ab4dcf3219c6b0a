use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use kopt_bench::{michel_scott_k9, pls_complete};
use kopt_core::gadget::{certify_xor, flexible_gadget, verify_parity_spec};
use kopt_core::maxcut::{build_michel_scott, run_flip, Pivot};
use kopt_core::reduction::{build_labeling, compile_tsp, initial_tour, GadgetChoice, LabelingKind};
use kopt_core::tsp::{find_improving_3swap, run_kopt, Neighborhood, Tour};
use kopt_core::verify::{enumerate_tours, EnumCaps};

fn flip(c: &mut Criterion) {
    let (inst, cut) = build_michel_scott(3);
    c.bench_function("flip/michel_scott_n3", |b| {
        b.iter(|| run_flip(black_box(&inst), &cut, Pivot::First, 10_000).unwrap())
    });
}

fn compile(c: &mut Criterion) {
    let (inst, _) = build_michel_scott(3);
    c.bench_function("compile/michel_scott_n3_k9", |b| {
        b.iter(|| {
            let lab = build_labeling(LabelingKind::K9, &inst, 9).unwrap();
            compile_tsp(black_box(&inst), &lab, &GadgetChoice::standard()).unwrap()
        })
    });
}

fn kopt_xchange(c: &mut Criterion) {
    let (_, cut, tsp) = michel_scott_k9(2);
    let start = initial_tour(&tsp, &cut).unwrap();
    c.bench_function("kopt/xchange_michel_scott_n2", |b| {
        b.iter(|| run_kopt(&Neighborhood::XChange(&tsp), black_box(&start), 9, Pivot::First, 10_000).unwrap())
    });
}

fn enumerate(c: &mut Criterion) {
    let (_, _, tsp) = michel_scott_k9(1);
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    g.bench_function("tours_michel_scott_n1", |b| b.iter(|| enumerate_tours(black_box(&tsp), EnumCaps::default())));
    g.finish();
}

fn three_swap(c: &mut Criterion) {
    let comp = pls_complete(4, 1);
    let n = comp.sparse().num_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    let mut seed = 7u64;
    c.bench_function("three_opt/find_improving_random_tour", |b| {
        b.iter_batched(
            || {
                // Fisher-Yates with a fixed LCG so every batch sees a fresh tour.
                for i in (1..n).rev() {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    order.swap(i, (seed >> 33) as usize % (i + 1));
                }
                Tour::from_order(&order)
            },
            |t| find_improving_3swap(&comp, &t).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn gadgets(c: &mut Criterion) {
    let g = flexible_gadget();
    c.bench_function("gadget/certify_flexible", |b| b.iter(|| verify_parity_spec(black_box(&g), 2, 2)));
    c.bench_function("gadget/certify_xor7", |b| b.iter(|| certify_xor(black_box(7))));
}

criterion_group!(benches, flip, compile, kopt_xchange, enumerate, three_swap, gadgets);
criterion_main!(benches);
