use kopt_core::maxcut::{build_michel_scott, flip_gain, random_instance, Cut, MaxCutInstance, Pivot};
use kopt_core::reduction::{build_labeling, compile_tsp, initial_tour, GadgetChoice, LabelingKind, SparseTsp};
use kopt_core::tsp::{apply_swap, is_tour, run_kopt, swap_delta, tour_weight, x_change, Neighborhood};
use kopt_core::verify::{
    check_strictness, enumerate_tours, has_property_star, tour_to_cut, EnumCaps,
};
use kopt_core::ExactWeight;
use proptest::prelude::*;

fn compiled(inst: &MaxCutInstance, kind: LabelingKind, k: i64) -> SparseTsp {
    compile_tsp(inst, &build_labeling(kind, inst, k).unwrap(), &GadgetChoice::standard()).unwrap()
}

/// Tour weight recomputed from the cut: every gadget contributes the
/// weight of its canonical cover, everything else is free.
fn weight_from_cut(tsp: &SparseTsp, cut: &Cut) -> ExactWeight {
    tsp.gadgets()
        .iter()
        .flat_map(|g| g.canonical[&g.mask_for(cut)].iter().map(|&e| tsp.edge(e).w.clone()))
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn labelings_hit_the_label_sum(seed in 0u64..1000, n in 2usize..8) {
        let inst = random_instance(n, 4, 5, seed);
        for (kind, k) in [(LabelingKind::K13, 13), (LabelingKind::K13, 16)] {
            let lab = build_labeling(kind, &inst, k).unwrap();
            for x in 0..n {
                prop_assert_eq!(lab.label_sum(x), k - 1);
                prop_assert!(lab.vertex_labels[x] >= 0);
            }
        }
        let inst5 = random_instance(n.min(6), 5, 5, seed);
        let lab = build_labeling(LabelingKind::Pls, &inst5, 17).unwrap();
        for x in 0..inst5.num_vertices() {
            prop_assert_eq!(lab.label_sum(x), 16);
        }
    }

    #[test]
    fn initial_tours_realise_their_cut(seed in 0u64..1000, n in 2usize..7, mask in 0u64..64) {
        let inst = random_instance(n, 4, 5, seed);
        let tsp = compiled(&inst, LabelingKind::K13, 13);
        let cut = Cut::from_mask(n, mask);
        let t = initial_tour(&tsp, &cut).unwrap();
        prop_assert!(is_tour(tsp.num_vertices(), &t));
        prop_assert_eq!(tour_to_cut(&tsp, &t), cut.clone());
        prop_assert!(has_property_star(&tsp, &t, &cut));
        prop_assert_eq!(tour_weight(&tsp, &t).unwrap(), weight_from_cut(&tsp, &cut));
    }

    #[test]
    fn x_changes_mirror_flips(seed in 0u64..1000, n in 2usize..7, mask in 0u64..64, k in 13i64..16) {
        let inst = random_instance(n, 4, 5, seed);
        let tsp = compiled(&inst, LabelingKind::K13, k);
        let cut = Cut::from_mask(n, mask);
        let t = initial_tour(&tsp, &cut).unwrap();
        for x in 0..n {
            let s = x_change(&tsp, &t, x).unwrap();
            prop_assert_eq!(s.size() as i64, k);
            prop_assert_eq!(swap_delta(&tsp, &s).unwrap(), -flip_gain(&inst, &cut, x).unwrap());
            let next = apply_swap(tsp.num_vertices(), &t, &s).unwrap();
            prop_assert_eq!(next, initial_tour(&tsp, &cut.flipped(x)).unwrap());
        }
    }

    #[test]
    fn kopt_steps_strictly_decrease(seed in 0u64..1000, n in 2usize..7, pivot_seed in 0u64..100) {
        let inst = random_instance(n, 4, 5, seed);
        let tsp = compiled(&inst, LabelingKind::K13, 13);
        let start = initial_tour(&tsp, &Cut::from_mask(n, seed & 63)).unwrap();
        let trace = run_kopt(&Neighborhood::XChange(&tsp), &start, 13, Pivot::Random(pivot_seed), 10_000).unwrap();
        let mut w = trace.initial_weight.clone();
        for s in &trace.steps {
            prop_assert!(s.delta.is_negative());
            w += &s.delta;
            prop_assert_eq!(&w, &s.weight_after);
        }
        prop_assert_eq!(tour_weight(&tsp, &trace.final_tour).unwrap(), w);
    }
}

#[test]
fn sparse_oracle_neighbors_are_close_tours() {
    for seed in 0..6 {
        let inst = random_instance(3, 2, 4, seed);
        let tsp = compiled(&inst, LabelingKind::K13, 13);
        let e = enumerate_tours(&tsp, EnumCaps::default());
        assert!(!e.limited);
        let nb = Neighborhood::SparseOracle { tsp: &tsp, tours: &e.tours };
        for t in &e.tours {
            for (s, d) in kopt_core::tsp::improving_k_swap_neighbors(&nb, t, 13).unwrap() {
                assert!(s.size() <= 13 && d.is_negative());
                assert!(is_tour(tsp.num_vertices(), &apply_swap(tsp.num_vertices(), t, &s).unwrap()));
            }
        }
    }
}

#[test]
fn single_flip_tours_are_far_apart() {
    for seed in 0..6 {
        let inst = random_instance(3, 2, 4, seed);
        for k in [13, 14] {
            let r = check_strictness(&compiled(&inst, LabelingKind::K13, k), EnumCaps::default());
            assert!(r.passed(), "{r:?}");
            assert!(r.min_single_flip_distance.unwrap() >= k as usize);
        }
    }
}

#[test]
fn michel_scott_compile_is_strict() {
    let (inst, _) = build_michel_scott(1);
    let r = check_strictness(&compiled(&inst, LabelingKind::K9, 9), EnumCaps::default());
    assert!(r.passed() && r.tours == 4096);
    assert!(r.min_single_flip_distance.unwrap() >= 9);
}
