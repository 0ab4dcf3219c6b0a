//! Fixtures shared by the benchmarks.

use kopt_core::maxcut::{build_michel_scott, random_instance, Cut, MaxCutInstance};
use kopt_core::reduction::{
    build_labeling, compile_tsp, complete_graph, CompleteTsp, CompletionMode, GadgetChoice, LabelingKind, SparseTsp,
};

/// Michel-Scott depth `n` compiled with the k9 labeling.
pub fn michel_scott_k9(n: u32) -> (MaxCutInstance, Cut, SparseTsp) {
    let (inst, cut) = build_michel_scott(n);
    let lab = build_labeling(LabelingKind::K9, &inst, 9).expect("labeling");
    let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).expect("compile");
    (inst, cut, tsp)
}

/// A degree-five random instance in priority-mode completion.
pub fn pls_complete(n: usize, seed: u64) -> CompleteTsp {
    let inst = random_instance(n, 5, 5, seed);
    let lab = build_labeling(LabelingKind::Pls, &inst, 17).expect("labeling");
    let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).expect("compile");
    complete_graph(&tsp, CompletionMode::Priority).expect("completion")
}
