use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{apply_swap, improving_3swaps, swap_delta, tour_weight, x_change, Swap, Tour, Weights};
use crate::error::{Error, Result};
use crate::maxcut::Pivot;
use crate::reduction::{CompleteTsp, SparseTsp};
use crate::weight::ExactWeight;

/// How improving k-swaps are generated.
#[derive(Clone, Copy)]
pub enum Neighborhood<'a> {
    /// Every tour of `G` within swap distance `k` that weighs less. `tours`
    /// must hold all tours of `G`.
    SparseOracle { tsp: &'a SparseTsp, tours: &'a [Tour] },
    /// Improving x-changes of size at most `k`.
    XChange(&'a SparseTsp),
    /// Every improving swap of at most three edges in the complete graph.
    Bounded3Swap(&'a CompleteTsp),
}

impl Neighborhood<'_> {
    fn weights(&self) -> &dyn Weights {
        match *self {
            Neighborhood::SparseOracle { tsp, .. } | Neighborhood::XChange(tsp) => tsp,
            Neighborhood::Bounded3Swap(c) => c,
        }
    }

    fn num_vertices(&self) -> usize {
        self.weights().num_vertices()
    }
}

/// Improving swaps with their (negative) weight deltas, sorted by removed set.
pub fn improving_k_swap_neighbors(nb: &Neighborhood<'_>, tour: &Tour, k: usize) -> Result<Vec<(Swap, ExactWeight)>> {
    let mut out = Vec::new();
    match *nb {
        Neighborhood::SparseOracle { tsp, tours } => {
            let w0 = tour_weight(tsp, tour)?;
            for t in tours {
                if t != tour && tour.distance(t) <= k {
                    let d = tour_weight(tsp, t)? - w0.clone();
                    if d.is_negative() {
                        out.push((Swap::between(tour, t), d));
                    }
                }
            }
        }
        Neighborhood::XChange(tsp) => {
            for x in 0..tsp.h_vertex_count() {
                let s = x_change(tsp, tour, x)?;
                if s.size() > k {
                    continue;
                }
                let d = swap_delta(tsp, &s)?;
                if d.is_negative() {
                    out.push((s, d));
                }
            }
        }
        Neighborhood::Bounded3Swap(c) => {
            if k != 3 {
                return Err(Error::Input(format!("bounded 3-swap search needs k = 3, got {k}")));
            }
            out = improving_3swaps(c, tour)?;
        }
    }
    out.sort_by(|a, b| a.0.removed.cmp(&b.0.removed).then_with(|| a.0.added.cmp(&b.0.added)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapStep {
    pub swap: Swap,
    pub delta: ExactWeight,
    pub weight_after: ExactWeight,
    /// Number of improving swaps that were available at this step.
    pub candidates: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KoptTerminal {
    LocalOptimum,
    StepLimit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapTrace {
    pub initial_weight: ExactWeight,
    pub steps: Vec<SwapStep>,
    pub terminal: KoptTerminal,
    pub final_tour: Tour,
}

/// Runs k-Opt from `tour`. Steepest breaks ties by the smallest removed set.
pub fn run_kopt(nb: &Neighborhood<'_>, tour: &Tour, k: usize, pivot: Pivot, step_limit: usize) -> Result<SwapTrace> {
    let n = nb.num_vertices();
    let mut tour = tour.clone();
    let initial_weight = tour_weight(nb.weights(), &tour)?;
    let mut weight = initial_weight.clone();
    let mut rng = match pivot {
        Pivot::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut steps = Vec::new();
    let terminal = loop {
        let mut improving = improving_k_swap_neighbors(nb, &tour, k)?;
        if improving.is_empty() {
            break KoptTerminal::LocalOptimum;
        }
        if steps.len() >= step_limit {
            break KoptTerminal::StepLimit;
        }
        let candidates = improving.len();
        let pick = match pivot {
            Pivot::First => 0,
            Pivot::Steepest => {
                let mut best = 0;
                for i in 1..improving.len() {
                    if improving[i].1 < improving[best].1 {
                        best = i;
                    }
                }
                best
            }
            Pivot::Random(_) => rng.as_mut().expect("seeded for random pivot").gen_range(0..improving.len()),
        };
        let (swap, delta) = improving.swap_remove(pick);
        tour = apply_swap(n, &tour, &swap)?;
        weight += &delta;
        steps.push(SwapStep {
            swap,
            delta,
            weight_after: weight.clone(),
            candidates,
        });
    };
    Ok(SwapTrace {
        initial_weight,
        steps,
        terminal,
        final_tour: tour,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::{build_michel_scott, run_flip};
    use crate::reduction::{build_labeling, compile_tsp, initial_tour, GadgetChoice, LabelingKind};

    #[test]
    fn xchange_run_mirrors_flip() {
        let (inst, cut) = build_michel_scott(1);
        let lab = build_labeling(LabelingKind::K9, &inst, 9).unwrap();
        let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).unwrap();
        let tour = initial_tour(&tsp, &cut).unwrap();
        let flips = run_flip(&inst, &cut, Pivot::First, 1000).unwrap();
        for pivot in [Pivot::First, Pivot::Steepest, Pivot::Random(3)] {
            let t = run_kopt(&Neighborhood::XChange(&tsp), &tour, 9, pivot, 1000).unwrap();
            assert_eq!(t.steps.len(), 14);
            assert!(t.steps.iter().all(|s| s.delta.is_negative() && s.candidates == 1));
            assert_eq!(t.final_tour, initial_tour(&tsp, &flips.final_cut).unwrap());
            let again = run_kopt(&Neighborhood::XChange(&tsp), &t.final_tour, 9, pivot, 1000).unwrap();
            assert!(again.steps.is_empty());
        }
    }
}
