use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_local_strictness, enumerate_tours, has_property_star, tour_to_cut, EnumCaps};
use crate::error::Result;
use crate::maxcut::{flip_gain, improving_flips, Cut, MaxCutInstance, Pivot};
use crate::reduction::{compile_tsp, initial_tour, GadgetChoice, Labeling};
use crate::tsp::{apply_swap, improving_k_swap_neighbors, Neighborhood, Swap};
use crate::weight::ExactWeight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Oracle {
    /// Neighbors from the full tour enumeration of `G`.
    Sparse,
    /// Neighbors are the improving x-changes.
    XChange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceStep {
    pub cut: Cut,
    pub flips: Vec<usize>,
    /// For each improving swap, the flip it realises (if any).
    pub swap_flips: Vec<Option<usize>>,
    /// Improving swaps and improving flips match one to one.
    pub bijection: bool,
    /// Every matched swap changes the tour weight by minus the flip gain.
    pub deltas_match: bool,
    pub property_star: bool,
    pub locally_strict: bool,
    /// Flip taken at this step; `None` at the local optimum.
    pub flipped: Option<usize>,
    pub tour_delta: Option<ExactWeight>,
    pub cut_delta: Option<ExactWeight>,
}

impl CorrespondenceStep {
    pub fn passed(&self) -> bool {
        self.bijection && self.deltas_match && self.property_star
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub oracle: Oracle,
    /// Enumeration was out of reach and x-changes stood in for the oracle.
    pub oracle_limited: bool,
    pub tours_enumerated: Option<usize>,
    pub steps: Vec<CorrespondenceStep>,
    pub divergence: Option<String>,
    pub reached_optimum: bool,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none() && self.reached_optimum && self.steps.iter().all(|s| s.passed())
    }

    /// Number of flips taken.
    pub fn flips(&self) -> usize {
        self.steps.iter().filter(|s| s.flipped.is_some()).count()
    }

    pub fn always_locally_strict(&self) -> bool {
        self.steps.iter().all(|s| s.locally_strict)
    }
}

/// Runs Flip and k-Opt in lockstep from `cut` and its tour, comparing the
/// improving moves at every step.
#[allow(clippy::too_many_arguments)]
pub fn check_correspondence(
    inst: &MaxCutInstance,
    labeling: &Labeling,
    choice: &GadgetChoice,
    cut: &Cut,
    pivot: Pivot,
    oracle: Oracle,
    caps: EnumCaps,
    step_limit: usize,
) -> Result<CorrespondenceReport> {
    let tsp = compile_tsp(inst, labeling, choice)?;
    let k = usize::try_from(labeling.k).unwrap_or(0);
    let mut oracle_limited = false;
    let mut tours_enumerated = None;
    let tours = if oracle == Oracle::Sparse {
        let e = enumerate_tours(&tsp, caps);
        tours_enumerated = Some(e.tours.len());
        oracle_limited = e.limited;
        e.tours
    } else {
        Vec::new()
    };
    let nb = if oracle == Oracle::Sparse && !oracle_limited {
        Neighborhood::SparseOracle { tsp: &tsp, tours: &tours }
    } else {
        Neighborhood::XChange(&tsp)
    };
    let mut rng = match pivot {
        Pivot::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut cut = cut.clone();
    let mut tour = initial_tour(&tsp, &cut)?;
    let mut rep = CorrespondenceReport {
        oracle,
        oracle_limited,
        tours_enumerated,
        steps: Vec::new(),
        divergence: None,
        reached_optimum: false,
    };
    loop {
        let flips = improving_flips(inst, &cut)?;
        let swaps = improving_k_swap_neighbors(&nb, &tour, k)?;
        let mut swap_flips = Vec::with_capacity(swaps.len());
        let mut by_flip: Vec<Option<(Swap, ExactWeight)>> = vec![None; inst.num_vertices()];
        let mut deltas_match = true;
        let mut bijection = swaps.len() == flips.len();
        for (s, d) in &swaps {
            let next = apply_swap(tsp.num_vertices(), &tour, s)?;
            let next_cut = tour_to_cut(&tsp, &next);
            let x = (0..inst.num_vertices()).find(|&x| cut.flipped(x) == next_cut);
            swap_flips.push(x);
            match x {
                Some(x) if flips.contains(&x) && by_flip[x].is_none() => {
                    deltas_match &= *d == -flip_gain(inst, &cut, x)?;
                    deltas_match &= has_property_star(&tsp, &next, &next_cut);
                    by_flip[x] = Some((s.clone(), d.clone()));
                }
                _ => bijection = false,
            }
        }
        let mut step = CorrespondenceStep {
            cut: cut.clone(),
            flips: flips.clone(),
            swap_flips,
            bijection,
            deltas_match,
            property_star: has_property_star(&tsp, &tour, &cut),
            locally_strict: check_local_strictness(&tsp, &tour),
            flipped: None,
            tour_delta: None,
            cut_delta: None,
        };
        if !step.passed() {
            rep.divergence = Some(format!("step {}: improving flips {:?}, swaps realise {:?}", rep.steps.len(), step.flips, step.swap_flips));
            rep.steps.push(step);
            break;
        }
        if flips.is_empty() {
            rep.reached_optimum = true;
            rep.steps.push(step);
            break;
        }
        if rep.steps.len() >= step_limit {
            rep.steps.push(step);
            break;
        }
        let x = match pivot {
            Pivot::First => flips[0],
            Pivot::Steepest => {
                let mut best = flips[0];
                let mut best_gain = flip_gain(inst, &cut, best)?;
                for &v in &flips[1..] {
                    let g = flip_gain(inst, &cut, v)?;
                    if g > best_gain {
                        best = v;
                        best_gain = g;
                    }
                }
                best
            }
            Pivot::Random(_) => *flips.choose(rng.as_mut().expect("seeded")).expect("non-empty"),
        };
        let (s, d) = by_flip[x].clone().expect("bijection holds");
        step.flipped = Some(x);
        step.cut_delta = Some(flip_gain(inst, &cut, x)?);
        step.tour_delta = Some(d);
        rep.steps.push(step);
        tour = apply_swap(tsp.num_vertices(), &tour, &s)?;
        cut.flip(x);
    }
    Ok(rep)
}
