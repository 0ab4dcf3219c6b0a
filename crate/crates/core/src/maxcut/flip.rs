use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{cut_value, flip_gain, Cut, MaxCutInstance};
use crate::error::Result;
use crate::weight::ExactWeight;

/// Rule for choosing among several improving moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pivot {
    /// Lowest index.
    First,
    /// Largest gain, ties by lowest index.
    Steepest,
    /// Uniform among improving moves, from a seeded stream.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipStep {
    pub vertex: usize,
    pub gain: ExactWeight,
    pub value_after: ExactWeight,
    /// Number of improving flips that were available at this step.
    pub candidates: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlipTerminal {
    LocalOptimum,
    StepLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipTrace {
    pub initial_value: ExactWeight,
    pub steps: Vec<FlipStep>,
    pub terminal: FlipTerminal,
    pub final_cut: Cut,
}

impl FlipTrace {
    pub fn vertices(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.vertex).collect()
    }
}

pub fn run_flip(
    inst: &MaxCutInstance,
    cut: &Cut,
    pivot: Pivot,
    step_limit: usize,
) -> Result<FlipTrace> {
    let mut cut = cut.clone();
    let initial_value = cut_value(inst, &cut)?;
    let mut value = initial_value.clone();
    let mut rng = match pivot {
        Pivot::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut steps = Vec::new();
    let terminal = loop {
        let mut improving: Vec<(usize, ExactWeight)> = Vec::new();
        for v in 0..inst.num_vertices() {
            let g = flip_gain(inst, &cut, v)?;
            if g.is_positive() {
                improving.push((v, g));
            }
        }
        if improving.is_empty() {
            break FlipTerminal::LocalOptimum;
        }
        if steps.len() >= step_limit {
            break FlipTerminal::StepLimit;
        }
        let candidates = improving.len();
        let (v, gain) = match pivot {
            Pivot::First => improving.swap_remove(0),
            Pivot::Steepest => {
                let mut best = 0;
                for i in 1..improving.len() {
                    if improving[i].1 > improving[best].1 {
                        best = i;
                    }
                }
                improving.swap_remove(best)
            }
            Pivot::Random(_) => {
                let rng = rng.as_mut().expect("seeded for random pivot");
                improving.choose(rng).cloned().expect("non-empty")
            }
        };
        cut.flip(v);
        value += &gain;
        steps.push(FlipStep {
            vertex: v,
            gain,
            value_after: value.clone(),
            candidates,
        });
    };
    Ok(FlipTrace {
        initial_value,
        steps,
        terminal,
        final_cut: cut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::{improving_flips, random_instance, Side};
    use proptest::prelude::*;

    #[test]
    fn zero_limit_gives_empty_trace() {
        let inst = random_instance(4, 3, 3, 1);
        let t = run_flip(&inst, &Cut::uniform(4, Side::First), Pivot::First, 0).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal, FlipTerminal::StepLimit);
    }

    #[test]
    fn local_optimum_gives_empty_trace() {
        let inst = random_instance(5, 4, 4, 7);
        let t = run_flip(&inst, &Cut::uniform(5, Side::First), Pivot::Steepest, 1000).unwrap();
        let again = run_flip(&inst, &t.final_cut, Pivot::First, 1000).unwrap();
        assert!(again.steps.is_empty());
        assert_eq!(again.terminal, FlipTerminal::LocalOptimum);
    }

    proptest! {
        #[test]
        fn traces_strictly_increase(seed in 0u64..300, n in 2usize..8, mask in 0u64..256, rule in 0u8..3) {
            let inst = random_instance(n, 4, 6, seed);
            let pivot = match rule { 0 => Pivot::First, 1 => Pivot::Steepest, _ => Pivot::Random(seed) };
            let t = run_flip(&inst, &Cut::from_mask(n, mask), pivot, 10_000).unwrap();
            let mut prev = t.initial_value.clone();
            for s in &t.steps {
                prop_assert!(s.gain.is_positive());
                prop_assert!(s.value_after > prev);
                prev = s.value_after.clone();
            }
            prop_assert_eq!(t.terminal, FlipTerminal::LocalOptimum);
            prop_assert!(improving_flips(&inst, &t.final_cut).unwrap().is_empty());
        }
    }
}
