//! Tours, k-swaps, x-changes and the k-Opt engine.

mod kopt;
mod three_opt;
mod tour;
mod xchange;

pub use kopt::{improving_k_swap_neighbors, run_kopt, KoptTerminal, Neighborhood, SwapStep, SwapTrace};
pub use three_opt::{brute_force_improving_3swaps, find_improving_3swap, improving_3swaps};
pub use tour::{norm, Pair, Swap, Tour};
pub use xchange::{gadget_mask, side_at, x_change};

use crate::error::{Error, Result};
use crate::reduction::{CompleteTsp, SparseTsp};
use crate::weight::ExactWeight;

/// Edge weights over a vertex set; `None` marks a missing edge.
pub trait Weights {
    fn num_vertices(&self) -> usize;
    fn weight_of(&self, u: usize, v: usize) -> Option<ExactWeight>;
}

impl Weights for SparseTsp {
    fn num_vertices(&self) -> usize {
        SparseTsp::num_vertices(self)
    }

    fn weight_of(&self, u: usize, v: usize) -> Option<ExactWeight> {
        self.weight(u, v).cloned()
    }
}

impl Weights for CompleteTsp {
    fn num_vertices(&self) -> usize {
        self.sparse().num_vertices()
    }

    fn weight_of(&self, u: usize, v: usize) -> Option<ExactWeight> {
        (u != v).then(|| self.weight(u, v))
    }
}

/// Spanning, 2-regular and connected on `n` vertices.
pub fn is_tour(n: usize, tour: &Tour) -> bool {
    tour.order(n).is_some()
}

/// A tour of `G` that only uses edges of `G`.
pub fn is_tour_sparse(tsp: &SparseTsp, tour: &Tour) -> bool {
    is_tour(tsp.num_vertices(), tour) && tour.edges().iter().all(|&(u, v)| tsp.edge_id(u, v).is_some())
}

pub fn tour_weight<W: Weights + ?Sized>(w: &W, tour: &Tour) -> Result<ExactWeight> {
    let mut total = ExactWeight::zero();
    for &(u, v) in tour.edges() {
        total += &w
            .weight_of(u, v)
            .ok_or_else(|| Error::Input(format!("tour uses unknown edge {u}-{v}")))?;
    }
    Ok(total)
}

/// Weight change of a swap: added minus removed.
pub fn swap_delta<W: Weights + ?Sized>(w: &W, swap: &Swap) -> Result<ExactWeight> {
    let sum = |es: &[Pair]| -> Result<ExactWeight> {
        let mut s = ExactWeight::zero();
        for &(u, v) in es {
            s += &w
                .weight_of(u, v)
                .ok_or_else(|| Error::Input(format!("swap uses unknown edge {u}-{v}")))?;
        }
        Ok(s)
    };
    Ok(sum(&swap.added)? - sum(&swap.removed)?)
}

/// `(tour \ removed) ∪ added`, rejected unless well formed and a tour on `n` vertices.
pub fn apply_swap(n: usize, tour: &Tour, swap: &Swap) -> Result<Tour> {
    if swap.removed.len() != swap.added.len() {
        return Err(Error::InvalidSwap(format!(
            "removes {} edges but adds {}",
            swap.removed.len(),
            swap.added.len()
        )));
    }
    if let Some(e) = swap.removed.iter().find(|e| !tour.contains(e.0, e.1)) {
        return Err(Error::InvalidSwap(format!("removed edge {e:?} is not in the tour")));
    }
    if let Some(e) = swap.added.iter().find(|e| tour.contains(e.0, e.1)) {
        return Err(Error::InvalidSwap(format!("added edge {e:?} is already in the tour")));
    }
    let kept = tour.edges().iter().filter(|e| swap.removed.binary_search(e).is_err()).copied();
    let out = Tour::from_edges(kept.chain(swap.added.iter().copied()));
    if !is_tour(n, &out) {
        return Err(Error::InvalidSwap("result is not a tour".into()));
    }
    Ok(out)
}
