use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::Check;
use crate::maxcut::Cut;
use crate::reduction::{initial_tour, CompleteTsp, CompletionMode};
use crate::tsp::{apply_swap, find_improving_3swap, Tour};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriorityAudit {
    pub checks: Vec<Check>,
}

impl PriorityAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

const SIMPLE_ORDER: [&str; 10] = ["Y", "X", "b", "X'", "b'", "a'", "Z", "Z'", "a", "Y'"];
const DEGREE_FOUR: [&str; 4] = ["Z", "Z'", "a", "Y'"];

/// Degree and priority structure of a priority-mode completion.
pub fn audit_priorities(c: &CompleteTsp) -> Result<PriorityAudit> {
    let phi = c
        .priorities()
        .ok_or_else(|| Error::Input("priority audit needs priority mode".into()))?;
    let g = c.sparse();
    let n = g.num_vertices();
    let mut rep = PriorityAudit { checks: Vec::new() };

    let bad_deg: Vec<&str> = (0..n).filter(|&v| !(2..=4).contains(&g.degree(v))).map(|v| g.name(v)).collect();
    rep.push("degrees in {2,3,4}", bad_deg.is_empty(), format!("{bad_deg:?}"));

    let lonely: Vec<&str> = (0..n)
        .filter(|&v| g.degree(v) != 2 && !g.incident(v).iter().any(|&(u, _)| g.degree(u) == 2))
        .map(|v| g.name(v))
        .collect();
    rep.push("degree two or next to degree two", lonely.is_empty(), format!("{lonely:?}"));

    let mut expected_four: Vec<usize> = Vec::new();
    for gi in g.gadgets() {
        for name in DEGREE_FOUR {
            expected_four.extend(gi.local_vertex(name));
        }
    }
    expected_four.sort_unstable();
    let four: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 4).collect();
    rep.push(
        "degree four exactly Z, Z', a, Y' of simple gadgets",
        four == expected_four && g.gadgets().iter().all(|gi| gi.is_simple()),
        format!("{} degree-four vertices, {} expected", four.len(), expected_four.len()),
    );

    let mut sorted = phi.to_vec();
    sorted.sort_unstable();
    rep.push(
        "priorities are 1..N",
        sorted == (1..=n).collect::<Vec<_>>(),
        format!("N = {n}"),
    );

    let n2 = (0..n).filter(|&v| g.degree(v) == 2).count();
    let top_ok = (0..n).all(|v| (g.degree(v) == 2) == (phi[v] > n - n2));
    rep.push("degree-two block on top", top_ok, format!("{n2} degree-two vertices"));

    let h = g.h_vertex_count();
    let left_ok = (0..h).all(|x| phi[g.h_meta(x).left] == n - n2 - x);
    rep.push("x_l block follows", left_ok, String::new());

    let mut ok = true;
    let mut next = n - n2 - h;
    for x in 0..h {
        let meta = g.h_meta(x);
        let mut seq = meta.rail_a.clone();
        seq.push(meta.right);
        seq.extend(meta.second_rail());
        for v in seq {
            ok &= phi[v] == next;
            next -= 1;
        }
    }
    rep.push("rails and x_r block follows", ok, String::new());

    let mut order: Vec<usize> = (0..g.gadgets().len()).collect();
    order.sort_by_key(|&i| g.gadgets()[i].psi);
    let mut ok = true;
    let mut three_before_four = true;
    for i in order {
        let gi = &g.gadgets()[i];
        let vs: Vec<Option<usize>> = SIMPLE_ORDER.iter().map(|s| gi.local_vertex(s)).collect();
        for v in vs {
            match v {
                Some(v) => {
                    ok &= phi[v] == next;
                    next = next.wrapping_sub(1);
                }
                None => ok = false,
            }
        }
        let min3 = SIMPLE_ORDER[..6].iter().filter_map(|s| gi.local_vertex(s)).map(|v| phi[v]).min();
        let max4 = DEGREE_FOUR.iter().filter_map(|s| gi.local_vertex(s)).map(|v| phi[v]).max();
        three_before_four &= matches!((min3, max4), (Some(a), Some(b)) if a > b);
    }
    rep.push("gadget blocks in ψ order, (Y,X,b,X',b',a',Z,Z',a,Y')", ok && next == 0, String::new());
    rep.push("degree three before degree four in each gadget", three_before_four, String::new());
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    /// Uniform random permutation.
    Uniform,
    /// A tour of `G` with a short window shuffled.
    Window,
    /// A tour of `G` with one vertex moved elsewhere.
    Relocate,
    /// A tour of `G` with one segment reversed.
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlsSampleReport {
    pub samples: usize,
    pub by_kind: Vec<(SampleKind, usize)>,
    pub successes: usize,
    /// Samples with a non-edge and no improving 3-swap.
    pub failures: Vec<Tour>,
}

impl PlsSampleReport {
    pub fn passed(&self) -> bool {
        self.samples > 0 && self.failures.is_empty() && self.successes == self.samples
    }
}

fn has_non_edge(c: &CompleteTsp, t: &Tour) -> bool {
    t.edges().iter().any(|&(u, v)| c.is_non_edge(u, v))
}

fn random_sparse_order(c: &CompleteTsp, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    let g = c.sparse();
    let h = g.h_vertex_count();
    let cut = Cut::from_mask(h, rng.gen::<u64>() & ((1u64 << h.min(63)) - 1));
    let t = initial_tour(g, &cut)?;
    t.order(g.num_vertices())
        .ok_or_else(|| Error::Structure("initial tour is not a tour".into()))
}

/// Draws `count` tours of the complete graph that use at least one
/// non-edge and asks for an improving 3-swap on each.
pub fn sample_nonedge_tours(c: &CompleteTsp, count: usize, seed: u64) -> Result<PlsSampleReport> {
    if c.mode() != CompletionMode::Priority {
        return Err(Error::Input("non-edge sampling needs priority mode".into()));
    }
    let n = c.sparse().num_vertices();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = [SampleKind::Uniform, SampleKind::Window, SampleKind::Relocate, SampleKind::Reverse];
    let mut rep = PlsSampleReport {
        samples: 0,
        by_kind: kinds.iter().map(|&k| (k, 0)).collect(),
        successes: 0,
        failures: Vec::new(),
    };
    let mut i = 0usize;
    while rep.samples < count {
        let kind = kinds[i % kinds.len()];
        i += 1;
        let order = match kind {
            SampleKind::Uniform => {
                let mut o: Vec<usize> = (0..n).collect();
                o.shuffle(&mut rng);
                o
            }
            SampleKind::Window => {
                let mut o = random_sparse_order(c, &mut rng)?;
                let len = rng.gen_range(3..=8.min(n));
                let s = rng.gen_range(0..=n - len);
                o[s..s + len].shuffle(&mut rng);
                o
            }
            SampleKind::Relocate => {
                let mut o = random_sparse_order(c, &mut rng)?;
                let v = o.remove(rng.gen_range(0..n));
                o.insert(rng.gen_range(0..n), v);
                o
            }
            SampleKind::Reverse => {
                let mut o = random_sparse_order(c, &mut rng)?;
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(a..n);
                o[a..=b].reverse();
                o
            }
        };
        let tour = Tour::from_order(&order);
        if !has_non_edge(c, &tour) {
            continue;
        }
        rep.samples += 1;
        rep.by_kind.iter_mut().find(|(k, _)| *k == kind).expect("listed").1 += 1;
        match find_improving_3swap(c, &tour)? {
            Some(_) => rep.successes += 1,
            None => rep.failures.push(tour),
        }
    }
    Ok(rep)
}

/// Applies improving 3-swaps until none is left, returning the final tour
/// and the number of swaps.
pub fn descend_3opt(c: &CompleteTsp, tour: &Tour, step_limit: usize) -> Result<(Tour, usize)> {
    let n = c.sparse().num_vertices();
    let mut t = tour.clone();
    let mut steps = 0;
    while steps < step_limit {
        match find_improving_3swap(c, &t)? {
            Some((s, _)) => {
                t = apply_swap(n, &t, &s)?;
                steps += 1;
            }
            None => break,
        }
    }
    Ok((t, steps))
}
