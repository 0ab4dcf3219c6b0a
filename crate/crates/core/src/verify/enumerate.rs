use serde::{Deserialize, Serialize};

use crate::reduction::SparseTsp;
use crate::tsp::Tour;

/// Bounds on the exhaustive tour search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumCaps {
    pub states: u64,
    pub tours: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            states: 10_000_000,
            tours: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TourEnumeration {
    pub tours: Vec<Tour>,
    pub states: u64,
    /// A cap was hit; `tours` is partial.
    pub limited: bool,
}

const UNDECIDED: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

#[derive(Clone)]
struct State {
    edge: Vec<u8>,
    deg_in: Vec<u8>,
    avail: Vec<u8>,
    /// For a path endpoint, the other endpoint; `usize::MAX` otherwise.
    end: Vec<usize>,
    total_in: usize,
}

struct Search<'a> {
    g: &'a SparseTsp,
    caps: EnumCaps,
    states: u64,
    out: Vec<Tour>,
    limited: bool,
}

impl Search<'_> {
    fn set_out(&self, s: &mut State, e: usize, queue: &mut Vec<usize>) -> bool {
        s.edge[e] = OUT;
        let (u, v) = self.g.endpoints(e);
        for x in [u, v] {
            s.avail[x] -= 1;
            if s.avail[x] < 2 {
                return false;
            }
            queue.push(x);
        }
        true
    }

    fn set_in(&self, s: &mut State, e: usize, queue: &mut Vec<usize>) -> bool {
        let n = self.g.num_vertices();
        let (u, v) = self.g.endpoints(e);
        s.edge[e] = IN;
        s.deg_in[u] += 1;
        s.deg_in[v] += 1;
        if s.deg_in[u] > 2 || s.deg_in[v] > 2 {
            return false;
        }
        s.total_in += 1;
        let a = if s.end[u] == usize::MAX { u } else { s.end[u] };
        let b = if s.end[v] == usize::MAX { v } else { s.end[v] };
        if a == v {
            // Closed a cycle.
            return s.total_in == n;
        }
        if s.deg_in[u] == 2 {
            s.end[u] = usize::MAX;
        }
        if s.deg_in[v] == 2 {
            s.end[v] = usize::MAX;
        }
        s.end[a] = b;
        s.end[b] = a;
        queue.push(u);
        queue.push(v);
        if s.total_in + 1 < n {
            if let Some(c) = self.g.edge_id(a, b) {
                if s.edge[c] == UNDECIDED && !self.set_out(s, c, queue) {
                    return false;
                }
            }
        }
        true
    }

    fn propagate(&self, s: &mut State, mut queue: Vec<usize>) -> bool {
        while let Some(x) = queue.pop() {
            let undecided: Vec<usize> = self
                .g
                .incident(x)
                .iter()
                .map(|&(_, e)| e)
                .filter(|&e| s.edge[e] == UNDECIDED)
                .collect();
            if undecided.is_empty() {
                continue;
            }
            if s.deg_in[x] == 2 {
                for e in undecided {
                    if s.edge[e] == UNDECIDED && !self.set_out(s, e, &mut queue) {
                        return false;
                    }
                }
            } else if s.avail[x] == 2 {
                for e in undecided {
                    if s.edge[e] == UNDECIDED && !self.set_in(s, e, &mut queue) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, s: State) {
        self.states += 1;
        if self.states > self.caps.states || self.out.len() >= self.caps.tours {
            self.limited = true;
            return;
        }
        let n = self.g.num_vertices();
        if s.total_in == n {
            let ids = (0..s.edge.len()).filter(|&e| s.edge[e] == IN);
            self.out.push(self.g.tour_from_ids(ids));
            return;
        }
        // Branch on an undecided edge at the most constrained open vertex.
        let pick = (0..n)
            .filter(|&v| s.deg_in[v] < 2)
            .min_by_key(|&v| (s.avail[v], std::cmp::Reverse(s.deg_in[v])))
            .and_then(|v| {
                self.g
                    .incident(v)
                    .iter()
                    .map(|&(_, e)| e)
                    .find(|&e| s.edge[e] == UNDECIDED)
            });
        let Some(e) = pick else { return };
        let mut with = s.clone();
        let mut q = Vec::new();
        if self.set_in(&mut with, e, &mut q) && self.propagate(&mut with, q) {
            self.run(with);
        }
        if self.limited {
            return;
        }
        let mut without = s;
        let mut q = Vec::new();
        if self.set_out(&mut without, e, &mut q) && self.propagate(&mut without, q) {
            self.run(without);
        }
    }
}

/// All Hamiltonian cycles of `G`, by edge-state backtracking with
/// degree propagation: a vertex with two chosen edges drops the rest, a
/// vertex with two usable edges takes both, and an edge closing a short
/// cycle is dropped.
pub fn enumerate_tours(tsp: &SparseTsp, caps: EnumCaps) -> TourEnumeration {
    let n = tsp.num_vertices();
    let mut search = Search {
        g: tsp,
        caps,
        states: 0,
        out: Vec::new(),
        limited: false,
    };
    let s = State {
        edge: vec![UNDECIDED; tsp.num_edges()],
        deg_in: vec![0; n],
        avail: (0..n).map(|v| tsp.degree(v).min(255) as u8).collect(),
        end: vec![usize::MAX; n],
        total_in: 0,
    };
    if n >= 3 && s.avail.iter().all(|&d| d >= 2) {
        let mut s = s;
        if search.propagate(&mut s, (0..n).collect()) {
            search.run(s);
        }
    }
    let mut tours = search.out;
    tours.sort();
    TourEnumeration {
        tours,
        states: search.states,
        limited: search.limited,
    }
}
