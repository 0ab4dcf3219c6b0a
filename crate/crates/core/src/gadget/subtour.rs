use serde::{Deserialize, Serialize};

use super::{Gadget, Pair, Slot, SlotWeights, Terminal};
use crate::weight::ExactWeight;

/// A set of internal edges forming vertex-disjoint paths, with the
/// endpoint pairs of those paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubtourCover {
    /// Sorted local edge indices.
    pub edges: Vec<usize>,
    /// Endpoint pairs `(a, b)` with `a < b`, sorted.
    pub paths: Vec<(usize, usize)>,
}

impl SubtourCover {
    /// Decomposes an edge subset into paths; `None` if some vertex has
    /// degree above two or the subset contains a cycle. Isolated vertices
    /// are ignored.
    pub fn from_edges(g: &Gadget, edges: &[usize]) -> Option<SubtourCover> {
        let n = g.num_vertices();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &e in edges {
            let ge = &g.edges()[e];
            adj[ge.u].push(ge.v);
            adj[ge.v].push(ge.u);
        }
        if adj.iter().any(|a| a.len() > 2) {
            return None;
        }
        let mut visited = vec![false; n];
        let mut paths = Vec::new();
        for start in 0..n {
            if adj[start].len() != 1 || visited[start] {
                continue;
            }
            let (mut prev, mut cur) = (usize::MAX, start);
            loop {
                visited[cur] = true;
                let next = adj[cur].iter().copied().find(|&x| x != prev);
                match next {
                    Some(nx) if adj[cur].len() == 2 || cur == start => {
                        prev = cur;
                        cur = nx;
                    }
                    _ => break,
                }
            }
            paths.push((start.min(cur), start.max(cur)));
        }
        // Any vertex with an edge not reached from a path end lies on a cycle.
        if (0..n).any(|v| !adj[v].is_empty() && !visited[v]) {
            return None;
        }
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        paths.sort_unstable();
        Some(SubtourCover { edges, paths })
    }

    pub fn is_endpoint(&self, v: usize) -> bool {
        self.paths.iter().any(|&(a, b)| a == v || b == v)
    }

    pub fn has_path(&self, a: usize, b: usize) -> bool {
        self.paths.contains(&(a.min(b), a.max(b)))
    }

    fn pair_vertices(g: &Gadget, p: Pair) -> (usize, usize) {
        let (a, b) = p.terminals();
        (g.terminal(a).expect("pair present"), g.terminal(b).expect("pair present"))
    }

    pub fn pair_present(&self, g: &Gadget, p: Pair) -> bool {
        let (a, b) = Self::pair_vertices(g, p);
        self.has_path(a, b)
    }

    /// Bitmask of pairs (`Pair::bit`) that have their own path.
    pub fn presence(&self, g: &Gadget) -> u8 {
        g.pairs()
            .iter()
            .filter(|&&p| self.pair_present(g, p))
            .map(|p| p.bit())
            .sum()
    }

    /// True when every path joins `Z` to `Z'` or the two terminals of a pair.
    pub fn is_canonical(&self, g: &Gadget) -> bool {
        let z = (g.terminal(Terminal::Z).unwrap(), g.terminal(Terminal::Zp).unwrap());
        if !self.has_path(z.0, z.1) {
            return false;
        }
        self.paths.iter().all(|&(a, b)| {
            (a, b) == (z.0.min(z.1), z.0.max(z.1))
                || g.pairs().iter().any(|&p| {
                    let (x, y) = Self::pair_vertices(g, p);
                    (a, b) == (x.min(y), x.max(y))
                })
        })
    }

    /// Both terminals of every pair are endpoints, or neither is.
    pub fn locally_strict(&self, g: &Gadget) -> bool {
        g.pairs().iter().all(|&p| {
            let (a, b) = Self::pair_vertices(g, p);
            self.is_endpoint(a) == self.is_endpoint(b)
        })
    }

    /// If both terminals of a pair are endpoints, they end the same path.
    pub fn pairing_rule_holds(&self, g: &Gadget) -> bool {
        g.pairs().iter().all(|&p| {
            let (a, b) = Self::pair_vertices(g, p);
            !(self.is_endpoint(a) && self.is_endpoint(b)) || self.has_path(a, b)
        })
    }

    pub fn slot_count(&self, g: &Gadget, s: Slot) -> usize {
        self.edges.iter().map(|&e| g.edges()[e].role.count(s)).sum()
    }

    /// `(removed, added)` when changing from `self` to `other`.
    pub fn distance_to(&self, other: &SubtourCover) -> (usize, usize) {
        let removed = self.edges.iter().filter(|e| other.edges.binary_search(e).is_err()).count();
        let added = other.edges.iter().filter(|e| self.edges.binary_search(e).is_err()).count();
        (removed, added)
    }
}

fn degree_bounds(g: &Gadget, v: usize) -> (usize, usize) {
    match g.terminal_of(v) {
        Some(Terminal::Z) | Some(Terminal::Zp) => (1, 1),
        Some(_) => (1, 2),
        None => (2, 2),
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Acyclic edge subsets with every degree inside `bounds[v]`, by
/// backtracking with degree and union-find pruning.
pub(crate) fn path_covers(edges: &[(usize, usize)], bounds: &[(usize, usize)]) -> Vec<Vec<usize>> {
    struct Search<'a> {
        edges: &'a [(usize, usize)],
        bounds: &'a [(usize, usize)],
        deg: Vec<usize>,
        remaining: Vec<usize>,
        chosen: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    fn rec(s: &mut Search, i: usize, parent: Vec<usize>) {
        if i == s.edges.len() {
            if (0..s.deg.len()).all(|v| s.deg[v] >= s.bounds[v].0) {
                s.out.push(s.chosen.clone());
            }
            return;
        }
        let (u, v) = s.edges[i];
        s.remaining[u] -= 1;
        s.remaining[v] -= 1;
        if s.deg[u] < s.bounds[u].1 && s.deg[v] < s.bounds[v].1 {
            let mut p = parent.clone();
            let (ru, rv) = (find(&mut p, u), find(&mut p, v));
            if ru != rv {
                p[ru] = rv;
                s.deg[u] += 1;
                s.deg[v] += 1;
                s.chosen.push(i);
                rec(s, i + 1, p);
                s.chosen.pop();
                s.deg[u] -= 1;
                s.deg[v] -= 1;
            }
        }
        if s.deg[u] + s.remaining[u] >= s.bounds[u].0 && s.deg[v] + s.remaining[v] >= s.bounds[v].0 {
            rec(s, i + 1, parent);
        }
        s.remaining[u] += 1;
        s.remaining[v] += 1;
    }
    let n = bounds.len();
    let mut remaining = vec![0usize; n];
    for &(u, v) in edges {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let mut s = Search {
        edges,
        bounds,
        deg: vec![0; n],
        remaining,
        chosen: Vec::with_capacity(edges.len()),
        out: Vec::new(),
    };
    rec(&mut s, 0, (0..n).collect());
    s.out
}

/// Independent route for [`path_covers`]: every subset, degree filter, and
/// the forest test `|E| = |V| - #components`.
pub(crate) fn brute_force_path_covers(
    edges: &[(usize, usize)],
    bounds: &[(usize, usize)],
) -> Vec<Vec<usize>> {
    let n = bounds.len();
    let m = edges.len();
    assert!(m <= 24, "brute force is exponential in the edge count");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << m) {
        let mut deg = vec![0usize; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        if !(0..n).all(|v| (bounds[v].0..=bounds[v].1).contains(&deg[v])) {
            continue;
        }
        let mut comp = 0;
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            comp += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if mask.count_ones() as usize == n - comp {
            out.push((0..m).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

fn gadget_graph(g: &Gadget) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let edges = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let bounds = (0..g.num_vertices()).map(|v| degree_bounds(g, v)).collect();
    (edges, bounds)
}

/// All path covers of the gadget whose endpoints are terminals, with `Z`
/// and `Z'` always endpoints. With `require_local_strictness`, both
/// terminals of each pair must share endpoint status.
pub fn enumerate_subtours(g: &Gadget, require_local_strictness: bool) -> Vec<SubtourCover> {
    let (edges, bounds) = gadget_graph(g);
    let mut out: Vec<SubtourCover> = path_covers(&edges, &bounds)
        .into_iter()
        .map(|es| SubtourCover::from_edges(g, &es).expect("acyclic with degree at most two"))
        .filter(|c| !require_local_strictness || c.locally_strict(g))
        .collect();
    out.sort();
    out
}

/// Edge sets of all covers by exhaustive subset testing. Only for gadgets
/// with at most 24 edges.
pub fn brute_force_subtours(g: &Gadget) -> Vec<Vec<usize>> {
    let (edges, bounds) = gadget_graph(g);
    brute_force_path_covers(&edges, &bounds)
}

/// Total weight of the cover's edges under the given slot values.
pub fn subtour_weight(g: &Gadget, cover: &SubtourCover, w: &SlotWeights) -> ExactWeight {
    cover
        .edges
        .iter()
        .map(|&e| w.role_weight(&g.edges()[e].role))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::{double_gadget_222, flexible_gadget, simple_gadget_42};

    fn edge_sets(c: &[SubtourCover]) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = c.iter().map(|c| c.edges.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn backtracking_matches_brute_force() {
        for g in [flexible_gadget(), simple_gadget_42(), double_gadget_222()] {
            let fast = enumerate_subtours(&g, false);
            assert_eq!(edge_sets(&fast), brute_force_subtours(&g), "{}", g.name());
        }
    }

    #[test]
    fn cover_counts() {
        let count = |g: &Gadget| {
            let all = enumerate_subtours(g, false);
            let strict = all.iter().filter(|c| c.locally_strict(g)).count();
            (all.len(), strict, enumerate_subtours(g, true).len())
        };
        assert_eq!(count(&flexible_gadget()), (7, 4, 4));
        assert_eq!(count(&simple_gadget_42()), (4, 4, 4));
        assert_eq!(count(&double_gadget_222()), (27, 8, 8));
    }

    #[test]
    fn every_cover_ends_at_terminals() {
        for g in [flexible_gadget(), simple_gadget_42(), double_gadget_222()] {
            for c in enumerate_subtours(&g, false) {
                for &(a, b) in &c.paths {
                    assert!(g.terminal_of(a).is_some() && g.terminal_of(b).is_some());
                }
                let z = g.terminal(Terminal::Z).unwrap();
                let zp = g.terminal(Terminal::Zp).unwrap();
                assert!(c.is_endpoint(z) && c.is_endpoint(zp));
                let covered: usize = c.edges.len() + c.paths.len();
                assert_eq!(covered, g.num_vertices());
            }
        }
    }

    #[test]
    fn from_edges_rejects_cycles() {
        let g = flexible_gadget();
        let e = |a: &str, b: &str| {
            let id = |s: &str| (0..g.num_vertices()).find(|&v| g.vertex_name(v) == s).unwrap();
            g.find_edge(id(a), id(b)).unwrap()
        };
        // Z X R X' Z' Z closes a cycle.
        let cyc = [e("Z", "X"), e("X", "R"), e("R", "X'"), e("X'", "Z'"), e("Z", "Z'")];
        assert!(SubtourCover::from_edges(&g, &cyc).is_none());
    }

    #[test]
    fn flexible_weights() {
        let g = flexible_gadget();
        let covers = enumerate_subtours(&g, false);
        let w = SlotWeights::parity(5.into(), 3.into());
        let canon: Vec<&SubtourCover> = covers.iter().filter(|c| c.is_canonical(&g)).collect();
        assert_eq!(canon.len(), 4);
        for c in canon {
            let expect: ExactWeight = match c.presence(&g) {
                0 | 3 => 5.into(),
                _ => 3.into(),
            };
            assert_eq!(subtour_weight(&g, c, &w), expect);
        }
        // The cover using both different-set edges weighs 2 delta.
        let both_diff = covers
            .iter()
            .find(|c| c.slot_count(&g, Slot::Diff) == 2)
            .expect("exists");
        let w = SlotWeights::parity(0.into(), 3.into());
        assert_eq!(subtour_weight(&g, both_diff, &w), 6.into());
    }
}
