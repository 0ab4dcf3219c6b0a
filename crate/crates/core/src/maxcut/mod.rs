//! Max-Cut instances, cuts and the Flip local search.

mod flip;
mod michel_scott;
mod random;

pub use flip::{run_flip, FlipStep, FlipTerminal, FlipTrace, Pivot};
pub use michel_scott::{
    build_michel_scott, build_modified_michel_scott, predicted_modified_sequence,
    predicted_sequence, HVertexId,
};
pub use random::random_instance;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::weight::ExactWeight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HEdge {
    pub u: usize,
    pub v: usize,
    pub w: ExactWeight,
}

impl HEdge {
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// Lexicographic key on (smaller endpoint, larger endpoint).
    pub fn psi_key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// A weighted simple undirected graph with named vertices.
///
/// Vertex order matters: pivot rules break ties by index and the edge
/// order `psi` is defined on indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCutInstance {
    names: Vec<String>,
    edges: Vec<HEdge>,
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<String, usize>,
}

impl MaxCutInstance {
    pub fn new(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, ExactWeight)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return input(format!("duplicate vertex `{name}`"));
            }
        }
        let mut adj = vec![Vec::new(); names.len()];
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (u, v, w) in edges {
            if u >= names.len() || v >= names.len() {
                return input(format!("edge ({u},{v}) references a missing vertex"));
            }
            if u == v {
                return input(format!("self-loop at `{}`", names[u]));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return input(format!("parallel edge {}-{}", names[u], names[v]));
            }
            let id = out.len();
            adj[u].push((v, id));
            adj[v].push((u, id));
            out.push(HEdge { u, v, w });
        }
        Ok(MaxCutInstance {
            names,
            edges: out,
            adj,
            index,
        })
    }

    pub fn from_named(
        names: Vec<String>,
        edges: Vec<(String, String, ExactWeight)>,
    ) -> Result<Self> {
        let lookup: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut idx = Vec::with_capacity(edges.len());
        for (a, b, w) in edges {
            let u = *lookup.get(a.as_str()).ok_or(Error::UnknownVertex(a.clone()))?;
            let v = *lookup.get(b.as_str()).ok_or(Error::UnknownVertex(b.clone()))?;
            idx.push((u, v, w));
        }
        Self::new(names, idx)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[HEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &HEdge {
        &self.edges[e]
    }

    /// `(neighbour, edge id)` pairs in insertion order.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].iter().find(|&&(n, _)| n == v).map(|&(_, e)| e)
    }

    pub fn find_edge_by_name(&self, a: &str, b: &str) -> Result<usize> {
        let (u, v) = (self.vertex(a)?, self.vertex(b)?);
        self.find_edge(u, v)
            .ok_or_else(|| Error::Input(format!("no edge {a}-{b}")))
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.names.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(n, _) in &self.adj[v] {
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let n = self.names.len();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent_edge = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent_edge[w] = e;
                        queue.push_back(w);
                    } else if parent_edge[v] != e {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn total_abs_weight(&self) -> ExactWeight {
        self.edges
            .iter()
            .map(|e| {
                if e.w.is_negative() {
                    -e.w.clone()
                } else {
                    e.w.clone()
                }
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

/// A two-sided partition, indexed like the instance's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cut {
    side: Vec<Side>,
}

impl Cut {
    pub fn new(side: Vec<Side>) -> Self {
        Cut { side }
    }

    pub fn uniform(n: usize, side: Side) -> Self {
        Cut {
            side: vec![side; n],
        }
    }

    /// Bit `i` of `mask` set puts vertex `i` into the second set.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Cut {
            side: (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Side::Second
                    } else {
                        Side::First
                    }
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.side.is_empty()
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn flip(&mut self, v: usize) {
        self.side[v] = self.side[v].flipped();
    }

    pub fn flipped(&self, v: usize) -> Cut {
        let mut c = self.clone();
        c.flip(v);
        c
    }

    fn check(&self, inst: &MaxCutInstance) -> Result<()> {
        if self.side.len() != inst.num_vertices() {
            return input(format!(
                "cut covers {} vertices, instance has {}",
                self.side.len(),
                inst.num_vertices()
            ));
        }
        Ok(())
    }

    pub fn to_named(&self, inst: &MaxCutInstance) -> BTreeMap<String, Side> {
        self.side
            .iter()
            .enumerate()
            .map(|(i, &s)| (inst.name(i).to_string(), s))
            .collect()
    }

    pub fn from_named(inst: &MaxCutInstance, map: &BTreeMap<String, Side>) -> Result<Cut> {
        let mut side = vec![None; inst.num_vertices()];
        for (name, &s) in map {
            side[inst.vertex(name)?] = Some(s);
        }
        let side = side
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::Input(format!("cut misses `{}`", inst.name(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cut { side })
    }
}

pub fn cut_value(inst: &MaxCutInstance, cut: &Cut) -> Result<ExactWeight> {
    cut.check(inst)?;
    Ok(inst
        .edges()
        .iter()
        .filter(|e| cut.side(e.u) != cut.side(e.v))
        .map(|e| &e.w)
        .sum())
}

/// Change of the cut value when `v` switches sides.
pub fn flip_gain(inst: &MaxCutInstance, cut: &Cut, v: usize) -> Result<ExactWeight> {
    cut.check(inst)?;
    if v >= inst.num_vertices() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let mut gain = ExactWeight::zero();
    for &(n, e) in inst.incident(v) {
        let w = &inst.edge(e).w;
        if cut.side(n) == cut.side(v) {
            gain += w;
        } else {
            gain -= w;
        }
    }
    Ok(gain)
}

/// Vertices whose flip strictly increases the cut value, ascending.
pub fn improving_flips(inst: &MaxCutInstance, cut: &Cut) -> Result<Vec<usize>> {
    cut.check(inst)?;
    let mut out = Vec::new();
    for v in 0..inst.num_vertices() {
        if flip_gain(inst, cut, v)?.is_positive() {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> MaxCutInstance {
        MaxCutInstance::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                (0, 1, ExactWeight::int(1)),
                (1, 2, ExactWeight::int(1)),
                (0, 2, ExactWeight::int(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_cut_value() {
        let t = triangle();
        let cut = Cut::new(vec![Side::First, Side::Second, Side::Second]);
        assert_eq!(cut_value(&t, &cut).unwrap(), ExactWeight::int(2));
        let all = Cut::uniform(3, Side::First);
        assert_eq!(cut_value(&t, &all).unwrap(), ExactWeight::zero());
    }

    #[test]
    fn triangle_gains() {
        let t = triangle();
        let cut = Cut::new(vec![Side::First, Side::Second, Side::Second]);
        assert_eq!(flip_gain(&t, &cut, 0).unwrap(), ExactWeight::int(-2));
        let all = Cut::uniform(3, Side::First);
        assert_eq!(improving_flips(&t, &all).unwrap(), vec![0, 1, 2]);
        assert_eq!(improving_flips(&t, &cut).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn isolated_vertex_gain_is_zero() {
        let inst = MaxCutInstance::new(vec!["a".into()], vec![]).unwrap();
        let cut = Cut::uniform(1, Side::Second);
        assert!(flip_gain(&inst, &cut, 0).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_graphs() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(MaxCutInstance::new(names.clone(), vec![(0, 0, 1.into())]).is_err());
        assert!(MaxCutInstance::new(names.clone(), vec![(0, 2, 1.into())]).is_err());
        assert!(
            MaxCutInstance::new(names, vec![(0, 1, 1.into()), (1, 0, 2.into())]).is_err()
        );
        let t = triangle();
        assert!(cut_value(&t, &Cut::uniform(2, Side::First)).is_err());
        assert!(t.vertex("zz").is_err());
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(triangle().girth(), Some(3));
        let path = MaxCutInstance::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, 1.into()), (1, 2, 1.into())],
        )
        .unwrap();
        assert_eq!(path.girth(), None);
    }

    proptest! {
        #[test]
        fn gain_matches_value_difference(seed in 0u64..500, n in 2usize..7, mask in 0u64..128) {
            let inst = random_instance(n, 4, 5, seed);
            let cut = Cut::from_mask(n, mask);
            let before = cut_value(&inst, &cut).unwrap();
            for v in 0..n {
                let after = cut_value(&inst, &cut.flipped(v)).unwrap();
                prop_assert_eq!(flip_gain(&inst, &cut, v).unwrap(), after - &before);
            }
        }

        #[test]
        fn flip_is_an_involution(seed in 0u64..500, n in 2usize..7, mask in 0u64..128, v in 0usize..7) {
            let inst = random_instance(n, 4, 5, seed);
            let v = v % n;
            let cut = Cut::from_mask(n, mask);
            let once = cut.flipped(v);
            let g1 = flip_gain(&inst, &cut, v).unwrap();
            let g2 = flip_gain(&inst, &once, v).unwrap();
            prop_assert_eq!(once.flipped(v), cut);
            prop_assert!((g1 + g2).is_zero());
        }
    }
}
