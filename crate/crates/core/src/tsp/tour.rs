use serde::{Deserialize, Serialize};

/// Unordered vertex pair with the smaller id first.
pub type Pair = (usize, usize);

pub fn norm(u: usize, v: usize) -> Pair {
    (u.min(v), u.max(v))
}

/// A tour as its sorted edge list. Validity is checked by
/// [`is_tour`](super::is_tour), not on construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tour {
    edges: Vec<Pair>,
}

impl Tour {
    pub fn from_edges(edges: impl IntoIterator<Item = Pair>) -> Self {
        let mut edges: Vec<Pair> = edges.into_iter().map(|(u, v)| norm(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        Tour { edges }
    }

    /// Tour visiting `order` cyclically.
    pub fn from_order(order: &[usize]) -> Self {
        let n = order.len();
        Self::from_edges((0..n).map(|i| (order[i], order[(i + 1) % n])))
    }

    pub fn edges(&self) -> &[Pair] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&norm(u, v)).is_ok()
    }

    /// `(self \ other, other \ self)`.
    pub fn difference(&self, other: &Tour) -> (Vec<Pair>, Vec<Pair>) {
        let only_self = self.edges.iter().filter(|e| !other.contains(e.0, e.1)).copied().collect();
        let only_other = other.edges.iter().filter(|e| !self.contains(e.0, e.1)).copied().collect();
        (only_self, only_other)
    }

    /// Number of edges to remove (and add) to turn `self` into `other`.
    pub fn distance(&self, other: &Tour) -> usize {
        self.edges.iter().filter(|e| !other.contains(e.0, e.1)).count()
    }

    /// Vertex sequence starting at the smallest vertex, or `None` if the
    /// edges do not form a single cycle through all listed vertices.
    pub fn order(&self, n: usize) -> Option<Vec<usize>> {
        if self.edges.len() != n || n < 3 {
            return None;
        }
        let mut adj = vec![[usize::MAX; 2]; n];
        for &(u, v) in &self.edges {
            for (a, b) in [(u, v), (v, u)] {
                if a >= n {
                    return None;
                }
                let slot = adj[a].iter_mut().find(|s| **s == usize::MAX)?;
                *slot = b;
            }
        }
        let mut order = Vec::with_capacity(n);
        let (mut prev, mut cur) = (usize::MAX, 0);
        for _ in 0..n {
            order.push(cur);
            let next = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
            if next == usize::MAX {
                return None;
            }
            prev = cur;
            cur = next;
        }
        (cur == 0 && {
            let mut seen = order.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == n
        })
        .then_some(order)
    }
}

/// Removed and added edge sets of a k-swap.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Swap {
    pub removed: Vec<Pair>,
    pub added: Vec<Pair>,
}

impl Swap {
    pub fn new(removed: impl IntoIterator<Item = Pair>, added: impl IntoIterator<Item = Pair>) -> Self {
        let fix = |it: Vec<Pair>| {
            let mut v: Vec<Pair> = it.into_iter().map(|(u, v)| norm(u, v)).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        Swap {
            removed: fix(removed.into_iter().collect()),
            added: fix(added.into_iter().collect()),
        }
    }

    /// The swap taking `from` to `to`.
    pub fn between(from: &Tour, to: &Tour) -> Self {
        let (r, a) = from.difference(to);
        Swap { removed: r, added: a }
    }

    pub fn size(&self) -> usize {
        self.removed.len().max(self.added.len())
    }

    pub fn reversed(&self) -> Swap {
        Swap {
            removed: self.added.clone(),
            added: self.removed.clone(),
        }
    }
}
