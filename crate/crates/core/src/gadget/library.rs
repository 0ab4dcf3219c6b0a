use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{EdgeRole, Gadget, GadgetEdge, Slot, Terminal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    Flexible,
    Simple42,
    Double222,
}

impl GadgetKind {
    pub fn build(self) -> Gadget {
        match self {
            GadgetKind::Flexible => flexible_gadget(),
            GadgetKind::Simple42 => simple_gadget_42(),
            GadgetKind::Double222 => double_gadget_222(),
        }
    }

    /// Swap counts `(r_x, r_y)` or `(r_x, r_y, r_t)`.
    pub fn spec(self) -> &'static [i64] {
        match self {
            GadgetKind::Flexible => &[2, 2],
            GadgetKind::Simple42 => &[4, 2],
            GadgetKind::Double222 => &[2, 2, 2],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Flexible => "flexible",
            GadgetKind::Simple42 => "simple42",
            GadgetKind::Double222 => "double222",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [GadgetKind::Flexible, GadgetKind::Simple42, GadgetKind::Double222]
            .into_iter()
            .find(|k| k.name() == s || (s == "simple" && *k == GadgetKind::Simple42)
                || (s == "double" && *k == GadgetKind::Double222))
    }
}

struct Builder {
    names: Vec<String>,
    edges: Vec<GadgetEdge>,
    terminals: BTreeMap<Terminal, usize>,
}

impl Builder {
    fn new(names: &[&str]) -> Self {
        let mut terminals = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if let Ok(t) = n.parse::<Terminal>() {
                terminals.insert(t, i);
            }
        }
        Builder {
            names: names.iter().map(|s| s.to_string()).collect(),
            edges: Vec::new(),
            terminals,
        }
    }

    fn id(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).expect("known vertex")
    }

    fn edge(&mut self, a: &str, b: &str, slots: &[Slot]) -> &mut Self {
        let (u, v) = (self.id(a), self.id(b));
        self.edges.push(GadgetEdge {
            u,
            v,
            role: EdgeRole::of(slots),
        });
        self
    }

    fn path(&mut self, names: &[&str]) -> &mut Self {
        for w in names.windows(2) {
            self.edge(w[0], w[1], &[]);
        }
        self
    }

    fn finish(self, name: &str) -> Gadget {
        Gadget::new(name, self.names, self.edges, self.terminals).expect("library gadget is well formed")
    }
}

/// The (2,2) gadget on `X, X', Y, Y', Z, Z', R, S`.
pub fn flexible_gadget() -> Gadget {
    use Slot::*;
    let mut b = Builder::new(&["X", "X'", "Y", "Y'", "Z", "Z'", "R", "S"]);
    b.path(&["Y'", "S", "Y", "Z'"])
        .path(&["Z", "X", "R", "X'"])
        .edge("Z", "Z'", &[Same])
        .edge("X'", "Y'", &[Same])
        .edge("Y'", "Z", &[Diff])
        .edge("X'", "Z'", &[Diff]);
    b.finish("flexible")
}

/// The (4,2) gadget: an order-3 ladder on rails `(X, b, a)` and
/// `(X', b', a')` with rungs `X-a'`, `b-b'`, `a-X'`, a length-two path
/// `Y - c - Y'`, and the four weighted edges `Y'a`, `ZZ'` (same) and
/// `Z'a`, `Y'Z` (diff).
pub fn simple_gadget_42() -> Gadget {
    use Slot::*;
    let mut b = Builder::new(&[
        "X", "X'", "Y", "Y'", "Z", "Z'", "b", "a", "b'", "a'", "m0", "m1", "m2", "c",
    ]);
    b.path(&["X", "b", "a"])
        .path(&["a'", "b'", "X'"])
        .path(&["X", "m0", "a'"])
        .path(&["b", "m1", "b'"])
        .path(&["a", "m2", "X'"])
        .path(&["Y", "c", "Y'"])
        .edge("Z", "a'", &[])
        .edge("Z'", "Y", &[])
        .edge("Y'", "a", &[Same])
        .edge("Z", "Z'", &[Same])
        .edge("Z'", "a", &[Diff])
        .edge("Y'", "Z", &[Diff]);
    b.finish("simple42")
}

/// The (2,2,2) gadget for two H-edges `xy`, `xt` sharing `x`.
///
/// Each pair `P` has a private path `P - s - P'`. Between `Z` and `Z'` the
/// blocks are chained in the order Y, X, T; a chain edge that jumps over a
/// set of blocks carries the weight of the cover in which exactly those
/// blocks form their own paths.
pub fn double_gadget_222() -> Gadget {
    use Slot::*;
    let mut b = Builder::new(&[
        "X", "X'", "Y", "Y'", "Z", "Z'", "T", "T'", "sX", "sY", "sT",
    ]);
    b.path(&["X", "sX", "X'"])
        .path(&["Y", "sY", "Y'"])
        .path(&["T", "sT", "T'"])
        .edge("Z", "Y", &[])
        .edge("Z", "X", &[Diff])
        .edge("Z", "T", &[Same, DiffT])
        .edge("Z", "Z'", &[Same, SameT])
        .edge("Y'", "X", &[Same])
        .edge("Y'", "T", &[Diff, DiffT])
        .edge("Y'", "Z'", &[Diff, SameT])
        .edge("X'", "T", &[SameT])
        .edge("X'", "Z'", &[DiffT])
        .edge("T'", "Z'", &[]);
    b.finish("double222")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let f = flexible_gadget();
        assert_eq!((f.num_vertices(), f.edges().len()), (8, 10));
        let s = simple_gadget_42();
        assert_eq!((s.num_vertices(), s.edges().len()), (14, 18));
        let d = double_gadget_222();
        assert_eq!((d.num_vertices(), d.edges().len()), (11, 16));
        assert!(d.is_double() && !s.is_double());
    }

    #[test]
    fn simple_gadget_degrees() {
        // Degree within the gadget plus the one external edge of each terminal.
        let g = simple_gadget_42();
        let mut deg = vec![0; g.num_vertices()];
        for e in g.edges() {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        for (&t, &v) in g.terminals() {
            let _ = t;
            deg[v] += 1;
        }
        let four: Vec<&str> = (0..g.num_vertices())
            .filter(|&v| deg[v] == 4)
            .map(|v| g.vertex_name(v))
            .collect();
        assert_eq!(four, vec!["Y'", "Z", "Z'", "a"]);
        assert!(deg.iter().all(|&d| (2..=4).contains(&d)));
    }

    #[test]
    fn names_resolve() {
        assert_eq!(GadgetKind::from_name("simple"), Some(GadgetKind::Simple42));
        assert_eq!(GadgetKind::from_name("flexible"), Some(GadgetKind::Flexible));
        assert_eq!(GadgetKind::from_name("double222"), Some(GadgetKind::Double222));
        assert_eq!(GadgetKind::from_name("nope"), None);
    }
}
