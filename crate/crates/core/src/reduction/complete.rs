use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::compile::{EdgeKind, SparseTsp};
use crate::error::{input, Error, Result};
use crate::gadget::Terminal;
use crate::weight::ExactWeight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompletionMode {
    /// Every non-edge weighs one more than all edges of `G` together.
    Huge,
    /// Non-edge `uv` weighs `M * 3^max(phi(u), phi(v))`.
    Priority,
}

impl std::str::FromStr for CompletionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "huge" => Ok(CompletionMode::Huge),
            "priority" => Ok(CompletionMode::Priority),
            _ => input(format!("unknown completion mode `{s}`")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CompleteTspData {
    sparse: SparseTsp,
    mode: CompletionMode,
    priorities: Option<Vec<usize>>,
    m: ExactWeight,
    huge: ExactWeight,
}

/// `G` completed to the complete graph on its vertices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(from = "CompleteTspData", into = "CompleteTspData")]
pub struct CompleteTsp {
    sparse: SparseTsp,
    mode: CompletionMode,
    priorities: Option<Vec<usize>>,
    m: ExactWeight,
    huge: ExactWeight,
    pow3: Vec<BigInt>,
}

impl PartialEq for CompleteTsp {
    fn eq(&self, o: &Self) -> bool {
        self.sparse == o.sparse && self.mode == o.mode && self.priorities == o.priorities && self.m == o.m
    }
}

impl From<CompleteTspData> for CompleteTsp {
    fn from(d: CompleteTspData) -> Self {
        let pow3 = powers(d.priorities.as_ref().map_or(0, |p| p.len()));
        CompleteTsp {
            sparse: d.sparse,
            mode: d.mode,
            priorities: d.priorities,
            m: d.m,
            huge: d.huge,
            pow3,
        }
    }
}

impl From<CompleteTsp> for CompleteTspData {
    fn from(c: CompleteTsp) -> Self {
        CompleteTspData {
            sparse: c.sparse,
            mode: c.mode,
            priorities: c.priorities,
            m: c.m,
            huge: c.huge,
        }
    }
}

fn powers(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut x = BigInt::from(1);
    for _ in 0..=n {
        out.push(x.clone());
        x *= 3;
    }
    out
}

impl CompleteTsp {
    pub fn sparse(&self) -> &SparseTsp {
        &self.sparse
    }

    pub fn mode(&self) -> CompletionMode {
        self.mode
    }

    /// `phi` per vertex, in priority mode.
    pub fn priorities(&self) -> Option<&[usize]> {
        self.priorities.as_deref()
    }

    /// The constant `M`: the largest edge weight of `G`, at least one.
    pub fn m(&self) -> &ExactWeight {
        &self.m
    }

    pub fn non_edge_weight(&self, u: usize, v: usize) -> ExactWeight {
        match (&self.priorities, self.mode) {
            (Some(phi), CompletionMode::Priority) => self.m.scale(&self.pow3[phi[u].max(phi[v])]),
            _ => self.huge.clone(),
        }
    }

    /// Weight of `uv` for `u != v`.
    pub fn weight(&self, u: usize, v: usize) -> ExactWeight {
        match self.sparse.weight(u, v) {
            Some(w) => w.clone(),
            None => self.non_edge_weight(u, v),
        }
    }

    pub fn is_non_edge(&self, u: usize, v: usize) -> bool {
        self.sparse.edge_id(u, v).is_none()
    }
}

pub fn complete_graph(tsp: &SparseTsp, mode: CompletionMode) -> Result<CompleteTsp> {
    let huge = tsp.total_weight() + ExactWeight::int(1);
    let mut m = tsp.max_weight();
    if m < ExactWeight::int(1) {
        m = ExactWeight::int(1);
    }
    let priorities = match mode {
        CompletionMode::Huge => None,
        CompletionMode::Priority => Some(priority_assignment(tsp)?),
    };
    Ok(CompleteTspData {
        sparse: tsp.clone(),
        mode,
        priorities,
        m,
        huge,
    }
    .into())
}

/// Gadget vertex names in decreasing priority.
const SIMPLE_ORDER: [&str; 10] = ["Y", "X", "b", "X'", "b'", "a'", "Z", "Z'", "a", "Y'"];

/// Priorities `1..=N`, handed out from `N` downwards: degree-two vertices
/// by id, then every `x_l`, then per H-vertex its first rail, `x_r` and
/// second rail, then every simple gadget in ψ order.
pub fn priority_assignment(tsp: &SparseTsp) -> Result<Vec<usize>> {
    if !tsp.is_pls() {
        return input("priority assignment needs a PLS compile");
    }
    let n = tsp.num_vertices();
    let mut phi = vec![0usize; n];
    let mut next = n;
    let mut give = |v: usize, phi: &mut Vec<usize>| -> Result<()> {
        if phi[v] != 0 {
            return Err(Error::Structure(format!("{} gets two priorities", tsp.name(v))));
        }
        phi[v] = next;
        next -= 1;
        Ok(())
    };
    for v in 0..n {
        if tsp.degree(v) == 2 {
            give(v, &mut phi)?;
        }
    }
    for x in 0..tsp.h_vertex_count() {
        give(tsp.h_meta(x).left, &mut phi)?;
    }
    for x in 0..tsp.h_vertex_count() {
        let meta = tsp.h_meta(x);
        for &a in &meta.rail_a {
            give(a, &mut phi)?;
        }
        give(meta.right, &mut phi)?;
        for b in meta.second_rail() {
            give(b, &mut phi)?;
        }
    }
    let mut order: Vec<usize> = (0..tsp.gadgets().len()).collect();
    order.sort_by_key(|&g| tsp.gadgets()[g].psi);
    for gi in order {
        let g = &tsp.gadgets()[gi];
        for name in SIMPLE_ORDER {
            let v = g
                .local_vertex(name)
                .ok_or_else(|| Error::Structure(format!("gadget {gi} has no vertex {name}")))?;
            give(v, &mut phi)?;
        }
    }
    if let Some(v) = (0..n).find(|&v| phi[v] == 0) {
        return Err(Error::Structure(format!("{} got no priority", tsp.name(v))));
    }
    Ok(phi)
}

/// Edges of `G` grouped for display: `(edge id, role label)`.
pub fn role_label(kind: &EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Cycle => "cycle",
        EdgeKind::Forced { .. } => "forced",
        EdgeKind::LeftFirstSet { .. } => "first_set_left",
        EdgeKind::RightFirstSet { .. } => "first_set_right",
        EdgeKind::RightSecondSet { .. } => "second_set_right",
        EdgeKind::Door { .. } => "door",
        EdgeKind::Rail { .. } => "rail",
        EdgeKind::Rung { .. } => "rung",
        EdgeKind::Gadget { .. } => "gadget",
    }
}

/// Whether `v` is a gadget terminal of the given kind.
pub fn is_terminal(tsp: &SparseTsp, v: usize, t: Terminal) -> bool {
    tsp.gadgets().iter().any(|g| g.gadget.terminal(t).map(|l| g.vertex_map[l]) == Some(v))
}
