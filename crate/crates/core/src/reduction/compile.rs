use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::labeling::{orient_site, GadgetChoice, Labeling, LabelingKind, Site};
use crate::error::{input, Error, Result};
use crate::gadget::{canonical_covers, Gadget, Pair, SlotWeights, Terminal};
use crate::maxcut::{Cut, MaxCutInstance, Side};
use crate::tsp::{norm, Tour};
use crate::weight::ExactWeight;

/// What an edge of `G` is for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum EdgeKind {
    /// Cycle edge between an object edge and a degree-two spacer.
    Cycle,
    /// Cycle edge of an H-edge kept because its gadget is a double gadget.
    Forced { h_edge: usize },
    LeftFirstSet { x: usize },
    /// Only present when the XOR order is positive.
    RightFirstSet { x: usize },
    /// Only present when the XOR order is positive.
    RightSecondSet { x: usize },
    Door { x: usize },
    Rail { x: usize },
    Rung { x: usize },
    Gadget { gadget: usize, local: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TspEdge {
    pub u: usize,
    pub v: usize,
    pub w: ExactWeight,
    pub kind: EdgeKind,
}

/// Per-H-vertex structure in `G`. Edge fields hold edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVertexMeta {
    pub left: usize,
    pub right: usize,
    pub xor_order: usize,
    /// `a_1..a_p`; also the first rail from its start.
    pub rail_a: Vec<usize>,
    /// `b_1..b_p`.
    pub rail_b: Vec<usize>,
    pub rung_mid: Vec<usize>,
    pub left_first: usize,
    /// Equals `left_first` for order zero.
    pub right_first: usize,
    /// Equals the closest door for order zero.
    pub right_second: usize,
    /// Doors from `x_l` on; the last one is the closest door to `x_r`.
    pub doors: Vec<usize>,
    /// XOR internal edges of the subtour meeting the first-set edges.
    pub xor_first: Vec<usize>,
    /// XOR internal edges of the subtour meeting the closest door.
    pub xor_second: Vec<usize>,
    /// Gadget slots along the second-set path.
    pub slots: Vec<(usize, Pair)>,
}

impl HVertexMeta {
    /// Second rail from its start `b_p`.
    pub fn second_rail(&self) -> Vec<usize> {
        self.rail_b.iter().rev().copied().collect()
    }

    /// Edge ids used by the first-set case outside the gadgets.
    pub fn first_case_edges(&self) -> Vec<usize> {
        let mut v = vec![self.left_first, self.right_first];
        v.extend_from_slice(&self.xor_first);
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Edge ids used by the second-set case outside the gadgets.
    pub fn second_case_edges(&self) -> Vec<usize> {
        let mut v = self.doors.clone();
        v.push(self.right_second);
        v.extend_from_slice(&self.xor_second);
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// A gadget spliced into `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetInstance {
    pub gadget: Gadget,
    pub site: Site,
    /// Related H-vertex for each pair, in pair order.
    pub pairs: Vec<(Pair, usize)>,
    /// Local vertex id to `G` vertex id.
    pub vertex_map: Vec<usize>,
    /// Local edge id to `G` edge id.
    pub edge_map: Vec<usize>,
    pub weights: SlotWeights,
    /// Canonical cover per presence mask, as sorted `G` edge ids.
    pub canonical: BTreeMap<u8, Vec<usize>>,
    /// Per pair, the doors at its left and right terminal.
    pub doors: Vec<(usize, usize)>,
    /// Ordering key along second-set paths.
    pub psi: (usize, usize),
}

impl GadgetInstance {
    /// Pair bitmask realised by the cut.
    pub fn mask_for(&self, cut: &Cut) -> u8 {
        self.pairs
            .iter()
            .filter(|&&(_, h)| cut.side(h) == Side::Second)
            .map(|(p, _)| p.bit())
            .sum()
    }

    pub fn pair_of(&self, h: usize) -> Option<Pair> {
        self.pairs.iter().find(|&&(_, v)| v == h).map(|&(p, _)| p)
    }

    pub fn is_simple(&self) -> bool {
        self.gadget.name() == "simple42"
    }

    pub fn local_vertex(&self, name: &str) -> Option<usize> {
        (0..self.gadget.num_vertices())
            .find(|&v| self.gadget.vertex_name(v) == name)
            .map(|v| self.vertex_map[v])
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SparseTspData {
    vertices: Vec<String>,
    edges: Vec<TspEdge>,
    metadata: Metadata,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Metadata {
    h_vertices: Vec<String>,
    h: Vec<HVertexMeta>,
    gadgets: Vec<GadgetInstance>,
    labeling: Labeling,
    pls: bool,
}

/// The sparse graph `G` with its construction metadata.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(from = "SparseTspData", into = "SparseTspData")]
pub struct SparseTsp {
    names: Vec<String>,
    edges: Vec<TspEdge>,
    h_names: Vec<String>,
    h: Vec<HVertexMeta>,
    gadgets: Vec<GadgetInstance>,
    labeling: Labeling,
    pls: bool,
    adj: Vec<Vec<(usize, usize)>>,
    index: HashMap<(usize, usize), usize>,
}

impl PartialEq for SparseTsp {
    fn eq(&self, o: &Self) -> bool {
        self.names == o.names
            && self.edges == o.edges
            && self.h_names == o.h_names
            && self.h == o.h
            && self.gadgets == o.gadgets
            && self.labeling == o.labeling
            && self.pls == o.pls
    }
}

impl From<SparseTspData> for SparseTsp {
    fn from(d: SparseTspData) -> Self {
        let m = d.metadata;
        let mut t = SparseTsp {
            names: d.vertices,
            edges: d.edges,
            h_names: m.h_vertices,
            h: m.h,
            gadgets: m.gadgets,
            labeling: m.labeling,
            pls: m.pls,
            adj: Vec::new(),
            index: HashMap::new(),
        };
        t.reindex();
        t
    }
}

impl From<SparseTsp> for SparseTspData {
    fn from(t: SparseTsp) -> Self {
        SparseTspData {
            vertices: t.names,
            edges: t.edges,
            metadata: Metadata {
                h_vertices: t.h_names,
                h: t.h,
                gadgets: t.gadgets,
                labeling: t.labeling,
                pls: t.pls,
            },
        }
    }
}

impl SparseTsp {
    fn reindex(&mut self) {
        self.adj = vec![Vec::new(); self.names.len()];
        self.index.clear();
        for (i, e) in self.edges.iter().enumerate() {
            self.adj[e.u].push((e.v, i));
            self.adj[e.v].push((e.u, i));
            self.index.insert(norm(e.u, e.v), i);
        }
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

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[TspEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &TspEdge {
        &self.edges[e]
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        norm(self.edges[e].u, self.edges[e].v)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&norm(u, v)).copied()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&ExactWeight> {
        self.edge_id(u, v).map(|e| &self.edges[e].w)
    }

    /// `(neighbour, edge id)` pairs.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn h_vertex_count(&self) -> usize {
        self.h.len()
    }

    pub fn h_name(&self, x: usize) -> &str {
        &self.h_names[x]
    }

    pub fn h_meta(&self, x: usize) -> &HVertexMeta {
        &self.h[x]
    }

    pub fn gadgets(&self) -> &[GadgetInstance] {
        &self.gadgets
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    /// Compiled from a PLS labeling (only simple gadgets, ψ layout).
    pub fn is_pls(&self) -> bool {
        self.pls
    }

    /// Gadgets related to H-vertex `x`, with the pair `x` occupies.
    pub fn gadgets_of(&self, x: usize) -> impl Iterator<Item = (usize, Pair)> + '_ {
        self.h[x].slots.iter().copied()
    }

    pub fn total_weight(&self) -> ExactWeight {
        self.edges.iter().map(|e| &e.w).sum()
    }

    pub fn max_weight(&self) -> ExactWeight {
        self.edges.iter().map(|e| e.w.clone()).max().unwrap_or_default()
    }

    pub fn tour_from_ids(&self, ids: impl IntoIterator<Item = usize>) -> Tour {
        Tour::from_edges(ids.into_iter().map(|e| self.endpoints(e)))
    }

    /// Edge ids of a tour's edges that belong to `G`; `None` if some edge
    /// is a non-edge.
    pub fn tour_ids(&self, tour: &Tour) -> Option<Vec<usize>> {
        tour.edges().iter().map(|&(u, v)| self.edge_id(u, v)).collect()
    }
}

struct Builder {
    names: Vec<String>,
    edges: Vec<TspEdge>,
}

impl Builder {
    fn vertex(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize, w: ExactWeight, kind: EdgeKind) -> usize {
        self.edges.push(TspEdge { u, v, w, kind });
        self.edges.len() - 1
    }

    fn plain(&mut self, u: usize, v: usize, kind: EdgeKind) -> usize {
        self.edge(u, v, ExactWeight::zero(), kind)
    }
}

/// Key ordering the slots of `x`'s second-set path.
fn slot_key(inst: &MaxCutInstance, site: &Site, pair: Pair) -> (usize, usize) {
    match (site, pair) {
        (&Site::Single { edge, .. }, _) => inst.edge(edge).psi_key(),
        (&Site::Joint { xy, .. }, Pair::Y) => inst.edge(xy).psi_key(),
        (&Site::Joint { xt, .. }, Pair::T) => inst.edge(xt).psi_key(),
        (&Site::Joint { xy, xt, .. }, Pair::X) => inst.edge(xy).psi_key().min(inst.edge(xt).psi_key()),
    }
}

fn site_weights(inst: &MaxCutInstance, site: &Site) -> SlotWeights {
    match *site {
        Site::Single { edge, .. } => SlotWeights::from_h_weight(&inst.edge(edge).w),
        Site::Joint { xy, xt, .. } => SlotWeights::double(&inst.edge(xy).w, &inst.edge(xt).w),
    }
}

/// Builds `G` for the instance and labeling.
///
/// Layout: a cycle of `3(n + m)` vertices `c_j`; object `o` (H-vertices
/// first, then H-edges) owns the cycle edge `c_{3o} c_{3o+1}` and every
/// `c_{3o+2}` is a degree-two spacer.
pub fn compile_tsp(inst: &MaxCutInstance, labeling: &Labeling, choice: &GadgetChoice) -> Result<SparseTsp> {
    labeling.validate(inst)?;
    let n = inst.num_vertices();
    let m = inst.num_edges();
    if let Some(v) = (0..n).find(|&v| inst.degree(v) == 0) {
        return input(format!("isolated H-vertex {}", inst.name(v)));
    }
    let sites: Vec<Site> = labeling
        .sites
        .iter()
        .map(|s| orient_site(s.clone(), choice))
        .collect::<Result<_>>()?;
    let pls = sites.iter().all(|s| s.signature() == [4, 2]);

    let mut b = Builder {
        names: Vec::new(),
        edges: Vec::new(),
    };
    let edge_name = |e: usize| {
        let he = inst.edge(e);
        format!("{}~{}", inst.name(he.u), inst.name(he.v))
    };
    let total = 3 * (n + m);
    for o in 0..n + m {
        let (a, c) = if o < n {
            (format!("{}.l", inst.name(o)), format!("{}.r", inst.name(o)))
        } else {
            (format!("{}.0", edge_name(o - n)), format!("{}.1", edge_name(o - n)))
        };
        b.vertex(a);
        b.vertex(c);
        b.vertex(format!("c{}", 3 * o + 2));
    }
    for o in 0..n + m {
        b.plain(3 * o + 1, 3 * o + 2, EdgeKind::Cycle);
        b.plain(3 * o + 2, (3 * o + 3) % total, EdgeKind::Cycle);
    }
    let mut z_of = vec![None; m];
    for (si, s) in sites.iter().enumerate() {
        z_of[s.z_edge()] = Some(si);
    }
    for (e, z) in z_of.iter().enumerate() {
        if z.is_none() {
            let o = n + e;
            b.plain(3 * o, 3 * o + 1, EdgeKind::Forced { h_edge: e });
        }
    }

    // Slots along each second-set path, with fresh terminal vertices.
    let pair_list = |s: &Site| -> Vec<(Pair, usize)> {
        s.vertices()
            .into_iter()
            .zip(Pair::ALL)
            .map(|(h, p)| (p, h))
            .collect()
    };
    let mut slots: Vec<Vec<(usize, Pair)>> = vec![Vec::new(); n];
    for (si, s) in sites.iter().enumerate() {
        for (p, h) in pair_list(s) {
            slots[h].push((si, p));
        }
    }
    let mut terminal_at: HashMap<(usize, Pair), (usize, usize)> = HashMap::new();
    for x in 0..n {
        slots[x].sort_by_key(|&(si, p)| slot_key(inst, &sites[si], p));
        for (j, &(si, p)) in slots[x].iter().enumerate() {
            let l = b.vertex(format!("{}.{}", inst.name(x), j + 1));
            let r = b.vertex(format!("{}.{}'", inst.name(x), j + 1));
            terminal_at.insert((si, p), (l, r));
        }
    }

    // Gadgets.
    let mut gadgets = Vec::with_capacity(sites.len());
    for (si, site) in sites.iter().enumerate() {
        let g = choice
            .get(&site.signature())
            .ok_or_else(|| Error::MissingGadget(site.signature()))?
            .clone();
        let pairs = pair_list(site);
        if g.pairs().len() != pairs.len() {
            return Err(Error::Structure(format!(
                "gadget {} has {} pairs, site needs {}",
                g.name(),
                g.pairs().len(),
                pairs.len()
            )));
        }
        let z = n + site.z_edge();
        let mut vertex_map = vec![usize::MAX; g.num_vertices()];
        vertex_map[g.terminal(Terminal::Z).unwrap()] = 3 * z;
        vertex_map[g.terminal(Terminal::Zp).unwrap()] = 3 * z + 1;
        for &(p, _) in &pairs {
            let (l, r) = terminal_at[&(si, p)];
            let (tl, tr) = p.terminals();
            vertex_map[g.terminal(tl).unwrap()] = l;
            vertex_map[g.terminal(tr).unwrap()] = r;
        }
        for v in 0..g.num_vertices() {
            if vertex_map[v] == usize::MAX {
                vertex_map[v] = b.vertex(format!("g{si}.{}", g.vertex_name(v)));
            }
        }
        let weights = site_weights(inst, site);
        let gid = gadgets.len();
        let edge_map: Vec<usize> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(local, e)| {
                b.edge(
                    vertex_map[e.u],
                    vertex_map[e.v],
                    weights.role_weight(&e.role),
                    EdgeKind::Gadget { gadget: gid, local },
                )
            })
            .collect();
        let mut canonical = BTreeMap::new();
        for (mask, covers) in canonical_covers(&g) {
            let mut ids: Vec<usize> = covers[0].edges.iter().map(|&e| edge_map[e]).collect();
            ids.sort_unstable();
            canonical.insert(mask, ids);
        }
        let full: u8 = g.pairs().iter().map(|p| p.bit()).sum();
        if let Some(missing) = (0..=full).find(|mk| !canonical.contains_key(mk)) {
            return Err(Error::Structure(format!(
                "gadget {} lacks a canonical cover for mask {missing}",
                g.name()
            )));
        }
        let psi = inst.edge(site.z_edge()).psi_key();
        gadgets.push(GadgetInstance {
            gadget: g,
            site: site.clone(),
            pairs,
            vertex_map,
            edge_map,
            weights,
            canonical,
            doors: Vec::new(),
            psi,
        });
    }

    // Second-set paths and XOR gadgets.
    let mut h = Vec::with_capacity(n);
    for x in 0..n {
        let (xl, xr) = (3 * x, 3 * x + 1);
        let p = usize::try_from(labeling.vertex_labels[x]).expect("validated nonnegative");
        let mut doors = Vec::new();
        let mut prev = xl;
        for &(si, pair) in &slots[x] {
            let (l, r) = terminal_at[&(si, pair)];
            doors.push(b.plain(prev, l, EdgeKind::Door { x }));
            prev = r;
        }
        let name = inst.name(x).to_string();
        let (mut rail_a, mut rail_b, mut rung_mid) = (Vec::new(), Vec::new(), Vec::new());
        let (left_first, right_first, right_second);
        let (mut xor_first, mut xor_second) = (Vec::new(), Vec::new());
        if p == 0 {
            left_first = b.plain(xl, xr, EdgeKind::LeftFirstSet { x });
            right_first = left_first;
            right_second = b.plain(prev, xr, EdgeKind::Door { x });
            doors.push(right_second);
        } else {
            for i in 1..=p {
                rail_a.push(b.vertex(format!("{name}.a{i}")));
            }
            for i in 1..=p {
                rail_b.push(b.vertex(format!("{name}.b{i}")));
            }
            for i in 1..=p {
                rung_mid.push(b.vertex(format!("{name}.m{i}")));
            }
            left_first = b.plain(xl, rail_a[0], EdgeKind::LeftFirstSet { x });
            let mut rungs = Vec::new();
            for i in 0..p {
                rungs.push(b.plain(rail_a[i], rung_mid[i], EdgeKind::Rung { x }));
                rungs.push(b.plain(rung_mid[i], rail_b[i], EdgeKind::Rung { x }));
            }
            xor_first.extend_from_slice(&rungs);
            xor_second.extend_from_slice(&rungs);
            // 1-based rail index i joins positions i and i + 1.
            for i in 1..p {
                let ea = b.plain(rail_a[i - 1], rail_a[i], EdgeKind::Rail { x });
                let eb = b.plain(rail_b[i - 1], rail_b[i], EdgeKind::Rail { x });
                if i % 2 == 0 {
                    xor_first.push(ea);
                    xor_second.push(eb);
                } else {
                    xor_first.push(eb);
                    xor_second.push(ea);
                }
            }
            let to_a = b.plain(xr, rail_a[p - 1], EdgeKind::RightFirstSet { x });
            let to_b = b.plain(xr, rail_b[p - 1], EdgeKind::RightFirstSet { x });
            let (f, s) = if p % 2 == 0 { (to_a, to_b) } else { (to_b, to_a) };
            b.edges[s].kind = EdgeKind::RightSecondSet { x };
            right_first = f;
            right_second = s;
            doors.push(b.plain(prev, rail_b[0], EdgeKind::Door { x }));
            xor_first.sort_unstable();
            xor_second.sort_unstable();
        }
        h.push(HVertexMeta {
            left: xl,
            right: xr,
            xor_order: p,
            rail_a,
            rail_b,
            rung_mid,
            left_first,
            right_first,
            right_second,
            doors,
            xor_first,
            xor_second,
            slots: slots[x].clone(),
        });
    }
    for meta in &h {
        for (j, &(si, pair)) in meta.slots.iter().enumerate() {
            let gi = &mut gadgets[si];
            let idx = gi.pairs.iter().position(|&(p, _)| p == pair).unwrap();
            if gi.doors.len() < gi.pairs.len() {
                gi.doors.resize(gi.pairs.len(), (usize::MAX, usize::MAX));
            }
            gi.doors[idx] = (meta.doors[j], meta.doors[j + 1]);
        }
    }

    let mut tsp = SparseTsp {
        names: b.names,
        edges: b.edges,
        h_names: inst.names().to_vec(),
        h,
        gadgets,
        labeling: Labeling {
            sites,
            ..labeling.clone()
        },
        pls: pls && labeling_is_pls(labeling),
        adj: Vec::new(),
        index: HashMap::new(),
    };
    tsp.reindex();
    if tsp.index.len() != tsp.edges.len() {
        return Err(Error::Structure("compiled graph has parallel edges".into()));
    }
    Ok(tsp)
}

fn labeling_is_pls(l: &Labeling) -> bool {
    l.k >= LabelingKind::Pls.min_k()
}

/// The tour encoding `cut`: plumbing edges, the first- or second-set
/// structure of every H-vertex and the canonical cover of every gadget.
pub fn initial_tour(tsp: &SparseTsp, cut: &Cut) -> Result<Tour> {
    if cut.len() != tsp.h_vertex_count() {
        return input(format!(
            "cut has {} sides for {} H-vertices",
            cut.len(),
            tsp.h_vertex_count()
        ));
    }
    let mut ids = Vec::with_capacity(tsp.num_vertices());
    for (e, te) in tsp.edges().iter().enumerate() {
        if matches!(te.kind, EdgeKind::Cycle | EdgeKind::Forced { .. }) {
            ids.push(e);
        }
    }
    for x in 0..tsp.h_vertex_count() {
        let meta = tsp.h_meta(x);
        match cut.side(x) {
            Side::First => ids.extend(meta.first_case_edges()),
            Side::Second => ids.extend(meta.second_case_edges()),
        }
    }
    for g in tsp.gadgets() {
        ids.extend_from_slice(&g.canonical[&g.mask_for(cut)]);
    }
    Ok(tsp.tour_from_ids(ids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::{build_michel_scott, random_instance};
    use crate::reduction::build_labeling;
    use crate::tsp::is_tour_sparse;

    fn single_edge(w: i64) -> MaxCutInstance {
        MaxCutInstance::new(
            vec!["x".into(), "y".into()],
            [(0, 1, ExactWeight::int(w))],
        )
        .unwrap()
    }

    #[test]
    fn single_edge_slots() {
        let inst = single_edge(5);
        let lab = build_labeling(LabelingKind::K13, &inst, 13).unwrap();
        let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).unwrap();
        assert_eq!(tsp.gadgets().len(), 1);
        let g = &tsp.gadgets()[0];
        assert_eq!((g.weights.same.clone(), g.weights.diff.clone()), (5.into(), 0.into()));
        for mask in 0..4u64 {
            let cut = Cut::from_mask(2, mask);
            let t = initial_tour(&tsp, &cut).unwrap();
            assert!(is_tour_sparse(&tsp, &t));
        }
    }

    #[test]
    fn degrees_and_spacers() {
        for seed in 0..40 {
            let inst = random_instance(5, 4, 4, seed);
            let lab = build_labeling(LabelingKind::K13, &inst, 13).unwrap();
            let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).unwrap();
            for v in 0..tsp.num_vertices() {
                let d = tsp.degree(v);
                assert!((2..=4).contains(&d), "{} has degree {d}", tsp.name(v));
                assert!(d == 2 || tsp.incident(v).iter().any(|&(u, _)| tsp.degree(u) == 2));
            }
            assert!(tsp.edges().iter().all(|e| !e.w.is_negative()));
        }
    }

    #[test]
    fn initial_tours_are_tours() {
        let (inst, cut) = build_michel_scott(1);
        let lab = build_labeling(LabelingKind::K9, &inst, 9).unwrap();
        let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).unwrap();
        assert!(is_tour_sparse(&tsp, &initial_tour(&tsp, &cut).unwrap()));
        for mask in [0u64, 0xfff, 0x5a5, 0x123] {
            let c = Cut::from_mask(inst.num_vertices(), mask);
            assert!(is_tour_sparse(&tsp, &initial_tour(&tsp, &c).unwrap()));
        }
    }

    #[test]
    fn json_round_trip() {
        let inst = random_instance(4, 3, 3, 7);
        let lab = build_labeling(LabelingKind::K13, &inst, 13).unwrap();
        let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).unwrap();
        let s = serde_json::to_string(&tsp).unwrap();
        let back: SparseTsp = serde_json::from_str(&s).unwrap();
        assert_eq!(back, tsp);
        assert_eq!(back.edge_id(0, 1), tsp.edge_id(0, 1));
    }
}
