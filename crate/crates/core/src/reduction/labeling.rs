use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::gadget::{Gadget, GadgetKind};
use crate::maxcut::{HVertexId, MaxCutInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientMode {
    Degree4,
    Degree5,
}

/// Orients every H-edge by peeling maximal walks; returns `(tail, head)`
/// per edge id.
///
/// Each walk starts at the lowest vertex with an odd number of unoriented
/// edges (or the lowest with any, if none is odd) and always leaves by the
/// lowest unoriented edge id. Even-degree vertices end with in-degree equal
/// to out-degree; a degree-five vertex has in-degree at most three.
pub fn orient_edges(inst: &MaxCutInstance, mode: OrientMode) -> Result<Vec<(usize, usize)>> {
    let bound = match mode {
        OrientMode::Degree4 => 4,
        OrientMode::Degree5 => 5,
    };
    if inst.max_degree() > bound {
        return input(format!(
            "maximum degree {} exceeds {bound}",
            inst.max_degree()
        ));
    }
    let n = inst.num_vertices();
    let mut oriented: Vec<Option<(usize, usize)>> = vec![None; inst.num_edges()];
    let mut left: Vec<usize> = (0..n).map(|v| inst.degree(v)).collect();
    loop {
        let start = (0..n)
            .find(|&v| left[v] % 2 == 1)
            .or_else(|| (0..n).find(|&v| left[v] > 0));
        let Some(mut v) = start else { break };
        loop {
            let next = inst
                .incident(v)
                .iter()
                .filter(|&&(_, e)| oriented[e].is_none())
                .min_by_key(|&&(_, e)| e)
                .copied();
            let Some((w, e)) = next else { break };
            oriented[e] = Some((v, w));
            left[v] -= 1;
            left[w] -= 1;
            v = w;
        }
    }
    Ok(oriented.into_iter().map(|o| o.expect("every edge oriented")).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelingKind {
    K13,
    K9,
    K5,
    Pls,
}

impl LabelingKind {
    /// Smallest `k` the scheme supports.
    pub fn min_k(self) -> i64 {
        match self {
            LabelingKind::K13 => 13,
            LabelingKind::K9 => 9,
            LabelingKind::K5 => 5,
            LabelingKind::Pls => 17,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LabelingKind::K13 => "k13",
            LabelingKind::K9 => "k9",
            LabelingKind::K5 => "k5",
            LabelingKind::Pls => "pls",
        }
    }
}

impl fmt::Display for LabelingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LabelingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [LabelingKind::K13, LabelingKind::K9, LabelingKind::K5, LabelingKind::Pls]
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown labeling `{s}`")))
    }
}

/// One gadget placement. The gadget's `X` pair attaches to `x`, `Y` to `y`
/// and, for joint sites, `T` to `t`; the `Z` terminals replace the cycle
/// edge of `xy`, while the cycle edge of `xt` stays in place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Site {
    Single {
        edge: usize,
        x: usize,
        y: usize,
        lx: i64,
        ly: i64,
    },
    Joint {
        xy: usize,
        xt: usize,
        x: usize,
        y: usize,
        t: usize,
        lx: i64,
        ly: i64,
        lt: i64,
    },
}

impl Site {
    /// Label signature in pair order.
    pub fn signature(&self) -> Vec<i64> {
        match *self {
            Site::Single { lx, ly, .. } => vec![lx, ly],
            Site::Joint { lx, ly, lt, .. } => vec![lx, ly, lt],
        }
    }

    /// Related H-vertices in pair order.
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            Site::Single { x, y, .. } => vec![x, y],
            Site::Joint { x, y, t, .. } => vec![x, y, t],
        }
    }

    pub fn edges(&self) -> Vec<usize> {
        match *self {
            Site::Single { edge, .. } => vec![edge],
            Site::Joint { xy, xt, .. } => vec![xy, xt],
        }
    }

    /// The H-edge whose cycle edge the gadget's `Z` terminals replace.
    pub fn z_edge(&self) -> usize {
        match *self {
            Site::Single { edge, .. } => edge,
            Site::Joint { xy, .. } => xy,
        }
    }

    pub fn label_of(&self, v: usize) -> Option<i64> {
        self.vertices()
            .iter()
            .zip(self.signature())
            .find(|&(&u, _)| u == v)
            .map(|(_, l)| l)
    }
}

/// Gadget placements plus per-vertex labels; `k - 1` is the target label sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub k: i64,
    pub sites: Vec<Site>,
    pub vertex_labels: Vec<i64>,
}

impl Labeling {
    pub fn s(&self) -> i64 {
        self.k - 1
    }

    /// `L(x)` plus every site label at `x`.
    pub fn label_sum(&self, x: usize) -> i64 {
        self.vertex_labels[x] + self.sites.iter().filter_map(|s| s.label_of(x)).sum::<i64>()
    }

    /// `(H-vertex, H-edge) -> label` for singly labeled edges.
    pub fn edge_labels(&self) -> BTreeMap<(usize, usize), i64> {
        let mut out = BTreeMap::new();
        for s in &self.sites {
            if let Site::Single { edge, x, y, lx, ly } = *s {
                out.insert((x, edge), lx);
                out.insert((y, edge), ly);
            }
        }
        out
    }

    /// Checks coverage, endpoint consistency, nonnegative vertex labels and
    /// the exact label sum `k - 1` at every vertex.
    pub fn validate(&self, inst: &MaxCutInstance) -> Result<()> {
        let n = inst.num_vertices();
        if self.vertex_labels.len() != n {
            return input(format!(
                "{} vertex labels for {n} vertices",
                self.vertex_labels.len()
            ));
        }
        let mut covered = vec![0usize; inst.num_edges()];
        for site in &self.sites {
            for e in site.edges() {
                if e >= inst.num_edges() {
                    return input(format!("site references unknown edge {e}"));
                }
                covered[e] += 1;
            }
            let ends_ok = match *site {
                Site::Single { edge, x, y, .. } => {
                    let he = inst.edge(edge);
                    x != y && he.other(x) == y && (he.u == x || he.v == x)
                }
                Site::Joint { xy, xt, x, y, t, .. } => {
                    let (a, b) = (inst.edge(xy), inst.edge(xt));
                    xy != xt
                        && (a.u == x || a.v == x)
                        && (b.u == x || b.v == x)
                        && a.other(x) == y
                        && b.other(x) == t
                }
            };
            if !ends_ok {
                return input(format!("site {site:?} does not match its H-edges"));
            }
        }
        if let Some(e) = covered.iter().position(|&c| c != 1) {
            let he = inst.edge(e);
            return input(format!(
                "edge {}-{} is covered by {} sites",
                inst.name(he.u),
                inst.name(he.v),
                covered[e]
            ));
        }
        for x in 0..n {
            if self.vertex_labels[x] < 0 {
                return input(format!("negative label at {}", inst.name(x)));
            }
            let sum = self.label_sum(x);
            if sum != self.s() {
                return input(format!(
                    "label sum {sum} at {} differs from k-1 = {}",
                    inst.name(x),
                    self.s()
                ));
            }
        }
        Ok(())
    }
}

/// Gadgets available for label signatures.
#[derive(Clone, Debug)]
pub struct GadgetChoice {
    table: BTreeMap<Vec<i64>, Gadget>,
}

impl GadgetChoice {
    /// Flexible for (2,2), simple for (4,2), double for (2,2,2).
    pub fn standard() -> Self {
        let mut table = BTreeMap::new();
        for kind in [GadgetKind::Flexible, GadgetKind::Simple42, GadgetKind::Double222] {
            table.insert(kind.spec().to_vec(), kind.build());
        }
        GadgetChoice { table }
    }

    pub fn insert(&mut self, signature: Vec<i64>, g: Gadget) {
        self.table.insert(signature, g);
    }

    pub fn get(&self, signature: &[i64]) -> Option<&Gadget> {
        self.table.get(signature)
    }
}

impl Default for GadgetChoice {
    fn default() -> Self {
        Self::standard()
    }
}

/// Puts the larger label on the `X` side of a single site; joint sites keep
/// their centre as `x` and order `y`, `t` so the signature is available.
pub fn orient_site(site: Site, choice: &GadgetChoice) -> Result<Site> {
    match site {
        Site::Single { edge, x, y, lx, ly } => {
            if choice.get(&[lx, ly]).is_some() {
                Ok(site)
            } else if choice.get(&[ly, lx]).is_some() {
                Ok(Site::Single {
                    edge,
                    x: y,
                    y: x,
                    lx: ly,
                    ly: lx,
                })
            } else {
                Err(Error::MissingGadget(vec![lx, ly]))
            }
        }
        Site::Joint { lx, ly, lt, .. } => {
            if choice.get(&[lx, ly, lt]).is_some() {
                Ok(site)
            } else {
                Err(Error::MissingGadget(vec![lx, ly, lt]))
            }
        }
    }
}

fn fill_vertex_labels(inst: &MaxCutInstance, k: i64, sites: Vec<Site>) -> Labeling {
    let mut lab = Labeling {
        k,
        sites,
        vertex_labels: vec![0; inst.num_vertices()],
    };
    for x in 0..inst.num_vertices() {
        lab.vertex_labels[x] = k - 1 - lab.label_sum(x);
    }
    lab
}

/// Builds one of the four labeling schemes.
pub fn build_labeling(kind: LabelingKind, inst: &MaxCutInstance, k: i64) -> Result<Labeling> {
    if k < kind.min_k() {
        return input(format!("{kind} labeling needs k >= {}, got {k}", kind.min_k()));
    }
    if let Some(v) = (0..inst.num_vertices()).find(|&v| inst.degree(v) == 0) {
        return input(format!("isolated H-vertex {}", inst.name(v)));
    }
    let lab = match kind {
        LabelingKind::K13 => head_tail(inst, k, OrientMode::Degree4)?,
        LabelingKind::Pls => head_tail(inst, k, OrientMode::Degree5)?,
        LabelingKind::K9 => michel_scott_k9(inst, k)?,
        LabelingKind::K5 => michel_scott_k5(inst, k)?,
    };
    lab.validate(inst)?;
    Ok(lab)
}

fn head_tail(inst: &MaxCutInstance, k: i64, mode: OrientMode) -> Result<Labeling> {
    let orient = orient_edges(inst, mode)?;
    let sites = orient
        .iter()
        .enumerate()
        .map(|(edge, &(tail, head))| Site::Single {
            edge,
            x: head,
            y: tail,
            lx: 4,
            ly: 2,
        })
        .collect();
    Ok(fill_vertex_labels(inst, k, sites))
}

fn ms_n(inst: &MaxCutInstance) -> Result<u32> {
    let mut n = None;
    for name in inst.names() {
        if let Ok(HVertexId::V { i, .. }) = name.parse::<HVertexId>() {
            n = Some(n.map_or(i, |m: u32| m.max(i)));
        }
    }
    match n {
        Some(n) if n >= 1 => Ok(n),
        _ => input("instance is not a Michel-Scott instance with n >= 1"),
    }
}

struct Named<'a>(&'a MaxCutInstance);

impl Named<'_> {
    fn id(&self, v: HVertexId) -> Result<usize> {
        self.0.vertex(&v.to_string())
    }

    fn edge(&self, a: HVertexId, b: HVertexId) -> Result<usize> {
        self.0.find_edge_by_name(&a.to_string(), &b.to_string())
    }
}

fn michel_scott_k9(inst: &MaxCutInstance, k: i64) -> Result<Labeling> {
    let n = ms_n(inst)?;
    let h = Named(inst);
    let v = HVertexId::v;
    let (p1, p2) = (HVertexId::Top(1), HVertexId::Top(2));
    // (vertex carrying 4, other end)
    let mut fours: Vec<(HVertexId, HVertexId)> = Vec::new();
    for i in 1..=n {
        for q in [3, 5, 7] {
            fours.push((v(i, q), v(i - 1, 8)));
        }
        for q in [2, 4, 6] {
            fours.push((v(i, q), v(i, q + 1)));
        }
    }
    fours.push((v(n, 8), v(n, 7)));
    fours.push((p1, v(n, 1)));
    fours.push((p1, p2));
    let mut big: BTreeMap<usize, usize> = BTreeMap::new();
    for (a, b) in fours {
        big.insert(h.edge(a, b)?, h.id(a)?);
    }
    let sites = inst
        .edges()
        .iter()
        .enumerate()
        .map(|(e, he)| match big.get(&e) {
            Some(&x) => Site::Single {
                edge: e,
                x,
                y: he.other(x),
                lx: 4,
                ly: 2,
            },
            None => Site::Single {
                edge: e,
                x: he.u.min(he.v),
                y: he.u.max(he.v),
                lx: 2,
                ly: 2,
            },
        })
        .collect();
    let mut vertex_labels = vec![k - 9; inst.num_vertices()];
    vertex_labels[h.id(v(n, 8))?] = k - 5;
    vertex_labels[h.id(v(n, 1))?] = k - 5;
    vertex_labels[h.id(p2)?] = k - 3;
    Ok(Labeling {
        k,
        sites,
        vertex_labels,
    })
}

fn michel_scott_k5(inst: &MaxCutInstance, k: i64) -> Result<Labeling> {
    let n = ms_n(inst)?;
    let h = Named(inst);
    let v = HVertexId::v;
    let p = inst
        .names()
        .iter()
        .filter_map(|s| match s.parse::<HVertexId>() {
            Ok(HVertexId::U { j, .. }) => Some(j + 1),
            _ => None,
        })
        .max()
        .ok_or_else(|| Error::Input("instance is not the subdivided Michel-Scott instance".into()))?;
    let u = |i: u32, q: u8, q2: u8, j: u32| HVertexId::U { i, q, q2, j };
    // (centre, y, t) per jointly labeled pair {xy, xt}
    let mut joints: Vec<(HVertexId, HVertexId, HVertexId)> = vec![
        (v(0, 8), v(1, 7), v(1, 5)),
        (v(0, 8), v(1, 3), u(0, 1, 8, p - 1)),
        (v(0, 1), u(1, 2, 1, p - 1), u(1, 4, 1, p - 1)),
        (v(0, 1), u(1, 6, 1, p - 1), u(0, 1, 8, 1)),
    ];
    for i in 2..=n {
        joints.push((v(i - 1, 8), v(i, 7), v(i, 5)));
        joints.push((v(i - 1, 8), v(i, 3), u(i - 1, 7, 8, p - 1)));
        joints.push((v(i - 1, 1), u(i, 2, 1, p - 1), u(i, 4, 1, p - 1)));
        joints.push((v(i - 1, 1), u(i, 6, 1, p - 1), u(i - 1, 1, 2, 1)));
    }
    for i in 1..=n {
        for q in [3u8, 5, 7] {
            joints.push((v(i, q), u(i, q, q + 1, 1), v(i, q - 1)));
        }
        for q in [2u8, 4, 6] {
            joints.push((v(i, q), u(i, q - 1, q, p - 1), u(i, q, 1, 1)));
        }
    }
    let mut sites = Vec::new();
    let mut used = vec![false; inst.num_edges()];
    for (x, y, t) in joints {
        let (xy, xt) = (h.edge(x, y)?, h.edge(x, t)?);
        used[xy] = true;
        used[xt] = true;
        sites.push(Site::Joint {
            xy,
            xt,
            x: h.id(x)?,
            y: h.id(y)?,
            t: h.id(t)?,
            lx: 2,
            ly: 2,
            lt: 2,
        });
    }
    let fours = [
        (v(n, 8), u(n, 7, 8, p - 1)),
        (HVertexId::Top(2), HVertexId::Top(1)),
    ];
    for (a, b) in fours {
        let e = h.edge(a, b)?;
        used[e] = true;
        sites.push(Site::Single {
            edge: e,
            x: h.id(a)?,
            y: h.id(b)?,
            lx: 4,
            ly: 2,
        });
    }
    for (e, he) in inst.edges().iter().enumerate() {
        if !used[e] {
            sites.push(Site::Single {
                edge: e,
                x: he.u.min(he.v),
                y: he.u.max(he.v),
                lx: 2,
                ly: 2,
            });
        }
    }
    Ok(Labeling {
        k,
        sites,
        vertex_labels: vec![k - 5; inst.num_vertices()],
    })
}

/// Every cycle of the instance is longer than `2k`.
pub fn girth_exceeds(inst: &MaxCutInstance, k: i64) -> bool {
    inst.girth().map_or(true, |g| g as i64 > 2 * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::{build_michel_scott, build_modified_michel_scott, random_instance};
    use crate::weight::ExactWeight;

    fn in_out(inst: &MaxCutInstance, o: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut d = vec![(0, 0); inst.num_vertices()];
        for &(t, h) in o {
            d[h].0 += 1;
            d[t].1 += 1;
        }
        d
    }

    #[test]
    fn cycle_orients_consistently() {
        let names = (0..6).map(|i| format!("c{i}")).collect();
        let inst =
            MaxCutInstance::new(names, (0..6).map(|i| (i, (i + 1) % 6, ExactWeight::int(1)))).unwrap();
        let o = orient_edges(&inst, OrientMode::Degree4).unwrap();
        assert!(in_out(&inst, &o).iter().all(|&d| d == (1, 1)));
    }

    #[test]
    fn star_centre_in_degree() {
        let names = (0..6).map(|i| format!("s{i}")).collect();
        let inst = MaxCutInstance::new(names, (1..6).map(|i| (0, i, ExactWeight::int(1)))).unwrap();
        assert!(orient_edges(&inst, OrientMode::Degree4).is_err());
        let o = orient_edges(&inst, OrientMode::Degree5).unwrap();
        assert!(in_out(&inst, &o)[0].0 <= 3);
    }

    #[test]
    fn degree_four_balanced() {
        for seed in 0..300 {
            let inst = random_instance(7, 4, 5, seed);
            let o = orient_edges(&inst, OrientMode::Degree4).unwrap();
            for (v, (i, out)) in in_out(&inst, &o).into_iter().enumerate() {
                if inst.degree(v) % 2 == 0 {
                    assert_eq!(i, out);
                }
            }
            let inst = random_instance(7, 5, 5, seed);
            let o = orient_edges(&inst, OrientMode::Degree5).unwrap();
            assert!(in_out(&inst, &o).iter().all(|&(i, _)| i <= 3));
        }
    }

    #[test]
    fn k13_sums() {
        for seed in 0..100 {
            let inst = random_instance(5, 4, 5, seed);
            let lab = build_labeling(LabelingKind::K13, &inst, 13).unwrap();
            for x in 0..5 {
                assert_eq!(lab.label_sum(x), 12);
                assert!(lab.vertex_labels[x] >= 0);
            }
        }
        let inst = random_instance(5, 4, 5, 1);
        assert!(build_labeling(LabelingKind::K13, &inst, 12).is_err());
    }

    #[test]
    fn k9_on_ms1() {
        let (inst, _) = build_michel_scott(1);
        let lab = build_labeling(LabelingKind::K9, &inst, 9).unwrap();
        let l = |s: &str| lab.vertex_labels[inst.vertex(s).unwrap()];
        assert_eq!((l("vp2"), l("v_1_8"), l("v_1_1"), l("v_1_4")), (6, 4, 4, 0));
        let simple = lab.sites.iter().filter(|s| s.signature() == [4, 2]).count();
        assert_eq!(simple, 9);
    }

    #[test]
    fn k5_on_modified() {
        let (inst, _) = build_modified_michel_scott(1, 11).unwrap();
        let lab = build_labeling(LabelingKind::K5, &inst, 5).unwrap();
        assert!(lab.vertex_labels.iter().all(|&l| l == 0));
        let fours: usize = lab
            .sites
            .iter()
            .flat_map(|s| s.signature())
            .filter(|&l| l == 4)
            .count();
        assert_eq!(fours, 2);
        assert_eq!(lab.sites.iter().filter(|s| s.signature().len() == 3).count(), 10);
        assert!(girth_exceeds(&inst, 5));
    }
}
