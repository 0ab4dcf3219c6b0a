//! The recursive instance family with a unique exponentially long
//! improving flip sequence, and its path-subdivided variant.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::pow;

use super::{Cut, MaxCutInstance, Side};
use crate::error::{input, Error, Result};
use crate::weight::ExactWeight;

/// Structured vertex names: `v_i_q`, `vp1`/`vp2`, `u_i_q_q'_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HVertexId {
    V { i: u32, q: u8 },
    Top(u8),
    U { i: u32, q: u8, q2: u8, j: u32 },
}

impl HVertexId {
    pub fn v(i: u32, q: u8) -> Self {
        HVertexId::V { i, q }
    }
}

impl fmt::Display for HVertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HVertexId::V { i, q } => write!(f, "v_{i}_{q}"),
            HVertexId::Top(t) => write!(f, "vp{t}"),
            HVertexId::U { i, q, q2, j } => write!(f, "u_{i}_{q}_{q2}_{j}"),
        }
    }
}

impl FromStr for HVertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("not a structured vertex id: `{s}`"));
        if let Some(t) = s.strip_prefix("vp") {
            return match t {
                "1" => Ok(HVertexId::Top(1)),
                "2" => Ok(HVertexId::Top(2)),
                _ => Err(bad()),
            };
        }
        let parts: Vec<&str> = s.split('_').collect();
        let num = |p: &str| p.parse::<u32>().map_err(|_| bad());
        match parts.as_slice() {
            ["v", i, q] => Ok(HVertexId::V {
                i: num(i)?,
                q: num(q)? as u8,
            }),
            ["u", i, q, q2, j] => Ok(HVertexId::U {
                i: num(i)?,
                q: num(q)? as u8,
                q2: num(q2)? as u8,
                j: num(j)?,
            }),
            _ => Err(bad()),
        }
    }
}

fn pow8(n: u32) -> BigInt {
    pow(BigInt::from(8), n as usize)
}

fn base_vertices(n: u32) -> Vec<HVertexId> {
    let mut out = vec![HVertexId::v(0, 1), HVertexId::v(0, 8)];
    for i in 1..=n {
        for q in 1..=8 {
            out.push(HVertexId::v(i, q));
        }
    }
    out.push(HVertexId::Top(1));
    out.push(HVertexId::Top(2));
    out
}

fn base_edges(n: u32) -> Vec<(HVertexId, HVertexId, ExactWeight)> {
    let v = HVertexId::v;
    let mut out = vec![(v(0, 1), v(0, 8), ExactWeight::int(7))];
    for i in 1..=n {
        let s = pow8(i);
        for (q, c) in (1..8).zip([7, 5, 5, 3, 3, 1, 1]) {
            out.push((v(i, q), v(i, q + 1), ExactWeight::int(&s * c)));
        }
        for (q, c) in [(2, 1), (4, -1), (6, 1)] {
            out.push((v(i - 1, 1), v(i, q), ExactWeight::int(&s * c)));
        }
        for (q, c) in [(3, 1), (5, -1), (7, 1)] {
            out.push((v(i - 1, 8), v(i, q), ExactWeight::int(c)));
        }
    }
    let top = pow8(n + 1);
    out.push((v(n, 1), HVertexId::Top(1), ExactWeight::int(top.clone())));
    out.push((HVertexId::Top(1), HVertexId::Top(2), ExactWeight::int(top * 2)));
    out
}

fn initial_side(id: HVertexId) -> Side {
    match id {
        HVertexId::Top(1) => Side::First,
        HVertexId::V { q, .. } if q % 2 == 1 => Side::First,
        _ => Side::Second,
    }
}

fn assemble(
    ids: &[HVertexId],
    edges: Vec<(HVertexId, HVertexId, ExactWeight)>,
    sides: Vec<Side>,
) -> (MaxCutInstance, Cut) {
    let pos: HashMap<HVertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let names = ids.iter().map(ToString::to_string).collect();
    let inst = MaxCutInstance::new(
        names,
        edges.into_iter().map(|(a, b, w)| (pos[&a], pos[&b], w)),
    )
    .expect("generated graph is simple");
    (inst, Cut::new(sides))
}

/// `H_n` with its initial cut.
pub fn build_michel_scott(n: u32) -> (MaxCutInstance, Cut) {
    let ids = base_vertices(n);
    let sides = ids.iter().map(|&v| initial_side(v)).collect();
    assemble(&ids, base_edges(n), sides)
}

/// `L_0 = v_{0,1} v_{0,8}`, `L_n = v_{n,1} v_{n,2} L v_{n,3} v_{n,4} L v_{n,5} v_{n,6} L v_{n,7} v_{n,8}`.
pub fn predicted_sequence(n: u32) -> Vec<HVertexId> {
    let v = HVertexId::v;
    let mut seq = vec![v(0, 1), v(0, 8)];
    for i in 1..=n {
        let prev = std::mem::take(&mut seq);
        for pair in [(1, 2), (3, 4), (5, 6)] {
            seq.push(v(i, pair.0));
            seq.push(v(i, pair.1));
            seq.extend_from_slice(&prev);
        }
        seq.push(v(i, 7));
        seq.push(v(i, 8));
    }
    seq
}

/// Out-neighbour of every `v_{i,q}`, `q <= 7`, read off consecutive pairs of `L_n`.
fn orientation(n: u32) -> Result<HashMap<HVertexId, HVertexId>> {
    let seq = predicted_sequence(n);
    let mut out: HashMap<HVertexId, HVertexId> = HashMap::new();
    let pairs: std::collections::HashSet<(HVertexId, HVertexId)> =
        seq.windows(2).map(|w| (w[0], w[1])).collect();
    for &(a, b) in &pairs {
        if pairs.contains(&(b, a)) {
            return Err(Error::Structure(format!("both {a}{b} and {b}{a} occur in L_n")));
        }
        if let HVertexId::V { q, .. } = a {
            if q <= 7 {
                if let Some(prev) = out.insert(a, b) {
                    if prev != b {
                        return Err(Error::Structure(format!("{a} has out-neighbours {prev} and {b}")));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn path_vertex(src: HVertexId, dst: HVertexId, j: u32) -> HVertexId {
    match (src, dst) {
        (HVertexId::V { i, q }, HVertexId::V { q: q2, .. }) => HVertexId::U { i, q, q2, j },
        _ => unreachable!("only v_(i,q) edges are subdivided"),
    }
}

/// `H_n` with every oriented out-edge of `v_{i,q}` (`q <= 7`) replaced by a
/// path of length `p` whose weights are perturbed by multiples of `ε`.
pub fn build_modified_michel_scott(n: u32, p: u32) -> Result<(MaxCutInstance, Cut)> {
    if p < 3 || p % 2 == 0 {
        return input(format!("path length p must be odd and at least 3, got {p}"));
    }
    if n < 1 {
        return input("the modified construction needs n >= 1");
    }
    let out = orientation(n)?;
    let mut ids = base_vertices(n);
    let mut side_of: HashMap<HVertexId, Side> =
        ids.iter().map(|&v| (v, initial_side(v))).collect();
    let mut edges = Vec::new();
    for (a, b, w) in base_edges(n) {
        let oriented = if out.get(&a) == Some(&b) {
            Some((a, b))
        } else if out.get(&b) == Some(&a) {
            Some((b, a))
        } else {
            None
        };
        let Some((src, dst)) = oriented else {
            edges.push((a, b, w));
            continue;
        };
        let chain: Vec<HVertexId> = std::iter::once(src)
            .chain((1..p).map(|j| path_vertex(src, dst, j)))
            .chain(std::iter::once(dst))
            .collect();
        for j in 1..p {
            let side = if w.is_positive() && j % 2 == 1 {
                side_of[&dst]
            } else {
                side_of[&src]
            };
            ids.push(chain[j as usize]);
            side_of.insert(chain[j as usize], side);
        }
        for j in 0..p {
            let jw = ExactWeight::eps(j);
            let wj = if w.is_positive() { w.clone() - jw } else { w.clone() + jw };
            edges.push((chain[j as usize], chain[j as usize + 1], wj));
        }
    }
    let sides = ids.iter().map(|v| side_of[v]).collect();
    Ok(assemble(&ids, edges, sides))
}

/// `L'_n`: every consecutive pair starting at some `v_{i,q}`, `q <= 7`, is
/// expanded with the `p - 1` path vertices in between.
pub fn predicted_modified_sequence(n: u32, p: u32) -> Result<Vec<HVertexId>> {
    if p < 3 || p % 2 == 0 {
        return input(format!("path length p must be odd and at least 3, got {p}"));
    }
    let seq = predicted_sequence(n);
    let mut out = Vec::new();
    for (k, &a) in seq.iter().enumerate() {
        out.push(a);
        if let (HVertexId::V { q, .. }, Some(&b)) = (a, seq.get(k + 1)) {
            if q <= 7 {
                out.extend((1..p).map(|j| path_vertex(a, b, j)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::cut_value;

    #[test]
    fn ids_round_trip() {
        for id in [
            HVertexId::v(3, 7),
            HVertexId::Top(2),
            HVertexId::U { i: 1, q: 2, q2: 1, j: 10 },
        ] {
            assert_eq!(id.to_string().parse::<HVertexId>().unwrap(), id);
        }
        assert!("vp3".parse::<HVertexId>().is_err());
        assert!("w_1_2".parse::<HVertexId>().is_err());
    }

    #[test]
    fn h1_weights() {
        let (h, _) = build_michel_scott(1);
        let w = |a: &str, b: &str| h.edge(h.find_edge_by_name(a, b).unwrap()).w.clone();
        let path: Vec<ExactWeight> = (1..8)
            .map(|q| w(&format!("v_1_{q}"), &format!("v_1_{}", q + 1)))
            .collect();
        let expect: Vec<ExactWeight> = [56, 40, 40, 24, 24, 8, 8].map(ExactWeight::from).to_vec();
        assert_eq!(path, expect);
        assert_eq!(w("v_0_1", "v_1_2"), 8.into());
        assert_eq!(w("v_0_1", "v_1_4"), (-8).into());
        assert_eq!(w("v_0_1", "v_1_6"), 8.into());
        assert_eq!(w("v_0_8", "v_1_3"), 1.into());
        assert_eq!(w("v_0_8", "v_1_5"), (-1).into());
        assert_eq!(w("v_0_8", "v_1_7"), 1.into());
        assert_eq!(w("v_1_1", "vp1"), 64.into());
        assert_eq!(w("vp1", "vp2"), 128.into());
    }

    #[test]
    fn h1_initial_cut_value_by_hand() {
        // Under the initial cut every path edge crosses (200), as do the
        // connectors 8-8+8 and 1-1+1, the base edge (7) and vp1 vp2 (128);
        // v_1_1 vp1 does not.
        let (h, cut) = build_michel_scott(1);
        assert_eq!(cut_value(&h, &cut).unwrap(), ExactWeight::int(200 + 8 + 1 + 7 + 128));
    }

    #[test]
    fn sizes() {
        for n in 0..5u32 {
            let (h, cut) = build_michel_scott(n);
            assert_eq!(h.num_vertices(), 8 * n as usize + 4);
            assert_eq!(h.num_edges(), 13 * n as usize + 3);
            assert_eq!(cut.len(), h.num_vertices());
            assert!(h.max_degree() <= 4);
            assert_eq!(predicted_sequence(n).len(), 6 * 3usize.pow(n) - 4);
        }
        let (h0, _) = build_michel_scott(0);
        let mut w: Vec<ExactWeight> = h0.edges().iter().map(|e| e.w.clone()).collect();
        w.sort();
        assert_eq!(w, vec![7.into(), 8.into(), 16.into()]);
    }

    #[test]
    fn sequence_shape() {
        let v = HVertexId::v;
        assert_eq!(predicted_sequence(0), vec![v(0, 1), v(0, 8)]);
        let l1 = predicted_sequence(1);
        assert_eq!(l1.len(), 14);
        assert_eq!(&l1[..4], &[v(1, 1), v(1, 2), v(0, 1), v(0, 8)]);
        assert_eq!(predicted_sequence(3).len(), 158);
    }

    #[test]
    fn modified_sizes_and_weights() {
        let (h, cut) = build_modified_michel_scott(1, 3).unwrap();
        // 8 subdivided edges, two new vertices each.
        assert_eq!(h.num_vertices(), 12 + 16);
        assert_eq!(h.num_edges(), 16 - 8 + 8 * 3);
        assert_eq!(cut.len(), 28);
        assert!(h.max_degree() <= 4);
        let w = |a: &str, b: &str| h.edge(h.find_edge_by_name(a, b).unwrap()).w.clone();
        assert_eq!(w("v_1_1", "u_1_1_2_1"), ExactWeight::new(56, 0));
        assert_eq!(w("u_1_1_2_1", "u_1_1_2_2"), ExactWeight::new(56, -1));
        assert_eq!(w("u_1_1_2_2", "v_1_2"), ExactWeight::new(56, -2));
        // Negative connector v_1_4 -> v_0_1 increases along the path.
        assert_eq!(w("v_1_4", "u_1_4_1_1"), ExactWeight::new(-8, 0));
        assert_eq!(w("u_1_4_1_2", "v_0_1"), ExactWeight::new(-8, 2));
        assert!(build_modified_michel_scott(1, 4).is_err());
        assert!(build_modified_michel_scott(1, 1).is_err());
    }

    #[test]
    fn modified_cut_sides() {
        let (h, cut) = build_modified_michel_scott(1, 5).unwrap();
        let side = |s: &str| cut.side(h.vertex(s).unwrap());
        // positive: alternate starting from the target's side at j = 1
        assert_eq!(side("u_1_1_2_1"), side("v_1_2"));
        assert_eq!(side("u_1_1_2_2"), side("v_1_1"));
        // negative: all on the source's side
        for j in 1..5 {
            assert_eq!(side(&format!("u_1_4_1_{j}")), side("v_1_4"));
        }
    }

    #[test]
    fn modified_sequence_restricts_to_original() {
        for p in [3, 5, 11] {
            let lp = predicted_modified_sequence(1, p).unwrap();
            assert_eq!(lp.len(), 14 + 10 * (p as usize - 1));
            let restricted: Vec<_> = lp
                .into_iter()
                .filter(|v| !matches!(v, HVertexId::U { .. }))
                .collect();
            assert_eq!(restricted, predicted_sequence(1));
        }
    }
}
