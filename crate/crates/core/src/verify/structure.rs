use crate::gadget::{Check, Terminal};
use crate::reduction::{EdgeKind, SparseTsp};

fn check(name: &str, bad: Vec<String>) -> Check {
    Check {
        name: name.into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() { String::new() } else { bad.join("; ") },
    }
}

/// Static audits of a compiled graph: degree bounds, the five-path rule
/// around every replaced cycle edge, gateway use and door alternation.
pub fn audit_structure(tsp: &SparseTsp) -> Vec<Check> {
    let n = tsp.num_vertices();
    let mut in_double = vec![false; n];
    for g in tsp.gadgets().iter().filter(|g| g.gadget.is_double()) {
        for &gv in &g.vertex_map {
            in_double[gv] = true;
        }
    }
    let degrees = (0..n)
        .filter(|&v| tsp.degree(v) < 2 || (tsp.degree(v) > 4 && !in_double[v]))
        .map(|v| format!("{} has degree {}", tsp.name(v), tsp.degree(v)))
        .collect();

    // The removed edge ZZ' sat in the middle of Z1 Z2 Z Z' Z3 Z4 on the cycle.
    let cycle_step = |from: usize, v: usize| {
        tsp.incident(v)
            .iter()
            .find(|&&(u, e)| u != from && tsp.edge(e).kind == EdgeKind::Cycle)
            .map(|&(u, _)| u)
    };
    let mut five = Vec::new();
    for (gi, g) in tsp.gadgets().iter().enumerate() {
        let z = g.vertex_map[g.gadget.terminal(Terminal::Z).expect("Z")];
        let zp = g.vertex_map[g.gadget.terminal(Terminal::Zp).expect("Z'")];
        let left = cycle_step(zp, z).and_then(|z2| cycle_step(z, z2).map(|z1| (z1, z2)));
        let right = cycle_step(z, zp).and_then(|z3| cycle_step(zp, z3).map(|z4| (z3, z4)));
        let ok = match (left, right) {
            (Some((z1, z2)), Some((z3, z4))) => {
                let mut vs = vec![z1, z2, z, zp, z3, z4];
                vs.sort_unstable();
                vs.dedup();
                vs.len() == 6 && tsp.degree(z2) == 2 && tsp.degree(z3) == 2 && tsp.edge_id(z, zp).is_none_or(|e| matches!(tsp.edge(e).kind, EdgeKind::Gadget { gadget, .. } if gadget == gi))
            }
            _ => false,
        };
        if !ok {
            five.push(format!("gadget {gi} at {}-{}", tsp.name(z), tsp.name(zp)));
        }
    }

    let mut gateways = Vec::new();
    let mut alternation = Vec::new();
    for x in 0..tsp.h_vertex_count() {
        let meta = tsp.h_meta(x);
        let mut stops = vec![meta.left];
        for &(si, pair) in &meta.slots {
            let g = &tsp.gadgets()[si];
            let (tl, tr) = pair.terminals();
            let (l, r) = match (g.gadget.terminal(tl), g.gadget.terminal(tr)) {
                (Some(a), Some(b)) => (g.vertex_map[a], g.vertex_map[b]),
                _ => {
                    gateways.push(format!("gadget {si} lacks the {pair:?} terminals"));
                    continue;
                }
            };
            let owners = tsp.gadgets().iter().filter(|h| h.vertex_map.contains(&l) || h.vertex_map.contains(&r)).count();
            if owners != 1 || tsp.edge_id(l, r).is_some() {
                gateways.push(format!("{}-{} is used by {owners} gadgets", tsp.name(l), tsp.name(r)));
            }
            stops.push(l);
            stops.push(r);
        }
        stops.push(meta.rail_b.first().copied().unwrap_or(meta.right));
        let doors_ok = meta.doors.len() == stops.len() / 2
            && meta.doors.iter().zip(stops.chunks(2)).all(|(&e, ends)| {
                let (u, v) = tsp.endpoints(e);
                (u.min(v), u.max(v)) == (ends[0].min(ends[1]), ends[0].max(ends[1]))
                    && matches!(tsp.edge(e).kind, EdgeKind::Door { x: d } if d == x)
            });
        if !doors_ok {
            alternation.push(tsp.h_name(x).to_string());
        }
    }
    vec![
        check("degree at least two, at most four away from double gadgets", degrees),
        check("replaced cycle edges sit mid five-path", five),
        check("each gateway consumed by exactly one gadget", gateways),
        check("doors alternate with gateways, doors at both ends", alternation),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::{build_michel_scott, build_modified_michel_scott, random_instance};
    use crate::reduction::{build_labeling, compile_tsp, GadgetChoice, LabelingKind};

    #[test]
    fn audits_pass_on_every_scheme() {
        let (ms, _) = build_michel_scott(2);
        let (md, _) = build_modified_michel_scott(1, 11).unwrap();
        let mut cases = vec![(ms.clone(), LabelingKind::K9, 9), (ms, LabelingKind::K13, 13), (md, LabelingKind::K5, 5)];
        for s in 0..4 {
            cases.push((random_instance(6, 4, 5, s), LabelingKind::K13, 13));
            cases.push((random_instance(4, 5, 5, s), LabelingKind::Pls, 17));
        }
        for (inst, kind, k) in cases {
            let tsp = compile_tsp(&inst, &build_labeling(kind, &inst, k).unwrap(), &GadgetChoice::standard()).unwrap();
            for c in audit_structure(&tsp) {
                assert!(c.passed, "{kind}: {} {}", c.name, c.detail);
            }
        }
    }
}
