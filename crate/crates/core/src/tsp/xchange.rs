use super::{Swap, Tour};
use crate::error::{Error, Result};
use crate::maxcut::Side;
use crate::reduction::SparseTsp;

/// Which case holds at `x`: first set (first-set edges and XOR subtour,
/// no doors) or second set (all doors and the right second-set edge, no
/// left first-set edge). `None` if neither.
pub fn side_at(tsp: &SparseTsp, tour: &Tour, x: usize) -> Option<Side> {
    let meta = tsp.h_meta(x);
    let has = |e: usize| {
        let (u, v) = tsp.endpoints(e);
        tour.contains(u, v)
    };
    let first = meta.first_case_edges();
    let second = meta.second_case_edges();
    if first.iter().all(|&e| has(e)) && !meta.doors.iter().any(|&e| has(e)) && !has(meta.right_second) {
        Some(Side::First)
    } else if second.iter().all(|&e| has(e)) && !has(meta.left_first) {
        Some(Side::Second)
    } else {
        None
    }
}

/// Pair mask of the canonical cover gadget `gi` uses in `tour`, if any.
pub fn gadget_mask(tsp: &SparseTsp, tour: &Tour, gi: usize) -> Option<u8> {
    let g = &tsp.gadgets()[gi];
    let mut used: Vec<usize> = g
        .edge_map
        .iter()
        .copied()
        .filter(|&e| {
            let (u, v) = tsp.endpoints(e);
            tour.contains(u, v)
        })
        .collect();
    used.sort_unstable();
    g.canonical.iter().find(|(_, c)| **c == used).map(|(&m, _)| m)
}

fn diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|e| !b.contains(e)).collect()
}

/// The standard x-change: swap the first-set and second-set structure at
/// `x` and move every related gadget to the canonical cover with `x`'s
/// pair toggled.
pub fn x_change(tsp: &SparseTsp, tour: &Tour, x: usize) -> Result<Swap> {
    if x >= tsp.h_vertex_count() {
        return Err(Error::Input(format!("no H-vertex {x}")));
    }
    let meta = tsp.h_meta(x);
    let side = side_at(tsp, tour, x)
        .ok_or_else(|| Error::Structure(format!("tour is in neither case at {}", tsp.h_name(x))))?;
    let (a, b) = (meta.first_case_edges(), meta.second_case_edges());
    let (from, to) = match side {
        Side::First => (a, b),
        Side::Second => (b, a),
    };
    let mut removed = diff(&from, &to);
    let mut added = diff(&to, &from);
    for (gi, pair) in tsp.gadgets_of(x) {
        let mask = gadget_mask(tsp, tour, gi).ok_or_else(|| {
            Error::Structure(format!("gadget {gi} at {} is not in a canonical cover", tsp.h_name(x)))
        })?;
        let g = &tsp.gadgets()[gi];
        let (old, new) = (&g.canonical[&mask], &g.canonical[&(mask ^ pair.bit())]);
        removed.extend(diff(old, new));
        added.extend(diff(new, old));
    }
    let ends = |ids: Vec<usize>| ids.into_iter().map(|e| tsp.endpoints(e)).collect::<Vec<_>>();
    Ok(Swap::new(ends(removed), ends(added)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::{flip_gain, random_instance, Cut};
    use crate::reduction::{build_labeling, compile_tsp, initial_tour, GadgetChoice, LabelingKind};
    use crate::tsp::{apply_swap, swap_delta};
    use crate::weight::ExactWeight;

    #[test]
    fn x_change_size_and_delta() {
        for seed in 0..15 {
            let inst = random_instance(4, 3, 5, seed);
            let lab = build_labeling(LabelingKind::K13, &inst, 13).unwrap();
            let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).unwrap();
            for mask in 0..16u64 {
                let cut = Cut::from_mask(4, mask);
                let tour = initial_tour(&tsp, &cut).unwrap();
                for x in 0..4 {
                    let s = x_change(&tsp, &tour, x).unwrap();
                    assert_eq!((s.removed.len(), s.added.len()), (13, 13));
                    let d = swap_delta(&tsp, &s).unwrap();
                    assert_eq!(d, ExactWeight::zero() - flip_gain(&inst, &cut, x).unwrap());
                    let next = apply_swap(tsp.num_vertices(), &tour, &s).unwrap();
                    assert_eq!(next, initial_tour(&tsp, &cut.flipped(x)).unwrap());
                    assert_eq!(x_change(&tsp, &next, x).unwrap(), s.reversed());
                }
            }
        }
    }
}
