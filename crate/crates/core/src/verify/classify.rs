use serde::{Deserialize, Serialize};

use crate::maxcut::{Cut, Side};
use crate::reduction::SparseTsp;
use crate::tsp::{gadget_mask, side_at, Tour};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", content = "detail", rename_all = "snake_case")]
pub enum VertexCase {
    FirstSet,
    SecondSet,
    Violation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseClassification {
    pub cases: Vec<VertexCase>,
    /// Canonical cover mask per gadget, `None` for any other subtour.
    pub gadget_masks: Vec<Option<u8>>,
}

impl CaseClassification {
    pub fn violations(&self) -> usize {
        self.cases.iter().filter(|c| matches!(c, VertexCase::Violation(_))).count()
    }

    /// Every vertex is in a case and every gadget uses a canonical cover.
    pub fn is_clean(&self) -> bool {
        self.violations() == 0 && self.gadget_masks.iter().all(Option::is_some)
    }
}

fn has(tsp: &SparseTsp, tour: &Tour, e: usize) -> bool {
    let (u, v) = tsp.endpoints(e);
    tour.contains(u, v)
}

pub fn classify_tour(tsp: &SparseTsp, tour: &Tour) -> CaseClassification {
    let cases = (0..tsp.h_vertex_count())
        .map(|x| match side_at(tsp, tour, x) {
            Some(Side::First) => VertexCase::FirstSet,
            Some(Side::Second) => VertexCase::SecondSet,
            None => {
                let meta = tsp.h_meta(x);
                let doors = meta.doors.iter().filter(|&&e| has(tsp, tour, e)).count();
                VertexCase::Violation(format!(
                    "{}: left first-set edge {}, {doors}/{} doors, right second-set edge {}",
                    tsp.h_name(x),
                    has(tsp, tour, meta.left_first),
                    meta.doors.len(),
                    has(tsp, tour, meta.right_second)
                ))
            }
        })
        .collect();
    let gadget_masks = (0..tsp.gadgets().len()).map(|g| gadget_mask(tsp, tour, g)).collect();
    CaseClassification { cases, gadget_masks }
}

/// `x` is in the first set iff the tour uses its left first-set edge.
pub fn tour_to_cut(tsp: &SparseTsp, tour: &Tour) -> Cut {
    Cut::new(
        (0..tsp.h_vertex_count())
            .map(|x| {
                if has(tsp, tour, tsp.h_meta(x).left_first) {
                    Side::First
                } else {
                    Side::Second
                }
            })
            .collect(),
    )
}

/// The tour is in the case matching `cut` at every vertex and every
/// gadget uses the canonical cover for the cut.
pub fn has_property_star(tsp: &SparseTsp, tour: &Tour, cut: &Cut) -> bool {
    let c = classify_tour(tsp, tour);
    let sides_ok = c.cases.iter().enumerate().all(|(x, case)| match case {
        VertexCase::FirstSet => cut.side(x) == Side::First,
        VertexCase::SecondSet => cut.side(x) == Side::Second,
        VertexCase::Violation(_) => false,
    });
    sides_ok
        && c
            .gadget_masks
            .iter()
            .zip(tsp.gadgets())
            .all(|(m, g)| *m == Some(g.mask_for(cut)))
}

/// Every gadget has, for each related H-vertex, both of that vertex's
/// doors next to it in the tour or both out of it.
pub fn check_local_strictness(tsp: &SparseTsp, tour: &Tour) -> bool {
    tsp.gadgets()
        .iter()
        .all(|g| g.doors.iter().all(|&(l, r)| has(tsp, tour, l) == has(tsp, tour, r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::random_instance;
    use crate::reduction::{build_labeling, compile_tsp, initial_tour, GadgetChoice, LabelingKind};

    #[test]
    fn initial_tours_classify_as_their_cut() {
        for seed in 0..10 {
            let inst = random_instance(5, 4, 3, seed);
            let lab = build_labeling(LabelingKind::K13, &inst, 13).unwrap();
            let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard()).unwrap();
            for mask in [0u64, 31, 5, 18, 9] {
                let cut = Cut::from_mask(5, mask);
                let t = initial_tour(&tsp, &cut).unwrap();
                assert!(has_property_star(&tsp, &t, &cut));
                assert_eq!(tour_to_cut(&tsp, &t), cut);
                assert!(check_local_strictness(&tsp, &t));
                if mask == 0 {
                    let doors = (0..5).flat_map(|x| tsp.h_meta(x).doors.clone());
                    assert!(doors.into_iter().all(|e| !has(&tsp, &t, e)));
                }
            }
        }
    }
}
