//! Labelings and the compiler from Max-Cut instances to TSP graphs.

mod compile;
mod complete;
mod labeling;

pub use compile::{compile_tsp, initial_tour, EdgeKind, GadgetInstance, HVertexMeta, SparseTsp, TspEdge};
pub use complete::{complete_graph, is_terminal, priority_assignment, role_label, CompletionMode, CompleteTsp};
pub use labeling::{
    build_labeling, girth_exceeds, orient_edges, orient_site, GadgetChoice, Labeling, LabelingKind, OrientMode, Site,
};
