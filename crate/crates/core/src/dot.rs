//! Graphviz export of `G` and of single gadgets.

use std::fmt::Write;

use crate::gadget::Gadget;
use crate::reduction::{role_label, EdgeKind, SparseTsp};
use crate::tsp::Tour;

fn role_color(kind: &EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Cycle | EdgeKind::Forced { .. } => "gray40",
        EdgeKind::LeftFirstSet { .. } | EdgeKind::RightFirstSet { .. } => "blue",
        EdgeKind::RightSecondSet { .. } => "red",
        EdgeKind::Door { .. } => "darkgreen",
        EdgeKind::Rail { .. } | EdgeKind::Rung { .. } => "orange",
        EdgeKind::Gadget { .. } => "purple",
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text for `G`, edges coloured by role. Edges of `tour`, if given,
/// are drawn bold.
pub fn tsp_to_dot(tsp: &SparseTsp, tour: Option<&Tour>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle, fontsize=9];\n");
    for (v, name) in tsp.names().iter().enumerate() {
        let shape = if tsp.degree(v) == 2 { "point" } else { "circle" };
        let _ = writeln!(out, "  {v} [label={}, shape={shape}];", quote(name));
    }
    for e in tsp.edges() {
        let bold = tour.is_some_and(|t| t.contains(e.u, e.v));
        let _ = writeln!(
            out,
            "  {} -- {} [label={}, color={}, tooltip={}{}];",
            e.u,
            e.v,
            quote(&e.w.to_string()),
            role_color(&e.kind),
            quote(role_label(&e.kind)),
            if bold { ", penwidth=3" } else { "" }
        );
    }
    out.push_str("}\n");
    out
}

pub fn gadget_to_dot(g: &Gadget) -> String {
    let mut out = format!("graph {} {{\n  node [shape=circle];\n", quote(g.name()));
    for v in 0..g.num_vertices() {
        let style = if g.terminal_of(v).is_some() { ", style=filled, fillcolor=lightblue" } else { "" };
        let _ = writeln!(out, "  {v} [label={}{style}];", quote(g.vertex_name(v)));
    }
    for e in g.edges() {
        let color = if e.role.is_plain() { "black" } else { "purple" };
        let _ = writeln!(out, "  {} -- {} [label={}, color={color}];", e.u, e.v, quote(&e.role.to_string()));
    }
    out.push_str("}\n");
    out
}
