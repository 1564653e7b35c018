//! Graphviz output of Hasse diagrams.

use std::fmt::Write;

use super::adjoint::MonotoneMap;
use super::poset::Poset;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn write_hasse<P: Poset + ?Sized>(out: &mut String, p: &P, prefix: &str, indent: &str) {
    for i in 0..p.len() {
        let _ = writeln!(out, "{indent}{prefix}{i} [label=\"{}\"];", escape(&p.label(i)));
    }
    for (a, b) in p.hasse_edges() {
        let _ = writeln!(out, "{indent}{prefix}{a} -> {prefix}{b};");
    }
}

/// Hasse diagram of `p`, bottom to top.
pub fn poset_to_dot<P: Poset + ?Sized>(p: &P, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    write_hasse(&mut out, p, "n", "  ");
    out.push_str("}\n");
    out
}

/// Source and target as two clusters, the map as dashed cross-edges.
pub fn map_to_dot<S: Poset + ?Sized, T: Poset + ?Sized>(f: &MonotoneMap<'_, S, T>, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(name));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    out.push_str("  subgraph cluster_source {\n    label=\"source\";\n");
    write_hasse(&mut out, f.source(), "s", "    ");
    out.push_str("  }\n  subgraph cluster_target {\n    label=\"target\";\n");
    write_hasse(&mut out, f.target(), "t", "    ");
    out.push_str("  }\n");
    for (p, &q) in f.table().iter().enumerate() {
        let _ = writeln!(out, "  s{p} -> t{q} [style=dashed, constraint=false];");
    }
    out.push_str("}\n");
    out
}
