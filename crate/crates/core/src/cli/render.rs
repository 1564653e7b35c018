//! Plain-text reports.

use std::fmt::Write;

use super::{ContextsResult, DescentResult, NetResult, ValuationsResult};
use crate::algebra::AmbientSet;
use crate::independence::{Condition, HierarchyReport, Witness};
use crate::net::Violation;

fn witness(w: &Witness, amb: &AmbientSet) -> String {
    match w {
        Witness::Commutator { left_index, right_index, left, right, commutator } => format!(
            "[a{left_index}, b{right_index}] = {commutator:?} with a{left_index} = {left:?}, b{right_index} = {right:?}"
        ),
        Witness::Intersection { intersection } => format!("A ∩ B = {}", amb.format(intersection)),
        Witness::IntersectionDim { dim } => format!("dim(A ∩ B) = {dim}"),
        Witness::DisjointBlocks { left_block, right_block } => {
            format!("blocks {} and {} are disjoint", amb.block_label(left_block), amb.block_label(right_block))
        }
        Witness::DimensionDeficit { join_dim, product_dim } => {
            format!("dim(A ∨ B) = {join_dim}, dim(A)·dim(B) = {product_dim}")
        }
        Witness::MultiplicationKernel { kernel_dim } => format!("multiplication map has a {kernel_dim}-dimensional kernel"),
        Witness::ContextPair { left, right, join_restricted_left, join_restricted_right } => format!(
            "C = {}, D = {}: (C∨D)∩A = {}, (C∨D)∩B = {}",
            amb.format(left),
            amb.format(right),
            amb.format(join_restricted_left),
            amb.format(join_restricted_right)
        ),
        Witness::Contexts { contexts } => {
            let list: Vec<String> = contexts.iter().map(|c| amb.format(c)).collect();
            format!("C ≠ (C∩A) ∨ (C∩B) for {}", list.join(", "))
        }
        Witness::Undecided { reason } => reason.clone(),
    }
}

pub(super) fn hierarchy(r: &HierarchyReport, amb: &AmbientSet) -> String {
    let mut out = String::new();
    let engine = match r.engine {
        crate::independence::Engine::Partition => "partition",
        crate::independence::Engine::Matrix => "matrix",
    };
    let _ = writeln!(out, "engine: {engine}");
    for c in Condition::ALL {
        let _ = write!(out, "{:<20}{}", c.name(), r.get(c));
        if let Some(w) = r.witnesses.get(&c) {
            let _ = write!(out, "  ({})", witness(w, amb));
        }
        out.push('\n');
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub(super) fn descent(res: &DescentResult, amb: &AmbientSet) -> String {
    let r = &res.descent;
    let m = &r.map;
    let mut out = String::new();
    let _ = writeln!(out, "meet algebra: {}", amb.format(&r.meet_algebra));
    let _ = writeln!(
        out,
        "h: {} contexts -> {} context pairs (injective {}, surjective {})",
        m.source_size,
        m.target_size,
        yes(m.injective),
        yes(m.surjective)
    );
    let _ = writeln!(out, "left adjoint exists: {}", yes(m.adjunction.adjoint_exists));
    let _ = writeln!(out, "coreflector: {}", yes(m.adjunction.is_coreflector));
    let _ = writeln!(out, "thickening: {}", yes(m.thickening.thickening));
    let _ = writeln!(out, "fiber sizes: {:?}", m.thickening.fiber_sizes);
    let bad: Vec<_> = r.ring_components.iter().filter(|c| !c.iso).collect();
    let _ = writeln!(out, "ring components: {} of {} are isomorphisms", r.ring_components.len() - bad.len(), r.ring_components.len());
    for c in bad {
        let _ = writeln!(
            out,
            "  at {}: injective {}, surjective {} ({} points over {})",
            amb.format(&c.context),
            yes(c.injective),
            yes(c.surjective),
            c.spectrum_points,
            c.fibered_points
        );
    }
    let _ = writeln!(out, "extended locality: {}", yes(r.extended_locality));
    let _ = writeln!(out, "cstar-independence: {}", yes(r.cstar_independent));
    let _ = writeln!(out, "unit law: {}", yes(r.unit_law));
    let _ = writeln!(out, "sheaf: {}", yes(r.sheaf));
    let _ = writeln!(out, "sheaf via cstar-independence and unit law: {}", yes(r.sheaf_characterized));
    let _ = writeln!(out, "stability violations: {}", res.stability_violations.len());
    for v in &res.stability_violations {
        let _ = writeln!(
            out,
            "  E = {}, C = {}, D = {}: (E∧C)∨(E∧D) = {}",
            amb.format(&v.e),
            amb.format(&v.c),
            amb.format(&v.d),
            amb.format(&v.generated)
        );
    }
    out
}

fn violation(v: &Violation) -> String {
    match v {
        Violation::OrderCycle { left, right } => format!("order cycle between {left} and {right}"),
        Violation::MissingMeet { left, right } => format!("{left} and {right} have no meet"),
        Violation::MissingJoin { left, right } => format!("{left} and {right} have no join"),
        Violation::SpacelikeReflexive { region } => format!("{region} is declared spacelike to itself"),
        Violation::SpacelikeComparable { lower, upper } => format!("spacelike regions {lower} <= {upper}"),
        Violation::Isotony { lower, upper, lower_algebra, upper_algebra } => {
            format!("isotony fails at {lower} <= {upper}: {lower_algebra} is not inside {upper_algebra}")
        }
    }
}

pub(super) fn net(res: &NetResult, amb: &AmbientSet) -> String {
    let mut out = String::new();
    if !res.validation.valid {
        out.push_str("net is invalid\n");
        for v in &res.validation.violations {
            let _ = writeln!(out, "  {}", violation(v));
        }
        return out;
    }
    let Some(r) = &res.report else { return out };
    for p in &r.pairs {
        let _ = writeln!(out, "{} / {} (meet {} = {})", p.left, p.right, p.meet_region, amb.format(&p.meet_algebra));
        if p.meet_differs {
            let _ = writeln!(out, "  A(O1) ∩ A(O2) = {}", amb.format(&p.intersection));
        }
        for line in hierarchy(&p.hierarchy, amb).lines().skip(1) {
            let _ = writeln!(out, "  {line}");
        }
        let _ = writeln!(out, "  {:<20}{}", "sheaf", yes(p.descent.sheaf));
    }
    let s = r.summary;
    let _ = writeln!(out, "spacelike pairs: {}", s.spacelike_pairs);
    let _ = writeln!(out, "microcausal net: {}", yes(s.microcausal));
    let _ = writeln!(out, "extended-locality net: {}", yes(s.extended_locality));
    let _ = writeln!(out, "strongly local net: {}", yes(s.strongly_local));
    let _ = writeln!(out, "cstar-independent net: {}", yes(s.cstar_independent));
    let _ = writeln!(out, "sheaf net: {}", yes(s.sheaf));
    out
}

fn weights(m: &indexmap::IndexMap<String, (i64, i64)>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, (n, d))| format!("{k}: {n}/{d}")).collect();
    parts.join(", ")
}

pub(super) fn valuations(r: &ValuationsResult, amb: &AmbientSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "C = {}", amb.format(&r.left_context));
    let _ = writeln!(out, "D = {}", amb.format(&r.right_context));
    let _ = writeln!(out, "mu1: {}", weights(&r.mu1));
    let _ = writeln!(out, "mu2: {}", weights(&r.mu2));
    let e = &r.extension;
    match (&e.weights, &e.left_block, &e.right_block, e.mass) {
        (Some(w), ..) => {
            let _ = writeln!(out, "product extension: {}", weights(w));
        }
        (None, Some(l), Some(rb), Some((n, d))) => {
            let _ = writeln!(out, "no product extension; witness blocks {l}, {rb} with mass {n}/{d}");
        }
        _ => {}
    }
    let t = &r.independence;
    let _ = writeln!(
        out,
        "valuation independence: {} ({} context pairs, {} samples)",
        yes(t.independent),
        t.context_pairs,
        t.samples
    );
    if let Some(w) = &t.witness {
        let _ = writeln!(
            out,
            "  C = {}, D = {}: blocks {} and {} are disjoint",
            amb.format(&w.left_context),
            amb.format(&w.right_context),
            amb.block_label(&w.left_block),
            amb.block_label(&w.right_block)
        );
    }
    out
}

pub(super) fn contexts(r: &ContextsResult, amb: &AmbientSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} contexts of {}", r.count, r.algebra);
    for (i, c) in r.contexts.iter().enumerate() {
        let _ = writeln!(out, "{i:>4}  {}", amb.format(c));
    }
    let _ = writeln!(out, "hasse edges: {}", r.hasse_edges.len());
    out
}
