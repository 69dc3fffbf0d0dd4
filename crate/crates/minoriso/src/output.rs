//! JSON and DOT emitters. JSON is the machine-readable format for every
//! command; DOT is only produced for decompositions and witnesses.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::closure::{components_and_separators, ClosureResult};
use crate::error::Result;
use crate::graph::{Graph, PairColoring, VertexColoring};
use crate::initial_color::InitialColorOutput;
use crate::iso_engine::TreeDecomposition;
use crate::refinement::RefinementTrace;
use crate::witness::{TopologicalWitness, WitnessOutcome};

pub fn refine_json(trace: &RefinementTrace) -> Value {
    let stable = trace.stable();
    json!({
        "colors": stable.colors,
        "num_colors": stable.num_colors,
        "classes": stable.classes(),
        "rounds": trace.round_count,
    })
}

pub fn wl2_json(pc: &PairColoring, rounds: usize) -> Value {
    let classes = pc.classes();
    let diagonal: Vec<usize> = (0..pc.n).map(|v| pc.get(v, v)).collect();
    json!({
        "n": pc.n,
        "num_colors": pc.num_colors,
        "class_sizes": classes.iter().map(Vec::len).collect::<Vec<_>>(),
        "diagonal": diagonal,
        "rounds": rounds,
    })
}

pub fn closure_json(g: &Graph, r: &ClosureResult) -> Result<Value> {
    let seps: Vec<Value> =
        components_and_separators(g, &r.d)?.into_iter().map(|(z, s)| json!({"component": z, "separator": s})).collect();
    Ok(json!({
        "d": r.d,
        "partition": r.final_coloring.classes(),
        "trace": r.trace,
        "components": seps,
    }))
}

/// Pair color classes listed per color, without the full matrix.
fn pair_classes(pc: &PairColoring) -> Vec<Value> {
    pc.classes()
        .into_iter()
        .enumerate()
        .map(|(c, pairs)| {
            let diagonal = pairs.iter().all(|&(u, v)| u == v);
            json!({"color": c, "size": pairs.len(), "diagonal": diagonal})
        })
        .collect()
}

pub fn initial_color_json(out: &InitialColorOutput) -> Value {
    match out {
        InitialColorOutput::MinorFound => json!({"minor": true}),
        InitialColorOutput::Class(c) => json!({
            "x": c.x_in_g(),
            "color": c.color,
            "gprime": {"n": c.g_prime.n(), "edges": c.g_prime.edges()},
            "chiprime": pair_classes(&c.chi_prime),
            "restarts": c.restarts,
            "fallback_firings": c.fallback_firings,
        }),
    }
}

pub fn decomposition_json(td: &TreeDecomposition) -> Value {
    let nodes: Vec<Value> = td.bags.iter().enumerate().map(|(id, bag)| json!({"id": id, "bag": bag})).collect();
    json!({"nodes": nodes, "edges": td.edges, "adhesion": td.adhesion()})
}

pub fn decomposition_dot(td: &TreeDecomposition) -> String {
    let mut s = String::from("graph decomposition {\n  node [shape=box];\n");
    for (id, bag) in td.bags.iter().enumerate() {
        let label: Vec<String> = bag.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "  t{id} [label=\"{{{}}}\"];", label.join(","));
    }
    for (a, b) in &td.edges {
        let _ = writeln!(s, "  t{a} -- t{b};");
    }
    s.push_str("}\n");
    s
}

pub fn witness_json(out: &WitnessOutcome, valid: bool) -> Value {
    match out {
        WitnessOutcome::Witness(w) => json!({"witness": w, "valid": valid}),
        WitnessOutcome::SmallClass(c) => json!({"small_class": c}),
    }
}

/// The graph with branch vertices and path edges highlighted.
pub fn witness_dot(g: &Graph, w: &TopologicalWitness) -> String {
    let mut on_path = std::collections::BTreeSet::new();
    for p in &w.paths {
        for e in p.windows(2) {
            on_path.insert((e[0].min(e[1]), e[0].max(e[1])));
        }
    }
    let mut s = String::from("graph witness {\n");
    for &b in &w.branch {
        let _ = writeln!(s, "  {b} [style=filled, fillcolor=gray];");
    }
    for (u, v) in g.edges() {
        let style = if on_path.contains(&(u, v)) { " [penwidth=3]" } else { "" };
        let _ = writeln!(s, "  {u} -- {v}{style};");
    }
    s.push_str("}\n");
    s
}

pub fn coloring_json(c: &VertexColoring) -> Value {
    json!({"colors": c.colors, "num_colors": c.num_colors})
}
