//! The t-CR closure: refine, individualize every class of size at most `t`,
//! repeat until nothing changes, and keep the vertices left in singleton
//! classes.

use serde::Serialize;

use crate::error::{input, Result};
use crate::graph::{components_avoiding, neighborhood, ArcColoring, Graph, PairColoring, VertexColoring};
use crate::refinement::color_refine;

/// One step of the refine/individualize alternation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceStep {
    /// A refinement reached a stable coloring with this many classes.
    Refine { classes: usize },
    /// These classes were split into singletons.
    Individualize { classes: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    /// Vertices in singleton classes of the final coloring, sorted.
    pub d: Vec<usize>,
    pub final_coloring: VertexColoring,
    pub trace: Vec<TraceStep>,
}

/// `cl_t(X)` for a vertex- and arc-colored graph.
///
/// Individualized vertices get colors keyed by their vertex id. The names
/// are therefore not invariant, but the closure set and final partition are.
pub fn closure_t(
    g: &Graph,
    vcol: &VertexColoring,
    acol: Option<&ArcColoring>,
    x: &[usize],
    t: usize,
) -> Result<ClosureResult> {
    if t == 0 {
        return input("t must be at least 1");
    }
    if vcol.len() != g.n() {
        return input("vertex coloring does not match the graph");
    }
    if let Some(&v) = x.iter().find(|&&v| v >= g.n()) {
        return input(format!("vertex {v} out of range"));
    }
    let mut in_x = vec![false; g.n()];
    x.iter().for_each(|&v| in_x[v] = true);
    let raw: Vec<(usize, usize)> = (0..g.n()).map(|v| if in_x[v] { (1, v) } else { (0, vcol.colors[v]) }).collect();
    let mut current = VertexColoring::from_raw(&raw);
    let mut trace = Vec::new();
    loop {
        current = color_refine(g, &current, acol)?;
        trace.push(TraceStep::Refine { classes: current.num_colors });
        let small: Vec<Vec<usize>> = current.classes().into_iter().filter(|c| c.len() > 1 && c.len() <= t).collect();
        if small.is_empty() {
            break;
        }
        let mut split = vec![false; g.n()];
        small.iter().flatten().for_each(|&v| split[v] = true);
        let raw: Vec<(usize, usize)> =
            (0..g.n()).map(|v| if split[v] { (1, v) } else { (0, current.colors[v]) }).collect();
        current = VertexColoring::from_raw(&raw);
        trace.push(TraceStep::Individualize { classes: small });
    }
    let d = singletons(&current);
    Ok(ClosureResult { d, final_coloring: current, trace })
}

fn singletons(c: &VertexColoring) -> Vec<usize> {
    let mut size = vec![0usize; c.num_colors];
    c.colors.iter().for_each(|&x| size[x] += 1);
    (0..c.len()).filter(|&v| size[c.colors[v]] == 1).collect()
}

/// Vertex and arc colorings of the complete graph that encode a pair-colored
/// graph: vertex colors are the diagonal, arc `(v, w)` gets
/// `(atp(v, w), pc(v, w))` with `atp` = 1 on edges and 2 on non-edges.
pub fn pair_encoding(g: &Graph, pc: &PairColoring) -> Result<(Graph, VertexColoring, ArcColoring)> {
    if pc.n != g.n() {
        return input("pair coloring does not match the graph");
    }
    let kn = Graph::complete(g.n());
    let vcol = VertexColoring::from_raw(&(0..g.n()).map(|v| pc.get(v, v)).collect::<Vec<_>>());
    let acol = ArcColoring::from_fn(&kn, |v, w| {
        let atp = if g.has_edge(v, w) { 1 } else { 2 };
        atp * pc.num_colors + pc.get(v, w)
    });
    Ok((kn, vcol, acol))
}

/// `cl_t(X)` for a pair-colored graph, computed on the complete graph.
pub fn closure_t_pair(g: &Graph, pc: &PairColoring, x: &[usize], t: usize) -> Result<ClosureResult> {
    let (kn, vcol, acol) = pair_encoding(g, pc)?;
    closure_t(&kn, &vcol, Some(&acol), x, t)
}

/// True iff the closure of `x` is the whole vertex set.
pub fn is_tcr_bounded(
    g: &Graph,
    vcol: &VertexColoring,
    acol: Option<&ArcColoring>,
    x: &[usize],
    t: usize,
) -> Result<bool> {
    Ok(closure_t(g, vcol, acol, x, t)?.d.len() == g.n())
}

/// Components `Z` of `g - d` with their separators `N(Z)`, ordered by the
/// minimum vertex of `Z`.
pub fn components_and_separators(g: &Graph, d: &[usize]) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    if let Some(&v) = d.iter().find(|&&v| v >= g.n()) {
        return input(format!("vertex {v} out of range"));
    }
    let mut removed = vec![false; g.n()];
    d.iter().for_each(|&v| removed[v] = true);
    components_avoiding(g, &removed)
        .into_iter()
        .map(|z| {
            let s = neighborhood(g, &z)?;
            Ok((z, s))
        })
        .collect()
}

/// Partition classes of a closure result as plain lists, ordered by color.
pub fn final_partition(r: &ClosureResult) -> Vec<Vec<usize>> {
    r.final_coloring.classes()
}
