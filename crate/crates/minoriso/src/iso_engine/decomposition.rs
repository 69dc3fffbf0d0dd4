//! Tree decompositions read off the recursion: each node's bag is its set
//! `D`, and the children are the components of `G - D` together with their
//! separators.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::config::Config;
use crate::error::{input, Result};
use crate::graph::{connected_components, induced_subgraph, rank, Graph, VertexColoring};

use super::engine::{Engine, Problem};

/// A rooted tree decomposition; node 0 is the root and `edges` point from
/// parent to child.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest intersection of adjacent bags.
    pub fn adhesion(&self) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let x: BTreeSet<usize> = self.bags[a].iter().copied().collect();
                self.bags[b].iter().filter(|v| x.contains(v)).count()
            })
            .max()
            .unwrap_or(0)
    }

    /// Checks that the nodes form a tree, every vertex and edge of `g` lies
    /// in a bag, and the bags holding any vertex are connected in the tree.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        let k = self.bags.len();
        if k == 0 || self.edges.len() != k - 1 {
            return Err("node and edge counts do not form a tree".into());
        }
        let mut parent = vec![usize::MAX; k];
        for &(a, b) in &self.edges {
            if a >= k || b >= k || b == 0 || parent[b] != usize::MAX {
                return Err(format!("bad tree edge ({a}, {b})"));
            }
            parent[b] = a;
        }
        // Every node must reach the root.
        for start in 0..k {
            let (mut x, mut steps) = (start, 0);
            while x != 0 {
                x = parent[x];
                steps += 1;
                if x == usize::MAX || steps > k {
                    return Err(format!("node {start} does not reach the root"));
                }
            }
        }
        let holds: Vec<BTreeSet<usize>> = self.bags.iter().map(|b| b.iter().copied().collect()).collect();
        for (u, v) in g.edges() {
            if !holds.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                return Err(format!("edge ({u}, {v}) lies in no bag"));
            }
        }
        for v in 0..g.n() {
            let nodes: Vec<usize> = (0..k).filter(|&i| holds[i].contains(&v)).collect();
            if nodes.is_empty() {
                return Err(format!("vertex {v} lies in no bag"));
            }
            // Connected iff exactly one holding node has a parent outside.
            let tops = nodes.iter().filter(|&&i| i == 0 || !holds[parent[i]].contains(&v)).count();
            if tops != 1 {
                return Err(format!("bags holding vertex {v} are not connected"));
            }
        }
        Ok(())
    }
}

/// Decomposition of a colored graph; `None` when a `K_h` minor is found.
/// A disconnected graph gets an empty root bag above its components.
pub fn tree_decomposition(g: &Graph, c: &VertexColoring, cfg: &Config) -> Result<Option<TreeDecomposition>> {
    cfg.validate()?;
    if c.len() != g.n() {
        return input("vertex coloring does not match the graph");
    }
    let engine = Engine::new(cfg);
    let mut out = TreeDecomposition { bags: Vec::new(), edges: Vec::new() };
    let comps = connected_components(g);
    let under = if comps.len() == 1 {
        None
    } else {
        out.bags.push(Vec::new());
        Some(0)
    };
    for comp in comps {
        let (sub, map) = induced_subgraph(g, &comp)?;
        let colors = map.iter().map(|&v| c.colors[v]).collect();
        let p = Problem { g: sub, colors, s: Vec::new() };
        if !build(&engine, &p, &map, under, &mut out)? {
            return Ok(None);
        }
    }
    Ok(Some(out))
}

/// Adds the subtree of `p` below `parent`; `false` on a minor.
fn build(
    engine: &Engine<'_>,
    p: &Problem,
    map: &[usize],
    parent: Option<usize>,
    out: &mut TreeDecomposition,
) -> Result<bool> {
    let id = out.bags.len();
    if let Some(par) = parent {
        out.edges.push((par, id));
    }
    if p.g.n() < engine.cfg.h {
        out.bags.push(map.to_vec());
        return Ok(true);
    }
    let Some(split) = engine.split(p)? else {
        return Ok(false);
    };
    out.bags.push(split.d.iter().map(|&v| map[v]).collect());
    for (z, sep) in &split.comps {
        let mut verts = z.clone();
        verts.extend(sep.iter().copied());
        let (sub, sub_map) = induced_subgraph(&p.g, &verts)?;
        let keys: Vec<(bool, usize)> = sub_map.iter().map(|&v| (sep.binary_search(&v).is_err(), p.colors[v])).collect();
        let (colors, _) = rank(&keys);
        let s = (0..sub_map.len()).filter(|&i| !keys[i].0).collect();
        let child = Problem { g: sub, colors, s };
        let child_map: Vec<usize> = sub_map.iter().map(|&v| map[v]).collect();
        if !build(engine, &child, &child_map, Some(id), out)? {
            return Ok(false);
        }
    }
    Ok(true)
}
