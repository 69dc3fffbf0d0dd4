//! Seeded generators for test corpora: random planar graphs, partial k-trees,
//! G(n, p), random trees, and colored instances for the packing lemmas.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::{is_connected, Graph, VertexColoring};
use crate::witness::ColoredTree;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Relabels `g` by a uniformly random permutation.
pub fn shuffled<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    let p = random_permutation(g.n(), rng);
    g.relabel(&p).expect("random permutation is valid")
}

/// Random stacked triangulation on `n` vertices (a maximal planar graph),
/// then each edge is deleted with probability `delete` as long as the graph
/// stays connected. Vertex ids are shuffled.
pub fn random_planar<R: Rng>(n: usize, delete: f64, rng: &mut R) -> Graph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if n <= 3 {
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
    } else {
        edges.extend([(0, 1), (1, 2), (0, 2)]);
        let mut faces = vec![[0, 1, 2], [0, 1, 2]];
        for v in 3..n {
            let f = rng.gen_range(0..faces.len());
            let [a, b, c] = faces.swap_remove(f);
            edges.extend([(a, v), (b, v), (c, v)]);
            faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
        }
    }
    let g = Graph::from_edges(n, &edges).expect("valid edges");
    shuffled(&thin_connected(&g, delete, rng), rng)
}

/// Deletes each edge with probability `p`, skipping deletions that would
/// disconnect the graph.
fn thin_connected<R: Rng>(g: &Graph, p: f64, rng: &mut R) -> Graph {
    let mut edges = g.edges();
    edges.shuffle(rng);
    let mut keep = edges.clone();
    for e in edges {
        if !rng.gen_bool(p.clamp(0.0, 1.0)) {
            continue;
        }
        let trial: Vec<_> = keep.iter().copied().filter(|&f| f != e).collect();
        let h = Graph::from_edges(g.n(), &trial).expect("valid edges");
        if is_connected(&h) {
            keep = trial;
        }
    }
    Graph::from_edges(g.n(), &keep).expect("valid edges")
}

/// Random k-tree on `n` vertices, thinned like [`random_planar`]. The result
/// is connected and has treewidth at most `k`.
pub fn random_partial_k_tree<R: Rng>(n: usize, k: usize, delete: f64, rng: &mut R) -> Graph {
    let base = (k + 1).min(n);
    let mut edges = Vec::new();
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    if base == k + 1 {
        for skip in 0..base {
            cliques.push((0..base).filter(|&x| x != skip).collect());
        }
    }
    for v in base..n {
        let c = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &c {
            edges.push((u, v));
        }
        for skip in 0..c.len() {
            let mut nc: Vec<usize> =
                c.iter().copied().enumerate().filter(|&(i, _)| i != skip).map(|(_, x)| x).collect();
            nc.push(v);
            cliques.push(nc);
        }
    }
    let g = Graph::from_edges(n, &edges).expect("valid edges");
    shuffled(&thin_connected(&g, delete, rng), rng)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// Uniform random recursive tree (each vertex attaches to an earlier one).
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    shuffled(&Graph::from_edges(n, &edges).expect("valid edges"), rng)
}

/// A colored instance for tree packing: one class per tree node, and for
/// every tree edge a biregular block made of `d` shifted perfect matchings
/// (through a random bijection), so neighbors differ per block.
#[derive(Debug, Clone)]
pub struct TreeStack {
    pub graph: Graph,
    pub coloring: VertexColoring,
    pub tree: ColoredTree,
}

/// Builds a [`TreeStack`] on a random tree with `nodes` nodes, classes of
/// size `m` (a random half of them doubled to `2m`), and block degree `d`.
pub fn tree_stack<R: Rng>(nodes: usize, m: usize, d: usize, rng: &mut R) -> Result<TreeStack> {
    if nodes == 0 || m == 0 || d == 0 || d > m {
        return input("tree_stack needs nodes, m >= 1 and 1 <= d <= m");
    }
    let shape = random_tree(nodes, rng);
    let sizes: Vec<usize> = (0..nodes).map(|_| if rng.gen_bool(0.3) { 2 * m } else { m }).collect();
    let mut offset = vec![0; nodes + 1];
    for i in 0..nodes {
        offset[i + 1] = offset[i] + sizes[i];
    }
    let n = offset[nodes];
    let mut edges = Vec::new();
    for (a, b) in shape.edges() {
        // Every vertex of the larger class hits `d` vertices of the smaller
        // one through the index map `x mod small`.
        let (small, large) = if sizes[a] <= sizes[b] { (a, b) } else { (b, a) };
        let ps = random_permutation(sizes[small], rng);
        let pl = random_permutation(sizes[large], rng);
        let shifts: Vec<usize> = {
            let mut all: Vec<usize> = (0..sizes[small]).collect();
            all.shuffle(rng);
            all.truncate(d);
            all
        };
        for (x, &px) in pl.iter().enumerate() {
            for &s in &shifts {
                let y = (x + s) % sizes[small];
                edges.push((offset[large] + px, offset[small] + ps[y]));
            }
        }
    }
    let colors: Vec<usize> = (0..n).map(|v| (0..nodes).find(|&i| v < offset[i + 1]).expect("in range")).collect();
    let graph = Graph::from_edges(n, &edges)?;
    Ok(TreeStack {
        graph,
        coloring: VertexColoring { colors, num_colors: nodes },
        tree: ColoredTree::new((0..nodes).collect(), shape.edges())?,
    })
}

/// An instance satisfying the clique-extraction hypotheses: `h` branch
/// vertices, each joined to its own class of size `m`, and a hub class of
/// size `m` joined to every branch class by `d` shifted matchings.
#[derive(Debug, Clone)]
pub struct CliqueInstance {
    pub graph: Graph,
    pub branch: Vec<usize>,
    pub region: Vec<usize>,
}

pub fn clique_instance<R: Rng>(h: usize, m: usize, d: usize, rng: &mut R) -> Result<CliqueInstance> {
    if h < 2 || m == 0 || d == 0 || d > m {
        return input("clique_instance needs h >= 2 and 1 <= d <= m");
    }
    // Branch vertices 0..h, class i at h + i*m, hub at h + h*m.
    let hub = h + h * m;
    let mut edges = Vec::new();
    for i in 0..h {
        let base = h + i * m;
        let mut shifts: Vec<usize> = (0..m).collect();
        shifts.shuffle(rng);
        shifts.truncate(d);
        for x in 0..m {
            edges.push((i, base + x));
            for &s in &shifts {
                edges.push((base + x, hub + (x + s) % m));
            }
        }
    }
    let n = hub + m;
    let graph = Graph::from_edges(n, &edges)?;
    Ok(CliqueInstance { graph, branch: (0..h).collect(), region: (h..n).collect() })
}

/// Corpus families understood by the `gen-corpus` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Planar,
    KTree,
    Gnp,
    Tree,
}

/// `count` graphs of a family with `n` vertices, deterministic in `seed`.
pub fn generate(family: Family, count: usize, n: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| match family {
            Family::Planar => random_planar(n, 0.3, &mut r),
            Family::KTree => random_partial_k_tree(n, 3, 0.3, &mut r),
            Family::Gnp => gnp(n, 3.0 / n.max(1) as f64, &mut r),
            Family::Tree => random_tree(n, &mut r),
        })
        .collect()
}
