//! Simple undirected graphs on dense vertex ids, colorings with canonical
//! names, and the subgraph and contraction operators the algorithm needs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u},{v}) out of range for n = {n}"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { n, adj })
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect();
        Graph { n, adj }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    /// `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, &edges).expect("grid edges are valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).expect("biclique edges are valid")
    }

    /// Petersen graph: outer cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges).expect("petersen edges are valid")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut adj = self.adj.clone();
        for list in &other.adj {
            adj.push(list.iter().map(|&w| w + self.n).collect());
        }
        Graph { n: self.n + other.n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Image of the graph under `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n, &edges)
    }

    /// True if `map` is an isomorphism from `self` to `other`.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n != other.n || self.m() != other.m() || check_permutation(map, self.n).is_err() {
            return false;
        }
        self.edges().iter().all(|&(u, v)| other.has_edge(map[u], map[v]))
    }

    fn check_set(&self, set: &[usize]) -> Result<()> {
        if let Some(&v) = set.iter().find(|&&v| v >= self.n) {
            return input(format!("vertex {v} out of range for n = {}", self.n));
        }
        Ok(())
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return input(format!("permutation has length {}, expected {n}", perm.len()));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return input("not a permutation");
        }
        seen[p] = true;
    }
    Ok(())
}

fn sorted_unique(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// `g[a]` with vertices renumbered in increasing order of their original id.
/// The returned map sends new ids to original ids.
pub fn induced_subgraph(g: &Graph, a: &[usize]) -> Result<(Graph, Vec<usize>)> {
    g.check_set(a)?;
    let map = sorted_unique(a);
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        index[v] = i;
    }
    let adj = map
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| index[w] != usize::MAX).map(|&w| index[w]).collect())
        .collect();
    Ok((Graph { n: map.len(), adj }, map))
}

/// `G[A, B]`: the graph on `A ∪ B` keeping only edges with one end in `A` and
/// the other in `B`. Vertices keep their original ids, so the result has
/// `g.n()` vertices and those outside `A ∪ B` are isolated.
pub fn bipartite_block(g: &Graph, a: &[usize], b: &[usize]) -> Result<Graph> {
    g.check_set(a)?;
    g.check_set(b)?;
    let mut in_a = vec![false; g.n()];
    let mut in_b = vec![false; g.n()];
    a.iter().for_each(|&v| in_a[v] = true);
    b.iter().for_each(|&v| in_b[v] = true);
    let edges: Vec<_> = g.edges().into_iter().filter(|&(u, v)| (in_a[u] && in_b[v]) || (in_b[u] && in_a[v])).collect();
    Graph::from_edges(g.n(), &edges)
}

/// Connected components, each sorted, ordered by their minimum vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    components_avoiding(g, &vec![false; g.n()])
}

/// Components of `g` minus the vertices flagged in `removed`.
pub(crate) fn components_avoiding(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = removed.to_vec();
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || connected_components(g).len() == 1
}

/// Contracts every block to a single vertex. Blocks must partition the vertex
/// set and induce connected subgraphs. Block `i` becomes vertex `i`.
pub fn contract_partition(g: &Graph, blocks: &[Vec<usize>]) -> Result<Graph> {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return input(format!("block {i} is empty"));
        }
        g.check_set(block)?;
        for &v in block {
            if owner[v] != usize::MAX {
                return input(format!("vertex {v} lies in two blocks"));
            }
            owner[v] = i;
        }
    }
    if owner.contains(&usize::MAX) {
        return input("blocks do not cover the vertex set");
    }
    for (i, block) in blocks.iter().enumerate() {
        let (sub, _) = induced_subgraph(g, block)?;
        if !is_connected(&sub) {
            return input(format!("block {i} does not induce a connected subgraph"));
        }
    }
    let edges: Vec<_> =
        g.edges().into_iter().filter(|&(u, v)| owner[u] != owner[v]).map(|(u, v)| (owner[u], owner[v])).collect();
    Graph::from_edges(blocks.len(), &edges)
}

/// `N(X)`: vertices outside `x` adjacent to some vertex of `x`, sorted.
pub fn neighborhood(g: &Graph, x: &[usize]) -> Result<Vec<usize>> {
    g.check_set(x)?;
    let mut in_x = vec![false; g.n()];
    x.iter().for_each(|&v| in_x[v] = true);
    let mut mark = vec![false; g.n()];
    for &v in x {
        for &w in g.neighbors(v) {
            if !in_x[w] {
                mark[w] = true;
            }
        }
    }
    Ok((0..g.n()).filter(|&v| mark[v]).collect())
}

/// `Some((d1, d2))` if every vertex of `a` has exactly `d1` neighbors in `b`
/// and every vertex of `b` has exactly `d2` neighbors in `a`.
pub fn check_biregular(g: &Graph, a: &[usize], b: &[usize]) -> Option<(usize, usize)> {
    if g.check_set(a).is_err() || g.check_set(b).is_err() {
        return None;
    }
    let count = |v: usize, side: &[bool]| g.neighbors(v).iter().filter(|&&w| side[w]).count();
    let mut in_a = vec![false; g.n()];
    let mut in_b = vec![false; g.n()];
    a.iter().for_each(|&v| in_a[v] = true);
    b.iter().for_each(|&v| in_b[v] = true);
    let uniform = |set: &[usize], side: &[bool]| -> Option<usize> {
        let mut d = None;
        for &v in set {
            let c = count(v, side);
            match d {
                None => d = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
        Some(d.unwrap_or(0))
    };
    Some((uniform(a, &in_b)?, uniform(b, &in_a)?))
}

/// Assigns dense ids to arbitrary ordered keys by rank.
pub fn rank<T: Ord + Clone>(keys: &[T]) -> (Vec<usize>, usize) {
    let mut sorted: Vec<&T> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    let ids = keys.iter().map(|k| sorted.binary_search(&k).expect("key present")).collect();
    (ids, sorted.len())
}

/// Vertex coloring with dense ids `0..num_colors`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexColoring {
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

impl VertexColoring {
    pub fn uniform(n: usize) -> Self {
        VertexColoring { colors: vec![0; n], num_colors: usize::from(n > 0) }
    }

    pub fn discrete(n: usize) -> Self {
        VertexColoring { colors: (0..n).collect(), num_colors: n }
    }

    /// Normalizes arbitrary color values by rank.
    pub fn from_raw<T: Ord + Clone>(raw: &[T]) -> Self {
        let (colors, num_colors) = rank(raw);
        VertexColoring { colors, num_colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Color classes ordered by color id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.num_colors == self.colors.len()
    }
}

/// Colors of the arcs `(u, v)` of a graph; `colors[u][i]` belongs to the arc
/// from `u` to its `i`-th neighbor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcColoring {
    pub colors: Vec<Vec<usize>>,
}

impl ArcColoring {
    /// Builds an arc coloring from a function on ordered adjacent pairs.
    pub fn from_fn(g: &Graph, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let colors = (0..g.n()).map(|u| g.neighbors(u).iter().map(|&v| f(u, v)).collect()).collect();
        ArcColoring { colors }
    }

    pub fn get(&self, g: &Graph, u: usize, v: usize) -> Option<usize> {
        g.neighbors(u).binary_search(&v).ok().map(|i| self.colors[u][i])
    }

    pub(crate) fn fits(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && (0..g.n()).all(|u| self.colors[u].len() == g.degree(u))
    }
}

/// Coloring of all ordered pairs with dense ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairColoring {
    pub n: usize,
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

impl PairColoring {
    pub fn from_fn<T: Ord + Clone>(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut raw = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                raw.push(f(u, v));
            }
        }
        let (colors, num_colors) = rank(&raw);
        PairColoring { n, colors, num_colors }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> usize {
        self.colors[u * self.n + v]
    }

    /// Diagonal colors `χ(v, v)`, renamed densely.
    pub fn vertex_coloring(&self) -> VertexColoring {
        let raw: Vec<usize> = (0..self.n).map(|v| self.get(v, v)).collect();
        VertexColoring::from_raw(&raw)
    }

    /// Pair classes ordered by color id.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for u in 0..self.n {
            for v in 0..self.n {
                out[self.get(u, v)].push((u, v));
            }
        }
        out
    }

    /// Colors of pairs `(u, v)` with `uv` an edge, sorted and deduplicated.
    pub fn edge_colors(&self, g: &Graph) -> Vec<usize> {
        let mut out: Vec<usize> =
            (0..g.n()).flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v))).map(|(u, v)| self.get(u, v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Color classes of a raw color vector, ordered by color value.
pub fn partition_of(colors: &[usize]) -> Vec<Vec<usize>> {
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        map.entry(c).or_default().push(v);
    }
    map.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn induced_on_triangle() {
        let (h, map) = induced_subgraph(&Graph::complete(3), &[0, 1]).unwrap();
        assert_eq!(h, Graph::path(2));
        assert_eq!(map, vec![0, 1]);
        assert!(induced_subgraph(&Graph::complete(3), &[5]).is_err());
    }

    #[test]
    fn bipartite_block_of_c4() {
        let c4 = Graph::cycle(4);
        assert_eq!(bipartite_block(&c4, &[0, 2], &[1, 3]).unwrap(), c4);
    }

    #[test]
    fn components_of_two_triangles() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(connected_components(&g), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn contraction() {
        let c6 = Graph::cycle(6);
        let q = contract_partition(&c6, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(q, Graph::cycle(3));
        assert!(contract_partition(&c6, &[vec![0, 2], vec![1, 3], vec![4, 5]]).is_err());
        let k4 = Graph::complete(4);
        assert_eq!(contract_partition(&k4, &[vec![0, 1], vec![2, 3]]).unwrap(), Graph::path(2));
    }

    #[test]
    fn neighborhoods() {
        assert_eq!(neighborhood(&Graph::star(4), &[0]).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(neighborhood(&Graph::path(5), &[2]).unwrap(), vec![1, 3]);
    }

    #[test]
    fn biregular_checks() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(check_biregular(&k23, &[0, 1], &[2, 3, 4]), Some((3, 2)));
        let g = Graph::star(4).disjoint_union(&Graph::empty(1));
        assert_eq!(check_biregular(&g, &[0, 5], &[1, 2, 3, 4]), None);
    }

    #[test]
    fn rank_is_dense() {
        let (ids, k) = rank(&[5, 1, 5, 9]);
        assert_eq!(ids, vec![1, 0, 1, 2]);
        assert_eq!(k, 3);
    }
}
