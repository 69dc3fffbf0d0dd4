//! Packings of vertex-disjoint subgraphs that agree with a colored tree, and
//! topological clique witnesses built from them.
//!
//! A member of a packing is stored as one vertex per tree node. It agrees
//! with the tree when its vertex at node `i` has the color of node `i` and
//! every tree edge is an edge of the graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{input, invariant, Result};
use crate::graph::{check_biregular, connected_components, Graph, VertexColoring};
use crate::refinement::{color_refine, partitions_equivalent};

const NONE: usize = usize::MAX;

/// A tree whose nodes are distinct vertex colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoredTree {
    /// Color of each tree node.
    pub colors: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl ColoredTree {
    pub fn new(colors: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let k = colors.len();
        if k == 0 {
            return input("a colored tree needs at least one node");
        }
        if colors.iter().collect::<BTreeSet<_>>().len() != k {
            return input("tree node colors must be distinct");
        }
        if edges.len() + 1 != k {
            return input("a tree on k nodes has k - 1 edges");
        }
        let g = Graph::from_edges(k, &edges)?;
        if connected_components(&g).len() != 1 {
            return input("tree edges do not connect the nodes");
        }
        Ok(ColoredTree { colors, edges })
    }

    /// A path through the given colors.
    pub fn path(colors: Vec<usize>) -> Result<Self> {
        let edges = (1..colors.len()).map(|i| (i - 1, i)).collect();
        ColoredTree::new(colors, edges)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    fn graph(&self) -> Graph {
        Graph::from_edges(self.len(), &self.edges).expect("validated on construction")
    }

    /// `2 |V_{<=1}(T)| + |V_{>=3}(T)|`.
    pub fn ell(&self) -> usize {
        let t = self.graph();
        (0..t.n())
            .map(|v| match t.degree(v) {
                0 | 1 => 2,
                2 => 0,
                _ => 1,
            })
            .sum()
    }
}

/// Pairwise vertex-disjoint subgraphs agreeing with a colored tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreeingTreeFamily {
    pub tree: ColoredTree,
    /// `members[j][i]` is the vertex of member `j` at tree node `i`.
    pub members: Vec<Vec<usize>>,
}

/// True iff `member` agrees with `tree` in `g` under `chi`.
pub fn agrees(g: &Graph, chi: &VertexColoring, tree: &ColoredTree, member: &[usize]) -> bool {
    member.len() == tree.len()
        && member.iter().zip(&tree.colors).all(|(&v, &c)| v < g.n() && chi.colors[v] == c)
        && tree.edges.iter().all(|&(a, b)| g.has_edge(member[a], member[b]))
}

/// True iff every member agrees and no vertex is used twice.
pub fn family_is_valid(g: &Graph, chi: &VertexColoring, tree: &ColoredTree, members: &[Vec<usize>]) -> bool {
    let mut seen = BTreeSet::new();
    members.iter().all(|m| agrees(g, chi, tree, m) && m.iter().all(|&v| seen.insert(v)))
}

fn class_members(chi: &VertexColoring, color: usize) -> Vec<usize> {
    (0..chi.len()).filter(|&v| chi.colors[v] == color).collect()
}

fn check_blocks(g: &Graph, chi: &VertexColoring, tree: &ColoredTree) -> Result<Vec<Vec<usize>>> {
    if chi.len() != g.n() {
        return input("coloring does not match the graph");
    }
    let classes: Vec<Vec<usize>> = tree.colors.iter().map(|&c| class_members(chi, c)).collect();
    if let Some(i) = classes.iter().position(Vec::is_empty) {
        return input(format!("color {} of tree node {i} is empty", tree.colors[i]));
    }
    for &(a, b) in &tree.edges {
        match check_biregular(g, &classes[a], &classes[b]) {
            Some((d1, _)) if d1 > 0 => {}
            _ => {
                return input(format!(
                    "block between colors {} and {} is empty or not biregular",
                    tree.colors[a], tree.colors[b]
                ))
            }
        }
    }
    Ok(classes)
}

/// Adds one path to a family of vertex-disjoint paths agreeing with the
/// colored path `path`, starting from one of the unused vertices `x` of the
/// first color. Returns `None` when no admissible alternating path exists.
pub fn augment_path_family(
    g: &Graph,
    chi: &VertexColoring,
    path: &[usize],
    family: &[Vec<usize>],
    x: &[usize],
) -> Result<Option<Vec<Vec<usize>>>> {
    let tree = ColoredTree::path(path.to_vec())?;
    let layers = check_blocks(g, chi, &tree)?;
    if !family_is_valid(g, chi, &tree, family) {
        return input("family is not a set of disjoint agreeing paths");
    }
    let used: BTreeSet<usize> = family.iter().flatten().copied().collect();
    if x.iter().any(|v| used.contains(v) || chi.colors.get(*v) != Some(&path[0])) {
        return input("sources must be unused vertices of the first color");
    }
    let ends = augment_all(g, &layers, family, x)?;
    Ok(ends.into_iter().next().map(|(_, _, fam)| fam))
}

/// Multi-source augmentation. Returns, in breadth-first discovery order, each
/// reachable end vertex with the source it came from and the enlarged family.
fn augment_all(
    g: &Graph,
    layers: &[Vec<usize>],
    family: &[Vec<usize>],
    sources: &[usize],
) -> Result<Vec<(usize, usize, Vec<Vec<usize>>)>> {
    let s = layers.len();
    if s == 1 {
        return Ok(sources
            .iter()
            .map(|&x| {
                let mut fam = family.to_vec();
                fam.push(vec![x]);
                (x, x, fam)
            })
            .collect());
    }
    let n = g.n();
    let mut layer = vec![NONE; n];
    for (i, l) in layers.iter().enumerate() {
        l.iter().for_each(|&v| layer[v] = i);
    }
    // (member, position) of every used vertex.
    let mut slot = vec![NONE; n];
    for (j, p) in family.iter().enumerate() {
        for &v in p {
            slot[v] = j;
        }
    }
    const U: usize = 0;
    const IN: usize = 1;
    const OUT: usize = 2;
    let state = |v: usize, kind: usize| v * 3 + kind;
    let mut parent = vec![NONE; 3 * n];
    let mut queue = VecDeque::new();
    for &x in sources {
        let st = state(x, U);
        if parent[st] == NONE {
            parent[st] = st;
            queue.push_back(st);
        }
    }
    let mut found = Vec::new();
    let forward = |v: usize, skip: usize, out: &mut Vec<usize>| {
        let next = layer[v] + 1;
        if next >= s {
            return;
        }
        for &w in g.neighbors(v) {
            if layer[w] == next && w != skip {
                out.push(if slot[w] == NONE { state(w, U) } else { state(w, IN) });
            }
        }
    };
    let mut succ = Vec::new();
    while let Some(st) = queue.pop_front() {
        let (v, kind) = (st / 3, st % 3);
        succ.clear();
        match kind {
            U => {
                if layer[v] == s - 1 {
                    found.push(st);
                    continue;
                }
                forward(v, NONE, &mut succ);
            }
            IN => {
                if layer[v] > 0 {
                    let p = family[slot[v]][layer[v] - 1];
                    succ.push(state(p, OUT));
                }
            }
            _ => {
                let skip = if layer[v] + 1 < s { family[slot[v]][layer[v] + 1] } else { NONE };
                forward(v, skip, &mut succ);
                succ.push(state(v, IN));
            }
        }
        for &nx in &succ {
            if parent[nx] == NONE {
                parent[nx] = st;
                queue.push_back(nx);
            }
        }
    }
    let mut base_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in family {
        for w in p.windows(2) {
            base_edges.insert((w[0], w[1]));
        }
    }
    let mut out = Vec::new();
    for end in found {
        let mut chain = vec![end];
        while parent[*chain.last().expect("non-empty")] != *chain.last().expect("non-empty") {
            let last = *chain.last().expect("non-empty");
            chain.push(parent[last]);
        }
        chain.reverse();
        let mut edges = base_edges.clone();
        for pair in chain.windows(2) {
            let (a, ka) = (pair[0] / 3, pair[0] % 3);
            let (b, kb) = (pair[1] / 3, pair[1] % 3);
            if ka == IN && kb == OUT {
                edges.remove(&(b, a));
            } else if kb == U || kb == IN {
                if a == b {
                    continue;
                }
                edges.insert((a, b));
            }
        }
        let fam = decompose_paths(&edges, &layers[0], s)?;
        if fam.len() != family.len() + 1 {
            return invariant("augmentation did not add exactly one path");
        }
        out.push((chain[chain.len() - 1] / 3, chain[0] / 3, fam));
    }
    Ok(out)
}

fn decompose_paths(edges: &BTreeSet<(usize, usize)>, first: &[usize], s: usize) -> Result<Vec<Vec<usize>>> {
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    let mut indeg: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in edges {
        if next.insert(a, b).is_some() {
            return invariant("vertex with two outgoing path edges");
        }
        *indeg.entry(b).or_default() += 1;
    }
    if indeg.values().any(|&d| d > 1) {
        return invariant("vertex with two incoming path edges");
    }
    let mut out = Vec::new();
    for &start in first {
        if !next.contains_key(&start) {
            continue;
        }
        let mut p = vec![start];
        while let Some(&w) = next.get(p.last().expect("non-empty")) {
            p.push(w);
        }
        if p.len() != s {
            return invariant("augmented path has the wrong length");
        }
        out.push(p);
    }
    Ok(out)
}

struct Packer<'a> {
    g: &'a Graph,
    tree: Graph,
    classes: Vec<Vec<usize>>,
}

type Extensions = BTreeMap<usize, Vec<Vec<usize>>>;

impl Packer<'_> {
    fn degree_in(&self, sub: &[bool], c: usize) -> usize {
        self.tree.neighbors(c).iter().filter(|&&w| sub[w]).count()
    }

    /// Every unused vertex `v` of node `c` such that the family, restricted
    /// to `sub`, can be enlarged by one member whose `c`-vertex set becomes
    /// the old one plus `v`; mapped to such an enlarged family.
    fn extension(&self, sub: &[bool], family: &[Vec<usize>], c: usize) -> Result<Extensions> {
        match self.degree_in(sub, c) {
            0 => {
                let used: BTreeSet<usize> = family.iter().map(|m| m[c]).collect();
                let mut out = Extensions::new();
                for &v in &self.classes[c] {
                    if used.contains(&v) {
                        continue;
                    }
                    let mut fam: Vec<Vec<usize>> = family.iter().map(|m| self.restrict(m, sub)).collect();
                    let mut member = vec![NONE; self.tree.n()];
                    member[c] = v;
                    fam.push(member);
                    out.insert(v, fam);
                }
                Ok(out)
            }
            1 => self.extend_leaf(sub, family, c),
            _ => self.extend_branch(sub, family, c),
        }
    }

    fn restrict(&self, member: &[usize], sub: &[bool]) -> Vec<usize> {
        member.iter().enumerate().map(|(i, &v)| if sub[i] { v } else { NONE }).collect()
    }

    fn extend_leaf(&self, sub: &[bool], family: &[Vec<usize>], c: usize) -> Result<Extensions> {
        // Walk from c through degree-2 nodes; the walk ends at c_1.
        let mut path = vec![c];
        let mut prev = NONE;
        let mut cur = c;
        loop {
            let next = *self
                .tree
                .neighbors(cur)
                .iter()
                .find(|&&w| sub[w] && w != prev)
                .expect("walk continues inside the subtree");
            path.push(next);
            if self.degree_in(sub, next) != 2 {
                break;
            }
            prev = cur;
            cur = next;
        }
        path.reverse();
        let c1 = path[0];
        let mut rest = sub.to_vec();
        path[1..].iter().for_each(|&p| rest[p] = false);
        let inner = self.extension(&rest, family, c1)?;
        if inner.is_empty() {
            return Ok(Extensions::new());
        }
        let layers: Vec<Vec<usize>> = path.iter().map(|&p| self.classes[p].clone()).collect();
        let path_family: Vec<Vec<usize>> = family.iter().map(|m| path.iter().map(|&p| m[p]).collect()).collect();
        let sources: Vec<usize> = inner.keys().copied().collect();
        let mut out = Extensions::new();
        for (end, source, paths) in augment_all(self.g, &layers, &path_family, &sources)? {
            let base = &inner[&source];
            let mut fam = Vec::with_capacity(paths.len());
            for p in paths {
                let Some(m) = base.iter().find(|m| m[c1] == p[0]) else {
                    return invariant("extension lost a first-color vertex");
                };
                let mut member = self.restrict(m, &rest);
                for (i, &node) in path.iter().enumerate() {
                    member[node] = p[i];
                }
                fam.push(member);
            }
            out.insert(end, fam);
        }
        Ok(out)
    }

    fn extend_branch(&self, sub: &[bool], family: &[Vec<usize>], c: usize) -> Result<Extensions> {
        let mut without = sub.to_vec();
        without[c] = false;
        let mut parts = Vec::new();
        for &nb in self.tree.neighbors(c) {
            if !sub[nb] {
                continue;
            }
            let mut part = vec![false; self.tree.n()];
            let mut stack = vec![nb];
            part[nb] = true;
            while let Some(x) = stack.pop() {
                for &y in self.tree.neighbors(x) {
                    if without[y] && !part[y] {
                        part[y] = true;
                        stack.push(y);
                    }
                }
            }
            part[c] = true;
            let ext = self.extension(&part, family, c)?;
            parts.push((part, ext));
        }
        let mut keys: BTreeSet<usize> = parts[0].1.keys().copied().collect();
        for (_, ext) in &parts[1..] {
            keys.retain(|k| ext.contains_key(k));
        }
        let mut out = Extensions::new();
        for v in keys {
            let first = &parts[0].1[&v];
            let mut fam = Vec::with_capacity(first.len());
            for anchor in first.iter().map(|m| m[c]) {
                let mut member = vec![NONE; self.tree.n()];
                for (part, ext) in &parts {
                    let Some(m) = ext[&v].iter().find(|m| m[c] == anchor) else {
                        return invariant("branch extensions disagree on the shared color");
                    };
                    for i in 0..self.tree.n() {
                        if part[i] {
                            member[i] = m[i];
                        }
                    }
                }
                fam.push(member);
            }
            out.insert(v, fam);
        }
        Ok(out)
    }
}

/// Greedily packs vertex-disjoint subgraphs agreeing with `tree`, enlarging
/// the family one member at a time through extension sets. For biregular
/// blocks this yields at least `floor(m / ell)` members, where `m` is the
/// smallest class size.
pub fn pack_agreeing_trees(g: &Graph, chi: &VertexColoring, tree: &ColoredTree) -> Result<AgreeingTreeFamily> {
    let classes = check_blocks(g, chi, tree)?;
    let packer = Packer { g, tree: tree.graph(), classes };
    let all = vec![true; tree.len()];
    let mut family: Vec<Vec<usize>> = Vec::new();
    loop {
        let ext = packer.extension(&all, &family, 0)?;
        let Some((_, next)) = ext.into_iter().next() else {
            break;
        };
        if !family_is_valid(g, chi, tree, &next) {
            return invariant("packing produced an invalid family");
        }
        family = next;
    }
    Ok(AgreeingTreeFamily { tree: tree.clone(), members: family })
}

/// Lower bound `floor(m / ell)` on the packing size.
pub fn packing_guarantee(chi: &VertexColoring, tree: &ColoredTree) -> usize {
    let m = tree.colors.iter().map(|&c| class_members(chi, c).len()).min().unwrap_or(0);
    m / tree.ell()
}

/// A tree subgraph of `h`, given by its vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinerTree {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// A subgraph-minimal tree containing all terminals: a breadth-first tree
/// with non-terminal leaves pruned until none remain.
pub fn steiner_tree(h: &Graph, terminals: &[usize]) -> Result<SteinerTree> {
    if let Some(&v) = terminals.iter().find(|&&v| v >= h.n()) {
        return input(format!("terminal {v} out of range"));
    }
    if h.n() > 0 && connected_components(h).len() != 1 {
        return input("steiner_tree needs a connected graph");
    }
    let Some(&root) = terminals.iter().min() else {
        return Ok(SteinerTree { vertices: Vec::new(), edges: Vec::new() });
    };
    let mut parent = vec![NONE; h.n()];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in h.neighbors(v) {
            if parent[w] == NONE {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let is_terminal: BTreeSet<usize> = terminals.iter().copied().collect();
    let mut alive = vec![true; h.n()];
    let mut children = vec![0usize; h.n()];
    for v in 0..h.n() {
        if v != root {
            children[parent[v]] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..h.n()).filter(|&v| children[v] == 0 && !is_terminal.contains(&v)).collect();
    while let Some(v) = stack.pop() {
        alive[v] = false;
        if v == root {
            continue;
        }
        let p = parent[v];
        children[p] -= 1;
        if children[p] == 0 && !is_terminal.contains(&p) {
            stack.push(p);
        }
    }
    let vertices: Vec<usize> = (0..h.n()).filter(|&v| alive[v]).collect();
    let mut edges: Vec<(usize, usize)> =
        vertices.iter().filter(|&&v| v != root).map(|&v| (v.min(parent[v]), v.max(parent[v]))).collect();
    edges.sort_unstable();
    Ok(SteinerTree { vertices, edges })
}

/// A subdivision of `K_h`: branch vertices and one path per unordered pair,
/// listed in lexicographic pair order; path `(i, j)` runs from `branch[i]`
/// to `branch[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologicalWitness {
    pub branch: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

/// True iff the witness is a subdivision of `K_h` in `g`.
pub fn validate_witness(g: &Graph, w: &TopologicalWitness) -> bool {
    let h = w.branch.len();
    if w.paths.len() != h * h.saturating_sub(1) / 2 {
        return false;
    }
    let branch: BTreeSet<usize> = w.branch.iter().copied().collect();
    if branch.len() != h {
        return false;
    }
    let mut internal = BTreeSet::new();
    let mut k = 0;
    for i in 0..h {
        for j in i + 1..h {
            let p = &w.paths[k];
            k += 1;
            if p.len() < 2 || p[0] != w.branch[i] || p[p.len() - 1] != w.branch[j] {
                return false;
            }
            if !p.windows(2).all(|e| g.has_edge(e[0], e[1])) {
                return false;
            }
            for &v in &p[1..p.len() - 1] {
                if branch.contains(&v) || !internal.insert(v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Result of [`extract_topological_clique`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WitnessOutcome {
    Witness(TopologicalWitness),
    /// A class inside the region with fewer than `3h^3` vertices.
    SmallClass(Vec<usize>),
}

/// Builds a topological `K_h` with branch vertices `v1` when every color
/// class of the region `v2` has at least `3h^3` vertices; otherwise reports
/// the smallest-colored class that is too small.
///
/// Hypotheses: `chi` is stable, every vertex of `v1` is a singleton class,
/// `v2` is a union of classes with `N(v2) = v1`, and the classes of `v2`
/// form a connected graph.
pub fn extract_topological_clique(
    g: &Graph,
    chi: &VertexColoring,
    v1: &[usize],
    v2: &[usize],
) -> Result<WitnessOutcome> {
    let h = v1.len();
    if chi.len() != g.n() {
        return input("coloring does not match the graph");
    }
    let stable = color_refine(g, chi, None)?;
    if !partitions_equivalent(&stable.colors, &chi.colors)? {
        return input("coloring is not stable");
    }
    let classes = chi.classes();
    if v1.iter().any(|&v| v >= g.n() || classes[chi.colors[v]].len() != 1) {
        return input("branch vertices must be singleton classes");
    }
    let region: BTreeSet<usize> = v2.iter().copied().collect();
    let region_colors: BTreeSet<usize> = region.iter().map(|&v| chi.colors[v]).collect();
    if region_colors.iter().any(|&c| classes[c].iter().any(|v| !region.contains(v))) {
        return input("region must be a union of color classes");
    }
    let nv2 = crate::graph::neighborhood(g, v2)?;
    let mut sorted_v1 = v1.to_vec();
    sorted_v1.sort_unstable();
    if !region.is_empty() && nv2 != sorted_v1 {
        return input("the neighborhood of the region must be the branch set");
    }
    let pairs_adjacent = (0..h).all(|i| (i + 1..h).all(|j| g.has_edge(v1[i], v1[j])));
    if pairs_adjacent {
        let paths = (0..h).flat_map(|i| (i + 1..h).map(move |j| (i, j))).map(|(i, j)| vec![v1[i], v1[j]]).collect();
        return Ok(WitnessOutcome::Witness(TopologicalWitness { branch: v1.to_vec(), paths }));
    }
    let color_list: Vec<usize> = region_colors.iter().copied().collect();
    let index: BTreeMap<usize, usize> = color_list.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut cedges = Vec::new();
    for &v in &region {
        for &w in g.neighbors(v) {
            if region.contains(&w) && chi.colors[v] != chi.colors[w] {
                cedges.push((index[&chi.colors[v]], index[&chi.colors[w]]));
            }
        }
    }
    let color_graph = Graph::from_edges(color_list.len(), &cedges)?;
    if color_list.is_empty() || connected_components(&color_graph).len() != 1 {
        return input("the class graph of the region must be connected");
    }
    let bound = 3 * h * h * h;
    if let Some(&c) = color_list.iter().find(|&&c| classes[c].len() < bound) {
        return Ok(WitnessOutcome::SmallClass(classes[c].clone()));
    }
    let mut attach = Vec::with_capacity(h);
    for &v in v1 {
        let Some(&w) = g.neighbors(v).iter().find(|w| region.contains(w)) else {
            return input(format!("branch vertex {v} has no neighbor in the region"));
        };
        attach.push(index[&chi.colors[w]]);
    }
    let mut terminals = attach.clone();
    terminals.sort_unstable();
    terminals.dedup();
    let st = steiner_tree(&color_graph, &terminals)?;
    let node_of: BTreeMap<usize, usize> = st.vertices.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let tree = ColoredTree::new(
        st.vertices.iter().map(|&i| color_list[i]).collect(),
        st.edges.iter().map(|&(a, b)| (node_of[&a], node_of[&b])).collect(),
    )?;
    let packing = pack_agreeing_trees(g, chi, &tree)?;
    let tg = tree.graph();
    let mut members = packing.members.into_iter();
    let mut paths = Vec::new();
    for i in 0..h {
        for j in i + 1..h {
            if g.has_edge(v1[i], v1[j]) {
                paths.push(vec![v1[i], v1[j]]);
                continue;
            }
            let Some(m) = members.next() else {
                return invariant("tree packing smaller than the number of branch pairs");
            };
            let (a, b) = (node_of[&attach[i]], node_of[&attach[j]]);
            let mut p = vec![v1[i]];
            p.extend(tree_path(&tg, a, b).into_iter().map(|node| m[node]));
            p.push(v1[j]);
            paths.push(p);
        }
    }
    let w = TopologicalWitness { branch: v1.to_vec(), paths };
    if !validate_witness(g, &w) {
        return invariant("constructed witness failed validation");
    }
    Ok(WitnessOutcome::Witness(w))
}

fn tree_path(t: &Graph, a: usize, b: usize) -> Vec<usize> {
    let mut parent = vec![NONE; t.n()];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for &w in t.neighbors(v) {
            if parent[w] == NONE {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![b];
    while *path.last().expect("non-empty") != a {
        let last = *path.last().expect("non-empty");
        path.push(parent[last]);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_class(g: &Graph, left: usize) -> VertexColoring {
        VertexColoring::from_raw(&(0..g.n()).map(|v| usize::from(v >= left)).collect::<Vec<_>>())
    }

    #[test]
    fn augment_on_biclique() {
        let g = Graph::complete_bipartite(3, 3);
        let chi = two_class(&g, 3);
        let fam = augment_path_family(&g, &chi, &[0, 1], &[], &[0]).unwrap().unwrap();
        assert_eq!(fam.len(), 1);
    }

    #[test]
    fn augment_matching() {
        let g = Graph::from_edges(6, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        let chi = two_class(&g, 3);
        let fam = augment_path_family(&g, &chi, &[0, 1], &[vec![0, 3], vec![1, 4]], &[2]).unwrap().unwrap();
        assert_eq!(fam.len(), 3);
    }

    #[test]
    fn augment_needs_backward_step() {
        // C_6 = 0-3-1-4-2-5-0 with sides {0,1,2} and {3,4,5}.
        let g = Graph::from_edges(6, &[(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0)]).unwrap();
        let chi = two_class(&g, 3);
        // Path 1-3 blocks vertex 0's neighbor 3; 0 must take 5 after rerouting.
        let fam = vec![vec![1, 3]];
        let got = augment_path_family(&g, &chi, &[0, 1], &fam, &[0]).unwrap().unwrap();
        assert_eq!(got.len(), 2);
        assert!(family_is_valid(&g, &chi, &ColoredTree::path(vec![0, 1]).unwrap(), &got));
    }

    #[test]
    fn single_color_tree_packs_every_vertex() {
        let g = Graph::empty(5);
        let chi = VertexColoring::uniform(5);
        let t = ColoredTree::new(vec![0], vec![]).unwrap();
        assert_eq!(pack_agreeing_trees(&g, &chi, &t).unwrap().members.len(), 5);
    }

    #[test]
    fn steiner_on_grid_corners() {
        let g = Graph::grid(3, 3);
        let st = steiner_tree(&g, &[0, 2, 6, 8]).unwrap();
        assert!((7..=9).contains(&st.vertices.len()));
        assert_eq!(st.edges.len() + 1, st.vertices.len());
        assert!(steiner_tree(&Graph::empty(2), &[0, 1]).is_err());
    }

    #[test]
    fn adjacent_pair_is_trivial_witness() {
        let g = Graph::path(2);
        let chi = VertexColoring::discrete(2);
        match extract_topological_clique(&g, &chi, &[0, 1], &[]).unwrap() {
            WitnessOutcome::Witness(w) => assert!(validate_witness(&g, &w)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn packing_meets_guarantee_on_stacks() {
        let mut r = crate::corpus::rng(11);
        for _ in 0..20 {
            let s = crate::corpus::tree_stack(5, 12, 2, &mut r).unwrap();
            let fam = pack_agreeing_trees(&s.graph, &s.coloring, &s.tree).unwrap();
            assert!(family_is_valid(&s.graph, &s.coloring, &s.tree, &fam.members));
            assert!(fam.members.len() >= packing_guarantee(&s.coloring, &s.tree));
        }
    }

    #[test]
    fn witness_on_engineered_instance() {
        let inst = crate::corpus::clique_instance(3, 81, 2, &mut crate::corpus::rng(5)).unwrap();
        let init: Vec<usize> = (0..inst.graph.n()).map(|v| if v < 3 { v + 1 } else { 0 }).collect();
        let chi = color_refine(&inst.graph, &VertexColoring::from_raw(&init), None).unwrap();
        match extract_topological_clique(&inst.graph, &chi, &inst.branch, &inst.region).unwrap() {
            WitnessOutcome::Witness(w) => assert!(validate_witness(&inst.graph, &w)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
