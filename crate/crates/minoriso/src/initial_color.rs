//! The invariant initial color class finder built on 2-WL.
//!
//! Given a connected colored graph, [`find_initial_class`] either concludes
//! that the graph has a `K_h` minor or returns a pair-colored graph `G'`
//! and a diagonal color class `X ⊆ V(G)` of `G'` with `X ⊆ cl_t(v)` for every
//! `v ∈ X`. All choices follow the canonical color order, so isomorphic
//! inputs give corresponding outputs. Whenever the case analysis finds an
//! invariant vertex coloring strictly finer than the current one, 2-WL is
//! rerun with it and the analysis restarts.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::closure::{closure_t_pair, components_and_separators};
use crate::config::{t_for_h_with, Config};
use crate::error::{input, invariant, Result};
use crate::graph::{connected_components, contract_partition, rank, Graph, PairColoring, VertexColoring};
use crate::refinement::{wl2, wl2_round, Wl2Init};

/// `G/c` with its induced pair coloring.
#[derive(Debug, Clone)]
pub struct Factor {
    pub graph: Graph,
    pub coloring: PairColoring,
    /// Vertex `i` of the factor graph is the block `blocks[i]` of `G`.
    pub blocks: Vec<Vec<usize>>,
}

/// Undirected edges `vw` with `pc(v, w) = c` or `pc(w, v) = c`.
fn color_edges(g: &Graph, pc: &PairColoring, c: usize) -> Vec<(usize, usize)> {
    g.edges().into_iter().filter(|&(v, w)| pc.get(v, w) == c || pc.get(w, v) == c).collect()
}

/// Contracts the components of `G[c]`. Pair colors of the factor graph are
/// the sorted multisets of the pair colors between blocks, ranked.
pub fn factor_by_edge_color(g: &Graph, pc: &PairColoring, c: usize) -> Result<Factor> {
    if pc.n != g.n() {
        return input("pair coloring does not match the graph");
    }
    let ce = color_edges(g, pc, c);
    if ce.is_empty() {
        return input(format!("color {c} is not an edge color"));
    }
    let gc = Graph::from_edges(g.n(), &ce)?;
    let mut blocks = connected_components(&gc);
    blocks.sort_by_key(|b| b[0]);
    let graph = contract_partition(g, &blocks)?;
    let q = blocks.len();
    let mut keys: Vec<Vec<usize>> = Vec::with_capacity(q * q);
    for x in &blocks {
        for y in &blocks {
            let mut ms: Vec<usize> =
                x.iter().flat_map(|&v| y.iter().map(move |&w| (v, w))).map(|(v, w)| pc.get(v, w)).collect();
            ms.sort_unstable();
            keys.push(ms);
        }
    }
    // Distinct multisets must have disjoint supports.
    let mut owner: BTreeMap<usize, &Vec<usize>> = BTreeMap::new();
    for k in &keys {
        for x in k {
            match owner.get(x) {
                Some(other) if *other != k => return invariant("factor colors are neither equal nor disjoint"),
                _ => {
                    owner.insert(*x, k);
                }
            }
        }
    }
    let (colors, num_colors) = rank(&keys);
    Ok(Factor { graph, coloring: PairColoring { n: q, colors, num_colors }, blocks })
}

/// The subgraph `G[c]` of one edge color and its size parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColorView {
    pub color: usize,
    pub vertices: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub unicolored: bool,
    /// `min_d |A ∩ V_d|` over the diagonal colors `d` met by the first
    /// component `A`.
    pub s: usize,
}

pub fn edge_color_view(g: &Graph, pc: &PairColoring, c: usize) -> Result<EdgeColorView> {
    let ce = color_edges(g, pc, c);
    if ce.is_empty() {
        return input(format!("color {c} is not an edge color"));
    }
    let gc = Graph::from_edges(g.n(), &ce)?;
    let components: Vec<Vec<usize>> = connected_components(&gc).into_iter().filter(|a| a.len() > 1).collect();
    let vertices: Vec<usize> = {
        let mut v: Vec<usize> = components.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    };
    let diag: BTreeSet<usize> = vertices.iter().map(|&v| pc.get(v, v)).collect();
    let mut per: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in &components[0] {
        *per.entry(pc.get(v, v)).or_default() += 1;
    }
    let s = per.values().copied().min().unwrap_or(0);
    Ok(EdgeColorView { color: c, vertices, components, unicolored: diag.len() == 1, s })
}

/// Output of [`cross_color_minor_lift`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossColorLift {
    /// Colors `c_1 < ... < c_r` whose pairs make up `E*`.
    pub colors: Vec<usize>,
    /// `H_i` on `V1`; vertex `j` is `v1[j]`.
    pub graphs: Vec<Graph>,
    /// For every color, a maximum matching of `V2` into the `c_i` pairs:
    /// `(w, (a, b))` routes the pair `ab` through `w`.
    pub matchings: Vec<Vec<(usize, (usize, usize))>>,
    /// `certified[i]` holds when the matching covers every `c_i` pair, which
    /// exhibits `H_i` as a minor.
    pub certified: Vec<bool>,
}

fn check_bipartite_single_color(g: &Graph, pc: &PairColoring, v1: &[usize], v2: &[usize]) -> Result<()> {
    if pc.n != g.n() {
        return input("pair coloring does not match the graph");
    }
    let mut side = vec![0u8; g.n()];
    for &v in v1 {
        if v >= g.n() {
            return input(format!("vertex {v} out of range"));
        }
        side[v] = 1;
    }
    for &v in v2 {
        if v >= g.n() || side[v] == 1 {
            return input("sides must be disjoint and in range");
        }
        side[v] = 2;
    }
    if side.contains(&0) {
        return input("the two sides must cover the graph");
    }
    let mut cross = BTreeSet::new();
    for (v, w) in g.edges() {
        if side[v] == side[w] {
            return input("graph is not bipartite between the given sides");
        }
        let (a, b) = if side[v] == 1 { (v, w) } else { (w, v) };
        cross.insert(pc.get(a, b));
    }
    if cross.len() > 1 {
        return input("more than one cross edge color");
    }
    if connected_components(g).len() != 1 {
        return input("graph is not connected");
    }
    Ok(())
}

/// For a connected bipartite `(V1, V2)` graph with one cross color and
/// `|V2| > a h log h |V1|`: splits the pairs of `V1` with a common neighbor
/// by pair color and certifies each color graph as a minor via matchings.
pub fn cross_color_minor_lift(
    g: &Graph,
    pc: &PairColoring,
    v1: &[usize],
    v2: &[usize],
    cfg: &Config,
) -> Result<CrossColorLift> {
    check_bipartite_single_color(g, pc, v1, v2)?;
    if (v2.len() as f64) <= cfg.degree_bound() * v1.len() as f64 {
        return input("requires |V2| > a h log h |V1|");
    }
    let index: BTreeMap<usize, usize> = v1.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut star: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &w in v2 {
        let nb = g.neighbors(w);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                star.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut by_color: BTreeMap<usize, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for &(a, b) in &star {
        by_color.entry(pc.get(a, b)).or_default().insert((a, b));
        by_color.entry(pc.get(b, a)).or_default().insert((a, b));
    }
    let mut out =
        CrossColorLift { colors: Vec::new(), graphs: Vec::new(), matchings: Vec::new(), certified: Vec::new() };
    for (c, pairs) in by_color {
        let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        let edges: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (index[&a], index[&b])).collect();
        // B: left = V2, right = pairs.
        let adj: Vec<Vec<usize>> = v2
            .iter()
            .map(|&w| (0..pairs.len()).filter(|&p| g.has_edge(w, pairs[p].0) && g.has_edge(w, pairs[p].1)).collect())
            .collect();
        let mate = hopcroft_karp(&adj, pairs.len());
        let matching: Vec<(usize, (usize, usize))> =
            mate.iter().enumerate().filter_map(|(i, m)| m.map(|p| (v2[i], pairs[p]))).collect();
        out.certified.push(matching.len() == pairs.len());
        out.colors.push(c);
        out.graphs.push(Graph::from_edges(v1.len(), &edges)?);
        out.matchings.push(matching);
    }
    Ok(out)
}

/// Maximum bipartite matching; returns the partner of every left vertex.
pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let left = adj.len();
    let mut ml: Vec<Option<usize>> = vec![None; left];
    let mut mr: Vec<Option<usize>> = vec![None; right];
    loop {
        let mut dist = vec![INF; left];
        let mut queue = std::collections::VecDeque::new();
        for u in 0..left {
            if ml[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match mr[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return ml;
        }
        fn dfs(
            u: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            ml: &mut [Option<usize>],
            mr: &mut [Option<usize>],
        ) -> bool {
            for &v in &adj[u] {
                let ok = match mr[v] {
                    None => true,
                    Some(w) => dist[w] == dist[u] + 1 && dfs(w, adj, dist, ml, mr),
                };
                if ok {
                    ml[u] = Some(v);
                    mr[v] = Some(u);
                    return true;
                }
            }
            dist[u] = usize::MAX;
            false
        }
        for u in 0..left {
            if ml[u].is_none() {
                dfs(u, adj, &mut dist, &mut ml, &mut mr);
            }
        }
    }
}

/// True iff the closure of every single vertex covers `V1`.
pub fn bipartite_closure_check(g: &Graph, pc: &PairColoring, v1: &[usize], v2: &[usize], t: usize) -> Result<bool> {
    check_bipartite_single_color(g, pc, v1, v2)?;
    if v1.len() > v2.len() {
        return input("requires |V1| <= |V2|");
    }
    for v in 0..g.n() {
        let d: BTreeSet<usize> = closure_t_pair(g, pc, &[v], t)?.d.into_iter().collect();
        if !v1.iter().all(|x| d.contains(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The output of [`find_initial_class`] when no minor was found.
#[derive(Debug, Clone)]
pub struct InitialClass {
    pub g_prime: Graph,
    pub chi_prime: PairColoring,
    /// The class, as vertices of `g_prime`.
    pub x: Vec<usize>,
    /// Diagonal color of the class in `chi_prime`.
    pub color: usize,
    /// `origin[v]` is the vertex of the input graph that `v ∈ V(G')` stands
    /// for, if any.
    pub origin: Vec<Option<usize>>,
    pub restarts: usize,
    /// Times the non-regular fallback refinement fired.
    pub fallback_firings: usize,
}

impl InitialClass {
    /// The class as vertices of the input graph, sorted.
    pub fn x_in_g(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.x.iter().map(|&v| self.origin[v].expect("class lies in the input graph")).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone)]
pub enum InitialColorOutput {
    Class(InitialClass),
    MinorFound,
}

enum Step {
    Done(InitialClass),
    Minor,
    /// An invariant vertex coloring to refine by, as one key per vertex.
    Refine(Vec<Vec<usize>>),
}

/// Finds an invariant initial color class of a connected colored graph, or
/// concludes that it has a `K_h` minor.
///
/// The output is verified before it is returned: if some `v ∈ X` has
/// `X ⊄ cl_t(v)`, the guarantee for `K_h`-minor-free graphs is violated and
/// the result is `MinorFound`. Minor conclusions need `t >= (a h log h)^3`;
/// with a smaller `t` the smallest 2-WL vertex class is returned instead.
pub fn find_initial_class(g: &Graph, vcol: &VertexColoring, cfg: &Config) -> Result<InitialColorOutput> {
    cfg.validate()?;
    if vcol.len() != g.n() {
        return input("vertex coloring does not match the graph");
    }
    if g.n() == 0 || connected_components(g).len() != 1 {
        return input("find_initial_class needs a non-empty connected graph");
    }
    let init = PairColoring::from_fn(g.n(), |u, v| (vcol.colors[u], vcol.colors[v]));
    let finder = Finder { cfg };
    let certified = cfg.t() >= t_for_h_with(cfg.h, cfg.a, cfg.log_base);
    let out = finder.run(g, init.clone())?;
    let class = match out {
        InitialColorOutput::Class(class) if !certified || postcondition_holds(&class, cfg.t())? => class,
        _ if certified => {
            log::debug!("initial class on {} vertices: minor", g.n());
            return Ok(InitialColorOutput::MinorFound);
        }
        // Below the threshold nothing about minors follows; fall back to
        // the smallest 2-WL vertex class.
        _ => {
            log::debug!("below the certified threshold; using the smallest 2-WL class");
            smallest_class(g, &wl2(g, Wl2Init::Pair(&init))?)
        }
    };
    Ok(InitialColorOutput::Class(class))
}

fn smallest_class(g: &Graph, chi: &PairColoring) -> InitialClass {
    let vc = chi.vertex_coloring();
    let x = vc.classes().into_iter().min_by_key(|c| (c.len(), vc.colors[c[0]])).expect("non-empty graph");
    identity_class(g, chi, x)
}

/// `X ⊆ cl_t(v)` for every `v ∈ X`, checked on `(G', χ')`.
pub fn postcondition_holds(class: &InitialClass, t: usize) -> Result<bool> {
    if class.x.is_empty() {
        return Ok(false);
    }
    // With t >= n every class gets individualized, so a non-empty seed
    // closes to the whole vertex set.
    if t >= class.g_prime.n() {
        return Ok(true);
    }
    for &v in &class.x {
        let d: BTreeSet<usize> = closure_t_pair(&class.g_prime, &class.chi_prime, &[v], t)?.d.into_iter().collect();
        if !class.x.iter().all(|x| d.contains(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Finder<'a> {
    cfg: &'a Config,
}

impl Finder<'_> {
    fn run(&self, g: &Graph, init: PairColoring) -> Result<InitialColorOutput> {
        let n = g.n();
        let mut chi = wl2(g, Wl2Init::Pair(&init))?;
        let mut restarts = 0;
        let mut fallbacks = 0;
        loop {
            match self.step(g, &chi, &mut fallbacks)? {
                Step::Done(mut class) => {
                    class.restarts += restarts;
                    class.fallback_firings += fallbacks;
                    return Ok(InitialColorOutput::Class(class));
                }
                Step::Minor => return Ok(InitialColorOutput::MinorFound),
                Step::Refine(keys) => {
                    let before = chi.vertex_coloring().num_colors;
                    let next_init = PairColoring::from_fn(n, |u, v| (chi.get(u, v), keys[u].clone(), keys[v].clone()));
                    let next = wl2(g, Wl2Init::Pair(&next_init))?;
                    if next.vertex_coloring().num_colors <= before {
                        return invariant("restart refinement is not strictly finer");
                    }
                    restarts += 1;
                    if restarts > n {
                        return invariant("more restarts than vertices");
                    }
                    chi = next;
                }
            }
        }
    }

    fn step(&self, g: &Graph, chi: &PairColoring, fallbacks: &mut usize) -> Result<Step> {
        let n = g.n();
        let edge_colors = chi.edge_colors(g);
        let small_bound = self.cfg.a * (self.cfg.h as f64).powi(3);
        for &c in &edge_colors {
            let view = edge_color_view(g, chi, c)?;
            if (view.s as f64) <= small_bound {
                return self.contract_branch(g, chi, c);
            }
        }
        if n == 1 {
            return Ok(Step::Done(identity_class(g, chi, vec![0])));
        }
        self.large_branch(g, chi, &edge_colors, fallbacks)
    }

    /// Some edge color has few vertices per component: recurse on `G/c`.
    fn contract_branch(&self, g: &Graph, chi: &PairColoring, c: usize) -> Result<Step> {
        let factor = factor_by_edge_color(g, chi, c)?;
        let sub = match self.run(&factor.graph, factor.coloring.clone())? {
            InitialColorOutput::MinorFound => return Ok(Step::Minor),
            InitialColorOutput::Class(sub) => sub,
        };
        // Map origins through the factor graph: only singleton blocks are
        // vertices of G.
        let through = |o: Option<usize>| -> Option<usize> {
            o.and_then(|f| if factor.blocks[f].len() == 1 { Some(factor.blocks[f][0]) } else { None })
        };
        let x_blocks: Vec<usize> = sub.x.iter().map(|&v| sub.origin[v].expect("class lies in F")).collect();
        if x_blocks.iter().all(|&f| factor.blocks[f].len() == 1) {
            let origin = sub.origin.iter().map(|&o| through(o)).collect();
            return Ok(Step::Done(InitialClass { origin, ..sub }));
        }
        if x_blocks.iter().any(|&f| factor.blocks[f].len() == 1) {
            return invariant("class mixes contracted blocks and single vertices");
        }
        // d: the diagonal color with the fewest vertices in the first block.
        let first = &factor.blocks[x_blocks[0]];
        let mut per: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in first {
            *per.entry(chi.get(v, v)).or_default() += 1;
        }
        let (&d, _) = per.iter().min_by_key(|&(&col, &cnt)| (cnt, col)).expect("non-empty block");
        let base = sub.g_prime.n();
        let mut edges = sub.g_prime.edges();
        let mut origin: Vec<Option<usize>> = sub.origin.iter().map(|&o| through(o)).collect();
        let mut x = Vec::new();
        for (&fx, &f) in sub.x.iter().zip(&x_blocks) {
            for &v in &factor.blocks[f] {
                if chi.get(v, v) == d {
                    let id = base + x.len();
                    edges.push((fx, id));
                    origin.push(Some(v));
                    x.push(id);
                }
            }
        }
        let total = base + x.len();
        let g_prime = Graph::from_edges(total, &edges)?;
        let chi_prime = PairColoring::from_fn(total, |u, v| {
            if u < base && v < base {
                (sub.chi_prime.get(u, v), 0)
            } else if u == v {
                (0, 1)
            } else {
                (1, 1)
            }
        });
        let color = chi_prime.get(x[0], x[0]);
        Ok(Step::Done(InitialClass {
            g_prime,
            chi_prime,
            x,
            color,
            origin,
            restarts: sub.restarts,
            fallback_firings: sub.fallback_firings,
        }))
    }

    /// Every edge color has large components.
    fn large_branch(
        &self,
        g: &Graph,
        chi: &PairColoring,
        edge_colors: &[usize],
        fallbacks: &mut usize,
    ) -> Result<Step> {
        let n = g.n();
        let diag: Vec<usize> = (0..n).map(|v| chi.get(v, v)).collect();
        let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
        diag.iter().for_each(|&c| *class_size.entry(c).or_default() += 1);
        let (&c, _) = class_size.iter().min_by_key(|&(&col, &sz)| (sz, col)).expect("non-empty graph");
        let vc: Vec<usize> = (0..n).filter(|&v| diag[v] == c).collect();
        let vc_set: BTreeSet<usize> = vc.iter().copied().collect();
        let mut exact = None;
        let mut covering = None;
        for &e in edge_colors {
            let view = edge_color_view(g, chi, e)?;
            let vs: BTreeSet<usize> = view.vertices.iter().copied().collect();
            if vs == vc_set && exact.is_none() {
                exact = Some(view);
            } else if covering.is_none() && vc_set.is_subset(&vs) {
                covering = Some(view);
            }
        }
        let Some(view) = exact.or(covering) else {
            return invariant("no edge color covers the smallest class");
        };
        if view.components.len() == 1 {
            return Ok(Step::Done(identity_class(g, chi, vc)));
        }
        let comps = &view.components;
        let ell = comps.len();
        let t = self.cfg.t();
        // Closures from every vertex of V_c; within a component they must
        // agree and cover the component's part of V_c.
        let mut closure_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &vc {
            closure_of.insert(v, closure_t_pair(g, chi, &[v], t)?.d);
        }
        let mut d_sets: Vec<Vec<usize>> = Vec::with_capacity(ell);
        for a in comps {
            let part: Vec<usize> = a.iter().copied().filter(|v| vc_set.contains(v)).collect();
            let d = &closure_of[&part[0]];
            if part.iter().any(|v| &closure_of[v] != d) {
                return Ok(Step::Minor);
            }
            let ds: BTreeSet<usize> = d.iter().copied().collect();
            if !part.iter().all(|v| ds.contains(v)) {
                return Ok(Step::Minor);
            }
            d_sets.push(d.clone());
        }
        let comp_of: BTreeMap<usize, usize> =
            comps.iter().enumerate().flat_map(|(i, a)| a.iter().map(move |&v| (v, i))).collect();
        let keyed = |key: &dyn Fn(usize) -> Vec<usize>| -> Vec<Vec<usize>> {
            (0..n)
                .map(|v| {
                    if vc_set.contains(&v) {
                        let mut k = vec![1];
                        k.extend(key(comp_of[&v]));
                        k
                    } else {
                        vec![0]
                    }
                })
                .collect()
        };
        // Counts |D_i ∩ V_c'| per color.
        let colors: Vec<usize> = class_size.keys().copied().collect();
        let counts: Vec<Vec<usize>> = d_sets
            .iter()
            .map(|d| colors.iter().map(|&col| d.iter().filter(|&&v| diag[v] == col).count()).collect())
            .collect();
        if counts.iter().any(|x| x != &counts[0]) {
            return Ok(Step::Refine(keyed(&|i| counts[i].clone())));
        }
        // R: (i, i') iff A_i' ∩ V_c ⊆ D_i.
        let parts: Vec<Vec<usize>> =
            comps.iter().map(|a| a.iter().copied().filter(|v| vc_set.contains(v)).collect()).collect();
        let d_lookup: Vec<BTreeSet<usize>> = d_sets.iter().map(|d| d.iter().copied().collect()).collect();
        let rel: Vec<Vec<bool>> =
            (0..ell).map(|i| (0..ell).map(|j| parts[j].iter().all(|v| d_lookup[i].contains(v))).collect()).collect();
        let symmetric = (0..ell).all(|i| (0..ell).all(|j| rel[i][j] == rel[j][i]));
        if !symmetric {
            let outdeg: Vec<usize> = rel.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
            let indeg: Vec<usize> = (0..ell).map(|j| (0..ell).filter(|&i| rel[i][j]).count()).collect();
            if outdeg.iter().all(|&x| x == outdeg[0]) && indeg.iter().all(|&x| x == indeg[0]) {
                // Reflexive and transitive relations cannot look like this.
                return Ok(Step::Minor);
            }
            return Ok(Step::Refine(keyed(&|i| vec![outdeg[i], indeg[i]])));
        }
        let mut class_of = vec![usize::MAX; ell];
        let mut r = 0;
        for i in 0..ell {
            if class_of[i] == usize::MAX {
                for j in 0..ell {
                    if rel[i][j] {
                        class_of[j] = r;
                    }
                }
                r += 1;
            }
        }
        if r == 1 {
            return Ok(Step::Done(identity_class(g, chi, vc)));
        }
        let Some(gp_edges) = self.partition_claim(g, chi, view.color, &class_of)? else {
            return invariant("no factor color separates the component classes");
        };
        let gp = Graph::from_edges(ell, &gp_edges)?;
        let deg0 = gp.degree(0);
        if (0..ell).any(|i| gp.degree(i) != deg0) {
            *fallbacks += 1;
            return Ok(Step::Refine(keyed(&|i| vec![gp.degree(i)])));
        }
        if deg0 as f64 > self.cfg.degree_bound() {
            return Ok(Step::Minor);
        }
        let seps: Vec<Vec<(Vec<usize>, Vec<usize>)>> =
            d_sets.iter().map(|d| components_and_separators(g, d)).collect::<Result<_>>()?;
        if seps.iter().any(|s| s.len() != seps[0].len()) {
            return Ok(Step::Refine(keyed(&|i| vec![seps[i].len()])));
        }
        if seps.iter().flatten().any(|(_, s)| s.len() >= self.cfg.h) {
            return Ok(Step::Minor);
        }
        // Q: components of G - D_i that swallow a component A_i' adjacent to
        // i in G_P.
        let mut q: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (i, j) in gp.edges().into_iter().flat_map(|(a, b)| [(a, b), (b, a)]) {
            for (zi, (z, _)) in seps[i].iter().enumerate() {
                if comps[j].iter().all(|v| z.binary_search(v).is_ok()) {
                    q.insert((i, zi));
                }
            }
        }
        let mut boundary: BTreeSet<usize> = BTreeSet::new();
        for &(i, zi) in &q {
            boundary.extend(seps[i][zi].1.iter().copied());
        }
        for &d in &colors {
            let x: Vec<usize> = boundary.iter().copied().filter(|&v| diag[v] == d).collect();
            if x.is_empty() {
                continue;
            }
            if x.len() == class_size[&d] {
                return invariant("separator set fills a whole color class");
            }
            let xs: BTreeSet<usize> = x.into_iter().collect();
            return Ok(Step::Refine((0..n).map(|v| vec![usize::from(xs.contains(&v))]).collect()));
        }
        invariant("no separator vertices found for the refinement")
    }

    /// Builds `G_P` on the components `A_1..A_l` (singleton parts) with an
    /// edge between components of different classes. Returns its edges.
    fn partition_claim(
        &self,
        g: &Graph,
        chi: &PairColoring,
        ce: usize,
        class_of: &[usize],
    ) -> Result<Option<Vec<(usize, usize)>>> {
        let ell = class_of.len();
        let factor = factor_by_edge_color(g, chi, ce)?;
        let mut f_graph = factor.graph;
        let mut f_chi = factor.coloring;
        // holder[j]: factor vertex containing A_j.
        let comp_sets: Vec<usize> =
            factor.blocks.iter().enumerate().filter(|(_, b)| b.len() > 1).map(|(i, _)| i).collect();
        if comp_sets.len() != ell {
            return invariant("factor blocks do not match the components");
        }
        let mut holder: Vec<usize> = comp_sets;
        loop {
            let colors = f_chi.edge_colors(&f_graph);
            for &cf in &colors {
                let ce_edges = color_edges(&f_graph, &f_chi, cf);
                let sub = Graph::from_edges(f_graph.n(), &ce_edges)?;
                let comps = connected_components(&sub);
                let mut comp_id = vec![0; f_graph.n()];
                for (k, comp) in comps.iter().enumerate() {
                    comp.iter().for_each(|&v| comp_id[v] = k);
                }
                let crosses = (0..ell).any(|j| {
                    (0..ell).any(|j2| class_of[j] != class_of[j2] && comp_id[holder[j]] == comp_id[holder[j2]])
                });
                if !crosses {
                    continue;
                }
                let verts: BTreeSet<usize> = ce_edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                let unicolored = verts.iter().map(|&v| f_chi.get(v, v)).collect::<BTreeSet<_>>().len() == 1;
                let holders: BTreeSet<usize> = holder.iter().copied().collect();
                let cp = if unicolored {
                    cf
                } else {
                    // Pairs of holders sharing a neighbor outside the holders.
                    let mut best: Option<usize> = None;
                    for j in 0..ell {
                        for j2 in 0..ell {
                            if class_of[j] == class_of[j2] {
                                continue;
                            }
                            let (x, y) = (holder[j], holder[j2]);
                            let shared = sub.neighbors(x).iter().any(|u| !holders.contains(u) && sub.has_edge(y, *u));
                            if shared {
                                let col = f_chi.get(x, y);
                                best = Some(best.map_or(col, |b| b.min(col)));
                            }
                        }
                    }
                    match best {
                        Some(b) => b,
                        None => continue,
                    }
                };
                let mut edges = Vec::new();
                for j in 0..ell {
                    for j2 in j + 1..ell {
                        let (x, y) = (holder[j], holder[j2]);
                        if x != y && (f_chi.get(x, y) == cp || f_chi.get(y, x) == cp) {
                            edges.push((j, j2));
                        }
                    }
                }
                if edges.iter().any(|&(a, b)| class_of[a] != class_of[b]) {
                    return Ok(Some(edges));
                }
            }
            // No color links different classes: contract the smallest color
            // whose graph contains every holder.
            let holders: BTreeSet<usize> = holder.iter().copied().collect();
            let mut next = None;
            for &cf in &colors {
                let verts: BTreeSet<usize> =
                    color_edges(&f_graph, &f_chi, cf).iter().flat_map(|&(a, b)| [a, b]).collect();
                if holders.is_subset(&verts) {
                    next = Some(cf);
                    break;
                }
            }
            let Some(cf) = next else {
                return Ok(None);
            };
            let f2 = factor_by_edge_color(&f_graph, &f_chi, cf)?;
            let mut block_of = vec![0; f_graph.n()];
            for (b, blk) in f2.blocks.iter().enumerate() {
                blk.iter().for_each(|&v| block_of[v] = b);
            }
            holder = holder.iter().map(|&h| block_of[h]).collect();
            f_graph = f2.graph;
            f_chi = f2.coloring;
        }
    }
}

fn identity_class(g: &Graph, chi: &PairColoring, x: Vec<usize>) -> InitialClass {
    let color = chi.get(x[0], x[0]);
    InitialClass {
        g_prime: g.clone(),
        chi_prime: chi.clone(),
        x,
        color,
        origin: (0..g.n()).map(Some).collect(),
        restarts: 0,
        fallback_firings: 0,
    }
}

/// True iff one more 2-WL round leaves the partition of `pc` unchanged.
pub fn is_wl2_stable(pc: &PairColoring) -> bool {
    wl2_round(pc).num_colors == pc.num_colors
}
