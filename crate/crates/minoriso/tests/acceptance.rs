//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary (`harness = false`) and exits non-zero if any criterion fails.

#![allow(clippy::type_complexity)]

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use common::*;
use minoriso::closure::{closure_t, closure_t_pair, components_and_separators};
use minoriso::corpus::{
    clique_instance, gnp, random_partial_k_tree, random_permutation, random_planar, random_tree, rng, tree_stack,
};
use minoriso::initial_color::{factor_by_edge_color, find_initial_class, InitialColorOutput};
use minoriso::iso_engine::{is_isomorphic, tree_decomposition, Decision};
use minoriso::perm::{from_cycles, Perm, PermGroup};
use minoriso::refinement::{color_refine, wl2, Wl2Init};
use minoriso::witness::{extract_topological_clique, pack_agreeing_trees, validate_witness, WitnessOutcome};
use minoriso::{Config, Graph, PairColoring, VertexColoring};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn uniform(g: &Graph) -> VertexColoring {
    VertexColoring::uniform(g.n())
}

/// Criterion 1: decisions on all same-size pairs of small connected graphs
/// agree with brute force.
fn oracle_agreement() -> Outcome {
    let cfg = Config::with_h(5);
    let mut r = rng(1);
    let (mut pairs, mut wrong, mut minors, mut bad_minors) = (0usize, 0usize, 0usize, 0usize);
    for n in 1..=7 {
        let mut by_m: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
        for g in connected_graphs(n) {
            by_m.entry(g.m()).or_default().push(g);
        }
        for group in by_m.values() {
            let mut cases: Vec<(&Graph, Graph)> = Vec::new();
            for (i, a) in group.iter().enumerate() {
                for b in &group[i + 1..] {
                    cases.push((a, b.clone()));
                }
                cases.push((a, relabel(a, &random_permutation(n, &mut r))));
            }
            for (a, b) in cases {
                pairs += 1;
                let zeros = vec![0; n];
                let truth = brute_iso(a, &zeros, &b, &zeros).is_some();
                match is_isomorphic(a, &uniform(a), &b, &uniform(&b), &cfg) {
                    Ok(Decision::Iso { rep, .. }) => {
                        wrong += usize::from(!truth || !verify_iso(a, &zeros, &b, &zeros, &rep))
                    }
                    Ok(Decision::NonIso) => wrong += usize::from(truth),
                    Ok(Decision::MinorFound) => {
                        minors += 1;
                        bad_minors += usize::from(!has_clique_minor(a, 5) && !has_clique_minor(&b, 5));
                    }
                    Err(_) => wrong += 1,
                }
            }
        }
    }
    outcome(
        wrong == 0 && bad_minors == 0,
        format!("{pairs} pairs, {wrong} disagreements, {minors} minor verdicts ({bad_minors} unconfirmed)"),
    )
}

/// Criterion 2: planar graphs against shuffled copies.
fn positive_pairs() -> Outcome {
    let cfg = Config::with_h(5);
    let mut r = rng(2);
    let mut failures = 0;
    for _ in 0..500 {
        let n = r.gen_range(1..=40);
        let g = random_planar(n, r.gen_range(0.0..0.5), &mut r);
        let p = random_permutation(n, &mut r);
        let h = relabel(&g, &p);
        let zeros = vec![0; n];
        let ok = matches!(is_isomorphic(&g, &uniform(&g), &h, &uniform(&h), &cfg),
            Ok(Decision::Iso { rep, .. }) if verify_iso(&g, &zeros, &h, &zeros, &rep));
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("500 pairs, {failures} failures"))
}

/// Planar graphs whose closures leave large classes untouched at t = 375.
fn separator_corpus(r: &mut impl Rng) -> Vec<Graph> {
    let mut out = Vec::new();
    for i in 0..100 {
        let m = 376 + 5 * i;
        out.push(match i % 5 {
            0 => Graph::star(m),
            1 => Graph::complete_bipartite(2, m),
            // A wheel-free fan: a path with one apex.
            2 => {
                let mut e: Vec<(usize, usize)> = (1..m).map(|v| (v, v + 1)).collect();
                e.extend((1..=m).map(|v| (0, v)));
                Graph::from_edges(m + 1, &e).expect("fan")
            }
            // A small planar core with many pendant leaves on two vertices.
            3 => {
                let core = random_planar(20, 0.3, r);
                let mut e = core.edges();
                e.extend((0..m).map(|j| (j % 2, 20 + j)));
                Graph::from_edges(20 + m, &e).expect("pendants")
            }
            // Many copies of a small gadget hung off a hub.
            _ => {
                let k = m / 3;
                let mut e = Vec::new();
                for j in 0..k {
                    let (a, b, c) = (1 + 3 * j, 2 + 3 * j, 3 + 3 * j);
                    e.extend([(0, a), (a, b), (b, c), (a, c)]);
                }
                Graph::from_edges(1 + 3 * k, &e).expect("gadgets")
            }
        });
    }
    for _ in 0..100 {
        let n = r.gen_range(30..=500);
        out.push(random_planar(n, r.gen_range(0.0..0.6), r));
    }
    out
}

/// Criterion 3: component separators of planar closures at t = 3h^3.
fn small_separators() -> Outcome {
    let mut r = rng(3);
    let t = 3 * 5usize.pow(3);
    let (mut checked, mut violations, mut nontrivial) = (0, 0, 0);
    for g in separator_corpus(&mut r) {
        let n = g.n();
        let mut seeds: Vec<usize> = (0..n).collect();
        seeds.shuffle(&mut r);
        seeds.truncate(r.gen_range(1..=3));
        let d = closure_t(&g, &uniform(&g), None, &seeds, t).expect("closure").d;
        let comps = components_and_separators(&g, &d).expect("components");
        nontrivial += usize::from(!comps.is_empty());
        violations += comps.iter().filter(|(_, s)| s.len() > 4).count();
        checked += 1;
    }
    outcome(
        violations == 0,
        format!("{checked} graphs ({nontrivial} with components), {violations} separators above 4"),
    )
}

/// Criterion 4: tree packings on colored tree stacks.
fn tree_packing() -> Outcome {
    let mut r = rng(4);
    let (mut shortfalls, mut invalid, mut total) = (0, 0, 0);
    for _ in 0..100 {
        let nodes = r.gen_range(1..=6);
        let m = r.gen_range(4..=30);
        let d = r.gen_range(1..=m.min(3));
        let inst = tree_stack(nodes, m, d, &mut r).expect("instance");
        let fam = pack_agreeing_trees(&inst.graph, &inst.coloring, &inst.tree).expect("packing");
        let smallest =
            inst.tree.colors.iter().map(|&c| inst.coloring.colors.iter().filter(|&&x| x == c).count()).min().unwrap();
        let need = smallest / inst.tree.ell();
        shortfalls += usize::from(fam.members.len() < need);
        // Independent check: disjoint members, one vertex per node of the
        // right color, and every tree edge realized.
        let mut used = BTreeSet::new();
        let ok = fam.members.iter().all(|mem| {
            mem.len() == inst.tree.colors.len()
                && mem
                    .iter()
                    .enumerate()
                    .all(|(i, &v)| inst.coloring.colors[v] == inst.tree.colors[i] && used.insert(v))
                && inst.tree.edges.iter().all(|&(a, b)| inst.graph.has_edge(mem[a], mem[b]))
        });
        invalid += usize::from(!ok);
        total += fam.members.len();
    }
    outcome(
        shortfalls == 0 && invalid == 0,
        format!("100 instances, {total} trees packed, {shortfalls} shortfalls, {invalid} invalid"),
    )
}

/// Criterion 5: stable colorings commute with relabeling.
fn wl_invariance() -> Outcome {
    let mut r = rng(5);
    let (mut bad1, mut bad2, mut bad_oracle) = (0, 0, 0);
    for i in 0..1000 {
        let n = r.gen_range(1..=if i % 2 == 0 { 30 } else { 14 });
        let g = match i % 4 {
            0 => random_planar(n, 0.3, &mut r),
            1 => gnp(n, r.gen_range(0.1..0.6), &mut r),
            2 => random_tree(n, &mut r),
            _ => random_partial_k_tree(n, 2, 0.3, &mut r),
        };
        let c: Vec<usize> = (0..n).map(|_| r.gen_range(0..2)).collect();
        let p = random_permutation(n, &mut r);
        let gp = relabel(&g, &p);
        let cp = permute_colors(&c, &p);
        let a = color_refine(&g, &VertexColoring::from_raw(&c), None).expect("refine");
        let b = color_refine(&gp, &VertexColoring::from_raw(&cp), None).expect("refine");
        bad1 += usize::from((0..n).any(|v| a.colors[v] != b.colors[p[v]]));
        let naive = naive_refine(&g, &c);
        bad_oracle +=
            usize::from((0..n).any(|u| (0..n).any(|v| (naive[u] == naive[v]) != (a.colors[u] == a.colors[v]))));
        let w1 = wl2(&g, Wl2Init::Vertex(&VertexColoring::from_raw(&c))).expect("wl2");
        let w2 = wl2(&gp, Wl2Init::Vertex(&VertexColoring::from_raw(&cp))).expect("wl2");
        bad2 += usize::from((0..n).any(|u| (0..n).any(|v| w1.get(u, v) != w2.get(p[u], p[v]))));
    }
    outcome(
        bad1 + bad2 + bad_oracle == 0,
        format!("1000 pairs, {bad1} 1-WL mismatches, {bad2} 2-WL mismatches, {bad_oracle} partitions differing from naive refinement"),
    )
}

/// One naive 2-WL round splits some class of `pc`.
fn wl2_round_splits(pc: &PairColoring) -> bool {
    let n = pc.n;
    let mut sig: BTreeMap<(usize, Vec<(usize, usize)>), usize> = BTreeMap::new();
    let mut classes = BTreeSet::new();
    for u in 0..n {
        for v in 0..n {
            let mut m: Vec<(usize, usize)> = (0..n).map(|w| (pc.get(u, w), pc.get(w, v))).collect();
            m.sort_unstable();
            let next = sig.len();
            sig.entry((pc.get(u, v), m)).or_insert(next);
            classes.insert(pc.get(u, v));
        }
    }
    sig.len() != classes.len()
}

/// Criterion 6: factor graphs of stable colorings are stable, and block
/// multisets are equal or disjoint.
fn factor_graphs() -> Outcome {
    let mut r = rng(6);
    let (mut instances, mut unstable, mut overlap) = (0, 0, 0);
    while instances < 100 {
        let n = r.gen_range(4..=24);
        let g = match instances % 4 {
            0 => random_planar(n, 0.3, &mut r),
            1 => random_partial_k_tree(n, 2, 0.2, &mut r),
            2 => Graph::cycle(n).disjoint_union(&Graph::cycle(n)),
            _ => Graph::complete_bipartite(2, n),
        };
        let pc = wl2(&g, Wl2Init::Vertex(&uniform(&g))).expect("wl2");
        let edge_colors: BTreeSet<usize> = pc.edge_colors(&g).into_iter().collect();
        let Some(&c) = edge_colors.iter().collect::<Vec<_>>().choose(&mut r) else { continue };
        let f = factor_by_edge_color(&g, &pc, *c).expect("factor");
        instances += 1;
        unstable += usize::from(wl2_round_splits(&f.coloring));
        let k = f.blocks.len();
        let mut multisets: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for i in 0..k {
            for j in 0..k {
                let mut ms: Vec<usize> = f.blocks[i]
                    .iter()
                    .flat_map(|&u| f.blocks[j].iter().map(move |&v| (u, v)))
                    .map(|(u, v)| pc.get(u, v))
                    .collect();
                ms.sort_unstable();
                multisets.entry(f.coloring.get(i, j)).or_default().insert(ms);
            }
        }
        // Equal factor colors must mean equal multisets, and different
        // multisets must not share a pair color.
        let reps: Vec<Vec<usize>> = multisets.values().flat_map(|s| s.iter().cloned()).collect();
        let equal_ok = multisets.values().all(|s| s.len() == 1);
        let disjoint_ok = (0..reps.len()).all(|a| {
            (a + 1..reps.len()).all(|b| {
                let x: BTreeSet<usize> = reps[a].iter().copied().collect();
                reps[b].iter().all(|y| !x.contains(y))
            })
        });
        overlap += usize::from(!(equal_ok && disjoint_ok));
    }
    outcome(
        unstable + overlap == 0,
        format!("{instances} factors, {unstable} unstable, {overlap} overlapping multisets"),
    )
}

fn symmetric_gens(n: usize) -> Vec<Perm> {
    if n < 2 {
        return Vec::new();
    }
    let cyc: Vec<usize> = (0..n).collect();
    vec![from_cycles(n, &[&[0, 1]]).unwrap(), from_cycles(n, &[&cyc]).unwrap()]
}

fn alternating_gens(n: usize) -> Vec<Perm> {
    (2..n).map(|k| from_cycles(n, &[&[0, 1, k]]).unwrap()).collect()
}

fn dihedral_gens(n: usize) -> Vec<Perm> {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    vec![rot, refl]
}

/// `S_a wr S_b` acting on `a * b` points.
fn wreath_gens(a: usize, b: usize) -> Vec<Perm> {
    let n = a * b;
    let mut gens: Vec<Perm> =
        symmetric_gens(a).into_iter().map(|p| (0..n).map(|x| if x < a { p[x] } else { x }).collect()).collect();
    for q in symmetric_gens(b) {
        gens.push((0..n).map(|x| q[x / a] * a + x % a).collect());
    }
    gens
}

/// Criterion 7: group orders, membership and stabilizers against closure.
fn group_engine() -> Outcome {
    let mut suite: Vec<(String, usize, Vec<Perm>)> = Vec::new();
    for n in 1..=7 {
        suite.push((format!("S{n}"), n, symmetric_gens(n)));
    }
    for n in 3..=7 {
        suite.push((format!("A{n}"), n, alternating_gens(n)));
    }
    for n in 3..=12 {
        suite.push((format!("D{n}"), n, dihedral_gens(n)));
        suite.push((format!("C{n}"), n, vec![(0..n).map(|i| (i + 1) % n).collect()]));
    }
    for (a, b) in [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3)] {
        suite.push((format!("S{a} wr S{b}"), a * b, wreath_gens(a, b)));
    }
    let mut r = rng(7);
    let mut mismatches = Vec::new();
    for (name, n, gens) in &suite {
        let group = PermGroup::new(*n, gens).expect("group");
        let elems = group_closure(*n, gens);
        let mut ok = group.order_u64() == Some(elems.len() as u64);
        for _ in 0..50 {
            let p = random_permutation(*n, &mut r);
            ok &= group.contains(&p) == elems.contains(&p);
        }
        ok &= elems.iter().take(50).all(|e| group.contains(e));
        for fixed in [vec![0], vec![0, n.saturating_sub(1)]] {
            let fixed: Vec<usize> = fixed.into_iter().filter(|&x| x < *n).collect();
            let want = elems.iter().filter(|e| fixed.iter().all(|&x| e[x] == x)).count();
            ok &= group.pointwise_stabilizer(&fixed).expect("stabilizer").order_u64() == Some(want as u64);
        }
        if !ok {
            mismatches.push(name.clone());
        }
    }
    outcome(mismatches.is_empty(), format!("{} groups, mismatches: {:?}", suite.len(), mismatches))
}

/// Independent check of a decomposition: a tree, every vertex and edge
/// covered, and the bags of each vertex connected.
fn decomposition_ok(g: &Graph, bags: &[Vec<usize>], edges: &[(usize, usize)]) -> bool {
    let k = bags.len();
    if k == 0 || edges.len() != k - 1 {
        return false;
    }
    let tree = match Graph::from_edges(k, edges) {
        Ok(t) => t,
        Err(_) => return false,
    };
    if !is_connected(&tree) {
        return false;
    }
    let sets: Vec<BTreeSet<usize>> = bags.iter().map(|b| b.iter().copied().collect()).collect();
    let covered = (0..g.n()).all(|v| sets.iter().any(|s| s.contains(&v)));
    let edges_ok = g.edges().iter().all(|&(u, v)| sets.iter().any(|s| s.contains(&u) && s.contains(&v)));
    let connected = (0..g.n()).all(|v| {
        let nodes: Vec<usize> = (0..k).filter(|&i| sets[i].contains(&v)).collect();
        let sub: Vec<(usize, usize)> = edges
            .iter()
            .filter_map(|&(a, b)| Some((nodes.binary_search(&a).ok()?, nodes.binary_search(&b).ok()?)))
            .collect();
        is_connected(&Graph::from_edges(nodes.len(), &sub).expect("subtree"))
    });
    covered && edges_ok && connected
}

/// Forests and planar graphs with the configurations used for them.
fn decomposition_corpus(r: &mut impl Rng) -> Vec<(Graph, Config)> {
    let tree_cfg = Config { h: 3, a: 1.0, ..Config::default() };
    let planar_cfg = Config { t: Some(375), ..Config::with_h(5) };
    let mut out = Vec::new();
    for i in 0..30 {
        let n = r.gen_range(10..=250);
        let g = if i % 3 == 0 { Graph::star(n) } else { random_tree(n, r) };
        out.push((g, tree_cfg.clone()));
    }
    for _ in 0..30 {
        let n = r.gen_range(5..=40);
        out.push((random_planar(n, r.gen_range(0.0..0.5), r), Config::with_h(5)));
    }
    for m in [380, 400, 450] {
        out.push((Graph::complete_bipartite(2, m), planar_cfg.clone()));
        out.push((Graph::star(m), planar_cfg.clone()));
    }
    out
}

/// Criterion 8: decompositions satisfy the definition with small adhesion.
fn decompositions() -> Outcome {
    let mut r = rng(8);
    let (mut done, mut minors, mut violations, mut multi) = (0, 0, 0, 0);
    for (g, cfg) in decomposition_corpus(&mut r) {
        match tree_decomposition(&g, &uniform(&g), &cfg).expect("decomposition") {
            None => minors += 1,
            Some(td) => {
                done += 1;
                multi += usize::from(td.bags.len() > 1);
                let ok = decomposition_ok(&g, &td.bags, &td.edges) && td.adhesion() < cfg.h;
                violations += usize::from(!ok);
            }
        }
    }
    // Every corpus graph is planar, so with h = 5 no minor may be reported;
    // the forests exclude K3 as well.
    outcome(
        violations == 0 && minors == 0,
        format!("{done} decompositions ({multi} with several bags), {violations} violations, {minors} minor verdicts"),
    )
}

/// Criterion 9: initial classes are diagonal classes of G', lie in G, and
/// sit inside the closure of each of their vertices.
fn initial_classes() -> Outcome {
    let mut r = rng(9);
    let mut runs: Vec<(Graph, Config)> = Vec::new();
    let tree_cfg = Config { h: 3, a: 1.0, ..Config::default() };
    for _ in 0..40 {
        let n = r.gen_range(2..=200);
        runs.push((random_tree(n, &mut r), tree_cfg.clone()));
    }
    for m in [120, 150, 200] {
        runs.push((Graph::star(m), tree_cfg.clone()));
    }
    for _ in 0..40 {
        let n = r.gen_range(3..=40);
        runs.push((random_planar(n, 0.3, &mut r), Config::with_h(5)));
    }
    let (mut classes, mut violations, mut nontrivial, mut fallbacks) = (0, 0, 0, 0);
    for (g, cfg) in &runs {
        let t = cfg.t();
        match find_initial_class(g, &uniform(g), cfg).expect("initial class") {
            // Trees exclude K3 and planar graphs exclude K5.
            InitialColorOutput::MinorFound => violations += 1,
            InitialColorOutput::Class(c) => {
                classes += 1;
                fallbacks += c.fallback_firings;
                let diag: BTreeSet<usize> = c.x.iter().map(|&x| c.chi_prime.get(x, x)).collect();
                let color = c.chi_prime.get(c.x[0], c.x[0]);
                let class: Vec<usize> = (0..c.g_prime.n()).filter(|&v| c.chi_prime.get(v, v) == color).collect();
                let single = diag.len() == 1 && class == c.x;
                let in_g = c.x.iter().all(|&x| c.origin[x].is_some());
                nontrivial += usize::from(t < c.g_prime.n());
                let closed = c.x.iter().all(|&v| {
                    let d: BTreeSet<usize> =
                        closure_t_pair(&c.g_prime, &c.chi_prime, &[v], t).expect("closure").d.into_iter().collect();
                    c.x.iter().all(|x| d.contains(x))
                });
                violations += usize::from(!(single && in_g && closed));
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "{} runs, {classes} classes ({nontrivial} with t below |V(G')|), {fallbacks} fallback firings, {violations} violations",
            runs.len()
        ),
    )
}

/// Criterion 10: witnesses on instances whose classes all reach 3h^3.
fn witnesses() -> Outcome {
    let mut r = rng(10);
    let h = 3;
    let (mut produced, mut missing, mut invalid) = (0, 0, 0);
    for i in 0..30 {
        let m = 81 + 3 * i;
        let d = r.gen_range(1..=4);
        let inst = clique_instance(h, m, d, &mut r).expect("instance");
        let init: Vec<usize> = (0..inst.graph.n()).map(|v| if v < h { v + 1 } else { 0 }).collect();
        let chi = color_refine(&inst.graph, &VertexColoring::from_raw(&init), None).expect("refine");
        match extract_topological_clique(&inst.graph, &chi, &inst.branch, &inst.region).expect("witness") {
            WitnessOutcome::Witness(w) => {
                produced += 1;
                let ok = is_clique_subdivision(&inst.graph, &w.branch, &w.paths) && validate_witness(&inst.graph, &w);
                invalid += usize::from(!ok);
            }
            WitnessOutcome::SmallClass(_) => missing += 1,
        }
    }
    outcome(missing + invalid == 0, format!("30 instances, {produced} witnesses, {missing} missing, {invalid} invalid"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle agreement on small connected graphs", oracle_agreement),
        ("planar positive pairs", positive_pairs),
        ("closure separators below h", small_separators),
        ("tree packing guarantee", tree_packing),
        ("WL invariance", wl_invariance),
        ("factor-graph stability", factor_graphs),
        ("group engine against closure", group_engine),
        ("tree decompositions", decompositions),
        ("initial-class postconditions", initial_classes),
        ("witness validity", witnesses),
    ];
    let mut failed = 0;
    let mut total = Duration::ZERO;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        total += took;
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {}: {} ({}; {:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 passed in {:.1}s", 10 - failed, total.as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
