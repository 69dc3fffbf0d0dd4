//! Independent oracles for the integration tests. Nothing here calls into the
//! algorithms under test; only the graph container is shared.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use minoriso::Graph;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Naive color refinement: ranks of (color, sorted neighbor colors) until the
/// class count stops growing. Ranks make the result canonical.
pub fn naive_refine(g: &Graph, colors: &[usize]) -> Vec<usize> {
    let n = g.n();
    let mut cur = rank(colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = g.neighbors(v).iter().map(|&w| cur[w]).collect();
                s.sort_unstable();
                (cur[v], s)
            })
            .collect();
        let next = rank(&sigs);
        if count(&next) == count(&cur) {
            return next;
        }
        cur = next;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let sorted: BTreeSet<T> = keys.iter().cloned().collect();
    let index: BTreeMap<T, usize> = sorted.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    keys.iter().map(|k| index[k]).collect()
}

fn count(c: &[usize]) -> usize {
    c.iter().collect::<HashSet<_>>().len()
}

/// Backtracking isomorphism search respecting vertex colors.
pub fn brute_iso(g1: &Graph, c1: &[usize], g2: &Graph, c2: &[usize]) -> Option<Vec<usize>> {
    let n = g1.n();
    if n != g2.n() || g1.m() != g2.m() {
        return None;
    }
    let a1 = adjacency(g1);
    let a2 = adjacency(g2);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a1: &[Vec<bool>],
        a2: &[Vec<bool>],
        c1: &[usize],
        c2: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = a1.len();
        if i == n {
            return true;
        }
        for w in 0..n {
            if used[w] || c1[i] != c2[w] {
                continue;
            }
            if a1[i].iter().filter(|&&b| b).count() != a2[w].iter().filter(|&&b| b).count() {
                continue;
            }
            if (0..i).any(|j| a1[i][j] != a2[w][map[j]]) {
                continue;
            }
            map[i] = w;
            used[w] = true;
            if go(i + 1, a1, a2, c1, c2, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    go(0, &a1, &a2, c1, c2, &mut map, &mut used).then_some(map)
}

/// True iff `map` is a color-preserving isomorphism from `g1` to `g2`.
pub fn verify_iso(g1: &Graph, c1: &[usize], g2: &Graph, c2: &[usize], map: &[usize]) -> bool {
    let n = g1.n();
    if map.len() != n || g2.n() != n || g1.m() != g2.m() {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in map {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    let a2 = adjacency(g2);
    (0..n).all(|v| c1[v] == c2[map[v]]) && g1.edges().iter().all(|&(u, v)| a2[map[u]][map[v]])
}

/// A canonical adjacency key: the smallest adjacency bit string over all
/// orderings that sort vertices by their refined color.
pub fn canonical_key(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let col = naive_refine(g, &vec![0; n]);
    let a = adjacency(g);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        cells[col[v]].push(v);
    }
    cells.retain(|c| !c.is_empty());
    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    fn go(cells: &[Vec<usize>], k: usize, order: &mut Vec<usize>, a: &[Vec<bool>], best: &mut Option<Vec<bool>>) {
        if k == cells.len() {
            let key: Vec<bool> = (0..order.len())
                .flat_map(|i| (i + 1..order.len()).map(move |j| (i, j)))
                .map(|(i, j)| a[order[i]][order[j]])
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                *best = Some(key);
            }
            return;
        }
        permute(&cells[k], &mut Vec::new(), &mut vec![false; cells[k].len()], &mut |p| {
            let len = order.len();
            order.extend_from_slice(p);
            go(cells, k + 1, order, a, best);
            order.truncate(len);
        });
    }
    go(&cells, 0, &mut order, &a, &mut best);
    best.unwrap_or_default()
}

fn permute(items: &[usize], cur: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize])) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permute(items, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// All graphs on `n` vertices up to isomorphism, by vertex extension.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in all_graphs(n - 1) {
        for mask in 0u32..(1 << (n - 1)) {
            let mut edges = g.edges();
            edges.extend((0..n - 1).filter(|&i| mask >> i & 1 == 1).map(|i| (i, n - 1)));
            let h = Graph::from_edges(n, &edges).expect("valid edges");
            if seen.insert(canonical_key(&h)) {
                out.push(h);
            }
        }
    }
    out
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(is_connected).collect()
}

/// True iff `g` has `K_k` as a minor: some assignment of vertices to `k`
/// connected, pairwise adjacent branch sets (or to none). Exponential.
pub fn has_clique_minor(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let a = adjacency(g);
    let mut label = vec![k; n];
    fn connected(set: &[usize], a: &[Vec<bool>]) -> bool {
        let mut seen = vec![false; set.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..set.len() {
                if !seen[j] && a[set[i]][set[j]] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
    fn go(v: usize, k: usize, label: &mut [usize], a: &[Vec<bool>]) -> bool {
        let n = label.len();
        if v == n {
            let sets: Vec<Vec<usize>> = (0..k).map(|b| (0..n).filter(|&x| label[x] == b).collect()).collect();
            return sets.iter().all(|s| !s.is_empty() && connected(s, a))
                && (0..k).all(|i| (i + 1..k).all(|j| sets[i].iter().any(|&x| sets[j].iter().any(|&y| a[x][y]))));
        }
        // Symmetry breaking: branch set b may only be opened after b - 1.
        let max_open = label[..v].iter().filter(|&&l| l < k).max().map_or(0, |&m| m + 1);
        for l in (0..=max_open.min(k - 1)).chain(std::iter::once(k)) {
            label[v] = l;
            if go(v + 1, k, label, a) {
                return true;
            }
        }
        label[v] = k;
        false
    }
    n >= k && go(0, k, &mut label, &a)
}

/// All elements generated by `gens`, by breadth-first multiplication.
pub fn group_closure(degree: usize, gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for s in gens {
            let q: Vec<usize> = (0..degree).map(|i| s[p[i]]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// True iff `paths` are internally disjoint paths in `g` joining every pair
/// of `branch` vertices exactly once, with no branch vertex inside a path.
pub fn is_clique_subdivision(g: &Graph, branch: &[usize], paths: &[Vec<usize>]) -> bool {
    let h = branch.len();
    let a = adjacency(g);
    let branch_set: HashSet<usize> = branch.iter().copied().collect();
    if branch_set.len() != h || paths.len() != h * (h - 1) / 2 {
        return false;
    }
    let mut pairs = HashSet::new();
    let mut interior = HashSet::new();
    for p in paths {
        if p.len() < 2 || !branch_set.contains(&p[0]) || !branch_set.contains(&p[p.len() - 1]) || p[0] == p[p.len() - 1]
        {
            return false;
        }
        if !p.windows(2).all(|w| w[0] < a.len() && w[1] < a.len() && a[w[0]][w[1]]) {
            return false;
        }
        let key = (p[0].min(p[p.len() - 1]), p[0].max(p[p.len() - 1]));
        if !pairs.insert(key) {
            return false;
        }
        for &x in &p[1..p.len() - 1] {
            if branch_set.contains(&x) || !interior.insert(x) {
                return false;
            }
        }
    }
    true
}

/// Relabels `g` by `perm` (vertex `v` becomes `perm[v]`).
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.n(), &edges).expect("valid permutation")
}

/// Applies `perm` to a vertex coloring: the result colors `perm[v]` like `v`.
pub fn permute_colors(c: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; c.len()];
    for (v, &p) in perm.iter().enumerate() {
        out[p] = c[v];
    }
    out
}

/// Every color-preserving isomorphism, by exhaustive backtracking.
pub fn all_isos(g1: &Graph, c1: &[usize], g2: &Graph, c2: &[usize]) -> Vec<Vec<usize>> {
    let n = g1.n();
    let mut out = Vec::new();
    if n != g2.n() || g1.m() != g2.m() {
        return out;
    }
    let a1 = adjacency(g1);
    let a2 = adjacency(g2);
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(
        a1: &[Vec<bool>],
        a2: &[Vec<bool>],
        c1: &[usize],
        c2: &[usize],
        map: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = map.len();
        if i == a1.len() {
            out.push(map.clone());
            return;
        }
        for w in 0..a1.len() {
            if !used[w] && c1[i] == c2[w] && (0..i).all(|j| a1[i][j] == a2[w][map[j]]) {
                used[w] = true;
                map.push(w);
                go(a1, a2, c1, c2, map, used, out);
                map.pop();
                used[w] = false;
            }
        }
    }
    go(&a1, &a2, c1, c2, &mut map, &mut used, &mut out);
    out
}
