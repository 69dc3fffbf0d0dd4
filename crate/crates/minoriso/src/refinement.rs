//! Color Refinement (1-WL) with arc colors and the 2-dimensional
//! Weisfeiler-Leman algorithm.
//!
//! Both run in rounds. Each round builds, for every vertex or pair, the
//! signature `(old color, sorted multiset)` and renames colors by the
//! lexicographic rank of the signatures. Signatures are compared as values,
//! never through hashes. Because the renaming depends only on the multiset of
//! signatures, isomorphic colored graphs get identical colorings up to the
//! isomorphism. Colors of two different graphs are comparable only when both
//! are refined together, for example as one disjoint union.

use std::collections::BTreeMap;

use crate::error::{input, Result};
use crate::graph::{rank, ArcColoring, Graph, PairColoring, VertexColoring};

/// Every coloring produced on the way to the stable one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementTrace {
    /// `rounds[0]` is the (renamed) input; the last entry is stable.
    pub rounds: Vec<VertexColoring>,
    /// Number of rounds that strictly refined the partition.
    pub round_count: usize,
}

impl RefinementTrace {
    pub fn stable(&self) -> &VertexColoring {
        self.rounds.last().expect("trace is never empty")
    }
}

/// `rev[v][i]` is the position of `v` in the adjacency list of `adj[v][i]`.
pub(crate) fn reverse_index(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            g.neighbors(v).iter().map(|&w| g.neighbors(w).binary_search(&v).expect("adjacency is symmetric")).collect()
        })
        .collect()
}

/// Stable 1-WL coloring of `(g, vcol, acol)`.
pub fn color_refine(g: &Graph, vcol: &VertexColoring, acol: Option<&ArcColoring>) -> Result<VertexColoring> {
    let (colors, _) = color_refine_rounds(g, vcol, acol)?;
    Ok(colors)
}

/// Stable 1-WL coloring and the number of refining rounds.
pub fn color_refine_rounds(
    g: &Graph,
    vcol: &VertexColoring,
    acol: Option<&ArcColoring>,
) -> Result<(VertexColoring, usize)> {
    check_inputs(g, vcol, acol)?;
    let rev = reverse_index(g);
    let mut current = VertexColoring::from_raw(&vcol.colors);
    let mut rounds = 0;
    loop {
        let next = refine_round(g, &current, acol, &rev);
        if next.num_colors == current.num_colors {
            return Ok((next, rounds));
        }
        rounds += 1;
        current = next;
    }
}

/// Stable 1-WL coloring with every intermediate round recorded.
pub fn color_refine_trace(g: &Graph, vcol: &VertexColoring, acol: Option<&ArcColoring>) -> Result<RefinementTrace> {
    check_inputs(g, vcol, acol)?;
    let rev = reverse_index(g);
    let mut rounds = vec![VertexColoring::from_raw(&vcol.colors)];
    loop {
        let current = rounds.last().expect("non-empty");
        let next = refine_round(g, current, acol, &rev);
        let stable = next.num_colors == current.num_colors;
        rounds.push(next);
        if stable {
            let round_count = rounds.len() - 2;
            return Ok(RefinementTrace { rounds, round_count });
        }
    }
}

fn check_inputs(g: &Graph, vcol: &VertexColoring, acol: Option<&ArcColoring>) -> Result<()> {
    if vcol.len() != g.n() {
        return input(format!("vertex coloring has {} entries for {} vertices", vcol.len(), g.n()));
    }
    if let Some(a) = acol {
        if !a.fits(g) {
            return input("arc coloring does not match the adjacency structure");
        }
    }
    Ok(())
}

/// One refinement round: rank `(old, sorted neighbor multiset)`.
pub(crate) fn refine_round(
    g: &Graph,
    current: &VertexColoring,
    acol: Option<&ArcColoring>,
    rev: &[Vec<usize>],
) -> VertexColoring {
    let sigs: Vec<(usize, Vec<(usize, usize, usize)>)> = (0..g.n())
        .map(|v| {
            let mut ms: Vec<(usize, usize, usize)> = g
                .neighbors(v)
                .iter()
                .enumerate()
                .map(|(i, &w)| match acol {
                    Some(a) => (current.colors[w], a.colors[v][i], a.colors[w][rev[v][i]]),
                    None => (current.colors[w], 0, 0),
                })
                .collect();
            ms.sort_unstable();
            (current.colors[v], ms)
        })
        .collect();
    let (colors, num_colors) = rank(&sigs);
    VertexColoring { colors, num_colors }
}

/// Initial coloring for 2-WL.
#[derive(Debug, Clone, Copy)]
pub enum Wl2Init<'a> {
    Vertex(&'a VertexColoring),
    Pair(&'a PairColoring),
}

/// Stable 2-WL pair coloring.
pub fn wl2(g: &Graph, init: Wl2Init<'_>) -> Result<PairColoring> {
    Ok(wl2_rounds(g, init)?.0)
}

/// Stable 2-WL pair coloring and the number of refining rounds.
///
/// The initial color of `(v1, v2)` is `(vcol(v1), vcol(v2), [v1 = v2],
/// [v1 v2 ∈ E])`, or `(pc(v1, v2), [v1 = v2], [v1 v2 ∈ E])` for a pair
/// coloring.
pub fn wl2_rounds(g: &Graph, init: Wl2Init<'_>) -> Result<(PairColoring, usize)> {
    let n = g.n();
    let mut current = match init {
        Wl2Init::Vertex(vc) => {
            if vc.len() != n {
                return input(format!("vertex coloring has {} entries for {n} vertices", vc.len()));
            }
            PairColoring::from_fn(n, |u, v| (vc.colors[u], vc.colors[v], u == v, g.has_edge(u, v)))
        }
        Wl2Init::Pair(pc) => {
            if pc.n != n || pc.colors.len() != n * n {
                return input(format!("pair coloring is for {} vertices, graph has {n}", pc.n));
            }
            PairColoring::from_fn(n, |u, v| (pc.get(u, v), u == v, g.has_edge(u, v)))
        }
    };
    let mut rounds = 0;
    loop {
        let next = wl2_round(&current);
        if next.num_colors == current.num_colors {
            return Ok((next, rounds));
        }
        rounds += 1;
        current = next;
    }
}

type PairSignature = (usize, Vec<(u64, u32)>);

/// One 2-WL round. Signatures are interned in an ordered map so the new ids
/// are exactly the lexicographic ranks.
pub(crate) fn wl2_round(current: &PairColoring) -> PairColoring {
    let n = current.n;
    let k = current.num_colors as u64;
    let mut table: BTreeMap<PairSignature, usize> = BTreeMap::new();
    let mut slot = vec![0usize; n * n];
    let mut buf: Vec<u64> = Vec::with_capacity(n);
    for v1 in 0..n {
        for v2 in 0..n {
            buf.clear();
            buf.extend((0..n).map(|w| current.get(v1, w) as u64 * k + current.get(w, v2) as u64));
            buf.sort_unstable();
            let mut rle: Vec<(u64, u32)> = Vec::new();
            for &x in &buf {
                match rle.last_mut() {
                    Some((y, c)) if *y == x => *c += 1,
                    _ => rle.push((x, 1)),
                }
            }
            let next = table.len();
            slot[v1 * n + v2] = *table.entry((current.get(v1, v2), rle)).or_insert(next);
        }
    }
    let mut rank_of = vec![0usize; table.len()];
    for (r, &idx) in table.values().enumerate() {
        rank_of[idx] = r;
    }
    PairColoring { n, colors: slot.into_iter().map(|s| rank_of[s]).collect(), num_colors: table.len() }
}

/// True iff the two color vectors induce the same partition.
pub fn partitions_equivalent(c1: &[usize], c2: &[usize]) -> Result<bool> {
    if c1.len() != c2.len() {
        return input(format!("domains differ: {} vs {}", c1.len(), c2.len()));
    }
    Ok(refines(c1, c2)? && refines(c2, c1)?)
}

/// True iff every class of `finer` lies inside a class of `coarser`.
pub fn refines(finer: &[usize], coarser: &[usize]) -> Result<bool> {
    if finer.len() != coarser.len() {
        return input(format!("domains differ: {} vs {}", finer.len(), coarser.len()));
    }
    let mut image: BTreeMap<usize, usize> = BTreeMap::new();
    for (&f, &c) in finer.iter().zip(coarser) {
        if *image.entry(f).or_insert(c) != c {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::partition_of;

    fn refine_plain(g: &Graph) -> VertexColoring {
        color_refine(g, &VertexColoring::uniform(g.n()), None).unwrap()
    }

    #[test]
    fn cycle_is_one_class() {
        assert_eq!(refine_plain(&Graph::cycle(6)).num_colors, 1);
    }

    #[test]
    fn path_endpoints_split() {
        let c = refine_plain(&Graph::path(4));
        assert_eq!(partition_of(&c.colors), vec![vec![0, 3], vec![1, 2]]);
    }

    #[test]
    fn star_center_splits() {
        let c = refine_plain(&Graph::star(5));
        assert_eq!(c.num_colors, 2);
        // Degree 1 signatures sort before degree 5 ones.
        assert_eq!(c.colors[0], 1);
    }

    #[test]
    fn arc_colors_break_symmetry() {
        let g = Graph::path(3);
        let acol = ArcColoring::from_fn(&g, |u, v| usize::from(u == 0 && v == 1));
        let c = color_refine(&g, &VertexColoring::uniform(3), Some(&acol)).unwrap();
        assert!(c.is_discrete());
    }

    #[test]
    fn trace_records_rounds() {
        let t = color_refine_trace(&Graph::path(7), &VertexColoring::uniform(7), None).unwrap();
        assert_eq!(t.round_count, 3);
        assert_eq!(t.stable().num_colors, 4);
    }

    #[test]
    fn wl2_small_cases() {
        let k4 = wl2(&Graph::complete(4), Wl2Init::Vertex(&VertexColoring::uniform(4))).unwrap();
        assert_eq!(k4.num_colors, 2);
        let c5 = wl2(&Graph::cycle(5), Wl2Init::Vertex(&VertexColoring::uniform(5))).unwrap();
        assert_eq!(c5.num_colors, 3);
        let c6 = wl2(&Graph::cycle(6), Wl2Init::Vertex(&VertexColoring::uniform(6))).unwrap();
        // Diagonal, distance 1, 2, 3.
        assert_eq!(c6.num_colors, 4);
    }

    #[test]
    fn equivalence() {
        assert!(partitions_equivalent(&[0, 0, 1], &[5, 5, 2]).unwrap());
        assert!(!partitions_equivalent(&[0, 1], &[0, 0]).unwrap());
        assert!(partitions_equivalent(&[0], &[0, 1]).is_err());
    }
}
