//! Individualization-refinement search on a pair of colored graphs.
//!
//! Both graphs are refined together as one disjoint union, so their colors
//! are comparable. A branch dies as soon as some color has different counts
//! on the two sides. Branching is restricted to a marked vertex set; the
//! leaf callback receives the refined coloring once the marked vertices are
//! in singleton cells.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::graph::{Graph, VertexColoring};
use crate::perm::{Perm, PermGroup};
use crate::refinement::color_refine;

pub(crate) struct PairSearch {
    union: Graph,
    n1: usize,
    /// Vertices of the union that may be individualized.
    branch: Vec<bool>,
}

/// The leaf test: gets the refined coloring, returns a full isomorphism or
/// `None` to backtrack.
pub(crate) type Leaf<'a> = dyn FnMut(&PairSearch, &[usize]) -> Result<Option<Perm>> + 'a;

impl PairSearch {
    /// `branch1` and `branch2` flag the branchable vertices of each side.
    pub(crate) fn new(g1: &Graph, g2: &Graph, branch1: &[bool], branch2: &[bool]) -> Self {
        let mut branch = branch1.to_vec();
        branch.extend_from_slice(branch2);
        PairSearch { union: g1.disjoint_union(g2), n1: g1.n(), branch }
    }

    pub(crate) fn n1(&self) -> usize {
        self.n1
    }

    /// Initial union coloring from per-side raw colors.
    pub(crate) fn initial(&self, c1: &[usize], c2: &[usize]) -> Vec<usize> {
        c1.iter().chain(c2).copied().collect()
    }

    pub(crate) fn refine(&self, colors: &[usize]) -> Result<Vec<usize>> {
        Ok(color_refine(&self.union, &VertexColoring::from_raw(colors), None)?.colors)
    }

    /// Every color has as many vertices on the left as on the right.
    pub(crate) fn balanced(&self, colors: &[usize]) -> bool {
        let mut count: BTreeMap<usize, isize> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *count.entry(c).or_default() += if v < self.n1 { 1 } else { -1 };
        }
        count.values().all(|&x| x == 0)
    }

    /// Branchable left and right vertices of the smallest color that has
    /// more than one branchable left vertex.
    fn target(&self, colors: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut cells: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            if self.branch[v] {
                let e = cells.entry(c).or_default();
                if v < self.n1 {
                    e.0.push(v);
                } else {
                    e.1.push(v - self.n1);
                }
            }
        }
        cells.into_values().find(|(l, _)| l.len() > 1)
    }

    /// Gives `v1` (left) and `v2` (right) a fresh common color.
    pub(crate) fn individualize(&self, colors: &[usize], v1: usize, v2: usize) -> Vec<usize> {
        let mut out: Vec<usize> = colors.iter().map(|&c| 2 * c).collect();
        out[v1] += 1;
        out[self.n1 + v2] += 1;
        out
    }

    /// Left to right map on branchable vertices of a coloring in which they
    /// sit in singleton cells.
    pub(crate) fn matched(&self, colors: &[usize]) -> BTreeMap<usize, usize> {
        let right: BTreeMap<usize, usize> =
            (self.n1..colors.len()).filter(|&v| self.branch[v]).map(|v| (colors[v], v - self.n1)).collect();
        (0..self.n1).filter(|&v| self.branch[v]).filter_map(|v| right.get(&colors[v]).map(|&w| (v, w))).collect()
    }

    /// Depth-first search for one leaf accepted by `leaf`.
    pub(crate) fn find_one(&self, colors: &[usize], leaf: &mut Leaf<'_>) -> Result<Option<Perm>> {
        let refined = self.refine(colors)?;
        if !self.balanced(&refined) {
            return Ok(None);
        }
        let Some((left, right)) = self.target(&refined) else {
            return leaf(self, &refined);
        };
        let v1 = left[0];
        for &v2 in &right {
            let next = self.individualize(&refined, v1, v2);
            if let Some(found) = self.find_one(&next, leaf)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Leaf test for plain colored isomorphism with every vertex branchable.
pub(crate) fn full_leaf<'a>(
    g1: &'a Graph,
    c1: &'a [usize],
    g2: &'a Graph,
    c2: &'a [usize],
) -> impl FnMut(&PairSearch, &[usize]) -> Result<Option<Perm>> + 'a {
    move |s: &PairSearch, colors: &[usize]| {
        let m = s.matched(colors);
        if m.len() != g1.n() {
            return Ok(None);
        }
        let phi: Perm = (0..g1.n()).map(|v| m[&v]).collect();
        let colors_ok = (0..g1.n()).all(|v| c1[v] == c2[phi[v]]);
        Ok((colors_ok && g1.is_isomorphism(g2, &phi)).then_some(phi))
    }
}

/// One colored isomorphism `g1 -> g2`, if any.
pub fn find_isomorphism(g1: &Graph, c1: &[usize], g2: &Graph, c2: &[usize]) -> Result<Option<Perm>> {
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return Ok(None);
    }
    let s = PairSearch::new(g1, g2, &vec![true; g1.n()], &vec![true; g2.n()]);
    let mut leaf = full_leaf(g1, c1, g2, c2);
    s.find_one(&s.initial(c1, c2), &mut leaf)
}

/// Generators of the colored automorphism group.
///
/// Follows the first path of the search tree to a discrete leaf and, level
/// by level from the bottom, looks for one automorphism per base-point image
/// not yet in the orbit of the generators found below.
pub fn automorphism_group(g: &Graph, colors: &[usize]) -> Result<PermGroup> {
    let n = g.n();
    let s = PairSearch::new(g, g, &vec![true; n], &vec![true; n]);
    // First path: (coloring before individualizing, base point, cell).
    let mut path: Vec<(Vec<usize>, usize, Vec<usize>)> = Vec::new();
    let mut current = s.refine(&s.initial(colors, colors))?;
    while let Some((left, _)) = s.target(&current) {
        let b = left[0];
        path.push((current.clone(), b, left));
        current = s.refine(&s.individualize(&current, b, b))?;
    }
    let mut gens: Vec<Perm> = Vec::new();
    let mut leaf = full_leaf(g, colors, g, colors);
    for (before, b, cell) in path.iter().rev() {
        let mut orbit = orbit_of(n, &gens, *b);
        for &w in cell {
            if orbit.contains(&w) {
                continue;
            }
            if let Some(phi) = s.find_one(&s.individualize(before, *b, w), &mut leaf)? {
                gens.push(phi);
                orbit = orbit_of(n, &gens, *b);
            }
        }
    }
    PermGroup::new(n, &gens)
}

fn orbit_of(n: usize, gens: &[Perm], p: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([p]);
    let mut stack = vec![p];
    while let Some(x) = stack.pop() {
        for g in gens {
            debug_assert_eq!(g.len(), n);
            if seen.insert(g[x]) {
                stack.push(g[x]);
            }
        }
    }
    seen
}
