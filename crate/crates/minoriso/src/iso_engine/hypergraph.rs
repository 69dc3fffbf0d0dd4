//! Isomorphism of coset-labeled hypergraphs inside a given coset.
//!
//! The search assigns images point by point. A partial assignment is kept
//! only while some element of the coset `Γρ` agrees with it, which is decided
//! through the pointwise stabilizers of the prefixes and their orbit
//! transversals. Hyperedges are checked as soon as all their vertices are
//! mapped.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{input, Result};
use crate::perm::{compose, inverse, Coset, LabelingCoset, Perm, PermGroup};

/// A hyperedge with its label: the labeling coset of its vertex set and a
/// color.
#[derive(Debug, Clone)]
pub struct Hyperedge {
    pub coset: LabelingCoset,
    pub color: usize,
}

impl Hyperedge {
    pub fn vertices(&self) -> &[usize] {
        &self.coset.domain
    }
}

#[derive(Debug, Clone)]
pub struct CosetLabeledHypergraph {
    pub n: usize,
    pub edges: Vec<Hyperedge>,
}

impl CosetLabeledHypergraph {
    /// Checks that every hyperedge is a sorted, distinct vertex set and that
    /// no vertex set carries two labels.
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for e in &edges {
            let v = e.vertices();
            if v.windows(2).any(|w| w[0] >= w[1]) || v.iter().any(|&x| x >= n) {
                return input("hyperedge vertices must be sorted, distinct and in range");
            }
            if !seen.insert(v.to_vec()) {
                return input("hyperedge carries two labels");
            }
        }
        Ok(CosetLabeledHypergraph { n, edges })
    }
}

/// Labelings of a hyperedge, keyed by vertex.
fn labelings(e: &Hyperedge) -> Result<BTreeSet<BTreeMap<usize, usize>>> {
    Ok(e.coset.enumerate(usize::MAX)?.into_iter().map(|lab| e.vertices().iter().copied().zip(lab).collect()).collect())
}

struct Prepared {
    /// Hyperedges of `H1` indexed by their largest vertex.
    closing: Vec<Vec<usize>>,
    labels1: Vec<BTreeSet<BTreeMap<usize, usize>>>,
    index2: BTreeMap<Vec<usize>, usize>,
    labels2: Vec<BTreeSet<BTreeMap<usize, usize>>>,
    /// Sorted (size, color) incidences per vertex.
    inc1: Vec<Vec<(usize, usize)>>,
    inc2: Vec<Vec<(usize, usize)>>,
}

fn incidences(h: &CosetLabeledHypergraph) -> Vec<Vec<(usize, usize)>> {
    let mut inc = vec![Vec::new(); h.n];
    for e in &h.edges {
        for &v in e.vertices() {
            inc[v].push((e.vertices().len(), e.color));
        }
    }
    inc.iter_mut().for_each(|x| x.sort_unstable());
    inc
}

impl Prepared {
    fn new(h1: &CosetLabeledHypergraph, h2: &CosetLabeledHypergraph) -> Result<Self> {
        let mut closing = vec![Vec::new(); h1.n];
        for (i, e) in h1.edges.iter().enumerate() {
            if let Some(&last) = e.vertices().last() {
                closing[last].push(i);
            }
        }
        Ok(Prepared {
            closing,
            labels1: h1.edges.iter().map(labelings).collect::<Result<_>>()?,
            index2: h2.edges.iter().enumerate().map(|(i, e)| (e.vertices().to_vec(), i)).collect(),
            labels2: h2.edges.iter().map(labelings).collect::<Result<_>>()?,
            inc1: incidences(h1),
            inc2: incidences(h2),
        })
    }

    /// Hyperedge `i` of `H1` maps onto a hyperedge with the same color whose
    /// labelings are the transported ones.
    fn edge_ok(&self, h1: &CosetLabeledHypergraph, h2: &CosetLabeledHypergraph, i: usize, phi: &[usize]) -> bool {
        let mut image: Vec<usize> = h1.edges[i].vertices().iter().map(|&v| phi[v]).collect();
        image.sort_unstable();
        let Some(&j) = self.index2.get(&image) else {
            return false;
        };
        if h1.edges[i].color != h2.edges[j].color {
            return false;
        }
        let moved: BTreeSet<BTreeMap<usize, usize>> =
            self.labels1[i].iter().map(|l| l.iter().map(|(&v, &x)| (phi[v], x)).collect()).collect();
        moved == self.labels2[j]
    }
}

/// Orbit of `p` under `gens` with a transversal: `t[q]` maps `p` to `q`.
fn transversal(n: usize, gens: &[Perm], p: usize) -> BTreeMap<usize, Perm> {
    let mut t = BTreeMap::from([(p, crate::perm::identity(n))]);
    let mut queue = VecDeque::from([p]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g[x];
            if !t.contains_key(&y) {
                let path = compose(&t[&x], g);
                t.insert(y, path);
                queue.push_back(y);
            }
        }
    }
    t
}

struct Search<'a> {
    h1: &'a CosetLabeledHypergraph,
    h2: &'a CosetLabeledHypergraph,
    prep: Prepared,
    rep: Perm,
    /// `trans[i]`: transversal of the orbit of `i` under the pointwise
    /// stabilizer of `0..i`.
    trans: Vec<BTreeMap<usize, Perm>>,
}

impl Search<'_> {
    /// One isomorphism agreeing with `fixed` on its prefix, if any.
    fn find(&self, fixed: &[usize]) -> Option<Perm> {
        let n = self.h1.n;
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(0, &crate::perm::identity(n), &mut phi, &mut used, fixed)
    }

    fn extend(
        &self,
        i: usize,
        gamma: &Perm,
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        fixed: &[usize],
    ) -> Option<Perm> {
        let n = self.h1.n;
        if i == n {
            return Some(phi.clone());
        }
        for (&o, h) in &self.trans[i] {
            // gamma' = h then gamma maps i to gamma[o].
            let y = self.rep[gamma[o]];
            if used[y] || (i < fixed.len() && fixed[i] != y) || self.prep.inc1[i] != self.prep.inc2[y] {
                continue;
            }
            phi[i] = y;
            used[y] = true;
            let ok = self.prep.closing[i].iter().all(|&e| self.prep.edge_ok(self.h1, self.h2, e, phi));
            if ok {
                let next = compose(h, gamma);
                if let Some(found) = self.extend(i + 1, &next, phi, used, fixed) {
                    return Some(found);
                }
            }
            used[y] = false;
            phi[i] = usize::MAX;
        }
        None
    }
}

/// `Iso_{Γρ}(H1, H2)`: all bijections in `gd` mapping hyperedges onto
/// hyperedges with equal colors and transported labeling cosets.
pub fn coset_labeled_hypergraph_iso(
    h1: &CosetLabeledHypergraph,
    h2: &CosetLabeledHypergraph,
    gd: &Coset,
) -> Result<Coset> {
    let Coset::Of { group, rep } = gd else {
        return input("the coset must be nonempty");
    };
    let n = h1.n;
    if h2.n != n || group.degree() != n {
        return input("vertex counts differ from the coset degree");
    }
    if h1.edges.len() != h2.edges.len() {
        return Ok(Coset::Empty);
    }
    let mut trans = Vec::with_capacity(n);
    for i in 0..n {
        let prefix: Vec<usize> = (0..i).collect();
        let stab = group.pointwise_stabilizer(&prefix)?;
        trans.push(transversal(n, stab.generators(), i));
    }
    let search = Search { h1, h2, prep: Prepared::new(h1, h2)?, rep: rep.clone(), trans };
    let Some(phi0) = search.find(&[]) else {
        return Ok(Coset::Empty);
    };
    // For every point (deepest first) and every other feasible image, one
    // isomorphism agreeing with phi0 before that point. The quotients by
    // phi0 generate the automorphism part.
    let phi0_inv = inverse(&phi0);
    let mut gens: Vec<Perm> = Vec::new();
    for i in (0..n).rev() {
        let mut prefix: Vec<usize> = phi0[..i].to_vec();
        prefix.push(0);
        let mut orbit: BTreeSet<usize> = BTreeSet::from([i]);
        for y in 0..n {
            if y == phi0[i] || orbit.contains(&phi0_inv[y]) {
                continue;
            }
            prefix[i] = y;
            if let Some(phi) = search.find(&prefix) {
                gens.push(compose(&phi, &phi0_inv));
                orbit = transversal(n, &gens, i).into_keys().collect();
            }
        }
    }
    Coset::new(PermGroup::new(n, &gens)?, phi0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate_small, identity};

    fn edge(vs: &[usize], group: PermGroup, rho: Perm, color: usize) -> Hyperedge {
        Hyperedge { coset: LabelingCoset::new(vs.to_vec(), group, rho).unwrap(), color }
    }

    #[test]
    fn singletons_give_color_preserving_group() {
        let colors = [0, 0, 1, 1];
        let edges = |c: &[usize]| (0..4).map(|v| edge(&[v], PermGroup::trivial(1), vec![0], c[v])).collect::<Vec<_>>();
        let h = CosetLabeledHypergraph::new(4, edges(&colors)).unwrap();
        let full = Coset::new(PermGroup::symmetric(4), identity(4)).unwrap();
        let got = coset_labeled_hypergraph_iso(&h, &h, &full).unwrap();
        assert_eq!(got.size(), 4u32.into());
    }

    #[test]
    fn swapped_label_is_empty() {
        let mk =
            |rho: Perm| CosetLabeledHypergraph::new(4, vec![edge(&[0, 1], PermGroup::trivial(2), rho, 0)]).unwrap();
        let (a, b) = (mk(vec![0, 1]), mk(vec![1, 0]));
        // Inside the stabilizer of 0 and 1 the forced labels cannot match.
        let g = PermGroup::new(4, &[vec![0, 1, 3, 2]]).unwrap();
        let gd = Coset::new(g, identity(4)).unwrap();
        assert!(coset_labeled_hypergraph_iso(&a, &b, &gd).unwrap().is_empty());
        // With the full symmetric coset, swapping 0 and 1 works.
        let full = Coset::new(PermGroup::symmetric(4), identity(4)).unwrap();
        let got = coset_labeled_hypergraph_iso(&a, &b, &full).unwrap();
        let all = enumerate_small(&got, 100).unwrap();
        assert!(all.iter().all(|p| p[0] == 1 && p[1] == 0));
        assert_eq!(all.len(), 2);
    }
}
