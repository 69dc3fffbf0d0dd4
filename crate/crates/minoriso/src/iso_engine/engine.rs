//! The recursive isomorphism test.
//!
//! A problem is a connected colored graph with a small vertex set `S`. For a
//! pair of problems the engine computes every bijection `S1 -> S2` that
//! extends to a colored isomorphism, each with one full isomorphism as
//! witness. It finds an initial class `X`, takes `D = cl_t(X ∪ S)`, recurses
//! on the components of `G - D` (with their separators as the new `S`),
//! groups the components by separator into multiple-labeling-cosets, and
//! searches bijections of `D` whose leaves pass the separator test.

use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use crate::closure::{closure_t, components_and_separators};
use crate::config::Config;
use crate::error::{invariant, Result};
use crate::graph::{induced_subgraph, rank, Graph, VertexColoring};
use crate::initial_color::{find_initial_class, InitialColorOutput};
use crate::perm::{inverse, Coset, Perm};

use super::mlc::{labeling_coset_of, multiple_labeling_coset_iso, MultipleLabelingCoset};
use super::search::PairSearch;

/// A connected colored graph with a distinguished vertex set `s` (sorted).
#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub g: Graph,
    pub colors: Vec<usize>,
    pub s: Vec<usize>,
}

/// `D` and the components of `G - D` with their separators.
#[derive(Debug, Clone)]
pub(crate) struct Split {
    pub d: Vec<usize>,
    pub comps: Vec<(Vec<usize>, Vec<usize>)>,
    /// Invariant data that must agree between isomorphic problems.
    pub signature: Vec<usize>,
}

/// Bijections `S1 -> S2` (as positions) extending to isomorphisms, each
/// with one full isomorphism.
#[derive(Debug, Clone, Default)]
pub(crate) struct IsoSet {
    pub maps: BTreeMap<Vec<usize>, Perm>,
}

pub(crate) enum Found {
    Minor,
    Set(IsoSet),
}

/// A component problem and where it sits in its parent.
struct Child {
    prob: Problem,
    /// Child vertex to parent vertex.
    map: Vec<usize>,
    /// The separator, as sorted parent vertices.
    sep: Vec<usize>,
}

/// Per component: its type (index of the representative) and the
/// isomorphisms from the representative onto it.
type Typed = Vec<(usize, IsoSet)>;

pub(crate) struct Engine<'a> {
    pub cfg: &'a Config,
    pub t: usize,
}

fn empty() -> Result<Found> {
    Ok(Found::Set(IsoSet::default()))
}

fn position(sorted: &[usize], v: usize) -> usize {
    sorted.binary_search(&v).expect("vertex lies in the set")
}

impl<'a> Engine<'a> {
    pub fn new(cfg: &'a Config) -> Self {
        Engine { cfg, t: cfg.t() }
    }

    /// `None` when a `K_h` minor is concluded.
    pub fn split(&self, p: &Problem) -> Result<Option<Split>> {
        let g = &p.g;
        let n = g.n();
        let vcol = VertexColoring::from_raw(&p.colors);
        let class = match find_initial_class(g, &vcol, self.cfg)? {
            InitialColorOutput::MinorFound => return Ok(None),
            InitialColorOutput::Class(c) => c,
        };
        let mut seeds: BTreeSet<usize> = class.x_in_g().into_iter().collect();
        seeds.extend(p.s.iter().copied());
        let mut d = closure_t(g, &vcol, None, &seeds.iter().copied().collect::<Vec<_>>(), self.t)?.d;
        let separator_theorem = self.t >= 3 * self.cfg.h.pow(3);
        let mut reseeds = 0;
        loop {
            let comps = components_and_separators(g, &d)?;
            if separator_theorem && comps.iter().any(|(_, s)| s.len() >= self.cfg.h) {
                log::debug!("separator of size >= {} on {n} vertices: minor", self.cfg.h);
                return Ok(None);
            }
            let stuck = comps.len() == 1 && comps[0].0.len() + comps[0].1.len() == n;
            if !stuck {
                let mut shape: Vec<(usize, usize)> = comps.iter().map(|(z, s)| (z.len(), s.len())).collect();
                shape.sort_unstable();
                let mut signature =
                    vec![class.color, class.x.len(), class.g_prime.n(), class.restarts, reseeds, d.len(), comps.len()];
                signature.extend(shape.into_iter().flat_map(|(a, b)| [a, b]));
                return Ok(Some(Split { d, comps, signature }));
            }
            // One component hanging off all of D: grow D by an initial class
            // of that component.
            let (sub, map) = induced_subgraph(g, &comps[0].0)?;
            let in_d: BTreeSet<usize> = d.iter().copied().collect();
            let keys: Vec<(usize, usize)> = map
                .iter()
                .map(|&v| (p.colors[v], g.neighbors(v).iter().filter(|w| in_d.contains(w)).count()))
                .collect();
            let x = match find_initial_class(&sub, &VertexColoring::from_raw(&keys), self.cfg)? {
                InitialColorOutput::MinorFound => return Ok(None),
                InitialColorOutput::Class(c) => c.x_in_g(),
            };
            let mut seeds = in_d;
            seeds.extend(x.iter().map(|&i| map[i]));
            d = closure_t(g, &vcol, None, &seeds.into_iter().collect::<Vec<_>>(), self.t)?.d;
            reseeds += 1;
            log::debug!("reseed {reseeds}: closure grew to {} of {n} vertices", d.len());
        }
    }

    fn quick_match(&self, p1: &Problem, p2: &Problem) -> bool {
        let profile = |p: &Problem| {
            let mut cd: Vec<(usize, usize)> = (0..p.g.n()).map(|v| (p.colors[v], p.g.degree(v))).collect();
            cd.sort_unstable();
            let mut sc: Vec<usize> = p.s.iter().map(|&v| p.colors[v]).collect();
            sc.sort_unstable();
            (p.g.n(), p.g.m(), cd, sc)
        };
        profile(p1) == profile(p2)
    }

    /// Every colored isomorphism by exhaustive matching; for tiny graphs.
    fn brute(&self, p1: &Problem, p2: &Problem) -> IsoSet {
        let n = p1.g.n();
        let mut out = IsoSet::default();
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(i: usize, p1: &Problem, p2: &Problem, phi: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut IsoSet) {
            let n = phi.len();
            if i == n {
                let key: Vec<usize> = p1.s.iter().map(|&v| position(&p2.s, phi[v])).collect();
                out.maps.entry(key).or_insert_with(|| phi.clone());
                return;
            }
            for y in 0..n {
                if used[y] || p1.colors[i] != p2.colors[y] || p1.g.degree(i) != p2.g.degree(y) {
                    continue;
                }
                let ok = p1.g.neighbors(i).iter().filter(|&&w| w < i).all(|&w| p2.g.has_edge(phi[w], y))
                    && p2.g.neighbors(y).iter().filter(|&&w| used[w]).count()
                        == p1.g.neighbors(i).iter().filter(|&&w| w < i).count();
                if ok {
                    used[y] = true;
                    phi[i] = y;
                    go(i + 1, p1, p2, phi, used, out);
                    used[y] = false;
                }
            }
        }
        go(0, p1, p2, &mut phi, &mut used, &mut out);
        out
    }

    /// Component problems of both sides with jointly ranked colors.
    fn children(&self, p1: &Problem, sp1: &Split, p2: &Problem, sp2: &Split) -> Result<(Vec<Child>, Vec<Child>)> {
        let mut raw: Vec<(usize, Graph, Vec<usize>, Vec<usize>, Vec<(usize, usize)>)> = Vec::new();
        for (side, (p, sp)) in [(p1, sp1), (p2, sp2)].into_iter().enumerate() {
            for (z, sep) in &sp.comps {
                let mut verts = z.clone();
                verts.extend(sep.iter().copied());
                let (g, map) = induced_subgraph(&p.g, &verts)?;
                let keys = map.iter().map(|&v| (usize::from(sep.binary_search(&v).is_err()), p.colors[v])).collect();
                raw.push((side, g, map, sep.clone(), keys));
            }
        }
        let all: Vec<(usize, usize)> = raw.iter().flat_map(|r| r.4.iter().copied()).collect();
        let (ids, _) = rank(&all);
        let mut at = 0;
        let (mut k1, mut k2) = (Vec::new(), Vec::new());
        for (side, g, map, sep, keys) in raw {
            let colors = ids[at..at + keys.len()].to_vec();
            at += keys.len();
            let s = (0..map.len()).filter(|&i| keys[i].0 == 0).collect();
            let child = Child { prob: Problem { g, colors, s }, map, sep };
            if side == 0 {
                k1.push(child)
            } else {
                k2.push(child)
            }
        }
        Ok((k1, k2))
    }

    fn similar(a: &Problem, b: &Problem) -> bool {
        let key = |p: &Problem| {
            let mut c = p.colors.clone();
            c.sort_unstable();
            (p.g.n(), p.g.m(), p.s.len(), c)
        };
        key(a) == key(b)
    }

    /// Groups components into isomorphism types with representatives from
    /// the left side. `None` inside the result means a right component
    /// matched no type; the outer `None` means a minor.
    fn types(&self, kids1: &[Child], kids2: &[Child]) -> Result<Option<(Typed, Option<Typed>)>> {
        let mut reps: Vec<usize> = Vec::new();
        let mut t1: Typed = Vec::new();
        for (i, k) in kids1.iter().enumerate() {
            let mut placed = None;
            for (ti, &r) in reps.iter().enumerate() {
                if !Self::similar(&kids1[r].prob, &k.prob) {
                    continue;
                }
                match self.iso_set(&kids1[r].prob, &k.prob)? {
                    Found::Minor => return Ok(None),
                    Found::Set(s) if !s.maps.is_empty() => {
                        placed = Some((ti, s));
                        break;
                    }
                    Found::Set(_) => {}
                }
            }
            let entry = match placed {
                Some(x) => x,
                None => match self.iso_set(&k.prob, &k.prob)? {
                    Found::Minor => return Ok(None),
                    Found::Set(s) => {
                        reps.push(i);
                        (reps.len() - 1, s)
                    }
                },
            };
            t1.push(entry);
        }
        let mut t2: Typed = Vec::new();
        for k in kids2 {
            let mut placed = None;
            for (ti, &r) in reps.iter().enumerate() {
                if !Self::similar(&kids1[r].prob, &k.prob) {
                    continue;
                }
                match self.iso_set(&kids1[r].prob, &k.prob)? {
                    Found::Minor => return Ok(None),
                    Found::Set(s) if !s.maps.is_empty() => {
                        placed = Some((ti, s));
                        break;
                    }
                    Found::Set(_) => {}
                }
            }
            match placed {
                Some(x) => t2.push(x),
                None => return Ok(Some((t1, None))),
            }
        }
        Ok(Some((t1, Some(t2))))
    }

    pub fn iso_set(&self, p1: &Problem, p2: &Problem) -> Result<Found> {
        if !self.quick_match(p1, p2) {
            return empty();
        }
        if p1.g.n() < self.cfg.h {
            return Ok(Found::Set(self.brute(p1, p2)));
        }
        let Some(sp1) = self.split(p1)? else {
            return Ok(Found::Minor);
        };
        // Isomorphic problems split identically, so a minor on the right
        // alone means the pair is not isomorphic.
        let Some(sp2) = self.split(p2)? else {
            return empty();
        };
        if sp1.signature != sp2.signature {
            return empty();
        }
        let (kids1, kids2) = self.children(p1, &sp1, p2, &sp2)?;
        let Some((t1, t2)) = self.types(&kids1, &kids2)? else {
            return Ok(Found::Minor);
        };
        let Some(t2) = t2 else {
            return empty();
        };
        let count = |t: &Typed| {
            let mut v: Vec<usize> = t.iter().map(|x| x.0).collect();
            v.sort_unstable();
            v
        };
        if count(&t1) != count(&t2) {
            return empty();
        }
        let sides = Sides::new(&kids1, &t1, &kids2, &t2)?;
        if sides.classes1.len() != sides.classes2.len() {
            return empty();
        }
        let out = self.search_d(p1, &sp1, p2, &sp2, &kids1, &kids2, &t1, &t2, &sides)?;
        Ok(Found::Set(out))
    }

    #[allow(clippy::too_many_arguments)]
    fn search_d(
        &self,
        p1: &Problem,
        sp1: &Split,
        p2: &Problem,
        sp2: &Split,
        kids1: &[Child],
        kids2: &[Child],
        t1: &Typed,
        t2: &Typed,
        sides: &Sides,
    ) -> Result<IsoSet> {
        let flags = |p: &Problem, sp: &Split| -> Vec<bool> {
            let mut f = vec![false; p.g.n()];
            sp.d.iter().for_each(|&v| f[v] = true);
            f
        };
        let (b1, b2) = (flags(p1, sp1), flags(p2, sp2));
        let search = PairSearch::new(&p1.g, &p2.g, &b1, &b2);
        // Initial colors: own color, membership in D, and the number of
        // separators containing the vertex.
        let sep_count = |p: &Problem, kids: &[Child]| {
            let mut c = vec![0usize; p.g.n()];
            kids.iter().flat_map(|k| k.sep.iter()).for_each(|&v| c[v] += 1);
            c
        };
        let (sc1, sc2) = (sep_count(p1, kids1), sep_count(p2, kids2));
        let keys: Vec<(usize, bool, usize)> = (0..p1.g.n())
            .map(|v| (p1.colors[v], b1[v], sc1[v]))
            .chain((0..p2.g.n()).map(|v| (p2.colors[v], b2[v], sc2[v])))
            .collect();
        let (init, _) = rank(&keys);
        let d_edges = |p: &Problem, b: &[bool]| p.g.edges().iter().filter(|&&(u, v)| b[u] && b[v]).count();
        if d_edges(p1, &b1) != d_edges(p2, &b2) {
            return Ok(IsoSet::default());
        }
        let allowed: RefCell<BTreeMap<(usize, usize), BTreeSet<Vec<usize>>>> = RefCell::new(BTreeMap::new());
        let mut leaf = |s: &PairSearch, colors: &[usize]| -> Result<Option<Perm>> {
            let m = s.matched(colors);
            if m.len() != sp1.d.len() {
                return Ok(None);
            }
            for (&u, &w) in &m {
                if p1.colors[u] != p2.colors[w] {
                    return Ok(None);
                }
                for &x in p1.g.neighbors(u) {
                    if b1[x] && !p2.g.has_edge(w, m[&x]) {
                        return Ok(None);
                    }
                }
            }
            let mut phi = vec![usize::MAX; p1.g.n()];
            m.iter().for_each(|(&u, &w)| phi[u] = w);
            let mut used2 = vec![false; kids2.len()];
            for (c1, (sep1, members1)) in sides.classes1.iter().enumerate() {
                let mut image: Vec<usize> = sep1.iter().map(|v| m[v]).collect();
                image.sort_unstable();
                let Some(&c2) = sides.index2.get(&image) else {
                    return Ok(None);
                };
                let sep2 = &sides.classes2[c2].0;
                let sigma: Vec<usize> = sep1.iter().map(|v| position(sep2, m[v])).collect();
                let ok = {
                    let mut cache = allowed.borrow_mut();
                    let set = match cache.entry((c1, c2)) {
                        Entry::Occupied(e) => e.into_mut(),
                        Entry::Vacant(e) => {
                            e.insert(match multiple_labeling_coset_iso(&sides.mlc1[c1], &sides.mlc2[c2])? {
                                Coset::Empty => BTreeSet::new(),
                                c => crate::perm::enumerate_small(&c, usize::MAX)?.into_iter().collect(),
                            })
                        }
                    };
                    set.contains(&sigma)
                };
                if !ok {
                    return Ok(None);
                }
                // Pair the components of the two classes.
                for &k1 in members1 {
                    let (ty, rep_to_k1) = &t1[k1];
                    let (key_a, full_a) = rep_to_k1.maps.iter().next().expect("a component maps onto itself");
                    let wanted: Vec<usize> = key_a.iter().map(|&i| sigma[i]).collect();
                    let partner = sides.classes2[c2]
                        .1
                        .iter()
                        .copied()
                        .find(|&k2| !used2[k2] && t2[k2].0 == *ty && t2[k2].1.maps.contains_key(&wanted));
                    let Some(k2) = partner else {
                        return invariant("separator classes match but components do not pair up");
                    };
                    used2[k2] = true;
                    let full_b = &t2[k2].1.maps[&wanted];
                    let a_inv = inverse(full_a);
                    for (x, &pv) in kids1[k1].map.iter().enumerate() {
                        let img = kids2[k2].map[full_b[a_inv[x]]];
                        if phi[pv] != usize::MAX && phi[pv] != img {
                            return invariant("component map disagrees on its separator");
                        }
                        phi[pv] = img;
                    }
                }
            }
            let colors_ok = (0..p1.g.n()).all(|v| phi[v] != usize::MAX && p1.colors[v] == p2.colors[phi[v]]);
            if !colors_ok || !p1.g.is_isomorphism(&p2.g, &phi) {
                return invariant("assembled map is not an isomorphism");
            }
            Ok(Some(phi))
        };
        let mut out = IsoSet::default();
        self.enumerate_s(&search, &init, 0, p1, p2, &mut leaf, &mut out)?;
        Ok(out)
    }

    /// Branches over the images of `S1` in order, then looks for one
    /// completion per bijection.
    #[allow(clippy::too_many_arguments)]
    fn enumerate_s(
        &self,
        search: &PairSearch,
        colors: &[usize],
        idx: usize,
        p1: &Problem,
        p2: &Problem,
        leaf: &mut super::search::Leaf<'_>,
        out: &mut IsoSet,
    ) -> Result<()> {
        let refined = search.refine(colors)?;
        if !search.balanced(&refined) {
            return Ok(());
        }
        if idx == p1.s.len() {
            if let Some(phi) = search.find_one(&refined, leaf)? {
                let key: Vec<usize> = p1.s.iter().map(|&v| position(&p2.s, phi[v])).collect();
                out.maps.insert(key, phi);
            }
            return Ok(());
        }
        let v1 = p1.s[idx];
        let n1 = search.n1();
        for &v2 in &p2.s {
            if refined[n1 + v2] == refined[v1] {
                let next = search.individualize(&refined, v1, v2);
                self.enumerate_s(search, &next, idx + 1, p1, p2, leaf, out)?;
            }
        }
        Ok(())
    }
}

/// Separator classes of both sides as multiple-labeling-cosets.
struct Sides {
    classes1: Vec<(Vec<usize>, Vec<usize>)>,
    classes2: Vec<(Vec<usize>, Vec<usize>)>,
    index2: BTreeMap<Vec<usize>, usize>,
    mlc1: Vec<MultipleLabelingCoset>,
    mlc2: Vec<MultipleLabelingCoset>,
}

impl Sides {
    fn new(kids1: &[Child], t1: &Typed, kids2: &[Child], t2: &Typed) -> Result<Self> {
        let group = |kids: &[Child]| {
            let mut by: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for (i, k) in kids.iter().enumerate() {
                by.entry(k.sep.clone()).or_default().push(i);
            }
            by.into_iter().collect::<Vec<_>>()
        };
        let classes1 = group(kids1);
        let classes2 = group(kids2);
        // Labelings of a component: the inverses of the restricted
        // isomorphisms from its representative.
        let labels =
            |t: &Typed, k: usize| -> BTreeSet<Vec<usize>> { t[k].1.maps.keys().map(|key| inverse(key)).collect() };
        type Members = Vec<(BTreeSet<Vec<usize>>, Vec<usize>)>;
        let members = |classes: &[(Vec<usize>, Vec<usize>)], t: &Typed| -> Vec<Members> {
            classes
                .iter()
                .map(|(_, ks)| {
                    let mut by: BTreeMap<BTreeSet<Vec<usize>>, Vec<usize>> = BTreeMap::new();
                    for &k in ks {
                        by.entry(labels(t, k)).or_default().push(t[k].0);
                    }
                    by.into_iter()
                        .map(|(l, mut tys)| {
                            tys.sort_unstable();
                            (l, tys)
                        })
                        .collect()
                })
                .collect()
        };
        let m1 = members(&classes1, t1);
        let m2 = members(&classes2, t2);
        let values: Vec<Vec<usize>> = m1.iter().chain(&m2).flatten().map(|(_, tys)| tys.clone()).collect();
        let value_of: BTreeMap<Vec<usize>, usize> = {
            let (ids, _) = rank(&values);
            values.into_iter().zip(ids).collect()
        };
        let build = |classes: &[(Vec<usize>, Vec<usize>)], ms: &[Members]| -> Result<Vec<MultipleLabelingCoset>> {
            classes
                .iter()
                .zip(ms)
                .map(|((sep, _), m)| {
                    let members = m
                        .iter()
                        .map(|(l, tys)| Ok((labeling_coset_of(sep.len(), l)?, value_of[tys])))
                        .collect::<Result<Vec<_>>>()?;
                    MultipleLabelingCoset::new(sep.len(), members)
                })
                .collect()
        };
        let mlc1 = build(&classes1, &m1)?;
        let mlc2 = build(&classes2, &m2)?;
        let index2 = classes2.iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect();
        Ok(Sides { classes1, classes2, index2, mlc1, mlc2 })
    }
}
