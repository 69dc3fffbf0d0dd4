//! Permutation groups by deterministic Schreier-Sims, cosets and labeling
//! cosets.
//!
//! A permutation is an image array: `p[i]` is the image of `i`. Products are
//! read left to right: `compose(a, b)` applies `a` first, then `b`. A coset
//! `Γρ` holds the elements `compose(γ, ρ)` for `γ ∈ Γ`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{input, Error, Result};
use crate::graph::check_permutation;
use num_bigint::BigUint;

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `a` then `b`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    a.iter().map(|&x| b[x]).collect()
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn is_identity(a: &[usize]) -> bool {
    a.iter().enumerate().all(|(i, &x)| i == x)
}

/// Builds a permutation of `0..n` from cycles.
pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
    let mut p = identity(n);
    for cycle in cycles {
        for (i, &x) in cycle.iter().enumerate() {
            if x >= n {
                return input(format!("point {x} outside 0..{n}"));
            }
            p[x] = cycle[(i + 1) % cycle.len()];
        }
    }
    check_permutation(&p, n)?;
    Ok(p)
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `point` to `b`, for `b` in the orbit.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut l = Level { point, gens: Vec::new(), orbit: Vec::new(), transversal: vec![None; degree] };
        l.rebuild_orbit();
        l
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.point] = Some(identity(degree));
        self.orbit = vec![self.point];
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let c = s[b];
                if self.transversal[c].is_none() {
                    let u = compose(self.transversal[b].as_ref().expect("in orbit"), s);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
        }
    }
}

/// A permutation group with a verified base and strong generating set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), levels: Vec::new() }
    }

    /// The group generated by `gens` on `0..degree`.
    pub fn new(degree: usize, gens: &[Perm]) -> Result<Self> {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Like [`PermGroup::new`], but the base starts with `prefix`.
    pub fn with_base_prefix(degree: usize, gens: &[Perm], prefix: &[usize]) -> Result<Self> {
        for g in gens {
            check_permutation(g, degree)?;
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return input(format!("base point {p} outside 0..{degree}"));
        }
        let mut generators: Vec<Perm> = Vec::new();
        for g in gens {
            if !is_identity(g) && !generators.contains(g) {
                generators.push(g.clone());
            }
        }
        let mut group = PermGroup { degree, generators, levels: Vec::new() };
        group.schreier_sims(prefix);
        Ok(group)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(from_cycles(n, &[&[0, 1]]).expect("valid"));
        }
        if n >= 3 {
            gens.push((1..=n).map(|i| i % n).collect());
        }
        PermGroup::new(n, &gens).expect("valid generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Strong generators of the stabilizer of the first `depth` base points.
    pub fn strong_generators(&self, depth: usize) -> &[Perm] {
        self.levels.get(depth).map_or(&[], |l| &l.gens)
    }

    /// Fundamental orbit of the base point at `depth`.
    pub fn basic_orbit(&self, depth: usize) -> &[usize] {
        &self.levels[depth].orbit
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn schreier_sims(&mut self, prefix: &[usize]) {
        let degree = self.degree;
        let mut base: Vec<usize> = Vec::new();
        for &p in prefix {
            if !base.contains(&p) {
                base.push(p);
            }
        }
        for g in &self.generators {
            if base.iter().all(|&b| g[b] == b) {
                let moved = (0..degree).find(|&i| g[i] != i).expect("non-identity");
                base.push(moved);
            }
        }
        self.levels = base.iter().map(|&b| Level::new(b, degree)).collect();
        for (i, level) in self.levels.iter_mut().enumerate() {
            level.gens = self.generators.iter().filter(|g| base[..i].iter().all(|&b| g[b] == b)).cloned().collect();
            level.rebuild_orbit();
        }
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let lvl = i - 1;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &b in &orbit {
                for s in &gens {
                    let ub = self.levels[lvl].transversal[b].as_ref().expect("in orbit");
                    let c = s[b];
                    let uc = self.levels[lvl].transversal[c].as_ref().expect("in orbit");
                    let schreier = compose(&compose(ub, s), &inverse(uc));
                    let (residue, depth) = self.strip(&schreier, lvl + 1);
                    if is_identity(&residue) {
                        continue;
                    }
                    if depth == self.levels.len() {
                        let moved = (0..degree).find(|&x| residue[x] != x).expect("non-identity");
                        self.levels.push(Level::new(moved, degree));
                    }
                    for l in lvl + 1..=depth {
                        self.levels[l].gens.push(residue.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = depth + 1;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// where sifting stopped.
    fn strip(&self, g: &[usize], from: usize) -> (Perm, usize) {
        let mut h = g.to_vec();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = h[level.point];
            match &level.transversal[b] {
                Some(u) => h = compose(&h, &inverse(u)),
                None => return (h, l),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order as `u64`, or `None` on overflow.
    pub fn order_u64(&self) -> Option<u64> {
        self.levels.iter().try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        if check_permutation(p, self.degree).is_err() {
            return false;
        }
        is_identity(&self.strip(p, 0).0)
    }

    /// Orbits of the group on `0..degree`, each sorted, ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            let orbit = self.orbit(s);
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Orbit of one point, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut out = vec![point];
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subgroup fixing every point of `a`.
    pub fn pointwise_stabilizer(&self, a: &[usize]) -> Result<PermGroup> {
        let mut prefix = a.to_vec();
        prefix.sort_unstable();
        prefix.dedup();
        let rebuilt = PermGroup::with_base_prefix(self.degree, &self.generators, &prefix)?;
        let gens = rebuilt.strong_generators(prefix.len()).to_vec();
        PermGroup::new(self.degree, &gens)
    }

    /// All elements in increasing lexicographic order.
    pub fn elements(&self, cap: usize) -> Result<Vec<Perm>> {
        match self.order_u64() {
            Some(o) if o <= cap as u64 => {}
            _ => return Err(Error::Capacity(format!("group order {} exceeds {cap}", self.order()))),
        }
        let mut out = Vec::new();
        self.collect_elements(self.levels.len(), identity(self.degree), &mut out);
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Every element is `u_{k-1} ... u_1 u_0` with `u_i` from level `i`.
    fn collect_elements(&self, depth: usize, acc: Perm, out: &mut Vec<Perm>) {
        if depth == 0 {
            out.push(acc);
            return;
        }
        let level = &self.levels[depth - 1];
        for &b in &level.orbit {
            let u = level.transversal[b].as_ref().expect("in orbit");
            self.collect_elements(depth - 1, compose(&acc, u), out);
        }
    }

    /// True iff `other` is a subgroup of `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Perm]) -> Result<PermGroup> {
        let mut current: Vec<Perm> = gens.iter().filter(|g| !is_identity(g)).cloned().collect();
        let mut group = PermGroup::new(self.degree, &current)?;
        loop {
            let mut added = false;
            for h in current.clone() {
                for g in &self.generators {
                    let c = compose(&compose(&inverse(g), &h), g);
                    if !group.contains(&c) {
                        current.push(c);
                        group = PermGroup::new(self.degree, &current)?;
                        added = true;
                    }
                }
            }
            if !added {
                return Ok(group);
            }
        }
    }

    /// Commutator subgroup.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut comms = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = compose(&compose(&inverse(a), &inverse(b)), &compose(a, b));
                if !is_identity(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }
}

/// Orders of the composition factors of `g`, found by brute force. Abelian
/// layers of the derived series contribute their prime factors; a perfect
/// layer is split by a maximal normal subgroup built greedily from normal
/// closures of conjugacy classes.
pub fn composition_factors_small(g: &PermGroup, max_order: usize) -> Result<Vec<u64>> {
    let order = match g.order_u64() {
        Some(o) if o <= max_order as u64 => o,
        _ => return Err(Error::Capacity(format!("group order {} exceeds {max_order}", g.order()))),
    };
    let mut factors = Vec::new();
    let mut current = g.clone();
    let mut current_order = order;
    while current_order > 1 {
        let derived = current.derived_subgroup()?;
        let d_order = derived.order_u64().expect("subgroup of a small group");
        if d_order < current_order {
            factors.extend(prime_factors(current_order / d_order));
            current = derived;
            current_order = d_order;
            continue;
        }
        let n = maximal_normal_subgroup(&current, max_order)?;
        let n_order = n.order_u64().expect("subgroup of a small group");
        factors.push(current_order / n_order);
        current = n;
        current_order = n_order;
    }
    factors.sort_unstable();
    Ok(factors)
}

fn maximal_normal_subgroup(g: &PermGroup, cap: usize) -> Result<PermGroup> {
    let elements = g.elements(cap)?;
    let index: std::collections::BTreeMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut reps = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        class_of[start] = reps.len();
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for s in g.generators() {
                let c = compose(&compose(&inverse(s), &elements[i]), s);
                let j = index[&c];
                if class_of[j] == usize::MAX {
                    class_of[j] = reps.len();
                    queue.push(j);
                }
            }
        }
        reps.push(elements[start].clone());
    }
    let full = g.order_u64().expect("small");
    let mut n = PermGroup::trivial(g.degree());
    for rep in reps {
        if n.contains(&rep) {
            continue;
        }
        let mut gens = n.generators().to_vec();
        gens.push(rep);
        let joined = g.normal_closure(&gens)?;
        if joined.order_u64().expect("small") < full {
            n = joined;
        }
    }
    Ok(n)
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        while x.is_multiple_of(p) {
            out.push(p);
            x /= p;
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// A right coset `Γρ`, or the empty set.
#[derive(Debug, Clone)]
pub enum Coset {
    Empty,
    Of { group: PermGroup, rep: Perm },
}

impl Coset {
    pub fn new(group: PermGroup, rep: Perm) -> Result<Self> {
        check_permutation(&rep, group.degree())?;
        Ok(Coset::Of { group, rep })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Coset::Empty)
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        match self {
            Coset::Empty => false,
            Coset::Of { group, rep } => p.len() == rep.len() && group.contains(&compose(p, &inverse(rep))),
        }
    }

    pub fn size(&self) -> BigUint {
        match self {
            Coset::Empty => BigUint::from(0u32),
            Coset::Of { group, .. } => group.order(),
        }
    }
}

/// A coset restricted to a subset: element `x` maps `domain[i]` to
/// `codomain[x[i]]`.
#[derive(Debug, Clone)]
pub struct RestrictedCoset {
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    pub coset: Coset,
}

/// `Γρ[A]`. `a` must be invariant under `Γ`.
pub fn coset_restrict(c: &Coset, a: &[usize]) -> Result<RestrictedCoset> {
    let mut domain = a.to_vec();
    domain.sort_unstable();
    domain.dedup();
    let Coset::Of { group, rep } = c else {
        return Ok(RestrictedCoset { domain, codomain: Vec::new(), coset: Coset::Empty });
    };
    if let Some(&x) = domain.iter().find(|&&x| x >= group.degree()) {
        return input(format!("point {x} outside the domain"));
    }
    let local = |set: &[usize], x: usize| set.binary_search(&x).ok();
    let mut gens = Vec::new();
    for g in group.generators() {
        let mut img = Vec::with_capacity(domain.len());
        for &x in &domain {
            match local(&domain, g[x]) {
                Some(i) => img.push(i),
                None => return input("subset is not invariant under the group"),
            }
        }
        gens.push(img);
    }
    let mut codomain: Vec<usize> = domain.iter().map(|&x| rep[x]).collect();
    codomain.sort_unstable();
    let local_rep = domain.iter().map(|&x| local(&codomain, rep[x]).expect("present")).collect();
    let restricted = PermGroup::new(domain.len(), &gens)?;
    Ok(RestrictedCoset { domain, codomain, coset: Coset::new(restricted, local_rep)? })
}

/// Every element of a coset, sorted and deduplicated.
pub fn enumerate_small(c: &Coset, cap: usize) -> Result<Vec<Perm>> {
    match c {
        Coset::Empty => Ok(Vec::new()),
        Coset::Of { group, rep } => {
            let mut out: Vec<Perm> = group.elements(cap)?.iter().map(|g| compose(g, rep)).collect();
            out.sort();
            Ok(out)
        }
    }
}

/// A labeling coset `Δρ` of a finite set: `domain` lists the set, `group`
/// acts on positions in `domain`, and `rho[i]` is the label of `domain[i]`.
/// Element `δρ` gives `domain[i]` the label `rho[δ[i]]`.
#[derive(Debug, Clone)]
pub struct LabelingCoset {
    pub domain: Vec<usize>,
    pub group: PermGroup,
    pub rho: Perm,
}

impl LabelingCoset {
    pub fn new(domain: Vec<usize>, group: PermGroup, rho: Perm) -> Result<Self> {
        if group.degree() != domain.len() {
            return input("group degree differs from the domain size");
        }
        check_permutation(&rho, domain.len())?;
        Ok(LabelingCoset { domain, group, rho })
    }

    /// `Θ = ρ⁻¹Δρ`, acting on labels.
    pub fn theta(&self) -> PermGroup {
        let inv = inverse(&self.rho);
        let gens: Vec<Perm> = self.group.generators().iter().map(|d| compose(&compose(&inv, d), &self.rho)).collect();
        PermGroup::new(self.domain.len(), &gens).expect("conjugate of a valid group")
    }

    /// All labelings, each as the label of `domain[i]` at position `i`.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Perm>> {
        let mut out: Vec<Perm> = self.group.elements(cap)?.iter().map(|d| compose(d, &self.rho)).collect();
        out.sort();
        Ok(out)
    }
}

/// Closure of a generator set by breadth-first multiplication. Test oracle
/// for small groups only.
pub fn brute_force_closure(degree: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let mut seen = BTreeSet::from([identity(degree)]);
    let mut queue = VecDeque::from([identity(degree)]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}
