//! Isomorphism of multiple-labeling-cosets by enumeration of bijections.
//!
//! Domains are separator sized, so all `|V|!` bijections are tried, with
//! pruning on the labels seen so far.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{input, Error, Result};
use crate::perm::{compose, inverse, Coset, LabelingCoset, Perm, PermGroup};

/// Largest domain accepted by the enumeration.
pub const MLC_MAX_DOMAIN: usize = 9;

/// A set of labeling cosets of `0..n`, each with a value `p`.
#[derive(Debug, Clone)]
pub struct MultipleLabelingCoset {
    pub n: usize,
    pub members: Vec<(LabelingCoset, usize)>,
}

type Labelings = BTreeSet<Vec<usize>>;

impl MultipleLabelingCoset {
    /// Checks domains and that members are pairwise distinct as cosets.
    pub fn new(n: usize, members: Vec<(LabelingCoset, usize)>) -> Result<Self> {
        let x = MultipleLabelingCoset { n, members };
        let sets = x.labeling_sets()?;
        let distinct: BTreeSet<&Labelings> = sets.iter().map(|(s, _)| s).collect();
        if distinct.len() != sets.len() {
            return input("labeling cosets must be pairwise distinct");
        }
        Ok(x)
    }

    fn labeling_sets(&self) -> Result<Vec<(Labelings, usize)>> {
        let domain: Vec<usize> = (0..self.n).collect();
        self.members
            .iter()
            .map(|(c, p)| {
                if c.domain != domain {
                    return input("every labeling coset must label the whole ground set");
                }
                Ok((c.enumerate(usize::MAX)?.into_iter().collect(), *p))
            })
            .collect()
    }
}

/// Labels moved along `phi`: vertex `phi[v]` gets the label of `v`.
fn transport(set: &Labelings, phi: &[usize]) -> Labelings {
    set.iter()
        .map(|lab| {
            let mut out = vec![0; lab.len()];
            for (v, &l) in lab.iter().enumerate() {
                out[phi[v]] = l;
            }
            out
        })
        .collect()
}

/// `Iso(X1, X2)`: bijections `phi` with `|L1| = |L2|` such that every member
/// of `L1`, moved along `phi`, is a member of `L2` with the same value.
pub fn multiple_labeling_coset_iso(x1: &MultipleLabelingCoset, x2: &MultipleLabelingCoset) -> Result<Coset> {
    let n = x1.n;
    if x2.n != n {
        return input("ground sets differ in size");
    }
    if n > MLC_MAX_DOMAIN {
        return Err(Error::Capacity(format!("domain of size {n} exceeds {MLC_MAX_DOMAIN}")));
    }
    let l1 = x1.labeling_sets()?;
    let l2 = x2.labeling_sets()?;
    if l1.len() != l2.len() {
        return Ok(Coset::Empty);
    }
    let target: BTreeMap<Labelings, usize> = l2.into_iter().collect();
    let mut found: Vec<Perm> = Vec::new();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    enumerate(0, &mut phi, &mut used, &mut |phi: &[usize]| {
        if l1.iter().all(|(s, p)| target.get(&transport(s, phi)) == Some(p)) {
            found.push(phi.to_vec());
        }
    });
    let Some(rep) = found.first().cloned() else {
        return Ok(Coset::Empty);
    };
    let inv = inverse(&rep);
    let gens: Vec<Perm> = found.iter().map(|f| compose(f, &inv)).collect();
    let group = PermGroup::new(n, &gens)?;
    debug_assert_eq!(group.order_u64(), Some(found.len() as u64));
    Coset::new(group, rep)
}

fn enumerate(i: usize, phi: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut dyn FnMut(&[usize])) {
    if i == phi.len() {
        visit(phi);
        return;
    }
    for y in 0..phi.len() {
        if !used[y] {
            used[y] = true;
            phi[i] = y;
            enumerate(i + 1, phi, used, visit);
            used[y] = false;
        }
    }
}

/// The labeling coset whose elements are exactly `labelings` (which must
/// form a coset of some group).
pub fn labeling_coset_of(n: usize, labelings: &BTreeSet<Vec<usize>>) -> Result<LabelingCoset> {
    let Some(rho) = labelings.iter().next().cloned() else {
        return input("a labeling coset is never empty");
    };
    let inv = inverse(&rho);
    let deltas: Vec<Perm> = labelings.iter().map(|l| compose(l, &inv)).collect();
    let group = PermGroup::new(n, &deltas)?;
    if group.order_u64() != Some(labelings.len() as u64) {
        return input("labelings do not form a coset");
    }
    LabelingCoset::new((0..n).collect(), group, rho)
}
