//! Maximal abelian subgroups, their intersections, and the poset of cosets
//! of those intersections ordered by inclusion.

use std::collections::HashSet;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupSet};
use crate::poset::Poset;

/// Inclusion-maximal abelian subgroups, sorted by (order desc, member list).
///
/// A subgroup `H` is maximal abelian exactly when it equals its own
/// centralizer. The search starts at the center and adjoins one element of
/// `C(H) \ H` at a time, branching over the cosets of `H` in `C(H)`, so every
/// abelian subgroup above the center is reachable and each is expanded once.
pub fn maximal_abelian_subgroups(group: &FiniteGroup) -> Vec<SubgroupSet> {
    if group.is_abelian() {
        return vec![group.whole()];
    }
    let center = group.center();
    let mut visited: HashSet<ElementSet> = HashSet::from([center.members().clone()]);
    let mut stack = vec![center];
    let mut maximals = Vec::new();
    while let Some(h) = stack.pop() {
        let c = group.centralizer(h.members().iter());
        if c.order() == h.order() {
            maximals.push(h);
            continue;
        }
        let mut covered = h.members().clone();
        for x in c.members().iter() {
            if covered.contains(x) {
                continue;
            }
            for y in h.members().iter() {
                covered.insert(group.mul(x, y));
            }
            let k = group.extend_subgroup(&h, [x]);
            if visited.insert(k.members().clone()) {
                stack.push(k);
            }
        }
    }
    sort_subgroups(&mut maximals);
    maximals
}

fn sort_subgroups(list: &mut [SubgroupSet]) {
    list.sort_by_cached_key(SubgroupSet::sort_key);
}

/// Intersections of all unordered pairs, deduplicated and sorted.
pub fn pairwise_intersections(maximals: &[SubgroupSet]) -> Vec<SubgroupSet> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, a) in maximals.iter().enumerate() {
        for b in &maximals[i + 1..] {
            let m = a.intersection(b);
            if seen.insert(m.members().clone()) {
                out.push(m);
            }
        }
    }
    sort_subgroups(&mut out);
    out
}

/// All intersections of nonempty subfamilies, reached as the fixed point of
/// pairwise meets.
pub fn intersection_closure(maximals: &[SubgroupSet]) -> Vec<SubgroupSet> {
    let mut seen: HashSet<ElementSet> = maximals.iter().map(|m| m.members().clone()).collect();
    let mut all: Vec<SubgroupSet> = maximals.to_vec();
    // all[start..] arrived in the previous round; only pairs touching them can be new.
    let mut start = 0;
    loop {
        let end = all.len();
        let mut fresh = Vec::new();
        for i in 0..end {
            for j in (i + 1).max(start)..end {
                let m = all[i].intersection(&all[j]);
                if seen.insert(m.members().clone()) {
                    fresh.push(m);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        start = end;
        all.extend(fresh);
    }
    sort_subgroups(&mut all);
    all
}

/// True iff every pairwise intersection of maximal abelian subgroups is the center.
pub fn is_height1(group: &FiniteGroup) -> bool {
    let center = group.center();
    pairwise_intersections(&maximal_abelian_subgroups(group)).iter().all(|s| *s == center)
}

/// The maximal abelian subgroups of a group with their intersection closure.
#[derive(Clone, Debug)]
pub struct MaxAbelianFamily {
    pub center: SubgroupSet,
    pub maximals: Vec<SubgroupSet>,
    pub intersection_closure: Vec<SubgroupSet>,
}

impl MaxAbelianFamily {
    pub fn new(group: &FiniteGroup) -> Self {
        let maximals = maximal_abelian_subgroups(group);
        let intersection_closure = intersection_closure(&maximals);
        MaxAbelianFamily { center: group.center(), maximals, intersection_closure }
    }

    /// Meet of the whole family; equals the center for every finite group.
    pub fn total_intersection(&self) -> SubgroupSet {
        let mut it = self.maximals.iter();
        let first = it.next().expect("every group has a maximal abelian subgroup").clone();
        it.fold(first, |acc, m| acc.intersection(m))
    }
}

/// One node `rep * B` of the coset poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetNode {
    /// Index into [`CosetPoset::subgroups`].
    pub subgroup: usize,
    pub rep: usize,
    pub members: ElementSet,
}

/// Cosets of the intersections of maximal abelian subgroups, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct CosetPoset {
    pub group_order: usize,
    pub center_order: usize,
    pub maximal_count: usize,
    pub subgroups: Vec<SubgroupSet>,
    pub nodes: Vec<CosetNode>,
    pub poset: Poset,
}

impl CosetPoset {
    pub fn height(&self) -> usize {
        self.poset.height()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        self.poset.hasse_edges()
    }

    pub fn is_connected(&self) -> bool {
        self.poset.components() == 1
    }
}

pub fn build_coset_poset(group: &FiniteGroup, node_limit: usize) -> Result<CosetPoset> {
    let family = MaxAbelianFamily::new(group);
    coset_poset_of(group, &family.intersection_closure, family.maximals.len(), node_limit)
}

/// Coset poset over an arbitrary family of subgroups closed under the
/// inclusions that matter to the caller.
pub fn coset_poset_of(
    group: &FiniteGroup,
    subgroups: &[SubgroupSet],
    maximal_count: usize,
    node_limit: usize,
) -> Result<CosetPoset> {
    let n = group.order();
    let mut subgroups = subgroups.to_vec();
    sort_subgroups(&mut subgroups);
    let total: usize = subgroups.iter().map(|s| s.index_in(group)).sum();
    if total > node_limit {
        return Err(Error::PosetSizeExceeded { nodes: total, limit: node_limit });
    }

    let mut nodes = Vec::with_capacity(total);
    for (s, h) in subgroups.iter().enumerate() {
        for c in group.left_cosets(h) {
            nodes.push(CosetNode { subgroup: s, rep: c.rep, members: c.members });
        }
    }
    nodes.sort_by(|a, b| {
        let (sa, sb) = (subgroups[a.subgroup].order(), subgroups[b.subgroup].order());
        sb.cmp(&sa).then(a.rep.cmp(&b.rep)).then_with(|| a.members.to_vec().cmp(&b.members.to_vec()))
    });

    // coset_of[s][g] = node holding g among the cosets of subgroup s.
    let mut coset_of = vec![vec![u32::MAX; n]; subgroups.len()];
    for (i, node) in nodes.iter().enumerate() {
        for g in node.members.iter() {
            coset_of[node.subgroup][g] = i as u32;
        }
    }
    let larger: Vec<Vec<usize>> = subgroups
        .iter()
        .map(|b| {
            (0..subgroups.len())
                .filter(|&t| subgroups[t].order() > b.order() && b.is_subgroup_of(&subgroups[t]))
                .collect()
        })
        .collect();
    let above = nodes
        .iter()
        .map(|x| ElementSet::from_ids(total, larger[x.subgroup].iter().map(|&t| coset_of[t][x.rep] as usize)))
        .collect();

    Ok(CosetPoset {
        group_order: n,
        center_order: group.center().order(),
        maximal_count,
        subgroups,
        nodes,
        poset: Poset::from_strict_order(above),
    })
}

/// First Betti number `E - V + 1` of a height-at-most-one coset poset.
pub fn circles_from_euler(poset: &CosetPoset) -> Result<i64> {
    if poset.height() >= 2 {
        return Err(Error::HeightTooLarge(poset.height()));
    }
    Ok(poset.poset.relation_count() as i64 - poset.node_count() as i64 + 1)
}

/// Circle count from subgroup indices alone, valid when the group has
/// height one: each of the `[G:Z]` center cosets lies in exactly one coset
/// of every maximal abelian subgroup.
pub fn circles_from_indices(group: &FiniteGroup) -> Result<i64> {
    let family = MaxAbelianFamily::new(group);
    if family.maximals.len() > 1 && pairwise_intersections(&family.maximals).iter().any(|s| *s != family.center) {
        return Err(Error::HeightTooLarge(2));
    }
    let z = family.center.index_in(group) as i64;
    let edges = if family.maximals.len() > 1 { z * family.maximals.len() as i64 } else { 0 };
    let vertices = if family.maximals.len() > 1 {
        family.maximals.iter().map(|a| a.index_in(group) as i64).sum::<i64>() + z
    } else {
        1
    };
    Ok(edges - vertices + 1)
}

/// Brute-force cross-checks: every subgroup, every abelian subgroup.
pub mod oracle {
    use super::*;

    /// All subgroups, found by closing under one extra element at a time.
    pub fn all_subgroups(group: &FiniteGroup) -> Vec<SubgroupSet> {
        let trivial = group.trivial_subgroup();
        let mut seen: HashSet<ElementSet> = HashSet::from([trivial.members().clone()]);
        let mut out = vec![trivial];
        let mut i = 0;
        while i < out.len() {
            let h = out[i].clone();
            for g in 0..group.order() {
                if h.contains(g) {
                    continue;
                }
                let k = group.extend_subgroup(&h, [g]);
                if seen.insert(k.members().clone()) {
                    out.push(k);
                }
            }
            i += 1;
        }
        sort_subgroups(&mut out);
        out
    }

    /// Maximal members of the abelian subgroups from [`all_subgroups`].
    pub fn maximal_abelian_subgroups(group: &FiniteGroup) -> Vec<SubgroupSet> {
        let abelian: Vec<SubgroupSet> = all_subgroups(group).into_iter().filter(|s| s.is_abelian(group)).collect();
        let mut out: Vec<SubgroupSet> =
            abelian.iter().filter(|s| abelian.iter().filter(|t| s.is_subgroup_of(t)).count() == 1).cloned().collect();
        sort_subgroups(&mut out);
        out
    }

    /// Coset poset over every abelian subgroup; homotopy equivalent to the
    /// maximal-abelian version but much larger.
    pub fn all_abelian_coset_poset(group: &FiniteGroup, node_limit: usize) -> Result<CosetPoset> {
        let abelian: Vec<SubgroupSet> = all_subgroups(group).into_iter().filter(|s| s.is_abelian(group)).collect();
        let maximal = maximal_abelian_subgroups(group).len();
        coset_poset_of(group, &abelian, maximal, node_limit)
    }
}
