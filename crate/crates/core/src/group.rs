//! Finite groups given by dense multiplication tables, and the subgroup
//! machinery the coset poset is built from.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Default bound on group order accepted by constructors.
pub const DEFAULT_ORDER_LIMIT: usize = 2000;

/// Tables up to this order get an exhaustive associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

/// A finite group over element ids `0..order`, identity at id 0.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and relabels so that the identity is element 0.
    pub fn from_multiplication_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("empty multiplication table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Invalid(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::Invalid(format!("entry {bad} in row {i} is out of range")));
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            table.extend(row.iter().map(|&v| v as u32));
        }
        Self::from_flat_table(n, table, None)
    }

    fn from_flat_table(n: usize, table: Vec<u32>, names: Option<Vec<String>>) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;

        // Latin square.
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let v = at(a, b);
                if seen[v] == a {
                    let first = (0..b).find(|&c| at(a, c) == v).unwrap_or(0);
                    return Err(Error::NotAGroup {
                        reason: format!("row {a} repeats value {v}"),
                        witness: (a, first, b),
                    });
                }
                seen[v] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let v = at(a, b);
                if seen[v] == b {
                    let first = (0..a).find(|&c| at(c, b) == v).unwrap_or(0);
                    return Err(Error::NotAGroup {
                        reason: format!("column {b} repeats value {v}"),
                        witness: (first, a, b),
                    });
                }
                seen[v] = b;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup { reason: "no two-sided identity".into(), witness: (0, 0, 0) })?;

        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if at(at(a, b), c) != at(a, at(b, c)) {
                return Err(Error::NotAGroup {
                    reason: "multiplication is not associative".into(),
                    witness: (a, b, c),
                });
            }
            Ok(())
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // Sampled: every a against a deterministic pseudo-random set of (b, c).
            let mut state = 0x9e37_79b9_7f4a_7c15u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for a in 0..n {
                for _ in 0..64 {
                    let (b, c) = (next(), next());
                    check(a, b, c)?;
                }
            }
        }

        // Swap labels 0 and identity.
        let (table, names) = if identity == 0 {
            (table, names)
        } else {
            let relabel = |x: usize| {
                if x == 0 {
                    identity
                } else if x == identity {
                    0
                } else {
                    x
                }
            };
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[relabel(a) * n + relabel(b)] = relabel(at(a, b)) as u32;
                }
            }
            let names = names.map(|mut v| {
                v.swap(0, identity);
                v
            });
            (t, names)
        };

        let mut inv = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| table[a * n + b] == 0).expect("latin square has an inverse");
            inv[a] = b as u32;
        }
        Ok(FiniteGroup { order: n, table, inv, names })
    }

    /// Closure of a list of permutations of `0..degree`, composed left to right:
    /// `x^(gh) = (x^g)^h`. Element ids follow breadth-first discovery from the
    /// identity, applying generators in the given order.
    pub fn from_permutation_generators(gens: &[Vec<usize>], limit: usize) -> Result<Self> {
        let degree = gens.iter().map(Vec::len).max().unwrap_or(0);
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::Invalid(format!("generator {i} acts on {} points, expected {degree}", g.len())));
            }
            let mut hit = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut hit[x], true) {
                    return Err(Error::Invalid(format!("generator {i} is not a bijection")));
                }
            }
        }

        let identity: Vec<u32> = (0..degree as u32).collect();
        let gens: Vec<Vec<u32>> = gens.iter().map(|g| g.iter().map(|&x| x as u32).collect()).collect();
        let compose = |p: &[u32], q: &[u32]| -> Vec<u32> { p.iter().map(|&x| q[x as usize]).collect() };

        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(identity, 0)]);
        // parent[b] = (a, s) with b = a * gens[s]
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (s, g) in gens.iter().enumerate() {
                let p = compose(&elements[i], g);
                let id = match index.get(&p) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id + 1 > limit {
                            return Err(Error::OrderLimitExceeded { order: id + 1, limit });
                        }
                        index.insert(p.clone(), id);
                        elements.push(p);
                        parent.push((i, s));
                        id
                    }
                };
                row.push(id as u32);
            }
            right.push(row);
            i += 1;
        }

        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (pb, s) = parent[b];
                table[a * n + b] = right[table[a * n + pb] as usize][s];
            }
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Self::from_flat_table(n, table, Some(names))
    }

    /// Builds a group from a closure `mul` on `0..n` without going through row vectors.
    pub(crate) fn from_fn(n: usize, names: Option<Vec<String>>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let v = mul(a, b);
                if v >= n {
                    return Err(Error::Invalid(format!("product {a}*{b} = {v} out of range")));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat_table(n, table, names)
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, table: vec![0], inv: vec![0], names: None }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn element_name(&self, id: usize) -> String {
        match &self.names {
            Some(n) => n[id].clone(),
            None => format!("g{id}"),
        }
    }

    pub(crate) fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.order);
        self.names = Some(names);
        self
    }

    /// The table as rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Sorted multiset of element orders, a cheap isomorphism fingerprint.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet { members: ElementSet::full(self.order) }
    }

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        SubgroupSet { members: ElementSet::from_ids(self.order, [0]) }
    }

    pub fn center(&self) -> SubgroupSet {
        let members = (0..self.order).filter(|&z| (0..self.order).all(|g| self.commute(z, g)));
        SubgroupSet { members: ElementSet::from_ids(self.order, members) }
    }

    pub fn centralizer(&self, set: impl IntoIterator<Item = usize>) -> SubgroupSet {
        let set: Vec<usize> = set.into_iter().collect();
        let members = (0..self.order).filter(|&g| set.iter().all(|&s| self.commute(g, s)));
        SubgroupSet { members: ElementSet::from_ids(self.order, members) }
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_closure(&self, seed: impl IntoIterator<Item = usize>) -> SubgroupSet {
        self.extend_subgroup(&self.trivial_subgroup(), seed)
    }

    /// Smallest subgroup containing `base` and `extra`.
    pub fn extend_subgroup(&self, base: &SubgroupSet, extra: impl IntoIterator<Item = usize>) -> SubgroupSet {
        let mut members = base.members.clone();
        let new_gens: Vec<usize> = extra.into_iter().filter(|&s| !base.contains(s)).collect();
        if new_gens.is_empty() {
            return base.clone();
        }
        // In a finite group the monoid generated is the subgroup generated.
        let mut multipliers: Vec<usize> = base.members.iter().filter(|&h| h != 0).collect();
        multipliers.extend(&new_gens);
        let mut elems: Vec<usize> = members.to_vec();
        let mut k = 0;
        while k < elems.len() {
            let x = elems[k];
            for &g in &multipliers {
                let y = self.mul(x, g);
                if members.insert(y) {
                    elems.push(y);
                }
            }
            k += 1;
        }
        SubgroupSet { members }
    }

    /// Left cosets `gH`, sorted by minimal representative; `H` itself comes first.
    pub fn left_cosets(&self, h: &SubgroupSet) -> Vec<Coset> {
        let mut covered = ElementSet::new(self.order);
        let hs: Vec<usize> = h.members.iter().collect();
        let mut out = Vec::with_capacity(self.order / hs.len().max(1));
        for g in 0..self.order {
            if covered.contains(g) {
                continue;
            }
            let members = ElementSet::from_ids(self.order, hs.iter().map(|&b| self.mul(g, b)));
            covered.union_with(&members);
            out.push(Coset { subgroup_order: hs.len(), rep: g, members });
        }
        out
    }

    /// Componentwise product; the pair `(a, b)` gets id `a * |G2| + b`.
    pub fn direct_product(&self, other: &FiniteGroup, limit: usize) -> Result<Self> {
        let (n1, n2) = (self.order, other.order);
        let n = n1.saturating_mul(n2);
        if n > limit {
            return Err(Error::OrderLimitExceeded { order: n, limit });
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            let (a1, b1) = (x / n2, x % n2);
            for y in 0..n {
                let (a2, b2) = (y / n2, y % n2);
                table.push((self.mul(a1, a2) * n2 + other.mul(b1, b2)) as u32);
            }
        }
        let inv = (0..n).map(|x| (self.inv(x / n2) * n2 + other.inv(x % n2)) as u32).collect();
        let names = match (&self.names, &other.names) {
            (None, None) => None,
            _ => Some(
                (0..n).map(|x| format!("({}, {})", self.element_name(x / n2), other.element_name(x % n2))).collect(),
            ),
        };
        Ok(FiniteGroup { order: n, table, inv, names })
    }

    /// Projections of a product id back to its factors.
    pub fn split_product_id(id: usize, second_order: usize) -> (usize, usize) {
        (id / second_order, id % second_order)
    }
}

/// Disjoint-cycle string for a permutation, `()` for the identity.
pub fn cycle_notation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Parses disjoint cycles such as `(0 1 2)(3 4)` into images on `0..degree`.
/// `degree` is raised to cover every mentioned point.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<usize>> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(open) = rest.strip_prefix('(') else {
            return Err(Error::Syntax { position: text.len() - rest.len(), message: "expected `(`".into() });
        };
        let close =
            open.find(')').ok_or_else(|| Error::Syntax { position: text.len(), message: "unclosed cycle".into() })?;
        let body = &open[..close];
        let pts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>().map_err(|_| Error::Syntax {
                    position: text.len() - rest.len(),
                    message: format!("bad point `{s}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(pts);
        rest = open[close + 1..].trim_start();
    }
    let degree = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0).max(degree);
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut moved = vec![false; degree];
    for c in &cycles {
        for (i, &x) in c.iter().enumerate() {
            if std::mem::replace(&mut moved[x], true) {
                return Err(Error::Invalid(format!("point {x} appears twice in `{text}`")));
            }
            perm[x] = c[(i + 1) % c.len()];
        }
    }
    Ok(perm)
}

/// A subgroup, held as a membership set over the parent's element ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    members: ElementSet,
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubgroupSet{:?}", self.members)
    }
}

impl SubgroupSet {
    /// Wraps a member set, checking closure against `group`.
    pub fn new(group: &FiniteGroup, members: ElementSet) -> Result<Self> {
        if members.universe() != group.order() || !members.contains(0) {
            return Err(Error::Invalid("subgroup must contain the identity".into()));
        }
        let elems = members.to_vec();
        for &a in &elems {
            if !members.contains(group.inv(a)) {
                return Err(Error::Invalid(format!("not closed under inverse at {a}")));
            }
            for &b in &elems {
                if !members.contains(group.mul(a, b)) {
                    return Err(Error::Invalid(format!("not closed under product {a}*{b}")));
                }
            }
        }
        Ok(SubgroupSet { members })
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &SubgroupSet) -> SubgroupSet {
        SubgroupSet { members: self.members.intersection(&other.members) }
    }

    pub fn is_abelian(&self, group: &FiniteGroup) -> bool {
        let elems = self.members.to_vec();
        elems.iter().enumerate().all(|(i, &a)| elems[i + 1..].iter().all(|&b| group.commute(a, b)))
    }

    pub fn index_in(&self, group: &FiniteGroup) -> usize {
        group.order() / self.order()
    }

    /// Sort key: larger subgroups first, then lexicographic member list.
    pub(crate) fn sort_key(&self) -> (std::cmp::Reverse<usize>, Vec<usize>) {
        (std::cmp::Reverse(self.order()), self.members.to_vec())
    }
}

/// A left coset `rep * H`, `rep` being the smallest member id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    pub subgroup_order: usize,
    pub rep: usize,
    pub members: ElementSet,
}
