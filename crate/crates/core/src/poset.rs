//! Finite posets stored as strict up-sets plus their Hasse diagram.

use std::collections::{BTreeMap, HashSet};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

pub const DEFAULT_POSET_NODE_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    above: Vec<ElementSet>,
    hasse: Vec<(usize, usize)>,
    height: usize,
}

impl Poset {
    /// Builds a poset from its strict order; `above[x]` holds every `y > x`.
    /// The relation must already be transitive and irreflexive.
    pub fn from_strict_order(above: Vec<ElementSet>) -> Self {
        let n = above.len();
        let mut hasse = Vec::new();
        for (x, up) in above.iter().enumerate() {
            let mut reach = ElementSet::new(n);
            for y in up.iter() {
                reach.union_with(&above[y]);
            }
            for y in up.difference(&reach).iter() {
                hasse.push((x, y));
            }
        }
        hasse.sort_unstable();
        let height = longest_chain(&above, &hasse);
        Poset { above, hasse, height }
    }

    /// Poset on `0..n` with `less(x, y)` meaning `x < y`.
    pub fn from_fn(n: usize, less: impl Fn(usize, usize) -> bool) -> Self {
        let above = (0..n).map(|x| ElementSet::from_ids(n, (0..n).filter(|&y| x != y && less(x, y)))).collect();
        Self::from_strict_order(above)
    }

    /// Poset on `0..n` generated by `edges` `(lower, upper)`, e.g. a Hasse
    /// diagram read from a file.
    pub fn from_relations(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("edge ({a}, {b}) refers to a node outside 0..{n}")));
            }
            up[a].push(b);
            indegree[b] += 1;
        }
        // Kahn order from the bottom; a leftover node means a cycle.
        let mut order: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut i = 0;
        while i < order.len() {
            for &y in &up[order[i]] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    order.push(y);
                }
            }
            i += 1;
        }
        if order.len() != n {
            return Err(Error::Invalid("relation has a cycle".into()));
        }
        let mut above = vec![ElementSet::new(n); n];
        for &x in order.iter().rev() {
            let mut set = ElementSet::new(n);
            for &y in &up[x] {
                set.insert(y);
                set.union_with(&above[y]);
            }
            above[x] = set;
        }
        Ok(Self::from_strict_order(above))
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Covering pairs `(lower, upper)` in lexicographic order.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn above(&self, x: usize) -> &ElementSet {
        &self.above[x]
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    /// Number of strict comparabilities `x < y`.
    pub fn relation_count(&self) -> usize {
        self.above.iter().map(ElementSet::count).sum()
    }

    pub fn below_sets(&self) -> Vec<ElementSet> {
        let n = self.len();
        let mut below = vec![ElementSet::new(n); n];
        for (x, up) in self.above.iter().enumerate() {
            for y in up.iter() {
                below[y].insert(x);
            }
        }
        below
    }

    /// Connected components of the comparability graph.
    pub fn components(&self) -> usize {
        let n = self.len();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            uf[x] = r;
            r
        }
        for &(a, b) in &self.hasse {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            uf[ra.max(rb)] = ra.min(rb);
        }
        (0..n).filter(|&x| find(&mut uf, x) == x).count()
    }
}

fn longest_chain(above: &[ElementSet], hasse: &[(usize, usize)]) -> usize {
    // Process nodes by decreasing up-set size: every y > x has a strictly
    // smaller up-set, so it is finalized before x.
    let n = above.len();
    let mut up_covers = vec![Vec::new(); n];
    for &(a, b) in hasse {
        up_covers[a].push(b);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| above[x].count());
    let mut depth = vec![0usize; n];
    for &x in &order {
        depth[x] = up_covers[x].iter().map(|&y| depth[y] + 1).max().unwrap_or(0);
    }
    depth.into_iter().max().unwrap_or(0)
}

/// Cartesian product with the componentwise order; `(a, b)` is node `a * |Q| + b`.
pub fn product_poset(p: &Poset, q: &Poset, limit: usize) -> Result<Poset> {
    let (n1, n2) = (p.len(), q.len());
    let n = n1.saturating_mul(n2);
    if n > limit {
        return Err(Error::PosetSizeExceeded { nodes: n, limit });
    }
    let mut above = Vec::with_capacity(n);
    for a in 0..n1 {
        for b in 0..n2 {
            let mut up = ElementSet::new(n);
            for a2 in std::iter::once(a).chain(p.above(a).iter()) {
                for b2 in std::iter::once(b).chain(q.above(b).iter()) {
                    if a2 != a || b2 != b {
                        up.insert(a2 * n2 + b2);
                    }
                }
            }
            above.push(up);
        }
    }
    Ok(Poset::from_strict_order(above))
}

/// Colour classes shared between the two posets being compared.
type Colours = Vec<usize>;

struct Side<'a> {
    poset: &'a Poset,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl<'a> Side<'a> {
    fn new(poset: &'a Poset) -> Self {
        let n = poset.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(a, b) in poset.hasse_edges() {
            up[a].push(b);
            down[b].push(a);
        }
        Side { poset, up, down }
    }

    fn initial(&self) -> Vec<(usize, usize, usize, usize)> {
        let below = self.poset.below_sets();
        (0..self.poset.len())
            .map(|x| (below[x].count(), self.poset.above(x).count(), self.down[x].len(), self.up[x].len()))
            .collect()
    }

    fn signature(&self, colours: &Colours, x: usize) -> (usize, Vec<usize>, Vec<usize>) {
        let mut u: Vec<usize> = self.up[x].iter().map(|&y| colours[y]).collect();
        let mut d: Vec<usize> = self.down[x].iter().map(|&y| colours[y]).collect();
        u.sort_unstable();
        d.sort_unstable();
        (colours[x], u, d)
    }
}

/// Relabels both sides from a joint, sorted dictionary of keys so that equal
/// keys get equal colours on both sides.
fn recolour<K: Ord + Clone>(k1: &[K], k2: &[K]) -> (Colours, Colours) {
    let dict: BTreeMap<K, usize> = k1
        .iter()
        .chain(k2)
        .cloned()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    (k1.iter().map(|k| dict[k]).collect(), k2.iter().map(|k| dict[k]).collect())
}

fn class_count(c: &Colours) -> usize {
    c.iter().collect::<HashSet<_>>().len()
}

fn histogram(c: &Colours) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

fn refine(s1: &Side, s2: &Side, mut c1: Colours, mut c2: Colours) -> Option<(Colours, Colours)> {
    loop {
        if histogram(&c1) != histogram(&c2) {
            return None;
        }
        let before = class_count(&c1);
        let k1: Vec<_> = (0..c1.len()).map(|x| s1.signature(&c1, x)).collect();
        let k2: Vec<_> = (0..c2.len()).map(|x| s2.signature(&c2, x)).collect();
        let (n1, n2) = recolour(&k1, &k2);
        c1 = n1;
        c2 = n2;
        if class_count(&c1) == before {
            return (histogram(&c1) == histogram(&c2)).then_some((c1, c2));
        }
    }
}

fn search(s1: &Side, s2: &Side, c1: Colours, c2: Colours) -> Option<Vec<usize>> {
    let (c1, c2) = refine(s1, s2, c1, c2)?;
    let hist = histogram(&c1);
    let target = hist.iter().filter(|(_, &k)| k > 1).min_by_key(|(&c, &k)| (k, c)).map(|(&c, _)| c);
    let Some(colour) = target else {
        // Discrete: the colouring is the candidate bijection.
        let mut by_colour = vec![0usize; c2.len()];
        for (y, &c) in c2.iter().enumerate() {
            by_colour[c] = y;
        }
        let map: Vec<usize> = c1.iter().map(|&c| by_colour[c]).collect();
        return is_order_isomorphism(s1.poset, s2.poset, &map).then_some(map);
    };
    let fresh = c1.len();
    let v = c1.iter().position(|&c| c == colour).unwrap();
    for w in (0..c2.len()).filter(|&w| c2[w] == colour) {
        let mut d1 = c1.clone();
        let mut d2 = c2.clone();
        d1[v] = fresh;
        d2[w] = fresh;
        if let Some(m) = search(s1, s2, d1, d2) {
            return Some(m);
        }
    }
    None
}

fn is_order_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    if p.hasse_edges().len() != q.hasse_edges().len() {
        return false;
    }
    let edges: HashSet<(usize, usize)> = q.hasse_edges().iter().copied().collect();
    p.hasse_edges().iter().all(|&(a, b)| edges.contains(&(map[a], map[b])))
}

/// An order isomorphism `p -> q`, if one exists.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.hasse_edges().len() != q.hasse_edges().len() || p.height() != q.height() {
        return None;
    }
    if p.relation_count() != q.relation_count() {
        return None;
    }
    let (s1, s2) = (Side::new(p), Side::new(q));
    let (c1, c2) = recolour(&s1.initial(), &s2.initial());
    search(&s1, &s2, c1, c2)
}

pub fn poset_isomorphic(p: &Poset, q: &Poset) -> bool {
    find_isomorphism(p, q).is_some()
}
