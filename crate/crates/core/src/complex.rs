//! Finite abstract simplicial complexes and elementary collapses.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::snf::IntMatrix;

pub const DEFAULT_SIMPLEX_LIMIT: usize = 5_000_000;

pub type Simplex = Vec<u32>;

/// Simplices grouped by dimension; each level is sorted lexicographically
/// and every tuple is strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    levels: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { levels: Vec::new() }
    }

    /// Downward closure of the given simplices.
    pub fn from_simplices<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in simplices {
            let mut v = s.as_ref().to_vec();
            v.sort_unstable();
            if v.is_empty() {
                continue;
            }
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("simplex {v:?} repeats a vertex")));
            }
            add_with_faces(&mut sets, v);
        }
        Ok(SimplicialComplex { levels: sets.into_iter().map(|s| s.into_iter().collect()).collect() })
    }

    /// Takes already-sorted, downward-closed levels, checking both claims.
    pub fn from_levels(levels: Vec<Vec<Simplex>>) -> Result<Self> {
        let k = SimplicialComplex { levels };
        k.validate()?;
        Ok(k)
    }

    fn validate(&self) -> Result<()> {
        for (d, level) in self.levels.iter().enumerate() {
            if level.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invalid(format!("dimension {d} is not strictly sorted")));
            }
            for s in level {
                if s.len() != d + 1 || s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Invalid(format!("bad simplex {s:?} in dimension {d}")));
                }
                if d > 0 {
                    for face in facets(s) {
                        if self.index_of(&face).is_none() {
                            return Err(Error::Invalid(format!("face {face:?} of {s:?} is missing")));
                        }
                    }
                }
            }
        }
        if self.levels.last().is_some_and(Vec::is_empty) {
            return Err(Error::Invalid("trailing empty dimension".into()));
        }
        Ok(())
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.levels.len().checked_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.levels.get(d).map_or(0, Vec::len)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.levels.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> &[Vec<Simplex>] {
        &self.levels
    }

    pub fn total(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.simplices(0).iter().map(|s| s[0])
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let level = self.levels.get(s.len().checked_sub(1)?)?;
        level.binary_search_by(|t| t.as_slice().cmp(s)).ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.levels.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Components of the 1-skeleton, isolated vertices included.
    pub fn connected_components(&self) -> usize {
        let verts = self.simplices(0);
        let pos = |v: u32| verts.binary_search_by(|s| s[0].cmp(&v)).expect("edge endpoint is a vertex");
        let mut uf: Vec<usize> = (0..verts.len()).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut x = x;
            while uf[x] != r {
                let n = uf[x];
                uf[x] = r;
                x = n;
            }
            r
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut uf, pos(e[0])), find(&mut uf, pos(e[1])));
            uf[a.max(b)] = a.min(b);
        }
        (0..verts.len()).filter(|&x| find(&mut uf, x) == x).count()
    }

    /// Matrix of the boundary map from `d`-chains to `(d-1)`-chains, with rows
    /// indexing `(d-1)`-simplices and columns `d`-simplices.
    pub fn boundary_matrix(&self, d: usize) -> IntMatrix {
        if d == 0 {
            return IntMatrix::zeros(0, self.count(0));
        }
        let rows = self.count(d - 1);
        let cols = self.count(d);
        let triples = self.simplices(d).iter().enumerate().flat_map(|(j, s)| {
            facets(s).enumerate().map(move |(i, face)| {
                let row = self.index_of(&face).expect("complex is downward closed");
                (row, j, if i % 2 == 0 { 1 } else { -1 })
            })
        });
        // facets(s) drops vertex i in order, so the sign is (-1)^i.
        IntMatrix::from_triples(rows, cols, triples.collect::<Vec<_>>())
    }

    /// Repeatedly removes a free pair `(sigma, tau)`, where `sigma` has exactly
    /// one coface `tau`, always taking the highest-dimensional `sigma` and,
    /// within a dimension, the lexicographically smallest.
    pub fn collapse_free_faces(&self) -> (SimplicialComplex, CollapseLog) {
        let top = self.levels.len();
        if top < 2 {
            return (self.clone(), CollapseLog::default());
        }
        // facet and coface incidence by index
        let mut faces: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        let mut cofaces: Vec<Vec<Vec<usize>>> = self.levels.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for d in 1..top {
            faces[d] = self.levels[d]
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    facets(s)
                        .map(|f| {
                            let i = self.levels[d - 1].binary_search(&f).expect("downward closed");
                            cofaces[d - 1][i].push(j);
                            i
                        })
                        .collect()
                })
                .collect();
        }
        let mut alive: Vec<Vec<bool>> = self.levels.iter().map(|l| vec![true; l.len()]).collect();
        let mut count: Vec<Vec<usize>> = cofaces.iter().map(|l| l.iter().map(Vec::len).collect()).collect();

        let mut free: BTreeSet<(Reverse<usize>, usize)> = BTreeSet::new();
        for (d, level) in count.iter().enumerate().take(top) {
            for (i, &c) in level.iter().enumerate() {
                if c == 1 {
                    free.insert((Reverse(d), i));
                }
            }
        }

        let mut log = CollapseLog::default();
        while let Some((Reverse(d), i)) = free.pop_first() {
            let t = *cofaces[d][i].iter().find(|&&t| alive[d + 1][t]).expect("free face has one live coface");
            alive[d][i] = false;
            alive[d + 1][t] = false;
            log.steps.push((self.levels[d][i].clone(), self.levels[d + 1][t].clone()));

            let touch = |count: &mut Vec<Vec<usize>>, free: &mut BTreeSet<_>, dim: usize, k: usize| {
                count[dim][k] -= 1;
                if count[dim][k] == 1 && alive[dim][k] {
                    free.insert((Reverse(dim), k));
                } else {
                    free.remove(&(Reverse(dim), k));
                }
            };
            for &f in &faces[d + 1][t] {
                if f != i {
                    touch(&mut count, &mut free, d, f);
                }
            }
            if d > 0 {
                for &f in &faces[d][i] {
                    touch(&mut count, &mut free, d - 1, f);
                }
            }
        }

        let mut levels: Vec<Vec<Simplex>> = self
            .levels
            .iter()
            .zip(&alive)
            .map(|(l, a)| l.iter().zip(a).filter(|(_, &k)| k).map(|(s, _)| s.clone()).collect())
            .collect();
        while levels.last().is_some_and(Vec::is_empty) {
            levels.pop();
        }
        (SimplicialComplex { levels }, log)
    }
}

/// Faces of `s` obtained by dropping vertex 0, 1, ... in turn.
fn facets(s: &[u32]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).map(move |i| s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect())
}

fn add_with_faces(sets: &mut Vec<BTreeSet<Simplex>>, s: Simplex) {
    let d = s.len() - 1;
    while sets.len() <= d {
        sets.push(BTreeSet::new());
    }
    if d == 0 {
        sets[0].insert(s);
        return;
    }
    let new_faces: Vec<Simplex> = facets(&s).collect();
    if sets[d].insert(s) {
        for f in new_faces {
            add_with_faces(sets, f);
        }
    }
}

/// Pairs `(free face, its unique coface)` in removal order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseLog {
    pub steps: Vec<(Simplex, Simplex)>,
}

/// Complex whose `d`-simplices are the chains `x0 < ... < xd` of `poset`.
pub fn order_complex(poset: &Poset, limit: usize) -> Result<SimplicialComplex> {
    let n = poset.len();
    let mut levels: Vec<Vec<Simplex>> = Vec::new();
    let mut total = 0usize;
    let mut chain: Vec<u32> = Vec::new();

    fn extend(
        poset: &Poset,
        x: usize,
        chain: &mut Vec<u32>,
        levels: &mut Vec<Vec<Simplex>>,
        total: &mut usize,
        limit: usize,
    ) -> Result<()> {
        chain.push(x as u32);
        *total += 1;
        if *total > limit {
            return Err(Error::ComplexSizeExceeded { limit });
        }
        let d = chain.len() - 1;
        if levels.len() <= d {
            levels.push(Vec::new());
        }
        let mut s = chain.clone();
        s.sort_unstable();
        levels[d].push(s);
        for y in poset.above(x).iter() {
            extend(poset, y, chain, levels, total, limit)?;
        }
        chain.pop();
        Ok(())
    }

    for x in 0..n {
        extend(poset, x, &mut chain, &mut levels, &mut total, limit)?;
    }
    for l in &mut levels {
        l.sort_unstable();
    }
    Ok(SimplicialComplex { levels })
}
