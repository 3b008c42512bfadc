//! Coset enumeration over the trivial subgroup (HLT strategy), producing the
//! regular representation of a finitely presented group.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::presentation::Presentation;

pub const DEFAULT_MAX_COSETS: usize = 100_000;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableEvent {
    Define { coset: usize, column: usize, new: usize },
    Deduce { coset: usize, column: usize, target: usize },
    Coincidence { kept: usize, killed: usize },
}

/// Partial action of generators (column `2g`) and their inverses (column
/// `2g + 1`) on coset indices. Coset 0 is the trivial subgroup itself.
#[derive(Clone, Debug)]
pub struct CosetTable {
    columns: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    log: Vec<TableEvent>,
    max_cosets: usize,
}

impl CosetTable {
    fn new(generators: usize, max_cosets: usize) -> Self {
        let columns = 2 * generators;
        CosetTable { columns, rows: vec![UNDEF; columns], parent: vec![0], log: Vec::new(), max_cosets }
    }

    pub fn allocated(&self) -> usize {
        self.parent.len()
    }

    pub fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    pub fn live_count(&self) -> usize {
        (0..self.allocated()).filter(|&c| self.is_live(c)).count()
    }

    pub fn log(&self) -> &[TableEvent] {
        &self.log
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> Option<usize> {
        let v = self.rows[c * self.columns + x];
        (v != UNDEF).then_some(v as usize)
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.rows[c * self.columns + x] = d as u32;
    }

    #[inline]
    fn unset(&mut self, c: usize, x: usize) {
        self.rows[c * self.columns + x] = UNDEF;
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize> {
        let d = self.allocated();
        if d >= self.max_cosets {
            return Err(Error::CosetLimitExceeded { limit: self.max_cosets });
        }
        self.parent.push(d as u32);
        self.rows.extend(std::iter::repeat_n(UNDEF, self.columns));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.log.push(TableEvent::Define { coset: c, column: x, new: d });
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut c = c;
        while self.parent[c] as usize != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (kept, killed) = (a.min(b), a.max(b));
        self.parent[killed] = kept as u32;
        queue.push(killed);
        self.log.push(TableEvent::Coincidence { kept, killed });
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for x in 0..self.columns {
                let Some(d) = self.get(dead, x) else { continue };
                self.unset(d, x ^ 1);
                let (mu, nu) = (self.rep(dead), self.rep(d));
                if let Some(t) = self.get(mu, x) {
                    self.merge(nu, t, &mut queue);
                } else if let Some(t) = self.get(nu, x ^ 1) {
                    self.merge(mu, t, &mut queue);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    /// Traces `word` from `c` forwards and backwards, defining new cosets
    /// until the relator closes at `c`.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<()> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, word.len() as isize - 1);
        loop {
            while i <= j {
                match self.get(f, word[i as usize]) {
                    Some(t) => {
                        f = t;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.get(b, word[j as usize] ^ 1) {
                    Some(t) => {
                        b = t;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = word[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                self.log.push(TableEvent::Deduce { coset: f, column: x, target: b });
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }

    fn enumerate(&mut self, relators: &[Vec<usize>]) -> Result<()> {
        let mut c = 0;
        while c < self.allocated() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.is_live(c) {
                for x in 0..self.columns {
                    if self.get(c, x).is_none() {
                        self.define(c, x)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Live cosets renumbered `0..n` in increasing order, with the generator
    /// columns of the compacted table.
    fn compact(&mut self) -> Result<Vec<Vec<usize>>> {
        let live: Vec<usize> = (0..self.allocated()).filter(|&c| self.is_live(c)).collect();
        let mut new_id = vec![usize::MAX; self.allocated()];
        for (k, &c) in live.iter().enumerate() {
            new_id[c] = k;
        }
        let mut out = Vec::with_capacity(live.len());
        for &c in &live {
            let mut row = Vec::with_capacity(self.columns);
            for x in 0..self.columns {
                let t = self
                    .get(c, x)
                    .ok_or_else(|| Error::Internal(format!("coset {c} has no image under column {x}")))?;
                let t = self.rep(t);
                row.push(new_id[t]);
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// A group realized from a presentation.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    pub group: FiniteGroup,
    pub generator_ids: BTreeMap<String, usize>,
    pub cosets_defined: usize,
}

pub fn todd_coxeter(presentation: &Presentation, max_cosets: usize) -> Result<PresentedGroup> {
    if max_cosets == 0 {
        return Err(Error::Invalid("max_cosets must be at least 1".into()));
    }
    let k = presentation.generators().len();
    let relators: Vec<Vec<usize>> = presentation
        .relators()
        .iter()
        .map(|w| w.letters().map(|(g, inverse)| 2 * g + inverse as usize).collect())
        .collect();
    let mut table = CosetTable::new(k, max_cosets);
    table.enumerate(&relators)?;
    let cosets_defined = table.allocated();
    let action = table.compact()?;
    let n = action.len();

    // Spanning tree from coset 0: element j is the word tracing 0 to j.
    let mut tree: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for (x, &t) in action[c].iter().enumerate() {
            if !seen[t] {
                seen[t] = true;
                tree[t] = Some((c, x));
                order.push(t);
            }
        }
        i += 1;
    }
    if order.len() != n {
        return Err(Error::Internal("coset table is not transitive".into()));
    }

    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        mul[a * n] = a;
        for &b in &order[1..] {
            let (pb, x) = tree[b].expect("non-root has a tree edge");
            mul[a * n + b] = action[mul[a * n + pb]][x];
        }
    }

    let mut names = vec![String::new(); n];
    names[0] = "1".into();
    for &b in &order[1..] {
        let (pb, x) = tree[b].unwrap();
        let g = &presentation.generators()[x / 2];
        let letter = if x % 2 == 0 { g.clone() } else { format!("{g}^-1") };
        names[b] = if pb == 0 { letter } else { format!("{}*{}", names[pb], letter) };
    }

    let group = FiniteGroup::from_fn(n, Some(names), |a, b| mul[a * n + b])?;
    let generator_ids =
        presentation.generators().iter().enumerate().map(|(g, name)| (name.clone(), action[0][2 * g])).collect();
    Ok(PresentedGroup { group, generator_ids, cosets_defined })
}

/// True iff every relator evaluates to the identity under `assignment`.
pub fn verify_relators(group: &FiniteGroup, presentation: &Presentation, assignment: &BTreeMap<String, usize>) -> bool {
    let Some(images) = presentation
        .generators()
        .iter()
        .map(|g| assignment.get(g).copied().filter(|&id| id < group.order()))
        .collect::<Option<Vec<usize>>>()
    else {
        return false;
    };
    presentation.relators().iter().all(|w| {
        w.syllables().iter().fold(group.identity(), |acc, &(g, e)| group.mul(acc, group.pow(images[g], e)))
            == group.identity()
    })
}
