//! File formats: poset JSON, complex JSON, boundary triples, catalog listing.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::abelian::{coset_poset_of, CosetPoset, MaxAbelianFamily};
use crate::analysis::{analyze_poset, GroupDescriptor, HomotopyReport, Limits};
use crate::catalog::{standard_entries, CatalogEntry};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub order: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub subgroup: usize,
    pub rep: usize,
    pub members: Vec<usize>,
}

/// A coset poset together with enough group data to reclassify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub source: String,
    pub group_order: usize,
    pub center_order: usize,
    pub maximal_abelian_orders: Vec<usize>,
    pub subgroups: Vec<SubgroupRecord>,
    pub nodes: Vec<NodeRecord>,
    pub hasse_edges: Vec<(usize, usize)>,
    pub height: usize,
}

impl PosetFile {
    pub fn new(source: &str, cp: &CosetPoset, maximal_abelian_orders: Vec<usize>) -> Self {
        PosetFile {
            source: source.to_string(),
            group_order: cp.group_order,
            center_order: cp.center_order,
            maximal_abelian_orders,
            subgroups: cp
                .subgroups
                .iter()
                .map(|s| SubgroupRecord { order: s.order(), members: s.members().to_vec() })
                .collect(),
            nodes: cp
                .nodes
                .iter()
                .map(|n| NodeRecord { subgroup: n.subgroup, rep: n.rep, members: n.members.to_vec() })
                .collect(),
            hasse_edges: cp.hasse_edges().to_vec(),
            height: cp.height(),
        }
    }

    pub fn from_group(group: &FiniteGroup, source: &str, node_limit: usize) -> Result<Self> {
        let family = MaxAbelianFamily::new(group);
        let cp = coset_poset_of(group, &family.intersection_closure, family.maximals.len(), node_limit)?;
        Ok(Self::new(source, &cp, family.maximals.iter().map(|m| m.order()).collect()))
    }

    /// Rebuilds the order from the Hasse edges and checks the stored height.
    pub fn poset(&self) -> Result<Poset> {
        let p = Poset::from_relations(self.nodes.len(), &self.hasse_edges)?;
        if p.height() != self.height {
            return Err(Error::Invalid(format!("stored height {} but edges give {}", self.height, p.height())));
        }
        Ok(p)
    }

    pub fn analyze(&self, limits: &Limits) -> Result<HomotopyReport> {
        let group =
            GroupDescriptor { source: self.source.clone(), order: self.group_order, center_order: self.center_order };
        analyze_poset(group, self.maximal_abelian_orders.clone(), &self.poset()?, limits)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("poset records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("poset JSON: {e}")))
    }
}

/// Complex as `{"dim": d, "simplices": {"0": [...], "1": [...]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub dim: Option<usize>,
    pub simplices: BTreeMap<String, Vec<Simplex>>,
}

impl ComplexFile {
    pub fn new(k: &SimplicialComplex) -> Self {
        ComplexFile {
            dim: k.dim(),
            simplices: k.levels().iter().enumerate().map(|(d, l)| (d.to_string(), l.clone())).collect(),
        }
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        let mut levels = Vec::new();
        for (key, l) in &self.simplices {
            let d: usize = key.parse().map_err(|_| Error::Invalid(format!("dimension key `{key}`")))?;
            if levels.len() <= d {
                levels.resize(d + 1, Vec::new());
            }
            levels[d] = l.clone();
        }
        let k = SimplicialComplex::from_levels(levels)?;
        if k.dim() != self.dim {
            return Err(Error::Invalid("stored dimension does not match the simplices".into()));
        }
        Ok(k)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("complex JSON: {e}")))
    }
}

/// Every boundary matrix as `d i j value` lines (row `i` a `(d-1)`-simplex,
/// column `j` a `d`-simplex), after a `# counts` header giving the number of
/// simplices in each dimension so zero rows and columns are not lost.
pub fn boundary_triples(k: &SimplicialComplex) -> String {
    let mut out = String::from("# counts");
    for l in k.levels() {
        write!(out, " {}", l.len()).unwrap();
    }
    out.push('\n');
    for d in 1..k.levels().len() {
        for (i, j, v) in k.boundary_matrix(d).triples() {
            writeln!(out, "{d} {i} {j} {v}").unwrap();
        }
    }
    out
}

/// One nonzero boundary entry: `(dimension, row, column, value)`.
pub type BoundaryEntry = (usize, usize, usize, i64);

/// Parses [`boundary_triples`] output back into `(counts, entries)`.
pub fn parse_boundary_triples(text: &str) -> Result<(Vec<usize>, Vec<BoundaryEntry>)> {
    let bad = |line: &str| Error::Invalid(format!("boundary line `{line}`"));
    let mut counts = None;
    let mut triples = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix("# counts") {
            counts = Some(
                rest.split_whitespace().map(|t| t.parse().map_err(|_| bad(line))).collect::<Result<Vec<usize>>>()?,
            );
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 4 {
            return Err(bad(line));
        }
        let p = |s: &str| s.parse::<usize>().map_err(|_| bad(line));
        triples.push((p(f[0])?, p(f[1])?, p(f[2])?, f[3].parse::<i64>().map_err(|_| bad(line))?));
    }
    Ok((counts.ok_or_else(|| Error::Invalid("missing `# counts` header".into()))?, triples))
}

/// The catalog listing as JSON.
pub fn catalog_json() -> Result<String> {
    let entries: Vec<CatalogEntry> = standard_entries().iter().map(|s| s.entry()).collect::<Result<_>>()?;
    Ok(serde_json::to_string_pretty(&entries).expect("catalog entries serialize"))
}
