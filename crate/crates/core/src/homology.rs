//! Integral homology and the homotopy verdict built on it.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::snf::smith_normal_form;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Invariant factors above 1 in each dimension.
    pub torsion: Vec<Vec<u64>>,
}

impl HomologyResult {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// Same groups with trailing zero dimensions dropped, so complexes of
    /// different dimension compare equal when their homology agrees.
    pub fn trimmed(&self) -> Self {
        let mut keep = self.betti.len();
        while keep > 0 && self.betti[keep - 1] == 0 && self.torsion[keep - 1].is_empty() {
            keep -= 1;
        }
        HomologyResult { betti: self.betti[..keep].to_vec(), torsion: self.torsion[..keep].to_vec() }
    }

    /// `Some(k)` iff homology is that of a wedge of `k` circles.
    pub fn wedge_of_circles(&self) -> Option<usize> {
        if !self.is_torsion_free() || self.betti.first() != Some(&1) {
            return None;
        }
        if self.betti.iter().skip(2).any(|&b| b != 0) {
            return None;
        }
        Some(self.betti.get(1).copied().unwrap_or(0))
    }
}

pub fn homology(k: &SimplicialComplex) -> Result<HomologyResult> {
    let Some(top) = k.dim() else {
        return Ok(HomologyResult { betti: Vec::new(), torsion: Vec::new() });
    };
    // rank[d] = rank of the boundary out of dimension d
    let mut rank = vec![0usize; top + 2];
    let mut factors = vec![Vec::new(); top + 2];
    for d in 1..=top {
        let snf = smith_normal_form(&k.boundary_matrix(d))?;
        rank[d] = snf.rank;
        factors[d] = snf.torsion();
    }
    let betti = (0..=top).map(|d| k.count(d) - rank[d] - rank[d + 1]).collect();
    let torsion = (0..=top).map(|d| factors[d + 1].clone()).collect();
    Ok(HomologyResult { betti, torsion })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Contractible,
    WedgeOfCircles { circles: usize },
    Unresolved,
}

/// Both evidence channels behind a [`Verdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub homology: HomologyResult,
    /// Dimension and simplex counts after free-face collapsing.
    pub collapsed_dim: Option<usize>,
    pub collapsed_counts: Vec<usize>,
    pub collapse_steps: usize,
    /// `E - V + 1` of the collapsed complex when it is a graph.
    pub collapsed_graph_circles: Option<i64>,
}

/// Contractible if collapsing reaches a point; a wedge of `k` circles if the
/// collapsed complex is a graph with first Betti number `k` and the original
/// homology is torsion-free `(1, k, 0, ...)`; unresolved otherwise.
pub fn classify_homotopy(k: &SimplicialComplex) -> Result<Classification> {
    let components = k.connected_components();
    if components != 1 {
        return Err(Error::Disconnected(components));
    }
    let homology = homology(k)?;
    let (collapsed, log) = k.collapse_free_faces();
    let collapsed_dim = collapsed.dim();
    let collapsed_counts: Vec<usize> = collapsed.levels().iter().map(Vec::len).collect();
    let graph_circles = match collapsed_dim {
        Some(d) if d <= 1 && collapsed.connected_components() == 1 => {
            Some(collapsed.count(1) as i64 - collapsed.count(0) as i64 + 1)
        }
        _ => None,
    };

    let verdict = if collapsed.total() == 1 {
        Verdict::Contractible
    } else {
        match (homology.wedge_of_circles(), graph_circles) {
            (Some(h), Some(g)) if h as i64 == g => {
                if h == 0 {
                    Verdict::Contractible
                } else {
                    Verdict::WedgeOfCircles { circles: h }
                }
            }
            _ => Verdict::Unresolved,
        }
    };
    Ok(Classification {
        verdict,
        homology,
        collapsed_dim,
        collapsed_counts,
        collapse_steps: log.steps.len(),
        collapsed_graph_circles: graph_circles,
    })
}
