//! The full pipeline: group → maximal abelians → coset poset → order complex
//! → verdict, with every evidence channel recorded.

use std::fmt;
use web_time::Instant;

use serde::{Deserialize, Serialize};

use crate::abelian::{coset_poset_of, MaxAbelianFamily};
use crate::complex::{order_complex, DEFAULT_SIMPLEX_LIMIT};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_LIMIT};
use crate::homology::{classify_homotopy, Verdict};
use crate::poset::{Poset, DEFAULT_POSET_NODE_LIMIT};
use crate::todd_coxeter::DEFAULT_MAX_COSETS;

/// Resource bounds for one analysis. The time bound is checked between
/// stages, so a single stage can overrun it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_cosets: usize,
    pub max_poset_nodes: usize,
    pub max_simplices: usize,
    pub max_millis: Option<u64>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_ORDER_LIMIT,
            max_cosets: DEFAULT_MAX_COSETS,
            max_poset_nodes: DEFAULT_POSET_NODE_LIMIT,
            max_simplices: DEFAULT_SIMPLEX_LIMIT,
            max_millis: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub source: String,
    pub order: usize,
    pub center_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalAbelianSummary {
    pub count: usize,
    /// Orders in the family's canonical order (largest first).
    pub orders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetStats {
    pub nodes: usize,
    pub hasse_edges: usize,
    pub height: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSummary {
    pub dim: Option<usize>,
    pub counts: Vec<usize>,
    pub steps: usize,
    /// `E - V + 1` of the collapsed complex when it is a connected graph.
    pub graph_circles: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    /// `E - V + 1` of the poset itself; present only at height at most 1.
    pub euler_circles: Option<i64>,
    pub euler_characteristic: i64,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
    pub collapse: CollapseSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomotopyReport {
    pub group: GroupDescriptor,
    pub maximal_abelian: MaximalAbelianSummary,
    pub poset: PosetStats,
    pub verdict: Verdict,
    pub evidence: Evidence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StageTiming>>,
}

impl HomotopyReport {
    /// The circle count, when the verdict is a wedge (0 for contractible).
    pub fn circles(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Contractible => Some(0),
            Verdict::WedgeOfCircles { circles } => Some(circles),
            Verdict::Unresolved => None,
        }
    }

    pub fn is_height1(&self) -> bool {
        self.poset.height <= 1
    }

    /// Drop wall-clock data so reports compare and print deterministically.
    pub fn without_timings(mut self) -> Self {
        self.timings = None;
        self
    }
}

struct Clock {
    start: Instant,
    last: Instant,
    limit: Option<u64>,
    stages: Vec<StageTiming>,
}

impl Clock {
    fn new(limit: Option<u64>) -> Self {
        let now = Instant::now();
        Clock { start: now, last: now, limit, stages: Vec::new() }
    }

    fn stage(&mut self, name: &str) -> Result<()> {
        let now = Instant::now();
        self.stages.push(StageTiming { stage: name.to_string(), millis: (now - self.last).as_secs_f64() * 1e3 });
        self.last = now;
        match self.limit {
            Some(ms) if (now - self.start).as_millis() >= u128::from(ms) => {
                Err(Error::TimeLimitExceeded { stage: name.to_string(), limit_ms: ms })
            }
            _ => Ok(()),
        }
    }
}

/// Run the whole pipeline on `group`; `source` is echoed into the report.
pub fn analyze(group: &FiniteGroup, source: &str, limits: &Limits) -> Result<HomotopyReport> {
    if group.order() > limits.max_order {
        return Err(Error::OrderLimitExceeded { order: group.order(), limit: limits.max_order });
    }
    let mut clock = Clock::new(limits.max_millis);
    let family = MaxAbelianFamily::new(group);
    if family.total_intersection() != family.center {
        return Err(Error::Internal("maximal abelian subgroups do not meet in the center".into()));
    }
    clock.stage("maximal_abelian")?;
    let cp = coset_poset_of(group, &family.intersection_closure, family.maximals.len(), limits.max_poset_nodes)?;
    clock.stage("poset")?;
    let descriptor =
        GroupDescriptor { source: source.to_string(), order: group.order(), center_order: family.center.order() };
    let orders = family.maximals.iter().map(|m| m.order()).collect();
    finish(descriptor, orders, &cp.poset, limits, clock)
}

/// Classify an already-built poset, e.g. one read back from an export.
pub fn analyze_poset(
    group: GroupDescriptor,
    maximal_orders: Vec<usize>,
    poset: &Poset,
    limits: &Limits,
) -> Result<HomotopyReport> {
    if poset.len() > limits.max_poset_nodes {
        return Err(Error::PosetSizeExceeded { nodes: poset.len(), limit: limits.max_poset_nodes });
    }
    finish(group, maximal_orders, poset, limits, Clock::new(limits.max_millis))
}

fn finish(
    group: GroupDescriptor,
    maximal_orders: Vec<usize>,
    poset: &Poset,
    limits: &Limits,
    mut clock: Clock,
) -> Result<HomotopyReport> {
    let euler_circles = (poset.height() <= 1).then(|| poset.relation_count() as i64 - poset.len() as i64 + 1);
    let complex = order_complex(poset, limits.max_simplices)?;
    if complex.dim().unwrap_or(0) != poset.height() {
        return Err(Error::Internal("order complex dimension differs from poset height".into()));
    }
    clock.stage("complex")?;
    let c = classify_homotopy(&complex)?;
    clock.stage("classify")?;

    let report = HomotopyReport {
        group,
        maximal_abelian: MaximalAbelianSummary { count: maximal_orders.len(), orders: maximal_orders },
        poset: PosetStats { nodes: poset.len(), hasse_edges: poset.hasse_edges().len(), height: poset.height() },
        verdict: c.verdict,
        evidence: Evidence {
            euler_circles,
            euler_characteristic: complex.euler_characteristic(),
            betti: c.homology.betti.clone(),
            torsion: c.homology.torsion.clone(),
            collapse: CollapseSummary {
                dim: c.collapsed_dim,
                counts: c.collapsed_counts,
                steps: c.collapse_steps,
                graph_circles: c.collapsed_graph_circles,
            },
        },
        timings: Some(clock.stages),
    };
    check_agreement(&report)?;
    Ok(report)
}

/// Every method that applies must report the same circle count.
fn check_agreement(r: &HomotopyReport) -> Result<()> {
    let Some(k) = r.circles() else { return Ok(()) };
    let k = k as i64;
    let betti1 = r.evidence.betti.get(1).copied().unwrap_or(0) as i64;
    let mut claims = vec![("homology", betti1), ("euler characteristic", 1 - r.evidence.euler_characteristic)];
    claims.extend(r.evidence.euler_circles.map(|e| ("euler count", e)));
    claims.extend(r.evidence.collapse.graph_circles.map(|g| ("collapsed graph", g)));
    match claims.iter().find(|(_, v)| *v != k) {
        Some((method, v)) => Err(Error::Internal(format!("{method} gives {v} circles but the verdict is {k}"))),
        None => Ok(()),
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Contractible => write!(f, "contractible"),
            Verdict::WedgeOfCircles { circles: 1 } => write!(f, "wedge of 1 circle"),
            Verdict::WedgeOfCircles { circles } => write!(f, "wedge of {circles} circles"),
            Verdict::Unresolved => write!(f, "unresolved"),
        }
    }
}

fn list<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for HomotopyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.group;
        writeln!(f, "group            {} (order {}, center {})", g.source, g.order, g.center_order)?;
        writeln!(f, "maximal abelian  {} (orders {})", self.maximal_abelian.count, list(&self.maximal_abelian.orders))?;
        let p = &self.poset;
        writeln!(f, "poset            {} nodes, {} Hasse edges, height {}", p.nodes, p.hasse_edges, p.height)?;
        writeln!(f, "verdict          {}", self.verdict)?;
        let e = &self.evidence;
        match e.euler_circles {
            Some(c) => writeln!(f, "euler count      {c}")?,
            None => writeln!(f, "euler count      n/a (height {})", p.height)?,
        }
        let torsion: Vec<String> = e
            .torsion
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(d, t)| format!("H{d}: {}", list(t)))
            .collect();
        let torsion = if torsion.is_empty() { "none".to_string() } else { torsion.join("; ") };
        writeln!(f, "homology         betti [{}], torsion {torsion}", list(&e.betti))?;
        let dim = e.collapse.dim.map_or("empty".to_string(), |d| d.to_string());
        writeln!(
            f,
            "collapse         dim {dim}, counts [{}] after {} steps",
            list(&e.collapse.counts),
            e.collapse.steps
        )?;
        if let Some(ts) = &self.timings {
            for t in ts {
                writeln!(f, "time {:<12} {:.1} ms", t.stage, t.millis)?;
            }
        }
        Ok(())
    }
}
