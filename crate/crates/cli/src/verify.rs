//! The paper-reproduction table behind `ecom verify-paper`.

use std::fmt::Write;
use std::time::Instant;

use ecom_core::catalog::CatalogSpec;
use ecom_core::{analyze, Limits};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub target: String,
    pub expected_order: usize,
    pub order: Option<usize>,
    pub expected_circles: i64,
    pub circles: Option<i64>,
    pub height1: Option<bool>,
    pub millis: f64,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub rows: Vec<Row>,
    pub all_match: bool,
}

pub fn targets() -> Vec<String> {
    let mut t: Vec<String> = (2..=6).map(|n| format!("Q,{n}")).collect();
    t.push("P48".into());
    t.push("P120".into());
    for m in [2, 3] {
        for n in [1, 2] {
            t.push(format!("D,{m},{n}"));
        }
    }
    t.push("Pprime,1".into());
    t
}

fn row(target: &str, limits: &Limits) -> Row {
    let start = Instant::now();
    let spec: CatalogSpec = target.parse().expect("targets are well formed");
    let entry = spec.entry().expect("targets are catalog entries");
    let expected_circles = entry.expected_circles.expect("every target pins its circle count");
    let mut r = Row {
        target: target.to_string(),
        expected_order: entry.expected_order,
        order: None,
        expected_circles,
        circles: None,
        height1: None,
        millis: 0.0,
        matches: false,
        error: None,
    };
    let outcome =
        spec.realize_with_limits(limits.max_order, limits.max_cosets).and_then(|g| analyze(&g, target, limits));
    match outcome {
        Ok(report) => {
            r.order = Some(report.group.order);
            r.circles = report.circles().map(|c| c as i64);
            r.height1 = Some(report.is_height1());
            // Every target is a height-one poset whose Euler count must agree.
            r.matches = r.order == Some(r.expected_order)
                && r.circles == Some(expected_circles)
                && report.evidence.euler_circles == Some(expected_circles)
                && r.height1 == Some(true);
        }
        Err(e) => r.error = Some(e.to_string()),
    }
    r.millis = start.elapsed().as_secs_f64() * 1e3;
    r
}

pub fn run(limits: &Limits) -> Summary {
    let rows: Vec<Row> = targets().iter().map(|t| row(t, limits)).collect();
    let all_match = rows.iter().all(|r| r.matches);
    Summary { rows, all_match }
}

fn show<T: ToString>(v: Option<T>) -> String {
    v.map_or("-".into(), |v| v.to_string())
}

pub fn render(s: &Summary) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<10} {:>6} {:>9} {:>9} {:>8} {:>10}  status",
        "target", "order", "expected", "computed", "height1", "ms"
    )
    .unwrap();
    for r in &s.rows {
        let status = match (&r.error, r.matches) {
            (Some(e), _) => format!("ERROR {e}"),
            (None, true) => "ok".into(),
            (None, false) => "MISMATCH".into(),
        };
        writeln!(
            out,
            "{:<10} {:>6} {:>9} {:>9} {:>8} {:>10.1}  {status}",
            r.target,
            show(r.order),
            r.expected_circles,
            show(r.circles),
            show(r.height1),
            r.millis
        )
        .unwrap();
    }
    let failed = s.rows.iter().filter(|r| !r.matches).count();
    if failed == 0 {
        writeln!(out, "all {} targets match", s.rows.len()).unwrap();
    } else {
        writeln!(out, "{failed} of {} targets failed", s.rows.len()).unwrap();
    }
    out
}
