//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain strings and returns JSON; failures come back as
//! `{"error": "..."}` so the page needs no exception handling.

use ecom_core::abelian::{coset_poset_of, MaxAbelianFamily};
use ecom_core::catalog::CatalogSpec;
use ecom_core::{analyze, parse_presentation, todd_coxeter, FiniteGroup, Limits};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Tighter than the native defaults: the page runs on the main thread.
fn limits() -> Limits {
    Limits { max_order: 500, max_cosets: 20_000, max_poset_nodes: 5_000, max_simplices: 200_000, ..Limits::default() }
}

const LAYOUT_NODE_LIMIT: usize = 600;

fn respond(result: Result<String, String>) -> String {
    result.unwrap_or_else(|e| json!({ "error": e }).to_string())
}

fn catalog_group(spec: &str) -> Result<FiniteGroup, String> {
    let l = limits();
    let spec: CatalogSpec = spec.parse().map_err(|e: ecom_core::Error| e.to_string())?;
    spec.realize_with_limits(l.max_order, l.max_cosets).map_err(|e| e.to_string())
}

fn report_json(group: &FiniteGroup, label: &str) -> Result<String, String> {
    let report = analyze(group, label, &limits()).map_err(|e| e.to_string())?.without_timings();
    Ok(serde_json::to_string(&report).expect("reports serialize"))
}

/// Full report for a catalog group such as `Q,3` or `P48`.
#[wasm_bindgen]
pub fn analyze_catalog(spec: &str) -> String {
    respond(catalog_group(spec).and_then(|g| report_json(&g, spec.trim())))
}

/// Full report for a typed presentation.
#[wasm_bindgen]
pub fn analyze_presentation(text: &str) -> String {
    respond((|| {
        let p = parse_presentation(text).map_err(|e| e.to_string())?;
        let g = todd_coxeter(&p, limits().max_cosets).map_err(|e| e.to_string())?.group;
        if g.order() > limits().max_order {
            return Err(format!("group order {} is too large for the demo", g.order()));
        }
        report_json(&g, &p.to_string())
    })())
}

#[derive(Serialize)]
pub struct LayoutNode {
    pub layer: usize,
    /// Horizontal position in `(0, 1)`.
    pub x: f64,
    pub label: String,
    pub subgroup_order: usize,
}

#[derive(Serialize)]
pub struct Layout {
    pub height: usize,
    pub nodes: Vec<LayoutNode>,
    pub edges: Vec<(usize, usize)>,
}

/// Layered drawing of the coset poset: layer = length of the longest chain
/// below a node, nodes spread evenly within their layer.
pub fn hasse_layout_of(group: &FiniteGroup) -> Result<Layout, String> {
    let family = MaxAbelianFamily::new(group);
    let cp = coset_poset_of(group, &family.intersection_closure, family.maximals.len(), LAYOUT_NODE_LIMIT)
        .map_err(|e| e.to_string())?;
    let poset = &cp.poset;
    let n = poset.len();
    // A node lies below everything in its up-set, so larger up-sets come first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(poset.above(x).count()));
    let mut down: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(lo, hi) in poset.hasse_edges() {
        down[hi].push(lo);
    }
    let mut layer = vec![0usize; n];
    for &x in &order {
        layer[x] = down[x].iter().map(|&y| layer[y] + 1).max().unwrap_or(0);
    }
    let mut per_layer = vec![0usize; poset.height() + 1];
    let mut slot = vec![0usize; n];
    for x in 0..n {
        slot[x] = per_layer[layer[x]];
        per_layer[layer[x]] += 1;
    }
    let nodes = (0..n)
        .map(|x| {
            let node = &cp.nodes[x];
            LayoutNode {
                layer: layer[x],
                x: (slot[x] as f64 + 0.5) / per_layer[layer[x]] as f64,
                label: format!("{}·B{}", group.element_name(node.rep), node.subgroup),
                subgroup_order: cp.subgroups[node.subgroup].order(),
            }
        })
        .collect();
    Ok(Layout { height: poset.height(), nodes, edges: poset.hasse_edges().to_vec() })
}

/// Hasse diagram of a catalog group's coset poset, ready for a canvas.
#[wasm_bindgen]
pub fn hasse_layout(spec: &str) -> String {
    respond(
        catalog_group(spec)
            .and_then(|g| hasse_layout_of(&g))
            .map(|l| serde_json::to_string(&l).expect("layouts serialize")),
    )
}
