//! Deterministic renderings of component windows.
//!
//! DOT for eyeballing the mesh structure, JSON for machine round trips. Both
//! order vertices row-major (row ascending, then column ascending), so equal
//! windows always render to identical bytes.

use super::ComponentWindow;
use crate::error::Error;

/// Row-major vertex visit order: (row, column, id).
fn visit_order(w: &ComponentWindow) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..w.vertices.len()).collect();
    ids.sort_by_key(|&i| (w.vertices[i].coord.0, w.vertices[i].coord.1, i));
    ids
}

/// Renders a window as a DOT digraph: one box per vertex labeled
/// `name\nrank=r, d'=d`, solid arrows for irreducible maps (with the
/// valuation printed only when it is not `(1,1)`), dashed arrows for τ.
/// Vertices of a row share a DOT rank, so the mesh renders as its grid.
pub fn emit_dot(w: &ComponentWindow) -> String {
    let order = visit_order(w);
    let mut pos = vec![0usize; w.vertices.len()];
    for (k, &id) in order.iter().enumerate() {
        pos[id] = k;
    }

    let mut out = String::new();
    out.push_str("digraph component {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box];\n");
    for &id in &order {
        let v = &w.vertices[id];
        out.push_str(&format!(
            "  v{} [label=\"{}\\nrank={}, d'={}\"{}];\n",
            id,
            v.lattice.name,
            v.rank,
            v.dprime,
            if v.frontier { ", style=dotted" } else { "" }
        ));
    }
    let mut row = None;
    for &id in &order {
        let v = &w.vertices[id];
        if row != Some(v.coord.0) {
            if row.is_some() {
                out.push_str(" }\n");
            }
            out.push_str("  { rank=same;");
            row = Some(v.coord.0);
        }
        out.push_str(&format!(" v{id};"));
    }
    if row.is_some() {
        out.push_str(" }\n");
    }

    let mut edges = w.edges.clone();
    edges.sort_by_key(|e| (pos[e.src], pos[e.dst]));
    for e in &edges {
        if e.valuation == (1, 1) {
            out.push_str(&format!("  v{} -> v{};\n", e.src, e.dst));
        } else {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"({},{})\"];\n",
                e.src, e.dst, e.valuation.0, e.valuation.1
            ));
        }
    }
    let mut taus = w.tau_edges.clone();
    taus.sort_by_key(|&(a, b)| (pos[a], pos[b]));
    for (a, b) in &taus {
        out.push_str(&format!("  v{a} -> v{b} [style=dashed];\n"));
    }
    out.push_str("}\n");
    out
}

/// Serializes a window to pretty JSON. The output is deterministic: struct
/// fields serialize in declaration order and all collections are kept in
/// their (deterministic) construction order.
pub fn emit_json(w: &ComponentWindow) -> String {
    serde_json::to_string_pretty(w).expect("component windows always serialize")
}

/// Inverse of [`emit_json`].
pub fn parse_json(s: &str) -> Result<ComponentWindow, Error> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("component window JSON: {e}")))
}
