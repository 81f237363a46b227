//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string; the plain-Rust versions below are what the native tests exercise.

use gpot_core::graph::ColoredGraph;
use gpot_core::mutation::mutate;
use gpot_core::period::{periods_of_graph, Method};
use gpot_core::potential::graph_potential;
use gpot_core::tqft::KernelMatrix;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn named_graph(name: &str, c1: u8, c2: u8) -> Result<ColoredGraph, String> {
    let colors = [c1 & 1, c2 & 1];
    match name {
        "theta" => Ok(ColoredGraph::theta(colors)),
        "dumbbell" => Ok(ColoredGraph::dumbbell(colors)),
        _ => Err(format!("unknown graph `{name}`")),
    }
}

fn graph_value(g: &ColoredGraph) -> Value {
    serde_json::from_str(&g.to_json()).expect("graph JSON parses")
}

/// Potential of a named two-vertex graph, and optionally the graph and
/// potential after the elementary transformation at `edge`.
pub fn potential_report(name: &str, c1: u8, c2: u8, edge: &str) -> Result<Value, String> {
    let g = named_graph(name, c1, c2)?;
    let b = graph_potential(&g).map_err(|e| e.to_string())?;
    let mut out = json!({
        "graph": graph_value(&g),
        "potential": b.potential.to_string(),
        "terms": b.potential.num_terms(),
    });
    if !edge.is_empty() {
        let (b2, cert) = mutate(&b, edge).map_err(|e| e.to_string())?;
        out["mutated"] = json!({
            "graph": graph_value(&b2.graph),
            "potential": b2.potential.to_string(),
            "mu": cert.mu.to_string(),
            "nu": cert.nu.to_string(),
            "mu_prime": cert.mu_prime.to_string(),
            "nu_prime": cert.nu_prime.to_string(),
            "substitution": format!("{} -> {}", cert.edge, cert.substitution),
        });
    }
    Ok(out)
}

/// Brute force against the trace formula on a closed necklace of each
/// genus in `2..=genus_max`, both parities.
pub fn period_comparison(genus_max: usize, order: usize) -> Result<Value, String> {
    let mut rows = Vec::new();
    for genus in 2..=genus_max {
        for parity in [0u8, 1] {
            let g = ColoredGraph::closed_necklace(genus, parity).map_err(|e| e.to_string())?;
            let run = |m| periods_of_graph(&g, order, m).map_err(|e| e.to_string());
            let (b, t) = (run(Method::Brute)?, run(Method::Tqft)?);
            let strs = |v: &[num_bigint::BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            rows.push(json!({
                "class": format!("g{genus}e{parity}"),
                "brute": strs(&b.pi),
                "tqft": strs(&t.pi),
                "agree": b.pi == t.pi,
            }));
        }
    }
    Ok(Value::Array(rows))
}

/// Coefficient of `t^k` in every entry of the one-bead kernel truncated at
/// `order`, as a row-major grid indexed by `i, j = -order..=order`.
pub fn kernel_grid(order: usize, k: usize) -> Result<Value, String> {
    if k > order {
        return Err(format!("k = {k} exceeds the order {order}"));
    }
    let a = KernelMatrix::t1_kernel(order);
    let n = order as i64;
    let grid: Vec<Vec<f64>> = (-n..=n)
        .map(|i| {
            (-n..=n)
                .map(|j| a.coeff(i, j, k).to_f64().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    Ok(json!({ "order": order, "k": k, "grid": grid }))
}

fn export(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = potentialReport)]
pub fn potential_report_js(name: &str, c1: u8, c2: u8, edge: &str) -> Result<String, JsError> {
    export(potential_report(name, c1, c2, edge))
}

#[wasm_bindgen(js_name = periodComparison)]
pub fn period_comparison_js(genus_max: usize, order: usize) -> Result<String, JsError> {
    // brute force grows fast; keep the page responsive
    if genus_max > 3 || order > 12 {
        return Err(JsError::new("demo limits: genus at most 3, order at most 12"));
    }
    export(period_comparison(genus_max, order))
}

#[wasm_bindgen(js_name = kernelGrid)]
pub fn kernel_grid_js(order: usize, k: usize) -> Result<String, JsError> {
    if order > 24 {
        return Err(JsError::new("demo limit: order at most 24"));
    }
    export(kernel_grid(order, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_mutates_to_dumbbell() {
        let v = potential_report("theta", 0, 1, "b").unwrap();
        assert_eq!(v["terms"], 8);
        let m = &v["mutated"];
        assert!(m["graph"]["edges"]
            .as_array()
            .unwrap()
            .iter()
            .any(|e| e["ends"][0] == e["ends"][1]));
    }

    #[test]
    fn dumbbell_potential_without_mutation() {
        let v = potential_report("dumbbell", 0, 0, "").unwrap();
        assert_eq!(v["potential"], "4*a^-1 + a*b^-2 + a*c^-2 + a*c^2 + a*b^2");
        assert!(v.get("mutated").is_none());
        assert!(potential_report("dumbbell", 0, 0, "b").is_err());
        assert!(potential_report("cube", 0, 0, "").is_err());
    }

    #[test]
    fn methods_agree_in_the_table() {
        let rows = period_comparison(3, 6).unwrap();
        let rows = rows.as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r["agree"] == true));
        assert_eq!(rows[1]["tqft"][4], "216");
    }

    #[test]
    fn kernel_grid_shape() {
        let v = kernel_grid(3, 0).unwrap();
        let grid = v["grid"].as_array().unwrap();
        assert_eq!(grid.len(), 7);
        // t^0 part is the identity at the center
        assert_eq!(grid[3][3], 1.0);
        assert_eq!(grid[0][0], 0.0);
        assert!(kernel_grid(3, 4).is_err());
    }
}
