use std::collections::VecDeque;

use super::ColoredGraph;
use crate::error::{Error, Result};

/// Adds the boundary of an internal edge to the coloring: both endpoints flip.
/// On a loop the single endpoint flips twice, so nothing changes.
pub fn coloring_boundary_move(g: &ColoredGraph, edge: &str) -> Result<ColoredGraph> {
    let e = g
        .edges
        .iter()
        .find(|e| e.id == edge)
        .ok_or_else(|| Error::UnknownEdge(edge.to_string()))?;
    let mut out = g.clone();
    for end in &e.ends {
        let v = out
            .vertices
            .iter_mut()
            .find(|v| &v.id == end)
            .ok_or_else(|| Error::Structural(format!("unknown vertex `{end}`")))?;
        v.color ^= 1;
    }
    Ok(out)
}

/// Moves every color toward the lexicographically least vertex of its
/// component along a BFS spanning tree. Each component ends with at most one
/// colored vertex. Returns the normalized graph and the edges used, in order.
pub fn normalize_coloring(g: &ColoredGraph) -> Result<(ColoredGraph, Vec<String>)> {
    let mut cur = g.clone();
    let mut moves = Vec::new();
    for comp in g.components() {
        let root = *comp
            .iter()
            .min_by(|&&a, &&b| g.vertices[a].id.cmp(&g.vertices[b].id))
            .expect("components are nonempty");
        // BFS order with parent edges
        let n = g.vertices.len();
        let mut parent_edge: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        let mut edge_order: Vec<usize> = (0..g.edges.len()).collect();
        edge_order.sort_by(|&a, &b| g.edges[a].id.cmp(&g.edges[b].id));
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let vid = &g.vertices[v].id;
            for &ei in &edge_order {
                let e = &g.edges[ei];
                if e.is_loop() {
                    continue;
                }
                let other = if &e.ends[0] == vid {
                    &e.ends[1]
                } else if &e.ends[1] == vid {
                    &e.ends[0]
                } else {
                    continue;
                };
                let oi = g.vertex_index(other).expect("validated endpoint");
                if !seen[oi] {
                    seen[oi] = true;
                    parent_edge[oi] = Some(ei);
                    queue.push_back(oi);
                }
            }
        }
        for &v in order.iter().rev() {
            if let Some(ei) = parent_edge[v] {
                if cur.vertices[v].color == 1 {
                    let id = g.edges[ei].id.clone();
                    cur = coloring_boundary_move(&cur, &id)?;
                    moves.push(id);
                }
            }
        }
    }
    Ok((cur, moves))
}
