use super::{ColoredGraph, Orientation, Slot};
use crate::error::{Error, Result};

/// The elementary transformation (flop) of a colored trivalent graph at a
/// non-loop internal edge `x` with endpoints `v1 = ends[0]`, `v2 = ends[1]`.
///
/// The two other slots at `v1`, sorted by (id, end), are `(a, b)`; those at
/// `v2` are `(c, d)`. The result has `a, c` at `v1` and `b, d` at `v2`.
/// Colors, ids and the edge `x` itself are unchanged. A leaf that moves
/// between endpoints of different colors has its orientation reversed, so
/// that it still enters the potential through the same monomial.
pub fn elementary_transformation(g: &ColoredGraph, edge: &str) -> Result<ColoredGraph> {
    let sides = edge_sides(g, edge)?;
    let (v1, v2) = (&sides.v1, &sides.v2);
    let recolor = g.color_of(v1) != g.color_of(v2);
    let mut out = g.clone();
    move_slot(&mut out, &sides.at1[1], v2, recolor);
    move_slot(&mut out, &sides.at2[0], v1, recolor);
    Ok(out)
}

/// The neighbourhood of a non-loop edge: its endpoints `v1 = ends[0]`,
/// `v2 = ends[1]` and the two other slots at each, sorted by (id, end).
#[derive(Clone, Debug)]
pub struct EdgeSides {
    pub edge_index: usize,
    pub v1: String,
    pub v2: String,
    pub at1: [Slot; 2],
    pub at2: [Slot; 2],
}

pub fn edge_sides(g: &ColoredGraph, edge: &str) -> Result<EdgeSides> {
    let xi = g
        .edge_index(edge)
        .ok_or_else(|| Error::UnknownEdge(edge.to_string()))?;
    let x = &g.edges[xi];
    if x.is_loop() {
        return Err(Error::LoopEdge(edge.to_string()));
    }
    let (v1, v2) = (x.ends[0].clone(), x.ends[1].clone());
    let others = |v: &str, end: usize| -> Result<Vec<Slot>> {
        let s: Vec<Slot> = g
            .slots(v)
            .into_iter()
            .filter(|s| *s != Slot::Edge(xi, end))
            .collect();
        if s.len() != 2 {
            return Err(Error::InvalidGraph(vec![format!(
                "vertex `{v}` has degree {} ≠ 3",
                s.len() + 1
            )]));
        }
        Ok(s)
    };
    let pair = |s: Vec<Slot>| -> [Slot; 2] { [s[0].clone(), s[1].clone()] };
    let at1 = pair(others(&v1, 0)?);
    let at2 = pair(others(&v2, 1)?);
    Ok(EdgeSides {
        edge_index: xi,
        v1,
        v2,
        at1,
        at2,
    })
}

fn move_slot(g: &mut ColoredGraph, s: &Slot, to: &str, recolor: bool) {
    match s {
        Slot::Edge(e, end) => g.edges[*e].ends[*end] = to.to_string(),
        Slot::Leaf(l) => {
            let leaf = &mut g.leaves[*l];
            leaf.vertex = to.to_string();
            if recolor {
                leaf.orientation = match leaf.orientation {
                    Orientation::In => Orientation::Out,
                    Orientation::Out => Orientation::In,
                };
            }
        }
    }
}
