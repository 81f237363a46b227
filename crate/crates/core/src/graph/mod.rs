//! Colored trivalent multigraphs with loops and oriented leaves.

mod canon;
mod coloring;
mod homology;
mod transform;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_key, enumerate_trivalent, is_isomorphic, CanonicalKey};
pub use coloring::{coloring_boundary_move, normalize_coloring};
pub use homology::homology_ranks_f2;
pub use transform::{edge_sides, elementary_transformation, EdgeSides};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub color: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub ends: [String; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Out,
    In,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leaf {
    pub id: String,
    pub vertex: String,
    pub orientation: Orientation,
}

/// A trivalent multigraph with an F2-valued vertex coloring.
///
/// Internal edge ids and leaf ids share one namespace; they name the
/// variables of the graph potential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub leaves: Vec<Leaf>,
}

/// One incidence of an edge or leaf at a vertex. A loop gives two slots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    /// `(edge index, end index)`
    Edge(usize, usize),
    Leaf(usize),
}

/// Weights on internal edges, keyed by edge id.
pub type EdgeWeightVector = BTreeMap<String, BigRational>;

impl ColoredGraph {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Structural(format!("graph JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    /// Theta graph: vertices `1`, `2` joined by edges `a`, `b`, `c`.
    pub fn theta(colors: [u8; 2]) -> Self {
        ColoredGraph {
            vertices: vec![vertex("1", colors[0]), vertex("2", colors[1])],
            edges: vec![edge("a", "1", "2"), edge("b", "1", "2"), edge("c", "1", "2")],
            leaves: vec![],
        }
    }

    /// Dumbbell graph: loop `b` at `1`, bridge `a`, loop `c` at `2`.
    pub fn dumbbell(colors: [u8; 2]) -> Self {
        ColoredGraph {
            vertices: vec![vertex("1", colors[0]), vertex("2", colors[1])],
            edges: vec![edge("a", "1", "2"), edge("b", "1", "1"), edge("c", "2", "2")],
            leaves: vec![],
        }
    }

    /// Open necklace with `beads` beads and leaves `x` (first vertex) and `y`
    /// (last vertex). Bead `k` is a pair of vertices joined by two parallel
    /// edges; consecutive beads are joined by a bridge. Leaf orientations are
    /// the default for the color of their vertex.
    pub fn open_necklace(colors: &[u8]) -> Result<Self> {
        if colors.is_empty() || !colors.len().is_multiple_of(2) {
            return Err(Error::Structural(
                "an open necklace needs an even, nonzero number of vertex colors".into(),
            ));
        }
        let n = colors.len();
        let vertices: Vec<Vertex> = colors
            .iter()
            .enumerate()
            .map(|(i, &c)| vertex(&format!("{}", i + 1), c))
            .collect();
        let mut edges = Vec::new();
        for k in 0..n / 2 {
            let (u, w) = (format!("{}", 2 * k + 1), format!("{}", 2 * k + 2));
            edges.push(edge(&format!("p{}", k + 1), &u, &w));
            edges.push(edge(&format!("q{}", k + 1), &u, &w));
            if 2 * k + 3 <= n {
                edges.push(edge(&format!("r{}", k + 1), &w, &format!("{}", 2 * k + 3)));
            }
        }
        let default = |c: u8| if c == 0 { Orientation::Out } else { Orientation::In };
        let leaves = vec![
            Leaf {
                id: "x".into(),
                vertex: "1".into(),
                orientation: default(colors[0]),
            },
            Leaf {
                id: "y".into(),
                vertex: format!("{n}"),
                orientation: default(colors[n - 1]),
            },
        ];
        Ok(ColoredGraph {
            vertices,
            edges,
            leaves,
        })
    }

    /// Closed necklace of genus `genus`: `genus - 1` beads in a ring, with
    /// only vertex `1` colored when `parity` is 1.
    pub fn closed_necklace(genus: usize, parity: u8) -> Result<Self> {
        if genus < 2 {
            return Err(Error::Unsupported("a closed necklace needs genus at least 2".into()));
        }
        let mut colors = vec![0; 2 * (genus - 1)];
        colors[0] = parity & 1;
        let mut g = Self::open_necklace(&colors)?;
        let last = format!("{}", colors.len());
        g.leaves.clear();
        g.edges.push(edge(&format!("r{}", genus - 1), &last, "1"));
        Ok(g)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn leaf_index(&self, id: &str) -> Option<usize> {
        self.leaves.iter().position(|l| l.id == id)
    }

    pub fn color_of(&self, id: &str) -> Option<u8> {
        self.vertices.iter().find(|v| v.id == id).map(|v| v.color)
    }

    /// Sum of colors mod 2.
    pub fn parity(&self) -> u8 {
        self.vertices.iter().map(|v| v.color & 1).sum::<u8>() % 2
    }

    /// Slots incident to vertex `id`, sorted by (edge or leaf id, end).
    pub fn slots(&self, id: &str) -> Vec<Slot> {
        let mut out: Vec<Slot> = Vec::new();
        for (ei, e) in self.edges.iter().enumerate() {
            for end in 0..2 {
                if e.ends[end] == id {
                    out.push(Slot::Edge(ei, end));
                }
            }
        }
        for (li, l) in self.leaves.iter().enumerate() {
            if l.vertex == id {
                out.push(Slot::Leaf(li));
            }
        }
        out.sort_by(|a, b| self.slot_key(a).cmp(&self.slot_key(b)));
        out
    }

    pub fn slot_id(&self, s: &Slot) -> &str {
        match s {
            Slot::Edge(e, _) => &self.edges[*e].id,
            Slot::Leaf(l) => &self.leaves[*l].id,
        }
    }

    fn slot_key<'a>(&'a self, s: &Slot) -> (&'a str, usize) {
        match s {
            Slot::Edge(e, end) => (&self.edges[*e].id, *end),
            Slot::Leaf(l) => (&self.leaves[*l].id, 0),
        }
    }

    pub fn internal_ids(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    pub fn leaf_ids(&self) -> Vec<String> {
        self.leaves.iter().map(|l| l.id.clone()).collect()
    }

    /// Connected components (by internal edges) as lists of vertex indices,
    /// each sorted; components ordered by their least index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let idx: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (idx.get(e.ends[0].as_str()), idx.get(e.ends[1].as_str()))
            {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// First Betti number: `#E_int - #V + #components`.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + self.components().len() as i64
    }

    /// Structural diagnostics; empty when the graph is a well-formed
    /// trivalent graph.
    pub fn validate(&self) -> Vec<String> {
        let mut diag = Vec::new();
        let mut vids = BTreeSet::new();
        for v in &self.vertices {
            if !vids.insert(v.id.as_str()) {
                diag.push(format!("duplicate vertex id `{}`", v.id));
            }
            if v.color > 1 {
                diag.push(format!("vertex `{}` has color {} (expected 0 or 1)", v.id, v.color));
            }
        }
        let mut names = BTreeSet::new();
        for id in self.edges.iter().map(|e| &e.id).chain(self.leaves.iter().map(|l| &l.id)) {
            if !names.insert(id.as_str()) {
                diag.push(format!("duplicate edge/leaf id `{id}`"));
            }
        }
        let mut degree: BTreeMap<&str, usize> = vids.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            for end in &e.ends {
                match degree.get_mut(end.as_str()) {
                    Some(d) => *d += 1,
                    None => diag.push(format!("edge `{}` refers to unknown vertex `{end}`", e.id)),
                }
            }
        }
        for l in &self.leaves {
            match degree.get_mut(l.vertex.as_str()) {
                Some(d) => *d += 1,
                None => diag.push(format!(
                    "leaf `{}` refers to unknown vertex `{}`",
                    l.id, l.vertex
                )),
            }
        }
        for (v, d) in &degree {
            if *d != 3 {
                diag.push(format!("vertex `{v}` has degree {d} ≠ 3"));
            }
        }
        if diag.is_empty() {
            let g = self.genus();
            let c = self.components().len() as i64;
            let n = self.leaves.len() as i64;
            let nv = self.vertices.len() as i64;
            let ne = self.edges.len() as i64;
            if nv != 2 * g - 2 * c + n {
                diag.push(format!("#V = {nv} but 2g-2+n = {} (genus {g})", 2 * g - 2 * c + n));
            }
            if ne != 3 * g - 3 * c + n {
                diag.push(format!("#E = {ne} but 3g-3+n = {} (genus {g})", 3 * g - 3 * c + n));
            }
        }
        diag
    }

    pub fn check(&self) -> Result<()> {
        let d = self.validate();
        if d.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(d))
        }
    }
}

fn vertex(id: &str, color: u8) -> Vertex {
    Vertex {
        id: id.into(),
        color,
    }
}

fn edge(id: &str, u: &str, w: &str) -> Edge {
    Edge {
        id: id.into(),
        ends: [u.into(), w.into()],
    }
}

/// Membership in the dual lattice: every weight lies in ½ℤ and the three
/// weights at each vertex sum to an integer (a loop counts twice). Missing
/// weights count as zero; leaves carry no weight.
pub fn mgamma_member(g: &ColoredGraph, w: &EdgeWeightVector) -> bool {
    let two = BigRational::from_integer(2.into());
    let weight = |id: &str| w.get(id).cloned().unwrap_or_else(BigRational::zero);
    if w.values().any(|x| !(x * &two).is_integer()) {
        return false;
    }
    g.vertices.iter().all(|v| {
        let sum = g
            .slots(&v.id)
            .iter()
            .filter_map(|s| match s {
                Slot::Edge(e, _) => Some(weight(&g.edges[*e].id)),
                Slot::Leaf(_) => None,
            })
            .fold(BigRational::zero(), |a, b| a + b);
        sum.is_integer()
    })
}
