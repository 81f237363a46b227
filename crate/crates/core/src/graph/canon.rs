use std::collections::BTreeMap;

use itertools::Itertools;

use super::{ColoredGraph, Edge, Orientation, Vertex};
use crate::error::{Error, Result};

const MAX_CANON_VERTICES: usize = 9;

/// Isomorphism invariant that determines a graph up to relabelling:
/// colors, sorted edge endpoints and per-vertex leaf orientations under the
/// lexicographically least vertex ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub colors: Vec<u8>,
    pub edges: Vec<(usize, usize)>,
    pub leaves: Vec<Vec<Orientation>>,
}

struct Skeleton {
    colors: Vec<u8>,
    edges: Vec<(usize, usize)>,
    leaves: Vec<(usize, Orientation)>,
}

impl Skeleton {
    fn of(g: &ColoredGraph) -> Result<Self> {
        let idx = |v: &str| {
            g.vertex_index(v)
                .ok_or_else(|| Error::Structural(format!("unknown vertex `{v}`")))
        };
        Ok(Skeleton {
            colors: g.vertices.iter().map(|v| v.color).collect(),
            edges: g
                .edges
                .iter()
                .map(|e| Ok((idx(&e.ends[0])?, idx(&e.ends[1])?)))
                .collect::<Result<_>>()?,
            leaves: g
                .leaves
                .iter()
                .map(|l| Ok((idx(&l.vertex)?, l.orientation)))
                .collect::<Result<_>>()?,
        })
    }

    fn key_under(&self, perm: &[usize], with_colors: bool) -> CanonicalKey {
        let n = self.colors.len();
        let mut colors = vec![0; n];
        if with_colors {
            for (i, &c) in self.colors.iter().enumerate() {
                colors[perm[i]] = c;
            }
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        let mut leaves = vec![Vec::new(); n];
        for &(v, o) in &self.leaves {
            leaves[perm[v]].push(o);
        }
        for l in &mut leaves {
            l.sort_unstable();
        }
        CanonicalKey {
            colors,
            edges,
            leaves,
        }
    }

    fn canonical(&self, with_colors: bool) -> Result<CanonicalKey> {
        let n = self.colors.len();
        if n > MAX_CANON_VERTICES {
            return Err(Error::Unsupported(format!(
                "canonical form of a graph with {n} vertices (limit {MAX_CANON_VERTICES})"
            )));
        }
        Ok((0..n)
            .permutations(n)
            .map(|p| self.key_under(&p, with_colors))
            .min()
            .unwrap_or(CanonicalKey {
                colors: vec![],
                edges: vec![],
                leaves: vec![],
            }))
    }
}

/// Canonical form by exhaustive search over vertex orderings. With
/// `with_colors = false` the coloring is ignored.
pub fn canonical_key(g: &ColoredGraph, with_colors: bool) -> Result<CanonicalKey> {
    Skeleton::of(g)?.canonical(with_colors)
}

/// Isomorphism of colored graphs with leaves (ids are ignored).
pub fn is_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> Result<bool> {
    if a.vertices.len() != b.vertices.len() || a.edges.len() != b.edges.len() {
        return Ok(false);
    }
    Ok(canonical_key(a, true)? == canonical_key(b, true)?)
}

/// All connected closed trivalent multigraphs of genus 2 or 3 up to
/// isomorphism, uncolored, with vertices `1..` and edges `a, b, ...`.
pub fn enumerate_trivalent(genus: usize) -> Result<Vec<ColoredGraph>> {
    if !(2..=3).contains(&genus) {
        return Err(Error::Unsupported(format!(
            "enumeration is implemented for genus 2 and 3, not {genus}"
        )));
    }
    let n = 2 * genus - 2;
    let mut found: BTreeMap<CanonicalKey, ()> = BTreeMap::new();
    let mut paired = vec![false; 3 * n];
    let mut pairs = Vec::new();
    match_stubs(&mut paired, &mut pairs, &mut |pairs| {
        let skel = Skeleton {
            colors: vec![0; n],
            edges: pairs.iter().map(|&(s, t)| (s / 3, t / 3)).collect(),
            leaves: vec![],
        };
        let g = from_key(&skel.key_under(&(0..n).collect::<Vec<_>>(), false));
        if g.is_connected() {
            found.insert(skel.canonical(false)?, ());
        }
        Ok(())
    })?;
    Ok(found.keys().map(from_key).collect())
}

type StubVisitor<'a> = dyn FnMut(&[(usize, usize)]) -> Result<()> + 'a;

fn match_stubs(
    paired: &mut [bool],
    pairs: &mut Vec<(usize, usize)>,
    visit: &mut StubVisitor<'_>,
) -> Result<()> {
    let Some(first) = paired.iter().position(|p| !p) else {
        return visit(pairs);
    };
    paired[first] = true;
    for other in first + 1..paired.len() {
        if paired[other] {
            continue;
        }
        paired[other] = true;
        pairs.push((first, other));
        match_stubs(paired, pairs, visit)?;
        pairs.pop();
        paired[other] = false;
    }
    paired[first] = false;
    Ok(())
}

fn edge_name(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("e{i}")
    }
}

fn from_key(k: &CanonicalKey) -> ColoredGraph {
    let name = |v: usize| format!("{}", v + 1);
    ColoredGraph {
        vertices: k
            .colors
            .iter()
            .enumerate()
            .map(|(i, &c)| Vertex { id: name(i), color: c })
            .collect(),
        edges: k
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| Edge {
                id: edge_name(i),
                ends: [name(u), name(v)],
            })
            .collect(),
        leaves: vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_has_two_graphs() {
        let gs = enumerate_trivalent(2).unwrap();
        assert_eq!(gs.len(), 2);
        for g in &gs {
            assert!(g.validate().is_empty());
        }
    }

    #[test]
    fn genus_three_has_five_graphs() {
        let gs = enumerate_trivalent(3).unwrap();
        assert_eq!(gs.len(), 5);
        for g in &gs {
            assert!(g.validate().is_empty());
            assert_eq!(g.genus(), 3);
        }
        let loops: Vec<usize> = gs
            .iter()
            .map(|g| g.edges.iter().filter(|e| e.is_loop()).count())
            .sorted()
            .collect();
        assert_eq!(loops, [0, 0, 1, 2, 3]);
    }

    #[test]
    fn colors_distinguish() {
        let a = ColoredGraph::theta([0, 1]);
        let b = ColoredGraph::theta([1, 0]);
        let c = ColoredGraph::theta([0, 0]);
        assert!(is_isomorphic(&a, &b).unwrap());
        assert!(!is_isomorphic(&a, &c).unwrap());
        assert_eq!(canonical_key(&a, false).unwrap(), canonical_key(&c, false).unwrap());
    }

    #[test]
    fn other_genus_unsupported() {
        assert!(matches!(enumerate_trivalent(4), Err(Error::Unsupported(_))));
    }
}
