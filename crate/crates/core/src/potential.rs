//! Vertex and graph potentials, the quadrivalent contraction potential, the
//! Grassmannian degeneration and exponent support.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{Exponent, LaurentPoly, VarList};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Orientation, Slot};

/// A graph together with its potential and the per-vertex summands.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialBundle {
    pub graph: ColoredGraph,
    pub potential: LaurentPoly,
    pub per_vertex: BTreeMap<String, LaurentPoly>,
}

impl PotentialBundle {
    pub fn vars(&self) -> &VarList {
        self.potential.vars()
    }
}

/// `sum x_i^{s_i} x_j^{s_j} x_k^{s_k}` over sign vectors with an even
/// (parity 0) or odd (parity 1) number of minus signs.
///
/// Repeated names (loops) add exponents.
pub fn vertex_potential(vars: &VarList, slots: [&str; 3], parity: u8) -> Result<LaurentPoly> {
    vertex_potential_signed(vars, [(slots[0], 1), (slots[1], 1), (slots[2], 1)], parity)
}

/// As [`vertex_potential`], with each slot variable raised to `±1` first.
pub fn vertex_potential_signed(
    vars: &VarList,
    slots: [(&str, i32); 3],
    parity: u8,
) -> Result<LaurentPoly> {
    let idx: Vec<(usize, i32)> = slots
        .iter()
        .map(|&(n, s)| Ok((vars.require(n)?, s)))
        .collect::<Result<_>>()?;
    let mut terms = Vec::with_capacity(4);
    for mask in 0u8..8 {
        if mask.count_ones() % 2 != u32::from(parity % 2) {
            continue;
        }
        let mut e = vec![0i32; vars.len()];
        for (bit, &(i, s)) in idx.iter().enumerate() {
            let sign = if mask >> bit & 1 == 1 { -1 } else { 1 };
            e[i] += sign * s;
        }
        terms.push((e, BigRational::one()));
    }
    LaurentPoly::from_terms(vars, terms)
}

fn default_orientation(color: u8) -> Orientation {
    if color == 0 {
        Orientation::Out
    } else {
        Orientation::In
    }
}

/// Exponent sign with which a slot variable enters the vertex potential:
/// internal edges enter plainly, a leaf is inverted when its stored
/// orientation differs from the default for the color of its vertex.
pub fn slot_sign(g: &ColoredGraph, slot: &Slot, color: u8) -> i32 {
    match slot {
        Slot::Edge(..) => 1,
        Slot::Leaf(l) if g.leaves[*l].orientation == default_orientation(color) => 1,
        Slot::Leaf(_) => -1,
    }
}

/// Variables of a graph: internal edge ids and leaf ids.
pub fn graph_vars(g: &ColoredGraph) -> VarList {
    VarList::new(g.internal_ids().into_iter().chain(g.leaf_ids()))
}

pub fn graph_potential(g: &ColoredGraph) -> Result<PotentialBundle> {
    g.check()?;
    let vars = graph_vars(g);
    let mut per_vertex = BTreeMap::new();
    let mut potential = LaurentPoly::zero(&vars);
    for v in &g.vertices {
        let slots = g.slots(&v.id);
        let signed: Vec<(&str, i32)> = slots
            .iter()
            .map(|s| (g.slot_id(s), slot_sign(g, s, v.color)))
            .collect();
        let w = vertex_potential_signed(&vars, [signed[0], signed[1], signed[2]], v.color)?;
        potential = potential.add(&w)?;
        per_vertex.insert(v.id.clone(), w);
    }
    Ok(PotentialBundle {
        graph: g.clone(),
        potential,
        per_vertex,
    })
}

/// Potential of the quadrivalent vertex obtained by contracting an edge:
/// `z + mu*nu / z`, where `mu*nu` is the product identity of the two
/// trivalent vertices it replaced.
pub fn quadrivalent_potential(slots: [&str; 4], z: &str, parity: u8) -> Result<LaurentPoly> {
    if slots.contains(&z) {
        return Err(Error::Structural(format!(
            "contraction variable `{z}` collides with a slot variable"
        )));
    }
    let vars = VarList::new(slots.iter().copied().chain([z]));
    let v = |n: &str| LaurentPoly::var(&vars, n);
    let [a, b, c, d] = [v(slots[0])?, v(slots[1])?, v(slots[2])?, v(slots[3])?];
    let one = LaurentPoly::one(&vars);
    let abcd = a.mul(&b)?.mul(&c)?.mul(&d)?;
    let numerator = if parity.is_multiple_of(2) {
        a.mul(&b)?
            .add(&c.mul(&d)?)?
            .mul(&a.mul(&d)?.add(&b.mul(&c)?)?)?
            .mul(&a.mul(&c)?.add(&b.mul(&d)?)?)?
            .mul(&one.add(&abcd)?)?
    } else {
        a.add(&b.mul(&c)?.mul(&d)?)?
            .mul(&b.add(&a.mul(&c)?.mul(&d)?)?)?
            .mul(&c.add(&a.mul(&b)?.mul(&d)?)?)?
            .mul(&d.add(&a.mul(&b)?.mul(&c)?)?)?
    };
    let zv = v(z)?;
    numerator
        .mul(&abcd.monomial_pow(-2)?)?
        .mul(&zv.monomial_pow(-1)?)?
        .add(&zv)
}

/// Name of the degeneration parameter used by [`grassmannian_limit`].
pub const TAU: &str = "tau";

/// Degeneration of an uncolored tree potential: at each vertex the
/// distinguished slot variable becomes `tau/X` and the other two `Y/tau`;
/// the result is the `tau^0` part of `tau * W`. Variables keep their names.
pub fn grassmannian_limit(
    g: &ColoredGraph,
    distinguished: &BTreeMap<String, String>,
) -> Result<LaurentPoly> {
    let b = graph_potential(g)?;
    if !g.is_connected() || g.genus() != 0 {
        return Err(Error::Structural(format!(
            "the Grassmannian limit needs a connected tree, got genus {}",
            g.genus()
        )));
    }
    if let Some(v) = g.vertices.iter().find(|v| v.color != 0) {
        return Err(Error::Structural(format!("vertex `{}` is colored", v.id)));
    }
    if g.leaves.len() < 3 {
        return Err(Error::Structural("the Grassmannian limit needs at least 3 leaves".into()));
    }
    if b.vars().contains(TAU) {
        return Err(Error::Structural(format!("variable name `{TAU}` is reserved")));
    }
    let target = VarList::new(b.vars().names().iter().cloned().chain([TAU.to_string()]));
    let tau = LaurentPoly::var(&target, TAU)?;
    let tau_idx = target.require(TAU)?;
    let mut total = LaurentPoly::zero(&target);
    for v in &g.vertices {
        let d = distinguished
            .get(&v.id)
            .ok_or_else(|| Error::Structural(format!("vertex `{}` has no distinguished slot", v.id)))?;
        let incident: Vec<&str> = g.slots(&v.id).iter().map(|s| g.slot_id(s)).collect();
        if !incident.contains(&d.as_str()) {
            return Err(Error::Structural(format!(
                "`{d}` is not incident to vertex `{}`",
                v.id
            )));
        }
        let mut map = BTreeMap::new();
        for name in b.vars().names() {
            let x = LaurentPoly::var(&target, name)?;
            let image = if !incident.contains(&name.as_str()) {
                x
            } else if name == d {
                tau.mul(&x.monomial_pow(-1)?)?
            } else {
                x.mul(&tau.monomial_pow(-1)?)?
            };
            map.insert(name.clone(), image);
        }
        let w = b.per_vertex[&v.id].substitute_monomial(&map, &target)?.mul(&tau)?;
        if w.terms().keys().any(|e| e[tau_idx] < 0) {
            return Err(Error::Structural("negative tau power in the degeneration".into()));
        }
        total = total.add(&w.filter_terms(|e| e[tau_idx] == 0))?;
    }
    total.restrict(b.vars())
}

/// Exponent vectors with nonzero coefficient, in lexicographic order.
pub fn newton_support(p: &LaurentPoly) -> Vec<Exponent> {
    p.terms().keys().cloned().collect()
}
