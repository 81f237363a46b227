use num_rational::BigRational;

use super::kernel::{flip_exponent, KernelMatrix};
use crate::algebra::{factorial, LaurentPoly, TSeries, VarList};
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::period::{internal_constant_parts, BruteOptions};
use crate::potential::graph_potential;

/// A truncated series whose coefficients are Laurent polynomials in the
/// leaf variables of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryState {
    pub leaf_vars: VarList,
    pub order: usize,
    pub value: TSeries<LaurentPoly>,
}

impl BoundaryState {
    pub fn new(value: TSeries<LaurentPoly>) -> Self {
        BoundaryState {
            leaf_vars: value.vars().clone(),
            order: value.order(),
            value,
        }
    }

    /// The scalar series of a state without leaves.
    pub fn scalar(&self) -> Option<TSeries<BigRational>> {
        if !self.leaf_vars.is_empty() {
            return None;
        }
        self.value.map(|c| Ok(c.constant_term())).ok()
    }
}

/// `[exp(t W)]` with every internal edge variable integrated out (constant
/// term), leaving the leaf variables. Exponential in the graph size.
pub fn k_state(g: &ColoredGraph, order: usize) -> Result<BoundaryState> {
    k_state_with(g, order, BruteOptions::default())
}

pub fn k_state_with(g: &ColoredGraph, order: usize, opts: BruteOptions) -> Result<BoundaryState> {
    let b = graph_potential(g)?;
    let internal: Vec<bool> = b
        .vars()
        .names()
        .iter()
        .map(|n| g.edge_index(n).is_some())
        .collect();
    let parts = internal_constant_parts(&b.potential, &internal, order, opts)?;
    let leaf_vars = VarList::new(g.leaf_ids());
    let coeffs = parts
        .into_iter()
        .enumerate()
        .map(|(k, part)| {
            let f = factorial(k);
            LaurentPoly::from_terms(
                &leaf_vars,
                part.into_iter().map(|(e, c)| (e, BigRational::new(c, f.clone()))),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryState {
        leaf_vars,
        order,
        value: TSeries::from_coeffs(coeffs)?,
    })
}

/// Joins two leaves into an internal edge: both variables become one
/// variable `z` and the constant term in `z` is kept.
pub fn glue(s: &BoundaryState, leaf_a: &str, leaf_b: &str) -> Result<BoundaryState> {
    if leaf_a == leaf_b {
        return Err(Error::Structural("cannot glue a leaf to itself".into()));
    }
    let ia = s
        .leaf_vars
        .index_of(leaf_a)
        .ok_or_else(|| Error::UnknownLeaf(leaf_a.to_string()))?;
    let ib = s
        .leaf_vars
        .index_of(leaf_b)
        .ok_or_else(|| Error::UnknownLeaf(leaf_b.to_string()))?;
    let rest = s.leaf_vars.without(leaf_a).without(leaf_b);
    let value = s.value.map(|c| {
        LaurentPoly::from_terms(
            &rest,
            c.terms()
                .iter()
                .filter(|(e, _)| e[ia] + e[ib] == 0)
                .map(|(e, v)| {
                    let kept = e
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != ia && *i != ib)
                        .map(|(_, a)| *a)
                        .collect();
                    (kept, v.clone())
                }),
        )
    })?;
    Ok(BoundaryState {
        leaf_vars: rest,
        order: s.order,
        value,
    })
}

/// State of the open necklace with `genus` beads and leaves `x`, `y`:
/// the kernel `A^g S^e`, `e = (g - 1 + parity) mod 2`, read as
/// `sum M(i,j) x^i y^j`.
pub fn necklace_state(genus: usize, parity: u8, order: usize) -> Result<BoundaryState> {
    if genus == 0 {
        return Err(Error::Unsupported("a necklace needs at least one bead".into()));
    }
    let mut m = KernelMatrix::t1_kernel(order).pow(genus as u32);
    if flip_exponent(genus, parity) == 1 {
        m = m.flip_cols();
    }
    Ok(BoundaryState::new(m.to_series("x", "y")?))
}
