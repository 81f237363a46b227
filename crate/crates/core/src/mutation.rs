//! Mutation of graph potentials along elementary transformations.
//!
//! At a non-loop edge `x` the two endpoint potentials combine to
//! `mu/x + nu*x`. After the transformation they combine to `mu'/x + nu'*x`
//! with `mu*nu = mu'*nu'`, so `x -> mu'/(nu*x)` carries one to the other
//! while leaving every other vertex potential untouched.

use std::fmt;

use serde::Serialize;

use crate::algebra::{substitute, LaurentPoly, RationalExpr};
use crate::error::{Error, Result};
use crate::graph::{edge_sides, elementary_transformation, ColoredGraph, Slot};
use crate::potential::{graph_potential, slot_sign, PotentialBundle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MutationCase {
    /// endpoint colors differ
    Colored,
    /// endpoint colors agree
    Uncolored,
}

impl fmt::Display for MutationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MutationCase::Colored => "colored",
            MutationCase::Uncolored => "uncolored",
        })
    }
}

/// Everything needed to check one mutation independently.
#[derive(Clone, Debug)]
pub struct MutationCertificate {
    pub edge: String,
    pub case: MutationCase,
    /// slot monomials `a, b` at `v1` and `c, d` at `v2`, rendered
    pub slots: [String; 4],
    pub mu: LaurentPoly,
    pub nu: LaurentPoly,
    pub mu_prime: LaurentPoly,
    pub nu_prime: LaurentPoly,
    /// `x -> mu' / (nu * x)`
    pub substitution: RationalExpr,
    pub product_identity_checked: bool,
}

impl MutationCertificate {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "edge": self.edge,
            "case": self.case,
            "slots": self.slots,
            "mu": self.mu.to_json_value(),
            "nu": self.nu.to_json_value(),
            "mu_prime": self.mu_prime.to_json_value(),
            "nu_prime": self.nu_prime.to_json_value(),
            "substitution": {
                "numerator": self.substitution.numerator().to_json_value(),
                "denominator": self.substitution.denominator().to_json_value(),
                "text": self.substitution.to_string(),
            },
            "product_identity_checked": self.product_identity_checked,
        })
    }
}

/// `(mut, frozen)`: the two endpoint potentials of `edge` and everything else.
pub fn split_potential(b: &PotentialBundle, edge: &str) -> Result<(LaurentPoly, LaurentPoly)> {
    let sides = edge_sides(&b.graph, edge)?;
    let mut mutated = LaurentPoly::zero(b.vars());
    let mut frozen = LaurentPoly::zero(b.vars());
    for (v, w) in &b.per_vertex {
        if *v == sides.v1 || *v == sides.v2 {
            mutated = mutated.add(w)?;
        } else {
            frozen = frozen.add(w)?;
        }
    }
    Ok((mutated, frozen))
}

fn slot_monomial(b: &PotentialBundle, s: &Slot, color: u8) -> Result<LaurentPoly> {
    LaurentPoly::var_pow(b.vars(), b.graph.slot_id(s), slot_sign(&b.graph, s, color))
}

/// `(mu, nu)` for endpoint colors `c1, c2` carrying slot monomials `(p1, q1)`
/// and `(p2, q2)`.
fn factors(
    c1: u8,
    [p1, q1]: [&LaurentPoly; 2],
    c2: u8,
    [p2, q2]: [&LaurentPoly; 2],
) -> Result<(LaurentPoly, LaurentPoly)> {
    let one = LaurentPoly::one(p1.vars());
    let all = p1.mul(q1)?.mul(p2)?.mul(q2)?;
    let inv = all.monomial_pow(-1)?;
    if c1 == c2 {
        let mu = p1
            .mul(q2)?
            .add(&q1.mul(p2)?)?
            .mul(&p1.mul(p2)?.add(&q1.mul(q2)?)?)?
            .mul(&inv)?;
        let nu = one
            .add(&all)?
            .mul(&p1.mul(q1)?.add(&p2.mul(q2)?)?)?
            .mul(&inv)?;
        return Ok(if c1 == 0 { (mu, nu) } else { (nu, mu) });
    }
    // p, q at the uncolored endpoint; r, s at the colored one
    let ((p, q), (r, s)) = if c1 == 0 { ((p1, q1), (p2, q2)) } else { ((p2, q2), (p1, q1)) };
    let mu = p
        .add(&q.mul(r)?.mul(s)?)?
        .mul(&q.add(&p.mul(r)?.mul(s)?)?)?
        .mul(&inv)?;
    let nu = r
        .add(&p.mul(q)?.mul(s)?)?
        .mul(&s.add(&p.mul(q)?.mul(r)?)?)?
        .mul(&inv)?;
    Ok((mu, nu))
}

pub fn mu_nu_factors(b: &PotentialBundle, edge: &str) -> Result<MutationCertificate> {
    let g = &b.graph;
    let sides = edge_sides(g, edge)?;
    let color = |v: &str| g.color_of(v).expect("endpoint exists");
    let (c1, c2) = (color(&sides.v1), color(&sides.v2));
    let [a, bb] = [
        slot_monomial(b, &sides.at1[0], c1)?,
        slot_monomial(b, &sides.at1[1], c1)?,
    ];
    let [c, d] = [
        slot_monomial(b, &sides.at2[0], c2)?,
        slot_monomial(b, &sides.at2[1], c2)?,
    ];
    let (mu, nu) = factors(c1, [&a, &bb], c2, [&c, &d])?;
    let (mu_prime, nu_prime) = factors(c1, [&a, &c], c2, [&bb, &d])?;
    let x = LaurentPoly::var(b.vars(), edge)?;
    let substitution = RationalExpr::new(mu_prime.clone(), nu.mul(&x)?)?;
    let product_identity_checked = mu.mul(&nu)? == mu_prime.mul(&nu_prime)?;
    Ok(MutationCertificate {
        edge: edge.to_string(),
        case: if c1 == c2 {
            MutationCase::Uncolored
        } else {
            MutationCase::Colored
        },
        slots: [a, bb, c, d].map(|m| m.to_string()),
        mu,
        nu,
        mu_prime,
        nu_prime,
        substitution,
        product_identity_checked,
    })
}

fn laurent_form(mu: &LaurentPoly, nu: &LaurentPoly, x: &LaurentPoly) -> Result<LaurentPoly> {
    mu.mul(&x.monomial_pow(-1)?)?.add(&nu.mul(x)?)
}

/// Checks a certificate against the bundle it claims to describe:
/// the mutated part is `mu/x + nu*x`, the transformed graph has mutated part
/// `mu'/x + nu'*x` and the same frozen part, the substitution carries one to
/// the other, and `mu*nu = mu'*nu'`.
pub fn check_certificate(b: &PotentialBundle, cert: &MutationCertificate) -> Result<bool> {
    let edge = cert.edge.as_str();
    let x = LaurentPoly::var(b.vars(), edge)?;
    let (mutated, frozen) = split_potential(b, edge)?;
    let before = laurent_form(&cert.mu, &cert.nu, &x)?;
    if mutated != before {
        return Ok(false);
    }
    let after = laurent_form(&cert.mu_prime, &cert.nu_prime, &x)?;
    let b2 = graph_potential(&elementary_transformation(&b.graph, edge)?)?;
    let (mutated2, frozen2) = split_potential(&b2, edge)?;
    if mutated2 != after || frozen2 != frozen {
        return Ok(false);
    }
    if cert.mu.mul(&cert.nu)? != cert.mu_prime.mul(&cert.nu_prime)? {
        return Ok(false);
    }
    substitute(&before, edge, &cert.substitution)?.equals(&RationalExpr::from_poly(after))
}

pub fn verify_mutation(b: &PotentialBundle, edge: &str) -> Result<bool> {
    let cert = mu_nu_factors(b, edge)?;
    Ok(cert.product_identity_checked && check_certificate(b, &cert)?)
}

/// The potential of the transformed graph together with a checked certificate.
pub fn mutate(b: &PotentialBundle, edge: &str) -> Result<(PotentialBundle, MutationCertificate)> {
    let cert = mu_nu_factors(b, edge)?;
    if !cert.product_identity_checked || !check_certificate(b, &cert)? {
        return Err(Error::Verification(format!("mutation at edge `{edge}`")));
    }
    let g2: ColoredGraph = elementary_transformation(&b.graph, edge)?;
    Ok((graph_potential(&g2)?, cert))
}
