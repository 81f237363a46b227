//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Variables are kept in a canonical sorted order fixed at construction, and
//! every exponent vector is a dense array in that order. Terms live in a
//! `BTreeMap`, so iteration (and therefore rendering) is lexicographic in the
//! exponent vector.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exponent = Vec<i32>;

/// An ordered, deduplicated list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarList(Arc<[String]>);

impl VarList {
    /// Builds the canonical (sorted, deduplicated) variable list.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = names.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        VarList(v.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Union of two variable lists.
    pub fn union(&self, other: &VarList) -> VarList {
        VarList::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    /// The list with `name` removed.
    pub fn without(&self, name: &str) -> VarList {
        VarList::new(self.0.iter().filter(|v| v.as_str() != name).cloned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: VarList,
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero(vars: &VarList) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarList) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &VarList, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The monomial `c * prod vars^exp`.
    pub fn monomial(vars: &VarList, exp: Exponent, c: BigRational) -> Result<Self> {
        if exp.len() != vars.len() {
            return Err(Error::Structural(format!(
                "exponent vector of length {} for {} variables",
                exp.len(),
                vars.len()
            )));
        }
        let mut p = Self::zero(vars);
        p.add_term(exp, c);
        Ok(p)
    }

    /// The single variable `name` (to the first power).
    pub fn var(vars: &VarList, name: &str) -> Result<Self> {
        Self::var_pow(vars, name, 1)
    }

    pub fn var_pow(vars: &VarList, name: &str, power: i32) -> Result<Self> {
        let idx = vars.require(name)?;
        let mut exp = vec![0; vars.len()];
        exp[idx] = power;
        Self::monomial(vars, exp, BigRational::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, collecting like terms.
    pub fn from_terms<I>(vars: &VarList, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Structural("exponent length mismatch".into()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &LaurentPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, s: &BigRational) -> LaurentPoly {
        if s.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same vars");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same vars");
            }
        }
        result
    }

    /// Coefficient of the all-zero exponent vector.
    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// If the polynomial is a single term, returns it.
    pub fn as_monomial(&self) -> Option<(&Exponent, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Integer power of a monomial (negative powers allowed).
    pub fn monomial_pow(&self, n: i32) -> Result<LaurentPoly> {
        let (e, c) = self
            .as_monomial()
            .ok_or_else(|| Error::Structural("expected a monomial".into()))?;
        let coeff = if n >= 0 {
            num_traits::pow(c.clone(), n as usize)
        } else {
            num_traits::pow(c.recip(), n.unsigned_abs() as usize)
        };
        let exp = e.iter().map(|a| a * n).collect();
        Self::monomial(&self.vars, exp, coeff)
    }

    /// Rewrites every variable as a monomial in a (possibly new) target variable list.
    ///
    /// `map` must assign every variable of `self` a single-term polynomial over
    /// `target`. The map acts on exponent vectors linearly, so this is a ring
    /// homomorphism.
    pub fn substitute_monomial(
        &self,
        map: &BTreeMap<String, LaurentPoly>,
        target: &VarList,
    ) -> Result<LaurentPoly> {
        let mut images = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let m = map
                .get(name)
                .ok_or_else(|| Error::Structural(format!("variable {name} is not mapped")))?;
            if m.vars != *target {
                return Err(Error::Structural(format!(
                    "image of {name} is not over the target variables"
                )));
            }
            let (e, c) = m.as_monomial().ok_or_else(|| {
                Error::Structural(format!("image of {name} is not a single monomial"))
            })?;
            images.push((e.clone(), c.clone()));
        }
        let mut out = Self::zero(target);
        for (exp, coeff) in &self.terms {
            let mut e = vec![0i32; target.len()];
            let mut c = coeff.clone();
            for ((ie, ic), &k) in images.iter().zip(exp) {
                if k == 0 {
                    continue;
                }
                for (slot, a) in e.iter_mut().zip(ie) {
                    *slot += a * k;
                }
                c *= if k > 0 {
                    num_traits::pow(ic.clone(), k as usize)
                } else {
                    num_traits::pow(ic.recip(), k.unsigned_abs() as usize)
                };
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Substitutes `x -> x^-1` for every variable in `names`.
    pub fn invert_vars(&self, names: &[&str]) -> Result<LaurentPoly> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            for &i in &idx {
                e[i] = -e[i];
            }
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn embed(&self, target: &VarList) -> Result<LaurentPoly> {
        let pos: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.require(n))
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (&p, &a) in pos.iter().zip(e) {
                ne[p] = a;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a subset of its variables; fails if a
    /// dropped variable actually occurs.
    pub fn restrict(&self, target: &VarList) -> Result<LaurentPoly> {
        let keep: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        for n in target.names() {
            self.vars.require(n)?;
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (k, &a) in keep.iter().zip(e) {
                match k {
                    Some(p) => ne[*p] = a,
                    None if a != 0 => {
                        return Err(Error::Structural(
                            "cannot drop a variable that occurs".into(),
                        ))
                    }
                    None => {}
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Splits by the exponent of `name`: maps degree -> coefficient polynomial
    /// (still over the full variable list, with that slot zeroed).
    pub fn collect_in(&self, name: &str) -> Result<BTreeMap<i32, LaurentPoly>> {
        let idx = self.vars.require(name)?;
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[idx];
            let mut ne = e.clone();
            ne[idx] = 0;
            out.entry(d)
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Constant term with respect to the listed variables only; the result
    /// lives over the remaining variables.
    pub fn constant_term_in(&self, names: &[&str]) -> Result<LaurentPoly> {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<_>>()?;
        let rest = VarList::new(
            self.vars
                .names()
                .iter()
                .filter(|n| !names.contains(&n.as_str()))
                .cloned(),
        );
        let keep: Vec<usize> = (0..self.vars.len()).filter(|i| !idx.contains(i)).collect();
        let mut out = Self::zero(&rest);
        for (e, c) in &self.terms {
            if idx.iter().all(|&i| e[i] == 0) {
                out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
            }
        }
        Ok(out)
    }

    /// Drops every term for which `keep` returns false.
    pub fn filter_terms<F: Fn(&[i32]) -> bool>(&self, keep: F) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Permutes coordinates: the exponent of variable `i` moves to slot `perm[i]`.
    pub fn permute_exponents(&self, perm: &[usize]) -> Result<LaurentPoly> {
        if perm.len() != self.vars.len() {
            return Err(Error::Structural("permutation length mismatch".into()));
        }
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; e.len()];
            for (i, &a) in e.iter().enumerate() {
                ne[perm[i]] = a;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Largest 1-norm over the support.
    pub fn max_l1(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|a| a.unsigned_abs()).sum())
            .max()
            .unwrap_or(0)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer coefficients, if the polynomial is integral.
    pub fn integer_terms(&self) -> Option<Vec<(Exponent, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.is_integer().then(|| (e.clone(), c.to_integer())))
            .collect()
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, vars: &VarList, exp: &[i32]) -> fmt::Result {
    let mut first = true;
    for (name, &a) in vars.names().iter().zip(exp) {
        if a == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if a == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{a}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let is_const = e.iter().all(|&a| a == 0);
            let neg = c.is_negative();
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = c.abs();
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(f, &self.vars, e)?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// JSON form: `{"vars": [...], "terms": {"[e1,e2,...]": "coeff", ...}}`
    /// with terms in lexicographic exponent order.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut terms = serde_json::Map::new();
        for (e, c) in &self.terms {
            let key = format!(
                "[{}]",
                e.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
            );
            terms.insert(key, serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({ "vars": self.vars.names(), "terms": terms })
    }
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vl(names: &[&str]) -> VarList {
        VarList::new(names.iter().copied())
    }

    fn mono(vars: &VarList, e: &[i32], c: i64) -> LaurentPoly {
        LaurentPoly::monomial(vars, e.to_vec(), rat(c)).unwrap()
    }

    #[test]
    fn like_terms_collect() {
        let v = vl(&["a", "b", "c"]);
        let p = mono(&v, &[1, 1, 1], 1).add(&mono(&v, &[1, -1, -1], 1)).unwrap();
        let q = p.add(&mono(&v, &[1, 1, 1], 1)).unwrap();
        assert_eq!(q.coeff(&[1, 1, 1]), rat(2));
        assert_eq!(q.coeff(&[1, -1, -1]), rat(1));
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn binomial_square() {
        let v = vl(&["x"]);
        let p = mono(&v, &[1], 1).add(&mono(&v, &[-1], 1)).unwrap();
        let sq = p.pow(2);
        let expect = LaurentPoly::from_terms(
            &v,
            [(vec![2], rat(1)), (vec![0], rat(2)), (vec![-2], rat(1))],
        )
        .unwrap();
        assert_eq!(sq, expect);
        assert_eq!(p.add(&mono(&v, &[0], 2)).unwrap().constant_term(), rat(2));
    }

    #[test]
    fn cancellation_prunes_zero_terms() {
        let v = vl(&["x", "y"]);
        let p = mono(&v, &[1, 0], 3);
        assert!(p.sub(&p).unwrap().is_zero());
        assert_eq!(p.sub(&p).unwrap().num_terms(), 0);
    }

    #[test]
    fn var_mismatch_is_an_error() {
        let p = mono(&vl(&["x"]), &[1], 1);
        let q = mono(&vl(&["y"]), &[1], 1);
        assert!(matches!(p.add(&q), Err(Error::VarMismatch { .. })));
        assert!(matches!(p.mul(&q), Err(Error::VarMismatch { .. })));
    }

    #[test]
    fn var_list_is_sorted() {
        let v = vl(&["c", "a", "b", "a"]);
        assert_eq!(v.names(), &["a", "b", "c"]);
    }

    #[test]
    fn invert_one_slot() {
        let v = vl(&["a", "b", "c"]);
        let p = mono(&v, &[1, 1, 1], 1).add(&mono(&v, &[1, -1, -1], 1)).unwrap();
        let q = p.invert_vars(&["a"]).unwrap();
        assert_eq!(q.coeff(&[-1, 1, 1]), rat(1));
        assert_eq!(q.coeff(&[-1, -1, -1]), rat(1));
    }

    #[test]
    fn substitute_unmapped_variable_fails() {
        let v = vl(&["x", "y"]);
        let p = mono(&v, &[1, 1], 1);
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), mono(&v, &[1, 0], 1));
        assert!(p.substitute_monomial(&map, &v).is_err());
    }

    #[test]
    fn constant_term_in_partial() {
        let v = vl(&["u", "x"]);
        let p = LaurentPoly::from_terms(
            &v,
            [(vec![0, 2], rat(3)), (vec![1, 1], rat(1)), (vec![0, -1], rat(5))],
        )
        .unwrap();
        let ct = p.constant_term_in(&["u"]).unwrap();
        assert_eq!(ct.vars().names(), &["x"]);
        assert_eq!(ct.coeff(&[2]), rat(3));
        assert_eq!(ct.coeff(&[-1]), rat(5));
        assert_eq!(ct.num_terms(), 2);
    }

    #[test]
    fn display_is_lexicographic() {
        let v = vl(&["x"]);
        let p = LaurentPoly::from_terms(&v, [(vec![1], rat(1)), (vec![-1], rat(-2))]).unwrap();
        assert_eq!(p.to_string(), "-2*x^-1 + x");
    }
}
