use std::fmt;

use crate::algebra::laurent::{LaurentPoly, VarList};
use crate::error::{Error, Result};

/// A quotient of two Laurent polynomials over the same variables.
///
/// No gcd reduction is performed. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl RationalExpr {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self> {
        if numerator.vars() != denominator.vars() {
            return Err(Error::VarMismatch {
                left: numerator.vars().names().to_vec(),
                right: denominator.vars().names().to_vec(),
            });
        }
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalExpr {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let one = LaurentPoly::one(p.vars());
        RationalExpr {
            numerator: p,
            denominator: one,
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn vars(&self) -> &VarList {
        self.numerator.vars()
    }

    /// `p/q == r/s` iff `p*s == r*q`.
    pub fn equals(&self, other: &RationalExpr) -> Result<bool> {
        let lhs = self.numerator.mul(&other.denominator)?;
        let rhs = other.numerator.mul(&self.denominator)?;
        Ok(lhs == rhs)
    }

    pub fn add(&self, other: &RationalExpr) -> Result<RationalExpr> {
        let n = self
            .numerator
            .mul(&other.denominator)?
            .add(&other.numerator.mul(&self.denominator)?)?;
        let d = self.denominator.mul(&other.denominator)?;
        RationalExpr::new(n, d)
    }

    pub fn mul(&self, other: &RationalExpr) -> Result<RationalExpr> {
        RationalExpr::new(
            self.numerator.mul(&other.numerator)?,
            self.denominator.mul(&other.denominator)?,
        )
    }

    /// Multiplies numerator and denominator by the same nonzero polynomial.
    pub fn rescale(&self, by: &LaurentPoly) -> Result<RationalExpr> {
        RationalExpr::new(self.numerator.mul(by)?, self.denominator.mul(by)?)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// Substitutes the rational expression `value` for the variable `var` in `p`.
///
/// Terms with `var`-degree `e` become `N^(e+kn) * D^(kp-e)` over the common
/// denominator `N^kn * D^kp`, where `value = N/D` and `kn`, `kp` bound the
/// negative and positive degrees that occur.
pub fn substitute(p: &LaurentPoly, var: &str, value: &RationalExpr) -> Result<RationalExpr> {
    if value.vars() != p.vars() {
        return Err(Error::VarMismatch {
            left: p.vars().names().to_vec(),
            right: value.vars().names().to_vec(),
        });
    }
    let by_degree = p.collect_in(var)?;
    let (Some(&lo), Some(&hi)) = (by_degree.keys().next(), by_degree.keys().next_back()) else {
        return Ok(RationalExpr::from_poly(p.clone()));
    };
    let kn = (-lo).max(0) as u32;
    let kp = hi.max(0) as u32;
    if kn > 0 && value.numerator.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let n = &value.numerator;
    let d = &value.denominator;
    let mut total = LaurentPoly::zero(p.vars());
    for (&e, coeff) in &by_degree {
        let term = coeff
            .mul(&n.pow((e + kn as i32) as u32))?
            .mul(&d.pow((kp as i32 - e) as u32))?;
        total = total.add(&term)?;
    }
    let denom = n.pow(kn).mul(&d.pow(kp))?;
    RationalExpr::new(total, denom)
}
