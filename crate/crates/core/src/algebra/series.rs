//! Power series in a formal parameter `t`, truncated at a fixed degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::laurent::{LaurentPoly, VarList};
use crate::error::{Error, Result};

/// Coefficient domain for [`TSeries`].
pub trait SeriesCoeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn try_mul(&self, other: &Self) -> Result<Self>;
    fn scale(&self, s: &BigRational) -> Self;
}

impl SeriesCoeff for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn scale(&self, s: &BigRational) -> Self {
        self * s
    }
}

impl SeriesCoeff for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.vars())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul(other)
    }
    fn scale(&self, s: &BigRational) -> Self {
        self.scalar_mul(s)
    }
}

/// `sum_{k=0}^{D} c_k t^k`; anything of degree above `D` is discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries<C> {
    coeffs: Vec<C>,
}

impl<C: SeriesCoeff> TSeries<C> {
    /// Builds a series from its coefficients; the truncation order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Structural("a series needs at least one coefficient".into()));
        }
        Ok(TSeries { coeffs })
    }

    /// The constant series `c`.
    pub fn constant(c: C, order: usize) -> Self {
        let z = c.zero_like();
        let mut coeffs = vec![z; order + 1];
        coeffs[0] = c;
        TSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(TSeries { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d = self.order();
        let mut coeffs: Vec<C> = vec![self.coeffs[0].zero_like(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(TSeries { coeffs })
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        TSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn map<D: SeriesCoeff, F: FnMut(&C) -> Result<D>>(&self, f: F) -> Result<TSeries<D>> {
        TSeries::from_coeffs(self.coeffs.iter().map(f).collect::<Result<_>>()?)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SeriesCoeff::is_zero)
    }
}

impl TSeries<BigRational> {
    pub fn zero(order: usize) -> Self {
        TSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }
}

impl TSeries<LaurentPoly> {
    pub fn vars(&self) -> &VarList {
        self.coeffs[0].vars()
    }
}

/// `k!` as a big integer.
pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `exp(t*w)` truncated at `t^order`: the `t^k` coefficient is `w^k / k!`.
pub fn ts_exp(w: &LaurentPoly, order: usize) -> TSeries<LaurentPoly> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = LaurentPoly::one(w.vars());
    for k in 0..=order {
        if k > 0 {
            power = power.mul(w).expect("same vars");
        }
        let inv = BigRational::new(BigInt::one(), factorial(k));
        coeffs.push(power.scalar_mul(&inv));
    }
    TSeries { coeffs }
}

/// The Hilbert-space pairing in one variable:
/// `<f, g>_z = [f(z) g(z^-1)]_{z^0}`, applied coefficientwise in `t`.
///
/// The result lives over the common variables with `var` removed.
pub fn pairing_in_var(
    f: &TSeries<LaurentPoly>,
    g: &TSeries<LaurentPoly>,
    var: &str,
) -> Result<TSeries<LaurentPoly>> {
    if f.vars() != g.vars() {
        return Err(Error::VarMismatch {
            left: f.vars().names().to_vec(),
            right: g.vars().names().to_vec(),
        });
    }
    let g_flipped = g.map(|c| c.invert_vars(&[var]))?;
    let prod = f.mul(&g_flipped)?;
    prod.map(|c| c.constant_term_in(&[var]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::rat;

    #[test]
    fn exp_of_zero_is_one() {
        let v = VarList::new(["x"]);
        let s = ts_exp(&LaurentPoly::zero(&v), 4);
        assert_eq!(s.coeff(0), &LaurentPoly::one(&v));
        for k in 1..=4 {
            assert!(s.coeff(k).is_zero());
        }
    }

    #[test]
    fn exp_times_exp_of_negative_is_one() {
        let v = VarList::new(["x", "y"]);
        let w = LaurentPoly::from_terms(&v, [(vec![1, -1], rat(2)), (vec![0, 1], rat(1))]).unwrap();
        let p = ts_exp(&w, 6).mul(&ts_exp(&w.negate(), 6)).unwrap();
        assert_eq!(p, TSeries::constant(LaurentPoly::one(&v), 6));
    }

    #[test]
    fn order_mismatch() {
        let a = TSeries::<BigRational>::zero(2);
        let b = TSeries::<BigRational>::zero(3);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(2, 3))));
    }

    #[test]
    fn truncation_drops_high_degree() {
        let one_plus_t = TSeries::from_coeffs(vec![rat(1), rat(1)]).unwrap();
        let sq = one_plus_t.mul(&one_plus_t).unwrap();
        assert_eq!(sq.coeffs(), &[rat(1), rat(2)]);
    }

    #[test]
    fn pairing_of_basis_vectors() {
        let v = VarList::new(["z"]);
        let z = TSeries::constant(LaurentPoly::var(&v, "z").unwrap(), 0);
        let zi = TSeries::constant(LaurentPoly::var_pow(&v, "z", -1).unwrap(), 0);
        assert_eq!(pairing_in_var(&z, &z, "z").unwrap().coeff(0).constant_term(), rat(1));
        assert!(pairing_in_var(&z, &zi, "z").unwrap().coeff(0).is_zero());
    }
}
