//! Kernels on the Fourier basis `x^i y^j`, `|i|, |j| <= D`, with entries
//! power series in `t` truncated at `t^D`.
//!
//! Truncating the index range to `[-D, D]` loses nothing for the kernels
//! built here: every monomial of a vertex potential has exponents `±1`, so
//! a coefficient of `t^d` only involves Fourier modes with `|i|, |j| <= d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{factorial, LaurentPoly, TSeries, VarList};
use crate::error::{Error, Result};

/// Square matrix of truncated series.
///
/// Entry `(i, j)` at `t^k` is `scaled[k] / (k! * den)`: storing `k!`-scaled
/// integer numerators keeps products of Bessel-type kernels integral, and
/// the product of two scaled series is a binomial convolution.
#[derive(Clone, Debug)]
pub struct KernelMatrix {
    order: usize,
    den: BigInt,
    /// row-major, `(2D+1)^2` entries; an empty vector is the zero series
    entries: Vec<Vec<BigInt>>,
}

impl PartialEq for KernelMatrix {
    fn eq(&self, other: &Self) -> bool {
        let zero = BigInt::zero();
        let at = |v: &[BigInt], k: usize| v.get(k).unwrap_or(&zero).clone();
        self.order == other.order
            && self.entries.iter().zip(&other.entries).all(|(a, b)| {
                (0..=self.order).all(|k| at(a, k) * &other.den == at(b, k) * &self.den)
            })
    }
}

impl Eq for KernelMatrix {}

struct Binomials(Vec<Vec<BigInt>>);

impl Binomials {
    fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut row = vec![BigInt::one(); m + 1];
            for k in 1..m {
                row[k] = &rows[m - 1][k - 1] + &rows[m - 1][k];
            }
            rows.push(row);
        }
        Binomials(rows)
    }

    fn get(&self, m: usize, k: usize) -> &BigInt {
        &self.0[m][k]
    }
}

impl KernelMatrix {
    fn empty(order: usize) -> Self {
        let n = 2 * order + 1;
        KernelMatrix {
            order,
            den: BigInt::one(),
            entries: vec![Vec::new(); n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Side length `2D + 1`.
    pub fn dim(&self) -> usize {
        2 * self.order + 1
    }

    fn pos(&self, i: i64, j: i64) -> Option<usize> {
        let d = self.order as i64;
        (i.abs() <= d && j.abs() <= d).then(|| ((i + d) as usize) * self.dim() + (j + d) as usize)
    }

    /// Builds a kernel from a function of `(i, j)` returning the entry series.
    pub fn from_fn<F>(order: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(i64, i64) -> TSeries<BigRational>,
    {
        let d = order as i64;
        let mut raw = Vec::with_capacity((2 * order + 1).pow(2));
        let mut den = BigInt::one();
        for i in -d..=d {
            for j in -d..=d {
                let s = f(i, j);
                if s.order() != order {
                    return Err(Error::OrderMismatch(order, s.order()));
                }
                let scaled: Vec<BigRational> = s
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * BigRational::from_integer(factorial(k)))
                    .collect();
                for c in &scaled {
                    den = den.lcm(c.denom());
                }
                raw.push(scaled);
            }
        }
        let entries = raw
            .into_iter()
            .map(|s| {
                if s.iter().all(Zero::is_zero) {
                    Vec::new()
                } else {
                    s.iter()
                        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                        .collect()
                }
            })
            .collect();
        Ok(KernelMatrix {
            order,
            den,
            entries,
        })
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::empty(order);
        let d = order as i64;
        for i in -d..=d {
            let p = m.pos(i, i).expect("in range");
            m.entries[p] = unit(order);
        }
        m
    }

    /// `S`: the flip `x^i -> x^-i`, entry `(i, -i) = 1`.
    pub fn flip_operator(order: usize) -> Self {
        let mut m = Self::empty(order);
        let d = order as i64;
        for i in -d..=d {
            let p = m.pos(i, -i).expect("in range");
            m.entries[p] = unit(order);
        }
        m
    }

    /// `A`: coefficients of `B(t(x+y)) * B(t(1/x+1/y))` with
    /// `B(z) = sum z^(2m) / (m!)^2`.
    ///
    /// Expanding both factors binomially, the term `x^a1 y^b1` of
    /// `(x+y)^(2m)` and `x^-c1 y^-d1` of `(1/x+1/y)^(2n)` contribute
    /// `C(2m,m) C(2n,n) / (a1! b1! c1! d1!)` at `t^(2m+2n)` to entry
    /// `(a1 - c1, b1 - d1)`.
    pub fn t1_kernel(order: usize) -> Self {
        let mut m = Self::empty(order);
        let fact: Vec<BigInt> = (0..=order).map(factorial).collect();
        let binom = Binomials::new(order);
        for mm in 0..=order / 2 {
            for nn in 0..=(order / 2 - mm) {
                let deg = 2 * (mm + nn);
                let weight = binom.get(2 * mm, mm) * binom.get(2 * nn, nn) * &fact[deg];
                for a1 in 0..=2 * mm {
                    let b1 = 2 * mm - a1;
                    for c1 in 0..=2 * nn {
                        let d1 = 2 * nn - c1;
                        let i = a1 as i64 - c1 as i64;
                        let j = b1 as i64 - d1 as i64;
                        let denom = &fact[a1] * &fact[b1] * &fact[c1] * &fact[d1];
                        let v = &weight / denom;
                        let p = m.pos(i, j).expect("support bound");
                        if m.entries[p].is_empty() {
                            m.entries[p] = vec![BigInt::zero(); order + 1];
                        }
                        m.entries[p][deg] += v;
                    }
                }
            }
        }
        m
    }

    /// Entry `(i, j)` as a series; zero outside the index range.
    pub fn entry(&self, i: i64, j: i64) -> TSeries<BigRational> {
        let mut coeffs = vec![BigRational::zero(); self.order + 1];
        if let Some(p) = self.pos(i, j) {
            for (k, s) in self.entries[p].iter().enumerate() {
                coeffs[k] = BigRational::new(s.clone(), factorial(k) * &self.den);
            }
        }
        TSeries::from_coeffs(coeffs).expect("nonempty")
    }

    pub fn coeff(&self, i: i64, j: i64, k: usize) -> BigRational {
        match self.pos(i, j) {
            Some(p) if !self.entries[p].is_empty() && k <= self.order => {
                BigRational::new(self.entries[p][k].clone(), factorial(k) * &self.den)
            }
            _ => BigRational::zero(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    /// Plain matrix product with truncated series entries.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.dim();
        let d = self.order;
        let binom = Binomials::new(d);
        let row = |i: usize| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|j| {
                    let mut acc = vec![vec![BigInt::zero(); d + 1]; d + 1];
                    let mut any = false;
                    for l in 0..n {
                        let a = &self.entries[i * n + l];
                        let b = &other.entries[l * n + j];
                        if a.is_empty() || b.is_empty() {
                            continue;
                        }
                        for (k, ak) in a.iter().enumerate() {
                            if ak.is_zero() {
                                continue;
                            }
                            for (r, br) in b[..=d - k].iter().enumerate() {
                                if !br.is_zero() {
                                    acc[k][r] += ak * br;
                                    any = true;
                                }
                            }
                        }
                    }
                    if !any {
                        return Vec::new();
                    }
                    let mut out = vec![BigInt::zero(); d + 1];
                    for (k, accrow) in acc.iter().enumerate() {
                        for (r, v) in accrow[..=d - k].iter().enumerate() {
                            if !v.is_zero() {
                                out[k + r] += binom.get(k + r, k) * v;
                            }
                        }
                    }
                    if out.iter().all(Zero::is_zero) {
                        Vec::new()
                    } else {
                        out
                    }
                })
                .collect()
        };
        #[cfg(feature = "parallel")]
        let rows: Vec<Vec<Vec<BigInt>>> = {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(row).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<Vec<Vec<BigInt>>> = (0..n).map(row).collect();
        Ok(KernelMatrix {
            order: d,
            den: &self.den * &other.den,
            entries: rows.into_iter().flatten().collect(),
        }
        .reduced())
    }

    /// Convolution `[P(x,z) Q(z,y)]_{z^0}`, i.e. `P * S * Q`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.matmul(&other.flip_rows())
    }

    /// `M^p` (`p = 0` gives the identity).
    pub fn pow(&self, p: u32) -> Self {
        let mut acc = Self::identity(self.order);
        for _ in 0..p {
            acc = acc.matmul(self).expect("same order");
        }
        acc
    }

    /// `S * M`: row `i` becomes row `-i`.
    pub fn flip_rows(&self) -> Self {
        self.permuted(|i, j| (-i, j))
    }

    /// `M * S`: column `j` becomes column `-j`.
    pub fn flip_cols(&self) -> Self {
        self.permuted(|i, j| (i, -j))
    }

    pub fn transpose(&self) -> Self {
        self.permuted(|i, j| (j, i))
    }

    /// Entry `(i, j)` of the result is entry `f(i, j)` of `self`.
    fn permuted(&self, f: impl Fn(i64, i64) -> (i64, i64)) -> Self {
        let d = self.order as i64;
        let mut out = Self::empty(self.order);
        out.den = self.den.clone();
        for i in -d..=d {
            for j in -d..=d {
                let (si, sj) = f(i, j);
                let src = self.pos(si, sj).expect("permutation of the index square");
                let dst = out.pos(i, j).expect("in range");
                out.entries[dst] = self.entries[src].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> TSeries<BigRational> {
        self.diagonal_sum(|i| i)
    }

    /// `tr(M * S) = sum_i M(i, -i)`.
    pub fn trace_with_flip(&self) -> TSeries<BigRational> {
        self.diagonal_sum(|i| -i)
    }

    fn diagonal_sum(&self, col: impl Fn(i64) -> i64) -> TSeries<BigRational> {
        let d = self.order as i64;
        let mut acc = vec![BigInt::zero(); self.order + 1];
        for i in -d..=d {
            let p = self.pos(i, col(i)).expect("in range");
            for (k, v) in self.entries[p].iter().enumerate() {
                acc[k] += v;
            }
        }
        let coeffs = acc
            .into_iter()
            .enumerate()
            .map(|(k, v)| BigRational::new(v, factorial(k) * &self.den))
            .collect();
        TSeries::from_coeffs(coeffs).expect("nonempty")
    }

    fn reduced(mut self) -> Self {
        let mut g = self.den.clone();
        for s in self.entries.iter().flatten() {
            if g.is_one() {
                return self;
            }
            g = g.gcd(s);
        }
        if !g.is_one() && !g.is_zero() {
            self.den /= &g;
            for s in self.entries.iter_mut().flatten() {
                *s /= &g;
            }
        }
        self
    }

    /// The two-variable series `sum_{i,j} M(i,j) x^i y^j`.
    pub fn to_series(&self, x: &str, y: &str) -> Result<TSeries<LaurentPoly>> {
        if x == y {
            return Err(Error::Structural("kernel variables must differ".into()));
        }
        let vars = VarList::new([x, y]);
        let (ix, iy) = (vars.require(x)?, vars.require(y)?);
        let d = self.order as i64;
        let mut coeffs = vec![LaurentPoly::zero(&vars); self.order + 1];
        for i in -d..=d {
            for j in -d..=d {
                let p = self.pos(i, j).expect("in range");
                for (k, v) in self.entries[p].iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let mut e = vec![0i32; 2];
                    e[ix] = i as i32;
                    e[iy] = j as i32;
                    let c = BigRational::new(v.clone(), factorial(k) * &self.den);
                    coeffs[k] = coeffs[k].add(&LaurentPoly::monomial(&vars, e, c)?)?;
                }
            }
        }
        TSeries::from_coeffs(coeffs)
    }
}

fn unit(order: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); order + 1];
    v[0] = BigInt::one();
    v
}

/// `B(z) = sum_m z^(2m) / (m!)^2`, truncated at `z^D`.
pub fn bessel(order: usize) -> TSeries<BigRational> {
    let coeffs = (0..=order)
        .map(|k| {
            if k % 2 == 0 {
                let f = factorial(k / 2);
                BigRational::new(BigInt::one(), &f * &f)
            } else {
                BigRational::zero()
            }
        })
        .collect();
    TSeries::from_coeffs(coeffs).expect("nonempty")
}

/// Plain matrix product of two kernels.
pub fn kernel_compose(p: &KernelMatrix, q: &KernelMatrix) -> Result<KernelMatrix> {
    p.matmul(q)
}

/// Power of `S` appearing in the closed-surface formula for genus `g` and
/// coloring parity `parity`.
pub fn flip_exponent(genus: usize, parity: u8) -> u8 {
    ((genus + 1 + usize::from(parity)) % 2) as u8
}

/// `tr(A^(g-1) S^e)` with `e = (g - 1 + parity) mod 2`: the inverse Laplace
/// transform of the period sequence of any closed genus-`g` graph whose
/// coloring has the given parity.
pub fn trace_formula(genus: usize, parity: u8, order: usize) -> Result<TSeries<BigRational>> {
    if genus < 2 {
        return Err(Error::Unsupported(format!("trace formula for genus {genus}")));
    }
    let m = KernelMatrix::t1_kernel(order).pow((genus - 1) as u32);
    Ok(trace_of_power(&m, genus, parity))
}

fn trace_of_power(m: &KernelMatrix, genus: usize, parity: u8) -> TSeries<BigRational> {
    if flip_exponent(genus, parity) == 1 {
        m.trace_with_flip()
    } else {
        m.trace()
    }
}

/// `trace_formula` for every genus in `2..=genus_max` and both parities,
/// sharing the matrix powers. Rows are `(genus, parity, series)`.
pub fn trace_table(genus_max: usize, order: usize) -> Vec<(usize, u8, TSeries<BigRational>)> {
    let a = KernelMatrix::t1_kernel(order);
    let mut power = a.clone();
    let mut out = Vec::new();
    for genus in 2..=genus_max {
        if genus > 2 {
            power = power.matmul(&a).expect("same order");
        }
        for parity in [0u8, 1] {
            out.push((genus, parity, trace_of_power(&power, genus, parity)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bessel_coefficients() {
        let b = bessel(6);
        assert_eq!(b.coeffs(), &[rat(1), rat(0), rat(1), rat(0), q(1, 4), rat(0), q(1, 36)]);
    }

    /// Oracle: expand `B(t(x+y)) B(t(1/x+1/y))` directly.
    fn t1_by_expansion(order: usize) -> TSeries<LaurentPoly> {
        let vars = VarList::new(["x", "y"]);
        let x = LaurentPoly::var(&vars, "x").unwrap();
        let y = LaurentPoly::var(&vars, "y").unwrap();
        let s = x.add(&y).unwrap();
        let si = x.monomial_pow(-1).unwrap().add(&y.monomial_pow(-1).unwrap()).unwrap();
        let b = bessel(order);
        let lift = |p: &LaurentPoly| {
            let mut coeffs = vec![LaurentPoly::zero(&vars); order + 1];
            for (k, c) in b.coeffs().iter().enumerate() {
                coeffs[k] = p.pow(k as u32).scalar_mul(c);
            }
            TSeries::from_coeffs(coeffs).unwrap()
        };
        lift(&s).mul(&lift(&si)).unwrap()
    }

    #[test]
    fn t1_closed_form_matches_expansion() {
        let a = KernelMatrix::t1_kernel(8);
        assert_eq!(a.to_series("x", "y").unwrap(), t1_by_expansion(8));
    }

    #[test]
    fn t1_small_entries() {
        let a = KernelMatrix::t1_kernel(4);
        assert_eq!(a.coeff(0, 0, 0), rat(1));
        assert_eq!(a.coeff(0, 0, 2), rat(0));
        assert_eq!(a.coeff(1, 1, 2), rat(2));
        assert_eq!(a.coeff(2, 0, 2), rat(1));
        assert_eq!(a.coeff(1, -1, 2), rat(0));
        assert!(a.entry(1, 0).is_zero());
    }

    #[test]
    fn from_fn_round_trip() {
        let a = KernelMatrix::t1_kernel(4);
        let b = KernelMatrix::from_fn(4, |i, j| a.entry(i, j)).unwrap();
        for i in -4..=4 {
            for j in -4..=4 {
                assert_eq!(a.entry(i, j), b.entry(i, j));
            }
        }
        let c = KernelMatrix::from_fn(2, |i, j| {
            TSeries::from_coeffs(vec![q(i, 3), q(j, 7), rat(1)]).unwrap()
        })
        .unwrap();
        assert_eq!(c.coeff(2, 1, 1), q(1, 7));
        assert_eq!(c.coeff(-1, 0, 0), q(-1, 3));
    }

    #[test]
    fn flip_squares_to_identity() {
        let s = KernelMatrix::flip_operator(5);
        assert_eq!(s.matmul(&s).unwrap(), KernelMatrix::identity(5));
        assert_eq!(s.trace().coeffs()[0], rat(1));
    }

    #[test]
    fn genus_two_odd_parity() {
        let t = trace_formula(2, 1, 12).unwrap();
        for n in 0..=6usize {
            let f2n = factorial(2 * n);
            let fn_ = factorial(n);
            let expect = BigRational::new(&f2n * &f2n, fn_.pow(6));
            assert_eq!(t.coeff(2 * n), &expect);
        }
    }

    #[test]
    fn genus_two_even_parity() {
        let t = trace_formula(2, 0, 12).unwrap();
        let pi = |k: usize| t.coeff(k) * BigRational::from_integer(factorial(k));
        assert_eq!(pi(4), rat(384));
        assert_eq!(pi(8), rat(645120));
        assert_eq!(pi(12), rat(1513881600));
        assert_eq!(pi(2), rat(0));
    }

    #[test]
    fn table_matches_single_calls() {
        for (g, e, s) in trace_table(4, 6) {
            assert_eq!(s, trace_formula(g, e, 6).unwrap());
        }
    }

    #[test]
    fn convolution_is_constant_term_pairing() {
        let order = 4;
        let a = KernelMatrix::t1_kernel(order);
        let t2 = a.convolve(&a).unwrap().to_series("x", "y").unwrap();
        // [T1(x,z) T1(z,y)]_{z^0} by direct expansion
        let vars = VarList::new(["x", "y", "z"]);
        let lift = |p: &TSeries<LaurentPoly>, from: [&str; 2]| {
            p.map(|c| {
                let m = std::collections::BTreeMap::from([
                    ("x".to_string(), LaurentPoly::var(&vars, from[0]).unwrap()),
                    ("y".to_string(), LaurentPoly::var(&vars, from[1]).unwrap()),
                ]);
                c.substitute_monomial(&m, &vars)
            })
            .unwrap()
        };
        let t1 = a.to_series("x", "y").unwrap();
        let prod = lift(&t1, ["x", "z"]).mul(&lift(&t1, ["z", "y"])).unwrap();
        let direct = prod.map(|c| c.constant_term_in(&["z"])).unwrap();
        assert_eq!(t2, direct);
    }
}
