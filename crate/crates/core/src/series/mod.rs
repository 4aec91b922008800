//! Truncated formal power series in one variable `t`.

mod bivariate;
pub mod io;

pub use bivariate::{bi_substitute, BiSeries, Poly};

use rug::Rational;

use crate::error::{Error, Result};
use crate::numeric::{Coeff, Real};

/// `Σ_{n ≤ N} a_n tⁿ`, known exactly up to the truncation order `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C = Rational> {
    coeffs: Vec<C>,
}

pub type RealSeries = Series<Real>;

impl<C: Coeff> Series<C> {
    /// Builds a series of order `order`, padding with zeros or dropping higher terms.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `t`.
    pub fn var(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    /// `c·t^k`.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `Σ tⁿ`.
    pub fn geometric(order: usize) -> Self {
        Self::from_fn(order, |_| C::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| self.coeffs[i].add(&rhs.coeffs[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| self.coeffs[i].sub(&rhs.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplication by `t^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        Self::from_fn(n, |i| if i >= k { self.coeffs[i - k].clone() } else { C::zero() })
    }

    /// Division by `t^k`; the dropped low terms must vanish. The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain(format!("series is not divisible by t^{k}")));
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }

    /// `a(c·t)`: the n-th coefficient is multiplied by `cⁿ`.
    pub fn scale_var(&self, c: &C) -> Self {
        let mut p = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&p));
            p = p.mul(c);
        }
        Series { coeffs: out }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = C::one().div(a0);
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s.add_mul(&self.coeffs[j], &out[k - j]);
                }
            }
            out.push(s.neg().mul(&inv0));
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.reciprocal()?))
    }

    /// Square root with nonnegative constant term, by Newton iteration doubling the precision.
    pub fn sqrt(&self) -> Result<Self> {
        let n = self.order();
        if self.is_zero() {
            return Ok(self.clone());
        }
        let y0 = self.coeffs[0].sqrt_exact().ok_or(Error::NonSquareConstant)?;
        if y0.is_zero() {
            return Err(Error::NonSquareConstant);
        }
        let half = C::one().div(&C::from_int(2));
        let mut y = Series::constant(y0, 0);
        let mut prec = 0usize;
        while prec < n {
            prec = (2 * prec + 1).min(n);
            let y_ext = y.truncate(prec);
            let a = self.truncate(prec);
            let corr = a.sub(&y_ext.mul(&y_ext)).mul(&y_ext.reciprocal()?);
            y = y_ext.add(&corr.scale(&half));
        }
        Ok(y.truncate(n))
    }

    /// `self(inner(t))`, by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::zero(n);
        for a in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add(a);
        }
        Ok(acc)
    }

    /// Compositional inverse, by Lagrange inversion: `[tⁿ]E = (1/n)[tⁿ⁻¹](t/a)ⁿ`.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.order() == 0 || self.coeffs[1].is_zero() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        // phi = a/t, known to order n-1
        let phi = Series { coeffs: self.coeffs[1..].to_vec() };
        let psi = phi.reciprocal()?;
        let mut out = vec![C::zero(); n + 1];
        let mut p = Series::one(n - 1);
        for k in 1..=n {
            p = p.mul(&psi);
            out[k] = p.coeffs[k - 1].div(&C::from_int(k as i64));
        }
        Ok(Series { coeffs: out })
    }

    /// The relation `self ≽ rhs`: every coefficient of `self` is at least that of `rhs`.
    pub fn dominates(&self, rhs: &Self) -> Result<bool> {
        if self.order() != rhs.order() {
            return Err(Error::TruncationMismatch { left: self.order(), right: rhs.order() });
        }
        Ok(self.coeffs.iter().zip(&rhs.coeffs).all(|(a, b)| a >= b))
    }

    /// First index where domination fails.
    pub fn first_undominated(&self, rhs: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&rhs.coeffs).position(|(a, b)| a < b)
    }
}

impl Series<Rational> {
    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I, order: usize) -> Self {
        Self::new(it.into_iter().map(Rational::from).collect(), order)
    }

    pub fn to_real(&self) -> RealSeries {
        self.map(Real::from_rational)
    }
}

impl<C: Coeff> std::ops::Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        Series::add(self, rhs)
    }
}

impl<C: Coeff> std::ops::Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        Series::sub(self, rhs)
    }
}

impl<C: Coeff> std::ops::Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        Series::mul(self, rhs)
    }
}

impl<C: Coeff> std::ops::Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series::neg(self)
    }
}

impl<C: Coeff> std::fmt::Display for Series<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn ints(v: &[i64], n: usize) -> Series {
        Series::from_ints(v.iter().copied(), n)
    }

    /// Generalized binomial coefficient C(r, k) for rational r.
    fn binom(r: &Rational, k: usize) -> Rational {
        let mut acc = Rational::from(1);
        for i in 0..k {
            acc *= Rational::from(r - i as i64);
            acc /= (i + 1) as i64;
        }
        acc
    }

    #[test]
    fn add_and_identity() {
        let a = ints(&[1, 1], 4);
        assert_eq!(&a + &a, ints(&[2, 2], 4));
        assert_eq!(&a + &Series::zero(4), a);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn mul_geometric() {
        let a = ints(&[1, 1], 5);
        assert_eq!(&a * &a, ints(&[1, 2, 1], 5));
        assert_eq!(&a * &Series::one(5), a);
        let p = ints(&[1, -1], 10).mul(&Series::geometric(10));
        assert_eq!(p, Series::one(10));
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a: Series = Series::geometric(3);
        let b: Series = Series::geometric(7);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    #[test]
    fn reciprocal_cases() {
        assert_eq!(ints(&[1, -1], 6).reciprocal().unwrap(), Series::geometric(6));
        assert_eq!(Series::<Rational>::one(3).reciprocal().unwrap(), Series::one(3));
        let r = ints(&[1, 0, 7], 8).reciprocal().unwrap();
        assert_eq!(r, ints(&[1, 0, -7, 0, 49, 0, -343, 0, 2401], 8));
        assert!(matches!(ints(&[0, 1], 3).reciprocal(), Err(Error::ZeroConstantTerm)));
    }

    #[test]
    fn compose_cases() {
        let a = ints(&[3, 1, 4, 1, 5], 4);
        assert_eq!(a.compose(&Series::var(4)).unwrap(), a);
        let g = Series::geometric(8).compose(&Series::monomial(q(1, 1), 2, 8)).unwrap();
        assert_eq!(g, ints(&[1, 0, 1, 0, 1, 0, 1, 0, 1], 8));
        // sqrt(1+t) composed with 4t^2 against the binomial series of sqrt(1+4t^2)
        let n = 12;
        let half = q(1, 2);
        let s1 = Series::from_fn(n, |k| binom(&half, k));
        let c = s1.compose(&Series::monomial(q(4, 1), 2, n)).unwrap();
        let oracle = Series::from_fn(n, |k| {
            if k % 2 == 1 {
                Rational::new()
            } else {
                binom(&half, k / 2) * Rational::from(4).pow(k as u32 / 2)
            }
        });
        assert_eq!(c, oracle);
        assert!(matches!(a.compose(&a), Err(Error::NonzeroInnerConstant)));
    }

    #[test]
    fn sqrt_cases() {
        assert_eq!(Series::<Rational>::one(5).sqrt().unwrap(), Series::one(5));
        let s = ints(&[1, -4], 10).sqrt().unwrap();
        let oracle = Series::from_fn(10, |k| binom(&q(1, 2), k) * Rational::from(-4).pow(k as u32));
        assert_eq!(s, oracle);
        assert_eq!(s.coeffs()[..5].to_vec(), ints(&[1, -2, -2, -4, -10], 4).into_coeffs());
        let sq = ints(&[1, 0, -7], 12);
        assert_eq!(sq.mul(&sq).sqrt().unwrap(), sq);
        assert!(matches!(ints(&[2, 1], 4).sqrt(), Err(Error::NonSquareConstant)));
        let r = ints(&[4, 1, 3], 9).sqrt().unwrap();
        assert_eq!(r.coeff(0), &Rational::from(2));
        assert_eq!(r.mul(&r), ints(&[4, 1, 3], 9));
    }

    #[test]
    fn revert_catalan() {
        let n = 15;
        assert_eq!(Series::<Rational>::var(n).revert().unwrap(), Series::var(n));
        let a = Series::var(n).div(&ints(&[1, 0, 1], n)).unwrap();
        let e = a.revert().unwrap();
        let catalan = [1i64, 1, 2, 5, 14, 42, 132, 429];
        for (k, c) in catalan.iter().enumerate() {
            assert_eq!(e.coeff(2 * k + 1), &Rational::from(*c));
            assert!(e.coeff(2 * k).is_zero());
        }
        assert_eq!(a.compose(&e).unwrap(), Series::var(n));
        assert_eq!(e.compose(&a).unwrap(), Series::var(n));
        assert!(matches!(ints(&[0, 0, 1], 4).revert(), Err(Error::NotInvertible)));
    }

    #[test]
    fn revert_tree_kernel_matches_closed_form() {
        let (n, d) = (20, 8i64);
        let e = Series::var(n).div(&ints(&[1, 0, d - 1], n)).unwrap().revert().unwrap();
        // (1 - sqrt(1 - 4(d-1)t^2)) / (2(d-1)t), computed with one extra order
        let r = ints(&[1, 0, -4 * (d - 1)], n + 1).sqrt().unwrap();
        let num = (&Series::one(n + 1) - &r).shift_down(1).unwrap();
        assert_eq!(e, num.scale(&q(1, 2 * (d - 1))));
    }

    #[test]
    fn dominance() {
        let g: Series = Series::geometric(6);
        assert!(g.dominates(&g).unwrap());
        assert!(g.scale(&q(2, 1)).dominates(&g).unwrap());
        assert!(!g.dominates(&g.scale(&q(2, 1))).unwrap());
        assert!(matches!(g.dominates(&Series::geometric(5)), Err(Error::TruncationMismatch { .. })));
    }

    #[test]
    fn real_mode_agrees() {
        let a = ints(&[1, -4], 10);
        let exact = a.sqrt().unwrap().to_real();
        let approx = a.to_real().sqrt().unwrap();
        for k in 0..=10 {
            let diff = exact.coeff(k).sub(approx.coeff(k)).to_f64().abs();
            assert!(diff < 1e-40);
        }
    }
}
