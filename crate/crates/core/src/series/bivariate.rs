//! Series in `t` whose coefficients are polynomials in `u`.

use crate::error::{Error, Result};
use crate::numeric::Coeff;

use super::Series;

/// Dense polynomial in `u`, lowest degree first.
pub type Poly<C> = Vec<C>;

fn poly_eval<C: Coeff>(p: &[C], x: &C) -> C {
    let mut acc = C::zero();
    for c in p.iter().rev() {
        acc = acc.mul(x);
        acc = acc.add(c);
    }
    acc
}

/// `Σ_n p_n(u) tⁿ` with `deg p_n ≤ n`, truncated at `t^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C> {
    // coeffs[n] always has length n + 1
    coeffs: Vec<Poly<C>>,
}

impl<C: Coeff> BiSeries<C> {
    /// Checks the degree bound; trailing zero coefficients beyond it are accepted.
    pub fn new(mut coeffs: Vec<Poly<C>>, order: usize) -> Result<Self> {
        coeffs.resize(order + 1, Vec::new());
        for (n, p) in coeffs.iter_mut().enumerate() {
            if let Some(deg) = p.iter().rposition(|c| !c.is_zero()) {
                if deg > n {
                    return Err(Error::DegreeBound { n, degree: deg });
                }
            }
            p.resize(n + 1, C::zero());
        }
        Ok(BiSeries { coeffs })
    }

    /// Coefficient of `tⁿ u^k` given by `f(n, k)` for `k ≤ n`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        BiSeries { coeffs: (0..=order).map(|n| (0..=n).map(|k| f(n, k)).collect()).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_, _| C::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_series(&Series::one(order))
    }

    /// A series not depending on `u`.
    pub fn from_series(s: &Series<C>) -> Self {
        Self::from_fn(s.order(), |n, k| if k == 0 { s.coeff(n).clone() } else { C::zero() })
    }

    /// `p(u)·t^k`; requires `deg p ≤ k`.
    pub fn poly_monomial(p: &[C], k: usize, order: usize) -> Result<Self> {
        let mut coeffs = vec![Vec::new(); order + 1];
        if k <= order {
            coeffs[k] = p.to_vec();
        }
        Self::new(coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The polynomial multiplying `tⁿ`.
    pub fn coeff(&self, n: usize) -> &[C] {
        &self.coeffs[n]
    }

    pub fn coeff_at(&self, n: usize, k: usize) -> &C {
        &self.coeffs[n][k]
    }

    /// Actual degree of the `tⁿ` coefficient, `None` when it vanishes.
    pub fn degree(&self, n: usize) -> Option<usize> {
        self.coeffs[n].iter().rposition(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs[..=order.min(self.order())].to_vec();
        while coeffs.len() <= order {
            let n = coeffs.len();
            coeffs.push(vec![C::zero(); n + 1]);
        }
        BiSeries { coeffs }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> BiSeries<D> {
        BiSeries { coeffs: self.coeffs.iter().map(|p| p.iter().map(&f).collect()).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i, k| self.coeffs[i][k].add(&rhs.coeffs[i][k]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i, k| self.coeffs[i][k].sub(&rhs.coeffs[i][k]))
    }

    pub fn neg(&self) -> Self {
        self.map(C::neg)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let (p, q) = (&self.coeffs[i], &rhs.coeffs[j]);
                let target = &mut out.coeffs[i + j];
                for (a, pa) in p.iter().enumerate() {
                    if pa.is_zero() {
                        continue;
                    }
                    for (b, qb) in q.iter().enumerate() {
                        target[a + b].add_mul(pa, qb);
                    }
                }
            }
        }
        out
    }

    /// `F(c·t, u)`.
    pub fn scale_t(&self, c: &C) -> Self {
        let mut p = C::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for poly in &self.coeffs {
            coeffs.push(poly.iter().map(|a| a.mul(&p)).collect());
            p = p.mul(c);
        }
        BiSeries { coeffs }
    }

    /// `F(t, value)`.
    pub fn specialize_u(&self, value: &C) -> Series<C> {
        Series::from_fn(self.order(), |n| poly_eval(&self.coeffs[n], value))
    }

    /// `F(t, 1 − u)`.
    pub fn reflect_u(&self) -> Self {
        let mut out = Self::zero(self.order());
        for (n, p) in self.coeffs.iter().enumerate() {
            // (1-u)^k = Σ_j C(k,j) (-u)^j
            let mut binom_row = vec![C::one()];
            for (k, pk) in p.iter().enumerate() {
                if k > 0 {
                    let mut next = vec![C::one(); k + 1];
                    for j in 1..k {
                        next[j] = binom_row[j - 1].add(&binom_row[j]);
                    }
                    binom_row = next;
                }
                if pk.is_zero() {
                    continue;
                }
                for (j, b) in binom_row.iter().enumerate() {
                    let term = pk.mul(b);
                    let target = &mut out.coeffs[n][j];
                    *target = if j % 2 == 0 { target.add(&term) } else { target.sub(&term) };
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the `t⁰` coefficient must be a nonzero constant.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0][0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = C::one().div(a0);
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0][0] = inv0.clone();
        for m in 1..=n {
            let mut acc = vec![C::zero(); m + 1];
            for j in 1..=m {
                accumulate_product(&mut acc, &self.coeffs[j], &out.coeffs[m - j]);
            }
            out.coeffs[m] = acc.iter().map(|c| c.neg().mul(&inv0)).collect();
        }
        Ok(out)
    }

    /// Square root; the `t⁰` coefficient must be a nonzero square constant.
    pub fn sqrt(&self) -> Result<Self> {
        let y0 = self.coeffs[0][0].sqrt_exact().ok_or(Error::NonSquareConstant)?;
        if y0.is_zero() {
            return Err(Error::NonSquareConstant);
        }
        let inv2y0 = C::one().div(&y0.add(&y0));
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0][0] = y0;
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            let mut cross = vec![C::zero(); m + 1];
            for j in 1..m {
                accumulate_product(&mut cross, &out.coeffs[j], &out.coeffs[m - j]);
            }
            for (a, c) in acc.iter_mut().zip(&cross) {
                *a = a.sub(c).mul(&inv2y0);
            }
            out.coeffs[m] = acc;
        }
        Ok(out)
    }
}

fn accumulate_product<C: Coeff>(acc: &mut [C], p: &[C], q: &[C]) {
    for (a, pa) in p.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (b, qb) in q.iter().enumerate() {
            if a + b < acc.len() {
                acc[a + b].add_mul(pa, qb);
            }
        }
    }
}

/// `F(T(t), U(t))` as a univariate series; `T` must have zero constant term.
pub fn bi_substitute<C: Coeff>(b: &BiSeries<C>, t_sub: &Series<C>, u_sub: &Series<C>) -> Result<Series<C>> {
    if !t_sub.coeff(0).is_zero() {
        return Err(Error::NonzeroInnerConstant);
    }
    let n = b.order().min(t_sub.order()).min(u_sub.order());
    let t_sub = t_sub.truncate(n);
    let u_sub = u_sub.truncate(n);

    let mut u_pows = vec![Series::one(n)];
    let u_vanishes = u_sub.is_zero();
    for k in 1..=n {
        if u_vanishes {
            break;
        }
        let next = u_pows[k - 1].mul(&u_sub);
        let stop = next.is_zero();
        u_pows.push(next);
        if stop {
            break;
        }
    }

    let mut result = Series::zero(n);
    let mut t_pow = Series::one(n);
    for m in 0..=n {
        let mut inner = Series::zero(n - m);
        for (k, c) in b.coeff(m).iter().enumerate() {
            if c.is_zero() || k >= u_pows.len() {
                continue;
            }
            inner = inner.add(&u_pows[k].scale(c));
        }
        if !inner.is_zero() {
            // t_pow is divisible by t^m, so only n - m terms of inner matter
            result = result.add(&t_pow.mul(&Series::new(inner.into_coeffs(), n)));
        }
        t_pow = t_pow.mul(&t_sub);
    }
    Ok(result)
}
