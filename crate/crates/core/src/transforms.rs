//! Green functions and the cactus-tree series pipeline.

use std::fmt;

use rug::{Integer, Rational};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::Coeff;
use crate::series::{bi_substitute, BiSeries, Series};

/// Prime-relator growth series `f`.
#[derive(Clone, Debug, PartialEq)]
pub enum RelatorSpec {
    /// `count · t^length`.
    Monomial { count: u64, length: usize },
    /// `Σ coeffs[n] tⁿ`.
    Explicit(Vec<Rational>),
}

/// Degree `d`, small-cancellation parameter `η` and relator series `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub d: u32,
    pub eta: Rational,
    pub relators: RelatorSpec,
}

impl ProblemSpec {
    /// The `{m, d}` tessellation `X_{d,m}`: `f = 2d·t^m`, `η = 1/m`.
    pub fn tessellation(d: u32, m: u32) -> Result<Self> {
        if d < 3 || m < 3 {
            return Err(Error::Domain(format!("tessellation needs d, m >= 3 (got d={d}, m={m})")));
        }
        Ok(ProblemSpec {
            d,
            eta: Rational::from((1, m)),
            relators: RelatorSpec::Monomial { count: 2 * d as u64, length: m as usize },
        })
    }

    /// Surface group of genus `g`, i.e. `X_{4g,4g}`.
    pub fn genus(g: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::Domain(format!("genus must be at least 2 (got {g})")));
        }
        Self::tessellation(4 * g, 4 * g)
    }

    /// The free group or `d`-regular tree: no relators.
    pub fn free(d: u32) -> Result<Self> {
        Self::explicit(d, Rational::from((1, 2)), Vec::new())
    }

    pub fn explicit(d: u32, eta: Rational, coeffs: Vec<Rational>) -> Result<Self> {
        if d < 3 {
            return Err(Error::Domain(format!("degree must be at least 3 (got {d})")));
        }
        if eta <= 0 || eta >= 1 {
            return Err(Error::Domain("eta must lie in (0, 1)".into()));
        }
        if coeffs.iter().any(|c| *c < 0) {
            return Err(Error::Domain("relator counts must be nonnegative".into()));
        }
        if coeffs.first().is_some_and(|c| *c != 0) {
            return Err(Error::Domain("relator series must have zero constant term".into()));
        }
        Ok(ProblemSpec { d, eta, relators: RelatorSpec::Explicit(coeffs) })
    }

    /// Relator length `m` for monomial specs.
    pub fn m(&self) -> Option<usize> {
        match self.relators {
            RelatorSpec::Monomial { length, .. } => Some(length),
            RelatorSpec::Explicit(_) => None,
        }
    }

    pub fn is_relator_free(&self) -> bool {
        match &self.relators {
            RelatorSpec::Monomial { count, .. } => *count == 0,
            RelatorSpec::Explicit(c) => c.iter().all(|x| *x == 0),
        }
    }

    /// `f` truncated at order `n`.
    pub fn f_series<C: Coeff>(&self, n: usize) -> Series<C> {
        match &self.relators {
            RelatorSpec::Monomial { count, length } => {
                Series::monomial(C::from_int(*count as i64), *length, n)
            }
            RelatorSpec::Explicit(c) => Series::new(c.iter().take(n + 1).map(C::from_rational).collect(), n),
        }
    }

    pub fn to_json(&self) -> Value {
        let f = match &self.relators {
            RelatorSpec::Monomial { count, length } => json!({"monomial": {"count": count, "length": length}}),
            RelatorSpec::Explicit(c) => json!({"explicit": c.iter().map(Coeff::json_repr).collect::<Vec<_>>()}),
        };
        json!({"d": self.d, "eta": self.eta.json_repr(), "f": f})
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.relators {
            RelatorSpec::Monomial { count, length } => {
                write!(f, "d={}, eta={}, f={}t^{}", self.d, self.eta, count, length)
            }
            RelatorSpec::Explicit(c) => {
                let s = Series::new(c.clone(), c.len().saturating_sub(1));
                write!(f, "d={}, eta={}, f={}", self.d, self.eta, s)
            }
        }
    }
}

/// Where `ζ` enters the spiky growth series of the tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SurdForm {
    /// `ζ` multiplies the argument of `h` only: `g₁ = prefactor(t,u) · h(ζt/(1+q t²))`.
    #[default]
    ScaledArgument,
    /// `g₁ = H(ζt, u)`.
    ScaledVariable,
}

impl SurdForm {
    pub fn name(self) -> &'static str {
        match self {
            SurdForm::ScaledArgument => "scaled-argument",
            SurdForm::ScaledVariable => "scaled-variable",
        }
    }
}

/// Closed walks at a vertex of the `d`-regular tree:
/// `h = 2(d−1)/(d−2+d√(1−4(d−1)t²))`.
pub fn tree_green<C: Coeff>(d: u32, n: usize) -> Result<Series<C>> {
    if d < 2 {
        return Err(Error::Domain(format!("tree degree must be at least 2 (got {d})")));
    }
    let d = d as i64;
    let disc = Series::new(vec![C::one(), C::zero(), C::from_int(-4 * (d - 1))], n);
    let den = disc.sqrt()?.scale(&C::from_int(d)).add(&Series::constant(C::from_int(d - 2), n));
    Ok(den.reciprocal()?.scale(&C::from_int(2 * (d - 1))))
}

/// Closed walks at a vertex of the `k`-cycle: `#{±1 sequences of length n summing to 0 mod k}`.
pub fn cycle_green(k: u32, n: usize) -> Result<Series> {
    if k < 3 {
        return Err(Error::Domain(format!("cycle length must be at least 3 (got {k})")));
    }
    let k = k as i64;
    Ok(Series::from_fn(n, |len| {
        let len_i = len as i64;
        let mut total = Integer::new();
        let mut r = -(len_i / k) * k;
        while r <= len_i {
            if (len_i + r) % 2 == 0 {
                total += Integer::from(len as u32).binomial(((len_i + r) / 2) as u32);
            }
            r += k;
        }
        Rational::from(total)
    }))
}

/// `q(u) = (1−u)(d−1+u) = (d−1) + (2−d)u − u²`.
fn q_poly<C: Coeff>(d: u32) -> Vec<C> {
    let d = d as i64;
    vec![C::from_int(d - 1), C::from_int(2 - d), C::from_int(-1)]
}

fn poly_mul<C: Coeff>(p: &[C], q: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j].add_mul(a, b);
        }
    }
    out
}

/// Spiky growth series from a Green series `g` of a `d`-regular graph:
/// `H(t,u) = (1−(1−u)²t²)/(1+q t²) · g(t/(1+q t²))` with `q = (1−u)(d−1+u)`.
pub fn cogrowth_transform<C: Coeff>(g: &Series<C>, d: u32) -> Result<BiSeries<C>> {
    let n = g.order();
    let q = q_poly::<C>(d);
    let mut q_pows = vec![vec![C::one()]];
    for j in 1..=n / 2 {
        q_pows.push(poly_mul(&q_pows[j - 1], &q));
    }
    // [t^N] g(t/(1+q t²)) = Σ_j g_{N−2j} C(−(N−2j), j) q^j
    let mut coeffs = Vec::with_capacity(n + 1);
    for total in 0..=n {
        let mut poly = vec![C::zero(); total + 1];
        for (j, qj) in q_pows.iter().enumerate().take(total / 2 + 1) {
            let m = total - 2 * j;
            let gm = g.coeff(m);
            if gm.is_zero() {
                continue;
            }
            let b = neg_binomial(m, j);
            if b == 0 {
                continue;
            }
            let w = gm.mul(&C::from_rational(&Rational::from(b)));
            for (k, c) in qj.iter().enumerate() {
                poly[k].add_mul(&w, c);
            }
        }
        coeffs.push(poly);
    }
    let inner = BiSeries::new(coeffs, n)?;
    // (1−u)² = 1 − 2u + u²
    let num = BiSeries::one(n).sub(&BiSeries::poly_monomial(&[C::one(), C::from_int(-2), C::one()], 2, n)?);
    let den = BiSeries::one(n).add(&BiSeries::poly_monomial(&q, 2, n)?);
    Ok(num.mul(&inner).mul(&den.reciprocal()?))
}

/// `C(−m, j)` as an integer.
fn neg_binomial(m: usize, j: usize) -> Integer {
    if m == 0 {
        return Integer::from(j == 0);
    }
    let b = Integer::from((m + j - 1) as u32).binomial(j as u32);
    if j % 2 == 1 {
        -b
    } else {
        b
    }
}

/// `Θ(t,u) = 2(d−1)(1−u²t²) / ((d−2)(1+u(d−u)t²) + d√((1+u(d−u)t²)² − 4(d−1)t²))`.
///
/// The spiky growth series of the tree is `Θ(t, 1−u)`.
pub fn theta<C: Coeff>(d: u32, n: usize) -> Result<BiSeries<C>> {
    let di = d as i64;
    let w = BiSeries::one(n).add(&BiSeries::poly_monomial(&[C::zero(), C::from_int(di), C::from_int(-1)], 2, n)?);
    let disc = w.mul(&w).sub(&BiSeries::poly_monomial(&[C::from_int(4 * (di - 1))], 2, n)?);
    let den = w.scale(&C::from_int(di - 2)).add(&disc.sqrt()?.scale(&C::from_int(di)));
    let num = BiSeries::one(n)
        .sub(&BiSeries::poly_monomial(&[C::zero(), C::zero(), C::one()], 2, n)?)
        .scale(&C::from_int(2 * (di - 1)));
    Ok(num.mul(&den.reciprocal()?))
}

/// Spiky growth series of the `d`-regular tree from the closed form.
pub fn tree_spiky<C: Coeff>(d: u32, n: usize) -> Result<BiSeries<C>> {
    Ok(theta::<C>(d, n)?.reflect_u())
}

/// Intermediate and final series of the cactus pipeline.
#[derive(Clone, Debug)]
pub struct PipelineResult<C> {
    pub h: Series<C>,
    pub big_h: BiSeries<C>,
    pub g1: BiSeries<C>,
    pub g2: Series<C>,
    pub g3: Series<C>,
    pub zeta_used: C,
    pub form: SurdForm,
}

fn series_json<C: Coeff>(s: &Series<C>) -> Value {
    Value::Array(s.coeffs().iter().map(|c| Value::String(c.json_repr())).collect())
}

fn bi_json<C: Coeff>(b: &BiSeries<C>) -> Value {
    Value::Array(
        (0..=b.order())
            .map(|n| Value::Array(b.coeff(n).iter().map(|c| Value::String(c.json_repr())).collect()))
            .collect(),
    )
}

impl<C: Coeff> PipelineResult<C> {
    pub fn to_json(&self) -> Value {
        json!({
            "h": series_json(&self.h),
            "H": bi_json(&self.big_h),
            "g1": bi_json(&self.g1),
            "g2": series_json(&self.g2),
            "g3": series_json(&self.g3),
            "zeta_used": self.zeta_used.to_decimal(40),
            "surd_form": self.form.name(),
        })
    }
}

/// The argument `(1−√(1−4(d−1)t²))/(2(d−1)t)` of the outer substitution, by reversion.
pub fn tree_kernel_inverse<C: Coeff>(d: u32, n: usize) -> Result<Series<C>> {
    let k = Series::new(vec![C::one(), C::zero(), C::from_int(d as i64 - 1)], n);
    Series::var(n).div(&k)?.revert()
}

pub fn cactus_pipeline<C: Coeff>(spec: &ProblemSpec, zeta: &C, n: usize) -> Result<PipelineResult<C>> {
    cactus_pipeline_with(spec, zeta, n, SurdForm::default())
}

/// Runs `h → H → g₁ → g₂ → g₃` for the given `ζ` and placement of `ζ`.
pub fn cactus_pipeline_with<C: Coeff>(
    spec: &ProblemSpec,
    zeta: &C,
    n: usize,
    form: SurdForm,
) -> Result<PipelineResult<C>> {
    let d = spec.d;
    if d < 3 {
        return Err(Error::Domain(format!("degree must be at least 3 (got {d})")));
    }
    if *zeta <= C::zero() || *zeta > C::one() {
        return Err(Error::Domain(format!("zeta must lie in (0, 1] (got {zeta})")));
    }
    let f: Series<C> = spec.f_series(n);
    if f.coeffs().iter().any(|c| !c.is_nonnegative()) {
        return Err(Error::Domain("relator counts must be nonnegative".into()));
    }
    let h = tree_green::<C>(d, n)?;
    let big_h = cogrowth_transform(&h, d)?;
    let g1 = match form {
        SurdForm::ScaledVariable => big_h.scale_t(zeta),
        SurdForm::ScaledArgument => cogrowth_transform(&h.scale_var(zeta), d)?,
    };

    let dc = C::from_int(d as i64);
    let dm1 = C::from_int(d as i64 - 1);
    let d_minus_f = Series::constant(dc.clone(), n).sub(&f);
    let denom = Series::constant(dc.clone(), n).sub(&f.scale(&dm1));
    let t_sub = Series::var(n).mul(&d_minus_f).div(&denom)?;
    let u_sub = f.scale(&C::from_int(d as i64 - 2)).div(&d_minus_f)?;
    let g2 = bi_substitute(&g1, &t_sub, &u_sub)?;

    let e = tree_kernel_inverse::<C>(d, n)?;
    let g3 = h.mul(&g2.compose(&e)?);
    Ok(PipelineResult { h, big_h, g1, g2, g3, zeta_used: zeta.clone(), form })
}

/// Green function of a free product: `1/(tG)⁻¹ = 1/(tG₁)⁻¹ + 1/(tG₂)⁻¹ − 1/t`.
pub fn free_product_green<C: Coeff>(g1: &Series<C>, g2: &Series<C>) -> Result<Series<C>> {
    let n = g1.order().min(g2.order());
    let q1 = inverse_ratio(&g1.truncate(n))?;
    let q2 = inverse_ratio(&g2.truncate(n))?;
    let one = Series::one(n);
    let q = q1.reciprocal()?.add(&q2.reciprocal()?).sub(&one).reciprocal()?;
    inverse_ratio(&q)
}

/// Green function of Paschke's graph `P_{k,d}`, the Cayley graph of `ℤ/k ∗ (ℤ/2)^{∗(d−2)}`.
pub fn pkd_green<C: Coeff>(k: u32, d: u32, n: usize) -> Result<Series<C>> {
    if d < 3 {
        return Err(Error::Domain(format!("degree must be at least 3 (got {d})")));
    }
    let cycle: Series<C> = cycle_green(k, n)?.map(C::from_rational);
    // a single edge: 1/(1−t²)
    let edge = Series::new(vec![C::one(), C::zero(), C::from_int(-1)], n).reciprocal()?;
    let mut g = cycle;
    for _ in 0..d - 2 {
        g = free_product_green(&g, &edge)?;
    }
    Ok(g)
}

/// `(tG)⁻¹ / t` for `G` with constant term 1, keeping the order.
fn inverse_ratio<C: Coeff>(g: &Series<C>) -> Result<Series<C>> {
    let n = g.order();
    if g.coeff(0) != &C::one() {
        return Err(Error::Domain("Green series must have constant term 1".into()));
    }
    let tg = Series::new(g.coeffs().to_vec(), n + 1).shift_up(1);
    tg.revert()?.shift_down(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Real;

    type Q = Rational;

    fn ints(v: &[i64], n: usize) -> Series {
        Series::from_ints(v.iter().copied(), n)
    }

    fn central_binomials(n: usize) -> Series {
        Series::from_fn(n, |k| {
            if k % 2 == 1 {
                Rational::new()
            } else {
                Rational::from(Integer::from(k as u32).binomial((k / 2) as u32))
            }
        })
    }

    #[test]
    fn tree_green_small_cases() {
        let h = tree_green::<Q>(8, 10).unwrap();
        assert_eq!(h.coeff(0), &Rational::from(1));
        assert_eq!(h.coeff(2), &Rational::from(8));
        // closed walks of length 4 in the 8-regular tree: 8*7 + 8*8 = 120
        assert_eq!(h.coeff(4), &Rational::from(120));
        for k in (1..=10).step_by(2) {
            assert!(h.coeff(k).is_zero());
        }
        assert_eq!(tree_green::<Q>(2, 12).unwrap(), central_binomials(12));
    }

    #[test]
    fn cycle_green_small_cases() {
        let c4 = cycle_green(4, 8).unwrap();
        assert_eq!(c4.coeff(0), &Rational::from(1));
        assert!(c4.coeff(1).is_zero());
        assert_eq!(c4.coeff(2), &Rational::from(2));
        // C_4 is bipartite with eigenvalues 2, 0, 0, -2: (2^n + (-2)^n)/4
        assert_eq!(c4.coeff(8), &Rational::from(128));
        let c3 = cycle_green(3, 6).unwrap();
        // eigenvalues 2, -1, -1: (2^n + 2(-1)^n)/3
        assert_eq!(c3.coeff(3), &Rational::from(2));
        assert_eq!(c3.coeff(6), &Rational::from(22));
        let c13 = cycle_green(13, 12).unwrap();
        assert_eq!(c13, central_binomials(12));
    }

    #[test]
    fn cogrowth_specializations() {
        let n = 14;
        let h = tree_green::<Q>(6, n).unwrap();
        let big_h = cogrowth_transform(&h, 6).unwrap();
        assert_eq!(big_h.specialize_u(&Rational::from(1)), h);
        assert_eq!(big_h.specialize_u(&Rational::new()), Series::one(n));
        // [t²]H = d u: a spiky circuit of length 2 is one backtrack
        assert_eq!(big_h.coeff(2).to_vec(), vec![Rational::new(), Rational::from(6), Rational::new()]);
        let g = ints(&[1, 0, 3, 1, 7, 2], n);
        assert_eq!(cogrowth_transform(&g, 5).unwrap().specialize_u(&Rational::from(1)), g);
    }

    #[test]
    fn cogrowth_of_tree_matches_theta() {
        for d in [3u32, 4, 8] {
            let n = 16;
            let h = tree_green::<Q>(d, n).unwrap();
            assert_eq!(cogrowth_transform(&h, d).unwrap(), tree_spiky::<Q>(d, n).unwrap());
        }
    }

    #[test]
    fn kernel_inverse_matches_surd_quotient() {
        let n = 18;
        let e = tree_kernel_inverse::<Q>(8, n).unwrap();
        let r = ints(&[1, 0, -28], n + 1).sqrt().unwrap();
        let direct = Series::one(n + 1).sub(&r).shift_down(1).unwrap().scale(&Rational::from((1, 14)));
        assert_eq!(e, direct);
    }

    #[test]
    fn relator_free_pipeline_is_tree() {
        let spec = ProblemSpec::free(8).unwrap();
        for form in [SurdForm::ScaledArgument, SurdForm::ScaledVariable] {
            let r = cactus_pipeline_with(&spec, &Rational::from(1), 20, form).unwrap();
            assert_eq!(r.g2, Series::one(20));
            assert_eq!(r.g3, r.h);
        }
    }

    #[test]
    fn pipeline_forms_agree_at_zeta_one() {
        let spec = ProblemSpec::tessellation(8, 8).unwrap();
        let one = Rational::from(1);
        let a = cactus_pipeline_with(&spec, &one, 18, SurdForm::ScaledArgument).unwrap();
        let b = cactus_pipeline_with(&spec, &one, 18, SurdForm::ScaledVariable).unwrap();
        assert_eq!(a.g3, b.g3);
        assert_eq!(a.g3.coeff(0), &one);
        assert!(a.g3.coeffs().iter().all(|c| *c >= 0));
        assert!(a.g2.coeffs().iter().all(|c| *c >= 0));
    }

    #[test]
    fn pipeline_rejects_bad_input() {
        let spec = ProblemSpec::tessellation(8, 8).unwrap();
        assert!(cactus_pipeline(&spec, &Rational::from(2), 8).is_err());
        assert!(cactus_pipeline(&spec, &Rational::new(), 8).is_err());
        assert!(ProblemSpec::tessellation(2, 8).is_err());
        assert!(ProblemSpec::explicit(4, Rational::from((1, 4)), vec![Rational::new(), Rational::from(-1)]).is_err());
    }

    #[test]
    fn real_pipeline_tracks_exact() {
        let spec = ProblemSpec::tessellation(8, 8).unwrap();
        let z = Rational::from((99, 100));
        let exact = cactus_pipeline(&spec, &z, 16).unwrap();
        let real = cactus_pipeline(&spec, &Real::from_rational(&z), 16).unwrap();
        for k in 0..=16 {
            let a = Real::from_rational(exact.g3.coeff(k));
            let rel = a.sub(real.g3.coeff(k)).to_f64().abs() / a.to_f64().abs().max(1.0);
            assert!(rel <= 1e-40, "{k}: {rel}");
        }
    }

    #[test]
    fn free_product_cases() {
        let n = 16;
        let k2 = Series::from_fn(n, |k| Rational::from((k % 2 == 0) as i64));
        assert_eq!(free_product_green(&k2, &k2).unwrap(), central_binomials(n));
        let h = tree_green::<Q>(5, n).unwrap();
        assert_eq!(free_product_green(&h, &Series::one(n)).unwrap(), h);
        let c = cycle_green(3, n).unwrap();
        assert_eq!(free_product_green(&h, &c).unwrap(), free_product_green(&c, &h).unwrap());
        // Z * Z (two copies of the line) is the 4-regular tree
        let line = central_binomials(n);
        assert_eq!(free_product_green(&line, &line).unwrap(), tree_green::<Q>(4, n).unwrap());
    }

    #[test]
    fn pkd_green_values() {
        let g = pkd_green::<Q>(3, 4, 11).unwrap();
        let expect = [1, 0, 4, 2, 28, 30, 234, 378, 2172, 4538, 21674, 53614];
        assert_eq!(g, Series::from_ints(expect, 11));
        assert!(pkd_green::<Q>(3, 2, 4).is_err());
    }

    #[test]
    fn json_shape() {
        let spec = ProblemSpec::tessellation(4, 6).unwrap();
        let r = cactus_pipeline(&spec, &Rational::from((1, 2)), 6).unwrap();
        let v = r.to_json();
        for key in ["h", "H", "g1", "g2", "g3", "zeta_used"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["zeta_used"].as_str().unwrap(), format!("0.5{}", "0".repeat(39)));
        assert_eq!(v["H"][2].as_array().unwrap().len(), 3);
    }
}
