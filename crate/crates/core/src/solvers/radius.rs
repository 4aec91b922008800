//! Radius of convergence of `g₃` from the vanishing of the surd in `g₂`.

use std::fmt;

use rug::float::Round;
use rug::{Float, Rational};

use super::SOLVE_PREC;
use crate::error::{Error, Result};
use crate::numeric::{decimal_string, ten_pow, Surd};
use crate::series::Series;
use crate::transforms::{ProblemSpec, SurdForm};

const SCAN_POINTS: u32 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadiusMethod {
    /// Exact rational bisection on the polynomial whose zero set contains the surd's zeros.
    Algebraic,
    /// Floating bisection on the surd argument itself.
    Scan,
    /// The surd never vanishes below the tree's branch point.
    BranchPoint,
}

impl fmt::Display for RadiusMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadiusMethod::Algebraic => "algebraic",
            RadiusMethod::Scan => "scan",
            RadiusMethod::BranchPoint => "branch-point",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RadiusResult {
    /// Bracket on the least positive zero `α`; `None` in the branch-point case.
    pub alpha: Option<(Rational, Rational)>,
    /// Upper estimate of `ρ`, exact when `α` is known.
    pub rho: Float,
    /// `1/(dρ)` rounded down.
    pub bound: Float,
    /// Exact lower bound when `α` is known, else the Kesten surd.
    pub bound_exact: BoundValue,
    pub method: RadiusMethod,
    pub form: SurdForm,
    /// Degree of the vanishing polynomial.
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub enum BoundValue {
    Rational(Rational),
    Surd(Surd),
}

impl BoundValue {
    pub fn decimal_down(&self, digits: u32) -> String {
        match self {
            BoundValue::Rational(r) => decimal_string(r, digits, Round::Down),
            BoundValue::Surd(s) => s.decimal(digits, Round::Down),
        }
    }
}

impl RadiusResult {
    pub fn alpha_upper(&self) -> Option<&Rational> {
        self.alpha.as_ref().map(|a| &a.1)
    }
}

/// `Den(t)² − 4(d−1)ζ²t²(d−f)²` with `Den = d−(d−1)f + c·t²(d(d−1)−f)`,
/// where `c = 1` or `ζ²` depending on `form`.
pub fn vanishing_polynomial(spec: &ProblemSpec, zeta: &Rational, form: SurdForm) -> Series {
    let d = spec.d as i64;
    let fdeg = match &spec.relators {
        crate::transforms::RelatorSpec::Monomial { length, .. } => *length,
        crate::transforms::RelatorSpec::Explicit(c) => c.len().saturating_sub(1),
    };
    let n = 2 * (fdeg + 2);
    let f: Series = spec.f_series(n);
    let c = match form {
        SurdForm::ScaledArgument => Rational::from(1),
        SurdForm::ScaledVariable => Rational::from(zeta * zeta),
    };
    let konst = |v: i64| Series::constant(Rational::from(v), n);
    let b = konst(d).sub(&f.scale(&Rational::from(d - 1)));
    let inner = konst(d * (d - 1)).sub(&f).shift_up(2).scale(&c);
    let den = b.add(&inner);
    let dmf = konst(d).sub(&f);
    let zz = Rational::from(zeta * zeta) * Rational::from(4 * (d - 1));
    den.mul(&den).sub(&dmf.mul(&dmf).shift_up(2).scale(&zz))
}

fn eval_poly(p: &[Rational], t: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in p.iter().rev() {
        acc *= t;
        acc += c;
    }
    acc
}

/// `ρ = α/(1+(d−1)α²)`.
fn rho_of(alpha: &Rational, d: u32) -> Rational {
    let a2 = Rational::from(alpha * alpha);
    alpha / (a2 * (d - 1) + 1u32)
}

/// Radius via exact bisection. `zeta` should already be rounded down.
pub fn radius_of_convergence(spec: &ProblemSpec, zeta: &Rational, form: SurdForm, digits: u32) -> Result<RadiusResult> {
    let d = spec.d;
    if d < 3 {
        return Err(Error::Domain(format!("degree must be at least 3 (got {d})")));
    }
    if *zeta <= 0 || *zeta > 1 {
        return Err(Error::Domain("zeta must lie in (0, 1]".into()));
    }
    let poly = vanishing_polynomial(spec, zeta, form);
    let coeffs: Vec<Rational> = poly.coeffs().to_vec();
    let degree = poly.coeffs().iter().rposition(|c| *c != 0).unwrap_or(0);
    let coeffs = &coeffs[..=degree];

    // search (0, 1/√(d−1)); the grid step is a rational just below the endpoint
    let end = Float::with_val(SOLVE_PREC, d - 1).sqrt().recip();
    let end = end.to_rational().expect("finite");
    let mut prev = Rational::new();
    let mut found = None;
    for i in 1..SCAN_POINTS {
        let t = &end * Rational::from((i, SCAN_POINTS));
        if eval_poly(coeffs, &t) <= 0 {
            found = Some((prev, t));
            break;
        }
        prev = t;
    }
    let Some((mut lo, mut hi)) = found else {
        return Ok(branch_point(d, form, degree));
    };
    let width = Rational::from((1, ten_pow(digits + 5)));
    while Rational::from(&hi - &lo) > width {
        let mid = Rational::from(&lo + &hi) / 2u32;
        if eval_poly(coeffs, &mid) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rho = rho_of(&hi, d);
    let bound = Rational::from((1, d)) / &rho;
    let bound_down = crate::numeric::decimal_floor(&bound, digits + 5);
    Ok(RadiusResult {
        alpha: Some((lo, hi)),
        rho: Float::with_val_round(SOLVE_PREC, &rho, Round::Up).0,
        bound: Float::with_val_round(SOLVE_PREC, &bound_down, Round::Down).0,
        bound_exact: BoundValue::Rational(bound_down),
        method: RadiusMethod::Algebraic,
        form,
        degree,
    })
}

fn branch_point(d: u32, form: SurdForm, degree: usize) -> RadiusResult {
    let kesten = super::kesten_bound(d);
    RadiusResult {
        alpha: None,
        rho: Float::with_val_round(SOLVE_PREC, Float::with_val(SOLVE_PREC, d - 1).sqrt() * 2u32, Round::Down)
            .0
            .recip(),
        bound: kesten.to_float(SOLVE_PREC, Round::Down),
        bound_exact: BoundValue::Surd(kesten),
        method: RadiusMethod::BranchPoint,
        form,
        degree,
    }
}

/// Independent floating check: bisection on `1 − 4(d−1)y(t)²` for the surd argument `y`.
pub fn radius_by_scan(spec: &ProblemSpec, zeta: &Float, form: SurdForm) -> Result<RadiusResult> {
    let d = spec.d;
    let p = SOLVE_PREC;
    let f: Series = spec.f_series(match &spec.relators {
        crate::transforms::RelatorSpec::Monomial { length, .. } => *length,
        crate::transforms::RelatorSpec::Explicit(c) => c.len().saturating_sub(1),
    });
    let eval_f = |t: &Float| {
        let mut acc = Float::with_val(p, 0);
        for c in f.coeffs().iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    };
    let c = match form {
        SurdForm::ScaledArgument => Float::with_val(p, 1),
        SurdForm::ScaledVariable => Float::with_val(p, zeta * zeta),
    };
    let surd = |t: &Float| {
        let ft = eval_f(t);
        let b = Float::with_val(p, d) - Float::with_val(p, &ft * (d - 1));
        let t2 = Float::with_val(p, t * t);
        let den = b + Float::with_val(p, Float::with_val(p, d * (d - 1)) - &ft) * t2 * &c;
        let y = Float::with_val(p, zeta * t) * (Float::with_val(p, d) - ft) / den;
        Float::with_val(p, 1) - Float::with_val(p, &y * &y) * (4 * (d - 1))
    };
    let end = Float::with_val(p, d - 1).sqrt().recip();
    let mut prev = Float::with_val(p, 0);
    let mut found = None;
    for i in 1..SCAN_POINTS {
        let t = Float::with_val(p, &end * i) / SCAN_POINTS;
        if !surd(&t).is_sign_positive() {
            found = Some((prev, t));
            break;
        }
        prev = t;
    }
    let Some((mut lo, mut hi)) = found else {
        return Ok(branch_point(d, form, 0));
    };
    for _ in 0..200 {
        let mid = Float::with_val(p, &lo + &hi) / 2u32;
        if surd(&mid).is_sign_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a2 = Float::with_val(p, &hi * &hi);
    let rho = Float::with_val(p, &hi / (a2 * (d - 1) + 1u32));
    let bound = Float::with_val(p, &rho * d).recip();
    Ok(RadiusResult {
        alpha: Some((lo.to_rational().expect("finite"), hi.to_rational().expect("finite"))),
        rho,
        bound,
        bound_exact: BoundValue::Rational(Rational::new()),
        method: RadiusMethod::Scan,
        form,
        degree: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::solve_zeta_surface;

    fn zeta_from_deviation(dev: f64) -> Rational {
        Rational::from(1) - Rational::from_f64(dev).unwrap()
    }

    #[test]
    fn surface_genus_two() {
        let spec = ProblemSpec::tessellation(8, 8).unwrap();
        let z = solve_zeta_surface(8, 8, 30).unwrap().lower_rational(30);
        let r = radius_of_convergence(&spec, &z, SurdForm::ScaledArgument, 30).unwrap();
        assert_eq!(r.degree, 20);
        assert_eq!(r.method, RadiusMethod::Algebraic);
        let alpha = r.alpha_upper().unwrap().to_f64();
        assert!((alpha - 0.357936).abs() < 1e-6, "{alpha}");
        assert!((r.rho.to_f64() - 0.188702).abs() < 1e-6);
        assert!(r.bound >= 0.662418);
        assert!(r.bound_exact.decimal_down(6) == "0.662418");
    }

    #[test]
    fn literal_form_is_less_conservative() {
        let spec = ProblemSpec::tessellation(8, 8).unwrap();
        let z = zeta_from_deviation(6.676e-6);
        let a = radius_of_convergence(&spec, &z, SurdForm::ScaledArgument, 20).unwrap();
        let v = radius_of_convergence(&spec, &z, SurdForm::ScaledVariable, 20).unwrap();
        assert!(v.bound > a.bound);
        assert!((v.alpha_upper().unwrap().to_f64() - 0.3579015).abs() < 1e-6);
    }

    #[test]
    fn scan_agrees_with_algebraic() {
        for (d, m) in [(8u32, 8u32), (12, 12), (6, 5)] {
            let spec = ProblemSpec::tessellation(d, m).unwrap();
            let z = zeta_from_deviation(1e-4);
            let alg = radius_of_convergence(&spec, &z, SurdForm::ScaledArgument, 25).unwrap();
            let scan = radius_by_scan(&spec, &Float::with_val(SOLVE_PREC, &z), SurdForm::ScaledArgument).unwrap();
            let diff = Float::with_val(SOLVE_PREC, &alg.rho - &scan.rho).abs().to_f64();
            assert!(diff < 1e-25, "{d},{m}: {diff}");
        }
    }

    #[test]
    fn relator_free_is_kesten() {
        let spec = ProblemSpec::free(8).unwrap();
        let r = radius_of_convergence(&spec, &Rational::from(1), SurdForm::ScaledArgument, 20).unwrap();
        assert_eq!(r.method, RadiusMethod::BranchPoint);
        let k = 2.0 * 7f64.sqrt() / 8.0;
        assert!((r.bound.to_f64() - k).abs() < 1e-15);
        assert!((r.rho.to_f64() - 1.0 / (2.0 * 7f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn genus_three() {
        let spec = ProblemSpec::genus(3).unwrap();
        let z = solve_zeta_surface(12, 12, 30).unwrap().lower_rational(30);
        let r = radius_of_convergence(&spec, &z, SurdForm::ScaledArgument, 30).unwrap();
        assert!((r.alpha_upper().unwrap().to_f64() - 0.300563202).abs() < 1e-8);
        assert!((r.rho.to_f64() - 0.150754925).abs() < 1e-8);
        assert!(r.bound_exact.decimal_down(6) == "0.552773");
    }
}
