//! Scalar solvers and closed-form bounds.

mod radius;
mod zeta;

pub use radius::{radius_by_scan, radius_of_convergence, vanishing_polynomial, BoundValue, RadiusMethod, RadiusResult};
pub use zeta::{default_equation, solve_zeta, solve_zeta_generic, solve_zeta_surface, ZetaEquation, ZetaResult};

use rug::float::Round;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numeric::Surd;

/// Working precision of scalar root finding and minimization, in bits.
pub const SOLVE_PREC: u32 = 256;

/// `2√(d−1)/d`, the spectral radius of the `d`-regular tree.
pub fn kesten_bound(d: u32) -> Surd {
    assert!(d >= 2, "degree must be at least 2");
    Surd::sqrt_of(&Rational::from(d - 1)).scale(&Rational::from((2, d)))
}

#[derive(Clone, Debug)]
pub struct PaschkeResult {
    /// Minimum divided by `d`.
    pub value: Float,
    pub argmin: Float,
    /// Final golden-section bracket on the minimizer.
    pub bracket: (Float, Float),
}

/// `(1/d)·min_s {2 cosh s + (d−2)·Q((cosh ks + 1)/(sinh s · sinh ks))}` with `Q(x) = (√(x²+1) − 1)/x`.
pub fn paschke_bound(d: u32, k: u32) -> Result<PaschkeResult> {
    if d < 3 || k < 3 {
        return Err(Error::Domain(format!("need d, k >= 3 (got d={d}, k={k})")));
    }
    let p = SOLVE_PREC;
    let objective = |s: &Float| -> Float {
        let ks = Float::with_val(p, s * k);
        let num = Float::with_val(p, ks.cosh_ref()) + 1u32;
        let den = Float::with_val(p, s.sinh_ref()) * Float::with_val(p, ks.sinh_ref());
        let x = num / den;
        // (√(x²+1) − 1)/x written without cancellation
        let root = Float::with_val(p, x.square_ref()) + 1u32;
        let q = Float::with_val(p, &x / (root.sqrt() + 1u32));
        Float::with_val(p, s.cosh_ref()) * 2u32 + q * (d - 2)
    };

    // log-spaced scan of (1e-6, 50) for a three-point pattern
    const GRID: usize = 600;
    let lo_log = Float::with_val(p, 1e-6).ln();
    let hi_log = Float::with_val(p, 50).ln();
    let grid: Vec<Float> = (0..=GRID)
        .map(|i| {
            let w = Float::with_val(p, &hi_log - &lo_log) * i as u32 / GRID as u32;
            Float::with_val(p, &lo_log + w).exp()
        })
        .collect();
    let values: Vec<Float> = grid.iter().map(&objective).collect();
    let best = (0..=GRID)
        .min_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite objective"))
        .ok_or(Error::MinimizationFailed)?;
    if best == 0 || best == GRID {
        return Err(Error::MinimizationFailed);
    }
    let mut a = grid[best - 1].clone();
    let mut b = grid[best + 1].clone();

    let inv_phi = (Float::with_val(p, 5).sqrt() - 1u32) / 2u32;
    let mut c = Float::with_val(p, &b - Float::with_val(p, &b - &a) * &inv_phi);
    let mut e = Float::with_val(p, &a + Float::with_val(p, &b - &a) * &inv_phi);
    let (mut fc, mut fe) = (objective(&c), objective(&e));
    let tol = Float::with_val(p, 1e-25);
    while Float::with_val(p, &b - &a) > tol {
        if fc < fe {
            b = e;
            e = c;
            fe = fc;
            c = Float::with_val(p, &b - Float::with_val(p, &b - &a) * &inv_phi);
            fc = objective(&c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = Float::with_val(p, &a + Float::with_val(p, &b - &a) * &inv_phi);
            fe = objective(&e);
        }
    }
    let argmin = Float::with_val(p, &a + &b) / 2u32;
    let value = objective(&argmin) / d;
    Ok(PaschkeResult { value, argmin, bracket: (a, b) })
}

#[derive(Clone, Debug)]
pub struct SimpleBounds {
    /// `√(4g−1)/(2g)`.
    pub lower: Surd,
    /// `(√(4g−3)+2)/(2g)` before clamping.
    pub upper_raw: Float,
    /// `min(upper_raw, 1)`.
    pub upper: Float,
}

pub fn surface_simple_bounds(g: u32) -> Result<SimpleBounds> {
    if g < 2 {
        return Err(Error::Domain(format!("genus must be at least 2 (got {g})")));
    }
    let p = SOLVE_PREC;
    let lower = Surd::sqrt_of(&Rational::from(4 * g - 1)).scale(&Rational::from((1, 2 * g)));
    let upper_raw = (Float::with_val(p, 4 * g - 3).sqrt() + 2u32) / (2 * g);
    let upper = if upper_raw > 1 { Float::with_val(p, 1) } else { upper_raw.clone() };
    Ok(SimpleBounds { lower, upper_raw, upper })
}

#[derive(Clone, Debug)]
pub struct IsoperimetricBounds {
    /// `ι = (d−2)√(1 − 4/((d−2)(m−2)))`.
    pub iota: Surd,
    /// `(d² − (d−2)ι)/(d² + ι)`.
    pub mohar_lower: Float,
    /// `√(1 − ι²/d²)`.
    pub mohar_upper: Surd,
}

pub fn isoperimetric_bounds(d: u32, m: u32) -> Result<IsoperimetricBounds> {
    if d < 3 || m < 3 || (d - 2) * (m - 2) < 4 {
        return Err(Error::Domain(format!("need (d-2)(m-2) >= 4 (got d={d}, m={m})")));
    }
    let a = Rational::from((d - 2) * (m - 2));
    // ι² = (d−2)² (1 − 4/a)
    let iota_sq = Rational::from((d - 2) * (d - 2)) * (Rational::from(1) - Rational::from(4) / &a);
    let iota = Surd::sqrt_of(&iota_sq);
    let d2 = Rational::from(d * d);
    let p = SOLVE_PREC;
    let iota_f = iota.to_float(p, Round::Nearest);
    let mohar_lower = (Float::with_val(p, &d2) - Float::with_val(p, &iota_f * (d - 2))) / (Float::with_val(p, &d2) + &iota_f);
    let mohar_upper = Surd::sqrt_of(&(Rational::from(1) - iota_sq / d2));
    Ok(IsoperimetricBounds { iota, mohar_lower, mohar_upper })
}
