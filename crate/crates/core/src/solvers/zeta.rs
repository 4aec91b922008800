//! Roots `ζ ∈ (0,1]` of the local-lemma equations.

use std::fmt;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Rational};

use super::SOLVE_PREC;
use crate::error::{Error, Result};
use crate::numeric::{decimal_floor, decimal_string};
use crate::transforms::{ProblemSpec, RelatorSpec};

/// Number of subintervals of `(0, 1]` scanned for the largest sign change.
const SCAN_POINTS: u32 = 1 << 10;

#[derive(Clone, Debug, PartialEq)]
pub enum ZetaEquation {
    /// `ζ − 1 + (1 − 1/d)·ζ·f(ζ^{η−1}/(d−1)) = 0`.
    Generic(ProblemSpec),
    /// `ζ − 1 + 2(dζ − 1)/((dζ)^{m−1} − 1) = 0`, the local-series equation for `X_{d,m}`.
    Localsg { d: u32, m: u32 },
    /// `ζ − 1 + 2(dζ − 1)/(d^m ζ^m − 1) = 0`.
    SurfaceExponentM { d: u32, m: u32 },
    /// `ζ − 1 + (ρζ/#A)·Φ(1/(ρζ)) = 0` for forbidden words with growth series `Φ = Σ count·t^length`.
    LocalLemma { rho: u32, alphabet: u32, phi: Vec<(u32, u64)> },
}

impl ZetaEquation {
    pub fn id(&self) -> &'static str {
        match self {
            ZetaEquation::Generic(_) => "generic",
            ZetaEquation::Localsg { .. } => "localsg",
            ZetaEquation::SurfaceExponentM { .. } => "surface",
            ZetaEquation::LocalLemma { .. } => "local-lemma",
        }
    }

    /// Left-hand side at `z`, evaluated at `SOLVE_PREC` bits.
    pub fn eval(&self, z: &Float) -> Float {
        let p = SOLVE_PREC;
        let base = Float::with_val(p, z - 1u32);
        match self {
            ZetaEquation::Generic(spec) => {
                let d = spec.d;
                let eta_m1 = Float::with_val(p, &spec.eta - Rational::from(1));
                let x = Float::with_val(p, z.pow(&eta_m1)) / (d - 1);
                let fx = match &spec.relators {
                    RelatorSpec::Monomial { count, length } => {
                        Float::with_val(p, (&x).pow(*length as u32)) * *count
                    }
                    RelatorSpec::Explicit(c) => {
                        let mut acc = Float::with_val(p, 0);
                        for a in c.iter().rev() {
                            acc *= &x;
                            acc += a;
                        }
                        acc
                    }
                };
                let w = Float::with_val(p, 1) - Float::with_val(p, 1) / d;
                base + w * z * fx
            }
            ZetaEquation::Localsg { d, m } => base + 2u32 / geometric_sum(z, *d, *m - 1),
            ZetaEquation::SurfaceExponentM { d, m } => base + 2u32 / geometric_sum(z, *d, *m),
            ZetaEquation::LocalLemma { rho, alphabet, phi } => {
                let rz = Float::with_val(p, z * *rho);
                let x = Float::with_val(p, 1u32 / &rz);
                let mut acc = Float::with_val(p, 0);
                for &(len, count) in phi {
                    acc += Float::with_val(p, (&x).pow(len)) * count;
                }
                base + rz * acc / *alphabet
            }
        }
    }
}

impl fmt::Display for ZetaEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaEquation::Generic(spec) => write!(f, "generic ({spec})"),
            ZetaEquation::Localsg { d, m } => write!(f, "localsg (d={d}, m={m})"),
            ZetaEquation::SurfaceExponentM { d, m } => write!(f, "surface (d={d}, m={m})"),
            ZetaEquation::LocalLemma { rho, alphabet, phi } => {
                write!(f, "local-lemma (rho={rho}, #A={alphabet}, Phi=")?;
                for (i, (len, count)) in phi.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{count}t^{len}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// `Σ_{j<terms} (dz)^j`, which equals `((dz)^terms − 1)/(dz − 1)` away from `dz = 1`.
fn geometric_sum(z: &Float, d: u32, terms: u32) -> Float {
    let x = Float::with_val(SOLVE_PREC, z * d);
    let mut acc = Float::with_val(SOLVE_PREC, 0);
    for _ in 0..terms {
        acc *= &x;
        acc += 1u32;
    }
    acc
}

#[derive(Clone, Debug)]
pub struct ZetaResult {
    /// Lower end of the final bracket; at most the true root.
    pub zeta: Float,
    pub equation: ZetaEquation,
    /// `|F(ζ)|` at the reported value.
    pub residual: Float,
    /// Exact bracket `[lo, hi]` with `F(lo) ≤ 0 < F(hi)` or `lo = hi = 1` when `F(1) = 0`.
    pub bracket: (Rational, Rational),
}

impl ZetaResult {
    /// `ζ` rounded down to `digits` decimals, as an exact rational.
    pub fn lower_rational(&self, digits: u32) -> Rational {
        decimal_floor(&self.bracket.0, digits)
    }

    /// `1 − ζ` as a float.
    pub fn deviation(&self) -> Float {
        Float::with_val(SOLVE_PREC, 1u32 - &self.zeta)
    }

    pub fn decimal(&self, digits: u32) -> String {
        decimal_string(&self.bracket.0, digits, Round::Down)
    }
}

/// Largest root of `equation` in `(0, 1]`, bracketed to width `10^-(digits+5)`.
pub fn solve_zeta(equation: ZetaEquation, digits: u32) -> Result<ZetaResult> {
    let p = SOLVE_PREC;
    let sign_at = |r: &Rational| equation.eval(&Float::with_val(p, r));
    let one = Rational::from(1);
    let f1 = sign_at(&one);
    if f1.is_zero() {
        return Ok(ZetaResult {
            zeta: Float::with_val(p, 1),
            residual: Float::with_val(p, 0),
            bracket: (one.clone(), one),
            equation,
        });
    }
    if f1.is_sign_negative() {
        return Err(Error::NoRootInUnitInterval { equation: equation.id() });
    }
    // scan downward from 1 for the first point where the left-hand side is <= 0
    let mut hi = one;
    let mut lo = None;
    for i in (1..SCAN_POINTS).rev() {
        let x = Rational::from((i, SCAN_POINTS));
        let v = sign_at(&x);
        if v.is_nan() {
            continue;
        }
        if !v.is_sign_positive() || v.is_zero() {
            lo = Some(x);
            break;
        }
        hi = x;
    }
    let mut lo = lo.ok_or(Error::NoRootInUnitInterval { equation: equation.id() })?;
    let width = Rational::from((1, crate::numeric::ten_pow(digits + 5)));
    while Rational::from(&hi - &lo) > width {
        let mid = Rational::from(&lo + &hi) / 2u32;
        let v = sign_at(&mid);
        if v.is_sign_positive() && !v.is_zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let zeta = Float::with_val_round(p, &lo, Round::Down).0;
    let residual = Float::with_val(p, equation.eval(&zeta).abs_ref());
    Ok(ZetaResult { zeta, equation, residual, bracket: (lo, hi) })
}

pub fn solve_zeta_generic(spec: &ProblemSpec, digits: u32) -> Result<ZetaResult> {
    solve_zeta(ZetaEquation::Generic(spec.clone()), digits)
}

/// `ζ` for the tessellation `X_{d,m}` from the local-series equation.
pub fn solve_zeta_surface(d: u32, m: u32, digits: u32) -> Result<ZetaResult> {
    if d < 3 || m < 3 {
        return Err(Error::Domain(format!("need d, m >= 3 (got d={d}, m={m})")));
    }
    solve_zeta(ZetaEquation::Localsg { d, m }, digits)
}

/// The equation used by default for `spec`: local-series for tessellations, generic otherwise.
pub fn default_equation(spec: &ProblemSpec) -> ZetaEquation {
    match spec.relators {
        RelatorSpec::Monomial { count, length } if count == 2 * spec.d as u64 && spec.eta == Rational::from((1, length as u32)) => {
            ZetaEquation::Localsg { d: spec.d, m: length as u32 }
        }
        _ => ZetaEquation::Generic(spec.clone()),
    }
}
