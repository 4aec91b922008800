//! Bound reports and the end-to-end undercount check.

use std::fmt::Write as _;

use rug::float::Round;
use rug::{Float, Integer, Rational};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graphs::{build_tessellation_ball, build_tree_ball, count_closed_walks, BuildOptions, GraphBall};
use crate::numeric::{decimal_string, Coeff, Real, Surd};
use crate::solvers::{
    default_equation, isoperimetric_bounds, kesten_bound, paschke_bound, radius_of_convergence, solve_zeta,
    surface_simple_bounds, IsoperimetricBounds, PaschkeResult, RadiusResult, SimpleBounds, ZetaEquation,
    ZetaResult, SOLVE_PREC,
};
use crate::transforms::{cactus_pipeline_with, ProblemSpec, RelatorSpec, SurdForm};

pub const DEFAULT_ORDER: usize = 64;
pub const DEFAULT_PRECISION: u32 = 30;
pub const DEFAULT_N_MAX: usize = 12;

/// Number of leading `g₃` coefficients kept in the report.
const G3_LEADING: usize = 13;

/// Which `ζ` equation to solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZetaChoice {
    /// Local-series equation for tessellations, generic otherwise.
    #[default]
    Auto,
    Localsg,
    Surface,
    Generic,
}

impl ZetaChoice {
    pub fn equation(self, spec: &ProblemSpec) -> Result<ZetaEquation> {
        let tess = || match spec.relators {
            RelatorSpec::Monomial { length, .. } => Ok((spec.d, length as u32)),
            RelatorSpec::Explicit(_) => Err(Error::Domain("this zeta equation needs a tessellation spec".into())),
        };
        Ok(match self {
            ZetaChoice::Auto => default_equation(spec),
            ZetaChoice::Localsg => {
                let (d, m) = tess()?;
                ZetaEquation::Localsg { d, m }
            }
            ZetaChoice::Surface => {
                let (d, m) = tess()?;
                ZetaEquation::SurfaceExponentM { d, m }
            }
            ZetaChoice::Generic => ZetaEquation::Generic(spec.clone()),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ZetaChoice::Auto => "auto",
            ZetaChoice::Localsg => "localsg",
            ZetaChoice::Surface => "surface",
            ZetaChoice::Generic => "generic",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Polygon size for the Paschke bound; defaults to `m` for tessellations.
    pub k: Option<u32>,
    /// Truncation order of the pipeline series.
    pub order: usize,
    /// Decimal digits of `ζ` and of printed values.
    pub precision: u32,
    pub n_max: usize,
    pub form: SurdForm,
    pub zeta: ZetaChoice,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            k: None,
            order: DEFAULT_ORDER,
            precision: DEFAULT_PRECISION,
            n_max: DEFAULT_N_MAX,
            form: SurdForm::default(),
            zeta: ZetaChoice::default(),
        }
    }
}

impl ReportOptions {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "N": self.order,
            "precision": self.precision,
            "n_max": self.n_max,
            "surd_form": self.form.name(),
            "zeta_equation": self.zeta.name(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CactusBound {
    pub zeta: ZetaResult,
    /// `ζ` rounded down to `precision` digits, the value fed to the pipeline.
    pub zeta_used: Rational,
    pub radius: RadiusResult,
    /// Leading coefficients of `g₃` at `zeta_used`.
    pub g3_leading: Vec<Real>,
}

impl CactusBound {
    pub fn lower_bound(&self) -> &Float {
        &self.radius.bound
    }
}

/// Cited upper bound, not computed here.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceUpper {
    pub value: Rational,
    pub citation: &'static str,
}

/// Upper bounds due to T. Nagnibeda for the surface groups of genus 2 and 3.
pub fn reference_upper(genus: u32) -> Option<ReferenceUpper> {
    let (value, citation) = match genus {
        2 => ("0.662816", "T. Nagnibeda, upper bound for the genus-2 surface group (cited, not computed)"),
        3 => ("0.552792", "T. Nagnibeda, upper bound for the genus-3 surface group (cited, not computed)"),
        _ => return None,
    };
    Some(ReferenceUpper { value: crate::numeric::parse_rational(value).expect("constant"), citation })
}

#[derive(Clone, Debug)]
pub struct BoundReport {
    pub spec: ProblemSpec,
    pub genus: Option<u32>,
    pub options: ReportOptions,
    pub kesten: Surd,
    pub paschke: Option<(u32, PaschkeResult)>,
    pub cactus: Option<CactusBound>,
    pub simple_surface: Option<SimpleBounds>,
    pub isoperimetric: Option<IsoperimetricBounds>,
    pub reference_upper: Option<ReferenceUpper>,
    /// Source name and value of the largest lower bound.
    pub best_lower: (&'static str, Float),
    /// Bounds that could not be computed, with the reason.
    pub failures: Vec<(&'static str, String)>,
}

/// Genus `g` when `spec` is the surface group `X_{4g,4g}`.
pub fn genus_of(spec: &ProblemSpec) -> Option<u32> {
    match spec.relators {
        RelatorSpec::Monomial { count, length }
            if spec.d.is_multiple_of(4) && spec.d >= 8 && length == spec.d as usize && count == 2 * spec.d as u64 =>
        {
            Some(spec.d / 4)
        }
        _ => None,
    }
}

fn zeta_for(spec: &ProblemSpec, choice: ZetaChoice, precision: u32) -> Result<(ZetaResult, Rational)> {
    let z = solve_zeta(choice.equation(spec)?, precision)?;
    let used = z.lower_rational(precision);
    Ok((z, used))
}

fn cactus_bound(spec: &ProblemSpec, opts: &ReportOptions) -> Result<CactusBound> {
    let (zeta, zeta_used) = zeta_for(spec, opts.zeta, opts.precision)?;
    let radius = radius_of_convergence(spec, &zeta_used, opts.form, opts.precision)?;
    let pipeline = cactus_pipeline_with(spec, &Real::from_rational(&zeta_used), opts.order, opts.form)?;
    if !pipeline.g3.coeffs().iter().all(Coeff::is_nonnegative) {
        return Err(Error::Construction("g3 has a negative coefficient".into()));
    }
    let g3_leading = pipeline.g3.coeffs().iter().take(G3_LEADING).cloned().collect();
    Ok(CactusBound { zeta, zeta_used, radius, g3_leading })
}

/// Every applicable bound for `spec`; a failing bound is recorded and left out.
pub fn compute_report(spec: &ProblemSpec, opts: &ReportOptions) -> BoundReport {
    let p = SOLVE_PREC;
    let genus = genus_of(spec);
    let mut failures = Vec::new();
    let kesten = kesten_bound(spec.d);

    let k = opts.k.or(spec.m().map(|m| m as u32));
    let paschke = k.and_then(|k| match paschke_bound(spec.d, k) {
        Ok(r) => Some((k, r)),
        Err(e) => {
            failures.push(("paschke", e.to_string()));
            None
        }
    });
    let cactus = match cactus_bound(spec, opts) {
        Ok(c) => Some(c),
        Err(e) => {
            failures.push(("cactus", e.to_string()));
            None
        }
    };
    let simple_surface = genus.and_then(|g| surface_simple_bounds(g).ok());
    let isoperimetric = spec.m().and_then(|m| match isoperimetric_bounds(spec.d, m as u32) {
        Ok(b) => Some(b),
        Err(e) => {
            failures.push(("isoperimetric", e.to_string()));
            None
        }
    });

    let mut best: (&'static str, Float) = ("kesten", kesten.to_float(p, Round::Down));
    let mut consider = |name: &'static str, v: Float| {
        if v > best.1 && v <= 1 {
            best = (name, v);
        }
    };
    if let Some((_, r)) = &paschke {
        consider("paschke", r.value.clone());
    }
    if let Some(c) = &cactus {
        consider("cactus", c.lower_bound().clone());
    }
    if let Some(s) = &simple_surface {
        consider("simple_surface", s.lower.to_float(p, Round::Down));
    }
    if let Some(i) = &isoperimetric {
        consider("mohar", i.mohar_lower.clone());
    }

    BoundReport {
        spec: spec.clone(),
        genus,
        options: opts.clone(),
        kesten,
        paschke,
        cactus,
        simple_surface,
        isoperimetric,
        reference_upper: genus.and_then(reference_upper),
        best_lower: best,
        failures,
    }
}

/// `v` with `digits` decimals, rounded in `dir`.
pub fn float_decimal(v: &Float, digits: u32, dir: Round) -> String {
    decimal_string(&v.to_rational().expect("finite value"), digits, dir)
}

fn surd_json(s: &Surd, digits: u32, dir: Round) -> Value {
    json!({"exact": s.to_string(), "value": s.decimal(digits, dir)})
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        let dg = self.options.precision;
        let mut spec = self.spec.to_json();
        spec["genus"] = json!(self.genus);
        spec["m"] = json!(self.spec.m());

        let paschke = self.paschke.as_ref().map(|(k, r)| {
            json!({
                "k": k,
                "value": float_decimal(&r.value, dg, Round::Down),
                "argmin": float_decimal(&r.argmin, dg, Round::Nearest),
            })
        });
        let cactus = self.cactus.as_ref().map(|c| {
            json!({
                "zeta": c.zeta.decimal(dg),
                "zeta_deviation": float_decimal(&c.zeta.deviation(), dg, Round::Nearest),
                "equation": c.zeta.equation.id(),
                "alpha": c.radius.alpha_upper().map(|a| decimal_string(a, dg, Round::Up)),
                "rho": float_decimal(&c.radius.rho, dg, Round::Up),
                "lower_bound": c.radius.bound_exact.decimal_down(dg),
                "method": c.radius.method.to_string(),
                "surd_form": c.radius.form.name(),
                "polynomial_degree": c.radius.degree,
                "g3_leading": c.g3_leading.iter().map(|x| x.to_decimal(12)).collect::<Vec<_>>(),
            })
        });
        let simple = self.simple_surface.as_ref().map(|s| {
            json!({
                "lower": surd_json(&s.lower, dg, Round::Down),
                "upper": float_decimal(&s.upper, dg, Round::Up),
                "upper_unclamped": float_decimal(&s.upper_raw, dg, Round::Up),
            })
        });
        let iso = self.isoperimetric.as_ref().map(|i| {
            json!({
                "iota": surd_json(&i.iota, dg, Round::Nearest),
                "mohar_lower": float_decimal(&i.mohar_lower, dg, Round::Down),
                "mohar_upper": surd_json(&i.mohar_upper, dg, Round::Up),
            })
        });
        let reference = self.reference_upper.as_ref().map(|r| {
            json!({"value": decimal_string(&r.value, 6, Round::Nearest), "citation": r.citation, "computed": false})
        });

        let mut provenance = Map::new();
        provenance.insert("kesten".into(), json!({"source": "2*sqrt(d-1)/d", "rounding": "down"}));
        if let Some((k, _)) = &self.paschke {
            provenance.insert(
                "paschke".into(),
                json!({"source": format!("golden-section minimum, k={k}, divided by d"), "rounding": "down"}),
            );
        }
        if let Some(c) = &self.cactus {
            provenance.insert(
                "cactus".into(),
                json!({
                    "source": format!("zeta equation {}, radius method {}", c.zeta.equation.id(), c.radius.method),
                    "zeta_rounding": "down",
                    "alpha_rounding": "up",
                    "rho_rounding": "up",
                    "rounding": "down",
                }),
            );
        }
        if self.simple_surface.is_some() {
            provenance.insert("simple_surface".into(), json!({"source": "sqrt(4g-1)/(2g)", "rounding": "down"}));
        }
        if self.isoperimetric.is_some() {
            provenance.insert(
                "isoperimetric".into(),
                json!({"source": "iota^2 = (d-2)^2 (1 - 4/((d-2)(m-2)))", "rounding": "mohar_lower down, mohar_upper up"}),
            );
        }
        if self.reference_upper.is_some() {
            provenance.insert("reference_upper".into(), json!({"source": "cited constant", "rounding": "none"}));
        }

        json!({
            "spec": spec,
            "options": self.options.to_json(),
            "kesten": surd_json(&self.kesten, dg, Round::Down),
            "paschke": paschke,
            "cactus": cactus,
            "simple_surface": simple,
            "isoperimetric": iso,
            "reference_upper": reference,
            "best_lower": {"source": self.best_lower.0, "value": float_decimal(&self.best_lower.1, dg, Round::Down)},
            "provenance": provenance,
            "failures": self.failures.iter().map(|(k, v)| json!({"bound": k, "error": v})).collect::<Vec<_>>(),
        })
    }

    /// Two-column table for terminals.
    pub fn to_text(&self) -> String {
        let dg = self.options.precision.min(12);
        let mut rows: Vec<(String, String)> = Vec::new();
        let spec = match self.genus {
            Some(g) => format!("{} (genus {g})", self.spec),
            None => self.spec.to_string(),
        };
        rows.push(("spec".into(), spec));
        rows.push((
            "options".into(),
            format!(
                "N={} precision={} n_max={} surd={} zeta={}",
                self.options.order,
                self.options.precision,
                self.options.n_max,
                self.options.form.name(),
                self.options.zeta.name()
            ),
        ));
        rows.push(("kesten".into(), format!("{} = {}", self.kesten.decimal(dg, Round::Down), self.kesten)));
        if let Some((k, r)) = &self.paschke {
            rows.push((format!("paschke (k={k})"), float_decimal(&r.value, dg, Round::Down)));
        }
        if let Some(c) = &self.cactus {
            rows.push((format!("zeta ({})", c.zeta.equation.id()), c.zeta.decimal(dg)));
            rows.push(("1 - zeta".into(), format!("{:.6e}", c.zeta.deviation().to_f64())));
            if let Some(a) = c.radius.alpha_upper() {
                rows.push(("alpha".into(), decimal_string(a, dg, Round::Up)));
            }
            rows.push(("rho".into(), float_decimal(&c.radius.rho, dg, Round::Up)));
            rows.push(("cactus".into(), c.radius.bound_exact.decimal_down(dg)));
        }
        if let Some(s) = &self.simple_surface {
            rows.push((
                "simple surface".into(),
                format!("[{}, {}]", s.lower.decimal(dg, Round::Down), float_decimal(&s.upper, dg, Round::Up)),
            ));
        }
        if let Some(i) = &self.isoperimetric {
            rows.push(("iota".into(), format!("{} = {}", i.iota, i.iota.decimal(dg, Round::Nearest))));
            rows.push((
                "mohar".into(),
                format!(
                    "[{}, {}]",
                    float_decimal(&i.mohar_lower, dg, Round::Down),
                    i.mohar_upper.decimal(dg, Round::Up)
                ),
            ));
        }
        if let Some(r) = &self.reference_upper {
            rows.push(("reference upper".into(), format!("{} (cited)", decimal_string(&r.value, 6, Round::Nearest))));
        }
        rows.push((
            "best lower".into(),
            format!("{} ({})", float_decimal(&self.best_lower.1, dg, Round::Down), self.best_lower.0),
        ));
        for (name, err) in &self.failures {
            rows.push((format!("{name} failed"), err.clone()));
        }
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct VerificationResult {
    pub n_max: usize,
    pub equation: Option<&'static str>,
    pub zeta_used: Rational,
    pub g3_coeffs: Vec<Rational>,
    pub walk_counts: Vec<u128>,
    pub ball_vertices: usize,
    pub dominance_holds: bool,
    pub first_violation: Option<usize>,
}

impl VerificationResult {
    pub fn to_json(&self, digits: u32) -> Value {
        let counts: Vec<Value> = self
            .walk_counts
            .iter()
            .map(|&c| u64::try_from(c).map_or_else(|_| json!(c.to_string()), |v| json!(v)))
            .collect();
        json!({
            "n_max": self.n_max,
            "equation": self.equation,
            "zeta_used": decimal_string(&self.zeta_used, digits, Round::Down),
            "ball_vertices": self.ball_vertices,
            "g3_coeffs": self.g3_coeffs.iter().map(|c| decimal_string(c, digits, Round::Up)).collect::<Vec<_>>(),
            "walk_counts": counts,
            "dominance_holds": self.dominance_holds,
            "first_violation": self.first_violation,
        })
    }

    /// `n,count,g3` rows with `g3` rounded up.
    pub fn to_csv(&self, digits: u32) -> String {
        let mut out = String::from("n,count,g3\n");
        for (n, (c, g)) in self.walk_counts.iter().zip(&self.g3_coeffs).enumerate() {
            let _ = writeln!(out, "{n},{c},{}", decimal_string(g, digits, Round::Up));
        }
        out
    }

    pub fn to_text(&self, digits: u32) -> String {
        let mut out = format!(
            "zeta used: {} ({})\nball vertices: {}\n",
            decimal_string(&self.zeta_used, digits, Round::Down),
            self.equation.unwrap_or("none"),
            self.ball_vertices
        );
        let _ = writeln!(out, "{:>3}  {:>20}  {:>24}", "n", "closed walks", "g3 (rounded up)");
        for (n, (c, g)) in self.walk_counts.iter().zip(&self.g3_coeffs).enumerate() {
            let mark = if Rational::from(Integer::from(*c)) >= *g { "" } else { "  VIOLATION" };
            let _ = writeln!(out, "{n:>3}  {c:>20}  {:>24}{mark}", decimal_string(g, 6, Round::Up));
        }
        let verdict = match self.first_violation {
            None => "dominance holds".to_string(),
            Some(n) => format!("dominance fails first at n={n}"),
        };
        out.push_str(&verdict);
        out.push('\n');
        out
    }
}

fn ball_for(spec: &ProblemSpec, n_max: usize, build: &BuildOptions) -> Result<GraphBall> {
    let radius = n_max.div_ceil(2).max(1) as u32;
    if spec.is_relator_free() {
        return build_tree_ball(spec.d, radius, build);
    }
    match spec.relators {
        RelatorSpec::Monomial { count, length } if count == 2 * spec.d as u64 => {
            build_tessellation_ball(spec.d, length as u32, radius, build)
        }
        _ => Err(Error::Domain("verification needs a tessellation spec or f = 0".into())),
    }
}

/// Compares closed-walk counts on a ball of the graph with `g₃` at `ζ` rounded down, exactly.
pub fn verify_undercount(spec: &ProblemSpec, n_max: usize, opts: &ReportOptions) -> Result<VerificationResult> {
    verify_undercount_with(spec, n_max, opts, &BuildOptions::default())
}

pub fn verify_undercount_with(
    spec: &ProblemSpec,
    n_max: usize,
    opts: &ReportOptions,
    build: &BuildOptions,
) -> Result<VerificationResult> {
    let ball = ball_for(spec, n_max, build)?;
    let walks = count_closed_walks(&ball, n_max)?;
    let (equation, zeta_used) = if spec.is_relator_free() {
        (None, Rational::from(1))
    } else {
        let (z, used) = zeta_for(spec, opts.zeta, opts.precision)?;
        (Some(z.equation.id()), used)
    };
    // reversion needs order >= 1, so tiny orders are computed longer and cut back
    let pipeline = cactus_pipeline_with(spec, &zeta_used, n_max.max(2), opts.form)?;
    let g3_coeffs = pipeline.g3.truncate(n_max).into_coeffs();
    let first_violation =
        (0..=n_max).find(|&n| walks.counts[n] < g3_coeffs[n]);
    Ok(VerificationResult {
        n_max,
        equation,
        zeta_used,
        g3_coeffs,
        walk_counts: walks.counts,
        ball_vertices: ball.vertex_count(),
        dominance_holds: first_violation.is_none(),
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::BoundValue;

    #[test]
    fn genus_two_report() {
        let spec = ProblemSpec::genus(2).unwrap();
        let r = compute_report(&spec, &ReportOptions::default());
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        let c = r.cactus.as_ref().unwrap();
        assert_eq!(&c.radius.bound_exact.decimal_down(6), "0.662418");
        assert_eq!(r.best_lower.0, "cactus");
        let reference = r.reference_upper.as_ref().unwrap();
        assert!(Float::with_val(SOLVE_PREC, &reference.value) >= r.best_lower.1);
        let kesten = r.kesten.to_f64();
        let paschke = r.paschke.as_ref().unwrap().1.value.to_f64();
        let mohar = r.isoperimetric.as_ref().unwrap().mohar_lower.to_f64();
        let cactus = c.lower_bound().to_f64();
        assert!(cactus > paschke && paschke > kesten && cactus > mohar);
    }

    #[test]
    fn free_group_report_is_kesten() {
        let r = compute_report(&ProblemSpec::free(8).unwrap(), &ReportOptions::default());
        assert_eq!(r.best_lower.0, "kesten");
        let c = r.cactus.unwrap();
        assert!(matches!(c.radius.bound_exact, BoundValue::Surd(ref s) if *s == kesten_bound(8)));
        assert!(r.paschke.is_none() && r.isoperimetric.is_none() && r.reference_upper.is_none());
    }

    #[test]
    fn report_json_is_deterministic() {
        let spec = ProblemSpec::tessellation(5, 4).unwrap();
        let opts = ReportOptions { order: 16, ..ReportOptions::default() };
        let a = serde_json::to_string(&compute_report(&spec, &opts).to_json()).unwrap();
        let b = serde_json::to_string(&compute_report(&spec, &opts).to_json()).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        for key in ["spec", "options", "kesten", "cactus", "isoperimetric", "best_lower", "provenance"] {
            assert!(!v[key].is_null(), "{key}");
        }
    }

    #[test]
    fn degraded_fields() {
        // k = 2 is outside the Paschke domain; the rest of the report survives
        let opts = ReportOptions { k: Some(2), order: 8, ..ReportOptions::default() };
        let r = compute_report(&ProblemSpec::tessellation(8, 8).unwrap(), &opts);
        assert!(r.paschke.is_none());
        assert_eq!(r.failures[0].0, "paschke");
        assert!(r.cactus.is_some());
    }

    #[test]
    fn undercount_small_cases() {
        let opts = ReportOptions::default();
        let tree = verify_undercount(&ProblemSpec::free(8).unwrap(), 12, &opts).unwrap();
        assert!(tree.dominance_holds);
        for (c, g) in tree.walk_counts.iter().zip(&tree.g3_coeffs) {
            assert_eq!(Rational::from(Integer::from(*c)), *g);
        }
        let square = verify_undercount(&ProblemSpec::tessellation(4, 4).unwrap(), 10, &opts).unwrap();
        assert!(square.dominance_holds, "{:?}", square.first_violation);
        let zero = verify_undercount(&ProblemSpec::genus(2).unwrap(), 0, &opts).unwrap();
        assert!(zero.dominance_holds);
        assert_eq!(zero.walk_counts, vec![1]);
    }

    #[test]
    fn oversized_verification_is_rejected() {
        let r = verify_undercount(&ProblemSpec::genus(2).unwrap(), 1000, &ReportOptions::default());
        assert!(matches!(r, Err(Error::SizeLimit { .. })));
    }
}
