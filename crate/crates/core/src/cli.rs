//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Rational;
use serde_json::{json, Value};

use crate::bounds::{
    compute_report, verify_undercount_with, ReportOptions, ZetaChoice, DEFAULT_N_MAX, DEFAULT_ORDER,
    DEFAULT_PRECISION,
};
use crate::error::{Error, Result};
use crate::graphs::BuildOptions;
use crate::numeric::{parse_rational, Coeff, Real};
use crate::series::{BiSeries, Series};
use crate::solvers::solve_zeta;
use crate::transforms::{cactus_pipeline_with, cycle_green, pkd_green, theta, tree_green, ProblemSpec, SurdForm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMINANCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cactus", version, about = "Lower bounds on the spectral radius of random walks on regular graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute every applicable bound for a graph.
    Bound(BoundArgs),
    /// Compare closed-walk counts on a finite ball against g3.
    Verify(VerifyArgs),
    /// Print coefficients of one of the series.
    Series(SeriesArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Vertex degree.
    #[arg(short = 'd', long = "degree")]
    pub d: Option<u32>,
    /// Face size of the tessellation X_{d,m}.
    #[arg(short = 'm', long = "face")]
    pub m: Option<u32>,
    /// Surface group of genus g (d = m = 4g).
    #[arg(long, conflicts_with_all = ["d", "m", "relators"])]
    pub genus: Option<u32>,
    /// Relator growth series f as comma-separated coefficients starting at t^0.
    #[arg(long = "relators", value_delimiter = ',', conflicts_with = "m")]
    pub relators: Option<Vec<String>>,
    /// Small-cancellation parameter for --relators, e.g. 1/4.
    #[arg(long, requires = "relators")]
    pub eta: Option<String>,
}

impl SpecArgs {
    /// The problem, or `None` when only a degree is needed and no relators were given.
    pub fn resolve(&self) -> Result<ProblemSpec> {
        if let Some(g) = self.genus {
            return ProblemSpec::genus(g);
        }
        let d = self.d.ok_or_else(|| Error::Parse("give -d (with -m or --relators) or --genus".into()))?;
        if let Some(m) = self.m {
            check_tessellation(d, m)?;
            return ProblemSpec::tessellation(d, m);
        }
        if let Some(raw) = &self.relators {
            let coeffs = raw
                .iter()
                .map(|s| parse_rational(s).ok_or_else(|| Error::Parse(format!("bad coefficient '{s}'"))))
                .collect::<Result<Vec<_>>>()?;
            let eta = match &self.eta {
                Some(s) => parse_rational(s).ok_or_else(|| Error::Parse(format!("bad eta '{s}'")))?,
                None => return Err(Error::Parse("--relators needs --eta".into())),
            };
            return ProblemSpec::explicit(d, eta, coeffs);
        }
        ProblemSpec::free(d)
    }
}

fn check_tessellation(d: u32, m: u32) -> Result<()> {
    let product = (d as i64 - 2) * (m as i64 - 2);
    if product < 4 {
        return Err(Error::NotATessellation { d, m, product });
    }
    Ok(())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZetaArg {
    Auto,
    Localsg,
    Surface,
    Generic,
}

impl From<ZetaArg> for ZetaChoice {
    fn from(z: ZetaArg) -> Self {
        match z {
            ZetaArg::Auto => ZetaChoice::Auto,
            ZetaArg::Localsg => ZetaChoice::Localsg,
            ZetaArg::Surface => ZetaChoice::Surface,
            ZetaArg::Generic => ZetaChoice::Generic,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurdArg {
    ScaledArgument,
    ScaledVariable,
}

impl From<SurdArg> for SurdForm {
    fn from(s: SurdArg) -> Self {
        match s {
            SurdArg::ScaledArgument => SurdForm::ScaledArgument,
            SurdArg::ScaledVariable => SurdForm::ScaledVariable,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Truncation order of the series.
    #[arg(short = 'N', long = "order", default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Decimal digits for zeta and printed values.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Which zeta equation to solve.
    #[arg(long = "zeta-equation", value_enum, default_value_t = ZetaArg::Auto)]
    pub zeta: ZetaArg,
    /// Where zeta enters the tree's spiky series.
    #[arg(long = "surd-form", value_enum, default_value_t = SurdArg::ScaledArgument)]
    pub surd_form: SurdArg,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Polygon size for the Paschke bound (defaults to m).
    #[arg(short = 'k', long)]
    pub k: Option<u32>,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Recorded in the report; used by verify.
    #[arg(long = "n-max", default_value_t = DEFAULT_N_MAX)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Largest walk length compared.
    #[arg(long = "n-max", default_value_t = DEFAULT_N_MAX)]
    pub n_max: usize,
    /// Largest ball that may be built.
    #[arg(long = "vertex-cap", default_value_t = crate::graphs::DEFAULT_VERTEX_CAP)]
    pub vertex_cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    H,
    G1,
    G2,
    G3,
    Theta,
    FreeProduct,
    Cycle,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(value_enum)]
    pub which: SeriesKind,
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Cycle length for `cycle` and `free-product`.
    #[arg(short = 'k', long)]
    pub k: Option<u32>,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Run the pipeline in exact rationals with zeta rounded down, instead of high-precision floats.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SizeLimit { .. }
        | Error::NotATessellation { .. }
        | Error::Domain(_)
        | Error::Parse(_)
        | Error::RadiusTooSmall { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Bound(a) => cmd_bound(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Series(a) => cmd_series(&a),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn report_options(common: &CommonArgs, k: Option<u32>, n_max: usize) -> ReportOptions {
    ReportOptions {
        k,
        order: common.order,
        precision: common.precision,
        n_max,
        form: common.surd_form.into(),
        zeta: common.zeta.into(),
    }
}

pub fn cmd_bound(a: &BoundArgs) -> Result<i32> {
    let spec = a.spec.resolve()?;
    let opts = report_options(&a.common, a.k, a.n_max);
    let report = compute_report(&spec, &opts);
    let text = match a.format {
        Format::Text => report.to_text(),
        Format::Json => pretty(&report.to_json())?,
        Format::Csv => {
            let mut out = String::from("field,value\n");
            flatten_csv(&report.to_json(), "", &mut out);
            out
        }
    };
    emit(&a.common.out, &text)?;
    Ok(if report.cactus.is_some() { EXIT_OK } else { EXIT_FAILURE })
}

/// Dotted-path rows for every scalar in `v`.
fn flatten_csv(v: &Value, prefix: &str, out: &mut String) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten_csv(x, &join(k), out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, x)| flatten_csv(x, &join(&i.to_string()), out)),
        Value::Null => {}
        Value::String(s) => {
            let quoted = if s.contains([',', '"']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s.clone() };
            let _ = writeln!(out, "{prefix},{quoted}");
        }
        other => {
            let _ = writeln!(out, "{prefix},{other}");
        }
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let spec = a.spec.resolve()?;
    let opts = report_options(&a.common, None, a.n_max);
    let build = BuildOptions { vertex_cap: a.vertex_cap };
    let result = verify_undercount_with(&spec, a.n_max, &opts, &build)?;
    let dg = a.common.precision;
    let text = match a.format {
        Format::Text => result.to_text(dg),
        Format::Json => pretty(&result.to_json(dg))?,
        Format::Csv => result.to_csv(dg),
    };
    emit(&a.common.out, &text)?;
    Ok(if result.dominance_holds { EXIT_OK } else { EXIT_DOMINANCE })
}

enum Coeffs {
    Uni(Vec<String>),
    Bi(Vec<Vec<String>>),
}

fn exact_repr(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

fn uni<C: Coeff>(s: &Series<C>, show: impl Fn(&C) -> String) -> Coeffs {
    Coeffs::Uni(s.coeffs().iter().map(show).collect())
}

fn bi<C: Coeff>(b: &BiSeries<C>, show: impl Fn(&C) -> String) -> Coeffs {
    Coeffs::Bi((0..=b.order()).map(|n| b.coeff(n).iter().map(&show).collect()).collect())
}

fn need_k(k: Option<u32>) -> Result<u32> {
    k.ok_or_else(|| Error::Parse("this series needs -k".into()))
}

pub fn cmd_series(a: &SeriesArgs) -> Result<i32> {
    let n = a.common.order;
    let dg = a.common.precision;
    let form: SurdForm = a.common.surd_form.into();
    let mut zeta_note = None;
    let coeffs = match a.which {
        SeriesKind::H => {
            let d = a.spec.d.or(a.spec.genus.map(|g| 4 * g)).ok_or_else(|| Error::Parse("h needs -d".into()))?;
            uni(&tree_green::<Rational>(d, n)?, exact_repr)
        }
        SeriesKind::Theta => {
            let d = a.spec.d.or(a.spec.genus.map(|g| 4 * g)).ok_or_else(|| Error::Parse("theta needs -d".into()))?;
            bi(&theta::<Rational>(d, n)?, exact_repr)
        }
        SeriesKind::Cycle => uni(&cycle_green(need_k(a.k)?, n)?, exact_repr),
        SeriesKind::FreeProduct => {
            let d = a.spec.d.ok_or_else(|| Error::Parse("free-product needs -d".into()))?;
            uni(&pkd_green::<Rational>(need_k(a.k)?, d, n)?, exact_repr)
        }
        SeriesKind::G1 | SeriesKind::G2 | SeriesKind::G3 => {
            let spec = a.spec.resolve()?;
            let zeta = if spec.is_relator_free() {
                Rational::from(1)
            } else {
                let z = solve_zeta(ZetaChoice::from(a.common.zeta).equation(&spec)?, dg)?;
                zeta_note = Some(z.equation.id());
                z.lower_rational(dg)
            };
            let pick = |which: SeriesKind, p_g1: Coeffs, p_g2: Coeffs, p_g3: Coeffs| match which {
                SeriesKind::G1 => p_g1,
                SeriesKind::G2 => p_g2,
                _ => p_g3,
            };
            if a.exact {
                let p = cactus_pipeline_with(&spec, &zeta, n, form)?;
                pick(a.which, bi(&p.g1, exact_repr), uni(&p.g2, exact_repr), uni(&p.g3, exact_repr))
            } else {
                let p = cactus_pipeline_with(&spec, &Real::from_rational(&zeta), n, form)?;
                let show = |c: &Real| c.to_decimal(dg);
                pick(a.which, bi(&p.g1, show), uni(&p.g2, show), uni(&p.g3, show))
            }
        }
    };
    let name = a.which.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let text = match a.format {
        Format::Csv | Format::Text => match &coeffs {
            Coeffs::Uni(c) => {
                let mut out = String::from("n,value\n");
                for (i, v) in c.iter().enumerate() {
                    let _ = writeln!(out, "{i},{v}");
                }
                out
            }
            Coeffs::Bi(rows) => {
                let mut out = String::from("n,k,value\n");
                for (i, row) in rows.iter().enumerate() {
                    for (k, v) in row.iter().enumerate() {
                        let _ = writeln!(out, "{i},{k},{v}");
                    }
                }
                out
            }
        },
        Format::Json => {
            let values = match &coeffs {
                Coeffs::Uni(c) => json!(c),
                Coeffs::Bi(rows) => json!(rows),
            };
            pretty(&json!({
                "series": name,
                "N": n,
                "bivariate": matches!(coeffs, Coeffs::Bi(_)),
                "zeta_equation": zeta_note,
                "exact": a.exact || !matches!(a.which, SeriesKind::G1 | SeriesKind::G2 | SeriesKind::G3),
                "coefficients": values,
            }))?
        }
    };
    emit(&a.common.out, &text)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("cactus").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn genus_conflicts_with_degree() {
        assert!(Cli::try_parse_from(["cactus", "bound", "--genus", "2", "-d", "8"]).is_err());
        assert_eq!(run(["cactus", "bound", "--genus", "2", "-d", "8"]), EXIT_USAGE);
    }

    #[test]
    fn spec_resolution() {
        let Command::Bound(a) = parse(&["bound", "-d", "8", "-m", "8"]).command else { panic!() };
        assert_eq!(a.spec.resolve().unwrap(), ProblemSpec::genus(2).unwrap());
        let Command::Bound(a) = parse(&["bound", "-d", "4", "--relators", "0,0,0,0,8", "--eta", "1/4"]).command else {
            panic!()
        };
        let s = a.spec.resolve().unwrap();
        assert_eq!(s.d, 4);
        assert!(!s.is_relator_free());
        let Command::Bound(a) = parse(&["bound", "-d", "3", "-m", "5"]).command else { panic!() };
        assert!(matches!(a.spec.resolve(), Err(Error::NotATessellation { .. })));
    }

    #[test]
    fn defaults_are_recorded() {
        let Command::Verify(a) = parse(&["verify", "--genus", "2"]).command else { panic!() };
        assert_eq!(a.n_max, 12);
        assert_eq!(a.common.order, 64);
        assert_eq!(a.common.precision, 30);
    }

    #[test]
    fn csv_flattening() {
        let mut out = String::new();
        flatten_csv(&json!({"a": {"b": "1,2"}, "c": [3, null]}), "", &mut out);
        assert_eq!(out, "a.b,\"1,2\"\nc.0,3\n");
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::SizeLimit { estimate: 2, cap: 1 }), EXIT_USAGE);
        assert_eq!(exit_code(&Error::Overflow), EXIT_FAILURE);
    }
}
