//! `garsia-kit`: reads FunctionSpec JSON, runs the library, writes CSV, JSON or SVG.
//!
//! Exit codes: 0 on success, 2 on bad input or a library error, 3 when
//! `--assert` is given and the result fails its check.

mod render;

use std::f64::consts::TAU;
use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use garsia::boundary::{make_grid, parse_spec, sample, CircleGrid, FunctionSpec};
use garsia::extremal::{
    build_extremal_blaschke, check_inner_identity, check_product_identity, disk_algebra_test_default,
    division_gap, outer_extremal_witness, product_extremal_witness, section5_report, EvalRoute, ExtremalConfig,
    ExtremalVerdict, Section5Config, WitnessReport,
};
use garsia::factorization::{Eta, InnerSpec, OuterSpec};
use garsia::garsia::{garsia_norm, GarsiaSource, SearchConfig, SpecFunction, Verdict};
use garsia::geometry::{
    default_perturbations, extreme_probe, lipschitz_garsia_norm, nonextreme_decompose, parallelogram_check,
    DecomposeMode,
};
use garsia::poisson::DiskPoint;

pub use render::{svg_heatmap, PhiGrid};

#[derive(Parser, Debug)]
#[command(name = "garsia-kit", version, about = "Garsia functions and norms on the unit disk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// log2 of the number of boundary grid nodes.
    #[arg(long, default_value_t = 14)]
    pub grid: i64,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Exit 3 when the subcommand's check fails.
    #[arg(long)]
    pub assert: bool,
    /// Tolerance used by `--assert`.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print the input spec as canonical JSON and exit.
    #[arg(long)]
    pub echo_spec: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Real,
    Analytic,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Φ_f on a polar grid: `r,theta,phi` CSV or an SVG heatmap.
    PhiGrid {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0.9)]
        rmax: f64,
        /// Radii, from 0 to rmax inclusive.
        #[arg(long, default_value_t = 32)]
        nr: usize,
        /// Angles per radius.
        #[arg(long, default_value_t = 128)]
        ntheta: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Garsia norm estimate as JSON, or the boundary trend as `r,max_phi` CSV.
    Norm {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        rmax: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Residuals of the inner, product and parallelogram identities.
    Identities {
        /// Inner function I.
        #[arg(long)]
        inner: Option<PathBuf>,
        /// Analytic F for the product identity.
        #[arg(long)]
        outer: Option<PathBuf>,
        /// f for the parallelogram identity.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// g for the parallelogram identity.
        #[arg(long)]
        pair: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Witness searches for G-extremality.
    ExtremalCheck {
        /// Outer function for the outer criterion.
        #[arg(long)]
        outer: Option<PathBuf>,
        /// Analytic F for the product criterion.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Inner I for the product criterion.
        #[arg(long)]
        inner: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Blaschke product whose zeros make Φ_{Bφ} approach ‖φ‖²_∞.
    BuildBlaschke {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 12)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The explicit extremal outer function, one CSV row per generation.
    Section5 {
        #[arg(long, default_value_t = 12)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Bφ as the midpoint of Bφ₁ and Bφ₂.
    Decompose {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Analytic)]
        mode: Mode,
        #[arg(long)]
        rmax: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// ‖f ± g‖_G for the default perturbations g.
    ProbeExtreme {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        rmax: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// sup √Φ_f (1-|z|)^{-α}.
    Lipschitz {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        alpha: f64,
        #[arg(long)]
        rmax: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::PhiGrid { common, .. }
            | Command::Norm { common, .. }
            | Command::Identities { common, .. }
            | Command::ExtremalCheck { common, .. }
            | Command::BuildBlaschke { common, .. }
            | Command::Section5 { common, .. }
            | Command::Decompose { common, .. }
            | Command::ProbeExtreme { common, .. }
            | Command::Lipschitz { common, .. } => common,
        }
    }

    /// Spec files in the order `--echo-spec` prints them.
    fn spec_paths(&self) -> Vec<&Path> {
        let all: Vec<&Option<PathBuf>> = match self {
            Command::Identities {
                inner,
                outer,
                spec,
                pair,
                ..
            } => vec![inner, outer, spec, pair],
            Command::ExtremalCheck { outer, spec, inner, .. } => vec![outer, spec, inner],
            Command::PhiGrid { spec, .. }
            | Command::Norm { spec, .. }
            | Command::BuildBlaschke { spec, .. }
            | Command::Decompose { spec, .. }
            | Command::ProbeExtreme { spec, .. }
            | Command::Lipschitz { spec, .. } => return vec![spec.as_path()],
            Command::Section5 { .. } => vec![],
        };
        all.into_iter().flatten().map(PathBuf::as_path).collect()
    }
}

/// What a subcommand produced: the text to write and whether its check held.
struct Outcome {
    text: String,
    check: Result<(), String>,
}

impl Outcome {
    fn new(text: String, ok: bool, failure: impl FnOnce() -> String) -> Self {
        Self {
            text,
            check: if ok { Ok(()) } else { Err(failure()) },
        }
    }
}

/// Parses `argv` (including the program name), runs it and returns the exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return 2;
    }
    let common = cli.command.common().clone();
    if common.echo_spec {
        return match echo(&cli.command) {
            Ok(text) => emit(&common, &text).map_or_else(report, |_| 0),
            Err(e) => report(e),
        };
    }
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => return report(e),
    };
    if let Err(e) = emit(&common, &outcome.text) {
        return report(e);
    }
    match outcome.check {
        Err(why) if common.assert => {
            eprintln!("assertion failed: {why}");
            3
        }
        _ => 0,
    }
}

fn report(e: anyhow::Error) -> i32 {
    eprintln!("error: {e:#}");
    2
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("GARSIA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| anyhow!("GARSIA_THREADS={raw:?} is not a positive integer"))?;
    // A second call in the same process finds the pool already built.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn emit(common: &Common, text: &str) -> anyhow::Result<()> {
    match &common.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn read_spec(path: &Path) -> anyhow::Result<FunctionSpec> {
    let json = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_spec(&json).with_context(|| format!("in {}", path.display()))
}

fn echo(cmd: &Command) -> anyhow::Result<String> {
    let mut out = String::new();
    match cmd {
        Command::Section5 { k, .. } => {
            let spec = FunctionSpec::Outer(OuterSpec::new(Eta::Section5 { k: *k }));
            out.push_str(&spec.to_json());
            out.push('\n');
        }
        _ => {
            for p in cmd.spec_paths() {
                out.push_str(&read_spec(p)?.to_json());
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn format_or(common: &Common, default: Format, allowed: &[Format]) -> anyhow::Result<Format> {
    let f = common.format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("--format {f:?} is not available here; use one of {allowed:?}");
    }
    Ok(f)
}

fn grid_of(common: &Common) -> anyhow::Result<CircleGrid> {
    Ok(make_grid(common.grid)?)
}

fn search_config(rmax: Option<f64>) -> anyhow::Result<SearchConfig> {
    let cfg = SearchConfig {
        r_max: rmax,
        ..SearchConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

/// 100 points on a sunflower spiral inside `|z| ≤ 0.9`.
pub fn identity_points() -> Vec<DiskPoint> {
    let golden = TAU * (1.0 - 1.0 / ((1.0 + 5f64.sqrt()) / 2.0));
    (0..100)
        .map(|i| {
            let r = 0.9 * ((i as f64 + 0.5) / 100.0).sqrt();
            DiskPoint::new(r, golden * i as f64).expect("radius below 0.9")
        })
        .collect()
}

fn execute(cmd: &Command) -> anyhow::Result<Outcome> {
    let common = cmd.common();
    match cmd {
        Command::PhiGrid {
            spec,
            rmax,
            nr,
            ntheta,
            ..
        } => phi_grid_cmd(common, spec, *rmax, *nr, *ntheta),
        Command::Norm { spec, rmax, .. } => norm_cmd(common, spec, *rmax),
        Command::Identities {
            inner,
            outer,
            spec,
            pair,
            ..
        } => identities_cmd(common, inner.as_deref(), outer.as_deref(), spec.as_deref(), pair.as_deref()),
        Command::ExtremalCheck { outer, spec, inner, .. } => {
            extremal_cmd(common, outer.as_deref(), spec.as_deref(), inner.as_deref())
        }
        Command::BuildBlaschke { spec, k, .. } => blaschke_cmd(common, spec, *k),
        Command::Section5 { k, .. } => section5_cmd(common, *k),
        Command::Decompose { spec, mode, rmax, .. } => decompose_cmd(common, spec, *mode, *rmax),
        Command::ProbeExtreme { spec, rmax, .. } => probe_cmd(common, spec, *rmax),
        Command::Lipschitz { spec, alpha, rmax, .. } => lipschitz_cmd(common, spec, *alpha, *rmax),
    }
}

fn phi_grid_cmd(common: &Common, spec: &Path, rmax: f64, nr: usize, ntheta: usize) -> anyhow::Result<Outcome> {
    let format = format_or(common, Format::Csv, &[Format::Csv, Format::Svg])?;
    if nr < 2 || ntheta < 1 {
        bail!("need --nr ≥ 2 and --ntheta ≥ 1");
    }
    let f = SpecFunction::compile(&read_spec(spec)?, grid_of(common)?)?;
    if !(rmax > 0.0 && rmax < 1.0) || rmax > f.radius_limit() {
        bail!("--rmax {rmax} must lie in (0, {}]", f.radius_limit().min(1.0));
    }
    let radii: Vec<f64> = (0..nr).map(|i| rmax * i as f64 / (nr - 1) as f64).collect();
    let rows: Vec<Vec<f64>> = radii
        .par_iter()
        .map(|&r| f.phi_circle(r, ntheta).iter().map(|p| p.value().max(0.0)).collect())
        .collect();
    let grid = PhiGrid {
        radii,
        ntheta,
        values: rows,
    };
    let sup_sq = f.sup_norm().powi(2);
    let tol = common.tol.unwrap_or(1e-9);
    let max = grid.max();
    let text = match format {
        Format::Svg => svg_heatmap(&grid),
        _ => grid.to_csv(),
    };
    Ok(Outcome::new(text, max <= sup_sq + tol, || {
        format!("max Φ = {max} exceeds ‖f‖²_∞ = {sup_sq}")
    }))
}

fn norm_cmd(common: &Common, spec: &Path, rmax: Option<f64>) -> anyhow::Result<Outcome> {
    let format = format_or(common, Format::Json, &[Format::Json, Format::Csv])?;
    let f = SpecFunction::compile(&read_spec(spec)?, grid_of(common)?)?;
    let est = garsia_norm(&f, &search_config(rmax)?)?;
    let sup = f.sup_norm();
    let tol = common.tol.unwrap_or(1e-9);
    let text = match format {
        Format::Csv => est.trend_csv(),
        _ => json(&est)?,
    };
    let lb = est.lower_bound;
    Ok(Outcome::new(text, lb <= sup + tol, || {
        format!("‖f‖_G ≥ {lb} exceeds ‖f‖_∞ = {sup}")
    }))
}

#[derive(Serialize)]
struct IdentityReport {
    points: usize,
    route: Option<EvalRoute>,
    inner_residual: Option<f64>,
    product_residual: Option<f64>,
    division_gap: Option<f64>,
    parallelogram_residual: Option<f64>,
}

fn identities_cmd(
    common: &Common,
    inner: Option<&Path>,
    outer: Option<&Path>,
    spec: Option<&Path>,
    pair: Option<&Path>,
) -> anyhow::Result<Outcome> {
    format_or(common, Format::Json, &[Format::Json])?;
    let grid = grid_of(common)?;
    let points = identity_points();
    let mut rep = IdentityReport {
        points: points.len(),
        route: None,
        inner_residual: None,
        product_residual: None,
        division_gap: None,
        parallelogram_residual: None,
    };
    if outer.is_some() && inner.is_none() {
        bail!("--outer needs --inner");
    }
    if let Some(p) = inner {
        let i = read_spec(p)?;
        // Grid traces of singular factors are too rough for 1e-8.
        let route = if InnerSpec::from_spec(&i)?.singular.is_empty() {
            EvalRoute::Sampled
        } else {
            EvalRoute::Symbolic
        };
        rep.route = Some(route);
        rep.inner_residual = Some(check_inner_identity(&i, &points, route, grid)?);
        if let Some(o) = outer {
            let f = read_spec(o)?;
            rep.product_residual = Some(check_product_identity(&i, &f, &points, route, grid)?);
            rep.division_gap = Some(division_gap(&i, &f, &points, route, grid)?);
        }
    }
    match (spec, pair) {
        (Some(f), Some(g)) => {
            let (f, g) = (sample(&read_spec(f)?, grid)?, sample(&read_spec(g)?, grid)?);
            rep.parallelogram_residual = Some(parallelogram_check(&f, &g, &points)?);
        }
        (None, None) => {}
        _ => bail!("the parallelogram check needs both --spec and --pair"),
    }
    if inner.is_none() && spec.is_none() {
        bail!("nothing to check: pass --inner and/or --spec with --pair");
    }
    let tol = common.tol.unwrap_or(1e-8);
    let worst = [rep.inner_residual, rep.product_residual, rep.parallelogram_residual]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max);
    let gap_ok = rep.division_gap.is_none_or(|g| g >= -tol);
    Ok(Outcome::new(json(&rep)?, worst <= tol && gap_ok, || {
        format!("largest residual {worst:e} or division gap {:?} outside tolerance {tol:e}", rep.division_gap)
    }))
}

#[derive(Serialize)]
struct ExtremalCheckReport {
    outer: Option<WitnessReport>,
    product: Option<WitnessReport>,
    disk_algebra: Option<bool>,
}

fn extremal_cmd(
    common: &Common,
    outer: Option<&Path>,
    spec: Option<&Path>,
    inner: Option<&Path>,
) -> anyhow::Result<Outcome> {
    format_or(common, Format::Json, &[Format::Json])?;
    let grid = grid_of(common)?;
    let cfg = ExtremalConfig::default();
    let mut rep = ExtremalCheckReport {
        outer: None,
        product: None,
        disk_algebra: None,
    };
    if let Some(p) = outer {
        let FunctionSpec::Outer(o) = read_spec(p)? else {
            bail!("{}: expected a spec of type \"outer\"", p.display());
        };
        rep.outer = Some(outer_extremal_witness(&o, &cfg, grid)?);
    }
    match (spec, inner) {
        (Some(f), Some(i)) => {
            let (f, i) = (read_spec(f)?, read_spec(i)?);
            rep.product = Some(product_extremal_witness(&f, &i, &cfg, grid)?);
            rep.disk_algebra = Some(disk_algebra_test_default(&f, &i, grid)?);
        }
        (None, None) => {}
        _ => bail!("the product criterion needs both --spec and --inner"),
    }
    if rep.outer.is_none() && rep.product.is_none() {
        bail!("nothing to check: pass --outer and/or --spec with --inner");
    }
    let ok = [&rep.outer, &rep.product]
        .into_iter()
        .flatten()
        .all(|w| w.verdict == ExtremalVerdict::ExtremalEvidence);
    Ok(Outcome::new(json(&rep)?, ok, || "no extremality evidence".into()))
}

fn blaschke_cmd(common: &Common, spec: &Path, k: usize) -> anyhow::Result<Outcome> {
    format_or(common, Format::Json, &[Format::Json])?;
    let b = build_extremal_blaschke(&read_spec(spec)?, k, grid_of(common)?)?;
    let tol = common.tol.unwrap_or(1e-8);
    let res = b.residual;
    Ok(Outcome::new(json(&b)?, res.is_some_and(|r| r <= tol), || {
        format!("residual {res:?} is not within {tol:e}")
    }))
}

fn section5_cmd(common: &Common, k: usize) -> anyhow::Result<Outcome> {
    let format = format_or(common, Format::Csv, &[Format::Csv, Format::Json])?;
    let rep = section5_report(&Section5Config::standard(k)?)?;
    let text = match format {
        Format::Json => json(&rep)?,
        _ => rep.to_csv(),
    };
    let ok = rep.increasing_from(0, 3) && rep.increasing_from(1, 3);
    Ok(Outcome::new(text, ok, || {
        "P_eta or P_log_inv_eta is not strictly increasing from k = 3".into()
    }))
}

fn decompose_cmd(common: &Common, spec: &Path, mode: Mode, rmax: Option<f64>) -> anyhow::Result<Outcome> {
    format_or(common, Format::Json, &[Format::Json])?;
    let mode = match mode {
        Mode::Real => DecomposeMode::Real,
        Mode::Analytic => DecomposeMode::Analytic,
    };
    let d = nonextreme_decompose(&read_spec(spec)?, mode, None, &search_config(rmax)?, grid_of(common)?)?;
    let tol = common.tol.unwrap_or(1e-10);
    let ok = d.midpoint_residual <= tol && d.norms.iter().all(|n| *n <= 1.0 + 1e-6);
    let (mid, norms) = (d.midpoint_residual, d.norms);
    Ok(Outcome::new(json(&d)?, ok, || {
        format!("midpoint residual {mid:e} or norms {norms:?} out of range")
    }))
}

fn probe_cmd(common: &Common, spec: &Path, rmax: Option<f64>) -> anyhow::Result<Outcome> {
    let format = format_or(common, Format::Json, &[Format::Json, Format::Csv])?;
    let p = extreme_probe(&read_spec(spec)?, &default_perturbations(), &search_config(rmax)?, grid_of(common)?)?;
    let text = match format {
        Format::Csv => render::probe_csv(&p),
        _ => json(&p)?,
    };
    let bad = p.rows.iter().filter(|r| r.violation).count();
    Ok(Outcome::new(text, bad == 0, || format!("{bad} perturbations stay inside the ball")))
}

fn lipschitz_cmd(common: &Common, spec: &Path, alpha: f64, rmax: Option<f64>) -> anyhow::Result<Outcome> {
    format_or(common, Format::Json, &[Format::Json])?;
    let f = SpecFunction::compile(&read_spec(spec)?, grid_of(common)?)?;
    let est = lipschitz_garsia_norm(&f, alpha, &search_config(rmax)?)?;
    let verdict = est.attained;
    Ok(Outcome::new(json(&est)?, verdict == Verdict::Attained, || {
        format!("supremum not attained inside the disk ({verdict:?})")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_inside() {
        let p = identity_points();
        assert_eq!(p.len(), 100);
        assert!(p.iter().all(|z| z.r() <= 0.9));
    }

    #[test]
    fn usage_error_is_two() {
        assert_eq!(run(vec!["garsia-kit".into(), "nope".into()]), 2);
        assert_eq!(run(vec!["garsia-kit".into(), "--help".into()]), 0);
    }

    #[test]
    fn format_guard() {
        let c = Common {
            grid: 10,
            out: None,
            format: Some(Format::Svg),
            assert: false,
            tol: None,
            echo_spec: false,
        };
        assert!(format_or(&c, Format::Json, &[Format::Json]).is_err());
    }
}
