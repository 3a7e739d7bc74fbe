//! Command-line front end. `main.rs` only forwards to [`run`].
//!
//! Every flag can also come from a JSON file given with `--config`; flags win.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{coeff_c, coeff_d, k_max, stokes_lines};
use crate::continuation::{RaySolutions, SolutionPair};
use crate::error::{Error, Result};
use crate::gbeta::{g_beta, g_beta_principal_value};
use crate::kernel::{beta_critical, KernelParams, Parity};
use crate::mittag::{ml_series, ml_via_gbeta, MLDecomposition};
use crate::rhp::Parametrix;
use crate::solver::{default_tolerance, picard_solve, solve_ray, solve_ray_with, SchemeOptions, SolutionGrid, Tag};
use crate::surface::SurfacePoint;
use crate::verify::{run_suite, SuiteReport, SUITES};

#[derive(Debug, Parser)]
#[command(name = "uvbeta", version, about = "Stieltjes-kernel functions u_beta, v_beta, G_beta and their parametrix")]
pub struct Cli {
    /// JSON file whose fields fill in flags not given on the command line.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Constants and, with --beta, the derived kernel parameters.
    Info(Flags),
    /// Solve on the positive axis and write the grid as JSON.
    Solve(Flags),
    /// Evaluate one function at r e^{i phi} on the Riemann surface.
    Eval(Flags),
    /// Tabulate u or v (or L, U) on the positive axis.
    Table(Flags),
    /// Expansion coefficients at infinity.
    Coeffs(Flags),
    /// G_beta at r e^{i phi}.
    Gbeta(Flags),
    /// Mittag-Leffler decomposition of E_alpha(z).
    Ml(Flags),
    /// Stokes lines.
    Stokes(Flags),
    /// Run verification suites.
    Verify(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Func {
    #[value(name = "u")]
    #[serde(rename = "u")]
    U,
    #[value(name = "v")]
    #[serde(rename = "v")]
    V,
    #[value(name = "L")]
    #[serde(rename = "L")]
    LBeta,
    #[value(name = "U")]
    #[serde(rename = "U")]
    UBeta,
    #[value(name = "G")]
    #[serde(rename = "G")]
    G,
    #[value(name = "E")]
    #[serde(rename = "E")]
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

/// One layer of settings: either the command line or the config file.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Function selector.
    #[arg(long = "fn", value_enum)]
    #[serde(rename = "fn")]
    pub func: Option<Func>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub xmin: Option<f64>,
    #[arg(long)]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// Parity of n; with `eval --fn L` also prints the matrix L(s).
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
    /// Modulus of the evaluation point.
    #[arg(long)]
    pub r: Option<f64>,
    /// Unrestricted argument in radians.
    #[arg(long, visible_alias = "arg-sheet", allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Real part of z (`ml`).
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// Imaginary part of z (`ml`).
    #[arg(long, allow_hyphen_values = true)]
    pub im: Option<f64>,
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long)]
    pub suite: Option<String>,
    /// Read a grid written by `solve` instead of solving.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Successive approximation instead of Nyström.
    #[arg(long)]
    #[serde(default)]
    pub picard: bool,
    /// Principal value on the cut (`gbeta` at phi = +-pi).
    #[arg(long)]
    #[serde(default)]
    pub pv: bool,
}

impl Flags {
    /// `self` with holes filled from `below`.
    pub fn over(self, below: Flags) -> Flags {
        Flags {
            beta: self.beta.or(below.beta),
            tol: self.tol.or(below.tol),
            func: self.func.or(below.func),
            out: self.out.or(below.out),
            format: self.format.or(below.format),
            xmin: self.xmin.or(below.xmin),
            xmax: self.xmax.or(below.xmax),
            points: self.points.or(below.points),
            spacing: self.spacing.or(below.spacing),
            parity: self.parity.or(below.parity),
            r: self.r.or(below.r),
            phi: self.phi.or(below.phi),
            alpha: self.alpha.or(below.alpha),
            z: self.z.or(below.z),
            im: self.im.or(below.im),
            terms: self.terms.or(below.terms),
            suite: self.suite.or(below.suite),
            grid: self.grid.or(below.grid),
            picard: self.picard || below.picard,
            pv: self.pv || below.pv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn abscissae(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if i == 0 {
                    return self.xmin;
                }
                if i == n - 1 {
                    return self.xmax;
                }
                match self.spacing {
                    Spacing::Linear => self.xmin + t * (self.xmax - self.xmin),
                    Spacing::Log => (self.xmin.ln() + t * (self.xmax / self.xmin).ln()).exp(),
                }
            })
            .collect()
    }
}

/// Validated settings shared by the kernel-based commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub beta: f64,
    pub tol: f64,
    pub func: Func,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub grid: GridSpec,
    pub parity: Parity,
}

pub const CLI_BETA_RANGE: (f64, f64) = (0.05, 0.95);
pub const CLI_TOL_RANGE: (f64, f64) = (1e-14, 1e-2);
pub const CLI_POINTS_RANGE: (usize, usize) = (2, 1_000_000);

fn config_err(field: &str, reason: impl Into<String>) -> Error {
    Error::Config { field: field.into(), reason: reason.into() }
}

impl RunConfig {
    pub fn from_flags(f: &Flags) -> Result<Self> {
        let beta = f.beta.ok_or_else(|| config_err("beta", "required"))?;
        let (lo, hi) = CLI_BETA_RANGE;
        if !(lo..=hi).contains(&beta) {
            return Err(config_err("beta", format!("beta out of range: {beta} not in [{lo}, {hi}]")));
        }
        let tol = f.tol.unwrap_or_else(|| default_tolerance(beta));
        let (lo, hi) = CLI_TOL_RANGE;
        if !(lo..=hi).contains(&tol) {
            return Err(config_err("tol", format!("tol out of range: {tol:e} not in [{lo:e}, {hi:e}]")));
        }
        let spacing = f.spacing.unwrap_or(Spacing::Log);
        let default_min = if spacing == Spacing::Log { 1e-3 } else { 0.0 };
        let grid = GridSpec { xmin: f.xmin.unwrap_or(default_min), xmax: f.xmax.unwrap_or(1e3), points: f.points.unwrap_or(61), spacing };
        let (lo, hi) = CLI_POINTS_RANGE;
        if !(lo..=hi).contains(&grid.points) {
            return Err(config_err("points", format!("points out of range: {} not in [{lo}, {hi}]", grid.points)));
        }
        if !(grid.xmin >= 0.0 && grid.xmin < grid.xmax && grid.xmax.is_finite()) {
            return Err(config_err("xmin", format!("need 0 <= xmin < xmax < inf, got [{}, {}]", grid.xmin, grid.xmax)));
        }
        if spacing == Spacing::Log && grid.xmin <= 0.0 {
            return Err(config_err("xmin", "log spacing needs xmin > 0"));
        }
        Ok(Self {
            beta,
            tol,
            func: f.func.unwrap_or(Func::U),
            out: f.out.clone(),
            format: f.format.unwrap_or(Format::Csv),
            grid,
            parity: f.parity.map_or(Parity::Even, Parity::from),
        })
    }

    fn params(&self) -> Result<KernelParams> {
        KernelParams::new(self.beta)
    }
}

/// `printf("%.17g", x)`.
pub fn fmt_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= 17 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mant), exp.abs())
    } else {
        trim(&format!("{x:.*}", (16 - exp) as usize))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Serialize)]
struct PointOut {
    r: f64,
    arg_sheet: f64,
    re: f64,
    im: f64,
}

impl From<SurfacePoint> for PointOut {
    fn from(z: SurfacePoint) -> Self {
        let c = z.to_complex();
        Self { r: z.r, arg_sheet: z.phi, re: c.re, im: c.im }
    }
}

fn tag_of(func: Func) -> Result<Tag> {
    match func {
        Func::U => Ok(Tag::U),
        Func::V => Ok(Tag::V),
        other => Err(config_err("fn", format!("{other:?} has no grid of its own; use u or v"))),
    }
}

fn point(f: &Flags) -> Result<SurfacePoint> {
    let r = f.r.ok_or_else(|| config_err("r", "required"))?;
    SurfacePoint::new(r, f.phi.unwrap_or(0.0)).map_err(|e| config_err("r", e.to_string()))
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Result of a command that finished without an error: `false` means a
/// verification failed (exit 2).
pub type Passed = bool;

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<Passed> {
    let (cmd, flags) = match cli.command {
        Command::Info(f) => ("info", f),
        Command::Solve(f) => ("solve", f),
        Command::Eval(f) => ("eval", f),
        Command::Table(f) => ("table", f),
        Command::Coeffs(f) => ("coeffs", f),
        Command::Gbeta(f) => ("gbeta", f),
        Command::Ml(f) => ("ml", f),
        Command::Stokes(f) => ("stokes", f),
        Command::Verify(f) => ("verify", f),
    };
    let flags = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let file: Flags = serde_json::from_str(&text).map_err(|e| config_err("config", e.to_string()))?;
            flags.over(file)
        }
        None => flags,
    };
    match cmd {
        "info" => cmd_info(&flags, stdout),
        "solve" => cmd_solve(&flags, stdout),
        "eval" => cmd_eval(&flags, stdout),
        "table" => cmd_table(&flags, stdout),
        "coeffs" => cmd_coeffs(&flags, stdout),
        "gbeta" => cmd_gbeta(&flags, stdout),
        "ml" => cmd_ml(&flags, stdout),
        "stokes" => cmd_stokes(&flags, stdout),
        _ => cmd_verify(&flags, stdout),
    }
}

fn cmd_info(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    #[derive(Serialize)]
    struct Info {
        version: &'static str,
        beta_critical: f64,
        suites: [&'static str; 6],
        #[serde(skip_serializing_if = "Option::is_none")]
        kernel: Option<KernelInfo>,
    }
    #[derive(Serialize)]
    struct KernelInfo {
        params: KernelParams,
        default_tol: f64,
        picard_applicable: bool,
        origin_class: crate::kernel::OriginClass,
        stokes: crate::asymptotics::StokesLines,
    }
    let kernel = match f.beta {
        Some(_) => {
            let cfg = RunConfig::from_flags(f)?;
            let p = cfg.params()?;
            Some(KernelInfo {
                params: p,
                default_tol: default_tolerance(p.beta),
                picard_applicable: p.beta > beta_critical(),
                origin_class: p.origin_class(),
                stokes: stokes_lines(&p),
            })
        }
        None => None,
    };
    let info = Info { version: env!("CARGO_PKG_VERSION"), beta_critical: beta_critical(), suites: SUITES, kernel };
    stdout.write_all(json(&info)?.as_bytes())?;
    Ok(true)
}

fn solve_grid(cfg: &RunConfig, tag: Tag, picard: bool) -> Result<SolutionGrid> {
    let p = cfg.params()?;
    if picard {
        picard_solve(&p, tag, cfg.tol)
    } else {
        solve_ray(&p, tag, 0.0, cfg.tol)
    }
}

fn cmd_solve(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    let cfg = RunConfig::from_flags(f)?;
    let tag = tag_of(cfg.func)?;
    let g = solve_grid(&cfg, tag, f.picard)?;
    if let Some(path) = &cfg.out {
        std::fs::write(path, g.to_json()?)?;
    }
    #[derive(Serialize)]
    struct Summary {
        beta: f64,
        tag: Tag,
        tol: f64,
        nodes: usize,
        t_max: f64,
        residual: f64,
        condition: f64,
        method: crate::solver::Method,
    }
    let s = Summary {
        beta: cfg.beta,
        tag,
        tol: cfg.tol,
        nodes: g.nodes().len(),
        t_max: g.scheme().t_max,
        residual: g.residual(),
        condition: g.condition(),
        method: g.method(),
    };
    stdout.write_all(json(&s)?.as_bytes())?;
    Ok(true)
}

fn cmd_eval(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    let cfg = RunConfig::from_flags(f)?;
    let z = point(f)?;
    let p = cfg.params()?;
    let mut connection_residual = None;
    let mut matrix = None;
    let value = match cfg.func {
        Func::U | Func::V => {
            let rs = RaySolutions::new(p, tag_of(cfg.func)?, cfg.tol);
            connection_residual = Some(rs.connection_residual(z.r)?);
            rs.eval_surface(z)?
        }
        Func::LBeta | Func::UBeta => {
            let l = Parametrix::new(p, cfg.parity, cfg.tol);
            if cfg.func == Func::LBeta && f.parity.is_some() {
                matrix = Some(l.assemble_l(z)?.map(|row| row.map(C::from)));
            }
            let pair: &SolutionPair = l.pair();
            if cfg.func == Func::LBeta {
                pair.l_beta(z)?
            } else {
                pair.cap_u_beta(z)?
            }
        }
        Func::G => g_beta(z, cfg.beta, cfg.tol)?.value,
        Func::E => {
            let alpha = f.alpha.unwrap_or(1.0 / cfg.beta);
            ml_via_gbeta(alpha, z.to_complex(), cfg.tol)?.total()
        }
    };
    #[derive(Serialize)]
    struct EvalOut {
        #[serde(rename = "fn")]
        func: Func,
        beta: f64,
        z: PointOut,
        value: C,
        #[serde(skip_serializing_if = "Option::is_none")]
        connection_residual: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        matrix: Option<[[C; 2]; 2]>,
    }
    let out = EvalOut { func: cfg.func, beta: cfg.beta, z: z.into(), value: value.into(), connection_residual, matrix };
    stdout.write_all(json(&out)?.as_bytes())?;
    Ok(true)
}

/// Rows `(x, value)` of a table on the positive axis.
pub fn table_rows(cfg: &RunConfig, grid_file: Option<&Path>) -> Result<Vec<(f64, Complex64)>> {
    let xs = cfg.grid.abscissae();
    let from_grid = |g: &SolutionGrid| xs.iter().map(|&x| (x, g.interpolate(x))).collect();
    if let Some(path) = grid_file {
        let g = SolutionGrid::from_json(&std::fs::read_to_string(path)?)?;
        if g.theta() != 0.0 {
            return Err(config_err("grid", "table needs a positive-axis grid"));
        }
        return Ok(from_grid(&g));
    }
    match cfg.func {
        Func::U | Func::V => Ok(from_grid(&solve_grid(cfg, tag_of(cfg.func)?, false)?)),
        Func::LBeta | Func::UBeta => {
            let u = solve_grid(cfg, Tag::U, false)?;
            let v = solve_grid(cfg, Tag::V, false)?;
            let sign = if cfg.func == Func::LBeta { 1.0 } else { -1.0 };
            Ok(xs.iter().map(|&x| (x, (u.interpolate(x) + v.interpolate(x) * sign) * 0.5)).collect())
        }
        Func::G => xs
            .iter()
            .map(|&x| {
                let z = SurfacePoint::new(x, 0.0).map_err(|e| config_err("xmin", e.to_string()))?;
                Ok((x, g_beta(z, cfg.beta, cfg.tol)?.value))
            })
            .collect(),
        Func::E => xs.iter().map(|&x| Ok((x, ml_series(1.0 / cfg.beta, Complex64::new(x, 0.0))?))).collect(),
    }
}

pub fn rows_to_csv(rows: &[(f64, Complex64)]) -> String {
    let mut s = String::from("x,re,im\n");
    for (x, v) in rows {
        let _ = writeln!(s, "{},{},{}", fmt_g17(*x), fmt_g17(v.re), fmt_g17(v.im));
    }
    s
}

fn cmd_table(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    let cfg = RunConfig::from_flags(f)?;
    let rows = table_rows(&cfg, f.grid.as_deref())?;
    let text = match cfg.format {
        Format::Csv => rows_to_csv(&rows),
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                x: f64,
                re: f64,
                im: f64,
            }
            json(&rows.iter().map(|&(x, v)| Row { x, re: v.re, im: v.im }).collect::<Vec<_>>())?
        }
    };
    emit(cfg.out.as_deref(), &text, stdout)?;
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub k: usize,
    pub re: f64,
    pub im: f64,
    /// Change under halving every panel.
    pub err_est: f64,
}

pub fn coefficient_rows(p: &KernelParams, tag: Tag, tol: f64, terms: usize) -> Result<Vec<CoeffRow>> {
    let g = solve_ray(p, tag, 0.0, tol)?;
    let fine = solve_ray_with(p, tag, 0.0, tol, &SchemeOptions { refine: 1, ..Default::default() })?;
    let coeff = |k, g: &SolutionGrid| match tag {
        Tag::U => coeff_c(k, g),
        Tag::V => coeff_d(k, g),
    };
    let guard = k_max(&g);
    if terms > guard {
        return Err(Error::MomentOrder { k: terms, k_max: guard });
    }
    (1..=terms)
        .map(|k| {
            let a = coeff(k, &g)?;
            let b = coeff(k, &fine)?;
            Ok(CoeffRow { k, re: a.re, im: a.im, err_est: (a - b).norm() })
        })
        .collect()
}

fn cmd_coeffs(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    let cfg = RunConfig::from_flags(f)?;
    let rows = coefficient_rows(&cfg.params()?, tag_of(cfg.func)?, cfg.tol, f.terms.unwrap_or(4))?;
    let text = match cfg.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut s = String::from("k,re,im,err_est\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.k, fmt_g17(r.re), fmt_g17(r.im), fmt_g17(r.err_est));
            }
            s
        }
    };
    emit(cfg.out.as_deref(), &text, stdout)?;
    Ok(true)
}

fn cmd_gbeta(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    let beta = f.beta.ok_or_else(|| config_err("beta", "required"))?;
    let tol = f.tol.unwrap_or(1e-12);
    let z = point(f)?;
    let g = if f.pv {
        if (z.phi.abs() - std::f64::consts::PI).abs() > 1e-12 {
            return Err(config_err("pv", "principal value is taken on the cut, phi = +-pi"));
        }
        g_beta_principal_value(z.r, beta, tol)?
    } else {
        g_beta(z, beta, tol)?
    };
    #[derive(Serialize)]
    struct GOut {
        beta: f64,
        z: PointOut,
        value: C,
        method: crate::gbeta::GbetaMethod,
        err_est: f64,
    }
    let out = GOut { beta, z: z.into(), value: g.value.into(), method: g.method, err_est: g.err_est };
    stdout.write_all(json(&out)?.as_bytes())?;
    Ok(true)
}

fn cmd_ml(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    let alpha = f.alpha.ok_or_else(|| config_err("alpha", "required"))?;
    let z = Complex64::new(f.z.ok_or_else(|| config_err("z", "required"))?, f.im.unwrap_or(0.0));
    let tol = f.tol.unwrap_or(1e-12);
    let d = ml_via_gbeta(alpha, z, tol)?;
    let series = ml_series(alpha, z)?;
    #[derive(Serialize)]
    struct MlOut {
        z: C,
        decomposition: MLDecomposition,
        total: C,
        series: C,
        defect: f64,
    }
    let out = MlOut { z: z.into(), total: d.total().into(), series: series.into(), defect: (d.total() - series).norm(), decomposition: d };
    stdout.write_all(json(&out)?.as_bytes())?;
    Ok(true)
}

fn cmd_stokes(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    let cfg = RunConfig::from_flags(f)?;
    let s = stokes_lines(&cfg.params()?);
    #[derive(Serialize)]
    struct StokesOut {
        angles: [f64; 2],
        l: u32,
    }
    stdout.write_all(json(&StokesOut { angles: s.angles, l: s.l })?.as_bytes())?;
    Ok(true)
}

fn cmd_verify(f: &Flags, stdout: &mut dyn Write) -> Result<Passed> {
    if let Some(b) = f.beta {
        let (lo, hi) = CLI_BETA_RANGE;
        if !(lo..=hi).contains(&b) {
            return Err(config_err("beta", format!("beta out of range: {b} not in [{lo}, {hi}]")));
        }
    }
    let names: Vec<&str> = match f.suite.as_deref() {
        None | Some("all") => SUITES.to_vec(),
        Some(s) => vec![s],
    };
    let reports = names.iter().map(|n| run_suite(n, f.beta)).collect::<Result<Vec<SuiteReport>>>()?;
    stdout.write_all(json(&reports)?.as_bytes())?;
    Ok(reports.iter().all(|r| r.pass))
}

/// Exit status for an error: 1 for bad input, 2 for numerical failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Quadrature { .. } | Error::NodeBudget { .. } | Error::Singular { .. } | Error::NotContraction { .. } | Error::Overflow(_) => 2,
        _ => 1,
    }
}

/// Parses `args`, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(cli, &mut lock) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17_matches_printf() {
        let cases = [
            (1.0, "1"),
            (0.1, "0.10000000000000001"),
            (1e-5, "1.0000000000000001e-05"),
            (123456.789, "123456.789"),
            (1e17, "1e+17"),
            (-2.5, "-2.5"),
            (1e16, "10000000000000000"),
            (0.0001, "0.0001"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g17(x), want, "{x}");
        }
    }

    #[test]
    fn g17_round_trips() {
        for x in [std::f64::consts::PI, 1.0 / 3.0, 6.02214076e23, 1.2345e-300, 0.9999999999999999] {
            assert_eq!(fmt_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn validation_names_field() {
        let f = Flags { beta: Some(1.5), ..Default::default() };
        let e = RunConfig::from_flags(&f).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "beta"));
        assert!(e.to_string().contains("beta out of range"));
        let f = Flags { beta: Some(0.6), tol: Some(0.1), ..Default::default() };
        assert!(matches!(RunConfig::from_flags(&f), Err(Error::Config { field, .. }) if field == "tol"));
        let f = Flags { beta: Some(0.6), points: Some(1), ..Default::default() };
        assert!(matches!(RunConfig::from_flags(&f), Err(Error::Config { field, .. }) if field == "points"));
        let f = Flags { beta: Some(0.6), tol: Some(1e-2), points: Some(2), ..Default::default() };
        assert!(RunConfig::from_flags(&f).is_ok());
    }

    #[test]
    fn flags_override_file() {
        let file: Flags = serde_json::from_str(r#"{"beta": 0.7, "tol": 1e-9, "fn": "v"}"#).unwrap();
        let cli = Flags { beta: Some(0.6), ..Default::default() };
        let m = cli.over(file);
        assert_eq!(m.beta, Some(0.6));
        assert_eq!(m.tol, Some(1e-9));
        assert_eq!(m.func, Some(Func::V));
        assert!(serde_json::from_str::<Flags>(r#"{"betta": 0.7}"#).is_err());
    }

    #[test]
    fn grid_endpoints() {
        let g = GridSpec { xmin: 1e-3, xmax: 1e3, points: 7, spacing: Spacing::Log };
        let xs = g.abscissae();
        assert_eq!(xs[0], 1e-3);
        assert_eq!(xs[6], 1e3);
        assert!((xs[3] - 1.0).abs() < 1e-14);
    }
}
