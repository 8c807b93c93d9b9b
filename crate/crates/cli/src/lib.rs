//! The `bour` command line: list, eval, verify, mesh and figure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use bour_core::catalog::{self, BourParams, Family};
use bour_core::diffgeo::OracleConfig;
use bour_core::format::{fmt_g9, fmt_vec};
use bour_core::mesh::{self, Plane};
use bour_core::report::{self, Verdict};
use bour_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bour",
    version,
    about = "Bour's maximal and timelike minimal surfaces in Minkowski 3-space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the surface catalog.
    List,
    /// Closed-form position, fundamental forms, Gauss map and curvatures at one point.
    Eval(EvalArgs),
    /// Check zero mean curvature and the closed forms against the numeric oracle.
    Verify(VerifyArgs),
    /// Sample a surface and write OBJ, CSV or SVG.
    Mesh(MeshArgs),
    /// Write the geometry behind one of the catalogued figures.
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Spacelike,
    Timelike,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Spacelike => Family::Spacelike,
            FamilyArg::Timelike => Family::Timelike,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Obj,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Xy,
    Xz,
    Yz,
}

impl From<PlaneArg> for Plane {
    fn from(p: PlaneArg) -> Self {
        match p {
            PlaneArg::Xy => Plane::Xy,
            PlaneArg::Xz => Plane::Xz,
            PlaneArg::Yz => Plane::Yz,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_enum, default_value = "spacelike")]
    pub family: FamilyArg,
    /// Exponent ("3", "1/2", "2.5") or catalog label ("B_3/2-wide").
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Use the Cartesian (u, v) chart for B_3.
    #[arg(long)]
    pub cartesian: bool,
}

impl SurfaceArgs {
    fn resolve(&self) -> Result<BourParams, Error> {
        let m = self
            .m
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("--m is required".into()))?;
        catalog::resolve(self.family.into(), m, self.cartesian)
    }
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// First parameter (r, or u in the Cartesian chart).
    #[arg(allow_negative_numbers = true)]
    pub s: f64,
    /// Second parameter (θ, or v in the Cartesian chart).
    #[arg(allow_negative_numbers = true)]
    pub t: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Verify every catalog surface.
    #[arg(long, conflicts_with_all = ["m", "conjugate"])]
    pub all: bool,
    /// Verify the conjugate of a timelike surface.
    #[arg(long)]
    pub conjugate: bool,
    #[arg(long, default_value = "128x256", value_parser = parse_grid)]
    pub grid: (usize, usize),
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, value_enum, default_value = "obj")]
    pub format: FormatArg,
    #[arg(long, default_value = "128x256", value_parser = parse_grid)]
    pub grid: (usize, usize),
    /// Output file; defaults to the surface label with the format extension.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "xy")]
    pub plane: PlaneArg,
    #[arg(long, default_value_t = 1e-5)]
    pub step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    pub number: u32,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, default_value = "128x256", value_parser = parse_grid)]
    pub grid: (usize, usize),
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NSxNT, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a < 2 || b < 2 {
        return Err(format!("grid dimensions must be at least 2, got {a}x{b}"));
    }
    Ok((a, b))
}

/// Outcome of a command that ran to completion.
enum Done {
    Ok,
    VerifyFailed,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI with the given arguments, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "{e}");
        return EXIT_USAGE;
    }
    match execute(&cli.command, out) {
        Ok(Done::Ok) => EXIT_OK,
        Ok(Done::VerifyFailed) => EXIT_VERIFY,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            exit_code(&e)
        }
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("BOUR_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| {
        Error::InvalidArgument(format!(
            "BOUR_THREADS must be a non-negative integer, got {v:?}"
        ))
    })?;
    // a second initialisation in the same process is harmless
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes())
        .map_err(io_err(Path::new("<stdout>")))
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<Done, Error> {
    match cmd {
        Command::List => emit(out, &cmd_list()).map(|_| Done::Ok),
        Command::Eval(a) => emit(out, &cmd_eval(a)?).map(|_| Done::Ok),
        Command::Verify(a) => {
            let (text, pass) = cmd_verify(a)?;
            emit(out, &text)?;
            Ok(if pass { Done::Ok } else { Done::VerifyFailed })
        }
        Command::Mesh(a) => emit(out, &cmd_mesh(a)?).map(|_| Done::Ok),
        Command::Figure(a) => emit(out, &cmd_figure(a)?).map(|_| Done::Ok),
    }
}

pub fn cmd_list() -> String {
    let mut rows = vec![[
        "label".to_string(),
        "family".into(),
        "m".into(),
        "chart".into(),
        "data".into(),
        "domain".into(),
        "figure".into(),
    ]];
    for e in catalog::figure_sources() {
        let figs: Vec<String> = e.figures.iter().map(|f| f.to_string()).collect();
        rows.push([
            e.label.clone(),
            e.family.name().into(),
            e.m.to_string(),
            e.chart.name().into(),
            e.data_text(),
            e.domain_text(),
            figs.join(", "),
        ]);
    }
    table(&rows)
}

fn table<const N: usize>(rows: &[[String; N]]) -> String {
    let mut widths = [0usize; N];
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        s.push_str(cells.join("  ").trim_end());
        s.push('\n');
    }
    s
}

pub fn cmd_eval(a: &EvalArgs) -> Result<String, Error> {
    let e = a.surface.resolve()?;
    let (s, t) = (a.s, a.t);
    let position = e.position(s, t)?;
    let f = e.closed_form(s, t)?;
    let (sn, tn) = e.chart.axis_names();
    let lines = [
        ("surface", e.label.clone()),
        ("family", e.family.to_string()),
        ("chart", e.chart.name().to_string()),
        (
            "point",
            format!("({sn}, {tn}) = ({}, {})", fmt_g9(s), fmt_g9(t)),
        ),
        ("position", fmt_vec([position.x, position.y, position.z])),
        ("E", fmt_g9(f.first.e)),
        ("F", fmt_g9(f.first.f)),
        ("G", fmt_g9(f.first.g)),
        ("L", fmt_g9(f.second.l)),
        ("M", fmt_g9(f.second.m)),
        ("N", fmt_g9(f.second.n)),
        ("gauss", fmt_vec([f.gauss.x, f.gauss.y, f.gauss.z])),
        ("K", fmt_g9(f.k)),
        ("H", fmt_g9(f.h)),
        ("character", f.character.to_string()),
    ];
    Ok(lines.iter().map(|(k, v)| format!("{k}: {v}\n")).collect())
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<(String, bool), Error> {
    if !(a.tolerance > 0.0) || !a.tolerance.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            a.tolerance
        )));
    }
    let cfg = OracleConfig {
        step: a.step,
        ..OracleConfig::default()
    };
    cfg.validate()?;
    let mut text = String::new();
    let pass = if a.all {
        let verdicts = catalog::all()
            .iter()
            .map(|e| report::verify_entry(e, a.grid, &cfg, a.tolerance, false))
            .collect::<Result<Vec<Verdict>, Error>>()?;
        text.push_str(&format!("grid: {}x{}\n", a.grid.0, a.grid.1));
        text.push_str(&format!("tolerance: {}\n", fmt_g9(a.tolerance)));
        text.push_str(&format!("convention: {}\n", report::CONVENTION));
        text.push_str(&report::render_table(&verdicts));
        verdicts.iter().all(Verdict::pass)
    } else {
        let e = a.surface.resolve()?;
        let v = report::verify_entry(&e, a.grid, &cfg, a.tolerance, a.conjugate)?;
        text.push_str(&report::render_verdict(&v, a.grid, &cfg));
        v.pass()
    };
    text.push_str(&report::render_adjudications(&report::adjudicate(&cfg)?));
    Ok((text, pass))
}

fn file_stem(label: &str) -> String {
    label.replace('/', "-")
}

pub fn cmd_mesh(a: &MeshArgs) -> Result<String, Error> {
    let e = a.surface.resolve()?;
    let cfg = OracleConfig {
        step: a.step,
        ..OracleConfig::default()
    };
    cfg.validate()?;
    let grid = mesh::sample(&e, a.grid.0, a.grid.1, &cfg)?;
    let ext = match a.format {
        FormatArg::Obj => "obj",
        FormatArg::Csv => "csv",
        FormatArg::Svg => "svg",
    };
    let path = a
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.{ext}", file_stem(&e.label))));
    match a.format {
        FormatArg::Obj => mesh::export_obj(&grid, &path)?,
        FormatArg::Csv => mesh::export_csv(&grid, &path)?,
        FormatArg::Svg => mesh::export_svg_projection(&grid, a.plane.into(), &path)?,
    }
    let mut s = String::new();
    s.push_str(&format!("surface: {}\n", e.label));
    s.push_str(&format!("domain: {}\n", e.domain_text()));
    if let Some(c) = &grid.clipped {
        s.push_str(&format!("realizable: {c}\n"));
    }
    s.push_str(&format!("output: {}\n", path.display()));
    s.push_str(&format!("grid: {}x{}\n", grid.dims.0, grid.dims.1));
    s.push_str(&format!("vertices: {}\n", grid.vertices.len()));
    s.push_str(&format!("flagged cells: {}\n", grid.flagged_cells()));
    let k = grid.k_range().map_or("n/a".to_string(), |(lo, hi)| {
        format!("[{}, {}]", fmt_g9(lo), fmt_g9(hi))
    });
    s.push_str(&format!("K range: {k}\n"));
    Ok(s)
}

/// Figures drawn "with shadows" get all three coordinate-plane projections.
const SHADOW_FIGURES: [u32; 2] = [2, 4];

pub fn cmd_figure(a: &FigureArgs) -> Result<String, Error> {
    let e = catalog::by_figure(a.number).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown figure {} (figures are numbered 1 to 20)",
            a.number
        ))
    })?;
    fs::create_dir_all(&a.out).map_err(io_err(&a.out))?;
    let grid = mesh::sample(&e, a.grid.0, a.grid.1, &OracleConfig::default())?;
    let stem = format!("fig{:02}", a.number);
    let mut files = vec![format!("{stem}.obj")];
    mesh::export_obj(&grid, &a.out.join(&files[0]))?;
    if SHADOW_FIGURES.contains(&a.number) {
        for plane in [Plane::Xy, Plane::Xz, Plane::Yz] {
            let name = format!("{stem}-{}.svg", plane.name());
            mesh::export_svg_projection(&grid, plane, &a.out.join(&name))?;
            files.push(name);
        }
    }
    let manifest = json!({
        "figure": a.number,
        "surface": e.label,
        "family": e.family.name(),
        "m": e.m.to_string(),
        "chart": e.chart.name(),
        "data": e.data_text(),
        "domain": e.domain_text(),
        "s_range": [e.r_range.lo, e.r_range.hi],
        "t_range": [e.theta_range.lo, e.theta_range.hi],
        "realizable": grid.clipped,
        "grid": [grid.dims.0, grid.dims.1],
        "vertices": grid.vertices.len(),
        "flagged_cells": grid.flagged_cells(),
        "files": files,
    });
    let manifest_path = a.out.join(format!("{stem}.json"));
    let body = serde_json::to_string_pretty(&manifest).expect("manifest is plain JSON") + "\n";
    fs::write(&manifest_path, body).map_err(io_err(&manifest_path))?;

    let mut s = format!(
        "figure: {}\nsurface: {}\ndomain: {}\n",
        a.number,
        e.label,
        e.domain_text()
    );
    for f in &files {
        s.push_str(&format!("wrote: {}\n", a.out.join(f).display()));
    }
    s.push_str(&format!("wrote: {}\n", manifest_path.display()));
    Ok(s)
}
