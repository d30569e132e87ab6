//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closedform::{self, circle_sphere_metrics, named_solid, regular_ngon, SolidKind};
use crate::core2d::{Metrics2, Polygon2};
use crate::core3d::{Metrics3, Polyhedron3};
use crate::derivcheck::{make_family, verify_theorem, DerivativeReport, DEFAULT_STEP_FACTOR};
use crate::erosion::{default_eps0, erosion_derivative, ErosionTable};
use crate::error::{Error, Result};
use crate::inscribe::{InscribedBall, Tangency, TangencyReport};
use crate::io::{self, MeshFormat};
use crate::shape::Body;
use crate::vector::Coords;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

const FORMATS_HELP: &str = "\
File formats:
  Polygon (JSON): {\"vertices\": [[x, y], ...]}
      Vertices in boundary order, either orientation. No other fields.
  Mesh (JSON):    {\"vertices\": [[x, y, z], ...], \"facets\": [[i, j, k, ...], ...]}
      Facet indices are 0-based. No other fields.
  Mesh (OBJ):     lines `v x y z` and `f i j k ...`
      Facet indices are 1-based plain integers (no `/`). Blank lines and
      text after `#` are ignored. Any other record is an error.

Coordinates are expected in the range 1 to 1e3 in magnitude; coincident
vertices and collinear edges are detected with an absolute tolerance of 1e-9.

Exit codes: 0 success, 1 input error, 2 verification failure.";

#[derive(Debug, Parser)]
#[command(name = "inradius", version, about = "Check dA/dr = L for shapes with an inscribed circle or sphere", after_help = FORMATS_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze a polygon: metrics, incircle, tangency, derivative or erosion.
    Analyze2d {
        path: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        erosion: ErosionArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Analyze a polyhedron: metrics, insphere, tangency, derivative.
    Analyze3d {
        path: PathBuf,
        /// Mesh format; guessed from the extension or content if omitted.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate area, perimeter and dA/dr for regular n-gons.
    NgonTable {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Write a shape with a given inradius (or box dimensions).
    Generate {
        #[arg(value_enum)]
        kind: KindArg,
        /// Inradius (ngon, cube, tetra).
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Number of sides (ngon).
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Side lengths (rect uses a, b; box uses a, b, c).
        #[arg(long, default_value_t = 2.0)]
        a: f64,
        #[arg(long, default_value_t = 4.0)]
        b: f64,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        /// Mesh format; defaults to the output extension, else OBJ.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Erosion table for a convex polygon.
    Erode {
        path: PathBuf,
        #[command(flatten)]
        erosion: ErosionArgs,
        #[command(flatten)]
        check: CheckArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Finite-difference step as a multiple of the inradius.
    #[arg(long, default_value_t = DEFAULT_STEP_FACTOR)]
    h_step: f64,
    /// Largest accepted relative residual.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Debug, Args)]
struct ErosionArgs {
    /// First erosion depth; defaults to r/8, lowered if an edge would
    /// collapse within the last two levels.
    #[arg(long)]
    eps0: Option<f64>,
    #[arg(long, default_value_t = 4)]
    levels: usize,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the JSON report here (`-` for stdout in place of the text report).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write a CSV table here (erosion rows or n-gon rows).
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Obj,
    Json,
}

impl From<FormatArg> for MeshFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Obj => MeshFormat::Obj,
            FormatArg::Json => MeshFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Ngon,
    Cube,
    Tetra,
    Rect,
    Box,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    TangentialTheoremHolds,
    NonTangentialErosionUsed,
    NotConvexSkipped,
    /// Solid without an insphere touching every facet; there is no fallback.
    NonTangentialNoFallback,
    /// A check ran but its residual exceeded the tolerance.
    VerificationFailed,
}

impl Verdict {
    fn exit_code(self) -> i32 {
        match self {
            Verdict::VerificationFailed => EXIT_VERIFY,
            _ => EXIT_OK,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub vertices: usize,
    pub facets: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport<M, P> {
    pub input: InputDigest,
    pub metrics: M,
    pub ball: Option<InscribedBall<P>>,
    pub tangency: Option<TangencyReport>,
    pub derivative: Option<DerivativeReport>,
    pub erosion: Option<ErosionTable>,
    pub verdict: Verdict,
}

pub type PolygonReport = AnalysisReport<Metrics2, crate::Point2>;
pub type PolyhedronReport = AnalysisReport<Metrics3, crate::Point3>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NGonRow {
    pub n: usize,
    pub area: f64,
    pub length: f64,
    pub shoelace_area: f64,
    pub fd_estimate: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleLimit {
    pub area: f64,
    pub circumference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NGonTable {
    pub r: f64,
    pub rows: Vec<NGonRow>,
    pub circle: CircleLimit,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Analyze2d {
            path,
            check,
            erosion,
            out,
        } => {
            let polygon = io::read_polygon(&path)?;
            let report = analyze_polygon(&polygon, &path, &options(&check, Some(&erosion))?)?;
            emit(&report, &out, || text_polygon(&report))?;
            if let (Some(csv), Some(table)) = (&out.csv, &report.erosion) {
                table.write_csv(fs::File::create(csv)?)?;
            }
            Ok(report.verdict.exit_code())
        }
        Command::Analyze3d {
            path,
            format,
            check,
            out,
        } => {
            let mesh = io::read_mesh(&path, format.map(Into::into))?;
            let report = analyze_polyhedron(&mesh, &path, &check_opts(&check)?)?;
            emit(&report, &out, || text_polyhedron(&report))?;
            Ok(report.verdict.exit_code())
        }
        Command::NgonTable {
            n_min,
            n_max,
            r,
            check,
            out,
        } => {
            let opts = check_opts(&check)?;
            let table = ngon_table(n_min, n_max, r, opts.h_step)?;
            emit(&table, &out, || text_ngon(&table))?;
            if let Some(csv) = &out.csv {
                let mut w = csv::Writer::from_writer(fs::File::create(csv)?);
                for row in &table.rows {
                    w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
                }
                w.flush()?;
            }
            let ok = table.rows.iter().all(|row| row.residual <= opts.tol);
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Generate {
            kind,
            r,
            n,
            a,
            b,
            c,
            format,
            out,
        } => {
            let text = generate(
                kind,
                r,
                n,
                [a, b, c],
                format.map(Into::into),
                out.as_deref(),
            )?;
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }
        Command::Erode {
            path,
            erosion,
            check,
            out,
        } => {
            let polygon = io::read_polygon(&path)?;
            let opts = options(&check, Some(&erosion))?;
            let table = erode(&polygon, &opts)?;
            emit(&table, &out, || text_erosion(&table))?;
            if let Some(csv) = &out.csv {
                table.write_csv(fs::File::create(csv)?)?;
            }
            Ok(if table.relative_error <= opts.tol {
                EXIT_OK
            } else {
                EXIT_VERIFY
            })
        }
    }
}

/// Numeric knobs of the analysis pipeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyzeOptions {
    /// Finite-difference step as a multiple of the inradius.
    pub h_step: f64,
    pub tol: f64,
    /// First erosion depth; `None` means [`default_eps0`].
    pub eps0: Option<f64>,
    pub levels: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            h_step: DEFAULT_STEP_FACTOR,
            tol: 1e-6,
            eps0: None,
            levels: 4,
        }
    }
}

fn options(check: &CheckArgs, erosion: Option<&ErosionArgs>) -> Result<AnalyzeOptions> {
    let mut opts = check_opts(check)?;
    if let Some(e) = erosion {
        opts.eps0 = e.eps0;
        opts.levels = e.levels;
    }
    Ok(opts)
}

fn check_opts(args: &CheckArgs) -> Result<AnalyzeOptions> {
    if !(args.h_step > 0.0) {
        return Err(Error::NonPositiveStep(args.h_step));
    }
    if !(args.tol >= 0.0) {
        return Err(Error::Format(format!(
            "tolerance must be >= 0, got {}",
            args.tol
        )));
    }
    Ok(AnalyzeOptions {
        h_step: args.h_step,
        tol: args.tol,
        ..AnalyzeOptions::default()
    })
}

/// Writes JSON to the `--json` target; prints the text report unless JSON went to stdout.
fn emit<T: Serialize>(value: &T, out: &OutputArgs, text: impl FnOnce() -> String) -> Result<()> {
    let json = || serde_json::to_string_pretty(value).expect("report serializes");
    match &out.json {
        Some(p) if p.as_os_str() == "-" => println!("{}", json()),
        Some(p) => {
            fs::write(p, json() + "\n")?;
            print!("{}", text());
        }
        None => print!("{}", text()),
    }
    std::io::stdout().flush()?;
    Ok(())
}

struct TheoremPart<P> {
    ball: InscribedBall<P>,
    tangency: TangencyReport,
    derivative: Option<DerivativeReport>,
}

fn theorem_part<B: Body>(shape: &B, opts: &AnalyzeOptions) -> Result<TheoremPart<B::Point>> {
    let ball = shape.inscribed_ball()?;
    let tangency = shape.tangency(&ball)?;
    let derivative = if tangency.is_tangential {
        let family = make_family(shape, &ball)?;
        let r = family.base_radius();
        Some(verify_theorem(&family, r, opts.h_step * r)?)
    } else {
        None
    };
    Ok(TheoremPart {
        ball,
        tangency,
        derivative,
    })
}

fn derivative_holds(d: &DerivativeReport, tol: f64) -> bool {
    d.residual <= tol && d.ratio_identity_residual <= tol && d.squeeze_ok
}

fn digest(path: &Path, vertices: usize, facets: Option<usize>) -> InputDigest {
    InputDigest {
        path: path.display().to_string(),
        vertices,
        facets,
    }
}

pub fn analyze_polygon(
    polygon: &Polygon2,
    path: &Path,
    opts: &AnalyzeOptions,
) -> Result<PolygonReport> {
    let mut report = AnalysisReport {
        input: digest(path, polygon.len(), None),
        metrics: polygon.metrics(),
        ball: None,
        tangency: None,
        derivative: None,
        erosion: None,
        verdict: Verdict::NotConvexSkipped,
    };
    if !polygon.is_convex() {
        eprintln!("warning: polygon is not convex; analysis skipped");
        return Ok(report);
    }
    let part = theorem_part(polygon, opts)?;
    report.verdict = match &part.derivative {
        Some(d) if derivative_holds(d, opts.tol) => Verdict::TangentialTheoremHolds,
        Some(_) => Verdict::VerificationFailed,
        None => {
            let eps0 = match opts.eps0 {
                Some(e) => e,
                None => default_eps0(polygon, opts.levels)?,
            };
            let table = erosion_derivative(polygon, eps0, opts.levels)?;
            let ok = table.relative_error <= opts.tol;
            report.erosion = Some(table);
            if ok {
                Verdict::NonTangentialErosionUsed
            } else {
                Verdict::VerificationFailed
            }
        }
    };
    report.ball = Some(part.ball);
    report.tangency = Some(part.tangency);
    report.derivative = part.derivative;
    Ok(report)
}

pub fn analyze_polyhedron(
    mesh: &Polyhedron3,
    path: &Path,
    opts: &AnalyzeOptions,
) -> Result<PolyhedronReport> {
    let mut report = AnalysisReport {
        input: digest(path, mesh.vertices().len(), Some(mesh.facets().len())),
        metrics: mesh.metrics(),
        ball: None,
        tangency: None,
        derivative: None,
        erosion: None,
        verdict: Verdict::NotConvexSkipped,
    };
    if !mesh.is_convex() {
        eprintln!("warning: polyhedron is not convex; analysis skipped");
        return Ok(report);
    }
    let part = theorem_part(mesh, opts)?;
    report.verdict = match &part.derivative {
        Some(d) if derivative_holds(d, opts.tol) => Verdict::TangentialTheoremHolds,
        Some(_) => Verdict::VerificationFailed,
        None => Verdict::NonTangentialNoFallback,
    };
    report.ball = Some(part.ball);
    report.tangency = Some(part.tangency);
    report.derivative = part.derivative;
    Ok(report)
}

pub fn ngon_table(n_min: usize, n_max: usize, r: f64, h_step: f64) -> Result<NGonTable> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::BadRange(n_min, n_max));
    }
    let rows = (n_min..=n_max)
        .map(|n| {
            let (metrics, polygon) = regular_ngon(n, r)?;
            let ball = polygon.inscribed_ball()?;
            let family = make_family(&polygon, &ball)?;
            let report = verify_theorem(&family, r, h_step * r)?;
            Ok(NGonRow {
                n,
                area: metrics.area,
                length: metrics.length,
                shoelace_area: polygon.signed_area(),
                fd_estimate: report.fd_estimate,
                residual: (report.fd_estimate - metrics.length).abs() / metrics.length,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let circle = circle_sphere_metrics(r)?;
    Ok(NGonTable {
        r,
        rows,
        circle: CircleLimit {
            area: circle.disk_area,
            circumference: circle.circumference,
        },
    })
}

fn erode(polygon: &Polygon2, opts: &AnalyzeOptions) -> Result<ErosionTable> {
    let eps0 = match opts.eps0 {
        Some(e) => e,
        None => default_eps0(polygon, opts.levels)?,
    };
    erosion_derivative(polygon, eps0, opts.levels)
}

fn generate(
    kind: KindArg,
    r: f64,
    n: usize,
    [a, b, c]: [f64; 3],
    format: Option<MeshFormat>,
    out: Option<&Path>,
) -> Result<String> {
    let mesh_format = || {
        format.unwrap_or_else(
            || match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
                Some(e) if e.eq_ignore_ascii_case("json") => MeshFormat::Json,
                _ => MeshFormat::Obj,
            },
        )
    };
    Ok(match kind {
        KindArg::Ngon => io::polygon_to_json(&regular_ngon(n, r)?.1) + "\n",
        KindArg::Rect => io::polygon_to_json(&closedform::rectangle(a, b)?) + "\n",
        KindArg::Cube => io::write_mesh(&named_solid(SolidKind::Cube, r)?.1, mesh_format()),
        KindArg::Tetra => io::write_mesh(
            &named_solid(SolidKind::RegularTetrahedron, r)?.1,
            mesh_format(),
        ),
        KindArg::Box => io::write_mesh(&closedform::axis_box(a, b, c)?, mesh_format()),
    })
}

/// Twelve significant digits, trailing zeros trimmed.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{e}")
    }
}

fn fmt_point<P: Coords>(p: P) -> String {
    let parts: Vec<String> = (0..P::DIM).map(|i| fmt_num(p.coord(i))).collect();
    format!("({})", parts.join(", "))
}

fn text_common<P: Coords>(
    out: &mut String,
    ball: &Option<InscribedBall<P>>,
    tangency: &Option<TangencyReport>,
    derivative: &Option<DerivativeReport>,
    deriv_label: &str,
) {
    if let Some(ball) = ball {
        out.push_str(&format!("inradius   {}\n", fmt_num(ball.radius)));
        out.push_str(&format!(
            "center     {}{}\n",
            fmt_point(ball.center),
            if ball.center_unique {
                ""
            } else {
                " (not unique)"
            }
        ));
    }
    if let Some(t) = tangency {
        out.push_str(&format!(
            "tangency   {} tangent, {} clear, {} outside segment; {}\n",
            t.count(Tangency::Tangent),
            t.count(Tangency::Clear),
            t.count(Tangency::TangentLineButOutsideSegment),
            if t.is_tangential {
                "tangential"
            } else {
                "not tangential"
            }
        ));
    }
    if let Some(d) = derivative {
        out.push_str(&format!("{deriv_label}      {}\n", fmt_num(d.fd_estimate)));
        out.push_str(&format!("residual   {}\n", fmt_num(d.residual)));
        out.push_str(&format!(
            "ratio      {}\n",
            fmt_num(d.ratio_identity_residual)
        ));
        out.push_str(&format!(
            "squeeze    {}\n",
            if d.squeeze_ok {
                "strict at every sample"
            } else {
                "FAILED"
            }
        ));
    }
}

fn text_polygon(report: &PolygonReport) -> String {
    let mut out = format!(
        "input      {} ({} vertices)\narea       {}\nperimeter  {}\n",
        report.input.path,
        report.input.vertices,
        fmt_num(report.metrics.area),
        fmt_num(report.metrics.perimeter)
    );
    text_common(
        &mut out,
        &report.ball,
        &report.tangency,
        &report.derivative,
        "dA/dr",
    );
    if let Some(t) = &report.erosion {
        out.push_str(&text_erosion(t));
    }
    out.push_str(&format!("verdict    {:?}\n", report.verdict));
    out
}

fn text_polyhedron(report: &PolyhedronReport) -> String {
    let mut out = format!(
        "input      {} ({} vertices, {} facets)\nvolume     {}\nsurface    {}\n",
        report.input.path,
        report.input.vertices,
        report.input.facets.unwrap_or(0),
        fmt_num(report.metrics.volume),
        fmt_num(report.metrics.surface_area)
    );
    text_common(
        &mut out,
        &report.ball,
        &report.tangency,
        &report.derivative,
        "dV/dr",
    );
    out.push_str(&format!("verdict    {:?}\n", report.verdict));
    out
}

fn text_erosion(t: &ErosionTable) -> String {
    let mut out = String::from("epsilon            inner_area         quotient\n");
    for row in &t.rows {
        out.push_str(&format!(
            "{:<18} {:<18} {}\n",
            fmt_num(row.epsilon),
            fmt_num(row.inner_area),
            fmt_num(row.quotient)
        ));
    }
    out.push_str(&format!(
        "limit      {}\nperimeter  {}\nrel error  {}\n",
        fmt_num(t.extrapolated_limit),
        fmt_num(t.exact_perimeter),
        fmt_num(t.relative_error)
    ));
    out
}

fn text_ngon(t: &NGonTable) -> String {
    let mut out = format!(
        "{:>5} {:<18} {:<18} {:<18} {}\n",
        "n", "area", "length", "dA/dr", "residual"
    );
    for row in &t.rows {
        out.push_str(&format!(
            "{:>5} {:<18} {:<18} {:<18} {}\n",
            row.n,
            fmt_num(row.area),
            fmt_num(row.length),
            fmt_num(row.fd_estimate),
            fmt_num(row.residual)
        ));
    }
    out.push_str(&format!(
        "{:>5} {:<18} {}\n",
        "circle",
        fmt_num(t.circle.area),
        fmt_num(t.circle.circumference)
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_num(4.0), "4");
        assert_eq!(fmt_num(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_num(20.784609690826528), "20.7846096908");
        assert_eq!(fmt_num(1.5e-16), "1.5e-16");
        assert_eq!(fmt_num(-0.25), "-0.25");
        assert_eq!(fmt_num(123456789012345.0), "1.23456789012e14");
    }

    #[test]
    fn ngon_range_checked() {
        assert_eq!(ngon_table(2, 5, 1.0, 1e-3), Err(Error::BadRange(2, 5)));
        assert_eq!(ngon_table(6, 5, 1.0, 1e-3), Err(Error::BadRange(6, 5)));
        let t = ngon_table(3, 4, 2.0, 1e-3).unwrap();
        let twelve_root3 = 12.0 * 3f64.sqrt();
        assert!((t.rows[0].area - twelve_root3).abs() < 1e-12);
        assert!((t.rows[0].length - twelve_root3).abs() < 1e-12);
        assert!(t.rows.iter().all(|r| r.residual <= 1e-9));
    }

    #[test]
    fn parse_failures_exit_one() {
        assert_eq!(run(["inradius", "analyze2d"]), EXIT_INPUT);
        assert_eq!(run(["inradius", "bogus"]), EXIT_INPUT);
        assert_eq!(run(["inradius", "--help"]), EXIT_OK);
    }
}
