//! `surface4`: analyze surfaces in four-dimensional Euclidean space.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use surface4::catalog::{lookup, CATALOG};
use surface4::geometry::{
    ConnectionOptions, GeometryError, Grid, PointOptions, ISOTHERMAL_TOL, SEED_BRANCHES,
};
use surface4::report::{self, grid_report, point_report, residual_report, rows_to_csv, Header};
use surface4::surface_expr::{Domain, ExprError, SurfaceDef};
use surface4::twistor::{isotropy_report, lift_grid, TwistorError, ISOTROPY_TOL};

#[derive(Parser)]
#[command(name = "surface4", version, about = "Minimal surfaces in E4 and their twistor lifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in surfaces and their expected flags.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Full point report as JSON.
    Analyze {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, num_args = 2, value_names = ["U", "V"], allow_negative_numbers = true)]
        at: Vec<f64>,
        /// Isothermality tolerance.
        #[arg(long, default_value_t = ISOTHERMAL_TOL)]
        tol: f64,
        /// Index into the seed list (e3,e4), (e2,e4), (e2,e3), (e1,e4), (e1,e3), (e1,e2).
        #[arg(long)]
        seed_normal: Option<usize>,
        /// Richardson extrapolation for the normal connection.
        #[arg(long)]
        richardson: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// Per-node data for plotting, with a summary block.
    Grid {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Outer step of the structure residuals; defaults to the grid spacing.
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The five isotropy conditions of a minimal surface.
    Isotropy {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = ISOTROPY_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Gauss, Codazzi and Ricci residuals at steps h and h/2.
    Residuals {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SurfaceArgs {
    /// Catalog name.
    #[arg(long)]
    surface: Option<String>,
    /// Four comma-separated component expressions in u and v.
    #[arg(long)]
    expr: Option<String>,
    /// Surface definition file {name, f1, f2, f3, f4, domain}.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, num_args = 4, value_names = ["U0", "U1", "V0", "V1"], allow_negative_numbers = true)]
    domain: Option<Vec<f64>>,
    #[arg(long, default_value_t = 41)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Prints to stdout, ignoring a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

/// Exit statuses.
const PARSE: u8 = 2;
const HYPOTHESIS: u8 = 3;
const NUMERIC: u8 = 4;
const IO: u8 = 1;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        let code = match e {
            ExprError::Domain { .. } => NUMERIC,
            _ => PARSE,
        };
        Failure::new(code, e)
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        let code = match &e {
            GeometryError::Expr(x) => return x.clone().into(),
            GeometryError::NotImmersed { .. } => HYPOTHESIS,
            GeometryError::NotIsothermal { .. } => HYPOTHESIS,
            GeometryError::NotMinimal { .. } => HYPOTHESIS,
            GeometryError::GridTooSmall(_) => PARSE,
            _ => NUMERIC,
        };
        let message = match hypothesis(&e) {
            Some(h) => format!("refused: hypothesis \"{h}\" fails: {e}"),
            None => e.to_string(),
        };
        Failure::new(code, message)
    }
}

impl From<TwistorError> for Failure {
    fn from(e: TwistorError) -> Self {
        match e {
            TwistorError::Geometry(g) => g.into(),
            other => Failure::new(NUMERIC, other),
        }
    }
}

fn hypothesis(e: &GeometryError) -> Option<&'static str> {
    match e {
        GeometryError::NotImmersed { .. } => Some("immersed"),
        GeometryError::NotIsothermal { .. } => Some("isothermal"),
        GeometryError::NotMinimal { .. } => Some("minimal"),
        _ => None,
    }
}

fn load_surface(args: &SurfaceArgs, domain: Option<&[f64]>) -> Result<SurfaceDef, Failure> {
    let mut s = if let Some(name) = &args.surface {
        lookup(name)
            .ok_or_else(|| Failure::new(PARSE, format!("unknown catalog surface '{name}'")))?
            .surface()
    } else if let Some(text) = &args.expr {
        SurfaceDef::parse_with(text, "expr", Domain::UNIT_SQUARE)?
    } else {
        let path = args.file.as_ref().expect("clap enforces one source");
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::new(IO, format!("{}: {e}", path.display())))?;
        SurfaceDef::from_json(&text)?
    };
    if let Some(d) = domain {
        let d = Domain::from([d[0], d[1], d[2], d[3]]);
        d.validate()?;
        s.domain = d;
    }
    Ok(s)
}

fn make_grid(s: &SurfaceDef, g: &GridArgs) -> Result<Grid, Failure> {
    Ok(Grid::new(s.domain, g.n)?)
}

fn to_json(v: &impl serde::Serialize, pretty: bool) -> String {
    let r = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    r.expect("reports serialize")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_catalog(json: bool) -> Result<(), Failure> {
    if json {
        let rows: Vec<Value> = CATALOG
            .iter()
            .map(|e| {
                serde_json::json!({
                    "name": e.name,
                    "components": e.components,
                    "domain": e.domain,
                    "expected": e.expected,
                    "note": e.note,
                })
            })
            .collect();
        say!("{}", to_json(&rows, false));
        return Ok(());
    }
    say!(
        "{:<20} {:<10} {:<8} {:<9} {:<6}  components",
        "name", "isothermal", "minimal", "isotropic", "lift"
    );
    for e in &CATALOG {
        let iso = match e.expected.isotropic {
            Some(b) => yes_no(b),
            None => "-",
        };
        say!(
            "{:<20} {:<10} {:<8} {:<9} {:<6}  {}",
            e.name,
            yes_no(e.expected.isothermal),
            yes_no(e.expected.minimal),
            iso,
            e.expected.constant_lift.to_string(),
            e.components
        );
    }
    Ok(())
}

fn cmd_analyze(
    s: &SurfaceDef,
    at: &[f64],
    tol: f64,
    seed: Option<usize>,
    richardson: bool,
    pretty: bool,
) -> Result<(), Failure> {
    let (u, v) = (at[0], at[1]);
    if !s.domain.contains(u, v) {
        return Err(Failure::new(
            PARSE,
            format!("point ({u}, {v}) lies outside the domain"),
        ));
    }
    if let Some(k) = seed {
        if k >= SEED_BRANCHES.len() {
            return Err(Failure::new(PARSE, format!("seed index {k} is not in 0..6")));
        }
    }
    let opts = PointOptions {
        seed_branch: seed,
        isothermal_tol: tol,
        connection: Some(ConnectionOptions { h: None, richardson }),
    };
    let r = point_report(s, u, v, &opts)?;
    say!("{}", to_json(&r, pretty));
    Ok(())
}

fn cmd_grid(
    s: &SurfaceDef,
    grid: &Grid,
    h: Option<f64>,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<(), Failure> {
    let r = grid_report(s, grid, h)?;
    let text = match format {
        Format::Json => to_json(&r, false) + "\n",
        Format::Csv => rows_to_csv(&r.rows).map_err(|e| Failure::new(IO, e))?,
    };
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::new(IO, format!("{}: {e}", path.display())))?;
            let m = &r.summary;
            eprintln!(
                "wrote {} rows to {}; sup|H| = {:.3e}, sup grad F+ = {:.3e}, sup grad F- = {:.3e}",
                r.rows.len(),
                path.display(),
                m.sup_mean_curvature,
                m.lift_gradient[0],
                m.lift_gradient[1]
            );
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    Ok(())
}

fn cmd_isotropy(s: &SurfaceDef, grid: &Grid, tol: f64, json: bool) -> Result<(), Failure> {
    let tg = lift_grid(
        s,
        grid,
        &PointOptions {
            connection: None,
            ..Default::default()
        },
    )?;
    let r = isotropy_report(&tg, tol)?;
    if json {
        let out = serde_json::json!({
            "header": Header::new(s, report::Tolerances { isotropy: tol, ..Default::default() }),
            "grid": grid,
            "report": r,
        });
        say!("{}", to_json(&out, false));
        return Ok(());
    }
    say!("surface {} on {}x{} grid, tol {tol:e}", s.name, grid.n, grid.n);
    for c in &r.conditions {
        say!(
            "({}) {:<6} residual {:>10.3e}  {}",
            c.label,
            if c.holds { "true" } else { "false" },
            c.residual,
            c.description
        );
    }
    say!(
        "constancy residuals +: {:.3e}  -: {:.3e}; grid gradient x diameter +: {:.3e}  -: {:.3e}",
        r.constancy_residual[0], r.constancy_residual[1], r.lift_gradient[0], r.lift_gradient[1]
    );
    say!("constant lift: {}", r.constant_lift);
    say!("consensus: {}", r.consensus);
    Ok(())
}

fn cmd_residuals(s: &SurfaceDef, grid: &Grid, h: Option<f64>, json: bool) -> Result<(), Failure> {
    let r = residual_report(s, grid, h)?;
    if json {
        say!("{}", to_json(&r, false));
        return Ok(());
    }
    say!(
        "surface {} on {}x{} grid, seed branch {}, h = {:e}",
        s.name, grid.n, grid.n, r.seed_branch, r.h
    );
    say!("{:<10} {:>12} {:>12} {:>8}", "residual", "h", "h/2", "order");
    for (k, name) in r.names.iter().enumerate() {
        let c = &r.convergence[k];
        let order = match c.order {
            Some(p) => format!("{p:.3}"),
            None => "floor".to_string(),
        };
        say!("{:<10} {:>12.3e} {:>12.3e} {:>8}", name, r.coarse[k], r.fine[k], order);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Catalog { json } => cmd_catalog(json),
        Command::Analyze {
            surface,
            at,
            tol,
            seed_normal,
            richardson,
            pretty,
        } => {
            let s = load_surface(&surface, None)?;
            cmd_analyze(&s, &at, tol, seed_normal, richardson, pretty)
        }
        Command::Grid {
            surface,
            grid,
            h,
            out,
            format,
        } => {
            let s = load_surface(&surface, grid.domain.as_deref())?;
            cmd_grid(&s, &make_grid(&s, &grid)?, h, out.as_ref(), format)
        }
        Command::Isotropy {
            surface,
            grid,
            tol,
            json,
        } => {
            let s = load_surface(&surface, grid.domain.as_deref())?;
            cmd_isotropy(&s, &make_grid(&s, &grid)?, tol, json)
        }
        Command::Residuals {
            surface,
            grid,
            h,
            json,
        } => {
            let s = load_surface(&surface, grid.domain.as_deref())?;
            cmd_residuals(&s, &make_grid(&s, &grid)?, h, json)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
