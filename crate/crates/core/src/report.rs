//! Self-describing reports for a point, a grid, the isotropy test and the
//! structure equations, in JSON and (for grids) CSV.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::convergence::{Convergence, ROUNDOFF_FLOOR};
use crate::geometry::{
    self, analyze_point, structure_residuals, ConnectionOptions, Grid, PointOptions,
    StructureResiduals, SurfacePointData,
};
use crate::linalg4::Chirality;
use crate::surface_expr::{Domain, SurfaceDef};
use crate::twistor::{
    self, constancy_conditions, g_plus_closed_form, gauss_map, isotropy_report, lift_grid, psi,
    ChartValue, IsotropyReport, LiftPoint, PsiVector, TwistorError,
};

pub const TOOL: &str = "surface4";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub immersion: f64,
    pub isothermal: f64,
    pub seed: f64,
    pub minimal: f64,
    pub isotropy: f64,
    pub chart_pole: f64,
    pub roundoff_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            immersion: geometry::IMMERSION_TOL,
            isothermal: geometry::ISOTHERMAL_TOL,
            seed: geometry::SEED_TOL,
            minimal: geometry::MINIMAL_TOL,
            isotropy: twistor::ISOTROPY_TOL,
            chart_pole: twistor::CHART_POLE_TOL,
            roundoff_floor: ROUNDOFF_FLOOR,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceInfo {
    pub name: String,
    pub components: [String; 4],
    pub domain: Domain,
}

impl From<&SurfaceDef> for SurfaceInfo {
    fn from(s: &SurfaceDef) -> Self {
        SurfaceInfo {
            name: s.name.clone(),
            components: s.components.each_ref().map(|e| e.to_string()),
            domain: s.domain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub surface: SurfaceInfo,
    pub tolerances: Tolerances,
}

impl Header {
    pub fn new(surface: &SurfaceDef, tolerances: Tolerances) -> Self {
        Header {
            tool: TOOL.into(),
            version: VERSION.into(),
            surface: surface.into(),
            tolerances,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    #[serde(flatten)]
    pub header: Header,
    pub fd_step: f64,
    pub data: SurfacePointData,
    pub psi: PsiVector,
    pub lift: LiftPoint,
    /// `g₊` from the closed form in `ψ`; absent away from isothermal points
    /// or at the pole of the chart.
    pub g_plus_closed_form: Option<Complex64>,
}

pub fn point_report(
    surface: &SurfaceDef,
    u: f64,
    v: f64,
    opts: &PointOptions,
) -> Result<PointReport, TwistorError> {
    let data = analyze_point(surface, u, v, opts)?;
    let lift = gauss_map(&data)?;
    let p = psi(&data.jet);
    let g_plus_closed_form = if data.isothermal {
        g_plus_closed_form(&p).ok()
    } else {
        None
    };
    Ok(PointReport {
        header: Header::new(
            surface,
            Tolerances {
                isothermal: opts.isothermal_tol,
                ..Default::default()
            },
        ),
        fd_step: opts
            .connection
            .map(|c| c.step(surface))
            .unwrap_or(f64::NAN),
        data,
        psi: p,
        lift,
        g_plus_closed_form,
    })
}

/// One CSV/JSON row of a grid report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub u: f64,
    pub v: f64,
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub mean_curvature: f64,
    pub c_plus_1: f64,
    pub c_plus_2: f64,
    pub c_plus_3: f64,
    pub c_minus_1: f64,
    pub c_minus_2: f64,
    pub c_minus_3: f64,
    pub g_plus_re: f64,
    pub g_plus_im: f64,
    pub g_plus_chart: String,
    pub g_minus_re: f64,
    pub g_minus_im: f64,
    pub g_minus_chart: String,
    /// `|(β¹)² + (β²)²|`, isothermal points only.
    pub quadratic: Option<f64>,
    pub constancy_plus: f64,
    pub constancy_minus: f64,
}

fn chart_parts(g: &ChartValue) -> (f64, f64, String) {
    match g {
        ChartValue::Primary(z) => (z.re, z.im, "primary".into()),
        ChartValue::Secondary(z) => (z.re, z.im, "secondary".into()),
    }
}

impl GridRow {
    pub fn new(p: &SurfacePointData, l: &LiftPoint) -> Self {
        let (gpr, gpi, gpc) = chart_parts(&l.g_plus);
        let (gmr, gmi, gmc) = chart_parts(&l.g_minus);
        let [kp, km] = constancy_conditions(p);
        GridRow {
            u: p.u,
            v: p.v,
            g11: p.first.g11,
            g12: p.first.g12,
            g22: p.first.g22,
            mean_curvature: p.mean_curvature.norm(),
            c_plus_1: l.c_plus[0],
            c_plus_2: l.c_plus[1],
            c_plus_3: l.c_plus[2],
            c_minus_1: l.c_minus[0],
            c_minus_2: l.c_minus[1],
            c_minus_3: l.c_minus[2],
            g_plus_re: gpr,
            g_plus_im: gpi,
            g_plus_chart: gpc,
            g_minus_re: gmr,
            g_minus_im: gmi,
            g_minus_chart: gmc,
            quadratic: p.beta.map(|[b1, b2]| (b1 * b1 + b2 * b2).norm()),
            constancy_plus: kp,
            constancy_minus: km,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub all_isothermal: bool,
    pub sup_mean_curvature: f64,
    pub minimal: bool,
    /// `sup ‖∂F±‖` by grid differences, `[+, −]`.
    pub lift_gradient: [f64; 2],
    /// Holomorphicity residuals of `g₊` and `ḡ₋`.
    pub holomorphicity: [f64; 2],
    pub isotropy: Option<IsotropyReport>,
    /// Present for minimal surfaces with a global seed branch.
    pub structure: Option<StructureSummary>,
}

/// Sup-norms of the structure-equation residuals at outer step `h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub h: f64,
    pub gauss: f64,
    pub codazzi1: f64,
    pub codazzi2: f64,
    pub ricci: f64,
    pub quadratic: f64,
}

impl From<&StructureResiduals> for StructureSummary {
    fn from(r: &StructureResiduals) -> Self {
        StructureSummary {
            h: r.h,
            gauss: r.gauss,
            codazzi1: r.codazzi1,
            codazzi2: r.codazzi2,
            ricci: r.ricci,
            quadratic: r.quadratic_holomorphy,
        }
    }
}

/// Normal connection settings used inside structure residuals.
pub const STRUCTURE_CONNECTION: ConnectionOptions = ConnectionOptions {
    h: None,
    richardson: true,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    #[serde(flatten)]
    pub header: Header,
    pub grid: Grid,
    /// Outer finite-difference step of the residual table.
    pub h: f64,
    /// Step of the normal-connection differences.
    pub fd_step: f64,
    pub seed_branch: Option<usize>,
    pub summary: GridSummary,
    pub rows: Vec<GridRow>,
}

/// Full grid sweep. `h` is the outer step of the structure residuals and
/// defaults to the grid spacing.
pub fn grid_report(
    surface: &SurfaceDef,
    grid: &Grid,
    h: Option<f64>,
) -> Result<GridReport, TwistorError> {
    let tg = lift_grid(
        surface,
        grid,
        &PointOptions {
            connection: None,
            ..Default::default()
        },
    )?;
    let minimal = tg.data.require_minimal_isothermal().is_ok();
    let tolerances = Tolerances::default();
    let isotropy = if minimal {
        Some(isotropy_report(&tg, tolerances.isotropy)?)
    } else {
        None
    };
    let h = h.unwrap_or_else(|| grid.hu().min(grid.hv()));
    let structure = match (minimal, tg.data.seed_branch) {
        (true, Some(_)) => Some(
            (&structure_residuals(surface, grid, Some(h), &STRUCTURE_CONNECTION)?).into(),
        ),
        _ => None,
    };
    let summary = GridSummary {
        all_isothermal: tg.data.all_isothermal(),
        sup_mean_curvature: tg.data.sup_mean_curvature(),
        minimal,
        lift_gradient: Chirality::BOTH.map(|e| tg.lift_gradient(e)),
        holomorphicity: tg.chart_residuals()?,
        isotropy,
        structure,
    };
    let rows = tg
        .data
        .points
        .iter()
        .zip(&tg.lifts)
        .map(|(p, l)| GridRow::new(p, l))
        .collect();
    Ok(GridReport {
        header: Header::new(surface, tolerances),
        grid: *grid,
        h,
        fd_step: STRUCTURE_CONNECTION.step(surface),
        seed_branch: tg.data.seed_branch,
        summary,
        rows,
    })
}

pub fn rows_to_csv(rows: &[GridRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn rows_from_csv(text: &str) -> Result<Vec<GridRow>, csv::Error> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect()
}

/// Structure residuals at steps `h` and `h/2` with observed orders.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    #[serde(flatten)]
    pub header: Header,
    pub grid: Grid,
    pub h: f64,
    pub fd_step: f64,
    pub seed_branch: usize,
    pub names: Vec<String>,
    pub coarse: [f64; 5],
    pub fine: [f64; 5],
    pub convergence: Vec<Convergence>,
}

pub fn residual_report(
    surface: &SurfaceDef,
    grid: &Grid,
    h: Option<f64>,
) -> Result<ResidualReport, geometry::GeometryError> {
    let conn = STRUCTURE_CONNECTION;
    let h = h.unwrap_or_else(|| grid.hu().min(grid.hv()));
    let coarse: StructureResiduals = structure_residuals(surface, grid, Some(h), &conn)?;
    let fine = structure_residuals(surface, grid, Some(0.5 * h), &conn)?;
    let (c, f) = (coarse.values(), fine.values());
    Ok(ResidualReport {
        header: Header::new(surface, Tolerances::default()),
        grid: *grid,
        h,
        fd_step: conn.step(surface),
        seed_branch: coarse.seed_branch,
        names: StructureResiduals::NAMES.iter().map(|s| s.to_string()).collect(),
        coarse: c,
        fine: f,
        convergence: (0..5)
            .map(|k| Convergence::new(c[k], f[k], ROUNDOFF_FLOOR))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn csv_round_trip() {
        let s = lookup("holo_cube").unwrap().surface();
        let r = grid_report(&s, &Grid::new(s.domain, 5).unwrap(), None).unwrap();
        let text = rows_to_csv(&r.rows).unwrap();
        assert_eq!(rows_from_csv(&text).unwrap(), r.rows);
    }

    #[test]
    fn json_round_trip() {
        let s = lookup("holo_square").unwrap().surface();
        let r = grid_report(&s, &Grid::new(s.domain, 5).unwrap(), None).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: GridReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn point_report_holo_square_origin() {
        let s = lookup("holo_square").unwrap().surface();
        let r = point_report(&s, 0.0, 0.0, &PointOptions::default()).unwrap();
        assert_eq!(r.data.second.b[0][0][0], 2.0);
        assert_eq!(r.g_plus_closed_form, Some(Complex64::new(1.0, 0.0)));
        assert_eq!(r.lift.g_plus, ChartValue::Primary(Complex64::new(1.0, 0.0)));
    }
}
