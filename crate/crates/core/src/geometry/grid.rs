//! Uniform parameter grids, seed-branch pinning and the structure-equation
//! residuals of minimal surfaces in isothermal coordinates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    analyze_point, build_frame_branch, first_form, second_form, ConnectionOptions,
    GeometryError, PointOptions, Result, SurfacePointData, MINIMAL_TOL, SEED_BRANCHES,
};
use crate::surface_expr::{Domain, SurfaceDef};

/// `n × n` nodes spanning a rectangular domain, corners included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub domain: Domain,
    pub n: usize,
}

impl Grid {
    pub fn new(domain: Domain, n: usize) -> Result<Grid> {
        if n < 3 {
            return Err(GeometryError::GridTooSmall(n));
        }
        Ok(Grid { domain, n })
    }

    pub fn hu(&self) -> f64 {
        (self.domain.u1 - self.domain.u0) / (self.n - 1) as f64
    }

    pub fn hv(&self) -> f64 {
        (self.domain.v1 - self.domain.v0) / (self.n - 1) as f64
    }

    pub fn u(&self, i: usize) -> f64 {
        if i == self.n - 1 {
            self.domain.u1
        } else {
            self.domain.u0 + i as f64 * self.hu()
        }
    }

    pub fn v(&self, j: usize) -> f64 {
        if j == self.n - 1 {
            self.domain.v1
        } else {
            self.domain.v0 + j as f64 * self.hv()
        }
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Row-major index, `i` along `u`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n + i
    }

    /// `(i, j, u, v)` for every node.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize, f64, f64)> + '_ {
        (0..self.n).flat_map(move |j| (0..self.n).map(move |i| (i, j, self.u(i), self.v(j))))
    }
}

/// First entry of the seed list that yields a frame at every node.
pub fn select_branch(surface: &SurfaceDef, grid: &Grid) -> Result<Option<usize>> {
    let mut jets = Vec::with_capacity(grid.len());
    for (_, _, u, v) in grid.nodes() {
        jets.push(surface.eval_surface_jet(u, v)?);
    }
    Ok((0..SEED_BRANCHES.len())
        .find(|&b| jets.iter().all(|j| build_frame_branch(j, b).is_ok())))
}

/// Point data for every node of a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridData {
    pub grid: Grid,
    /// Seed pair used at every node, or `None` when chosen per node.
    pub seed_branch: Option<usize>,
    pub points: Vec<SurfacePointData>,
}

impl GridData {
    pub fn at(&self, i: usize, j: usize) -> &SurfacePointData {
        &self.points[self.grid.index(i, j)]
    }

    pub fn all_isothermal(&self) -> bool {
        self.points.iter().all(|p| p.isothermal)
    }

    pub fn sup_mean_curvature(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.mean_curvature.norm())
            .fold(0.0, f64::max)
    }

    /// `NotIsothermal` at the first failing node, then `NotMinimal`.
    pub fn require_minimal_isothermal(&self) -> Result<()> {
        if let Some(p) = self.points.iter().find(|p| !p.isothermal) {
            return Err(GeometryError::NotIsothermal {
                u: p.u,
                v: p.v,
                defect: p.first.isothermal_defect(),
            });
        }
        let sup_h = self.sup_mean_curvature();
        if !(sup_h <= MINIMAL_TOL) {
            return Err(GeometryError::NotMinimal { sup_h });
        }
        Ok(())
    }
}

/// Analyzes every node, pinning one seed pair when one works everywhere.
pub fn analyze_grid(surface: &SurfaceDef, grid: &Grid, opts: &PointOptions) -> Result<GridData> {
    let seed_branch = match opts.seed_branch {
        Some(b) => Some(b),
        None => select_branch(surface, grid)?,
    };
    let point_opts = PointOptions {
        seed_branch,
        ..*opts
    };
    let points = grid
        .nodes()
        .map(|(_, _, u, v)| analyze_point(surface, u, v, &point_opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(GridData {
        grid: *grid,
        seed_branch,
        points,
    })
}

#[derive(Clone, Copy)]
struct Fields {
    alpha: f64,
    beta: [Complex64; 2],
    gamma: Complex64,
}

fn fields(
    surface: &SurfaceDef,
    u: f64,
    v: f64,
    branch: usize,
    conn: &ConnectionOptions,
) -> Result<Fields> {
    let jet = surface.eval_surface_jet(u, v)?;
    let form = first_form(&jet)?;
    let frame = build_frame_branch(&jet, branch)?;
    let b = second_form(&jet, &frame).b;
    let c = super::normal_connection(surface, u, v, branch, conn)?;
    Ok(Fields {
        alpha: 0.5 * form.g11.ln(),
        beta: [
            Complex64::new(0.5 * b[0][0][0], -0.5 * b[0][0][1]),
            Complex64::new(0.5 * b[1][0][0], -0.5 * b[1][0][1]),
        ],
        gamma: Complex64::new(0.5 * c.gamma1, 0.5 * c.gamma2),
    })
}

/// `[gauss, codazzi1, codazzi2, ricci, holomorphy of (β¹)² + (β²)²]` at one
/// point, with outer derivatives by central differences of step `h`.
pub fn structure_residuals_at(
    surface: &SurfaceDef,
    u: f64,
    v: f64,
    h: f64,
    branch: usize,
    conn: &ConnectionOptions,
) -> Result<[f64; 5]> {
    let c = fields(surface, u, v, branch, conn)?;
    let up = fields(surface, u + h, v, branch, conn)?;
    let um = fields(surface, u - h, v, branch, conn)?;
    let vp = fields(surface, u, v + h, branch, conn)?;
    let vm = fields(surface, u, v - h, branch, conn)?;
    let i = Complex64::i();
    let dbar = |f: &dyn Fn(&Fields) -> Complex64| {
        0.5 * ((f(&up) - f(&um)) / (2.0 * h) + i * (f(&vp) - f(&vm)) / (2.0 * h))
    };
    let d = |f: &dyn Fn(&Fields) -> Complex64| {
        0.5 * ((f(&up) - f(&um)) / (2.0 * h) - i * (f(&vp) - f(&vm)) / (2.0 * h))
    };
    let e2a = (2.0 * c.alpha).exp();
    let [b1, b2] = c.beta;

    let lap = (up.alpha + um.alpha + vp.alpha + vm.alpha - 4.0 * c.alpha) / (h * h);
    let gauss = lap - 4.0 / e2a * (b1.norm_sqr() + b2.norm_sqr());
    let codazzi1 = dbar(&|f| f.beta[0]) - b2 * c.gamma;
    let codazzi2 = dbar(&|f| f.beta[1]) + b1 * c.gamma;
    let ricci = (d(&|f| f.gamma) + 2.0 / e2a * b1 * b2.conj()).im;
    let quad = dbar(&|f| f.beta[0] * f.beta[0] + f.beta[1] * f.beta[1]);
    Ok([
        gauss.abs(),
        codazzi1.norm(),
        codazzi2.norm(),
        ricci.abs(),
        quad.norm(),
    ])
}

/// Sup-norms of the structure-equation residuals over a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureResiduals {
    pub h: f64,
    pub seed_branch: usize,
    pub gauss: f64,
    pub codazzi1: f64,
    pub codazzi2: f64,
    pub ricci: f64,
    /// `sup |∂((β¹)² + (β²)²)/∂w̄|`.
    pub quadratic_holomorphy: f64,
    /// Per-node residuals in the order of [`structure_residuals_at`].
    pub fields: Vec<[f64; 5]>,
}

impl StructureResiduals {
    pub const NAMES: [&'static str; 5] = ["gauss", "codazzi1", "codazzi2", "ricci", "quadratic"];

    pub fn values(&self) -> [f64; 5] {
        [
            self.gauss,
            self.codazzi1,
            self.codazzi2,
            self.ricci,
            self.quadratic_holomorphy,
        ]
    }
}

/// Structure residuals at every node; `h` defaults to the grid spacing.
/// Refuses surfaces that are not minimal and isothermal on the grid.
pub fn structure_residuals(
    surface: &SurfaceDef,
    grid: &Grid,
    h: Option<f64>,
    conn: &ConnectionOptions,
) -> Result<StructureResiduals> {
    let data = analyze_grid(
        surface,
        grid,
        &PointOptions {
            connection: None,
            ..Default::default()
        },
    )?;
    data.require_minimal_isothermal()?;
    let branch = data.seed_branch.ok_or(GeometryError::NoGlobalBranch)?;
    let h = h.unwrap_or_else(|| grid.hu().min(grid.hv()));
    let fields = grid
        .nodes()
        .map(|(_, _, u, v)| structure_residuals_at(surface, u, v, h, branch, conn))
        .collect::<Result<Vec<_>>>()?;
    let sup = |k: usize| fields.iter().map(|f| f[k]).fold(0.0, f64::max);
    Ok(StructureResiduals {
        h,
        seed_branch: branch,
        gauss: sup(0),
        codazzi1: sup(1),
        codazzi2: sup(2),
        ricci: sup(3),
        quadratic_holomorphy: sup(4),
        fields,
    })
}
