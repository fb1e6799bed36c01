//! The Gauss map `p ↦ (F₊(p), F₋(p)) ∈ Σ₊ × Σ₋`, its stereographic charts
//! `g±`, holomorphicity residuals and the isotropy test for minimal surfaces.
//!
//! Each lift is available twice: from the complex derivatives `ψⁱ = ∂fⁱ/∂w`
//! (isothermal points only) and from an oriented frame as
//! `F_ε = t₁∧t₂ + ε n₁∧n₂`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex_structures::{compose_ocs, OrthogonalComplexStructure, StructureError};
use crate::geometry::{
    analyze_grid, mat2_lincomb, Frame, GeometryError, Grid, GridData, PointOptions,
    SurfacePointData,
};
use crate::linalg4::{wedge, Bivector, Chirality, Mat4};
use crate::surface_expr::{SurfaceDef, SurfaceJet};

/// Distance of `c³` from 1 below which the primary chart is not used.
pub const CHART_POLE_TOL: f64 = 1e-8;
/// Tolerance on `|c| = 1` for sphere coordinates.
pub const UNIT_TOL: f64 = 1e-8;
/// Default tolerance of the isotropy conditions.
pub const ISOTROPY_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistorError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("sphere coordinates have norm {0}, expected 1")]
    NonUnitCoords(f64),
    #[error("g+ is at the pole of the chart (1 - c3 = {0:e})")]
    PoleOfChart(f64),
}

pub type Result<T> = std::result::Result<T, TwistorError>;

/// `ψⁱ = ½(fⁱ_u − i fⁱ_v)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiVector(pub [Complex64; 4]);

impl PsiVector {
    /// `Σ (ψⁱ)²`, zero at isothermal points.
    pub fn square_sum(&self) -> Complex64 {
        self.0.iter().map(|z| z * z).sum()
    }

    /// `Σ |ψⁱ|² = e^{2α}/2` at isothermal points.
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }
}

pub fn psi(jet: &SurfaceJet) -> PsiVector {
    PsiVector(std::array::from_fn(|i| {
        Complex64::new(0.5 * jet.fu[i], -0.5 * jet.fv[i])
    }))
}

/// `(Ψ_ε¹, Ψ_ε², Ψ_ε³)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BigPsi {
    pub eps: Chirality,
    pub psi: [Complex64; 3],
}

impl BigPsi {
    /// `−(2i/e^{2α}) Ψ_ε` before discarding the imaginary part.
    pub fn scaled(&self, e2a: f64) -> [Complex64; 3] {
        let f = Complex64::new(0.0, -2.0 / e2a);
        self.psi.map(|z| f * z)
    }

    /// Real sphere coordinates `c_ε`.
    pub fn coords(&self, e2a: f64) -> [f64; 3] {
        self.scaled(e2a).map(|z| z.re)
    }

    /// Largest imaginary part of `−(2i/e^{2α}) Ψ_ε^k`.
    pub fn imaginary_defect(&self, e2a: f64) -> f64 {
        self.scaled(e2a).iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

pub fn big_psi(p: &PsiVector, eps: Chirality) -> BigPsi {
    let s = eps.sign();
    let q = &p.0;
    let x = |a: usize, b: usize| q[a] * q[b].conj() - q[b] * q[a].conj();
    BigPsi {
        eps,
        psi: [
            x(0, 1) + s * x(2, 3),
            x(0, 2) + s * x(3, 1),
            x(0, 3) + s * x(1, 2),
        ],
    }
}

/// `F_ε = −(2i/e^{2α}) Σ Ψ_ε^k I_{ε,k}`.
pub fn lift_isothermal(
    p: &PsiVector,
    e2a: f64,
    eps: Chirality,
) -> Result<OrthogonalComplexStructure> {
    Ok(compose_ocs(eps, big_psi(p, eps).coords(e2a), UNIT_TOL)?)
}

/// `F_ε = t₁∧t₂ + ε n₁∧n₂` for a frame of determinant +1.
pub fn lift_frame(frame: &Frame, eps: Chirality) -> OrthogonalComplexStructure {
    let b = wedge(frame.t1, frame.t2) + wedge(frame.n1, frame.n2).scale(eps.sign());
    let (cp, cm) = b.coords();
    OrthogonalComplexStructure {
        matrix: b.into_matrix(),
        chirality: eps,
        coords: match eps {
            Chirality::Plus => cp,
            Chirality::Minus => cm,
        },
    }
}

/// A chart value; `Secondary` is `(c¹ + ic²)/(1 + c³)`, used near `c³ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "chart", content = "value", rename_all = "lowercase")]
pub enum ChartValue {
    Primary(Complex64),
    Secondary(Complex64),
}

impl ChartValue {
    pub fn primary(&self) -> Option<Complex64> {
        match self {
            ChartValue::Primary(z) => Some(*z),
            ChartValue::Secondary(_) => None,
        }
    }

    /// The primary value, recovered from the secondary one as `1/s̄` when
    /// that is finite.
    pub fn value(&self) -> Complex64 {
        match self {
            ChartValue::Primary(z) => *z,
            ChartValue::Secondary(s) => 1.0 / s.conj(),
        }
    }
}

/// Stereographic projection from `(0, 0, 1)`: `(c¹ + ic²)/(1 − c³)`.
pub fn chart(c: [f64; 3]) -> Result<ChartValue> {
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(TwistorError::NonUnitCoords(n));
    }
    let z = Complex64::new(c[0], c[1]);
    Ok(if 1.0 - c[2] <= CHART_POLE_TOL {
        ChartValue::Secondary(z / (1.0 + c[2]))
    } else {
        ChartValue::Primary(z / (1.0 - c[2]))
    })
}

/// `(2a, 2b, a² + b² − 1)/(a² + b² + 1)` for `g = a + ib`.
pub fn inverse_chart(g: Complex64) -> [f64; 3] {
    let r = g.norm_sqr();
    let d = r + 1.0;
    [2.0 * g.re / d, 2.0 * g.im / d, (r - 1.0) / d]
}

/// `g₊` directly from `ψ`, using whichever of the two equivalent quotients
/// has the larger denominator.
pub fn g_plus_closed_form(p: &PsiVector) -> Result<Complex64> {
    let e2a = 2.0 * p.norm_sqr();
    let c3 = big_psi(p, Chirality::Plus).coords(e2a)[2];
    if 1.0 - c3 <= CHART_POLE_TOL {
        return Err(TwistorError::PoleOfChart(1.0 - c3));
    }
    let i = Complex64::i();
    let q = &p.0;
    let d1 = q[1] - i * q[2];
    let d2 = q[0] - i * q[3];
    Ok(if d1.norm() >= d2.norm() {
        -i * (q[0] + i * q[3]) / d1
    } else {
        i * (q[1] + i * q[2]) / d2
    })
}

/// Both lifts at a point with their sphere coordinates and chart values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftPoint {
    pub f_plus: OrthogonalComplexStructure,
    pub f_minus: OrthogonalComplexStructure,
    pub c_plus: [f64; 3],
    pub c_minus: [f64; 3],
    pub g_plus: ChartValue,
    pub g_minus: ChartValue,
}

impl LiftPoint {
    pub fn get(&self, eps: Chirality) -> &OrthogonalComplexStructure {
        match eps {
            Chirality::Plus => &self.f_plus,
            Chirality::Minus => &self.f_minus,
        }
    }
}

pub fn gauss_map(p: &SurfacePointData) -> Result<LiftPoint> {
    let f_plus = lift_frame(&p.frame, Chirality::Plus);
    let f_minus = lift_frame(&p.frame, Chirality::Minus);
    Ok(LiftPoint {
        f_plus,
        f_minus,
        c_plus: f_plus.coords,
        c_minus: f_minus.coords,
        g_plus: chart(f_plus.coords)?,
        g_minus: chart(f_minus.coords)?,
    })
}

/// Closed forms of `∂_u F_ε` and `∂_v F_ε` at an isothermal point.
pub fn lift_derivatives(p: &SurfacePointData, eps: Chirality) -> Option<[Mat4; 2]> {
    let alpha = p.alpha?;
    let s = eps.sign();
    let f = &p.frame;
    let e1 = wedge(f.t1, f.n1) + wedge(f.n2, f.t2).scale(s);
    let e2 = wedge(f.t1, f.n2) + wedge(f.t2, f.n1).scale(s);
    let b = &p.second.b;
    let k = (-alpha).exp();
    let d = |a: usize| -> Mat4 {
        let x = b[0][a][1] + s * b[1][a][0];
        let y = b[1][a][1] - s * b[0][a][0];
        (e1.scale(k * x) + e2.scale(k * y)).into_matrix()
    };
    Some([d(0), d(1)])
}

/// Residuals of the pointwise conditions under which `F₊` (first entry) or
/// `F₋` (second entry) has vanishing derivative.
pub fn constancy_conditions(p: &SurfacePointData) -> [f64; 2] {
    let b = &p.second.b;
    let (b111, b112, b122) = (b[0][0][0], b[0][0][1], b[0][1][1]);
    let (b211, b212, b222) = (b[1][0][0], b[1][0][1], b[1][1][1]);
    let max = |xs: [f64; 4]| xs.iter().map(|x| x.abs()).fold(0.0, f64::max);
    [
        max([b111 - b212, b111 + b122, b222 - b112, b112 + b211]),
        max([b111 + b212, b111 + b122, b222 + b112, b112 - b211]),
    ]
}

/// `sup |½(∂_u + i∂_v) f|` over interior nodes by central differences.
/// Nodes whose stencil touches a `None` are skipped.
pub fn holomorphicity_residual(field: &[Option<Complex64>], grid: &Grid) -> Result<f64> {
    if grid.n < 3 {
        return Err(GeometryError::GridTooSmall(grid.n).into());
    }
    let (hu, hv) = (grid.hu(), grid.hv());
    let i_unit = Complex64::i();
    let mut sup: f64 = 0.0;
    for j in 1..grid.n - 1 {
        for i in 1..grid.n - 1 {
            let at = |a: usize, b: usize| field[grid.index(a, b)];
            let (Some(up), Some(um), Some(vp), Some(vm)) =
                (at(i + 1, j), at(i - 1, j), at(i, j + 1), at(i, j - 1))
            else {
                continue;
            };
            let r = 0.5 * ((up - um) / (2.0 * hu) + i_unit * (vp - vm) / (2.0 * hv));
            sup = sup.max(r.norm());
        }
    }
    Ok(sup)
}

/// Holomorphicity residual of the chart image of a sphere-valued field
/// (conjugated when `conjugate`). A stencil is measured in the chart from
/// `(0, 0, 1)` when its centre has `c³ ≤ 0` and otherwise in the chart
/// `1/g = (c¹ − ic²)/(1 + c³)`, which is holomorphic exactly where `g` is.
pub fn chart_field_residual(coords: &[[f64; 3]], grid: &Grid, conjugate: bool) -> Result<f64> {
    if grid.n < 3 {
        return Err(GeometryError::GridTooSmall(grid.n).into());
    }
    let fix = |z: Complex64| if conjugate { z.conj() } else { z };
    let lower = |c: &[f64; 3]| fix(Complex64::new(c[0], c[1]) / (1.0 - c[2]));
    let upper = |c: &[f64; 3]| fix(Complex64::new(c[0], -c[1]) / (1.0 + c[2]));
    let (hu, hv) = (grid.hu(), grid.hv());
    let mut sup: f64 = 0.0;
    for j in 1..grid.n - 1 {
        for i in 1..grid.n - 1 {
            let at = |a: usize, b: usize| &coords[grid.index(a, b)];
            let use_upper = at(i, j)[2] > 0.0;
            let f = |c: &[f64; 3]| if use_upper { upper(c) } else { lower(c) };
            let du = (f(at(i + 1, j)) - f(at(i - 1, j))) / (2.0 * hu);
            let dv = (f(at(i, j + 1)) - f(at(i, j - 1))) / (2.0 * hv);
            let r = 0.5 * (du + Complex64::i() * dv);
            if r.is_nan() {
                continue;
            }
            sup = sup.max(r.norm());
        }
    }
    Ok(sup)
}

/// Grid point data together with the Gauss map at every node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistorGrid {
    pub data: GridData,
    pub lifts: Vec<LiftPoint>,
}

impl TwistorGrid {
    pub fn coords(&self, eps: Chirality) -> Vec<[f64; 3]> {
        self.lifts.iter().map(|l| l.get(eps).coords).collect()
    }

    /// Holomorphicity residuals of `g₊` and `ḡ₋`.
    pub fn chart_residuals(&self) -> Result<[f64; 2]> {
        let g = &self.data.grid;
        Ok([
            chart_field_residual(&self.coords(Chirality::Plus), g, false)?,
            chart_field_residual(&self.coords(Chirality::Minus), g, true)?,
        ])
    }

    /// `sup ‖∂F_ε‖` over the grid by central differences (one-sided at the
    /// boundary), entrywise max norm.
    pub fn lift_gradient(&self, eps: Chirality) -> f64 {
        let g = &self.data.grid;
        let m = |i: usize, j: usize| self.lifts[g.index(i, j)].get(eps).matrix;
        let diff = |lo: usize, hi: usize, h: f64| (hi - lo) as f64 * h;
        let mut sup: f64 = 0.0;
        for j in 0..g.n {
            for i in 0..g.n {
                let (il, ih) = (i.saturating_sub(1), (i + 1).min(g.n - 1));
                let (jl, jh) = (j.saturating_sub(1), (j + 1).min(g.n - 1));
                let du = (m(ih, j) - m(il, j)).max_abs() / diff(il, ih, g.hu());
                let dv = (m(i, jh) - m(i, jl)).max_abs() / diff(jl, jh, g.hv());
                sup = sup.max(du).max(dv);
            }
        }
        sup
    }
}

/// Analyzes a grid and evaluates the Gauss map at every node.
pub fn lift_grid(surface: &SurfaceDef, grid: &Grid, opts: &PointOptions) -> Result<TwistorGrid> {
    let data = analyze_grid(surface, grid, opts)?;
    let lifts = data
        .points
        .iter()
        .map(gauss_map)
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistorGrid { data, lifts })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantLift {
    Plus,
    Minus,
    Both,
    None,
}

impl fmt::Display for ConstantLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstantLift::Plus => "+",
            ConstantLift::Minus => "-",
            ConstantLift::Both => "both",
            ConstantLift::None => "none",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Consensus {
    Isotropic,
    NonIsotropic,
    Inconsistent,
}

impl fmt::Display for Consensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Consensus::Isotropic => "ISOTROPIC",
            Consensus::NonIsotropic => "NON-ISOTROPIC",
            Consensus::Inconsistent => "INCONSISTENT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub label: String,
    pub description: String,
    pub residual: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsotropyReport {
    pub tol: f64,
    /// Conditions (a) to (e), in order.
    pub conditions: Vec<ConditionResult>,
    /// `sup ‖∂F±‖ · diameter` from grid differences, `[+, −]`.
    pub lift_gradient: [f64; 2],
    /// The same quantity from the closed-form derivatives.
    pub lift_gradient_closed_form: [f64; 2],
    /// Pointwise constancy-condition residuals, `[+, −]`.
    pub constancy_residual: [f64; 2],
    pub constant_lift: ConstantLift,
    pub consensus: Consensus,
}

fn sup_over<T>(items: &[T], f: impl Fn(&T) -> f64) -> f64 {
    items.iter().map(f).fold(0.0, f64::max)
}

/// Evaluates the five equivalent isotropy conditions over a grid of a
/// minimal surface in isothermal coordinates.
pub fn isotropy_report(tg: &TwistorGrid, tol: f64) -> Result<IsotropyReport> {
    tg.data.require_minimal_isothermal()?;
    let pts = &tg.data.points;

    let a = sup_over(pts, |p| {
        let [b1, b2] = p.beta.expect("isothermal point");
        (b1 * b1 + b2 * b2).norm()
    });
    let b = sup_over(pts, |p| {
        let s = &p.second.b;
        let (x1, y1, x2, y2) = (s[0][0][0], s[0][0][1], s[1][0][0], s[1][0][1]);
        (x1 * x1 - y1 * y1 + x2 * x2 - y2 * y2)
            .abs()
            .max((x1 * y1 + x2 * y2).abs())
    });
    let c = sup_over(pts, |p| {
        let s = &p.second.b;
        let (x1, y1, x2, y2) = (s[0][0][0], s[0][0][1], s[1][0][0], s[1][0][1]);
        (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2)
            .abs()
            .max((x1 * x2 + y1 * y2).abs())
    });
    // λ²(θ) = −det(e^{2α}(cos θ A₁ + sin θ A₂)) = a₀ + a₂ cos 2θ + b₂ sin 2θ.
    let d = sup_over(pts, |p| {
        let e2a = p.first.g11;
        let pm = mat2_lincomb(e2a, &p.shape.a1, 0.0, &p.shape.a2);
        let qm = mat2_lincomb(0.0, &p.shape.a1, e2a, &p.shape.a2);
        let det = |m: &[[f64; 2]; 2]| m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let mixed = pm[0][0] * qm[1][1] + qm[0][0] * pm[1][1] - pm[0][1] * qm[1][0]
            - qm[0][1] * pm[1][0];
        let a2 = -(det(&pm) - det(&qm)) / 2.0;
        let b2 = -mixed / 2.0;
        a2.abs().max(b2.abs())
    });

    let diam = tg.data.grid.domain.diameter();
    let lift_gradient = Chirality::BOTH.map(|e| tg.lift_gradient(e) * diam);
    let lift_gradient_closed_form = Chirality::BOTH.map(|e| {
        sup_over(pts, |p| {
            let [du, dv] = lift_derivatives(p, e).expect("isothermal point");
            du.max_abs().max(dv.max_abs())
        }) * diam
    });
    let constancy_residual = [0, 1].map(|k| sup_over(pts, |p| constancy_conditions(p)[k]));
    let e = lift_gradient[0].min(lift_gradient[1]);

    let constant_lift = match (constancy_residual[0] <= tol, constancy_residual[1] <= tol) {
        (true, true) => ConstantLift::Both,
        (true, false) => ConstantLift::Plus,
        (false, true) => ConstantLift::Minus,
        (false, false) => ConstantLift::None,
    };
    let fd_lift = match (lift_gradient[0] <= tol, lift_gradient[1] <= tol) {
        (true, true) => ConstantLift::Both,
        (true, false) => ConstantLift::Plus,
        (false, true) => ConstantLift::Minus,
        (false, false) => ConstantLift::None,
    };

    let rows = [
        ("a", "(β¹)² + (β²)² vanishes", a),
        ("b", "(b¹₁₁)² − (b¹₁₂)² + (b²₁₁)² − (b²₁₂)² = 0 = b¹₁₁b¹₁₂ + b²₁₁b²₁₂", b),
        ("c", "(b¹₁₁)² + (b¹₁₂)² − (b²₁₁)² − (b²₁₂)² = 0 = b¹₁₁b²₁₁ + b¹₁₂b²₁₂", c),
        ("d", "eigenvalues of cos θ A₁ + sin θ A₂ independent of θ", d),
        ("e", "one twistor lift is constant", e),
    ];
    let conditions: Vec<ConditionResult> = rows
        .iter()
        .map(|(label, description, residual)| ConditionResult {
            label: label.to_string(),
            description: description.to_string(),
            residual: *residual,
            holds: *residual <= tol,
        })
        .collect();
    let all = conditions.iter().all(|c| c.holds);
    let none = conditions.iter().all(|c| !c.holds);
    let consensus = if fd_lift != constant_lift {
        Consensus::Inconsistent
    } else if all {
        Consensus::Isotropic
    } else if none {
        Consensus::NonIsotropic
    } else {
        Consensus::Inconsistent
    };
    Ok(IsotropyReport {
        tol,
        conditions,
        lift_gradient,
        lift_gradient_closed_form,
        constancy_residual,
        constant_lift,
        consensus,
    })
}

/// Coordinates of a lift matrix in its own chirality, from the bivector
/// expansion; used to cross-check [`OrthogonalComplexStructure::coords`].
pub fn lift_coords(m: &Mat4, eps: Chirality) -> Option<[f64; 3]> {
    let (cp, cm) = Bivector::from_matrix(*m, 1e-9).ok()?.coords();
    Some(match eps {
        Chirality::Plus => cp,
        Chirality::Minus => cm,
    })
}
