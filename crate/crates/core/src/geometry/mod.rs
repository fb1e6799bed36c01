//! Pointwise classical geometry of a surface `F: O → E⁴`.
//!
//! Everything here is computed from the exact 2-jet of `F` except the
//! normal connection, which needs a derivative of the normal frame and is
//! taken by central differences of frames built with a pinned seed pair.

mod grid;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use grid::{
    analyze_grid, select_branch, structure_residuals, structure_residuals_at, Grid, GridData,
    StructureResiduals,
};

use crate::linalg4::{det4, Mat4, Vec4};
use crate::surface_expr::{ExprError, SurfaceDef, SurfaceJet};

/// Relative threshold on `g11·g22 − g12²` below which a point is singular.
pub const IMMERSION_TOL: f64 = 1e-12;
/// Relative tolerance of the isothermality test.
pub const ISOTHERMAL_TOL: f64 = 1e-8;
/// Minimum norm of a unit seed's normal projection.
pub const SEED_TOL: f64 = 1e-2;
/// Absolute bound on `|H|` for the minimality hypothesis.
pub const MINIMAL_TOL: f64 = 1e-8;
/// Default normal-connection step as a fraction of the domain diameter.
pub const FD_STEP_FRACTION: f64 = 1e-4;

/// Seed pairs tried in order when building the normal frame.
pub const SEED_BRANCHES: [(usize, usize); 6] = [(3, 4), (2, 4), (2, 3), (1, 4), (1, 3), (1, 2)];

pub type M2 = [[f64; 2]; 2];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("not immersed at ({u}, {v}): g11*g22 - g12^2 = {det:e}")]
    NotImmersed { u: f64, v: f64, det: f64 },
    #[error("seed e{seed} has normal projection {norm:e}")]
    DegenerateSeed { seed: usize, norm: f64 },
    #[error("no seed pair yields a normal frame at ({u}, {v})")]
    NoSeedBranch { u: f64, v: f64 },
    #[error("no single seed pair works on the whole grid")]
    NoGlobalBranch,
    #[error("normal frame flips between ({u}, {v}) and a stencil neighbour")]
    SeedBranchFlip { u: f64, v: f64 },
    #[error("coordinates are not isothermal at ({u}, {v}): relative defect {defect:e}")]
    NotIsothermal { u: f64, v: f64, defect: f64 },
    #[error("surface is not minimal: sup |H| = {sup_h:e}")]
    NotMinimal { sup_h: f64 },
    #[error("grid needs at least 3x3 nodes, got {0}")]
    GridTooSmall(usize),
}

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FirstForm {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl FirstForm {
    pub fn det(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    pub fn matrix(&self) -> M2 {
        [[self.g11, self.g12], [self.g12, self.g22]]
    }

    pub fn inverse(&self) -> M2 {
        let d = self.det();
        [[self.g22 / d, -self.g12 / d], [-self.g12 / d, self.g11 / d]]
    }

    /// Relative distance from isothermality.
    pub fn isothermal_defect(&self) -> f64 {
        let scale = 0.5 * (self.g11 + self.g22);
        (self.g11 - self.g22).abs().max(self.g12.abs()) / scale
    }
}

pub fn first_form(jet: &SurfaceJet) -> Result<FirstForm> {
    let form = FirstForm {
        g11: jet.fu.dot(jet.fu),
        g12: jet.fu.dot(jet.fv),
        g22: jet.fv.dot(jet.fv),
    };
    let det = form.det();
    if !(det > IMMERSION_TOL * form.g11 * form.g22) {
        return Err(GeometryError::NotImmersed {
            u: f64::NAN,
            v: f64::NAN,
            det,
        });
    }
    Ok(form)
}

pub fn is_isothermal(form: &FirstForm, tol: f64) -> bool {
    form.isothermal_defect() <= tol
}

fn solve2(m: &M2, r: [f64; 2]) -> [f64; 2] {
    let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [
        (m[1][1] * r[0] - m[0][1] * r[1]) / d,
        (m[0][0] * r[1] - m[1][0] * r[0]) / d,
    ]
}

/// `Γ[k][i][j]` with upper index `k`, from `⟨F_ij, F_l⟩ = Σ_k Γᵏ_ij g_kl`.
pub fn christoffel_tangential(jet: &SurfaceJet, form: &FirstForm) -> [[[f64; 2]; 2]; 2] {
    let g = form.matrix();
    let mut gamma = [[[0.0; 2]; 2]; 2];
    for i in 0..2 {
        for j in i..2 {
            let fij = jet.second(i, j);
            let c = solve2(&g, [fij.dot(jet.fu), fij.dot(jet.fv)]);
            for k in 0..2 {
                gamma[k][i][j] = c[k];
                gamma[k][j][i] = c[k];
            }
        }
    }
    gamma
}

/// `Γ` from the metric and its first derivatives,
/// `Γᵏ_ij = ½ gᵏˡ(∂_i g_jl + ∂_j g_il − ∂_l g_ij)`, where `dg[a]` is `∂_a g`.
pub fn christoffel_from_metric(form: &FirstForm, dg: [M2; 2]) -> [[[f64; 2]; 2]; 2] {
    let ginv = form.inverse();
    let mut gamma = [[[0.0; 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                gamma[k][i][j] = (0..2)
                    .map(|l| 0.5 * ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]))
                    .sum();
            }
        }
    }
    gamma
}

/// Oriented orthonormal frame `(t₁, t₂, n₁, n₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub t1: Vec4,
    pub t2: Vec4,
    pub n1: Vec4,
    pub n2: Vec4,
}

impl Frame {
    pub fn matrix(&self) -> Mat4 {
        Mat4::from_columns([self.t1, self.t2, self.n1, self.n2])
    }

    pub fn det(&self) -> f64 {
        det4(&self.matrix())
    }

    /// Normals replaced by `(n₁, n₂)·[[cos, −sin], [sin, cos]]`.
    pub fn rotated_normals(&self, theta: f64) -> Frame {
        let (s, c) = theta.sin_cos();
        Frame {
            n1: c * self.n1 + s * self.n2,
            n2: -s * self.n1 + c * self.n2,
            ..*self
        }
    }

    /// Normals replaced by `(n₁, n₂)·[[cos, sin], [sin, −cos]]`; the result
    /// has determinant −1.
    pub fn reflected_normals(&self, theta: f64) -> Frame {
        let (s, c) = theta.sin_cos();
        Frame {
            n1: c * self.n1 + s * self.n2,
            n2: s * self.n1 - c * self.n2,
            ..*self
        }
    }
}

fn seed_pair(branch: usize) -> (Vec4, Vec4) {
    let (a, b) = SEED_BRANCHES[branch];
    (Vec4::basis(a), Vec4::basis(b))
}

fn orthogonal_part(x: Vec4, basis: &[Vec4]) -> Vec4 {
    // Two passes keep the result orthogonal to roundoff.
    let mut p = x;
    for _ in 0..2 {
        for b in basis {
            p = p - p.dot(*b) * *b;
        }
    }
    p
}

fn tangent_pair(jet: &SurfaceJet) -> (Vec4, Vec4) {
    let t1 = jet.fu.normalized();
    let t2 = orthogonal_part(jet.fv, &[t1]).normalized();
    (t1, t2)
}

/// Frame with `t₁ ∥ F_u`, normals by Gram–Schmidt of the seeds.
pub fn build_frame(jet: &SurfaceJet, seeds: (Vec4, Vec4)) -> Result<Frame> {
    let (t1, t2) = tangent_pair(jet);
    let p1 = orthogonal_part(seeds.0, &[t1, t2]);
    if p1.norm() <= SEED_TOL * seeds.0.norm() {
        return Err(GeometryError::DegenerateSeed {
            seed: seed_index(seeds.0),
            norm: p1.norm(),
        });
    }
    let n1 = p1.normalized();
    let p2 = orthogonal_part(seeds.1, &[t1, t2, n1]);
    if p2.norm() <= SEED_TOL * seeds.1.norm() {
        return Err(GeometryError::DegenerateSeed {
            seed: seed_index(seeds.1),
            norm: p2.norm(),
        });
    }
    let mut frame = Frame {
        t1,
        t2,
        n1,
        n2: p2.normalized(),
    };
    if frame.det() < 0.0 {
        frame.n2 = -frame.n2;
    }
    Ok(frame)
}

fn seed_index(s: Vec4) -> usize {
    (1..=4).find(|&k| s == Vec4::basis(k)).unwrap_or(0)
}

/// Frame from a fixed entry of [`SEED_BRANCHES`].
pub fn build_frame_branch(jet: &SurfaceJet, branch: usize) -> Result<Frame> {
    build_frame(jet, seed_pair(branch))
}

/// First seed pair in [`SEED_BRANCHES`] that works at this point.
pub fn build_frame_auto(jet: &SurfaceJet) -> Option<(Frame, usize)> {
    (0..SEED_BRANCHES.len()).find_map(|b| build_frame_branch(jet, b).ok().map(|f| (f, b)))
}

/// `b[k][i][j] = ⟨F_ij, n_k⟩`, `k = 0` for `n₁`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondForm {
    pub b: [[[f64; 2]; 2]; 2],
}

impl SecondForm {
    pub fn component(&self, k: usize) -> M2 {
        self.b[k]
    }
}

pub fn second_form(jet: &SurfaceJet, frame: &Frame) -> SecondForm {
    let n = [frame.n1, frame.n2];
    let mut b = [[[0.0; 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                b[k][i][j] = jet.second(i, j).dot(n[k]);
            }
        }
    }
    SecondForm { b }
}

/// `A_k = g⁻¹ b_k`; entry `[j][l]` is `aʲ_kl`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeOperators {
    pub a1: M2,
    pub a2: M2,
}

pub fn mat2_mul(a: &M2, b: &M2) -> M2 {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn mat2_lincomb(x: f64, a: &M2, y: f64, b: &M2) -> M2 {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = x * a[i][j] + y * b[i][j];
        }
    }
    c
}

pub fn mat2_dist(a: &M2, b: &M2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).abs());
        }
    }
    m
}

impl ShapeOperators {
    pub fn get(&self, k: usize) -> &M2 {
        if k == 0 {
            &self.a1
        } else {
            &self.a2
        }
    }
}

pub fn shape_operators(form: &FirstForm, second: &SecondForm) -> ShapeOperators {
    let ginv = form.inverse();
    ShapeOperators {
        a1: mat2_mul(&ginv, &second.b[0]),
        a2: mat2_mul(&ginv, &second.b[1]),
    }
}

/// `H = ½((tr A₁)n₁ + (tr A₂)n₂)`.
pub fn mean_curvature(form: &FirstForm, second: &SecondForm, frame: &Frame) -> Vec4 {
    let a = shape_operators(form, second);
    let tr = |m: &M2| m[0][0] + m[1][1];
    0.5 * (tr(&a.a1) * frame.n1 + tr(&a.a2) * frame.n2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalConnection {
    pub gamma1: f64,
    pub gamma2: f64,
}

/// How the normal connection is differentiated.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ConnectionOptions {
    /// Step; `None` means [`FD_STEP_FRACTION`] times the domain diameter.
    pub h: Option<f64>,
    pub richardson: bool,
}

impl ConnectionOptions {
    pub fn step(&self, surface: &SurfaceDef) -> f64 {
        self.h
            .unwrap_or(FD_STEP_FRACTION * surface.domain.diameter())
    }
}

fn frame_at(surface: &SurfaceDef, u: f64, v: f64, branch: usize) -> Result<Frame> {
    let jet = surface.eval_surface_jet(u, v)?;
    first_form(&jet).map_err(|e| at_point(e, u, v))?;
    build_frame_branch(&jet, branch)
}

fn at_point(e: GeometryError, u: f64, v: f64) -> GeometryError {
    match e {
        GeometryError::NotImmersed { det, .. } => GeometryError::NotImmersed { u, v, det },
        other => other,
    }
}

fn check_continuity(centre: &Frame, other: &Frame, u: f64, v: f64) -> Result<()> {
    if centre.n1.dot(other.n1) < 0.5 || centre.n2.dot(other.n2) < 0.5 {
        return Err(GeometryError::SeedBranchFlip { u, v });
    }
    Ok(())
}

fn connection_raw(
    surface: &SurfaceDef,
    u: f64,
    v: f64,
    h: f64,
    branch: usize,
    centre: &Frame,
) -> Result<[f64; 2]> {
    let mut out = [0.0; 2];
    let offsets = [(h, 0.0), (0.0, h)];
    for (a, (du, dv)) in offsets.into_iter().enumerate() {
        let fp = frame_at(surface, u + du, v + dv, branch)?;
        let fm = frame_at(surface, u - du, v - dv, branch)?;
        check_continuity(centre, &fp, u, v)?;
        check_continuity(centre, &fm, u, v)?;
        out[a] = (fp.n1 - fm.n1).dot(centre.n2) / (2.0 * h);
    }
    Ok(out)
}

/// `γ_a = ⟨∂_a n₁, n₂⟩` by central differences of frames with the seed pair
/// `branch` held fixed.
pub fn normal_connection(
    surface: &SurfaceDef,
    u: f64,
    v: f64,
    branch: usize,
    opts: &ConnectionOptions,
) -> Result<NormalConnection> {
    let h = opts.step(surface);
    let centre = frame_at(surface, u, v, branch)?;
    let coarse = connection_raw(surface, u, v, h, branch, &centre)?;
    let g = if opts.richardson {
        let fine = connection_raw(surface, u, v, 0.5 * h, branch, &centre)?;
        [
            (4.0 * fine[0] - coarse[0]) / 3.0,
            (4.0 * fine[1] - coarse[1]) / 3.0,
        ]
    } else {
        coarse
    };
    Ok(NormalConnection {
        gamma1: g[0],
        gamma2: g[1],
    })
}

/// Normal connection by differentiating the Gram–Schmidt construction
/// analytically; only the 2-jet is needed.
pub fn normal_connection_exact(
    jet: &SurfaceJet,
    form: &FirstForm,
    frame: &Frame,
    branch: usize,
) -> NormalConnection {
    let (s1, _) = seed_pair(branch);
    let proj = orthogonal_part(s1, &[frame.t1, frame.t2]).norm();
    // t_i = Σ_j E[i][j] F_j
    let e11 = 1.0 / form.g11.sqrt();
    let w = (form.det() / form.g11).sqrt();
    let e = [[e11, 0.0], [-form.g12 / (form.g11 * w), 1.0 / w]];
    let t = [frame.t1, frame.t2];
    let mut g = [0.0; 2];
    for (a, ga) in g.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in 0..2 {
            let dti_n2: f64 = (0..2)
                .map(|j| e[i][j] * jet.second(j, a).dot(frame.n2))
                .sum();
            acc += t[i].dot(s1) * dti_n2;
        }
        *ga = -acc / proj;
    }
    NormalConnection {
        gamma1: g[0],
        gamma2: g[1],
    }
}

/// Everything known about the surface at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfacePointData {
    pub u: f64,
    pub v: f64,
    pub point: Vec4,
    pub jet: SurfaceJet,
    pub first: FirstForm,
    pub isothermal: bool,
    /// `½ log g11`, present only at isothermal points.
    pub alpha: Option<f64>,
    pub frame: Frame,
    /// Index into [`SEED_BRANCHES`].
    pub seed_branch: usize,
    pub second: SecondForm,
    pub shape: ShapeOperators,
    pub christoffel: [[[f64; 2]; 2]; 2],
    pub mean_curvature: Vec4,
    pub connection: Option<NormalConnection>,
    pub beta: Option<[Complex64; 2]>,
    pub gamma: Option<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointOptions {
    /// Pinned seed pair; `None` tries them in order.
    pub seed_branch: Option<usize>,
    pub isothermal_tol: f64,
    /// Compute the normal connection (needs extra frame evaluations).
    pub connection: Option<ConnectionOptions>,
}

impl Default for PointOptions {
    fn default() -> Self {
        PointOptions {
            seed_branch: None,
            isothermal_tol: ISOTHERMAL_TOL,
            connection: Some(ConnectionOptions::default()),
        }
    }
}

pub fn analyze_point(
    surface: &SurfaceDef,
    u: f64,
    v: f64,
    opts: &PointOptions,
) -> Result<SurfacePointData> {
    let jet = surface.eval_surface_jet(u, v)?;
    let first = first_form(&jet).map_err(|e| at_point(e, u, v))?;
    let (frame, seed_branch) = match opts.seed_branch {
        Some(b) => (build_frame_branch(&jet, b)?, b),
        None => build_frame_auto(&jet).ok_or(GeometryError::NoSeedBranch { u, v })?,
    };
    let second = second_form(&jet, &frame);
    let shape = shape_operators(&first, &second);
    let isothermal = is_isothermal(&first, opts.isothermal_tol);
    let connection = match &opts.connection {
        Some(c) => Some(normal_connection(surface, u, v, seed_branch, c)?),
        None => None,
    };
    let beta = isothermal.then(|| {
        let b = &second.b;
        [
            Complex64::new(0.5 * b[0][0][0], -0.5 * b[0][0][1]),
            Complex64::new(0.5 * b[1][0][0], -0.5 * b[1][0][1]),
        ]
    });
    let gamma = match (isothermal, connection) {
        (true, Some(c)) => Some(Complex64::new(0.5 * c.gamma1, 0.5 * c.gamma2)),
        _ => None,
    };
    Ok(SurfacePointData {
        u,
        v,
        point: jet.f,
        jet,
        first,
        isothermal,
        alpha: isothermal.then(|| 0.5 * first.g11.ln()),
        frame,
        seed_branch,
        second,
        shape,
        christoffel: christoffel_tangential(&jet, &first),
        mean_curvature: mean_curvature(&first, &second, &frame),
        connection,
        beta,
        gamma,
    })
}

/// `(β¹, β², γ)`; requires an isothermal point with a normal connection.
pub fn beta_gamma(p: &SurfacePointData) -> Result<(Complex64, Complex64, Complex64)> {
    match (p.beta, p.gamma) {
        (Some([b1, b2]), Some(g)) => Ok((b1, b2, g)),
        _ => Err(GeometryError::NotIsothermal {
            u: p.u,
            v: p.v,
            defect: p.first.isothermal_defect(),
        }),
    }
}

/// The coefficient matrices `S₁, S₂` of the Gauss–Weingarten system
/// `(F_u, F_v, n₁, n₂)_a = (F_u, F_v, n₁, n₂)·S_a`.
pub fn gauss_weingarten_matrices(p: &SurfacePointData) -> (Mat4, Mat4) {
    let c = p.connection.unwrap_or(NormalConnection {
        gamma1: 0.0,
        gamma2: 0.0,
    });
    let gam = [c.gamma1, c.gamma2];
    let g = &p.christoffel;
    let b = &p.second.b;
    let (a1, a2) = (&p.shape.a1, &p.shape.a2);
    let build = |j: usize| {
        Mat4([
            [g[0][0][j], g[0][1][j], -a1[0][j], -a2[0][j]],
            [g[1][0][j], g[1][1][j], -a1[1][j], -a2[1][j]],
            [b[0][0][j], b[0][1][j], 0.0, -gam[j]],
            [b[1][0][j], b[1][1][j], gam[j], 0.0],
        ])
    };
    (build(0), build(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_expr::parse;

    fn jet(text: &str, u: f64, v: f64) -> SurfaceJet {
        parse(text).unwrap().eval_surface_jet(u, v).unwrap()
    }

    const HS: &str = "u, v, u^2 - v^2, 2*u*v";

    #[test]
    fn first_form_examples() {
        let f = first_form(&jet("u, v, 0, 0", 0.3, 0.2)).unwrap();
        assert_eq!((f.g11, f.g12, f.g22), (1.0, 0.0, 1.0));
        let (u, v) = (0.3, -0.7);
        let f = first_form(&jet(HS, u, v)).unwrap();
        let g = 1.0 + 4.0 * (u * u + v * v);
        assert!((f.g11 - g).abs() < 1e-14 && (f.g22 - g).abs() < 1e-14);
        assert_eq!(f.g12, 0.0);
        let torus = "cos(u)/sqrt(2), sin(u)/sqrt(2), cos(v)/sqrt(2), sin(v)/sqrt(2)";
        let f = first_form(&jet(torus, 1.1, 2.3)).unwrap();
        assert!((f.g11 - 0.5).abs() < 1e-15 && f.g12.abs() < 1e-15);
        assert!(matches!(
            first_form(&jet("u, u, 0, 0", 0.0, 0.0)),
            Err(GeometryError::NotImmersed { .. })
        ));
    }

    #[test]
    fn isothermal_examples() {
        let f = FirstForm {
            g11: 1.0,
            g12: 0.0,
            g22: 1.0,
        };
        assert!(is_isothermal(&f, 1e-8));
        let f = first_form(&jet("u, v, u^2, v^2", 1.0, 0.0)).unwrap();
        assert!(!is_isothermal(&f, 1e-8));
    }

    #[test]
    fn frames_at_origin() {
        let expected = Frame {
            t1: Vec4::basis(1),
            t2: Vec4::basis(2),
            n1: Vec4::basis(3),
            n2: Vec4::basis(4),
        };
        let seeds = (Vec4::basis(3), Vec4::basis(4));
        assert_eq!(build_frame(&jet("u, v, 0, 0", 0.5, 0.5), seeds).unwrap(), expected);
        assert_eq!(build_frame(&jet(HS, 0.0, 0.0), seeds).unwrap(), expected);
    }

    #[test]
    fn degenerate_seed_reported() {
        let seeds = (Vec4::basis(1), Vec4::basis(4));
        assert!(matches!(
            build_frame(&jet("u, v, 0, 0", 0.0, 0.0), seeds),
            Err(GeometryError::DegenerateSeed { seed: 1, .. })
        ));
    }

    #[test]
    fn holo_square_second_form_at_origin() {
        let j = jet(HS, 0.0, 0.0);
        let frame = build_frame_branch(&j, 0).unwrap();
        let s = second_form(&j, &frame);
        assert_eq!(s.b[0], [[2.0, 0.0], [0.0, -2.0]]);
        assert_eq!(s.b[1], [[0.0, 2.0], [2.0, 0.0]]);
        let f = first_form(&j).unwrap();
        let a = shape_operators(&f, &s);
        assert_eq!(a.a1, [[2.0, 0.0], [0.0, -2.0]]);
        assert_eq!(a.a2, [[0.0, 2.0], [2.0, 0.0]]);
        assert_eq!(mean_curvature(&f, &s, &frame), Vec4::ZERO);
    }

    #[test]
    fn beta_gamma_at_origin() {
        let s = parse(HS).unwrap();
        let p = analyze_point(&s, 0.0, 0.0, &PointOptions::default()).unwrap();
        let (b1, b2, _) = beta_gamma(&p).unwrap();
        assert_eq!(b1, Complex64::new(1.0, 0.0));
        assert_eq!(b2, Complex64::new(0.0, -1.0));
        assert_eq!(b1 * b1 + b2 * b2, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn clifford_torus_mean_curvature() {
        let s = parse("cos(u)/sqrt(2), sin(u)/sqrt(2), cos(v)/sqrt(2), sin(v)/sqrt(2)").unwrap();
        for (u, v) in [(0.1, 0.2), (1.5, 3.0), (4.0, 5.5)] {
            let p = analyze_point(
                &s,
                u,
                v,
                &PointOptions {
                    connection: None,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!((p.mean_curvature.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn plane_is_flat() {
        let s = parse("u, v, 0, 0").unwrap();
        let p = analyze_point(&s, 0.2, 0.4, &PointOptions::default()).unwrap();
        let (s1, s2) = gauss_weingarten_matrices(&p);
        assert_eq!(s1, Mat4::ZERO);
        assert_eq!(s2, Mat4::ZERO);
        assert_eq!(p.connection.unwrap().gamma1, 0.0);
    }

    #[test]
    fn not_isothermal_has_no_beta() {
        let s = parse("u, v, u^2, v^2").unwrap();
        let p = analyze_point(&s, 1.0, 0.0, &PointOptions::default()).unwrap();
        assert!(!p.isothermal);
        assert!(p.alpha.is_none());
        assert!(matches!(beta_gamma(&p), Err(GeometryError::NotIsothermal { .. })));
        // g11 = g22 and g12 = 0 on the diagonals |u| = |v|.
        let p = analyze_point(&s, 1.0, 1.0, &PointOptions::default()).unwrap();
        assert!(p.isothermal);
    }

    #[test]
    fn fd_connection_matches_exact() {
        let s = parse("u, v, u^3 - 3*u*v^2, 3*u^2*v - v^3").unwrap();
        for (u, v) in [(0.3, 0.4), (-0.7, 0.2), (0.9, -0.9)] {
            let p = analyze_point(
                &s,
                u,
                v,
                &PointOptions {
                    seed_branch: Some(0),
                    connection: Some(ConnectionOptions {
                        h: None,
                        richardson: true,
                    }),
                    ..Default::default()
                },
            )
            .unwrap();
            let exact = normal_connection_exact(&p.jet, &p.first, &p.frame, 0);
            let fd = p.connection.unwrap();
            assert!((fd.gamma1 - exact.gamma1).abs() < 1e-8, "{fd:?} {exact:?}");
            assert!((fd.gamma2 - exact.gamma2).abs() < 1e-8);
        }
    }
}
