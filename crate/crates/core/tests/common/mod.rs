#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surface4::catalog::{CatalogEntry, CATALOG};
use surface4::complex_structures::{h1_matrix, h2_matrix, phi, Mat3};
use surface4::linalg4::{Mat4, Vec4};
use surface4::surface_expr::SurfaceDef;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit_vec<const N: usize>(rng: &mut impl Rng) -> [f64; N] {
    loop {
        let x: [f64; N] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = x.iter().map(|t| t * t).sum::<f64>().sqrt();
        if n > 0.1 && n < 1.0 {
            return x.map(|t| t / n);
        }
    }
}

pub fn vec4(rng: &mut impl Rng) -> Vec4 {
    Vec4(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

pub fn so3(rng: &mut impl Rng) -> Mat3 {
    phi(unit_vec::<4>(rng), 1e-12).unwrap()
}

pub fn so4(rng: &mut impl Rng) -> Mat4 {
    h1_matrix(unit_vec::<4>(rng)) * h2_matrix(&so3(rng))
}

/// Orthonormal pair spanning a random plane.
pub fn orthonormal_pair(rng: &mut impl Rng) -> (Vec4, Vec4) {
    let q = so4(rng);
    (q.column(0), q.column(1))
}

pub struct CatalogPoint {
    pub entry: &'static CatalogEntry,
    pub surface: SurfaceDef,
    pub u: f64,
    pub v: f64,
}

/// Uniform points in the interior of a random catalog domain.
pub fn catalog_points(seed: u64, count: usize) -> Vec<CatalogPoint> {
    let mut r = rng(seed);
    let surfaces: Vec<SurfaceDef> = CATALOG.iter().map(|e| e.surface()).collect();
    (0..count)
        .map(|_| {
            let k = r.random_range(0..CATALOG.len());
            let d = CATALOG[k].domain;
            CatalogPoint {
                entry: &CATALOG[k],
                surface: surfaces[k].clone(),
                u: r.random_range(d.u0..d.u1),
                v: r.random_range(d.v0..d.v1),
            }
        })
        .collect()
}

/// `|jet − central difference|` for `[du, dv, duu, duv, dvv]` at step `h`.
pub fn jet_fd_errors(e: &surface4::surface_expr::Expr, u: f64, v: f64, h: f64) -> [f64; 5] {
    let f = |du: f64, dv: f64| e.eval(u + du, v + dv).unwrap();
    let j = e.eval_jet2(u, v).unwrap();
    let f0 = f(0.0, 0.0);
    let fd = [
        (f(h, 0.0) - f(-h, 0.0)) / (2.0 * h),
        (f(0.0, h) - f(0.0, -h)) / (2.0 * h),
        (f(h, 0.0) - 2.0 * f0 + f(-h, 0.0)) / (h * h),
        (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h),
        (f(0.0, h) - 2.0 * f0 + f(0.0, -h)) / (h * h),
    ];
    let exact = [j.du, j.dv, j.duu, j.duv, j.dvv];
    std::array::from_fn(|k| (fd[k] - exact[k]).abs())
}
