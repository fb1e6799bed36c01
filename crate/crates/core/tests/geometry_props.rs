mod common;

use proptest::prelude::*;
use surface4::catalog::CATALOG;
use surface4::convergence::Convergence;
use surface4::geometry::*;
use surface4::linalg4::{det4, orthogonality_defect, Mat4};
use surface4::surface_expr::SurfaceDef;

const MINIMAL: [&str; 4] = ["plane", "holo_square", "holo_cube", "catenoid_E3"];

fn catalog_point() -> impl Strategy<Value = (usize, f64, f64)> {
    (0..CATALOG.len(), 0.02..0.98f64, 0.02..0.98f64).prop_map(|(k, s, t)| {
        let d = CATALOG[k].domain;
        (k, d.u0 + s * (d.u1 - d.u0), d.v0 + t * (d.v1 - d.v0))
    })
}

fn minimal_point() -> impl Strategy<Value = (SurfaceDef, f64, f64)> {
    (0..MINIMAL.len(), -0.9..0.9f64, -0.9..0.9f64).prop_map(|(k, u, v)| {
        (surface4::catalog::lookup(MINIMAL[k]).unwrap().surface(), u, v)
    })
}

fn no_connection() -> PointOptions {
    PointOptions {
        connection: None,
        ..Default::default()
    }
}

proptest! {
    #[test]
    fn frame_is_oriented_orthonormal((k, u, v) in catalog_point()) {
        let s = CATALOG[k].surface();
        let p = analyze_point(&s, u, v, &no_connection()).unwrap();
        let m = p.frame.matrix();
        prop_assert!(orthogonality_defect(&m) <= 1e-12);
        prop_assert!((det4(&m) - 1.0).abs() <= 1e-12);
        prop_assert!(p.first.g11 > 0.0 && p.first.g22 > 0.0 && p.first.det() > 0.0);
        prop_assert!(p.frame.t1.dot(p.jet.fu) > 0.0);
        prop_assert!(p.frame.n1.dot(p.jet.fu).abs() <= 1e-12 * p.jet.fu.norm());
        for k in 0..2 {
            prop_assert_eq!(p.second.b[k][0][1], p.second.b[k][1][0]);
            let ga = mat2_mul(&p.first.matrix(), p.shape.get(k));
            prop_assert!((ga[0][1] - ga[1][0]).abs() <= 1e-12 * (1.0 + ga[0][1].abs()));
        }
    }

    #[test]
    fn shape_operators_rotate_covariantly((k, u, v) in catalog_point(), theta in -7.0..7.0f64) {
        let s = CATALOG[k].surface();
        let p = analyze_point(&s, u, v, &no_connection()).unwrap();
        let (st, ct) = theta.sin_cos();
        let (a1, a2) = (&p.shape.a1, &p.shape.a2);

        let rot = p.frame.rotated_normals(theta);
        let ar = shape_operators(&p.first, &second_form(&p.jet, &rot));
        prop_assert!(mat2_dist(&ar.a1, &mat2_lincomb(ct, a1, st, a2)) <= 1e-10);
        prop_assert!(mat2_dist(&ar.a2, &mat2_lincomb(-st, a1, ct, a2)) <= 1e-10);
        let h = mean_curvature(&p.first, &second_form(&p.jet, &rot), &rot);
        prop_assert!((h - p.mean_curvature).max_abs() <= 1e-10);

        let refl = p.frame.reflected_normals(theta);
        let af = shape_operators(&p.first, &second_form(&p.jet, &refl));
        prop_assert!(mat2_dist(&af.a1, &mat2_lincomb(ct, a1, st, a2)) <= 1e-10);
        prop_assert!(mat2_dist(&af.a2, &mat2_lincomb(st, a1, -ct, a2)) <= 1e-10);
        let h = mean_curvature(&p.first, &second_form(&p.jet, &refl), &refl);
        prop_assert!((h - p.mean_curvature).max_abs() <= 1e-10);
    }

    #[test]
    fn minimal_surfaces_are_harmonic((s, u, v) in minimal_point()) {
        let j = s.eval_surface_jet(u, v).unwrap();
        prop_assert!((j.fuu + j.fvv).max_abs() <= 1e-10);
        let p = analyze_point(&s, u, v, &no_connection()).unwrap();
        prop_assert!(p.mean_curvature.max_abs() <= 1e-10);
    }

    #[test]
    fn mean_curvature_from_traces((k, u, v) in catalog_point()) {
        let s = CATALOG[k].surface();
        let p = analyze_point(&s, u, v, &no_connection()).unwrap();
        if let Some(alpha) = p.alpha {
            let b = &p.second.b;
            let c = 0.5 / (2.0 * alpha).exp();
            let h = c * (b[0][0][0] + b[0][1][1]) * p.frame.n1
                + c * (b[1][0][0] + b[1][1][1]) * p.frame.n2;
            prop_assert!((h - p.mean_curvature).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn connection_matches_exact_derivative((s, u, v) in minimal_point()) {
        let opts = ConnectionOptions { h: None, richardson: true };
        let p = analyze_point(&s, u, v, &PointOptions { connection: Some(opts), ..Default::default() }).unwrap();
        let c = p.connection.unwrap();
        let e = normal_connection_exact(&p.jet, &p.first, &p.frame, p.seed_branch);
        prop_assert!((c.gamma1 - e.gamma1).abs() <= 1e-9);
        prop_assert!((c.gamma2 - e.gamma2).abs() <= 1e-9);
    }
}

fn metric_at(s: &SurfaceDef, u: f64, v: f64) -> M2 {
    first_form(&s.eval_surface_jet(u, v).unwrap()).unwrap().matrix()
}

fn christoffel_fd_error(s: &SurfaceDef, u: f64, v: f64, h: f64) -> f64 {
    let j = s.eval_surface_jet(u, v).unwrap();
    let form = first_form(&j).unwrap();
    let diff = |du: f64, dv: f64| {
        let (p, m) = (metric_at(s, u + du, v + dv), metric_at(s, u - du, v - dv));
        mat2_lincomb(0.5 / h, &p, -0.5 / h, &m)
    };
    let fd = christoffel_from_metric(&form, [diff(h, 0.0), diff(0.0, h)]);
    let exact = christoffel_tangential(&j, &form);
    let mut err: f64 = 0.0;
    for k in 0..2 {
        err = err.max(mat2_dist(&fd[k], &exact[k]));
    }
    err
}

#[test]
fn christoffel_metric_cross_oracle() {
    for e in &CATALOG {
        let s = e.surface();
        let d = s.domain;
        for (fu, fv) in [(0.3, 0.6), (0.7, 0.2), (0.55, 0.45)] {
            let (u, v) = (d.u0 + fu * (d.u1 - d.u0), d.v0 + fv * (d.v1 - d.v0));
            let c = Convergence::new(
                christoffel_fd_error(&s, u, v, 1e-2),
                christoffel_fd_error(&s, u, v, 5e-3),
                1e-9,
            );
            assert!(c.order_ok(2.0, 0.3), "{} at ({u}, {v}): {c:?}", e.name);
        }
    }
}

fn frame_columns(s: &SurfaceDef, u: f64, v: f64, branch: usize) -> Mat4 {
    let j = s.eval_surface_jet(u, v).unwrap();
    let f = build_frame_branch(&j, branch).unwrap();
    Mat4::from_columns([j.fu, j.fv, f.n1, f.n2])
}

fn gw_point(s: &SurfaceDef, u: f64, v: f64, branch: usize) -> SurfacePointData {
    let opts = PointOptions {
        seed_branch: Some(branch),
        connection: Some(ConnectionOptions {
            h: None,
            richardson: true,
        }),
        ..Default::default()
    };
    analyze_point(s, u, v, &opts).unwrap()
}

#[test]
fn gauss_weingarten_system_holds() {
    let h = 1e-4;
    for pt in common::catalog_points(7, 60) {
        if pt.entry.name == "clifford_torus" {
            continue;
        }
        let s = &pt.surface;
        let p = analyze_point(s, pt.u, pt.v, &no_connection()).unwrap();
        let p = gw_point(s, pt.u, pt.v, p.seed_branch);
        let (s1, s2) = gauss_weingarten_matrices(&p);
        let x = frame_columns(s, pt.u, pt.v, p.seed_branch);
        for (a, sa) in [(0, s1), (1, s2)] {
            let (du, dv) = if a == 0 { (h, 0.0) } else { (0.0, h) };
            let dx = (frame_columns(s, pt.u + du, pt.v + dv, p.seed_branch)
                - frame_columns(s, pt.u - du, pt.v - dv, p.seed_branch))
            .scale(0.5 / h);
            let err = dx.dist(&(x * sa));
            assert!(err <= 1e-6, "{} at ({}, {}): {err}", pt.entry.name, pt.u, pt.v);
        }
    }
}

#[test]
fn gauss_weingarten_integrability() {
    let h = 1e-3;
    for pt in common::catalog_points(11, 40) {
        if pt.entry.name == "clifford_torus" {
            continue;
        }
        let s = &pt.surface;
        let branch = analyze_point(s, pt.u, pt.v, &no_connection())
            .unwrap()
            .seed_branch;
        let sm = |u, v| gauss_weingarten_matrices(&gw_point(s, u, v, branch));
        let (s1, s2) = sm(pt.u, pt.v);
        let dv_s1 = (sm(pt.u, pt.v + h).0 - sm(pt.u, pt.v - h).0).scale(0.5 / h);
        let du_s2 = (sm(pt.u + h, pt.v).1 - sm(pt.u - h, pt.v).1).scale(0.5 / h);
        let r = dv_s1 - du_s2 + s2 * s1 - s1 * s2;
        assert!(r.max_abs() <= 1e-4, "{} at ({}, {}): {}", pt.entry.name, pt.u, pt.v, r.max_abs());
    }
}

#[test]
fn determinant_sweep() {
    for pt in common::catalog_points(3, 1000) {
        let p = analyze_point(&pt.surface, pt.u, pt.v, &no_connection()).unwrap();
        assert!((p.frame.det() - 1.0).abs() <= 1e-12);
        assert!(p.first.det() > 0.0);
    }
}
