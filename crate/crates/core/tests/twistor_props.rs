mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use surface4::catalog::{lookup, CATALOG};
use surface4::complex_structures::{pair_to_plane, OrientedPlane};
use surface4::convergence::Convergence;
use surface4::geometry::{analyze_point, Grid, PointOptions};
use surface4::linalg4::Chirality;
use surface4::twistor::*;

fn opts() -> PointOptions {
    PointOptions {
        connection: None,
        ..Default::default()
    }
}

fn catalog_point() -> impl Strategy<Value = (usize, f64, f64)> {
    (0..CATALOG.len(), 0.02..0.98f64, 0.02..0.98f64).prop_map(|(k, s, t)| {
        let d = CATALOG[k].domain;
        (k, d.u0 + s * (d.u1 - d.u0), d.v0 + t * (d.v1 - d.v0))
    })
}

fn sphere_point() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("non-degenerate", |x| x.iter().map(|t| t * t).sum::<f64>() > 0.01)
        .prop_map(|x| {
            let n = x.iter().map(|t| t * t).sum::<f64>().sqrt();
            x.map(|t| t / n)
        })
}

proptest! {
    #[test]
    fn psi_identities_at_isothermal_points((k, u, v) in catalog_point()) {
        let s = CATALOG[k].surface();
        let p = analyze_point(&s, u, v, &opts()).unwrap();
        let q = psi(&p.jet);
        if let Some(alpha) = p.alpha {
            let e2a = (2.0 * alpha).exp();
            prop_assert!(q.square_sum().norm() <= 1e-10 * e2a);
            prop_assert!((q.norm_sqr() - 0.5 * e2a).abs() <= 1e-12 * e2a);
            for eps in Chirality::BOTH {
                let bp = big_psi(&q, eps);
                prop_assert!(bp.imaginary_defect(e2a) <= 1e-12);
                let c = bp.coords(e2a);
                prop_assert!(((c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt() - 1.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn both_lift_formulas_agree((k, u, v) in catalog_point()) {
        let s = CATALOG[k].surface();
        let p = analyze_point(&s, u, v, &opts()).unwrap();
        if let Some(alpha) = p.alpha {
            let q = psi(&p.jet);
            for eps in Chirality::BOTH {
                let a = lift_isothermal(&q, (2.0 * alpha).exp(), eps).unwrap();
                let b = lift_frame(&p.frame, eps);
                prop_assert!(a.matrix.dist(&b.matrix) <= 1e-10);
                prop_assert_eq!(a.chirality, eps);
            }
        }
    }

    #[test]
    fn gauss_map_recovers_tangent_plane((k, u, v) in catalog_point(), theta in -7.0..7.0f64) {
        let s = CATALOG[k].surface();
        let p = analyze_point(&s, u, v, &opts()).unwrap();
        let l = gauss_map(&p).unwrap();
        let plane = pair_to_plane(&l.f_plus, &l.f_minus).unwrap();
        let tangent = OrientedPlane::new(p.frame.t1, p.frame.t2, 1e-12).unwrap();
        prop_assert!(plane.projector_distance(&tangent) <= 1e-10);
        prop_assert!(plane.same_oriented(&tangent, 1e-10));

        let rot = p.frame.rotated_normals(theta);
        for eps in Chirality::BOTH {
            prop_assert!(lift_frame(&rot, eps).matrix.dist(&l.get(eps).matrix) <= 1e-12);
        }
        for (c, g) in [(l.c_plus, l.g_plus), (l.c_minus, l.g_minus)] {
            let back = match g {
                ChartValue::Primary(z) => inverse_chart(z),
                ChartValue::Secondary(_) => continue,
            };
            for i in 0..3 {
                prop_assert!((back[i] - c[i]).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn closed_form_g_plus_matches_chart((k, u, v) in catalog_point()) {
        let s = CATALOG[k].surface();
        let p = analyze_point(&s, u, v, &opts()).unwrap();
        if !p.isothermal {
            return Ok(());
        }
        let l = gauss_map(&p).unwrap();
        if 1.0 - l.c_plus[2] < 1e-3 {
            return Ok(());
        }
        let g = l.g_plus.primary().unwrap();
        let cf = g_plus_closed_form(&psi(&p.jet)).unwrap();
        prop_assert!((cf - g).norm() <= 1e-10 * (1.0 + g.norm()));
    }

    #[test]
    fn chart_inverts(c in sphere_point()) {
        prop_assume!(1.0 - c[2] > 1e-2);
        let back = inverse_chart(chart(c).unwrap().value());
        for i in 0..3 {
            prop_assert!((back[i] - c[i]).abs() <= 1e-12);
        }
    }

    #[test]
    fn secondary_chart_is_the_antipodal_projection(c in sphere_point()) {
        prop_assume!(1.0 + c[2] > 1e-2);
        let s = Complex64::new(c[0], c[1]) / (1.0 + c[2]);
        let g = ChartValue::Secondary(s).value();
        if 1.0 - c[2] > 1e-2 {
            let z = Complex64::new(c[0], c[1]) / (1.0 - c[2]);
            prop_assert!((g - z).norm() <= 1e-10 * (1.0 + z.norm()));
        }
    }

    #[test]
    fn lift_derivatives_match_differences(u in -0.9..0.9f64, v in -0.9..0.9f64) {
        let s = lookup("holo_cube").unwrap().surface();
        let p = analyze_point(&s, u, v, &opts()).unwrap();
        let h = 1e-5;
        for eps in Chirality::BOTH {
            let d = lift_derivatives(&p, eps).unwrap();
            let at = |u, v| {
                let q = analyze_point(&s, u, v, &opts()).unwrap();
                lift_frame(&q.frame, eps).matrix
            };
            let du = (at(u + h, v) - at(u - h, v)).scale(0.5 / h);
            let dv = (at(u, v + h) - at(u, v - h)).scale(0.5 / h);
            prop_assert!(du.dist(&d[0]) <= 1e-7);
            prop_assert!(dv.dist(&d[1]) <= 1e-7);
        }
    }
}

fn psi_residual(name: &str, n: usize) -> f64 {
    let s = lookup(name).unwrap().surface();
    let grid = Grid::new(s.domain, n).unwrap();
    (0..4)
        .map(|i| {
            let field: Vec<_> = grid
                .nodes()
                .map(|(_, _, u, v)| Some(psi(&s.eval_surface_jet(u, v).unwrap()).0[i]))
                .collect();
            holomorphicity_residual(&field, &grid).unwrap()
        })
        .fold(0.0, f64::max)
}

#[test]
fn psi_is_holomorphic_on_minimal_surfaces() {
    for name in ["plane", "holo_square", "holo_cube", "catenoid_E3"] {
        let c = Convergence::new(psi_residual(name, 21), psi_residual(name, 41), 1e-10);
        assert!(c.order_ok(2.0, 0.3), "{name}: {c:?}");
    }
    assert!(psi_residual("clifford_torus", 41) >= 1e-2);
}

#[test]
fn torus_lifts_are_not_holomorphic() {
    let s = lookup("clifford_torus").unwrap().surface();
    for n in [21, 41, 81] {
        let tg = lift_grid(&s, &Grid::new(s.domain, n).unwrap(), &opts()).unwrap();
        let [gp, gm] = tg.chart_residuals().unwrap();
        assert!(gp.max(gm) >= 1e-2, "n = {n}: {gp} {gm}");
    }
}

#[test]
fn g_plus_is_constant_on_holo_square() {
    let s = lookup("holo_square").unwrap().surface();
    let mut r = common::rng(5);
    for _ in 0..50 {
        let (u, v) = (r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
        let q = psi(&s.eval_surface_jet(u, v).unwrap());
        assert!((g_plus_closed_form(&q).unwrap() - 1.0).norm() <= 1e-10);
    }
}
