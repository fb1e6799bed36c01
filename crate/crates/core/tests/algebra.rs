#![allow(clippy::needless_range_loop)]

mod common;

use proptest::prelude::*;
use surface4::complex_structures::*;
use surface4::linalg4::*;

fn unit4() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0..1.0f64)
        .prop_filter("non-degenerate", |x| x.iter().map(|t| t * t).sum::<f64>() > 0.01)
        .prop_map(|x| {
            let n = x.iter().map(|t| t * t).sum::<f64>().sqrt();
            x.map(|t| t / n)
        })
}

fn unit3() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("non-degenerate", |x| x.iter().map(|t| t * t).sum::<f64>() > 0.01)
        .prop_map(|x| {
            let n = x.iter().map(|t| t * t).sum::<f64>().sqrt();
            x.map(|t| t / n)
        })
}

fn chirality() -> impl Strategy<Value = Chirality> {
    prop::bool::ANY.prop_map(|b| if b { Chirality::Plus } else { Chirality::Minus })
}

fn vec4() -> impl Strategy<Value = Vec4> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(Vec4)
}

fn so4() -> impl Strategy<Value = Mat4> {
    (unit4(), unit4()).prop_map(|(b, q)| h1_matrix(b) * h2_matrix(&phi(q, 1e-12).unwrap()))
}

#[test]
fn basis_is_orthonormal_exactly() {
    for e in Chirality::BOTH {
        for f in Chirality::BOTH {
            for k in 1..=3 {
                for l in 1..=3 {
                    let want = if e == f && k == l { 1.0 } else { 0.0 };
                    assert_eq!(mat_inner(basis_i(e, k).matrix(), basis_i(f, l).matrix()), want);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn wedge_is_antisymmetric(a in vec4(), b in vec4()) {
        let s = *wedge(a, b).matrix() + *wedge(b, a).matrix();
        prop_assert_eq!(s, Mat4::ZERO);
    }

    #[test]
    fn bivector_coords_reconstruct(a in vec4(), b in vec4()) {
        let w = wedge(a, b);
        let (p, m) = w.coords();
        prop_assert!(Bivector::from_coords(p, m).matrix().dist(w.matrix()) <= 1e-14);
    }

    #[test]
    fn orthogonal_maps_preserve_inner(q in so4(), a in vec4(), b in vec4()) {
        prop_assert!((inner4(q * a, q * b) - inner4(a, b)).abs() <= 1e-12);
    }

    #[test]
    fn compose_then_classify(eps in chirality(), c in unit3()) {
        let a = compose_ocs(eps, c, 1e-12).unwrap();
        let m = &a.matrix;
        prop_assert!((m.transpose() * *m).dist(&Mat4::IDENTITY) <= 1e-13);
        prop_assert!((*m * *m).dist(&Mat4::IDENTITY.scale(-1.0)) <= 1e-13);
        let back = classify_ocs(m, 1e-10).unwrap();
        prop_assert_eq!(back.chirality, eps);
        for k in 0..3 {
            prop_assert!((back.coords[k] - c[k]).abs() <= 1e-12);
        }
        let again = compose_ocs(back.chirality, back.coords, 1e-12).unwrap();
        prop_assert!(again.matrix.dist(m) <= 1e-12);
    }

    #[test]
    fn ocs_is_skew_on_vectors(eps in chirality(), c in unit3(), u in vec4()) {
        let a = compose_ocs(eps, c, 1e-12).unwrap();
        let u = u.normalized();
        prop_assert!(inner4(a.apply(u), u).abs() <= 1e-14);
    }

    #[test]
    fn grassmannian_round_trips(q in so4(), ep in unit3(), em in unit3(), theta in -7.0..7.0f64) {
        let p = OrientedPlane::new(q.column(0), q.column(1), 1e-12).unwrap();
        let (ap, am) = plane_to_pair(&p);
        let back = pair_to_plane(&ap, &am).unwrap();
        prop_assert!(back.projector_distance(&p) <= 1e-10);
        prop_assert!(back.same_oriented(&p, 1e-10));

        let (rp, rm) = plane_to_pair(&p.rotated(theta));
        prop_assert!(rp.matrix.dist(&ap.matrix) <= 1e-12);
        prop_assert!(rm.matrix.dist(&am.matrix) <= 1e-12);

        let (np, nm) = plane_to_pair(&p.reversed());
        prop_assert!(np.matrix.dist(&ap.matrix.scale(-1.0)) == 0.0);
        prop_assert!(nm.matrix.dist(&am.matrix.scale(-1.0)) == 0.0);

        let sp = compose_ocs(Chirality::Plus, ep, 1e-12).unwrap();
        let sm = compose_ocs(Chirality::Minus, em, 1e-12).unwrap();
        let plane = pair_to_plane(&sp, &sm).unwrap();
        let (bp, bm) = plane_to_pair(&plane);
        prop_assert!(bp.matrix.dist(&sp.matrix) <= 1e-10);
        prop_assert!(bm.matrix.dist(&sm.matrix) <= 1e-10);
    }

    #[test]
    fn phi_is_a_homomorphism(b in unit4(), bp in unit4()) {
        let lhs = phi(quat_mul(b, bp), 1e-12).unwrap();
        let rhs = mat3_mul(&phi(b, 1e-12).unwrap(), &phi(bp, 1e-12).unwrap());
        prop_assert!(mat3_dist(&lhs, &rhs) <= 1e-12);
        prop_assert_eq!(phi(b, 1e-12).unwrap(), phi(b.map(|x| -x), 1e-12).unwrap());
        prop_assert!(so3_defect(&lhs) <= 1e-12);
    }

    #[test]
    fn phi_tilde_is_a_homomorphism(a in so4(), b in so4()) {
        let (l1, l2) = phi_tilde(&(a * b), 1e-10).unwrap();
        let (a1, a2) = phi_tilde(&a, 1e-10).unwrap();
        let (b1, b2) = phi_tilde(&b, 1e-10).unwrap();
        prop_assert!(mat3_dist(&l1, &mat3_mul(&a1, &b1)) <= 1e-12);
        prop_assert!(mat3_dist(&l2, &mat3_mul(&a2, &b2)) <= 1e-12);
        prop_assert!(so3_defect(&a1) <= 1e-12 && so3_defect(&a2) <= 1e-12);
        prop_assert_eq!(phi_tilde(&a.scale(-1.0), 1e-10).unwrap(), (a1, a2));
    }

    #[test]
    fn h1h2_factorization_is_unique(b in unit4(), q in unit4()) {
        let c = phi(q, 1e-12).unwrap();
        let a = h1_matrix(b) * h2_matrix(&c);
        let f = h1h2_factorize(&a, 1e-10).unwrap();
        prop_assert!(f.product().dist(&a) <= 1e-12);
        prop_assert!(f.b_quat.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12));
        prop_assert!(mat3_dist(&f.c_block, &c) <= 1e-12);
    }
}
