mod common;

use proptest::prelude::*;
use surface4::catalog::CATALOG;
use surface4::convergence::Convergence;
use surface4::surface_expr::{parse, parse_expr, SurfaceDef};

fn leaf() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("u".to_string()),
        Just("v".to_string()),
        Just("pi".to_string()),
        Just("e".to_string()),
        (0u32..100_000).prop_map(|k| format!("{}", k as f64 / 1000.0)),
    ]
}

fn expr_text() -> impl Strategy<Value = String> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), prop::sample::select(vec!["+", "-", "*", "/"]), inner.clone())
                .prop_map(|(a, op, b)| format!("{a} {op} {b}")),
            (inner.clone(), prop::sample::select(vec!["+", "-", "*", "/"]), inner.clone())
                .prop_map(|(a, op, b)| format!("({a}) {op} ({b})")),
            inner.clone().prop_map(|a| format!("-{a}")),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            (
                prop::sample::select(vec![
                    "sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "atan"
                ]),
                inner
            )
                .prop_map(|(f, a)| format!("{f}({a})")),
        ]
    })
}

proptest! {
    #[test]
    fn printing_reparses_to_the_same_tree(t in expr_text()) {
        let e = parse_expr(&t).unwrap();
        let again = parse_expr(&e.to_string()).unwrap();
        prop_assert_eq!(&again, &e);
        let s = parse(&format!("{t}, u, v, 0")).unwrap();
        let back = SurfaceDef::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(back.components, s.components);
    }

    #[test]
    fn quadratics_are_exact(
        c in prop::array::uniform6(-3.0..3.0f64),
        u in -2.0..2.0f64,
        v in -2.0..2.0f64,
    ) {
        let t = format!(
            "{} + {}*u + {}*v + {}*u^2 + {}*u*v + {}*v^2",
            c[0], c[1], c[2], c[3], c[4], c[5]
        );
        let j = parse_expr(&t).unwrap().eval_jet2(u, v).unwrap();
        let val = c[0] + c[1] * u + c[2] * v + c[3] * u * u + c[4] * u * v + c[5] * v * v;
        let tol = 1e-13 * (1.0 + c.iter().map(|x| x.abs()).sum::<f64>() * 4.0);
        prop_assert!((j.val - val).abs() <= tol);
        prop_assert!((j.du - (c[1] + 2.0 * c[3] * u + c[4] * v)).abs() <= tol);
        prop_assert!((j.dv - (c[2] + c[4] * u + 2.0 * c[5] * v)).abs() <= tol);
        prop_assert_eq!(j.duu, 2.0 * c[3]);
        prop_assert_eq!(j.duv, c[4]);
        prop_assert_eq!(j.dvv, 2.0 * c[5]);
    }
}

#[test]
fn jets_converge_against_differences() {
    for e in &CATALOG {
        let s = e.surface();
        let d = s.domain;
        for (fu, fv) in [(0.3, 0.7), (0.62, 0.41)] {
            let (u, v) = (d.u0 + fu * (d.u1 - d.u0), d.v0 + fv * (d.v1 - d.v0));
            for c in &s.components {
                let a = common::jet_fd_errors(c, u, v, 1e-2);
                let b = common::jet_fd_errors(c, u, v, 5e-3);
                for k in 0..5 {
                    let conv = Convergence::new(a[k], b[k], 1e-9);
                    assert!(conv.order_ok(2.0, 0.3), "{} {c} [{k}]: {conv:?}", e.name);
                }
            }
        }
    }
}
