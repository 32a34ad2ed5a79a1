use std::f64::consts::{FRAC_PI_2, SQRT_2};

use super::*;
use crate::profile::witness::{MinimalElliptic, MinimalHyperbolic, QuadraticRadiusElliptic};
use crate::profile::Family;

fn dom(a: f64, b: f64) -> Interval {
    Interval::new(a, b).unwrap()
}

fn surface(kind: SurfaceKind, family: Family, params: &[(&str, f64)]) -> RotationalSurface {
    SurfaceSpec { kind, curve: CurveSpec::new(family, params, dom(0.0, 2.0)), t_domain: dom(-1.0, 1.0) }
        .build()
        .unwrap()
}

fn builtins() -> Vec<RotationalSurface> {
    use Family::*;
    use SurfaceKind::*;
    vec![
        surface(Elliptic, EllipticThm2I, &[("delta1", 2.0), ("delta2", 0.3), ("delta3", 1.0)]),
        surface(Elliptic, EllipticThm2II, &[("lambda1", 1.0), ("lambda2", 1.0), ("lambda3", 2.0)]),
        surface(Hyperbolic, HyperbolicThm5I, &[("delta1", 1.0), ("delta2", 2.0), ("delta3", 0.1)]),
        surface(Hyperbolic, HyperbolicThm5II, &[("lambda1", 2.0), ("lambda2", 1.0), ("lambda3", 1.0)]),
        surface(Parabolic, ParabolicThm7, &[("mu1", 1.0), ("mu2", 1.0), ("epsilon", 1.0)]),
    ]
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn elliptic_embedding_example() {
    let c = QuadraticRadiusElliptic::new(dom(0.0, 1.0));
    let surf = RotationalSurface::new(SurfaceKind::Elliptic, c, dom(0.0, 3.2)).unwrap();
    let p = surf.embed(FRAC_PI_2, 0.0).unwrap();
    assert!((p - Vector4::new(0.0, 0.0, 0.0, 1.0)).max_abs() < 1e-15);
}

#[test]
fn parabolic_embedding_at_origin() {
    let spec = SurfaceSpec {
        kind: SurfaceKind::Parabolic,
        curve: CurveSpec::new(Family::ParabolicThm7, &[("mu1", 1.0), ("mu2", 1.0)], dom(0.0, 1.0)),
        t_domain: dom(-1.0, 1.0),
    };
    let p = spec.build().unwrap().embed(0.0, 0.0).unwrap();
    assert!((p - Vector4::new(0.0, 1.0 / SQRT_2, 1.0 / SQRT_2, 0.0)).max_abs() < 1e-15);
}

#[test]
fn invariant_examples() {
    let s = surface(SurfaceKind::Elliptic, Family::EllipticThm2I, &[("delta1", 2.0), ("delta3", 1.0)]);
    let inv = s.scalar_invariants(0.4).unwrap();
    assert!(close(inv.a, 0.0, 1e-15) && close(inv.b, 1.0, 1e-15) && close(inv.c, 0.0, 1e-15));
    assert!(close(inv.d.unwrap(), 2.0, 1e-14));
    assert!(close(inv.h_coeffs[0], -1.0, 1e-14) && close(inv.h_coeffs[1], 0.5, 1e-15));
    assert_eq!(inv.k, 0.0);
    assert!(close(inv.l, 3.0, 1e-13) && inv.m.abs() < 1e-13 && inv.n.abs() < 1e-13);

    let s =
        surface(SurfaceKind::Elliptic, Family::EllipticThm2II, &[("lambda1", 1.0), ("lambda2", 1.0), ("lambda3", 3.0)]);
    let inv = s.scalar_invariants(0.0).unwrap();
    assert!(close(inv.a, 1.0 / SQRT_2, 1e-15) && close(inv.b, SQRT_2, 1e-15));
    assert!(close(inv.c, 0.0, 1e-15) && close(inv.d.unwrap(), 3.0, 1e-14));

    let s = surface(SurfaceKind::Parabolic, Family::ParabolicThm7, &[("mu1", 1.0), ("mu2", 1.0)]);
    let inv = s.scalar_invariants(0.0).unwrap();
    assert!(close(inv.a, 1.0, 1e-15) && inv.b == 0.0 && inv.k == 0.0 && inv.d.is_none());
}

#[test]
fn second_fundamental_examples() {
    let s = surface(SurfaceKind::Elliptic, Family::EllipticThm2I, &[("delta1", 2.0), ("delta3", 1.0)]);
    let h = s.second_fundamental(1.0).unwrap();
    assert!(close(h.h3[0][0], -2.0, 1e-14) && h.h3[1][1] == 0.0);
    assert!(close(h.h4[0][0], 0.0, 1e-15) && close(h.h4[1][1], 1.0, 1e-15));

    let s = surface(SurfaceKind::Hyperbolic, Family::HyperbolicThm5I, &[("delta1", 1.0), ("delta2", 2.0)]);
    assert_eq!(s.epsilon(), Some(-1.0));
    let inv = s.scalar_invariants(0.5).unwrap();
    let h = s.second_fundamental(0.5).unwrap();
    assert!(close(h.h4[1][1], inv.b, 1e-15));

    let s = surface(SurfaceKind::Parabolic, Family::ParabolicThm7, &[("mu1", 2.0), ("mu2", 1.0)]);
    assert_eq!(s.second_fundamental(0.3).unwrap().h4[0][0], 0.0);
}

#[test]
fn frames_are_orthonormal_and_adapted() {
    let h = 1e-5;
    for surf in builtins() {
        let signs = surf.frame_signs();
        for t in [-0.7, 0.0, 0.4] {
            for s in [0.2, 1.0, 1.7] {
                let f = surf.frame(t, s).unwrap();
                assert!(f.orthonormality_defect(signs) < 1e-10, "{:?}", surf.kind());
                let ds = (1.0 / (2.0 * h)) * (surf.embed(t, s + h).unwrap() - surf.embed(t, s - h).unwrap());
                assert!((ds - f.e[0]).max_abs() < 1e-6);
                let dt = (1.0 / (2.0 * h)) * (surf.embed(t + h, s).unwrap() - surf.embed(t - h, s).unwrap());
                let rho = surf.rotation_speed(s).unwrap();
                assert!((dt - rho * f.e[1]).max_abs() < 1e-6, "{:?}", surf.kind());
            }
        }
    }
}

#[test]
fn hyperbolic_constant_radius_normal_is_timelike() {
    let s = surface(SurfaceKind::Hyperbolic, Family::HyperbolicThm5I, &[("delta1", 1.0), ("delta2", 2.0)]);
    let f = s.frame(0.3, 0.2).unwrap();
    assert!(close(f.signs[2], -1.0, 1e-12));
}

#[test]
fn curvature_consistency() {
    for surf in builtins() {
        for s in [0.1, 0.9, 1.9] {
            let inv = surf.scalar_invariants(s).unwrap();
            assert!(close(surf.gaussian_curvature_from_h(s).unwrap(), inv.k, 1e-12));
            for t in [-0.5, 0.5] {
                let d = surf.mean_curvature_from_h(t, s).unwrap() - surf.mean_curvature(t, s).unwrap();
                assert!(d.max_abs() < 1e-12);
            }
        }
    }
}

#[test]
fn minimal_witnesses_have_vanishing_mean_curvature() {
    let e = RotationalSurface::new(SurfaceKind::Elliptic, MinimalElliptic::new(dom(-0.5, 0.5)).unwrap(), dom(0.0, 1.0))
        .unwrap();
    let h =
        RotationalSurface::new(SurfaceKind::Hyperbolic, MinimalHyperbolic::new(dom(-1.0, 1.0)), dom(0.0, 1.0)).unwrap();
    for s in [-0.4, 0.0, 0.3] {
        assert!(e.mean_curvature(0.5, s).unwrap().max_abs() < 1e-14);
        assert!(h.mean_curvature(0.5, s).unwrap().max_abs() < 1e-14);
    }
}

#[test]
fn invariants_do_not_depend_on_t() {
    for surf in builtins() {
        let s = 0.77;
        let g = |t: f64| {
            let f = surf.frame(t, s).unwrap();
            let c = surf.connection_table(t, s).unwrap();
            (f, c)
        };
        let (f0, c0) = g(-0.6);
        let (f1, c1) = g(0.8);
        assert_eq!(c0.coeffs, c1.coeffs);
        assert_eq!(f0.signs.map(f64::round), f1.signs.map(f64::round));
    }
}

#[test]
fn connection_examples() {
    let s = surface(SurfaceKind::Elliptic, Family::EllipticThm2I, &[("delta1", 2.0), ("delta3", 1.0)]);
    let c = s.connection_table(0.2, 0.5).unwrap();
    assert_eq!(c.ambient[0][1], Vector4::ZERO);
    let f = s.frame(0.2, 0.5).unwrap();
    assert!((c.ambient[1][1] + f.e[3]).max_abs() < 1e-14);
}

#[test]
fn rejects_mismatched_or_inadmissible_surfaces() {
    let c = CurveSpec::new(Family::EllipticThm2I, &[("delta1", 1.0), ("delta3", 1.0)], dom(0.0, 1.0));
    let spec = SurfaceSpec { kind: SurfaceKind::Hyperbolic, curve: c, t_domain: dom(0.0, 1.0) };
    assert!(matches!(spec.build(), Err(Error::InvalidSpec(_))));

    // x1' runs from 0 to 2, crossing (x1')^2 = 1
    let rows: Vec<[f64; 5]> = (0..41)
        .map(|i| {
            let s = i as f64 * 0.025;
            [s, 1.0 + s * s, 0.0, 0.0, 0.0]
        })
        .collect();
    let table = crate::profile::SampledCurve::new(&rows, None).unwrap();
    assert!(matches!(
        RotationalSurface::new(SurfaceKind::Hyperbolic, table, dom(0.0, 1.0)),
        Err(Error::Admissibility(_))
    ));

    let s = surface(SurfaceKind::Elliptic, Family::EllipticThm2I, &[("delta1", 1.0), ("delta3", 1.0)]);
    assert!(matches!(s.embed(5.0, 0.5), Err(Error::Domain { .. })));
}

#[test]
fn surface_spec_json() {
    let json = r#"{"kind":"parabolic","curve":{"family":"parabolic_thm7","params":{"mu1":1,"mu2":1},"s_domain":[0,1]},"t_domain":[-1,1]}"#;
    let spec: SurfaceSpec = serde_json::from_str(json).unwrap();
    assert_eq!(spec.kind, SurfaceKind::Parabolic);
    assert!(spec.build().is_ok());
    assert!(serde_json::from_str::<SurfaceSpec>(&json.replace("\"kind\"", "\"knd\"")).is_err());
}
