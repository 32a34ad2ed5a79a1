use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rotsurf::classify::{classify, Tolerances, Verdict};
use rotsurf::gauss::frame_coordinates;
use rotsurf::gauss::oracle::connection_defect;
use rotsurf::profile::{Curve, SampledCurve};
use rotsurf::{
    inner_bivector, CurveSpec, Family, Interval, LaplacianSource, ProfileCurve, RotationalSurface, SurfaceKind,
    SurfaceSpec,
};

fn dom(a: f64, b: f64) -> Interval {
    Interval::new(a, b).unwrap()
}

fn build(kind: SurfaceKind, family: Family, params: &[(&str, f64)]) -> RotationalSurface {
    SurfaceSpec { kind, curve: CurveSpec::new(family, params, dom(0.0, 1.0)), t_domain: dom(-1.0, 1.0) }
        .build()
        .unwrap_or_else(|e| panic!("{family:?} {params:?}: {e}"))
}

fn family_surface() -> impl Strategy<Value = RotationalSurface> {
    use Family::*;
    use SurfaceKind::*;
    prop_oneof![
        (0.2..3.0f64, -1.0..1.0f64, 0.3..3.0f64).prop_map(|(d1, d2, d3)| {
            build(Elliptic, EllipticThm2I, &[("delta1", d1), ("delta2", d2), ("delta3", d3)])
        }),
        (0.3..3.0f64, 0.5..2.0f64, -2.0..2.0f64, -1.0..1.0f64).prop_map(|(l1, l2, l3, l4)| {
            build(Elliptic, EllipticThm2II, &[("lambda1", l1), ("lambda2", l2), ("lambda3", l3), ("lambda4", l4)])
        }),
        (0.3..3.0f64, 0.3..3.0f64, -1.0..1.0f64).prop_map(|(d1, d2, d3)| {
            build(Hyperbolic, HyperbolicThm5I, &[("delta1", d1), ("delta2", d2), ("delta3", d3)])
        }),
        (1.2..3.0f64, 0.5..2.0f64, -2.0..2.0f64).prop_map(|(l1, l2, l3)| {
            build(Hyperbolic, HyperbolicThm5II, &[("lambda1", l1), ("lambda2", l2), ("lambda3", l3)])
        }),
        (0.3..3.0f64, 0.5..2.0f64, -1.0..1.0f64, any::<bool>()).prop_map(|(m1, m2, m4, plus)| {
            let e = if plus { 1.0 } else { -1.0 };
            build(Parabolic, ParabolicThm7, &[("mu1", m1), ("mu2", m2), ("mu4", m4), ("epsilon", e)])
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frames_are_orthonormal_and_adapted(surf in family_surface(), t in -0.9..0.9f64, s in 0.05..0.95f64) {
        let f = surf.frame(t, s).unwrap();
        prop_assert!(f.orthonormality_defect(surf.frame_signs()) < 1e-10);
        let h = 1e-5;
        let ds = (1.0 / (2.0 * h)) * (surf.embed(t, s + h).unwrap() - surf.embed(t, s - h).unwrap());
        prop_assert!((ds - f.e[0]).max_abs() < 1e-6);
        let dt = (1.0 / (2.0 * h)) * (surf.embed(t + h, s).unwrap() - surf.embed(t - h, s).unwrap());
        let rho = surf.rotation_speed(s).unwrap();
        prop_assert!((dt - rho * f.e[1]).max_abs() < 1e-6 * rho.max(1.0));
    }

    #[test]
    fn gauss_map_is_a_unit_bivector(surf in family_surface(), t in -1.0..1.0f64, s in 0.0..1.0f64) {
        let g = surf.gauss_map(t, s).unwrap();
        let signs = surf.frame_signs();
        prop_assert!((inner_bivector(g, g) - signs[0] * signs[1]).abs() < 1e-10);
    }

    #[test]
    fn laplacian_round_trips_through_the_frame(surf in family_surface(), t in -1.0..1.0f64, s in 0.0..1.0f64) {
        let x = surf.laplacian_gauss_map(t, s).unwrap();
        let c = frame_coordinates(&surf.frame(t, s).unwrap(), x.delta_g);
        let scale = x.delta_g_frame.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let got = [c[0], c[3], c[4]];
        for (a, b) in got.iter().zip(&x.delta_g_frame) {
            prop_assert!((a - b).abs() < 1e-10 * scale);
        }
        for k in [1, 2, 5] {
            prop_assert!(c[k].abs() < 1e-10 * scale);
        }
    }

    #[test]
    fn invariants_do_not_depend_on_t(surf in family_surface(), t1 in -1.0..1.0f64, t2 in -1.0..1.0f64, s in 0.0..1.0f64) {
        let a = surf.laplacian_gauss_map(t1, s).unwrap();
        let b = surf.laplacian_gauss_map(t2, s).unwrap();
        prop_assert_eq!(a.delta_g_frame, b.delta_g_frame);
        let h1 = surf.mean_curvature(t1, s).unwrap();
        let h2 = surf.mean_curvature(t2, s).unwrap();
        prop_assert!((rotsurf::inner(h1, h1) - rotsurf::inner(h2, h2)).abs() < 1e-10 * (1.0 + rotsurf::inner(h1, h1).abs()));
    }
}

#[test]
fn connection_table_matches_differenced_frames_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let surfaces = [
        build(SurfaceKind::Elliptic, Family::EllipticThm2II, &[("lambda1", 1.5), ("lambda2", 1.0), ("lambda3", -0.7)]),
        build(SurfaceKind::Hyperbolic, Family::HyperbolicThm5I, &[("delta1", 1.3), ("delta2", 0.8), ("delta3", 0.2)]),
        build(
            SurfaceKind::Parabolic,
            Family::ParabolicThm7,
            &[("mu1", 2.0), ("mu2", 1.0), ("mu4", 0.5), ("epsilon", -1.0)],
        ),
    ];
    for surf in &surfaces {
        for _ in 0..20 {
            let t = rng.random_range(-0.9..0.9);
            let s = rng.random_range(0.05..0.95);
            let d = connection_defect(surf, t, s, 1e-4).unwrap();
            assert!(d < 1e-6, "{:?} at ({t}, {s}): {d}", surf.kind());
        }
    }
}

#[test]
fn tabulated_family_behaves_like_the_closed_form() {
    let exact =
        build(SurfaceKind::Elliptic, Family::EllipticThm2I, &[("delta1", 2.0), ("delta2", 0.4), ("delta3", 1.0)]);
    let table = SampledCurve::from_fn(dom(0.0, 1.0), 401, |s| exact.curve().jet(s).unwrap().x).unwrap();
    let sampled = RotationalSurface::new(SurfaceKind::Elliptic, Curve::Sampled(table), dom(-1.0, 1.0)).unwrap();
    for s in dom(0.0, 1.0).grid(9, 0.05) {
        let a = exact.scalar_invariants(s).unwrap();
        let b = sampled.scalar_invariants(s).unwrap();
        assert!((a.b - b.b).abs() < 1e-8 && (a.c - b.c).abs() < 1e-8 && (a.d.unwrap() - b.d.unwrap()).abs() < 1e-8);
        let (x, y) = (exact.laplacian_coeffs(s).unwrap(), sampled.laplacian_coeffs(s).unwrap());
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).abs() < 1e-5, "s = {s}: {x:?} vs {y:?}");
        }
    }
    let grid = dom(0.0, 1.0).grid(25, 0.05);
    let r = classify(&sampled, &grid, 0.0, &Tolerances::ORACLE, LaplacianSource::ClosedForm).unwrap();
    assert_eq!(r.verdict, Verdict::FirstKind);
    assert!(r.f_samples.iter().all(|x| (x.1 - 3.0).abs() < 1e-4));
}

#[test]
fn tabulated_curves_must_be_admissible() {
    let table = SampledCurve::from_fn(dom(0.0, 1.0), 41, |s| [s, 0.0, s - 0.5, 0.0].into()).unwrap();
    assert!(RotationalSurface::new(SurfaceKind::Elliptic, Curve::Sampled(table), dom(-1.0, 1.0)).is_err());
}
