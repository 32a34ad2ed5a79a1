//! Finite-difference Laplacian of the Gauss map.
//!
//! Only [`RotationalSurface::embed`] and [`RotationalSurface::frame`] are
//! consulted: no invariants, no connection tables. Along `e₁ = ∂_s` we take
//! central differences in `s`. Along `e₂` we difference in `t` and divide by
//! `‖∂φ/∂t‖`, itself a central difference of the embedding, with the sign
//! fixed by comparing `∂φ/∂t` with `e₂`. The tangential correction
//! `∇_{e_i}e_i` is the tangential part of the differenced frame vectors.

use serde::Serialize;

use crate::algebra::{inner, Bivector6, Vector4};
use crate::error::{Error, Result};
use crate::profile::ProfileCurve;
use crate::surface::RotationalSurface;

/// Default step of the oracle; Richardson pairs it with `h/2`.
pub const DEFAULT_STEP: f64 = 1e-3;

fn check_step<C: ProfileCurve>(surf: &RotationalSurface<C>, t: f64, s: f64, h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Step { h, reason: "step must be positive and finite".into() });
    }
    if !(surf.s_domain().contains(s - h) && surf.s_domain().contains(s + h)) {
        return Err(Error::Step { h, reason: format!("s = {s} is closer than h to the s-domain boundary") });
    }
    if !(surf.t_domain().contains(t - 2.0 * h) && surf.t_domain().contains(t + 2.0 * h)) {
        return Err(Error::Step { h, reason: format!("t = {t} is closer than 2h to the t-domain boundary") });
    }
    Ok(())
}

/// Differencing along `e₂` at fixed `s`.
struct AlongT<'a, C> {
    surf: &'a RotationalSurface<C>,
    s: f64,
    h: f64,
    sign: f64,
}

impl<C: ProfileCurve> AlongT<'_, C> {
    fn speed(&self, t: f64) -> Result<f64> {
        let dt =
            (1.0 / (2.0 * self.h)) * (self.surf.embed(t + self.h, self.s)? - self.surf.embed(t - self.h, self.s)?);
        Ok(inner(dt, dt).abs().sqrt())
    }

    fn scale(&self, t: f64) -> Result<f64> {
        Ok(self.sign / (2.0 * self.h * self.speed(t)?))
    }

    fn vector(&self, t: f64, f: impl Fn(f64) -> Result<Vector4>) -> Result<Vector4> {
        Ok(self.scale(t)? * (f(t + self.h)? - f(t - self.h)?))
    }

    fn bivector(&self, t: f64, f: impl Fn(f64) -> Result<Bivector6>) -> Result<Bivector6> {
        Ok(self.scale(t)? * (f(t + self.h)? - f(t - self.h)?))
    }
}

fn along_t<C: ProfileCurve>(surf: &RotationalSurface<C>, t: f64, s: f64, h: f64) -> Result<AlongT<'_, C>> {
    let dt = surf.embed(t + h, s)? - surf.embed(t - h, s)?;
    let e2 = surf.frame(t, s)?.e[1];
    let sign = (inner(dt, e2) * inner(e2, e2)).signum();
    Ok(AlongT { surf, s, h, sign })
}

/// One finite-difference evaluation of `ΔG` with step `h`.
pub fn laplacian_fd<C: ProfileCurve>(surf: &RotationalSurface<C>, t: f64, s: f64, h: f64) -> Result<Bivector6> {
    check_step(surf, t, s, h)?;
    let frame = surf.frame(t, s)?;
    let eps = frame.signs;
    let g = |t: f64, s: f64| surf.gauss_map(t, s);
    let dt = along_t(surf, t, s, h)?;

    let g0 = g(t, s)?;
    let (gp, gm) = (g(t, s + h)?, g(t, s - h)?);
    let gs = (1.0 / (2.0 * h)) * (gp - gm);
    let gss = (1.0 / (h * h)) * (gp - 2.0 * g0 + gm);
    let e2g = |t: f64| dt.bivector(t, |u| g(u, s));
    let gt = e2g(t)?;
    let gtt = dt.bivector(t, e2g)?;

    let de1 = (1.0 / (2.0 * h)) * (surf.frame(t, s + h)?.e[0] - surf.frame(t, s - h)?.e[0]);
    let de2 = dt.vector(t, |u| Ok(surf.frame(u, s)?.e[1]))?;
    let tangential = |v: Vector4| eps[0] * inner(v, frame.e[0]) * gs + eps[1] * inner(v, frame.e[1]) * gt;

    let first = gss - tangential(de1);
    let second = gtt - tangential(de2);
    Ok(-(eps[0] * first + eps[1] * second))
}

/// `ΔG` by Richardson extrapolation of [`laplacian_fd`] at `h` and `h/2`.
pub fn laplacian_oracle<C: ProfileCurve>(surf: &RotationalSurface<C>, t: f64, s: f64, h: f64) -> Result<Bivector6> {
    let coarse = laplacian_fd(surf, t, s, h)?;
    let fine = laplacian_fd(surf, t, s, 0.5 * h)?;
    Ok((1.0 / 3.0) * (4.0 * fine - coarse))
}

/// `∇̃_{e_i} e_A` by differencing the frame fields, laid out like
/// [`crate::surface::ConnectionTable::ambient`].
pub fn connection_table_fd<C: ProfileCurve>(
    surf: &RotationalSurface<C>,
    t: f64,
    s: f64,
    h: f64,
) -> Result<[[Vector4; 4]; 2]> {
    check_step(surf, t, s, h)?;
    let (fp, fm) = (surf.frame(t, s + h)?, surf.frame(t, s - h)?);
    let along_s = std::array::from_fn(|a| (1.0 / (2.0 * h)) * (fp.e[a] - fm.e[a]));
    let dt = along_t(surf, t, s, h)?;
    let mut along_e2 = [Vector4::ZERO; 4];
    for (a, v) in along_e2.iter_mut().enumerate() {
        *v = dt.vector(t, |u| Ok(surf.frame(u, s)?.e[a]))?;
    }
    Ok([along_s, along_e2])
}

/// Closed-form `ΔG` against the oracle at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleComparison {
    pub t: f64,
    pub s: f64,
    pub h: f64,
    pub closed_form: Bivector6,
    pub oracle: Bivector6,
    /// `‖oracle − closed‖∞ / max(‖closed‖∞, ‖G‖∞)`.
    pub rel_error: f64,
}

pub fn compare_with_oracle<C: ProfileCurve>(
    surf: &RotationalSurface<C>,
    t: f64,
    s: f64,
    h: f64,
) -> Result<OracleComparison> {
    let closed = surf.laplacian_gauss_map(t, s)?;
    let oracle = laplacian_oracle(surf, t, s, h)?;
    let scale = closed.delta_g.max_abs().max(closed.g.max_abs());
    Ok(OracleComparison {
        t,
        s,
        h,
        closed_form: closed.delta_g,
        oracle,
        rel_error: (oracle - closed.delta_g).max_abs() / scale,
    })
}

/// Largest deviation between [`connection_table_fd`] and the closed-form table.
pub fn connection_defect<C: ProfileCurve>(surf: &RotationalSurface<C>, t: f64, s: f64, h: f64) -> Result<f64> {
    let fd = connection_table_fd(surf, t, s, h)?;
    let table = surf.connection_table(t, s)?;
    let mut worst = 0.0_f64;
    for i in 0..2 {
        for a in 0..4 {
            worst = worst.max((fd[i][a] - table.ambient[i][a]).max_abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::witness::QuadraticRadiusElliptic;
    use crate::profile::{CurveSpec, Family, Interval};
    use crate::surface::{SurfaceKind, SurfaceSpec};

    fn dom(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn build(kind: SurfaceKind, family: Family, params: &[(&str, f64)]) -> RotationalSurface {
        SurfaceSpec { kind, curve: CurveSpec::new(family, params, dom(0.0, 1.0)), t_domain: dom(-1.0, 1.0) }
            .build()
            .unwrap()
    }

    #[test]
    fn oracle_examples() {
        let s = build(SurfaceKind::Elliptic, Family::EllipticThm2I, &[("delta1", 2.0), ("delta3", 1.0)]);
        let c = compare_with_oracle(&s, 0.2, 0.5, 1e-3).unwrap();
        assert!(c.rel_error < 1e-4, "{}", c.rel_error);
        let g = s.gauss_map(0.2, 0.5).unwrap();
        assert!((c.oracle - 3.0 * g).max_abs() < 1e-4 * 3.0);

        let s = build(SurfaceKind::Elliptic, Family::EllipticThm2I, &[("delta1", 1.0), ("delta3", 1.0)]);
        assert!(laplacian_oracle(&s, 0.2, 0.5, 1e-3).unwrap().coord_norm() < 1e-5);

        let s = build(SurfaceKind::Parabolic, Family::ParabolicThm7, &[("mu1", 1.0), ("mu2", 1.0)]);
        assert!(laplacian_oracle(&s, 0.2, 0.5, 1e-3).unwrap().coord_norm() < 1e-5);
    }

    #[test]
    fn oracle_confirms_quadratic_radius_laplacian() {
        let s =
            RotationalSurface::new(SurfaceKind::Elliptic, QuadraticRadiusElliptic::new(dom(0.0, 1.0)), dom(-1.0, 1.0))
                .unwrap();
        for x in [0.2, 0.5, 0.8] {
            let c = compare_with_oracle(&s, 0.3, x, 1e-3).unwrap();
            assert!(c.rel_error < 1e-6, "s={x}: {}", c.rel_error);
            assert!(s.laplacian_coeffs(x).unwrap()[1].abs() > 0.1);
        }
    }

    #[test]
    fn connection_table_matches_differenced_frame() {
        let s = build(
            SurfaceKind::Hyperbolic,
            Family::HyperbolicThm5II,
            &[("lambda1", 2.0), ("lambda2", 1.0), ("lambda3", 1.0)],
        );
        assert!(connection_defect(&s, 0.1, 0.4, 1e-4).unwrap() < 1e-6);
    }

    #[test]
    fn step_errors() {
        let s = build(SurfaceKind::Elliptic, Family::EllipticThm2I, &[("delta1", 2.0), ("delta3", 1.0)]);
        assert!(matches!(laplacian_oracle(&s, 0.0, 0.5, 0.0), Err(Error::Step { .. })));
        assert!(matches!(laplacian_oracle(&s, 0.0, 0.0005, 1e-3), Err(Error::Step { .. })));
        assert!(matches!(laplacian_oracle(&s, 0.999, 0.5, 1e-3), Err(Error::Step { .. })));
        assert!(matches!(laplacian_oracle(&s, 0.0, 0.5, f64::NAN), Err(Error::Step { .. })));
    }
}
