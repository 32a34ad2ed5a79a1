//! Rotational surfaces of elliptic, hyperbolic and parabolic type.
//!
//! A [`RotationalSurface`] pairs a profile curve with a rotation type and a
//! `t` interval. Everything that depends only on `s` (the scalar invariants,
//! the second fundamental form, `L, M, N`) is computed from the curve jet; the
//! frame and anything ambient additionally depends on `t`.

mod invariants;

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::algebra::{inner, Vector4};
use crate::error::{Error, Result};
use crate::profile::{admissibility, Curve, CurveJet, CurveSpec, Interval, ProfileCurve, ADMISSIBILITY_TOL};

pub(crate) use invariants::ScalarJet;

/// Number of profile samples checked for admissibility when a surface is built.
const ADMISSIBILITY_SAMPLES: usize = 65;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    /// Rotations in the `(ε₃, ε₄)` plane.
    Elliptic,
    /// Boosts in the `(ε₁, ε₃)` plane.
    Hyperbolic,
    /// Null rotations about the lightlike direction `ξ₃`.
    Parabolic,
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 3] = [SurfaceKind::Elliptic, SurfaceKind::Hyperbolic, SurfaceKind::Parabolic];

    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Elliptic => "elliptic",
            SurfaceKind::Hyperbolic => "hyperbolic",
            SurfaceKind::Parabolic => "parabolic",
        }
    }
}

/// JSON form of a surface: `{"kind": "...", "curve": {...}, "t_domain": [a, b]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
    pub curve: CurveSpec,
    pub t_domain: Interval,
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<RotationalSurface> {
        RotationalSurface::new(self.kind, self.curve.build()?, self.t_domain)
    }
}

/// Ambient frame at a point. `e[0], e[1]` are tangent (along `s` and `t`),
/// `e[2], e[3]` normal; `signs[A] = ⟨e_A, e_A⟩` as evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FramePoint {
    pub e: [Vector4; 4],
    pub signs: [f64; 4],
}

impl FramePoint {
    fn new(e: [Vector4; 4]) -> Self {
        FramePoint { e, signs: e.map(|v| inner(v, v)) }
    }

    /// Largest deviation of the Gram matrix from `diag(expected)`.
    pub fn orthonormality_defect(&self, expected: [f64; 4]) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { expected[i] } else { 0.0 };
                worst = worst.max((inner(self.e[i], self.e[j]) - want).abs());
            }
        }
        worst
    }

    /// `Σ_A coeffs[A]·e_A`.
    pub fn combine(&self, coeffs: [f64; 4]) -> Vector4 {
        (0..4).map(|k| coeffs[k] * self.e[k]).sum()
    }
}

/// Scalar invariants at one `s`. Parabolic surfaces have no `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantSample {
    pub s: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Mean curvature vector along `(e₃, e₄)`.
    #[serde(rename = "H_coeffs")]
    pub h_coeffs: [f64; 2],
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "N")]
    pub n: f64,
}

impl InvariantSample {
    /// `⟨H, H⟩` using the normal signs of the frame.
    pub fn h_squared(&self, normal_signs: [f64; 2]) -> f64 {
        normal_signs[0] * self.h_coeffs[0].powi(2) + normal_signs[1] * self.h_coeffs[1].powi(2)
    }
}

/// `h^r_ij = ⟨h(e_i, e_j), e_r⟩` for `r = 3, 4`, as symmetric 2×2 matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondFundamentalForm {
    pub h3: [[f64; 2]; 2],
    pub h4: [[f64; 2]; 2],
}

impl SecondFundamentalForm {
    fn diagonal(h3: [f64; 2], h4: [f64; 2]) -> Self {
        SecondFundamentalForm { h3: [[h3[0], 0.0], [0.0, h3[1]]], h4: [[h4[0], 0.0], [0.0, h4[1]]] }
    }

    pub fn by_normal(&self) -> [[[f64; 2]; 2]; 2] {
        [self.h3, self.h4]
    }
}

/// `∇̃_{e_i} e_A` for `i = 1, 2` and `A = 1..4`: `coeffs[i][A]` in the frame and
/// `ambient[i][A]` in standard coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionTable {
    pub coeffs: [[[f64; 4]; 4]; 2],
    pub ambient: [[Vector4; 4]; 2],
}

/// A rotational surface swept by `curve`.
#[derive(Debug, Clone)]
pub struct RotationalSurface<C = Curve> {
    kind: SurfaceKind,
    curve: C,
    t_domain: Interval,
    epsilon: f64,
}

/// Surface over any boxed profile curve, for mixing families and witnesses.
pub type DynSurface = RotationalSurface<Box<dyn ProfileCurve + Send + Sync>>;

impl<C: ProfileCurve> RotationalSurface<C> {
    /// Checks that the curve suits `kind` and is admissible on its whole domain.
    ///
    /// Hyperbolic surfaces also need `sign((x₁′)² − 1)` constant on the domain.
    pub fn new(kind: SurfaceKind, curve: C, t_domain: Interval) -> Result<Self> {
        if let Some(k) = curve.kind() {
            if k != kind {
                return Err(Error::InvalidSpec(format!(
                    "curve is written for {} surfaces, not {}",
                    k.name(),
                    kind.name()
                )));
            }
        }
        let mut epsilon = None;
        for s in curve.s_domain().grid(ADMISSIBILITY_SAMPLES, 0.0) {
            let jet = curve.jet(s)?;
            let adm = admissibility(kind, &jet, ADMISSIBILITY_TOL);
            if !adm.positivity {
                return Err(Error::Admissibility(format!(
                    "{} surface needs a positive radius, violated at s = {s}",
                    kind.name()
                )));
            }
            if !adm.nondegenerate_normal {
                return Err(Error::Admissibility(format!("normal frame degenerates at s = {s}")));
            }
            if let Some(e) = adm.epsilon {
                match epsilon {
                    Some(prev) if prev != e => {
                        return Err(Error::Admissibility(format!(
                            "sign of (x1')^2 - 1 changes inside the domain (near s = {s})"
                        )))
                    }
                    _ => epsilon = Some(e),
                }
            }
        }
        Ok(RotationalSurface { kind, curve, t_domain, epsilon: epsilon.unwrap_or(1.0) })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn curve(&self) -> &C {
        &self.curve
    }

    pub fn s_domain(&self) -> Interval {
        self.curve.s_domain()
    }

    pub fn t_domain(&self) -> Interval {
        self.t_domain
    }

    /// `ε = sign((x₁′)² − 1)` for hyperbolic surfaces, `None` otherwise.
    pub fn epsilon(&self) -> Option<f64> {
        (self.kind == SurfaceKind::Hyperbolic).then_some(self.epsilon)
    }

    /// `⟨e_A, e_A⟩` as prescribed for this type.
    pub fn frame_signs(&self) -> [f64; 4] {
        match self.kind {
            SurfaceKind::Hyperbolic => [1.0, -1.0, self.epsilon, -self.epsilon],
            _ => [1.0, -1.0, 1.0, -1.0],
        }
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.curve.jet(s)
    }

    fn point(&self, t: f64, s: f64) -> Result<CurveJet> {
        self.t_domain.check(t)?;
        self.jet(s)
    }

    pub fn embed(&self, t: f64, s: f64) -> Result<Vector4> {
        let j = self.point(t, s)?;
        let x = j.x;
        Ok(match self.kind {
            SurfaceKind::Elliptic => {
                let (sin, cos) = t.sin_cos();
                Vector4::new(x.x1(), x.x2(), x.x3() * cos, x.x3() * sin)
            }
            SurfaceKind::Hyperbolic => Vector4::new(x.x1() * t.cosh(), x.x2(), x.x1() * t.sinh(), x.x4()),
            SurfaceKind::Parabolic => {
                let n = j.null_coords();
                let (p, q) = (n.p[0], n.q[0]);
                null_point(n.x1[0], p, -t * t * p + q, SQRT_2 * t * p)
            }
        })
    }

    /// `‖∂φ/∂t‖`: `x₃`, `x₁` or `√2 p` by type.
    pub fn rotation_speed(&self, s: f64) -> Result<f64> {
        let j = self.jet(s)?;
        Ok(match self.kind {
            SurfaceKind::Elliptic => j.x.x3(),
            SurfaceKind::Hyperbolic => j.x.x1(),
            SurfaceKind::Parabolic => SQRT_2 * j.null_coords().p[0],
        })
    }

    pub fn frame(&self, t: f64, s: f64) -> Result<FramePoint> {
        let j = self.point(t, s)?;
        let v = j.d1;
        let e = match self.kind {
            SurfaceKind::Elliptic => {
                let (sin, cos) = t.sin_cos();
                let r = (1.0 + v.x3().powi(2)).sqrt();
                [
                    Vector4::new(v.x1(), v.x2(), v.x3() * cos, v.x3() * sin),
                    Vector4::new(0.0, 0.0, -sin, cos),
                    (1.0 / r) * Vector4::new(-v.x2(), v.x1(), 0.0, 0.0),
                    (1.0 / r) * Vector4::new(v.x3() * v.x1(), v.x3() * v.x2(), r * r * cos, r * r * sin),
                ]
            }
            SurfaceKind::Hyperbolic => {
                let (sh, ch) = (t.sinh(), t.cosh());
                let r = self.hyperbolic_norm(&j)?;
                let w = 1.0 - v.x1().powi(2);
                [
                    Vector4::new(v.x1() * ch, v.x2(), v.x1() * sh, v.x4()),
                    Vector4::new(sh, 0.0, ch, 0.0),
                    (1.0 / r) * Vector4::new(0.0, v.x4(), 0.0, v.x2()),
                    (1.0 / r) * Vector4::new(w * ch, -v.x1() * v.x2(), w * sh, -v.x1() * v.x4()),
                ]
            }
            SurfaceKind::Parabolic => {
                let n = j.null_coords();
                let (x1, p, q) = (n.x1[1], n.p[1], n.q[1]);
                if p.abs() <= ADMISSIBILITY_TOL {
                    return Err(Error::Admissibility(format!("p' vanishes at s = {s}")));
                }
                let r = SQRT_2 * t;
                [
                    null_point(x1, p, -t * t * p + q, r * p),
                    null_point(0.0, 0.0, -r, 1.0),
                    null_point(1.0, 0.0, x1 / p, 0.0),
                    null_point(x1, p, 1.0 / p + q - t * t * p, r * p),
                ]
            }
        };
        Ok(FramePoint::new(e))
    }

    fn hyperbolic_norm(&self, j: &CurveJet) -> Result<f64> {
        let q = self.epsilon * (j.d1.x1().powi(2) - 1.0);
        if q <= ADMISSIBILITY_TOL {
            return Err(Error::Admissibility(format!("(x1')^2 - 1 vanishes or changes sign at s = {}", j.s)));
        }
        Ok(q.sqrt())
    }

    pub(crate) fn scalar_jet(&self, s: f64) -> Result<ScalarJet> {
        let j = self.jet(s)?;
        match self.kind {
            SurfaceKind::Elliptic => invariants::elliptic(&j),
            SurfaceKind::Hyperbolic => invariants::hyperbolic(&j, self.epsilon),
            SurfaceKind::Parabolic => invariants::parabolic(&j),
        }
    }

    pub fn scalar_invariants(&self, s: f64) -> Result<InvariantSample> {
        let sj = self.scalar_jet(s)?;
        let (a, b, c, d) = (sj.a, sj.b, sj.c, sj.d);
        let e = self.epsilon;
        let (h_coeffs, k) = match self.kind {
            SurfaceKind::Elliptic => ([-d / 2.0, (c + b) / 2.0], c * b),
            SurfaceKind::Hyperbolic => ([e * d / 2.0, -e * (c + e * b) / 2.0], c * b),
            SurfaceKind::Parabolic => ([c / 2.0, (a + b) / 2.0], a * b),
        };
        let [l, m, n] = sj.laplacian_coeffs(self.kind, e);
        Ok(InvariantSample {
            s,
            a,
            b,
            c,
            d: (self.kind != SurfaceKind::Parabolic).then_some(d),
            epsilon: self.epsilon(),
            h_coeffs,
            k,
            l,
            m,
            n,
        })
    }

    /// `(L, M, N)`, the coefficients of `ΔG` along `(e₁∧e₂, e₂∧e₃, e₂∧e₄)`.
    pub fn laplacian_coeffs(&self, s: f64) -> Result<[f64; 3]> {
        Ok(self.scalar_jet(s)?.laplacian_coeffs(self.kind, self.epsilon))
    }

    pub fn second_fundamental(&self, s: f64) -> Result<SecondFundamentalForm> {
        let ScalarJet { a, b, c, d, .. } = self.scalar_jet(s)?;
        let e = self.epsilon;
        Ok(match self.kind {
            SurfaceKind::Elliptic => SecondFundamentalForm::diagonal([-d, 0.0], [-c, b]),
            SurfaceKind::Hyperbolic => SecondFundamentalForm::diagonal([d, 0.0], [c, -e * b]),
            SurfaceKind::Parabolic => SecondFundamentalForm::diagonal([c, 0.0], [-b, a]),
        })
    }

    /// `H = ½ Σ_r Σ_i ε_i ε_r h^r_ii e_r`, assembled from the second fundamental form.
    pub fn mean_curvature_from_h(&self, t: f64, s: f64) -> Result<Vector4> {
        let h = self.second_fundamental(s)?.by_normal();
        let eps = self.frame_signs();
        let frame = self.frame(t, s)?;
        let mut coeffs = [0.0; 4];
        for r in 0..2 {
            coeffs[r + 2] = 0.5 * (0..2).map(|i| eps[i] * eps[r + 2] * h[r][i][i]).sum::<f64>();
        }
        Ok(frame.combine(coeffs))
    }

    /// `H` from the closed-form coefficients of [`InvariantSample::h_coeffs`].
    pub fn mean_curvature(&self, t: f64, s: f64) -> Result<Vector4> {
        let inv = self.scalar_invariants(s)?;
        let frame = self.frame(t, s)?;
        Ok(frame.combine([0.0, 0.0, inv.h_coeffs[0], inv.h_coeffs[1]]))
    }

    /// `K = Σ_r ε_r (h^r_11 h^r_22 − h^r_12 h^r_21)`.
    pub fn gaussian_curvature_from_h(&self, s: f64) -> Result<f64> {
        let h = self.second_fundamental(s)?.by_normal();
        let eps = self.frame_signs();
        Ok((0..2).map(|r| eps[r + 2] * (h[r][0][0] * h[r][1][1] - h[r][0][1] * h[r][1][0])).sum())
    }

    pub fn connection_table(&self, t: f64, s: f64) -> Result<ConnectionTable> {
        let frame = self.frame(t, s)?;
        let ScalarJet { a, b, c, d, .. } = self.scalar_jet(s)?;
        let e = self.epsilon;
        let z = [0.0; 4];
        let coeffs = match self.kind {
            SurfaceKind::Elliptic => [
                [[0.0, 0.0, -d, c], z, [d, 0.0, 0.0, -a * d], [c, 0.0, -a * d, 0.0]],
                [[0.0, a * b, 0.0, 0.0], [a * b, 0.0, 0.0, -b], z, [0.0, b, 0.0, 0.0]],
            ],
            SurfaceKind::Hyperbolic => [
                [[0.0, 0.0, e * d, -e * c], z, [-d, 0.0, 0.0, -e * a * d], [-c, 0.0, -e * a * d, 0.0]],
                [[0.0, a * b, 0.0, 0.0], [a * b, 0.0, 0.0, b], z, [0.0, -e * b, 0.0, 0.0]],
            ],
            SurfaceKind::Parabolic => [
                [[0.0, 0.0, c, b], z, [-c, 0.0, 0.0, c], [b, 0.0, c, 0.0]],
                [[0.0, a, 0.0, 0.0], [a, 0.0, 0.0, -a], z, [0.0, a, 0.0, 0.0]],
            ],
        };
        let ambient = coeffs.map(|row| row.map(|k| frame.combine(k)));
        Ok(ConnectionTable { coeffs, ambient })
    }
}

/// `x₁ε₁ + pξ₂ + qξ₃ + x₄ε₄` in standard coordinates.
fn null_point(x1: f64, p: f64, q: f64, x4: f64) -> Vector4 {
    Vector4::new(x1, (p - q) / SQRT_2, (p + q) / SQRT_2, x4)
}

impl<C: ProfileCurve + Send + Sync + 'static> RotationalSurface<C> {
    pub fn into_dyn(self) -> DynSurface {
        RotationalSurface {
            kind: self.kind,
            curve: Box::new(self.curve),
            t_domain: self.t_domain,
            epsilon: self.epsilon,
        }
    }
}

#[cfg(test)]
mod tests;
