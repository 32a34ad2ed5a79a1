//! Analytic curves outside the flat 1-type families, used as witnesses and
//! counterexamples by the theorem harness.

use super::families::null_q_derivatives;
use super::quadrature::{adaptive_simpson, POSITION_TOL};
use super::{CurveJet, Interval, ProfileCurve};
use crate::algebra::Vector4;
use crate::error::{Error, Result};
use crate::surface::SurfaceKind;

/// `x = (arcsin s, 0, √(1−s²), 0)`: the elliptic surface it sweeps is minimal
/// (`d = 0`, `b + c = 0`). Defined on subintervals of `(−1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalElliptic {
    domain: Interval,
}

impl MinimalElliptic {
    pub fn new(domain: Interval) -> Result<Self> {
        if domain.lo <= -1.0 || domain.hi >= 1.0 {
            return Err(Error::Admissibility("minimal elliptic witness needs |s| < 1".into()));
        }
        Ok(MinimalElliptic { domain })
    }
}

impl ProfileCurve for MinimalElliptic {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn kind(&self) -> Option<SurfaceKind> {
        Some(SurfaceKind::Elliptic)
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        let g = 1.0 - s * s;
        let (r1, r3, r5) = (g.sqrt(), g.powf(1.5), g.powf(2.5));
        Ok(CurveJet {
            s,
            x: Vector4::new(s.asin(), 0.0, r1, 0.0),
            d1: Vector4::new(1.0 / r1, 0.0, -s / r1, 0.0),
            d2: Vector4::new(s / r3, 0.0, -1.0 / r3, 0.0),
            d3: Vector4::new((1.0 + 2.0 * s * s) / r5, 0.0, -3.0 * s / r5, 0.0),
        })
    }
}

/// `x = (√(1+s²), arsinh s, 0, 0)`: minimal hyperbolic surface with `ε = −1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalHyperbolic {
    domain: Interval,
}

impl MinimalHyperbolic {
    pub fn new(domain: Interval) -> Self {
        MinimalHyperbolic { domain }
    }
}

impl ProfileCurve for MinimalHyperbolic {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn kind(&self) -> Option<SurfaceKind> {
        Some(SurfaceKind::Hyperbolic)
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        let g = 1.0 + s * s;
        let (r1, r3, r5) = (g.sqrt(), g.powf(1.5), g.powf(2.5));
        Ok(CurveJet {
            s,
            x: Vector4::new(r1, s.asinh(), 0.0, 0.0),
            d1: Vector4::new(s / r1, 1.0 / r1, 0.0, 0.0),
            d2: Vector4::new(1.0 / r3, -s / r3, 0.0, 0.0),
            d3: Vector4::new(-3.0 * s / r5, (2.0 * s * s - 1.0) / r5, 0.0, 0.0),
        })
    }
}

/// `x = (s², s, s²+1, 0)`: unit speed with radius `x₃ = s²+1`; its elliptic
/// surface has `M ≠ 0`, so it is neither parallel nor pointwise 1-type.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticRadiusElliptic {
    domain: Interval,
}

impl QuadraticRadiusElliptic {
    pub fn new(domain: Interval) -> Self {
        QuadraticRadiusElliptic { domain }
    }
}

impl ProfileCurve for QuadraticRadiusElliptic {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn kind(&self) -> Option<SurfaceKind> {
        Some(SurfaceKind::Elliptic)
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        Ok(CurveJet {
            s,
            x: Vector4::new(s * s, s, s * s + 1.0, 0.0),
            d1: Vector4::new(2.0 * s, 1.0, 2.0 * s, 0.0),
            d2: Vector4::new(2.0, 0.0, 2.0, 0.0),
            d3: Vector4::ZERO,
        })
    }
}

/// Flat parabolic profile with `p = μ₁s+μ₂` whose `x₁` is bent away from the
/// 1-type family: `x₁′ = ε ln(μ₁s+μ₂) + μ₄ + κs`, so `c = εμ₁/(μ₁s+μ₂) + κ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedParabolic {
    pub mu1: f64,
    pub mu2: f64,
    pub mu4: f64,
    pub epsilon: f64,
    pub kappa: f64,
    domain: Interval,
}

impl PerturbedParabolic {
    pub fn new(mu1: f64, mu2: f64, mu4: f64, epsilon: f64, kappa: f64, domain: Interval) -> Result<Self> {
        if mu1 == 0.0 || mu1 * domain.lo + mu2 <= 0.0 || mu1 * domain.hi + mu2 <= 0.0 {
            return Err(Error::Admissibility("mu1·s + mu2 must stay positive".into()));
        }
        Ok(PerturbedParabolic { mu1, mu2, mu4, epsilon, kappa, domain })
    }

    fn x1_jet(&self, s: f64) -> [f64; 4] {
        let (m1, e, k) = (self.mu1, self.epsilon, self.kappa);
        let w = m1 * s + self.mu2;
        let ln = w.ln();
        [
            e / m1 * w * ln + (self.mu4 - e) * s + 0.5 * k * s * s,
            e * ln + self.mu4 + k * s,
            e * m1 / w + k,
            -e * m1 * m1 / (w * w),
        ]
    }
}

impl ProfileCurve for PerturbedParabolic {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn kind(&self) -> Option<SurfaceKind> {
        Some(SurfaceKind::Parabolic)
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        let x1 = self.x1_jet(s);
        let [q1, q2, q3] = null_q_derivatives(&x1, self.mu1);
        let q = adaptive_simpson(|u| null_q_derivatives(&self.x1_jet(u), self.mu1)[0], self.domain.lo, s, POSITION_TOL);
        Ok(CurveJet::from_null(s, x1, [self.mu1 * s + self.mu2, self.mu1, 0.0, 0.0], [q, q1, q2, q3]))
    }
}
