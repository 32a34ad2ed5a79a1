//! The closed-form profile families of the flat pointwise 1-type classification.
//!
//! Derivatives are exact. Coordinates that are only given as an integral of
//! their derivative are integrated from the left end of the domain with
//! constant zero.

use super::quadrature::{adaptive_simpson, POSITION_TOL};
use super::{CurveJet, Interval, ProfileCurve};
use crate::algebra::Vector4;
use crate::error::{Error, Result};
use crate::surface::SurfaceKind;

fn admissible(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Admissibility(msg()))
    }
}

fn linear_positive(name: &str, k: f64, c: f64, dom: Interval) -> Result<()> {
    // linear in s, so the endpoints decide
    admissible(k * dom.lo + c > 0.0 && k * dom.hi + c > 0.0, || {
        format!("{name}·s + const must stay positive on [{}, {}]", dom.lo, dom.hi)
    })
}

/// `x₁ = −sin(−δ₁s+δ₂)/δ₁ + t₁`, `x₂ = cos(−δ₁s+δ₂)/δ₁ + t₂`, `x₃ = δ₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticConstantRadius {
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub shift1: f64,
    pub shift2: f64,
    pub domain: Interval,
}

impl EllipticConstantRadius {
    pub fn new(delta1: f64, delta2: f64, delta3: f64, shift1: f64, shift2: f64, domain: Interval) -> Result<Self> {
        admissible(delta1 != 0.0, || "delta1 must be nonzero".into())?;
        admissible(delta3 > 0.0, || "delta3 (the radius x3) must be positive".into())?;
        Ok(EllipticConstantRadius { delta1, delta2, delta3, shift1, shift2, domain })
    }

    /// `f = δ₁² − 1/δ₃²`.
    pub fn expected_f(&self) -> f64 {
        self.delta1.powi(2) - self.delta3.powi(-2)
    }
}

impl ProfileCurve for EllipticConstantRadius {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn kind(&self) -> Option<SurfaceKind> {
        Some(SurfaceKind::Elliptic)
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        let k = self.delta1;
        let (sin, cos) = (-k * s + self.delta2).sin_cos();
        Ok(CurveJet {
            s,
            x: Vector4::new(-sin / k + self.shift1, cos / k + self.shift2, self.delta3, 0.0),
            d1: Vector4::new(cos, sin, 0.0, 0.0),
            d2: Vector4::new(k * sin, -k * cos, 0.0, 0.0),
            d3: Vector4::new(-k * k * cos, -k * k * sin, 0.0, 0.0),
        })
    }
}

/// `x₃ = λ₁s+λ₂` with `(x₁′, x₂′) = √(1+λ₁²)(cos φ, sin φ)`,
/// `φ = −λ₃/(λ₁√(1+λ₁²)) ln(λ₁s+λ₂) + λ₄`.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticLinearRadius {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
    pub domain: Interval,
}

impl EllipticLinearRadius {
    pub fn new(lambda1: f64, lambda2: f64, lambda3: f64, lambda4: f64, domain: Interval) -> Result<Self> {
        admissible(lambda1 != 0.0, || "lambda1 must be nonzero".into())?;
        linear_positive("lambda1", lambda1, lambda2, domain)?;
        Ok(EllipticLinearRadius { lambda1, lambda2, lambda3, lambda4, domain })
    }

    fn speed(&self) -> f64 {
        (1.0 + self.lambda1 * self.lambda1).sqrt()
    }

    /// Angle and its first three derivatives.
    fn angle(&self, s: f64) -> [f64; 4] {
        let (l1, l3) = (self.lambda1, self.lambda3);
        let r = self.speed();
        let w = l1 * s + self.lambda2;
        [
            -l3 / (l1 * r) * w.ln() + self.lambda4,
            -l3 / (r * w),
            l3 * l1 / (r * w * w),
            -2.0 * l3 * l1 * l1 / (r * w * w * w),
        ]
    }

    fn velocity(&self, s: f64) -> (f64, f64) {
        let r = self.speed();
        let (sin, cos) = self.angle(s)[0].sin_cos();
        (r * cos, r * sin)
    }

    /// `f(s) = (λ₃²/(1+λ₁²) − 1)/(λ₁s+λ₂)²`.
    pub fn expected_f(&self, s: f64) -> f64 {
        let w = self.lambda1 * s + self.lambda2;
        (self.lambda3.powi(2) / (1.0 + self.lambda1.powi(2)) - 1.0) / (w * w)
    }

    /// Frame coefficients of the constant vector along `(e₁∧e₂, e₂∧e₄)`.
    pub fn expected_c_frame(&self) -> (f64, f64) {
        (self.lambda1.powi(2), self.lambda1 * self.speed())
    }
}

impl ProfileCurve for EllipticLinearRadius {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn kind(&self) -> Option<SurfaceKind> {
        Some(SurfaceKind::Elliptic)
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        let r = self.speed();
        let [phi, p1, p2, _] = self.angle(s);
        let (sin, cos) = phi.sin_cos();
        let lo = self.domain.lo;
        let x1 = adaptive_simpson(|u| self.velocity(u).0, lo, s, POSITION_TOL);
        let x2 = adaptive_simpson(|u| self.velocity(u).1, lo, s, POSITION_TOL);
        Ok(CurveJet {
            s,
            x: Vector4::new(x1, x2, self.lambda1 * s + self.lambda2, 0.0),
            d1: Vector4::new(r * cos, r * sin, self.lambda1, 0.0),
            d2: Vector4::new(-r * sin * p1, r * cos * p1, 0.0, 0.0),
            d3: Vector4::new(-r * (cos * p1 * p1 + sin * p2), r * (-sin * p1 * p1 + cos * p2), 0.0, 0.0),
        })
    }
}

/// `x₁ = δ₁`, `x₂ = −sinh(−δ₂s+δ₃)/δ₂ + t₂`, `x₄ = −cosh(−δ₂s+δ₃)/δ₂ + t₄`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicConstantRadius {
    pub delta1: f64,
    pub delta2: f64,
    pub delta3: f64,
    pub shift2: f64,
    pub shift4: f64,
    pub domain: Interval,
}

impl HyperbolicConstantRadius {
    pub fn new(delta1: f64, delta2: f64, delta3: f64, shift2: f64, shift4: f64, domain: Interval) -> Result<Self> {
        admissible(delta1 > 0.0, || "delta1 (the radius x1) must be positive".into())?;
        admissible(delta2 != 0.0, || "delta2 must be nonzero".into())?;
        Ok(HyperbolicConstantRadius { delta1, delta2, delta3, shift2, shift4, domain })
    }

    /// `f = 1/δ₁² − δ₂²`.
    pub fn expected_f(&self) -> f64 {
        self.delta1.powi(-2) - self.delta2.powi(2)
    }
}

impl ProfileCurve for HyperbolicConstantRadius {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn kind(&self) -> Option<SurfaceKind> {
        Some(SurfaceKind::Hyperbolic)
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        let k = self.delta2;
        let u = -k * s + self.delta3;
        let (sh, ch) = (u.sinh(), u.cosh());
        Ok(CurveJet {
            s,
            x: Vector4::new(self.delta1, -sh / k + self.shift2, 0.0, -ch / k + self.shift4),
            d1: Vector4::new(0.0, ch, 0.0, sh),
            d2: Vector4::new(0.0, -k * sh, 0.0, -k * ch),
            d3: Vector4::new(0.0, k * k * ch, 0.0, k * k * sh),
        })
    }
}

/// `x₁ = λ₁s+λ₂` with `(x₂′, x₄′) = √(λ₁²−1)(sinh ψ, cosh ψ)`,
/// `ψ = λ₃/(λ₁√(λ₁²−1)) ln(λ₁s+λ₂) + λ₄`. Requires `λ₁² > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicLinearRadius {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
    pub domain: Interval,
}

impl HyperbolicLinearRadius {
    pub fn new(lambda1: f64, lambda2: f64, lambda3: f64, lambda4: f64, domain: Interval) -> Result<Self> {
        admissible(lambda1 * lambda1 - 1.0 > 0.0, || "lambda1² − 1 must be positive".into())?;
        linear_positive("lambda1", lambda1, lambda2, domain)?;
        Ok(HyperbolicLinearRadius { lambda1, lambda2, lambda3, lambda4, domain })
    }

    fn speed(&self) -> f64 {
        (self.lambda1 * self.lambda1 - 1.0).sqrt()
    }

    fn angle(&self, s: f64) -> [f64; 3] {
        let (l1, l3) = (self.lambda1, self.lambda3);
        let r = self.speed();
        let w = l1 * s + self.lambda2;
        [l3 / (l1 * r) * w.ln() + self.lambda4, l3 / (r * w), -l3 * l1 / (r * w * w)]
    }

    fn velocity(&self, s: f64) -> (f64, f64) {
        let r = self.speed();
        let psi = self.angle(s)[0];
        (r * psi.sinh(), r * psi.cosh())
    }

    /// `f(s) = (1 − λ₃²/(λ₁²−1))/(λ₁s+λ₂)²`.
    pub fn expected_f(&self, s: f64) -> f64 {
        let w = self.lambda1 * s + self.lambda2;
        (1.0 - self.lambda3.powi(2) / (self.lambda1.powi(2) - 1.0)) / (w * w)
    }

    /// Frame coefficients of the constant vector along `(e₁∧e₂, e₂∧e₄)`.
    pub fn expected_c_frame(&self) -> (f64, f64) {
        (-self.lambda1.powi(2), self.lambda1 * self.speed())
    }
}

impl ProfileCurve for HyperbolicLinearRadius {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn kind(&self) -> Option<SurfaceKind> {
        Some(SurfaceKind::Hyperbolic)
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        let r = self.speed();
        let [psi, p1, p2] = self.angle(s);
        let (sh, ch) = (psi.sinh(), psi.cosh());
        let lo = self.domain.lo;
        let x2 = adaptive_simpson(|u| self.velocity(u).0, lo, s, POSITION_TOL);
        let x4 = adaptive_simpson(|u| self.velocity(u).1, lo, s, POSITION_TOL);
        Ok(CurveJet {
            s,
            x: Vector4::new(self.lambda1 * s + self.lambda2, x2, 0.0, x4),
            d1: Vector4::new(self.lambda1, r * sh, 0.0, r * ch),
            d2: Vector4::new(0.0, r * ch * p1, 0.0, r * sh * p1),
            d3: Vector4::new(0.0, r * (sh * p1 * p1 + ch * p2), 0.0, r * (ch * p1 * p1 + sh * p2)),
        })
    }
}

/// `p = μ₁s+μ₂`, `x₁ = (ε/μ₁)(μ₁s+μ₂)ln(μ₁s+μ₂) + (μ₄−ε)s + μ₅`, and `q` from
/// the unit-speed condition `q′ = ((x₁′)² − 1)/(2p′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicLinearNull {
    pub mu1: f64,
    pub mu2: f64,
    pub mu4: f64,
    pub mu5: f64,
    pub epsilon: f64,
    pub domain: Interval,
}

impl ParabolicLinearNull {
    pub fn new(mu1: f64, mu2: f64, mu4: f64, mu5: f64, epsilon: f64, domain: Interval) -> Result<Self> {
        admissible(mu1 != 0.0, || "mu1 must be nonzero".into())?;
        admissible(epsilon == 1.0 || epsilon == -1.0, || "epsilon must be +1 or -1".into())?;
        linear_positive("mu1", mu1, mu2, domain)?;
        Ok(ParabolicLinearNull { mu1, mu2, mu4, mu5, epsilon, domain })
    }

    fn x1_jet(&self, s: f64) -> [f64; 4] {
        let (m1, e) = (self.mu1, self.epsilon);
        let w = m1 * s + self.mu2;
        let ln = w.ln();
        [e / m1 * w * ln + (self.mu4 - e) * s + self.mu5, e * ln + self.mu4, e * m1 / w, -e * m1 * m1 / (w * w)]
    }
}

/// `q′, q″, q‴` from `q′ = ((x₁′)² − 1)/(2p′)` with `p″ = 0`.
pub(crate) fn null_q_derivatives(x1: &[f64; 4], dp: f64) -> [f64; 3] {
    [(x1[1] * x1[1] - 1.0) / (2.0 * dp), x1[1] * x1[2] / dp, (x1[2] * x1[2] + x1[1] * x1[3]) / dp]
}

impl ProfileCurve for ParabolicLinearNull {
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
        let p = [self.mu1 * s + self.mu2, self.mu1, 0.0, 0.0];
        Ok(CurveJet::from_null(s, x1, p, [q, q1, q2, q3]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{check_unit_speed, CurveSpec, Family};
    use std::f64::consts::SQRT_2;

    fn dom(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn assert_vec(v: Vector4, want: [f64; 4], tol: f64) {
        for k in 0..4 {
            assert!((v[k] - want[k]).abs() <= tol, "{v:?} vs {want:?}");
        }
    }

    #[test]
    fn elliptic_constant_radius_at_origin() {
        let c = EllipticConstantRadius::new(1.0, 0.0, 1.0, 0.0, 0.0, dom(0.0, 1.0)).unwrap();
        let j = c.jet(0.0).unwrap();
        assert_vec(j.x, [0.0, 1.0, 1.0, 0.0], 1e-15);
        assert_vec(j.d1, [1.0, 0.0, 0.0, 0.0], 1e-15);
    }

    #[test]
    fn elliptic_linear_radius_constant_angle() {
        let c = EllipticLinearRadius::new(1.0, 1.0, 0.0, 0.0, dom(0.0, 1.0)).unwrap();
        let j = c.jet(0.0).unwrap();
        assert_vec(j.d1, [SQRT_2, 0.0, 1.0, 0.0], 1e-15);
        assert_vec(j.x, [0.0, 0.0, 1.0, 0.0], 1e-15);
    }

    #[test]
    fn parabolic_null_coordinates_at_origin() {
        let c = ParabolicLinearNull::new(1.0, 1.0, 0.0, 0.0, 1.0, dom(0.0, 2.0)).unwrap();
        let n = c.jet(0.0).unwrap().null_coords();
        assert!((n.p[0] - 1.0).abs() < 1e-15);
        assert!((n.p[1] - 1.0).abs() < 1e-15);
        assert!(n.p[2].abs() < 1e-15);
        assert!(n.q[0].abs() < 1e-15);
    }

    #[test]
    fn family_invariants_are_enforced() {
        let d = dom(0.0, 1.0);
        assert!(EllipticConstantRadius::new(0.0, 0.0, 1.0, 0.0, 0.0, d).is_err());
        assert!(EllipticConstantRadius::new(1.0, 0.0, -1.0, 0.0, 0.0, d).is_err());
        assert!(EllipticLinearRadius::new(1.0, -0.5, 1.0, 0.0, d).is_err());
        assert!(HyperbolicConstantRadius::new(-1.0, 1.0, 0.0, 0.0, 0.0, d).is_err());
        assert!(HyperbolicLinearRadius::new(0.5, 1.0, 1.0, 0.0, d).is_err());
        assert!(ParabolicLinearNull::new(1.0, -2.0, 0.0, 0.0, 1.0, d).is_err());
        assert!(ParabolicLinearNull::new(1.0, 1.0, 0.0, 0.0, 0.5, d).is_err());
        assert!(matches!(
            EllipticConstantRadius::new(1.0, 0.0, 1.0, 0.0, 0.0, d).unwrap().jet(1.5),
            Err(Error::Domain { .. })
        ));
    }

    fn builtins() -> Vec<crate::profile::Curve> {
        let d = dom(0.0, 2.0);
        [
            CurveSpec::new(Family::EllipticThm2I, &[("delta1", 2.0), ("delta2", 0.3), ("delta3", 1.0)], d),
            CurveSpec::new(
                Family::EllipticThm2II,
                &[("lambda1", 1.0), ("lambda2", 1.0), ("lambda3", 2.0), ("lambda4", 0.4)],
                d,
            ),
            CurveSpec::new(Family::HyperbolicThm5I, &[("delta1", 1.0), ("delta2", 2.0), ("delta3", 0.1)], d),
            CurveSpec::new(
                Family::HyperbolicThm5II,
                &[("lambda1", 2.0), ("lambda2", 1.0), ("lambda3", 1.0), ("lambda4", -0.2)],
                d,
            ),
            CurveSpec::new(Family::ParabolicThm7, &[("mu1", 1.0), ("mu2", 1.0), ("mu4", 0.0), ("epsilon", 1.0)], d),
            CurveSpec::new(
                Family::ParabolicThm7,
                &[("mu1", 2.0), ("mu2", 1.0), ("mu4", 1.0), ("mu5", 0.5), ("epsilon", -1.0)],
                d,
            ),
        ]
        .iter()
        .map(|s| s.build().unwrap())
        .collect()
    }

    #[test]
    fn builtins_are_unit_speed() {
        let grid = dom(0.0, 2.0).grid(100, 0.0);
        for c in builtins() {
            let r = check_unit_speed(&c, &grid, 1e-10).unwrap();
            assert!(r.pass, "{c:?}: {}", r.max_residual);
        }
    }

    #[test]
    fn derivatives_match_central_differences() {
        let h = 1e-4;
        let grid = dom(0.0, 2.0).grid(17, 0.05);
        for c in builtins() {
            for &s in &grid {
                let j = c.jet(s).unwrap();
                let (jp, jm) = (c.jet(s + h).unwrap(), c.jet(s - h).unwrap());
                let fd1 = (1.0 / (2.0 * h)) * (jp.x - jm.x);
                let fd2 = (1.0 / (2.0 * h)) * (jp.d1 - jm.d1);
                let fd3 = (1.0 / (2.0 * h)) * (jp.d2 - jm.d2);
                assert!((fd1 - j.d1).max_abs() < 1e-6, "{c:?} s={s}: {:?}", fd1 - j.d1);
                assert!((fd2 - j.d2).max_abs() < 1e-6, "{c:?} s={s}");
                assert!((fd3 - j.d3).max_abs() < 1e-6, "{c:?} s={s}");
            }
        }
    }

    #[test]
    fn translations_only_move_positions() {
        let d = dom(0.0, 1.0);
        let a = EllipticConstantRadius::new(1.5, 0.2, 2.0, 0.0, 0.0, d).unwrap();
        let b = EllipticConstantRadius::new(1.5, 0.2, 2.0, 3.0, -1.0, d).unwrap();
        let h1 = HyperbolicConstantRadius::new(1.5, 0.7, 0.2, 0.0, 0.0, d).unwrap();
        let h2 = HyperbolicConstantRadius::new(1.5, 0.7, 0.2, 2.0, 5.0, d).unwrap();
        let p1 = ParabolicLinearNull::new(1.0, 1.0, 0.3, 0.0, 1.0, d).unwrap();
        let p2 = ParabolicLinearNull::new(1.0, 1.0, 0.3, -4.0, 1.0, d).unwrap();
        for s in d.grid(9, 0.0) {
            for (x, y) in [
                (a.jet(s).unwrap(), b.jet(s).unwrap()),
                (h1.jet(s).unwrap(), h2.jet(s).unwrap()),
                (p1.jet(s).unwrap(), p2.jet(s).unwrap()),
            ] {
                assert_eq!((x.d1, x.d2, x.d3), (y.d1, y.d2, y.d3));
                assert_ne!(x.x, y.x);
            }
        }
    }
}
