//! Profile curves: the unit-speed spacelike curves that the rotations sweep.
//!
//! A curve is anything implementing [`ProfileCurve`]: it reports its working
//! interval and hands out a [`CurveJet`] (position plus derivatives up to
//! order three with respect to arc length) at any `s` in it.
//!
//! Curves described in JSON go through [`CurveSpec`], which validates the
//! family parameters and builds a [`Curve`].

mod families;
pub mod quadrature;
mod table;
pub mod witness;

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::algebra::{inner, Vector4};
use crate::error::{Error, Result};
use crate::surface::SurfaceKind;

pub use families::{
    EllipticConstantRadius, EllipticLinearRadius, HyperbolicConstantRadius, HyperbolicLinearRadius, ParabolicLinearNull,
};
pub use table::SampledCurve;

/// Tolerance used when deciding whether a normalizing denominator vanishes.
pub const ADMISSIBILITY_TOL: f64 = 1e-10;

/// A closed interval `[lo, hi]`, serialized as a two-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidSpec(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub(crate) fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain { value: x, lo: self.lo, hi: self.hi })
        }
    }

    /// `count` equally spaced points, keeping a relative `margin` clear of each end.
    pub fn grid(&self, count: usize, margin: f64) -> Vec<f64> {
        let lo = self.lo + margin * self.len();
        let hi = self.hi - margin * self.len();
        match count {
            0 => Vec::new(),
            1 => vec![0.5 * (lo + hi)],
            n => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Position and arc-length derivatives of a profile curve at `s`, in standard coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveJet {
    pub s: f64,
    pub x: Vector4,
    pub d1: Vector4,
    pub d2: Vector4,
    pub d3: Vector4,
}

/// The jet of a curve in `span{ε₁, ξ₂, ξ₃}` written in null coordinates
/// `x = x₁ε₁ + pξ₂ + qξ₃`. Each array holds the value and three derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullJet {
    pub x1: [f64; 4],
    pub p: [f64; 4],
    pub q: [f64; 4],
}

impl CurveJet {
    fn orders(&self) -> [Vector4; 4] {
        [self.x, self.d1, self.d2, self.d3]
    }

    /// `|⟨x′, x′⟩ − 1|`; the quadratic form reduces to the type-specific
    /// unit-speed condition for each of the three profile planes.
    pub fn unit_speed_residual(&self) -> f64 {
        (inner(self.d1, self.d1) - 1.0).abs()
    }

    /// `p = (x₂ + x₃)/√2`, `q = (−x₂ + x₃)/√2`, for every order.
    pub fn null_coords(&self) -> NullJet {
        let o = self.orders();
        NullJet {
            x1: o.map(|v| v.x1()),
            p: o.map(|v| (v.x2() + v.x3()) / SQRT_2),
            q: o.map(|v| (v.x3() - v.x2()) / SQRT_2),
        }
    }

    /// Builds a jet from null coordinates; inverse of [`CurveJet::null_coords`].
    pub fn from_null(s: f64, x1: [f64; 4], p: [f64; 4], q: [f64; 4]) -> Self {
        let v = |k: usize| Vector4::new(x1[k], (p[k] - q[k]) / SQRT_2, (p[k] + q[k]) / SQRT_2, 0.0);
        CurveJet { s, x: v(0), d1: v(1), d2: v(2), d3: v(3) }
    }
}

/// Something that can be swept into a rotational surface.
pub trait ProfileCurve {
    /// Interval of arc-length parameters on which the curve is defined.
    fn s_domain(&self) -> Interval;

    /// Position and derivatives up to order three at `s`.
    fn jet(&self, s: f64) -> Result<CurveJet>;

    /// The surface type this curve was written for, when it is fixed by construction.
    fn kind(&self) -> Option<SurfaceKind> {
        None
    }

    /// `false` when derivatives come from finite differences of sampled data.
    fn is_closed_form(&self) -> bool {
        true
    }
}

impl<C: ProfileCurve + ?Sized> ProfileCurve for &C {
    fn s_domain(&self) -> Interval {
        (**self).s_domain()
    }
    fn jet(&self, s: f64) -> Result<CurveJet> {
        (**self).jet(s)
    }
    fn kind(&self) -> Option<SurfaceKind> {
        (**self).kind()
    }
    fn is_closed_form(&self) -> bool {
        (**self).is_closed_form()
    }
}

impl<C: ProfileCurve + ?Sized> ProfileCurve for Box<C> {
    fn s_domain(&self) -> Interval {
        (**self).s_domain()
    }
    fn jet(&self, s: f64) -> Result<CurveJet> {
        (**self).jet(s)
    }
    fn kind(&self) -> Option<SurfaceKind> {
        (**self).kind()
    }
    fn is_closed_form(&self) -> bool {
        (**self).is_closed_form()
    }
}

/// Evaluates the jet of `curve` at `s`.
pub fn evaluate_jet<C: ProfileCurve + ?Sized>(curve: &C, s: f64) -> Result<CurveJet> {
    curve.jet(s)
}

/// Named curve families accepted in JSON specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Constant radius, circular `(x₁, x₂)` profile (flat, first kind).
    #[serde(rename = "elliptic_thm2_i")]
    EllipticThm2I,
    /// Linear radius, logarithmic-spiral angle (flat, second kind).
    #[serde(rename = "elliptic_thm2_ii")]
    EllipticThm2II,
    #[serde(rename = "hyperbolic_thm5_i")]
    HyperbolicThm5I,
    #[serde(rename = "hyperbolic_thm5_ii")]
    HyperbolicThm5II,
    #[serde(rename = "parabolic_thm7")]
    ParabolicThm7,
    /// Uniformly sampled table `[s, x₁, x₂, x₃, x₄]`.
    #[serde(rename = "custom_analytic")]
    CustomAnalytic,
}

impl Family {
    pub fn kind(self) -> Option<SurfaceKind> {
        match self {
            Family::EllipticThm2I | Family::EllipticThm2II => Some(SurfaceKind::Elliptic),
            Family::HyperbolicThm5I | Family::HyperbolicThm5II => Some(SurfaceKind::Hyperbolic),
            Family::ParabolicThm7 => Some(SurfaceKind::Parabolic),
            Family::CustomAnalytic => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::EllipticThm2I => "elliptic_thm2_i",
            Family::EllipticThm2II => "elliptic_thm2_ii",
            Family::HyperbolicThm5I => "hyperbolic_thm5_i",
            Family::HyperbolicThm5II => "hyperbolic_thm5_ii",
            Family::ParabolicThm7 => "parabolic_thm7",
            Family::CustomAnalytic => "custom_analytic",
        }
    }
}

/// JSON form of a profile curve:
/// `{"family": "...", "params": {...}, "s_domain": [a, b], "samples": [[s, x1, x2, x3, x4], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub family: Family,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub s_domain: Interval,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[f64; 5]>>,
}

impl CurveSpec {
    pub fn new(family: Family, params: &[(&str, f64)], s_domain: Interval) -> Self {
        CurveSpec { family, params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(), s_domain, samples: None }
    }

    /// Validates parameters and family invariants and returns the evaluable curve.
    pub fn build(&self) -> Result<Curve> {
        let p = Params::new(&self.params);
        let dom = self.s_domain;
        let curve = match self.family {
            Family::EllipticThm2I => {
                p.allow(&["delta1", "delta2", "delta3", "delta4", "delta4_x2"])?;
                let shift1 = p.opt("delta4", 0.0);
                Curve::EllipticConstantRadius(EllipticConstantRadius::new(
                    p.req("delta1")?,
                    p.opt("delta2", 0.0),
                    p.req("delta3")?,
                    shift1,
                    p.opt("delta4_x2", shift1),
                    dom,
                )?)
            }
            Family::EllipticThm2II => {
                p.allow(&["lambda1", "lambda2", "lambda3", "lambda4"])?;
                Curve::EllipticLinearRadius(EllipticLinearRadius::new(
                    p.req("lambda1")?,
                    p.req("lambda2")?,
                    p.req("lambda3")?,
                    p.opt("lambda4", 0.0),
                    dom,
                )?)
            }
            Family::HyperbolicThm5I => {
                p.allow(&["delta1", "delta2", "delta3", "delta4", "delta4_x4"])?;
                let shift2 = p.opt("delta4", 0.0);
                Curve::HyperbolicConstantRadius(HyperbolicConstantRadius::new(
                    p.req("delta1")?,
                    p.req("delta2")?,
                    p.opt("delta3", 0.0),
                    shift2,
                    p.opt("delta4_x4", shift2),
                    dom,
                )?)
            }
            Family::HyperbolicThm5II => {
                p.allow(&["lambda1", "lambda2", "lambda3", "lambda4"])?;
                Curve::HyperbolicLinearRadius(HyperbolicLinearRadius::new(
                    p.req("lambda1")?,
                    p.req("lambda2")?,
                    p.req("lambda3")?,
                    p.opt("lambda4", 0.0),
                    dom,
                )?)
            }
            Family::ParabolicThm7 => {
                p.allow(&["mu1", "mu2", "mu4", "mu5", "epsilon"])?;
                Curve::ParabolicLinearNull(ParabolicLinearNull::new(
                    p.req("mu1")?,
                    p.req("mu2")?,
                    p.opt("mu4", 0.0),
                    p.opt("mu5", 0.0),
                    p.opt("epsilon", 1.0),
                    dom,
                )?)
            }
            Family::CustomAnalytic => {
                p.allow(&[])?;
                let rows = self
                    .samples
                    .as_ref()
                    .ok_or_else(|| Error::InvalidSpec("custom_analytic curves need a \"samples\" table".into()))?;
                Curve::Sampled(SampledCurve::new(rows, Some(dom))?)
            }
        };
        if self.family != Family::CustomAnalytic && self.samples.is_some() {
            return Err(Error::InvalidSpec(format!(
                "\"samples\" is only accepted for custom_analytic, not {}",
                self.family.name()
            )));
        }
        Ok(curve)
    }
}

struct Params<'a>(&'a BTreeMap<String, f64>);

impl<'a> Params<'a> {
    fn new(map: &'a BTreeMap<String, f64>) -> Self {
        Params(map)
    }

    fn allow(&self, names: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !names.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidSpec(format!("unknown parameter {k:?}; expected one of {names:?}"))),
            None => Ok(()),
        }
    }

    fn req(&self, name: &str) -> Result<f64> {
        let v = *self.0.get(name).ok_or_else(|| Error::InvalidSpec(format!("missing parameter {name:?}")))?;
        finite(name, v)
    }

    fn opt(&self, name: &str, default: f64) -> f64 {
        self.0.get(name).copied().unwrap_or(default)
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidSpec(format!("parameter {name} must be finite")))
    }
}

/// Every curve the JSON layer can produce.
#[derive(Debug, Clone, PartialEq)]
pub enum Curve {
    EllipticConstantRadius(EllipticConstantRadius),
    EllipticLinearRadius(EllipticLinearRadius),
    HyperbolicConstantRadius(HyperbolicConstantRadius),
    HyperbolicLinearRadius(HyperbolicLinearRadius),
    ParabolicLinearNull(ParabolicLinearNull),
    Sampled(SampledCurve),
}

macro_rules! dispatch {
    ($self:ident, $c:ident => $e:expr) => {
        match $self {
            Curve::EllipticConstantRadius($c) => $e,
            Curve::EllipticLinearRadius($c) => $e,
            Curve::HyperbolicConstantRadius($c) => $e,
            Curve::HyperbolicLinearRadius($c) => $e,
            Curve::ParabolicLinearNull($c) => $e,
            Curve::Sampled($c) => $e,
        }
    };
}

impl ProfileCurve for Curve {
    fn s_domain(&self) -> Interval {
        dispatch!(self, c => c.s_domain())
    }
    fn jet(&self, s: f64) -> Result<CurveJet> {
        dispatch!(self, c => c.jet(s))
    }
    fn kind(&self) -> Option<SurfaceKind> {
        dispatch!(self, c => c.kind())
    }
    fn is_closed_form(&self) -> bool {
        dispatch!(self, c => c.is_closed_form())
    }
}

/// Per-point unit-speed residuals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitSpeedReport {
    /// `(s, |⟨x′, x′⟩ − 1|)` for every grid point.
    pub residuals: Vec<(f64, f64)>,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Checks `|⟨x′, x′⟩ − 1| ≤ tol` on every grid point.
pub fn check_unit_speed<C: ProfileCurve + ?Sized>(curve: &C, grid: &[f64], tol: f64) -> Result<UnitSpeedReport> {
    if grid.is_empty() {
        return Err(Error::InvalidParams("unit-speed check needs a nonempty grid".into()));
    }
    let residuals =
        grid.iter().map(|&s| curve.jet(s).map(|j| (s, j.unit_speed_residual()))).collect::<Result<Vec<_>>>()?;
    let max_residual = residuals.iter().fold(0.0_f64, |m, r| m.max(r.1));
    Ok(UnitSpeedReport { residuals, max_residual, tol, pass: max_residual <= tol })
}

/// Pointwise admissibility of a profile curve for a given surface type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Admissibility {
    /// `x₃ > 0` (elliptic), `x₁ > 0` (hyperbolic), `p > 0` (parabolic).
    pub positivity: bool,
    /// The normal frame can be normalized at this point.
    pub nondegenerate_normal: bool,
    /// Sign of `(x₁′)² − 1`, hyperbolic type only.
    pub epsilon: Option<f64>,
}

impl Admissibility {
    pub fn ok(&self) -> bool {
        self.positivity && self.nondegenerate_normal
    }
}

pub fn admissibility(kind: SurfaceKind, jet: &CurveJet, tol: f64) -> Admissibility {
    match kind {
        SurfaceKind::Elliptic => Admissibility {
            positivity: jet.x.x3() > 0.0,
            nondegenerate_normal: 1.0 + jet.d1.x3().powi(2) > tol,
            epsilon: None,
        },
        SurfaceKind::Hyperbolic => {
            let q = jet.d1.x1().powi(2) - 1.0;
            let nondegenerate = q.abs() > tol;
            Admissibility {
                positivity: jet.x.x1() > 0.0,
                nondegenerate_normal: nondegenerate,
                epsilon: nondegenerate.then(|| q.signum()),
            }
        }
        SurfaceKind::Parabolic => {
            let n = jet.null_coords();
            Admissibility { positivity: n.p[0] > 0.0, nondegenerate_normal: n.p[1].abs() > tol, epsilon: None }
        }
    }
}
