//! Numerical checks of the classification statements, one report line per
//! implication.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{
    classify, classify_default, gather_samples, is_parallel_mean_curvature, recover_f_and_c, ClassificationResult,
    LaplacianSource, Tolerances, Verdict, DEFAULT_MARGIN, DEFAULT_S_COUNT, PARALLEL_TOL,
};
use crate::algebra::Bivector6;
use crate::error::{Error, Result};
use crate::gauss::from_frame_coordinates;
use crate::profile::witness::{MinimalElliptic, MinimalHyperbolic, PerturbedParabolic, QuadraticRadiusElliptic};
use crate::profile::{Curve, CurveSpec, Family, Interval, ProfileCurve};
use crate::surface::{DynSurface, RotationalSurface, SurfaceKind, SurfaceSpec};

pub const FLAT_TOL: f64 = 1e-10;
pub const HARMONIC_COEFF_TOL: f64 = 1e-9;
pub const HARMONIC_DELTA_G_TOL: f64 = 1e-8;
pub const CONSTANT_K_TOL: f64 = 1e-8;
pub const MINIMAL_TOL: f64 = 1e-9;
/// Agreement of `f` with the constant formulas.
pub const F_CONSTANT_FORMULA_TOL: f64 = 1e-8;
/// Agreement of `f` with the `s`-dependent formulas, relative.
pub const F_FORMULA_TOL: f64 = 1e-6;
pub const C_TOL: f64 = 1e-6;
pub const RESIDUAL_TOL: f64 = 1e-6;
/// Slope added to `x₁′` for the off-family parabolic curve.
pub const PERTURBATION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    C1,
    C2,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::C1,
        TheoremId::C2,
    ];

    pub fn kind(self) -> SurfaceKind {
        use TheoremId::*;
        match self {
            T1 | T2 | T3 | C1 => SurfaceKind::Elliptic,
            T4 | T5 | T6 | C2 => SurfaceKind::Hyperbolic,
            T7 | T8 => SurfaceKind::Parabolic,
        }
    }

    pub fn statement(self) -> &'static str {
        use TheoremId::*;
        match self {
            T1 => "elliptic: harmonic Gauss map implies constant Gaussian curvature",
            T2 => "elliptic: flat pointwise 1-type surfaces are the constant-radius and linear-radius families",
            T3 => "elliptic: first kind iff parallel mean curvature",
            T4 => "hyperbolic: harmonic Gauss map implies constant Gaussian curvature",
            T5 => "hyperbolic: flat pointwise 1-type surfaces are the constant-radius and linear-radius families",
            T6 => "hyperbolic: first kind iff parallel mean curvature",
            T7 => "parabolic: flat pointwise 1-type surfaces have the logarithmic profile and harmonic Gauss map",
            T8 => "parabolic, flat: first kind iff parallel mean curvature",
            C1 => "elliptic: minimal implies first kind",
            C2 => "hyperbolic: minimal implies first kind",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown theorem id {s:?}; expected T1..T8, C1 or C2")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportLine {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ReportLine {
    fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        ReportLine { name: name.into(), pass: measured <= threshold, measured, threshold, detail: None }
    }

    fn above(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        ReportLine { name: name.into(), pass: measured > threshold, measured, threshold, detail: None }
    }

    fn verdict(name: impl Into<String>, r: &ClassificationResult, allowed: &[Verdict]) -> Self {
        let names: Vec<&str> = allowed.iter().map(|v| v.name()).collect();
        ReportLine {
            name: name.into(),
            pass: allowed.contains(&r.verdict),
            measured: r.residual,
            threshold: Tolerances::CLOSED_FORM.residual,
            detail: Some(format!("verdict {} (expected {})", r.verdict.name(), names.join(" or "))),
        }
    }

    fn agreement(name: impl Into<String>, left: bool, right: bool, measured: f64, threshold: f64, what: &str) -> Self {
        ReportLine {
            name: name.into(),
            pass: left == right,
            measured,
            threshold,
            detail: Some(format!("{what}: parallel = {left}, first kind or harmonic = {right}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub theorem: TheoremId,
    pub statement: &'static str,
    pub pass: bool,
    pub lines: Vec<ReportLine>,
}

impl Report {
    fn new(theorem: TheoremId, lines: Vec<ReportLine>) -> Self {
        Report { theorem, statement: theorem.statement(), pass: lines.iter().all(|l| l.pass), lines }
    }
}

fn dom(a: f64, b: f64) -> Interval {
    Interval { lo: a, hi: b }
}

fn default_spec(kind: SurfaceKind, family: Family, params: &[(&str, f64)]) -> SurfaceSpec {
    SurfaceSpec { kind, curve: CurveSpec::new(family, params, dom(0.0, 1.0)), t_domain: dom(-1.0, 1.0) }
}

/// The instance checked when no spec is supplied.
pub fn default_spec_for(id: TheoremId) -> Option<SurfaceSpec> {
    use Family::*;
    use SurfaceKind::*;
    Some(match id {
        TheoremId::T1 => default_spec(Elliptic, EllipticThm2I, &[("delta1", 1.0), ("delta3", 1.0)]),
        TheoremId::T2 => default_spec(Elliptic, EllipticThm2I, &[("delta1", 2.0), ("delta3", 1.0)]),
        TheoremId::T4 => default_spec(Hyperbolic, HyperbolicThm5I, &[("delta1", 1.0), ("delta2", 1.0)]),
        TheoremId::T5 => default_spec(Hyperbolic, HyperbolicThm5I, &[("delta1", 1.0), ("delta2", 2.0)]),
        TheoremId::T7 => {
            default_spec(Parabolic, ParabolicThm7, &[("mu1", 1.0), ("mu2", 1.0), ("mu4", 0.0), ("epsilon", 1.0)])
        }
        _ => return None,
    })
}

fn boxed<C: ProfileCurve + Send + Sync + 'static>(kind: SurfaceKind, curve: C, t: Interval) -> Result<DynSurface> {
    Ok(RotationalSurface::new(kind, curve, t)?.into_dyn())
}

pub fn minimal_elliptic() -> DynSurface {
    boxed(SurfaceKind::Elliptic, MinimalElliptic::new(dom(-0.5, 0.5)).expect("valid domain"), dom(-1.0, 1.0))
        .expect("admissible witness")
}

pub fn minimal_hyperbolic() -> DynSurface {
    boxed(SurfaceKind::Hyperbolic, MinimalHyperbolic::new(dom(-1.0, 1.0)), dom(-1.0, 1.0)).expect("admissible witness")
}

/// Elliptic surface over `x = (s², s, s²+1, 0)`: neither parallel nor 1-type.
pub fn quadratic_radius_elliptic() -> DynSurface {
    boxed(SurfaceKind::Elliptic, QuadraticRadiusElliptic::new(dom(0.0, 1.0)), dom(-1.0, 1.0))
        .expect("admissible witness")
}

/// The flat off-family parabolic surface next to the given logarithmic profile.
pub fn perturbed_parabolic(
    mu1: f64,
    mu2: f64,
    mu4: f64,
    epsilon: f64,
    s_domain: Interval,
    t_domain: Interval,
) -> Result<DynSurface> {
    boxed(SurfaceKind::Parabolic, PerturbedParabolic::new(mu1, mu2, mu4, epsilon, PERTURBATION, s_domain)?, t_domain)
}

/// Named surfaces over which the parallel/first-kind equivalence is checked.
pub fn equivalence_instances(kind: SurfaceKind) -> Vec<(String, DynSurface)> {
    use Family::*;
    let family = |family: Family, params: &[(&str, f64)]| {
        let spec = default_spec(kind, family, params);
        let label = format!("{} {:?}", family.name(), params);
        (label, spec.build().expect("valid default instance").into_dyn())
    };
    match kind {
        SurfaceKind::Elliptic => vec![
            family(EllipticThm2I, &[("delta1", 2.0), ("delta3", 1.0)]),
            family(EllipticThm2I, &[("delta1", 1.0), ("delta3", 2.0)]),
            family(EllipticThm2I, &[("delta1", 3.0), ("delta3", 0.5)]),
            family(EllipticThm2I, &[("delta1", 1.0), ("delta3", 1.0)]),
            family(EllipticThm2II, &[("lambda1", 1.0), ("lambda2", 1.0), ("lambda3", 2.0)]),
            family(EllipticThm2II, &[("lambda1", 2.0), ("lambda2", 1.0), ("lambda3", 1.0)]),
            ("minimal elliptic witness".into(), minimal_elliptic()),
            ("quadratic-radius elliptic counterexample".into(), quadratic_radius_elliptic()),
        ],
        SurfaceKind::Hyperbolic => vec![
            family(HyperbolicThm5I, &[("delta1", 1.0), ("delta2", 2.0)]),
            family(HyperbolicThm5I, &[("delta1", 2.0), ("delta2", 1.0)]),
            family(HyperbolicThm5I, &[("delta1", 0.5), ("delta2", 3.0)]),
            family(HyperbolicThm5I, &[("delta1", 1.0), ("delta2", 1.0)]),
            family(HyperbolicThm5II, &[("lambda1", 2.0), ("lambda2", 1.0), ("lambda3", 1.0)]),
            family(HyperbolicThm5II, &[("lambda1", 2f64.sqrt()), ("lambda2", 1.0), ("lambda3", 2.0)]),
            ("minimal hyperbolic witness".into(), minimal_hyperbolic()),
        ],
        SurfaceKind::Parabolic => vec![
            family(ParabolicThm7, &[("mu1", 1.0), ("mu2", 1.0), ("mu4", 0.0), ("epsilon", 1.0)]),
            family(ParabolicThm7, &[("mu1", 2.0), ("mu2", 1.0), ("mu4", 1.0), ("epsilon", -1.0)]),
            (
                "perturbed parabolic".into(),
                perturbed_parabolic(1.0, 1.0, 0.0, 1.0, dom(0.0, 1.0), dom(-1.0, 1.0)).expect("admissible"),
            ),
        ],
    }
}

fn default_grid<C: ProfileCurve>(surf: &RotationalSurface<C>) -> Vec<f64> {
    surf.s_domain().grid(DEFAULT_S_COUNT, DEFAULT_MARGIN)
}

fn stdev(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n).sqrt()
}

/// `max |K|` on the default grid.
pub fn max_abs_curvature<C: ProfileCurve>(surf: &RotationalSurface<C>) -> Result<f64> {
    default_grid(surf).iter().try_fold(0.0_f64, |m, &s| Ok(m.max(surf.scalar_invariants(s)?.k.abs())))
}

/// `max(|L|, |M|, |N|)` on the default grid.
pub fn max_laplacian_coeff<C: ProfileCurve>(surf: &RotationalSurface<C>) -> Result<f64> {
    default_grid(surf)
        .iter()
        .try_fold(0.0_f64, |m, &s| Ok(surf.laplacian_coeffs(s)?.iter().fold(m, |m, x| m.max(x.abs()))))
}

fn max_mean_curvature<C: ProfileCurve>(surf: &RotationalSurface<C>) -> Result<f64> {
    default_grid(surf).iter().try_fold(0.0_f64, |m, &s| {
        let h = surf.scalar_invariants(s)?.h_coeffs;
        Ok(m.max(h[0].abs()).max(h[1].abs()))
    })
}

fn require_kind(id: TheoremId, spec: &SurfaceSpec) -> Result<()> {
    if spec.kind != id.kind() {
        return Err(Error::InvalidParams(format!(
            "{id} concerns {} surfaces, got {}",
            id.kind().name(),
            spec.kind.name()
        )));
    }
    Ok(())
}

fn require_family(id: TheoremId, spec: &SurfaceSpec, families: &[Family]) -> Result<()> {
    require_kind(id, spec)?;
    if !families.contains(&spec.curve.family) {
        let names: Vec<&str> = families.iter().map(|f| f.name()).collect();
        return Err(Error::InvalidParams(format!(
            "{id} needs a curve from {names:?}, got {}",
            spec.curve.family.name()
        )));
    }
    Ok(())
}

/// Runs the check for `id` on `spec`, or on the default instances when `None`.
pub fn verify_theorem(id: TheoremId, spec: Option<&SurfaceSpec>) -> Result<Report> {
    use TheoremId::*;
    let fallback = default_spec_for(id);
    let spec = spec.or(fallback.as_ref());
    let lines = match id {
        T1 | T4 => harmonic_constant_curvature(id, spec.expect("default exists"))?,
        T2 | T5 => flat_classification(id, spec.expect("default exists"))?,
        T7 => parabolic_flat(spec.expect("default exists"))?,
        T3 | T6 | T8 => match spec {
            Some(spec) => {
                require_kind(id, spec)?;
                let surf = spec.build()?;
                if id == T8 {
                    let k = max_abs_curvature(&surf)?;
                    if k > FLAT_TOL {
                        return Err(Error::InvalidParams(format!("T8 concerns flat surfaces; max |K| = {k:e}")));
                    }
                }
                vec![equivalence_line(spec.curve.family.name(), &surf)?]
            }
            None => equivalence_instances(id.kind())
                .iter()
                .map(|(name, surf)| equivalence_line(name, surf))
                .collect::<Result<_>>()?,
        },
        C1 | C2 => match spec {
            Some(spec) => {
                require_kind(id, spec)?;
                minimal_first_kind(&spec.build()?, true)?
            }
            None if id == C1 => minimal_first_kind(&minimal_elliptic(), false)?,
            None => minimal_first_kind(&minimal_hyperbolic(), false)?,
        },
    };
    Ok(Report::new(id, lines))
}

fn harmonic_constant_curvature(id: TheoremId, spec: &SurfaceSpec) -> Result<Vec<ReportLine>> {
    require_kind(id, spec)?;
    let surf = spec.build()?;
    let coeff = max_laplacian_coeff(&surf)?;
    if coeff > HARMONIC_COEFF_TOL {
        return Err(Error::InvalidParams(format!("{id} needs a harmonic instance; max(|L|,|M|,|N|) = {coeff:e}")));
    }
    let grid = default_grid(&surf);
    let inv = grid.iter().map(|&s| surf.scalar_invariants(s)).collect::<Result<Vec<_>>>()?;
    let k: Vec<f64> = inv.iter().map(|x| x.k).collect();
    let bc: Vec<f64> = inv.iter().map(|x| x.b * x.c).collect();
    Ok(vec![
        ReportLine::at_most("harmonic premise: max(|L|,|M|,|N|)", coeff, HARMONIC_COEFF_TOL),
        ReportLine::at_most("K constant: stdev(K)", stdev(&k), CONSTANT_K_TOL),
        ReportLine::at_most("b*c constant: stdev(b*c)", stdev(&bc), CONSTANT_K_TOL),
    ])
}

/// Expected `f(s)`, and the frame coefficients of `C` along `(e₁∧e₂, e₂∧e₄)` when `C ≠ 0`.
pub type FamilyExpectation<'a> = (Box<dyn Fn(f64) -> f64 + 'a>, Option<(f64, f64)>);

pub fn family_expectation(curve: &Curve) -> Option<FamilyExpectation<'_>> {
    match curve {
        Curve::EllipticConstantRadius(c) => Some((Box::new(move |_| c.expected_f()), None)),
        Curve::HyperbolicConstantRadius(c) => Some((Box::new(move |_| c.expected_f()), None)),
        Curve::EllipticLinearRadius(c) => Some((Box::new(move |s| c.expected_f(s)), Some(c.expected_c_frame()))),
        Curve::HyperbolicLinearRadius(c) => Some((Box::new(move |s| c.expected_f(s)), Some(c.expected_c_frame()))),
        Curve::ParabolicLinearNull(_) => Some((Box::new(|_| 0.0), None)),
        Curve::Sampled(_) => None,
    }
}

fn flat_classification(id: TheoremId, spec: &SurfaceSpec) -> Result<Vec<ReportLine>> {
    let families = match id {
        TheoremId::T2 => [Family::EllipticThm2I, Family::EllipticThm2II],
        _ => [Family::HyperbolicThm5I, Family::HyperbolicThm5II],
    };
    require_family(id, spec, &families)?;
    let surf = spec.build()?;
    let (expected_f, c_frame) = family_expectation(surf.curve()).expect("closed-form family");
    let grid = default_grid(&surf);
    let t = surf.t_domain().midpoint();

    let mut lines = vec![ReportLine::at_most("flat: max |K|", max_abs_curvature(&surf)?, FLAT_TOL)];
    let mut result = classify_default(&surf)?;
    let harmonic = grid.iter().all(|&s| expected_f(s) == 0.0);
    let expected = match (harmonic, c_frame.is_some()) {
        (true, _) => Verdict::Harmonic,
        (false, false) => Verdict::FirstKind,
        (false, true) => Verdict::SecondKind,
    };
    lines.push(ReportLine::verdict("verdict", &result, &[expected]));
    if harmonic {
        lines.push(ReportLine::at_most("harmonic: max |deltaG|", result.max_delta_g, HARMONIC_DELTA_G_TOL));
        return Ok(lines);
    }
    let tol = if c_frame.is_some() { F_FORMULA_TOL } else { F_CONSTANT_FORMULA_TOL };
    let m = result.match_f(&expected_f, tol);
    lines.push(ReportLine::at_most("f matches formula: max relative error", m.max_rel_error, tol));
    if let Some(c_frame) = c_frame {
        lines.push(ReportLine::at_most("least-squares residual", result.residual, RESIDUAL_TOL));
        let samples = gather_samples(&surf, &grid, t, LaplacianSource::ClosedForm)?;
        let half = samples.len() / 2;
        let floor = Tolerances::CLOSED_FORM.harmonic_floor;
        let left = recover_f_and_c(&samples[..half], floor)?.c;
        let right = recover_f_and_c(&samples[half..], floor)?.c;
        lines.push(ReportLine::at_most("C agrees across disjoint half-grids", (left - right).max_abs(), C_TOL));

        let mut spread = 0.0_f64;
        let mut mismatch = 0.0_f64;
        let mut first: Option<Bivector6> = None;
        for &s in &grid {
            let frame = surf.frame(t, s)?;
            let c = from_frame_coordinates(&frame, [c_frame.0, 0.0, 0.0, 0.0, c_frame.1, 0.0]);
            mismatch = mismatch.max((c - result.c).max_abs());
            spread = spread.max((c - *first.get_or_insert(c)).max_abs());
        }
        lines.push(ReportLine::at_most("frame expression of C is constant", spread, C_TOL));
        lines.push(ReportLine::at_most("frame expression of C equals recovered C", mismatch, C_TOL));
    }
    Ok(lines)
}

fn parabolic_flat(spec: &SurfaceSpec) -> Result<Vec<ReportLine>> {
    require_family(TheoremId::T7, spec, &[Family::ParabolicThm7])?;
    let surf = spec.build()?;
    let Curve::ParabolicLinearNull(curve) = surf.curve() else { unreachable!("family checked above") };
    let result = classify_default(&surf)?;
    let max_f = result.f_samples.iter().fold(0.0_f64, |m, x| m.max(x.1.abs()));
    let mut lines = vec![
        ReportLine::at_most("flat: max |K|", max_abs_curvature(&surf)?, FLAT_TOL),
        ReportLine::verdict("verdict", &result, &[Verdict::Harmonic]),
        ReportLine::at_most("harmonic: max |deltaG|", result.max_delta_g, HARMONIC_DELTA_G_TOL),
        ReportLine::at_most("f = 0: max |f|", max_f, 0.0),
    ];
    let other = perturbed_parabolic(curve.mu1, curve.mu2, curve.mu4, curve.epsilon, surf.s_domain(), surf.t_domain())?;
    lines.push(ReportLine::at_most("perturbed curve is flat: max |K|", max_abs_curvature(&other)?, FLAT_TOL));
    let r = classify_default(&other)?;
    lines.push(ReportLine::verdict("perturbed curve verdict", &r, &[Verdict::NotOneType]));
    lines.push(ReportLine::above("perturbed curve residual", r.residual, Tolerances::CLOSED_FORM.residual));
    Ok(lines)
}

fn equivalence_line<C: ProfileCurve>(name: &str, surf: &RotationalSurface<C>) -> Result<ReportLine> {
    let grid = default_grid(surf);
    let parallel = is_parallel_mean_curvature(surf, &grid, PARALLEL_TOL)?;
    let t = surf.t_domain().midpoint();
    let r = classify(surf, &grid, t, &Tolerances::CLOSED_FORM, LaplacianSource::ClosedForm)?;
    Ok(ReportLine::agreement(
        format!("parallel H iff first kind: {name}"),
        parallel.parallel,
        r.is_first_kind_or_harmonic(),
        parallel.max_mn,
        PARALLEL_TOL,
        r.verdict.name(),
    ))
}

fn minimal_first_kind<C: ProfileCurve>(surf: &RotationalSurface<C>, check_premise: bool) -> Result<Vec<ReportLine>> {
    let h = max_mean_curvature(surf)?;
    if check_premise && h > MINIMAL_TOL {
        return Err(Error::InvalidParams(format!("needs a minimal surface; max |H| = {h:e}")));
    }
    let r = classify_default(surf)?;
    let parallel = is_parallel_mean_curvature(surf, &default_grid(surf), PARALLEL_TOL)?;
    Ok(vec![
        ReportLine::at_most("minimal: max |H|", h, MINIMAL_TOL),
        ReportLine::verdict("verdict", &r, &[Verdict::FirstKind, Verdict::Harmonic]),
        ReportLine::at_most("parallel H: max(|M|,|N|)", parallel.max_mn, PARALLEL_TOL),
    ])
}
