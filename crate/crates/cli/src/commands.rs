use rayon::prelude::*;
use serde::Serialize;

use rotsurf::classify::theorems::{family_expectation, F_FORMULA_TOL};
use rotsurf::gauss::oracle::{compare_with_oracle, OracleComparison};
use rotsurf::profile::{
    admissibility, check_unit_speed, Family, Interval, ProfileCurve, UnitSpeedReport, ADMISSIBILITY_TOL,
};
use rotsurf::surface::{InvariantSample, SurfaceKind};
use rotsurf::{
    inner, Bivector6, ClassificationResult, LaplacianSource, Report, RotationalSurface, TheoremId, Tolerances,
};

use crate::input::{build_curve, InputError, Spec};
use crate::output::{float, floats, json, Table};
use crate::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A verification line failed: exit 2.
    Failed,
    /// The input itself is unusable, but a report was still produced: exit 1.
    Rejected,
}

pub struct Outcome {
    pub bytes: Vec<u8>,
    pub status: Status,
}

fn render<T: Serialize>(format: Format, report: &T, table: impl FnOnce() -> Table) -> Vec<u8> {
    match format {
        Format::Json => json(report),
        Format::Csv => table().to_bytes(),
    }
}

fn grid(domain: Interval, count: usize, margin: f64) -> Result<Vec<f64>, InputError> {
    if count < 1 {
        return Err(InputError::new("grid counts must be at least 1"));
    }
    if !(0.0..0.5).contains(&margin) {
        return Err(InputError::new(format!("margin must lie in [0, 0.5), got {margin}")));
    }
    Ok(domain.grid(count, margin))
}

#[derive(Serialize)]
struct AdmissibilityCheck {
    kind: SurfaceKind,
    pass: bool,
    failing_s: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
}

#[derive(Serialize)]
struct CurveCheck {
    family: Family,
    s_domain: Interval,
    pass: bool,
    unit_speed: UnitSpeedReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    admissibility: Option<AdmissibilityCheck>,
}

pub fn check_curve(spec: &Spec, s_count: usize, tol: f64, format: Format) -> Result<Outcome, InputError> {
    let path = match spec {
        Spec::Curve(_) => "$",
        Spec::Surface(_) => "$.curve",
    };
    let cs = spec.curve_spec();
    let curve = build_curve(cs, path)?;
    let s = grid(curve.s_domain(), s_count, 0.0)?;
    let unit_speed = check_unit_speed(&curve, &s, tol)?;
    let kind = match spec {
        Spec::Surface(surf) => Some(surf.kind),
        Spec::Curve(_) => cs.family.kind(),
    };
    let mut flags = Vec::new();
    let admissibility = match kind {
        Some(kind) => {
            let mut failing_s = Vec::new();
            let mut eps = Vec::new();
            for &x in &s {
                let a = admissibility(kind, &curve.jet(x)?, ADMISSIBILITY_TOL);
                flags.push(a);
                if !a.ok() {
                    failing_s.push(x);
                }
                eps.push(a.epsilon);
            }
            let epsilon = eps.first().copied().flatten().filter(|e| eps.iter().all(|x| *x == Some(*e)));
            let constant_sign = kind != SurfaceKind::Hyperbolic || epsilon.is_some();
            Some(AdmissibilityCheck { kind, pass: failing_s.is_empty() && constant_sign, failing_s, epsilon })
        }
        None => None,
    };
    let pass = unit_speed.pass && admissibility.as_ref().is_none_or(|a| a.pass);
    let report = CurveCheck { family: cs.family, s_domain: curve.s_domain(), pass, unit_speed, admissibility };
    let bytes = render(format, &report, || {
        let mut header = vec!["s", "unit_speed_residual"];
        if !flags.is_empty() {
            header.extend(["positivity", "nondegenerate_normal"]);
        }
        let mut t = Table::new(&header);
        for (i, &(x, r)) in report.unit_speed.residuals.iter().enumerate() {
            let mut row = floats([x, r]);
            if let Some(a) = flags.get(i) {
                row.extend([a.positivity.to_string(), a.nondegenerate_normal.to_string()]);
            }
            t.push(row);
        }
        t
    });
    Ok(Outcome { bytes, status: if pass { Status::Ok } else { Status::Rejected } })
}

#[derive(Serialize)]
struct InvariantsReport {
    kind: SurfaceKind,
    samples: Vec<InvariantSample>,
}

pub fn invariants(
    surf: &RotationalSurface,
    s_count: usize,
    margin: f64,
    format: Format,
) -> Result<Outcome, InputError> {
    let s = grid(surf.s_domain(), s_count, margin)?;
    let samples = s.par_iter().map(|&x| surf.scalar_invariants(x)).collect::<rotsurf::Result<Vec<_>>>()?;
    let report = InvariantsReport { kind: surf.kind(), samples };
    let bytes = render(format, &report, || {
        let mut t = Table::new(&["s", "a", "b", "c", "d", "epsilon", "H3", "H4", "K", "L", "M", "N"]);
        for x in &report.samples {
            let opt = |v: Option<f64>| v.map(float).unwrap_or_default();
            let mut row = floats([x.s, x.a, x.b, x.c]);
            row.extend([opt(x.d), opt(x.epsilon)]);
            row.extend(floats([x.h_coeffs[0], x.h_coeffs[1], x.k, x.l, x.m, x.n]));
            t.push(row);
        }
        t
    });
    Ok(Outcome { bytes, status: Status::Ok })
}

#[derive(Serialize)]
struct SweepRow {
    t: f64,
    s: f64,
    #[serde(rename = "L")]
    l: f64,
    #[serde(rename = "M")]
    m: f64,
    #[serde(rename = "N")]
    n: f64,
    #[serde(rename = "K")]
    k: f64,
    #[serde(rename = "H2")]
    h2: f64,
    #[serde(rename = "deltaG_ambient")]
    delta_g: Bivector6,
}

#[derive(Serialize)]
struct SweepReport {
    kind: SurfaceKind,
    rows: Vec<SweepRow>,
}

pub const SWEEP_COLUMNS: [&str; 13] =
    ["t", "s", "L", "M", "N", "K", "H2", "dG12", "dG13", "dG14", "dG23", "dG24", "dG34"];

pub fn sweep(
    surf: &RotationalSurface,
    s_count: usize,
    t_count: usize,
    margin: f64,
    format: Format,
) -> Result<Outcome, InputError> {
    let s = grid(surf.s_domain(), s_count, margin)?;
    let t = grid(surf.t_domain(), t_count, margin)?;
    let points: Vec<(f64, f64)> = t.iter().flat_map(|&t| s.iter().map(move |&s| (t, s))).collect();
    let rows = points
        .par_iter()
        .map(|&(t, s)| {
            let inv = surf.scalar_invariants(s)?;
            let h = surf.mean_curvature(t, s)?;
            let g = surf.laplacian_gauss_map(t, s)?;
            Ok(SweepRow { t, s, l: inv.l, m: inv.m, n: inv.n, k: inv.k, h2: inner(h, h), delta_g: g.delta_g })
        })
        .collect::<rotsurf::Result<Vec<_>>>()?;
    let report = SweepReport { kind: surf.kind(), rows };
    let bytes = render(format, &report, || {
        let mut table = Table::new(&SWEEP_COLUMNS);
        for r in &report.rows {
            table.push(floats([r.t, r.s, r.l, r.m, r.n, r.k, r.h2].into_iter().chain(r.delta_g.0)));
        }
        table
    });
    Ok(Outcome { bytes, status: Status::Ok })
}

pub struct ClassifyOptions {
    pub s_count: usize,
    pub margin: f64,
    pub h: Option<f64>,
    pub tol: Option<f64>,
}

pub fn classify(surf: &RotationalSurface, opts: &ClassifyOptions, format: Format) -> Result<Outcome, InputError> {
    if opts.s_count < 3 {
        return Err(InputError::new(format!("classify needs --s-count >= 3, got {}", opts.s_count)));
    }
    let s = grid(surf.s_domain(), opts.s_count, opts.margin)?;
    let source = match opts.h {
        Some(h) => LaplacianSource::Oracle { h },
        None => LaplacianSource::ClosedForm,
    };
    let mut tol = Tolerances::for_source(source);
    if let Some(r) = opts.tol {
        tol.residual = r;
    }
    let mut result: ClassificationResult = rotsurf::classify(surf, &s, surf.t_domain().midpoint(), &tol, source)?;
    if let Some((f0, _)) = family_expectation(surf.curve()) {
        let f_tol = match source {
            LaplacianSource::ClosedForm => F_FORMULA_TOL,
            LaplacianSource::Oracle { .. } => Tolerances::ORACLE.f_constant,
        };
        result.match_f(f0, f_tol);
    }
    let bytes = render(format, &result, || {
        let mut t = Table::new(&["s", "f"]);
        for &(s, f) in &result.f_samples {
            t.push(floats([s, f]));
        }
        t
    });
    Ok(Outcome { bytes, status: Status::Ok })
}

pub fn verify(ids: &[TheoremId], spec: Option<&rotsurf::SurfaceSpec>, format: Format) -> Result<Outcome, InputError> {
    let reports = ids
        .iter()
        .map(|&id| rotsurf::verify_theorem(id, spec).map_err(|e| InputError::new(format!("{id}: {e}"))))
        .collect::<Result<Vec<Report>, _>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let table = || {
        let mut t = Table::new(&["theorem", "line", "pass", "measured", "threshold"]);
        for r in &reports {
            for l in &r.lines {
                t.push(vec![
                    r.theorem.to_string(),
                    l.name.clone(),
                    l.pass.to_string(),
                    float(l.measured),
                    float(l.threshold),
                ]);
            }
        }
        t
    };
    let bytes = match reports.as_slice() {
        [one] => render(format, one, table),
        all => render(format, &all, table),
    };
    Ok(Outcome { bytes, status: if pass { Status::Ok } else { Status::Failed } })
}

#[derive(Serialize)]
struct OracleReport {
    h: f64,
    tol: f64,
    max_rel_error: f64,
    pass: bool,
    points: Vec<OracleComparison>,
}

pub struct OracleOptions {
    pub s_count: usize,
    pub t_count: usize,
    pub margin: f64,
    pub h: f64,
    pub tol: f64,
}

pub fn oracle_compare(surf: &RotationalSurface, opts: &OracleOptions, format: Format) -> Result<Outcome, InputError> {
    let s = grid(surf.s_domain(), opts.s_count, opts.margin)?;
    let t = grid(surf.t_domain(), opts.t_count, opts.margin)?;
    let points: Vec<(f64, f64)> = t.iter().flat_map(|&t| s.iter().map(move |&s| (t, s))).collect();
    let points = points
        .par_iter()
        .map(|&(t, s)| compare_with_oracle(surf, t, s, opts.h))
        .collect::<rotsurf::Result<Vec<_>>>()?;
    let max_rel_error = points.iter().map(|p| p.rel_error).fold(0.0, f64::max);
    let pass = max_rel_error <= opts.tol;
    let report = OracleReport { h: opts.h, tol: opts.tol, max_rel_error, pass, points };
    let bytes = render(format, &report, || {
        let mut t = Table::new(&["t", "s", "rel_error"]);
        for p in &report.points {
            t.push(floats([p.t, p.s, p.rel_error]));
        }
        t
    });
    Ok(Outcome { bytes, status: if pass { Status::Ok } else { Status::Failed } })
}
