//! Pointwise 1-type detection: does `ΔG = f(G + C)` hold on a sample grid for
//! some function `f` and constant bivector `C`?
//!
//! Writing `u = 1/f` makes the relation linear, `u_i ΔG_i − C = G_i`. For a
//! fixed `C` the best `u_i` is a projection, so `C` solves the 6×6 system
//! `(Σ P_i) C = −Σ P_i G_i` with `P_i` the Euclidean projector onto
//! `ΔG_i^⊥`. Near-harmonic samples are left out and get `f = 0`.

pub mod theorems;

use nalgebra::{Matrix6, Vector6};
use serde::Serialize;

use crate::algebra::Bivector6;
use crate::error::{Error, Result};
use crate::gauss::oracle::laplacian_oracle;
use crate::profile::ProfileCurve;
use crate::surface::RotationalSurface;

pub use theorems::{verify_theorem, Report, ReportLine, TheoremId};

/// Samples per grid in the default classification setup.
pub const DEFAULT_S_COUNT: usize = 25;
/// Relative margin kept clear of each end of the `s` domain.
pub const DEFAULT_MARGIN: f64 = 0.05;
/// Bound on `max(|M|, |N|)` for parallel mean curvature.
pub const PARALLEL_TOL: f64 = 1e-8;

const MIN_SAMPLES: usize = 3;
const EIGEN_CUTOFF: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Harmonic,
    FirstKind,
    SecondKind,
    GlobalOneType,
    NotOneType,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Harmonic => "harmonic",
            Verdict::FirstKind => "first_kind",
            Verdict::SecondKind => "second_kind",
            Verdict::GlobalOneType => "global_one_type",
            Verdict::NotOneType => "not_one_type",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// A sample is harmonic when `‖ΔG‖ ≤ harmonic_floor · max(1, ‖G‖)`.
    pub harmonic_floor: f64,
    /// Largest relative residual still accepted as 1-type.
    pub residual: f64,
    /// `C` counts as zero when `‖C‖∞ ≤ c_zero · max(1, max ‖G‖∞)`.
    pub c_zero: f64,
    /// `f` counts as constant when `stdev(f) ≤ f_constant · |mean(f)|`.
    pub f_constant: f64,
}

impl Tolerances {
    /// For `ΔG` from the closed-form coefficients.
    pub const CLOSED_FORM: Tolerances =
        Tolerances { harmonic_floor: 1e-9, residual: 1e-4, c_zero: 1e-6, f_constant: 1e-6 };

    /// For `ΔG` from the finite-difference oracle: everything 100× looser.
    pub const ORACLE: Tolerances = Tolerances { harmonic_floor: 1e-7, residual: 1e-2, c_zero: 1e-4, f_constant: 1e-4 };

    pub fn for_source(source: LaplacianSource) -> Tolerances {
        match source {
            LaplacianSource::ClosedForm => Tolerances::CLOSED_FORM,
            LaplacianSource::Oracle { .. } => Tolerances::ORACLE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.harmonic_floor, self.residual, self.c_zero, self.f_constant];
        if all.iter().all(|v| *v > 0.0 && v.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParams("tolerances must be positive and finite".into()))
        }
    }
}

/// Where `ΔG` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum LaplacianSource {
    ClosedForm,
    Oracle { h: f64 },
}

/// `G` and `ΔG` at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub s: f64,
    #[serde(rename = "G")]
    pub g: Bivector6,
    #[serde(rename = "deltaG")]
    pub delta_g: Bivector6,
}

pub fn gather_samples<C: ProfileCurve>(
    surf: &RotationalSurface<C>,
    s_grid: &[f64],
    t: f64,
    source: LaplacianSource,
) -> Result<Vec<Sample>> {
    s_grid
        .iter()
        .map(|&s| {
            let g = surf.gauss_map(t, s)?;
            let delta_g = match source {
                LaplacianSource::ClosedForm => surf.laplacian_gauss_map(t, s)?.delta_g,
                LaplacianSource::Oracle { h } => laplacian_oracle(surf, t, s, h)?,
            };
            Ok(Sample { s, g, delta_g })
        })
        .collect()
}

/// Output of [`recover_f_and_c`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recovery {
    pub f: Vec<f64>,
    #[serde(rename = "C")]
    pub c: Bivector6,
    pub residual: f64,
    /// Which samples fell under the harmonic floor.
    pub harmonic: Vec<bool>,
    /// `C` was underdetermined; the minimal-norm solution is reported.
    pub rank_deficient: bool,
}

fn is_harmonic(sample: &Sample, floor: f64) -> bool {
    sample.delta_g.coord_norm() <= floor * sample.g.coord_norm().max(1.0)
}

fn as_vec(b: Bivector6) -> Vector6<f64> {
    Vector6::from(b.0)
}

/// Fits `ΔG_i = f_i (G_i + C)`.
///
/// Fails with [`Error::InsufficientSamples`] when fewer than three samples
/// clear the harmonic floor; call sites that expect harmonic grids should
/// check for that first.
pub fn recover_f_and_c(samples: &[Sample], harmonic_floor: f64) -> Result<Recovery> {
    let harmonic: Vec<bool> = samples.iter().map(|x| is_harmonic(x, harmonic_floor)).collect();
    let active = harmonic.iter().filter(|h| !**h).count();
    if active < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, got: active });
    }

    let mut lhs = Matrix6::<f64>::zeros();
    let mut rhs = Vector6::<f64>::zeros();
    for (x, _) in samples.iter().zip(&harmonic).filter(|(_, h)| !**h) {
        let v = as_vec(x.delta_g);
        let p = Matrix6::identity() - v * v.transpose() / v.norm_squared();
        lhs += p;
        rhs -= p * as_vec(x.g);
    }
    let eig = lhs.symmetric_eigen();
    let top = eig.eigenvalues.max();
    let mut c = Vector6::zeros();
    let mut rank_deficient = false;
    for k in 0..6 {
        let lambda = eig.eigenvalues[k];
        if lambda <= EIGEN_CUTOFF * top {
            rank_deficient = true;
            continue;
        }
        let q = eig.eigenvectors.column(k);
        c += q * (q.dot(&rhs) / lambda);
    }
    let c = Bivector6([c[0], c[1], c[2], c[3], c[4], c[5]]);

    let f: Vec<f64> = samples
        .iter()
        .zip(&harmonic)
        .map(|(x, h)| if *h { 0.0 } else { x.delta_g.coord_norm().powi(2) / x.delta_g.coord_dot(&(x.g + c)) })
        .collect();
    let top_dg = samples.iter().fold(0.0_f64, |m, x| m.max(x.delta_g.coord_norm()));
    let worst = samples.iter().zip(&f).fold(0.0_f64, |m, (x, fi)| m.max((x.delta_g - *fi * (x.g + c)).coord_norm()));
    Ok(Recovery { f, c, residual: worst / top_dg, harmonic, rank_deficient })
}

/// Recovered `f` against a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormulaMatch {
    /// Largest `|f − f₀|/|f₀|` (absolute error where `f₀ = 0`).
    pub max_rel_error: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub f_samples: Vec<(f64, f64)>,
    #[serde(rename = "C")]
    pub c: Bivector6,
    pub residual: f64,
    pub rank_deficient: bool,
    pub f_constant: bool,
    #[serde(rename = "max_deltaG")]
    pub max_delta_g: f64,
    pub harmonic_samples: usize,
    pub t: f64,
    pub laplacian: LaplacianSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_formula_match: Option<FormulaMatch>,
}

impl ClassificationResult {
    /// Compares the recovered `f` with `expected` and stores the outcome.
    pub fn match_f(&mut self, expected: impl Fn(f64) -> f64, tol: f64) -> FormulaMatch {
        let max_rel_error = self
            .f_samples
            .iter()
            .map(|&(s, f)| {
                let f0 = expected(s);
                let err = (f - f0).abs();
                if f0 == 0.0 {
                    err
                } else {
                    err / f0.abs()
                }
            })
            .fold(0.0_f64, f64::max);
        let m = FormulaMatch { max_rel_error, tol, pass: max_rel_error <= tol };
        self.f_formula_match = Some(m);
        m
    }

    pub fn is_first_kind_or_harmonic(&self) -> bool {
        matches!(self.verdict, Verdict::FirstKind | Verdict::Harmonic)
    }
}

fn f_is_constant(f: &[f64], tol: f64) -> bool {
    let n = f.len() as f64;
    let mean = f.iter().sum::<f64>() / n;
    let var = f.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    var.sqrt() <= tol * mean.abs()
}

/// Classifies already gathered samples.
pub fn classify_samples(
    samples: &[Sample],
    t: f64,
    tol: &Tolerances,
    source: LaplacianSource,
) -> Result<ClassificationResult> {
    tol.validate()?;
    if samples.len() < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, got: samples.len() });
    }
    let max_delta_g = samples.iter().fold(0.0_f64, |m, x| m.max(x.delta_g.coord_norm()));
    let harmonic_samples = samples.iter().filter(|x| is_harmonic(x, tol.harmonic_floor)).count();
    let base = ClassificationResult {
        verdict: Verdict::Harmonic,
        f_samples: samples.iter().map(|x| (x.s, 0.0)).collect(),
        c: Bivector6::ZERO,
        residual: 0.0,
        rank_deficient: true,
        f_constant: true,
        max_delta_g,
        harmonic_samples,
        t,
        laplacian: source,
        f_formula_match: None,
    };
    if harmonic_samples == samples.len() {
        return Ok(base);
    }
    let rec = recover_f_and_c(samples, tol.harmonic_floor)?;
    let scale = samples.iter().fold(1.0_f64, |m, x| m.max(x.g.max_abs()));
    let f_constant = harmonic_samples == 0 && f_is_constant(&rec.f, tol.f_constant);
    let verdict = if rec.residual > tol.residual {
        Verdict::NotOneType
    } else if rec.c.max_abs() <= tol.c_zero * scale {
        Verdict::FirstKind
    } else if f_constant {
        Verdict::GlobalOneType
    } else {
        Verdict::SecondKind
    };
    Ok(ClassificationResult {
        verdict,
        f_samples: samples.iter().zip(&rec.f).map(|(x, f)| (x.s, *f)).collect(),
        c: rec.c,
        residual: rec.residual,
        rank_deficient: rec.rank_deficient,
        f_constant,
        ..base
    })
}

pub fn classify<C: ProfileCurve>(
    surf: &RotationalSurface<C>,
    s_grid: &[f64],
    t: f64,
    tol: &Tolerances,
    source: LaplacianSource,
) -> Result<ClassificationResult> {
    let samples = gather_samples(surf, s_grid, t, source)?;
    classify_samples(&samples, t, tol, source)
}

/// [`classify`] on the default grid: 25 samples, 5% margin, `t` at the midpoint.
pub fn classify_default<C: ProfileCurve>(surf: &RotationalSurface<C>) -> Result<ClassificationResult> {
    let grid = surf.s_domain().grid(DEFAULT_S_COUNT, DEFAULT_MARGIN);
    classify(surf, &grid, surf.t_domain().midpoint(), &Tolerances::CLOSED_FORM, LaplacianSource::ClosedForm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParallelReport {
    pub parallel: bool,
    /// `max(|M|, |N|)` over the grid.
    pub max_mn: f64,
    pub tol: f64,
}

/// Parallel mean curvature holds exactly when `M` and `N` vanish.
pub fn is_parallel_mean_curvature<C: ProfileCurve>(
    surf: &RotationalSurface<C>,
    s_grid: &[f64],
    tol: f64,
) -> Result<ParallelReport> {
    let mut max_mn = 0.0_f64;
    for &s in s_grid {
        let [_, m, n] = surf.laplacian_coeffs(s)?;
        max_mn = max_mn.max(m.abs()).max(n.abs());
    }
    Ok(ParallelReport { parallel: max_mn <= tol, max_mn, tol })
}
