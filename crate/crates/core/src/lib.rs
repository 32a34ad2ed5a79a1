//! Rotational surfaces in the pseudo-Euclidean space `E⁴₂` with metric
//! `(+, +, −, −)`.
//!
//! A profile curve ([`profile`]) swept by rotations, boosts or null rotations
//! gives a [`RotationalSurface`]. From it we get adapted frames, the second
//! fundamental form, mean and Gaussian curvature, the Gauss map `G = e₁∧e₂` and
//! its Laplacian ([`gauss`]), and a pointwise 1-type classification
//! `ΔG = f(G + C)` ([`classify`]).
//!
//! ```
//! use rotsurf::{classify_default, CurveSpec, Family, Interval, SurfaceKind, SurfaceSpec, Verdict};
//!
//! let spec = SurfaceSpec {
//!     kind: SurfaceKind::Elliptic,
//!     curve: CurveSpec::new(Family::EllipticThm2I, &[("delta1", 2.0), ("delta3", 1.0)], Interval::new(0.0, 1.0)?),
//!     t_domain: Interval::new(-1.0, 1.0)?,
//! };
//! let r = classify_default(&spec.build()?)?;
//! assert_eq!(r.verdict, Verdict::FirstKind);
//! assert!((r.f_samples[0].1 - 3.0).abs() < 1e-10);
//! # Ok::<(), rotsurf::Error>(())
//! ```

pub mod algebra;
pub mod classify;
pub mod error;
pub mod gauss;
pub mod profile;
pub mod surface;

pub use algebra::{inner, inner_bivector, wedge, Bivector6, Vector4};
pub use classify::{
    classify, classify_default, is_parallel_mean_curvature, verify_theorem, ClassificationResult, LaplacianSource,
    Report, TheoremId, Tolerances, Verdict,
};
pub use error::{Error, Result};
pub use profile::{CurveSpec, Family, Interval, ProfileCurve};
pub use surface::{RotationalSurface, SurfaceKind, SurfaceSpec};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/quickstart.md")]
    struct Quickstart;
    #[doc = include_str!("../../../book/src/profile-curves.md")]
    struct ProfileCurves;
    #[doc = include_str!("../../../book/src/surfaces.md")]
    struct Surfaces;
    #[doc = include_str!("../../../book/src/gauss-map.md")]
    struct GaussMap;
    #[doc = include_str!("../../../book/src/classification.md")]
    struct Classification;
}
