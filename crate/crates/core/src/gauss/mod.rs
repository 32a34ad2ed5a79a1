//! The Gauss map `G = e₁∧e₂` and its Laplacian.
//!
//! The closed form is `ΔG = L e₁∧e₂ + M e₂∧e₃ + N e₂∧e₄` with `L, M, N`
//! depending on `s` only. [`oracle`] recomputes `ΔG` by finite differences
//! from the embedding and the frame alone.

pub mod oracle;

use serde::Serialize;

use crate::algebra::{inner_bivector, wedge, Bivector6, BIVECTOR_BASIS};
use crate::error::Result;
use crate::profile::ProfileCurve;
use crate::surface::{FramePoint, RotationalSurface};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussMapSample {
    pub t: f64,
    pub s: f64,
    #[serde(rename = "G")]
    pub g: Bivector6,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "N")]
    pub n: f64,
    /// `(L, M, N)` along `(e₁∧e₂, e₂∧e₃, e₂∧e₄)`.
    #[serde(rename = "deltaG_frame")]
    pub delta_g_frame: [f64; 3],
    #[serde(rename = "deltaG_ambient")]
    pub delta_g: Bivector6,
}

/// Coefficients of `x` along the frame bivectors `e_A∧e_B`, in the order
/// `(12, 13, 14, 23, 24, 34)`.
pub fn frame_coordinates(frame: &FramePoint, x: Bivector6) -> [f64; 6] {
    BIVECTOR_BASIS.map(|(a, b)| {
        let eab = wedge(frame.e[a], frame.e[b]);
        inner_bivector(x, eab) / (frame.signs[a] * frame.signs[b])
    })
}

/// `Σ coeffs[k]·e_A∧e_B` over the frame bivector basis.
pub fn from_frame_coordinates(frame: &FramePoint, coeffs: [f64; 6]) -> Bivector6 {
    BIVECTOR_BASIS.iter().zip(coeffs).map(|(&(a, b), c)| c * wedge(frame.e[a], frame.e[b])).sum()
}

impl<C: ProfileCurve> RotationalSurface<C> {
    pub fn gauss_map(&self, t: f64, s: f64) -> Result<Bivector6> {
        let f = self.frame(t, s)?;
        Ok(wedge(f.e[0], f.e[1]))
    }

    pub fn laplacian_gauss_map(&self, t: f64, s: f64) -> Result<GaussMapSample> {
        let f = self.frame(t, s)?;
        let [l, m, n] = self.laplacian_coeffs(s)?;
        let delta_g = from_frame_coordinates(&f, [l, 0.0, 0.0, m, n, 0.0]);
        Ok(GaussMapSample { t, s, g: wedge(f.e[0], f.e[1]), l, m, n, delta_g_frame: [l, m, n], delta_g })
    }
}
