//! The scalar invariants `a, b, c, d` and their `s`-derivatives, from a curve jet.

use super::SurfaceKind;
use crate::error::{Error, Result};
use crate::profile::{CurveJet, ADMISSIBILITY_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct ScalarJet {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub da: f64,
    pub db: f64,
    pub dc: f64,
    pub dd: f64,
}

impl ScalarJet {
    pub fn laplacian_coeffs(&self, kind: SurfaceKind, e: f64) -> [f64; 3] {
        let ScalarJet { a, b, c, d, da, db, dc, dd } = *self;
        match kind {
            SurfaceKind::Elliptic => [d * d - b * b - c * c, -(dd + a * d * (b + c)), db + dc + a * d * d],
            SurfaceKind::Hyperbolic => {
                [e * (d * d - c * c - b * b), e * (dd + e * a * d * (c + e * b)), -e * (dc + e * db + e * a * d * d)]
            }
            SurfaceKind::Parabolic => [c * c - a * a - b * b, dc + c * (a + b), c * c + da + db],
        }
    }
}

fn quotient(g: f64, dg: f64, r: f64, dr: f64) -> (f64, f64) {
    (g / r, dg / r - g * dr / (r * r))
}

fn positive(v: f64, what: &str, s: f64) -> Result<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Admissibility(format!("{what} must be positive, got {v} at s = {s}")))
    }
}

/// `a = x₃′/R`, `b = R/x₃`, `c = x₃″/R`, `d = (x₁″x₂′ − x₂″x₁′)/R`, `R = √(1+(x₃′)²)`.
pub(crate) fn elliptic(j: &CurveJet) -> Result<ScalarJet> {
    let (x, v, w, z) = (j.x, j.d1, j.d2, j.d3);
    let x3 = positive(x.x3(), "x3", j.s)?;
    let r = (1.0 + v.x3().powi(2)).sqrt();
    let dr = v.x3() * w.x3() / r;
    let dcross = w.x1() * v.x2() - w.x2() * v.x1();
    let ddcross = z.x1() * v.x2() - z.x2() * v.x1();
    let (a, da) = quotient(v.x3(), w.x3(), r, dr);
    let (b, db) = quotient(r, dr, x3, v.x3());
    let (c, dc) = quotient(w.x3(), z.x3(), r, dr);
    let (d, dd) = quotient(dcross, ddcross, r, dr);
    Ok(ScalarJet { a, b, c, d, da, db, dc, dd })
}

/// `a = x₁′/R`, `b = R/x₁`, `c = x₁″/R`, `d = (x₂″x₄′ − x₄″x₂′)/R`, `R = √(ε((x₁′)²−1))`.
pub(crate) fn hyperbolic(j: &CurveJet, e: f64) -> Result<ScalarJet> {
    let (x, v, w, z) = (j.x, j.d1, j.d2, j.d3);
    let x1 = positive(x.x1(), "x1", j.s)?;
    let q = e * (v.x1().powi(2) - 1.0);
    if q <= ADMISSIBILITY_TOL {
        return Err(Error::Admissibility(format!("(x1')^2 - 1 vanishes or changes sign at s = {}", j.s)));
    }
    let r = q.sqrt();
    let dr = e * v.x1() * w.x1() / r;
    let dcross = w.x2() * v.x4() - w.x4() * v.x2();
    let ddcross = z.x2() * v.x4() - z.x4() * v.x2();
    let (a, da) = quotient(v.x1(), w.x1(), r, dr);
    let (b, db) = quotient(r, dr, x1, v.x1());
    let (c, dc) = quotient(w.x1(), z.x1(), r, dr);
    let (d, dd) = quotient(dcross, ddcross, r, dr);
    Ok(ScalarJet { a, b, c, d, da, db, dc, dd })
}

/// `a = p′/p`, `b = p″/p′`, `c = x₁″ − p″x₁′/p′`; `d` is absent and left at zero.
pub(crate) fn parabolic(j: &CurveJet) -> Result<ScalarJet> {
    let n = j.null_coords();
    let [_, x1, x2, x3] = n.x1;
    let [p0, p1, p2, p3] = n.p;
    let p = positive(p0, "p", j.s)?;
    if p1.abs() <= ADMISSIBILITY_TOL {
        return Err(Error::Admissibility(format!("p' vanishes at s = {}", j.s)));
    }
    let (a, da) = quotient(p1, p2, p, p1);
    let (b, db) = quotient(p2, p3, p1, p2);
    let c = x2 - p2 * x1 / p1;
    let dc = x3 - (p3 * x1 + p2 * x2) / p1 + p2 * p2 * x1 / (p1 * p1);
    Ok(ScalarJet { a, b, c, d: 0.0, da, db, dc, dd: 0.0 })
}
