//! Profile curves given as uniformly sampled tables.
//!
//! Values and derivatives come from the degree-6 interpolant through the seven
//! samples nearest to `s`. At a sample this reproduces the usual seven-point
//! central stencils, so the third derivative is fourth-order accurate. The
//! price is a noise floor of roughly `ε_mach·|x|/h³` on the third derivative
//! (about `1e-7` for spacing `1e-3` and coordinates of order one), which
//! bounds how well `b′, c′, d′` and hence `ΔG` can be resolved from a table.

use super::{CurveJet, Interval, ProfileCurve};
use crate::algebra::Vector4;
use crate::error::{Error, Result};

const STENCIL: usize = 7;
const HALF: usize = STENCIL / 2;

#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    s0: f64,
    step: f64,
    rows: Vec<[f64; 4]>,
    domain: Interval,
}

impl SampledCurve {
    /// Builds a table from rows `[s, x₁, x₂, x₃, x₄]` with uniform spacing in `s`.
    ///
    /// `domain` defaults to the sampled range and must lie inside it.
    pub fn new(rows: &[[f64; 5]], domain: Option<Interval>) -> Result<Self> {
        if rows.len() < STENCIL {
            return Err(Error::InvalidSpec(format!("sampled curve needs at least {STENCIL} rows, got {}", rows.len())));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec("sampled curve contains non-finite values".into()));
        }
        let s0 = rows[0][0];
        let last = rows[rows.len() - 1][0];
        let step = (last - s0) / (rows.len() - 1) as f64;
        if step <= 0.0 {
            return Err(Error::InvalidSpec("sample abscissae must increase".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            let want = s0 + step * i as f64;
            if (r[0] - want).abs() > 1e-6 * step {
                return Err(Error::InvalidSpec(format!(
                    "samples must be uniformly spaced: row {i} has s = {}, expected {want}",
                    r[0]
                )));
            }
        }
        let range = Interval::new(s0, last)?;
        let domain = domain.unwrap_or(range);
        let slack = 1e-9 * step;
        if domain.lo < s0 - slack || domain.hi > last + slack {
            return Err(Error::InvalidSpec(format!(
                "s_domain [{}, {}] exceeds the sampled range [{s0}, {last}]",
                domain.lo, domain.hi
            )));
        }
        Ok(SampledCurve { s0, step, rows: rows.iter().map(|r| [r[1], r[2], r[3], r[4]]).collect(), domain })
    }

    /// Samples `f` on `count` uniformly spaced points of `domain`.
    pub fn from_fn(domain: Interval, count: usize, f: impl Fn(f64) -> Vector4) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidSpec("need at least two samples".into()));
        }
        let rows: Vec<[f64; 5]> = (0..count)
            .map(|i| {
                let s = domain.lo + domain.len() * i as f64 / (count - 1) as f64;
                let x = f(s);
                [s, x[0], x[1], x[2], x[3]]
            })
            .collect();
        SampledCurve::new(&rows, Some(domain))
    }

    pub fn step(&self) -> f64 {
        self.step
    }
}

impl ProfileCurve for SampledCurve {
    fn s_domain(&self) -> Interval {
        self.domain
    }

    fn is_closed_form(&self) -> bool {
        false
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        self.domain.check(s)?;
        let n = self.rows.len();
        let nearest = ((s - self.s0) / self.step).round().max(0.0) as usize;
        let center = nearest.clamp(HALF, n - 1 - HALF);
        let first = center - HALF;
        let u = (s - self.s0) / self.step - center as f64;
        let nodes: Vec<f64> = (0..STENCIL).map(|j| j as f64 - HALF as f64).collect();
        let w = fornberg_weights(u, &nodes, 3);
        let mut out = [Vector4::ZERO; 4];
        for (k, o) in out.iter_mut().enumerate() {
            let scale = self.step.powi(-(k as i32));
            let mut acc = [0.0; 4];
            for (j, wj) in w[k].iter().enumerate() {
                for (a, x) in acc.iter_mut().zip(self.rows[first + j]) {
                    *a += wj * x;
                }
            }
            *o = scale * Vector4(acc);
        }
        Ok(CurveJet { s, x: out[0], d1: out[1], d2: out[2], d3: out[3] })
    }
}

/// Finite-difference weights (Fornberg 1988) for derivatives `0..=order` at `x0`.
///
/// `w[k][j]` multiplies the sample at `nodes[j]` in the `k`-th derivative.
fn fornberg_weights(x0: f64, nodes: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fornberg_reproduces_classic_stencils() {
        let nodes = [-1.0, 0.0, 1.0];
        let w = fornberg_weights(0.0, &nodes, 2);
        assert_eq!(w[1], vec![-0.5, 0.0, 0.5]);
        assert_eq!(w[2], vec![1.0, -2.0, 1.0]);
        let nodes: Vec<f64> = (-3..=3).map(f64::from).collect();
        let w = fornberg_weights(0.0, &nodes, 3);
        // seven-point third derivative: (1, −8, 13, 0, −13, 8, −1)/8
        let want = [1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0].map(|x: f64| x / 8.0);
        for (a, b) in w[3].iter().zip(want) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn polynomials_up_to_degree_six_are_exact() {
        let d = Interval::new(0.0, 1.0).unwrap();
        let f = |s: f64| Vector4::new(s.powi(6), s.powi(3) - s, 2.0 * s, 1.0);
        let c = SampledCurve::from_fn(d, 21, f).unwrap();
        for s in [0.0, 0.013, 0.5, 0.77, 1.0] {
            let j = c.jet(s).unwrap();
            assert!((j.x - f(s)).max_abs() < 1e-12);
            assert!((j.d1[0] - 6.0 * s.powi(5)).abs() < 1e-10);
            assert!((j.d2[1] - 6.0 * s).abs() < 1e-9);
            assert!((j.d3[0] - 120.0 * s.powi(3)).abs() < 1e-7);
            assert!((j.d3[1] - 6.0).abs() < 1e-7);
        }
    }

    #[test]
    fn smooth_curve_derivatives_reach_documented_accuracy() {
        let d = Interval::new(0.0, 1.0).unwrap();
        let c = SampledCurve::from_fn(d, 1001, |s| Vector4::new(s.sin(), s.exp(), 0.0, 0.0)).unwrap();
        for s in [0.1, 0.3337, 0.9] {
            let j = c.jet(s).unwrap();
            assert!((j.d1[0] - s.cos()).abs() < 1e-10);
            assert!((j.d2[1] - s.exp()).abs() < 1e-8);
            assert!((j.d3[0] + s.cos()).abs() < 1e-6, "{}", j.d3[0] + s.cos());
        }
    }

    #[test]
    fn rejects_malformed_tables() {
        let mut rows: Vec<[f64; 5]> = (0..10).map(|i| [i as f64 * 0.1, 0.0, 0.0, 0.0, 0.0]).collect();
        assert!(SampledCurve::new(&rows[..5], None).is_err());
        rows[4][0] += 0.01;
        assert!(SampledCurve::new(&rows, None).is_err());
        rows[4][0] -= 0.01;
        let ok = SampledCurve::new(&rows, None).unwrap();
        assert!(ok.jet(1.0).is_err());
        assert!(SampledCurve::new(&rows, Some(Interval::new(0.0, 2.0).unwrap())).is_err());
    }
}
