//! Chebyshev interpolation: local spectral differentiation and piecewise tables.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// A Chebyshev series Σ c_n T_n(ξ) on [a, b], ξ = (2x − a − b)/(b − a).
#[derive(Debug, Clone)]
pub struct ChebSeries {
    pub a: f64,
    pub b: f64,
    pub c: Vec<f64>,
}

impl ChebSeries {
    /// Interpolates `g` at `n` Chebyshev–Lobatto points of [a, b].
    pub fn interpolate(g: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Self {
        let vals: Vec<f64> = lobatto(n)
            .into_iter()
            .map(|xi| g(0.5 * (a + b) + 0.5 * (b - a) * xi))
            .collect();
        Self::from_lobatto_values(&vals, a, b)
    }

    /// Coefficients from values at cos(πj/(n−1)), j = 0..n−1.
    pub fn from_lobatto_values(vals: &[f64], a: f64, b: f64) -> Self {
        let n = vals.len();
        let m = (n - 1) as f64;
        let mut c = vec![0.0; n];
        for (k, ck) in c.iter_mut().enumerate() {
            let mut s = 0.0;
            for (j, &v) in vals.iter().enumerate() {
                let w = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                s += w * v * (PI * (k * j) as f64 / m).cos();
            }
            *ck = 2.0 * s / m;
        }
        c[0] *= 0.5;
        c[n - 1] *= 0.5;
        ChebSeries { a, b, c }
    }

    /// Interpolates at the n first-kind Chebyshev points, which avoid the
    /// endpoints.
    pub fn interpolate_interior(g: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Self {
        let th: Vec<f64> = (0..n).map(|j| PI * (j as f64 + 0.5) / n as f64).collect();
        let vals: Vec<f64> = th.iter().map(|t| g(0.5 * (a + b) + 0.5 * (b - a) * t.cos())).collect();
        let mut c: Vec<f64> = (0..n)
            .map(|k| 2.0 / n as f64 * vals.iter().zip(&th).map(|(v, t)| v * (k as f64 * t).cos()).sum::<f64>())
            .collect();
        c[0] *= 0.5;
        ChebSeries { a, b, c }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let xi = (2.0 * x - self.a - self.b) / (self.b - self.a);
        clenshaw(&self.c, xi)
    }

    /// Series of the derivative (in x).
    pub fn derivative(&self) -> ChebSeries {
        let n = self.c.len();
        if n <= 1 {
            return ChebSeries { a: self.a, b: self.b, c: vec![0.0] };
        }
        let mut d = vec![0.0; n];
        for k in (1..n).rev() {
            let next = if k + 1 < n { d[k + 1] } else { 0.0 };
            d[k - 1] = next + 2.0 * k as f64 * self.c[k];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        let s = 2.0 / (self.b - self.a);
        for v in d.iter_mut() {
            *v *= s;
        }
        ChebSeries { a: self.a, b: self.b, c: d }
    }

    pub fn nth_derivative(&self, k: usize) -> ChebSeries {
        let mut s = self.clone();
        for _ in 0..k {
            s = s.derivative();
        }
        s
    }
}

/// Lobatto points cos(πj/(n−1)).
pub fn lobatto(n: usize) -> Vec<f64> {
    let m = (n - 1) as f64;
    (0..n).map(|j| (PI * j as f64 / m).cos()).collect()
}

pub fn clenshaw(c: &[f64], xi: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let t = 2.0 * xi * b1 - b2 + ck;
        b2 = b1;
        b1 = t;
    }
    xi * b1 - b2 + c[0]
}

/// k-th derivative of `g` at `x0` from a Chebyshev interpolant on an
/// interval of half-width about `h` inside [lo, hi].
///
/// The estimate is repeated on an interval of half the width (twice the
/// node density); the difference is returned as the noise estimate.
pub fn local_derivative(
    g: &dyn Fn(f64) -> f64,
    x0: f64,
    k: usize,
    lo: f64,
    hi: f64,
    h: f64,
    n: usize,
) -> Result<(f64, f64, f64)> {
    let one = |h: f64| -> Result<(f64, f64)> {
        let (a, b) = window(x0, h, lo, hi)?;
        let s = ChebSeries::interpolate(g, a, b, n);
        let scale = s.c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let d = s.nth_derivative(k).eval(x0);
        Ok((d, scale / ((b - a) * 0.5).powi(k as i32)))
    };
    let (d1, sc) = one(h)?;
    let (d2, _) = one(0.5 * h)?;
    if !d1.is_finite() || !d2.is_finite() {
        return Err(Error::Instability(format!("non-finite derivative at {x0}")));
    }
    Ok((d1, (d1 - d2).abs(), sc))
}

fn window(x0: f64, h: f64, lo: f64, hi: f64) -> Result<(f64, f64)> {
    if !(x0 >= lo && x0 <= hi) {
        return Err(Error::Range(format!("{x0} outside [{lo}, {hi}]")));
    }
    let width = (2.0 * h).min(hi - lo);
    if !(width > 0.0) {
        return Err(Error::Instability(format!("empty differentiation window at {x0}")));
    }
    let mut a = x0 - 0.5 * width;
    let mut b = x0 + 0.5 * width;
    if a < lo {
        a = lo;
        b = lo + width;
    }
    if b > hi {
        b = hi;
        a = hi - width;
    }
    Ok((a, b))
}

/// Adaptive piecewise Chebyshev table.
#[derive(Debug, Clone)]
pub struct PiecewiseCheb {
    breaks: Vec<f64>,
    panels: Vec<ChebSeries>,
}

const PANEL_NODES: usize = 33;
const MAX_PANELS: usize = 4096;
/// How far above the tolerance a stalled tail is still taken as noise.
const NOISE_SLACK: f64 = 1e5;

impl PiecewiseCheb {
    /// Builds panels on each interval between consecutive `breaks`,
    /// bisecting until the trailing coefficients fall below `tol` times the
    /// function scale.
    pub fn build(g: &dyn Fn(f64) -> f64, breaks: &[f64], tol: f64) -> Result<Self> {
        let (lo, hi) = (breaks[0], *breaks.last().unwrap());
        let mut scale = 0.0f64;
        for i in 0..256 {
            let v = g(lo + (hi - lo) * (i as f64 + 0.5) / 256.0);
            if v.is_finite() {
                scale = scale.max(v.abs());
            }
        }
        if scale == 0.0 {
            scale = 1.0;
        }
        let mut panels = Vec::new();
        for w in breaks.windows(2) {
            if w[1] > w[0] {
                Self::fill(g, w[0], w[1], tol * scale, f64::INFINITY, 0, &mut panels)?;
            }
        }
        if panels.len() > MAX_PANELS {
            return Err(Error::Instability(format!(
                "tabulation on [{lo}, {hi}] needed more than {MAX_PANELS} panels"
            )));
        }
        let mut bs: Vec<f64> = panels.iter().map(|p| p.a).collect();
        bs.push(panels.last().map_or(hi, |p| p.b));
        Ok(PiecewiseCheb { breaks: bs, panels })
    }

    fn fill(
        g: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        tol: f64,
        parent_tail: f64,
        depth: usize,
        out: &mut Vec<ChebSeries>,
    ) -> Result<()> {
        let s = ChebSeries::interpolate_interior(g, a, b, PANEL_NODES);
        if s.c.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite values while tabulating on [{a}, {b}]")));
        }
        let n = s.c.len();
        let tail = s.c[n - 3..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        // Halving a panel shrinks the tail of a smooth function by orders of
        // magnitude; when it stops doing so close to the tolerance we are
        // looking at noise in g.
        let stalled = depth >= 3 && tail > 0.25 * parent_tail && tail < NOISE_SLACK * tol;
        if tail <= tol || stalled || depth >= 30 || out.len() > MAX_PANELS {
            out.push(s);
            return Ok(());
        }
        let m = 0.5 * (a + b);
        Self::fill(g, a, m, tol, tail, depth + 1, out)?;
        Self::fill(g, m, b, tol, tail, depth + 1, out)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.panels.len();
        if x < self.breaks[0] || x > self.breaks[n] {
            return 0.0;
        }
        let i = self.breaks[1..n].partition_point(|&b| b <= x);
        self.panels[i].eval(x)
    }
}
