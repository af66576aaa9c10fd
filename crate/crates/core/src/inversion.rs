//! Inversion of the totally geodesic transform R_k on ℍⁿ for zonal functions:
//! the composition R_{j,k}R_j = R_k, the Beltrami–Laplace operator on zonal
//! functions, and h = P_m(Δ) R*_k^{2m−k} R_k h.

use crate::error::{Error, Result};
use crate::fracint::cheb::{local_derivative, ChebSeries};
use crate::fracint::{ArgKind, Decay, Profile1D, QuadratureSpec};
use crate::models::{integrate_radial, reparam, Model};
use crate::params::TransformParams;
use crate::radon_mc::{dual_sine_mc, kernel_mc, radon_hyper_mc, Integrand, Kernel, McEstimate, McSpec, Placement};
use crate::radon_radial::{invert_radial, radon_hyper_zonal, Geometry, InvertSpec, Transform};
use crate::special::gamma;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

/// Default end of the distance window for tabulated zonal functions.
pub const RHO_MAX: f64 = 4.0;
/// Lobatto nodes used when a zonal function is resampled as a series.
const SERIES_NODES: usize = 257;
/// Relative size of the trailing series coefficients accepted before
/// differentiation is declared unstable.
const TAIL_TOL: f64 = 1e-6;

#[derive(Clone)]
enum Repr {
    Profile(Profile1D),
    /// Even Chebyshev series on [−range, range].
    Series(Arc<ChebSeries>),
}

/// A function of the distance ρ = d(x, o) on ℍⁿ.
///
/// Values beyond `range` are only meaningful for analytic profiles; series
/// produced by the operators below are zero there.
#[derive(Clone)]
pub struct ZonalFunction {
    repr: Repr,
    range: f64,
}

impl std::fmt::Debug for ZonalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.repr {
            Repr::Profile(_) => "profile",
            Repr::Series(_) => "series",
        };
        write!(f, "ZonalFunction({kind} on [0, {}])", self.range)
    }
}

impl ZonalFunction {
    /// Wraps a profile, converting it to geodesic distance if needed.
    pub fn new(profile: Profile1D) -> Result<Self> {
        let profile = if profile.kind() == ArgKind::GeodesicDistance { profile } else { reparam(&profile, ArgKind::GeodesicDistance)? };
        Ok(ZonalFunction { repr: Repr::Profile(profile), range: RHO_MAX })
    }

    pub fn zero() -> Self {
        ZonalFunction::new(Profile1D::zero(0.0, f64::INFINITY, ArgKind::GeodesicDistance).expect("valid range")).expect("right kind")
    }

    /// Sets the window on which series representations are built.
    pub fn with_range(mut self, range: f64) -> Result<Self> {
        if !(range > 0.0) || !range.is_finite() {
            return Err(Error::Domain(format!("window must be positive and finite, got {range}")));
        }
        self.range = range;
        Ok(self)
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn eval(&self, rho: f64) -> f64 {
        match &self.repr {
            Repr::Profile(p) => p.eval(rho.abs()),
            Repr::Series(s) => {
                if rho.abs() > self.range {
                    0.0
                } else {
                    s.eval(rho.abs())
                }
            }
        }
    }

    /// i-th derivative in ρ; analytic when the profile carries a derivative
    /// chain, spectral otherwise.
    pub fn derivative(&self, rho: f64, i: usize) -> Result<f64> {
        match &self.repr {
            Repr::Profile(p) => {
                if let Some(v) = p.deriv(rho, i) {
                    return Ok(v);
                }
                let g = |x: f64| p.eval(x.abs());
                let r = self.range.max(rho + 1.0);
                let (d, _, _) = local_derivative(&g, rho, i, -r, r, 0.25, 24)?;
                Ok(d)
            }
            Repr::Series(s) => Ok(if rho.abs() > self.range { 0.0 } else { s.nth_derivative(i).eval(rho) }),
        }
    }

    fn has_chain(&self, order: usize) -> bool {
        matches!(&self.repr, Repr::Profile(p) if p.deriv(0.0, order).is_some())
    }

    fn series(&self) -> Result<Arc<ChebSeries>> {
        let s = match &self.repr {
            Repr::Series(s) => return Ok(s.clone()),
            Repr::Profile(p) => {
                let p = p.clone();
                ChebSeries::interpolate(&move |x: f64| p.eval(x.abs()), -self.range, self.range, SERIES_NODES)
            }
        };
        let scale = s.c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tail = s.c.iter().rev().take(8).fold(0.0f64, |m, v| m.max(v.abs()));
        if scale > 0.0 && tail > TAIL_TOL * scale {
            return Err(Error::Instability(format!(
                "series of the zonal function does not resolve it on [0, {}]: trailing coefficients at {:.1e} of the largest",
                self.range,
                tail / scale
            )));
        }
        Ok(Arc::new(s))
    }

    /// A profile in geodesic distance: the function itself, or the series
    /// cut to zero beyond the window.
    pub fn to_profile(&self) -> Profile1D {
        match &self.repr {
            Repr::Profile(p) => p.clone(),
            Repr::Series(s) => {
                let (s, r) = (s.clone(), self.range);
                Profile1D::new(0.0, f64::INFINITY, ArgKind::GeodesicDistance, move |x| if x > r { 0.0 } else { s.eval(x) })
                    .expect("valid range")
                    .with_support_hi(r, 0.0)
                    .with_decay(Decay::Rapid)
            }
        }
    }

    fn from_fn<F>(range: f64, g: F) -> ZonalFunction
    where
        F: Fn(f64) -> f64,
    {
        let s = ChebSeries::interpolate(&|x: f64| g(x.abs()), -range, range, SERIES_NODES);
        ZonalFunction { repr: Repr::Series(Arc::new(s)), range }
    }
}

/// Below this distance coth ρ · h′(ρ) is replaced by its limit h″(0).
const AXIS: f64 = 1e-8;

/// ρ ↦ h″(ρ) + (n−1) coth ρ h′(ρ), with value n h″(0) at the origin.
pub fn beltrami_laplace_zonal(n: usize, h: &ZonalFunction) -> Result<ZonalFunction> {
    if n < 2 {
        return Err(Error::Domain(format!("need n ≥ 2, got {n}")));
    }
    let c = (n - 1) as f64;
    if h.has_chain(2) {
        let Repr::Profile(p) = &h.repr else { unreachable!() };
        let p = p.clone();
        let lap = Profile1D::new(0.0, f64::INFINITY, ArgKind::GeodesicDistance, move |r| {
            let d2 = p.deriv(r, 2).expect("chain checked");
            if r < AXIS {
                n as f64 * d2
            } else {
                d2 + c * p.deriv(r, 1).expect("chain checked") / r.tanh()
            }
        })?;
        return Ok(ZonalFunction { repr: Repr::Profile(lap), range: h.range });
    }
    if let Repr::Profile(p) = &h.repr {
        if p.regularity() < 2 {
            return Err(Error::Smoothness(format!("the Laplacian needs two derivatives, the profile has {}", p.regularity())));
        }
    }
    let s = h.series()?;
    let (d1, d2) = (s.derivative(), s.nth_derivative(2));
    Ok(ZonalFunction::from_fn(h.range, |r| {
        if r < AXIS {
            n as f64 * d2.eval(0.0)
        } else {
            d2.eval(r) + c * d1.eval(r) / r.tanh()
        }
    }))
}

/// a·g + b·h.
fn combine(a: f64, g: &ZonalFunction, b: f64, h: &ZonalFunction) -> ZonalFunction {
    match (&g.repr, &h.repr) {
        (Repr::Profile(p), Repr::Profile(q)) => {
            let (p, q) = (p.clone(), q.clone());
            let f = Profile1D::new(0.0, f64::INFINITY, ArgKind::GeodesicDistance, move |r| a * p.eval(r) + b * q.eval(r))
                .expect("valid range");
            ZonalFunction { repr: Repr::Profile(f), range: g.range.min(h.range) }
        }
        _ => ZonalFunction::from_fn(g.range.min(h.range), |r| a * g.eval(r) + b * h.eval(r)),
    }
}

/// P_m(Δ) = ∏_{i=1..m} [−Δ + (2i−n)(2i−1)], applied factor by factor.
pub fn poly_laplace(m: usize, n: usize, h: &ZonalFunction) -> Result<ZonalFunction> {
    let mut cur = h.clone();
    for i in 1..=m {
        let lap = beltrami_laplace_zonal(n, &cur)?;
        let shift = (2.0 * i as f64 - n as f64) * (2.0 * i as f64 - 1.0);
        cur = combine(-1.0, &lap, shift, &cur);
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// Smoothing of Monte Carlo data

/// Terms of the even Chebyshev basis used to smooth grid estimates.
const BASIS: usize = 24;
/// Largest accepted mean squared standardized residual.
const CHI2_MAX: f64 = 9.0;

/// Penalized least squares in T_{2i}(ρ/R), weighted by the standard errors,
/// with the penalty Σ (2i)^8 c_i² scaled by λ chosen by generalized
/// cross-validation.
fn smooth(grid: &[f64], est: &[McEstimate], range: f64) -> Result<ZonalFunction> {
    let y: Vec<f64> = est.iter().map(|e| e.value).collect();
    let ymax = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if ymax == 0.0 {
        return Ok(ZonalFunction::from_fn(range, |_| 0.0));
    }
    let npts = grid.len();
    let nb = BASIS.min(npts.saturating_sub(2)).max(2);
    // Points with (near) zero spread, such as ρ = 0 where every sample
    // agrees, are capped at ten times the weight of a typical point.
    let mut errs: Vec<f64> = est.iter().map(|e| e.std_error).collect();
    errs.sort_by(f64::total_cmp);
    let floor = (0.1 * errs[npts / 2]).max(1e-12 * ymax);
    let w: Vec<f64> = est.iter().map(|e| 1.0 / e.std_error.max(floor)).collect();
    let a = DMatrix::from_fn(npts, nb, |i, b| w[i] * (2.0 * b as f64 * (grid[i] / range).clamp(-1.0, 1.0).acos()).cos());
    let yw = DVector::from_fn(npts, |i, _| w[i] * y[i]);
    let ata = a.transpose() * &a;
    let aty = a.transpose() * &yw;
    let pen = DMatrix::from_fn(nb, nb, |i, j| if i == j { (2.0 * i as f64).powi(8) } else { 0.0 });
    let scale = ata.trace() / pen.trace();
    let mut best: Option<(f64, DVector<f64>)> = None;
    for e in -80..=40 {
        let lam = scale * 10f64.powf(e as f64 / 4.0);
        let m = &ata + &pen * lam;
        let Some(chol) = m.clone().cholesky() else { continue };
        let c = chol.solve(&aty);
        let rss = (&a * &c - &yw).norm_squared();
        let tr = (chol.inverse() * &ata).trace();
        let dof = npts as f64 - tr;
        if dof <= 0.5 {
            continue;
        }
        let gcv = npts as f64 * rss / (dof * dof);
        if best.as_ref().is_none_or(|(g, _)| gcv < *g) {
            best = Some((gcv, c));
        }
    }
    let (_, c) = best.ok_or_else(|| Error::Smoothing("no stable smoothing parameter".into()))?;
    let chi2 = (&a * &c - &yw).norm_squared() / npts as f64;
    if !(chi2 <= CHI2_MAX) {
        return Err(Error::Smoothing(format!("smoothed fit misses the data by {:.1} standard errors on average", chi2.sqrt())));
    }
    let mut coef = vec![0.0; 2 * nb - 1];
    for (b, v) in c.iter().enumerate() {
        coef[2 * b] = *v;
    }
    let s = ChebSeries { a: -range, b: range, c: coef };
    Ok(ZonalFunction { repr: Repr::Series(Arc::new(s)), range })
}

// ---------------------------------------------------------------------------
// The inversion operator

/// Grid and window for [`d_m_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DmSpec {
    /// End of the distance window.
    pub rho_max: f64,
    /// Equispaced grid points on [0, rho_max].
    pub nodes: usize,
}

impl Default for DmSpec {
    fn default() -> Self {
        DmSpec { rho_max: RHO_MAX, nodes: 41 }
    }
}

/// Which formula [`d_m`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DmBranch {
    /// P_m(Δ) applied to the dual sine transform of order 2m − k.
    SinePower,
    /// Even n outside k/2 ≤ m ≤ n/2 − 1: the logarithmic kernel.
    LogSine,
}

pub fn dm_branch(n: usize, k: usize, m: usize) -> Result<DmBranch> {
    if 2 * m < k {
        return Err(Error::Domain(format!("need m ≥ k/2, got m = {m}, k = {k}")));
    }
    Ok(if n % 2 == 1 || 2 * m + 2 <= n { DmBranch::SinePower } else { DmBranch::LogSine })
}

/// Zonal data are tabulated on distances up to this before sampling.
const TABLE_END: f64 = 8.0;

/// φ in geodesic distance, tabulated: Monte Carlo evaluates it millions of
/// times and transform profiles are themselves integrals.
fn zonal_input(phi: &Profile1D) -> Result<Profile1D> {
    let phi = if phi.kind() == ArgKind::GeodesicDistance { phi.clone() } else { reparam(phi, ArgKind::GeodesicDistance)? };
    phi.tabulated(0.0, TABLE_END, 1e-11)
}

/// D_m φ for φ zonal on k-geodesics (a function of their distance to o).
pub fn d_m(phi: &Profile1D, m: usize, p: &TransformParams, mc: &McSpec) -> Result<ZonalFunction> {
    d_m_with(phi, m, p, mc, &DmSpec::default())
}

pub fn d_m_with(phi: &Profile1D, m: usize, p: &TransformParams, mc: &McSpec, spec: &DmSpec) -> Result<ZonalFunction> {
    let (n, k) = (p.n, p.k);
    if spec.nodes < 8 || !(spec.rho_max > 0.0) || !spec.rho_max.is_finite() {
        return Err(Error::Domain("the distance grid needs at least 8 nodes on a finite window".into()));
    }
    let phi = zonal_input(phi)?;
    let grid: Vec<f64> = (0..spec.nodes).map(|i| spec.rho_max * i as f64 / (spec.nodes - 1) as f64).collect();
    match dm_branch(n, k, m)? {
        DmBranch::SinePower => {
            let alpha = (2 * m - k) as f64;
            let est = dual_sine_mc(alpha, p, &phi, &grid, mc)?;
            poly_laplace(m, n, &smooth(&grid, &est, spec.rho_max)?)
        }
        DmBranch::LogSine => {
            let c1 = 2f64.powi(1 - n as i32) / (PI.powf(n as f64 / 2.0) * gamma(n as f64 / 2.0));
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let c2 = sign * gamma((n as f64 + 1.0) / 2.0) / PI.powf((n as f64 + 1.0) / 2.0);
            let est = kernel_mc(n, k, &phi, Kernel::LogSine, &grid, mc)?;
            let est: Vec<McEstimate> = est
                .into_iter()
                .map(|e| McEstimate { value: c1 * e.value, std_error: c1 * e.std_error, n_samples: e.n_samples })
                .collect();
            let total = integrate_radial(Model::Hyperboloid, n, k, &phi, &QuadratureSpec::default())?;
            let lead = poly_laplace(n / 2, n, &smooth(&grid, &est, spec.rho_max)?)?;
            let constant = ZonalFunction::from_fn(spec.rho_max, |_| 1.0);
            Ok(combine(-1.0, &lead, c2 * total, &constant))
        }
    }
}

/// f = R_j D_m φ, as a function of cosh of the distance of a j-geodesic
/// to o (of the distance itself when j = 0).
pub fn reconstruct(phi: &Profile1D, p: &TransformParams, m: usize, mc: &McSpec) -> Result<Profile1D> {
    let h = d_m(phi, m, p, mc)?;
    if p.j == 0 {
        return Ok(h.to_profile());
    }
    let pj = TransformParams::new(p.n, 0, p.j)?;
    Transform::forward(Geometry::Hyperbolic).profile(&pj, &h.to_profile(), &QuadratureSpec::default())
}

/// R_j h as a function of geodesic distance (h itself for j = 0).
fn radon_points(n: usize, j: usize, h: &ZonalFunction, q: &QuadratureSpec) -> Result<Profile1D> {
    if j == 0 {
        return zonal_input(&h.to_profile());
    }
    let pj = TransformParams::new(n, 0, j)?;
    zonal_input(&Transform::forward(Geometry::Hyperbolic).profile(&pj, &h.to_profile(), q)?)
}

/// Envelope scale for sampling distances near the support of a profile.
fn envelope(h: &Profile1D) -> f64 {
    h.support_hi_hint().map_or(1.0, |e| e.at.clamp(0.25, 2.0))
}

/// (R_{j,k}(R_j h))(z) by Monte Carlo over the exact zonal R_j h, against
/// the exact (R_k h)(z).
pub fn chain_identity(p: &TransformParams, h: &ZonalFunction, z: &Placement, mc: &McSpec) -> Result<(McEstimate, f64)> {
    let q = QuadratureSpec::default();
    let rj = radon_points(p.n, p.j, h, &q)?;
    let scale = envelope(&rj);
    let lhs = radon_hyper_mc(p, &Integrand::zonal(rj, scale)?, z, mc)?;
    let pk = TransformParams::new(p.n, 0, p.k)?;
    let rhs = radon_hyper_zonal(&pk, &h.to_profile(), z.distance.cosh(), &q)?;
    Ok((lhs, rhs))
}

/// Support experiment for h vanishing beyond distance a.
#[derive(Debug, Clone, Serialize)]
pub struct ChainSupport {
    pub radius: f64,
    /// Largest |R_j h| on j-geodesics beyond the radius.
    pub forward_beyond: f64,
    /// Largest |R_k h| on k-geodesics beyond the radius.
    pub composed_beyond: f64,
    /// Monte Carlo R_{j,k}R_j h on a k-geodesic beyond the radius.
    pub chain_beyond: f64,
    /// Largest |h_rec| beyond the radius after inverting R_k h, relative to sup |h|.
    pub reconstruction_beyond: f64,
}

pub fn support_demo(p: &TransformParams, h: &ZonalFunction, a: f64, mc: &McSpec) -> Result<ChainSupport> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("radius must be positive and finite, got {a}")));
    }
    let q = QuadratureSpec::precise();
    let hp = h.to_profile();
    let probe = |lo: f64, hi: f64, m: usize| -> Vec<f64> { (0..m).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / m as f64).collect() };
    let beyond = probe(a, a + 2.0, 24);
    let rj = radon_points(p.n, p.j, h, &q)?;
    let forward_beyond = beyond.iter().map(|&r| rj.eval(r).abs()).fold(0.0, f64::max);
    let pk = TransformParams::new(p.n, 0, p.k)?;
    let rk = Transform::forward(Geometry::Hyperbolic).profile(&pk, &hp, &q)?;
    let composed_beyond = beyond.iter().map(|&r| rk.eval(r.cosh()).abs()).fold(0.0, f64::max);
    let z = Placement::at_distance(p.n, a + 0.25)?;
    let chain_beyond = radon_hyper_mc(p, &Integrand::zonal(rj, envelope(&hp))?, &z, mc)?.value.abs();
    // Only the values of R_k h are handed to the inversion.
    let data = {
        let rk = rk.clone();
        Profile1D::new(rk.lo(), rk.hi(), rk.kind(), move |x| rk.eval(x))?.with_decay(Decay::Rapid)
    };
    let upper = (a + 2.0).cosh();
    let spec = InvertSpec { upper: Some(upper), ..InvertSpec::default() };
    let rec = invert_radial(Transform::forward(Geometry::Hyperbolic), &pk, &data, &spec)?;
    let sup = probe(0.0, a, 64).into_iter().map(|r| hp.eval(r).abs()).fold(0.0, f64::max);
    let rec_beyond = probe(a, a + 2.0, 64).into_iter().map(|r| rec.eval(r.cosh()).abs()).fold(0.0, f64::max);
    let reconstruction_beyond = if sup == 0.0 { rec_beyond } else { rec_beyond / sup };
    Ok(ChainSupport { radius: a, forward_beyond, composed_beyond, chain_beyond, reconstruction_beyond })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;

    fn zonal(f: Family) -> ZonalFunction {
        ZonalFunction::new(f.profile(ArgKind::GeodesicDistance).unwrap()).unwrap()
    }

    #[test]
    fn laplacian_of_cosh() {
        let h = ZonalFunction::new(
            Profile1D::new(0.0, f64::INFINITY, ArgKind::GeodesicDistance, |r| r.cosh())
                .unwrap()
                .with_chain(4, |r, i| if i % 2 == 0 { r.cosh() } else { r.sinh() }),
        )
        .unwrap();
        for n in [2, 3, 5] {
            let l = beltrami_laplace_zonal(n, &h).unwrap();
            for r in [0.0f64, 0.3, 1.7] {
                let want = n as f64 * r.cosh();
                assert!((l.eval(r) - want).abs() < 1e-12 * want, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn spherical_functions_are_eigenfunctions() {
        // n = 3: sin(λρ)/(λ sinh ρ) has eigenvalue −(λ² + 1); P_1 maps it to λ² h.
        let lam = 1.7;
        let g = move |r: f64| if r < 1e-6 { 1.0 - (lam * lam + 1.0) * r * r / 6.0 } else { (lam * r).sin() / (lam * r.sinh()) };
        let h = ZonalFunction::new(Profile1D::new(0.0, f64::INFINITY, ArgKind::GeodesicDistance, g).unwrap()).unwrap().with_range(3.0).unwrap();
        let l = beltrami_laplace_zonal(3, &h).unwrap();
        let p = poly_laplace(1, 3, &h).unwrap();
        for r in [0.0, 0.5, 1.0, 2.0] {
            assert!((l.eval(r) + (lam * lam + 1.0) * g(r)).abs() < 1e-6, "Δ at {r}: {}", l.eval(r) + (lam * lam + 1.0) * g(r));
            assert!((p.eval(r) - lam * lam * g(r)).abs() < 1e-6, "P₁ at {r}");
        }
    }

    #[test]
    fn analytic_chain_matches_series_route() {
        let h = zonal(Family::Gaussian { sigma: 1.0 });
        let plain = ZonalFunction::new(h.to_profile().without_chain()).unwrap();
        let a = beltrami_laplace_zonal(4, &h).unwrap();
        let b = beltrami_laplace_zonal(4, &plain).unwrap();
        for r in [0.0f64, 0.4, 1.1, 2.5] {
            // ρ ↦ e^{−ρ²}: h″ + 3 coth ρ h′ in closed form.
            let e = (-r * r).exp();
            let want = if r == 0.0 { -8.0 } else { (4.0 * r * r - 2.0) * e - 6.0 * r * e / r.tanh() };
            assert!((a.eval(r) - want).abs() < 1e-12, "chain at {r}");
            assert!((b.eval(r) - want).abs() < 1e-8, "series at {r}");
        }
    }

    #[test]
    fn poly_laplace_basics() {
        let h = zonal(Family::Gaussian { sigma: 0.8 });
        let id = poly_laplace(0, 3, &h).unwrap();
        assert_eq!(id.eval(0.7), h.eval(0.7));
        let a = poly_laplace(2, 5, &h).unwrap();
        let h3 = ZonalFunction::new(h.to_profile().scaled(3.0)).unwrap();
        let b = poly_laplace(2, 5, &h3).unwrap();
        for r in [0.0, 0.5, 1.5] {
            assert!((b.eval(r) - 3.0 * a.eval(r)).abs() <= 1e-12 * a.eval(r).abs().max(1.0));
        }
        assert_eq!(poly_laplace(1, 3, &ZonalFunction::zero()).unwrap().eval(0.3), 0.0);
    }

    #[test]
    fn rough_profiles_are_refused() {
        let h = ZonalFunction::new(
            Profile1D::new(0.0, f64::INFINITY, ArgKind::GeodesicDistance, |r| (1.0 - r).max(0.0)).unwrap().with_regularity(0),
        )
        .unwrap();
        assert!(matches!(beltrami_laplace_zonal(3, &h), Err(Error::Smoothness(_))));
    }

    #[test]
    fn chain_identity_holds() {
        let h = zonal(Family::Gaussian { sigma: 1.0 });
        let mc = McSpec::new(17, 100_000);
        for (n, j, k) in [(3, 1, 2), (4, 1, 2), (4, 1, 3), (5, 2, 3)] {
            let p = TransformParams::new(n, j, k).unwrap();
            for r in [0.0, 0.8] {
                let (lhs, rhs) = chain_identity(&p, &h, &Placement::at_distance(n, r).unwrap(), &mc).unwrap();
                assert!(lhs.z_score(rhs) < 4.0, "{p} r={r}: {lhs:?} vs {rhs}");
            }
        }
        let p = TransformParams::new(3, 1, 2).unwrap();
        let (lhs, rhs) = chain_identity(&p, &ZonalFunction::zero(), &Placement::at_distance(3, 0.5).unwrap(), &mc).unwrap();
        assert_eq!((lhs.value, rhs), (0.0, 0.0));
    }

    fn recovery(n: usize, k: usize, samples: usize) -> f64 {
        let p = TransformParams::new(n, 0, k).unwrap();
        let h = Family::Gaussian { sigma: 1.0 }.profile(ArgKind::GeodesicDistance).unwrap();
        let rk = Transform::forward(Geometry::Hyperbolic).profile(&p, &h, &QuadratureSpec::default()).unwrap();
        let got = d_m(&rk, 1, &p, &McSpec::new(11, samples)).unwrap();
        let xs: Vec<f64> = (0..=20).map(|i| 0.1 * i as f64).collect();
        xs.iter().map(|&r| (got.eval(r) - h.eval(r)).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn recovers_gaussian_in_three_dimensions() {
        let err = recovery(3, 1, 400_000);
        assert!(err < 2e-2, "{err}");
    }

    // In ℍ³ with k = 1, R*_1 R_1 is convolution with 1/(4π sinh ρ), so for
    // h = e^{−ρ²} the dual sine data is known in one dimension:
    // ψ(ρ) = ∫₀^∞ e^{−r²} sinh r · min(r, ρ) / sinh ρ dr, with
    // ψ(0) = (√π/2) e^{1/4} erf(1/2).
    fn psi_three(rho: f64) -> f64 {
        let simpson = |a: f64, b: f64, f: &dyn Fn(f64) -> f64| {
            let n = 2000;
            let h = (b - a) / n as f64;
            let inner: f64 = (1..n).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
            h / 3.0 * (f(a) + inner + f(b))
        };
        let g = |r: f64| (-r * r).exp() * r.sinh();
        if rho == 0.0 {
            return simpson(0.0, 10.0, &g);
        }
        let near = simpson(0.0, rho, &|r| r * g(r));
        let far = if rho < 10.0 { simpson(rho, 10.0, &g) } else { 0.0 };
        (near + rho * far) / rho.sinh()
    }

    #[test]
    fn smoothing_exact_data_is_unbiased() {
        assert!((psi_three(0.0) - 0.5922965364693265).abs() < 1e-9);
        let grid: Vec<f64> = (0..41).map(|i| 0.1 * i as f64).collect();
        let est: Vec<McEstimate> = grid.iter().map(|&r| McEstimate { value: psi_three(r), std_error: 1e-4, n_samples: 1 }).collect();
        let h = poly_laplace(1, 3, &smooth(&grid, &est, RHO_MAX).unwrap()).unwrap();
        for i in 0..=20 {
            let r = 0.1 * i as f64;
            assert!((h.eval(r) - (-r * r).exp()).abs() < 1e-4, "{r}: {}", h.eval(r));
        }
    }

    #[test]
    fn recovers_gaussian_in_four_dimensions() {
        let err = recovery(4, 2, 200_000);
        assert!(err < 5e-2, "{err}");
    }

    #[test]
    fn zero_data_gives_zero() {
        let p = TransformParams::new(3, 1, 2).unwrap();
        let z = Profile1D::zero(0.0, f64::INFINITY, ArgKind::GeodesicDistance).unwrap();
        let h = d_m(&z, 1, &p, &McSpec::new(1, 1000)).unwrap();
        assert_eq!(h.eval(0.5), 0.0);
        let f = reconstruct(&z, &p, 1, &McSpec::new(1, 1000)).unwrap();
        assert_eq!(f.eval(1.5), 0.0);
    }

    #[test]
    fn branches() {
        assert_eq!(dm_branch(3, 1, 1).unwrap(), DmBranch::SinePower);
        assert_eq!(dm_branch(4, 2, 1).unwrap(), DmBranch::SinePower);
        assert_eq!(dm_branch(4, 2, 2).unwrap(), DmBranch::LogSine);
        assert_eq!(dm_branch(4, 3, 2).unwrap(), DmBranch::LogSine);
        assert!(dm_branch(5, 3, 1).is_err());
    }

    #[test]
    fn support_of_a_bump() {
        let h = zonal(Family::Bump { a: 1.0 });
        let p = TransformParams::new(3, 1, 2).unwrap();
        let s = support_demo(&p, &h, 1.0, &McSpec::new(2, 20_000)).unwrap();
        assert_eq!(s.forward_beyond, 0.0);
        assert_eq!(s.composed_beyond, 0.0);
        assert_eq!(s.chain_beyond, 0.0);
        assert!(s.reconstruction_beyond < 1e-3, "{s:?}");
    }
}

