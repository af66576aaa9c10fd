//! Geodesic submanifolds of the hyperboloid as Lorentz-orthonormal frames.
//!
//! Coordinates are x = (x₁, …, x_n, x_{n+1}) with [x, y] = x_{n+1}y_{n+1} − Σ x_i y_i;
//! index n (0-based) is the time coordinate and o = e_{n+1}.

use super::affine::hcat;
use super::{estimate, estimate_many, half_normal, sample_rotation, Integrand, McEstimate, McSpec};
use crate::error::{Error, Result};
use crate::fracint::{ArgKind, Profile1D};
use crate::models::point_to_subhyperboloid_distance;
use crate::params::TransformParams;
use crate::special::{gamma, gamma_nk, sphere_area};
use nalgebra::{DMatrix, DVector};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn lorentz(x: &DVector<f64>, y: &DVector<f64>) -> f64 {
    let n = x.len() - 1;
    x[n] * y[n] - x.rows(0, n).dot(&y.rows(0, n))
}

fn lorentz_cols(m: &DMatrix<f64>, a: usize, b: usize) -> f64 {
    let n = m.nrows() - 1;
    m[(n, a)] * m[(n, b)] - (0..n).map(|i| m[(i, a)] * m[(i, b)]).sum::<f64>()
}

/// Hyperbolic rotation by `r` in the plane of spatial axis `axis` and time.
pub fn boost(n: usize, axis: usize, r: f64) -> DMatrix<f64> {
    let mut m = DMatrix::identity(n + 1, n + 1);
    let (c, s) = (r.cosh(), r.sinh());
    m[(axis, axis)] = c;
    m[(n, n)] = c;
    m[(axis, n)] = s;
    m[(n, axis)] = s;
    m
}

/// A rotation of m spatial coordinates starting at `start`, as a Lorentz matrix.
fn embed_rotation(n: usize, start: usize, g: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::identity(n + 1, n + 1);
    let d = g.nrows();
    m.view_mut((start, start), (d, d)).copy_from(g);
    m
}

/// A d-geodesic: the hyperboloid cut by the span of a timelike unit
/// vector (column 0) and d spacelike ones, pairwise Lorentz-orthogonal.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperGeodesic {
    basis: DMatrix<f64>,
}

impl HyperGeodesic {
    pub fn new(basis: DMatrix<f64>) -> Result<Self> {
        let d1 = basis.ncols();
        if d1 == 0 || d1 > basis.nrows() {
            return Err(Error::Domain(format!("a geodesic frame needs 1 to n+1 columns, got {d1}")));
        }
        for a in 0..d1 {
            for b in a..d1 {
                let want = if a != b {
                    0.0
                } else if a == 0 {
                    1.0
                } else {
                    -1.0
                };
                let g = lorentz_cols(&basis, a, b);
                if (g - want).abs() > 1e-10 * (1.0 + basis.amax().powi(2)) {
                    return Err(Error::Domain("geodesic frame is not Lorentz-orthonormal".into()));
                }
            }
        }
        Ok(HyperGeodesic { basis })
    }

    /// ℍ^d: o together with the last d spatial axes.
    pub fn standard(n: usize, d: usize) -> Result<Self> {
        if d >= n {
            return Err(Error::Domain(format!("need d < n, got n = {n}, d = {d}")));
        }
        let mut m = DMatrix::zeros(n + 1, d + 1);
        m[(n, 0)] = 1.0;
        for i in 0..d {
            m[(n - d + i, i + 1)] = 1.0;
        }
        Ok(HyperGeodesic { basis: m })
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }
    pub fn ambient(&self) -> usize {
        self.basis.nrows() - 1
    }
    pub fn dim(&self) -> usize {
        self.basis.ncols() - 1
    }

    /// Image under a Lorentz matrix.
    pub fn transformed(&self, g: &DMatrix<f64>) -> HyperGeodesic {
        HyperGeodesic { basis: g * &self.basis }
    }

    /// Hyperbolic distance from a point of the hyperboloid: cosh d is the
    /// Lorentz norm of the point's projection onto the span.
    pub fn distance_to(&self, x: &DVector<f64>) -> f64 {
        let mut c2 = 0.0;
        for a in 0..self.basis.ncols() {
            let b = self.basis.column(a).into_owned();
            let v = lorentz(x, &b);
            c2 += if a == 0 { v * v } else { -v * v };
        }
        c2.max(1.0).sqrt().acosh()
    }

    pub fn distance_to_origin(&self) -> f64 {
        let n = self.ambient();
        let mut o = DVector::zeros(n + 1);
        o[n] = 1.0;
        self.distance_to(&o)
    }

    /// A Lorentz-orthonormal basis of the spacelike complement of the span.
    pub fn complement(&self) -> DMatrix<f64> {
        let n1 = self.basis.nrows();
        let need = n1 - self.basis.ncols();
        let cols: Vec<DVector<f64>> = (0..self.basis.ncols()).map(|a| self.basis.column(a).into_owned()).collect();
        let project_out = |mut y: DVector<f64>| {
            for (a, b) in cols.iter().enumerate() {
                let nb = if a == 0 { 1.0 } else { -1.0 };
                let c = lorentz(&y, b) / nb;
                y -= b * c;
            }
            y
        };
        let mut cands: Vec<DVector<f64>> = (0..n1)
            .map(|i| project_out(project_out(DVector::from_fn(n1, |r, _| if r == i { 1.0 } else { 0.0 }))))
            .collect();
        let mut out = Vec::with_capacity(need);
        while out.len() < need {
            let (i, _) = cands
                .iter()
                .enumerate()
                .max_by(|a, b| (-lorentz(a.1, a.1)).total_cmp(&(-lorentz(b.1, b.1))))
                .expect("candidates remain");
            let v = cands.swap_remove(i);
            let v = &v / (-lorentz(&v, &v)).sqrt();
            for c in cands.iter_mut() {
                let d = -lorentz(&v, c);
                *c -= &v * d;
            }
            out.push(v);
        }
        DMatrix::from_columns(&out)
    }
}

/// γ g(r): a rotation of the spatial axes after a boost by r, placing the
/// standard d-geodesic at distance r from o.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub rotation: DMatrix<f64>,
    pub distance: f64,
}

impl Placement {
    pub fn new(rotation: DMatrix<f64>, distance: f64) -> Result<Self> {
        let n = rotation.nrows();
        if rotation.ncols() != n || (rotation.transpose() * &rotation - DMatrix::identity(n, n)).amax() > 1e-12 {
            return Err(Error::Domain("placement rotation is not orthogonal".into()));
        }
        if !(distance >= 0.0) || !distance.is_finite() {
            return Err(Error::Domain(format!("distance must be finite and nonnegative, got {distance}")));
        }
        Ok(Placement { rotation, distance })
    }

    pub fn at_distance(n: usize, distance: f64) -> Result<Self> {
        Placement::new(DMatrix::identity(n, n), distance)
    }

    pub fn ambient(&self) -> usize {
        self.rotation.nrows()
    }

    /// The isometry for d-geodesics: the boost acts on the axis just below ℍ^d.
    pub fn isometry(&self, d: usize) -> DMatrix<f64> {
        let n = self.ambient();
        embed_rotation(n, 0, &self.rotation) * boost(n, n - d - 1, self.distance)
    }

    pub fn geodesic(&self, d: usize) -> Result<HyperGeodesic> {
        Ok(HyperGeodesic::standard(self.ambient(), d)?.transformed(&self.isometry(d)))
    }
}

/// σ_{m} sinh^{m} r cosh^d r with m = n−d−1 (or k−j−1 inside a k-geodesic).
fn radial_density(m: usize, d: usize, r: f64) -> f64 {
    sphere_area(m) * r.sinh().powi(m as i32) * r.cosh().powi(d as i32)
}

/// One weighted draw of f over the j-geodesics inside the k-geodesic G ℍ^k.
pub(crate) fn draw_inside(p: &TransformParams, f: &Integrand<HyperGeodesic>, g: &DMatrix<f64>, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (n, j, k) = (p.n, p.j, p.k);
    let (rho, pdf) = half_normal(rng, f.scale);
    let a = embed_rotation(n, n - k, &sample_rotation(k, rng));
    let m = g * a * boost(n, n - j - 1, rho);
    let t = HyperGeodesic::standard(n, j)?.transformed(&m);
    let v = f.eval(&t);
    Ok(if v == 0.0 { 0.0 } else { v * radial_density(k - j - 1, j, rho) / pdf })
}

/// One draw of φ over the k-geodesics containing t.
pub(crate) fn draw_containing(p: &TransformParams, phi: &Integrand<HyperGeodesic>, t: &HyperGeodesic, comp: &DMatrix<f64>, rng: &mut ChaCha8Rng) -> f64 {
    let g = sample_rotation(p.n - p.j, rng);
    let extra = comp * g.columns(0, p.k - p.j);
    phi.eval(&HyperGeodesic { basis: hcat(t.basis(), &extra) })
}

/// A placement of d-geodesics from the invariant measure, with 1/density.
pub(crate) fn draw_placement(n: usize, d: usize, sigma: f64, rng: &mut ChaCha8Rng) -> (Placement, f64) {
    let (r, pdf) = half_normal(rng, sigma);
    let pl = Placement { rotation: sample_rotation(n, rng), distance: r };
    (pl, radial_density(n - d - 1, d, r) / pdf)
}

fn check_ambient(p: &TransformParams, n: usize) -> Result<()> {
    if n != p.n {
        return Err(Error::Domain(format!("element lives in dimension {n}, parameters say {}", p.n)));
    }
    Ok(())
}

/// (R_H f)(z) for the k-geodesic z = γ g(r) ℍ^k.
pub fn radon_hyper_mc(p: &TransformParams, f: &Integrand<HyperGeodesic>, z: &Placement, mc: &McSpec) -> Result<McEstimate> {
    check_ambient(p, z.ambient())?;
    let g = z.isometry(p.k);
    estimate(mc, |rng| draw_inside(p, f, &g, rng))
}

/// (R*_H φ)(t): the average of φ over k-geodesics containing the j-geodesic t.
pub fn dual_hyper_mc(p: &TransformParams, phi: &Integrand<HyperGeodesic>, t: &HyperGeodesic, mc: &McSpec) -> Result<McEstimate> {
    check_ambient(p, t.ambient())?;
    if t.dim() != p.j {
        return Err(Error::Domain(format!("expected a {}-geodesic, got dimension {}", p.j, t.dim())));
    }
    let comp = t.complement();
    estimate(mc, |rng| Ok(draw_containing(p, phi, t, &comp, rng)))
}

// ---------------------------------------------------------------------------
// Kernel transforms of zonal functions on k-geodesics

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    /// (sinh d)^e.
    SinePower(f64),
    /// log sinh d.
    LogSine,
}

/// ∫ φ(ξ) K(d(x_ρ, ξ)) dξ over k-geodesics ξ, for φ zonal in geodesic
/// distance, at every ρ of the grid with shared samples.
///
/// Geodesics are placed around x_ρ rather than o: ξ = g_ρ γ g(s) ℍ^k, and φ
/// is read at d(o, ξ). The distance s = d(x_ρ, ξ) is drawn from a density
/// ∝ s^a e^{−s²/2σ²} that matches K(s) sinh^{n−k−1}s at 0, so a singular
/// kernel leaves bounded weights. Each sample is smooth in ρ, and γᵀe₁ is paired with its antipode.
pub fn kernel_mc(n: usize, k: usize, phi: &Profile1D, kernel: Kernel, rho_grid: &[f64], mc: &McSpec) -> Result<Vec<McEstimate>> {
    if k == 0 || k >= n {
        return Err(Error::Domain(format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    if phi.kind() != ArgKind::GeodesicDistance {
        return Err(Error::ArgKind { expected: ArgKind::GeodesicDistance.to_string(), found: phi.kind().to_string() });
    }
    if rho_grid.iter().any(|r| !(*r >= 0.0) || !r.is_finite()) {
        return Err(Error::Domain("grid distances must be finite and nonnegative".into()));
    }
    let m = (n - k - 1) as f64;
    let a = match kernel {
        Kernel::SinePower(e) => e + m,
        Kernel::LogSine => m,
    };
    if !(a > -1.0) {
        return Err(Error::LocalIntegrability(format!("the kernel is not integrable over {k}-geodesics in ℍ^{n}")));
    }
    let rho_max = rho_grid.iter().fold(0.0f64, |x, &r| x.max(r));
    // Half the window: wide enough to reach o from every grid point.
    let proposal = Proposal::new(a, (0.5 * rho_max).max(1.0))?;
    let weight = move |s: f64| -> f64 {
        // K(s) σ_m sinh^m s cosh^k s / q(s), written to stay finite at s → 0.
        let ratio = if s == 0.0 { 1.0 } else { s.sinh() / s };
        let kern = match kernel {
            Kernel::SinePower(e) => ratio.powf(e + m),
            Kernel::LogSine => ratio.powf(m) * s.sinh().ln(),
        };
        sphere_area(n - k - 1) * kern * s.cosh().powi(k as i32) / proposal.density_over_power(s)
    };
    let moves: Vec<(f64, f64)> = rho_grid.iter().map(|&r| (r.sinh(), r.cosh())).collect();
    let axis = n - k - 1;
    estimate_many(mc, rho_grid.len(), |rng, out| {
        let s = proposal.sample(rng);
        let w = weight(s);
        // ξ = g_ρ γ g(s) ℍ^k. Only γᵀe₁ matters, and it is uniform on the sphere.
        let dir = unit_vector(n, rng);
        let (sh, ch) = (s.sinh(), s.cosh());
        let mut y = vec![0.0; n + 1];
        for (o, &(sr, cr)) in out.iter_mut().zip(&moves) {
            // g(s)⁻¹ γ⁻¹ g_ρ⁻¹ o, with g_ρ⁻¹ o = (−sinh ρ e₁, cosh ρ); the
            // antithetic direction −γᵀe₁ is averaged in.
            let mut acc = 0.0;
            for sign in [1.0, -1.0] {
                for (yi, di) in y.iter_mut().zip(&dir) {
                    *yi = -sign * sr * di;
                }
                let (ya, t) = (y[axis], cr);
                y[axis] = ch * ya - sh * t;
                y[n] = -sh * ya + ch * t;
                acc += phi.eval(point_to_subhyperboloid_distance(&y, k)?);
            }
            *o = if acc == 0.0 { 0.0 } else { 0.5 * acc * w };
        }
        Ok(())
    })
}

/// Density ∝ s^a e^{−s²/2σ²} on s > 0.
#[derive(Debug, Clone, Copy)]
struct Proposal {
    sigma: f64,
    log_norm: f64,
    gamma: rand_distr::Gamma<f64>,
}

impl Proposal {
    fn new(a: f64, sigma: f64) -> Result<Self> {
        let shape = 0.5 * (a + 1.0);
        // Z = (2σ²)^{(a+1)/2} Γ((a+1)/2) / 2.
        let log_norm = shape * (2.0 * sigma * sigma).ln() + crate::special::ln_gamma(shape) - 2f64.ln();
        let gamma = rand_distr::Gamma::new(shape, 1.0).map_err(|e| Error::Domain(format!("no proposal for the power {a}: {e}")))?;
        Ok(Proposal { sigma, log_norm, gamma })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let u: f64 = rand::Rng::sample(rng, self.gamma);
        self.sigma * (2.0 * u).sqrt()
    }

    /// q(s) / s^a.
    fn density_over_power(&self, s: f64) -> f64 {
        (-0.5 * (s / self.sigma).powi(2) - self.log_norm).exp()
    }
}

fn unit_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| super::normal(rng)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-300 {
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

/// The dual hyperbolic sine transform γ_{n,k}(α) ∫ φ(ξ)(sinh d(x_ρ, ξ))^{α+k−n} dξ
/// at points x_ρ at distance ρ from o.
///
/// At α = 0 the transform is taken as its limit c R*_k φ, with
/// c = 2^{−k}Γ((n−k)/2)/(π^{k/2}Γ(n/2)), sampled over the k-geodesics
/// through x_ρ.
pub fn dual_sine_mc(alpha: f64, p: &TransformParams, phi: &Profile1D, rho_grid: &[f64], mc: &McSpec) -> Result<Vec<McEstimate>> {
    let (n, k) = (p.n, p.k);
    if alpha == 0.0 {
        return dual_limit_mc(n, k, phi, rho_grid, mc);
    }
    let c = gamma_nk(alpha, n, k)?;
    let e = alpha + k as f64 - n as f64;
    let est = kernel_mc(n, k, phi, Kernel::SinePower(e), rho_grid, mc)?;
    Ok(est.into_iter().map(|m| McEstimate { value: c * m.value, std_error: c.abs() * m.std_error, n_samples: m.n_samples }).collect())
}

fn dual_limit_mc(n: usize, k: usize, phi: &Profile1D, rho_grid: &[f64], mc: &McSpec) -> Result<Vec<McEstimate>> {
    if k == 0 || k >= n {
        return Err(Error::Domain(format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let c = (-kf).exp2() * gamma((nf - kf) / 2.0) / (PI.powf(kf / 2.0) * gamma(nf / 2.0));
    let base = HyperGeodesic::standard(n, k)?;
    let moves: Vec<DMatrix<f64>> = rho_grid.iter().map(|&r| boost(n, 0, r)).collect();
    let est = estimate_many(mc, rho_grid.len(), |rng, out| {
        let a = embed_rotation(n, 0, &sample_rotation(n, rng));
        let through_o = base.transformed(&a);
        for (o, g) in out.iter_mut().zip(&moves) {
            *o = c * phi.eval(through_o.transformed(g).distance_to_origin());
        }
        Ok(())
    })?;
    Ok(est)
}
