//! Affine planes: the forward transform by Haar rotation of the plane's own
//! frame plus a Gaussian offset inside it; the dual by Haar rotation of the
//! orthogonal complement.

use super::{estimate, gaussian_vector, sample_rotation, AffinePlane, Frame, Integrand, McEstimate, McSpec};
use crate::error::{Error, Result};
use crate::params::TransformParams;
use nalgebra::DMatrix;
use rand_chacha::ChaCha8Rng;

fn check_plane(n: usize, d: usize, t: &AffinePlane, what: &str) -> Result<()> {
    if t.frame.ambient() != n || t.dim() != d {
        return Err(Error::Domain(format!(
            "{what} must be a {d}-plane in ℝ^{n}, got a {}-plane in ℝ^{}",
            t.dim(),
            t.frame.ambient()
        )));
    }
    Ok(())
}

/// Joins two blocks of columns.
pub(crate) fn hcat(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    m.columns_mut(0, a.ncols()).copy_from(a);
    m.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    m
}

/// One weighted draw of f over the j-planes inside ζ.
pub(crate) fn draw_inside(p: &TransformParams, f: &Integrand<AffinePlane>, zeta: &AffinePlane, rng: &mut ChaCha8Rng) -> f64 {
    let (j, k) = (p.j, p.k);
    let g = sample_rotation(k, rng);
    let cols = zeta.frame.columns() * g;
    let xi = cols.columns(0, j).into_owned();
    let (z, pdf) = gaussian_vector(rng, k - j, f.scale);
    let offset = &zeta.offset + cols.columns(j, k - j) * z;
    let tau = AffinePlane { frame: Frame { columns: xi }, offset };
    let v = f.eval(&tau);
    if v == 0.0 {
        0.0
    } else {
        v / pdf
    }
}

/// One draw of φ over the k-planes containing τ, with `basis` spanning ξ^⊥.
pub(crate) fn draw_containing(p: &TransformParams, phi: &Integrand<AffinePlane>, tau: &AffinePlane, basis: &Frame, rng: &mut ChaCha8Rng) -> f64 {
    let g = sample_rotation(p.n - p.j, rng);
    let extra = basis.columns() * g.columns(0, p.k - p.j);
    let frame = Frame { columns: hcat(tau.frame.columns(), &extra) };
    phi.eval(&AffinePlane::through(frame, &tau.offset))
}

/// (R_A f)(ζ) for a k-plane ζ.
pub fn radon_affine_mc(p: &TransformParams, f: &Integrand<AffinePlane>, zeta: &AffinePlane, mc: &McSpec) -> Result<McEstimate> {
    check_plane(p.n, p.k, zeta, "ζ")?;
    estimate(mc, |rng| Ok(draw_inside(p, f, zeta, rng)))
}

/// (R*_A φ)(τ) for a j-plane τ, rotating the canonical complement of its frame.
pub fn dual_affine_mc(p: &TransformParams, phi: &Integrand<AffinePlane>, tau: &AffinePlane, mc: &McSpec) -> Result<McEstimate> {
    check_plane(p.n, p.j, tau, "τ")?;
    let basis = tau.frame.complement();
    dual_affine_mc_with(p, phi, tau, &basis, mc)
}

/// As [`dual_affine_mc`] with a caller-chosen orthonormal basis of ξ^⊥.
/// The estimate does not depend on the choice beyond sampling noise.
pub fn dual_affine_mc_with(
    p: &TransformParams,
    phi: &Integrand<AffinePlane>,
    tau: &AffinePlane,
    basis: &Frame,
    mc: &McSpec,
) -> Result<McEstimate> {
    check_plane(p.n, p.j, tau, "τ")?;
    if basis.ambient() != p.n || basis.dim() != p.n - p.j {
        return Err(Error::Domain(format!("the complement basis must have {} columns in ℝ^{}", p.n - p.j, p.n)));
    }
    if (tau.frame.columns().transpose() * basis.columns()).amax() > 1e-12 {
        return Err(Error::Domain("the complement basis is not orthogonal to τ".into()));
    }
    estimate(mc, |rng| Ok(draw_containing(p, phi, tau, basis, rng)))
}

/// A d-plane from the invariant measure: Haar frame, Gaussian offset in
/// the complement. Returns the plane and 1/density.
pub(crate) fn draw_plane(n: usize, d: usize, sigma: f64, rng: &mut ChaCha8Rng) -> (AffinePlane, f64) {
    let g = sample_rotation(n, rng);
    let (x, pdf) = gaussian_vector(rng, n - d, sigma);
    let offset = g.columns(d, n - d) * x;
    (AffinePlane { frame: Frame { columns: g.columns(0, d).into_owned() }, offset }, 1.0 / pdf)
}
