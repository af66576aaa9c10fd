//! Inversion of the radial transforms by EK derivatives.

use super::{dual_constant, Direction, Geometry, Transform};
use crate::catalog::Family;
use crate::error::{Error, Result};
use crate::fracint::ek::at_origin;
use crate::fracint::{ek_deriv_left_with, ek_deriv_right_with, ArgKind, Profile1D, QuadratureSpec};
use crate::models::{apply_weight, reparam, WeightOpId};
use crate::params::TransformParams;
use crate::special::sphere_area;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InvertSpec {
    /// End of the reconstruction window in the transform's variable.
    /// Defaults: 4 (Euclidean), cosh 4.5 or sinh 4.5 (hyperboloid), 95% of a finite range.
    pub upper: Option<f64>,
    /// Equispaced reconstruction nodes; the result interpolates between them.
    pub nodes: usize,
    /// Relative residual accepted when the result is transformed back.
    pub residual_tol: f64,
    pub quadrature: QuadratureSpec,
}

impl Default for InvertSpec {
    fn default() -> Self {
        InvertSpec { upper: None, nodes: 129, residual_tol: 1e-4, quadrature: QuadratureSpec::precise() }
    }
}

/// Lagrange order of the returned profile.
const ORDER: usize = 8;
/// Values of the transformed profile are tabulated to this tolerance first.
const TABLE_TOL: f64 = 1e-13;

fn default_upper(t: &Transform, hi: f64) -> f64 {
    if hi.is_finite() {
        return 0.95 * hi;
    }
    match t.variable() {
        ArgKind::CoshDistance => 4.5f64.cosh(),
        ArgKind::SinhDistance => 4.5f64.sinh(),
        _ => 4.0,
    }
}

/// Recovers f from its transform on a window, checking the answer by
/// transforming it back.
///
/// Right-sided transforms need the data beyond the window; it is taken up
/// to four times the window's end, and treated as zero further out.
pub fn invert_radial(t: Transform, p: &TransformParams, transformed: &Profile1D, spec: &InvertSpec) -> Result<Profile1D> {
    if spec.nodes < 2 * ORDER {
        return Err(Error::Domain(format!("need at least {} nodes, got {}", 2 * ORDER, spec.nodes)));
    }
    spec.quadrature.validate()?;
    if t.geometry == Geometry::Projective {
        return invert_projective(t.direction, p, transformed, spec);
    }
    let q = spec.quadrature;
    let f = t.prepare(transformed)?;
    let (lo, hi) = match t.variable() {
        ArgKind::CosAngle | ArgKind::SinAngle => (0.0, 1.0),
        _ => (f.lo(), f.hi()),
    };
    let upper = spec.upper.unwrap_or_else(|| default_upper(&t, hi)).min(hi);
    if !(upper > lo) {
        return Err(Error::Domain(format!("reconstruction window [{lo}, {upper}] is empty")));
    }
    let a = p.alpha();
    let (n, j, k) = (p.nf(), p.jf(), p.kf());
    let left = t.is_left_sided();
    // Strip the weights: what remains is a plain EK integral.
    let (g, weight): (Profile1D, f64) = match (t.geometry, t.direction) {
        (Geometry::Affine | Geometry::Chord, Direction::Forward) => (f.scaled(PI.powf(-a)), 0.0),
        (Geometry::Hyperbolic, Direction::Forward) => (f.times_power(k - 1.0).scaled(PI.powf(-a)), 1.0 - j),
        (Geometry::Elliptic, Direction::Forward) => {
            let c = sphere_area(p.k) / (sphere_area(p.j) * PI.powf(a));
            (f.times_power(k - 1.0).scaled(c), 1.0 - j)
        }
        (_, Direction::Dual) => (f.times_power(n - j - 2.0).scaled(1.0 / dual_constant(p)), k + 2.0 - n),
        (Geometry::Projective, _) => unreachable!(),
    };
    let table_hi = if left {
        upper
    } else if hi.is_finite() {
        hi
    } else {
        lo + 4.0 * (upper - lo)
    };
    let g = g.tabulated(lo, table_hi, TABLE_TOL)?;
    let value = |x: f64| -> Result<f64> {
        let d = if left { ek_deriv_left_with(a, &g, x, &q)? } else { ek_deriv_right_with(a, &g, x, &q)? };
        Ok(if weight == 0.0 { d } else { d * x.powf(weight) })
    };
    let xs = nodes(t.variable(), lo, upper, spec.nodes);
    let vals: Vec<Result<f64>> = xs
        .par_iter()
        .map(|&x| if x == 0.0 && weight != 0.0 { at_origin(&value) } else { value(x) })
        .collect();
    let ys = fill_gaps(&xs, vals)?;
    let mut out = Profile1D::sampled(xs, ys, t.variable(), ORDER)?;
    if upper < hi {
        out = out.with_support_hi(upper, 0.0);
    }
    check_residual(&t, p, &f, &out, lo, upper, spec)?;
    Ok(out)
}

/// Equispaced in the variable, or in the distance for the hyperbolic ones.
fn nodes(kind: ArgKind, lo: f64, upper: f64, n: usize) -> Vec<f64> {
    let frac = |i: usize| i as f64 / (n - 1) as f64;
    match kind {
        ArgKind::CoshDistance => {
            let (a, b) = (lo.acosh(), upper.acosh());
            (0..n).map(|i| (a + (b - a) * frac(i)).cosh()).collect()
        }
        ArgKind::SinhDistance => {
            let (a, b) = (lo.asinh(), upper.asinh());
            (0..n).map(|i| (a + (b - a) * frac(i)).sinh()).collect()
        }
        _ => (0..n).map(|i| lo + (upper - lo) * frac(i)).collect(),
    }
}

/// Replaces failed nodes by interpolation from their neighbours, in the
/// squared variable. Too many failures return the first error.
fn fill_gaps(xs: &[f64], vals: Vec<Result<f64>>) -> Result<Vec<f64>> {
    let bad: Vec<usize> = vals.iter().enumerate().filter(|(_, v)| !matches!(v, Ok(y) if y.is_finite())).map(|(i, _)| i).collect();
    if bad.is_empty() {
        return Ok(vals.into_iter().map(|v| v.unwrap()).collect());
    }
    if bad.len() * 4 > xs.len() {
        for v in vals {
            v?;
        }
        return Err(Error::Instability("reconstruction failed at most nodes".into()));
    }
    let good: Vec<(f64, f64)> =
        xs.iter().zip(&vals).filter_map(|(&x, v)| v.as_ref().ok().filter(|y| y.is_finite()).map(|&y| (x * x, y))).collect();
    let mut ys: Vec<f64> = vals.into_iter().map(|v| v.unwrap_or(f64::NAN)).collect();
    for i in bad {
        let u = xs[i] * xs[i];
        let mut near: Vec<&(f64, f64)> = good.iter().collect();
        near.sort_by(|a, b| (a.0 - u).abs().total_cmp(&(b.0 - u).abs()));
        let pts = &near[..ORDER.min(near.len())];
        ys[i] = pts
            .iter()
            .enumerate()
            .map(|(a, &&(ua, ya))| {
                let l: f64 = pts.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, &&(ub, _))| (u - ub) / (ua - ub)).product();
                l * ya
            })
            .sum();
    }
    Ok(ys)
}

fn check_residual(
    t: &Transform,
    p: &TransformParams,
    data: &Profile1D,
    rec: &Profile1D,
    lo: f64,
    upper: f64,
    spec: &InvertSpec,
) -> Result<()> {
    let q = QuadratureSpec::default();
    // Right-sided transforms of the truncated result are only faithful well inside the window.
    let end = if t.is_left_sided() { upper } else { lo + 0.5 * (upper - lo) };
    let probe: Vec<f64> = (0..8).map(|i| lo + (end - lo) * (i as f64 + 0.5) / 8.0).collect();
    let scale = (0..64)
        .map(|i| data.eval(lo + (upper - lo) * (i as f64 + 0.5) / 64.0).abs())
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(());
    }
    let mut worst: f64 = 0.0;
    for x in probe {
        let back = t.eval_prepared(p, rec, x, &q)?;
        worst = worst.max((back - data.eval(x)).abs() / scale);
    }
    if worst > 10.0 * spec.residual_tol {
        return Err(Error::NotInRange(format!(
            "transforming the reconstruction back misses the data by {worst:.2e} of its size"
        )));
    }
    Ok(())
}

/// Projective transforms are conjugates of the hyperboloid ones, and so are
/// their inverses: M₁ R_H⁻¹ N₁ and P₁ (R*_H)⁻¹ Q₁.
fn invert_projective(d: Direction, p: &TransformParams, data: &Profile1D, spec: &InvertSpec) -> Result<Profile1D> {
    let (pre, post) = match d {
        Direction::Forward => (WeightOpId::N1, WeightOpId::M1),
        Direction::Dual => (WeightOpId::Q1, WeightOpId::P1),
    };
    let h = apply_weight(pre, p, data)?;
    let mut inner = *spec;
    inner.upper = spec.upper.map(|th| {
        let t = th.tan().atanh();
        if d == Direction::Forward { t.cosh() } else { t.sinh() }
    });
    let rec = invert_radial(Transform::new(Geometry::Hyperbolic, d), p, &h, &inner)?;
    apply_weight(post, p, &reparam(&rec, ArgKind::GeodesicDistance)?)
}

/// Outcome of the support experiment for a bump of radius `radius`.
#[derive(Debug, Clone, Serialize)]
pub struct SupportDemo {
    pub radius: f64,
    /// Largest |Rf| beyond the radius; zero when the kernel support is respected.
    pub transform_beyond: f64,
    /// Largest |f_rec| beyond the radius, relative to sup |f|.
    pub reconstruction_beyond: f64,
    /// Largest |f_rec − f| inside, relative to sup |f|.
    pub reconstruction_inside: f64,
}

/// A bump supported in the ball of the given radius (in the transform's
/// variable) is transformed, the support hints are dropped, and the result
/// is inverted again.
pub fn support_demo(geometry: Geometry, p: &TransformParams, radius: f64) -> Result<SupportDemo> {
    let t = Transform::forward(geometry);
    if !matches!(geometry, Geometry::Affine | Geometry::Hyperbolic | Geometry::Chord) {
        return Err(Error::Domain(format!("no support experiment for the {t} transform")));
    }
    let q = QuadratureSpec::precise();
    let kind = t.variable();
    let (lo, hi) = kind.range();
    if !(radius > lo && radius < hi) {
        return Err(Error::Domain(format!("radius {radius} outside ({lo}, {hi})")));
    }
    let f = if geometry == Geometry::Hyperbolic {
        // Bump in the distance, written in its cosh.
        let b = radius.acosh();
        let g = Family::Bump { a: b }.profile(ArgKind::GeodesicDistance)?;
        reparam(&g, kind)?
    } else {
        Family::Bump { a: radius }.profile(kind)?
    };
    let tf = t.profile(p, &f, &q)?;
    let upper = if hi.is_finite() { 0.95 * hi } else { lo + 2.0 * (radius - lo) };
    let probe = |a: f64, b: f64, m: usize| -> Vec<f64> { (0..m).map(|i| a + (b - a) * (i as f64 + 0.5) / m as f64).collect() };
    let transform_beyond = probe(radius, upper, 32).into_iter().map(|x| tf.eval(x).abs()).fold(0.0, f64::max);
    // Hide the support from the inversion: only values are passed on.
    let data = {
        let tf = tf.clone();
        let (l, h) = (tf.lo(), tf.hi());
        Profile1D::new(l, h, kind, move |x| tf.eval(x))?.with_decay(crate::fracint::Decay::Rapid)
    };
    let spec = InvertSpec { upper: Some(upper), ..InvertSpec::default() };
    let rec = invert_radial(t, p, &data, &spec)?;
    let sup = probe(lo, radius, 64).into_iter().map(|x| f.eval(x).abs()).fold(0.0, f64::max);
    let reconstruction_beyond = probe(radius, upper, 64).into_iter().map(|x| rec.eval(x).abs()).fold(0.0, f64::max) / sup;
    let reconstruction_inside =
        probe(lo, radius, 64).into_iter().map(|x| (rec.eval(x) - f.eval(x)).abs()).fold(0.0, f64::max) / sup;
    Ok(SupportDemo { radius, transform_beyond, reconstruction_beyond, reconstruction_inside })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(a: &Profile1D, b: &Profile1D, lo: f64, hi: f64) -> f64 {
        let xs: Vec<f64> = (0..32).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / 32.0).collect();
        let sup = xs.iter().map(|&x| b.eval(x).abs()).fold(0.0, f64::max);
        xs.iter().map(|&x| (a.eval(x) - b.eval(x)).abs()).fold(0.0, f64::max) / sup
    }

    #[test]
    fn affine_gaussian_round_trip() {
        let p = TransformParams::new(4, 1, 2).unwrap();
        let a = p.alpha();
        let data = Profile1D::on_range(ArgKind::EuclideanRadius, move |s| PI.powf(a) * (-s * s).exp())
            .with_decay(crate::fracint::Decay::Rapid);
        let rec = invert_radial(Transform::forward(Geometry::Affine), &p, &data, &InvertSpec::default()).unwrap();
        let g = Family::Gaussian { sigma: 1.0 }.profile(ArgKind::EuclideanRadius).unwrap();
        assert!(rel_err(&rec, &g, 0.0, 3.5) < 1e-4);
    }

    #[test]
    fn zero_round_trip() {
        let p = TransformParams::new(3, 0, 1).unwrap();
        let z = Profile1D::zero(0.0, f64::INFINITY, ArgKind::EuclideanRadius).unwrap();
        let rec = invert_radial(Transform::forward(Geometry::Affine), &p, &z, &InvertSpec::default()).unwrap();
        assert!((0..20).all(|i| rec.eval(0.1 * i as f64) == 0.0));
    }

    #[test]
    fn hyperbolic_and_dual_round_trips() {
        let q = QuadratureSpec::precise();
        for (n, j, k) in [(3, 0, 1), (4, 0, 2), (5, 1, 3)] {
            let p = TransformParams::new(n, j, k).unwrap();
            let g = Family::Gaussian { sigma: 1.0 }.profile(ArgKind::GeodesicDistance).unwrap();
            for t in [Transform::forward(Geometry::Hyperbolic), Transform::dual(Geometry::Hyperbolic), Transform::dual(Geometry::Affine)] {
                let input = if t.geometry == Geometry::Affine {
                    Family::Gaussian { sigma: 1.0 }.profile(ArgKind::EuclideanRadius).unwrap()
                } else {
                    reparam(&g, t.variable()).unwrap()
                };
                let data = t.profile(&p, &input, &q).unwrap();
                let rec = invert_radial(t, &p, &data, &InvertSpec::default()).unwrap();
                let (lo, hi) = (input.lo(), if t.variable() == ArgKind::CoshDistance { 3f64.cosh() } else { 3.5 });
                let e = rel_err(&rec, &input, lo, hi);
                assert!(e < 1e-4, "{t} {p}: {e:.2e}");
            }
        }
    }

    #[test]
    fn out_of_range_data_is_rejected() {
        // A jump is not the transform of anything locally integrable.
        let p = TransformParams::new(4, 0, 1).unwrap();
        let step = Profile1D::on_range(ArgKind::EuclideanRadius, |s| if s < 1.0 { 1.0 } else { 0.0 }).with_support_hi(1.0, 0.0);
        let r = invert_radial(Transform::forward(Geometry::Affine), &p, &step, &InvertSpec::default());
        assert!(r.is_err(), "{:?}", r.map(|f| f.eval(0.5)));
    }

    #[test]
    fn support_is_recovered() {
        let p = TransformParams::new(4, 0, 2).unwrap();
        let d = support_demo(Geometry::Affine, &p, 1.0).unwrap();
        assert_eq!(d.transform_beyond, 0.0);
        assert!(d.reconstruction_beyond < 1e-3, "{d:?}");
        assert!(d.reconstruction_inside < 1e-4, "{d:?}");
    }
}
