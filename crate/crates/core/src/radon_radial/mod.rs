//! Forward and dual transforms of radial and zonal functions.
//!
//! Every transform here is a weighted Erdélyi–Kober integral of order
//! α = (k−j)/2: right-sided for the forward transforms in the Euclidean,
//! ball and hyperboloid models, left-sided for the elliptic forward
//! transform and for every dual transform. The projective transforms are
//! the hyperboloid ones conjugated by weight operators.

mod closed_form;
mod existence;
mod invert;

pub use closed_form::{closed_form_pair, ClosedFormId, ClosedFormPair};
pub use existence::{existence_predicate, sharpness_demo, Condition, ExistenceInput, Verdict};
pub use invert::{invert_radial, support_demo, InvertSpec, SupportDemo};

use crate::error::{Error, Result};
use crate::fracint::{ek_left, ek_right, ArgKind, Decay, Profile1D, QuadratureSpec};
use crate::models::{apply_weight, reparam, Model, WeightOpId};
use crate::params::TransformParams;
use crate::special::sphere_area;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// Affine planes in ℝⁿ.
    Affine,
    /// Chords of the unit ball.
    Chord,
    /// Great subspheres, written in cos or sin of the angle to the origin element.
    Elliptic,
    /// Geodesic submanifolds of the hyperboloid, in cosh or sinh of the distance.
    Hyperbolic,
    /// The projective model: angles below π/4.
    Projective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transform {
    pub geometry: Geometry,
    pub direction: Direction,
}

impl Transform {
    pub const fn new(geometry: Geometry, direction: Direction) -> Self {
        Transform { geometry, direction }
    }

    pub const fn forward(geometry: Geometry) -> Self {
        Transform::new(geometry, Direction::Forward)
    }

    pub const fn dual(geometry: Geometry) -> Self {
        Transform::new(geometry, Direction::Dual)
    }

    /// Variable of both the input profile and the output coordinate.
    pub fn variable(&self) -> ArgKind {
        use Direction::*;
        use Geometry::*;
        match (self.geometry, self.direction) {
            (Affine, _) => ArgKind::EuclideanRadius,
            (Chord, _) => ArgKind::BallRadius,
            (Elliptic, Forward) => ArgKind::CosAngle,
            (Elliptic, Dual) => ArgKind::SinAngle,
            (Hyperbolic, Forward) => ArgKind::CoshDistance,
            (Hyperbolic, Dual) => ArgKind::SinhDistance,
            (Projective, _) => ArgKind::Angle,
        }
    }

    pub fn model(&self) -> Model {
        match self.geometry {
            Geometry::Affine => Model::EuclideanAffine,
            Geometry::Chord => Model::BeltramiKlein,
            Geometry::Elliptic => Model::Elliptic,
            Geometry::Hyperbolic => Model::Hyperboloid,
            Geometry::Projective => Model::Projective,
        }
    }

    /// Whether the transform is a left-sided integral (needs values below the point).
    pub fn is_left_sided(&self) -> bool {
        self.direction == Direction::Dual || self.geometry == Geometry::Elliptic
    }

    /// Range of the output coordinate.
    pub fn range(&self) -> (f64, f64) {
        match self.geometry {
            Geometry::Projective => (0.0, FRAC_PI_4),
            _ => self.variable().range(),
        }
    }

    /// The input in this transform's variable.
    pub fn prepare(&self, f: &Profile1D) -> Result<Profile1D> {
        if self.geometry == Geometry::Projective {
            Model::Projective.expect(f)?;
            return Ok(f.clone());
        }
        let g = reparam(f, self.variable())?;
        if self.geometry == Geometry::Chord && g.hi() > 1.0 {
            return Err(Error::ArgKind { expected: "a profile on the unit ball".into(), found: format!("domain up to {}", g.hi()) });
        }
        Ok(g)
    }

    fn check_point(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.range();
        let ok = match self.variable() {
            ArgKind::CosAngle => x > lo && x <= hi,
            ArgKind::SinAngle => x >= lo && x <= hi,
            _ => x >= lo && x < hi,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Range(format!("{x} is not a valid {} for the {self} transform", self.variable())))
        }
    }

    /// Value of the transform of `f` at `x`.
    pub fn eval(&self, p: &TransformParams, f: &Profile1D, x: f64, q: &QuadratureSpec) -> Result<f64> {
        self.check_point(x)?;
        let f = self.prepare(f)?;
        self.eval_prepared(p, &f, x, q)
    }

    fn eval_prepared(&self, p: &TransformParams, f: &Profile1D, x: f64, q: &QuadratureSpec) -> Result<f64> {
        let a = p.alpha();
        let pia = PI.powf(a);
        match (self.geometry, self.direction) {
            (Geometry::Projective, d) => {
                let g = projective_route(p, d, f, q)?;
                g.try_eval(x)
            }
            (Geometry::Affine | Geometry::Chord, Direction::Forward) => Ok(pia * ek_right(a, f, x, q)?),
            (Geometry::Hyperbolic, Direction::Forward) => {
                let g = f.times_power(p.jf() - 1.0);
                Ok(pia * x.powf(1.0 - p.kf()) * ek_right(a, &g, x, q)?)
            }
            (Geometry::Elliptic, Direction::Forward) => {
                let g = f.times_power(p.jf() - 1.0);
                let c = sphere_area(p.j) * pia / sphere_area(p.k);
                Ok(c * x.powf(1.0 - p.kf()) * ek_left(a, &g, x, q)?)
            }
            (_, Direction::Dual) => {
                let pw = f.origin_power();
                if pw + (p.n - p.k) as f64 <= 0.0 {
                    return Err(Error::LocalIntegrability(format!(
                        "s^{} φ(s) is not integrable at 0 (φ ~ s^{pw})",
                        (p.n - p.k - 1) as f64
                    )));
                }
                if x == 0.0 {
                    // Probability-normalised kernel: Φ(0) = φ(0).
                    return if pw > 0.0 {
                        Ok(0.0)
                    } else if pw == 0.0 {
                        Ok(f.eval(0.0))
                    } else {
                        Err(Error::Divergence(format!("dual transform of s^{pw} is infinite at the origin")))
                    };
                }
                let g = f.times_power((p.n - p.k) as f64 - 2.0);
                Ok(dual_constant(p) * x.powf(p.jf() + 2.0 - p.nf()) * ek_left(a, &g, x, q)?)
            }
        }
    }

    /// The transform of `f` as a lazily evaluated profile with propagated hints.
    /// Points where evaluation fails read as NaN.
    pub fn profile(&self, p: &TransformParams, f: &Profile1D, q: &QuadratureSpec) -> Result<Profile1D> {
        let f = self.prepare(f)?;
        if self.geometry == Geometry::Projective {
            return projective_route(p, self.direction, &f, q);
        }
        let a = p.alpha();
        // Fail early on divergent inputs rather than returning NaN everywhere.
        match self.direction {
            Direction::Forward if self.geometry != Geometry::Elliptic => {
                let g = if self.geometry == Geometry::Hyperbolic { f.times_power(p.jf() - 1.0) } else { f.clone() };
                if !crate::fracint::check_decay_with(&g, a, g.lo().max(1.0), q) {
                    return Err(Error::Divergence(format!(
                        "the {self} transform diverges: the profile decays too slowly"
                    )));
                }
            }
            Direction::Dual => {
                if f.origin_power() + (p.n - p.k) as f64 <= 0.0 {
                    return Err(Error::LocalIntegrability(format!(
                        "dual transform needs φ(s) = o(s^{}) at 0",
                        p.kf() - p.nf()
                    )));
                }
            }
            _ => {}
        }
        let (lo, hi) = match self.variable() {
            ArgKind::CosAngle | ArgKind::SinAngle => (0.0, 1.0),
            _ => (f.lo(), f.hi()),
        };
        let t = *self;
        let (pp, qq, src) = (*p, *q, f.clone());
        let mut out = f.remap(lo, hi, self.variable(), move |x| t.eval_prepared(&pp, &src, x, &qq).unwrap_or(f64::NAN));
        out = out.with_regularity(f.regularity());
        match (self.geometry, self.direction) {
            (Geometry::Elliptic, Direction::Forward) => {
                out = out.with_origin_power(f.origin_power());
                if let Some(e) = f.support_lo() {
                    out = out.with_support_lo(e.at, e.power + a);
                }
            }
            (_, Direction::Forward) => {
                let pw = f.origin_power();
                if f.lo() == 0.0 && pw + 2.0 * a < 0.0 {
                    out = out.with_origin_power(pw + 2.0 * a);
                }
                if let Some(e) = f.support_hi() {
                    out = out.with_support_hi(e.at, e.power + a);
                } else {
                    out = match f.decay() {
                        Some(Decay::Power(r)) => {
                            // Hyperbolic: weights r^{j−1} and s^{1−k} cancel the shift.
                            let shift = if self.geometry == Geometry::Hyperbolic { 0.0 } else { 2.0 * a };
                            out.with_decay(Decay::Power(r - shift))
                        }
                        Some(d) => out.with_decay(d),
                        None => out,
                    };
                }
            }
            (_, Direction::Dual) => {
                out = out.with_origin_power(f.origin_power());
                let nk = (p.n - p.k) as f64;
                if hi.is_infinite() {
                    let rho = match (f.support_hi_hint(), f.decay()) {
                        (Some(_), _) | (_, Some(Decay::Rapid)) | (_, Some(Decay::Exponential(_))) => nk,
                        (_, Some(Decay::Power(r))) => r.min(nk),
                        _ => f64::NAN,
                    };
                    if rho.is_finite() {
                        out = out.with_decay(Decay::Power(rho));
                    }
                } else if let Some(e) = f.support_hi() {
                    if e.at >= hi && e.power + a < 0.0 {
                        out = out.with_support_hi(hi, e.power + a);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let g = match self.geometry {
            Geometry::Affine => "affine",
            Geometry::Chord => "chord",
            Geometry::Elliptic => "elliptic",
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Projective => "projective",
        };
        match self.direction {
            Direction::Forward => write!(f, "{g}"),
            Direction::Dual => write!(f, "dual {g}"),
        }
    }
}

/// π^α σ_{n−k−1}/σ_{n−j−1}: the dual transforms' constant in EK form.
fn dual_constant(p: &TransformParams) -> f64 {
    PI.powf(p.alpha()) * sphere_area(p.n - p.k - 1) / sphere_area(p.n - p.j - 1)
}

/// Projective transforms as hyperboloid transforms between weight operators:
/// forward N₁⁻¹ R_H M₁⁻¹, dual Q₁⁻¹ R*_H P₁⁻¹.
fn projective_route(p: &TransformParams, d: Direction, f: &Profile1D, q: &QuadratureSpec) -> Result<Profile1D> {
    let (pre, post) = match d {
        Direction::Forward => (WeightOpId::M1inv, WeightOpId::N1inv),
        Direction::Dual => (WeightOpId::P1inv, WeightOpId::Q1inv),
    };
    let h = apply_weight(pre, p, f)?;
    let th = Transform::new(Geometry::Hyperbolic, d).profile(p, &h, q)?;
    let g = reparam(&th, ArgKind::GeodesicDistance)?;
    apply_weight(post, p, &g)
}

pub fn radon_affine_radial(p: &TransformParams, f0: &Profile1D, s: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::forward(Geometry::Affine).eval(p, f0, s, q)
}

pub fn dual_affine_radial(p: &TransformParams, phi0: &Profile1D, r: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::dual(Geometry::Affine).eval(p, phi0, r, q)
}

pub fn radon_chord_radial(p: &TransformParams, f0: &Profile1D, s: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::forward(Geometry::Chord).eval(p, f0, s, q)
}

pub fn dual_chord_radial(p: &TransformParams, phi0: &Profile1D, r: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::dual(Geometry::Chord).eval(p, phi0, r, q)
}

/// `f1` is a function of cos of the angle; `s` is the cosine too.
pub fn radon_elliptic_zonal(p: &TransformParams, f1: &Profile1D, s: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::forward(Geometry::Elliptic).eval(p, f1, s, q)
}

/// `phi1` is a function of sin of the angle; `r` is the sine too.
pub fn dual_elliptic_zonal(p: &TransformParams, phi1: &Profile1D, r: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::dual(Geometry::Elliptic).eval(p, phi1, r, q)
}

/// `f1` is a function of cosh of the distance; `s` ≥ 1 is the cosh too.
pub fn radon_hyper_zonal(p: &TransformParams, f1: &Profile1D, s: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::forward(Geometry::Hyperbolic).eval(p, f1, s, q)
}

/// `phi1` is a function of sinh of the distance; `r` is the sinh too.
pub fn dual_hyper_zonal(p: &TransformParams, phi1: &Profile1D, r: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::dual(Geometry::Hyperbolic).eval(p, phi1, r, q)
}

/// Angles in [0, π/4).
pub fn radon_projective_zonal(p: &TransformParams, f: &Profile1D, theta: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::forward(Geometry::Projective).eval(p, f, theta, q)
}

pub fn dual_projective_zonal(p: &TransformParams, phi: &Profile1D, theta: f64, q: &QuadratureSpec) -> Result<f64> {
    Transform::dual(Geometry::Projective).eval(p, phi, theta, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::special::beta;

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn params() -> Vec<TransformParams> {
        [(4, 0, 2), (3, 0, 1), (5, 1, 2), (5, 1, 3)].iter().map(|&(n, j, k)| TransformParams::new(n, j, k).unwrap()).collect()
    }

    #[test]
    fn affine_gaussian() {
        let g = Family::Gaussian { sigma: 1.0 }.profile(ArgKind::EuclideanRadius).unwrap();
        for p in params() {
            for &s in &[0.0, 0.4, 1.7] {
                let v = radon_affine_radial(&p, &g, s, &q()).unwrap();
                assert!(rel(v, PI.powf(p.alpha()) * (-s * s).exp()) < 1e-10, "{p} {s}");
            }
        }
    }

    #[test]
    fn affine_zero_and_power() {
        let p = TransformParams::new(4, 0, 2).unwrap();
        let z = Profile1D::zero(0.0, f64::INFINITY, ArgKind::EuclideanRadius).unwrap();
        assert_eq!(radon_affine_radial(&p, &z, 0.7, &q()).unwrap(), 0.0);
        // r^{j−k−2} beyond 1: π/s² for s > 1.
        let f = Profile1D::on_range(ArgKind::EuclideanRadius, |r| if r > 1.0 { r.powi(-4) } else { 0.0 })
            .with_support_lo(1.0, 0.0)
            .with_decay(Decay::Power(4.0));
        for &s in &[1.2, 2.0, 5.0] {
            assert!(rel(radon_affine_radial(&p, &f, s, &q()).unwrap(), PI / (s * s)) < 1e-10);
        }
        // Decay exactly at the threshold diverges.
        let slow = Profile1D::on_range(ArgKind::EuclideanRadius, |r| (1.0 + r * r).powf(-1.0)).with_decay(Decay::Power(2.0));
        assert!(matches!(radon_affine_radial(&p, &slow, 1.0, &q()), Err(Error::Divergence(_))));
    }

    #[test]
    fn dual_constant_is_fixed() {
        let one = Profile1D::on_range(ArgKind::EuclideanRadius, |_| 1.0);
        for p in params() {
            for &r in &[0.0, 0.3, 2.0] {
                assert!(rel(dual_affine_radial(&p, &one, r, &q()).unwrap(), 1.0) < 1e-12, "{p} {r}");
            }
        }
        let sh = Profile1D::on_range(ArgKind::SinhDistance, |_| 1.0);
        let p = TransformParams::new(5, 1, 3).unwrap();
        assert!(rel(dual_hyper_zonal(&p, &sh, 0.8, &q()).unwrap(), 1.0) < 1e-12);
    }

    #[test]
    fn dual_power_and_singularity() {
        let p = TransformParams::new(4, 0, 2).unwrap();
        let f = Profile1D::on_range(ArgKind::EuclideanRadius, |_| 1.0);
        // s^{α+k−n} with α = 2 is the constant here, λ₂ = 1.
        assert!(rel(dual_affine_radial(&p, &f, 0.6, &q()).unwrap(), 1.0) < 1e-12);
        let sing = Profile1D::on_range(ArgKind::EuclideanRadius, |s| s.powi(-2)).with_origin_power(-2.0);
        assert!(dual_affine_radial(&p, &sing, 0.5, &q()).is_err());
        let ok = Profile1D::on_range(ArgKind::SinhDistance, |s| s.powf(-1.5)).with_origin_power(-1.5);
        let v = dual_hyper_zonal(&p, &ok, 0.5, &q()).unwrap();
        let v2 = dual_hyper_zonal(&p, &ok, 1.0, &q()).unwrap();
        assert!(rel(v / v2, 0.5f64.powf(-1.5)) < 1e-10);
    }

    #[test]
    fn chord_examples() {
        let p = TransformParams::new(4, 0, 2).unwrap();
        let one = Profile1D::on_range(ArgKind::BallRadius, |_| 1.0);
        for &s in &[0.0, 0.5, 0.9] {
            assert!(rel(radon_chord_radial(&p, &one, s, &q()).unwrap(), PI * (1.0 - s * s)) < 1e-12);
        }
        let w = Profile1D::on_range(ArgKind::BallRadius, |s| (1.0 - s * s).powi(-2)).with_support_hi(1.0, -2.0);
        assert!(rel(dual_chord_radial(&p, &w, 0.6, &q()).unwrap(), 1.5625) < 1e-10);
        let b = Family::Bump { a: 0.5 }.profile(ArgKind::BallRadius).unwrap();
        assert_eq!(radon_chord_radial(&p, &b, 0.6, &q()).unwrap(), 0.0);
        assert!(radon_chord_radial(&p, &one, 1.2, &q()).is_err());
    }

    #[test]
    fn elliptic_examples() {
        let one = Profile1D::on_range(ArgKind::CosAngle, |_| 1.0);
        for p in params() {
            assert!(rel(radon_elliptic_zonal(&p, &one, 0.7, &q()).unwrap(), 1.0) < 1e-12);
            // t^pw maps to a multiple of s^pw.
            let pw = 1.5;
            let f = Profile1D::on_range(ArgKind::CosAngle, move |t| t.powf(pw)).with_origin_power(pw);
            let (j, k) = (p.jf(), p.kf());
            let c = sphere_area(p.j) * sphere_area(p.k - p.j - 1) / sphere_area(p.k) * 0.5
                * beta((j + pw + 1.0) / 2.0, (k - j) / 2.0);
            let s: f64 = 0.8;
            assert!(rel(radon_elliptic_zonal(&p, &f, s, &q()).unwrap(), c * s.powf(pw)) < 1e-11);
            let sn = Profile1D::on_range(ArgKind::SinAngle, |_| 1.0);
            assert!(rel(dual_elliptic_zonal(&p, &sn, 0.4, &q()).unwrap(), 1.0) < 1e-12);
        }
        // Direct quadrature of the zonal kernel, j = 0, k = 1, F₁(t) = t².
        let p = TransformParams::new(3, 0, 1).unwrap();
        let f = Profile1D::on_range(ArgKind::CosAngle, |t| t * t);
        let s: f64 = 0.6;
        // σ₀σ₀/σ₁ s⁰ ∫₀ˢ t² (s²−t²)^{−1/2} dt = (2·2/2π)(π s²/4)
        assert!(rel(radon_elliptic_zonal(&p, &f, s, &q()).unwrap(), s * s / 2.0) < 1e-12);
    }

    #[test]
    fn hyperbolic_examples() {
        // Truncated power: √(4−s²)/s² for α = 2, j = 0, k = 1, a = 2.
        let p = TransformParams::new(3, 0, 1).unwrap();
        let f = Profile1D::on_range(ArgKind::CoshDistance, |r| if r < 2.0 { r.powi(-2) } else { 0.0 }).with_support_hi(2.0, 0.0);
        for &s in &[1.0, 1.5, 1.9] {
            let v = radon_hyper_zonal(&p, &f, s, &q()).unwrap();
            assert!(rel(v, (4.0 - s * s).sqrt() / (s * s)) < 1e-10, "{s}: {v}");
        }
        assert!((radon_hyper_zonal(&p, &f, 1.0, &q()).unwrap() - 3f64.sqrt()).abs() < 1e-9);
        // e^{−r²} r^{1−j} ↦ π^α s^{1−k} e^{−s²}
        for p in params() {
            let j = p.jf();
            let g = Profile1D::on_range(ArgKind::CoshDistance, move |r| (-r * r).exp() * r.powf(1.0 - j)).with_decay(Decay::Rapid);
            let s: f64 = 1.3;
            let expect = PI.powf(p.alpha()) * s.powf(1.0 - p.kf()) * (-s * s).exp();
            assert!(rel(radon_hyper_zonal(&p, &g, s, &q()).unwrap(), expect) < 1e-10);
        }
        // Below the sharp decay threshold.
        let p = TransformParams::new(4, 1, 3).unwrap();
        let slow = Profile1D::on_range(ArgKind::CoshDistance, |r| r.powi(-2)).with_decay(Decay::Power(2.0));
        assert!(matches!(radon_hyper_zonal(&p, &slow, 1.5, &q()), Err(Error::Divergence(_))));
    }

    #[test]
    fn geodesic_inputs_are_reparametrised() {
        let p = TransformParams::new(4, 0, 2).unwrap();
        let g = Family::Gaussian { sigma: 1.0 }.profile(ArgKind::GeodesicDistance).unwrap();
        let c = reparam(&g, ArgKind::CoshDistance).unwrap();
        let a = radon_hyper_zonal(&p, &g, 1.4, &q()).unwrap();
        let b = radon_hyper_zonal(&p, &c, 1.4, &q()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn projective_matches_composition() {
        let p = TransformParams::new(4, 1, 2).unwrap();
        let z = Profile1D::zero(0.0, FRAC_PI_4, ArgKind::Angle).unwrap();
        assert_eq!(radon_projective_zonal(&p, &z, 0.3, &q()).unwrap(), 0.0);
        // R_H f = N₁ R_Π M₁ f.
        let f = Family::Gaussian { sigma: 1.0 }.profile(ArgKind::GeodesicDistance).unwrap();
        let m1f = apply_weight(WeightOpId::M1, &p, &f).unwrap();
        for &t in &[0.2f64, 0.7, 1.5] {
            let th = t.tanh().atan();
            let lhs = radon_hyper_zonal(&p, &f, t.cosh(), &q()).unwrap();
            let rhs = (2.0 * t).cosh().powf(-0.5 * (p.jf() + 1.0)) * radon_projective_zonal(&p, &m1f, th, &q()).unwrap();
            assert!(rel(lhs, rhs) < 1e-10, "{t}: {lhs} {rhs}");
        }
    }

    #[test]
    fn profiles_agree_with_pointwise() {
        let p = TransformParams::new(5, 1, 3).unwrap();
        let g = Family::Gaussian { sigma: 0.8 }.profile(ArgKind::EuclideanRadius).unwrap();
        for t in [Transform::forward(Geometry::Affine), Transform::dual(Geometry::Affine)] {
            let pr = t.profile(&p, &g, &q()).unwrap();
            assert_eq!(pr.eval(0.9), t.eval(&p, &g, 0.9, &q()).unwrap());
        }
    }
}
