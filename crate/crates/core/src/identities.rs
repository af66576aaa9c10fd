//! Transition and duality identities between the radial transforms, each
//! checked by computing both sides independently.
//!
//! The transitions compare a transform with the same transform routed
//! through another model and its weight operators. The dualities compare
//! two integrals over Grassmannians, with the transform inside one of them.

use crate::error::Result;
use crate::fracint::{ArgKind, Decay, Profile1D, QuadratureSpec};
use crate::models::{apply_weight, integrate_radial, Model, WeightOpId};
use crate::params::TransformParams;
use crate::radon_radial::{Geometry, Transform};
use crate::special::{gamma, lambda1, lambda2, sphere_area};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Dimensions every identity is checked at.
pub const TRIPLES: [(usize, usize, usize); 4] = [(4, 0, 2), (3, 0, 1), (5, 1, 2), (5, 1, 3)];

/// Relative tolerance of the suite.
pub const TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// R_H f = N R_B M f.
    HyperbolicViaBall,
    /// R_A f = N₀ R_E M₀ f.
    AffineViaElliptic,
    /// R_H f = N₁ R_Π M₁ f, with R_Π the elliptic transform of the zero extension.
    HyperbolicViaProjective,
    /// R*_A φ = U R̃_A V φ, R̃_A acting from (n−k−1)- to (n−j−1)-planes.
    DualViaKelvin,
    /// ∫ R_B f = ∫ f over chords.
    ChordIntegral,
    /// ∫ (R_B f)(ζ) |ζ|^{α+k−n} = λ₂ ∫ f(τ) |τ|^{α+k−n}.
    ChordPowerWeight,
    /// ∫ (R_B f)(ζ)(1−|ζ|²)^{(j−n)/2} = ∫ f(τ)(1−|τ|²)^{(k−n)/2}.
    ChordBallWeight,
    /// The dual chord transform against the cap (a²−|τ|²)₊^{α/2−1}, a ∈ {1/2, 1}.
    DualChordCap,
    /// The dual chord transform against (1−|τ|²)^{α/2−1}|τ|^{−α−k+j}.
    DualChordSingular,
    /// The dual affine transform integrated over a ball of radius a.
    DualAffineBall,
    /// Kelvin change of variables between k- and (n−k−1)-planes.
    KelvinMeasure,
    /// Euclidean planes against elliptic subspheres.
    EuclideanEllipticMeasure,
    /// Chords against hyperboloid geodesics.
    BallHyperboloidMeasure,
    /// Hyperboloid geodesics against the projective model.
    HyperboloidProjectiveMeasure,
    /// ∫ R_H f = ∫ f.
    HyperbolicIntegral,
    /// ∫ (R_H f)(z)/cosh^{n−j}|z| = ∫ f(t)/cosh^{n−k}|t|.
    HyperbolicCoshWeight,
    /// As above with tanh^{α+k−n} on both sides and λ₂.
    HyperbolicTanhPower,
    /// The dual hyperboloid transform integrated over a geodesic ball.
    DualHyperbolicCap,
    /// ∫ (R*_H φ)(t)/cosh^{k−1+α}|t| = λ₁ ∫ φ(z)/cosh^{k−1+α}|z|.
    DualHyperbolicCosh,
    /// As above with tanh^{j−k−α} and tanh^{−α}.
    DualHyperbolicTanh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Transition,
    Duality,
}

/// One evaluation of both sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub params: TransformParams,
    pub at: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl Case {
    pub fn rel(&self) -> f64 {
        let d = (self.lhs - self.rhs).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.rhs.abs()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub max_rel: f64,
    pub tolerance: f64,
    pub cases: usize,
    pub passed: bool,
    pub error: Option<String>,
}

impl Identity {
    pub const ALL: [Identity; 20] = {
        use Identity::*;
        [
            HyperbolicViaBall,
            AffineViaElliptic,
            HyperbolicViaProjective,
            DualViaKelvin,
            ChordIntegral,
            ChordPowerWeight,
            ChordBallWeight,
            DualChordCap,
            DualChordSingular,
            DualAffineBall,
            KelvinMeasure,
            EuclideanEllipticMeasure,
            BallHyperboloidMeasure,
            HyperboloidProjectiveMeasure,
            HyperbolicIntegral,
            HyperbolicCoshWeight,
            HyperbolicTanhPower,
            DualHyperbolicCap,
            DualHyperbolicCosh,
            DualHyperbolicTanh,
        ]
    };

    pub fn group(self) -> Group {
        use Identity::*;
        match self {
            HyperbolicViaBall | AffineViaElliptic | HyperbolicViaProjective | DualViaKelvin => Group::Transition,
            _ => Group::Duality,
        }
    }

    pub fn name(self) -> &'static str {
        use Identity::*;
        match self {
            HyperbolicViaBall => "hyperbolic_via_ball",
            AffineViaElliptic => "affine_via_elliptic",
            HyperbolicViaProjective => "hyperbolic_via_projective",
            DualViaKelvin => "dual_via_kelvin",
            ChordIntegral => "chord_integral",
            ChordPowerWeight => "chord_power_weight",
            ChordBallWeight => "chord_ball_weight",
            DualChordCap => "dual_chord_cap",
            DualChordSingular => "dual_chord_singular",
            DualAffineBall => "dual_affine_ball",
            KelvinMeasure => "kelvin_measure",
            EuclideanEllipticMeasure => "euclidean_elliptic_measure",
            BallHyperboloidMeasure => "ball_hyperboloid_measure",
            HyperboloidProjectiveMeasure => "hyperboloid_projective_measure",
            HyperbolicIntegral => "hyperbolic_integral",
            HyperbolicCoshWeight => "hyperbolic_cosh_weight",
            HyperbolicTanhPower => "hyperbolic_tanh_power",
            DualHyperbolicCap => "dual_hyperbolic_cap",
            DualHyperbolicCosh => "dual_hyperbolic_cosh",
            DualHyperbolicTanh => "dual_hyperbolic_tanh",
        }
    }

    /// Both sides at one set of dimensions.
    pub fn cases(self, p: &TransformParams, q: &QuadratureSpec) -> Result<Vec<Case>> {
        use Identity::*;
        let pairs = match self {
            HyperbolicViaBall => hyperbolic_via_ball(p, q)?,
            AffineViaElliptic => affine_via_elliptic(p, q)?,
            HyperbolicViaProjective => hyperbolic_via_projective(p, q)?,
            DualViaKelvin => dual_via_kelvin(p, q)?,
            ChordIntegral | ChordPowerWeight | ChordBallWeight => vec![chord_duality(self, p, q)?],
            DualChordCap => [0.5, 1.0].iter().map(|&a| dual_chord_cap(p, a, q)).collect::<Result<_>>()?,
            DualChordSingular => vec![dual_chord_singular(p, q)?],
            DualAffineBall => vec![dual_affine_ball(p, q)?],
            KelvinMeasure => vec![kelvin_measure(p, q)?],
            EuclideanEllipticMeasure | BallHyperboloidMeasure | HyperboloidProjectiveMeasure => {
                [p.j, p.k].iter().map(|&d| measure(self, p.n, d, q)).collect::<Result<_>>()?
            }
            HyperbolicIntegral | HyperbolicCoshWeight | HyperbolicTanhPower => vec![hyperbolic_duality(self, p, q)?],
            DualHyperbolicCap => vec![dual_hyperbolic_cap(p, q)?],
            DualHyperbolicCosh | DualHyperbolicTanh => vec![dual_hyperbolic(self, p, q)?],
        };
        Ok(pairs.into_iter().map(|(at, lhs, rhs)| Case { params: *p, at, lhs, rhs }).collect())
    }

    /// Runs the identity at every triple of [`TRIPLES`].
    pub fn check(self, q: &QuadratureSpec) -> IdentityReport {
        let results: Vec<Result<Vec<Case>>> = TRIPLES
            .par_iter()
            .map(|&(n, j, k)| TransformParams::new(n, j, k).and_then(|p| self.cases(&p, q)))
            .collect();
        let mut max_rel: f64 = 0.0;
        let mut cases = 0;
        let mut error = None;
        for r in results {
            match r {
                Ok(cs) => {
                    cases += cs.len();
                    for c in cs {
                        let e = c.rel();
                        max_rel = if e.is_nan() { f64::NAN } else { max_rel.max(e) };
                    }
                }
                Err(e) => {
                    error.get_or_insert(e.to_string());
                }
            }
        }
        let passed = error.is_none() && max_rel <= TOLERANCE;
        IdentityReport { name: self.name().into(), max_rel, tolerance: TOLERANCE, cases, passed, error }
    }
}

/// Runs the identities in parallel, reporting in the given order.
pub fn run_suite(ids: &[Identity], q: &QuadratureSpec) -> Vec<IdentityReport> {
    ids.par_iter().map(|id| id.check(q)).collect()
}

// ---------------------------------------------------------------------------
// Profiles

fn gaussian(kind: ArgKind, c: f64) -> Profile1D {
    Profile1D::on_range(kind, move |r| (-c * r * r).exp()).with_decay(Decay::Rapid)
}

/// A new profile on the domain of `f` with values f·w and no hints.
fn times<W>(f: &Profile1D, w: W) -> Profile1D
where
    W: Fn(f64) -> f64 + Send + Sync + 'static,
{
    let g = f.clone();
    Profile1D::new(f.lo(), f.hi(), f.kind(), move |x| {
        let v = g.eval(x);
        if v == 0.0 {
            0.0
        } else {
            v * w(x)
        }
    })
    .expect("domain already validated")
}

/// f(x) for x < a, zero beyond, with f ~ (a − x)^power at the edge.
fn cut(f: &Profile1D, a: f64, power: f64) -> Profile1D {
    times(f, move |x| if x < a { 1.0 } else { 0.0 }).with_support_hi(a, power)
}

/// A profile on the hyperboloid in geodesic distance, read off one in cosh
/// or sinh. Past `FAR` the square of the variable overflows; every profile
/// used here is negligible long before.
fn in_distance(f: &Profile1D) -> Profile1D {
    const FAR: f64 = 300.0;
    let g = f.clone();
    let to: fn(f64) -> f64 = match f.kind() {
        ArgKind::CoshDistance => f64::cosh,
        ArgKind::SinhDistance => f64::sinh,
        _ => return f.clone(),
    };
    Profile1D::on_range(ArgKind::GeodesicDistance, move |t| if t > FAR { 0.0 } else { g.eval(to(t)) })
}

// ---------------------------------------------------------------------------
// Transitions

const HYPER_POINTS: [f64; 4] = [0.2, 0.7, 1.3, 2.0];

fn hyperbolic_via_ball(p: &TransformParams, q: &QuadratureSpec) -> Result<Vec<(f64, f64, f64)>> {
    let f = gaussian(ArgKind::GeodesicDistance, 1.0);
    let rh = Transform::forward(Geometry::Hyperbolic);
    let mf = apply_weight(WeightOpId::M, p, &f)?;
    let rb = Transform::forward(Geometry::Chord).profile(p, &mf, q)?;
    let route = apply_weight(WeightOpId::N, p, &rb)?;
    HYPER_POINTS.iter().map(|&z| Ok((z, rh.eval(p, &f, z.cosh(), q)?, route.try_eval(z)?))).collect()
}

fn affine_via_elliptic(p: &TransformParams, q: &QuadratureSpec) -> Result<Vec<(f64, f64, f64)>> {
    let f = gaussian(ArgKind::EuclideanRadius, 1.0);
    let ra = Transform::forward(Geometry::Affine);
    let mf = apply_weight(WeightOpId::M0, p, &f)?;
    let re = Transform::forward(Geometry::Elliptic).profile(p, &mf, q)?;
    let re = crate::models::reparam(&re, ArgKind::Angle)?;
    let route = apply_weight(WeightOpId::N0, p, &re)?;
    [0.3, 0.9, 1.7, 2.5].iter().map(|&s| Ok((s, ra.eval(p, &f, s, q)?, route.try_eval(s)?))).collect()
}

fn hyperbolic_via_projective(p: &TransformParams, q: &QuadratureSpec) -> Result<Vec<(f64, f64, f64)>> {
    let f = gaussian(ArgKind::GeodesicDistance, 1.0);
    let rh = Transform::forward(Geometry::Hyperbolic);
    let mf = apply_weight(WeightOpId::M1, p, &f)?;
    // The projective transform is the elliptic one of the extension by zero
    // beyond π/4, where M₁ f is flat.
    let g = mf.clone();
    let ext = Profile1D::new(0.0, FRAC_PI_2, ArgKind::Angle, move |th| if th < FRAC_PI_4 { g.eval(th) } else { 0.0 })?
        .with_support_hi(FRAC_PI_4, 0.0);
    let re = Transform::forward(Geometry::Elliptic);
    HYPER_POINTS
        .iter()
        .map(|&z| {
            let th = z.tanh().atan();
            let rpi = re.eval(p, &ext, th.cos(), q)?;
            Ok((z, rh.eval(p, &f, z.cosh(), q)?, (2.0 * z).cosh().powf(-(p.jf() + 1.0) / 2.0) * rpi))
        })
        .collect()
}

fn dual_via_kelvin(p: &TransformParams, q: &QuadratureSpec) -> Result<Vec<(f64, f64, f64)>> {
    let phi = gaussian(ArgKind::EuclideanRadius, 1.0);
    let ra_dual = Transform::dual(Geometry::Affine);
    let v = apply_weight(WeightOpId::V, p, &phi)?;
    let r_tilde = Transform::forward(Geometry::Affine).profile(&p.kelvin(), &v, q)?;
    let route = apply_weight(WeightOpId::U, p, &r_tilde)?;
    [0.4, 0.8, 1.5, 2.2].iter().map(|&r| Ok((r, ra_dual.eval(p, &phi, r, q)?, route.try_eval(r)?))).collect()
}

// ---------------------------------------------------------------------------
// Dualities on the ball and in ℝⁿ

const ALPHA_POWER: f64 = 2.5;
const ALPHA_SINGULAR: f64 = 1.5;

fn ball_profile() -> Profile1D {
    Profile1D::on_range(ArgKind::BallRadius, |r| (-2.0 * r * r).exp() * (1.0 + r * r) * (1.0 - r * r).powi(3))
        .with_support_hi(1.0, 3.0)
}

fn chord_duality(id: Identity, p: &TransformParams, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let (n, j, k) = (p.nf(), p.jf(), p.kf());
    let f = ball_profile();
    let rb = Transform::forward(Geometry::Chord).profile(p, &f, q)?;
    let a = p.alpha();
    let b = Model::BeltramiKlein;
    let (lhs, rhs) = match id {
        Identity::ChordIntegral => (rb.with_support_hi(1.0, 3.0 + a), f.clone()),
        Identity::ChordPowerWeight => {
            let e = ALPHA_POWER + k - n;
            let c = lambda2(ALPHA_POWER, p.n, p.j, p.k)?;
            (
                times(&rb, move |s| s.powf(e)).with_origin_power(e).with_support_hi(1.0, 3.0 + a),
                times(&f, move |r| c * r.powf(e)).with_origin_power(e).with_support_hi(1.0, 3.0),
            )
        }
        Identity::ChordBallWeight => {
            let (el, er) = ((j - n) / 2.0, (k - n) / 2.0);
            (
                times(&rb, move |s| (1.0 - s * s).powf(el)).with_support_hi(1.0, 3.0 + a + el),
                times(&f, move |r| (1.0 - r * r).powf(er)).with_support_hi(1.0, 3.0 + er),
            )
        }
        _ => unreachable!(),
    };
    Ok((0.0, integrate_radial(b, p.n, p.k, &lhs, q)?, integrate_radial(b, p.n, p.j, &rhs, q)?))
}

fn dual_chord_cap(p: &TransformParams, a: f64, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let kj = p.kf() - p.jf();
    let phi = gaussian(ArgKind::BallRadius, 1.0);
    let rbs = Transform::dual(Geometry::Chord).profile(p, &phi, q)?;
    let (el, er) = (ALPHA_POWER / 2.0 - 1.0, (ALPHA_POWER + kj) / 2.0 - 1.0);
    let c = lambda1(ALPHA_POWER, p.j, p.k)?;
    let lhs = cut(&times(&rbs, move |r| (a * a - r * r).powf(el)), a, el);
    let rhs = cut(&times(&phi, move |s| c * (a * a - s * s).powf(er)), a, er);
    let b = Model::BeltramiKlein;
    Ok((a, integrate_radial(b, p.n, p.j, &lhs, q)?, integrate_radial(b, p.n, p.k, &rhs, q)?))
}

fn dual_chord_singular(p: &TransformParams, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let kj = p.kf() - p.jf();
    let al = ALPHA_SINGULAR;
    let phi = gaussian(ArgKind::BallRadius, 1.0);
    let rbs = Transform::dual(Geometry::Chord).profile(p, &phi, q)?;
    let (el, er) = (al / 2.0 - 1.0, (al + kj) / 2.0 - 1.0);
    let c = lambda1(al, p.j, p.k)?;
    let lhs = times(&rbs, move |r| (1.0 - r * r).powf(el) * r.powf(-al - kj))
        .with_origin_power(-al - kj)
        .with_support_hi(1.0, el);
    let rhs = times(&phi, move |s| c * (1.0 - s * s).powf(er) * s.powf(-al))
        .with_origin_power(-al)
        .with_support_hi(1.0, er);
    let b = Model::BeltramiKlein;
    Ok((0.0, integrate_radial(b, p.n, p.j, &lhs, q)?, integrate_radial(b, p.n, p.k, &rhs, q)?))
}

fn dual_affine_ball(p: &TransformParams, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let a = 1.3;
    let h = p.alpha();
    let phi = gaussian(ArgKind::EuclideanRadius, 1.0);
    let ras = Transform::dual(Geometry::Affine).profile(p, &phi, q)?;
    let c = PI.powf(h) / gamma(1.0 + h);
    let lhs = cut(&ras, a, 0.0);
    let rhs = cut(&times(&phi, move |s| c * (a * a - s * s).powf(h)), a, h);
    let e = Model::EuclideanAffine;
    Ok((a, integrate_radial(e, p.n, p.j, &lhs, q)?, integrate_radial(e, p.n, p.k, &rhs, q)?))
}

fn kelvin_measure(p: &TransformParams, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let (n, j) = (p.nf(), p.jf());
    let w = move |s: f64| (1.0 + s * s).powf(-(j + 1.0) / 2.0);
    let lhs = Profile1D::on_range(ArgKind::EuclideanRadius, move |s| (-s * s).exp() * w(s)).with_decay(Decay::Rapid);
    let c = sphere_area(p.n - p.k - 1) / sphere_area(p.k);
    let rhs = Profile1D::on_range(ArgKind::EuclideanRadius, move |r| {
        if r == 0.0 {
            0.0
        } else {
            c * r.powf(j - n) * (-1.0 / (r * r)).exp() * w(r)
        }
    })
    .with_decay(Decay::Power(n + 1.0));
    let e = Model::EuclideanAffine;
    Ok((0.0, integrate_radial(e, p.n, p.k, &lhs, q)?, integrate_radial(e, p.n, p.n - p.k - 1, &rhs, q)?))
}

// ---------------------------------------------------------------------------
// Measures of one Grassmannian in two models

fn measure(id: Identity, n: usize, d: usize, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let nf = n as f64;
    let ratio = sphere_area(n) / sphere_area(d);
    let (lhs, rhs) = match id {
        Identity::EuclideanEllipticMeasure => {
            let f = gaussian(ArgKind::EuclideanRadius, 1.0);
            let g = Profile1D::on_range(ArgKind::Angle, move |th| {
                let c = th.cos();
                if c <= 0.0 {
                    0.0
                } else {
                    ratio * (-th.tan().powi(2)).exp() / c.powf(nf + 1.0)
                }
            })
            .with_support_hi(FRAC_PI_2, 0.0);
            (integrate_radial(Model::EuclideanAffine, n, d, &f, q)?, integrate_radial(Model::Elliptic, n, d, &g, q)?)
        }
        Identity::BallHyperboloidMeasure => {
            let f = Profile1D::on_range(ArgKind::BallRadius, |r| (1.0 - r * r).powi(2)).with_support_hi(1.0, 2.0);
            let g = Profile1D::on_range(ArgKind::GeodesicDistance, move |t| t.cosh().powf(-(nf + 5.0)))
                .with_decay(Decay::Exponential(nf + 5.0));
            (
                integrate_radial(Model::BeltramiKlein, n, d, &f, q)?,
                integrate_radial(Model::Hyperboloid, n, d, &g, q)?,
            )
        }
        Identity::HyperboloidProjectiveMeasure => {
            let f = gaussian(ArgKind::GeodesicDistance, 1.0);
            let g = Profile1D::new(0.0, FRAC_PI_4, ArgKind::Angle, move |th| {
                let c2 = (2.0 * th).cos();
                if c2 <= 0.0 {
                    0.0
                } else {
                    ratio * (-th.tan().atanh().powi(2)).exp() / c2.powf((nf + 1.0) / 2.0)
                }
            })?;
            (integrate_radial(Model::Hyperboloid, n, d, &f, q)?, integrate_radial(Model::Projective, n, d, &g, q)?)
        }
        _ => unreachable!(),
    };
    Ok((d as f64, lhs, rhs))
}

// ---------------------------------------------------------------------------
// Dualities on the hyperboloid

fn hyperbolic_duality(id: Identity, p: &TransformParams, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let (n, j, k) = (p.nf(), p.jf(), p.kf());
    let f = gaussian(ArgKind::GeodesicDistance, 1.0);
    let rh = in_distance(&Transform::forward(Geometry::Hyperbolic).profile(p, &f, q)?).with_decay(Decay::Rapid);
    let (lhs, rhs) = match id {
        Identity::HyperbolicIntegral => (rh, f),
        Identity::HyperbolicCoshWeight => (
            times(&rh, move |z| z.cosh().powf(j - n)).with_decay(Decay::Rapid),
            times(&f, move |t| t.cosh().powf(k - n)).with_decay(Decay::Rapid),
        ),
        Identity::HyperbolicTanhPower => {
            let al = ALPHA_SINGULAR;
            let e = al + k - n;
            let c = lambda2(al, p.n, p.j, p.k)?;
            (
                times(&rh, move |z| z.tanh().powf(e) * z.cosh().powf(j - n)).with_decay(Decay::Rapid).with_origin_power(e),
                times(&f, move |t| c * t.tanh().powf(e) * t.cosh().powf(k - n))
                    .with_decay(Decay::Rapid)
                    .with_origin_power(e),
            )
        }
        _ => unreachable!(),
    };
    let h = Model::Hyperboloid;
    Ok((0.0, integrate_radial(h, p.n, p.k, &lhs, q)?, integrate_radial(h, p.n, p.j, &rhs, q)?))
}

fn dual_hyperbolic_profile(p: &TransformParams, q: &QuadratureSpec) -> Result<(Profile1D, Profile1D)> {
    let phi = gaussian(ArgKind::GeodesicDistance, 1.0);
    let rhs = in_distance(&Transform::dual(Geometry::Hyperbolic).profile(p, &phi, q)?);
    Ok((phi, rhs))
}

fn dual_hyperbolic_cap(p: &TransformParams, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let (j, k) = (p.jf(), p.kf());
    let b: f64 = 1.1;
    let cb = b.cosh();
    let (phi, rhs_star) = dual_hyperbolic_profile(p, q)?;
    let lhs = cut(&times(&rhs_star, move |t| t.cosh().powf(-(k + 1.0))), b, 0.0);
    let h = (k - j) / 2.0;
    let c2 = PI.powf(h) / (gamma(h + 1.0) * cb.powf(k - j));
    let rhs = cut(&times(&phi, move |z| c2 * (cb * cb - z.cosh().powi(2)).powf(h) * z.cosh().powf(-(k + 1.0))), b, h);
    let m = Model::Hyperboloid;
    Ok((b, integrate_radial(m, p.n, p.j, &lhs, q)?, integrate_radial(m, p.n, p.k, &rhs, q)?))
}

fn dual_hyperbolic(id: Identity, p: &TransformParams, q: &QuadratureSpec) -> Result<(f64, f64, f64)> {
    let (n, j, k) = (p.nf(), p.jf(), p.kf());
    let al = ALPHA_SINGULAR;
    let (phi, rhs_star) = dual_hyperbolic_profile(p, q)?;
    let c = lambda1(al, p.j, p.k)?;
    let w = k - 1.0 + al;
    // The dual transform decays like e^{−(n−k)t}; the weight adds w.
    let rate = n - k + w;
    let (lhs, rhs) = match id {
        Identity::DualHyperbolicCosh => (
            times(&rhs_star, move |t| t.cosh().powf(-w)).with_decay(Decay::Exponential(rate)),
            times(&phi, move |z| c * z.cosh().powf(-w)).with_decay(Decay::Rapid),
        ),
        Identity::DualHyperbolicTanh => {
            let (el, er) = (j - k - al, -al);
            (
                times(&rhs_star, move |t| t.tanh().powf(el) * t.cosh().powf(-w))
                    .with_decay(Decay::Exponential(rate))
                    .with_origin_power(el),
                times(&phi, move |z| c * z.tanh().powf(er) * z.cosh().powf(-w))
                    .with_decay(Decay::Rapid)
                    .with_origin_power(er),
            )
        }
        _ => unreachable!(),
    };
    let m = Model::Hyperboloid;
    Ok((0.0, integrate_radial(m, p.n, p.j, &lhs, q)?, integrate_radial(m, p.n, p.k, &rhs, q)?))
}
