//! Two-sided stochastic checks of ∫ (R f) φ = ∫ f (R* φ).
//!
//! Each side is a nested estimate: the outer element is drawn from the
//! invariant measure with a radial importance density, the inner transform
//! from one draw of the corresponding Monte Carlo operator.

use super::affine::{draw_containing as affine_containing, draw_inside as affine_inside, draw_plane};
use super::hyper::{draw_containing as hyper_containing, draw_inside as hyper_inside, draw_placement};
use super::{estimate, AffinePlane, HyperGeodesic, Integrand, McEstimate, McSpec};
use crate::error::{Error, Result};
use crate::fracint::{Profile1D, QuadratureSpec};
use crate::models::{integrate_radial, Model};
use crate::params::TransformParams;
use crate::radon_radial::{Geometry, Transform};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualityKind {
    /// Affine planes in ℝⁿ.
    Affine,
    /// Chords of the unit ball: affine planes with both functions cut to |·| < 1.
    Chord,
    /// Geodesic submanifolds of the hyperboloid.
    Hyperbolic,
}

impl DualityKind {
    pub const ALL: [DualityKind; 3] = [DualityKind::Affine, DualityKind::Chord, DualityKind::Hyperbolic];

    fn geometry(self) -> Geometry {
        match self {
            DualityKind::Affine => Geometry::Affine,
            DualityKind::Chord => Geometry::Chord,
            DualityKind::Hyperbolic => Geometry::Hyperbolic,
        }
    }

    fn model(self) -> Model {
        match self {
            DualityKind::Affine => Model::EuclideanAffine,
            DualityKind::Chord => Model::BeltramiKlein,
            DualityKind::Hyperbolic => Model::Hyperboloid,
        }
    }
}

/// The pair (f, φ): functions on j- and k-elements of one geometry.
#[derive(Clone)]
pub enum DualityInput {
    Planes { f: Integrand<AffinePlane>, phi: Integrand<AffinePlane> },
    Geodesics { f: Integrand<HyperGeodesic>, phi: Integrand<HyperGeodesic> },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityCheck {
    /// ∫ (R f)(ζ) φ(ζ) dζ.
    pub lhs: McEstimate,
    /// ∫ f(τ)(R* φ)(τ) dτ.
    pub rhs: McEstimate,
}

impl DualityCheck {
    pub fn combined_std_error(&self) -> f64 {
        self.lhs.std_error.hypot(self.rhs.std_error)
    }

    /// |lhs − rhs| in combined standard errors.
    pub fn z_score(&self) -> f64 {
        let d = (self.lhs.value - self.rhs.value).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.combined_std_error()
        }
    }
}

fn inside_ball(f: &Integrand<AffinePlane>) -> Integrand<AffinePlane> {
    let g = f.clone();
    Integrand::new(f.scale, move |t: &AffinePlane| if t.distance() < 1.0 { g.eval(t) } else { 0.0 })
        .expect("scale already validated")
}

/// Both sides of the duality, on independent streams of `mc`.
pub fn duality_check_mc(kind: DualityKind, p: &TransformParams, input: &DualityInput, mc: &McSpec) -> Result<DualityCheck> {
    mc.validate()?;
    let (n, j, k) = (p.n, p.j, p.k);
    let lhs_mc = mc.with_stream(2 * mc.stream_id);
    let rhs_mc = mc.with_stream(2 * mc.stream_id + 1);
    match (kind, input) {
        (DualityKind::Affine | DualityKind::Chord, DualityInput::Planes { f, phi }) => {
            let (f, phi) = if kind == DualityKind::Chord { (inside_ball(f), inside_ball(phi)) } else { (f.clone(), phi.clone()) };
            let lhs = estimate(&lhs_mc, |rng| {
                let (zeta, w) = draw_plane(n, k, phi.scale, rng);
                let v = phi.eval(&zeta);
                Ok(if v == 0.0 { 0.0 } else { v * w * affine_inside(p, &f, &zeta, rng) })
            })?;
            let rhs = estimate(&rhs_mc, |rng| {
                let (tau, w) = draw_plane(n, j, f.scale, rng);
                let v = f.eval(&tau);
                if v == 0.0 {
                    return Ok(0.0);
                }
                let basis = tau.frame.complement();
                Ok(v * w * affine_containing(p, &phi, &tau, &basis, rng))
            })?;
            Ok(DualityCheck { lhs, rhs })
        }
        (DualityKind::Hyperbolic, DualityInput::Geodesics { f, phi }) => {
            let lhs = estimate(&lhs_mc, |rng| {
                let (pl, w) = draw_placement(n, k, phi.scale, rng);
                let v = phi.eval(&pl.geodesic(k)?);
                Ok(if v == 0.0 { 0.0 } else { v * w * hyper_inside(p, f, &pl.isometry(k), rng)? })
            })?;
            let rhs = estimate(&rhs_mc, |rng| {
                let (pl, w) = draw_placement(n, j, f.scale, rng);
                let t = pl.geodesic(j)?;
                let v = f.eval(&t);
                if v == 0.0 {
                    return Ok(0.0);
                }
                let comp = t.complement();
                Ok(v * w * hyper_containing(p, phi, &t, &comp, rng))
            })?;
            Ok(DualityCheck { lhs, rhs })
        }
        _ => Err(Error::Domain(format!("the {kind:?} duality needs functions on its own kind of element"))),
    }
}

/// ∫ (R f)(ζ) φ(ζ) dζ for radial f and φ, by deterministic quadrature.
pub fn radial_duality_value(kind: DualityKind, p: &TransformParams, f: &Profile1D, phi: &Profile1D, q: &QuadratureSpec) -> Result<f64> {
    let model = kind.model();
    let t = Transform::forward(kind.geometry());
    let rf = crate::models::reparam(&t.profile(p, f, q)?, model.canonical_kind())?;
    let phi = crate::models::reparam(phi, model.canonical_kind())?;
    let (rf_decay, phi_decay) = (rf.decay(), phi.decay());
    let prod = Profile1D::new(rf.lo(), rf.hi(), rf.kind(), move |x| {
        let a = phi.eval(x);
        if a == 0.0 {
            0.0
        } else {
            a * rf.eval(x)
        }
    })?;
    // Rapidly decaying factors make the product rapid too; otherwise the
    // growth check in integrate_radial decides.
    let rapid = |d| matches!(d, Some(crate::fracint::Decay::Rapid));
    let prod = if rapid(rf_decay) || rapid(phi_decay) { prod.with_decay(crate::fracint::Decay::Rapid) } else { prod };
    integrate_radial(model, p.n, p.k, &prod, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::fracint::ArgKind;

    fn profile(kind: ArgKind, sigma: f64) -> Profile1D {
        Family::Gaussian { sigma }.profile(kind).unwrap()
    }

    #[test]
    fn radial_gaussians_match_quadrature() {
        let q = QuadratureSpec::default();
        let mc = McSpec::new(40, 100_000);
        let cases = [
            (DualityKind::Affine, (3, 0, 1)),
            (DualityKind::Affine, (4, 1, 2)),
            (DualityKind::Chord, (3, 0, 2)),
            (DualityKind::Hyperbolic, (3, 0, 1)),
            (DualityKind::Hyperbolic, (4, 1, 2)),
        ];
        for (kind, (n, j, k)) in cases {
            let p = TransformParams::new(n, j, k).unwrap();
            let (input, f, phi) = match kind {
                DualityKind::Hyperbolic => {
                    let (f, phi) = (profile(ArgKind::GeodesicDistance, 1.0), profile(ArgKind::GeodesicDistance, 0.8));
                    let input = DualityInput::Geodesics {
                        f: Integrand::zonal(f.clone(), 1.0).unwrap(),
                        phi: Integrand::zonal(phi.clone(), 0.8).unwrap(),
                    };
                    (input, f, phi)
                }
                _ => {
                    let s = if kind == DualityKind::Chord { 0.5 } else { 1.0 };
                    let (f, phi) = (profile(ArgKind::EuclideanRadius, s), profile(ArgKind::EuclideanRadius, 0.8 * s));
                    let input = DualityInput::Planes {
                        f: Integrand::radial(f.clone(), s).unwrap(),
                        phi: Integrand::radial(phi.clone(), 0.8 * s).unwrap(),
                    };
                    let kind_of = if kind == DualityKind::Chord { ArgKind::BallRadius } else { ArgKind::EuclideanRadius };
                    let cut = |g: &Profile1D| {
                        let g = g.clone();
                        if kind_of == ArgKind::BallRadius {
                            Profile1D::new(0.0, 1.0, ArgKind::BallRadius, move |r| g.eval(r)).unwrap()
                        } else {
                            g
                        }
                    };
                    (input, cut(&f), cut(&phi))
                }
            };
            let exact = radial_duality_value(kind, &p, &f, &phi, &q).unwrap();
            let c = duality_check_mc(kind, &p, &input, &mc).unwrap();
            assert!(c.lhs.z_score(exact) < 4.0, "{kind:?} {p}: lhs {:?} vs {exact}", c.lhs);
            assert!(c.rhs.z_score(exact) < 4.0, "{kind:?} {p}: rhs {:?} vs {exact}", c.rhs);
        }
    }

    #[test]
    fn zero_gives_zero() {
        let p = TransformParams::new(3, 0, 1).unwrap();
        let input = DualityInput::Planes { f: Integrand::zero(), phi: Integrand::new(1.0, |_: &AffinePlane| 1.0).unwrap() };
        let c = duality_check_mc(DualityKind::Affine, &p, &input, &McSpec::new(1, 1000)).unwrap();
        assert_eq!((c.lhs.value, c.rhs.value), (0.0, 0.0));
        assert!(duality_check_mc(DualityKind::Hyperbolic, &p, &input, &McSpec::new(1, 10)).is_err());
    }

    #[test]
    fn non_radial_sides_agree() {
        let p = TransformParams::new(3, 0, 1).unwrap();
        let f = Integrand::new(1.0, |t: &AffinePlane| {
            let x = &t.offset;
            (-x.norm_squared()).exp() * (1.0 + x[0] + x[1] * x[1])
        })
        .unwrap();
        let phi = Integrand::new(1.0, |z: &AffinePlane| {
            let u = z.frame.columns();
            (-z.offset.norm_squared()).exp() * (1.0 + u[(0, 0)].powi(2) + z.offset[2])
        })
        .unwrap();
        let c = duality_check_mc(DualityKind::Affine, &p, &DualityInput::Planes { f, phi }, &McSpec::new(3, 100_000)).unwrap();
        assert!(c.z_score() < 4.0, "{c:?}");
    }
}
