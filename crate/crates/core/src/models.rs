//! The five models, their radial coordinates and measures, and the weight
//! operators that carry radial profiles from one model to another.
//!
//! Coordinates convert through a common ρ: the Euclidean and ball radius
//! are ρ itself, the elliptic and projective angles are atan ρ, and the
//! hyperbolic distance is atanh ρ. The projective model is the part of the
//! elliptic one with ρ < 1.

use crate::error::{Error, Result};
use crate::fracint::quad::{jacobi, semi_infinite, Tail};
use crate::fracint::{growth, ArgKind, Decay, Profile1D, QuadratureSpec};
use crate::params::TransformParams;
use crate::special::{beta, sphere_area};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    EuclideanAffine,
    BeltramiKlein,
    Hyperboloid,
    Elliptic,
    Projective,
}

impl Model {
    pub const ALL: [Model; 5] =
        [Model::EuclideanAffine, Model::BeltramiKlein, Model::Hyperboloid, Model::Elliptic, Model::Projective];

    /// Variable in which profiles on this model are stored.
    pub fn canonical_kind(self) -> ArgKind {
        match self {
            Model::EuclideanAffine => ArgKind::EuclideanRadius,
            Model::BeltramiKlein => ArgKind::BallRadius,
            Model::Hyperboloid => ArgKind::GeodesicDistance,
            Model::Elliptic | Model::Projective => ArgKind::Angle,
        }
    }

    /// Range of the canonical radial variable.
    pub fn range(self) -> (f64, f64) {
        match self {
            Model::Projective => (0.0, FRAC_PI_4),
            m => m.canonical_kind().range(),
        }
    }

    /// Whether a profile is written in this model's canonical variable.
    pub fn accepts(self, f: &Profile1D) -> bool {
        let k = f.kind();
        match self {
            Model::Elliptic => k == ArgKind::Angle && f.hi() > FRAC_PI_4 * (1.0 + 1e-12),
            Model::Projective => k == ArgKind::Angle && f.hi() <= FRAC_PI_4 * (1.0 + 1e-12),
            m => m.canonical_kind().compatible(k),
        }
    }

    pub(crate) fn expect(self, f: &Profile1D) -> Result<()> {
        if self.accepts(f) {
            Ok(())
        } else {
            Err(Error::ArgKind {
                expected: format!("{} ({self:?})", self.canonical_kind()),
                found: format!("{} on [{}, {})", f.kind(), f.lo(), f.hi()),
            })
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Model::EuclideanAffine => "euclidean_affine",
            Model::BeltramiKlein => "beltrami_klein",
            Model::Hyperboloid => "hyperboloid",
            Model::Elliptic => "elliptic",
            Model::Projective => "projective",
        };
        f.write_str(s)
    }
}

// ---------------------------------------------------------------------------
// Coordinates

#[derive(Clone, Copy, PartialEq)]
enum Family {
    Euclid,
    Hyper,
    Angular,
}

fn family(k: ArgKind) -> Family {
    use ArgKind::*;
    match k {
        EuclideanRadius => Family::Euclid,
        BallRadius | CoshDistance | SinhDistance | TanhDistance | GeodesicDistance => Family::Hyper,
        CosAngle | SinAngle | Angle => Family::Angular,
    }
}

fn in_range(v: f64, kind: ArgKind) -> Result<()> {
    let (lo, hi) = kind.range();
    let ok = match kind {
        ArgKind::CosAngle => v > lo && v <= hi,
        ArgKind::CoshDistance => v >= lo && v < hi,
        _ => v >= lo && v < hi,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Range(format!("{v} is not a valid {kind}")))
    }
}

/// Hyperbolic distance from any hyperbolic kind.
fn to_t(v: f64, k: ArgKind) -> f64 {
    match k {
        ArgKind::CoshDistance => v.acosh(),
        ArgKind::SinhDistance => v.asinh(),
        ArgKind::TanhDistance | ArgKind::BallRadius => v.atanh(),
        _ => v,
    }
}

fn from_t(t: f64, k: ArgKind) -> f64 {
    match k {
        ArgKind::CoshDistance => t.cosh(),
        ArgKind::SinhDistance => t.sinh(),
        ArgKind::TanhDistance | ArgKind::BallRadius => t.tanh(),
        _ => t,
    }
}

fn to_theta(v: f64, k: ArgKind) -> f64 {
    match k {
        ArgKind::CosAngle => v.acos(),
        ArgKind::SinAngle => v.asin(),
        _ => v,
    }
}

fn from_theta(th: f64, k: ArgKind) -> f64 {
    match k {
        ArgKind::CosAngle => th.cos(),
        ArgKind::SinAngle => th.sin(),
        _ => th,
    }
}

fn to_rho(v: f64, k: ArgKind) -> f64 {
    match family(k) {
        Family::Euclid => v,
        Family::Hyper => to_t(v, k).tanh(),
        Family::Angular => to_theta(v, k).tan(),
    }
}

fn from_rho(rho: f64, k: ArgKind) -> Result<f64> {
    match family(k) {
        Family::Euclid => Ok(rho),
        Family::Hyper => {
            if rho >= 1.0 {
                return Err(Error::Range(format!("ρ = {rho} has no hyperbolic counterpart")));
            }
            Ok(from_t(rho.atanh(), k))
        }
        Family::Angular => Ok(from_theta(rho.atan(), k)),
    }
}

/// Converts a distance coordinate between variables.
pub fn convert_distance(value: f64, from: ArgKind, to: ArgKind) -> Result<f64> {
    in_range(value, from)?;
    let out = match (family(from), family(to)) {
        (a, b) if a == b && a == Family::Hyper => from_t(to_t(value, from), to),
        (a, b) if a == b && a == Family::Angular => from_theta(to_theta(value, from), to),
        _ => from_rho(to_rho(value, from), to)?,
    };
    in_range(out, to)?;
    Ok(out)
}

/// Converts a canonical radial coordinate between models.
pub fn convert_model_distance(value: f64, from: Model, to: Model) -> Result<f64> {
    let (lo, hi) = from.range();
    if !(value >= lo && value < hi) {
        return Err(Error::Range(format!("{value} outside the {from} range [{lo}, {hi})")));
    }
    let out = convert_distance(value, from.canonical_kind(), to.canonical_kind())?;
    let (lo, hi) = to.range();
    if !(out >= lo && out < hi) {
        return Err(Error::Range(format!("{value} in the {from} model has no {to} counterpart")));
    }
    Ok(out)
}

/// r ↦ 1/r on the punctured space.
pub fn kelvin_map(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("the Kelvin map needs 0 < r < ∞, got {r}")));
    }
    Ok(1.0 / r)
}

/// Rewrites a profile in another variable of the same geometry
/// (e.g. hyperbolic distance to its cosh, angle to its sine).
pub fn reparam(f: &Profile1D, to: ArgKind) -> Result<Profile1D> {
    let from = f.kind();
    if from == to {
        return Ok(f.clone());
    }
    if from.compatible(to) {
        return Ok(f.clone().with_kind(to));
    }
    let fam = family(from);
    if fam != family(to) || fam == Family::Euclid {
        return Err(Error::ArgKind { expected: format!("a variable convertible to {to}"), found: from.to_string() });
    }
    let conv = move |v: f64| -> f64 {
        match fam {
            Family::Hyper => from_t(to_t(v, to), from),
            _ => from_theta(to_theta(v, to), from),
        }
    };
    let src = f.clone();
    let decreasing = matches!(to, ArgKind::CosAngle) != matches!(from, ArgKind::CosAngle);
    let (a, b) = (conv_domain(f.lo(), from, to), conv_domain(f.hi(), from, to));
    let (lo, hi) = if decreasing { (b, a) } else { (a, b) };
    let mut out = f.remap(lo, hi, to, move |v| src.eval(conv(v)));

    // Behaviour at the far end, expressed in the new variable.
    match fam {
        Family::Hyper => {
            if let Some(l) = hyper_rate(f) {
                out = set_hyper_rate(out, l);
            }
        }
        _ => {
            if let Some(q) = angular_end_power(f) {
                out = set_angular_end_power(out, q);
            }
        }
    }
    // Near the origin element.
    let near = |k: ArgKind| !matches!(k, ArgKind::CoshDistance | ArgKind::CosAngle);
    if near(from) && near(to) && f.origin_power() != 0.0 {
        out = out.with_origin_power(f.origin_power());
    }
    // Interior support edges.
    for (edge, upper) in [(f.support_lo(), false), (f.support_hi_hint(), true)] {
        if let Some(e) = edge {
            if e.at > f.lo() && e.at < f.hi() {
                let at = conv_domain(e.at, from, to);
                out = if upper != decreasing { out.with_support_hi(at, e.power) } else { out.with_support_lo(at, e.power) };
            }
        }
    }
    Ok(out)
}

fn conv_domain(v: f64, from: ArgKind, to: ArgKind) -> f64 {
    if v.is_infinite() {
        return match to {
            ArgKind::TanhDistance | ArgKind::BallRadius => 1.0,
            _ => f64::INFINITY,
        };
    }
    match family(from) {
        Family::Hyper => from_t(to_t(v, from), to),
        _ => from_theta(to_theta(v, from), to),
    }
}

/// λ with f = O(e^{−λt}) at infinity, for hyperbolic profiles; ∞ when f
/// vanishes near infinity.
fn hyper_rate(f: &Profile1D) -> Option<f64> {
    match f.kind() {
        ArgKind::GeodesicDistance | ArgKind::CoshDistance | ArgKind::SinhDistance => {
            if f.support_hi_hint().is_some() {
                return Some(f64::INFINITY);
            }
            match (f.kind(), f.decay()) {
                (_, Some(Decay::Rapid)) => Some(f64::INFINITY),
                (ArgKind::GeodesicDistance, Some(Decay::Exponential(l))) => Some(l),
                (ArgKind::GeodesicDistance, _) => None,
                (_, Some(Decay::Power(l))) => Some(l),
                (_, Some(Decay::Exponential(_))) => Some(f64::INFINITY),
                _ => None,
            }
        }
        _ => {
            let e = f.support_hi()?;
            if e.at < 1.0 {
                Some(f64::INFINITY)
            } else {
                Some(2.0 * e.power)
            }
        }
    }
}

fn set_hyper_rate(p: Profile1D, l: f64) -> Profile1D {
    match p.kind() {
        ArgKind::GeodesicDistance => {
            if l.is_infinite() {
                p.with_decay(Decay::Rapid)
            } else {
                p.with_decay(Decay::Exponential(l))
            }
        }
        ArgKind::CoshDistance | ArgKind::SinhDistance => {
            if l.is_infinite() {
                p.with_decay(Decay::Rapid)
            } else {
                p.with_decay(Decay::Power(l))
            }
        }
        _ => {
            if l.is_infinite() || p.hi() < 1.0 {
                p
            } else {
                p.with_support_hi(1.0, 0.5 * l)
            }
        }
    }
}

/// Exponent q with f ~ (π/2 − θ)^q at the far end of the elliptic range.
fn angular_end_power(f: &Profile1D) -> Option<f64> {
    match f.kind() {
        ArgKind::CosAngle => {
            if f.support_lo().is_some() {
                Some(f64::INFINITY)
            } else {
                Some(f.origin_power())
            }
        }
        ArgKind::SinAngle => {
            let e = f.support_hi()?;
            Some(if e.at < 1.0 { f64::INFINITY } else { 2.0 * e.power })
        }
        _ => {
            let e = f.support_hi()?;
            Some(if e.at < FRAC_PI_2 { f64::INFINITY } else { e.power })
        }
    }
}

fn set_angular_end_power(p: Profile1D, q: f64) -> Profile1D {
    if q.is_infinite() {
        return p;
    }
    match p.kind() {
        ArgKind::CosAngle => p.with_origin_power(q),
        ArgKind::SinAngle => p.with_support_hi(1.0, 0.5 * q),
        _ => p.with_support_hi(FRAC_PI_2, q),
    }
}

// ---------------------------------------------------------------------------
// Weight operators

/// The transition operators between models, and the Kelvin-type pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightOpId {
    M,
    N,
    P,
    Q,
    Minv,
    Ninv,
    Pinv,
    Qinv,
    M0,
    N0,
    P0,
    Q0,
    M0inv,
    N0inv,
    P0inv,
    Q0inv,
    M1,
    N1,
    P1,
    Q1,
    M1inv,
    N1inv,
    P1inv,
    Q1inv,
    U,
    Uinv,
    V,
}

/// Which family of geodesics the operator's functions live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Functions of j-geodesics.
    JSide,
    /// Functions of k-geodesics.
    KSide,
}

impl WeightOpId {
    pub const ALL: [WeightOpId; 27] = {
        use WeightOpId::*;
        [
            M, N, P, Q, Minv, Ninv, Pinv, Qinv, M0, N0, P0, Q0, M0inv, N0inv, P0inv, Q0inv, M1, N1, P1, Q1, M1inv,
            N1inv, P1inv, Q1inv, U, Uinv, V,
        ]
    };

    pub fn inverse(self) -> WeightOpId {
        use WeightOpId::*;
        match self {
            M => Minv,
            Minv => M,
            N => Ninv,
            Ninv => N,
            P => Pinv,
            Pinv => P,
            Q => Qinv,
            Qinv => Q,
            M0 => M0inv,
            M0inv => M0,
            N0 => N0inv,
            N0inv => N0,
            P0 => P0inv,
            P0inv => P0,
            Q0 => Q0inv,
            Q0inv => Q0,
            M1 => M1inv,
            M1inv => M1,
            N1 => N1inv,
            N1inv => N1,
            P1 => P1inv,
            P1inv => P1,
            Q1 => Q1inv,
            Q1inv => Q1,
            U => Uinv,
            Uinv => U,
            V => V,
        }
    }

    /// (source model, target model, role).
    pub fn signature(self) -> (Model, Model, Role) {
        use Model::*;
        use Role::*;
        use WeightOpId as W;
        let (h, b, e, el, pr) = (Hyperboloid, BeltramiKlein, EuclideanAffine, Elliptic, Projective);
        match self {
            W::M => (h, b, JSide),
            W::Minv => (b, h, JSide),
            W::N => (b, h, KSide),
            W::Ninv => (h, b, KSide),
            W::P => (h, b, KSide),
            W::Pinv => (b, h, KSide),
            W::Q => (b, h, JSide),
            W::Qinv => (h, b, JSide),
            W::M0 => (e, el, JSide),
            W::M0inv => (el, e, JSide),
            W::N0 => (el, e, KSide),
            W::N0inv => (e, el, KSide),
            W::P0 => (e, el, KSide),
            W::P0inv => (el, e, KSide),
            W::Q0 => (el, e, JSide),
            W::Q0inv => (e, el, JSide),
            W::M1 => (h, pr, JSide),
            W::M1inv => (pr, h, JSide),
            W::N1 => (pr, h, KSide),
            W::N1inv => (h, pr, KSide),
            W::P1 => (h, pr, KSide),
            W::P1inv => (pr, h, KSide),
            W::Q1 => (pr, h, JSide),
            W::Q1inv => (h, pr, JSide),
            W::U => (e, e, KSide),
            W::Uinv => (e, e, JSide),
            W::V => (e, e, KSide),
        }
    }

    /// Constant factor and exponent e of the weight base^e, where the base
    /// is 1−r² (ball), cos²θ (elliptic), cos 2θ (projective) and their
    /// counterparts 1/cosh²t, 1/(1+r²), 1/cosh 2t on the other side.
    fn weight(self, p: &TransformParams) -> (f64, f64) {
        use WeightOpId::*;
        let (n, j, k) = (p.nf(), p.jf(), p.kf());
        let sk_sj = sphere_area(p.k) / sphere_area(p.j);
        match self {
            M => (1.0, -(k + 1.0) / 2.0),
            Ninv => (1.0, -(j + 1.0) / 2.0),
            P => (1.0, (j - n) / 2.0),
            Qinv => (1.0, (k - n) / 2.0),
            N => (1.0, (j + 1.0) / 2.0),
            Minv => (1.0, (k + 1.0) / 2.0),
            Q => (1.0, (n - k) / 2.0),
            Pinv => (1.0, (n - j) / 2.0),
            M0 | M1 => (sk_sj, -(k + 1.0) / 2.0),
            M0inv | M1inv => (1.0 / sk_sj, (k + 1.0) / 2.0),
            N0inv | N1inv => (1.0, -(j + 1.0) / 2.0),
            P0 | P1 => (1.0, (j - n) / 2.0),
            Q0inv | Q1inv => (1.0, (k - n) / 2.0),
            N0 | N1 => (1.0, (j + 1.0) / 2.0),
            Q0 | Q1 => (1.0, (n - k) / 2.0),
            P0inv | P1inv => (1.0, (n - j) / 2.0),
            U | Uinv | V => unreachable!("Kelvin-type operators are handled separately"),
        }
    }
}

/// Source-variable value for a target-variable value.
fn pullback(src: Model, dst: Model, x: f64) -> f64 {
    use Model::*;
    match (src, dst) {
        (Hyperboloid, BeltramiKlein) => x.atanh(),
        (BeltramiKlein, Hyperboloid) => x.tanh(),
        (EuclideanAffine, Elliptic) => x.tan(),
        (Elliptic, EuclideanAffine) => x.atan(),
        (Hyperboloid, Projective) => x.tan().atanh(),
        (Projective, Hyperboloid) => x.tanh().atan(),
        _ => x,
    }
}

fn base(dst: Model, src: Model, x: f64) -> f64 {
    use Model::*;
    match (dst, src) {
        (BeltramiKlein, _) => 1.0 - x * x,
        (Elliptic, _) => x.cos().powi(2),
        (Projective, _) => (2.0 * x).cos(),
        (EuclideanAffine, _) => 1.0 / (1.0 + x * x),
        (Hyperboloid, BeltramiKlein) => 1.0 / x.cosh().powi(2),
        (Hyperboloid, _) => 1.0 / (2.0 * x).cosh(),
    }
}

/// Far-end exponent in native units: hyperbolic rate λ (e^{−λt}),
/// Euclidean power ρ (r^{−ρ}), or edge power at the end of a finite range.
fn far_exponent(f: &Profile1D, m: Model) -> Option<f64> {
    let end = m.range().1;
    if let Some(e) = f.support_hi_hint() {
        if e.at < end {
            return Some(f64::INFINITY);
        }
    }
    match m {
        Model::Hyperboloid => hyper_rate(f),
        Model::EuclideanAffine => match f.decay() {
            Some(Decay::Power(r)) => Some(r),
            Some(_) => Some(f64::INFINITY),
            None => None,
        },
        _ => f.support_hi().map(|e| e.power),
    }
}

/// Applies a weight operator, returning a lazily composed profile.
pub fn apply_weight(op: WeightOpId, p: &TransformParams, f: &Profile1D) -> Result<Profile1D> {
    let (src, dst, _) = op.signature();
    src.expect(f)?;
    if matches!(op, WeightOpId::U | WeightOpId::Uinv | WeightOpId::V) {
        return kelvin_weight(op, p, f);
    }
    let (coef, e) = op.weight(p);
    let g = f.clone();
    let lo = if f.lo() == 0.0 { 0.0 } else { forward(src, dst, f.lo()) };
    let hi = if f.hi() >= src.range().1 { dst.range().1 } else { forward(src, dst, f.hi()).min(dst.range().1) };
    let mut out = f.remap(lo, hi, dst.canonical_kind(), move |x| {
        let v = g.eval(pullback(src, dst, x));
        if v == 0.0 {
            0.0
        } else {
            coef * base(dst, src, x).powf(e) * v
        }
    });
    if f.origin_power() != 0.0 {
        out = out.with_origin_power(f.origin_power());
    }
    for (edge, upper) in [(f.support_lo(), false), (f.support_hi_hint(), true)] {
        if let Some(ed) = edge {
            if ed.at > f.lo() && ed.at < src.range().1 {
                let at = forward(src, dst, ed.at);
                out = if upper { out.with_support_hi(at, ed.power) } else { out.with_support_lo(at, ed.power) };
            }
        }
    }
    if let Some(x) = far_exponent(f, src) {
        let converted = match (src, dst) {
            (Model::Hyperboloid, _) => 0.5 * x,
            (_, Model::Hyperboloid) => 2.0 * x,
            _ => x,
        };
        let scale = match dst {
            Model::BeltramiKlein | Model::Projective => 1.0,
            _ => 2.0,
        };
        let total = converted + scale * e;
        if total.is_finite() {
            out = match dst {
                Model::Hyperboloid => out.with_decay(if total > 0.0 { Decay::Exponential(total) } else { Decay::Power(0.0) }),
                Model::EuclideanAffine => out.with_decay(Decay::Power(total)),
                _ if out.support_hi_hint().is_none() => out.with_support_hi(dst.range().1, total),
                _ => out,
            };
        } else if matches!(dst, Model::Hyperboloid | Model::EuclideanAffine) && out.support_hi_hint().is_none() {
            out = out.with_decay(Decay::Rapid);
        }
    }
    Ok(out)
}

/// Target-variable value of a source-variable value.
fn forward(src: Model, dst: Model, x: f64) -> f64 {
    use Model::*;
    if x.is_infinite() {
        return dst.range().1;
    }
    match (src, dst) {
        (Hyperboloid, BeltramiKlein) => x.tanh(),
        (BeltramiKlein, Hyperboloid) => x.atanh(),
        (EuclideanAffine, Elliptic) => x.atan(),
        (Elliptic, EuclideanAffine) => x.tan(),
        (Hyperboloid, Projective) => x.tanh().atan(),
        (Projective, Hyperboloid) => x.tan().atanh(),
        _ => x,
    }
}

fn kelvin_weight(op: WeightOpId, p: &TransformParams, f: &Profile1D) -> Result<Profile1D> {
    let (n, j, k) = (p.nf(), p.jf(), p.kf());
    let c = sphere_area(p.n - p.k - 1) / sphere_area(p.n - p.j - 1);
    let (coef, e) = match op {
        WeightOpId::U => (c, k - n),
        WeightOpId::Uinv => (1.0 / c, k - n),
        _ => (1.0, j - n),
    };
    // Origin ↔ infinity.
    let origin = match f.decay() {
        Some(Decay::Power(r)) if f.support_hi_hint().is_none() => Some(r + e),
        _ => None,
    };
    let vanishes_at_origin = origin.is_none_or(|o| o > 0.0);
    let g = f.clone();
    let mut out = f.remap(0.0, f64::INFINITY, ArgKind::EuclideanRadius, move |r| {
        if r == 0.0 {
            return if vanishes_at_origin { 0.0 } else { f64::NAN };
        }
        let v = g.eval(1.0 / r);
        if v == 0.0 {
            0.0
        } else {
            coef * r.powf(e) * v
        }
    });
    if let Some(o) = origin {
        out = out.with_origin_power(o);
    }
    out = match f.support_lo() {
        Some(ed) if ed.at > 0.0 => out.with_support_hi(1.0 / ed.at, ed.power),
        _ => out.with_decay(Decay::Power(f.origin_power() - e)),
    };
    if let Some(ed) = f.support_hi_hint() {
        out = out.with_support_lo(1.0 / ed.at, ed.power);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Measures

fn check_d(n: usize, d: usize) -> Result<()> {
    if d >= n {
        return Err(Error::Domain(format!("need d ≤ n − 1, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// Density w with ∫ f = ∫ f₀(r) w(r) dr over d-geodesics at canonical distance r.
///
/// The elliptic and projective densities are those of the probability
/// measure on the compact Grassmannian; the others are unnormalised.
pub fn measure_density(model: Model, n: usize, d: usize, r: f64) -> Result<f64> {
    check_d(n, d)?;
    let (lo, hi) = model.range();
    if !(r >= lo && r < hi) {
        return Err(Error::Range(format!("{r} outside the {model} range [{lo}, {hi})")));
    }
    let m = (n - d - 1) as i32;
    Ok(match model {
        Model::EuclideanAffine | Model::BeltramiKlein => sphere_area(n - d - 1) * r.powi(m),
        Model::Hyperboloid => sphere_area(n - d - 1) * r.sinh().powi(m) * r.cosh().powi(d as i32),
        Model::Elliptic | Model::Projective => {
            2.0 * r.cos().powi(d as i32) * r.sin().powi(m)
                / beta((d as f64 + 1.0) / 2.0, (n - d) as f64 / 2.0)
        }
    })
}

/// ∫ f over all d-geodesics of the model, for radial f.
pub fn integrate_radial(model: Model, n: usize, d: usize, f: &Profile1D, q: &QuadratureSpec) -> Result<f64> {
    check_d(n, d)?;
    let f = if model.accepts(f) {
        f.clone()
    } else if model == Model::Hyperboloid || model == Model::Elliptic {
        let g = reparam(f, model.canonical_kind())?;
        model.expect(&g)?;
        g
    } else {
        model.expect(f)?;
        unreachable!()
    };
    let m = (n - d - 1) as f64;
    let pl = f.origin_power() + m;
    if !(pl > -1.0) {
        return Err(Error::LocalIntegrability(format!("integrand ~ r^{pl} at the origin")));
    }
    let w = |r: f64| measure_density(model, n, d, r).unwrap_or(0.0);
    let g = |r: f64| {
        let v = f.eval(r);
        if v == 0.0 {
            0.0
        } else {
            v * w(r) / r.powf(pl)
        }
    };
    let end = model.range().1;
    if let Some(e) = f.support_hi_hint() {
        if e.at < end {
            let h = |r: f64| g(r) / (e.at - r).powf(e.power);
            return jacobi(&h, 0.0, e.at, pl, e.power, q);
        }
    }
    if end.is_finite() {
        let mut pr = f.support_hi().map_or(0.0, |e| e.power);
        let d_end = match model {
            Model::Elliptic => d as f64,
            _ => 0.0,
        };
        pr += d_end;
        if !(pr > -1.0) {
            return Err(Error::Divergence(format!("integrand ~ (end − r)^{pr} at the boundary")));
        }
        let h = |r: f64| {
            let v = g(r);
            if v == 0.0 {
                0.0
            } else {
                v / (end - r).powf(pr)
            }
        };
        return jacobi(&h, 0.0, end, pl, pr, q);
    }
    let tail = match (model, f.decay()) {
        (Model::EuclideanAffine, Some(Decay::Power(rho))) => {
            if rho - m <= 1.0 {
                return Err(Error::Divergence(format!("r^{} integrand at infinity", m - rho)));
            }
            Some(Tail::Power(rho - m))
        }
        (Model::Hyperboloid, Some(Decay::Exponential(l))) => {
            if l <= (n - 1) as f64 {
                return Err(Error::Divergence(format!("e^{{{}t}} integrand at infinity", (n - 1) as f64 - l)));
            }
            Some(Tail::Fast)
        }
        (_, Some(_)) => Some(Tail::Fast),
        (_, None) => None,
    };
    let tail = match tail {
        Some(t) => t,
        None => {
            let inc = |a: f64, b: f64| jacobi(&|r: f64| (f.eval(r) * w(r)).abs(), a, b, 0.0, 0.0, q);
            let rep = growth(&inc, 1.0, 12)?;
            if !rep.converges() {
                return Err(Error::Divergence("truncated integrals keep growing".into()));
            }
            Tail::Fast
        }
    };
    semi_infinite(&g, 0.0, pl, tail, 1.0, q)
}

/// Hyperbolic distance from a point of the hyperboloid to the standard
/// k-dimensional sub-hyperboloid spanned by the last k+1 coordinates.
///
/// Coordinates are z = (z₁, …, z_{n+1}) with [z, z] = z_{n+1}² − Σ z_i².
pub fn point_to_subhyperboloid_distance(z: &[f64], k: usize) -> Result<f64> {
    let n1 = z.len();
    if n1 < 2 || k + 1 > n1 - 1 {
        return Err(Error::Domain(format!("need 0 ≤ k ≤ n − 1 for a point of dimension {}", n1 - 1)));
    }
    let last = z[n1 - 1];
    let norm = last * last - z[..n1 - 1].iter().map(|v| v * v).sum::<f64>();
    if (norm - 1.0).abs() > 1e-10 * last * last || !(last > 0.0) {
        return Err(Error::Domain(format!("not a point of the upper hyperboloid: [z, z] = {norm}")));
    }
    // z″ keeps the last k spatial coordinates and the time coordinate.
    let n = n1 - 1;
    let spatial: f64 = z[n - k..n].iter().map(|v| v * v).sum();
    let c = (last * last - spatial).sqrt();
    Ok(c.max(1.0).acosh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family as Fam;
    use std::f64::consts::PI;

    #[test]
    fn conversions() {
        let v = convert_model_distance(1.0, Model::EuclideanAffine, Model::Elliptic).unwrap();
        assert!((v - FRAC_PI_4).abs() < 1e-15);
        let t = convert_model_distance(1f64.tanh(), Model::BeltramiKlein, Model::Hyperboloid).unwrap();
        assert!((t - 1.0).abs() < 1e-14);
        for m in Model::ALL {
            for m2 in Model::ALL {
                assert_eq!(convert_model_distance(0.0, m, m2).unwrap(), 0.0);
            }
        }
        assert!(convert_model_distance(2.0, Model::EuclideanAffine, Model::BeltramiKlein).is_err());
        assert!(convert_distance(1.5, ArgKind::BallRadius, ArgKind::GeodesicDistance).is_err());
    }

    #[test]
    fn conversion_cycle() {
        for i in 0..50 {
            let r0 = 0.95 * i as f64 / 50.0;
            let a = convert_model_distance(r0, Model::EuclideanAffine, Model::Elliptic).unwrap();
            let b = convert_model_distance(a, Model::Elliptic, Model::Hyperboloid).unwrap();
            let c = convert_model_distance(b, Model::Hyperboloid, Model::BeltramiKlein).unwrap();
            let d = convert_model_distance(c, Model::BeltramiKlein, Model::EuclideanAffine).unwrap();
            assert!((d - r0).abs() < 1e-14, "{r0} -> {d}");
        }
    }

    #[test]
    fn kelvin() {
        assert_eq!(kelvin_map(2.0).unwrap(), 0.5);
        assert_eq!(kelvin_map(1.0).unwrap(), 1.0);
        assert!(kelvin_map(0.0).is_err());
        assert_eq!(TransformParams::new(5, 1, 2).unwrap().kelvin().k, 3);
    }

    #[test]
    fn weight_m_on_constant() {
        let p = TransformParams::new(3, 0, 1).unwrap();
        let one = Profile1D::on_range(ArgKind::GeodesicDistance, |_| 1.0);
        let m = apply_weight(WeightOpId::M, &p, &one).unwrap();
        assert!((m.eval(0.5) - 0.75f64.powf(-1.0)).abs() < 1e-14);
        assert_eq!(m.kind(), ArgKind::BallRadius);
    }

    #[test]
    fn weight_m1_on_constant() {
        let p = TransformParams::new(4, 1, 2).unwrap();
        let one = Profile1D::on_range(ArgKind::GeodesicDistance, |_| 1.0);
        let m = apply_weight(WeightOpId::M1, &p, &one).unwrap();
        let th: f64 = 0.3;
        let expect = sphere_area(2) / sphere_area(1) * (2.0 * th).cos().powf(-1.5);
        assert!((m.eval(th) - expect).abs() < 1e-13 * expect);
    }

    #[test]
    fn inverse_pairs_compose_to_identity() {
        let p = TransformParams::new(5, 1, 3).unwrap();
        for op in WeightOpId::ALL {
            let (src, _, _) = op.signature();
            let f = Fam::Gaussian { sigma: 0.7 }
                .profile_on(src.range().0, src.range().1, src.canonical_kind())
                .unwrap();
            let g = apply_weight(op.inverse(), &p, &apply_weight(op, &p, &f).unwrap()).unwrap();
            let hi = match src {
                Model::EuclideanAffine | Model::Hyperboloid => 3.0,
                m => 0.9 * m.range().1,
            };
            for i in 1..64 {
                let x = hi * i as f64 / 64.0;
                assert!((g.eval(x) - f.eval(x)).abs() < 1e-14, "{op:?} at {x}: {} vs {}", g.eval(x), f.eval(x));
            }
        }
    }

    #[test]
    fn measures() {
        let e = measure_density(Model::EuclideanAffine, 3, 1, 0.7).unwrap();
        assert!((e - 2.0 * PI * 0.7).abs() < 1e-14);
        assert!(measure_density(Model::Hyperboloid, 3, 3, 0.1).is_err());
        let q = QuadratureSpec::default();
        let g = Profile1D::on_range(ArgKind::EuclideanRadius, |r| (-r * r).exp()).with_decay(Decay::Rapid);
        assert!((integrate_radial(Model::EuclideanAffine, 3, 1, &g, &q).unwrap() - PI).abs() < 1e-12);
        let one = Profile1D::on_range(ArgKind::BallRadius, |_| 1.0);
        assert!((integrate_radial(Model::BeltramiKlein, 3, 1, &one, &q).unwrap() - PI).abs() < 1e-12);
        let c4 = Profile1D::on_range(ArgKind::CoshDistance, |s| s.powi(-4)).with_decay(Decay::Power(4.0));
        assert!((integrate_radial(Model::Hyperboloid, 3, 1, &c4, &q).unwrap() - PI).abs() < 1e-12);
        // The elliptic measure is a probability measure.
        let one = Profile1D::on_range(ArgKind::Angle, |_| 1.0);
        for (n, d) in [(3, 1), (4, 0), (5, 2)] {
            assert!((integrate_radial(Model::Elliptic, n, d, &one, &q).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn subhyperboloid_distance() {
        let (n, k) = (4usize, 2usize);
        let r: f64 = 0.8;
        let mut z = vec![0.0; n + 1];
        z[n - k - 1] = r.sinh();
        z[n] = r.cosh();
        assert!((point_to_subhyperboloid_distance(&z, k).unwrap() - r).abs() < 1e-14);
        let mut o = vec![0.0; n + 1];
        o[n] = 1.0;
        assert_eq!(point_to_subhyperboloid_distance(&o, k).unwrap(), 0.0);
        let mut w = vec![0.0; n + 1];
        w[n - 1] = 1f64.sinh();
        w[n] = 1f64.cosh();
        assert!(point_to_subhyperboloid_distance(&w, k).unwrap() < 1e-7);
        w[n] = 2.0;
        assert!(point_to_subhyperboloid_distance(&w, k).is_err());
    }

    #[test]
    fn reparam_round_trip() {
        let f = Fam::Gaussian { sigma: 1.0 }.profile(ArgKind::GeodesicDistance).unwrap();
        let c = reparam(&f, ArgKind::CoshDistance).unwrap();
        assert!((c.eval(1.3) - f.eval(1.3f64.acosh())).abs() < 1e-15);
        assert_eq!(c.lo(), 1.0);
        let a = Profile1D::on_range(ArgKind::Angle, |t| t.sin()).with_support_hi(FRAC_PI_2, 0.0);
        let c = reparam(&a, ArgKind::CosAngle).unwrap();
        assert!((c.eval(0.2) - (0.2f64.acos()).sin()).abs() < 1e-15);
        assert!(reparam(&a, ArgKind::CoshDistance).is_err());
    }
}
