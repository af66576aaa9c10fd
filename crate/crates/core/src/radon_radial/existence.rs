//! Sufficient conditions for the transforms to exist, with the witnesses
//! showing the thresholds cannot be moved.

use crate::error::Result;
use crate::fracint::quad::jacobi;
use crate::fracint::{growth, ArgKind, Decay, GrowthReport, Profile1D, QuadratureSpec};
use crate::models::reparam;
use crate::params::TransformParams;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Euclidean forward: f = O(|τ|^{−λ}) with λ > k−j.
    AffineDecay,
    /// Euclidean dual: φ = O(|ζ|^{−δ}) near the origin with δ < n−k.
    AffineDualSingularity,
    /// Euclidean forward on L^p: 1 ≤ p < (n−j)/(k−j).
    AffineLp,
    /// Hyperboloid forward: f = O(cosh^{−λ}) with λ > k−1.
    HyperDecay,
    /// Hyperboloid dual: φ = O(sinh^{−δ}) with δ < n−k.
    HyperDualSingularity,
    /// Hyperboloid forward on L^p: 1 ≤ p < (n−1)/(k−1).
    HyperLp,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::AffineDecay,
        Condition::AffineDualSingularity,
        Condition::AffineLp,
        Condition::HyperDecay,
        Condition::HyperDualSingularity,
        Condition::HyperLp,
    ];

    /// The sharp threshold for the exponent.
    pub fn threshold(&self, p: &TransformParams) -> f64 {
        let (n, j, k) = (p.nf(), p.jf(), p.kf());
        match self {
            Condition::AffineDecay => k - j,
            Condition::AffineDualSingularity | Condition::HyperDualSingularity => n - k,
            Condition::AffineLp => (n - j) / (k - j),
            Condition::HyperDecay => k - 1.0,
            Condition::HyperLp => {
                if p.k == 1 {
                    f64::INFINITY
                } else {
                    (n - 1.0) / (k - 1.0)
                }
            }
        }
    }

    /// Whether exponents above the threshold are the good side.
    fn lower_bound(&self) -> bool {
        matches!(self, Condition::AffineDecay | Condition::HyperDecay)
    }

    fn is_lp(&self) -> bool {
        matches!(self, Condition::AffineLp | Condition::HyperLp)
    }

    /// One exponent at the threshold and one safely on the good side.
    pub fn demo_exponents(&self, p: &TransformParams) -> (f64, f64) {
        let t = self.threshold(p);
        match self {
            Condition::AffineDecay | Condition::HyperDecay => (t, t + 0.5),
            Condition::AffineDualSingularity | Condition::HyperDualSingularity => (t, t - 0.5),
            Condition::AffineLp | Condition::HyperLp => (t, 1.0),
        }
    }
}

#[derive(Debug, Clone)]
pub enum ExistenceInput {
    Exponent(f64),
    Profile(Profile1D),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Sufficient,
    /// The exponent is on the wrong side of a sharp threshold: some function
    /// with this exponent has an infinite transform.
    SharpViolation { witness: f64 },
    /// The sufficient condition does not apply and no witness was found.
    Inconclusive,
}

fn judge(cond: Condition, p: &TransformParams, x: f64) -> Verdict {
    let t = cond.threshold(p);
    if cond.is_lp() {
        if x < 1.0 {
            return Verdict::Inconclusive;
        }
        return if x < t { Verdict::Sufficient } else { Verdict::SharpViolation { witness: x } };
    }
    let good = if cond.lower_bound() { x > t } else { x < t };
    if good {
        Verdict::Sufficient
    } else {
        Verdict::SharpViolation { witness: x }
    }
}

/// Evaluates the sufficient condition on an exponent or on a profile's hints.
///
/// For a profile the hints only bound it, so a failed condition is reported
/// as a violation only when the truncated integrals of the profile itself
/// keep growing.
pub fn existence_predicate(cond: Condition, p: &TransformParams, input: &ExistenceInput) -> Verdict {
    let f = match input {
        ExistenceInput::Exponent(x) => return judge(cond, p, *x),
        ExistenceInput::Profile(f) => f,
    };
    if cond.is_lp() {
        return Verdict::Inconclusive;
    }
    let kind = match cond {
        Condition::HyperDecay => ArgKind::CoshDistance,
        Condition::HyperDualSingularity => ArgKind::SinhDistance,
        _ => ArgKind::EuclideanRadius,
    };
    let f = match reparam(f, kind) {
        Ok(g) => g,
        Err(_) => return Verdict::Inconclusive,
    };
    let exponent = match cond {
        Condition::AffineDecay | Condition::HyperDecay => {
            if f.support_hi_hint().is_some() {
                return Verdict::Sufficient;
            }
            match f.decay() {
                Some(Decay::Power(r)) => r,
                Some(_) => return Verdict::Sufficient,
                None => return Verdict::Inconclusive,
            }
        }
        _ => -f.origin_power(),
    };
    match judge(cond, p, exponent) {
        Verdict::Sufficient => Verdict::Sufficient,
        _ => match profile_growth(cond, p, &f) {
            Ok(r) if r.diverges() => Verdict::SharpViolation { witness: exponent },
            _ => Verdict::Inconclusive,
        },
    }
}

/// First cutoff of the growth demos; the singular ones use its reciprocal.
pub const DEMO_START: f64 = 64.0;
pub const DEMO_DOUBLINGS: usize = 6;

/// Transform kernel as a function of the integration variable, at a fixed
/// point (s = 1 Euclidean, cosh = 2 hyperbolic, r = 1 dual).
fn kernel(cond: Condition, p: &TransformParams) -> Box<dyn Fn(f64) -> f64> {
    let a = p.alpha();
    let (j, nk) = (p.jf(), (p.n - p.k) as f64);
    match cond {
        Condition::AffineDecay | Condition::AffineLp => Box::new(move |r: f64| (r * r - 1.0).powf(a - 1.0) * r),
        Condition::HyperDecay | Condition::HyperLp => Box::new(move |r: f64| (r * r - 4.0).powf(a - 1.0) * r.powf(j)),
        _ => Box::new(move |s: f64| (1.0 - s * s).powf(a - 1.0) * s.powf(nk - 1.0)),
    }
}

fn increments(
    cond: Condition,
    p: &TransformParams,
    f: &dyn Fn(f64) -> f64,
    q: &QuadratureSpec,
) -> Result<GrowthReport> {
    let k = kernel(cond, p);
    let g = |x: f64| f(x) * k(x);
    match cond {
        Condition::AffineDualSingularity | Condition::HyperDualSingularity => {
            // Cutoff c means the integral over [1/c, ·]: doubling c halves the gap to 0.
            let inc = |lo: f64, hi: f64| jacobi(&g, 1.0 / hi, 1.0 / lo, 0.0, 0.0, q);
            growth(&inc, DEMO_START, DEMO_DOUBLINGS)
        }
        _ => {
            let inc = |lo: f64, hi: f64| jacobi(&g, lo, hi, 0.0, 0.0, q);
            growth(&inc, DEMO_START, DEMO_DOUBLINGS)
        }
    }
}

fn profile_growth(cond: Condition, p: &TransformParams, f: &Profile1D) -> Result<GrowthReport> {
    let g = |x: f64| f.eval(x).abs();
    increments(cond, p, &g, &QuadratureSpec::default())
}

/// Truncated transform integrals of the standard witness with the given
/// exponent, over successive doublings of the cutoff.
///
/// Witnesses: (2+r)^{−λ} and cosh^{−λ} for the decay conditions, s^{−δ}
/// for the dual singularities, and (2+r)^{(j−n)/p}/log(2+r),
/// cosh^{(1−n)/p}/log(1+cosh) for the L^p conditions.
pub fn sharpness_demo(cond: Condition, p: &TransformParams, exponent: f64) -> Result<GrowthReport> {
    let q = QuadratureSpec::default();
    let (n, j) = (p.nf(), p.jf());
    let e = exponent;
    match cond {
        Condition::AffineDecay => increments(cond, p, &|r: f64| (2.0 + r).powf(-e), &q),
        Condition::HyperDecay => increments(cond, p, &|r: f64| r.powf(-e), &q),
        Condition::AffineDualSingularity | Condition::HyperDualSingularity => {
            increments(cond, p, &|s: f64| s.powf(-e), &q)
        }
        Condition::AffineLp => {
            increments(cond, p, &|r: f64| (2.0 + r).powf((j - n) / e) / (2.0 + r).ln(), &q)
        }
        Condition::HyperLp => increments(cond, p, &|r: f64| r.powf((1.0 - n) / e) / (1.0 + r).ln(), &q),
    }
}
