//! Transform pairs with known closed forms, for conformance checks.

use super::{Geometry, Transform};
use crate::error::{Error, Result};
use crate::fracint::{ArgKind, Decay, Profile1D};
use crate::params::TransformParams;
use crate::special::{gamma, lambda1, lambda2};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum ClosedFormId {
    /// Chord transform: (1−r²)^{α/2−1} r^{−α−k+j} ↦ λ₁ (1−s²)^{(α+k−j)/2−1} s^{−α}.
    BallSingularPower { alpha: f64 },
    /// (a²−r²)₊^{α/2−1} ↦ λ₁ (a²−s²)₊^{(α+k−j)/2−1}; chord transform for
    /// a ≤ 1, affine beyond.
    Cap { alpha: f64, a: f64 },
    /// Dual affine transform: s^{α+k−n} ↦ λ₂ r^{α+k−n}.
    DualPower { alpha: f64 },
    /// Dual chord transform: (1−s²)^{(j−n)/2} ↦ (1−r²)^{(k−n)/2}.
    DualBallWeight,
    /// Hyperboloid transform in the cosh variable:
    /// (a²−r²)₊^{α/2−1} r^{1−α−k} ↦ c (a²−s²)₊^{(α+k−j)/2−1} s^{1−α−k}, a > 1.
    HyperCap { alpha: f64, a: f64 },
}

impl ClosedFormId {
    /// The default instances with the dimensions they are checked at.
    pub fn defaults() -> Vec<(ClosedFormId, TransformParams)> {
        let p402 = TransformParams::new(4, 0, 2).expect("valid");
        let p301 = TransformParams::new(3, 0, 1).expect("valid");
        vec![
            (ClosedFormId::BallSingularPower { alpha: 3.0 }, p402),
            (ClosedFormId::Cap { alpha: 2.0, a: 1.0 }, p402),
            (ClosedFormId::DualPower { alpha: 2.0 }, p402),
            (ClosedFormId::DualBallWeight, p402),
            (ClosedFormId::HyperCap { alpha: 2.0, a: 2.0 }, p301),
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClosedFormId::BallSingularPower { .. } => "ball_singular_power",
            ClosedFormId::Cap { .. } => "cap",
            ClosedFormId::DualPower { .. } => "dual_power",
            ClosedFormId::DualBallWeight => "dual_ball_weight",
            ClosedFormId::HyperCap { .. } => "hyper_cap",
        }
    }
}

pub struct ClosedFormPair {
    pub transform: Transform,
    pub input: Profile1D,
    pub expected: Profile1D,
    pub constant: f64,
    /// Open interval on which the closed form holds and is checked.
    pub window: (f64, f64),
}

impl ClosedFormPair {
    /// `n` midpoints of equal cells of the window.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.window;
        (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
    }
}

fn positive(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("α must be positive, got {alpha}")));
    }
    Ok(())
}

pub fn closed_form_pair(id: ClosedFormId, p: &TransformParams) -> Result<ClosedFormPair> {
    let (n, j, k) = (p.nf(), p.jf(), p.kf());
    let kj = k - j;
    Ok(match id {
        ClosedFormId::BallSingularPower { alpha } => {
            positive(alpha)?;
            let c = lambda1(alpha, p.j, p.k)?;
            let e_in = alpha / 2.0 - 1.0;
            let e_out = (alpha + kj) / 2.0 - 1.0;
            let input = Profile1D::on_range(ArgKind::BallRadius, move |r| (1.0 - r * r).powf(e_in) * r.powf(-alpha - kj))
                .with_origin_power(-alpha - kj)
                .with_support_hi(1.0, e_in);
            let expected = Profile1D::on_range(ArgKind::BallRadius, move |s| c * (1.0 - s * s).powf(e_out) * s.powf(-alpha))
                .with_origin_power(-alpha)
                .with_support_hi(1.0, e_out);
            ClosedFormPair { transform: Transform::forward(Geometry::Chord), input, expected, constant: c, window: (0.0, 1.0) }
        }
        ClosedFormId::Cap { alpha, a } => {
            positive(alpha)?;
            if !(a > 0.0) || !a.is_finite() {
                return Err(Error::Domain(format!("cap radius must be positive, got {a}")));
            }
            let c = lambda1(alpha, p.j, p.k)?;
            let e_in = alpha / 2.0 - 1.0;
            let e_out = (alpha + kj) / 2.0 - 1.0;
            let (geometry, kind) =
                if a <= 1.0 { (Geometry::Chord, ArgKind::BallRadius) } else { (Geometry::Affine, ArgKind::EuclideanRadius) };
            let cap = move |r: f64, e: f64| if r < a { (a * a - r * r).powf(e) } else { 0.0 };
            let input = Profile1D::on_range(kind, move |r| cap(r, e_in)).with_support_hi(a, e_in).with_decay(Decay::Rapid);
            let expected =
                Profile1D::on_range(kind, move |s| c * cap(s, e_out)).with_support_hi(a, e_out).with_decay(Decay::Rapid);
            ClosedFormPair { transform: Transform::forward(geometry), input, expected, constant: c, window: (0.0, a) }
        }
        ClosedFormId::DualPower { alpha } => {
            positive(alpha)?;
            let c = lambda2(alpha, p.n, p.j, p.k)?;
            let e = alpha + k - n;
            let input = Profile1D::on_range(ArgKind::EuclideanRadius, move |s| s.powf(e)).with_origin_power(e);
            let expected = Profile1D::on_range(ArgKind::EuclideanRadius, move |r| c * r.powf(e)).with_origin_power(e);
            ClosedFormPair { transform: Transform::dual(Geometry::Affine), input, expected, constant: c, window: (0.0, 2.0) }
        }
        ClosedFormId::DualBallWeight => {
            let (e_in, e_out) = ((j - n) / 2.0, (k - n) / 2.0);
            let input = Profile1D::on_range(ArgKind::BallRadius, move |s| (1.0 - s * s).powf(e_in)).with_support_hi(1.0, e_in);
            let expected =
                Profile1D::on_range(ArgKind::BallRadius, move |r| (1.0 - r * r).powf(e_out)).with_support_hi(1.0, e_out);
            ClosedFormPair { transform: Transform::dual(Geometry::Chord), input, expected, constant: 1.0, window: (0.0, 1.0) }
        }
        ClosedFormId::HyperCap { alpha, a } => {
            positive(alpha)?;
            if !(a > 1.0) || !a.is_finite() {
                return Err(Error::Domain(format!("the hyperbolic cap needs a > 1, got {a}")));
            }
            let c = PI.powf(kj / 2.0) * gamma(alpha / 2.0) / (a.powf(kj) * gamma((alpha + kj) / 2.0));
            let e_in = alpha / 2.0 - 1.0;
            let e_out = (alpha + kj) / 2.0 - 1.0;
            let input = Profile1D::on_range(ArgKind::CoshDistance, move |r| {
                if r < a {
                    (a * a - r * r).powf(e_in) * r.powf(1.0 - alpha - k)
                } else {
                    0.0
                }
            })
            .with_support_hi(a, e_in);
            let expected = Profile1D::on_range(ArgKind::CoshDistance, move |s| {
                if s < a {
                    c * (a * a - s * s).powf(e_out) * s.powf(1.0 - alpha - k)
                } else {
                    0.0
                }
            })
            .with_support_hi(a, e_out);
            ClosedFormPair { transform: Transform::forward(Geometry::Hyperbolic), input, expected, constant: c, window: (1.0, a) }
        }
    })
}
