//! Named analytic profile families with derivative chains and decay hints.

use crate::error::{Error, Result};
use crate::fracint::{ArgKind, Decay, Profile1D};
use serde::{Deserialize, Serialize};

/// Exponent of the polynomial bump (1 − r²/a²)^q.
pub const BUMP_POWER: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// e^{−r²/σ²}
    Gaussian { sigma: f64 },
    /// r^{2β} e^{−r²}
    PowerGaussian { beta: f64 },
    /// (1 + r²)^{−p/2}
    Power { p: f64 },
    /// (1 − r²/a²)₊^q with q = [`BUMP_POWER`]
    Bump { a: f64 },
}

impl Family {
    /// The family as a profile in the given variable, on its natural range.
    pub fn profile(&self, kind: ArgKind) -> Result<Profile1D> {
        let (lo, hi) = kind.range();
        self.profile_on(lo, hi, kind)
    }

    pub fn profile_on(&self, lo: f64, hi: f64, kind: ArgKind) -> Result<Profile1D> {
        match *self {
            Family::Gaussian { sigma } => {
                if !(sigma > 0.0) {
                    return Err(Error::Domain(format!("gaussian width must be positive, got {sigma}")));
                }
                Ok(Profile1D::new(lo, hi, kind, move |r| (-(r / sigma).powi(2)).exp())?
                    .with_decay(Decay::Rapid)
                    .with_chain(CHAIN, move |r, i| gaussian_deriv(r, sigma, i)))
            }
            Family::PowerGaussian { beta } => {
                if !(beta >= 0.0) {
                    return Err(Error::Domain(format!("power exponent must be nonnegative, got {beta}")));
                }
                let p = 2.0 * beta;
                let f = Profile1D::new(lo, hi, kind, move |r| r.powf(p) * (-r * r).exp())?
                    .with_decay(Decay::Rapid)
                    .with_origin_power(p);
                Ok(if beta.fract() == 0.0 {
                    f.with_chain(CHAIN, move |r, i| {
                        leibniz(i, |l| power_deriv(r, p, l), |l| gaussian_deriv(r, 1.0, l))
                    })
                } else {
                    f
                })
            }
            Family::Power { p } => {
                if !(p > 0.0) {
                    return Err(Error::Domain(format!("decay exponent must be positive, got {p}")));
                }
                Ok(Profile1D::new(lo, hi, kind, move |r| (1.0 + r * r).powf(-0.5 * p))?
                    .with_decay(Decay::Power(p)))
            }
            Family::Bump { a } => {
                if !(a > 0.0) {
                    return Err(Error::Domain(format!("bump radius must be positive, got {a}")));
                }
                let chain = bump_poly(a);
                let f = Profile1D::new(lo, hi, kind, move |r| bump(r, a))?
                    .with_decay(Decay::Rapid)
                    .with_chain(CHAIN, move |r, i| if r < a { horner(&nth_deriv(&chain, i), r) } else { 0.0 });
                Ok(if a < hi { f.with_support_hi(a, BUMP_POWER as f64) } else { f })
            }
        }
    }
}

/// Analytic derivatives provided by every family that has them.
pub const CHAIN: usize = 8;

/// d^i/dr^i e^{−r²/σ²} = (−1/σ)^i H_i(r/σ) e^{−r²/σ²}.
pub fn gaussian_deriv(r: f64, sigma: f64, i: usize) -> f64 {
    let y = r / sigma;
    let (mut h0, mut h1) = (1.0, 2.0 * y);
    let h = if i == 0 {
        h0
    } else {
        for n in 1..i {
            let h2 = 2.0 * y * h1 - 2.0 * n as f64 * h0;
            h0 = h1;
            h1 = h2;
        }
        h1
    };
    (-1.0 / sigma).powi(i as i32) * h * (-y * y).exp()
}

fn power_deriv(r: f64, p: f64, l: usize) -> f64 {
    let mut c = 1.0;
    for s in 0..l {
        c *= p - s as f64;
    }
    if c == 0.0 {
        0.0
    } else {
        c * r.powf(p - l as f64)
    }
}

fn leibniz(i: usize, f: impl Fn(usize) -> f64, g: impl Fn(usize) -> f64) -> f64 {
    let mut b = 1.0;
    let mut s = 0.0;
    for l in 0..=i {
        if l > 0 {
            b = b * (i + 1 - l) as f64 / l as f64;
        }
        s += b * f(l) * g(i - l);
    }
    s
}

/// Factored form: the expanded polynomial cancels badly near r = a.
pub fn bump(r: f64, a: f64) -> f64 {
    if r < a {
        (1.0 - (r / a).powi(2)).powi(BUMP_POWER as i32)
    } else {
        0.0
    }
}

/// Coefficients (ascending) of (1 − r²/a²)^q.
fn bump_poly(a: f64) -> Vec<f64> {
    let q = BUMP_POWER as usize;
    let mut c = vec![0.0; 2 * q + 1];
    let mut b = 1.0;
    for l in 0..=q {
        if l > 0 {
            b = b * (q + 1 - l) as f64 / l as f64;
        }
        c[2 * l] = b * (-1.0 / (a * a)).powi(l as i32);
    }
    c
}

fn nth_deriv(c: &[f64], i: usize) -> Vec<f64> {
    let mut d = c.to_vec();
    for _ in 0..i {
        if d.len() <= 1 {
            return vec![0.0];
        }
        d = d.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect();
    }
    d
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}
