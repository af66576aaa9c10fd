//! Single-variable profiles: the radial and zonal functions every transform acts on.

use crate::error::{Error, Result};
use crate::fracint::cheb;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Which variable a profile is written in.
///
/// `GeodesicDistance` is the hyperbolic distance itself; the other
/// hyperbolic kinds are its cosh, sinh and tanh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArgKind {
    EuclideanRadius,
    BallRadius,
    CoshDistance,
    SinhDistance,
    TanhDistance,
    CosAngle,
    SinAngle,
    Angle,
    GeodesicDistance,
}

impl ArgKind {
    /// Natural range of the variable.
    pub fn range(self) -> (f64, f64) {
        use std::f64::consts::FRAC_PI_2;
        match self {
            ArgKind::EuclideanRadius | ArgKind::SinhDistance | ArgKind::GeodesicDistance => {
                (0.0, f64::INFINITY)
            }
            ArgKind::BallRadius | ArgKind::TanhDistance | ArgKind::SinAngle => (0.0, 1.0),
            ArgKind::CoshDistance => (1.0, f64::INFINITY),
            ArgKind::CosAngle => (0.0, 1.0),
            ArgKind::Angle => (0.0, FRAC_PI_2),
        }
    }

    /// Ball radius and tanh of the distance are the same number.
    pub fn compatible(self, other: ArgKind) -> bool {
        use ArgKind::*;
        self == other || matches!((self, other), (BallRadius, TanhDistance) | (TanhDistance, BallRadius))
    }
}

impl fmt::Display for ArgKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ArgKind::EuclideanRadius => "euclidean_radius",
            ArgKind::BallRadius => "ball_radius",
            ArgKind::CoshDistance => "cosh_distance",
            ArgKind::SinhDistance => "sinh_distance",
            ArgKind::TanhDistance => "tanh_distance",
            ArgKind::CosAngle => "cos_angle",
            ArgKind::SinAngle => "sin_angle",
            ArgKind::Angle => "angle",
            ArgKind::GeodesicDistance => "geodesic_distance",
        };
        f.write_str(s)
    }
}

/// Behaviour at the upper end of an infinite domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// Faster than any power.
    Rapid,
    /// |f(r)| ≤ C r^{-ρ}.
    Power(f64),
    /// |f(r)| ≤ C e^{-λr}.
    Exponential(f64),
}

/// Endpoint of the support together with the local exponent there:
/// f(r) ~ |r − at|^power on the inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub at: f64,
    pub power: f64,
}

pub(crate) type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub(crate) type ChainFn = Arc<dyn Fn(f64, usize) -> f64 + Send + Sync>;

/// Regularity value used for callables that are smooth as far as we know.
pub const SMOOTH: usize = usize::MAX;

/// A function of one variable on `[lo, hi)` with the hints the quadrature
/// and differentiation routines rely on.
///
/// Hints are promises made by whoever builds the profile. The quadrature
/// uses them to choose Jacobi weights; when a hint is wrong the adaptive
/// scheme still converges, only more slowly.
#[derive(Clone)]
pub struct Profile1D {
    lo: f64,
    hi: f64,
    f: EvalFn,
    chain: Option<(usize, ChainFn)>,
    kind: ArgKind,
    regularity: usize,
    decay: Option<Decay>,
    origin_power: f64,
    support_lo: Option<Edge>,
    support_hi: Option<Edge>,
}

impl fmt::Debug for Profile1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Profile1D")
            .field("domain", &(self.lo, self.hi))
            .field("kind", &self.kind)
            .field("decay", &self.decay)
            .field("origin_power", &self.origin_power)
            .field("support", &(self.support_lo, self.support_hi))
            .field("chain", &self.chain.as_ref().map(|c| c.0))
            .finish()
    }
}

impl Profile1D {
    /// Wraps a callable on `[lo, hi)`.
    pub fn new<F>(lo: f64, hi: f64, kind: ArgKind, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lo >= 0.0) || !(hi > lo) || lo.is_infinite() {
            return Err(Error::Domain(format!("profile domain [{lo}, {hi}) is invalid")));
        }
        Ok(Profile1D {
            lo,
            hi,
            f: Arc::new(f),
            chain: None,
            kind,
            regularity: SMOOTH,
            decay: None,
            origin_power: 0.0,
            support_lo: None,
            support_hi: None,
        })
    }

    /// Callable on the natural range of `kind`.
    pub fn on_range<F>(kind: ArgKind, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let (lo, hi) = kind.range();
        Self::new(lo, hi, kind, f).expect("natural ranges are valid")
    }

    /// The zero function.
    pub fn zero(lo: f64, hi: f64, kind: ArgKind) -> Result<Self> {
        Ok(Self::new(lo, hi, kind, |_| 0.0)?.with_support_hi(lo, 0.0))
    }

    /// Sampled values with local Lagrange interpolation through `order` nodes.
    pub fn sampled(xs: Vec<f64>, ys: Vec<f64>, kind: ArgKind, order: usize) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Domain("sample abscissae and values differ in length".into()));
        }
        if xs.len() < 8 {
            return Err(Error::Domain(format!("a sampled profile needs at least 8 nodes, got {}", xs.len())));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("sample abscissae must be strictly increasing".into()));
        }
        if order < 2 || order > xs.len() {
            return Err(Error::Domain(format!("interpolation order {order} out of range")));
        }
        let (lo, hi) = (xs[0], *xs.last().unwrap());
        let grid = Arc::new(SampleGrid { xs, ys, order });
        let g = grid.clone();
        let mut p = Self::new(lo, hi, kind, move |x| g.eval(x))?;
        p.regularity = order - 1;
        Ok(p)
    }

    pub fn with_decay(mut self, d: Decay) -> Self {
        self.decay = Some(d);
        self
    }

    pub fn without_decay(mut self) -> Self {
        self.decay = None;
        self
    }

    /// f(r) ~ r^p near r = 0.
    pub fn with_origin_power(mut self, p: f64) -> Self {
        self.origin_power = p;
        self
    }

    /// f vanishes above `at` and behaves like (at − r)^power just below.
    pub fn with_support_hi(mut self, at: f64, power: f64) -> Self {
        self.support_hi = Some(Edge { at, power });
        self
    }

    /// f vanishes below `at` and behaves like (r − at)^power just above.
    pub fn with_support_lo(mut self, at: f64, power: f64) -> Self {
        self.support_lo = Some(Edge { at, power });
        self
    }

    pub fn clear_support(mut self) -> Self {
        self.support_lo = None;
        self.support_hi = None;
        self
    }

    /// Analytic derivatives: `chain(x, i)` is the i-th derivative, for i ≤ order.
    pub fn with_chain<G>(mut self, order: usize, chain: G) -> Self
    where
        G: Fn(f64, usize) -> f64 + Send + Sync + 'static,
    {
        self.chain = Some((order, Arc::new(chain)));
        self
    }

    pub fn without_chain(mut self) -> Self {
        self.chain = None;
        self
    }

    /// Declared differentiability class.
    pub fn with_regularity(mut self, r: usize) -> Self {
        self.regularity = r;
        self
    }

    pub fn with_kind(mut self, kind: ArgKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }
    pub fn hi(&self) -> f64 {
        self.hi
    }
    pub fn kind(&self) -> ArgKind {
        self.kind
    }
    pub fn decay(&self) -> Option<Decay> {
        self.decay
    }
    pub fn origin_power(&self) -> f64 {
        self.origin_power
    }
    pub fn regularity(&self) -> usize {
        self.regularity
    }
    /// Number of analytic derivatives available.
    pub fn smoothness(&self) -> usize {
        self.chain.as_ref().map_or(0, |c| c.0)
    }
    pub fn support_lo(&self) -> Option<Edge> {
        self.support_lo
    }

    /// Upper end of the support: the explicit hint, or the end of a finite domain.
    pub fn support_hi(&self) -> Option<Edge> {
        match self.support_hi {
            Some(e) if e.at <= self.hi => Some(e),
            _ if self.hi.is_finite() => Some(Edge { at: self.hi, power: 0.0 }),
            _ => None,
        }
    }

    /// Explicit upper support hint only.
    pub fn support_hi_hint(&self) -> Option<Edge> {
        self.support_hi
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && (x < self.hi || (x == self.hi && self.hi.is_finite()))
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        if let Some(e) = self.support_hi {
            if x > e.at {
                return 0.0;
            }
        }
        if let Some(e) = self.support_lo {
            if x < e.at {
                return 0.0;
            }
        }
        (self.f)(x)
    }

    /// Evaluates with a domain check.
    pub fn try_eval(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::Range(format!(
                "{x} outside the profile domain [{}, {})",
                self.lo, self.hi
            )));
        }
        Ok(self.eval(x))
    }

    /// i-th analytic derivative, when the chain provides it.
    pub fn deriv(&self, x: f64, i: usize) -> Option<f64> {
        match &self.chain {
            Some((order, c)) if i <= *order => Some(if i == 0 { self.eval(x) } else { c(x, i) }),
            _ => None,
        }
    }

    /// Samples the profile on a set of points.
    pub fn sample(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    /// Same hints, different values. Used by operators that reweight a
    /// profile without moving its singular points.
    pub(crate) fn remap<F>(&self, lo: f64, hi: f64, kind: ArgKind, f: F) -> Profile1D
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Profile1D {
            lo,
            hi,
            f: Arc::new(f),
            chain: None,
            kind,
            regularity: self.regularity,
            decay: None,
            origin_power: 0.0,
            support_lo: None,
            support_hi: None,
        }
    }

    /// r ↦ r^e f(r). Hints shift accordingly; the chain is dropped.
    pub fn times_power(&self, e: f64) -> Profile1D {
        if e == 0.0 {
            return self.clone();
        }
        let g = self.clone();
        let mut p = self.remap(self.lo, self.hi, self.kind, move |x| x.powf(e) * g.eval(x));
        p.origin_power = self.origin_power + e;
        p.decay = match self.decay {
            Some(Decay::Power(r)) => Some(Decay::Power(r - e)),
            d => d,
        };
        p.support_lo = self.support_lo;
        p.support_hi = self.support_hi;
        p
    }

    /// c · f, keeping every hint.
    pub fn scaled(&self, c: f64) -> Profile1D {
        let g = self.clone();
        let mut p = self.clone();
        p.f = Arc::new(move |x| c * g.eval(x));
        p.chain = self.chain.as_ref().map(|(o, ch)| {
            let ch = ch.clone();
            let f: ChainFn = Arc::new(move |x, i| c * ch(x, i));
            (*o, f)
        });
        p
    }

    /// Replaces the values by a piecewise Chebyshev table in u = x² on
    /// `[lo, hi]`, with the origin power factored out. Evaluation becomes
    /// cheap, which matters when the profile sits inside nested integrals.
    /// Beyond `hi` the table is zero and the support hint says so.
    pub fn tabulated(&self, lo: f64, hi: f64, tol: f64) -> Result<Profile1D> {
        if !(hi > lo) || lo < self.lo || !hi.is_finite() {
            return Err(Error::Domain(format!("cannot tabulate on [{lo}, {hi}]")));
        }
        let p = if lo == 0.0 { self.origin_power } else { 0.0 };
        // A power-law zero at the upper support edge is factored out as well,
        // so that values near the edge keep their relative accuracy.
        let edge = match self.support_hi_hint() {
            Some(e) if e.at > lo && e.at <= hi && e.power != 0.0 => Some(e),
            _ => None,
        };
        let weight = move |u: f64| {
            let x = u.max(0.0).sqrt();
            let mut w = if p != 0.0 { x.powf(p) } else { 1.0 };
            if let Some(e) = edge {
                w *= (e.at * e.at - u).max(0.0).powf(e.power);
            }
            w
        };
        let src = self.clone();
        let g = move |u: f64| {
            let v = src.eval(u.max(0.0).sqrt());
            if v == 0.0 {
                0.0
            } else {
                v / weight(u)
            }
        };
        let mut breaks = vec![lo * lo, hi * hi];
        if let Some(e) = self.support_lo {
            if e.at > lo && e.at < hi {
                breaks.insert(1, e.at * e.at);
            }
        }
        if let Some(e) = self.support_hi_hint() {
            if e.at > lo && e.at < hi {
                let pos = breaks.len() - 1;
                breaks.insert(pos, e.at * e.at);
            }
        }
        let table = Arc::new(cheb::PiecewiseCheb::build(&g, &breaks, tol)?);
        let t = table.clone();
        let mut out = self.remap(lo, self.hi, self.kind, move |x| {
            let u = x * x;
            if let Some(e) = edge {
                if x >= e.at {
                    return 0.0;
                }
            }
            t.eval(u) * weight(u)
        });
        out.origin_power = self.origin_power;
        out.decay = self.decay;
        out.support_lo = self.support_lo;
        out.support_hi = match self.support_hi_hint() {
            Some(e) if e.at <= hi => Some(e),
            _ if hi < self.hi => Some(Edge { at: hi, power: 0.0 }),
            _ => self.support_hi,
        };
        Ok(out)
    }
}

struct SampleGrid {
    xs: Vec<f64>,
    ys: Vec<f64>,
    order: usize,
}

impl SampleGrid {
    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = self.xs.partition_point(|&v| v < x);
        let half = self.order / 2;
        let start = i.saturating_sub(half).min(n - self.order);
        let xs = &self.xs[start..start + self.order];
        let ys = &self.ys[start..start + self.order];
        // Plain Lagrange: the windows are short.
        let mut s = 0.0;
        for (a, (&xa, &ya)) in xs.iter().zip(ys).enumerate() {
            if x == xa {
                return ya;
            }
            let mut l = 1.0;
            for (b, &xb) in xs.iter().enumerate() {
                if a != b {
                    l *= (x - xb) / (xa - xb);
                }
            }
            s += l * ya;
        }
        s
    }
}
