//! Erdélyi–Kober integrals in the squared variable and their left inverses.
//!
//! With u = t², the left integral is the Riemann–Liouville integral in u
//! and D = (1/2t) d/dt is d/du. All derivatives are taken in u.

use super::cheb::local_derivative;
use super::profile::{Decay, Profile1D};
use super::quad::{jacobi, semi_infinite, QuadratureSpec, Tail};
use crate::error::{Error, Result};
use crate::special::gamma;
use std::cell::RefCell;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("order must be positive, got {alpha}")));
    }
    Ok(())
}

fn check_point(f: &Profile1D, t: f64) -> Result<()> {
    if !f.contains(t) {
        return Err(Error::Domain(format!(
            "{t} outside the profile domain [{}, {})",
            f.lo(),
            f.hi()
        )));
    }
    Ok(())
}

/// (2/Γ(α)) ∫₀ᵗ (t²−r²)^{α−1} f(r) r dr.
pub fn ek_left(alpha: f64, f: &Profile1D, t: f64, q: &QuadratureSpec) -> Result<f64> {
    check_alpha(alpha)?;
    check_point(f, t)?;
    let p = f.origin_power();
    let origin = f.lo() == 0.0;
    if origin && p <= -2.0 {
        return Err(Error::LocalIntegrability(format!("r·f(r) ~ r^{} at 0", p + 1.0)));
    }
    if t == 0.0 {
        return if 2.0 * alpha + p > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::LocalIntegrability(format!("left integral ~ t^{} at 0", 2.0 * alpha + p)))
        };
    }
    // r = t x, x ∈ [a, b] ⊂ [0, 1].
    let (mut a, mut pa, mut at_origin) = if origin { (0.0, p + 1.0, true) } else { (f.lo() / t, 0.0, false) };
    if let Some(e) = f.support_lo() {
        if e.at >= t {
            return Ok(0.0);
        }
        if e.at / t > a {
            a = e.at / t;
            pa = e.power;
            at_origin = false;
        }
    }
    let (mut b, mut pb, mut at_one) = (1.0, alpha - 1.0, true);
    if let Some(e) = f.support_hi_hint() {
        if e.at < t {
            b = e.at / t;
            pb = e.power;
            at_one = false;
        } else if e.at == t {
            pb += e.power;
        }
    }
    if !(b > a) {
        return Ok(0.0);
    }
    let extra_one = if at_one { alpha - 1.0 - pb } else { 0.0 };
    let g = |x: f64| {
        let v = f.eval(t * x);
        if v == 0.0 {
            return 0.0;
        }
        let left = if at_origin { x.powf(-p) } else { x / (x - a).powf(pa) };
        let right = if at_one {
            (1.0 - x).powf(extra_one)
        } else {
            (1.0 - x).powf(alpha - 1.0) / (b - x).powf(pb)
        };
        v * left * right * (1.0 + x).powf(alpha - 1.0)
    };
    let s = split_jacobi(&g, a, b, pa, pb, t, q)?;
    Ok(2.0 * t.powf(2.0 * alpha) / gamma(alpha) * s)
}

/// ∫_a^b (x−a)^pa (b−x)^pb g(x) dx for x = r/t. At large t a profile living
/// on r = O(1) occupies a sliver near x = 0 that a single adaptive rule can
/// miss entirely, so the interval is cut at r = 2, 4, 8, ….
fn split_jacobi(g: &dyn Fn(f64) -> f64, a: f64, b: f64, pa: f64, pb: f64, t: f64, q: &QuadratureSpec) -> Result<f64> {
    let mut cuts = vec![a];
    let mut r = 2.0;
    while r / t < 0.5 * b {
        if r / t > a {
            cuts.push(r / t);
        }
        r *= 2.0;
    }
    cuts.push(b);
    if cuts.len() == 2 {
        return jacobi(g, a, b, pa, pb, q);
    }
    let last = cuts.len() - 2;
    let mut s = 0.0;
    for (i, w) in cuts.windows(2).enumerate() {
        let (l, r) = (w[0], w[1]);
        let (wl, wr) = (i == 0, i == last);
        let h = |x: f64| {
            let mut v = g(x);
            if v != 0.0 && !wl && pa != 0.0 {
                v *= (x - a).powf(pa);
            }
            if v != 0.0 && !wr && pb != 0.0 {
                v *= (b - x).powf(pb);
            }
            v
        };
        s += jacobi(&h, l, r, if wl { pa } else { 0.0 }, if wr { pb } else { 0.0 }, q)?;
    }
    Ok(s)
}

/// (2/Γ(α)) ∫ₜ^∞ (r²−t²)^{α−1} f(r) r dr.
///
/// Exactly zero when t lies beyond the support of f.
pub fn ek_right(alpha: f64, f: &Profile1D, t: f64, q: &QuadratureSpec) -> Result<f64> {
    check_alpha(alpha)?;
    if !(t >= 0.0) || t > f.hi() {
        return Err(Error::Domain(format!("{t} outside [0, {}]", f.hi())));
    }
    let t2 = t * t;
    let upper = f.support_hi();
    if let Some(e) = upper {
        if e.at <= t {
            return Ok(0.0);
        }
    }
    // u = r² − t², lower end ua.
    let mut ua = (f.lo() * f.lo() - t2).max(0.0);
    let mut pa = if ua > 0.0 { 0.0 } else { alpha - 1.0 };
    let p = f.origin_power();
    if ua == 0.0 && t == 0.0 && f.lo() == 0.0 {
        pa += 0.5 * p;
    }
    if let Some(e) = f.support_lo() {
        if e.at > t && e.at * e.at - t2 > ua {
            ua = e.at * e.at - t2;
            pa = e.power;
        }
    }
    if !(pa > -1.0) {
        return Err(Error::LocalIntegrability(format!("right integral at t = {t} has exponent {pa}")));
    }
    let singular_lo = ua == 0.0;
    let g = |u: f64| {
        let v = f.eval((t2 + u).sqrt());
        if v == 0.0 {
            return 0.0;
        }
        if singular_lo {
            v * u.powf(alpha - 1.0 - pa)
        } else {
            v * u.powf(alpha - 1.0) / (u - ua).powf(pa)
        }
    };
    let s = match upper {
        Some(e) => {
            let ub = e.at * e.at - t2;
            let pb = e.power;
            if !(pb > -1.0) {
                return Err(Error::Divergence(format!("edge exponent {pb} at {}", e.at)));
            }
            let h = |u: f64| g(u) / (ub - u).powf(pb);
            jacobi(&h, ua, ub, pa, pb, q)?
        }
        None => {
            let tail = match f.decay() {
                Some(Decay::Power(rho)) => {
                    if rho <= 2.0 * alpha {
                        return Err(Error::Divergence(format!(
                            "decay exponent {rho} does not exceed 2α = {}",
                            2.0 * alpha
                        )));
                    }
                    Tail::Power(0.5 * rho - alpha + 1.0)
                }
                Some(_) => Tail::Fast,
                None => {
                    if !check_decay_with(f, alpha, t.max(1.0), q) {
                        return Err(Error::Divergence(format!(
                            "∫ |f(r)| r^{} dr grows under doubling cutoffs",
                            2.0 * alpha - 1.0
                        )));
                    }
                    Tail::Fast
                }
            };
            semi_infinite(&g, ua, pa, tail, 1.0 + t2, q)?
        }
    };
    Ok(s / gamma(alpha))
}

/// Whether ∫_a^∞ |f(r)| r^{2α−1} dr is finite, judged from the hints or,
/// without a hint, from the growth of the truncated integral.
pub fn check_decay(f: &Profile1D, alpha: f64, a: f64) -> bool {
    check_decay_with(f, alpha, a, &QuadratureSpec::default())
}

pub fn check_decay_with(f: &Profile1D, alpha: f64, a: f64, q: &QuadratureSpec) -> bool {
    if let Some(e) = f.support_hi() {
        return e.power > -1.0;
    }
    match f.decay() {
        Some(Decay::Rapid) | Some(Decay::Exponential(_)) => true,
        Some(Decay::Power(rho)) => rho > 2.0 * alpha,
        None => {
            let w = 2.0 * alpha - 1.0;
            let inc = |lo: f64, hi: f64| jacobi(&|r: f64| f.eval(r).abs() * r.powf(w), lo, hi, 0.0, 0.0, q);
            match growth(&inc, a.max(f.lo()).max(1e-3), 30) {
                Ok(g) => {
                    let total = g.partials.last().copied().unwrap_or(0.0);
                    let last = *g.increments.last().unwrap();
                    let tail_ok = g.ratios.iter().rev().take(4).all(|&r| r <= 0.75);
                    last <= q.truncation_tail_tol * total.max(1.0) || tail_ok
                }
                Err(_) => false,
            }
        }
    }
}

/// Truncated integrals over [r0, r0·2^i] for i = 1..=doublings.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub cutoffs: Vec<f64>,
    pub increments: Vec<f64>,
    pub partials: Vec<f64>,
    /// increments[i+1] / increments[i]
    pub ratios: Vec<f64>,
}

impl GrowthReport {
    /// Increments positive and not shrinking geometrically: the partial
    /// integrals grow without bound.
    pub fn diverges(&self) -> bool {
        self.increments.iter().all(|&v| v > 0.0) && self.ratios.iter().all(|&r| r >= 0.75)
    }

    /// Increments shrink at least geometrically (or vanish).
    pub fn converges(&self) -> bool {
        self.ratios.iter().all(|&r| r <= 0.75 || !r.is_finite())
            || self.increments.iter().all(|&v| v == 0.0)
    }
}

/// Runs `increment(lo, hi)` over successive doublings starting at `r0`.
pub fn growth(
    increment: &dyn Fn(f64, f64) -> Result<f64>,
    r0: f64,
    doublings: usize,
) -> Result<GrowthReport> {
    let mut cutoffs = Vec::with_capacity(doublings);
    let mut increments = Vec::with_capacity(doublings);
    let mut partials = Vec::with_capacity(doublings);
    let mut lo = r0;
    let mut acc = 0.0;
    for _ in 0..doublings {
        let hi = 2.0 * lo;
        let v = increment(lo, hi)?;
        if !v.is_finite() {
            return Err(Error::Divergence(format!("non-finite increment on [{lo}, {hi}]")));
        }
        acc += v;
        cutoffs.push(hi);
        increments.push(v);
        partials.push(acc);
        lo = hi;
    }
    let ratios = increments
        .windows(2)
        .map(|w| if w[0] == 0.0 { if w[1] == 0.0 { 0.0 } else { f64::INFINITY } } else { w[1] / w[0] })
        .collect();
    Ok(GrowthReport { cutoffs, increments, partials, ratios })
}

/// t ↦ ek_left(α, f, t) as a profile. Values that fail to evaluate are NaN.
pub fn ek_left_profile(alpha: f64, f: &Profile1D, q: &QuadratureSpec) -> Result<Profile1D> {
    check_alpha(alpha)?;
    let src = f.clone();
    let qq = *q;
    let mut out = f
        .remap(f.lo(), f.hi(), f.kind(), move |t| ek_left(alpha, &src, t, &qq).unwrap_or(f64::NAN))
        .with_regularity(f.regularity());
    if f.lo() == 0.0 {
        out = out.with_origin_power(2.0 * alpha + f.origin_power());
    }
    if f.hi().is_infinite() {
        let rho = match (f.support_hi_hint(), f.decay()) {
            (Some(_), _) | (_, Some(Decay::Rapid)) | (_, Some(Decay::Exponential(_))) => 2.0,
            (_, Some(Decay::Power(r))) => r.min(2.0),
            _ => f64::NAN,
        };
        if rho.is_finite() {
            out = out.with_decay(Decay::Power(rho - 2.0 * alpha));
        }
    }
    Ok(out)
}

/// t ↦ ek_right(α, f, t) as a profile, after checking the decay condition.
pub fn ek_right_profile(alpha: f64, f: &Profile1D, q: &QuadratureSpec) -> Result<Profile1D> {
    check_alpha(alpha)?;
    if !check_decay_with(f, alpha, f.lo().max(1.0), q) {
        return Err(Error::Divergence(format!(
            "right integral of order {alpha} diverges for this profile"
        )));
    }
    let src = f.clone();
    let qq = *q;
    let mut out = f
        .remap(f.lo(), f.hi(), f.kind(), move |t| ek_right(alpha, &src, t, &qq).unwrap_or(f64::NAN))
        .with_regularity(f.regularity());
    let p = f.origin_power();
    if f.lo() == 0.0 && p + 2.0 * alpha < 0.0 {
        out = out.with_origin_power(p + 2.0 * alpha);
    }
    out = match f.decay() {
        Some(Decay::Power(rho)) => out.with_decay(Decay::Power(rho - 2.0 * alpha)),
        Some(d) => out.with_decay(d),
        None if f.hi().is_infinite() && f.support_hi_hint().is_none() => out.with_decay(Decay::Rapid),
        None => out,
    };
    if let Some(e) = f.support_hi_hint() {
        out = out.with_support_hi(e.at, e.power + alpha);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Derivatives

const CHEB_NODES: usize = 16;
const NOISE_BUDGET: f64 = 1e-6;
const ORIGIN_STEP: f64 = 0.02;

/// α = m + α₀ with α₀ ∈ [0, 1).
fn split_order(alpha: f64) -> (usize, f64) {
    let r = alpha.round();
    if (alpha - r).abs() < 1e-12 {
        (r as usize, 0.0)
    } else {
        let m = alpha.floor();
        (m as usize, alpha - m)
    }
}

/// Runs a fallible function inside an infallible closure, keeping the first error.
struct Trap {
    err: RefCell<Option<Error>>,
}

impl Trap {
    fn new() -> Self {
        Trap { err: RefCell::new(None) }
    }
    fn wrap<'a>(&'a self, f: impl Fn(f64) -> Result<f64> + 'a) -> impl Fn(f64) -> f64 + 'a {
        move |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                self.err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    }
    fn check(&self) -> Result<()> {
        match self.err.borrow_mut().take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

/// `order`-th u-derivative of g at u0, with window clipped to [lo, hi].
fn u_derivative(
    g: &dyn Fn(f64) -> f64,
    trap: &Trap,
    u0: f64,
    order: usize,
    lo: f64,
    hi: f64,
    floor: f64,
) -> Result<f64> {
    if order == 0 {
        let v = g(u0);
        trap.check()?;
        return Ok(v);
    }
    let h = (0.5f64).min(0.25 * u0);
    let r = local_derivative(g, u0, order, lo, hi, h, CHEB_NODES);
    trap.check()?;
    let (d, noise, scale) = r?;
    if noise > NOISE_BUDGET * d.abs().max(1e-3 * scale).max(floor) {
        return Err(Error::Instability(format!(
            "derivative of order {order} at u = {u0}: noise {noise:.2e} against value {d:.3e}"
        )));
    }
    Ok(d)
}

/// Rough sup norm of φ, the yardstick for absolute noise near zeros.
fn profile_scale(phi: &Profile1D) -> f64 {
    let lo = phi.lo();
    let mut hi = phi.hi().min(lo + 8.0);
    if let Some(e) = phi.support_hi() {
        hi = hi.min(e.at);
    }
    (0..32)
        .map(|i| phi.eval(lo + (hi - lo) * (i as f64 + 0.5) / 32.0).abs())
        .filter(|v| v.is_finite())
        .fold(0.0, f64::max)
}

/// Value at t = 0 by quadratic extrapolation in u from t = h, 2h, 4h.
pub(crate) fn at_origin(f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let h = ORIGIN_STEP;
    let (a, b, c) = (f(h)?, f(2.0 * h)?, f(4.0 * h)?);
    Ok(64.0 / 45.0 * a - 4.0 / 9.0 * b + 1.0 / 45.0 * c)
}

/// Derivatives of g'/(2t) at t from those of g.
fn apply_d(ds: &[f64], t: f64) -> Vec<f64> {
    let n = ds.len() - 1;
    // w = 1/(2t): w^{(r)} = (−1)^r r! / (2 t^{r+1}).
    let mut w = vec![0.0; n];
    let mut fact = 1.0;
    for (r, wr) in w.iter_mut().enumerate() {
        if r > 0 {
            fact *= r as f64;
        }
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        *wr = sign * fact / (2.0 * t.powi(r as i32 + 1));
    }
    (0..n)
        .map(|i| {
            let mut binom = 1.0;
            let mut s = 0.0;
            for l in 0..=i {
                if l > 0 {
                    binom = binom * (i + 1 - l) as f64 / l as f64;
                }
                s += binom * ds[l + 1] * w[i - l];
            }
            s
        })
        .collect()
}

/// D^m φ at t > 0 from the analytic derivative chain.
fn chain_d_power(phi: &Profile1D, m: usize, t: f64) -> Option<f64> {
    if phi.smoothness() < m {
        return None;
    }
    let mut ds: Vec<f64> = (0..=m).map(|i| phi.deriv(t, i)).collect::<Option<_>>()?;
    for _ in 0..m {
        ds = apply_d(&ds, t);
    }
    Some(ds[0])
}

fn check_smoothness(phi: &Profile1D, need: usize) -> Result<()> {
    if phi.regularity() < need {
        return Err(Error::Smoothness(format!(
            "{need} derivatives needed, profile has {}",
            phi.regularity()
        )));
    }
    Ok(())
}

fn u_window(phi: &Profile1D, u0: f64, clip_support: bool) -> (f64, f64) {
    let mut lo = phi.lo() * phi.lo();
    let mut hi = phi.hi() * phi.hi();
    if let Some(e) = phi.support_lo() {
        let ue = e.at * e.at;
        if u0 >= ue {
            lo = lo.max(ue);
        } else {
            hi = hi.min(ue);
        }
    }
    if let Some(e) = phi.support_hi_hint() {
        let ue = e.at * e.at;
        if u0 <= ue {
            hi = hi.min(ue);
        } else if !clip_support {
            lo = lo.max(ue);
        }
    }
    (lo, hi)
}

/// Left-sided EK derivative D^α_{+,2} φ at t, inverting [`ek_left`].
pub fn ek_deriv_left(alpha: f64, phi: &Profile1D, t: f64) -> Result<f64> {
    ek_deriv_left_with(alpha, phi, t, &QuadratureSpec::precise())
}

pub fn ek_deriv_left_with(alpha: f64, phi: &Profile1D, t: f64, q: &QuadratureSpec) -> Result<f64> {
    check_alpha(alpha)?;
    check_point(phi, t)?;
    let (m, a0) = split_order(alpha);
    check_smoothness(phi, if a0 == 0.0 { m } else { m + 1 })?;
    if t == 0.0 {
        return at_origin(|s| ek_deriv_left_with(alpha, phi, s, q));
    }
    let u0 = t * t;
    let (lo, hi) = u_window(phi, u0, false);
    let floor = NOISE_BUDGET * profile_scale(phi);
    let trap = Trap::new();
    if a0 == 0.0 {
        if let Some(v) = chain_d_power(phi, m, t) {
            return Ok(v);
        }
        let g = trap.wrap(|u: f64| phi.try_eval(u.max(0.0).sqrt().max(phi.lo())));
        return u_derivative(&g, &trap, u0, m, lo, hi, floor);
    }
    let g = trap.wrap(|u: f64| ek_left(1.0 - a0, phi, u.max(0.0).sqrt(), q));
    u_derivative(&g, &trap, u0, m + 1, lo, hi, floor)
}

/// Right-sided EK derivative D^α_{−,2} φ at t, inverting [`ek_right`].
///
/// Integer α: (−D)^m φ. Otherwise u^{1−α₀} (−d/du)^{m+1} [u^α ψ] with
/// ψ = I^{1−α₀}_{−,2}(r^{−2m−2} φ); half-integers take the same route
/// with α₀ = 1/2.
pub fn ek_deriv_right(alpha: f64, phi: &Profile1D, t: f64) -> Result<f64> {
    ek_deriv_right_with(alpha, phi, t, &QuadratureSpec::precise())
}

pub fn ek_deriv_right_with(alpha: f64, phi: &Profile1D, t: f64, q: &QuadratureSpec) -> Result<f64> {
    check_alpha(alpha)?;
    check_point(phi, t)?;
    let (m, a0) = split_order(alpha);
    check_smoothness(phi, if a0 == 0.0 { m } else { m + 1 })?;
    if let Some(e) = phi.support_hi() {
        if t >= e.at && phi.support_hi_hint().is_some() {
            return Ok(0.0);
        }
    }
    if t == 0.0 {
        return at_origin(|s| ek_deriv_right_with(alpha, phi, s, q));
    }
    let u0 = t * t;
    let (lo, hi) = u_window(phi, u0, true);
    let floor = NOISE_BUDGET * profile_scale(phi);
    let trap = Trap::new();
    if a0 == 0.0 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        if let Some(v) = chain_d_power(phi, m, t) {
            return Ok(sign * v);
        }
        let g = trap.wrap(|u: f64| phi.try_eval(u.max(0.0).sqrt().max(phi.lo())));
        return Ok(sign * u_derivative(&g, &trap, u0, m, lo, hi, floor)?);
    }
    let weighted = phi.times_power(-2.0 * (m as f64) - 2.0);
    let g = trap.wrap(|u: f64| {
        let s = u.max(0.0).sqrt();
        Ok(u.powf(alpha) * ek_right(1.0 - a0, &weighted, s, q)?)
    });
    let d = u_derivative(&g, &trap, u0, m + 1, lo, hi, floor / u0.powf(1.0 - a0))?;
    let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * u0.powf(1.0 - a0) * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracint::profile::ArgKind;

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn gaussian() -> Profile1D {
        Profile1D::on_range(ArgKind::EuclideanRadius, |r| (-r * r).exp()).with_decay(Decay::Rapid)
    }

    #[test]
    fn left_constant() {
        let one = Profile1D::on_range(ArgKind::EuclideanRadius, |_| 1.0);
        for &t in &[0.3, 1.0, 2.5] {
            assert!((ek_left(1.0, &one, t, &q()).unwrap() - t * t).abs() < 1e-13);
        }
    }

    #[test]
    fn left_power_law() {
        for &beta in &[0.0, 0.5, 1.0, 2.0] {
            for &alpha in &[0.5, 1.0, 2.5] {
                let f = Profile1D::on_range(ArgKind::EuclideanRadius, move |r| r.powf(2.0 * beta))
                    .with_origin_power(2.0 * beta);
                let t: f64 = 1.3;
                let exact = gamma(beta + 1.0) / gamma(alpha + beta + 1.0) * t.powf(2.0 * (alpha + beta));
                let v = ek_left(alpha, &f, t, &q()).unwrap();
                assert!((v - exact).abs() < 1e-10 * exact, "β={beta} α={alpha}: {v} vs {exact}");
            }
        }
    }

    #[test]
    fn left_half_order_example() {
        let f = Profile1D::on_range(ArgKind::EuclideanRadius, |r| r * r).with_origin_power(2.0);
        let v = ek_left(0.5, &f, 1.0, &q()).unwrap();
        assert!((v - 4.0 / (3.0 * std::f64::consts::PI.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn right_gaussian_fixed_point() {
        for &alpha in &[0.5, 1.0, 2.0, 3.7] {
            for &t in &[0.0, 0.4, 1.0, 3.0] {
                let v = ek_right(alpha, &gaussian(), t, &q()).unwrap();
                assert!((v - (-t * t).exp()).abs() < 1e-10 * (-t * t).exp(), "α={alpha} t={t}: {v}");
            }
        }
    }

    #[test]
    fn right_power_tail() {
        let f = Profile1D::on_range(ArgKind::EuclideanRadius, |r| r.powi(-4)).with_decay(Decay::Power(4.0));
        assert!((ek_right(1.0, &f, 1.0, &q()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn right_divergence() {
        let one = Profile1D::on_range(ArgKind::EuclideanRadius, |_| 1.0);
        assert!(matches!(ek_right(1.0, &one, 1.0, &q()), Err(Error::Divergence(_))));
        let hinted = one.clone().with_decay(Decay::Power(0.0));
        assert!(matches!(ek_right(1.0, &hinted, 1.0, &q()), Err(Error::Divergence(_))));
    }

    #[test]
    fn decay_predicate() {
        assert!(check_decay(&gaussian(), 3.0, 1.0));
        let cube = Profile1D::on_range(ArgKind::EuclideanRadius, |r| r.powi(-3));
        assert!(check_decay(&cube, 1.0, 1.0));
        let one = Profile1D::on_range(ArgKind::EuclideanRadius, |_| 1.0);
        assert!(!check_decay(&one, 1.0, 1.0));
    }

    #[test]
    fn right_support_locality() {
        let f = Profile1D::on_range(ArgKind::EuclideanRadius, |r| (1.0 - r * r).max(0.0).powi(3))
            .with_support_hi(1.0, 3.0);
        assert_eq!(ek_right(0.7, &f, 1.0, &q()).unwrap(), 0.0);
        assert_eq!(ek_right(0.7, &f, 1.5, &q()).unwrap(), 0.0);
        assert!(ek_right(0.7, &f, 0.5, &q()).unwrap() > 0.0);
    }

    #[test]
    fn left_semigroup() {
        let f = gaussian();
        let inner = ek_left_profile(0.5, &f, &QuadratureSpec::precise()).unwrap().tabulated(0.0, 2.0, 1e-15).unwrap();
        for &t in &[0.3, 1.1, 1.9] {
            let a = ek_left(0.7, &inner, t, &q()).unwrap();
            let b = ek_left(1.2, &f, t, &q()).unwrap();
            assert!((a - b).abs() < 1e-8 * b.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn integer_derivatives() {
        let phi = Profile1D::on_range(ArgKind::EuclideanRadius, |t| t * t).with_origin_power(2.0);
        assert!((ek_deriv_left(1.0, &phi, 0.8).unwrap() - 1.0).abs() < 1e-9);
        let g = gaussian();
        assert!((ek_deriv_right(1.0, &g, 0.9).unwrap() - (-0.81f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn chain_matches_numeric() {
        let g = gaussian().with_chain(4, |t, i| {
            let e = (-t * t).exp();
            match i {
                1 => -2.0 * t * e,
                2 => (4.0 * t * t - 2.0) * e,
                3 => (-8.0 * t * t * t + 12.0 * t) * e,
                4 => (16.0 * t.powi(4) - 48.0 * t * t + 12.0) * e,
                _ => e,
            }
        });
        // (−D)^m e^{−t²} = e^{−t²}.
        for m in 1..=3 {
            let v = ek_deriv_right(m as f64, &g, 0.7).unwrap();
            assert!((v - (-0.49f64).exp()).abs() < 1e-13, "m={m}: {v}");
        }
    }

    #[test]
    fn fractional_round_trips() {
        let f = gaussian();
        let phi = ek_left_profile(0.5, &f, &QuadratureSpec::precise()).unwrap().tabulated(0.0, 3.0, 1e-15).unwrap();
        let v = ek_deriv_left(0.5, &phi, 0.7).unwrap();
        assert!((v - (-0.49f64).exp()).abs() < 1e-7, "{v}");
        let psi = ek_right_profile(0.5, &f, &QuadratureSpec::precise()).unwrap().tabulated(0.0, 8.0, 1e-15).unwrap();
        let v = ek_deriv_right(0.5, &psi, 1.2).unwrap();
        assert!((v - (-1.44f64).exp()).abs() < 1e-7, "{v}");
    }

    #[test]
    fn smoothness_is_enforced() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let p = Profile1D::sampled(xs, ys, ArgKind::EuclideanRadius, 3).unwrap();
        assert!(matches!(ek_deriv_left(2.5, &p, 1.0), Err(Error::Smoothness(_))));
    }
}
