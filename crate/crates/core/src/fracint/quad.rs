//! Quadrature for integrands with algebraic endpoint singularities.
//!
//! Every integral is written as ∫ (x−lo)^{pl} (hi−x)^{pr} g(x) dx with g
//! smooth, and evaluated with Gauss–Jacobi rules carrying the singular
//! factors as weights. Intervals are bisected where the 16- and 32-point
//! rules disagree; a child that no longer touches a singular end evaluates
//! that factor directly, so the scheme reduces to adaptive Gauss–Legendre
//! away from the endpoints.

use crate::error::{Error, Result};
use crate::special::beta;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Tolerances for every quadrature in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Per-doubling growth below which a tail counts as converged.
    pub truncation_tail_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 200,
            truncation_tail_tol: 1e-12,
        }
    }
}

impl QuadratureSpec {
    /// Tighter settings used inside differentiation.
    pub fn precise() -> Self {
        QuadratureSpec {
            rel_tol: 1e-13,
            abs_tol: 0.0,
            max_subdivisions: 400,
            truncation_tail_tol: 1e-15,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol >= 0.0) || !(self.truncation_tail_tol > 0.0) {
            return Err(Error::Domain("quadrature tolerances must be positive".into()));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Domain("max_subdivisions must be positive".into()));
        }
        Ok(())
    }
}

/// Nodes and weights on [−1, 1] for the weight (1−x)^a (1+x)^b.
#[derive(Debug)]
pub struct Rule {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
}

type Key = (usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Rule>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<Rule>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Jacobi rule by Golub–Welsch, cached.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Arc<Rule> {
    let key = (n, a.to_bits(), b.to_bits());
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let r = Arc::new(golub_welsch(n, a, b));
    cache().lock().unwrap().insert(key, r.clone());
    r
}

fn golub_welsch(n: usize, a: f64, b: f64) -> Rule {
    let ab = a + b;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let fi = i as f64;
        let diag = if i == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * fi + ab) * (2.0 * fi + ab + 2.0))
        };
        m[(i, i)] = diag;
        if i + 1 < n {
            let k = fi + 1.0;
            let num = if i == 0 {
                4.0 * (1.0 + a) * (1.0 + b)
            } else {
                4.0 * k * (k + a) * (k + b) * (k + ab)
            };
            let den = if i == 0 {
                (2.0 + ab).powi(2) * (3.0 + ab)
            } else {
                (2.0 * k + ab).powi(2) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0)
            };
            let off = (num / den).sqrt();
            m[(i, i + 1)] = off;
            m[(i + 1, i)] = off;
        }
    }
    let mu0 = (ab + 1.0).exp2() * beta(a + 1.0, b + 1.0);
    let eig = SymmetricEigen::new(m);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
    Rule {
        x: pairs.iter().map(|p| p.0).collect(),
        w: pairs.iter().map(|p| p.1).collect(),
    }
}

const N_LO: usize = 16;
const N_HI: usize = 32;

#[derive(Clone, Copy)]
struct Seg {
    a: f64,
    b: f64,
    wl: bool,
    wr: bool,
    est: f64,
    err: f64,
}

/// ∫_lo^hi (x−lo)^pl (hi−x)^pr g(x) dx.
pub fn jacobi(
    g: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    pl: f64,
    pr: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    if !(pl > -1.0) || !(pr > -1.0) {
        return Err(Error::Divergence(format!(
            "endpoint exponents ({pl}, {pr}) are not integrable"
        )));
    }
    if !(hi > lo) {
        return Ok(0.0);
    }
    let eval_seg = |a: f64, b: f64, wl: bool, wr: bool| -> Result<Seg> {
        let el = if wl { pl } else { 0.0 };
        let er = if wr { pr } else { 0.0 };
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let fac = half.powf(1.0 + el + er);
        let h = |x: f64| {
            let mut v = g(x);
            if !wl && pl != 0.0 {
                v *= (x - lo).powf(pl);
            }
            if !wr && pr != 0.0 {
                v *= (hi - x).powf(pr);
            }
            v
        };
        let mut sums = [0.0; 2];
        let mut abs_sum = 0.0;
        for (s, n) in sums.iter_mut().zip([N_LO, N_HI]) {
            // (1−ξ)^er sits at b, (1+ξ)^el at a.
            let r = gauss_jacobi(n, er, el);
            let mut acc = 0.0;
            for (xi, wi) in r.x.iter().zip(&r.w) {
                let v = wi * h(mid + half * xi);
                acc += v;
                if n == N_HI {
                    abs_sum += v.abs();
                }
            }
            *s = acc * fac;
        }
        if !sums[1].is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
        }
        let mut err = (sums[1] - sums[0]).abs();
        if err <= 64.0 * f64::EPSILON * abs_sum * fac {
            err = 0.0;
        }
        Ok(Seg { a, b, wl, wr, est: sums[1], err })
    };

    let mut segs = vec![eval_seg(lo, hi, true, true)?];
    loop {
        let total: f64 = segs.iter().map(|s| s.est).sum();
        let err: f64 = segs.iter().map(|s| s.err).sum();
        if err <= q.abs_tol.max(q.rel_tol * total.abs()) {
            return Ok(total);
        }
        if segs.len() >= q.max_subdivisions {
            // Rounding noise in g can sit just above a tight tolerance;
            // accept within a factor of 100, like a roundoff-limited exit.
            if err <= 100.0 * q.abs_tol.max(q.rel_tol * total.abs()) {
                return Ok(total);
            }
            return Err(Error::Quadrature(format!(
                "{} subdivisions on [{lo}, {hi}], error estimate {err:.3e} for value {total:.6e}",
                segs.len()
            )));
        }
        let (i, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .unwrap();
        let s = segs.swap_remove(i);
        let m = 0.5 * (s.a + s.b);
        if !(m > s.a && m < s.b) {
            return Err(Error::Quadrature(format!("interval collapsed near {m}")));
        }
        segs.push(eval_seg(s.a, m, s.wl, false)?);
        segs.push(eval_seg(m, s.b, false, s.wr)?);
    }
}

/// How an integrand behaves at +∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// Faster than any power (or unknown but assumed benign).
    Fast,
    /// Integrand ~ x^{−τ}, τ > 1.
    Power(f64),
}

/// ∫_lo^∞ (x−lo)^pl g(x) dx, split at lo + l. The tail is mapped to (0, 1]
/// by x = lo + l/y; a power tail becomes a Jacobi weight at y = 0.
pub fn semi_infinite(
    g: &dyn Fn(f64) -> f64,
    lo: f64,
    pl: f64,
    tail: Tail,
    l: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    let head = jacobi(g, lo, lo + l, pl, 0.0, q)?;
    let wy = match tail {
        Tail::Fast => 0.0,
        Tail::Power(tau) => {
            if !(tau > 1.0) {
                return Err(Error::Divergence(format!("tail exponent {tau} is not integrable")));
            }
            tau - 2.0
        }
    };
    let t = |y: f64| {
        let x = lo + l / y;
        let v = g(x) * (x - lo).powf(pl);
        if v == 0.0 {
            return 0.0;
        }
        v * l / (y * y) / y.powf(wy)
    };
    let tail_val = jacobi(&t, 0.0, 1.0, wy, 0.0, q)?;
    Ok(head + tail_val)
}

/// ∫_lo^hi g with no endpoint singularities; `hi` may be infinite.
pub fn integrate(g: &dyn Fn(f64) -> f64, lo: f64, hi: f64, q: &QuadratureSpec) -> Result<f64> {
    if hi.is_infinite() {
        semi_infinite(g, lo, 0.0, Tail::Fast, 1.0, q)
    } else {
        jacobi(g, lo, hi, 0.0, 0.0, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn legendre_weights_sum_to_two() {
        let r = gauss_jacobi(16, 0.0, 0.0);
        let s: f64 = r.w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_rule_integrates_beta() {
        // ∫_{-1}^1 (1−x)^a (1+x)^b x² dx against the moment formula.
        let (a, b) = (-0.5, 0.3);
        let r = gauss_jacobi(16, a, b);
        let num: f64 = r.x.iter().zip(&r.w).map(|(x, w)| w * x * x).sum();
        // Map to [0,1]: x = 2t − 1.
        let mom = |p: f64, q: f64| beta(p, q);
        let exact = 2f64.powf(a + b + 1.0)
            * (4.0 * mom(b + 3.0, a + 1.0) - 4.0 * mom(b + 2.0, a + 1.0) + mom(b + 1.0, a + 1.0));
        assert!((num - exact).abs() < 1e-13 * exact.abs(), "{num} vs {exact}");
    }

    #[test]
    fn singular_endpoint_integral() {
        let q = QuadratureSpec::default();
        // ∫_0^1 x^{-0.5} (1−x)^{0.25} cos x dx by weights vs. by series.
        let v = jacobi(&|x: f64| x.cos(), 0.0, 1.0, -0.5, 0.25, &q).unwrap();
        let mut s = 0.0;
        let mut term = 1.0;
        for k in 0..20 {
            s += term * beta(0.5 + 2.0 * k as f64, 1.25);
            term *= -1.0 / (((2 * k + 1) * (2 * k + 2)) as f64);
        }
        assert!((v - s).abs() < 1e-13, "{v} vs {s}");
    }

    #[test]
    fn semi_infinite_gamma() {
        let q = QuadratureSpec::default();
        let v = semi_infinite(&|x: f64| (-x).exp(), 0.0, 0.7, Tail::Fast, 1.0, &q).unwrap();
        assert!((v - gamma(1.7)).abs() < 1e-12);
        let v = semi_infinite(&|x: f64| 1.0 / (1.0 + x).powi(3), 0.0, 0.0, Tail::Power(3.0), 1.0, &q).unwrap();
        assert!((v - 0.5).abs() < 1e-13);
    }

    #[test]
    fn divergent_exponents_rejected() {
        let q = QuadratureSpec::default();
        assert!(matches!(jacobi(&|_| 1.0, 0.0, 1.0, -1.0, 0.0, &q), Err(Error::Divergence(_))));
        assert!(semi_infinite(&|_| 1.0, 0.0, 0.0, Tail::Power(1.0), 1.0, &q).is_err());
    }
}
