//! Monte Carlo transforms of general (non-radial) functions.
//!
//! Every sample draws its randomness from its own ChaCha stream position,
//! keyed by (seed, stream_id, sample index), and partial sums are reduced
//! in a fixed chunk order. Estimates therefore depend on the seed and the
//! sample count only, never on scheduling.

mod affine;
mod duality;
mod hyper;

pub use affine::{dual_affine_mc, dual_affine_mc_with, radon_affine_mc};
pub use duality::{duality_check_mc, radial_duality_value, DualityCheck, DualityInput, DualityKind};
pub use hyper::{boost, dual_hyper_mc, dual_sine_mc, kernel_mc, radon_hyper_mc, HyperGeodesic, Kernel, Placement};

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McSpec {
    pub seed: u64,
    pub n_samples: usize,
    pub stream_id: u64,
}

impl Default for McSpec {
    fn default() -> Self {
        McSpec { seed: 0x5eed, n_samples: 100_000, stream_id: 0 }
    }
}

impl McSpec {
    pub fn new(seed: u64, n_samples: usize) -> Self {
        McSpec { seed, n_samples, stream_id: 0 }
    }

    pub fn with_stream(mut self, stream_id: u64) -> Self {
        self.stream_id = stream_id;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 2 {
            return Err(Error::Domain(format!("need at least 2 samples, got {}", self.n_samples)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    /// Sample standard deviation over √n.
    pub std_error: f64,
    pub n_samples: usize,
}

impl McEstimate {
    /// |self − x| in units of the standard error; exact agreement counts as 0.
    pub fn z_score(&self, x: f64) -> f64 {
        let d = (self.value - x).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }

    /// Both estimates agree within `sigmas` combined standard errors.
    pub fn agrees_with(&self, other: &McEstimate, sigmas: f64) -> bool {
        let d = (self.value - other.value).abs();
        d == 0.0 || d <= sigmas * self.std_error.hypot(other.std_error)
    }
}

// ---------------------------------------------------------------------------
// Sampling plumbing

/// Samples reduced sequentially before the ordered pairwise merge.
const CHUNK: usize = 1024;
/// RNG words reserved per sample; no sampler comes close.
const WORDS_PER_SAMPLE: u128 = 1 << 20;
/// Below this many samples the heavy-tail diagnostic is not meaningful.
const DIAGNOSTIC_MIN: usize = 1000;

/// The generator for sample `index`.
pub fn sample_rng(mc: &McSpec, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
    rng.set_stream(mc.stream_id);
    rng.set_word_pos(index as u128 * WORDS_PER_SAMPLE);
    rng
}

#[derive(Clone, Copy)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
    max_sq: f64,
    sum_sq: f64,
}

impl Moments {
    const EMPTY: Moments = Moments { n: 0.0, mean: 0.0, m2: 0.0, max_sq: 0.0, sum_sq: 0.0 };

    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
        self.max_sq = self.max_sq.max(x * x);
        self.sum_sq += x * x;
    }

    fn merge(a: Moments, b: Moments) -> Moments {
        if a.n == 0.0 {
            return b;
        }
        if b.n == 0.0 {
            return a;
        }
        let n = a.n + b.n;
        let d = b.mean - a.mean;
        Moments {
            n,
            mean: a.mean + d * b.n / n,
            m2: a.m2 + b.m2 + d * d * a.n * b.n / n,
            max_sq: a.max_sq.max(b.max_sq),
            sum_sq: a.sum_sq + b.sum_sq,
        }
    }
}

fn pairwise(mut v: Vec<Moments>) -> Moments {
    while v.len() > 1 {
        v = v.chunks(2).map(|c| if c.len() == 2 { Moments::merge(c[0], c[1]) } else { c[0] }).collect();
    }
    v.pop().unwrap_or(Moments::EMPTY)
}

/// Runs `sample` for every index and reduces. `sample` returns a vector of
/// `width` values (one per output) so that several estimates can share
/// their random numbers.
pub(crate) fn estimate_many<F>(mc: &McSpec, width: usize, sample: F) -> Result<Vec<McEstimate>>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) -> Result<()> + Sync,
{
    mc.validate()?;
    let chunks = mc.n_samples.div_ceil(CHUNK);
    let parts: Vec<Result<Vec<Moments>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut m = vec![Moments::EMPTY; width];
            let mut buf = vec![0.0; width];
            for i in c * CHUNK..((c + 1) * CHUNK).min(mc.n_samples) {
                let mut rng = sample_rng(mc, i);
                sample(&mut rng, &mut buf)?;
                for (mm, &x) in m.iter_mut().zip(&buf) {
                    if !x.is_finite() {
                        return Err(Error::MonteCarlo(format!("non-finite sample {x} at index {i}")));
                    }
                    mm.push(x);
                }
            }
            Ok(m)
        })
        .collect();
    let mut cols: Vec<Vec<Moments>> = vec![Vec::with_capacity(chunks); width];
    for p in parts {
        for (col, m) in cols.iter_mut().zip(p?) {
            col.push(m);
        }
    }
    cols.into_iter()
        .map(|col| {
            let m = pairwise(col);
            // One draw carrying most of the second moment means the
            // variance is not under control.
            if mc.n_samples >= DIAGNOSTIC_MIN && m.sum_sq > 0.0 && m.max_sq > 0.5 * m.sum_sq {
                return Err(Error::MonteCarlo(format!(
                    "a single sample carries {:.0}% of the second moment",
                    100.0 * m.max_sq / m.sum_sq
                )));
            }
            let var = if m.n > 1.0 { m.m2 / (m.n - 1.0) } else { 0.0 };
            Ok(McEstimate { value: m.mean, std_error: (var / m.n).sqrt(), n_samples: mc.n_samples })
        })
        .collect()
}

pub(crate) fn estimate<F>(mc: &McSpec, sample: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> Result<f64> + Sync,
{
    let v = estimate_many(mc, 1, |rng, out| {
        out[0] = sample(rng)?;
        Ok(())
    })?;
    Ok(v[0])
}

pub(crate) fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-distributed element of SO(n): QR of a Gaussian matrix with the
/// diagonal of R made positive, then one column flipped if needed.
pub fn sample_rotation(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let a = DMatrix::from_fn(n, n, |_, _| normal(rng));
    let qr = a.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        if r[(c, c)] < 0.0 {
            q.column_mut(c).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Density of the half-normal distribution with scale σ, and a draw from it.
pub(crate) fn half_normal(rng: &mut ChaCha8Rng, sigma: f64) -> (f64, f64) {
    let x = (normal(rng) * sigma).abs();
    let pdf = (2.0 / std::f64::consts::PI).sqrt() / sigma * (-0.5 * (x / sigma).powi(2)).exp();
    (x, pdf)
}

/// A standard Gaussian vector scaled by σ, and its density.
pub(crate) fn gaussian_vector(rng: &mut ChaCha8Rng, dim: usize, sigma: f64) -> (DVector<f64>, f64) {
    let z = DVector::from_fn(dim, |_, _| normal(rng) * sigma);
    let pdf = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-(dim as f64) / 2.0)
        * (-0.5 * z.norm_squared() / (sigma * sigma)).exp();
    (z, pdf)
}

// ---------------------------------------------------------------------------
// Planes

/// Orthonormal columns spanning a linear subspace of ℝⁿ.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    columns: DMatrix<f64>,
}

const ORTHO_TOL: f64 = 1e-12;

impl Frame {
    pub fn new(columns: DMatrix<f64>) -> Result<Self> {
        let d = columns.ncols();
        if d > columns.nrows() {
            return Err(Error::Domain(format!("{d} columns cannot be orthonormal in ℝ^{}", columns.nrows())));
        }
        let g = columns.transpose() * &columns;
        if (g - DMatrix::identity(d, d)).amax() > ORTHO_TOL {
            return Err(Error::Domain("frame columns are not orthonormal".into()));
        }
        Ok(Frame { columns })
    }

    /// The first d standard basis vectors.
    pub fn standard(n: usize, d: usize) -> Result<Self> {
        if d > n {
            return Err(Error::Domain(format!("no {d}-frame in ℝ^{n}")));
        }
        Ok(Frame { columns: DMatrix::identity(n, d) })
    }

    pub fn columns(&self) -> &DMatrix<f64> {
        &self.columns
    }
    pub fn ambient(&self) -> usize {
        self.columns.nrows()
    }
    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    /// v minus its projection onto the span.
    pub fn reject(&self, v: &DVector<f64>) -> DVector<f64> {
        v - &self.columns * (self.columns.transpose() * v)
    }

    /// An orthonormal basis of the orthogonal complement, built by
    /// Gram–Schmidt from the standard basis.
    pub fn complement(&self) -> Frame {
        let n = self.ambient();
        let need = n - self.dim();
        let mut basis: Vec<DVector<f64>> = Vec::with_capacity(need);
        let mut cands: Vec<DVector<f64>> = (0..n)
            .map(|i| {
                let mut v = self.reject(&DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }));
                v = self.reject(&v);
                v
            })
            .collect();
        while basis.len() < need {
            // Largest remaining candidate first keeps the process stable.
            let (i, _) = cands
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                .expect("candidates remain");
            let v = cands.swap_remove(i).normalize();
            for c in cands.iter_mut() {
                let d = v.dot(c);
                *c -= &v * d;
            }
            basis.push(v);
        }
        let cols = DMatrix::from_columns(&basis);
        Frame { columns: if need == 0 { DMatrix::zeros(n, 0) } else { cols } }
    }
}

/// An affine plane: a frame and an offset orthogonal to it.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinePlane {
    pub frame: Frame,
    pub offset: DVector<f64>,
}

impl AffinePlane {
    pub fn new(frame: Frame, offset: DVector<f64>) -> Result<Self> {
        if offset.len() != frame.ambient() {
            return Err(Error::Domain("offset and frame live in different dimensions".into()));
        }
        let along = frame.columns().transpose() * &offset;
        if along.amax() > ORTHO_TOL * offset.norm().max(1.0) {
            return Err(Error::Domain("offset is not orthogonal to the frame".into()));
        }
        Ok(AffinePlane { frame, offset })
    }

    /// span(e₁..e_d) shifted by `distance` along e_n.
    pub fn standard(n: usize, d: usize, distance: f64) -> Result<Self> {
        if d >= n && distance != 0.0 {
            return Err(Error::Domain("a full-dimensional plane has no offset".into()));
        }
        let mut offset = DVector::zeros(n);
        if d < n {
            offset[n - 1] = distance;
        }
        AffinePlane::new(Frame::standard(n, d)?, offset)
    }

    /// The plane through `point` (projected to the orthogonal part) with this frame.
    pub(crate) fn through(frame: Frame, point: &DVector<f64>) -> AffinePlane {
        let offset = frame.reject(point);
        AffinePlane { frame, offset }
    }

    /// |τ|: distance to the origin.
    pub fn distance(&self) -> f64 {
        self.offset.norm()
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }
}

/// A function to integrate together with the length scale it lives on,
/// which sizes the Gaussian importance envelopes.
#[derive(Clone)]
pub struct Integrand<T: ?Sized> {
    f: Arc<dyn Fn(&T) -> f64 + Send + Sync>,
    pub scale: f64,
}

impl<T: ?Sized> Integrand<T> {
    pub fn new<F>(scale: f64, f: F) -> Result<Self>
    where
        F: Fn(&T) -> f64 + Send + Sync + 'static,
    {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::Domain(format!("envelope scale must be positive, got {scale}")));
        }
        Ok(Integrand { f: Arc::new(f), scale })
    }

    pub fn zero() -> Self {
        Integrand { f: Arc::new(|_| 0.0), scale: 1.0 }
    }

    #[inline]
    pub fn eval(&self, x: &T) -> f64 {
        (self.f)(x)
    }
}

impl Integrand<AffinePlane> {
    /// τ ↦ f₀(|τ|) for a Euclidean radial profile.
    pub fn radial(f0: crate::fracint::Profile1D, scale: f64) -> Result<Self> {
        Integrand::new(scale, move |t: &AffinePlane| f0.eval(t.distance()))
    }
}

impl Integrand<HyperGeodesic> {
    /// t ↦ f₀(d(o, t)) for a profile in geodesic distance.
    pub fn zonal(f0: crate::fracint::Profile1D, scale: f64) -> Result<Self> {
        Integrand::new(scale, move |t: &HyperGeodesic| f0.eval(t.distance_to_origin()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_are_special_orthogonal() {
        let mc = McSpec::new(7, 200);
        for n in 1..=6 {
            for i in 0..mc.n_samples {
                let q = sample_rotation(n, &mut sample_rng(&mc, i));
                let e = (q.transpose() * &q - DMatrix::identity(n, n)).amax();
                assert!(e < 1e-12, "n={n}: {e}");
                assert!((q.determinant() - 1.0).abs() < 1e-10);
            }
        }
        let q = sample_rotation(1, &mut sample_rng(&mc, 0));
        assert_eq!(q[(0, 0)], 1.0);
    }

    #[test]
    fn haar_moments() {
        // E[tr Q] = 0 on SO(2), and every entry has mean zero.
        let mc = McSpec::new(11, 100_000);
        let est = estimate(&mc, |rng| Ok(sample_rotation(2, rng).trace())).unwrap();
        assert!(est.z_score(0.0) < 4.0, "{est:?}");
        for n in [3, 4] {
            let col = estimate_many(&mc, n, |rng, out| {
                let q = sample_rotation(n, rng);
                for (o, v) in out.iter_mut().zip(q.column(0).iter()) {
                    *o = *v;
                }
                Ok(())
            })
            .unwrap();
            for e in col {
                assert!(e.z_score(0.0) < 4.0, "{e:?}");
            }
            // |column|² is 1, so each squared entry has mean 1/n.
            let sq = estimate(&mc, |rng| Ok(sample_rotation(n, rng)[(0, 0)].powi(2))).unwrap();
            assert!(sq.z_score(1.0 / n as f64) < 4.0, "{sq:?}");
        }
    }

    #[test]
    fn estimates_ignore_scheduling() {
        let mc = McSpec::new(3, 5000);
        let f = |rng: &mut ChaCha8Rng| Ok(normal(rng).powi(2));
        let a = estimate(&mc, f).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| estimate(&mc, f).unwrap());
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = estimate(&mc.with_stream(1), f).unwrap();
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn standard_error_is_sample_sd_over_root_n() {
        let mc = McSpec::new(5, 4000);
        let xs: Vec<f64> = (0..mc.n_samples).map(|i| normal(&mut sample_rng(&mc, i))).collect();
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        let est = estimate(&mc, |rng| Ok(normal(rng))).unwrap();
        assert!((est.value - m).abs() < 1e-14);
        assert!((est.std_error - (var / xs.len() as f64).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn heavy_tails_are_reported() {
        let mc = McSpec::new(1, 2000);
        let r = estimate(&mc, |rng| {
            let u: f64 = rng.random();
            Ok(u.powf(-4.0))
        });
        assert!(matches!(r, Err(Error::MonteCarlo(_))));
    }

    #[test]
    fn complements_are_orthonormal() {
        let mc = McSpec::new(2, 10);
        let q = sample_rotation(5, &mut sample_rng(&mc, 0));
        let f = Frame::new(q.columns(0, 2).into_owned()).unwrap();
        let c = f.complement();
        assert_eq!(c.dim(), 3);
        let all = DMatrix::from_columns(&[f.columns().column(0), f.columns().column(1), c.columns().column(0), c.columns().column(1), c.columns().column(2)]);
        assert!((all.transpose() * &all - DMatrix::identity(5, 5)).amax() < 1e-12);
        assert!(AffinePlane::new(f.clone(), DVector::from_element(5, 1.0)).is_err());
    }
}
