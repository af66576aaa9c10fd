//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use georadon::catalog::Family;
use georadon::cli::{closed_form_reports, run, run_with_threads, JobSpec};
use georadon::fracint::{ek_deriv_left, ek_deriv_right, ek_left_profile, ek_right, ek_right_profile, ArgKind, Profile1D, QuadratureSpec};
use georadon::identities::{Group, Identity};
use georadon::inversion::{chain_identity, reconstruct, ZonalFunction};
use georadon::models::reparam;
use georadon::radon_mc::{
    dual_affine_mc, duality_check_mc, radon_affine_mc, radon_hyper_mc, AffinePlane, DualityInput, DualityKind, HyperGeodesic, Integrand, McSpec,
    Placement,
};
use georadon::radon_radial::{
    dual_affine_radial, invert_radial, radon_affine_radial, radon_hyper_zonal, sharpness_demo, support_demo, Condition, Geometry, InvertSpec,
    Transform,
};
use georadon::TransformParams;
use nalgebra::DVector;
use std::time::Instant;

type Outcome = Result<String, String>;

fn params(n: usize, j: usize, k: usize) -> TransformParams {
    TransformParams::new(n, j, k).unwrap()
}

fn gaussian(kind: ArgKind) -> Profile1D {
    Family::Gaussian { sigma: 1.0 }.profile(kind).unwrap()
}

/// max |a − b| over the nodes, relative to max |b|.
fn sup_rel(xs: &[f64], a: impl Fn(f64) -> f64, b: impl Fn(f64) -> f64) -> f64 {
    let sup = xs.iter().map(|&x| b(x).abs()).fold(0.0, f64::max);
    xs.iter().map(|&x| (a(x) - b(x)).abs()).fold(0.0, f64::max) / sup
}

fn nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
}

fn closed_forms() -> Outcome {
    let reports = closed_form_reports(&QuadratureSpec::default());
    let worst = reports.iter().map(|r| r.max_rel).fold(0.0, f64::max);
    match reports.iter().find(|r| !r.passed) {
        None => Ok(format!("{} closed forms on 64 nodes, max rel {worst:.1e}", reports.len())),
        Some(r) => Err(format!("{}: {:.1e} {:?}", r.name, r.max_rel, r.error)),
    }
}

fn ek_round_trips() -> Outcome {
    let q = QuadratureSpec::precise();
    let catalog = [Family::Gaussian { sigma: 1.0 }, Family::PowerGaussian { beta: 1.0 }, Family::Bump { a: 2.0 }];
    let mut worst: f64 = 0.0;
    for fam in catalog {
        let f = fam.profile(ArgKind::EuclideanRadius).unwrap();
        for alpha in [0.5, 1.0, 1.5, 2.0, 2.5] {
            let left = ek_left_profile(alpha, &f, &q).and_then(|p| p.tabulated(0.0, 2.5, 1e-15)).map_err(|e| e.to_string())?;
            let xs = nodes(0.0, 2.0, 64);
            let e = sup_rel(&xs, |t| ek_deriv_left(alpha, &left, t).unwrap_or(f64::NAN), |t| f.eval(t));
            if !(e <= 1e-6) {
                return Err(format!("left {fam:?} α = {alpha}: {e:.2e}"));
            }
            worst = worst.max(e);
            let right = ek_right_profile(alpha, &f, &q).and_then(|p| p.tabulated(0.0, 8.0, 1e-15)).map_err(|e| e.to_string())?;
            let xs = nodes(0.5, 4.0, 64);
            let e = sup_rel(&xs, |t| ek_deriv_right(alpha, &right, t).unwrap_or(f64::NAN), |t| f.eval(t));
            if !(e <= 1e-6) {
                return Err(format!("right {fam:?} α = {alpha}: {e:.2e}"));
            }
            worst = worst.max(e);
        }
    }
    // e^{−t²} is fixed by the right-sided operator of every order.
    let g = gaussian(ArgKind::EuclideanRadius);
    let mut fixed: f64 = 0.0;
    for alpha in [0.5, 1.0, 1.5, 2.0, 2.5] {
        for t in nodes(0.0, 3.0, 64) {
            let v = ek_right(alpha, &g, t, &QuadratureSpec::default()).map_err(|e| e.to_string())?;
            fixed = fixed.max((v - g.eval(t)).abs() / g.eval(t));
        }
    }
    if fixed > 1e-10 {
        return Err(format!("Gaussian fixed point off by {fixed:.2e}"));
    }
    Ok(format!("round trips max rel {worst:.1e}, fixed point {fixed:.1e}"))
}

fn identity_group(group: Group, expected: usize) -> Outcome {
    let q = QuadratureSpec::default();
    let ids: Vec<Identity> = Identity::ALL.into_iter().filter(|i| i.group() == group).collect();
    if ids.len() != expected {
        return Err(format!("{} identities, expected {expected}", ids.len()));
    }
    let mut worst: f64 = 0.0;
    for id in &ids {
        let r = id.check(&q);
        if !r.passed {
            return Err(format!("{}: {:.2e} {:?}", r.name, r.max_rel, r.error));
        }
        worst = worst.max(r.max_rel);
    }
    Ok(format!("{} identities, max rel {worst:.1e}", ids.len()))
}

fn inversion_and_support() -> Outcome {
    let q = QuadratureSpec::precise();
    let mut worst: f64 = 0.0;
    for (n, j, k) in [(3, 0, 1), (4, 0, 2), (4, 1, 2)] {
        let p = params(n, j, k);
        for t in [Transform::forward(Geometry::Affine), Transform::forward(Geometry::Hyperbolic), Transform::dual(Geometry::Hyperbolic)] {
            let input = match t.geometry {
                Geometry::Affine => gaussian(ArgKind::EuclideanRadius),
                _ => reparam(&gaussian(ArgKind::GeodesicDistance), t.variable()).unwrap(),
            };
            let data = t.profile(&p, &input, &q).map_err(|e| e.to_string())?;
            let rec = invert_radial(t, &p, &data, &InvertSpec::default()).map_err(|e| format!("{t} {p}: {e}"))?;
            let hi = if t.variable() == ArgKind::CoshDistance { 3f64.cosh() } else { 3.0 };
            let e = sup_rel(&nodes(input.lo(), hi, 32), |x| rec.eval(x), |x| input.eval(x));
            if !(e <= 1e-4) {
                return Err(format!("{t} {p}: {e:.2e}"));
            }
            worst = worst.max(e);
        }
    }
    let mut beyond: f64 = 0.0;
    for (g, radius) in [(Geometry::Affine, 1.0), (Geometry::Hyperbolic, 1f64.cosh()), (Geometry::Chord, 0.6)] {
        let d = support_demo(g, &params(4, 0, 2), radius).map_err(|e| format!("{g:?}: {e}"))?;
        if d.transform_beyond != 0.0 || !(d.reconstruction_beyond <= 1e-3) {
            return Err(format!("{g:?}: {d:?}"));
        }
        beyond = beyond.max(d.reconstruction_beyond);
    }
    Ok(format!("recovery max rel {worst:.1e}; transforms vanish beyond the support, reconstructions ≤ {beyond:.1e} there"))
}

fn sharp_exponents() -> Outcome {
    let mut shown = 0;
    for p in [params(4, 0, 2), params(5, 1, 3), params(3, 0, 2)] {
        for c in Condition::ALL {
            if c.threshold(&p).is_infinite() {
                continue;
            }
            let (bad, good) = c.demo_exponents(&p);
            let rb = sharpness_demo(c, &p, bad).map_err(|e| e.to_string())?;
            let rg = sharpness_demo(c, &p, good).map_err(|e| e.to_string())?;
            if !rb.diverges() || !rb.partials.windows(2).all(|w| w[1] > w[0]) {
                return Err(format!("{c:?} {p} at {bad}: {:?}", rb.partials));
            }
            if !rg.converges() {
                return Err(format!("{c:?} {p} at {good}: {:?}", rg.ratios));
            }
            shown += 1;
        }
    }
    Ok(format!("{shown} witnesses keep growing over every doubling; the sufficient sides converge"))
}

fn monte_carlo() -> Outcome {
    let q = QuadratureSpec::default();
    let triples = [(3, 0, 1), (3, 1, 2), (4, 0, 2), (4, 1, 3)];
    let trials = 100;
    let f_aff = gaussian(ArgKind::EuclideanRadius);
    let f_hyp = gaussian(ArgKind::GeodesicDistance);
    let mut summary = Vec::new();
    for name in ["radon_affine_mc", "dual_affine_mc", "radon_hyper_mc"] {
        let mut within = 0;
        for t in 0..trials {
            let (n, j, k) = triples[t % triples.len()];
            let p = params(n, j, k);
            let s = 0.3 * (t % 5) as f64;
            let mc = McSpec::new(1000 + t as u64, 100_000);
            let (est, exact) = match name {
                "radon_affine_mc" => (
                    radon_affine_mc(&p, &Integrand::radial(f_aff.clone(), 1.0).unwrap(), &AffinePlane::standard(n, k, s).unwrap(), &mc),
                    radon_affine_radial(&p, &f_aff, s, &q),
                ),
                "dual_affine_mc" => (
                    dual_affine_mc(&p, &Integrand::radial(f_aff.clone(), 1.0).unwrap(), &AffinePlane::standard(n, j, s).unwrap(), &mc),
                    dual_affine_radial(&p, &f_aff, s, &q),
                ),
                _ => (
                    radon_hyper_mc(&p, &Integrand::zonal(f_hyp.clone(), 1.0).unwrap(), &Placement::at_distance(n, s).unwrap(), &mc),
                    radon_hyper_zonal(&p, &f_hyp, s.cosh(), &q),
                ),
            };
            let (est, exact) = (est.map_err(|e| e.to_string())?, exact.map_err(|e| e.to_string())?);
            if est.z_score(exact) < 4.0 {
                within += 1;
            }
        }
        if within < 95 {
            return Err(format!("{name}: {within}/{trials} within 4σ"));
        }
        summary.push(format!("{name} {within}/{trials}"));
    }
    // Non-radial pairs.
    let mc = McSpec::new(77, 100_000);
    let f = Integrand::new(1.0, |t: &AffinePlane| (-t.offset.norm_squared()).exp() * (1.0 + t.offset[0] + t.offset[1] * t.offset[1])).unwrap();
    // Diagonal entry of the orthogonal projector onto the direction space: independent of the frame chosen.
    let phi = Integrand::new(1.0, |z: &AffinePlane| {
        let u = z.frame.columns();
        (-z.offset.norm_squared()).exp() * (1.0 + u.row(0).norm_squared() + z.offset[2])
    })
    .unwrap();
    let planes = DualityInput::Planes { f, phi };
    // Distances to points off the origin.
    let point = |g: &HyperGeodesic, t: f64, axis: usize| {
        let mut x = DVector::zeros(g.ambient() + 1);
        x[axis] = t.sinh();
        x[g.ambient()] = t.cosh();
        g.distance_to(&x)
    };
    let hf = Integrand::new(1.0, move |g: &HyperGeodesic| {
        let d = g.distance_to_origin();
        (-d * d).exp() * (1.0 + 0.5 * point(g, 0.7, 0).tanh())
    })
    .unwrap();
    let hphi = Integrand::new(1.0, move |g: &HyperGeodesic| {
        let d = g.distance_to_origin();
        (-d * d).exp() * (1.0 + (-point(g, 1.0, 1).powi(2)).exp())
    })
    .unwrap();
    let geodesics = DualityInput::Geodesics { f: hf, phi: hphi };
    for (kind, p, input) in [
        (DualityKind::Affine, params(3, 0, 1), &planes),
        (DualityKind::Affine, params(3, 1, 2), &planes),
        (DualityKind::Chord, params(3, 0, 2), &planes),
        (DualityKind::Hyperbolic, params(3, 0, 1), &geodesics),
        (DualityKind::Hyperbolic, params(4, 1, 2), &geodesics),
    ] {
        let c = duality_check_mc(kind, &p, input, &mc).map_err(|e| e.to_string())?;
        if !(c.z_score() < 4.0) {
            return Err(format!("{kind:?} {p}: {c:?}"));
        }
    }
    summary.push("5 non-radial dualities within 4σ".into());
    Ok(summary.join(", "))
}

fn rank_one_chain() -> Outcome {
    let h = ZonalFunction::new(gaussian(ArgKind::GeodesicDistance)).unwrap();
    for (i, (n, j, k)) in [(3, 1, 2), (4, 1, 2), (4, 1, 3), (5, 2, 3)].into_iter().enumerate() {
        let p = params(n, j, k);
        let z = Placement::at_distance(n, 0.6).unwrap();
        let (est, exact) = chain_identity(&p, &h, &z, &McSpec::new(40 + i as u64, 100_000)).map_err(|e| e.to_string())?;
        if !(est.z_score(exact) < 4.0) {
            return Err(format!("chain {p}: {est:?} vs {exact}"));
        }
    }
    let q = QuadratureSpec::default();
    let g = gaussian(ArgKind::GeodesicDistance);
    let hyper = Transform::forward(Geometry::Hyperbolic);
    let mut errs = Vec::new();
    for (n, j, k) in [(3, 1, 2), (4, 1, 2)] {
        let p = params(n, j, k);
        let phi = hyper.profile(&params(n, 0, k), &g, &q).map_err(|e| e.to_string())?;
        let f = reconstruct(&phi, &p, 1, &McSpec::new(5, 1_000_000)).map_err(|e| format!("{p}: {e}"))?;
        let exact = hyper.profile(&params(n, 0, j), &g, &q).map_err(|e| e.to_string())?;
        let xs: Vec<f64> = (0..=20).map(|i| (0.1 * i as f64).cosh()).collect();
        let e = sup_rel(&xs, |x| f.eval(x), |x| exact.eval(x));
        if !(e <= 5e-2) {
            return Err(format!("reconstruction {p}: {e:.2e}"));
        }
        errs.push(format!("{p} {e:.1e}"));
    }
    Ok(format!("chain identity within 4σ for 4 triples; reconstructions {}", errs.join(", ")))
}

fn determinism() -> Outcome {
    let jobs = [
        r#"
        command = "transform"
        params = { n = 3, j = 0, k = 1 }
        profile = { family = "closed_form", example = { id = "hyper_cap", alpha = 2.0, a = 2.0 } }
        grid = { lo = 1.0, hi = 2.0, count = 50 }
        "#,
        r#"
        command = "mc-duality"
        model = "euclidean_affine"
        params = { n = 4, j = 1, k = 2 }
        profile = { family = "gaussian", sigma = 1.0 }
        mc = { seed = 3, n_samples = 20000 }
        "#,
        r#"
        command = "chain"
        params = { n = 3, j = 0, k = 1 }
        m = 1
        profile = { family = "gaussian", sigma = 1.0 }
        grid = { lo = 0.0, hi = 2.0, count = 11 }
        mc = { seed = 4, n_samples = 50000 }
        "#,
    ];
    for text in jobs {
        let job = JobSpec::from_toml(text).map_err(|e| e.to_string())?;
        let a = run(&job).map_err(|e| e.to_string())?.to_csv();
        let b = run(&job).map_err(|e| e.to_string())?.to_csv();
        let c = run_with_threads(&job, 1).map_err(|e| e.to_string())?.to_csv();
        let d = run_with_threads(&job, 4).map_err(|e| e.to_string())?.to_csv();
        if a != b || a != c || a != d {
            return Err(format!("outputs differ for\n{text}"));
        }
    }
    Ok(format!("{} jobs byte-identical across repeats and 1 or 4 workers", jobs.len()))
}

fn main() {
    let criteria: [(&str, f64, fn() -> Outcome); 9] = [
        ("closed-form conformance", 10.0, closed_forms),
        ("EK round trips", 30.0, ek_round_trips),
        ("transition identities", 60.0, || identity_group(Group::Transition, 4)),
        ("duality and measure identities", 120.0, || identity_group(Group::Duality, 16)),
        ("radial inversion and support", 60.0, inversion_and_support),
        ("sharp-exponent demos", 60.0, sharp_exponents),
        ("Monte Carlo consistency", 600.0, monte_carlo),
        ("rank-one chain", 1800.0, rank_one_chain),
        ("determinism", f64::INFINITY, determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        let line = match outcome {
            Ok(detail) if secs <= budget => format!("PASS {}. {name}: {detail} [{secs:.1} s]", i + 1),
            Ok(detail) => format!("FAIL {}. {name}: {detail} but took {secs:.1} s of {budget} s", i + 1),
            Err(why) => format!("FAIL {}. {name}: {why} [{secs:.1} s]", i + 1),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
