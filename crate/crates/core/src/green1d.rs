//! Weighted multi-pole Green functions of the unit disk and the checks built
//! on them: pole fluxes, a Schwarz-type majorization, the self-Green property
//! of polydisk indicators, and a counterexample showing that equal indicators
//! do not force the comparison `v ≤ f` inside the ball.
//!
//! In dimension one the Green function with poles `z_m` and weights `ν_m` is
//! `G(z) = Σ ν_m log|(z - z_m) / (1 - z̄_m z)|`. It is certified by its
//! properties rather than by an envelope construction: `G ≤ 0`, `G = 0` on the
//! circle, and the flux of `G` around `z_m` equals `ν_m`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::diagram::{IndicatorDiagram, MassResult, Tau};
use crate::error::{Error, Result};
use crate::estimate::{estimate_indicator, WLadder};
use crate::exact::format_q;
use crate::poly::parse_polynomial;
use crate::psh::{ModulusPoint, PshModel};
use crate::quadrature::circle_mean;

/// Log-radius step for the flux difference quotient.
pub const FLUX_LOG_STEP: f64 = 1e-2;

/// A real-valued function on (a neighbourhood of) the closed unit disk.
pub trait DiskFunction {
    fn value(&self, z: Complex64) -> f64;
}

impl<F: Fn(Complex64) -> f64> DiskFunction for F {
    fn value(&self, z: Complex64) -> f64 {
        self(z)
    }
}

impl DiskFunction for PshModel {
    fn value(&self, z: Complex64) -> f64 {
        self.eval(&[z]).unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleSystem {
    #[serde(serialize_with = "ser_points")]
    poles: Vec<Complex64>,
    weights: Vec<f64>,
}

fn ser_points<S: serde::Serializer>(pts: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = pts.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

#[derive(Deserialize)]
struct RawPoles {
    poles: Vec<[f64; 2]>,
    weights: Vec<f64>,
}

impl<'de> Deserialize<'de> for PoleSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPoles::deserialize(d)?;
        let poles = raw.poles.iter().map(|p| Complex64::new(p[0], p[1])).collect();
        PoleSystem::new(poles, raw.weights).map_err(serde::de::Error::custom)
    }
}

impl PoleSystem {
    pub fn new(poles: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if poles.is_empty() || poles.len() != weights.len() {
            return Err(Error::InvalidInput("need one positive weight per pole".into()));
        }
        if poles.iter().any(|z| !(z.norm() < 1.0)) {
            return Err(Error::InvalidInput("poles must lie in the open unit disk".into()));
        }
        if weights.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidInput("weights must be positive".into()));
        }
        for (i, a) in poles.iter().enumerate() {
            if poles[i + 1..].contains(a) {
                return Err(Error::InvalidInput("poles must be distinct".into()));
            }
        }
        Ok(PoleSystem { poles, weights })
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    /// `G(z)` for `|z| ≤ 1`; `-inf` at the poles.
    pub fn green(&self, z: Complex64) -> f64 {
        self.poles
            .iter()
            .zip(&self.weights)
            .map(|(a, nu)| nu * ((z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)).norm().ln())
            .sum()
    }

    /// Pole system with the poles of both; fails if they share a pole.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let poles = self.poles.iter().chain(&other.poles).copied().collect();
        let weights = self.weights.iter().chain(&other.weights).copied().collect();
        PoleSystem::new(poles, weights)
    }

    /// Largest radius allowed around pole `m`: half the distance to the other
    /// poles and to the unit circle.
    pub fn max_flux_radius(&self, m: usize) -> f64 {
        let z = self.poles[m];
        let mut d = 1.0 - z.norm();
        for (k, p) in self.poles.iter().enumerate() {
            if k != m {
                d = d.min((z - p).norm());
            }
        }
        0.5 * d
    }

    /// Flux `(1/2π) ∮ ∂G/∂n` around pole `m`; approximately `ν_m`.
    pub fn flux_at_pole(&self, m: usize, radius: f64, nodes: usize) -> Result<f64> {
        if m >= self.len() {
            return Err(Error::InvalidInput(format!("pole index {m} out of range")));
        }
        if !(radius > 0.0 && radius < self.max_flux_radius(m)) {
            return Err(Error::Precondition(format!(
                "radius {radius} must be below {}",
                self.max_flux_radius(m)
            )));
        }
        Ok(flux(self, self.poles[m], radius, nodes))
    }
}

impl DiskFunction for PoleSystem {
    fn value(&self, z: Complex64) -> f64 {
        self.green(z)
    }
}

/// `log|B(z)|` for the Blaschke product with the given zeros, evaluated as a
/// complex product.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    pub zeros: Vec<Complex64>,
}

impl DiskFunction for BlaschkeProduct {
    fn value(&self, z: Complex64) -> f64 {
        let one = Complex64::new(1.0, 0.0);
        self.zeros.iter().fold(one, |acc, a| acc * (z - a) / (one - a.conj() * z)).norm().ln()
    }
}

/// Flux of `g` through the circle `|z - center| = radius`: the derivative of
/// the circle mean with respect to `log radius`, by central differences.
pub fn flux<G: DiskFunction + ?Sized>(g: &G, center: Complex64, radius: f64, nodes: usize) -> f64 {
    let mean_at = |r: f64| circle_mean(nodes, |t| g.value(center + Complex64::from_polar(r, t)));
    let outer = mean_at(radius * FLUX_LOG_STEP.exp());
    let inner = mean_at(radius * (-FLUX_LOG_STEP).exp());
    (outer - inner) / (2.0 * FLUX_LOG_STEP)
}

/// Lelong number of `g` at `center` from secant slopes of the circle maximum
/// against `log r`, for `r = r0, r0/10, …`.
pub fn lelong_at<G: DiskFunction + ?Sized>(g: &G, center: Complex64, r0: f64, rungs: usize, nodes: usize) -> f64 {
    let mut prev: Option<(f64, f64)> = None;
    let mut slope = f64::NAN;
    for k in 0..rungs.max(2) {
        let r = r0 * 10f64.powi(-(k as i32));
        let m = (0..nodes)
            .map(|j| g.value(center + Complex64::from_polar(r, 2.0 * PI * j as f64 / nodes as f64)))
            .fold(f64::NEG_INFINITY, f64::max);
        if let Some((pr, pm)) = prev {
            slope = (m - pm) / (r.ln() - pr);
        }
        prev = Some((r.ln(), m));
    }
    slope
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleCheck {
    pub pole: [f64; 2],
    pub weight: f64,
    pub lelong_estimate: f64,
    pub dominates: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchwarzReport {
    pub bound: f64,
    pub samples: usize,
    pub violations: Vec<usize>,
    pub max_excess: f64,
    pub poles: Vec<PoleCheck>,
    pub passed: bool,
}

/// Tolerance of the Schwarz comparison `g ≤ M + G`.
pub const SCHWARZ_TOL: f64 = 1e-9;

/// Checks `g(z) ≤ M + G(z)` on samples. The hypothesis that `g` is at least
/// as singular as `ν_m log|z - z_m|` at each pole is estimated and reported.
pub fn schwarz_check<G: DiskFunction + ?Sized>(g: &G, bound: f64, system: &PoleSystem, samples: &[Complex64]) -> SchwarzReport {
    let mut violations = Vec::new();
    let mut max_excess = f64::NEG_INFINITY;
    for (k, &z) in samples.iter().enumerate() {
        let rhs = bound + system.green(z);
        let lhs = g.value(z);
        let excess = if lhs == f64::NEG_INFINITY { f64::NEG_INFINITY } else { lhs - rhs };
        max_excess = max_excess.max(excess);
        if excess > SCHWARZ_TOL {
            violations.push(k);
        }
    }
    let poles = system
        .poles()
        .iter()
        .zip(system.weights())
        .enumerate()
        .map(|(m, (z, &nu))| {
            let est = lelong_at(g, *z, system.max_flux_radius(m), 6, 256);
            PoleCheck { pole: [z.re, z.im], weight: nu, lelong_estimate: est, dominates: est >= nu - 1e-3 }
        })
        .collect();
    let passed = violations.is_empty();
    SchwarzReport { bound, samples: samples.len(), violations, max_excess, poles, passed }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluxCheck {
    pub pole: [f64; 2],
    pub weight: f64,
    pub radius: f64,
    pub flux: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreenReport {
    pub system: PoleSystem,
    pub interior_samples: usize,
    pub interior_max: f64,
    pub negative_ok: bool,
    pub boundary_points: usize,
    pub boundary_max: f64,
    pub boundary_ok: bool,
    pub fluxes: Vec<FluxCheck>,
    pub flux_ok: bool,
    /// Schwarz check for `log|B|`, `B` the Blaschke product with each pole
    /// repeated `⌈ν_m⌉` times, against `M = 0`.
    pub schwarz: SchwarzReport,
    pub passed: bool,
}

/// Tolerances of [`certify`].
pub const BOUNDARY_TOL: f64 = 1e-12;
pub const FLUX_TOL: f64 = 1e-4;
pub const FLUX_RADIUS: f64 = 1e-2;
pub const FLUX_NODES: usize = 2048;

/// Checks `G ≤ 0` on random interior points, `G = 0` on the circle, flux
/// equal to the weight at each pole, and a Schwarz comparison.
pub fn certify(system: &PoleSystem, samples: usize, seed: u64) -> Result<GreenReport> {
    let interior = disk_samples(samples, 1.0 - 1e-9, seed);
    let interior_max = interior.iter().map(|z| system.green(*z)).fold(f64::NEG_INFINITY, f64::max);
    let boundary_points = 1000;
    let boundary_max = (0..boundary_points)
        .map(|k| system.green(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / boundary_points as f64)).abs())
        .fold(0.0, f64::max);
    let mut fluxes = Vec::with_capacity(system.len());
    for (m, (z, &nu)) in system.poles().iter().zip(system.weights()).enumerate() {
        let radius = FLUX_RADIUS.min(0.5 * system.max_flux_radius(m));
        let value = system.flux_at_pole(m, radius, FLUX_NODES)?;
        fluxes.push(FluxCheck { pole: [z.re, z.im], weight: nu, radius, flux: value, error: (value - nu).abs() });
    }
    let zeros = system
        .poles()
        .iter()
        .zip(system.weights())
        .flat_map(|(z, nu)| std::iter::repeat_n(*z, nu.ceil() as usize))
        .collect();
    let schwarz = schwarz_check(&BlaschkeProduct { zeros }, 0.0, system, &interior);
    let negative_ok = interior_max <= 0.0;
    let boundary_ok = boundary_max <= BOUNDARY_TOL;
    let flux_ok = fluxes.iter().all(|f| f.error <= FLUX_TOL);
    let passed = negative_ok && boundary_ok && flux_ok && schwarz.passed;
    Ok(GreenReport {
        system: system.clone(),
        interior_samples: samples,
        interior_max,
        negative_ok,
        boundary_points,
        boundary_max,
        boundary_ok,
        fluxes,
        flux_ok,
        schwarz,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfGreenReport {
    pub diagram: IndicatorDiagram,
    pub max_interior_value: f64,
    pub nonpositive: bool,
    /// Largest `|Ψ|` at the end of the paths toward the distinguished boundary.
    pub boundary_residual: f64,
    pub boundary_ok: bool,
    pub mass_exact: MassResult,
    pub mass_montecarlo: MassResult,
    pub mass_ok: bool,
    pub passed: bool,
}

/// Steps along `y(t) = 1 - t (1 - y)` toward the distinguished boundary.
const BOUNDARY_STEPS: [f64; 8] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

/// Certifies that the indicator of `Γ` behaves as the pluricomplex Green
/// function of the unit polydisk with its own singularity at the origin:
/// it is `≤ 0` inside, tends to `0` at the distinguished boundary, and its
/// Monge-Ampère mass (exact, cross-checked by Monte Carlo within four
/// standard errors) is the residual mass of `Γ`.
pub fn polydisk_selfgreen_check(diagram: &IndicatorDiagram, samples: &[Vec<f64>], mc_samples: u64, seed: u64) -> Result<SelfGreenReport> {
    if !diagram.touches_all_axes() {
        return Err(Error::Precondition("diagram does not meet every axis; mass is infinite".into()));
    }
    let mut max_interior_value = f64::NEG_INFINITY;
    let mut boundary_residual: f64 = 0.0;
    let mut monotone_paths = true;
    for y in samples {
        if y.len() != diagram.dim() || y.iter().any(|v| !(*v > 0.0 && *v < 1.0)) {
            return Err(Error::InvalidInput("samples must lie in the open unit polydisk".into()));
        }
        max_interior_value = max_interior_value.max(diagram.eval(y));
        let mut last = diagram.eval(y).abs();
        for t in BOUNDARY_STEPS {
            let yt: Vec<f64> = y.iter().map(|v| 1.0 - t * (1.0 - v)).collect();
            let cur = diagram.eval(&yt).abs();
            monotone_paths &= cur <= last + 1e-15;
            last = cur;
        }
        boundary_residual = boundary_residual.max(last);
    }
    let nonpositive = max_interior_value <= 0.0;
    let boundary_ok = monotone_paths && boundary_residual <= 1e-6;
    let mass_exact = diagram.residual_mass();
    let mass_montecarlo = diagram.residual_mass_montecarlo(mc_samples, seed);
    let mass_ok = match (&mass_exact.tau, &mass_montecarlo.tau, mass_montecarlo.mc_stderr) {
        (Tau::Exact(t), Tau::Estimate(e), Some(se)) => (crate::exact::to_f64(t) - e).abs() <= 4.0 * se + 1e-12,
        _ => false,
    };
    let passed = nonpositive && boundary_ok && mass_ok;
    Ok(SelfGreenReport {
        diagram: diagram.clone(),
        max_interior_value,
        nonpositive,
        boundary_residual,
        boundary_ok,
        mass_exact,
        mass_montecarlo,
        mass_ok,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleOptions {
    pub t_grid: Vec<f64>,
    pub sphere_samples: usize,
    pub probes: usize,
    pub seed: u64,
    pub ladder: WLadder,
    pub grid_points: usize,
    pub min_rounds: usize,
}

impl Default for CounterexampleOptions {
    fn default() -> Self {
        CounterexampleOptions {
            t_grid: (1..=6).map(|k| 10f64.powi(-k)).collect(),
            sphere_samples: 10_000,
            probes: 10,
            seed: 0,
            ladder: WLadder::default_for(2),
            grid_points: 48,
            min_rounds: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorProbe {
    pub y: [f64; 2],
    pub target: f64,
    pub f_estimate: f64,
    pub v_estimate: f64,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub t: f64,
    pub f: f64,
    pub v: f64,
    pub v_minus_f: f64,
    pub f_over_log_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub f: PshModel,
    pub v: PshModel,
    /// `m = inf f` on the unit sphere, after each grid refinement round.
    pub m_rounds: Vec<f64>,
    pub m: f64,
    pub m_stable: bool,
    pub sphere_samples: usize,
    pub sphere_max_v_minus_f: f64,
    pub sphere_ok: bool,
    pub probes: Vec<IndicatorProbe>,
    pub indicators_ok: bool,
    pub witness: CurvePoint,
    pub witness_ok: bool,
    pub curve: Vec<CurvePoint>,
    /// `f / log t` at the smallest `t` of the curve on `x₁ = -t², x₂ = t`.
    pub observed_exponent: f64,
    pub common_indicator: IndicatorDiagram,
    pub tau_common: String,
    pub tau_ok: bool,
    /// Mass of `(dd^c f)²` at the origin, the multiplicity of `(x₁², x₁ + x₂²)`.
    /// Quoted for comparison, not computed.
    pub reference_mass_f: String,
    pub passed: bool,
}

/// Tolerances of the counterexample certificate.
pub const SPHERE_TOL: f64 = 1e-9;
pub const INDICATOR_TOL: f64 = 5e-2;
pub const M_STABILITY: f64 = 1e-4;

/// `f = ½ log(|x₁|⁴ + |x₁ + x₂²|²)` and `v = ½ log(|x₁|² + |x₂|⁴) + m` share the
/// indicator `log max(|x₁|, |x₂|²)` and satisfy `v ≤ f` on the unit sphere,
/// yet `v > f` near the origin along `x₁ = -t², x₂ = t`.
pub fn counterexample_report(opts: &CounterexampleOptions) -> Result<CounterexampleReport> {
    let f = PshModel::log_norm(vec![parse_polynomial("x1^2", 2)?, parse_polynomial("x1 + x2^2", 2)?])?;
    let v_core = PshModel::log_norm(vec![parse_polynomial("x1", 2)?, parse_polynomial("x2^2", 2)?])?;

    let sphere = |alpha: f64, t1: f64, t2: f64| [Complex64::from_polar(alpha.cos(), t1), Complex64::from_polar(alpha.sin(), t2)];
    let f_at = |x: &[Complex64]| f.eval(x).expect("dimension 2");
    let m_rounds = sphere_minimum(|a, t1, t2| f_at(&sphere(a, t1, t2)), opts.grid_points, opts.min_rounds);
    let m = *m_rounds.last().expect("at least one round");
    let m_stable = m_rounds.len() >= 2 && (m_rounds[m_rounds.len() - 1] - m_rounds[m_rounds.len() - 2]).abs() <= M_STABILITY;
    let v = PshModel::sum(vec![v_core, PshModel::constant(2, m)])?;
    let v_at = |x: &[Complex64]| v.eval(x).expect("dimension 2");

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut sphere_max_v_minus_f = f64::NEG_INFINITY;
    for _ in 0..opts.sphere_samples {
        // |x₁|² is uniform on [0, 1] for the uniform measure on S³.
        let alpha = rng.gen::<f64>().sqrt().acos();
        let x = sphere(alpha, 2.0 * PI * rng.gen::<f64>(), 2.0 * PI * rng.gen::<f64>());
        sphere_max_v_minus_f = sphere_max_v_minus_f.max(v_at(&x) - f_at(&x));
    }
    let sphere_ok = sphere_max_v_minus_f <= SPHERE_TOL;

    let common_indicator = IndicatorDiagram::from_generators(
        2,
        vec![vec![crate::exact::q(1), crate::exact::q(0)], vec![crate::exact::q(0), crate::exact::q(2)]],
    )?;
    let mut probes = Vec::with_capacity(opts.probes);
    for _ in 0..opts.probes {
        let y = [0.05 + 0.9 * rng.gen::<f64>(), 0.05 + 0.9 * rng.gen::<f64>()];
        let point = ModulusPoint::new(y.to_vec())?;
        let target = y[0].ln().max(2.0 * y[1].ln());
        let fe = estimate_indicator(&f, &point, &opts.ladder)?.estimate;
        let ve = estimate_indicator(&v, &point, &opts.ladder)?.estimate;
        let max_deviation = (fe - target).abs().max((ve - target).abs());
        probes.push(IndicatorProbe { y, target, f_estimate: fe, v_estimate: ve, max_deviation });
    }
    let indicators_ok = probes.iter().all(|p| p.max_deviation <= INDICATOR_TOL);

    let curve_point = |t: f64| {
        let x = [Complex64::new(-t * t, 0.0), Complex64::new(t, 0.0)];
        let (fv, vv) = (f_at(&x), v_at(&x));
        CurvePoint { t, f: fv, v: vv, v_minus_f: vv - fv, f_over_log_t: fv / t.ln() }
    };
    let witness = curve_point(m.exp().min(1.0) / 2.0);
    let witness_ok = witness.v_minus_f > 0.0;
    let curve: Vec<CurvePoint> = opts.t_grid.iter().map(|&t| curve_point(t)).collect();
    let observed_exponent = curve
        .iter()
        .min_by(|a, b| a.t.total_cmp(&b.t))
        .map_or(f64::NAN, |p| p.f_over_log_t);

    let tau = common_indicator.residual_mass().tau;
    let tau_ok = tau == Tau::Exact(crate::exact::q(2))
        && f.exact_indicator().as_ref() == Some(&common_indicator)
        && v.exact_indicator().as_ref() == Some(&common_indicator);
    let tau_common = match &tau {
        Tau::Exact(t) => format_q(t),
        other => format!("{other:?}"),
    };
    let passed = m_stable && sphere_ok && indicators_ok && witness_ok && tau_ok;
    Ok(CounterexampleReport {
        f,
        v,
        m_rounds,
        m,
        m_stable,
        sphere_samples: opts.sphere_samples,
        sphere_max_v_minus_f,
        sphere_ok,
        probes,
        indicators_ok,
        witness,
        witness_ok,
        curve,
        observed_exponent,
        common_indicator,
        tau_common,
        tau_ok,
        reference_mass_f: "4".into(),
        passed,
    })
}

/// Nested grid minimization of `h(α, θ₁, θ₂)` over `[0, π/2] × [0, 2π)²`.
/// Each round re-grids a box of two cells around the incumbent. Runs at
/// least `min_rounds` rounds and continues (up to 12) until two successive
/// minima agree within [`M_STABILITY`].
fn sphere_minimum<H: Fn(f64, f64, f64) -> f64>(h: H, points: usize, min_rounds: usize) -> Vec<f64> {
    let k = points.max(4);
    let mut lo = [0.0, 0.0, 0.0];
    let mut width = [FRAC_PI_2, 2.0 * PI, 2.0 * PI];
    let mut best = (f64::INFINITY, [0.0; 3]);
    let mut rounds = Vec::new();
    for round in 0..12 {
        let step: Vec<f64> = width.iter().map(|w| w / (k - 1) as f64).collect();
        for i in 0..k {
            let a = (lo[0] + step[0] * i as f64).clamp(0.0, FRAC_PI_2);
            for j in 0..k {
                let t1 = lo[1] + step[1] * j as f64;
                for l in 0..k {
                    let t2 = lo[2] + step[2] * l as f64;
                    let val = h(a, t1, t2);
                    if val < best.0 {
                        best = (val, [a, t1, t2]);
                    }
                }
            }
        }
        rounds.push(best.0);
        let n = rounds.len();
        if round + 1 >= min_rounds && n >= 2 && (rounds[n - 1] - rounds[n - 2]).abs() <= M_STABILITY {
            break;
        }
        for d in 0..3 {
            width[d] = 4.0 * step[d];
            lo[d] = best.1[d] - 2.0 * step[d];
        }
    }
    rounds
}

/// Deterministic uniform samples of the open unit disk.
pub fn disk_samples(count: usize, radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>()))
        .collect()
}
