//! Scaling-limit estimates of directional numbers and indicator values.
//!
//! Along a ray `v ↦ u + a v` the circled-max image `g'` of `f` is convex, so
//! both the quotients `v⁻¹ g'(u + a v)` and the secant slopes between rungs
//! are monotone in the scale and converge to the same limit. Secant slopes
//! cancel the constant term of `g'` and converge much faster than the raw
//! quotients; the reported estimate is the last secant slope, and the error
//! bound is its change over the last rung.

use num_complex::Complex64;
use serde::Serialize;

use crate::convex::Direction;
use crate::diagram::IndicatorDiagram;
use crate::error::{Error, Result};
use crate::exact::{q_str, to_f64, Q};
use crate::poly::SparsePolynomial;
use crate::psh::{ModulusPoint, PshModel};

/// Slack allowed in monotonicity checks for grid maxima.
pub const MONOTONE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct WLadder {
    scales: Vec<f64>,
    base: Vec<Complex64>,
    nodes: usize,
    max_total_nodes: usize,
}

impl WLadder {
    pub const DEFAULT_NODES: usize = 512;
    pub const DEFAULT_MAX_TOTAL_NODES: usize = 1 << 18;
    pub const DEFAULT_BASE: f64 = 0.7;

    pub fn new(scales: Vec<f64>, base: Vec<Complex64>, nodes: usize) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::InvalidInput("ladder needs at least one scale".into()));
        }
        if scales.iter().any(|&w| !(w > 0.0 && w < 1.0)) {
            return Err(Error::InvalidInput("scales must lie in (0, 1)".into()));
        }
        if scales.windows(2).any(|p| p[1] >= p[0]) {
            return Err(Error::InvalidInput("scales must be strictly decreasing".into()));
        }
        if base.is_empty() || base.iter().any(|z| !(z.norm() > 0.0 && z.norm() < 1.0)) {
            return Err(Error::InvalidInput("base point must lie in the open polydisk with no zero coordinate".into()));
        }
        if nodes == 0 {
            return Err(Error::InvalidInput("nodes must be positive".into()));
        }
        Ok(WLadder { scales, base, nodes, max_total_nodes: Self::DEFAULT_MAX_TOTAL_NODES })
    }

    /// `w = 10⁻¹ … 10⁻⁸`, base point `(0.7, …, 0.7)`, 512 nodes per axis.
    pub fn default_for(dim: usize) -> Self {
        Self::decades(dim, 8)
    }

    /// `w = 10⁻¹ … 10^{-last}` with the default base point and nodes.
    pub fn decades(dim: usize, last: i32) -> Self {
        let scales = (1..=last).map(|k| 10f64.powi(-k)).collect();
        let base = vec![Complex64::new(Self::DEFAULT_BASE, 0.0); dim];
        WLadder::new(scales, base, Self::DEFAULT_NODES).expect("default ladder is valid")
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes.max(1);
        self
    }

    pub fn with_base(mut self, base: Vec<Complex64>) -> Result<Self> {
        let checked = WLadder::new(self.scales.clone(), base, self.nodes)?;
        self.base = checked.base;
        Ok(self)
    }

    /// Caps `nodes^dim`; the per-axis count shrinks in higher dimension.
    pub fn with_max_total_nodes(mut self, total: usize) -> Self {
        self.max_total_nodes = total.max(1);
        self
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn base(&self) -> &[Complex64] {
        &self.base
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn nodes_for(&self, dim: usize) -> usize {
        let mut n = self.nodes;
        while n > 1 && (n as f64).powi(dim as i32) > self.max_total_nodes as f64 {
            n -= 1;
        }
        n
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    /// Direction `a` or probe point `y`, as decimal strings.
    pub target: Vec<String>,
    /// `w` for directional estimates, `R` for indicator estimates.
    pub scales: Vec<f64>,
    pub quotients: Vec<f64>,
    pub secants: Vec<f64>,
    pub estimate: f64,
    pub error_bound: f64,
    /// Quotient and secant sequences are monotone in the scale within slack.
    pub monotone: bool,
    pub nodes: usize,
    pub exact: Option<f64>,
}

impl EstimateReport {
    fn assemble(target: Vec<String>, scales: Vec<f64>, log_scales: &[f64], values: &[f64], increasing: bool, nodes: usize) -> Self {
        let quotients: Vec<f64> = values.iter().zip(log_scales).map(|(g, t)| g / t).collect();
        let secants: Vec<f64> = (1..values.len())
            .map(|i| (values[i] - values[i - 1]) / (log_scales[i] - log_scales[i - 1]))
            .collect();
        let (estimate, error_bound) = match secants.len() {
            0 => (quotients[0], f64::INFINITY),
            1 => (secants[0], (quotients[1] - secants[0]).abs()),
            k => (secants[k - 1], (secants[k - 1] - secants[k - 2]).abs()),
        };
        let ordered = |xs: &[f64]| {
            xs.windows(2).all(|p| if increasing { p[1] >= p[0] - MONOTONE_SLACK } else { p[1] <= p[0] + MONOTONE_SLACK })
        };
        let monotone = ordered(&quotients) && ordered(&secants);
        EstimateReport { target, scales, quotients, secants, estimate, error_bound, monotone, nodes, exact: None }
    }

    /// `|estimate - exact| / max(|exact|, 1)`, when an exact value is known.
    pub fn deviation(&self) -> Option<f64> {
        self.exact.map(|e| (self.estimate - e).abs() / e.abs().max(1.0))
    }
}

/// Directional number `n(f, 0, a)` from `(log w)⁻¹ f_c'(w^{a_1} x_1, …)`.
///
/// Quotients decrease toward the limit as `w ↓ 0` for `f ≤ 0`; every secant
/// slope is an upper bound for it.
pub fn estimate_directional(f: &PshModel, a: &Direction, ladder: &WLadder) -> Result<EstimateReport> {
    let n = f.dim();
    check_dims(n, a.dim(), ladder)?;
    let nodes = ladder.nodes_for(n);
    let weights = a.to_f64();
    let base: Vec<f64> = ladder.base.iter().map(|z| z.norm().ln()).collect();
    let log_w: Vec<f64> = ladder.scales.iter().map(|w| w.ln()).collect();
    let mut values = Vec::with_capacity(log_w.len());
    for &t in &log_w {
        let s: Vec<f64> = base.iter().zip(&weights).map(|(b, ak)| b + ak * t).collect();
        let g = f.max_image_log(&s, nodes);
        if g == f64::NEG_INFINITY {
            return Err(Error::DegenerateBasePoint);
        }
        values.push(g);
    }
    let target = a.as_slice().iter().map(|x| x.to_string()).collect();
    let mut report = EstimateReport::assemble(target, ladder.scales.clone(), &log_w, &values, false, nodes);
    report.exact = f.exact_indicator().map(|d| to_f64(&d.index(a)));
    Ok(report)
}

/// Indicator value `Ψ_f(y)` from `R⁻¹ f_c'(exp(u + R log y))` with `R = -log w`.
///
/// Quotients increase toward the limit as `R → ∞` for `f ≤ 0`; every secant
/// slope is a lower bound for it.
pub fn estimate_indicator(f: &PshModel, y: &ModulusPoint, ladder: &WLadder) -> Result<EstimateReport> {
    let n = f.dim();
    check_dims(n, y.as_slice().len(), ladder)?;
    if y.as_slice().iter().any(|&v| v <= 0.0) {
        return Err(Error::InvalidInput("indicator probe needs 0 < y_k < 1".into()));
    }
    let nodes = ladder.nodes_for(n);
    let log_y = y.log();
    let base: Vec<f64> = ladder.base.iter().map(|z| z.norm().ln()).collect();
    let radii: Vec<f64> = ladder.scales.iter().map(|w| -w.ln()).collect();
    let mut values = Vec::with_capacity(radii.len());
    for &r in &radii {
        let s: Vec<f64> = base.iter().zip(&log_y).map(|(b, ly)| b + r * ly).collect();
        let g = f.max_image_log(&s, nodes);
        if g == f64::NEG_INFINITY {
            return Err(Error::DegenerateBasePoint);
        }
        values.push(g);
    }
    let target = y.as_slice().iter().map(|v| format!("{v}")).collect();
    let mut report = EstimateReport::assemble(target, radii.clone(), &radii, &values, true, nodes);
    report.exact = f.exact_indicator().map(|d| d.eval(y.as_slice()));
    Ok(report)
}

fn check_dims(n: usize, got: usize, ladder: &WLadder) -> Result<()> {
    if got != n {
        return Err(Error::DimensionMismatch { expected: n, got });
    }
    if ladder.base.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: ladder.base.len() });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub direction: Direction,
    #[serde(with = "q_str")]
    pub exact: Q,
    pub estimate: f64,
    pub error_bound: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub generators: IndicatorDiagram,
    pub rows: Vec<CompareRow>,
    pub max_deviation: f64,
}

/// Newton index of `F` against the numeric estimate for `log|F|`, per direction.
/// Deviations are `|estimate - exact| / max(exact, 1)`.
pub fn compare_exact_numeric(f: &SparsePolynomial, directions: &[Direction], ladder: &WLadder) -> Result<CompareReport> {
    let diagram = IndicatorDiagram::from_polynomial(f);
    let model = PshModel::log_abs(f.clone());
    let mut rows = Vec::with_capacity(directions.len());
    for a in directions {
        let exact = diagram.index(a);
        let est = estimate_directional(&model, a, ladder)?;
        let e = to_f64(&exact);
        let deviation = (est.estimate - e).abs() / e.abs().max(1.0);
        rows.push(CompareRow { direction: a.clone(), exact, estimate: est.estimate, error_bound: est.error_bound, deviation });
    }
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    Ok(CompareReport { generators: diagram, rows, max_deviation })
}
