//! Model plurisubharmonic functions and their circled and convex images.
//!
//! All evaluation goes through logarithmic polar coordinates
//! `x_k = exp(s_k + iθ_k)`, so moduli far below the `f64` range (such as
//! `w^a` for tiny `w`) are handled without underflow. Polynomial terms are
//! combined with a max-shift before summing.

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::convex::{PLConvexFunction, Piece};
use crate::diagram::IndicatorDiagram;
use crate::error::{Error, Result};
use crate::exact::{q_vec, to_f64, Q};
use crate::poly::{parse_polynomial, SparsePolynomial};
use crate::quadrature::{finite_sum, max_value, TorusGrid};

/// Largest fraction of torus nodes that may evaluate to `-inf` in a mean.
pub const MAX_SKIPPED_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub enum PshModel {
    /// `log|F|`.
    LogAbsPoly(SparsePolynomial),
    /// `max_k (c_k + Σ_j a_kj log|x_j|)`.
    WeightedLogMax(PLConvexFunction),
    /// `log Σ_j |x_j|^{k_j}`.
    LogSumPowers(Vec<Q>),
    /// `½ log Σ_j |F_j|²`, the log-norm of a holomorphic map.
    LogNorm(Vec<SparsePolynomial>),
    Constant { dim: usize, value: f64 },
    Sum(Vec<PshModel>),
    Max(Vec<PshModel>),
}

/// Moduli `(r_1, …, r_n)` with `0 ≤ r_k < 1`, a representative of a torus orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusPoint(Vec<f64>);

impl ModulusPoint {
    pub fn new(r: Vec<f64>) -> Result<Self> {
        if r.is_empty() || r.iter().any(|&x| !(0.0..1.0).contains(&x)) {
            return Err(Error::InvalidInput(format!("moduli must lie in [0, 1): {r:?}")));
        }
        Ok(ModulusPoint(r))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn log(&self) -> Vec<f64> {
        self.0.iter().map(|r| r.ln()).collect()
    }
}

/// Angles for a single evaluation: explicit, or a node of a torus grid.
#[derive(Clone, Copy)]
pub enum Angles<'a> {
    Free(&'a [f64]),
    Grid(&'a TorusGrid, &'a [usize]),
}

impl PshModel {
    pub fn log_abs(f: SparsePolynomial) -> Self {
        PshModel::LogAbsPoly(f)
    }

    pub fn weighted_log_max(h: PLConvexFunction) -> Self {
        PshModel::WeightedLogMax(h)
    }

    pub fn log_sum_powers(exponents: Vec<Q>) -> Result<Self> {
        if exponents.is_empty() || exponents.iter().any(|k| !k.is_positive()) {
            return Err(Error::InvalidModel("exponents must be strictly positive".into()));
        }
        Ok(PshModel::LogSumPowers(exponents))
    }

    pub fn log_norm(components: Vec<SparsePolynomial>) -> Result<Self> {
        let dim = components.first().map(SparsePolynomial::dim).ok_or_else(|| Error::InvalidModel("log-norm needs a component".into()))?;
        if let Some(bad) = components.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: bad.dim() });
        }
        Ok(PshModel::LogNorm(components))
    }

    pub fn constant(dim: usize, value: f64) -> Self {
        PshModel::Constant { dim, value }
    }

    pub fn sum(terms: Vec<PshModel>) -> Result<Self> {
        check_children(&terms)?;
        Ok(PshModel::Sum(terms))
    }

    pub fn max(terms: Vec<PshModel>) -> Result<Self> {
        check_children(&terms)?;
        Ok(PshModel::Max(terms))
    }

    pub fn dim(&self) -> usize {
        match self {
            PshModel::LogAbsPoly(f) => f.dim(),
            PshModel::WeightedLogMax(h) => h.dim(),
            PshModel::LogSumPowers(k) => k.len(),
            PshModel::LogNorm(c) => c[0].dim(),
            PshModel::Constant { dim, .. } => *dim,
            PshModel::Sum(t) | PshModel::Max(t) => t[0].dim(),
        }
    }

    /// True when the value depends only on the moduli `|x_k|`.
    pub fn is_circled(&self) -> bool {
        match self {
            PshModel::LogAbsPoly(f) => f.len() == 1,
            PshModel::LogNorm(c) => c.iter().all(|f| f.len() == 1),
            PshModel::WeightedLogMax(_) | PshModel::LogSumPowers(_) | PshModel::Constant { .. } => true,
            PshModel::Sum(t) | PshModel::Max(t) => t.iter().all(PshModel::is_circled),
        }
    }

    /// `f(x)`; `-inf` exactly where the model is `-inf`.
    pub fn eval(&self, x: &[Complex64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        let s: Vec<f64> = x.iter().map(|z| z.norm().ln()).collect();
        let theta: Vec<f64> = x.iter().map(|z| z.arg()).collect();
        Ok(self.eval_log_polar(&s, Angles::Free(&theta)))
    }

    /// `f(exp(s + iθ))`.
    pub fn eval_log_polar(&self, s: &[f64], angles: Angles<'_>) -> f64 {
        self.prepare(s).eval(angles)
    }

    /// Everything about `f(exp(s + iθ))` that does not depend on `θ`.
    fn prepare(&self, s: &[f64]) -> Prepared {
        match self {
            PshModel::LogAbsPoly(f) => Prepared::Poly(PreparedPoly::new(f, s)),
            PshModel::WeightedLogMax(h) => Prepared::Const(h.eval_f64(s)),
            PshModel::LogSumPowers(k) => Prepared::Const(log_sum_exp(k.iter().zip(s).map(|(kj, sj)| to_f64(kj) * sj))),
            PshModel::LogNorm(c) => Prepared::Norm(c.iter().map(|f| PreparedPoly::new(f, s)).collect()),
            PshModel::Constant { value, .. } => Prepared::Const(*value),
            PshModel::Sum(t) => Prepared::Sum(t.iter().map(|m| m.prepare(s)).collect()),
            PshModel::Max(t) => Prepared::Max(t.iter().map(|m| m.prepare(s)).collect()),
        }
    }

    fn grid_values(&self, s: &[f64], nodes: usize) -> Vec<f64> {
        let grid = TorusGrid::new(self.dim(), nodes);
        let prepared = self.prepare(s);
        grid.map(|idx| prepared.eval(Angles::Grid(&grid, idx)))
    }

    /// Torus mean at log-moduli `s` (trapezoidal rule, `nodes` per axis).
    pub fn mean_image_log(&self, s: &[f64], nodes: usize) -> Result<f64> {
        if self.is_circled() {
            let zeros = vec![0.0; self.dim()];
            return Ok(self.eval_log_polar(s, Angles::Free(&zeros)));
        }
        let values = self.grid_values(s, nodes);
        let (sum, used, skipped) = finite_sum(&values);
        if used == 0 || skipped as f64 > MAX_SKIPPED_FRACTION * values.len() as f64 {
            return Err(Error::QuadratureSingular { skipped, total: values.len() });
        }
        Ok(sum / used as f64)
    }

    /// Torus maximum over the node grid at log-moduli `s`.
    pub fn max_image_log(&self, s: &[f64], nodes: usize) -> f64 {
        if self.is_circled() {
            let zeros = vec![0.0; self.dim()];
            return self.eval_log_polar(s, Angles::Free(&zeros));
        }
        max_value(&self.grid_values(s, nodes))
    }

    /// `f_c(r)`: mean of `f` over the torus through `r`.
    pub fn circled_mean(&self, r: &ModulusPoint, nodes: usize) -> Result<f64> {
        self.check_dim(r.as_slice().len())?;
        self.mean_image_log(&r.log(), nodes)
    }

    /// Grid approximation of `f_c'(r)`, the maximum over the torus through `r`.
    pub fn circled_max(&self, r: &ModulusPoint, nodes: usize) -> Result<f64> {
        self.check_dim(r.as_slice().len())?;
        Ok(self.max_image_log(&r.log(), nodes))
    }

    /// `g(u) = f_c(exp u)` for `u ≤ 0`, with closed forms where available.
    pub fn convex_image(&self, u: &[f64], nodes: usize) -> Result<f64> {
        self.check_dim(u.len())?;
        if u.iter().any(|&x| x > 0.0) {
            return Err(Error::InvalidInput("convex image is defined for u <= 0".into()));
        }
        self.convex_image_unchecked(u, nodes)
    }

    fn convex_image_unchecked(&self, u: &[f64], nodes: usize) -> Result<f64> {
        match self {
            PshModel::WeightedLogMax(h) => Ok(h.eval_f64(u)),
            PshModel::LogSumPowers(k) => Ok(log_sum_exp(k.iter().zip(u).map(|(kj, uj)| to_f64(kj) * uj))),
            PshModel::Constant { value, .. } => Ok(*value),
            PshModel::Sum(t) => t.iter().map(|m| m.convex_image_unchecked(u, nodes)).sum(),
            _ => self.mean_image_log(u, nodes),
        }
    }

    /// Grid estimate of `sup f` over the closed unit polydisk, which is
    /// attained on the distinguished boundary.
    pub fn torus_sup(&self, nodes: usize) -> f64 {
        self.max_image_log(&vec![0.0; self.dim()], nodes)
    }

    /// `f - sup f`, so that the result is `≤ 0` on the unit polydisk up to grid error.
    pub fn normalized(&self, nodes: usize) -> Result<Self> {
        let sup = self.torus_sup(nodes);
        if !sup.is_finite() {
            return Err(Error::InvalidModel("model is -inf on the whole torus".into()));
        }
        PshModel::sum(vec![self.clone(), PshModel::constant(self.dim(), -sup)])
    }

    /// Exact indicator diagram at the origin, when the model determines it.
    pub fn exact_indicator(&self) -> Option<IndicatorDiagram> {
        match self {
            PshModel::LogAbsPoly(f) => Some(IndicatorDiagram::from_polynomial(f)),
            PshModel::WeightedLogMax(h) => Some(h.recession_indicator()),
            PshModel::LogSumPowers(k) => {
                let n = k.len();
                let gens = (0..n).map(|j| (0..n).map(|i| if i == j { k[j].clone() } else { Q::zero() }).collect()).collect();
                IndicatorDiagram::from_generators(n, gens).ok()
            }
            PshModel::LogNorm(c) => c
                .iter()
                .map(IndicatorDiagram::from_polynomial)
                .reduce(|a, b| a.union(&b).expect("same dimension")),
            PshModel::Constant { dim, .. } => Some(IndicatorDiagram::trivial(*dim)),
            PshModel::Sum(t) => t
                .iter()
                .map(PshModel::exact_indicator)
                .try_fold(None::<IndicatorDiagram>, |acc, d| {
                    let d = d?;
                    Some(Some(match acc {
                        None => d,
                        Some(a) => a.minkowski_sum(&d).ok()?,
                    }))
                })
                .flatten(),
            PshModel::Max(t) => t
                .iter()
                .map(PshModel::exact_indicator)
                .try_fold(None::<IndicatorDiagram>, |acc, d| {
                    let d = d?;
                    Some(Some(match acc {
                        None => d,
                        Some(a) => a.union(&d).ok()?,
                    }))
                })
                .flatten(),
        }
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got });
        }
        Ok(())
    }
}

fn check_children(terms: &[PshModel]) -> Result<()> {
    let dim = terms.first().map(PshModel::dim).ok_or_else(|| Error::InvalidModel("empty sum or max".into()))?;
    if let Some(bad) = terms.iter().find(|t| t.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: bad.dim() });
    }
    Ok(())
}

fn log_sum_exp<I: Iterator<Item = f64> + Clone>(values: I) -> f64 {
    let m = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if m.is_infinite() {
        return m;
    }
    m + values.map(|v| (v - m).exp()).sum::<f64>().ln()
}

/// A model at fixed log-moduli, awaiting only the angles.
enum Prepared {
    Const(f64),
    Poly(PreparedPoly),
    Norm(Vec<PreparedPoly>),
    Sum(Vec<Prepared>),
    Max(Vec<Prepared>),
}

impl Prepared {
    fn eval(&self, angles: Angles<'_>) -> f64 {
        match self {
            Prepared::Const(v) => *v,
            Prepared::Poly(p) => p.eval(angles),
            Prepared::Norm(ps) => 0.5 * log_sum_exp(ps.iter().map(|p| 2.0 * p.eval(angles))),
            Prepared::Sum(t) => {
                let mut acc = 0.0;
                for m in t {
                    let v = m.eval(angles);
                    if v == f64::NEG_INFINITY {
                        return v;
                    }
                    acc += v;
                }
                acc
            }
            Prepared::Max(t) => t.iter().map(|m| m.eval(angles)).fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// `log|F(exp(s + iθ))|` with a max-shift over term magnitudes: each term is
/// stored as its exponent and `c/|c| · exp(log|c x^e| - top)`.
struct PreparedPoly {
    top: f64,
    terms: Vec<(Vec<u32>, Complex64)>,
}

impl PreparedPoly {
    fn new(f: &SparsePolynomial, s: &[f64]) -> Self {
        let logs: Vec<(Vec<u32>, Complex64, f64)> = f
            .terms()
            .iter()
            .map(|(idx, c)| {
                let cc = c.to_c64();
                let mut l = cc.norm().ln();
                for (&e, &sk) in idx.as_slice().iter().zip(s) {
                    if e > 0 {
                        l += e as f64 * sk;
                    }
                }
                (idx.as_slice().to_vec(), cc / cc.norm(), l)
            })
            .filter(|t| t.2 > f64::NEG_INFINITY)
            .collect();
        let top = logs.iter().map(|t| t.2).fold(f64::NEG_INFINITY, f64::max);
        let terms = logs.into_iter().map(|(e, u, l)| (e, u * (l - top).exp())).collect();
        PreparedPoly { top, terms }
    }

    fn eval(&self, angles: Angles<'_>) -> f64 {
        if self.top == f64::NEG_INFINITY {
            return self.top;
        }
        let mut acc = Complex64::zero();
        for (exps, w) in &self.terms {
            let unit = match angles {
                Angles::Free(theta) => {
                    let phase: f64 = exps.iter().zip(theta).map(|(&e, t)| e as f64 * t).sum();
                    Complex64::new(phase.cos(), phase.sin())
                }
                Angles::Grid(grid, nodes) => {
                    let k: u64 = exps.iter().zip(nodes).map(|(&e, &j)| e as u64 * j as u64).sum();
                    let (c, s) = grid.unit(k);
                    Complex64::new(c, s)
                }
            };
            acc += w * unit;
        }
        let m = acc.norm();
        if m == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.top + m.ln()
        }
    }
}

/// JSON form of [`PshModel`]; polynomials are grammar strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PshSpec {
    #[serde(rename = "logabs")]
    LogAbs { dim: usize, poly: String },
    #[serde(rename = "wlogmax")]
    WLogMax { dim: usize, pieces: Vec<Piece> },
    #[serde(rename = "logsumpowers")]
    LogSumPowers {
        #[serde(with = "q_vec")]
        exponents: Vec<Q>,
    },
    #[serde(rename = "lognorm")]
    LogNorm { dim: usize, components: Vec<String> },
    #[serde(rename = "const")]
    Const { dim: usize, value: f64 },
    #[serde(rename = "sum")]
    Sum { terms: Vec<PshSpec> },
    #[serde(rename = "max")]
    Max { terms: Vec<PshSpec> },
}

impl TryFrom<PshSpec> for PshModel {
    type Error = Error;

    fn try_from(spec: PshSpec) -> Result<Self> {
        match spec {
            PshSpec::LogAbs { dim, poly } => Ok(PshModel::LogAbsPoly(parse_polynomial(&poly, dim)?)),
            PshSpec::WLogMax { dim, pieces } => Ok(PshModel::WeightedLogMax(PLConvexFunction::new(dim, pieces)?)),
            PshSpec::LogSumPowers { exponents } => PshModel::log_sum_powers(exponents),
            PshSpec::LogNorm { dim, components } => {
                let polys: Result<Vec<_>> = components.iter().map(|c| parse_polynomial(c, dim)).collect();
                PshModel::log_norm(polys?)
            }
            PshSpec::Const { dim, value } => {
                if dim == 0 || !value.is_finite() {
                    return Err(Error::InvalidModel("constant needs positive dim and finite value".into()));
                }
                Ok(PshModel::constant(dim, value))
            }
            PshSpec::Sum { terms } => PshModel::sum(terms.into_iter().map(PshModel::try_from).collect::<Result<_>>()?),
            PshSpec::Max { terms } => PshModel::max(terms.into_iter().map(PshModel::try_from).collect::<Result<_>>()?),
        }
    }
}

impl From<&PshModel> for PshSpec {
    fn from(m: &PshModel) -> Self {
        match m {
            PshModel::LogAbsPoly(f) => PshSpec::LogAbs { dim: f.dim(), poly: f.to_string() },
            PshModel::WeightedLogMax(h) => PshSpec::WLogMax { dim: h.dim(), pieces: h.pieces().to_vec() },
            PshModel::LogSumPowers(k) => PshSpec::LogSumPowers { exponents: k.clone() },
            PshModel::LogNorm(c) => PshSpec::LogNorm { dim: c[0].dim(), components: c.iter().map(|f| f.to_string()).collect() },
            PshModel::Constant { dim, value } => PshSpec::Const { dim: *dim, value: *value },
            PshModel::Sum(t) => PshSpec::Sum { terms: t.iter().map(PshSpec::from).collect() },
            PshModel::Max(t) => PshSpec::Max { terms: t.iter().map(PshSpec::from).collect() },
        }
    }
}

impl Serialize for PshModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PshSpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PshModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PshModel::try_from(PshSpec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Two points of `R₋ⁿ`; their midpoint and componentwise min/max are checked too.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvSample {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Convexity,
    Monotonicity,
    Positivity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub sample: usize,
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvClassReport {
    pub samples: usize,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
}

impl ConvClassReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Checks midpoint convexity, coordinatewise monotonicity and nonpositivity
/// of the convex image on sampled segments.
pub fn check_conv_class(f: &PshModel, samples: &[ConvSample], nodes: usize, tolerance: f64) -> Result<ConvClassReport> {
    let mut violations = Vec::new();
    for (k, smp) in samples.iter().enumerate() {
        let mid: Vec<f64> = smp.a.iter().zip(&smp.b).map(|(x, y)| 0.5 * (x + y)).collect();
        let lo: Vec<f64> = smp.a.iter().zip(&smp.b).map(|(x, y)| x.min(*y)).collect();
        let hi: Vec<f64> = smp.a.iter().zip(&smp.b).map(|(x, y)| x.max(*y)).collect();
        let ga = f.convex_image(&smp.a, nodes)?;
        let gb = f.convex_image(&smp.b, nodes)?;
        let gm = f.convex_image(&mid, nodes)?;
        let glo = f.convex_image(&lo, nodes)?;
        let ghi = f.convex_image(&hi, nodes)?;
        let mut flag = |kind, excess: f64| {
            if excess > tolerance {
                violations.push(Violation { kind, sample: k, excess });
            }
        };
        flag(ViolationKind::Convexity, gm - 0.5 * (ga + gb));
        flag(ViolationKind::Monotonicity, glo - ghi);
        flag(ViolationKind::Positivity, ga.max(gb).max(gm));
    }
    Ok(ConvClassReport { samples: samples.len(), tolerance, violations })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport {
    pub r: Vec<f64>,
    pub scale: f64,
    pub gamma: f64,
    pub mean: f64,
    pub max: f64,
    pub scaled_mean: f64,
    /// Largest violation of the chain `mean ≤ max ≤ γ·mean(Rr) ≤ 0`.
    pub excess: f64,
}

/// `γ_R = ((R - 1)/(R + 1))ⁿ`.
pub fn harnack_gamma(scale: f64, dim: usize) -> f64 {
    ((scale - 1.0) / (scale + 1.0)).powi(dim as i32)
}

/// Evaluates the Harnack chain `f_c(r) ≤ f_c'(r) ≤ γ_R f_c(R r) ≤ 0` for `f ≤ 0`
/// on the closed unit polydisk and `R r` inside it.
pub fn sandwich_check(f: &PshModel, r: &ModulusPoint, scale: f64, nodes: usize) -> Result<SandwichReport> {
    if !(scale > 1.0) {
        return Err(Error::InvalidInput("scale must exceed 1".into()));
    }
    let outer = ModulusPoint::new(r.as_slice().iter().map(|x| scale * x).collect())?;
    let gamma = harnack_gamma(scale, f.dim());
    let mean = f.circled_mean(r, nodes)?;
    let max = f.circled_max(r, nodes)?;
    let scaled_mean = f.circled_mean(&outer, nodes)?;
    let excess = (mean - max).max(max - gamma * scaled_mean).max(gamma * scaled_mean);
    Ok(SandwichReport { r: r.as_slice().to_vec(), scale, gamma, mean, max, scaled_mean, excess })
}
