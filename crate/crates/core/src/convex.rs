//! Piecewise-linear convex functions `h(u) = max_k (c_k + ⟨a_k, u⟩)` on the
//! negative orthant, with `c_k ≤ 0` and `a_k ≥ 0`.
//!
//! Every invariant here is exact: the directional number of `h` along `a` is
//! the limit of `v⁻¹ h(u + a v)` as `v → -∞`, which for a finite max of affine
//! functions is `min_k ⟨a_k, a⟩`, independent of `u`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::linalg::dot;
use crate::diagram::IndicatorDiagram;
use crate::error::{Error, Result};
use crate::exact::{q, q_str, q_vec, to_f64, Q};

/// A weight vector with strictly positive rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Direction(#[serde(with = "q_vec")] Vec<Q>);

impl Direction {
    pub fn new(a: Vec<Q>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInput("direction must be nonempty".into()));
        }
        if a.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidInput("direction entries must be strictly positive".into()));
        }
        Ok(Direction(a))
    }

    pub fn ones(dim: usize) -> Self {
        Direction(vec![q(1); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn scaled(&self, c: &Q) -> Result<Self> {
        Direction::new(self.0.iter().map(|x| x * c).collect())
    }

    /// Parses `"1,1/2,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Result<Vec<Q>> = text.split(',').map(crate::exact::parse_q).collect();
        Direction::new(parts?)
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    #[serde(with = "q_str")]
    pub c: Q,
    #[serde(with = "q_vec")]
    pub slope: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PLConvexFunction {
    dim: usize,
    pieces: Vec<Piece>,
}

#[derive(Deserialize)]
struct RawPL {
    dim: usize,
    pieces: Vec<Piece>,
}

impl<'de> Deserialize<'de> for PLConvexFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPL::deserialize(d)?;
        PLConvexFunction::new(raw.dim, raw.pieces).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiuCheck {
    #[serde(with = "q_str")]
    pub lhs: Q,
    #[serde(with = "q_str")]
    pub rhs: Q,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizationReport {
    /// Samples where `g_Ψ(u) < h(u)`.
    pub majorant_failures: Vec<usize>,
    /// `(candidate, sample)` pairs where a candidate majorant of `h` dips below `g_Ψ`.
    pub least_failures: Vec<(usize, usize)>,
    /// Candidates that majorize `h` on every sample.
    pub admissible_candidates: Vec<usize>,
    pub passed: bool,
}

impl PLConvexFunction {
    pub fn new(dim: usize, pieces: Vec<Piece>) -> Result<Self> {
        let f = Self::new_unchecked(dim, pieces)?;
        for p in &f.pieces {
            if p.c.is_positive() {
                return Err(Error::InvalidModel("piece constants must be <= 0".into()));
            }
            if p.slope.iter().any(Signed::is_negative) {
                return Err(Error::InvalidModel("piece slopes must be >= 0".into()));
            }
        }
        Ok(f)
    }

    /// Checks only shape, not signs. Used to build deliberately invalid
    /// functions for diagnostics.
    pub fn new_unchecked(dim: usize, pieces: Vec<Piece>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if pieces.is_empty() {
            return Err(Error::InvalidModel("need at least one piece".into()));
        }
        for p in &pieces {
            if p.slope.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.slope.len() });
            }
        }
        Ok(PLConvexFunction { dim, pieces })
    }

    /// `max_k (c_k + ⟨a_k, u⟩)` from `(c, slope)` pairs.
    pub fn from_pairs(pairs: Vec<(Q, Vec<Q>)>) -> Result<Self> {
        let dim = pairs.first().map_or(0, |p| p.1.len());
        Self::new(dim, pairs.into_iter().map(|(c, slope)| Piece { c, slope }).collect())
    }

    /// `φ_a(x) = max_k a_k⁻¹ log|x_k|`.
    pub fn weight(a: &Direction) -> Self {
        let n = a.dim();
        let pieces = (0..n)
            .map(|k| Piece {
                c: Q::zero(),
                slope: (0..n).map(|j| if j == k { q(1) / &a.as_slice()[k] } else { Q::zero() }).collect(),
            })
            .collect();
        PLConvexFunction { dim: n, pieces }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn eval(&self, u: &[Q]) -> Q {
        self.pieces
            .iter()
            .map(|p| &p.c + dot(&p.slope, u))
            .max()
            .expect("at least one piece")
    }

    /// Floating evaluation; `0 · (-∞)` counts as `0`.
    pub fn eval_f64(&self, u: &[f64]) -> f64 {
        self.pieces
            .iter()
            .map(|p| {
                to_f64(&p.c)
                    + p.slope
                        .iter()
                        .zip(u)
                        .filter(|(a, _)| !a.is_zero())
                        .map(|(a, x)| to_f64(a) * x)
                        .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `lim_{v→-∞} v⁻¹ h(u + a v) = min_k ⟨a_k, a⟩`.
    pub fn directional_number(&self, a: &Direction) -> Q {
        self.pieces
            .iter()
            .map(|p| dot(&p.slope, a.as_slice()))
            .min()
            .expect("at least one piece")
    }

    /// The directional number along `(1, …, 1)`: the Lelong number.
    pub fn lelong_number(&self) -> Q {
        self.directional_number(&Direction::ones(self.dim))
    }

    /// `min_k a_{k,j}` for a 1-based axis `j`.
    pub fn partial_number(&self, j: usize) -> Result<Q> {
        if j == 0 || j > self.dim {
            return Err(Error::AxisOutOfRange { index: j, dim: self.dim });
        }
        Ok(self.pieces.iter().map(|p| p.slope[j - 1].clone()).min().expect("at least one piece"))
    }

    /// `Σ_j ν_j ≤ ν`.
    pub fn siu_check(&self) -> SiuCheck {
        let lhs: Q = (1..=self.dim).map(|j| self.partial_number(j).expect("axis in range")).sum();
        let rhs = self.lelong_number();
        let holds = lhs <= rhs;
        SiuCheck { lhs, rhs, holds }
    }

    /// Recession function `max_k ⟨a_k, ·⟩` as a pruned diagram.
    pub fn recession_indicator(&self) -> IndicatorDiagram {
        IndicatorDiagram::from_generators(self.dim, self.pieces.iter().map(|p| p.slope.clone()).collect())
            .expect("slopes are nonnegative and of matching length")
    }

    /// `h₁ + h₂`, with all pairwise sums of pieces.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let pieces = self
            .pieces
            .iter()
            .flat_map(|p| {
                other.pieces.iter().map(move |r| Piece {
                    c: &p.c + &r.c,
                    slope: p.slope.iter().zip(&r.slope).map(|(a, b)| a + b).collect(),
                })
            })
            .collect();
        Ok(PLConvexFunction { dim: self.dim, pieces })
    }

    /// Checks `g_Ψ ≥ h` on the samples, and that every candidate indicator
    /// majorizing `h` on the samples also majorizes `g_Ψ` there.
    pub fn majorization_check(&self, samples: &[Vec<Q>], candidates: &[IndicatorDiagram]) -> MajorizationReport {
        let psi = self.recession_indicator();
        let g_psi = |u: &[Q]| -> Q { psi.generators().iter().map(|p| dot(p, u)).max().expect("nonempty") };
        let cand_val = |d: &IndicatorDiagram, u: &[Q]| -> Q { d.generators().iter().map(|p| dot(p, u)).max().expect("nonempty") };
        let majorant_failures: Vec<usize> = samples
            .iter()
            .enumerate()
            .filter(|(_, u)| g_psi(u) < self.eval(u))
            .map(|(k, _)| k)
            .collect();
        let mut least_failures = Vec::new();
        let mut admissible_candidates = Vec::new();
        for (ci, cand) in candidates.iter().enumerate() {
            if samples.iter().any(|u| cand_val(cand, u) < self.eval(u)) {
                continue;
            }
            admissible_candidates.push(ci);
            for (si, u) in samples.iter().enumerate() {
                if cand_val(cand, u) < g_psi(u) {
                    least_failures.push((ci, si));
                }
            }
        }
        let passed = majorant_failures.is_empty() && least_failures.is_empty();
        MajorizationReport { majorant_failures, least_failures, admissible_candidates, passed }
    }
}

/// `Ψ(y) = max_p Σ_j p_j log y_j`.
pub fn indicator_eval(psi: &IndicatorDiagram, y: &[f64]) -> f64 {
    psi.eval(y)
}
