//! Indicator diagrams `Γ = conv(P) + R₊ⁿ`.
//!
//! A diagram is the dual, exact representation of a conic indicator
//! `Ψ(y) = max_{p ∈ P} Σ_j p_j log y_j`. For `log|F|` the generators are the
//! support of `F`, so `Γ` is its Newton polyhedron. The residual Monge-Ampère
//! mass of `Ψ` at the origin is `n!` times the covolume `Vol(R₊ⁿ ∖ Γ)`.

pub mod linalg;
mod lp;
pub mod polytope;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeSet;

use crate::convex::Direction;
use crate::error::{Error, Result};
use crate::exact::{format_q, q, q_mat, to_f64, Q};
use crate::poly::SparsePolynomial;
use linalg::{combinations, det, dot, null_space, sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IndicatorDiagram {
    dim: usize,
    #[serde(with = "q_mat")]
    generators: Vec<Vec<Q>>,
}

#[derive(Deserialize)]
struct RawDiagram {
    dim: usize,
    #[serde(with = "q_mat")]
    generators: Vec<Vec<Q>>,
}

impl<'de> Deserialize<'de> for IndicatorDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDiagram::deserialize(d)?;
        IndicatorDiagram::from_generators(raw.dim, raw.generators).map_err(serde::de::Error::custom)
    }
}

/// A bounded facet of `Γ`: `⟨normal, x⟩ = level` with `normal > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Q>,
    pub level: Q,
    /// Indices into the diagram's generators lying on the facet.
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Tau {
    Exact(Q),
    Estimate(f64),
    Infinite,
}

impl Tau {
    pub fn exact(&self) -> Option<&Q> {
        match self {
            Tau::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Tau::Exact(v) => to_f64(v),
            Tau::Estimate(v) => *v,
            Tau::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Tau::Infinite)
    }
}

impl Serialize for Tau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Tau::Exact(v) => s.serialize_str(&format_q(v)),
            Tau::Estimate(v) => s.serialize_f64(*v),
            Tau::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MassMethod {
    Exact,
    MonteCarlo,
}

/// Residual mass `τ`. Infinite mass is decided combinatorially and always
/// carries `method = exact`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassResult {
    pub tau: Tau,
    pub method: MassMethod,
    #[serde(rename = "stderr")]
    pub mc_stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassBounds {
    #[serde(serialize_with = "crate::exact::q_str::serialize")]
    pub nu_power: Q,
    #[serde(serialize_with = "crate::exact::q_str::serialize")]
    pub tau: Q,
    pub holds: bool,
}

/// Monte Carlo sampling is split into this many independently seeded streams.
const MC_STREAMS: u64 = 64;

impl IndicatorDiagram {
    /// Validates and prunes a generator set.
    pub fn from_generators(dim: usize, generators: Vec<Vec<Q>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidInput("diagram needs at least one generator".into()));
        }
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.len() });
            }
            if g.iter().any(Signed::is_negative) {
                return Err(Error::InvalidInput("generator coordinates must be nonnegative".into()));
            }
        }
        Ok(IndicatorDiagram { dim, generators: prune(generators) })
    }

    /// The Newton polyhedron of `F` at the origin.
    pub fn from_polynomial(f: &SparsePolynomial) -> Self {
        let gens = f.support().iter().map(|m| m.to_rationals()).collect();
        IndicatorDiagram { dim: f.dim(), generators: prune(gens) }
    }

    /// `Γ = R₊ⁿ`, the diagram of a function bounded near the origin.
    pub fn trivial(dim: usize) -> Self {
        IndicatorDiagram { dim, generators: vec![vec![Q::zero(); dim]] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minimal generators in lexicographic order.
    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    /// `min_{p ∈ P} ⟨p, a⟩`.
    pub fn index(&self, a: &Direction) -> Q {
        self.support_value(a.as_slice())
    }

    /// `min_{p ∈ P} ⟨p, w⟩` for an arbitrary weight vector.
    pub fn support_value(&self, w: &[Q]) -> Q {
        self.generators
            .iter()
            .map(|p| dot(p, w))
            .min()
            .expect("diagram has at least one generator")
    }

    /// Exact test of `b ∈ conv(P) + R₊ⁿ`.
    pub fn membership(&self, b: &[Q]) -> bool {
        in_up_hull(&self.generators, b)
    }

    /// True iff every coordinate axis meets `Γ`.
    pub fn touches_all_axes(&self) -> bool {
        (0..self.dim).all(|j| {
            self.generators
                .iter()
                .any(|p| p.iter().enumerate().all(|(s, x)| s == j || x.is_zero()))
        })
    }

    /// `Ψ(y) = max_p Σ_j p_j log y_j` for moduli `0 ≤ y_j ≤ 1`.
    pub fn eval(&self, y: &[f64]) -> f64 {
        let s: Vec<f64> = y.iter().map(|v| v.ln()).collect();
        self.eval_log(&s)
    }

    /// The indicator in logarithmic coordinates `s_j = log y_j`.
    pub fn eval_log(&self, s: &[f64]) -> f64 {
        self.generators
            .iter()
            .map(|p| {
                p.iter()
                    .zip(s)
                    .filter(|(x, _)| !x.is_zero())
                    .map(|(x, sj)| to_f64(x) * sj)
                    .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Diagram of `Ψ₁ + Ψ₂`.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let gens = self
            .generators
            .iter()
            .flat_map(|p| other.generators.iter().map(move |r| p.iter().zip(r).map(|(a, b)| a + b).collect()))
            .collect();
        Ok(IndicatorDiagram { dim: self.dim, generators: prune(gens) })
    }

    /// Diagram of `max(Ψ₁, Ψ₂)`.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Ok(IndicatorDiagram { dim: self.dim, generators: prune(gens) })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        other.generators.iter().all(|p| self.membership(p))
    }

    /// Largest axis intercept; the complement of `Γ` lies in `[0, M]ⁿ`.
    pub fn box_size(&self) -> Option<Q> {
        if !self.touches_all_axes() {
            return None;
        }
        (0..self.dim)
            .map(|j| {
                self.generators
                    .iter()
                    .filter(|p| p.iter().enumerate().all(|(s, x)| s == j || x.is_zero()))
                    .map(|p| p[j].clone())
                    .min()
                    .expect("touches axis")
            })
            .max()
    }

    /// Bounded facets of `Γ`, i.e. those with strictly positive normal.
    pub fn compact_facets(&self) -> Vec<Facet> {
        let n = self.dim;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for cand in combinations(self.generators.len(), n) {
            let base = &self.generators[cand[0]];
            let diffs: Vec<Vec<Q>> = cand[1..].iter().map(|&k| sub(&self.generators[k], base)).collect();
            let ns = null_space(&diffs, n);
            if ns.len() != 1 {
                continue;
            }
            let mut normal = ns.into_iter().next().expect("one kernel vector");
            if normal.iter().all(Signed::is_negative) {
                normal.iter_mut().for_each(|x| *x = -x.clone());
            } else if !normal.iter().all(Signed::is_positive) {
                continue;
            }
            let level = dot(&normal, base);
            let values: Vec<Q> = self.generators.iter().map(|p| dot(&normal, p)).collect();
            if values.iter().any(|v| *v < level) {
                continue;
            }
            let points: Vec<usize> = values.iter().enumerate().filter(|(_, v)| **v == level).map(|(k, _)| k).collect();
            if seen.insert(points.clone()) {
                out.push(Facet { normal, level, points });
            }
        }
        out
    }

    /// `n! · Vol(R₊ⁿ ∖ Γ)`, or `None` when `Γ` misses an axis.
    ///
    /// The complement is star-shaped from the origin and is the union of the
    /// cones over the bounded facets; each cone is triangulated exactly.
    pub fn covolume_factorial(&self) -> Option<Q> {
        if !self.touches_all_axes() {
            return None;
        }
        let mut total = Q::zero();
        for facet in self.compact_facets() {
            let pts: Vec<Vec<Q>> = facet.points.iter().map(|&k| self.generators[k].clone()).collect();
            for simplex in polytope::triangulate(&pts) {
                let m: Vec<Vec<Q>> = simplex.iter().map(|&k| pts[k].clone()).collect();
                total += det(m).abs();
            }
        }
        Some(total)
    }

    /// Exact residual mass.
    pub fn residual_mass(&self) -> MassResult {
        let tau = match self.covolume_factorial() {
            Some(v) => Tau::Exact(v),
            None => Tau::Infinite,
        };
        MassResult { tau, method: MassMethod::Exact, mc_stderr: None }
    }

    /// Monte Carlo residual mass: uniform samples in `[0, M]ⁿ` tested against
    /// the half-space description `{x ≥ 0, ⟨a_F, x⟩ ≥ level_F}` of `Γ`.
    pub fn residual_mass_montecarlo(&self, samples: u64, seed: u64) -> MassResult {
        let Some(m) = self.box_size() else {
            return MassResult { tau: Tau::Infinite, method: MassMethod::Exact, mc_stderr: None };
        };
        let n = self.dim;
        let side = to_f64(&m);
        let scale = factorial(n) * side.powi(n as i32);
        if samples == 0 || side == 0.0 {
            return MassResult { tau: Tau::Estimate(0.0), method: MassMethod::MonteCarlo, mc_stderr: Some(0.0) };
        }
        let halfspaces: Vec<(Vec<f64>, f64)> = self
            .compact_facets()
            .iter()
            .map(|f| (f.normal.iter().map(to_f64).collect(), to_f64(&f.level)))
            .collect();
        let per = samples / MC_STREAMS;
        let extra = samples % MC_STREAMS;
        let hits: u64 = (0..MC_STREAMS)
            .into_par_iter()
            .map(|stream| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(stream);
                let count = per + u64::from(stream < extra);
                let mut x = vec![0.0; n];
                let mut hits = 0u64;
                for _ in 0..count {
                    x.iter_mut().for_each(|v| *v = rng.gen::<f64>() * side);
                    let outside = halfspaces
                        .iter()
                        .any(|(a, b)| a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum::<f64>() < *b);
                    hits += u64::from(outside);
                }
                hits
            })
            .collect::<Vec<u64>>()
            .into_iter()
            .sum();
        let frac = hits as f64 / samples as f64;
        let stderr = scale * (frac * (1.0 - frac) / samples as f64).sqrt();
        MassResult { tau: Tau::Estimate(scale * frac), method: MassMethod::MonteCarlo, mc_stderr: Some(stderr) }
    }

    pub fn residual_mass_with(&self, method: MassMethod, samples: u64, seed: u64) -> MassResult {
        match method {
            MassMethod::Exact => self.residual_mass(),
            MassMethod::MonteCarlo => self.residual_mass_montecarlo(samples, seed),
        }
    }

    /// `index(Γ, 1)ⁿ ≤ τ`.
    pub fn mass_bounds_check(&self) -> Result<MassBounds> {
        let tau = self.covolume_factorial().ok_or_else(|| {
            Error::Precondition("diagram does not meet every axis; residual mass is infinite".into())
        })?;
        let nu = self.support_value(&vec![q(1); self.dim]);
        let nu_power = num_traits::pow(nu, self.dim);
        let holds = nu_power <= tau;
        Ok(MassBounds { nu_power, tau, holds })
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `b ∈ conv(points) + R₊ⁿ`, by exact feasibility of
/// `Σ λ_i p_i + s = b, Σ λ_i = 1, λ, s ≥ 0`.
fn in_up_hull(points: &[Vec<Q>], b: &[Q]) -> bool {
    if points.is_empty() {
        return false;
    }
    if points.iter().any(|p| p.iter().zip(b).all(|(x, y)| x <= y)) {
        return true;
    }
    let n = b.len();
    let m = points.len();
    let mut rows: Vec<Vec<Q>> = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row: Vec<Q> = points.iter().map(|p| p[j].clone()).collect();
        row.extend((0..n).map(|k| if k == j { q(1) } else { Q::zero() }));
        rows.push(row);
    }
    let mut last = vec![q(1); m];
    last.extend(std::iter::repeat_n(Q::zero(), n));
    rows.push(last);
    let mut rhs = b.to_vec();
    rhs.push(q(1));
    lp::feasible(&rows, &rhs)
}

/// Removes duplicates and every generator lying in the up-hull of the rest.
pub fn prune(generators: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut kept: Vec<Vec<Q>> = generators.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let mut k = 0;
    while k < kept.len() {
        let others: Vec<Vec<Q>> = kept.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p.clone()).collect();
        if in_up_hull(&others, &kept[k]) {
            kept.remove(k);
        } else {
            k += 1;
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q_frac;
    use crate::poly::parse_polynomial;

    fn gens(raw: &[&[i64]]) -> Vec<Vec<Q>> {
        raw.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    fn diagram(raw: &[&[i64]]) -> IndicatorDiagram {
        IndicatorDiagram::from_generators(raw[0].len(), gens(raw)).unwrap()
    }

    fn dir(a: &[i64]) -> Direction {
        Direction::new(a.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn from_polynomial_examples() {
        let f = parse_polynomial("x1^2*x2 + x2^3", 2).unwrap();
        assert_eq!(IndicatorDiagram::from_polynomial(&f).generators(), gens(&[&[0, 3], &[2, 1]]).as_slice());
        let g = parse_polynomial("x1 + x1*x2", 2).unwrap();
        assert_eq!(IndicatorDiagram::from_polynomial(&g).generators(), gens(&[&[1, 0]]).as_slice());
        let c = parse_polynomial("5", 2).unwrap();
        assert_eq!(IndicatorDiagram::from_polynomial(&c), IndicatorDiagram::trivial(2));
    }

    #[test]
    fn index_examples() {
        let d = diagram(&[&[2, 1], &[0, 3]]);
        assert_eq!(d.index(&dir(&[1, 1])), q(3));
        assert_eq!(d.index(&dir(&[2, 1])), q(3));
        let with_origin = diagram(&[&[0, 0], &[1, 5]]);
        assert_eq!(with_origin.index(&dir(&[7, 3])), q(0));
    }

    #[test]
    fn membership_examples() {
        let d = diagram(&[&[1, 0], &[0, 1]]);
        assert!(d.membership(&[q_frac(1, 2), q_frac(1, 2)]));
        assert!(!d.membership(&[q_frac(2, 5), q_frac(2, 5)]));
        assert!(d.membership(&[q(1), q(0)]));
        assert!(d.membership(&[q(0), q(1)]));
    }

    #[test]
    fn pruning_drops_segment_interior_points() {
        let d = diagram(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(d.generators(), gens(&[&[0, 2], &[2, 0]]).as_slice());
        let e = diagram(&[&[2, 0], &[1, 1], &[0, 3]]);
        assert_eq!(e.generators().len(), 3);
    }

    #[test]
    fn axis_touching() {
        assert!(diagram(&[&[2, 0], &[0, 3]]).touches_all_axes());
        assert!(!diagram(&[&[1, 1]]).touches_all_axes());
        assert!(IndicatorDiagram::trivial(2).touches_all_axes());
    }

    #[test]
    fn residual_mass_examples() {
        assert_eq!(diagram(&[&[1, 0], &[0, 2]]).residual_mass().tau, Tau::Exact(q(2)));
        assert_eq!(diagram(&[&[1, 0], &[0, 1]]).residual_mass().tau, Tau::Exact(q(1)));
        assert_eq!(diagram(&[&[5]]).residual_mass().tau, Tau::Exact(q(5)));
        assert_eq!(diagram(&[&[1, 1]]).residual_mass().tau, Tau::Infinite);
        assert_eq!(IndicatorDiagram::trivial(3).residual_mass().tau, Tau::Exact(q(0)));
        // weights phi_a with a = (2, 1/3, 5): generators a_k^{-1} e_k
        let phi = IndicatorDiagram::from_generators(
            3,
            vec![
                vec![q_frac(1, 2), q(0), q(0)],
                vec![q(0), q(3), q(0)],
                vec![q(0), q(0), q_frac(1, 5)],
            ],
        )
        .unwrap();
        assert_eq!(phi.residual_mass().tau, Tau::Exact(q_frac(3, 10)));
    }

    #[test]
    fn staircase_in_the_plane() {
        // complement of {(3,0),(1,1),(0,2)}: triangles (0,0),(3,0),(1,1) and (0,0),(1,1),(0,2)
        // have doubled areas 3 and 2.
        assert_eq!(diagram(&[&[3, 0], &[1, 1], &[0, 2]]).residual_mass().tau, Tau::Exact(q(5)));
    }

    #[test]
    fn montecarlo_is_seeded_and_close() {
        let d = diagram(&[&[1, 0], &[0, 2]]);
        let a = d.residual_mass_montecarlo(200_000, 7);
        let b = d.residual_mass_montecarlo(200_000, 7);
        assert_eq!(a, b);
        let se = a.mc_stderr.unwrap();
        assert!((a.tau.to_f64() - 2.0).abs() < 4.0 * se, "{a:?}");
    }

    #[test]
    fn mass_bounds_examples() {
        let b = diagram(&[&[1, 0], &[0, 2]]).mass_bounds_check().unwrap();
        assert_eq!((b.nu_power.clone(), b.tau.clone(), b.holds), (q(1), q(2), true));
        let s = diagram(&[&[3, 0], &[0, 3]]).mass_bounds_check().unwrap();
        assert_eq!(s.nu_power, s.tau);
        let t = IndicatorDiagram::trivial(2).mass_bounds_check().unwrap();
        assert_eq!((t.nu_power, t.tau), (q(0), q(0)));
        assert!(diagram(&[&[1, 1]]).mass_bounds_check().is_err());
    }

    #[test]
    fn indicator_values() {
        let d = diagram(&[&[1, 0], &[0, 2]]);
        let e = (-1.0f64).exp();
        assert!((d.eval(&[e, e]) + 1.0).abs() < 1e-15);
        assert_eq!(d.eval(&[1.0, 1.0]), 0.0);
        let diag = diagram(&[&[1, 1]]);
        assert!((diag.eval(&[0.5, 0.5]) - 2.0 * 0.5f64.ln()).abs() < 1e-15);
        assert_eq!(diagram(&[&[1, 0]]).eval(&[0.0, 0.5]), f64::NEG_INFINITY);
        assert_eq!(diagram(&[&[1, 0]]).eval(&[0.5, 0.0]), 0.5f64.ln());
    }

    #[test]
    fn json_shape() {
        let d = diagram(&[&[1, 0], &[0, 2]]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"dim":2,"generators":[["0","2"],["1","0"]]}"#);
        let back: IndicatorDiagram = serde_json::from_str(r#"{"dim":2,"generators":[["1","0"],["0","2"],["1","1"]]}"#).unwrap();
        assert_eq!(back, d);
        let m = serde_json::to_string(&d.residual_mass()).unwrap();
        assert_eq!(m, r#"{"tau":"2","method":"exact","stderr":null}"#);
    }
}
