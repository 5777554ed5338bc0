#![allow(dead_code)]

use lelong_core::diagram::IndicatorDiagram;
use lelong_core::exact::{q, q_frac, QComplex, Q};
use lelong_core::poly::{MultiIndex, SparsePolynomial};
use proptest::prelude::*;

pub fn rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Q> {
    (0..=max_num, 1..=max_den).prop_map(|(n, d)| q_frac(n, d))
}

pub fn positive_rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Q> {
    (1..=max_num, 1..=max_den).prop_map(|(n, d)| q_frac(n, d))
}

pub fn points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(prop::collection::vec(rational(8, 3), dim), 1..=max)
}

/// Generator sets that meet every axis.
pub fn axis_points(dim: usize, extra: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    (prop::collection::vec(positive_rational(8, 3), dim), prop::collection::vec(prop::collection::vec(rational(8, 3), dim), 0..=extra))
        .prop_map(move |(axes, mut rest)| {
            for (j, k) in axes.into_iter().enumerate() {
                let mut p = vec![q(0); dim];
                p[j] = k;
                rest.push(p);
            }
            rest
        })
}

pub fn axis_diagram(dim: usize, extra: usize) -> impl Strategy<Value = IndicatorDiagram> {
    axis_points(dim, extra).prop_map(move |g| IndicatorDiagram::from_generators(dim, g).unwrap())
}

pub fn coefficient() -> impl Strategy<Value = QComplex> {
    ((-9i64..=9), (1i64..=4), (-3i64..=3)).prop_filter_map("nonzero", |(a, d, b)| {
        let c = QComplex::new(q_frac(a, d), q(b));
        (!c.is_zero()).then_some(c)
    })
}

pub fn polynomial(dim: usize, max_terms: usize, max_deg: u32) -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, dim), coefficient()), 1..=max_terms)
        .prop_filter_map("nonzero polynomial", move |terms| {
            let f = SparsePolynomial::from_terms(dim, terms.into_iter().map(|(e, c)| (MultiIndex(e), c))).ok()?;
            (!f.is_empty()).then_some(f)
        })
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
