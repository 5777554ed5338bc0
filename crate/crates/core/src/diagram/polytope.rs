//! Pulling triangulation of the convex hull of an exact point set.
//!
//! The lexicographically smallest point is always a vertex. Every facet of
//! the hull that misses it is triangulated recursively and coned to it.
//! Facets are found by enumerating affinely independent subsets in local
//! coordinates of the affine hull.

use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

use super::linalg::{combinations, dot, null_space, rref, sub};
use crate::exact::Q;

/// Affine dimension of a point set (`None` when empty).
pub fn affine_dim(points: &[Vec<Q>]) -> Option<usize> {
    let first = points.first()?;
    let cols = first.len();
    let mut diffs: Vec<Vec<Q>> = points[1..].iter().map(|p| sub(p, first)).collect();
    Some(rref(&mut diffs, cols).len())
}

/// Simplices (as index lists of `d + 1` points) triangulating `conv(points)`,
/// where `d` is the affine dimension. Points off the hull boundary may be unused.
pub fn triangulate(points: &[Vec<Q>]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].cmp(&points[b]));
    order.dedup_by(|a, b| points[*a] == points[*b]);
    triangulate_subset(points, &order)
}

fn triangulate_subset(points: &[Vec<Q>], subset: &[usize]) -> Vec<Vec<usize>> {
    if subset.is_empty() {
        return Vec::new();
    }
    let local = local_coordinates(points, subset);
    let d = local.first().map_or(0, Vec::len);
    if d == 0 {
        return vec![vec![subset[0]]];
    }
    // subset is sorted lexicographically, so subset[0] is a vertex.
    let apex = subset[0];
    let mut out = Vec::new();
    for facet in hull_facets(&local) {
        if facet.contains(&0) {
            continue;
        }
        let facet_points: Vec<usize> = facet.iter().map(|&k| subset[k]).collect();
        for mut simplex in triangulate_subset(points, &facet_points) {
            simplex.push(apex);
            out.push(simplex);
        }
    }
    out
}

/// Coordinates of the subset in a coordinate projection that is injective on
/// its affine hull, translated so the first point is the origin.
fn local_coordinates(points: &[Vec<Q>], subset: &[usize]) -> Vec<Vec<Q>> {
    let base = &points[subset[0]];
    let cols = base.len();
    let diffs: Vec<Vec<Q>> = subset.iter().map(|&k| sub(&points[k], base)).collect();
    let mut work = diffs.clone();
    let axes = rref(&mut work, cols);
    diffs.iter().map(|v| axes.iter().map(|&a| v[a].clone()).collect()).collect()
}

/// Facets of the full-dimensional hull of `pts` in `R^d`, each as the sorted
/// set of point indices lying on it.
fn hull_facets(pts: &[Vec<Q>]) -> Vec<Vec<usize>> {
    let d = pts[0].len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cand in combinations(pts.len(), d) {
        let diffs: Vec<Vec<Q>> = cand[1..].iter().map(|&k| sub(&pts[k], &pts[cand[0]])).collect();
        let ns = null_space(&diffs, d);
        if ns.len() != 1 {
            continue;
        }
        let normal = &ns[0];
        let level = dot(normal, &pts[cand[0]]);
        let side: Vec<Q> = pts.iter().map(|p| dot(normal, p) - &level).collect();
        let below = side.iter().any(Signed::is_negative);
        let above = side.iter().any(Signed::is_positive);
        if below && above {
            continue;
        }
        let on: Vec<usize> = side.iter().enumerate().filter(|(_, s)| s.is_zero()).map(|(k, _)| k).collect();
        seen.insert(on);
    }
    seen.into_iter().collect()
}
