//! Exact phase-one simplex for feasibility of `A x = b, x ≥ 0`.
//!
//! Bland's rule guarantees termination; problem sizes here are tiny.

use num_traits::{Signed, Zero};

use crate::exact::Q;

pub fn feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let m = a.len();
    if m == 0 {
        return true;
    }
    let n = a[0].len();
    let width = n + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = Vec::with_capacity(width);
        for x in row {
            r.push(if flip { -x.clone() } else { x.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Q::from_integer(1.into()) } else { Q::zero() });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        // Reduced costs of the phase-one objective (sum of artificials).
        let entering = (0..n + m).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let cost = if j >= n { Q::from_integer(1.into()) } else { Q::zero() };
            let z = (0..m).fold(Q::zero(), |acc, i| {
                if basis[i] >= n {
                    acc + &t[i][j]
                } else {
                    acc
                }
            });
            (cost - z).is_negative()
        });
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = &t[i][rhs] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase-one objective is bounded below, so a leaving row always exists.
        let Some((p, _)) = leave else { break };
        let pivot = t[p][j].clone();
        for x in t[p].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..m {
            if i != p && !t[i][j].is_zero() {
                let factor = t[i][j].clone();
                for c in 0..width {
                    let delta = &factor * &t[p][c];
                    t[i][c] -= delta;
                }
            }
        }
        basis[p] = j;
    }
    (0..m).all(|i| basis[i] < n || t[i][rhs].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, q_frac};

    #[test]
    fn simple_systems() {
        // x + y = 1 with x, y >= 0
        assert!(feasible(&[vec![q(1), q(1)]], &[q(1)]));
        // x + y = -1 has no nonnegative solution
        assert!(!feasible(&[vec![q(1), q(1)]], &[q(-1)]));
        // x - y = 1/2, x + y = 1/4 needs y = -1/8
        assert!(!feasible(&[vec![q(1), q(-1)], vec![q(1), q(1)]], &[q_frac(1, 2), q_frac(1, 4)]));
        assert!(feasible(&[vec![q(1), q(-1)], vec![q(1), q(1)]], &[q_frac(1, 4), q_frac(1, 2)]));
    }
}
