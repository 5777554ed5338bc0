mod common;

use common::{positive_rational, rational};
use lelong_core::convex::{Direction, PLConvexFunction};
use lelong_core::exact::{q, to_f64, Q};
use proptest::prelude::*;

fn pl(dim: usize) -> impl Strategy<Value = PLConvexFunction> {
    prop::collection::vec((rational(6, 2), prop::collection::vec(rational(7, 3), dim)), 1..=5)
        .prop_map(|pieces| PLConvexFunction::from_pairs(pieces.into_iter().map(|(c, s)| (-c, s)).collect()).unwrap())
}

fn direction(dim: usize) -> impl Strategy<Value = Direction> {
    prop::collection::vec(positive_rational(9, 4), dim).prop_map(|a| Direction::new(a).unwrap())
}

fn nonpositive(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..=0.0, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn directional_number_is_homogeneous((h, a) in (1usize..=4).prop_flat_map(|n| (pl(n), direction(n))), c in positive_rational(9, 4)) {
        prop_assert_eq!(h.directional_number(&a.scaled(&c).unwrap()), c * h.directional_number(&a));
    }

    #[test]
    fn quotient_is_independent_of_base((h, a, u) in (1usize..=4).prop_flat_map(|n| (pl(n), direction(n), nonpositive(n)))) {
        let v = -1e6;
        let x: Vec<f64> = u.iter().zip(a.to_f64()).map(|(uk, ak)| uk + ak * v).collect();
        let quotient = h.eval_f64(&x) / v;
        prop_assert!((quotient - to_f64(&h.directional_number(&a))).abs() <= 1e-4);
    }

    #[test]
    fn quotient_decreases_along_ladder((h, a, u) in (1usize..=4).prop_flat_map(|n| (pl(n), direction(n), nonpositive(n)))) {
        let af = a.to_f64();
        let quotients: Vec<f64> = (0..12)
            .map(|k| {
                let v = -(2f64.powi(k));
                let x: Vec<f64> = u.iter().zip(&af).map(|(uk, ak)| uk + ak * v).collect();
                h.eval_f64(&x) / v
            })
            .collect();
        for w in quotients.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12, "{:?}", quotients);
        }
        prop_assert!(*quotients.last().unwrap() >= to_f64(&h.directional_number(&a)) - 1e-12);
    }

    #[test]
    fn directional_numbers_add((h1, h2, a) in (1usize..=3).prop_flat_map(|n| (pl(n), pl(n), direction(n)))) {
        let sum = h1.add(&h2).unwrap();
        prop_assert_eq!(sum.directional_number(&a), h1.directional_number(&a) + h2.directional_number(&a));
    }

    #[test]
    fn siu_holds(h in (1usize..=5).prop_flat_map(pl)) {
        let s = h.siu_check();
        prop_assert!(s.holds, "{:?}", s);
    }

    #[test]
    fn recession_majorizes((h, samples) in (1usize..=3).prop_flat_map(|n| (pl(n), prop::collection::vec(prop::collection::vec(rational(9, 2), n), 1..20)))) {
        let samples: Vec<Vec<Q>> = samples.into_iter().map(|u| u.into_iter().map(|x| -x).collect()).collect();
        let psi = h.recession_indicator();
        let report = h.majorization_check(&samples, &[psi]);
        prop_assert!(report.passed, "{:?}", report);
        prop_assert_eq!(report.admissible_candidates, vec![0]);
    }

    #[test]
    fn lelong_number_is_ones_direction(h in (1usize..=4).prop_flat_map(pl)) {
        prop_assert_eq!(h.lelong_number(), h.directional_number(&Direction::ones(h.dim())));
        prop_assert_eq!(h.recession_indicator().index(&Direction::ones(h.dim())), h.lelong_number());
    }
}

#[test]
fn partial_number_examples() {
    let h = PLConvexFunction::from_pairs(vec![(q(0), vec![q(1), q(0)]), (q(0), vec![q(0), q(2)])]).unwrap();
    assert_eq!(h.partial_number(1).unwrap(), q(0));
    assert_eq!(h.partial_number(2).unwrap(), q(0));
    assert_eq!(h.lelong_number(), q(1));
    assert!(h.partial_number(3).is_err());
    let lin = PLConvexFunction::from_pairs(vec![(q(0), vec![q(1), q(2)])]).unwrap();
    assert_eq!((lin.partial_number(1).unwrap(), lin.partial_number(2).unwrap()), (q(1), q(2)));
}
