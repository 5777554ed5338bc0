mod common;

use common::{coefficient, polynomial};
use lelong_core::exact::{q_frac, QComplex};
use lelong_core::poly::{parse_polynomial, parse_polynomial_with, SparsePolynomial};
use lelong_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn exact_eval(f: &SparsePolynomial, x: &[QComplex]) -> QComplex {
    let mut sum = QComplex::zero();
    for (idx, c) in f.terms() {
        let mut t = c.clone();
        for (xk, &e) in x.iter().zip(idx.as_slice()) {
            t = &t * &xk.pow(e);
        }
        sum = &sum + &t;
    }
    sum
}

fn point(dim: usize) -> impl Strategy<Value = Vec<QComplex>> {
    prop::collection::vec(((-6i64..=6), (1i64..=3), (-6i64..=6)), dim)
        .prop_map(|v| v.into_iter().map(|(a, d, b)| QComplex::new(q_frac(a, d), q_frac(b, 2))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn display_round_trips(f in polynomial(3, 6, 5)) {
        let text = f.to_string();
        prop_assert_eq!(parse_polynomial(&text, 3).unwrap(), f);
    }

    #[test]
    fn taylor_shift_is_translation((f, x0, x) in (1usize..=3).prop_flat_map(|n| (polynomial(n, 5, 4), point(n), point(n)))) {
        let shifted = f.taylor_shift(&x0).unwrap();
        let moved: Vec<QComplex> = x.iter().zip(&x0).map(|(a, b)| a + b).collect();
        prop_assert_eq!(exact_eval(&shifted, &x), exact_eval(&f, &moved));
    }

    #[test]
    fn taylor_shifts_compose((f, a, b) in (1usize..=3).prop_flat_map(|n| (polynomial(n, 4, 4), point(n), point(n)))) {
        let ab: Vec<QComplex> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(f.taylor_shift(&a).unwrap().taylor_shift(&b).unwrap(), f.taylor_shift(&ab).unwrap());
    }

    #[test]
    fn product_degree_and_values((f, g, x) in (1usize..=3).prop_flat_map(|n| (polynomial(n, 4, 3), polynomial(n, 4, 3), point(n)))) {
        let h = f.mul(&g).unwrap();
        prop_assert_eq!(h.degree(), f.degree() + g.degree());
        prop_assert_eq!(exact_eval(&h, &x), &exact_eval(&f, &x) * &exact_eval(&g, &x));
    }

    #[test]
    fn float_evaluation_tracks_exact((f, x) in (1usize..=3).prop_flat_map(|n| (polynomial(n, 5, 4), point(n)))) {
        let xf: Vec<Complex64> = x.iter().map(QComplex::to_c64).collect();
        let exact = exact_eval(&f, &x).to_c64();
        let scale: f64 = f.terms().values().map(|c| c.to_c64().norm()).sum::<f64>()
            * xf.iter().map(|z| z.norm().max(1.0)).product::<f64>().powi(f.degree() as i32);
        prop_assert!((f.evaluate(&xf).unwrap() - exact).norm() <= 1e-12 * scale);
    }

    #[test]
    fn monomial_support_is_singleton(e in prop::collection::vec(0u32..6, 1..4), c in coefficient()) {
        let f = SparsePolynomial::monomial(e.clone(), c).unwrap();
        prop_assert_eq!(f.support().len(), 1);
        prop_assert_eq!(f.degree(), e.iter().map(|&k| u64::from(k)).sum::<u64>());
    }
}

#[test]
fn parse_examples() {
    let f = parse_polynomial("x1^2*x2 + x2^3", 2).unwrap();
    assert_eq!(f.len(), 2);
    assert_eq!(f.degree(), 3);
    let g = parse_polynomial("(0,1)*x1^2", 2).unwrap();
    assert_eq!(g, SparsePolynomial::monomial(vec![2, 0], QComplex::new(q_frac(0, 1), q_frac(1, 1))).unwrap());
    assert_eq!(parse_polynomial("0.25*x1 - 1/4*x1 + 1", 1).unwrap().len(), 1);
    assert!(matches!(parse_polynomial("x3", 2), Err(Error::VariableOutOfRange { .. })));
    assert!(matches!(parse_polynomial("x1 +", 2), Err(Error::Syntax { .. })));
    assert!(matches!(parse_polynomial("x1 - x1", 1), Err(Error::EmptyPolynomial)));
    assert!(matches!(parse_polynomial_with("x1^9", 1, 8), Err(Error::DegreeCap { .. })));
}

#[test]
fn shift_to_a_zero_kills_the_constant() {
    let f = parse_polynomial("x1^2 + x2^2 - 2", 2).unwrap();
    let one = QComplex::one();
    let g = f.taylor_shift(&[one.clone(), one]).unwrap();
    assert_eq!(g, parse_polynomial("x1^2 + 2*x1 + x2^2 + 2*x2", 2).unwrap());
}
