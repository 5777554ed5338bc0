use lelong_core::convex::{Direction, PLConvexFunction};
use lelong_core::estimate::{estimate_directional, estimate_indicator, WLadder};
use lelong_core::exact::{q, q_frac, to_f64, QComplex};
use lelong_core::poly::{MultiIndex, SparsePolynomial};
use lelong_core::psh::{check_conv_class, sandwich_check, ConvSample, ModulusPoint, PshModel, PshSpec};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, dim: usize, positive: bool) -> SparsePolynomial {
    let terms = (0..rng.gen_range(2..=5))
        .map(|_| {
            let e: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..=3)).collect();
            let re = q_frac(rng.gen_range(1..=9), rng.gen_range(1..=3));
            let c = if positive {
                QComplex::real(re)
            } else {
                QComplex::new(if rng.gen_bool(0.5) { re.clone() } else { -re }, q(rng.gen_range(-2..=2)))
            };
            (MultiIndex(e), c)
        })
        .collect::<Vec<_>>();
    SparsePolynomial::from_terms(dim, terms).unwrap()
}

/// `log|F| - log Σ|c|`, which is `≤ 0` on the closed unit polydisk.
fn normalized_log_abs(f: SparsePolynomial) -> PshModel {
    let l1: f64 = f.terms().values().map(|c| c.to_c64().norm()).sum();
    let dim = f.dim();
    PshModel::sum(vec![PshModel::log_abs(f), PshModel::constant(dim, -l1.ln())]).unwrap()
}

fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Direction {
    Direction::new((0..dim).map(|_| q_frac(rng.gen_range(1..=6), rng.gen_range(1..=2))).collect()).unwrap()
}

#[test]
fn convex_image_of_log_abs_is_in_the_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let f = normalized_log_abs(random_poly(&mut rng, 2, false));
        let samples: Vec<ConvSample> = (0..20)
            .map(|_| ConvSample {
                a: (0..2).map(|_| rng.gen_range(-4.0..-0.3)).collect(),
                b: (0..2).map(|_| rng.gen_range(-4.0..-0.3)).collect(),
            })
            .collect();
        // Anything flagged on the coarse grid must be quadrature error: it
        // disappears when the check is repeated on a finer grid.
        let coarse = check_conv_class(&f, &samples, 128, 1e-8).unwrap();
        let flagged: Vec<ConvSample> = coarse.violations.iter().map(|v| samples[v.sample].clone()).collect();
        let fine = check_conv_class(&f, &flagged, 1024, 1e-8).unwrap();
        assert!(fine.passed(), "{coarse:?} {fine:?}");
    }
}

#[test]
fn negative_slope_breaks_monotonicity() {
    let h = PLConvexFunction::new_unchecked(2, vec![lelong_core::convex::Piece { c: q(0), slope: vec![q(-1), q(1)] }]).unwrap();
    let f = PshModel::weighted_log_max(h);
    let samples = vec![ConvSample { a: vec![-2.0, -1.0], b: vec![-1.0, -1.0] }];
    let report = check_conv_class(&f, &samples, 8, 1e-8).unwrap();
    assert!(report.count(lelong_core::psh::ViolationKind::Monotonicity) > 0);
}

#[test]
fn sandwich_holds_for_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let f = normalized_log_abs(random_poly(&mut rng, 2, false));
        let scale = [2.0, 4.0, 8.0][rng.gen_range(0..3)];
        let r = ModulusPoint::new((0..2).map(|_| rng.gen_range(0.01..0.99 / scale)).collect()).unwrap();
        let rep = sandwich_check(&f, &r, scale, 128).unwrap();
        assert!(rep.excess <= 1e-6, "{rep:?}");
        assert!(rep.mean <= rep.max + 1e-12);
    }
}

#[test]
fn directional_ladders_are_monotone_upper_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let f = random_poly(&mut rng, 2, true);
        let model = normalized_log_abs(f);
        let a = random_direction(&mut rng, 2);
        let r = estimate_directional(&model, &a, &WLadder::default_for(2)).unwrap();
        assert!(r.monotone, "{r:?}");
        let exact = r.exact.unwrap();
        assert!(r.secants.iter().all(|s| *s >= exact - 1e-9), "{r:?}");
    }
}

#[test]
fn indicator_ladders_are_monotone_lower_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..10 {
        let model = normalized_log_abs(random_poly(&mut rng, 2, true));
        let y: Vec<f64> = (0..2).map(|_| rng.gen_range(0.05..0.95)).collect();
        let r = estimate_indicator(&model, &ModulusPoint::new(y.clone()).unwrap(), &WLadder::default_for(2)).unwrap();
        assert!(r.monotone, "{r:?}");
        let exact = r.exact.unwrap();
        assert!(r.secants.iter().all(|s| *s <= exact + 1e-9), "{r:?}");
        let at_y = model.eval(&[Complex64::new(y[0], 0.0), Complex64::new(y[1], 0.0)]).unwrap();
        assert!(r.estimate >= at_y - 1e-9);
    }
}

#[test]
fn weighted_max_estimates_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let dim = rng.gen_range(1..=3);
        let pairs = (0..rng.gen_range(1..=4))
            .map(|_| (-q_frac(rng.gen_range(0..=4), 2), (0..dim).map(|_| q_frac(rng.gen_range(0..=6), 2)).collect()))
            .collect();
        let h = PLConvexFunction::from_pairs(pairs).unwrap();
        let a = random_direction(&mut rng, dim);
        let ladder = WLadder::default_for(dim);
        let r = estimate_directional(&PshModel::weighted_log_max(h.clone()), &a, &ladder).unwrap();
        let exact = to_f64(&h.directional_number(&a));
        let last = ladder.scales().last().unwrap().ln().abs();
        assert!((r.estimate - exact).abs() <= 10.0 / last, "{r:?}");
        assert!(r.monotone);
    }
}

#[test]
fn estimates_do_not_depend_on_the_base_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..4 {
        let model = PshModel::log_abs(random_poly(&mut rng, 2, false));
        let a = random_direction(&mut rng, 2);
        let reports: Vec<_> = (0..5)
            .map(|_| {
                let base = (0..2)
                    .map(|_| Complex64::from_polar(rng.gen_range(0.3..0.95), rng.gen_range(0.0..std::f64::consts::TAU)))
                    .collect();
                let ladder = WLadder::default_for(2).with_base(base).unwrap();
                estimate_directional(&model, &a, &ladder).unwrap()
            })
            .collect();
        let bound = reports.iter().map(|r| r.error_bound).fold(0.0, f64::max);
        for r in &reports {
            assert!((r.estimate - reports[0].estimate).abs() <= 2.0 * bound + 1e-9, "{reports:?}");
        }
    }
}

#[test]
fn model_json_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let f = random_poly(&mut rng, 2, false);
        let h = PLConvexFunction::from_pairs(vec![(q(0), vec![q(1), q_frac(1, 2)]), (-q(1), vec![q(0), q(3)])]).unwrap();
        let model = PshModel::max(vec![
            PshModel::log_abs(f.clone()),
            PshModel::sum(vec![PshModel::weighted_log_max(h), PshModel::constant(2, -0.5)]).unwrap(),
            PshModel::log_norm(vec![f, SparsePolynomial::monomial(vec![1, 1], QComplex::one()).unwrap()]).unwrap(),
            PshModel::log_sum_powers(vec![q(1), q_frac(5, 2)]).unwrap(),
        ])
        .unwrap();
        let text = serde_json::to_string(&model).unwrap();
        let back: PshModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, model);
        let spec: PshSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(PshModel::try_from(spec).unwrap(), model);
    }
}
