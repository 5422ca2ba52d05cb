use cherednik::calogero::necklace::NECKLACE_TOLERANCE;
use cherednik::calogero::poisson::{canonical_bracket, pullback_trace, trace_bracket};
use cherednik::calogero::*;
use cherednik::Error;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn grid(steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| i as f64 / steps as f64).collect()
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn random_cmatrix(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    DMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng), normal(rng)))
}

fn random_point(n: usize, seed: u64) -> CMPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x: Vec<f64> = (0..n).map(|i| i as f64 * 1.5 + normal(&mut rng) * 0.3).collect();
    let p: Vec<f64> = (0..n).map(|_| normal(&mut rng)).collect();
    xi_map(&CoordChart::real(&x, &p).unwrap(), 1.0).unwrap()
}

#[test]
fn xi_two_particles() {
    let chart = CoordChart::real(&[0.0, 1.0], &[0.0, 0.0]).unwrap();
    let pt = xi_map(&chart, 1.0).unwrap();
    let expected = DMatrix::from_row_slice(2, 2, &[c(0.0), c(-1.0), c(1.0), c(0.0)]);
    assert_eq!(pt.y, expected);
    let ones = DMatrix::from_element(2, 2, c(1.0));
    assert!((pt.moment() - ones).norm() < 1e-15);
    assert_eq!(moment_rank(&pt, 1e-8), 1);
}

#[test]
fn xi_one_particle() {
    let chart = CoordChart::real(&[0.3], &[-2.0]).unwrap();
    let pt = xi_map(&chart, 1.0).unwrap();
    assert_eq!(pt.x[(0, 0)], c(0.3));
    assert_eq!(pt.y[(0, 0)], c(-2.0));
    assert_eq!(moment_rank(&pt, 1e-8), 1);
    assert_eq!(rank_one_residual(&pt), 0.0);
}

#[test]
fn xi_random_points_lie_on_the_variety() {
    for seed in 0..10 {
        let pt = random_point(3, seed);
        assert!(rank_one_residual(&pt) < 1e-12);
    }
}

#[test]
fn colliding_particles_are_rejected() {
    let r = CoordChart::real(&[1.0, 1.0], &[0.0, 0.0]);
    assert!(matches!(r, Err(Error::SeparationTooSmall { .. })));
    let r = CoordChart::real(&[1.0], &[0.0, 0.0]);
    assert!(matches!(r, Err(Error::Config(_))));
}

#[test]
fn commuting_pair_has_unit_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = random_cmatrix(3, &mut rng);
    let y = &x * &x;
    let pt = CMPoint { x, y, coupling: 1.0 };
    assert!((rank_one_residual(&pt) - 1.0).abs() < 1e-10);
    assert_eq!(moment_rank(&pt, 1e-8), 3);
}

#[test]
fn residual_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pt = random_point(4, 3);
    let g = random_cmatrix(4, &mut rng);
    let q = pt.conjugate(&g).unwrap();
    assert!(rank_one_residual(&q) < 1e-10);
    // a unitary conjugation leaves every singular value in place
    let u = g.qr().q();
    let q = pt.conjugate(&u).unwrap();
    let (a, b) = (singular_values(&pt.moment()), singular_values(&q.moment()));
    for (s, t) in a.iter().zip(&b) {
        assert!((s - t).abs() < 1e-12);
    }
}

#[test]
fn flow_examples() {
    let pt = random_point(3, 4);
    assert_eq!(pt.flow(2, 0.0), pt);
    let f1 = pt.flow(1, 0.5);
    assert!((&f1.x - (&pt.x + DMatrix::identity(3, 3) * c(0.5))).norm() < 1e-15);
    let f2 = pt.flow(2, 0.25);
    assert!((&f2.x - (&pt.x + &pt.y * c(0.5))).norm() < 1e-15);
}

#[test]
fn flows_preserve_the_variety_and_hamiltonians() {
    let pt = random_point(3, 5);
    let h0 = pt.hamiltonians();
    for i in 1..=3 {
        for t in grid(10) {
            let q = pt.flow(i, t);
            assert_eq!(q.y, pt.y);
            assert_eq!(q.hamiltonians(), h0);
            assert!(rank_one_residual(&q) < 1e-10, "i={i} t={t}");
        }
    }
}

#[test]
fn free_particle_spectral_and_ode() {
    let chart = CoordChart::real(&[0.0], &[1.0]).unwrap();
    let ts = grid(8);
    let cfg = CmConfig::default();
    let s = trajectories_spectral(&chart, &ts, &cfg).unwrap();
    let o = trajectories_ode(&chart, &ts, &cfg).unwrap();
    for (k, t) in ts.iter().enumerate() {
        assert!((s.x[k][0] - c(2.0 * t)).norm() < 1e-14);
        assert!((s.p[k][0] - c(1.0)).norm() < 1e-14);
    }
    assert!(s.max_position_deviation(&o) < 1e-12);
}

#[test]
fn symmetric_pair_matches_closed_form() {
    // x = (-r, r), p = (-q, q): H = 2q^2 - 1/(2 r^2) and r' = 2q, so from
    // rest at r = 1 energy conservation gives r(t)^2 = 1 - t^2.
    let chart = CoordChart::real(&[-1.0, 1.0], &[0.0, 0.0]).unwrap();
    let ts: Vec<f64> = (0..=18).map(|i| i as f64 * 0.05).collect();
    let cfg = CmConfig::default();
    let s = trajectories_spectral(&chart, &ts, &cfg).unwrap();
    let o = trajectories_ode(&chart, &ts, &cfg).unwrap();
    for (k, t) in ts.iter().enumerate() {
        let r = (1.0 - t * t).sqrt();
        assert!((s.x[k][1] - c(r)).norm() < 1e-10, "t={t}");
        assert!((o.x[k][1] - c(r)).norm() < 1e-8, "t={t}");
    }
    assert!(s.max_position_deviation(&o) <= 1e-6);
}

#[test]
fn spectral_and_ode_agree() {
    let cfg = CmConfig::default();
    let ts = grid(50);
    // the real-data interaction is attractive; spreading initial momenta
    // keep the particles apart on [0, 1]
    for (n, seed) in [(2, 11), (2, 12), (3, 13), (3, 14)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..n).map(|i| i as f64 * 1.5 + normal(&mut rng) * 0.3).collect();
        let p: Vec<f64> = (0..n).map(|i| i as f64 * 1.5 + normal(&mut rng) * 0.2).collect();
        let chart = CoordChart::real(&x, &p).unwrap();
        let s = trajectories_spectral(&chart, &ts, &cfg).unwrap();
        let o = trajectories_ode(&chart, &ts, &cfg).unwrap();
        assert!(s.collisions.is_empty());
        let dev = s.max_position_deviation(&o);
        assert!(dev <= 1e-6, "n={n} seed={seed} deviation {dev}");
        assert!(o.energy_drift() <= 1e-8);
        assert!(s.energy_drift() <= 1e-8, "spectral drift {}", s.energy_drift());
        for k in 0..ts.len() {
            for (a, b) in s.p[k].iter().zip(&o.p[k]) {
                assert!((a - b).norm() < 1e-6);
            }
        }
    }
}

#[test]
fn csv_layout() {
    let chart = CoordChart::real(&[-1.0, 1.0], &[0.0, 0.0]).unwrap();
    let tr = trajectories_ode(&chart, &[0.0, 0.5], &CmConfig::default()).unwrap();
    assert_eq!(tr.csv_header(), ["t", "x1", "x2", "p1", "p2", "H1", "H2"]);
    let rows = tr.csv_records();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][..3], ["0", "-1", "1"]);
}

#[test]
fn ode_reports_collisions() {
    // the pair released from rest at x = -1, 1 collides at t = 1
    let chart = CoordChart::real(&[-1.0, 1.0], &[0.0, 0.0]).unwrap();
    let cfg = CmConfig::default();
    let r = trajectories_ode(&chart, &[0.0, 1.5], &cfg);
    assert!(matches!(r, Err(Error::StepFailure { .. })));
    let s = trajectories_spectral(&chart, &grid(4), &cfg).unwrap();
    assert_eq!(s.collisions, vec![4]);
    assert_eq!(s.x.len(), 5);
}

#[test]
fn necklace_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = random_cmatrix(3, &mut rng);
    let y = random_cmatrix(3, &mut rng);
    let w = |s: &str| s.parse::<Word>().unwrap();

    let oracle = (&x * &y).trace() * -4.0;
    let a = necklace_numeric(&w("XX"), &w("YY"), &x, &y);
    let (b, _) = necklace_formula(&w("XX"), &w("YY"), &x, &y);
    assert!((a - oracle).norm() < 1e-10 * oracle.norm());
    assert!((b - oracle).norm() < 1e-10 * oracle.norm());

    let tx = x.trace();
    let a = necklace_numeric(&w("XY"), &w("X"), &x, &y);
    let (b, _) = necklace_formula(&w("XY"), &w("X"), &x, &y);
    assert!((a - tx).norm() < 1e-10 * tx.norm());
    assert!((b - tx).norm() < 1e-10 * tx.norm());

    for m in 1..4 {
        let u = Word(vec![cherednik::calogero::necklace::Letter::X; m]);
        assert_eq!(necklace_formula(&u, &u, &x, &y).0, Complex64::default());
        assert!(necklace_numeric(&u, &u, &x, &y).norm() < 1e-12);
    }
    // Hamiltonians Poisson-commute: no X in either word
    assert_eq!(necklace_formula(&w("YY"), &w("YYY"), &x, &y), (Complex64::default(), 0.0));
}

#[test]
fn necklace_words_parse_and_print() {
    assert_eq!("XyYx".parse::<Word>().unwrap().to_string(), "XYYX");
    assert!(matches!("XZ".parse::<Word>(), Err(Error::Config(_))));
}

#[test]
fn necklace_random_pairs() {
    let r = necklace_random_words_check(4, 100, 4, 2024);
    assert_eq!(r.samples, 100);
    assert!(r.passed, "{r:?}");
    assert!(r.max_rel_error <= NECKLACE_TOLERANCE);
    let r = necklace_bracket_check(&"XYXY".parse().unwrap(), &"YXX".parse().unwrap(), 3, 20, 5);
    assert!(r.passed, "{r:?}");
}

#[test]
fn poisson_examples() {
    let n = 3;
    let w = |s: &str| pullback_trace(&s.parse().unwrap(), n);
    assert!(canonical_bracket(&w("X"), &w("XX"), n).is_zero());
    assert_eq!(canonical_bracket(&w("XY"), &w("X"), n), w("X"));
    assert_eq!(canonical_bracket(&w("XXY"), &w("XY"), n), -&w("XXY"));
    // the pulled-back Hamiltonians commute
    assert!(trace_bracket(&"YY".parse().unwrap(), &"YYY".parse().unwrap(), n).is_zero());
    assert_eq!(
        trace_bracket(&"XY".parse().unwrap(), &"XXY".parse().unwrap(), n),
        canonical_bracket(&w("XY"), &w("XXY"), n)
    );
}

#[test]
fn poisson_relations_hold_exactly() {
    for n in 1..=4 {
        let r = coordinate_poisson_check(n, 3);
        assert_eq!(r.checked, 48);
        assert!(r.passed(), "n={n}: {:?}", r.failures);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn flow_keeps_rank_one(seed in 0u64..1000, i in 1u32..4, t in 0.0f64..1.0) {
        let pt = random_point(3, seed);
        prop_assert!(rank_one_residual(&pt.flow(i, t)) < 1e-9);
    }

    #[test]
    fn necklace_is_antisymmetric(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_cmatrix(3, &mut rng);
        let y = random_cmatrix(3, &mut rng);
        let u: Word = "XYY".parse().unwrap();
        let v: Word = "XXY".parse().unwrap();
        let (a, s) = necklace_formula(&u, &v, &x, &y);
        let (b, _) = necklace_formula(&v, &u, &x, &y);
        prop_assert!((a + b).norm() <= 1e-12 * s.max(1.0));
    }
}
