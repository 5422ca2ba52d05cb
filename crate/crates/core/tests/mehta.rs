use cherednik::dunkl::DunklContext;
use cherednik::exact::{rat, IntPoly, MPoly, Scalar};
use cherednik::groups::build_real;
use cherednik::groups::degrees::degrees;
use cherednik::mehta::*;
use num_bigint::BigInt;
use num_traits::Signed;

fn factorial(n: u64) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

#[test]
fn rhs_examples() {
    assert!((mm_rhs(&[2], 1.0) - 2.0).abs() < 1e-12);
    assert!((mm_rhs(&[2, 3], 1.0) - 12.0).abs() < 1e-11);
    assert_eq!(mm_rhs(&[2, 4, 6], 0.0), 1.0);
    // integer k: prod (k d)! / k!
    for (degs, k) in [(vec![2usize, 4], 2u64), (vec![2, 6], 3), (vec![2, 3, 4], 2)] {
        let want: f64 = degs.iter().map(|&d| factorial(k * d as u64) / factorial(k)).product();
        let got = mm_rhs(&degs, k as f64);
        assert!(((got - want) / want).abs() < 1e-12, "{degs:?} k={k}: {got} vs {want}");
    }
}

#[test]
fn wick_moment_matches_gamma_product() {
    for label in ["A1", "Zm:2", "A2", "B2", "I2(6)", "A3"] {
        let g = build_real(label).unwrap();
        let d = degrees(&g).unwrap();
        for k in 0..=2u32 {
            let want: BigInt = d
                .iter()
                .map(|&di| {
                    let top: BigInt = (1..=(k as usize * di)).map(BigInt::from).product();
                    let bot: BigInt = (1..=k as usize).map(BigInt::from).product();
                    top / bot
                })
                .product();
            let got = mm_wick_moment(&g, k);
            assert_eq!(got, Scalar::from_rational(want.into()), "{label} k={k}");
        }
    }
}

#[test]
fn mc_estimates() {
    let a1 = build_real("Zm:2").unwrap();
    let e = mm_mc_estimate(&a1, 0.0, 1000, 3).unwrap();
    assert_eq!((e.mean, e.std_error), (1.0, 0.0));
    for (label, target) in [("Zm:2", 2.0), ("A2", 12.0), ("B2", 48.0)] {
        let g = build_real(label).unwrap();
        let e = mm_mc_estimate(&g, 1.0, 200_000, 11).unwrap();
        assert!(e.z_score(target).abs() <= 3.0, "{label}: {e:?}");
    }
    // fractional k against the Gamma product
    let a2 = build_real("A2").unwrap();
    let e = mm_mc_estimate(&a2, 0.5, 200_000, 5).unwrap();
    assert!(e.z_score(mm_rhs(&[2, 3], 0.5)).abs() <= 3.0, "{e:?}");
}

#[test]
fn mc_is_reproducible() {
    let g = build_real("A2").unwrap();
    let a = mm_mc_estimate(&g, 1.0, 10_001, 42).unwrap();
    let b = mm_mc_estimate(&g, 1.0, 10_001, 42).unwrap();
    let c = mm_mc_estimate(&g, 1.0, 10_001, 43).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.mean, c.mean);
    assert!(mm_mc_estimate(&g, -0.5, 100, 1).is_err());
}

#[test]
fn bk_closed_examples() {
    assert_eq!(bk_closed(&[2], 2), IntPoly::from_i64(&[2, 4]));
    let a2 = &(&IntPoly::linear(2, 1) * &IntPoly::linear(3, 1)) * &IntPoly::linear(3, 2);
    assert_eq!(bk_closed(&[2, 3], 6), &IntPoly::from_i64(&[6]) * &a2);
    let b2 = [IntPoly::linear(2, 1), IntPoly::linear(4, 1), IntPoly::linear(4, 2), IntPoly::linear(4, 3)]
        .iter()
        .fold(IntPoly::from_i64(&[8]), |acc, f| &acc * f);
    assert_eq!(bk_closed(&[2, 4], 8), b2);
}

#[test]
fn bk_form_matches_closed() {
    for label in ["A1", "Zm:2", "A2", "B2", "I2(6)", "I2(4)", "A3"] {
        let g = build_real(label).unwrap();
        let b = bk_exact_via_form(&DunklContext::equal_parameter(&g)).unwrap();
        let bk = to_k_polynomial(&b).unwrap();
        assert_eq!(bk, bk_closed(&degrees(&g).unwrap(), g.order()), "{label}");
        assert_eq!(bk.degree(), Some(g.reflections().len()));
    }
}

#[test]
fn bk_roots_negative_rational() {
    for label in ["A1", "A2"] {
        let g = build_real(label).unwrap();
        let bk = to_k_polynomial(&bk_exact_via_form(&DunklContext::equal_parameter(&g)).unwrap()).unwrap();
        let (roots, rest) = bk.rational_roots();
        assert_eq!(rest.degree(), Some(0));
        assert_eq!(roots.len(), g.reflections().len());
        assert!(roots.iter().all(|r| r.is_negative()), "{label}: {roots:?}");
    }
}

#[test]
fn recursion_f_k_plus_one() {
    for label in ["Zm:2", "A2"] {
        let g = build_real(label).unwrap();
        let bk = bk_closed(&degrees(&g).unwrap(), g.order());
        for k in 0..=1i64 {
            let f0 = mm_mc_estimate(&g, k as f64, 400_000, 100 + k as u64).unwrap();
            let f1 = mm_mc_estimate(&g, (k + 1) as f64, 400_000, 200 + k as u64).unwrap();
            let b = bk.eval_f64(k as f64);
            let z = (f1.mean - b * f0.mean) / (f1.std_error.powi(2) + (b * f0.std_error).powi(2)).sqrt();
            assert!(z.abs() <= 3.0, "{label} k={k}: z={z}");
        }
    }
}

#[test]
fn gaussian_pairing_examples() {
    let a1 = build_real("Zm:2").unwrap();
    let one = MPoly::from_scalar_in(1, Scalar::one());
    let r = gaussian_pairing_mc_check(&a1, &rat(1, 1), &one, &one, 10_000, 1).unwrap();
    assert_eq!((r.exact, r.mc_ratio, r.z), (1.0, 1.0, 0.0));
    let x = MPoly::x(1, 0);
    let r = gaussian_pairing_mc_check(&a1, &rat(1, 1), &x, &x, 200_000, 2).unwrap();
    assert_eq!(r.exact, 3.0);
    assert!(r.z.abs() <= 3.0, "{r:?}");
    // exp(F) is not the identity on x^2
    let x2 = &x * &x;
    let r = gaussian_pairing_mc_check(&a1, &rat(1, 2), &x2, &one, 200_000, 3).unwrap();
    assert!(r.z.abs() <= 3.0, "{r:?}");
}

#[test]
fn gaussian_pairing_of_delta_is_bk() {
    let g = build_real("A2").unwrap();
    let d = delta(&g);
    let r = gaussian_pairing_mc_check(&g, &rat(1, 1), &d, &d, 400_000, 9).unwrap();
    assert_eq!(r.exact, bk_closed(&[2, 3], 6).eval_f64(1.0));
    assert!(r.z.abs() <= 3.0, "{r:?}");
    let ctx = DunklContext::numeric(&g, &[Scalar::from_int(-1)]);
    assert_eq!(exp_f(&ctx, &d).unwrap(), d);
}

mod properties {
    use super::*;
    use cherednik::groups::degrees::degrees_of_label;
    use proptest::prelude::*;

    const LABELS: [&str; 6] = ["A2", "B3", "D4", "I2(6)", "H3", "E6"];

    proptest! {
        #[test]
        fn gamma_product_obeys_the_b_recursion(i in 0..LABELS.len(), k in 0.0f64..2.5) {
            let d = degrees_of_label(LABELS[i]).unwrap();
            let order: usize = d.iter().product();
            let b = bk_closed(&d, order).eval_f64(k);
            let lhs = mm_rhs(&d, k + 1.0);
            let rhs = b * mm_rhs(&d, k);
            prop_assert!(((lhs - rhs) / lhs).abs() < 1e-9, "{}: {lhs} vs {rhs}", LABELS[i]);
        }
    }
}
