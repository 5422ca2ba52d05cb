use std::collections::BTreeSet;

use cherednik::dunkl::DunklContext;
use cherednik::exact::{rat, Scalar};
use cherednik::groups::degrees::{degrees_of_label, poincare_polynomial};
use cherednik::groups::{build_real, standard_parabolic};
use cherednik::support::*;
use cherednik::verma::terminating_quotient;
use cherednik::Error;
use proptest::prelude::*;

#[test]
fn divisible_counts() {
    let e7 = degrees_of_label("E7").unwrap();
    assert_eq!(divisible_degree_count(&e7, 14), 1);
    assert_eq!(divisible_degree_count(&[2, 3], 5), 0);
    assert_eq!(divisible_degree_count(&e7, 1), 7);
}

#[test]
fn stratum_examples() {
    let a2 = [2, 3];
    assert!(stratum_in_support(&a2, &[2], &rat(1, 2)));
    assert!(!stratum_in_support(&a2, &[], &rat(1, 2)));
    for c in [rat(1, 2), rat(2, 3), rat(5, 7), rat(3, 1)] {
        assert!(stratum_in_support(&a2, &a2, &c));
    }
    assert!(stratum_in_support(&a2, &[], &rat(2, 1)));
}

#[test]
fn e7_denominators() {
    assert_eq!(e7_table(), BTreeSet::from([2, 6, 14, 18]));
}

#[test]
fn symmetric_group_criterion() {
    for n in 2..=6usize {
        let label = format!("A{}", n - 1);
        for m in 2..=8i64 {
            for k in 1..m {
                let c = rat(k, m);
                let want = c.denom() == &num_bigint::BigInt::from(n);
                assert_eq!(finite_dim_criterion(&label, &c).unwrap(), want, "{label} c={c}");
            }
        }
        assert!(!finite_dim_criterion(&label, &rat(1, 1)).unwrap());
    }
    assert!(finite_dim_criterion("A3", &rat(3, 4)).unwrap());
    assert!(!finite_dim_criterion("A3", &rat(1, 2)).unwrap());
}

#[test]
fn missing_table() {
    // unknown labels are rejected
    assert!(finite_dim_criterion("E9", &rat(1, 2)).is_err());
    assert_eq!(
        cherednik::groups::degrees::maximal_parabolics("G2").map(|p| p.len()),
        Ok(2)
    );
    assert!(matches!(finite_dim_criterion("Q3", &rat(1, 2)), Err(Error::BadGroupLabel(_))));
}

#[test]
fn parabolic_poincare_divides() {
    for label in ["A2", "A3", "B2", "B3", "D4", "I2(6)", "A4"] {
        let g = build_real(label).unwrap();
        let pw = poincare_polynomial(&g);
        for mask in 0..(1u32 << g.rank()) {
            let nodes: Vec<usize> = (0..g.rank()).filter(|i| mask & (1 << i) != 0).collect();
            let p = standard_parabolic(&g, &nodes).unwrap();
            assert!(pw.div_exact(&poincare_polynomial(&p)).is_some(), "{label} {nodes:?}");
        }
    }
}

#[test]
fn divisibility_monotone_over_parabolics() {
    for label in ["A3", "B3", "D4", "I2(6)", "E7", "E8", "F4", "H4"] {
        let strata = parabolic_strata(label).unwrap();
        let w = &strata[0].1;
        for (l, d) in &strata {
            for m in 2..=30 {
                assert!(divisible_degree_count(d, m) <= divisible_degree_count(w, m), "{label} > {l} m={m}");
            }
        }
    }
}

#[test]
fn report_finite_dim_iff_only_origin() {
    for label in ["A2", "A3", "B2", "B3", "I2(6)", "E7"] {
        for m in 1..=20i64 {
            let r = support_report(label, &rat(1, m)).unwrap();
            let only_origin = r.strata_in_support == vec![label.to_string()];
            if label != "E7" {
                // every parabolic class is listed for classical types
                assert_eq!(r.finite_dim, only_origin, "{label} m={m}");
            } else if r.finite_dim {
                assert!(only_origin);
            }
            assert_eq!(r.rows().len(), r.entries.len());
        }
    }
}

#[test]
fn criterion_agrees_with_terminating_quotient() {
    for (label, plane) in [("A2", "I2(3)"), ("B2", "B2")] {
        let g = build_real(plane).unwrap();
        for m in 2..=6i64 {
            let c = rat(1, m);
            let values = vec![Scalar::from_rational(c.clone()); g.num_classes()];
            let ctx = DunklContext::numeric(&g, &values);
            let search = terminating_quotient(&ctx, 9).unwrap();
            assert_eq!(finite_dim_criterion(label, &c).unwrap(), search.is_some(), "{label} c={c} {search:?}");
        }
    }
}

proptest! {
    #[test]
    fn negative_c_uses_denominator(k in 1i64..40, m in 1i64..25) {
        prop_assert_eq!(
            finite_dim_criterion("B3", &rat(-k, m)).unwrap(),
            finite_dim_criterion("B3", &rat(k, m)).unwrap()
        );
    }

    #[test]
    fn count_of_one_is_rank(d in proptest::collection::vec(1usize..40, 0..8)) {
        prop_assert_eq!(divisible_degree_count(&d, 1), d.len());
    }
}
