use cherednik::dunkl::classical::{classical_op_check, ClassicalContext};
use cherednik::dunkl::{sigma_vanish_check, x_commutator_check, DunklContext, GroupAlgebraElement};
use cherednik::exact::{MPoly, ParamScalar, Scalar};
use cherednik::groups::build_real;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

#[test]
fn commutativity_small_groups() {
    for label in ["Zm:2", "A2", "B2", "I2(6)", "I2(3)"] {
        let g = build_real(label).unwrap();
        let ctx = DunklContext::symbolic(&g);
        let r = ctx.commutativity_check(5).unwrap();
        assert!(r.passed(), "{label}: {:?}", r.witness);
    }
}

#[test]
fn commutativity_rank_three() {
    for label in ["A3", "B3"] {
        let g = build_real(label).unwrap();
        let r = DunklContext::symbolic(&g).commutativity_check(4).unwrap();
        assert!(r.passed(), "{label}: {:?}", r.witness);
    }
}

#[test]
fn commutator_of_constant_vanishes() {
    let g = build_real("B2").unwrap();
    let ctx = DunklContext::symbolic(&g);
    let d = ctx.commutator_defect(&ctx.unit(0), &ctx.unit(1), &ctx.one()).unwrap();
    assert!(d.is_zero());
}

#[test]
fn equivariance() {
    for label in ["A2", "B2"] {
        let g = build_real(label).unwrap();
        let r = DunklContext::symbolic(&g).equivariance_check(3).unwrap();
        assert!(r.passed(), "{label}: {:?}", r.witness);
    }
}

#[test]
fn dunkl_lowers_degree_by_one() {
    let g = build_real("B2").unwrap();
    let ctx = DunklContext::symbolic(&g);
    for m in cherednik::exact::monomials_of_degree(2, 4) {
        let f = MPoly::term(2, m, ParamScalar::int(1));
        for i in 0..2 {
            let d = ctx.apply_basis(i, &f).unwrap();
            assert!(d.is_zero() || (d.is_homogeneous() && d.degree() == Some(3)));
        }
    }
}

#[test]
fn x_commutator_rank_one() {
    let g = build_real("Zm:2").unwrap();
    let ctx = DunklContext::symbolic(&g);
    let e = ctx.x_commutator(&[s(1)], &[s(1)]);
    let mut expected = GroupAlgebraElement::basis(g.identity());
    let c = ParamScalar::param(1, 0).scale_scalar(&s(-2));
    expected.add_term(g.generators()[0], &c);
    assert_eq!(e, expected);
}

#[test]
fn x_commutator_matches_action() {
    for label in ["Zm:2", "A2", "B2"] {
        let g = build_real(label).unwrap();
        let r = x_commutator_check(&DunklContext::symbolic(&g), 3).unwrap();
        assert!(r.passed(), "{label}: {:?}", r.witness);
    }
    // (a, x) = 0 and c = 0 gives the zero element
    let g = build_real("B2").unwrap();
    let ctx = DunklContext::numeric(&g, &[s(0), s(0)]);
    assert!(ctx.x_commutator(&[s(1), s(1)], &[s(1), s(-1)]).is_zero());
}

#[test]
fn sl2_triple() {
    for label in ["Zm:2", "A2", "B2"] {
        let g = build_real(label).unwrap();
        let r = DunklContext::symbolic(&g).sl2_check(4).unwrap();
        assert!(r.passed(), "{label}: {:?}", r.witness);
    }
}

#[test]
fn grading_at_zero_coupling_is_euler_plus_half_dim() {
    let g = build_real("A2").unwrap();
    let ctx = DunklContext::numeric(&g, &[s(0)]);
    let f = &(&ctx.x(0) * &ctx.x(1)) * &ctx.x(2);
    let h = ctx.grading_apply(&f).unwrap();
    assert_eq!(h, f.scale_scalar(&Scalar::from_ratio(9, 2)));
}

#[test]
fn restriction_two_paths_agree() {
    let g = build_real("A2").unwrap();
    let ctx = DunklContext::symbolic(&g);
    let p3 = (0..3).fold(MPoly::zero_in(3), |acc, i| &acc + &ctx.x(i).pow(3));
    let (a, b) = ctx.op_restrict(&p3).unwrap();
    assert_eq!(a, b);
    // zero coupling gives the Laplacian
    let ctx0 = DunklContext::numeric(&g, &[s(0)]);
    let (a0, _) = ctx0.op_restrict(&p3).unwrap();
    let lap = (0..3).fold(MPoly::zero_in(3), |acc, i| &acc + &p3.partial(i).partial(i));
    assert_eq!(a0, lap);
}

#[test]
fn sigma_sum_vanishes() {
    for label in ["Zm:2", "A2", "B2", "A3", "I2(6)"] {
        let g = build_real(label).unwrap();
        assert!(sigma_vanish_check(&g).is_zero(), "{label}");
    }
}

#[test]
fn classical_commutativity() {
    for label in ["Zm:2", "A2", "B2"] {
        let g = build_real(label).unwrap();
        let ctx = DunklContext::symbolic(&g);
        let r = ClassicalContext::new(&ctx).commutativity_check(4);
        assert!(r.passed(), "{label}: {:?}", r.witness);
    }
}

#[test]
fn classical_hamiltonian_identity() {
    for label in ["Zm:2", "A2", "B2"] {
        let g = build_real(label).unwrap();
        let r = classical_op_check(&DunklContext::symbolic(&g)).unwrap();
        assert!(r.report.passed(), "{label}: {:?}", r.report.witness);
    }
    let g = build_real("Zm:2").unwrap();
    let r = classical_op_check(&DunklContext::numeric(&g, &[s(0)])).unwrap();
    let cc_ctx = DunklContext::numeric(&g, &[s(0)]);
    let cc = ClassicalContext::new(&cc_ctx);
    let p2 = cherednik::exact::RationalFn::from_poly(&cc.p(0) * &cc.p(0));
    assert_eq!(r.twisted, p2);
}

mod properties {
    use super::*;
    use cherednik::exact::Monomial;
    use proptest::prelude::*;

    const LABELS: [&str; 3] = ["A2", "B2", "I2(6)"];

    /// Integer coefficients, degree at most 4, in `dim` variables (at most 3).
    fn poly(dim: usize) -> impl Strategy<Value = MPoly> {
        let term = (prop::collection::vec(0u16..=2, 3), -4i64..=4)
            .prop_filter("degree <= 4", |(e, _)| e.iter().sum::<u16>() <= 4);
        prop::collection::vec(term, 1..5).prop_map(move |ts| {
            MPoly::from_terms(dim, ts.into_iter().map(|(e, c)| (Monomial::new(&e[..dim]), ParamScalar::int(c))))
        })
    }

    fn case() -> impl Strategy<Value = (usize, MPoly, Vec<i64>, Vec<i64>, usize)> {
        (0..LABELS.len()).prop_flat_map(|k| {
            let dim = build_real(LABELS[k]).unwrap().dim();
            (
                Just(k),
                poly(dim),
                prop::collection::vec(-3i64..=3, dim),
                prop::collection::vec(-3i64..=3, dim),
                0usize..12,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn dunkl_operators_commute_and_are_equivariant((k, f, a, b, w) in case()) {
            let g = build_real(LABELS[k]).unwrap();
            let ctx = DunklContext::symbolic(&g);
            let a: Vec<Scalar> = a.into_iter().map(s).collect();
            let b: Vec<Scalar> = b.into_iter().map(s).collect();
            prop_assert!(ctx.commutator_defect(&a, &b, &f).unwrap().is_zero());

            // linear in the direction
            let ab: Vec<Scalar> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
            let sum = &ctx.apply(&a, &f).unwrap() + &ctx.apply(&b, &f).unwrap();
            prop_assert_eq!(ctx.apply(&ab, &f).unwrap(), sum);

            let w = w % g.order();
            let lhs = g.act_on_poly(w, &ctx.apply(&a, &g.act_on_poly(g.inverse(w), &f)).unwrap());
            prop_assert_eq!(lhs, ctx.apply(&g.act(w, &a), &f).unwrap());

            // each homogeneous piece loses exactly one degree
            for d in 0..=4 {
                let piece = f.homogeneous_component(d);
                let out = ctx.apply(&a, &piece).unwrap();
                prop_assert!(out.is_zero() || (out.is_homogeneous() && out.degree() == Some(d - 1)));
            }
        }
    }
}
