use cherednik::exact::{
    divide_exact_by_linear, parse_rational, poly_arith, rat, ArithOp, MPoly, Monomial, ParamScalar, RationalFn, Scalar,
};
use cherednik::Error;
use proptest::prelude::*;

const NVARS: usize = 3;
const NPARAMS: usize = 2;

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

/// `a + b sqrt 2` with small rational parts.
fn quadratic() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=3, -5i64..=5, 1i64..=3).prop_map(|(a, b, c, d)| Scalar::quadratic(rat(a, b), rat(c, d), 2))
}

/// `s0 + s1 c1 + s2 c2`.
fn param_scalar() -> impl Strategy<Value = ParamScalar> {
    (small_rational(), small_rational(), small_rational()).prop_map(|(a, b, c)| {
        let p0 = ParamScalar::param(NPARAMS, 0);
        let p1 = ParamScalar::param(NPARAMS, 1);
        let one = ParamScalar::constant_in(NPARAMS, a);
        &(&one + &p0.scale(&b)) + &p1.scale(&c)
    })
}

/// Degree at most 4 in three variables.
fn mpoly() -> impl Strategy<Value = MPoly> {
    let term = (prop::collection::vec(0u16..=2, NVARS), param_scalar())
        .prop_filter("degree <= 4", |(e, _)| e.iter().sum::<u16>() <= 4);
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        MPoly::from_terms(NVARS, terms.into_iter().map(|(e, c)| (Monomial::new(&e), c)))
    })
}

fn linear_form() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(small_rational(), NVARS).prop_filter("nonzero", |l| l.iter().any(|s| !s.is_zero()))
}

fn params() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(small_rational(), NPARAMS)
}

fn point() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(small_rational(), NVARS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_distributes(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn multiplication_is_associative_and_commutative(a in mpoly(), b in mpoly(), c in mpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn degree_is_additive(a in mpoly(), b in mpoly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = poly_arith(&a, &b, ArithOp::Mul).unwrap();
        prop_assert_eq!(ab.degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
    }

    #[test]
    fn subtraction_cancels(a in mpoly()) {
        let d = poly_arith(&a, &a, ArithOp::Sub).unwrap();
        prop_assert!(d.is_zero());
        prop_assert_eq!(d.terms().count(), 0);
        prop_assert!((&a * &MPoly::zero_in(NVARS)).is_zero());
    }

    #[test]
    fn exact_division_by_linear_forms(q in mpoly(), l in linear_form()) {
        let lp = MPoly::from_terms(
            NVARS,
            l.iter().enumerate().map(|(i, s)| (Monomial::var(i), ParamScalar::constant_in(NPARAMS, s.clone()))),
        );
        let p = &q * &lp;
        prop_assert_eq!(divide_exact_by_linear(&p, &l).unwrap(), q);
    }

    #[test]
    fn substitution_is_a_ring_map(a in mpoly(), b in mpoly(), c in params(), x in point()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.substitute(&c, &x), &a.substitute(&c, &x) * &b.substitute(&c, &x));
        let sum = &a + &b;
        prop_assert_eq!(sum.substitute(&c, &x), &a.substitute(&c, &x) + &b.substitute(&c, &x));
        // parameters first, then the point
        let staged = ab.substitute_params(&c).substitute(&[], &x);
        prop_assert_eq!(staged, ab.substitute(&c, &x));
    }

    #[test]
    fn quadratic_field_axioms(a in quadratic(), b in quadratic(), c in quadratic()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
            prop_assert_eq!(&(&a * &b) / &a, b.clone());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn quadratic_signs_match_floats(a in quadratic()) {
        let f = a.to_f64();
        prop_assert_eq!(a.signum(), if f > 0.0 { 1 } else if f < 0.0 { -1 } else { 0 });
    }

    #[test]
    fn rational_function_equality_ignores_common_factors(
        n in mpoly(), d in mpoly(), f in mpoly(), c in params(), x in point()
    ) {
        prop_assume!(!d.is_zero() && !f.is_zero());
        let a = RationalFn::new(n.clone(), d.clone()).unwrap();
        let b = RationalFn::new(&n * &f, &d * &f).unwrap();
        prop_assert_eq!(&a, &b);
        let den = (&d * &f).substitute(&c, &x);
        if !den.is_zero() {
            prop_assert_eq!(a.substitute(&c, &x).unwrap(), b.substitute(&c, &x).unwrap());
        }
    }

    #[test]
    fn rationals_round_trip_through_text(n in -1000i64..1000, d in 1i64..1000) {
        let q = rat(n, d);
        prop_assert_eq!(parse_rational(&q.to_string()), Some(q));
    }
}

#[test]
fn division_examples() {
    let x1 = MPoly::x(2, 0);
    let x2 = MPoly::x(2, 1);
    let p = &(&x1 * &x1) - &(&x2 * &x2);
    let l = [Scalar::one(), Scalar::from_int(-1)];
    assert_eq!(divide_exact_by_linear(&p, &l).unwrap(), &x1 + &x2);
    assert!(divide_exact_by_linear(&MPoly::zero_in(2), &[Scalar::one(), Scalar::zero()]).unwrap().is_zero());
    let err = divide_exact_by_linear(&x1, &[Scalar::zero(), Scalar::one()]).unwrap_err();
    assert!(matches!(err, Error::NotDivisible { .. }));
}

#[test]
fn substitution_examples() {
    // (1 - 2c) x at c = 1/2
    let c = ParamScalar::param(1, 0);
    let coeff = &ParamScalar::constant_in(1, Scalar::one()) - &c.scale(&Scalar::from_int(2));
    let p = MPoly::x(1, 0).scale(&coeff);
    assert!(p.substitute_params(&[Scalar::from_ratio(1, 2)]).is_zero());

    let x1x2 = &MPoly::x(2, 0) * &MPoly::x(2, 1);
    assert_eq!(x1x2.substitute(&[], &[Scalar::from_int(2), Scalar::from_int(3)]), Scalar::from_int(6));

    let f = RationalFn::new(MPoly::from_scalar_in(2, Scalar::one()), &MPoly::x(2, 0) - &MPoly::x(2, 1)).unwrap();
    let err = f.substitute(&[], &[Scalar::one(), Scalar::one()]).unwrap_err();
    assert!(matches!(err, Error::PoleAtPoint));
}

#[test]
fn mismatched_variable_sets_are_rejected() {
    let err = poly_arith(&MPoly::x(2, 0), &MPoly::x(3, 0), ArithOp::Add).unwrap_err();
    assert!(matches!(err, Error::VariableMismatch(_)));
}
