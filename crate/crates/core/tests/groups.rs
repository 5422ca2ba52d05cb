use cherednik::exact::linalg::dot;
use cherednik::exact::{IntPoly, Scalar};
use cherednik::groups::degrees::{degrees, degrees_of_label, poincare_polynomial};
use cherednik::groups::{
    build_group, build_real, stabilizer, standard_parabolic, Group, GroupSpec, ReflectionGroup,
};
use std::collections::BTreeSet;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Independent oracle: count products of generators closing under
/// left multiplication, tracking lengths by BFS distance.
fn bfs_census(g: &ReflectionGroup) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    dist[0] = 0;
    let mut frontier = vec![0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &w in &frontier {
            for gen in 0..g.rank() {
                let v = g.mul_gen_left(gen, w);
                if dist[v] == usize::MAX {
                    dist[v] = dist[w] + 1;
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let max = *dist.iter().max().unwrap();
    let mut c = vec![0; max + 1];
    for d in dist {
        c[d] += 1;
    }
    c
}

#[test]
fn parses_group_labels() {
    assert_eq!("A3".parse::<GroupSpec>().unwrap(), GroupSpec::A(3));
    assert_eq!("I2(6)".parse::<GroupSpec>().unwrap(), GroupSpec::I2(6));
    assert_eq!("Zm:5".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(5));
    assert!("Q3".parse::<GroupSpec>().is_err());
    assert!("I2(5)".parse::<GroupSpec>().map(build_group).unwrap().is_err());
}

#[test]
fn orders_reflections_classes() {
    let cases = [
        ("A1", 2, 1, 1),
        ("A2", 6, 3, 1),
        ("A3", 24, 6, 1),
        ("B2", 8, 4, 2),
        ("B3", 48, 9, 2),
        ("D4", 192, 12, 1),
        ("I2(3)", 6, 3, 1),
        ("I2(4)", 8, 4, 2),
        ("I2(6)", 12, 6, 2),
        ("Zm:2", 2, 1, 1),
    ];
    for (label, order, nrefl, nclasses) in cases {
        let g = build_real(label).unwrap();
        assert_eq!(g.order(), order, "{label}");
        assert_eq!(g.reflections().len(), nrefl, "{label}");
        assert_eq!(g.num_classes(), nclasses, "{label}");
    }
}

#[test]
fn cyclic_group_keeps_exponents() {
    let Group::Cyclic(c) = build_group(GroupSpec::Cyclic(3)).unwrap() else {
        panic!("Zm:3 is cyclic");
    };
    assert_eq!(c.order(), 3);
    assert_eq!(c.reflection_exponents(), vec![1, 2]);
}

#[test]
fn reflection_data_is_normalized() {
    for label in ["A2", "B2", "B3", "D4", "I2(4)", "I2(6)", "Zm:2"] {
        let g = build_real(label).unwrap();
        for r in g.reflections() {
            assert_eq!(dot(&r.root, &r.root), s(2));
            assert_eq!(dot(&r.root, &r.coroot), s(2));
            let m = g.element(r.element);
            let neg: Vec<Scalar> = r.root.iter().map(|x| -x).collect();
            assert_eq!(m.apply(&r.root), neg);
            // 1 - s has rank one
            let one = cherednik::exact::SMatrix::identity(g.dim());
            assert_eq!(one.sub(m).rank(), 1);
        }
    }
}

#[test]
fn b2_roots() {
    let g = build_real("B2").unwrap();
    let roots: BTreeSet<String> = g
        .reflections()
        .iter()
        .map(|r| format!("{},{}", r.root[0], r.root[1]))
        .collect();
    let expected: BTreeSet<String> = ["1,-1", "1,1", "sqrt(2),0", "0,sqrt(2)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(roots, expected);
}

#[test]
fn conjugation_preserves_classes() {
    for label in ["A3", "B3", "I2(6)"] {
        let g = build_real(label).unwrap();
        for r in g.reflections() {
            for w in 0..g.order() {
                let conj = g.mul(g.mul(w, r.element), g.inverse(w));
                let image = g.reflection_by_element(conj).expect("conjugate is a reflection");
                assert_eq!(image.class, r.class);
                let moved = g.act(w, &r.root);
                let neg: Vec<Scalar> = moved.iter().map(|x| -x).collect();
                assert!(moved == image.root || neg == image.root);
            }
        }
    }
}

#[test]
fn lengths_and_words_are_consistent() {
    for label in ["A3", "B3", "I2(6)"] {
        let g = build_real(label).unwrap();
        let census = bfs_census(&g);
        let p = poincare_polynomial(&g);
        assert_eq!(p.coeffs_i64(), census.iter().map(|&c| c as i64).collect::<Vec<_>>());
        for w in 0..g.order() {
            assert_eq!(g.from_word(g.word(w)), w);
            assert_eq!(g.mul(w, g.inverse(w)), g.identity());
        }
    }
}

#[test]
fn poincare_examples() {
    let p = |l: &str| poincare_polynomial(&build_real(l).unwrap());
    assert_eq!(p("A2"), IntPoly::from_i64(&[1, 2, 2, 1]));
    assert_eq!(p("A1"), IntPoly::from_i64(&[1, 1]));
    assert_eq!(p("B2"), IntPoly::from_i64(&[1, 2, 2, 2, 1]));
}

#[test]
fn degree_examples_and_product_formula() {
    let expected: [(&str, &[usize]); 9] = [
        ("A2", &[2, 3]),
        ("A3", &[2, 3, 4]),
        ("B2", &[2, 4]),
        ("B3", &[2, 4, 6]),
        ("D4", &[2, 4, 4, 6]),
        ("I2(3)", &[2, 3]),
        ("I2(4)", &[2, 4]),
        ("I2(6)", &[2, 6]),
        ("Zm:2", &[2]),
    ];
    for (label, d) in expected {
        let g = build_real(label).unwrap();
        assert_eq!(degrees(&g).unwrap(), d, "{label}");
        let prod = d
            .iter()
            .fold(IntPoly::one(), |acc, &k| &acc * &IntPoly::q_integer(k));
        assert_eq!(poincare_polynomial(&g), prod);
    }
    assert_eq!(degrees_of_label("E7").unwrap(), vec![2, 6, 8, 10, 12, 14, 18]);
}

#[test]
fn parabolic_poincare_divides() {
    for label in ["A3", "B3", "D4", "I2(6)"] {
        let g = build_real(label).unwrap();
        let pw = poincare_polynomial(&g);
        for mask in 0..(1usize << g.rank()) {
            let nodes: Vec<usize> = (0..g.rank()).filter(|i| mask >> i & 1 == 1).collect();
            let p = standard_parabolic(&g, &nodes).unwrap();
            assert!(pw.div_exact(&poincare_polynomial(&p)).is_some());
        }
    }
}

#[test]
fn stabilizer_examples() {
    let g = build_real("A2").unwrap();
    let a = vec![s(1), s(1), s(-2)];
    assert_eq!(stabilizer(&g, &a).unwrap().order(), 2);
    let zero = vec![s(0), s(0), s(0)];
    assert_eq!(stabilizer(&g, &zero).unwrap().order(), 6);
    let regular = vec![s(3), s(1), s(-4)];
    assert_eq!(stabilizer(&g, &regular).unwrap().order(), 1);

    let b3 = build_real("B3").unwrap();
    let pw = poincare_polynomial(&b3);
    for a in [[1, 1, 0], [1, 0, 0], [0, 0, 1], [2, 2, 2], [1, -1, 0]] {
        let v: Vec<Scalar> = a.iter().map(|&x| s(x)).collect();
        let st = stabilizer(&b3, &v).unwrap();
        assert!(pw.div_exact(&poincare_polynomial(&st)).is_some());
    }
}

#[test]
fn order_cap_enforced() {
    let r = cherednik::groups::build_group_capped(GroupSpec::A(4), 50);
    assert!(matches!(r, Err(cherednik::Error::OrderCapExceeded { cap: 50 })));
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    const LABELS: [&str; 5] = ["A3", "B3", "D4", "I2(6)", "B2"];

    fn group_and_words() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
        (0..LABELS.len(), prop::collection::vec(0usize..4, 0..12), prop::collection::vec(0usize..4, 0..12))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn words_multiply_and_act_consistently(
            (k, u, v) in group_and_words(),
            x in prop::collection::vec(-5i64..=5, 4),
        ) {
            let g = build_real(LABELS[k]).unwrap();
            let u: Vec<usize> = u.into_iter().map(|i| i % g.rank()).collect();
            let v: Vec<usize> = v.into_iter().map(|i| i % g.rank()).collect();
            let (a, b) = (g.from_word(&u), g.from_word(&v));
            let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
            prop_assert_eq!(g.from_word(&uv), g.mul(a, b));
            // length is at most the word length and has the same parity
            prop_assert!(g.length(a) <= u.len());
            prop_assert_eq!(g.length(a) % 2, u.len() % 2);
            prop_assert_eq!(g.from_word(g.word(a)), a);
            let x: Vec<Scalar> = x.into_iter().take(g.dim()).map(s).collect();
            prop_assert_eq!(g.act(g.mul(a, b), &x), g.act(a, &g.act(b, &x)));
            prop_assert_eq!(dot(&g.act(a, &x), &g.act(a, &x)), dot(&x, &x));
        }
    }
}
