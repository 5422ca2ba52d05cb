use std::collections::HashMap;

use super::{CyclicGroup, Group, GroupSpec, Reflection, ReflectionGroup};
use crate::error::{Error, Result};
use crate::exact::linalg::{dot, nullspace};
use crate::exact::{SMatrix, Scalar};

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

/// `1 - alpha alpha^T` for a root with `(alpha, alpha) = 2`.
pub(crate) fn reflection_matrix(alpha: &[Scalar]) -> SMatrix {
    let n = alpha.len();
    let mut m = SMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j) - &(&alpha[i] * &alpha[j]);
            m.set(i, j, v);
        }
    }
    m
}

fn simple_roots_for(spec: GroupSpec) -> Result<(Vec<Vec<Scalar>>, usize)> {
    let roots = match spec {
        GroupSpec::A(n) => {
            let dim = n + 1;
            let r = (0..n).map(|i| sub(&unit(dim, i), &unit(dim, i + 1))).collect();
            (r, dim)
        }
        GroupSpec::B(n) => {
            let mut r: Vec<Vec<Scalar>> =
                (0..n - 1).map(|i| sub(&unit(n, i), &unit(n, i + 1))).collect();
            r.push(scale(&unit(n, n - 1), &Scalar::sqrt_int(2)));
            (r, n)
        }
        GroupSpec::D(n) => {
            if n < 2 {
                return Err(Error::UnsupportedType(format!("D{n}")));
            }
            let mut r: Vec<Vec<Scalar>> =
                (0..n - 1).map(|i| sub(&unit(n, i), &unit(n, i + 1))).collect();
            r.push(add(&unit(n, n - 2), &unit(n, n - 1)));
            (r, n)
        }
        GroupSpec::I2(m) => {
            // rotation by pi - pi/m
            let (cos, sin) = match m {
                3 => (
                    Scalar::from_ratio(-1, 2),
                    &Scalar::sqrt_int(3) / &Scalar::from_int(2),
                ),
                4 => (
                    -(&Scalar::sqrt_int(2) / &Scalar::from_int(2)),
                    &Scalar::sqrt_int(2) / &Scalar::from_int(2),
                ),
                6 => (
                    -(&Scalar::sqrt_int(3) / &Scalar::from_int(2)),
                    Scalar::from_ratio(1, 2),
                ),
                _ => return Err(Error::UnsupportedType(format!("I2({m})"))),
            };
            let a1 = vec![Scalar::one(), Scalar::one()];
            let a2 = vec![
                &(&a1[0] * &cos) - &(&a1[1] * &sin),
                &(&a1[0] * &sin) + &(&a1[1] * &cos),
            ];
            (vec![a1, a2], 2)
        }
        GroupSpec::Cyclic(2) => (vec![vec![Scalar::sqrt_int(2)]], 1),
        GroupSpec::Cyclic(m) => return Err(Error::UnsupportedType(format!("Zm:{m} is not real"))),
    };
    Ok(roots)
}

pub(crate) fn build(spec: GroupSpec, cap: usize) -> Result<Group> {
    if let GroupSpec::Cyclic(m) = spec {
        if m > 2 {
            if m > cap {
                return Err(Error::OrderCapExceeded { cap });
            }
            return Ok(Group::Cyclic(CyclicGroup { m }));
        }
    }
    let (roots, dim) = simple_roots_for(spec)?;
    Ok(Group::Real(from_simple_roots(&spec.to_string(), roots, dim, cap)?))
}

/// Generate the group of the given simple roots (each with `(a, a) = 2`) by
/// breadth-first search over right multiplication by generators.
pub fn from_simple_roots(
    label: &str,
    simple_roots: Vec<Vec<Scalar>>,
    dim: usize,
    cap: usize,
) -> Result<ReflectionGroup> {
    for a in &simple_roots {
        assert_eq!(a.len(), dim);
        assert_eq!(dot(a, a), Scalar::from_int(2), "simple roots must have norm 2");
    }
    let gens: Vec<SMatrix> = simple_roots.iter().map(|a| reflection_matrix(a)).collect();
    let radicand = simple_roots
        .iter()
        .flatten()
        .map(|s| s.radicand())
        .max()
        .unwrap_or(1);

    let mut elements = vec![SMatrix::identity(dim)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<SMatrix, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut level = vec![0usize];
    while !level.is_empty() {
        let mut next = Vec::new();
        for &w in &level {
            for (g, gm) in gens.iter().enumerate() {
                let prod = &elements[w] * gm;
                if index.contains_key(&prod) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                let id = elements.len();
                let mut word = words[w].clone();
                word.push(g);
                index.insert(prod.clone(), id);
                elements.push(prod);
                words.push(word);
                next.push(id);
            }
        }
        level = next;
    }

    let lookup = |m: &SMatrix| -> usize { *index.get(m).expect("group closed under products") };
    let right_mul: Vec<Vec<usize>> = gens
        .iter()
        .map(|gm| elements.iter().map(|e| lookup(&(e * gm))).collect())
        .collect();
    let left_mul: Vec<Vec<usize>> = gens
        .iter()
        .map(|gm| elements.iter().map(|e| lookup(&(gm * e))).collect())
        .collect();
    let generators: Vec<usize> = gens.iter().map(lookup).collect();

    let reflections = enumerate_reflections(&simple_roots, &gens, &lookup);
    let num_classes = reflections.iter().map(|r| r.class + 1).max().unwrap_or(0);

    Ok(ReflectionGroup {
        label: label.to_string(),
        dim,
        rank: simple_roots.len(),
        radicand,
        elements,
        index,
        simple_roots,
        generators,
        words,
        right_mul,
        left_mul,
        reflections,
        num_classes,
    })
}

/// A vector `rho` with `(alpha_i, rho) = 1` on every simple root, lying in
/// their span; positive roots are those pairing positively with it.
fn positivity_vector(simple_roots: &[Vec<Scalar>], dim: usize) -> Vec<Scalar> {
    let r = simple_roots.len();
    if r == 0 {
        return vec![Scalar::zero(); dim];
    }
    // solve G c = 1 with G the Gram matrix; augmented system via nullspace
    let rows: Vec<Vec<Scalar>> = (0..r)
        .map(|i| {
            let mut row: Vec<Scalar> = (0..r).map(|j| dot(&simple_roots[i], &simple_roots[j])).collect();
            row.push(-Scalar::one());
            row
        })
        .collect();
    let ns = nullspace(&rows, r + 1);
    let sol = ns
        .iter()
        .find(|v| !v[r].is_zero())
        .expect("simple roots are linearly independent");
    let t = sol[r].inv();
    let mut rho = vec![Scalar::zero(); dim];
    for (i, a) in simple_roots.iter().enumerate() {
        let ci = &sol[i] * &t;
        for (k, x) in a.iter().enumerate() {
            rho[k] += &(&ci * x);
        }
    }
    rho
}

fn enumerate_reflections(
    simple_roots: &[Vec<Scalar>],
    gens: &[SMatrix],
    lookup: &dyn Fn(&SMatrix) -> usize,
) -> Vec<Reflection> {
    let dim = gens.first().map_or(0, |g| g.rows());
    let rho = positivity_vector(simple_roots, dim);
    let normalize = |v: Vec<Scalar>| -> Vec<Scalar> {
        let s = dot(&v, &rho).signum();
        assert!(s != 0, "root orthogonal to the positivity vector");
        if s < 0 {
            v.iter().map(|x| -x).collect()
        } else {
            v
        }
    };
    let mut roots: Vec<Vec<Scalar>> = Vec::new();
    let mut pos: HashMap<Vec<Scalar>, usize> = HashMap::new();
    for a in simple_roots {
        let a = normalize(a.clone());
        if !pos.contains_key(&a) {
            pos.insert(a.clone(), roots.len());
            roots.push(a);
        }
    }
    let mut i = 0;
    while i < roots.len() {
        for g in gens {
            let b = normalize(g.apply(&roots[i]));
            if !pos.contains_key(&b) {
                pos.insert(b.clone(), roots.len());
                roots.push(b);
            }
        }
        i += 1;
    }
    // classes by union-find over the generator action
    let mut parent: Vec<usize> = (0..roots.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nxt = p[y];
            p[y] = r;
            y = nxt;
        }
        r
    }
    for (i, root) in roots.iter().enumerate() {
        for g in gens {
            let j = pos[&normalize(g.apply(root))];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut class_of_rep: HashMap<usize, usize> = HashMap::new();
    let mut classes = Vec::with_capacity(roots.len());
    for i in 0..roots.len() {
        let r = find(&mut parent, i);
        let next = class_of_rep.len();
        classes.push(*class_of_rep.entry(r).or_insert(next));
    }
    roots
        .into_iter()
        .zip(classes)
        .map(|(root, class)| Reflection {
            element: lookup(&reflection_matrix(&root)),
            coroot: root.clone(),
            root,
            eigenvalue: -1,
            class,
        })
        .collect()
}

/// Parabolic subgroup generated by the simple reflections at `nodes`.
pub fn standard_parabolic(g: &ReflectionGroup, nodes: &[usize]) -> Result<ReflectionGroup> {
    let roots: Vec<Vec<Scalar>> = nodes.iter().map(|&i| g.simple_roots[i].clone()).collect();
    let label = format!(
        "{}<{}>",
        g.label,
        nodes.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(",")
    );
    from_simple_roots(&label, roots, g.dim, DEFAULT_ORDER_CAP)
}

/// Stabilizer of `a`, rebuilt as a reflection group from the reflections
/// fixing `a`; checked against direct enumeration of `{w : w a = a}`.
pub fn stabilizer(g: &ReflectionGroup, a: &[Scalar]) -> Result<ReflectionGroup> {
    let fixing: Vec<&Reflection> = g
        .reflections
        .iter()
        .filter(|r| dot(&r.root, a).is_zero())
        .collect();
    // simple roots of the subsystem: positive roots sent negative only by
    // their own reflection, i.e. not a positive combination of two others
    let rho = positivity_vector(&g.simple_roots, g.dim);
    let sub_positive: Vec<&Vec<Scalar>> = fixing.iter().map(|r| &r.root).collect();
    let mut simple = Vec::new();
    for r in &fixing {
        let s = reflection_matrix(&r.root);
        let flipped = sub_positive
            .iter()
            .filter(|b| dot(&s.apply(b), &rho).signum() < 0)
            .count();
        if flipped == 1 {
            simple.push(r.root.clone());
        }
    }
    let label = format!("{}_stab", g.label);
    let sub = from_simple_roots(&label, simple, g.dim, DEFAULT_ORDER_CAP)?;
    let direct = g.fixer(a);
    let mut generated: Vec<usize> = sub
        .elements
        .iter()
        .map(|m| g.index_of(m).expect("subgroup elements lie in the group"))
        .collect();
    generated.sort_unstable();
    assert_eq!(generated, direct, "stabilizer is generated by its reflections");
    Ok(sub)
}
