//! Classical (t = 0) Dunkl operators on functions of positions and momenta.
//!
//! Functions live in `C[x, p][1/alpha_s]`, stored as a polynomial numerator
//! over a product of root powers. A reflection acts on `x` and `p` at once.

use rayon::prelude::*;

use super::DunklContext;
use crate::error::Result;
use crate::exact::linalg::dot;
use crate::exact::{monomials_up_to, MPoly, Monomial, ParamScalar, RationalFn, Scalar};
use crate::groups::ReflectionGroup;
use crate::report::CheckReport;

/// `num / prod_r alpha_r(x)^{exps[r]}` over the positive roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootFraction {
    pub num: MPoly,
    pub exps: Vec<u32>,
}

impl RootFraction {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Classical operators for a context; variables are `x1..xn, p1..pn`.
pub struct ClassicalContext<'c, 'g> {
    ctx: &'c DunklContext<'g>,
    /// Root linear forms in the `2n` variables (x-part only).
    forms: Vec<MPoly>,
    /// `root_perm[s][r] = (sign, r')` with `s alpha_r = sign alpha_{r'}`.
    root_perm: Vec<Vec<(bool, usize)>>,
}

impl<'c, 'g> ClassicalContext<'c, 'g> {
    pub fn new(ctx: &'c DunklContext<'g>) -> Self {
        let n = ctx.dim();
        let refl = ctx.refl_terms();
        let forms = refl
            .iter()
            .map(|r| {
                let mut coeffs = r.root.clone();
                coeffs.extend(std::iter::repeat_n(Scalar::zero(), n));
                MPoly::linear(&coeffs)
            })
            .collect();
        let root_perm = refl
            .iter()
            .map(|s| {
                refl.iter()
                    .map(|r| {
                        let img = s.matrix.apply(&r.root);
                        let neg: Vec<Scalar> = img.iter().map(|v| -v).collect();
                        refl.iter()
                            .enumerate()
                            .find_map(|(k, t)| {
                                if t.root == img {
                                    Some((false, k))
                                } else if t.root == neg {
                                    Some((true, k))
                                } else {
                                    None
                                }
                            })
                            .expect("reflections permute roots")
                    })
                    .collect()
            })
            .collect();
        ClassicalContext {
            ctx,
            forms,
            root_perm,
        }
    }

    pub fn nvars(&self) -> usize {
        2 * self.ctx.dim()
    }

    pub fn x(&self, i: usize) -> MPoly {
        MPoly::x(self.nvars(), i)
    }

    pub fn p(&self, i: usize) -> MPoly {
        MPoly::x(self.nvars(), self.ctx.dim() + i)
    }

    pub fn from_poly(&self, num: MPoly) -> RootFraction {
        RootFraction {
            num: num.with_nvars(self.nvars()),
            exps: vec![0; self.forms.len()],
        }
    }

    fn reflect(&self, s: usize, f: &RootFraction) -> RootFraction {
        let r = &self.ctx.refl_terms()[s];
        let mut num = ReflectionGroup::pullback(&r.matrix, &f.num, 2);
        let mut exps = vec![0; f.exps.len()];
        let mut negate = false;
        for (k, &e) in f.exps.iter().enumerate() {
            let (sign, k2) = self.root_perm[s][k];
            exps[k2] = e;
            if sign && e % 2 == 1 {
                negate = !negate;
            }
        }
        if negate {
            num = num.neg();
        }
        RootFraction { num, exps }
    }

    fn lift(&self, f: &RootFraction, target: &[u32]) -> MPoly {
        let mut num = f.num.clone();
        for (k, (&have, &want)) in f.exps.iter().zip(target).enumerate() {
            for _ in have..want {
                num = &num * &self.forms[k];
            }
        }
        num
    }

    pub fn sub(&self, a: &RootFraction, b: &RootFraction) -> RootFraction {
        self.reduce(self.sub_raw(a, b))
    }

    fn sub_raw(&self, a: &RootFraction, b: &RootFraction) -> RootFraction {
        let exps: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect();
        let num = &self.lift(a, &exps) - &self.lift(b, &exps);
        RootFraction { num, exps }
    }

    pub fn add(&self, a: &RootFraction, b: &RootFraction) -> RootFraction {
        let exps: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect();
        let num = &self.lift(a, &exps) + &self.lift(b, &exps);
        self.reduce(RootFraction { num, exps })
    }

    /// Cancel root factors that divide the numerator.
    fn reduce(&self, mut f: RootFraction) -> RootFraction {
        if f.num.is_zero() {
            f.exps.iter_mut().for_each(|e| *e = 0);
            return f;
        }
        let n = self.ctx.dim();
        for k in 0..f.exps.len() {
            while f.exps[k] > 0 {
                let mut l = self.ctx.refl_terms()[k].root.clone();
                l.extend(std::iter::repeat_n(Scalar::zero(), n));
                match f.num.divide_exact_by_linear(&l) {
                    Ok(q) => {
                        f.num = q;
                        f.exps[k] -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        f
    }

    /// `D0_a f = p_a f - sum_s c_s alpha_s(a) (f - s f) / alpha_s(x)`.
    pub fn apply(&self, a: &[Scalar], f: &RootFraction) -> RootFraction {
        let n = self.ctx.dim();
        let mut pa = vec![Scalar::zero(); n];
        pa.extend(a.iter().cloned());
        let mut out = RootFraction {
            num: &MPoly::linear(&pa) * &f.num,
            exps: f.exps.clone(),
        };
        for (s, r) in self.ctx.refl_terms().iter().enumerate() {
            let pair = dot(&r.root, a);
            if pair.is_zero() || r.coupling.is_zero() {
                continue;
            }
            let mut diff = self.sub_raw(f, &self.reflect(s, f));
            if diff.is_zero() {
                continue;
            }
            diff.num = diff.num.scale(&r.coupling.scale_scalar(&pair));
            // f - s f vanishes on the mirror of s
            let mut l = r.root.clone();
            l.extend(std::iter::repeat_n(Scalar::zero(), n));
            match diff.num.divide_exact_by_linear(&l) {
                Ok(q) => diff.num = q,
                Err(_) => diff.exps[s] += 1,
            }
            out = self.sub_raw(&out, &diff);
        }
        self.reduce(out)
    }

    pub fn commutator_defect(&self, a: &[Scalar], b: &[Scalar], f: &RootFraction) -> RootFraction {
        let ab = self.apply(a, &self.apply(b, f));
        let ba = self.apply(b, &self.apply(a, f));
        self.sub(&ab, &ba)
    }

    pub fn commutativity_check(&self, max_degree: u32) -> CheckReport {
        let label = format!("{} classical", self.ctx.group().label());
        let mut report = CheckReport::new("classical_dunkl_commute", &label, Some(max_degree));
        let n = self.ctx.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let monos = monomials_up_to(2 * n, max_degree);
        let bad = monos.par_iter().find_map_first(|m| {
            let f = self.from_poly(MPoly::term(2 * n, m.clone(), ParamScalar::int(1)));
            let first: Vec<RootFraction> = (0..n).map(|i| self.apply(&self.ctx.unit(i), &f)).collect();
            pairs.iter().find_map(|&(i, j)| {
                let ij = self.apply(&self.ctx.unit(i), &first[j]);
                let ji = self.apply(&self.ctx.unit(j), &first[i]);
                let d = self.sub(&ij, &ji);
                (!d.is_zero()).then(|| format!("[D0_{}, D0_{}] on {}", i + 1, j + 1, f.num))
            })
        });
        if let Some(w) = bad {
            report.fail(w);
        }
        report
    }

    pub fn to_rational(&self, f: &RootFraction) -> RationalFn {
        let one = MPoly::from_scalar_in(self.nvars(), Scalar::one());
        let den = self.lift(
            &RootFraction {
                num: one,
                exps: vec![0; f.exps.len()],
            },
            &f.exps,
        );
        RationalFn::new(f.num.clone(), den).expect("root products are nonzero")
    }

    /// `m(sum_i (D0_i)^2)`, obtained by applying the operator to `1`.
    pub fn restricted_square(&self) -> RationalFn {
        let n = self.ctx.dim();
        let one = self.from_poly(MPoly::from_scalar_in(2 * n, Scalar::one()));
        let mut acc = self.from_poly(MPoly::zero_in(2 * n));
        for i in 0..n {
            let e = self.ctx.unit(i);
            acc = self.add(&acc, &self.apply(&e, &self.apply(&e, &one)));
        }
        self.to_rational(&acc)
    }

    /// `theta_c`: `p_i -> p_i + sum_s c_s alpha_{s,i} / alpha_s(x)`, applied to
    /// a function whose denominator involves `x` only.
    pub fn theta(&self, f: &RationalFn) -> RationalFn {
        let n = self.ctx.dim();
        let nv = 2 * n;
        let refl = self.ctx.refl_terms();
        let delta = self
            .forms
            .iter()
            .fold(MPoly::from_scalar_in(nv, Scalar::one()), |acc, l| &acc * l);
        let shifts: Vec<MPoly> = (0..n)
            .map(|i| {
                let mut acc = MPoly::zero_in(nv);
                for (s, r) in refl.iter().enumerate() {
                    if r.root[i].is_zero() {
                        continue;
                    }
                    let mut t = MPoly::from_param(nv, r.coupling.scale_scalar(&r.root[i]));
                    for (u, l) in self.forms.iter().enumerate() {
                        if u != s {
                            t = &t * l;
                        }
                    }
                    acc = &acc + &t;
                }
                acc
            })
            .collect();
        let images: Vec<MPoly> = (0..nv)
            .map(|v| {
                if v < n {
                    self.x(v)
                } else {
                    &(&delta * &self.p(v - n)) + &shifts[v - n]
                }
            })
            .collect();
        let p_degree = |m: &Monomial| -> u32 { (n..nv).map(|i| m.exp(i) as u32).sum() };
        let num = f.numerator();
        let top = num.terms().map(|(m, _)| p_degree(m)).max().unwrap_or(0);
        let mut out = MPoly::zero_in(nv);
        for k in 0..=top {
            let part = MPoly::from_terms(
                nv,
                num.terms()
                    .filter(|(m, _)| p_degree(m) == k)
                    .map(|(m, c)| (m.clone(), c.clone())),
            );
            if part.is_zero() {
                continue;
            }
            out = &out + &(&part.compose(&images).with_nvars(nv) * &delta.pow(top - k));
        }
        RationalFn::new(out, f.denominator() * &delta.pow(top)).expect("nonzero denominator")
    }

    /// `H0 = p^2 - sum_s c_s^2 (alpha_s, alpha_s) / alpha_s(x)^2`.
    pub fn classical_hamiltonian(&self) -> RationalFn {
        let n = self.ctx.dim();
        let nv = 2 * n;
        let mut h = RationalFn::from_poly(
            (0..n).fold(MPoly::zero_in(nv), |acc, i| &acc + &(&self.p(i) * &self.p(i))),
        );
        for (s, r) in self.ctx.refl_terms().iter().enumerate() {
            let c2 = (&r.coupling * &r.coupling).scale_scalar(&dot(&r.root, &r.root));
            let term = RationalFn::new(MPoly::from_param(nv, c2), &self.forms[s] * &self.forms[s])
                .expect("root squared is nonzero");
            h = &h - &term;
        }
        h
    }
}

/// Report of the classical Hamiltonian identity.
#[derive(Clone, Debug)]
pub struct ClassicalOpReport {
    pub report: CheckReport,
    pub twisted: RationalFn,
    pub hamiltonian: RationalFn,
}

/// `m(theta_c(sum (D0_i)^2)) = H0` as an exact identity of rational functions.
pub fn classical_op_check(ctx: &DunklContext) -> Result<ClassicalOpReport> {
    let cc = ClassicalContext::new(ctx);
    let twisted = cc.theta(&cc.restricted_square());
    let hamiltonian = cc.classical_hamiltonian();
    let mut report = CheckReport::new("classical_op", ctx.group().label(), None);
    if twisted != hamiltonian {
        report.fail(format!("{twisted} != {hamiltonian}"));
    }
    Ok(ClassicalOpReport {
        report,
        twisted,
        hamiltonian,
    })
}
