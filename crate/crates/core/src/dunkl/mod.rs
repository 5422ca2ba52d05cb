//! Dunkl operators in the polynomial representation, the grading element,
//! the sl2-triple, restriction to invariants, and the classical analogues.

pub mod classical;
mod group_algebra;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::linalg::dot;
use crate::exact::{monomials_of_degree, monomials_up_to, MPoly, ParamScalar, RationalFn, SMatrix, Scalar};
use crate::groups::ReflectionGroup;
use crate::report::CheckReport;

pub use group_algebra::GroupAlgebraElement;

#[derive(Clone, Debug)]
pub(crate) struct ReflTerm {
    pub element: usize,
    pub root: Vec<Scalar>,
    pub matrix: SMatrix,
    pub coupling: ParamScalar,
}

/// A group together with one coupling per conjugacy class of reflections.
#[derive(Clone, Debug)]
pub struct DunklContext<'g> {
    group: &'g ReflectionGroup,
    couplings: Vec<ParamScalar>,
    nparams: usize,
    refl: Vec<ReflTerm>,
}

impl<'g> DunklContext<'g> {
    /// Coupling `c_{k+1}` on class `k`, as formal parameters.
    pub fn symbolic(group: &'g ReflectionGroup) -> Self {
        let p = group.num_classes();
        let couplings = (0..p).map(|k| ParamScalar::param(p, k)).collect();
        Self::with_couplings(group, couplings, p)
    }

    /// Numeric couplings, one per class.
    pub fn numeric(group: &'g ReflectionGroup, values: &[Scalar]) -> Self {
        assert_eq!(values.len(), group.num_classes(), "one value per class");
        let couplings = values.iter().cloned().map(ParamScalar::scalar).collect();
        Self::with_couplings(group, couplings, 0)
    }

    /// The same formal parameter `c1` on every class.
    pub fn equal_parameter(group: &'g ReflectionGroup) -> Self {
        let couplings = (0..group.num_classes()).map(|_| ParamScalar::param(1, 0)).collect();
        Self::with_couplings(group, couplings, 1)
    }

    pub fn with_couplings(group: &'g ReflectionGroup, couplings: Vec<ParamScalar>, nparams: usize) -> Self {
        assert_eq!(couplings.len(), group.num_classes());
        let refl = group
            .reflections()
            .iter()
            .map(|r| ReflTerm {
                element: r.element,
                root: r.root.clone(),
                matrix: group.element(r.element).clone(),
                coupling: couplings[r.class].clone(),
            })
            .collect();
        DunklContext {
            group,
            couplings,
            nparams,
            refl,
        }
    }

    pub fn group(&self) -> &'g ReflectionGroup {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn couplings(&self) -> &[ParamScalar] {
        &self.couplings
    }

    pub(crate) fn refl_terms(&self) -> &[ReflTerm] {
        &self.refl
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    pub fn x(&self, i: usize) -> MPoly {
        MPoly::x(self.dim(), i)
    }

    pub fn one(&self) -> MPoly {
        MPoly::from_scalar_in(self.dim(), Scalar::one())
    }

    /// `D_a f = d_a f - sum_s c_s (alpha_s, a) (f - s f) / alpha_s`.
    pub fn apply(&self, a: &[Scalar], f: &MPoly) -> Result<MPoly> {
        let mut out = f.directional(a);
        for r in &self.refl {
            let pair = dot(&r.root, a);
            if pair.is_zero() || r.coupling.is_zero() {
                continue;
            }
            let diff = f - &ReflectionGroup::pullback(&r.matrix, f, 1);
            if diff.is_zero() {
                continue;
            }
            let q = diff.divide_exact_by_linear(&r.root)?;
            out = &out - &q.scale(&r.coupling.scale_scalar(&pair));
        }
        Ok(out.with_nvars(self.dim()))
    }

    /// `D_{e_i} f`.
    pub fn apply_basis(&self, i: usize, f: &MPoly) -> Result<MPoly> {
        self.apply(&self.unit(i), f)
    }

    pub fn commutator_defect(&self, a: &[Scalar], b: &[Scalar], f: &MPoly) -> Result<MPoly> {
        let ab = self.apply(a, &self.apply(b, f)?)?;
        let ba = self.apply(b, &self.apply(a, f)?)?;
        Ok(&ab - &ba)
    }

    /// `[D_a, x] = (a, x) - sum_s c_s (a, alpha_s)(x, alpha_s^vee) s` for a
    /// linear form `x` with coefficient vector `xi`.
    pub fn x_commutator(&self, a: &[Scalar], xi: &[Scalar]) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero();
        out.add_term(self.group.identity(), &ParamScalar::scalar(dot(a, xi)));
        for (r, refl) in self.refl.iter().zip(self.group.reflections()) {
            let c = &(dot(a, &r.root) * dot(xi, &refl.coroot));
            out.add_term(r.element, &r.coupling.scale_scalar(c).neg());
        }
        out
    }

    /// Grading element `h = sum_i x_i D_i + dim/2 - sum_s c_s s`.
    pub fn grading_apply(&self, f: &MPoly) -> Result<MPoly> {
        let n = self.dim();
        let mut out = f.scale_scalar(&Scalar::from_ratio(n as i64, 2));
        for i in 0..n {
            out = &out + &(&self.x(i) * &self.apply_basis(i, f)?);
        }
        for r in &self.refl {
            let sf = ReflectionGroup::pullback(&r.matrix, f, 1);
            out = &out - &sf.scale(&r.coupling);
        }
        Ok(out.with_nvars(n))
    }

    /// `h_c` on the lowest weight of the polynomial representation.
    pub fn lowest_weight(&self) -> ParamScalar {
        let mut h = ParamScalar::scalar(Scalar::from_ratio(self.dim() as i64, 2));
        for r in &self.refl {
            h = &h - &r.coupling;
        }
        h
    }

    /// `E f = -1/2 sum x_i^2 f`.
    pub fn sl2_e(&self, f: &MPoly) -> MPoly {
        let mut q = MPoly::zero_in(self.dim());
        for i in 0..self.dim() {
            q = &q + &(&self.x(i) * &self.x(i));
        }
        (&q * f).scale_scalar(&Scalar::from_ratio(-1, 2))
    }

    /// `F f = 1/2 sum D_i^2 f`.
    pub fn sl2_f(&self, f: &MPoly) -> Result<MPoly> {
        Ok(self.dunkl_laplacian(f)?.scale_scalar(&Scalar::from_ratio(1, 2)))
    }

    /// `sum_i D_i^2 f`.
    pub fn dunkl_laplacian(&self, f: &MPoly) -> Result<MPoly> {
        let mut out = MPoly::zero_in(self.dim());
        for i in 0..self.dim() {
            out = &out + &self.apply_basis(i, &self.apply_basis(i, f)?)?;
        }
        Ok(out)
    }

    /// Checks `[h,E]=2E`, `[h,F]=-2F`, `[E,F]=h`, `[h,x_i]=x_i`,
    /// `[h,D_i]=-D_i` on every monomial of degree at most `max_degree`.
    pub fn sl2_check(&self, max_degree: u32) -> Result<CheckReport> {
        let mut report = CheckReport::new("sl2", self.group.label(), Some(max_degree));
        let monos = monomials_up_to(self.dim(), max_degree);
        let failures: Vec<String> = monos
            .par_iter()
            .map(|m| -> Result<Option<String>> {
                let f = MPoly::term(self.dim(), m.clone(), ParamScalar::int(1));
                let h = |g: &MPoly| self.grading_apply(g);
                let e = |g: &MPoly| self.sl2_e(g);
                let ff = |g: &MPoly| self.sl2_f(g);
                let he = &h(&e(&f))? - &e(&h(&f)?);
                if he != e(&f).scale_scalar(&Scalar::from_int(2)) {
                    return Ok(Some(format!("[h,E] on {f}")));
                }
                let hf = &h(&ff(&f)?)? - &ff(&h(&f)?)?;
                if hf != ff(&f)?.scale_scalar(&Scalar::from_int(-2)) {
                    return Ok(Some(format!("[h,F] on {f}")));
                }
                let ef = &e(&ff(&f)?) - &ff(&e(&f))?;
                if ef != h(&f)? {
                    return Ok(Some(format!("[E,F] on {f}")));
                }
                for i in 0..self.dim() {
                    let x = self.x(i);
                    let hx = &h(&(&x * &f))? - &(&x * &h(&f)?);
                    if hx != &x * &f {
                        return Ok(Some(format!("[h,x{}] on {f}", i + 1)));
                    }
                    let hy = &h(&self.apply_basis(i, &f)?)? - &self.apply_basis(i, &h(&f)?)?;
                    if hy != self.apply_basis(i, &f)?.neg() {
                        return Ok(Some(format!("[h,y{}] on {f}", i + 1)));
                    }
                }
                Ok(None)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if let Some(w) = failures.into_iter().next() {
            report.fail(w);
        }
        Ok(report)
    }

    /// Is `f` fixed by every generator?
    pub fn is_invariant(&self, f: &MPoly) -> bool {
        self.group
            .generators()
            .iter()
            .all(|&g| &self.group.act_on_poly(g, f) == f)
    }

    /// For invariant `f`, returns `(sum_i D_i^2 f, Hbar f)` where
    /// `Hbar = Laplacian - sum_s c_s (alpha_s, alpha_s)/alpha_s d_{alpha_s^vee}`;
    /// the two are asserted equal.
    pub fn op_restrict(&self, f: &MPoly) -> Result<(MPoly, MPoly)> {
        if !self.is_invariant(f) {
            return Err(Error::NotInvariant);
        }
        let lhs = self.dunkl_laplacian(f)?;
        let mut rhs = MPoly::zero_in(self.dim());
        for i in 0..self.dim() {
            rhs = &rhs + &f.partial(i).partial(i);
        }
        for (r, refl) in self.refl.iter().zip(self.group.reflections()) {
            let norm = dot(&r.root, &r.root);
            let d = f.directional(&refl.coroot);
            let q = d.divide_exact_by_linear(&r.root)?;
            rhs = &rhs - &q.scale(&r.coupling.scale_scalar(&norm));
        }
        assert_eq!(lhs, rhs, "Dunkl Laplacian restricts to the Calogero-Moser operator");
        Ok((lhs, rhs))
    }

    /// Checks commutativity on all monomials of degree at most `max_degree`
    /// for every pair of coordinate directions.
    pub fn commutativity_check(&self, max_degree: u32) -> Result<CheckReport> {
        let mut report = CheckReport::new("dunkl_commute", self.group.label(), Some(max_degree));
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let monos = monomials_up_to(n, max_degree);
        let jobs: Vec<_> = monos.iter().flat_map(|m| pairs.iter().map(move |p| (m, *p))).collect();
        let bad = jobs
            .par_iter()
            .map(|(m, (i, j))| -> Result<Option<String>> {
                let f = MPoly::term(n, (*m).clone(), ParamScalar::int(1));
                let d = self.commutator_defect(&self.unit(*i), &self.unit(*j), &f)?;
                Ok((!d.is_zero()).then(|| format!("[D{},D{}] on {f} = {d}", i + 1, j + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(w) = bad.into_iter().flatten().next() {
            report.fail(w);
        }
        Ok(report)
    }

    /// `w D_a w^{-1} = D_{w a}` on monomials up to `max_degree`, all `w`.
    pub fn equivariance_check(&self, max_degree: u32) -> Result<CheckReport> {
        let mut report = CheckReport::new("dunkl_equivariance", self.group.label(), Some(max_degree));
        let n = self.dim();
        for w in 0..self.group.order() {
            let winv = self.group.inverse(w);
            for i in 0..n {
                let a = self.unit(i);
                let wa = self.group.act(w, &a);
                for m in monomials_up_to(n, max_degree) {
                    let f = MPoly::term(n, m, ParamScalar::int(1));
                    let lhs = self
                        .group
                        .act_on_poly(w, &self.apply(&a, &self.group.act_on_poly(winv, &f))?);
                    let rhs = self.apply(&wa, &f)?;
                    if lhs != rhs {
                        report.fail(format!("w={w}, a=e{}, f={f}", i + 1));
                        return Ok(report);
                    }
                }
            }
        }
        Ok(report)
    }
}

/// `sum_{s != u} c_s c_u (alpha_s, alpha_u) / (alpha_s alpha_u)` over a
/// common denominator `prod alpha_s`, with symbolic per-class couplings.
pub fn sigma_vanish_check(group: &ReflectionGroup) -> RationalFn {
    let ctx = DunklContext::symbolic(group);
    let n = group.dim();
    let refl = ctx.refl_terms();
    let forms: Vec<MPoly> = refl.iter().map(|r| MPoly::linear(&r.root).with_nvars(n)).collect();
    let mut num = MPoly::zero_in(n);
    for s in 0..refl.len() {
        for u in 0..refl.len() {
            if s == u {
                continue;
            }
            let mut term = MPoly::from_param(n, &refl[s].coupling * &refl[u].coupling)
                .scale_scalar(&dot(&refl[s].root, &refl[u].root));
            for (v, form) in forms.iter().enumerate() {
                if v != s && v != u {
                    term = &term * form;
                }
            }
            num = &num + &term;
        }
    }
    let den = forms
        .iter()
        .fold(MPoly::from_scalar_in(n, Scalar::one()), |acc, f| &acc * f);
    RationalFn::new(num, den).expect("product of roots is nonzero")
}

/// Checks `[D_a, x] f = D_a(x f) - x D_a f` against the group-algebra
/// formula, for coordinate `a`, `x` and monomials `f` up to `max_degree`.
pub fn x_commutator_check(ctx: &DunklContext, max_degree: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("dunkl_x_commutator", ctx.group().label(), Some(max_degree));
    let n = ctx.dim();
    for i in 0..n {
        for j in 0..n {
            let a = ctx.unit(i);
            let xi = ctx.unit(j);
            let elem = ctx.x_commutator(&a, &xi);
            let x = ctx.x(j);
            for d in 0..=max_degree {
                for m in monomials_of_degree(n, d) {
                    let f = MPoly::term(n, m, ParamScalar::int(1));
                    let direct = &ctx.apply(&a, &(&x * &f))? - &(&x * &ctx.apply(&a, &f)?);
                    if direct != elem.apply(ctx.group(), &f) {
                        report.fail(format!("a=e{}, x=x{}, f={f}", i + 1, j + 1));
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Apply `prod D_i^{m_i}` to `f`.
pub fn apply_dunkl_monomial(ctx: &DunklContext, exps: &[u16], f: &MPoly) -> Result<MPoly> {
    let mut g = f.clone();
    for (i, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            g = ctx.apply_basis(i, &g)?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_real;

    #[test]
    fn rank_one_values() {
        let g = build_real("Zm:2").unwrap();
        let ctx = DunklContext::symbolic(&g);
        let x = ctx.x(0);
        assert_eq!(ctx.apply_basis(0, &x).unwrap().to_string(), "-2*c1+1");
        assert_eq!(ctx.apply_basis(0, &(&x * &x)).unwrap(), x.scale_scalar(&Scalar::from_int(2)));
        assert!(ctx.apply_basis(0, &ctx.one()).unwrap().is_zero());
        assert_eq!(ctx.grading_apply(&ctx.one()).unwrap().to_string(), "-c1+1/2");
    }

    #[test]
    fn restriction_of_quadratic_invariant() {
        let g = build_real("A2").unwrap();
        let ctx = DunklContext::symbolic(&g);
        let f = (0..3).fold(MPoly::zero_in(3), |acc, i| &acc + &(&ctx.x(i) * &ctx.x(i)));
        let (lhs, _) = ctx.op_restrict(&f).unwrap();
        // 2n - 2c n(n-1) with n = 3
        assert_eq!(lhs.to_string(), "-12*c1+6");
        assert!(matches!(ctx.op_restrict(&ctx.x(0)), Err(Error::NotInvariant)));
    }
}
