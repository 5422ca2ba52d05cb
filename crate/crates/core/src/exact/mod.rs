//! Exact arithmetic: scalars in Q or Q(sqrt d), sparse polynomials,
//! rational functions and dense linear algebra.

pub mod linalg;
pub mod poly;
pub mod ratfn;
pub mod scalar;
pub mod univariate;

pub use linalg::SMatrix;
pub use poly::{monomials_of_degree, monomials_up_to, Coefficient, MPoly, Monomial, ParamScalar, Poly};
pub use ratfn::RationalFn;
pub use scalar::{parse_rational, rat, Scalar};
pub use univariate::IntPoly;

use crate::error::Result;

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &MPoly, b: &MPoly, op: ArithOp) -> Result<MPoly> {
    Ok(match op {
        ArithOp::Add => a.try_add(b)?,
        ArithOp::Sub => a.try_sub(b)?,
        ArithOp::Mul => a.try_mul(b)?,
    })
}

pub fn divide_exact_by_linear(p: &MPoly, l: &[Scalar]) -> Result<MPoly> {
    Ok(p.divide_exact_by_linear(l)?)
}
