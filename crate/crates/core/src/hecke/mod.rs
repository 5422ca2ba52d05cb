//! Finite Hecke algebras, rewriting in the deformed group algebra `A(W)`,
//! and monodromy of the KZ connection.

pub mod algebra;
pub mod kz;
pub mod rewrite;

pub use algebra::{coxeter_entry, hecke_dim_check, hecke_mul_type_a, HeckeAlgebra, HeckeDimReport, HeckeElement};
pub use kz::{
    cyclic_monodromy, kz_transport, monodromy_eigencheck, CyclicMonodromyReport, KzConfig, KzSystem, MonodromyReport, PathPiece,
};
pub use rewrite::{classical_specialization_check, rewrite_canonical, ClassicalReport, NormalForm, RewriteSystem};
