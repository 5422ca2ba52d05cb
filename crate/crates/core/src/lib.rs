//! Exact and numerical workbench for Dunkl operators, rational Cherednik
//! algebras, Hecke algebras and the Calogero-Moser system.

pub mod acceptance;
pub mod calogero;
pub mod dunkl;
pub mod error;
pub mod exact;
pub mod groups;
pub mod hecke;
pub mod mehta;
pub mod ode;
pub mod report;
pub mod support;
pub mod verma;

pub use error::{Error, Result};
