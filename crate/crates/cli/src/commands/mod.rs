mod calogero;
mod dunkl;
mod hecke;
mod mehta;
mod poincare;
mod selftest;
mod support;
mod verma;

use clap::Subcommand;

use crate::artifact::Artifact;
use crate::error::CliError;

pub use selftest::selftest;

/// What a subcommand produced: its artifact, the lines for standard output,
/// and whether every asserted identity held.
pub struct Outcome {
    pub artifact: Artifact,
    pub summary: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dunkl operator identities: commutativity, equivariance, sl2 triple,
    /// [y, x] formula, sigma sum, classical limit.
    DunklCheck(dunkl::DunklArgs),
    /// Verma modules: Gram matrices, singular vectors, rank one, type A quotients.
    Verma {
        #[command(subcommand)]
        mode: verma::VermaMode,
    },
    /// Support of L_c(triv) by stratum, or the finite-dimensionality table.
    Support(support::SupportArgs),
    /// Macdonald-Mehta integral by Monte Carlo against the Gamma product.
    Mm(mehta::MmArgs),
    /// Calogero-Moser trajectory, spectral against direct integration.
    CmSim(calogero::CmSimArgs),
    /// Calogero-Moser space checks: flows, necklace and coordinate brackets.
    CmCheck(calogero::CmCheckArgs),
    /// Hecke algebras: relations, rewriting, classical specialization.
    Hecke {
        #[command(subcommand)]
        mode: hecke::HeckeMode,
    },
    /// KZ monodromy of a simple reflection and the Hecke relations.
    Kz(hecke::KzArgs),
    /// Poincare polynomial and degrees of a group.
    Poincare(poincare::PoincareArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::DunklCheck(_) => "dunkl-check",
            Command::Verma { .. } => "verma",
            Command::Support(_) => "support",
            Command::Mm(_) => "mm",
            Command::CmSim(_) => "cm-sim",
            Command::CmCheck(_) => "cm-check",
            Command::Hecke { .. } => "hecke",
            Command::Kz(_) => "kz",
            Command::Poincare(_) => "poincare",
        }
    }

    /// Extension of the artifact this command writes.
    pub fn extension(&self) -> &'static str {
        match self {
            Command::Support(_) | Command::CmSim(_) => "csv",
            _ => "jsonl",
        }
    }

    pub fn run(&self) -> Result<Outcome, CliError> {
        match self {
            Command::DunklCheck(a) => dunkl::run(a),
            Command::Verma { mode } => verma::run(mode),
            Command::Support(a) => support::run(a),
            Command::Mm(a) => mehta::run(a),
            Command::CmSim(a) => calogero::run_sim(a),
            Command::CmCheck(a) => calogero::run_check(a),
            Command::Hecke { mode } => hecke::run(mode),
            Command::Kz(a) => hecke::run_kz(a),
            Command::Poincare(a) => poincare::run(a),
        }
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
