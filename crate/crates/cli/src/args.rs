//! Argument parsing shared by the subcommands.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::CliError;

/// Exact rational from `p/q` or an integer.
pub fn rational(s: &str) -> Result<BigRational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| format!("expected a rational p/q, got {s:?}"))
}

/// Apply `f` to every sweep point on the worker pool, keeping input order.
pub fn sweep<T, R, F>(items: &[T], f: F) -> Result<Vec<R>, CliError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R, CliError> + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Broadcast one value to every reflection class, or check the count.
pub fn per_class<T: Clone>(values: &[T], classes: usize, what: &str) -> Result<Vec<T>, CliError> {
    match values.len() {
        1 => Ok(vec![values[0].clone(); classes]),
        n if n == classes => Ok(values.to_vec()),
        n => Err(CliError::Config(format!(
            "{what}: expected 1 or {classes} values (one per reflection class), got {n}"
        ))),
    }
}

pub const WORKERS_ENV: &str = "CHEREDNIK_WORKERS";

/// Worker cap from the environment; `None` leaves rayon's default.
pub fn workers_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(WORKERS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}
