pub mod certify;
pub mod classify;
pub mod crossing;
pub mod derivative;
pub mod effective;
pub mod lambda;
pub mod series;
pub mod sweep;
pub mod validate;

use crate::CliError;

pub(crate) fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Usage(format!("--{name} must be finite")))
    }
}
