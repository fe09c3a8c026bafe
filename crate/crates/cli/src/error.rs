use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A flag value failed validation before any computation ran.
    #[error("invalid value for {flag}: {message}")]
    Invalid { flag: &'static str, message: String },
    #[error("computation failed [{}]: {}", .0.name(), .0)]
    Compute(#[from] plasmon_core::Error),
}

impl CliError {
    pub fn invalid(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Invalid {
            flag,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid { .. } => 2,
            CliError::Compute(_) => 3,
        }
    }
}

macro_rules! from_module_error {
    ($($ty:path),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Compute(e.into())
            }
        })*
    };
}

from_module_error!(
    plasmon_core::specfun::SpecfunError,
    plasmon_core::model::ModelError,
    plasmon_core::dispersion::DispersionError,
    plasmon_core::pseudoforce::PseudoforceError,
    plasmon_core::lattice::LatticeError,
    plasmon_core::oracle::OracleError,
    plasmon_core::field::FieldError
);
