//! Plasmon dispersion, de Broglie matter-wave instabilities and driven
//! pseudoforce field solutions for electron beams of arbitrary degeneracy.
//!
//! All quantities are dimensionless "plasmon units": energies in `E_p`,
//! wavenumbers in `k_p`, lengths in `1/k_p`, speeds in `v_p = ħk_p/m` and
//! temperatures in `T_p = E_p/k_B`. See [`model`] for the conventions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dispersion;
pub mod field;
pub mod lattice;
pub mod model;
pub mod oracle;
pub mod parallel;
pub mod pseudoforce;
pub mod specfun;
pub mod spectrum;

mod complex;

pub use num_complex::Complex64;

use thiserror::Error;

/// Any error raised by the library, tagged by the module that produced it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Specfun(#[from] specfun::SpecfunError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error(transparent)]
    Dispersion(#[from] dispersion::DispersionError),
    #[error(transparent)]
    Pseudoforce(#[from] pseudoforce::PseudoforceError),
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Field(#[from] field::FieldError),
}

impl Error {
    /// `module::Variant` name of the underlying error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Specfun(e) => e.name(),
            Error::Model(e) => e.name(),
            Error::Dispersion(e) => e.name(),
            Error::Pseudoforce(e) => e.name(),
            Error::Lattice(e) => e.name(),
            Error::Oracle(e) => e.name(),
            Error::Field(e) => e.name(),
        }
    }
}
