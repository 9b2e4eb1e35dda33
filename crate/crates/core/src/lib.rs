//! Numerical library for two mu-synthesis domains in C^7 and C^5, the
//! tetrablock and the symmetrized bidisc: rational-function membership
//! tests with independent oracles, structured-singular-value estimation,
//! distinguished-boundary-candidate tests, operator-tuple classification,
//! fundamental-equation solving, constructive model builders and Wold
//! decomposition, all at matrix desk scale.

pub mod cmatrix;
pub mod membership;
pub mod boundary;
pub mod models;
pub mod mu;
pub mod random;
pub mod sample;
pub mod tuples;
pub mod verify;
pub mod oracle;
pub mod point;
pub mod psi;
pub mod config;
pub mod error;
pub mod linalg;
pub mod par;

pub use cmatrix::CMatrix;
pub use config::ToleranceConfig;
pub use error::{Error, Result};
