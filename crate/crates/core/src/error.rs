//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a contraction: smallest eigenvalue of I - T*T is {min_eig}")]
    NotAContraction { min_eig: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("family does not commute: worst commutator norm {residual}")]
    NotCommuting { residual: f64 },

    #[error("operator is not normal: residual {residual}")]
    NotNormal { residual: f64 },

    #[error("denominator vanishes at parameter ({re}, {im})")]
    DenominatorVanishes { re: f64, im: f64 },

    #[error("resolvent factor is singular at z = ({re}, {im})")]
    ResolventSingular { re: f64, im: f64 },

    #[error("fundamental equation not solvable: mass {mass} outside the defect range")]
    NotSolvable { mass: f64 },

    #[error("subspace is not reducing: off-diagonal residual {residual}")]
    NotReducing { residual: f64 },

    #[error("invalid block unitary: {0}")]
    InvalidBlockUnitary(String),

    #[error("invalid model coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("unknown verification suite '{0}'")]
    UnknownSuite(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
