use thiserror::Error;

use crate::models::ModelKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unperturbed energy must be non-zero")]
    ZeroEnergy,

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("correction order must be at least {min}, got {order}")]
    InvalidOrder { order: usize, min: usize },

    #[error("|alpha W| = {coupling} exceeds |E| = {energy}: outside the convergence radius")]
    OutsideRadius { coupling: f64, energy: f64 },

    #[error("alpha = {alpha} exceeds the convergence bound {bound} of level n = {level}")]
    LevelOutsideRadius { level: u32, alpha: f64, bound: f64 },

    #[error("quantum number n = {n} is not valid for the {model} model")]
    InvalidQuantumNumber { model: ModelKind, n: u32 },

    #[error("orbital quantum number l = {l} must be below n = {n}")]
    InvalidOrbital { n: u32, l: u32 },

    #[error("the {0} model is not discretized by the spectral oracle")]
    UnsupportedModel(ModelKind),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("matrix dimension {dim} exceeds the dense limit {limit}")]
    TooLarge { dim: usize, limit: usize },

    #[error("requested {requested} eigenvalues from a matrix of dimension {dim}")]
    TooManyEigenvalues { requested: usize, dim: usize },

    #[error("eigenvalue iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
