//! Discrete Schrödinger system solver built on Fortet's fixed-point map.
//!
//! - [`extnum`]: arithmetic on `[0, ∞]`.
//! - [`problem`]: discrete problems, reduction and I/O.
//! - [`fortet`]: `Ψ`, `Φ`, the truncated and plain schemes, solution
//!   extraction, twisting and a Sinkhorn baseline.
//! - [`criteria`]: existence criteria with witnesses.
//! - [`gaussian`]: closed-form Gaussian calculus and grid generation.
//! - [`cli`]: the `schrodinger` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod criteria;
pub mod extnum;
pub mod fortet;
pub mod gaussian;
pub mod problem;

pub use extnum::{ExtError, ExtReal};
pub use fortet::{FortetError, FortetOperator, Potential, SchrodingerSolution, SolveOptions, Status};
pub use gaussian::{GaussianError, GaussianProblem};
pub use problem::{validate_reduction, DiscreteProblem, ProblemError, ReducedProblem};

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Fortet(#[from] FortetError),
    #[error(transparent)]
    Criteria(#[from] criteria::CriteriaError),
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
