//! Fortet's fixed-point formulation of the Schrödinger system.
//!
//! For a potential `u` over the source space,
//!
//! ```text
//! Ψ[u](y) = Σ_x p(x, y) u(x)⁻¹ μ(x)
//! Φ[u](x) = Σ_y p(x, y) Ψ[u](y)⁻¹ ν(y)
//! ```
//!
//! and a positive finite solution of `u = Φ[u]` yields the solution measures
//! `a = μ/u`, `b = ν/Ψ[u]`. Both maps are evaluated over `[0, ∞]` with the
//! conventions of [`crate::extnum`].

mod scheme;
mod sinkhorn;
mod solution;
mod twist;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extnum::{inv_ext, Compensated, ExtError, ExtReal, OVERFLOW_GUARD};
use crate::problem::{DenseMatrix, ReducedProblem};

pub use scheme::{
    iterate_truncated, solve_fortet, solve_fortet_observed, solve_untruncated, warm_ceiling, FixedPointResult,
    SchemeState, SolveOptions, Status, TraceRow,
};
pub use sinkhorn::{sinkhorn_baseline, SinkhornOutcome};
pub use solution::{extract_solution, relative_entropy, SchrodingerSolution};
pub use twist::{twist, untwist_solution};

/// Kernel dynamic range above which sums are evaluated in log-scaled form.
pub const LOG_DOMAIN_RATIO: f64 = 1e12;

#[derive(Debug, Error)]
pub enum FortetError {
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("non-finite intermediate: {what} is infinite at index {index}")]
    NonFiniteIntermediate { what: &'static str, index: usize },
    #[error("degenerate potential: {what} is {value} at index {index}")]
    DegeneratePotential {
        what: &'static str,
        index: usize,
        value: ExtReal,
    },
    #[error("no convergence after {iterations} iterations")]
    MaxIterExceeded {
        iterations: usize,
        trace: Box<Vec<TraceRow>>,
    },
    #[error("the kernel must be strictly positive for this method")]
    NonPositiveKernel,
    #[error(transparent)]
    Problem(#[from] crate::problem::ProblemError),
}

/// A potential over the source space, with values in `[0, ∞]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Potential(pub Vec<ExtReal>);

impl Potential {
    pub fn ones(n: usize) -> Self {
        Potential(vec![ExtReal::ONE; n])
    }

    pub fn zeros(n: usize) -> Self {
        Potential(vec![ExtReal::ZERO; n])
    }

    pub fn from_finite(values: &[f64]) -> Result<Self, FortetError> {
        values
            .iter()
            .map(|&v| ExtReal::new(v).map_err(FortetError::from))
            .collect::<Result<_, _>>()
            .map(Potential)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Finite values when every entry is finite.
    pub fn finite_values(&self) -> Option<Vec<f64>> {
        self.0.iter().map(|v| v.finite()).collect()
    }

    /// Finite values when every entry is finite and strictly positive.
    pub fn positive_values(&self) -> Option<Vec<f64>> {
        self.finite_values().filter(|v| v.iter().all(|&x| x > 0.0))
    }
}

impl From<Vec<ExtReal>> for Potential {
    fn from(v: Vec<ExtReal>) -> Self {
        Potential(v)
    }
}

struct WeightedKernel {
    /// `rows[k][l] = p · w_l` for output `k`, input `l`.
    weights: DenseMatrix,
    /// `ln(weights)`, present in log-scaled mode.
    logs: Option<DenseMatrix>,
}

impl WeightedKernel {
    fn new(weights: DenseMatrix, log_mode: bool) -> Self {
        let logs =
            log_mode.then(|| DenseMatrix::from_fn(weights.rows(), weights.cols(), |k, l| weights.get(k, l).ln()));
        WeightedKernel { weights, logs }
    }

    /// `Σ_l w[k][l] · g_l` over `[0, ∞]`.
    fn contract(&self, k: usize, g: &[ExtReal], log_g: &[f64]) -> Result<ExtReal, ExtError> {
        let row = self.weights.row(k);
        // structural infinity: positive weight against an infinite factor
        if row.iter().zip(g).any(|(&w, gl)| w > 0.0 && gl.is_inf()) {
            return Ok(ExtReal::Inf);
        }
        match &self.logs {
            None => {
                let mut acc = Compensated::default();
                for (&w, gl) in row.iter().zip(g) {
                    if w == 0.0 {
                        continue;
                    }
                    let term = w * gl.finite().unwrap_or_default();
                    if term > OVERFLOW_GUARD {
                        return Err(ExtError::Overflow(term));
                    }
                    acc.add(term);
                }
                ExtReal::new(acc.value())
            }
            Some(logs) => {
                let log_row = logs.row(k);
                let mut top = f64::NEG_INFINITY;
                for (l, &w) in row.iter().enumerate() {
                    if w > 0.0 && g[l] != ExtReal::ZERO {
                        top = top.max(log_row[l] + log_g[l]);
                    }
                }
                if top == f64::NEG_INFINITY {
                    return Ok(ExtReal::ZERO);
                }
                let mut acc = Compensated::default();
                for (l, &w) in row.iter().enumerate() {
                    if w > 0.0 && g[l] != ExtReal::ZERO {
                        acc.add((log_row[l] + log_g[l] - top).exp());
                    }
                }
                let log_total = top + acc.value().ln();
                if log_total > OVERFLOW_GUARD.ln() {
                    return Err(ExtError::Overflow(log_total.exp()));
                }
                ExtReal::new(top.exp() * acc.value())
            }
        }
    }
}

/// `Ψ` and `Φ` for a fixed reduced problem, with the weighted kernels
/// precomputed once.
pub struct FortetOperator<'a> {
    problem: &'a ReducedProblem,
    /// output y, input x: `p(x, y) μ(x)`
    psi_kernel: WeightedKernel,
    /// output x, input y: `p(x, y) ν(y)`
    phi_kernel: WeightedKernel,
    parallel: bool,
}

const PARALLEL_THRESHOLD: usize = 1 << 14;

fn log_of(g: &[ExtReal]) -> Vec<f64> {
    g.iter()
        .map(|v| match v {
            ExtReal::Finite(x) => x.ln(),
            ExtReal::Inf => f64::INFINITY,
        })
        .collect()
}

impl<'a> FortetOperator<'a> {
    pub fn new(problem: &'a ReducedProblem) -> Self {
        let p = problem.kernel();
        let log_mode = p.dynamic_range() > LOG_DOMAIN_RATIO;
        let mu = problem.mu();
        let nu = problem.nu();
        FortetOperator {
            problem,
            psi_kernel: WeightedKernel::new(
                DenseMatrix::from_fn(p.cols(), p.rows(), |j, i| p.get(i, j) * mu[i]),
                log_mode,
            ),
            phi_kernel: WeightedKernel::new(
                DenseMatrix::from_fn(p.rows(), p.cols(), |i, j| p.get(i, j) * nu[j]),
                log_mode,
            ),
            parallel: p.rows() * p.cols() >= PARALLEL_THRESHOLD,
        }
    }

    pub fn problem(&self) -> &'a ReducedProblem {
        self.problem
    }

    pub fn nx(&self) -> usize {
        self.problem.nx()
    }

    pub fn ny(&self) -> usize {
        self.problem.ny()
    }

    pub fn log_domain(&self) -> bool {
        self.psi_kernel.logs.is_some()
    }

    fn apply(&self, kernel: &WeightedKernel, input: &[ExtReal], outputs: usize) -> Result<Vec<ExtReal>, ExtError> {
        let inv: Vec<ExtReal> = input.iter().copied().map(inv_ext).collect();
        let log_inv = if kernel.logs.is_some() {
            log_of(&inv)
        } else {
            Vec::new()
        };
        if self.parallel {
            (0..outputs)
                .into_par_iter()
                .map(|k| kernel.contract(k, &inv, &log_inv))
                .collect()
        } else {
            (0..outputs).map(|k| kernel.contract(k, &inv, &log_inv)).collect()
        }
    }

    fn check_len(&self, u: &[ExtReal]) -> Result<(), FortetError> {
        if u.len() == self.nx() {
            Ok(())
        } else {
            Err(FortetError::InvalidPotential(format!(
                "potential has {} entries, source space has {}",
                u.len(),
                self.nx()
            )))
        }
    }

    /// `Ψ[u](y) = Σ_x p(x, y) u(x)⁻¹ μ(x)`.
    pub fn psi(&self, u: &[ExtReal]) -> Result<Vec<ExtReal>, FortetError> {
        self.check_len(u)?;
        let psi = self.apply(&self.psi_kernel, u, self.ny())?;
        // every column charges supp μ, so Ψ cannot vanish for finite u
        if u.iter().all(|v| v.is_finite()) {
            if let Some(j) = psi.iter().position(|v| v.is_zero()) {
                return Err(FortetError::DegeneratePotential {
                    what: "psi (underflow)",
                    index: j,
                    value: ExtReal::ZERO,
                });
            }
        }
        Ok(psi)
    }

    /// `Φ[u](x) = Σ_y p(x, y) Ψ[u](y)⁻¹ ν(y)`, given `Ψ[u]`.
    pub fn phi_from_psi(&self, psi: &[ExtReal]) -> Result<Vec<ExtReal>, FortetError> {
        Ok(self.apply(&self.phi_kernel, psi, self.nx())?)
    }

    /// The Fortet mapping `Φ[u]`.
    pub fn phi(&self, u: &[ExtReal]) -> Result<Vec<ExtReal>, FortetError> {
        let psi = self.psi(u)?;
        self.phi_from_psi(&psi)
    }

    /// `Σ_x (Φ[u](x)/u(x)) μ(x)`, which equals 1 for every positive finite `u`.
    pub fn normalization_check(&self, u: &[f64]) -> Result<f64, FortetError> {
        if let Some(i) = u.iter().position(|&v| !(v.is_finite() && v > 0.0)) {
            return Err(FortetError::InvalidPotential(format!(
                "u[{i}] = {} is not in (0, inf)",
                u[i]
            )));
        }
        let u_ext = Potential::from_finite(u)?.0;
        let psi = self.psi(&u_ext)?;
        if let Some(j) = psi.iter().position(|v| v.is_inf()) {
            return Err(FortetError::NonFiniteIntermediate { what: "psi", index: j });
        }
        let phi = self.phi_from_psi(&psi)?;
        normalization_value(&phi, u, self.problem.mu())
    }

    /// Both sides of `Σ_{Φ[u]>0} (Φ[u]/u) μ = ν(Ψ[u] < ∞)`, valid for any
    /// `0 ≤ u` bounded by a ceiling with finite `Ψ`.
    pub fn generalized_normalization(&self, u: &[ExtReal]) -> Result<(ExtReal, f64), FortetError> {
        let psi = self.psi(u)?;
        let phi = self.phi_from_psi(&psi)?;
        let mut terms = Vec::with_capacity(u.len());
        for ((&p, &ui), &m) in phi.iter().zip(u).zip(self.problem.mu()) {
            if p.is_zero() {
                continue;
            }
            let ratio = match (p, ui) {
                (ExtReal::Inf, _) | (_, ExtReal::Finite(0.0)) => ExtReal::Inf,
                (ExtReal::Finite(_), ExtReal::Inf) => ExtReal::ZERO,
                (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::new(a / b)?,
            };
            terms.push(crate::extnum::mul_ext(m, ratio)?);
        }
        let lhs = crate::extnum::sum_ext(terms)?;
        let mut rhs = Compensated::default();
        for (p, &n) in psi.iter().zip(self.problem.nu()) {
            if p.is_finite() {
                rhs.add(n);
            }
        }
        Ok((lhs, rhs.value()))
    }
}

pub(crate) fn normalization_value(phi: &[ExtReal], u: &[f64], mu: &[f64]) -> Result<f64, FortetError> {
    let mut acc = Compensated::default();
    for (i, (p, (&ui, &m))) in phi.iter().zip(u.iter().zip(mu)).enumerate() {
        match p {
            ExtReal::Inf => return Err(FortetError::NonFiniteIntermediate { what: "phi", index: i }),
            ExtReal::Finite(p) => acc.add(p / ui * m),
        }
    }
    Ok(acc.value())
}

/// `Ψ[u]` for a one-off evaluation.
pub fn psi(problem: &ReducedProblem, u: &Potential) -> Result<Vec<ExtReal>, FortetError> {
    FortetOperator::new(problem).psi(&u.0)
}

/// `Φ[u]` for a one-off evaluation.
pub fn phi(problem: &ReducedProblem, u: &Potential) -> Result<Vec<ExtReal>, FortetError> {
    FortetOperator::new(problem).phi(&u.0)
}

pub fn normalization_check(problem: &ReducedProblem, u: &[f64]) -> Result<f64, FortetError> {
    FortetOperator::new(problem).normalization_check(u)
}
