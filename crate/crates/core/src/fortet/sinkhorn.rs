//! Alternating scaling (IPF) on a strictly positive kernel, kept independent
//! of the Fortet operator so the two can check each other.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FortetError, SchrodingerSolution};
use crate::problem::{DenseMatrix, ReducedProblem};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SinkhornOutcome {
    pub solution: SchrodingerSolution,
    pub iterations: usize,
    /// `u = μ/a`, the Fortet potential implied by the scalings.
    pub potential: Vec<f64>,
}

fn mat_vec(p: &DenseMatrix, v: &[f64]) -> Vec<f64> {
    let row = |i: usize| p.row(i).iter().zip(v).map(|(x, y)| x * y).sum::<f64>();
    if p.rows() * p.cols() >= 1 << 14 {
        (0..p.rows()).into_par_iter().map(row).collect()
    } else {
        (0..p.rows()).map(row).collect()
    }
}

/// Alternates `b ← ν / Pᵀa`, `a ← μ / P b` until the row marginal matches
/// `μ` to relative accuracy `tol`.
pub fn sinkhorn_baseline(problem: &ReducedProblem, tol: f64, max_iter: usize) -> Result<SinkhornOutcome, FortetError> {
    let p = problem.kernel();
    if !p.is_strictly_positive() {
        return Err(FortetError::NonPositiveKernel);
    }
    let pt = p.transpose();
    let (mu, nu) = (problem.mu(), problem.nu());
    let mut a = vec![1.0; problem.nx()];
    let mut b;
    let mut iterations = 0;
    loop {
        iterations += 1;
        b = nu.iter().zip(mat_vec(&pt, &a)).map(|(n, s)| n / s).collect::<Vec<_>>();
        let pb = mat_vec(p, &b);
        let err = a
            .iter()
            .zip(&pb)
            .zip(mu)
            .map(|((x, s), m)| (x * s / m - 1.0).abs())
            .fold(0.0, f64::max);
        a = mu.iter().zip(&pb).map(|(m, s)| m / s).collect();
        if let Some(i) = a.iter().chain(&b).position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(FortetError::NonFiniteIntermediate {
                what: "sinkhorn scaling",
                index: i,
            });
        }
        if err <= tol {
            break;
        }
        if iterations >= max_iter {
            return Err(FortetError::MaxIterExceeded {
                iterations,
                trace: Box::default(),
            });
        }
    }
    // refresh b so that both scalings come from the same final sweep
    b = nu.iter().zip(mat_vec(&pt, &a)).map(|(n, s)| n / s).collect();
    let potential = mu.iter().zip(&a).map(|(m, x)| m / x).collect();
    Ok(SinkhornOutcome {
        solution: SchrodingerSolution::assemble(problem, a, b),
        iterations,
        potential,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{validate_reduction, DiscreteProblem};

    #[test]
    fn constant_kernel_gives_product_coupling() {
        let mu = vec![0.2, 0.3, 0.5];
        let nu = vec![0.1, 0.9];
        let p =
            validate_reduction(&DiscreteProblem::from_matrix(vec![vec![1.0; 2]; 3], mu.clone(), nu.clone()).unwrap())
                .unwrap();
        let s = sinkhorn_baseline(&p, 1e-14, 100).unwrap().solution;
        for i in 0..3 {
            for j in 0..2 {
                assert!((s.pi.get(i, j) - mu[i] * nu[j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_zero_entries() {
        let p = validate_reduction(
            &DiscreteProblem::from_matrix(vec![vec![1.0, 0.0], vec![1.0, 1.0]], vec![0.5, 0.5], vec![0.5, 0.5])
                .unwrap(),
        )
        .unwrap();
        assert!(matches!(
            sinkhorn_baseline(&p, 1e-10, 100),
            Err(FortetError::NonPositiveKernel)
        ));
    }

    #[test]
    fn max_iter_is_an_error() {
        let p = validate_reduction(
            &DiscreteProblem::from_matrix(vec![vec![1.0, 2.0], vec![3.0, 40.0]], vec![0.5, 0.5], vec![0.5, 0.5])
                .unwrap(),
        )
        .unwrap();
        assert!(matches!(
            sinkhorn_baseline(&p, 1e-15, 1),
            Err(FortetError::MaxIterExceeded { iterations: 1, .. })
        ));
    }
}
