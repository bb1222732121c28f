use serde::{Deserialize, Serialize};

use super::{FortetError, FortetOperator, Potential};
use crate::extnum::{Compensated, ExtReal};
use crate::problem::{DenseMatrix, ReducedProblem};

/// Solution measures `a`, `b` and the coupling `π_ij = a_i P_ij b_j`, with
/// `Σ a = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchrodingerSolution {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub pi: DenseMatrix,
    pub marginal_err_x: f64,
    pub marginal_err_y: f64,
    pub rel_entropy: f64,
}

impl SchrodingerSolution {
    /// Builds the solution from unnormalized positive scalings.
    pub(crate) fn assemble(problem: &ReducedProblem, mut a: Vec<f64>, mut b: Vec<f64>) -> Self {
        let kappa: f64 = {
            let mut acc = Compensated::default();
            a.iter().for_each(|&x| acc.add(x));
            acc.value()
        };
        a.iter_mut().for_each(|x| *x /= kappa);
        b.iter_mut().for_each(|x| *x *= kappa);
        let p = problem.kernel();
        let pi = DenseMatrix::from_fn(p.rows(), p.cols(), |i, j| a[i] * p.get(i, j) * b[j]);
        let (marginal_err_x, marginal_err_y) = marginal_errors(&pi, problem.mu(), problem.nu());
        let rel_entropy = relative_entropy(&pi, p, problem.x_weights(), problem.y_weights());
        SchrodingerSolution {
            a,
            b,
            pi,
            marginal_err_x,
            marginal_err_y,
            rel_entropy,
        }
    }

    pub fn max_marginal_error(&self) -> f64 {
        self.marginal_err_x.max(self.marginal_err_y)
    }
}

fn marginal_errors(pi: &DenseMatrix, mu: &[f64], nu: &[f64]) -> (f64, f64) {
    let mut cols = vec![Compensated::default(); pi.cols()];
    let mut err_x = 0.0f64;
    for (i, &m) in mu.iter().enumerate() {
        let mut row = Compensated::default();
        for (j, &v) in pi.row(i).iter().enumerate() {
            row.add(v);
            cols[j].add(v);
        }
        err_x = err_x.max((row.value() - m).abs());
    }
    let err_y = cols
        .iter()
        .zip(nu)
        .map(|(c, &n)| (c.value() - n).abs())
        .fold(0.0, f64::max);
    (err_x, err_y)
}

/// `Σ_{π_ij>0} π_ij ln(π_ij / (P_ij m_i n_j))`.
pub fn relative_entropy(pi: &DenseMatrix, kernel: &DenseMatrix, m: &[f64], n: &[f64]) -> f64 {
    let mut acc = Compensated::default();
    for i in 0..pi.rows() {
        for j in 0..pi.cols() {
            let v = pi.get(i, j);
            if v > 0.0 {
                acc.add(v * (v.ln() - kernel.get(i, j).ln() - m[i].ln() - n[j].ln()));
            }
        }
    }
    acc.value()
}

/// `a = μ/u`, `b = ν/Ψ[u]`, normalized so that `Σ a = 1`.
pub fn extract_solution(op: &FortetOperator<'_>, u_star: &Potential) -> Result<SchrodingerSolution, FortetError> {
    for (i, &v) in u_star.0.iter().enumerate() {
        if v.is_zero() || v.is_inf() {
            return Err(FortetError::DegeneratePotential {
                what: "u",
                index: i,
                value: v,
            });
        }
    }
    let psi = match op.psi(&u_star.0) {
        Err(FortetError::DegeneratePotential { index, .. }) => {
            return Err(FortetError::DegeneratePotential {
                what: "psi",
                index,
                value: ExtReal::ZERO,
            })
        }
        other => other?,
    };
    for (j, &v) in psi.iter().enumerate() {
        if v.is_zero() || v.is_inf() {
            return Err(FortetError::DegeneratePotential {
                what: "psi",
                index: j,
                value: v,
            });
        }
    }
    let problem = op.problem();
    let a = problem
        .mu()
        .iter()
        .zip(&u_star.0)
        .map(|(m, u)| m / u.to_f64())
        .collect();
    let b = problem.nu().iter().zip(&psi).map(|(n, p)| n / p.to_f64()).collect();
    Ok(SchrodingerSolution::assemble(problem, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fortet::{solve_fortet, SolveOptions};
    use crate::problem::{validate_reduction, DiscreteProblem, DiscreteSpace, Kernel};

    #[test]
    fn independent_coupling_has_zero_entropy() {
        let space = DiscreteSpace::new(vec![vec![0.0], vec![1.0]], vec![0.5, 0.5]).unwrap();
        let p = DiscreteProblem::new(
            space.clone(),
            space,
            vec![0.5, 0.5],
            vec![0.5, 0.5],
            Kernel::dense(vec![vec![1.0; 2]; 2]),
        )
        .unwrap();
        let r = validate_reduction(&p).unwrap();
        let op = FortetOperator::new(&r);
        let s = extract_solution(&op, &Potential::ones(2)).unwrap();
        assert!(s.pi.as_slice().iter().all(|&v| (v - 0.25).abs() < 1e-16));
        assert_eq!(s.marginal_err_x, 0.0);
        assert_eq!(s.marginal_err_y, 0.0);
        assert!(s.rel_entropy.abs() < 1e-15);
        assert!((s.a.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_coupling_entropy_is_ln_two() {
        let pi = DenseMatrix::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        let k = DenseMatrix::from_rows(&vec![vec![1.0; 2]; 2]).unwrap();
        let h = relative_entropy(&pi, &k, &[0.5, 0.5], &[0.5, 0.5]);
        assert!((h - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn worked_fixed_point_has_small_residuals() {
        let p = validate_reduction(
            &DiscreteProblem::from_matrix(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.5, 0.5], vec![0.5, 0.5])
                .unwrap(),
        )
        .unwrap();
        let op = FortetOperator::new(&p);
        let r = solve_fortet(
            &op,
            None,
            &SolveOptions {
                tol: 1e-14,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        let s = extract_solution(&op, &r.u_star).unwrap();
        assert!(s.marginal_err_x <= 1e-12 && s.marginal_err_y <= 1e-12, "{s:?}");
        // scale invariance of the coupling
        let scaled = Potential(r.u_star.0.iter().map(|v| ExtReal::Finite(v.to_f64() * 7.5)).collect());
        let t = extract_solution(&op, &scaled).unwrap();
        for (x, y) in s.pi.as_slice().iter().zip(t.pi.as_slice()) {
            assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn zero_potential_is_degenerate() {
        let p = validate_reduction(
            &DiscreteProblem::from_matrix(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.5, 0.5], vec![0.5, 0.5])
                .unwrap(),
        )
        .unwrap();
        let op = FortetOperator::new(&p);
        let u = Potential(vec![ExtReal::ZERO, ExtReal::ONE]);
        assert!(matches!(
            extract_solution(&op, &u),
            Err(FortetError::DegeneratePotential {
                what: "u",
                index: 0,
                ..
            })
        ));
    }
}
