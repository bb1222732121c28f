use super::{FortetError, SchrodingerSolution};
use crate::extnum::Compensated;
use crate::problem::{kernel_matrix, DiscreteProblem, Kernel};

fn check_positive(name: &str, v: &[f64], len: usize) -> Result<(), FortetError> {
    if v.len() != len {
        return Err(FortetError::InvalidPotential(format!(
            "{name} has {} entries, expected {len}",
            v.len()
        )));
    }
    match v.iter().position(|x| !(x.is_finite() && *x > 0.0)) {
        Some(i) => Err(FortetError::InvalidPotential(format!(
            "{name}[{i}] = {} must be positive and finite",
            v[i]
        ))),
        None => Ok(()),
    }
}

/// The problem with kernel `α_i β_j P_ij`, materialized as a dense kernel.
pub fn twist(problem: &DiscreteProblem, alpha: &[f64], beta: &[f64]) -> Result<DiscreteProblem, FortetError> {
    check_positive("alpha", alpha, problem.nx())?;
    check_positive("beta", beta, problem.ny())?;
    let p = kernel_matrix(problem)?;
    let entries = (0..p.rows())
        .map(|i| p.row(i).iter().zip(beta).map(|(x, b)| alpha[i] * x * b).collect())
        .collect();
    let positive = matches!(
        problem.kernel,
        Kernel::Dense {
            assume_positive: true,
            ..
        }
    );
    Ok(DiscreteProblem {
        kernel: Kernel::Dense {
            entries,
            assume_positive: positive,
        },
        ..problem.clone()
    })
}

/// Maps a solution of the twisted problem back: `a = α ã`, `b = β b̃`,
/// renormalized to `Σ a = 1`. The coupling is unchanged and the entropy is
/// shifted to the original reference measure. `alpha` and `beta` are indexed
/// like the solution.
pub fn untwist_solution(
    solution: &SchrodingerSolution,
    alpha: &[f64],
    beta: &[f64],
) -> Result<SchrodingerSolution, FortetError> {
    check_positive("alpha", alpha, solution.a.len())?;
    check_positive("beta", beta, solution.b.len())?;
    let mut a: Vec<f64> = solution.a.iter().zip(alpha).map(|(x, y)| x * y).collect();
    let mut kappa = Compensated::default();
    a.iter().for_each(|&x| kappa.add(x));
    let kappa = kappa.value();
    a.iter_mut().for_each(|x| *x /= kappa);
    let b = solution.b.iter().zip(beta).map(|(x, y)| x * y * kappa).collect();

    let mut shift = Compensated::default();
    for (i, la) in alpha.iter().map(|x| x.ln()).enumerate() {
        for (j, lb) in beta.iter().map(|x| x.ln()).enumerate() {
            let v = solution.pi.get(i, j);
            if v > 0.0 {
                shift.add(v * (la + lb));
            }
        }
    }
    Ok(SchrodingerSolution {
        a,
        b,
        pi: solution.pi.clone(),
        rel_entropy: solution.rel_entropy + shift.value(),
        ..solution.clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fortet::{extract_solution, solve_fortet, FortetOperator, SolveOptions};
    use crate::problem::validate_reduction;

    fn solve(p: &DiscreteProblem) -> SchrodingerSolution {
        let r = validate_reduction(p).unwrap();
        let op = FortetOperator::new(&r);
        let opts = SolveOptions {
            tol: 1e-14,
            ..SolveOptions::default()
        };
        let fp = solve_fortet(&op, None, &opts).unwrap();
        extract_solution(&op, &fp.u_star).unwrap()
    }

    #[test]
    fn doubling_alpha_keeps_the_coupling() {
        let p =
            DiscreteProblem::from_matrix(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.5, 0.5], vec![0.5, 0.5]).unwrap();
        let base = solve(&p);
        let (alpha, beta) = ([2.0, 2.0], [1.0, 1.0]);
        let twisted = solve(&twist(&p, &alpha, &beta).unwrap());
        let back = untwist_solution(&twisted, &alpha, &beta).unwrap();
        for (x, y) in base.pi.as_slice().iter().zip(back.pi.as_slice()) {
            assert!((x - y).abs() <= 1e-12);
        }
        for (x, y) in base.a.iter().zip(&back.a) {
            assert!((x - y).abs() <= 1e-10);
        }
        assert!((base.rel_entropy - back.rel_entropy).abs() <= 1e-10);
    }

    #[test]
    fn unit_twist_is_identity() {
        let p =
            DiscreteProblem::from_matrix(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.5, 0.5], vec![0.5, 0.5]).unwrap();
        let t = twist(&p, &[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert_eq!(t, p);
    }

    #[test]
    fn rejects_nonpositive_factors() {
        let p =
            DiscreteProblem::from_matrix(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.5, 0.5], vec![0.5, 0.5]).unwrap();
        assert!(twist(&p, &[1.0, 0.0], &[1.0, 1.0]).is_err());
        assert!(twist(&p, &[1.0], &[1.0, 1.0]).is_err());
    }
}
