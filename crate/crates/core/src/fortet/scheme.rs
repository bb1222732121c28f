use serde::{Deserialize, Serialize};

use super::{FortetError, FortetOperator, Potential};
use crate::extnum::{Compensated, ExtError, ExtReal, OVERFLOW_GUARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ConvergedPositive,
    DegenerateZero,
    MaxIter,
    Divergent,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ConvergedPositive => "converged-positive",
            Status::DegenerateZero => "degenerate-zero",
            Status::MaxIter => "max-iter",
            Status::Divergent => "divergent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Relative level below which a decreasing `min Φ` is treated as zero.
    pub degenerate_cutoff: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-10,
            max_iter: 100_000,
            degenerate_cutoff: 1e-13,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<(), FortetError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(FortetError::InvalidPotential(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(FortetError::InvalidPotential("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// One row of the convergence trace, describing iterate `n` and `Φ` at it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub n: usize,
    pub min_u: ExtReal,
    pub max_u: ExtReal,
    /// Relative sup-norm change from iterate `n` to `n + 1`.
    pub residual: ExtReal,
    pub min_phi: ExtReal,
    /// `Σ μ Φ[u_n] / u_n`.
    pub normalization: ExtReal,
}

impl TraceRow {
    pub const CSV_HEADER: &'static str = "n,min_u,max_u,residual,min_phi,normalization";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.min_u, self.max_u, self.residual, self.min_phi, self.normalization
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointResult {
    pub u_star: Potential,
    pub iterations: usize,
    /// `‖u_* − min(Φ[u_*], U)‖_∞` (truncated) or `‖u_* − Φ[u_*]‖_∞` (untruncated).
    pub residual: ExtReal,
    pub rel_change: ExtReal,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub early_exit_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ceiling: Option<Vec<f64>>,
    /// Coordinates where rounding in `Φ` would have raised an iterate and the
    /// previous value was kept instead.
    #[serde(default)]
    pub monotone_clamps: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceRow>,
}

impl FixedPointResult {
    pub fn is_converged(&self) -> bool {
        self.status == Status::ConvergedPositive
    }

    pub fn require_converged(self) -> Result<FixedPointResult, FortetError> {
        match self.status {
            Status::MaxIter => Err(FortetError::MaxIterExceeded {
                iterations: self.iterations,
                trace: Box::new(self.trace),
            }),
            _ => Ok(self),
        }
    }

    /// Positive finite values of `u_*`, when available.
    pub fn positive_u(&self) -> Option<Vec<f64>> {
        self.u_star.positive_values()
    }
}

/// State of the truncated scheme at iterate `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeState {
    pub n: usize,
    pub u: Vec<f64>,
    pub ceiling: Vec<f64>,
    /// `Φ[u_{n-1}]`, empty for the initial state.
    pub phi_u: Vec<ExtReal>,
    pub early_exit_index: Option<usize>,
    pub monotone_clamps: usize,
}

impl SchemeState {
    /// `u_1 = U`.
    pub fn initial(ceiling: Vec<f64>) -> Result<Self, FortetError> {
        check_ceiling(&ceiling)?;
        Ok(SchemeState {
            n: 1,
            u: ceiling.clone(),
            ceiling,
            phi_u: Vec::new(),
            early_exit_index: None,
            monotone_clamps: 0,
        })
    }
}

fn check_ceiling(ceiling: &[f64]) -> Result<(), FortetError> {
    match ceiling.iter().position(|&v| !(v > 0.0 && v <= OVERFLOW_GUARD)) {
        Some(i) => Err(FortetError::InvalidPotential(format!(
            "ceiling U[{i}] = {} is not in (0, inf)",
            ceiling[i]
        ))),
        None => Ok(()),
    }
}

fn to_ext(u: &[f64]) -> Vec<ExtReal> {
    u.iter().map(|&v| ExtReal::Finite(v)).collect()
}

/// One step `u_{n+1} = max(U/(n+1), min(Φ[u_n], U))`.
///
/// The result is additionally capped by `u_n`; in exact arithmetic the cap
/// never binds, in floating point it absorbs last-ulp noise near the fixed
/// point.
pub fn iterate_truncated(state: &SchemeState, op: &FortetOperator<'_>) -> Result<SchemeState, FortetError> {
    let nx = op.nx();
    if state.u.len() != nx || state.ceiling.len() != nx {
        return Err(FortetError::InvalidPotential(format!(
            "state has {} / {} entries, source space has {nx}",
            state.u.len(),
            state.ceiling.len()
        )));
    }
    let phi = op.phi(&to_ext(&state.u))?;
    let next_n = state.n + 1;
    let mut clamps = state.monotone_clamps;
    let mut below_ceiling = true;
    let u = phi
        .iter()
        .zip(&state.ceiling)
        .zip(&state.u)
        .map(|((&p, &cap), &prev)| {
            let top = match p {
                ExtReal::Finite(v) if v <= cap => v,
                _ => {
                    below_ceiling = false;
                    cap
                }
            };
            let value = top.max(cap / next_n as f64);
            if value > prev {
                clamps += 1;
                prev
            } else {
                value
            }
        })
        .collect();
    let early_exit_index = state.early_exit_index.or(below_ceiling.then_some(state.n));
    Ok(SchemeState {
        n: next_n,
        u,
        ceiling: state.ceiling.clone(),
        phi_u: phi,
        early_exit_index,
        monotone_clamps: clamps,
    })
}

fn extremes(values: impl Iterator<Item = ExtReal>) -> (ExtReal, ExtReal) {
    values.fold((ExtReal::INF, ExtReal::ZERO), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Relative sup-norm change; a change away from zero is infinite.
fn relative_change(prev: &[ExtReal], next: &[ExtReal]) -> ExtReal {
    let mut worst = 0.0f64;
    for (&a, &b) in prev.iter().zip(next) {
        match (a, b) {
            (ExtReal::Finite(x), ExtReal::Finite(y)) if x > 0.0 => worst = worst.max((y - x).abs() / x),
            (x, y) if x == y => {}
            _ => return ExtReal::INF,
        }
    }
    ExtReal::Finite(worst)
}

fn generalized_ratio_sum(phi: &[ExtReal], u: &[ExtReal], mu: &[f64]) -> ExtReal {
    let mut acc = Compensated::default();
    for ((&p, &ui), &m) in phi.iter().zip(u).zip(mu) {
        match (p, ui) {
            (ExtReal::Finite(0.0), _) => {}
            (ExtReal::Finite(p), ExtReal::Finite(x)) if x > 0.0 => acc.add(p / x * m),
            (ExtReal::Finite(_), ExtReal::Inf) => {}
            _ => return ExtReal::INF,
        }
    }
    ExtReal::new(acc.value()).unwrap_or(ExtReal::INF)
}

/// Runs the truncated scheme from `u_1 = U` (default `U ≡ 1`).
pub fn solve_fortet(
    op: &FortetOperator<'_>,
    ceiling: Option<&[f64]>,
    opts: &SolveOptions,
) -> Result<FixedPointResult, FortetError> {
    solve_fortet_observed(op, ceiling, opts, |_| {})
}

/// [`solve_fortet`] with a callback invoked on every new iterate.
pub fn solve_fortet_observed(
    op: &FortetOperator<'_>,
    ceiling: Option<&[f64]>,
    opts: &SolveOptions,
    mut observer: impl FnMut(&SchemeState),
) -> Result<FixedPointResult, FortetError> {
    opts.validate()?;
    let ceiling = ceiling.map_or_else(|| vec![1.0; op.nx()], <[f64]>::to_vec);
    if ceiling.len() != op.nx() {
        return Err(FortetError::InvalidPotential(format!(
            "ceiling has {} entries, source space has {}",
            ceiling.len(),
            op.nx()
        )));
    }
    let mu = op.problem().mu();
    let min_ceiling = ceiling.iter().copied().fold(f64::INFINITY, f64::min);
    let positive_kernel = op.problem().is_positive();
    let mut state = SchemeState::initial(ceiling)?;
    observer(&state);
    let mut trace = Vec::new();
    let mut prev_min_phi = ExtReal::INF;
    let mut status = Status::MaxIter;
    let mut rel_change = ExtReal::INF;

    for _ in 0..opts.max_iter {
        let next = iterate_truncated(&state, op)?;
        let (min_phi, max_phi) = extremes(next.phi_u.iter().copied());
        let (min_u, max_u) = extremes(state.u.iter().map(|&v| ExtReal::Finite(v)));
        let prev_u = to_ext(&state.u);
        rel_change = relative_change(&prev_u, &to_ext(&next.u));
        trace.push(TraceRow {
            n: state.n,
            min_u,
            max_u,
            residual: rel_change,
            min_phi,
            normalization: generalized_ratio_sum(&next.phi_u, &prev_u, mu),
        });
        observer(&next);
        let degenerate = min_phi < ExtReal::Finite(opts.degenerate_cutoff * min_ceiling) && min_phi < prev_min_phi;
        prev_min_phi = min_phi;
        state = next;
        if degenerate {
            if positive_kernel {
                debug_assert_eq!(min_phi.is_zero(), max_phi.is_zero());
            }
            status = Status::DegenerateZero;
            break;
        }
        if rel_change <= ExtReal::Finite(opts.tol) {
            status = Status::ConvergedPositive;
            break;
        }
    }

    let u_ext = to_ext(&state.u);
    let phi = op.phi(&u_ext)?;
    let residual = phi
        .iter()
        .zip(&state.ceiling)
        .zip(&state.u)
        .map(|((&p, &cap), &u)| (u - p.min(ExtReal::Finite(cap)).to_f64()).abs())
        .fold(0.0, f64::max);
    Ok(FixedPointResult {
        u_star: Potential(u_ext),
        iterations: state.n - 1,
        residual: ExtReal::Finite(residual),
        rel_change,
        status,
        early_exit_index: state.early_exit_index,
        ceiling: Some(state.ceiling),
        monotone_clamps: state.monotone_clamps,
        trace,
    })
}

/// Plain iteration `ũ_{n+1} = Φ[ũ_n]` from `u1`.
pub fn solve_untruncated(
    op: &FortetOperator<'_>,
    u1: &Potential,
    opts: &SolveOptions,
) -> Result<FixedPointResult, FortetError> {
    opts.validate()?;
    if u1.len() != op.nx() {
        return Err(FortetError::InvalidPotential(format!(
            "initial potential has {} entries, source space has {}",
            u1.len(),
            op.nx()
        )));
    }
    let mu = op.problem().mu();
    let scale =
        u1.0.iter()
            .filter_map(|v| v.finite())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
    let mut u = u1.0.clone();
    let mut trace = Vec::new();
    let mut prev_min_phi = ExtReal::INF;
    let mut status = Status::MaxIter;
    let mut rel_change = ExtReal::INF;
    let mut n = 1;

    while n <= opts.max_iter {
        let phi = match op.phi(&u) {
            Ok(phi) => phi,
            Err(FortetError::Ext(ExtError::Overflow(_))) => {
                status = Status::Divergent;
                break;
            }
            Err(e) => return Err(e),
        };
        let (min_phi, max_phi) = extremes(phi.iter().copied());
        let (min_u, max_u) = extremes(u.iter().copied());
        rel_change = relative_change(&u, &phi);
        trace.push(TraceRow {
            n,
            min_u,
            max_u,
            residual: rel_change,
            min_phi,
            normalization: generalized_ratio_sum(&phi, &u, mu),
        });
        n += 1;
        if max_phi.is_inf() {
            u = phi;
            status = Status::Divergent;
            break;
        }
        let degenerate =
            max_phi.is_zero() || (min_phi < ExtReal::Finite(opts.degenerate_cutoff * scale) && min_phi < prev_min_phi);
        prev_min_phi = min_phi;
        u = phi;
        if degenerate {
            status = Status::DegenerateZero;
            break;
        }
        if rel_change <= ExtReal::Finite(opts.tol) {
            status = Status::ConvergedPositive;
            break;
        }
    }

    let residual = match status {
        Status::Divergent => ExtReal::INF,
        _ => match op.phi(&u) {
            Ok(phi) => {
                let mut worst = 0.0f64;
                let mut infinite = false;
                for (&p, &x) in phi.iter().zip(&u) {
                    match (p, x) {
                        (ExtReal::Finite(a), ExtReal::Finite(b)) => worst = worst.max((a - b).abs()),
                        _ => infinite = true,
                    }
                }
                if infinite {
                    ExtReal::INF
                } else {
                    ExtReal::Finite(worst)
                }
            }
            Err(_) => ExtReal::INF,
        },
    };
    Ok(FixedPointResult {
        u_star: Potential(u),
        iterations: n - 1,
        residual,
        rel_change,
        status,
        early_exit_index: None,
        ceiling: None,
        monotone_clamps: 0,
        trace,
    })
}

/// A ceiling close to the fixed-point direction, obtained by untruncated
/// iterations from `1` rescaled to unit maximum, stopped once the log-ratio
/// spread of `Φ[u]/u` falls below `tol`. Returned with maximum 1.
pub fn warm_ceiling(op: &FortetOperator<'_>, tol: f64, max_steps: usize) -> Result<Vec<f64>, FortetError> {
    let mut u = vec![1.0; op.nx()];
    for _ in 0..max_steps {
        let phi = op.phi(&to_ext(&u))?;
        let phi: Vec<f64> = phi
            .iter()
            .enumerate()
            .map(|(i, p)| {
                p.finite()
                    .ok_or(FortetError::NonFiniteIntermediate { what: "phi", index: i })
            })
            .collect::<Result<_, _>>()?;
        let (lo, hi) = phi
            .iter()
            .zip(&u)
            .map(|(p, x)| (p / x).ln())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r), hi.max(r)));
        let top = phi.iter().copied().fold(0.0, f64::max);
        if !(top > 0.0) {
            return Err(FortetError::DegeneratePotential {
                what: "phi",
                index: 0,
                value: ExtReal::ZERO,
            });
        }
        u = phi.iter().map(|p| (p / top).max(f64::MIN_POSITIVE)).collect();
        if hi - lo <= tol {
            break;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{validate_reduction, DiscreteProblem, ReducedProblem};

    fn reduced(entries: Vec<Vec<f64>>, mu: Vec<f64>, nu: Vec<f64>) -> ReducedProblem {
        validate_reduction(&DiscreteProblem::from_matrix(entries, mu, nu).unwrap()).unwrap()
    }

    fn worked() -> ReducedProblem {
        reduced(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.5, 0.5], vec![0.5, 0.5])
    }

    #[test]
    fn first_truncated_step_matches_hand_values() {
        let p = worked();
        let op = FortetOperator::new(&p);
        let s1 = SchemeState::initial(vec![1.0, 1.0]).unwrap();
        let s2 = iterate_truncated(&s1, &op).unwrap();
        assert_eq!(s2.n, 2);
        // Ψ = (2, 3); Φ = (0.5/2 + 1/3, 1.5/2 + 2/3)
        assert!((s2.u[0] - (0.25 + 1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(s2.u[1], 1.0);
        assert!((s2.phi_u[1].to_f64() - (0.75 + 2.0 / 3.0)).abs() < 1e-15);
        assert_eq!(s2.early_exit_index, None);
    }

    #[test]
    fn floor_binds_when_phi_is_small() {
        // a tiny second row pushes Φ_1 below U/2
        let p = reduced(vec![vec![1.0, 1.0], vec![1e-3, 1e-3]], vec![0.5, 0.5], vec![0.5, 0.5]);
        let op = FortetOperator::new(&p);
        let s2 = iterate_truncated(&SchemeState::initial(vec![1.0, 1.0]).unwrap(), &op).unwrap();
        assert_eq!(s2.u[1], 0.5);
    }

    #[test]
    fn constant_kernel_is_fixed_immediately() {
        let p = reduced(vec![vec![1.0; 3]; 3], vec![0.2, 0.3, 0.5], vec![0.6, 0.2, 0.2]);
        let op = FortetOperator::new(&p);
        let r = solve_fortet(&op, None, &SolveOptions::default()).unwrap();
        assert_eq!(r.status, Status::ConvergedPositive);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.early_exit_index, Some(1));
        assert!(r.u_star.0.iter().all(|&v| v == ExtReal::ONE));
    }

    #[test]
    fn worked_problem_reaches_fixed_point() {
        let p = worked();
        let op = FortetOperator::new(&p);
        let opts = SolveOptions {
            tol: 1e-14,
            ..SolveOptions::default()
        };
        let r = solve_fortet(&op, None, &opts).unwrap();
        assert_eq!(r.status, Status::ConvergedPositive);
        assert!(r.residual.to_f64() <= 1e-12, "{:?}", r.residual);
        let u = r.positive_u().unwrap();
        assert!((op.normalization_check(&u).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn untruncated_agrees_up_to_scale() {
        let p = worked();
        let op = FortetOperator::new(&p);
        let opts = SolveOptions {
            tol: 1e-14,
            ..SolveOptions::default()
        };
        let a = solve_fortet(&op, None, &opts).unwrap().positive_u().unwrap();
        let r = solve_untruncated(&op, &Potential::ones(2), &opts).unwrap();
        assert_eq!(r.status, Status::ConvergedPositive);
        let b = r.positive_u().unwrap();
        assert!((a[1] / a[0] - b[1] / b[0]).abs() < 1e-10);
    }

    #[test]
    fn untruncated_from_zero_is_degenerate_at_once() {
        let p = worked();
        let op = FortetOperator::new(&p);
        let r = solve_untruncated(&op, &Potential::zeros(2), &SolveOptions::default()).unwrap();
        assert_eq!(r.status, Status::DegenerateZero);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn max_iter_status_and_error() {
        let p = worked();
        let op = FortetOperator::new(&p);
        let opts = SolveOptions {
            max_iter: 1,
            ..SolveOptions::default()
        };
        let r = solve_fortet(&op, None, &opts).unwrap();
        assert_eq!(r.status, Status::MaxIter);
        assert_eq!(r.trace.len(), 1);
        match r.require_converged() {
            Err(FortetError::MaxIterExceeded { iterations, trace }) => {
                assert_eq!(iterations, 1);
                assert_eq!(trace.len(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trace_csv_uses_inf_literal() {
        let row = TraceRow {
            n: 3,
            min_u: ExtReal::ZERO,
            max_u: ExtReal::ONE,
            residual: ExtReal::INF,
            min_phi: ExtReal::ZERO,
            normalization: ExtReal::ONE,
        };
        assert_eq!(row.csv_line(), "3,0,1,inf,0,1");
    }

    #[test]
    fn warm_ceiling_points_along_the_fixed_point() {
        let p = worked();
        let op = FortetOperator::new(&p);
        let w = warm_ceiling(&op, 1e-14, 1000).unwrap();
        let r = solve_fortet(
            &op,
            Some(&w),
            &SolveOptions {
                tol: 1e-14,
                ..SolveOptions::default()
            },
        )
        .unwrap();
        let u = r.positive_u().unwrap();
        assert!((u[1] / u[0] - w[1] / w[0]).abs() < 1e-10);
    }

    #[test]
    fn bad_ceiling_is_rejected() {
        let p = worked();
        let op = FortetOperator::new(&p);
        assert!(solve_fortet(&op, Some(&[1.0, 0.0]), &SolveOptions::default()).is_err());
        assert!(solve_fortet(&op, Some(&[1.0]), &SolveOptions::default()).is_err());
    }
}
