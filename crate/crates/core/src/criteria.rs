//! Checkable sufficient conditions for existence of a solution, each reported
//! with a witness or the index where it fails.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extnum::{Compensated, ExtReal, OVERFLOW_GUARD};
use crate::fortet::{FortetError, FortetOperator};
use crate::gaussian::MatrixCriterion;
use crate::problem::{Kernel, ReducedProblem};

/// Relative slack when comparing a dominated kernel value to its bound.
pub const DOMINATION_SLACK: f64 = 1e-12;
/// Violation tolerance for radial monotonicity, relative to the largest sample.
pub const RADIAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("precondition ({condition}) failed at {side} index {index}: {message}")]
    PreconditionFailed {
        condition: &'static str,
        side: &'static str,
        index: usize,
        message: String,
    },
    #[error("invalid criterion input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Fortet(#[from] FortetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotFiniteReason {
    /// A zero inner sum against positive mass.
    StructuralInf,
    /// The guarded sum exceeded the overflow guard.
    OverflowGuard,
    /// The integrand peaks on the edge of a grid truncating `ℝⁿ`.
    BoundaryDominated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eq29Verdict {
    pub finite: bool,
    pub value: ExtReal,
    /// Index of the largest term (finite) or of the offending term.
    pub index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<NotFiniteReason>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eq29Report {
    pub eq29_xy: Eq29Verdict,
    pub eq29_yx: Eq29Verdict,
}

/// `Σ_out [Σ_in p μ_in]⁻¹ ν_out` where `entry(out, inner)` reads the kernel.
fn eq29_direction(
    outputs: usize,
    inputs: usize,
    entry: impl Fn(usize, usize) -> f64,
    inner_mass: &[f64],
    outer_mass: &[f64],
    outer_weights: &[f64],
    outer_points: Option<&[Vec<f64>]>,
) -> Eq29Verdict {
    let mut total = Compensated::default();
    let mut best = (f64::NEG_INFINITY, 0usize);
    for out in 0..outputs {
        let mut inner = Compensated::default();
        for k in 0..inputs {
            inner.add(entry(out, k) * inner_mass[k]);
        }
        let s = inner.value();
        if s == 0.0 {
            return Eq29Verdict {
                finite: false,
                value: ExtReal::INF,
                index: out,
                reason: Some(NotFiniteReason::StructuralInf),
            };
        }
        let term = outer_mass[out] / s;
        if !(term <= OVERFLOW_GUARD) {
            return Eq29Verdict {
                finite: false,
                value: ExtReal::INF,
                index: out,
                reason: Some(NotFiniteReason::OverflowGuard),
            };
        }
        total.add(term);
        let density = term / outer_weights[out];
        if density > best.0 {
            best = (density, out);
        }
    }
    let value = total.value();
    if !(value <= OVERFLOW_GUARD) {
        return Eq29Verdict {
            finite: false,
            value: ExtReal::INF,
            index: best.1,
            reason: Some(NotFiniteReason::OverflowGuard),
        };
    }
    let boundary = outer_points.is_some_and(|pts| on_grid_boundary(pts, best.1));
    Eq29Verdict {
        finite: !boundary,
        value: ExtReal::Finite(value),
        index: best.1,
        reason: boundary.then_some(NotFiniteReason::BoundaryDominated),
    }
}

/// Whether point `k` attains the minimum or maximum of some coordinate.
fn on_grid_boundary(points: &[Vec<f64>], k: usize) -> bool {
    let dim = points[k].len();
    (0..dim).any(|d| {
        let (lo, hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p[d]), hi.max(p[d]))
        });
        points[k][d] == lo || points[k][d] == hi
    })
}

/// Both directions of the integral criterion. For Gaussian kernels the grid
/// is a truncation of `ℝⁿ`, and a sum whose integrand density peaks on the
/// grid edge is reported as not finite.
pub fn check_eq29(problem: &ReducedProblem) -> Eq29Report {
    let p = problem.kernel();
    let data = problem.problem();
    let geometric = matches!(data.kernel, Kernel::Gaussian { .. });
    let x_points = geometric.then_some(data.x_space.points.as_slice());
    let y_points = geometric.then_some(data.y_space.points.as_slice());
    Eq29Report {
        eq29_xy: eq29_direction(
            p.cols(),
            p.rows(),
            |j, i| p.get(i, j),
            problem.mu(),
            problem.nu(),
            problem.y_weights(),
            y_points,
        ),
        eq29_yx: eq29_direction(
            p.rows(),
            p.cols(),
            |i, j| p.get(i, j),
            problem.nu(),
            problem.mu(),
            problem.x_weights(),
            x_points,
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Continuity {
    DeclaredByKernelKind,
    AssertedNotChecked,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyp02Witness {
    pub k_indices: Vec<usize>,
    pub x_indices: Vec<usize>,
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyp02Violation {
    pub y_index: usize,
    /// `max_K p(·, y)` and the bound `Σ c_k p(x_k, y)` at the violation.
    pub dominated: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyp02Verdict {
    pub holds: bool,
    pub continuity: Continuity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Hyp02Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Hyp02Violation>,
}

fn continuity_of(problem: &ReducedProblem) -> Continuity {
    if problem.problem().kernel.continuous_by_construction() {
        Continuity::DeclaredByKernelKind
    } else {
        Continuity::AssertedNotChecked
    }
}

fn check_indices(name: &str, idx: &[usize], len: usize) -> Result<(), CriteriaError> {
    if idx.is_empty() {
        return Err(CriteriaError::InvalidInput(format!("{name} must be non-empty")));
    }
    match idx.iter().find(|&&i| i >= len) {
        Some(i) => Err(CriteriaError::InvalidInput(format!(
            "{name} index {i} out of range 0..{len}"
        ))),
        None => Ok(()),
    }
}

/// `max_{i∈K} p(x_i, y)` for every `y`.
fn dominated_profile(problem: &ReducedProblem, k_indices: &[usize]) -> Vec<f64> {
    let p = problem.kernel();
    (0..p.cols())
        .map(|j| k_indices.iter().map(|&i| p.get(i, j)).fold(0.0, f64::max))
        .collect()
}

fn first_violation(problem: &ReducedProblem, dominated: &[f64], x: &[usize], c: &[f64]) -> Option<Hyp02Violation> {
    let p = problem.kernel();
    (0..p.cols()).find_map(|j| {
        let bound: f64 = x.iter().zip(c).map(|(&k, &ck)| ck * p.get(k, j)).sum();
        (dominated[j] > bound * (1.0 + DOMINATION_SLACK)).then_some(Hyp02Violation {
            y_index: j,
            dominated: dominated[j],
            bound,
        })
    })
}

/// Verifies `max_{i∈K} p(x_i, y) ≤ Σ_k c_k p(x_k, y)` at every target point.
pub fn check_hyp02(
    problem: &ReducedProblem,
    k_indices: &[usize],
    x_indices: &[usize],
    coefficients: &[f64],
) -> Result<Hyp02Verdict, CriteriaError> {
    check_indices("K", k_indices, problem.nx())?;
    check_indices("x_j", x_indices, problem.nx())?;
    if coefficients.len() != x_indices.len() {
        return Err(CriteriaError::InvalidInput(format!(
            "{} coefficients for {} points",
            coefficients.len(),
            x_indices.len()
        )));
    }
    if let Some(c) = coefficients.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
        return Err(CriteriaError::InvalidInput(format!(
            "coefficient {c} must be positive and finite"
        )));
    }
    let dominated = dominated_profile(problem, k_indices);
    let violation = first_violation(problem, &dominated, x_indices, coefficients);
    Ok(Hyp02Verdict {
        holds: violation.is_none(),
        continuity: continuity_of(problem),
        witness: violation.is_none().then(|| Hyp02Witness {
            k_indices: k_indices.to_vec(),
            x_indices: x_indices.to_vec(),
            coefficients: coefficients.to_vec(),
        }),
        violation,
    })
}

/// Points of `K` attaining a coordinate extremum within `K`.
pub fn boundary_of(problem: &ReducedProblem, k_indices: &[usize]) -> Vec<usize> {
    let points = &problem.problem().x_space.points;
    let dim = points[k_indices[0]].len();
    let mut out = Vec::new();
    for d in 0..dim {
        let key = |i: &usize| points[*i][d];
        let lo = k_indices.iter().copied().min_by(|a, b| key(a).total_cmp(&key(b)));
        let hi = k_indices.iter().copied().max_by(|a, b| key(a).total_cmp(&key(b)));
        out.extend(lo);
        out.extend(hi);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Best-effort witness: scale uniform coefficients until every constraint
/// holds, then shrink one coefficient at a time (seeded order) to the least
/// feasible value. `x_indices` defaults to [`boundary_of`] `K`.
pub fn construct_hyp02_witness(
    problem: &ReducedProblem,
    k_indices: &[usize],
    x_indices: Option<&[usize]>,
    seed: u64,
) -> Result<Hyp02Verdict, CriteriaError> {
    check_indices("K", k_indices, problem.nx())?;
    let x: Vec<usize> = match x_indices {
        Some(x) => {
            check_indices("x_j", x, problem.nx())?;
            x.to_vec()
        }
        None => boundary_of(problem, k_indices),
    };
    let p = problem.kernel();
    let dominated = dominated_profile(problem, k_indices);
    let span: Vec<f64> = (0..p.cols()).map(|j| x.iter().map(|&k| p.get(k, j)).sum()).collect();
    let mut scale = 1.0f64;
    for (j, (&m, &s)) in dominated.iter().zip(&span).enumerate() {
        if m > 0.0 && s == 0.0 {
            return Ok(Hyp02Verdict {
                holds: false,
                continuity: continuity_of(problem),
                witness: None,
                violation: Some(Hyp02Violation {
                    y_index: j,
                    dominated: m,
                    bound: 0.0,
                }),
            });
        }
        if m > 0.0 {
            scale = scale.max(m / s);
        }
    }
    let mut c = vec![scale; x.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..x.len()).collect();
    for _ in 0..100 {
        order.shuffle(&mut rng);
        let mut moved = 0.0f64;
        for &k in &order {
            let mut need = 0.0f64;
            for j in 0..p.cols() {
                let pk = p.get(x[k], j);
                if pk == 0.0 {
                    continue;
                }
                let others: f64 = x
                    .iter()
                    .zip(&c)
                    .enumerate()
                    .filter(|&(l, _)| l != k)
                    .map(|(_, (&xl, &cl))| cl * p.get(xl, j))
                    .sum();
                need = need.max((dominated[j] - others) / pk);
            }
            let next = if need > 0.0 {
                need * (1.0 + 1e-13)
            } else {
                c[k] * f64::EPSILON
            };
            let next = next.min(c[k]);
            moved = moved.max((c[k] - next) / c[k]);
            c[k] = next;
        }
        if moved < 1e-9 {
            break;
        }
    }
    check_hyp02(problem, k_indices, &x, &c)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyp03Verdict {
    pub holds: bool,
    pub r: f64,
    pub x_o_index: usize,
    pub u_used: Vec<f64>,
    pub c: ExtReal,
    /// `log10 c`, kept when `c` exceeds the overflow guard.
    pub log10_c: f64,
    /// Source index attaining the maximum.
    pub argmax: usize,
}

/// `c = max_i Σ_j (p_ij/p_oj)^r p_oj Ψ[U]_j⁻¹ ν_j / U_i^r`, after checking
/// that `Ψ[U]` and `Φ[U]` are finite.
pub fn check_hyp03(problem: &ReducedProblem, u: &[ExtReal], r: f64, x_o: usize) -> Result<Hyp03Verdict, CriteriaError> {
    if !(r > 1.0 && r.is_finite()) {
        return Err(CriteriaError::InvalidInput(format!("r = {r} must exceed 1")));
    }
    check_indices("x_o", &[x_o], problem.nx())?;
    if u.len() != problem.nx() {
        return Err(CriteriaError::InvalidInput(format!(
            "U has {} entries, source space has {}",
            u.len(),
            problem.nx()
        )));
    }
    if let Some(i) = u.iter().position(|v| v.is_inf() || v.is_zero()) {
        return Err(CriteriaError::PreconditionFailed {
            condition: "b",
            side: "x",
            index: i,
            message: format!("U = {} is not positive and finite", u[i]),
        });
    }
    let op = FortetOperator::new(problem);
    let psi = op.psi(u)?;
    if let Some(j) = psi.iter().position(|v| v.is_inf()) {
        return Err(CriteriaError::PreconditionFailed {
            condition: "b",
            side: "y",
            index: j,
            message: "Psi[U] is infinite".into(),
        });
    }
    let phi = op.phi_from_psi(&psi)?;
    if let Some(i) = phi.iter().position(|v| v.is_inf()) {
        return Err(CriteriaError::PreconditionFailed {
            condition: "c",
            side: "x",
            index: i,
            message: "Phi[U] is infinite".into(),
        });
    }

    let p = problem.kernel();
    let nu = problem.nu();
    let mut best = (f64::NEG_INFINITY, 0usize);
    for i in 0..p.rows() {
        let log_u = u[i].to_f64().ln();
        let mut logs = Vec::with_capacity(p.cols());
        let mut infinite = false;
        for j in 0..p.cols() {
            let (pij, poj) = (p.get(i, j), p.get(x_o, j));
            if pij == 0.0 {
                continue;
            }
            if poj == 0.0 {
                infinite = true;
                break;
            }
            logs.push(r * pij.ln() + (1.0 - r) * poj.ln() - psi[j].to_f64().ln() + nu[j].ln() - r * log_u);
        }
        let log_ci = if infinite {
            f64::INFINITY
        } else {
            let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if top == f64::NEG_INFINITY {
                top
            } else {
                let mut acc = Compensated::default();
                logs.iter().for_each(|l| acc.add((l - top).exp()));
                top + acc.value().ln()
            }
        };
        if log_ci > best.0 {
            best = (log_ci, i);
        }
    }
    let finite = best.0 <= OVERFLOW_GUARD.ln();
    Ok(Hyp03Verdict {
        holds: finite,
        r,
        x_o_index: x_o,
        u_used: u.iter().map(|v| v.to_f64()).collect(),
        c: if finite {
            ExtReal::Finite(best.0.exp())
        } else {
            ExtReal::INF
        },
        log10_c: best.0 / std::f64::consts::LN_10,
        argmax: best.1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialVerdict {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_found: Option<f64>,
    /// Sample index of the last increase, when no candidate works.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<usize>,
}

/// Smallest candidate `L` beyond which the sampled profile is non-increasing.
pub fn check_radial(t: &[f64], theta: &[f64], l_grid: &[f64]) -> Result<RadialVerdict, CriteriaError> {
    if t.len() != theta.len() || t.len() < 2 {
        return Err(CriteriaError::InvalidInput(
            "need at least two (t, theta) samples".into(),
        ));
    }
    if t.windows(2).any(|w| !(w[1] > w[0])) || t[0] < 0.0 {
        return Err(CriteriaError::InvalidInput(
            "sample points must be nonnegative and increasing".into(),
        ));
    }
    if let Some(v) = theta.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(CriteriaError::InvalidInput(format!(
            "profile value {v} must be positive and finite"
        )));
    }
    let tol = RADIAL_TOLERANCE * theta.iter().copied().fold(0.0, f64::max);
    // last k with theta[k+1] > theta[k] + tol
    let last_increase = (0..t.len() - 1).rev().find(|&k| theta[k + 1] > theta[k] + tol);
    let Some(k) = last_increase else {
        let l = l_grid.iter().copied().fold(f64::INFINITY, f64::min);
        return Ok(RadialVerdict {
            holds: l.is_finite(),
            l_found: l.is_finite().then_some(l),
            violation: None,
        });
    };
    // monotone from sample k+1 on; L must exceed t[k]
    let l = l_grid
        .iter()
        .copied()
        .filter(|&l| l > t[k])
        .fold(f64::INFINITY, f64::min);
    Ok(RadialVerdict {
        holds: l.is_finite(),
        l_found: l.is_finite().then_some(l),
        violation: (!l.is_finite()).then_some(k + 1),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryBound {
    pub holds: bool,
    /// Smallest (positivity) or largest (boundedness) kernel entry.
    pub value: f64,
    pub row: usize,
    pub col: usize,
}

fn extreme_entry(problem: &ReducedProblem, largest: bool) -> (f64, usize, usize) {
    let p = problem.kernel();
    let mut best = (if largest { f64::NEG_INFINITY } else { f64::INFINITY }, 0, 0);
    for i in 0..p.rows() {
        for (j, &v) in p.row(i).iter().enumerate() {
            if (largest && v > best.0) || (!largest && v < best.0) {
                best = (v, i, j);
            }
        }
    }
    best
}

pub fn check_positivity(problem: &ReducedProblem) -> EntryBound {
    let (value, row, col) = extreme_entry(problem, false);
    EntryBound {
        holds: value > 0.0,
        value,
        row,
        col,
    }
}

pub fn check_boundedness(problem: &ReducedProblem) -> EntryBound {
    let (value, row, col) = extreme_entry(problem, true);
    EntryBound {
        holds: value.is_finite(),
        value,
        row,
        col,
    }
}

/// Outcome of a criterion that may fail its preconditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Hyp03Outcome {
    Verdict(Hyp03Verdict),
    PreconditionFailed {
        condition: String,
        side: String,
        index: usize,
        message: String,
    },
}

impl Hyp03Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Hyp03Outcome::Verdict(v) if v.holds)
    }

    pub fn from_result(result: Result<Hyp03Verdict, CriteriaError>) -> Result<Self, CriteriaError> {
        match result {
            Ok(v) => Ok(Hyp03Outcome::Verdict(v)),
            Err(CriteriaError::PreconditionFailed {
                condition,
                side,
                index,
                message,
            }) => Ok(Hyp03Outcome::PreconditionFailed {
                condition: condition.into(),
                side: side.into(),
                index,
                message,
            }),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub eq29_xy: Eq29Verdict,
    pub eq29_yx: Eq29Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyp02: Option<Hyp02Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyp03: Option<Hyp03Outcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radial: Option<RadialVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaussian: Option<MatrixCriterion>,
    pub positivity: EntryBound,
    pub boundedness: EntryBound,
}

impl CriteriaReport {
    /// Whether any computed sufficient condition for existence holds. The
    /// integral criterion and the Gaussian criterion also need a positive
    /// bounded kernel.
    pub fn any_sufficient(&self) -> bool {
        let regular = self.positivity.holds && self.boundedness.holds;
        let eq29 = regular && (self.eq29_xy.finite || self.eq29_yx.finite);
        let gaussian = self.gaussian.as_ref().is_some_and(MatrixCriterion::any_holds);
        let hyp02 = self.hyp02.as_ref().is_some_and(|v| v.holds);
        let hyp03 = self.hyp03.as_ref().is_some_and(Hyp03Outcome::holds);
        let radial = self.radial.as_ref().is_some_and(|v| v.holds);
        eq29 || gaussian || hyp02 || hyp03 || radial
    }

    /// One row per criterion.
    pub fn render_table(&self) -> String {
        let mut rows: Vec<(String, String, String)> = Vec::new();
        let eq29 = |v: &Eq29Verdict| {
            let detail = match v.reason {
                None => format!("value {:.6e} (largest term at {})", v.value, v.index),
                Some(r) => format!(
                    "value {:.6e} ({} at {})",
                    v.value,
                    serde_json::to_value(r).unwrap().as_str().unwrap(),
                    v.index
                ),
            };
            (if v.finite { "finite" } else { "not finite" }.to_string(), detail)
        };
        let (s, d) = eq29(&self.eq29_xy);
        rows.push(("eq29 x->y".into(), s, d));
        let (s, d) = eq29(&self.eq29_yx);
        rows.push(("eq29 y->x".into(), s, d));
        if let Some(h) = &self.hyp02 {
            let detail = match (&h.witness, &h.violation) {
                (Some(w), _) => format!(
                    "{} anchors, sum c = {:.6e}",
                    w.x_indices.len(),
                    w.coefficients.iter().sum::<f64>()
                ),
                (_, Some(v)) => format!("violated at y {}", v.y_index),
                _ => String::new(),
            };
            rows.push(("hyp02".into(), verdict(h.holds), detail));
        }
        if let Some(h) = &self.hyp03 {
            match h {
                Hyp03Outcome::Verdict(v) => {
                    rows.push((
                        "hyp03".into(),
                        verdict(v.holds),
                        format!("r = {}, c = {:.6e}", v.r, v.c),
                    ));
                }
                Hyp03Outcome::PreconditionFailed {
                    condition, side, index, ..
                } => rows.push((
                    "hyp03".into(),
                    "precondition".into(),
                    format!("({condition}) fails at {side} {index}"),
                )),
            }
        }
        if let Some(r) = &self.radial {
            let detail = match (r.l_found, r.violation) {
                (Some(l), _) => format!("L = {l}"),
                (_, Some(k)) => format!("increase at sample {k}"),
                _ => String::new(),
            };
            rows.push(("radial".into(), verdict(r.holds), detail));
        }
        if let Some(g) = &self.gaussian {
            rows.push((
                "gaussian x->y".into(),
                verdict(g.xy_holds),
                format!("min eigenvalue {:.6e}", g.xy_min_eigenvalue),
            ));
            rows.push((
                "gaussian y->x".into(),
                verdict(g.yx_holds),
                format!("min eigenvalue {:.6e}", g.yx_min_eigenvalue),
            ));
        }
        rows.push((
            "positivity".into(),
            verdict(self.positivity.holds),
            format!(
                "min {:.6e} at ({}, {})",
                self.positivity.value, self.positivity.row, self.positivity.col
            ),
        ));
        rows.push((
            "boundedness".into(),
            verdict(self.boundedness.holds),
            format!(
                "max {:.6e} at ({}, {})",
                self.boundedness.value, self.boundedness.row, self.boundedness.col
            ),
        ));
        let mut out = format!("{:<16} {:<12} {}\n", "criterion", "verdict", "detail");
        for (name, status, detail) in rows {
            out.push_str(&format!("{name:<16} {status:<12} {detail}\n"));
        }
        out
    }
}

fn verdict(holds: bool) -> String {
    if holds { "holds" } else { "fails" }.into()
}
