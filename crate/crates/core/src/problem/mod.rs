//! The discretized Schrödinger problem.
//!
//! State spaces are finite weighted point sets. The weights of a
//! [`DiscreteSpace`] are the reference measure (`m` on the source side, `n` on
//! the target side); the marginals `mu`, `nu` are probability vectors over the
//! same points. The reference coupling is `P[i][j] · m_i · n_j`.

mod io;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaussian::{self, SymMatrix};

pub use io::{load_problem, problem_from_json, save_problem, ProblemFormat};

/// Tolerance on `|Σ weights − 1|` for a probability vector.
pub const MASS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },
    #[error("irreducible problem: {}", describe_irreducible(rows, cols))]
    Irreducible { rows: Vec<usize>, cols: Vec<usize> },
    #[error("kernel evaluation failed at ({row}, {col}): {message}")]
    Evaluation { row: usize, col: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn describe_irreducible(rows: &[usize], cols: &[usize]) -> String {
    let mut parts = Vec::new();
    if !rows.is_empty() {
        parts.push(format!(
            "condition (i) fails: x indices {rows:?} see no kernel mass on supp nu"
        ));
    }
    if !cols.is_empty() {
        parts.push(format!(
            "condition (ii) fails: y indices {cols:?} see no kernel mass on supp mu"
        ));
    }
    parts.join("; ")
}

fn schema(msg: impl Into<String>) -> ProblemError {
    ProblemError::Schema(msg.into())
}

/// A finite point set in `R^d` with positive quadrature weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteSpace {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl DiscreteSpace {
    pub fn new(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self, ProblemError> {
        let space = DiscreteSpace { points, weights };
        space.validate("space")?;
        Ok(space)
    }

    /// Points `0, 1, ..., n-1` on the line with unit weights.
    pub fn indexed(n: usize) -> Self {
        DiscreteSpace {
            points: (0..n).map(|i| vec![i as f64]).collect(),
            weights: vec![1.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    fn validate(&self, name: &str) -> Result<(), ProblemError> {
        if self.points.is_empty() {
            return Err(schema(format!("{name}: at least one point is required")));
        }
        if self.points.len() != self.weights.len() {
            return Err(schema(format!(
                "{name}: {} points but {} weights",
                self.points.len(),
                self.weights.len()
            )));
        }
        let d = self.dim();
        if d == 0 {
            return Err(schema(format!("{name}: points must have dimension >= 1")));
        }
        for (i, p) in self.points.iter().enumerate() {
            if p.len() != d {
                return Err(schema(format!("{name}.points[{i}]: expected {d} coordinates")));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(schema(format!("{name}.points[{i}]: non-finite coordinate")));
            }
        }
        for (i, &w) in self.weights.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(schema(format!("{name}.weights[{i}] = {w}: must be positive")));
            }
        }
        Ok(())
    }
}

/// Row-major dense nonnegative matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, ProblemError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(schema("kernel matrix must be non-empty"));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(schema(format!("kernel row {i} has the wrong length")));
        }
        Ok(DenseMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Ratio between the largest entry and the smallest positive entry.
    pub fn dynamic_range(&self) -> f64 {
        let min_pos = self
            .data
            .iter()
            .copied()
            .filter(|&x| x > 0.0)
            .fold(f64::INFINITY, f64::min);
        if min_pos.is_finite() {
            self.max() / min_pos
        } else {
            1.0
        }
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.data.iter().all(|&x| x > 0.0)
    }
}

impl Serialize for DenseMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for DenseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(deserializer)?;
        DenseMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Radial profile `θ` of a kernel `p(x, y) = θ(|y − x|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RadialProfile {
    /// `exp(−rate·t)`
    Exponential { rate: f64 },
    /// `exp(−precision·t²/2)`
    Gaussian { precision: f64 },
    /// `exp(−precision·(t − center)²/2)`
    ShiftedGaussian { center: f64, precision: f64 },
    /// Piecewise linear through `(t[k], values[k])`, constant beyond the ends.
    Tabulated { t: Vec<f64>, values: Vec<f64> },
}

impl RadialProfile {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            RadialProfile::Exponential { rate } => (-rate * t).exp(),
            RadialProfile::Gaussian { precision } => (-precision * t * t / 2.0).exp(),
            RadialProfile::ShiftedGaussian { center, precision } => {
                let s = t - center;
                (-precision * s * s / 2.0).exp()
            }
            RadialProfile::Tabulated { t: ts, values } => {
                let k = ts.partition_point(|&s| s <= t);
                if k == 0 {
                    values[0]
                } else if k == ts.len() {
                    values[ts.len() - 1]
                } else {
                    let (t0, t1) = (ts[k - 1], ts[k]);
                    let w = (t - t0) / (t1 - t0);
                    values[k - 1] * (1.0 - w) + values[k] * w
                }
            }
        }
    }

    fn validate(&self) -> Result<(), ProblemError> {
        match self {
            RadialProfile::Exponential { rate } if !rate.is_finite() => Err(schema("radial rate must be finite")),
            RadialProfile::Gaussian { precision } | RadialProfile::ShiftedGaussian { precision, .. }
                if !(precision.is_finite() && *precision > 0.0) =>
            {
                Err(schema("radial precision must be positive"))
            }
            RadialProfile::Tabulated { t, values } => {
                if t.is_empty() || t.len() != values.len() {
                    return Err(schema("tabulated profile needs equally many abscissae and values"));
                }
                if t.windows(2).any(|w| !(w[0] < w[1])) || t.iter().any(|x| !x.is_finite()) {
                    return Err(schema("tabulated abscissae must be finite and increasing"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// The transition density `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Kernel {
    #[serde(alias = "dense-matrix", alias = "dense_matrix")]
    Dense {
        entries: Vec<Vec<f64>>,
        /// Require every entry to be strictly positive.
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        assume_positive: bool,
    },
    Radial {
        profile: RadialProfile,
        /// Radius beyond which the profile is declared non-increasing.
        #[serde(default)]
        cutoff: f64,
    },
    /// `p(x, y) = n_c(y − x)`, the centred Gaussian density with precision `c`.
    Gaussian { precision: Vec<Vec<f64>> },
}

impl Kernel {
    pub fn dense(entries: Vec<Vec<f64>>) -> Self {
        Kernel::Dense {
            entries,
            assume_positive: false,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Kernel::Dense { .. } => "dense",
            Kernel::Radial { .. } => "radial",
            Kernel::Gaussian { .. } => "gaussian",
        }
    }

    /// Continuity in `x` holds by construction for the parametric kinds.
    pub fn continuous_by_construction(&self) -> bool {
        !matches!(self, Kernel::Dense { .. })
    }
}

/// Full data of a discrete Schrödinger system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteProblem {
    pub x_space: DiscreteSpace,
    pub y_space: DiscreteSpace,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    pub kernel: Kernel,
}

fn check_probability(name: &str, w: &[f64], len: usize) -> Result<(), ProblemError> {
    if w.len() != len {
        return Err(schema(format!("{name}: expected {len} weights, got {}", w.len())));
    }
    for (i, &x) in w.iter().enumerate() {
        if !(x.is_finite() && x >= 0.0) {
            return Err(schema(format!("{name}[{i}] = {x}: must be finite and nonnegative")));
        }
    }
    let total: f64 = w.iter().sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(schema(format!("{name}: total mass {total} is not 1")));
    }
    Ok(())
}

impl DiscreteProblem {
    pub fn new(
        x_space: DiscreteSpace,
        y_space: DiscreteSpace,
        mu: Vec<f64>,
        nu: Vec<f64>,
        kernel: Kernel,
    ) -> Result<Self, ProblemError> {
        let problem = DiscreteProblem {
            x_space,
            y_space,
            mu,
            nu,
            kernel,
        };
        problem.validate()?;
        Ok(problem)
    }

    /// Dense problem on index spaces with unit reference weights.
    pub fn from_matrix(entries: Vec<Vec<f64>>, mu: Vec<f64>, nu: Vec<f64>) -> Result<Self, ProblemError> {
        let (rows, cols) = (entries.len(), entries.first().map_or(0, Vec::len));
        DiscreteProblem::new(
            DiscreteSpace::indexed(rows),
            DiscreteSpace::indexed(cols),
            mu,
            nu,
            Kernel::dense(entries),
        )
    }

    pub fn nx(&self) -> usize {
        self.x_space.len()
    }

    pub fn ny(&self) -> usize {
        self.y_space.len()
    }

    /// Structural checks: sizes, signs, masses and kernel parameters.
    pub fn validate(&self) -> Result<(), ProblemError> {
        self.x_space.validate("x_space")?;
        self.y_space.validate("y_space")?;
        check_probability("mu", &self.mu, self.nx())?;
        check_probability("nu", &self.nu, self.ny())?;
        match &self.kernel {
            Kernel::Dense {
                entries,
                assume_positive,
            } => {
                if entries.len() != self.nx() {
                    return Err(schema(format!(
                        "kernel: {} rows for {} source points",
                        entries.len(),
                        self.nx()
                    )));
                }
                for (i, row) in entries.iter().enumerate() {
                    if row.len() != self.ny() {
                        return Err(schema(format!("kernel row {i}: expected {} entries", self.ny())));
                    }
                    for (j, &p) in row.iter().enumerate() {
                        if !(p.is_finite() && p >= 0.0) {
                            return Err(schema(format!(
                                "kernel[{i}][{j}] = {p}: must be finite and nonnegative"
                            )));
                        }
                        if *assume_positive && p == 0.0 {
                            return Err(schema(format!("kernel[{i}][{j}] vanishes but positivity is assumed")));
                        }
                    }
                }
            }
            Kernel::Radial { profile, cutoff } => {
                profile.validate()?;
                if !(cutoff.is_finite() && *cutoff >= 0.0) {
                    return Err(schema("radial cutoff must be finite and nonnegative"));
                }
                if self.x_space.dim() != self.y_space.dim() {
                    return Err(schema("radial kernel needs spaces of equal dimension"));
                }
            }
            Kernel::Gaussian { precision } => {
                let c = SymMatrix::from_rows(precision).map_err(|e| schema(format!("kernel precision: {e}")))?;
                if c.dim() != self.x_space.dim() || c.dim() != self.y_space.dim() {
                    return Err(schema("gaussian kernel precision must match the point dimension"));
                }
            }
        }
        Ok(())
    }

    /// The problem with the roles of the two spaces exchanged and `P` transposed.
    pub fn transposed(&self) -> Result<DiscreteProblem, ProblemError> {
        let kernel = match &self.kernel {
            Kernel::Dense {
                entries,
                assume_positive,
            } => Kernel::Dense {
                entries: DenseMatrix::from_rows(entries)?.transpose().to_rows(),
                assume_positive: *assume_positive,
            },
            // symmetric in x <-> y
            other => other.clone(),
        };
        Ok(DiscreteProblem {
            x_space: self.y_space.clone(),
            y_space: self.x_space.clone(),
            mu: self.nu.clone(),
            nu: self.mu.clone(),
            kernel,
        })
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Materializes `P[i][j] = p(x_i, y_j)`.
pub fn kernel_matrix(problem: &DiscreteProblem) -> Result<DenseMatrix, ProblemError> {
    let xs = &problem.x_space.points;
    let ys = &problem.y_space.points;
    let matrix = match &problem.kernel {
        Kernel::Dense { entries, .. } => DenseMatrix::from_rows(entries)?,
        Kernel::Radial { profile, .. } => {
            DenseMatrix::from_fn(xs.len(), ys.len(), |i, j| profile.eval(distance(&xs[i], &ys[j])))
        }
        Kernel::Gaussian { precision } => {
            let c = SymMatrix::from_rows(precision).map_err(|e| schema(e.to_string()))?;
            let density = gaussian::GaussDensity::new(&c).map_err(|e| schema(e.to_string()))?;
            DenseMatrix::from_fn(xs.len(), ys.len(), |i, j| {
                let z: Vec<f64> = ys[j].iter().zip(&xs[i]).map(|(y, x)| y - x).collect();
                density.eval(&z)
            })
        }
    };
    for i in 0..matrix.rows() {
        for (j, &p) in matrix.row(i).iter().enumerate() {
            if !(p.is_finite() && p >= 0.0) {
                return Err(ProblemError::Evaluation {
                    row: i,
                    col: j,
                    message: format!("kernel value {p} is not a finite nonnegative number"),
                });
            }
        }
    }
    Ok(matrix)
}

/// A problem restricted to the supports of its marginals, satisfying the
/// irreducibility conditions, with its kernel materialized.
#[derive(Debug, Clone)]
pub struct ReducedProblem {
    problem: DiscreteProblem,
    kernel: DenseMatrix,
    x_index: Vec<usize>,
    y_index: Vec<usize>,
    original_dims: (usize, usize),
}

impl ReducedProblem {
    pub fn problem(&self) -> &DiscreteProblem {
        &self.problem
    }

    pub fn kernel(&self) -> &DenseMatrix {
        &self.kernel
    }

    pub fn mu(&self) -> &[f64] {
        &self.problem.mu
    }

    pub fn nu(&self) -> &[f64] {
        &self.problem.nu
    }

    pub fn x_weights(&self) -> &[f64] {
        &self.problem.x_space.weights
    }

    pub fn y_weights(&self) -> &[f64] {
        &self.problem.y_space.weights
    }

    pub fn nx(&self) -> usize {
        self.kernel.rows()
    }

    pub fn ny(&self) -> usize {
        self.kernel.cols()
    }

    /// Original indices of the retained source points.
    pub fn x_index(&self) -> &[usize] {
        &self.x_index
    }

    /// Original indices of the retained target points.
    pub fn y_index(&self) -> &[usize] {
        &self.y_index
    }

    pub fn is_unchanged(&self) -> bool {
        (self.x_index.len(), self.y_index.len()) == self.original_dims
    }

    pub fn is_positive(&self) -> bool {
        self.kernel.is_strictly_positive()
    }
}

/// Restriction to `idx`, rescaled to unit mass when points were dropped.
fn renormalized(w: &[f64], idx: &[usize]) -> Vec<f64> {
    let kept = select(w, idx);
    if kept.len() == w.len() {
        return kept;
    }
    let total: f64 = kept.iter().sum();
    kept.iter().map(|x| x / total).collect()
}

fn select<T: Clone>(v: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| v[i].clone()).collect()
}

/// Drops zero-mass points and checks that every remaining row and column of
/// the kernel charges the support of the opposite marginal.
pub fn validate_reduction(problem: &DiscreteProblem) -> Result<ReducedProblem, ProblemError> {
    problem.validate()?;
    let full = kernel_matrix(problem)?;
    let x_index: Vec<usize> = (0..problem.nx()).filter(|&i| problem.mu[i] > 0.0).collect();
    let y_index: Vec<usize> = (0..problem.ny()).filter(|&j| problem.nu[j] > 0.0).collect();

    let kernel = DenseMatrix::from_fn(x_index.len(), y_index.len(), |a, b| full.get(x_index[a], y_index[b]));
    let bad_rows: Vec<usize> = (0..kernel.rows())
        .filter(|&a| kernel.row(a).iter().all(|&p| p == 0.0))
        .map(|a| x_index[a])
        .collect();
    let bad_cols: Vec<usize> = (0..kernel.cols())
        .filter(|&b| (0..kernel.rows()).all(|a| kernel.get(a, b) == 0.0))
        .map(|b| y_index[b])
        .collect();
    if !bad_rows.is_empty() || !bad_cols.is_empty() {
        return Err(ProblemError::Irreducible {
            rows: bad_rows,
            cols: bad_cols,
        });
    }

    let reduced_kernel = match &problem.kernel {
        Kernel::Dense { assume_positive, .. } => Kernel::Dense {
            entries: kernel.to_rows(),
            assume_positive: *assume_positive,
        },
        other => other.clone(),
    };
    let reduced = DiscreteProblem {
        x_space: DiscreteSpace {
            points: select(&problem.x_space.points, &x_index),
            weights: select(&problem.x_space.weights, &x_index),
        },
        y_space: DiscreteSpace {
            points: select(&problem.y_space.points, &y_index),
            weights: select(&problem.y_space.weights, &y_index),
        },
        mu: renormalized(&problem.mu, &x_index),
        nu: renormalized(&problem.nu, &y_index),
        kernel: reduced_kernel,
    };
    Ok(ReducedProblem {
        problem: reduced,
        kernel,
        x_index,
        y_index,
        original_dims: (problem.nx(), problem.ny()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_2x2() -> DiscreteProblem {
        DiscreteProblem::from_matrix(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.5, 0.5], vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn zero_mass_point_is_dropped() {
        let p = DiscreteProblem::from_matrix(vec![vec![1.0], vec![2.0], vec![3.0]], vec![0.5, 0.5, 0.0], vec![1.0])
            .unwrap();
        let r = validate_reduction(&p).unwrap();
        assert_eq!((r.nx(), r.ny()), (2, 1));
        assert_eq!(r.x_index(), &[0, 1]);
        assert!((r.mu().iter().sum::<f64>() - 1.0).abs() <= 1e-15);
        assert!(r.mu().iter().all(|&m| m > 0.0));
        assert!(!r.is_unchanged());
    }

    #[test]
    fn zero_row_with_mass_is_irreducible() {
        let p =
            DiscreteProblem::from_matrix(vec![vec![0.0, 0.0], vec![1.0, 1.0]], vec![0.5, 0.5], vec![0.5, 0.5]).unwrap();
        match validate_reduction(&p) {
            Err(ProblemError::Irreducible { rows, cols }) => {
                assert_eq!(rows, vec![0]);
                assert!(cols.is_empty());
            }
            other => panic!("expected irreducible, got {other:?}"),
        }
        let msg = validate_reduction(&p).unwrap_err().to_string();
        assert!(msg.contains("condition (i)"), "{msg}");
    }

    #[test]
    fn column_charged_only_outside_support_is_irreducible() {
        // column 1 is only charged by x_1, which carries no mass
        let p =
            DiscreteProblem::from_matrix(vec![vec![1.0, 0.0], vec![1.0, 1.0]], vec![1.0, 0.0], vec![0.5, 0.5]).unwrap();
        match validate_reduction(&p) {
            Err(ProblemError::Irreducible { rows, cols }) => {
                assert!(rows.is_empty());
                assert_eq!(cols, vec![1]);
            }
            other => panic!("expected irreducible, got {other:?}"),
        }
    }

    #[test]
    fn positive_problem_is_unchanged() {
        let p = worked_2x2();
        let r = validate_reduction(&p).unwrap();
        assert!(r.is_unchanged());
        assert_eq!(r.problem(), &p);
        assert!(r.is_positive());
    }

    #[test]
    fn gaussian_kernel_at_origin() {
        let p = DiscreteProblem::new(
            DiscreteSpace::new(vec![vec![0.0]], vec![1.0]).unwrap(),
            DiscreteSpace::new(vec![vec![0.0]], vec![1.0]).unwrap(),
            vec![1.0],
            vec![1.0],
            Kernel::Gaussian {
                precision: vec![vec![1.0]],
            },
        )
        .unwrap();
        let k = kernel_matrix(&p).unwrap();
        assert!((k.get(0, 0) - 0.398_942_280_401_432_7).abs() < 1e-15);
    }

    #[test]
    fn radial_kernel_evaluates_profile() {
        let p = DiscreteProblem::new(
            DiscreteSpace::new(vec![vec![0.0]], vec![1.0]).unwrap(),
            DiscreteSpace::new(vec![vec![1.0]], vec![1.0]).unwrap(),
            vec![1.0],
            vec![1.0],
            Kernel::Radial {
                profile: RadialProfile::Exponential { rate: 1.0 },
                cutoff: 0.0,
            },
        )
        .unwrap();
        let k = kernel_matrix(&p).unwrap();
        assert!((k.get(0, 0) - (-1.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn negative_tabulated_profile_fails_evaluation() {
        let p = DiscreteProblem::new(
            DiscreteSpace::indexed(2),
            DiscreteSpace::indexed(2),
            vec![0.5, 0.5],
            vec![0.5, 0.5],
            Kernel::Radial {
                profile: RadialProfile::Tabulated {
                    t: vec![0.0, 1.0],
                    values: vec![1.0, -1.0],
                },
                cutoff: 0.0,
            },
        )
        .unwrap();
        assert!(matches!(
            kernel_matrix(&p),
            Err(ProblemError::Evaluation { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn dense_kernel_is_returned_verbatim() {
        let p = worked_2x2();
        assert_eq!(
            kernel_matrix(&p).unwrap().to_rows(),
            vec![vec![1.0, 2.0], vec![3.0, 4.0]]
        );
    }

    #[test]
    fn gaussian_kernel_symmetric_on_shared_grid() {
        let pts: Vec<Vec<f64>> = (0..7).map(|i| vec![i as f64 * 0.3 - 1.0, 0.1 * i as f64]).collect();
        let space = DiscreteSpace::new(pts, vec![1.0; 7]).unwrap();
        let p = DiscreteProblem::new(
            space.clone(),
            space,
            vec![1.0 / 7.0; 7],
            vec![1.0 / 7.0; 7],
            Kernel::Gaussian {
                precision: vec![vec![2.0, 0.3], vec![0.3, 1.0]],
            },
        )
        .unwrap();
        let k = kernel_matrix(&p).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(k.get(i, j), k.get(j, i));
            }
        }
    }

    #[test]
    fn structural_errors() {
        let bad_mass = DiscreteProblem::from_matrix(vec![vec![1.0]], vec![0.9], vec![1.0]);
        assert!(matches!(bad_mass, Err(ProblemError::Schema(_))));
        let bad_weight = DiscreteSpace::new(vec![vec![0.0]], vec![-1.0]);
        assert!(matches!(bad_weight, Err(ProblemError::Schema(_))));
        let positive_flag = DiscreteProblem::new(
            DiscreteSpace::indexed(1),
            DiscreteSpace::indexed(2),
            vec![1.0],
            vec![0.5, 0.5],
            Kernel::Dense {
                entries: vec![vec![1.0, 0.0]],
                assume_positive: true,
            },
        );
        assert!(matches!(positive_flag, Err(ProblemError::Schema(_))));
    }
}
