//! Closed-form Gaussian calculus.
//!
//! With `n_κ` the centred Gaussian density of precision `κ`, the data
//! `μ = n_a`, `ν = n_b`, `p(x, y) = n_c(y − x)` give an explicitly solvable
//! model used as an analytic oracle and as a problem generator.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::{DiscreteProblem, DiscreteSpace, Kernel};

/// Symmetry tolerance, relative to the matrix norm.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Default total-point cap for [`discretize_gaussian`].
pub const DEFAULT_GRID_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum GaussianError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotSpd { min_eigenvalue: f64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("b and c are too close (|b - c| = {0:e}) for the boundary identity")]
    DegenerateBc(f64),
    #[error("operation requires scalar (dimension 1) data")]
    NotScalar,
    #[error("grid of {points} points exceeds the cap of {cap}")]
    GridTooLarge { points: usize, cap: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// A real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix(DMatrix<f64>);

impl SymMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, GaussianError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(GaussianError::NotSquare { rows: n, cols: r.len() });
        }
        if n == 0 {
            return Err(GaussianError::NotSquare { rows: 0, cols: 0 });
        }
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self, GaussianError> {
        if !m.is_square() {
            return Err(GaussianError::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let asymmetry = (&m - m.transpose()).norm();
        if !(asymmetry <= SYMMETRY_TOLERANCE * m.norm().max(1.0)) {
            return Err(GaussianError::NotSymmetric { asymmetry });
        }
        Ok(SymMatrix((&m + m.transpose()) * 0.5))
    }

    pub fn scalar(x: f64) -> Self {
        SymMatrix(DMatrix::from_element(1, 1, x))
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(DMatrix::identity(n, n))
    }

    pub fn diag(entries: &[f64]) -> Self {
        SymMatrix(DMatrix::from_diagonal(&DVector::from_column_slice(entries)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.0.row(i).iter().copied().collect())
            .collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.0.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn require_spd(&self) -> Result<(), GaussianError> {
        let min_eigenvalue = self.min_eigenvalue();
        if min_eigenvalue > 0.0 {
            Ok(())
        } else {
            Err(GaussianError::NotSpd { min_eigenvalue })
        }
    }

    /// Scalar value of a 1x1 matrix.
    pub fn as_scalar(&self) -> Option<f64> {
        (self.dim() == 1).then(|| self.0[(0, 0)])
    }

    fn inverse(&self) -> Result<DMatrix<f64>, GaussianError> {
        self.0.clone().try_inverse().ok_or(GaussianError::NotSpd {
            min_eigenvalue: self.min_eigenvalue(),
        })
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Scalar(f64),
    Rows(Vec<Vec<f64>>),
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match MatrixInput::deserialize(d)? {
            MatrixInput::Scalar(x) => Ok(SymMatrix::scalar(x)),
            MatrixInput::Rows(rows) => SymMatrix::from_rows(&rows).map_err(serde::de::Error::custom),
        }
    }
}

/// Precisions of `μ` (`a`), `ν` (`b`) and the kernel (`c`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGaussianProblem")]
pub struct GaussianProblem {
    pub a: SymMatrix,
    pub b: SymMatrix,
    pub c: SymMatrix,
}

#[derive(Deserialize)]
struct RawGaussianProblem {
    a: SymMatrix,
    b: SymMatrix,
    c: SymMatrix,
}

impl TryFrom<RawGaussianProblem> for GaussianProblem {
    type Error = GaussianError;

    fn try_from(raw: RawGaussianProblem) -> Result<Self, Self::Error> {
        GaussianProblem::new(raw.a, raw.b, raw.c)
    }
}

impl GaussianProblem {
    pub fn new(a: SymMatrix, b: SymMatrix, c: SymMatrix) -> Result<Self, GaussianError> {
        for m in [&b, &c] {
            if m.dim() != a.dim() {
                return Err(GaussianError::DimensionMismatch(a.dim(), m.dim()));
            }
        }
        for m in [&a, &b, &c] {
            m.require_spd()?;
        }
        Ok(GaussianProblem { a, b, c })
    }

    pub fn scalar(a: f64, b: f64, c: f64) -> Result<Self, GaussianError> {
        Self::new(SymMatrix::scalar(a), SymMatrix::scalar(b), SymMatrix::scalar(c))
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Swaps the roles of `μ` and `ν`.
    pub fn swapped(&self) -> Self {
        GaussianProblem {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.clone(),
        }
    }

    fn scalars(&self) -> Result<(f64, f64, f64), GaussianError> {
        match (self.a.as_scalar(), self.b.as_scalar(), self.c.as_scalar()) {
            (Some(a), Some(b), Some(c)) => Ok((a, b, c)),
            _ => Err(GaussianError::NotScalar),
        }
    }
}

/// `z ↦ √(det κ / (2π)^n) · exp(−z·κz/2)` with the constant precomputed.
#[derive(Debug, Clone)]
pub struct GaussDensity {
    kappa: DMatrix<f64>,
    norm: f64,
}

impl GaussDensity {
    pub fn new(kappa: &SymMatrix) -> Result<Self, GaussianError> {
        kappa.require_spd()?;
        let n = kappa.dim() as i32;
        let det = kappa.matrix().determinant();
        Ok(GaussDensity {
            kappa: kappa.matrix().clone(),
            norm: (det / (2.0 * std::f64::consts::PI).powi(n)).sqrt(),
        })
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        let n = self.kappa.nrows();
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                q += z[i] * self.kappa[(i, j)] * z[j];
            }
        }
        self.norm * (-q / 2.0).exp()
    }
}

pub fn gauss_density(kappa: &SymMatrix, z: &[f64]) -> Result<f64, GaussianError> {
    if z.len() != kappa.dim() {
        return Err(GaussianError::DimensionMismatch(kappa.dim(), z.len()));
    }
    Ok(GaussDensity::new(kappa)?.eval(z))
}

/// Precision of `n_c * n_α` (convolution), i.e. `(α⁻¹ + c⁻¹)⁻¹`.
///
/// This equals `αc(α + c)⁻¹` whenever `α` and `c` commute; in general the
/// product form is not symmetric while the convolution precision always is.
pub fn gauss_convolve_precision(c: &SymMatrix, alpha: &SymMatrix) -> Result<SymMatrix, GaussianError> {
    if c.dim() != alpha.dim() {
        return Err(GaussianError::DimensionMismatch(c.dim(), alpha.dim()));
    }
    c.require_spd()?;
    alpha.require_spd()?;
    let sum_cov = c.inverse()? + alpha.inverse()?;
    let m = sum_cov
        .try_inverse()
        .ok_or(GaussianError::NotSpd { min_eigenvalue: 0.0 })?;
    SymMatrix::from_matrix((&m + m.transpose()) * 0.5)
}

/// `αc(α + c)⁻¹` as written, with its raw asymmetry norm.
pub fn product_form_precision(c: &SymMatrix, alpha: &SymMatrix) -> Result<(DMatrix<f64>, f64), GaussianError> {
    if c.dim() != alpha.dim() {
        return Err(GaussianError::DimensionMismatch(c.dim(), alpha.dim()));
    }
    let sum = SymMatrix(alpha.matrix() + c.matrix());
    let m = alpha.matrix() * c.matrix() * sum.inverse()?;
    let asymmetry = (&m - m.transpose()).norm();
    Ok((m, asymmetry))
}

/// Verdicts of the integral criteria for Gaussian data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixCriterion {
    /// `b − β ≻ 0` with `β` the precision of `∫ p(x, ·) μ(dx)`.
    pub xy_holds: bool,
    /// `a − β'` with `β'` the precision of `∫ p(·, y) ν(dy)`.
    pub yx_holds: bool,
    pub xy_min_eigenvalue: f64,
    pub yx_min_eigenvalue: f64,
}

impl MatrixCriterion {
    pub fn any_holds(&self) -> bool {
        self.xy_holds || self.yx_holds
    }
}

fn margin(target: &SymMatrix, other: &SymMatrix, c: &SymMatrix) -> Result<f64, GaussianError> {
    let beta = gauss_convolve_precision(c, other)?;
    let diff = SymMatrix::from_matrix(target.matrix() - beta.matrix())?;
    Ok(diff.min_eigenvalue())
}

pub fn matrix_criterion(gp: &GaussianProblem) -> Result<MatrixCriterion, GaussianError> {
    let xy = margin(&gp.b, &gp.a, &gp.c)?;
    let yx = margin(&gp.a, &gp.b, &gp.c)?;
    Ok(MatrixCriterion {
        xy_holds: xy > 0.0,
        yx_holds: yx > 0.0,
        xy_min_eigenvalue: xy,
        yx_min_eigenvalue: yx,
    })
}

/// Twist exponent `d` of `U(x) = exp(x·dx/2)` and the exponent `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistMatrixParams {
    pub d: SymMatrix,
    pub r: f64,
}

/// `P_r(d) = d² + [a + 2c − (r−1)c²/b]·d + c·[a + c − r·a·c/b − (r−1)c²/b]`.
pub fn pr_polynomial(gp: &GaussianProblem, params: &TwistMatrixParams) -> Result<f64, GaussianError> {
    let (a, b, c) = gp.scalars()?;
    let d = params.d.as_scalar().ok_or(GaussianError::NotScalar)?;
    Ok(pr_scalar(a, b, c, d, params.r))
}

pub(crate) fn pr_scalar(a: f64, b: f64, c: f64, d: f64, r: f64) -> f64 {
    let linear = a + 2.0 * c - (r - 1.0) * c * c / b;
    let constant = c * (a + c - r * a * c / b - (r - 1.0) * c * c / b);
    d * d + linear * d + constant
}

/// Right end `d̄ = −a + bc/(c − b)` of the admissible twist interval.
pub fn d_bar(gp: &GaussianProblem) -> Result<f64, GaussianError> {
    let (a, b, c) = gp.scalars()?;
    if (b - c).abs() < 1e-12 {
        return Err(GaussianError::DegenerateBc((b - c).abs()));
    }
    Ok(-a + b * c / (c - b))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryIdentity {
    /// `P_1(d̄)` evaluated through the polynomial.
    pub lhs: f64,
    /// `b⁻¹(c − b)⁻²c³(ab − ac + bc)`.
    pub rhs: f64,
}

impl BoundaryIdentity {
    pub fn relative_gap(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.lhs.abs().max(self.rhs.abs()).max(f64::MIN_POSITIVE)
    }
}

pub fn pr_boundary_identity(gp: &GaussianProblem) -> Result<BoundaryIdentity, GaussianError> {
    let (a, b, c) = gp.scalars()?;
    let d = d_bar(gp)?;
    Ok(BoundaryIdentity {
        lhs: pr_scalar(a, b, c, d, 1.0),
        rhs: c.powi(3) * (a * b - a * c + b * c) / (b * (c - b).powi(2)),
    })
}

/// Tensor grids over `±half_width_sigmas` marginal standard deviations of
/// `μ` and `ν`, with Gaussian cell masses and cell-volume reference weights.
pub fn discretize_gaussian(
    gp: &GaussianProblem,
    half_width_sigmas: f64,
    points_per_dim: usize,
) -> Result<DiscreteProblem, GaussianError> {
    discretize_gaussian_capped(gp, half_width_sigmas, points_per_dim, DEFAULT_GRID_CAP)
}

pub fn discretize_gaussian_capped(
    gp: &GaussianProblem,
    half_width_sigmas: f64,
    points_per_dim: usize,
    cap: usize,
) -> Result<DiscreteProblem, GaussianError> {
    if points_per_dim < 3 || points_per_dim % 2 == 0 {
        return Err(GaussianError::InvalidGrid(format!(
            "points per dimension must be odd and >= 3, got {points_per_dim}"
        )));
    }
    if !(half_width_sigmas.is_finite() && half_width_sigmas > 0.0) {
        return Err(GaussianError::InvalidGrid("half width must be positive".into()));
    }
    let dim = gp.dim();
    let total = u32::try_from(dim)
        .ok()
        .and_then(|d| points_per_dim.checked_pow(d))
        .unwrap_or(usize::MAX);
    if total > cap {
        return Err(GaussianError::GridTooLarge { points: total, cap });
    }
    let (x_space, mu) = gaussian_grid(&gp.a, half_width_sigmas, points_per_dim)?;
    let (y_space, nu) = gaussian_grid(&gp.b, half_width_sigmas, points_per_dim)?;
    DiscreteProblem::new(
        x_space,
        y_space,
        mu,
        nu,
        Kernel::Gaussian {
            precision: gp.c.to_rows(),
        },
    )
    .map_err(|e| GaussianError::InvalidGrid(e.to_string()))
}

fn gaussian_grid(precision: &SymMatrix, half_width: f64, n: usize) -> Result<(DiscreteSpace, Vec<f64>), GaussianError> {
    let dim = precision.dim();
    let covariance = precision.inverse()?;
    let axes: Vec<Vec<f64>> = (0..dim)
        .map(|k| {
            let extent = half_width * covariance[(k, k)].sqrt();
            let h = 2.0 * extent / (n - 1) as f64;
            // symmetric by construction: index m and n-1-m are exact negatives
            (0..n)
                .map(|m| {
                    let offset = m as f64 - ((n - 1) / 2) as f64;
                    offset * h
                })
                .collect()
        })
        .collect();
    let volume: f64 = axes.iter().map(|ax| ax[1] - ax[0]).product();
    let density = GaussDensity::new(precision)?;

    let total = n.pow(dim as u32);
    let mut points = Vec::with_capacity(total);
    let mut mass = Vec::with_capacity(total);
    let mut idx = vec![0usize; dim];
    for _ in 0..total {
        let p: Vec<f64> = idx.iter().enumerate().map(|(k, &m)| axes[k][m]).collect();
        mass.push(density.eval(&p) * volume);
        points.push(p);
        // odometer, last axis fastest
        for k in (0..dim).rev() {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
    let z: f64 = mass.iter().sum();
    let mass = mass.into_iter().map(|m| m / z).collect();
    Ok((
        DiscreteSpace {
            points,
            weights: vec![volume; total],
        },
        mass,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn density_values() {
        let one = SymMatrix::scalar(1.0);
        assert!((gauss_density(&one, &[0.0]).unwrap() - 0.398_942_280_401_432_7).abs() < 1e-15);
        assert!(
            (gauss_density(&SymMatrix::identity(2), &[0.0, 0.0]).unwrap() - 0.159_154_943_091_895_34).abs() < 1e-15
        );
        assert!((gauss_density(&one, &[1.0]).unwrap() - 0.241_970_724_519_143_37).abs() < 1e-15);
        assert!(matches!(
            gauss_density(&SymMatrix::scalar(-1.0), &[0.0]),
            Err(GaussianError::NotSpd { .. })
        ));
    }

    #[test]
    fn convolution_precision_commuting_cases() {
        let m = gauss_convolve_precision(&SymMatrix::scalar(1.0), &SymMatrix::scalar(1.0)).unwrap();
        assert!((m.as_scalar().unwrap() - 0.5).abs() < 1e-15);
        let m = gauss_convolve_precision(&SymMatrix::identity(2), &SymMatrix::diag(&[2.0, 2.0])).unwrap();
        for (i, row) in m.to_rows().iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let want = if i == j { 2.0 / 3.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-15);
            }
        }
        let (raw, asym) = product_form_precision(&SymMatrix::identity(2), &SymMatrix::diag(&[2.0, 2.0])).unwrap();
        assert!(asym < 1e-15);
        assert!((raw - m.matrix()).norm() < 1e-14);
    }

    #[test]
    fn convolution_matches_quadrature_in_2d() {
        // numeric convolution of n_c(y - x) n_alpha(x) on a fine grid
        let c = SymMatrix::from_rows(&[vec![1.3, 0.4], vec![0.4, 0.9]]).unwrap();
        let alpha = SymMatrix::from_rows(&[vec![2.0, -0.5], vec![-0.5, 0.7]]).unwrap();
        let beta = gauss_convolve_precision(&c, &alpha).unwrap();
        let nc = GaussDensity::new(&c).unwrap();
        let na = GaussDensity::new(&alpha).unwrap();
        let nb = GaussDensity::new(&beta).unwrap();
        let (lo, hi, n) = (-12.0, 12.0, 481);
        let h = (hi - lo) / (n - 1) as f64;
        for y in [[0.0, 0.0], [0.7, -0.4], [-1.1, 1.5]] {
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let x = [lo + i as f64 * h, lo + j as f64 * h];
                    acc += nc.eval(&[y[0] - x[0], y[1] - x[1]]) * na.eval(&x);
                }
            }
            acc *= h * h;
            assert!((acc - nb.eval(&y)).abs() < 1e-6, "{acc} vs {}", nb.eval(&y));
        }
    }

    #[test]
    fn matrix_criterion_examples() {
        let unit = GaussianProblem::scalar(1.0, 1.0, 1.0).unwrap();
        let m = matrix_criterion(&unit).unwrap();
        assert!(m.xy_holds && m.yx_holds);
        assert!((m.xy_min_eigenvalue - 0.5).abs() < 1e-15);

        let counter = GaussianProblem::new(
            SymMatrix::diag(&[0.1, 10.0]),
            SymMatrix::diag(&[10.0, 0.1]),
            SymMatrix::identity(2),
        )
        .unwrap();
        let m = matrix_criterion(&counter).unwrap();
        assert!(!m.xy_holds && !m.yx_holds);
        // per diagonal component: b - ac/(a+c) on the second axis
        assert!((m.xy_min_eigenvalue - (0.1 - 10.0 / 11.0)).abs() < 1e-14);
    }

    #[test]
    fn polynomial_examples() {
        let unit = GaussianProblem::scalar(1.0, 1.0, 1.0).unwrap();
        let p = pr_polynomial(
            &unit,
            &TwistMatrixParams {
                d: SymMatrix::scalar(0.0),
                r: 1.0,
            },
        )
        .unwrap();
        assert_eq!(p, 1.0);
        let gp = GaussianProblem::scalar(2.0, 1.0, 3.0).unwrap();
        let id = pr_boundary_identity(&gp).unwrap();
        assert!((id.lhs + 6.75).abs() < 1e-12);
        assert!((id.rhs + 6.75).abs() < 1e-12);
        assert!(matches!(
            pr_boundary_identity(&unit),
            Err(GaussianError::DegenerateBc(_))
        ));
    }

    #[test]
    fn scalar_grid_is_symmetric() {
        let gp = GaussianProblem::scalar(1.0, 1.0, 1.0).unwrap();
        let p = discretize_gaussian(&gp, 6.0, 201).unwrap();
        assert_eq!(p.nx(), 201);
        assert!((p.mu.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        for k in 0..201 {
            assert_eq!(p.x_space.points[k][0], -p.x_space.points[200 - k][0]);
            assert!((p.mu[k] - p.mu[200 - k]).abs() <= 1e-14);
        }
        assert_eq!(p.x_space.points[100][0], 0.0);
        assert!((p.x_space.points[200][0] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn grid_sizes_and_caps() {
        let gp = GaussianProblem::new(
            SymMatrix::diag(&[0.1, 10.0]),
            SymMatrix::diag(&[10.0, 0.1]),
            SymMatrix::identity(2),
        )
        .unwrap();
        let p = discretize_gaussian(&gp, 6.0, 31).unwrap();
        assert_eq!((p.nx(), p.ny()), (961, 961));
        assert!(matches!(
            discretize_gaussian_capped(&gp, 6.0, 31, 900),
            Err(GaussianError::GridTooLarge { points: 961, cap: 900 })
        ));
        assert!(matches!(
            discretize_gaussian(&gp, 6.0, 4),
            Err(GaussianError::InvalidGrid(_))
        ));
    }

    #[test]
    fn scalar_shorthand_json() {
        let gp: GaussianProblem = serde_json::from_str(r#"{"a": 1, "b": 2.0, "c": [[3.0]]}"#).unwrap();
        assert_eq!(gp, GaussianProblem::scalar(1.0, 2.0, 3.0).unwrap());
        let bad = serde_json::from_str::<GaussianProblem>(r#"{"a": -1, "b": 1, "c": 1}"#);
        assert!(bad.is_err());
    }

    fn spd2() -> impl Strategy<Value = SymMatrix> {
        (0.2f64..5.0, 0.2f64..5.0, -0.9f64..0.9).prop_map(|(s1, s2, rho)| {
            let off = rho * (s1 * s2).sqrt();
            SymMatrix::from_rows(&[vec![s1, off], vec![off, s2]]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn convolution_precision_is_dominated(c in spd2(), alpha in spd2()) {
            let m = gauss_convolve_precision(&c, &alpha).unwrap();
            prop_assert!(m.min_eigenvalue() > 0.0);
            // Loewner order: m < c and m < alpha
            let gap_c = SymMatrix::from_matrix(c.matrix() - m.matrix()).unwrap();
            let gap_a = SymMatrix::from_matrix(alpha.matrix() - m.matrix()).unwrap();
            prop_assert!(gap_c.min_eigenvalue() > 0.0);
            prop_assert!(gap_a.min_eigenvalue() > 0.0);
            prop_assert!(m.eigenvalues()[1] < c.eigenvalues()[1]);
        }

        #[test]
        fn criterion_swaps_with_marginals(a in spd2(), b in spd2(), c in spd2()) {
            let gp = GaussianProblem::new(a, b, c).unwrap();
            let m = matrix_criterion(&gp).unwrap();
            let s = matrix_criterion(&gp.swapped()).unwrap();
            prop_assert_eq!((m.xy_holds, m.yx_holds), (s.yx_holds, s.xy_holds));
        }

        #[test]
        fn scalar_criterion_always_has_a_direction(a in 0.1f64..10.0, b in 0.1f64..10.0, c in 0.1f64..10.0) {
            let gp = GaussianProblem::scalar(a, b, c).unwrap();
            prop_assert!(matrix_criterion(&gp).unwrap().any_holds());
            // commuting reduction: ab + bc - ac > 0 or ab + ac - bc > 0
            let m = matrix_criterion(&gp).unwrap();
            prop_assert_eq!(m.xy_holds, a * b + b * c - a * c > 0.0);
        }
    }
}
