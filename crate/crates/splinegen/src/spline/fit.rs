//! Least-squares fitting: collocation matrix assembly and the normal
//! equations solve, with conditioning diagnostics.

use nalgebra::DMatrix;

use super::{
    basis_functions, find_span, hausdorff, max_error, mse_error, BSplineCurve, FitReport,
    KnotVector, ParamAssignment, PointSet,
};
use crate::error::{Error, Result};

/// Condition-number threshold above which the normal matrix is treated as
/// numerically rank-deficient and the solve is ridge-regularized.
pub const COND_SINGULAR: f64 = 1e12;

/// Ridge factor: the regularizer is `RIDGE_SCALE * trace(NᵀN) / n_ctrl`.
pub const RIDGE_SCALE: f64 = 1e-10;

/// Banded collocation matrix: row `j` holds the `degree + 1` basis values
/// that are nonzero at `u_j`, starting at column `starts[j]`.
#[derive(Debug, Clone)]
pub struct CollocationMatrix {
    n_rows: usize,
    n_cols: usize,
    degree: usize,
    starts: Vec<usize>,
    vals: Vec<f64>,
}

impl CollocationMatrix {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Row `j` as `(first_column, values)`.
    pub fn row(&self, j: usize) -> (usize, &[f64]) {
        let w = self.degree + 1;
        (self.starts[j], &self.vals[j * w..(j + 1) * w])
    }

    /// Dense copy, used by diagnostics and oracle paths.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n_rows, self.n_cols);
        for j in 0..self.n_rows {
            let (s, row) = self.row(j);
            for (k, v) in row.iter().enumerate() {
                m[(j, s + k)] = *v;
            }
        }
        m
    }

    /// `NᵀN`, assembled from the band structure.
    pub fn normal_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n_cols, self.n_cols);
        for j in 0..self.n_rows {
            let (s, row) = self.row(j);
            for (k1, v1) in row.iter().enumerate() {
                for (k2, v2) in row.iter().enumerate() {
                    a[(s + k1, s + k2)] += v1 * v2;
                }
            }
        }
        a
    }

    /// `NᵀD` for 3D data points, one column per coordinate.
    pub fn normal_rhs(&self, points: &[super::Point3]) -> DMatrix<f64> {
        let mut b = DMatrix::zeros(self.n_cols, 3);
        for j in 0..self.n_rows {
            let (s, row) = self.row(j);
            for (k, v) in row.iter().enumerate() {
                for c in 0..3 {
                    b[(s + k, c)] += v * points[j][c];
                }
            }
        }
        b
    }
}

/// Builds the collocation matrix with entry `(j, i) = N_{i,degree}(u_j)`.
pub fn build_collocation(
    params: &ParamAssignment,
    knots: &KnotVector,
    degree: usize,
    n_ctrl: usize,
) -> Result<CollocationMatrix> {
    knots.validate_for_degree(degree)?;
    if knots.control_count(degree) != n_ctrl {
        return Err(Error::Dimension(format!(
            "knot count {} does not match {} control points of degree {}",
            knots.len(),
            n_ctrl,
            degree
        )));
    }
    if params.is_empty() {
        return Err(Error::Dimension("empty parameter list".into()));
    }
    let w = degree + 1;
    let mut starts = Vec::with_capacity(params.len());
    let mut vals = Vec::with_capacity(params.len() * w);
    for &u in params.values() {
        let (first, row) = basis_functions(knots, degree, u);
        starts.push(first);
        vals.extend_from_slice(&row);
    }
    Ok(CollocationMatrix {
        n_rows: params.len(),
        n_cols: n_ctrl,
        degree,
        starts,
        vals,
    })
}

/// Counts nonzero-width knot spans that contain no parameter value.
///
/// Zero means the fit is well-posed in the Schoenberg–Whitney sense; every
/// empty span contributes a (near-)singular direction to the normal matrix.
pub fn check_schoenberg_whitney(
    params: &ParamAssignment,
    knots: &KnotVector,
    degree: usize,
) -> usize {
    let n_ctrl = knots.control_count(degree);
    let mut occupied = vec![false; n_ctrl];
    for &u in params.values() {
        occupied[find_span(knots, degree, u)] = true;
    }
    (degree..n_ctrl)
        .filter(|&i| knots[i + 1] > knots[i] && !occupied[i])
        .count()
}

/// Outcome of a normal-equations solve.
pub struct NormalSolve {
    /// Control points, one row per basis function, columns x/y/z.
    pub solution: DMatrix<f64>,
    /// Cholesky-factored system matrix actually solved (after any ridge).
    pub system: DMatrix<f64>,
    /// True when the solve was ridge-regularized.
    pub regularized: bool,
    /// Estimated 2-norm condition number of the unregularized matrix.
    pub condition: f64,
}

/// Solves `(NᵀN) P = NᵀD`, ridge-regularizing when the matrix is
/// ill-conditioned (or when `force_ridge` asks for it).
pub fn solve_normal_equations(
    mut a: DMatrix<f64>,
    b: DMatrix<f64>,
    force_ridge: bool,
) -> Result<NormalSolve> {
    let n = a.nrows();
    let svd = a.clone().svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let smin = svd.singular_values.iter().cloned().fold(f64::MAX, f64::min);
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    let regularized = force_ridge || !condition.is_finite() || condition > COND_SINGULAR;
    if regularized {
        let lambda = RIDGE_SCALE * a.trace() / n as f64;
        for i in 0..n {
            a[(i, i)] += lambda;
        }
    }
    let chol = a.clone().cholesky().ok_or_else(|| {
        Error::Degenerate("normal matrix not positive definite even after ridge".into())
    })?;
    let solution = chol.solve(&b);
    if solution.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("normal equations solution".into()));
    }
    Ok(NormalSolve {
        solution,
        system: a,
        regularized,
        condition,
    })
}

/// Fits control points to `points` at the given parameters and knots by
/// solving the normal equations, and reports fit metrics and conditioning
/// diagnostics. Ill-conditioned systems are ridge-regularized and flagged
/// rather than rejected.
pub fn least_squares_fit(
    points: &PointSet,
    params: &ParamAssignment,
    knots: &KnotVector,
    degree: usize,
) -> Result<(BSplineCurve, FitReport)> {
    if params.len() != points.len() {
        return Err(Error::Dimension(format!(
            "{} parameters for {} points",
            params.len(),
            points.len()
        )));
    }
    let n_ctrl = knots.control_count(degree);
    if points.len() < n_ctrl {
        return Err(Error::Dimension(format!(
            "{} points cannot determine {} control points",
            points.len(),
            n_ctrl
        )));
    }
    let colloc = build_collocation(params, knots, degree, n_ctrl)?;
    let empty_span_count = check_schoenberg_whitney(params, knots, degree);
    if empty_span_count > 0 {
        log::warn!(
            "{empty_span_count} empty knot span(s): normal matrix is poorly conditioned, \
             applying ridge regularization"
        );
    }
    let solve = solve_normal_equations(
        colloc.normal_matrix(),
        colloc.normal_rhs(points.points()),
        empty_span_count > 0,
    )?;
    let condition_flag = solve.regularized;
    let control_points: Vec<super::Point3> = (0..n_ctrl)
        .map(|i| [solve.solution[(i, 0)], solve.solution[(i, 1)], solve.solution[(i, 2)]])
        .collect();
    let curve = BSplineCurve::new(degree, knots.clone(), control_points)?;
    let report = FitReport {
        max_error: max_error(&curve, params, points)?,
        mse_error: mse_error(&curve, params, points)?,
        hausdorff: hausdorff(&curve.eval_many(params), points.points())?,
        condition_flag,
        empty_span_count,
    };
    Ok((curve, report))
}
