//! Fit-quality metrics: max paired distance, mean (or mean-squared) paired
//! distance, and the symmetric Hausdorff distance.

use super::{dist3, BSplineCurve, ParamAssignment, Point3, PointSet};
use crate::error::{Error, Result};

/// Which aggregate the "MSE" metric computes.
///
/// The default mirrors the reported formula: the plain mean of Euclidean
/// distances. `SquaredMean` averages squared distances instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MseMode {
    #[default]
    DistanceMean,
    SquaredMean,
}

/// Distances `||C(u_j) - D_j||` between curve evaluations and their data points.
pub fn paired_distances(
    curve: &BSplineCurve,
    params: &ParamAssignment,
    points: &PointSet,
) -> Result<Vec<f64>> {
    if params.len() != points.len() {
        return Err(Error::Dimension(format!(
            "{} parameters for {} points",
            params.len(),
            points.len()
        )));
    }
    if params.is_empty() {
        return Err(Error::Dimension("empty point set".into()));
    }
    Ok(params
        .values()
        .iter()
        .zip(points.points())
        .map(|(&u, &d)| dist3(curve.eval(u), d))
        .collect())
}

/// Maximum paired Euclidean distance.
pub fn max_error(curve: &BSplineCurve, params: &ParamAssignment, points: &PointSet) -> Result<f64> {
    Ok(paired_distances(curve, params, points)?
        .into_iter()
        .fold(0.0, f64::max))
}

/// Mean of paired Euclidean distances.
pub fn mse_error(curve: &BSplineCurve, params: &ParamAssignment, points: &PointSet) -> Result<f64> {
    mse_error_with(curve, params, points, MseMode::DistanceMean)
}

pub fn mse_error_with(
    curve: &BSplineCurve,
    params: &ParamAssignment,
    points: &PointSet,
    mode: MseMode,
) -> Result<f64> {
    let d = paired_distances(curve, params, points)?;
    let n = d.len() as f64;
    Ok(match mode {
        MseMode::DistanceMean => d.iter().sum::<f64>() / n,
        MseMode::SquaredMean => d.iter().map(|x| x * x).sum::<f64>() / n,
    })
}

/// Symmetric Hausdorff distance between two point sets.
pub fn hausdorff(a: &[Point3], b: &[Point3]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Dimension("hausdorff of an empty set".into()));
    }
    Ok(directed_hausdorff(a, b).max(directed_hausdorff(b, a)))
}

fn directed_hausdorff(from: &[Point3], to: &[Point3]) -> f64 {
    from.iter()
        .map(|p| {
            to.iter()
                .map(|q| dist3(*p, *q))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}
