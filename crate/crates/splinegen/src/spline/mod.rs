//! Exact B-spline mathematics: knot vectors, basis evaluation, curve
//! evaluation, least-squares fitting, and fit-quality metrics.
//!
//! All curves are clamped (end knots repeated `degree + 1` times) over the
//! fixed parameter domain `[0, 1]`.

mod basis;
mod fit;
mod metrics;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use basis::{basis_functions, basis_with_knot_derivatives, find_span, BasisDerivatives};
pub use fit::{
    build_collocation, check_schoenberg_whitney, least_squares_fit, solve_normal_equations,
    CollocationMatrix, NormalSolve, COND_SINGULAR, RIDGE_SCALE,
};
pub use metrics::{hausdorff, max_error, mse_error, mse_error_with, paired_distances, MseMode};

/// A 3D point or vector.
pub type Point3 = [f64; 3];

pub(crate) fn sub3(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn norm3(a: Point3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

pub(crate) fn dist3(a: Point3, b: Point3) -> f64 {
    norm3(sub3(a, b))
}

/// Non-decreasing knot values in `[0, 1]`.
///
/// Construction validates monotonicity and range; degree-dependent structure
/// (clamping, interior multiplicity) is checked by [`KnotVector::validate_for_degree`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>")]
pub struct KnotVector(Vec<f64>);

impl TryFrom<Vec<f64>> for KnotVector {
    type Error = Error;
    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl KnotVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 4 {
            return Err(Error::InvalidKnots(format!(
                "need at least 4 knots, got {}",
                values.len()
            )));
        }
        for w in values.windows(2) {
            if !(w[1] >= w[0]) {
                return Err(Error::InvalidKnots(format!(
                    "knots must be non-decreasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if values.iter().any(|t| !t.is_finite() || *t < 0.0 || *t > 1.0) {
            return Err(Error::InvalidKnots(
                "knot values must be finite and within [0, 1]".into(),
            ));
        }
        Ok(Self(values))
    }

    /// Builds a clamped knot vector from interior knots: `degree + 1` zeros,
    /// the (sorted, validated) interior values, then `degree + 1` ones.
    pub fn clamped(degree: usize, interior: &[f64]) -> Result<Self> {
        let mut values = vec![0.0; degree + 1];
        values.extend_from_slice(interior);
        values.extend(std::iter::repeat(1.0).take(degree + 1));
        let kv = Self::new(values)?;
        kv.validate_for_degree(degree)?;
        Ok(kv)
    }

    /// Checks the clamped structure for the given degree: the first and last
    /// knot values have multiplicity exactly `degree + 1` (so every interior
    /// knot is strictly inside `(0, 1)`), and no interior value repeats more
    /// than `degree` times.
    pub fn validate_for_degree(&self, degree: usize) -> Result<()> {
        let t = &self.0;
        if t.len() < 2 * (degree + 1) {
            return Err(Error::InvalidKnots(format!(
                "need at least {} knots for degree {}, got {}",
                2 * (degree + 1),
                degree,
                t.len()
            )));
        }
        let n_ctrl = t.len() - degree - 1;
        if t[degree] != 0.0 || t[0] != 0.0 {
            return Err(Error::InvalidKnots(
                "clamped vector must start with degree+1 zeros".into(),
            ));
        }
        if t[n_ctrl] != 1.0 || *t.last().unwrap() != 1.0 {
            return Err(Error::InvalidKnots(
                "clamped vector must end with degree+1 ones".into(),
            ));
        }
        let interior = &t[degree + 1..n_ctrl];
        if interior.iter().any(|u| *u <= 0.0 || *u >= 1.0) {
            return Err(Error::InvalidKnots(
                "interior knots must lie strictly inside (0, 1)".into(),
            ));
        }
        let mut run = 1usize;
        for w in interior.windows(2) {
            if w[0] == w[1] {
                run += 1;
                if run > degree {
                    return Err(Error::InvalidKnots(format!(
                        "interior knot {} has multiplicity > degree {}",
                        w[0], degree
                    )));
                }
            } else {
                run = 1;
            }
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of control points a curve over this vector has: `len - degree - 1`.
    pub fn control_count(&self, degree: usize) -> usize {
        self.0.len() - degree - 1
    }

    /// The interior knots (everything strictly between the clamped ends).
    pub fn interior(&self, degree: usize) -> &[f64] {
        &self.0[degree + 1..self.control_count(degree)]
    }
}

impl std::ops::Deref for KnotVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A clamped B-spline curve over `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveRepr")]
pub struct BSplineCurve {
    degree: usize,
    knots: KnotVector,
    control_points: Vec<Point3>,
}

#[derive(Deserialize)]
struct CurveRepr {
    degree: usize,
    knots: KnotVector,
    control_points: Vec<Point3>,
}

impl TryFrom<CurveRepr> for BSplineCurve {
    type Error = Error;
    fn try_from(r: CurveRepr) -> Result<Self> {
        Self::new(r.degree, r.knots, r.control_points)
    }
}

impl BSplineCurve {
    pub fn new(degree: usize, knots: KnotVector, control_points: Vec<Point3>) -> Result<Self> {
        if degree < 1 {
            return Err(Error::Degenerate("degree must be at least 1".into()));
        }
        if control_points.len() < degree + 1 {
            return Err(Error::Dimension(format!(
                "need at least {} control points for degree {}, got {}",
                degree + 1,
                degree,
                control_points.len()
            )));
        }
        if knots.len() != control_points.len() + degree + 1 {
            return Err(Error::Dimension(format!(
                "knot count {} != control point count {} + degree {} + 1",
                knots.len(),
                control_points.len(),
                degree
            )));
        }
        knots.validate_for_degree(degree)?;
        Ok(Self {
            degree,
            knots,
            control_points,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn control_points(&self) -> &[Point3] {
        &self.control_points
    }

    /// Evaluates the curve at `u` in `[0, 1]`.
    pub fn eval(&self, u: f64) -> Point3 {
        let (first, vals) = basis_functions(&self.knots, self.degree, u);
        let mut out = [0.0; 3];
        for (k, w) in vals.iter().enumerate() {
            let p = self.control_points[first + k];
            out[0] += w * p[0];
            out[1] += w * p[1];
            out[2] += w * p[2];
        }
        out
    }

    /// Evaluates the curve at each parameter value.
    pub fn eval_many(&self, params: &[f64]) -> Vec<Point3> {
        params.iter().map(|&u| self.eval(u)).collect()
    }
}

/// A variable-size set of unorganized 3D data points (at least 2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet(Vec<Point3>);

impl PointSet {
    pub fn new(points: Vec<Point3>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Dimension(format!(
                "point set needs at least 2 points, got {}",
                points.len()
            )));
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("point coordinates".into()));
        }
        Ok(Self(points))
    }

    pub fn points(&self) -> &[Point3] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every coordinate lies in `[0, 1]` (normalized data).
    pub fn in_unit_cube(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|c| (0.0..=1.0).contains(c))
    }
}

impl std::ops::Deref for PointSet {
    type Target = [Point3];
    fn deref(&self) -> &[Point3] {
        &self.0
    }
}

/// Per-point parameter values in `[0, 1]`, aligned with a point set's order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamAssignment(Vec<f64>);

impl ParamAssignment {
    pub fn new(params: Vec<f64>) -> Result<Self> {
        if params.iter().any(|u| !u.is_finite() || *u < 0.0 || *u > 1.0) {
            return Err(Error::Degenerate(
                "parameter values must be finite and within [0, 1]".into(),
            ));
        }
        Ok(Self(params))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Deref for ParamAssignment {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Fit-quality summary for one least-squares fit.
///
/// `hausdorff` never exceeds `max_error`: the directed Hausdorff distance
/// uses closest points, so the paired distance is an upper bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub max_error: f64,
    pub mse_error: f64,
    pub hausdorff: f64,
    pub condition_flag: bool,
    pub empty_span_count: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knot_vector_rejects_decreasing() {
        assert!(KnotVector::new(vec![0.0, 0.5, 0.4, 1.0]).is_err());
    }

    #[test]
    fn knot_vector_rejects_out_of_range() {
        assert!(KnotVector::new(vec![0.0, 0.0, 1.0, 1.5]).is_err());
        assert!(KnotVector::new(vec![-0.1, 0.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn clamped_builder_checks_multiplicity() {
        // multiplicity 3 > degree 2
        assert!(KnotVector::clamped(2, &[0.5, 0.5, 0.5]).is_err());
        assert!(KnotVector::clamped(3, &[0.25, 0.5, 0.75]).is_ok());
        // interior knot at an endpoint inflates the end multiplicity
        assert!(KnotVector::clamped(3, &[0.0, 0.5]).is_err());
        assert!(KnotVector::clamped(3, &[0.5, 1.0]).is_err());
    }

    #[test]
    fn curve_validates_count_relation() {
        let knots = KnotVector::clamped(3, &[]).unwrap();
        let pts = vec![[0.0; 3]; 4];
        assert!(BSplineCurve::new(3, knots.clone(), pts).is_ok());
        let too_few = vec![[0.0; 3]; 3];
        assert!(BSplineCurve::new(3, knots, too_few).is_err());
    }

    #[test]
    fn endpoint_interpolation_is_exact() {
        let knots = KnotVector::clamped(3, &[0.3, 0.7]).unwrap();
        let ctrl = vec![
            [0.1, 0.2, 0.3],
            [0.4, 0.9, 0.1],
            [0.5, 0.5, 0.5],
            [0.7, 0.1, 0.9],
            [0.2, 0.8, 0.4],
            [0.9, 0.3, 0.6],
        ];
        let curve = BSplineCurve::new(3, knots, ctrl.clone()).unwrap();
        assert_eq!(curve.eval(0.0), ctrl[0]);
        assert_eq!(curve.eval(1.0), ctrl[5]);
    }

    #[test]
    fn linear_curve_interpolates() {
        let knots = KnotVector::new(vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        let curve =
            BSplineCurve::new(1, knots, vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]).unwrap();
        let p = curve.eval(0.25);
        assert!((p[0] - 0.25).abs() < 1e-15);
        assert_eq!(p[1], 0.0);
    }

    #[test]
    fn curve_json_schema_round_trips() {
        let knots = KnotVector::clamped(2, &[0.5]).unwrap();
        let curve = BSplineCurve::new(
            2,
            knots,
            vec![[0.0; 3], [0.5, 1.0, 0.0], [0.25, 0.5, 0.75], [1.0; 3]],
        )
        .unwrap();
        let js = serde_json::to_value(&curve).unwrap();
        assert!(js.get("degree").is_some());
        assert!(js.get("knots").unwrap().is_array());
        assert_eq!(js.get("control_points").unwrap().as_array().unwrap().len(), 4);
        let back: BSplineCurve = serde_json::from_value(js).unwrap();
        assert_eq!(back, curve);
    }
}
