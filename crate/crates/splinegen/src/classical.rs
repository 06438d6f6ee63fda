//! Classical parameterization and knot-placement baselines.
//!
//! These methods assume the input points are already in curve order;
//! ordering unorganized data is the caller's job.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::spline::{
    dist3, least_squares_fit, BSplineCurve, FitReport, KnotVector, ParamAssignment, PointSet,
};

/// Parameterization method for ordered points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamMethod {
    Uniform,
    ChordLength,
    Centripetal,
}

impl ParamMethod {
    pub const ALL: [ParamMethod; 3] = [
        ParamMethod::Uniform,
        ParamMethod::ChordLength,
        ParamMethod::Centripetal,
    ];
}

impl FromStr for ParamMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "chord" => Ok(Self::ChordLength),
            "centripetal" => Ok(Self::Centripetal),
            other => Err(Error::Usage(format!(
                "unknown parameterization '{other}' (expected uniform|chord|centripetal)"
            ))),
        }
    }
}

impl fmt::Display for ParamMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Uniform => "uniform",
            Self::ChordLength => "chord",
            Self::Centripetal => "centripetal",
        })
    }
}

/// Knot-placement method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotMethod {
    Uniform,
    Avg,
    Ktp,
    Nktp,
}

impl KnotMethod {
    pub const ALL: [KnotMethod; 4] = [
        KnotMethod::Uniform,
        KnotMethod::Avg,
        KnotMethod::Ktp,
        KnotMethod::Nktp,
    ];
}

impl FromStr for KnotMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "avg" => Ok(Self::Avg),
            "ktp" => Ok(Self::Ktp),
            "nktp" => Ok(Self::Nktp),
            other => Err(Error::Usage(format!(
                "unknown knot method '{other}' (expected uniform|avg|ktp|nktp)"
            ))),
        }
    }
}

impl fmt::Display for KnotMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Uniform => "uniform",
            Self::Avg => "avg",
            Self::Ktp => "ktp",
            Self::Nktp => "nktp",
        })
    }
}

/// Assigns a parameter in `[0, 1]` to each point of an ordered sequence.
///
/// Chord length accumulates Euclidean distances, centripetal accumulates
/// square roots of distances, uniform ignores geometry. Zero-length segments
/// (duplicate consecutive points) collapse, so parameters may repeat.
pub fn parameterize(points: &PointSet, method: ParamMethod) -> Result<ParamAssignment> {
    let pts = points.points();
    let m = pts.len() - 1;
    let values = match method {
        ParamMethod::Uniform => (0..=m).map(|j| j as f64 / m as f64).collect(),
        ParamMethod::ChordLength | ParamMethod::Centripetal => {
            let exponent = if method == ParamMethod::ChordLength {
                1.0
            } else {
                0.5
            };
            let mut duplicates = 0usize;
            let mut cum = Vec::with_capacity(m + 1);
            cum.push(0.0);
            let mut total = 0.0;
            for w in pts.windows(2) {
                let d = dist3(w[0], w[1]);
                if d == 0.0 {
                    duplicates += 1;
                }
                total += d.powf(exponent);
                cum.push(total);
            }
            if duplicates > 0 {
                log::warn!(
                    "{duplicates} zero-length segment(s) collapsed during {method} parameterization"
                );
            }
            if total == 0.0 {
                log::warn!("all points coincide; falling back to uniform parameters");
                return parameterize(points, ParamMethod::Uniform);
            }
            cum.into_iter().map(|c| (c / total).min(1.0)).collect()
        }
    };
    ParamAssignment::new(values)
}

/// Places a clamped knot vector of length `n_ctrl + degree + 1` from sorted
/// parameters.
///
/// - `Uniform`: interior knots equally spaced over (0, 1).
/// - `Avg`: interpolation regime (point count = `n_ctrl`); interior knot `j`
///   averages the parameter window `u_j ..= u_{j+degree-1}`.
/// - `Ktp`: approximation regime (point count > `n_ctrl`); with
///   `d = (m+1)/(n-degree+1)`, interior knot `j` is
///   `(1-alpha) u_{i-1} + alpha u_i` for `i = floor(j*d)`, `alpha = j*d - i`.
/// - `Nktp`: stability-oriented averaging variant of KTP; the interior value
///   is the mean of the KTP parameter window extended symmetrically by one
///   sample on each side.
pub fn place_knots(
    params: &ParamAssignment,
    degree: usize,
    n_ctrl: usize,
    method: KnotMethod,
) -> Result<KnotVector> {
    if n_ctrl < degree + 1 {
        return Err(Error::Dimension(format!(
            "need at least {} control points for degree {degree}, got {n_ctrl}",
            degree + 1
        )));
    }
    if params.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Degenerate(
            "knot placement requires parameters sorted ascending".into(),
        ));
    }
    let m = params.len() - 1;
    let n = n_ctrl - 1;
    let n_interior = n_ctrl - degree - 1;
    let u = params.values();
    let interior: Vec<f64> = match method {
        KnotMethod::Uniform => (1..=n_interior)
            .map(|j| j as f64 / (n_interior + 1) as f64)
            .collect(),
        KnotMethod::Avg => {
            if params.len() != n_ctrl {
                return Err(Error::Dimension(format!(
                    "avg knots require point count = control count, got {} points for {} controls",
                    params.len(),
                    n_ctrl
                )));
            }
            (1..=n_interior)
                .map(|j| u[j..j + degree].iter().sum::<f64>() / degree as f64)
                .collect()
        }
        KnotMethod::Ktp | KnotMethod::Nktp => {
            if params.len() <= n_ctrl {
                return Err(Error::Dimension(format!(
                    "ktp/nktp require point count > control count, got {} points for {} controls",
                    params.len(),
                    n_ctrl
                )));
            }
            let d = (m + 1) as f64 / (n - degree + 1) as f64;
            (1..=n_interior)
                .map(|j| {
                    let jd = j as f64 * d;
                    let i = jd.floor() as usize;
                    match method {
                        KnotMethod::Ktp => {
                            let alpha = jd - i as f64;
                            (1.0 - alpha) * u[i - 1] + alpha * u[i]
                        }
                        KnotMethod::Nktp => {
                            let lo = i.saturating_sub(2);
                            let hi = (i + 1).min(m);
                            let window = &u[lo..=hi];
                            window.iter().sum::<f64>() / window.len() as f64
                        }
                        _ => unreachable!(),
                    }
                })
                .collect()
        }
    };
    KnotVector::clamped(degree, &interior)
}

/// Runs one classical baseline: parameterize, place knots, least-squares fit.
pub fn run_baseline(
    points: &PointSet,
    degree: usize,
    n_ctrl: usize,
    pm: ParamMethod,
    km: KnotMethod,
) -> Result<(BSplineCurve, FitReport)> {
    let params = parameterize(points, pm)?;
    let knots = place_knots(&params, degree, n_ctrl, km)?;
    least_squares_fit(points, &params, &knots, degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spline::check_schoenberg_whitney;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pts(v: &[[f64; 3]]) -> PointSet {
        PointSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn uniform_five_points() {
        let p = pts(&[[0.0; 3], [0.1; 3], [0.2; 3], [0.3; 3], [0.4; 3]]);
        let u = parameterize(&p, ParamMethod::Uniform).unwrap();
        assert_eq!(u.values(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn chord_hand_example() {
        // segment lengths 3 and 5: cumulative ratios [0, 3/8, 1]
        let p = pts(&[[0.0, 0.0, 0.0], [3.0, 0.0, 0.0], [6.0, 4.0, 0.0]]);
        let u = parameterize(&p, ParamMethod::ChordLength).unwrap();
        assert!((u[0] - 0.0).abs() < 1e-12);
        assert!((u[1] - 0.375).abs() < 1e-12);
        assert!((u[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn centripetal_hand_example() {
        let p = pts(&[[0.0, 0.0, 0.0], [3.0, 0.0, 0.0], [6.0, 4.0, 0.0]]);
        let u = parameterize(&p, ParamMethod::Centripetal).unwrap();
        let expect = 3f64.sqrt() / (3f64.sqrt() + 5f64.sqrt());
        assert!((u[1] - expect).abs() < 1e-12);
        assert!((u[1] - 0.4365).abs() < 1e-3);
    }

    #[test]
    fn duplicate_points_repeat_parameters() {
        let p = pts(&[[0.0; 3], [0.5, 0.0, 0.0], [0.5, 0.0, 0.0], [1.0, 0.0, 0.0]]);
        let u = parameterize(&p, ParamMethod::ChordLength).unwrap();
        assert_eq!(u[1], u[2]);
        assert_eq!(u[0], 0.0);
        assert_eq!(u[3], 1.0);
    }

    #[test]
    fn uniform_knots_single_interior() {
        let u = ParamAssignment::new((0..10).map(|j| j as f64 / 9.0).collect()).unwrap();
        let kv = place_knots(&u, 3, 5, KnotMethod::Uniform).unwrap();
        assert_eq!(kv.as_slice(), &[0.0, 0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn ktp_hand_example() {
        // 10 uniform params, degree 3, 5 controls: d = 5, j = 1 -> i = 5, alpha = 0
        let u = ParamAssignment::new((0..10).map(|j| j as f64 / 9.0).collect()).unwrap();
        let kv = place_knots(&u, 3, 5, KnotMethod::Ktp).unwrap();
        let interior = kv.interior(3);
        assert_eq!(interior.len(), 1);
        assert!((interior[0] - 4.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn avg_hand_example() {
        let u = ParamAssignment::new(vec![0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        let kv = place_knots(&u, 3, 5, KnotMethod::Avg).unwrap();
        let interior = kv.interior(3);
        assert_eq!(interior.len(), 1);
        assert!((interior[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn avg_regime_mismatch_is_error() {
        let u = ParamAssignment::new((0..10).map(|j| j as f64 / 9.0).collect()).unwrap();
        assert!(place_knots(&u, 3, 5, KnotMethod::Avg).is_err());
        let short = ParamAssignment::new(vec![0.0, 0.5, 1.0]).unwrap();
        assert!(place_knots(&short, 3, 5, KnotMethod::Ktp).is_err());
    }

    #[test]
    fn collinear_baseline_is_exact() {
        // evenly spaced so uniform and chord parameters coincide
        let p = pts(&[[0.0; 3], [0.25, 0.0, 0.0], [0.5, 0.0, 0.0], [0.75, 0.0, 0.0], [1.0, 0.0, 0.0]]);
        for pm in ParamMethod::ALL {
            let (_, report) = run_baseline(&p, 1, 2, pm, KnotMethod::Uniform).unwrap();
            assert!(report.max_error < 1e-12, "{pm}: {}", report.max_error);
        }
    }

    fn random_sorted_params(rng: &mut ChaCha8Rng, count: usize) -> ParamAssignment {
        let mut u: Vec<f64> = (0..count - 2).map(|_| rng.gen_range(0.0..1.0)).collect();
        u.push(0.0);
        u.push(1.0);
        u.sort_by(f64::total_cmp);
        ParamAssignment::new(u).unwrap()
    }

    #[test]
    fn param_invariants_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let count = rng.gen_range(3..40);
            let raw: Vec<[f64; 3]> = (0..count)
                .map(|_| [rng.gen(), rng.gen(), rng.gen()])
                .collect();
            let p = pts(&raw);
            for pm in ParamMethod::ALL {
                let u = parameterize(&p, pm).unwrap();
                assert_eq!(u[0], 0.0);
                assert_eq!(u[count - 1], 1.0);
                assert!(u.windows(2).all(|w| w[1] >= w[0]));
            }
        }
    }

    #[test]
    fn knot_nesting_and_occupancy_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let degree = rng.gen_range(2..=4usize);
            let n_ctrl = rng.gen_range(degree + 2..=degree + 7);
            let count = rng.gen_range(2 * n_ctrl..5 * n_ctrl);
            let u = random_sorted_params(&mut rng, count);
            for km in [KnotMethod::Ktp, KnotMethod::Nktp] {
                let kv = place_knots(&u, degree, n_ctrl, km).unwrap();
                for t in kv.interior(degree) {
                    assert!(*t >= u[0] && *t <= u[count - 1]);
                }
                assert_eq!(
                    check_schoenberg_whitney(&u, &kv, degree),
                    0,
                    "{km} left an empty span (degree {degree}, n_ctrl {n_ctrl}, m+1 {count})"
                );
            }
        }
    }

    #[test]
    fn avg_nesting_in_interpolation_regime() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let degree = rng.gen_range(2..=4usize);
            let n_ctrl = rng.gen_range(degree + 2..=degree + 8);
            let u = random_sorted_params(&mut rng, n_ctrl);
            let kv = place_knots(&u, degree, n_ctrl, KnotMethod::Avg).unwrap();
            for t in kv.interior(degree) {
                assert!(*t >= u[0] && *t <= u[n_ctrl - 1]);
            }
        }
    }

    #[test]
    fn parameterize_is_rigid_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..25 {
            let count = rng.gen_range(3..20);
            let raw: Vec<[f64; 3]> = (0..count)
                .map(|_| [rng.gen(), rng.gen(), rng.gen()])
                .collect();
            // rotation about z by a random angle plus a translation
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (s, c) = th.sin_cos();
            let shift = [rng.gen::<f64>(), rng.gen(), rng.gen()];
            let moved: Vec<[f64; 3]> = raw
                .iter()
                .map(|p| {
                    [
                        c * p[0] - s * p[1] + shift[0],
                        s * p[0] + c * p[1] + shift[1],
                        p[2] + shift[2],
                    ]
                })
                .collect();
            for pm in [ParamMethod::ChordLength, ParamMethod::Centripetal] {
                let a = parameterize(&pts(&raw), pm).unwrap();
                let b = parameterize(&pts(&moved), pm).unwrap();
                for (x, y) in a.iter().zip(b.iter()) {
                    assert!((x - y).abs() <= 1e-12);
                }
            }
        }
    }
}
