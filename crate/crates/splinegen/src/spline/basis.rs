//! Knot span search and basis function evaluation.
//!
//! Spans are half-open `[t_i, t_{i+1})`; the last nonzero-width span is
//! closed so that `u = 1` evaluates cleanly at the right end of the domain.

use super::KnotVector;

/// Returns the span index `i` with `t_i <= u < t_{i+1}`.
///
/// For `u = 1` (or anything at/above the domain end) this returns the last
/// span with nonzero width, which for a validated clamped vector is
/// `control_count - 1`.
pub fn find_span(knots: &KnotVector, degree: usize, u: f64) -> usize {
    let t = knots.as_slice();
    let n_ctrl = knots.control_count(degree);
    if u >= t[n_ctrl] {
        return n_ctrl - 1;
    }
    if u <= t[degree] {
        return degree;
    }
    let (mut lo, mut hi) = (degree, n_ctrl);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if u < t[mid] {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// Evaluates the `degree + 1` basis functions that are nonzero at `u`.
///
/// Returns `(first, values)` where `values[k]` is `N_{first+k, degree}(u)`.
/// The values are nonnegative and sum to 1 (partition of unity).
pub fn basis_functions(knots: &KnotVector, degree: usize, u: f64) -> (usize, Vec<f64>) {
    let span = find_span(knots, degree, u);
    let t = knots.as_slice();
    let mut vals = vec![0.0; degree + 1];
    let mut left = vec![0.0; degree + 1];
    let mut right = vec![0.0; degree + 1];
    vals[0] = 1.0;
    for j in 1..=degree {
        left[j] = u - t[span + 1 - j];
        right[j] = t[span + j] - u;
        let mut saved = 0.0;
        for r in 0..j {
            let denom = right[r + 1] + left[j - r];
            let temp = if denom != 0.0 { vals[r] / denom } else { 0.0 };
            vals[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        vals[j] = saved;
    }
    (span - degree, vals)
}

/// Values and first derivatives of the active basis functions at `u`,
/// including derivatives with respect to every knot.
#[derive(Debug, Clone)]
pub struct BasisDerivatives {
    /// Index of the first active basis function.
    pub first: usize,
    /// `N_{first+k, degree}(u)` for the `degree + 1` active functions.
    pub values: Vec<f64>,
    /// `d/du N_{first+k, degree}(u)`.
    pub du: Vec<f64>,
    /// `dknots[k][l]` is `d/dt_l N_{first+k, degree}(u)`.
    pub dknots: Vec<Vec<f64>>,
}

#[derive(Clone)]
struct Entry {
    val: f64,
    du: f64,
    dt: Vec<f64>,
}

/// Evaluates active basis functions along with `d/du` and `d/dt_l` by
/// differentiating the Cox–de Boor recursion with the chain rule. Terms with
/// zero-width denominators are dropped, matching the 0/0 = 0 convention of
/// the recursion itself.
pub fn basis_with_knot_derivatives(
    knots: &KnotVector,
    degree: usize,
    u: f64,
) -> BasisDerivatives {
    let span = find_span(knots, degree, u);
    let t = knots.as_slice();
    let nk = t.len();
    let zero = Entry {
        val: 0.0,
        du: 0.0,
        dt: vec![0.0; nk],
    };

    // level q = 0: only N_{span,0} = 1 on this span
    let mut level = vec![Entry {
        val: 1.0,
        ..zero.clone()
    }];

    for q in 1..=degree {
        let mut next = vec![zero.clone(); q + 1];
        for (r, out) in next.iter_mut().enumerate() {
            let i = span + r - q;
            // left term: a * N_{i, q-1}, with N_{i,q-1} = level[r-1]
            if r >= 1 {
                let prev = &level[r - 1];
                let g = t[i + q] - t[i];
                if g != 0.0 {
                    let f = u - t[i];
                    let a = f / g;
                    out.val += a * prev.val;
                    out.du += prev.val / g + a * prev.du;
                    for (l, d) in out.dt.iter_mut().enumerate() {
                        *d += a * prev.dt[l];
                    }
                    // d a / d t_i and d a / d t_{i+q}
                    out.dt[i] += (u - t[i + q]) / (g * g) * prev.val;
                    out.dt[i + q] += -f / (g * g) * prev.val;
                }
            }
            // right term: b * N_{i+1, q-1}, with N_{i+1,q-1} = level[r]
            if r <= q - 1 {
                let prev = &level[r];
                let g = t[i + q + 1] - t[i + 1];
                if g != 0.0 {
                    let f = t[i + q + 1] - u;
                    let b = f / g;
                    out.val += b * prev.val;
                    out.du += -prev.val / g + b * prev.du;
                    for (l, d) in out.dt.iter_mut().enumerate() {
                        *d += b * prev.dt[l];
                    }
                    out.dt[i + q + 1] += (u - t[i + 1]) / (g * g) * prev.val;
                    out.dt[i + 1] += f / (g * g) * prev.val;
                }
            }
        }
        level = next;
    }

    BasisDerivatives {
        first: span - degree,
        values: level.iter().map(|e| e.val).collect(),
        du: level.iter().map(|e| e.du).collect(),
        dknots: level.into_iter().map(|e| e.dt).collect(),
    }
}
