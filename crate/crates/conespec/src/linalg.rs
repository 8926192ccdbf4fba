//! Symmetric tridiagonal eigenvalue machinery (Sturm-sequence bisection,
//! inverse iteration) and a dense cyclic-Jacobi eigensolver used as an
//! independent oracle. The two routes never share code beyond this module's
//! matrix containers, so they can check each other.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: `diag` has length M, `off` length M-1.
#[derive(Debug, Clone)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// y = T x.
    #[must_use]
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim();
        let mut y = vec![0.0; m];
        for i in 0..m {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < m {
                v += self.off[i] * x[i + 1];
            }
            y[i] = v;
        }
        y
    }

    /// Gershgorin interval containing the whole spectrum.
    #[must_use]
    pub fn gershgorin(&self) -> (f64, f64) {
        let m = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..m {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.off[i - 1].abs();
            }
            if i + 1 < m {
                radius += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }
}

/// Number of eigenvalues of T strictly below `x`, by counting negative
/// pivots of the LDLᵀ factorization of T - xI. Zero pivots are nudged to a
/// tiny negative value so exact ties resolve consistently downward.
#[must_use]
pub fn sturm_count(t: &SymTridiag, x: f64) -> usize {
    let m = t.dim();
    let mut count = 0usize;
    let mut d = t.diag[0] - x;
    if d == 0.0 {
        d = -f64::MIN_POSITIVE;
    }
    if d < 0.0 {
        count += 1;
    }
    for i in 1..m {
        let e = t.off[i - 1];
        d = (t.diag[i] - x) - e * e / d;
        if d == 0.0 {
            d = -f64::MIN_POSITIVE;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

const BISECT_BUDGET: usize = 400;
const REL_TOL: f64 = 1e-10;
const ABS_FLOOR: f64 = 1e-14;

/// The k-th smallest eigenvalue (0-indexed) of a symmetric tridiagonal
/// matrix, by bisection on the Sturm count. Relative tolerance 1e-10 with an
/// absolute floor of 1e-14.
pub fn bisect_eigenvalue(t: &SymTridiag, k: usize) -> Result<f64> {
    let (mut lo, mut hi) = t.gershgorin();
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(
            "matrix has non-finite entries; cannot bracket eigenvalues".into(),
        ));
    }
    // Widen marginally so the count brackets strictly.
    let pad = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
    lo -= pad;
    hi += pad;
    for iter in 0..BISECT_BUDGET {
        let mid = 0.5 * (lo + hi);
        let width = hi - lo;
        if width <= REL_TOL * mid.abs().max(ABS_FLOOR / REL_TOL) || width <= ABS_FLOOR {
            return Ok(mid);
        }
        if sturm_count(t, mid) >= k + 1 {
            hi = mid;
        } else {
            lo = mid;
        }
        // Bisection halves the bracket every step; running out of budget
        // means the inputs were degenerate (NaN would have been caught).
        if iter == BISECT_BUDGET - 1 {
            return Err(Error::Bisection {
                iterations: BISECT_BUDGET,
                lo,
                hi,
            });
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The `count` smallest eigenvalues, ascending.
pub fn lowest_eigenvalues(t: &SymTridiag, count: usize) -> Result<Vec<f64>> {
    (0..count).map(|k| bisect_eigenvalue(t, k)).collect()
}

/// Solve (T - shift·I) x = b by tridiagonal LU with partial pivoting.
/// Returns None if every pivot degenerates (shift is an exact eigenvalue of
/// a reducible matrix), which callers handle by nudging the shift.
fn shifted_solve(t: &SymTridiag, shift: f64, b: &[f64]) -> Option<Vec<f64>> {
    let m = t.dim();
    // Row i of the evolving upper-triangular factor holds main[i] (column i),
    // sup[i] (column i+1), and the pivoting fill-in sup2[i] (column i+2).
    let mut main: Vec<f64> = t.diag.iter().map(|d| d - shift).collect();
    let mut sup: Vec<f64> = if m > 1 { t.off.clone() } else { Vec::new() };
    let mut sup2 = vec![0.0; m.saturating_sub(2)];
    let mut x = b.to_vec();
    let tiny = 1e-300;
    for i in 0..m.saturating_sub(1) {
        // Row i: (a, bb, 0); row i+1: (c, d, e) at columns i, i+1, i+2.
        let a = main[i];
        let bb = sup[i];
        let c = t.off[i];
        let d = main[i + 1];
        let e = if i + 2 < m { sup[i + 1] } else { 0.0 };
        if c.abs() > a.abs() {
            main[i] = c;
            sup[i] = d;
            if i + 2 < m {
                sup2[i] = e;
            }
            x.swap(i, i + 1);
            let pivot = if main[i] == 0.0 { tiny } else { main[i] };
            main[i] = pivot;
            let factor = a / pivot;
            main[i + 1] = bb - factor * sup[i];
            if i + 2 < m {
                sup[i + 1] = -factor * sup2[i];
            }
            x[i + 1] -= factor * x[i];
        } else {
            let pivot = if a == 0.0 { tiny } else { a };
            main[i] = pivot;
            if i + 2 < m {
                sup2[i] = 0.0;
            }
            let factor = c / pivot;
            main[i + 1] = d - factor * bb;
            // sup[i + 1] keeps e: the eliminated row contributes no fill-in.
            x[i + 1] -= factor * x[i];
        }
    }
    // Back substitution.
    for i in (0..m).rev() {
        let mut v = x[i];
        if i + 1 < m {
            v -= sup[i] * x[i + 1];
        }
        if i + 2 < m {
            v -= sup2[i] * x[i + 2];
        }
        let pivot = if main[i] == 0.0 { tiny } else { main[i] };
        x[i] = v / pivot;
    }
    if x.iter().all(|v| v.is_finite()) {
        Some(x)
    } else {
        None
    }
}

/// Eigenvector for an eigenvalue estimate, by inverse iteration. The
/// starting vector alternates signs with a node-dependent stride so it is
/// deterministic yet unlikely to be orthogonal to the target.
#[must_use]
pub fn inverse_iteration(t: &SymTridiag, lambda: f64, sweeps: usize) -> Vec<f64> {
    let m = t.dim();
    let mut x: Vec<f64> = (0..m)
        .map(|i| 1.0 + 0.3 * ((i * 2654435761 % 97) as f64 / 97.0 - 0.5))
        .collect();
    let scale = {
        let (lo, hi) = t.gershgorin();
        (hi - lo).abs().max(1.0)
    };
    let mut shift = lambda;
    for _ in 0..sweeps {
        let solved = match shifted_solve(t, shift, &x) {
            Some(v) => v,
            None => {
                shift += 1e-12 * scale;
                continue;
            }
        };
        let norm = solved.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            shift += 1e-12 * scale;
            continue;
        }
        x = solved.iter().map(|v| v / norm).collect();
    }
    x
}

/// All eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// ascending. `a` is row-major, dimension `m`. Cubic per sweep; intended for
/// oracle duty on small problems, guarded by the caller.
#[must_use]
pub fn jacobi_eigenvalues(a: &[f64], m: usize) -> Vec<f64> {
    let mut a = a.to_vec();
    let idx = |i: usize, j: usize| i * m + j;
    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..m {
            for j in (i + 1)..m {
                s += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        s.sqrt()
    };
    let total: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
    let target = 1e-15 * total;
    for _sweep in 0..60 {
        if off_norm(&a) <= target {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[idx(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                // Stable rotation: t = sign(theta)/(|theta| + sqrt(1+theta²)).
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..m).map(|i| a[idx(i, i)]).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Largest generalized eigenvalue of (P, S) with P diagonal ≥ 0 and S
/// symmetric tridiagonal positive definite, by bisection on the inertia of
/// the tridiagonal pencil P - ηS: η exceeds the largest eigenvalue exactly
/// when P - ηS has no positive eigenvalue. Handles P with zero diagonal
/// entries, where a standard-form reduction would divide by zero.
pub fn largest_generalized_inertia(p_diag: &[f64], s: &SymTridiag) -> Result<f64> {
    let m = s.dim();
    if p_diag.len() != m {
        return Err(Error::Internal("pencil dimension mismatch".into()));
    }
    if p_diag.iter().any(|v| *v < 0.0 || !v.is_finite()) {
        return Err(Error::Domain(
            "largest_generalized_inertia requires a nonnegative finite diagonal".into(),
        ));
    }
    // Exact inertia certificate for S ≻ 0 (Gershgorin is far too weak on
    // graded grids where mass and flux entries differ by many orders).
    if sturm_count(s, 0.0) != 0 || s.diag.iter().any(|d| *d <= 0.0) {
        return Err(Error::Domain(
            "singular pencil: the shifted stiffness matrix is not positive definite".into(),
        ));
    }
    let p_max = p_diag.iter().cloned().fold(0.0_f64, f64::max);
    if p_max == 0.0 {
        return Ok(0.0);
    }
    let count_pos = |eta: f64| {
        let shifted = SymTridiag {
            diag: (0..m).map(|i| p_diag[i] - eta * s.diag[i]).collect(),
            off: s.off.iter().map(|o| -eta * o).collect(),
        };
        m - sturm_count(&shifted, 0.0)
    };
    // Grow an upper bracket geometrically: max_i p_i/s_ii is a natural seed
    // but not always an upper bound for the pencil eigenvalue.
    let mut lo = 0.0_f64;
    let mut hi = (0..m)
        .map(|i| p_diag[i] / s.diag[i])
        .fold(ABS_FLOOR, f64::max);
    let mut grow = 0;
    while count_pos(hi) >= 1 {
        hi *= 4.0;
        grow += 1;
        if grow > 600 {
            return Err(Error::Bisection {
                iterations: grow,
                lo,
                hi,
            });
        }
    }
    for _ in 0..BISECT_BUDGET {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= REL_TOL * mid.abs().max(ABS_FLOOR) {
            return Ok(mid);
        }
        if count_pos(mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn laplacian(m: usize) -> SymTridiag {
        SymTridiag {
            diag: vec![2.0; m],
            off: vec![-1.0; m - 1],
        }
    }

    #[test]
    fn two_by_two_exact() {
        let t = SymTridiag {
            diag: vec![2.0, 2.0],
            off: vec![-1.0],
        };
        assert_relative_eq!(bisect_eigenvalue(&t, 0).unwrap(), 1.0, max_relative = 1e-10);
        assert_relative_eq!(bisect_eigenvalue(&t, 1).unwrap(), 3.0, max_relative = 1e-10);
    }

    #[test]
    fn discrete_sine_spectrum() {
        // Eigenvalues of the M-point Dirichlet Laplacian stencil are
        // 2 - 2cos(k pi/(M+1)) = 4 sin²(k pi/(2(M+1))).
        let m = 64;
        let t = laplacian(m);
        let eigs = lowest_eigenvalues(&t, 5).unwrap();
        for (k, ev) in eigs.iter().enumerate() {
            let exact =
                4.0 * (std::f64::consts::PI * (k + 1) as f64 / (2.0 * (m as f64 + 1.0))).sin().powi(2);
            assert_relative_eq!(*ev, exact, max_relative = 1e-9);
        }
    }

    #[test]
    fn jacobi_matches_bisection() {
        let m = 40;
        let t = laplacian(m);
        let mut dense = vec![0.0; m * m];
        for i in 0..m {
            dense[i * m + i] = t.diag[i];
            if i + 1 < m {
                dense[i * m + i + 1] = t.off[i];
                dense[(i + 1) * m + i] = t.off[i];
            }
        }
        let jeigs = jacobi_eigenvalues(&dense, m);
        let beigs = lowest_eigenvalues(&t, m).unwrap();
        for (a, b) in jeigs.iter().zip(beigs.iter()) {
            assert_relative_eq!(a, b, max_relative = 1e-9);
        }
    }

    #[test]
    fn inverse_iteration_residual() {
        let m = 80;
        let t = laplacian(m);
        let lambda = bisect_eigenvalue(&t, 0).unwrap();
        let v = inverse_iteration(&t, lambda, 3);
        let tv = t.matvec(&v);
        let res: f64 = tv
            .iter()
            .zip(v.iter())
            .map(|(a, b)| (a - lambda * b) * (a - lambda * b))
            .sum::<f64>()
            .sqrt();
        assert!(res < 1e-9, "residual {res}");
    }

    #[test]
    fn inertia_largest_generalized() {
        // P = diag(1, 0, 2), S = I: largest gen eig = 2 despite the zero row.
        let s = SymTridiag {
            diag: vec![1.0, 1.0, 1.0],
            off: vec![0.0, 0.0],
        };
        let eta = largest_generalized_inertia(&[1.0, 0.0, 2.0], &s).unwrap();
        assert_relative_eq!(eta, 2.0, max_relative = 1e-9);
        // Against dense oracle on a generic SPD S.
        let s2 = SymTridiag {
            diag: vec![4.0, 5.0, 6.0, 7.0],
            off: vec![-1.0, 0.5, -0.25],
        };
        let p = [0.0, 3.0, 0.7, 2.5];
        let eta2 = largest_generalized_inertia(&p, &s2).unwrap();
        // Oracle: eigenvalues of S^{-1/2} P S^{-1/2} need S^{-1/2}; instead
        // verify the defining inertia property at eta2 ± tolerance.
        let probe = |eta: f64| {
            let shifted = SymTridiag {
                diag: (0..4).map(|i| p[i] - eta * s2.diag[i]).collect(),
                off: s2.off.iter().map(|o| -eta * o).collect(),
            };
            4 - sturm_count(&shifted, 0.0)
        };
        assert!(probe(eta2 * (1.0 + 1e-6)) == 0);
        assert!(probe(eta2 * (1.0 - 1e-6)) >= 1);
    }

    #[test]
    fn zero_matrix_largest_is_zero() {
        let s = laplacian(5);
        let s_posdef = SymTridiag {
            diag: s.diag.iter().map(|d| d + 1.0).collect(),
            off: s.off.clone(),
        };
        assert_eq!(
            largest_generalized_inertia(&[0.0; 5], &s_posdef).unwrap(),
            0.0
        );
    }
}
