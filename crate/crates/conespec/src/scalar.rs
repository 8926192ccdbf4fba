//! Generalized trigonometric functions for constant-curvature comparison
//! geometry, their clamped variants, and the inverse-tangent-square gap.
//!
//! `sin_ell(l, .)` is the solution of v'' + l v = 0 with v(0) = 0, v'(0) = 1;
//! it interpolates sin, the identity, and sinh as l passes through 0. All
//! functions here are continuous in l, including across l = 0, which matters
//! because curvature parameters in sweeps routinely straddle zero.

use crate::error::{Error, Result};

/// Curvature-to-length threshold below which power series replace the closed
/// forms of `sin_ell`/`cos_ell`: for |l·r²| under this bound the direct
/// formulas lose digits to cancellation near l = 0.
const SERIES_THRESHOLD: f64 = 1e-4;

/// Generalized sine: sin(√l r)/√l for l > 0, r for l = 0, sinh(√-l r)/√-l
/// for l < 0. Odd in r, smooth in both arguments.
#[must_use]
pub fn sin_ell(ell: f64, r: f64) -> f64 {
    let t = ell * r * r;
    if t.abs() < SERIES_THRESHOLD {
        // r·(1 - t/6 + t²/120 - t³/5040), truncation error below 1e-19·r.
        return r * (1.0 - t / 6.0 + t * t / 120.0 - t * t * t / 5040.0);
    }
    if ell > 0.0 {
        let s = ell.sqrt();
        (s * r).sin() / s
    } else {
        let s = (-ell).sqrt();
        (s * r).sinh() / s
    }
}

/// Generalized cosine: the r-derivative of `sin_ell`. Equals cos(√l r),
/// 1, or cosh(√-l r) according to the sign of l.
#[must_use]
pub fn cos_ell(ell: f64, r: f64) -> f64 {
    let t = ell * r * r;
    if t.abs() < SERIES_THRESHOLD {
        return 1.0 - t / 2.0 + t * t / 24.0 - t * t * t / 720.0;
    }
    if ell > 0.0 {
        (ell.sqrt() * r).cos()
    } else {
        ((-ell).sqrt() * r).cosh()
    }
}

/// Comparison radius R_l = π/(2√l) for l > 0 (the equator distance of the
/// l-sphere), +∞ otherwise.
#[must_use]
pub fn comparison_radius(ell: f64) -> f64 {
    if ell > 0.0 {
        std::f64::consts::FRAC_PI_2 / ell.sqrt()
    } else {
        f64::INFINITY
    }
}

/// x²/sin²(x) reparametrized by t = x², extended analytically through t = 0
/// (value 1) and to t < 0 where it becomes (-t)/sinh²(√-t). Strictly
/// increasing; its slope is bounded below by 1/3 on [0, π²/4], which is the
/// monotone core behind `tan_gap`'s upper bound.
#[must_use]
pub fn inv_sinc_sq(t: f64) -> f64 {
    if t.abs() < 1e-2 {
        // 1 + t/3 + t²/15 + 2t³/189 + t⁴/675; next term ~ t⁵/4000.
        return 1.0 + t / 3.0 + t * t / 15.0 + 2.0 * t * t * t / 189.0 + t * t * t * t / 675.0;
    }
    if t > 0.0 {
        let x = t.sqrt();
        t / (x.sin() * x.sin())
    } else {
        let x = (-t).sqrt();
        (-t) / (x.sinh() * x.sinh())
    }
}

/// 1/sin_l²(r) for r > 0, evaluated cancellation-free as inv_sinc_sq(l r²)/r².
/// Returns +∞ where sin_l vanishes (r = 0 or, for l > 0, r a multiple of
/// π/√l); callers that need a hard domain boundary check it themselves.
#[must_use]
pub fn inv_sin_ell_sq(ell: f64, r: f64) -> f64 {
    if r == 0.0 {
        return f64::INFINITY;
    }
    let v = inv_sinc_sq(ell * r * r) / (r * r);
    if v.is_finite() && v > 0.0 {
        v
    } else {
        f64::INFINITY
    }
}

/// 1/tan_l²(r) = 1/sin_l²(r) - l, the unclamped inverse tangent square.
#[must_use]
pub fn inv_tan_ell_sq(ell: f64, r: f64) -> f64 {
    inv_sin_ell_sq(ell, r) - ell
}

/// Generalized trig values clamped at the comparison radius: every field is
/// evaluated at min(r, R_l). Past R_l the inverse tangent square is exactly
/// zero (not a tiny float): the Hardy weights built from it vanish outside
/// the comparison ball by construction and tests compare against exact 0.
#[derive(Debug, Clone, Copy)]
pub struct ClampedTrig {
    pub sin: f64,
    pub cos: f64,
    pub tan: f64,
    pub inv_tan_sq: f64,
}

/// Evaluate the clamped trig bundle at r ≥ 0.
pub fn clamped_trig(ell: f64, r: f64) -> Result<ClampedTrig> {
    if !(r >= 0.0) || !r.is_finite() || !ell.is_finite() {
        return Err(Error::Domain(format!(
            "clamped_trig requires finite l and r >= 0, got l = {ell}, r = {r}"
        )));
    }
    let radius = comparison_radius(ell);
    let clamped = if r < radius { r } else { radius };
    let sin = sin_ell(ell, clamped);
    let cos = cos_ell(ell, clamped);
    let (tan, inv_tan_sq) = if r >= radius {
        (f64::INFINITY, 0.0)
    } else {
        (sin / cos, inv_tan_ell_sq(ell, r))
    };
    Ok(ClampedTrig {
        sin,
        cos,
        tan,
        inv_tan_sq,
    })
}

/// The gap 1/tan_l²(r) - 1/tan_L²(r) for 0 ≤ l ≤ L on 0 < r ≤ π/(2√L).
///
/// On that rectangle the value lies in [0, (2/3)(L - l)]; both endpoints are
/// exercised by tests. Inputs outside the rectangle are hard errors rather
/// than clamps because the bound is only claimed there.
pub fn tan_gap(ell: f64, ell_big: f64, r: f64) -> Result<f64> {
    if !(0.0 <= ell && ell <= ell_big) {
        return Err(Error::Domain(format!(
            "tan_gap requires 0 <= l <= L, got l = {ell}, L = {ell_big}"
        )));
    }
    if !(r > 0.0) || r > comparison_radius(ell_big) {
        return Err(Error::Domain(format!(
            "tan_gap requires 0 < r <= pi/(2 sqrt(L)), got r = {r}, L = {ell_big}"
        )));
    }
    // 1/tan_l² - 1/tan_L² = [f(l r²) - f(L r²)]/r² + (L - l) with
    // f = inv_sinc_sq; this form stays accurate as l -> L.
    let a = ell * r * r;
    let b = ell_big * r * r;
    if b < 1e-2 {
        // Both arguments sit in the series branch; divide out (a - b) so the
        // difference quotient carries no cancellation as r -> 0, where the
        // gap attains its (2/3)(L - l) edge. The factored bracket is f's
        // divided difference: 1/3 + (a+b)/15 + 2(a²+ab+b²)/189 + ...
        let bracket = 1.0 / 3.0
            + (a + b) / 15.0
            + 2.0 * (a * a + a * b + b * b) / 189.0
            + (a * a * a + a * a * b + a * b * b + b * b * b) / 675.0;
        return Ok((ell_big - ell) * (1.0 - bracket));
    }
    Ok((inv_sinc_sq(a) - inv_sinc_sq(b)) / (r * r) + (ell_big - ell))
}
