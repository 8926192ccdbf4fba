//! Hardy weights on cones and smooth model spaces, sub-convex combination,
//! and discrete verification of the operator inequality −Δ ≥ ϑ mode by mode.
//!
//! The weight family is
//!
//! ```text
//!   ϑ(r) = ((n−2)/2)² / utan_L²(r) − ((n−2)/2)·L·1{r < R_L},
//! ```
//!
//! which vanishes identically for r ≥ R_L. On a cone cap of radius ρ any
//! clamp curvature L ≥ ℓ ∨ (π/(2ρ))² is admissible; the minimal one is the
//! default. Verification assembles A_m − Θ per cross-section mode and checks
//! its smallest generalized eigenvalue against −tol; a natural outer
//! boundary is the strongest finite-dimensional test, since boundary-constant
//! extension adds neither gradient energy nor potential (ϑ = 0 outside R_L).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{ConeCap, ConicalManifoldModel};
use crate::radial::{assemble, AssembledPencil, BoundaryCondition, Grid, Potential, RadialOperatorSpec};
use crate::scalar::{clamped_trig, comparison_radius};
use crate::eigen::tridiag_lowest;
use crate::linalg::SymTridiag;

/// Single-center Hardy weight profile.
#[derive(Debug, Clone, Serialize)]
pub struct HardyWeight {
    pub n: u32,
    /// ((n−2)/2)², the sharp Euclidean constant.
    pub constant: f64,
    /// Clamp curvature L > 0.
    pub clamp_curvature: f64,
    /// ((n−2)/2)·L, subtracted inside the support ball.
    pub correction: f64,
    /// R_L = π/(2√L): the weight vanishes at and beyond this radius.
    pub support_radius: f64,
}

impl HardyWeight {
    pub fn new(n: u32, clamp_curvature: f64) -> Result<HardyWeight> {
        if n < 3 {
            return Err(Error::Domain(format!("Hardy weights need n ≥ 3, got n = {n}")));
        }
        if !(clamp_curvature > 0.0) || !clamp_curvature.is_finite() {
            return Err(Error::Domain(format!(
                "clamp curvature must be positive and finite, got {clamp_curvature}"
            )));
        }
        let half = (n as f64 - 2.0) / 2.0;
        Ok(HardyWeight {
            n,
            constant: half * half,
            clamp_curvature,
            correction: half * clamp_curvature,
            support_radius: comparison_radius(clamp_curvature),
        })
    }

    /// Weight for a cone cap: any L at or above ℓ ∨ (π/(2ρ))² is admissible;
    /// `None` picks that minimal value.
    pub fn for_cap(cap: &ConeCap, clamp: Option<f64>) -> Result<HardyWeight> {
        cap.validate()?;
        let threshold = cap.hardy_clamp_curvature();
        let l = clamp.unwrap_or(threshold);
        if l < threshold * (1.0 - 1e-12) {
            return Err(Error::Domain(format!(
                "clamp curvature {l} is below the admissible threshold ℓ ∨ (π/2ρ)² = {threshold}"
            )));
        }
        HardyWeight::new(cap.section.dim + 1, l)
    }

    /// ϑ(r); exact 0 at and beyond the support radius.
    pub fn profile(&self, r: f64) -> Result<f64> {
        let trig = clamped_trig(self.clamp_curvature, r)?;
        let indicator = if r < self.support_radius { 1.0 } else { 0.0 };
        Ok(self.constant * trig.inv_tan_sq - self.correction * indicator)
    }
}

/// The smooth-manifold Hardy weight with curvature parameter ℓ of either
/// sign: ((n−2)/2)²/utan_ℓ²(r) − ((n−2)/2)·ℓ·1{r < R_ℓ}. For ℓ = 0 this is
/// the Euclidean ((n−2)/2)²/r²; for ℓ < 0 the correction adds.
pub fn hardy_weight_smooth(n: u32, ell: f64, r: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("Hardy weights need n ≥ 3, got n = {n}")));
    }
    let half = (n as f64 - 2.0) / 2.0;
    let trig = clamped_trig(ell, r)?;
    let indicator = if r < comparison_radius(ell) { 1.0 } else { 0.0 };
    Ok(half * half * trig.inv_tan_sq - half * ell * indicator)
}

/// The cap weight ϑ evaluated directly (see [`HardyWeight::for_cap`]).
pub fn hardy_weight_cone(cap: &ConeCap, clamp: f64, r: f64) -> Result<f64> {
    HardyWeight::for_cap(cap, Some(clamp))?.profile(r)
}

/// One term of a sub-convex combination: coefficient s ≥ 0 and the center
/// the radius is measured from (0 = inner pole/tip, 1 = outer pole).
#[derive(Debug, Clone, Serialize)]
pub struct CompositeComponent {
    pub weight: HardyWeight,
    pub s: f64,
    pub center: usize,
}

/// Sub-convex combination Σ sᵢ ϑᵢ of Hardy weights (Σ sᵢ ≤ 1). The 1-D
/// reduction supports two centers: the two poles of a spindle.
#[derive(Debug, Clone, Serialize)]
pub struct CompositeHardyWeight {
    pub components: Vec<CompositeComponent>,
}

pub fn combine_weights(parts: Vec<(HardyWeight, f64, usize)>) -> Result<CompositeHardyWeight> {
    if parts.is_empty() {
        return Err(Error::Domain("a combination needs at least one weight".into()));
    }
    let mut total = 0.0;
    for (_, s, center) in &parts {
        if !(*s >= 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("combination coefficient must be ≥ 0, got {s}")));
        }
        if *center > 1 {
            return Err(Error::Domain(format!(
                "center index must be 0 (inner) or 1 (outer), got {center}"
            )));
        }
        total += s;
    }
    if total > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "combination coefficients sum to {total} > 1"
        )));
    }
    Ok(CompositeHardyWeight {
        components: parts
            .into_iter()
            .map(|(weight, s, center)| CompositeComponent { weight, s, center })
            .collect(),
    })
}

impl CompositeHardyWeight {
    #[must_use]
    pub fn single(weight: HardyWeight) -> CompositeHardyWeight {
        CompositeHardyWeight {
            components: vec![CompositeComponent {
                weight,
                s: 1.0,
                center: 0,
            }],
        }
    }

    /// Σ sᵢ ϑᵢ at radius r from the inner pole of a model of the given total
    /// length (center 1 measures from the outer pole).
    pub fn profile(&self, r: f64, total_length: f64) -> Result<f64> {
        let mut sum = 0.0;
        for part in &self.components {
            let radius = match part.center {
                0 => r,
                _ => total_length - r,
            };
            sum += part.s * part.weight.profile(radius.max(0.0))?;
        }
        Ok(sum)
    }

    /// Largest clamp curvature among the components: the natural scale for
    /// verification tolerances.
    #[must_use]
    pub fn curvature_scale(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight.clamp_curvature)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HardyVerification {
    pub min_eig: f64,
    pub pass: bool,
    pub tol: f64,
    pub binding_mode: usize,
    pub modes_checked: usize,
}

/// Check −Δ ≥ ϑ on the model's discrete space: for every cross-section mode
/// m ≤ modes the smallest generalized eigenvalue of (A_m − Θ, B) must be
/// ≥ −tol with tol = 10⁻⁶·max(1, L). ϑ is radial, so A_m − Θ dominates
/// A_0 − Θ and mode 0 must bind; that is asserted, not assumed.
pub fn verify_hardy(
    weight: &CompositeHardyWeight,
    model: &ConicalManifoldModel,
    grid: &Grid,
    modes: usize,
) -> Result<HardyVerification> {
    let tol = 1e-6 * weight.curvature_scale().max(1.0);
    let view = model.spindle_view()?;
    let len = view.total_length;
    let w = weight.clone();
    let theta = Potential::radial(move |r| match w.profile(r, len) {
        Ok(v) => -v,
        Err(_) => f64::NAN,
    });
    verify_hardy_profile(&theta, "-hardy", tol, model, grid, modes)
}

/// Raw-profile variant of [`verify_hardy`]: `neg_theta` must evaluate to
/// −ϑ(r) (the sign the assembled potential carries).
pub fn verify_hardy_profile(
    neg_theta: &Potential,
    label: &str,
    tol: f64,
    model: &ConicalManifoldModel,
    grid: &Grid,
    modes: usize,
) -> Result<HardyVerification> {
    model.validate()?;
    let view = model.spindle_view()?;
    if grid.r_min() != 0.0 || (grid.r_max() - view.total_length).abs() > 1e-12 * view.total_length
    {
        return Err(Error::Domain(
            "the verification grid must span [0, total_length]".into(),
        ));
    }
    let mut min_eig = f64::INFINITY;
    let mut binding_mode = 0usize;
    let mut mode0 = f64::INFINITY;
    for m in 0..=modes {
        let mu = view.section.mu(m)?;
        let spec = RadialOperatorSpec {
            n: model.n,
            ell: view.ell,
            mode_mu: mu,
            laplacian_scale: 1.0,
            potential: neg_theta.clone(),
            potential_label: label.to_string(),
            inner_bc: BoundaryCondition::Natural,
            outer_bc: view.outer_bc,
        };
        let pencil = assemble(&spec, grid)?;
        let ev = tridiag_lowest(&pencil, 1)?.eigenvalues[0];
        if m == 0 {
            mode0 = ev;
        }
        if ev < min_eig {
            min_eig = ev;
            binding_mode = m;
        }
    }
    // Radial ϑ: higher modes only add a positive-semidefinite diagonal, so
    // the minimum must come from mode 0 (up to solver tolerance).
    let scale = min_eig.abs().max(1.0);
    if mode0 > min_eig + 1e-9 * scale {
        return Err(Error::Internal(format!(
            "mode {binding_mode} undercuts mode 0 ({min_eig} < {mode0}) for a radial weight"
        )));
    }
    Ok(HardyVerification {
        min_eig,
        pass: min_eig >= -tol,
        tol,
        binding_mode,
        modes_checked: modes + 1,
    })
}

/// Discrete best Hardy constant: the smallest generalized eigenvalue of
/// (A_mode0, Θ₀) with Θ₀ the 1/r² weight against the model measure, on a
/// grid with Dirichlet outer end. Converges from above to (n−2)²/4 as the
/// grid deepens toward the tip.
pub fn best_constant_estimate(n: u32, ell: f64, grid: &Grid) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("best constant needs n ≥ 3, got n = {n}")));
    }
    let spec = RadialOperatorSpec {
        outer_bc: BoundaryCondition::Dirichlet,
        ..RadialOperatorSpec::laplacian(n, ell, 0.0)
    };
    let pencil = assemble(&spec, grid)?;
    let m = pencil.a.dim();
    let theta: Vec<f64> = (0..m)
        .map(|i| {
            let r = grid.node(i);
            pencil.b[i] / (r * r)
        })
        .collect();
    let quotient_pencil = AssembledPencil::from_raw(
        SymTridiag {
            diag: pencil.a.diag.clone(),
            off: pencil.a.off.clone(),
        },
        theta,
    )?;
    Ok(tridiag_lowest(&quotient_pencil, 1)?.eigenvalues[0])
}

/// The grid the best-constant studies use by default: four decades of
/// radius with cells graded down to ~10⁻²⁴·r_max at the tip, which is deep
/// enough that the logarithmic boundary layer of the extremal profile
/// r^{−(n−2)/2} costs only ~1% in the constant.
pub fn best_constant_default_grid() -> Result<Grid> {
    Grid::geometric(0.0, 1.0e3, 20_000, 1.0e-21)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{sphere_section, ConicalManifoldModel};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn smooth_weight_examples() {
        assert_relative_eq!(hardy_weight_smooth(4, 0.0, 2.0).unwrap(), 0.25);
        assert_relative_eq!(
            hardy_weight_smooth(4, 1.0, PI / 4.0).unwrap(),
            0.0,
            epsilon = 1e-14
        );
        for &r in &[PI / 2.0, 2.0, 10.0] {
            assert_eq!(hardy_weight_smooth(3, 1.0, r).unwrap(), 0.0);
        }
        assert!(hardy_weight_smooth(2, 0.0, 1.0).is_err());
        // Negative curvature: the correction strengthens the weight.
        let v = hardy_weight_smooth(4, -1.0, 1.0).unwrap();
        assert!(v > 1.0 / (1.0_f64.tanh().powi(2)) - 1e-12);
    }

    #[test]
    fn cone_weight_examples() {
        let s3 = sphere_section(3, 1.0).unwrap();
        let cap = ConeCap {
            rho: PI / 2.0,
            ell: 1.0,
            section: s3.clone(),
        };
        assert_relative_eq!(cap.hardy_clamp_curvature(), 1.0);
        assert_relative_eq!(
            hardy_weight_cone(&cap, 1.0, PI / 6.0).unwrap(),
            0.25,
            max_relative = 1e-12
        );
        let s5 = sphere_section(5, 1.0).unwrap();
        let cap5 = ConeCap {
            rho: 1.0,
            ell: 0.0,
            section: s5,
        };
        let l5 = cap5.hardy_clamp_curvature();
        assert_relative_eq!(l5, PI * PI / 4.0);
        for &r in &[1.0, 1.5] {
            assert_eq!(hardy_weight_cone(&cap5, l5, r).unwrap(), 0.0);
        }
        let s4 = sphere_section(4, 1.0).unwrap();
        let cap4 = ConeCap {
            rho: PI / 4.0,
            ell: 4.0,
            section: s4,
        };
        assert_relative_eq!(cap4.hardy_clamp_curvature(), 4.0);
        assert_relative_eq!(
            hardy_weight_cone(&cap4, 4.0, PI / 8.0).unwrap(),
            0.0,
            epsilon = 1e-13
        );
        // Clamp below the threshold is rejected.
        assert!(hardy_weight_cone(&cap4, 3.0, 0.1).is_err());
    }

    #[test]
    fn combination_rules() {
        let w = HardyWeight::new(3, 1.0).unwrap();
        let single = combine_weights(vec![(w.clone(), 1.0, 0)]).unwrap();
        let halves =
            combine_weights(vec![(w.clone(), 0.5, 0), (w.clone(), 0.5, 0)]).unwrap();
        for &r in &[0.1, 0.5, 1.0, 2.0] {
            assert_relative_eq!(
                single.profile(r, 10.0).unwrap(),
                halves.profile(r, 10.0).unwrap(),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                single.profile(r, 10.0).unwrap(),
                w.profile(r).unwrap(),
                max_relative = 1e-14
            );
        }
        assert!(combine_weights(vec![(w.clone(), 0.7, 0), (w.clone(), 0.4, 0)]).is_err());
        assert!(combine_weights(vec![(w.clone(), -0.1, 0)]).is_err());
        assert!(combine_weights(vec![(w, 0.5, 2)]).is_err());
    }

    fn flat_cone(n: u32, radius: f64, rho: f64, outer: BoundaryCondition) -> ConicalManifoldModel {
        let section = sphere_section(n, radius).unwrap();
        let kappa = section.kappa;
        ConicalManifoldModel::finite_cone(n, 0.0, rho, section, outer, kappa - 1.0).unwrap()
    }

    #[test]
    fn verify_zero_weight_passes_at_zero() {
        let model = flat_cone(3, 1.0, 1.0, BoundaryCondition::Natural);
        let grid = Grid::uniform(0.0, 1.0, 400).unwrap();
        let v = verify_hardy_profile(&Potential::Zero, "0", 1e-6, &model, &grid, 3).unwrap();
        assert!(v.min_eig.abs() <= 1e-10);
        assert!(v.pass);
        assert_eq!(v.binding_mode, 0);
    }

    #[test]
    fn verify_euclidean_sharp_constant_dirichlet() {
        let model = flat_cone(3, 1.0, 1.0, BoundaryCondition::Dirichlet);
        let grid = Grid::geometric(0.0, 1.0, 2500, 1e-13).unwrap();
        let theta = Potential::radial(|r| -0.25 / (r * r));
        let v = verify_hardy_profile(&theta, "-1/4r^2", 1e-6, &model, &grid, 4).unwrap();
        assert!(v.pass, "min_eig = {}", v.min_eig);
        assert!(v.min_eig >= -1e-6);
    }

    #[test]
    fn verify_cap_weight_on_wide_section() {
        // Cone over a radius-2 sphere: the weight needs no assumption on the
        // section beyond its dimension.
        let model = flat_cone(3, 2.0, 1.0, BoundaryCondition::Natural);
        let cap = model.caps[0].clone();
        let weight = CompositeHardyWeight::single(HardyWeight::for_cap(&cap, None).unwrap());
        let grid = Grid::geometric(0.0, 1.0, 3000, 1e-12).unwrap();
        let v = verify_hardy(&weight, &model, &grid, 4).unwrap();
        assert!(v.pass, "min_eig = {} tol = {}", v.min_eig, v.tol);
    }

    #[test]
    fn verify_two_pole_combination_on_spindle() {
        // Closed round spindle: both poles carry the cap weight with s = 1/2
        // each; the supports are the two open hemispheres (disjoint).
        let section = sphere_section(3, 1.0).unwrap();
        let model = ConicalManifoldModel::closed_spindle(3, 1.0, section).unwrap();
        let w0 = HardyWeight::for_cap(&model.caps[0], None).unwrap();
        let w1 = HardyWeight::for_cap(&model.caps[1], None).unwrap();
        assert_relative_eq!(w0.support_radius, PI / 2.0);
        let combo = combine_weights(vec![(w0, 0.5, 0), (w1, 0.5, 1)]).unwrap();
        let grid = Grid::uniform(0.0, PI, 3000).unwrap();
        let v = verify_hardy(&combo, &model, &grid, 4).unwrap();
        assert!(v.pass, "min_eig = {} tol = {}", v.min_eig, v.tol);
    }

    #[test]
    fn natural_bc_is_the_stronger_test() {
        let theta = Potential::radial(|r| {
            -(hardy_weight_smooth(3, (PI / 2.0_f64).powi(2) / 1.0, r).unwrap())
        });
        let grid = Grid::geometric(0.0, 1.0, 1200, 1e-10).unwrap();
        let natural = flat_cone(3, 1.0, 1.0, BoundaryCondition::Natural);
        let dirichlet = flat_cone(3, 1.0, 1.0, BoundaryCondition::Dirichlet);
        let vn = verify_hardy_profile(&theta, "w", 1e-6, &natural, &grid, 2).unwrap();
        let vd = verify_hardy_profile(&theta, "w", 1e-6, &dirichlet, &grid, 2).unwrap();
        assert!(vn.min_eig <= vd.min_eig + 1e-12);
    }

    #[test]
    fn best_constant_converges_from_above() {
        let grid = Grid::geometric(0.0, 1.0e3, 4000, 1e-21).unwrap();
        let c3 = best_constant_estimate(3, 0.0, &grid).unwrap();
        assert!(c3 >= 0.25 - 1e-9, "c3 = {c3}");
        assert!(c3 <= 0.25 * 1.08, "c3 = {c3}");
        let shallow = Grid::geometric(0.0, 1.0e3, 4000, 1e-9).unwrap();
        let c3s = best_constant_estimate(3, 0.0, &shallow).unwrap();
        assert!(c3s >= c3 - 1e-12, "deepening the grid must not raise the constant");
    }

    #[test]
    fn ground_state_representation_dominates_weight() {
        // Phi = usin_L^{-(n-2)/2} satisfies (A Phi)_i / (B_ii Phi_i) >=
        // theta_i - O(h^2) on interior nodes.
        for &(n, l) in &[(3u32, 1.0), (4, 2.5), (5, 0.5)] {
            let weight = HardyWeight::new(n, l).unwrap();
            let rho = weight.support_radius * 1.6;
            let grid = Grid::uniform(0.0, rho, 2000).unwrap();
            let spec = RadialOperatorSpec::laplacian(n, 0.0, 0.0);
            let pencil = assemble(&spec, &grid).unwrap();
            let phi: Vec<f64> = (0..grid.cells())
                .map(|i| {
                    let trig = clamped_trig(l, grid.node(i)).unwrap();
                    trig.sin.powf(-((n as f64) - 2.0) / 2.0)
                })
                .collect();
            let a_phi = pencil.a.matvec(&phi);
            // Skip the tip band (Phi is singular there and the stencil's
            // relative error is O((h/r)^2)) and the cells straddling the
            // support radius (Phi has a curvature kink there, so the
            // pointwise quotient dips at exactly one node).
            let h = grid.width(0);
            for i in 1..grid.cells() - 1 {
                let r = grid.node(i);
                if r < 30.0 * h || (r - weight.support_radius).abs() < 2.5 * h {
                    continue;
                }
                let quotient = a_phi[i] / (pencil.b[i] * phi[i]);
                let theta = weight.profile(r).unwrap();
                let slack = 1e-2 * (1.0 + theta.abs());
                assert!(
                    quotient >= theta - slack,
                    "n={n} l={l} node {i}: quotient {quotient} < theta {theta}"
                );
            }
        }
    }
}
