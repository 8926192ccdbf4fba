//! Closed-form spectral-gap bounds, admissibility predicates, and the
//! numeric verification chain tying them to the 1-D eigensolves.
//!
//! The gap machinery runs through a family of constants
//!
//! ```text
//!   α_t = (N/(N−1))·[1 + (t/(1−t))/(N−1)²]^{−1},          t ∈ [0, 1),
//!   ᾱ_s = (n + s/(1−s))/(n−1 + s/(1−s)),                  s ∈ [0, n/(n−1)),
//! ```
//!
//! with ᾱ_s = α_t at t = s(n−1)/n. A conical singularity with section
//! curvature κ is *admissible* when κ > (n(6−n)−4)/(4(n−1)), equivalently
//! when the tip's quadratic potential stays below the form bound n/(n−1) of
//! the Laplacian; the gap theorems then give λ₁ ≥ α_t·min{K, cone term}.

use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{
    schrodinger_ground, spindle_lambda1, SchrodingerGround, SpectralGapNumeric,
    MESH_CONVERGENCE_RTOL,
};
use crate::error::{Error, Result};
use crate::models::{ricci_bound_cone, ConicalManifoldModel};
use crate::radial::{Grid, Potential};
use crate::scalar::comparison_radius;

/// α_t: the self-improvement constant at effective dimension N. Decreasing
/// in t, from N/(N−1) at t = 0 through 1 at t = (N−1)/N toward 0 as t → 1.
/// N = ∞ gives the dimension-free value 1 for every t.
pub fn alpha_t(nn: f64, t: f64) -> Result<f64> {
    if nn.is_nan() || nn <= 1.0 {
        return Err(Error::Domain(format!("α_t needs N > 1, got N = {nn}")));
    }
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Domain(format!(
            "α_t needs t ∈ [0, 1), got t = {t} (the t → 1 limit is 0)"
        )));
    }
    if nn.is_infinite() {
        return Ok(1.0);
    }
    let m = nn - 1.0;
    Ok(nn / m / (1.0 + t / (1.0 - t) / (m * m)))
}

/// ᾱ_s: the Hardy-route constant. Evaluated in the rational form
/// (n − s(n−1))/((n−1) − s(n−2)), which extends continuously through s = 1
/// (value 1) and agrees with α_t at t = s(n−1)/n; that consistency is
/// asserted on every call.
pub fn alpha_bar_s(n: u32, s: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("ᾱ_s needs n ≥ 2, got n = {n}")));
    }
    let nf = n as f64;
    let cap = nf / (nf - 1.0);
    if !(0.0..cap).contains(&s) {
        return Err(Error::Domain(format!(
            "ᾱ_s needs s ∈ [0, n/(n−1)) = [0, {cap}), got s = {s}"
        )));
    }
    let value = (nf - s * (nf - 1.0)) / ((nf - 1.0) - s * (nf - 2.0));
    let via_alpha = alpha_t(nf, s * (nf - 1.0) / nf)?;
    if (value - via_alpha).abs() > 1e-14 * (1.0 + value.abs()) {
        return Err(Error::Internal(format!(
            "ᾱ_s = {value} disagrees with α_t at t = s(n−1)/n = {via_alpha}"
        )));
    }
    Ok(value)
}

/// Verdict on whether a cone section's curvature clears the super-critical
/// threshold the gap theorems need.
#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityVerdict {
    pub n: u32,
    pub kappa: f64,
    /// (n(6−n)−4)/(4(n−1)); negative from n = 6 on, so any κ ≥ 0 passes.
    pub threshold: f64,
    /// κ > threshold (strict).
    pub admissible: bool,
    /// 4(1−κ)⁺/(n−2): the tip potential's size against the Hardy constant.
    pub closed_form_bound: f64,
    /// closed_form_bound/(n/(n−1)); admissible ⇔ ratio < 1.
    pub critical_ratio: f64,
    /// ((n−2)/2)² + λ₁ of the section ≥ 1.
    pub ketterer_ok: bool,
    /// Compactly supported smooth functions off the tip form a form core
    /// exactly when n ≥ 4.
    pub core_density: bool,
}

/// Evaluates both equivalent characterizations of admissibility (they must
/// agree as predicates) plus the auxiliary flags.
pub fn admissibility(n: u32, kappa: f64, lambda1_section: f64) -> Result<AdmissibilityVerdict> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "admissibility is defined for n ≥ 3, got n = {n}"
        )));
    }
    let nf = n as f64;
    let threshold = (nf * (6.0 - nf) - 4.0) / (4.0 * (nf - 1.0));
    let admissible = kappa > threshold;
    let closed_form_bound = 4.0 * (1.0 - kappa).max(0.0) / (nf - 2.0);
    let form_cap = nf / (nf - 1.0);
    let critical_ratio = closed_form_bound / form_cap;
    let equivalent = closed_form_bound < form_cap;
    if admissible != equivalent {
        return Err(Error::Internal(format!(
            "admissibility predicates disagree at n = {n}, κ = {kappa}: \
             threshold test {admissible}, form-bound test {equivalent}"
        )));
    }
    let half = (nf - 2.0) / 2.0;
    Ok(AdmissibilityVerdict {
        n,
        kappa,
        threshold,
        admissible,
        closed_form_bound,
        critical_ratio,
        ketterer_ok: half * half + lambda1_section >= 1.0,
        core_density: n >= 4,
    })
}

/// t := (1−κ)⁺·4(n−1)/(n(n−2)): the transform strength the κ-singularity
/// forces. t < 1 exactly on the admissible range.
#[must_use]
pub fn transform_t(n: u32, kappa: f64) -> f64 {
    let nf = n as f64;
    (1.0 - kappa).max(0.0) * 4.0 * (nf - 1.0) / (nf * (nf - 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapBranch {
    BulkK,
    Cone,
}

/// Echo of one cap's parameters inside a bound report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CapParams {
    pub ell: f64,
    pub rho: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapBoundReport {
    pub bound: f64,
    pub alpha: f64,
    pub t: f64,
    pub branch: GapBranch,
    pub n: u32,
    pub big_k: f64,
    pub kappa: f64,
    pub caps: Vec<CapParams>,
    /// α·min{K, (nκ−1)ℓ}: the specialized closed-spindle form, present when
    /// ρ = R_ℓ and κ ≤ 1 (it then coincides with `bound`).
    pub spindle_form: Option<f64>,
    pub assumptions: Vec<String>,
}

/// Single-cap gap bound: λ₁ ≥ α_t·min{K, (n−1)ℓ − n(1−κ)⁺(π/(2ρ))²} with
/// t forced by κ. Vacuous (negative) bounds are reported as-is; sweeps need
/// the sign structure.
pub fn gap_bound_single(n: u32, big_k: f64, kappa: f64, ell: f64, rho: f64) -> Result<GapBoundReport> {
    if n < 3 {
        return Err(Error::Domain(format!("gap bounds need n ≥ 3, got n = {n}")));
    }
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Domain(format!("cap radius must be positive, got {rho}")));
    }
    if ell > 0.0 && rho > comparison_radius(ell) * (1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "cap radius {rho} exceeds the conjugate radius {} of ℓ = {ell}",
            comparison_radius(ell)
        )));
    }
    let t = transform_t(n, kappa);
    if t >= 1.0 {
        return Err(Error::Domain(format!(
            "κ = {kappa} is below the admissibility threshold for n = {n} \
             (the forced transform strength t = {t} leaves no gap)"
        )));
    }
    let nf = n as f64;
    let alpha = alpha_t(nf, t)?;
    let half_pi_over_rho = std::f64::consts::PI / (2.0 * rho);
    let cone_term =
        (nf - 1.0) * ell - nf * (1.0 - kappa).max(0.0) * half_pi_over_rho * half_pi_over_rho;
    let (raw, branch) = if big_k <= cone_term {
        (big_k, GapBranch::BulkK)
    } else {
        (cone_term, GapBranch::Cone)
    };
    let spindle_form = if ell > 0.0
        && kappa <= 1.0
        && (rho - comparison_radius(ell)).abs() <= 1e-12 * comparison_radius(ell)
    {
        Some(alpha * big_k.min((nf * kappa - 1.0) * ell))
    } else {
        None
    };
    Ok(GapBoundReport {
        bound: alpha * raw,
        alpha,
        t,
        branch,
        n,
        big_k,
        kappa,
        caps: vec![CapParams { ell, rho, kappa }],
        spindle_form,
        assumptions: Vec::new(),
    })
}

/// Multi-cap gap bound with shared t, α from κ = inf κᵢ:
///
/// ```text
///   λ₁ ≥ α_t·min{K, inf_i[(n−1)ℓᵢ − (1/3)(1−κ)⁺((n+1)π²/(2ρᵢ²) + (n−2)ℓᵢ)]}.
/// ```
///
/// The pairwise disjointness of the caps is a declared hypothesis the model
/// format cannot check; it is recorded on the report.
pub fn gap_bound_multi(n: u32, big_k: f64, caps: &[CapParams]) -> Result<GapBoundReport> {
    if n < 3 {
        return Err(Error::Domain(format!("gap bounds need n ≥ 3, got n = {n}")));
    }
    let nf = n as f64;
    if caps.is_empty() {
        let alpha = nf / (nf - 1.0);
        return Ok(GapBoundReport {
            bound: alpha * big_k,
            alpha,
            t: 0.0,
            branch: GapBranch::BulkK,
            n,
            big_k,
            kappa: f64::INFINITY,
            caps: Vec::new(),
            spindle_form: None,
            assumptions: Vec::new(),
        });
    }
    let kappa = caps.iter().map(|c| c.kappa).fold(f64::INFINITY, f64::min);
    let t = transform_t(n, kappa);
    if t >= 1.0 {
        return Err(Error::Domain(format!(
            "inf κᵢ = {kappa} is below the admissibility threshold for n = {n} \
             (the forced transform strength t = {t} leaves no gap)"
        )));
    }
    let alpha = alpha_t(nf, t)?;
    let pos_part = (1.0 - kappa).max(0.0);
    let mut inf_term = f64::INFINITY;
    for cap in caps {
        if !(cap.rho > 0.0) || !cap.rho.is_finite() {
            return Err(Error::Domain(format!(
                "cap radius must be positive, got {}",
                cap.rho
            )));
        }
        if cap.ell > 0.0 && cap.rho > comparison_radius(cap.ell) * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "cap radius {} exceeds the conjugate radius of ℓ = {}",
                cap.rho, cap.ell
            )));
        }
        let pi_sq = std::f64::consts::PI * std::f64::consts::PI;
        let term = (nf - 1.0) * cap.ell
            - (1.0 / 3.0)
                * pos_part
                * ((nf + 1.0) * pi_sq / (2.0 * cap.rho * cap.rho) + (nf - 2.0) * cap.ell);
        inf_term = inf_term.min(term);
    }
    let (raw, branch) = if big_k <= inf_term {
        (big_k, GapBranch::BulkK)
    } else {
        (inf_term, GapBranch::Cone)
    };
    Ok(GapBoundReport {
        bound: alpha * raw,
        alpha,
        t,
        branch,
        n,
        big_k,
        kappa,
        caps: caps.to_vec(),
        spindle_form: None,
        assumptions: vec!["caps are assumed pairwise disjoint".to_string()],
    })
}

/// Hardy-route gap bound ᾱ_s·K with s = Σ sᵢ, or s = sup sᵢ under the
/// declared separation hypothesis (weight supports pairwise far apart).
pub fn gap_bound_hardy(n: u32, big_k: f64, s_list: &[f64], separated: bool) -> Result<f64> {
    for &s in s_list {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!(
                "Hardy combination coefficients must be ≥ 0, got {s}"
            )));
        }
    }
    let s = if separated {
        s_list.iter().cloned().fold(0.0, f64::max)
    } else {
        s_list.iter().sum()
    };
    Ok(alpha_bar_s(n, s)? * big_k)
}

/// The three section radii at which a cone over S²_R crosses the named
/// form-bound levels of the tip potential.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TamingThresholds {
    /// Form bound n/(n−1): the admissibility boundary.
    pub sharp: f64,
    /// Form bound 1: boundary of semibounded self-adjoint taming.
    pub natural: f64,
    /// Form bound 1/2: boundary for the half-strength operator.
    pub flat: f64,
}

/// Recomputes each radius from the crossing identity
/// 4(1 − 1/R²)/(n−2) = level; for n = 3 the values are pinned against the
/// closed radicals √(8/5), √(8/6), √(8/7) to 1e−12.
pub fn taming_thresholds(n: u32) -> Result<TamingThresholds> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "taming thresholds need n ≥ 3, got n = {n}"
        )));
    }
    let nf = n as f64;
    let radius = |level: f64| -> Result<f64> {
        let arg = 1.0 - level * (nf - 2.0) / 4.0;
        if arg <= 0.0 {
            return Err(Error::Domain(format!(
                "form-bound level {level} is not crossed by any section radius at n = {n}"
            )));
        }
        Ok(1.0 / arg.sqrt())
    };
    let out = TamingThresholds {
        sharp: radius(nf / (nf - 1.0))?,
        natural: radius(1.0)?,
        flat: radius(0.5)?,
    };
    if n == 3 {
        let pinned = [
            (out.sharp, (8.0_f64 / 5.0).sqrt()),
            (out.natural, (8.0_f64 / 6.0).sqrt()),
            (out.flat, (8.0_f64 / 7.0).sqrt()),
        ];
        for (got, want) in pinned {
            if (got - want).abs() > 1e-12 {
                return Err(Error::Internal(format!(
                    "taming radius {got} drifted from its closed form {want}"
                )));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// One rung of the verification chain at a fixed transform strength t.
#[derive(Debug, Clone, Serialize)]
pub struct ChainLink {
    pub t: f64,
    pub alpha: f64,
    pub ground: SchrodingerGround,
    pub alpha_times_ground: f64,
    /// λ₁ + tol ≥ α_t·ground(t): asserted at every t.
    pub upper_ok: bool,
    /// α_t·ground(t) ≥ bound − tol: asserted only at the theorem's t (the
    /// Hardy absorption step needs that specific strength).
    pub lower_asserted: bool,
    pub lower_ok: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    /// Which gap notion the numeric eigenvalue approximates.
    pub gap_notion: String,
    pub numeric: SpectralGapNumeric,
    pub links: Vec<ChainLink>,
    pub bound: GapBoundReport,
    pub verdict: Verdict,
    pub tol: f64,
    pub notes: Vec<String>,
}

/// Runs the full verification chain on a computable model: numeric λ₁, the
/// Schrödinger grounds at t ∈ {0, t_theorem, (n−1)/(2n)} (plus any extra
/// diagnostic strengths), the closed-form bound, and the two-sided
/// inequality λ₁ + tol ≥ α_t·ground(t) ≥ bound − tol. Unconverged meshes
/// make the verdict inconclusive, never failing.
pub fn verify_chain(model: &ConicalManifoldModel, grid: &Grid) -> Result<SpectralReport> {
    verify_chain_with_ts(model, grid, &[])
}

pub fn verify_chain_with_ts(
    model: &ConicalManifoldModel,
    grid: &Grid,
    extra_ts: &[f64],
) -> Result<SpectralReport> {
    model.validate()?;
    let view = model.spindle_view()?;
    let n = model.n;
    let nf = n as f64;
    let ell = view.ell;
    let kappa = view.section.kappa;
    let t_theorem = transform_t(n, kappa);

    let mut bound: Option<GapBoundReport> = None;
    for cap in &model.caps {
        let report = gap_bound_single(n, model.bulk_k, kappa, cap.ell, cap.rho)?;
        if bound.as_ref().is_none_or(|b| report.bound < b.bound) {
            bound = Some(report);
        }
    }
    let bound = bound.ok_or_else(|| Error::Model("the model has no caps".into()))?;

    let mut ts = vec![0.0, t_theorem, (nf - 1.0) / (2.0 * nf)];
    ts.extend_from_slice(extra_ts);
    ts.retain(|t| t.is_finite());
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    let potential = Potential::radial(move |r| match ricci_bound_cone(n, ell, kappa, r) {
        Ok(v) => v,
        Err(_) => f64::NAN,
    });

    let numeric = spindle_lambda1(model, grid)?;
    let grounds: Vec<Result<SchrodingerGround>> = ts
        .par_iter()
        .map(|&t| schrodinger_ground(model, &potential, "ricci-lower-bound", t, grid))
        .collect();

    let lambda1 = numeric.lambda1;
    let mut links = Vec::with_capacity(ts.len());
    let mut scale = lambda1.abs().max(bound.bound.abs());
    let mut grounds_ok = Vec::with_capacity(ts.len());
    for (t, ground) in ts.iter().zip(grounds) {
        let ground = ground?;
        let alpha = alpha_t(nf, *t)?;
        let ag = alpha * ground.value;
        scale = scale.max(ag.abs());
        grounds_ok.push(ground.mesh_converged);
        links.push(ChainLink {
            t: *t,
            alpha,
            ground,
            alpha_times_ground: ag,
            upper_ok: false,
            lower_asserted: (*t - t_theorem).abs() < 1e-15,
            lower_ok: None,
        });
    }
    let tol = MESH_CONVERGENCE_RTOL * scale.max(1e-12) + 1e-9;
    let mut failed = false;
    let mut inconclusive = false;
    for (link, converged) in links.iter_mut().zip(grounds_ok) {
        link.upper_ok = lambda1 + tol >= link.alpha_times_ground;
        if link.lower_asserted {
            link.lower_ok = Some(link.alpha_times_ground >= bound.bound - tol);
        }
        let link_fails = !link.upper_ok || link.lower_ok == Some(false);
        if link_fails {
            if converged {
                failed = true;
            } else {
                inconclusive = true;
            }
        } else if link.lower_asserted && !converged {
            // The load-bearing rung must rest on a converged mesh.
            inconclusive = true;
        }
    }
    if numeric.convergence_estimate > MESH_CONVERGENCE_RTOL * lambda1.abs().max(1e-12) {
        inconclusive = true;
    }
    let verdict = if failed {
        Verdict::Fail
    } else if inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let gap_notion = if model.is_closed_spindle() {
        "spectral gap: first nonzero eigenvalue of the closed spindle".to_string()
    } else {
        "lowest eigenvalue under the model's outer boundary condition".to_string()
    };
    Ok(SpectralReport {
        gap_notion,
        numeric,
        links,
        bound,
        verdict,
        tol,
        notes: vec![
            "grounds at non-theorem strengths are diagnostics: only the upper link is asserted there"
                .to_string(),
        ],
    })
}
