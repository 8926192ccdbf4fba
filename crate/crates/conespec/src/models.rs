//! Model types for manifolds with conical singularities: cross-sections with
//! their spectra, cone caps, spindles, closed-form Ricci lower bounds of
//! warped products, and a catalog of worked examples.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::radial::BoundaryCondition;
use crate::scalar::{comparison_radius, inv_sin_ell_sq};

/// Spectrum of −Δ on the cross-section, in dimensionless unit-length terms:
/// the radial mode potential is μ_m / sin_ℓ²(r).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionSpectrum {
    /// Round sphere of radius R: μ_m = m(m + dim − 1)/R².
    Sphere { radius: f64 },
    /// Explicit nondecreasing table starting at μ₀ = 0 (products, quotients).
    Table(Vec<f64>),
}

/// Cross-section N of a cone: an (n−1)-manifold with Ric^N ≥ (n−2)κ and a
/// known (or tabulated) Laplace spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossSection {
    /// dim = n − 1 ≥ 2.
    pub dim: u32,
    /// Ricci constant: Ric^N ≥ (n−2)κ g^N.
    pub kappa: f64,
    pub spectrum: SectionSpectrum,
    pub volume_finite: bool,
}

impl CrossSection {
    /// m-th eigenvalue μ_m of −Δ^N, nondecreasing with μ₀ = 0.
    pub fn mu(&self, m: usize) -> Result<f64> {
        match &self.spectrum {
            SectionSpectrum::Sphere { radius } => {
                let mf = m as f64;
                Ok(mf * (mf + self.dim as f64 - 1.0) / (radius * radius))
            }
            SectionSpectrum::Table(values) => values.get(m).copied().ok_or_else(|| {
                Error::Domain(format!(
                    "section eigenvalue table exhausted at mode {m} (length {})",
                    values.len()
                ))
            }),
        }
    }

    /// Spectral gap λ₁ = μ₁ of the cross-section.
    pub fn lambda1(&self) -> Result<f64> {
        self.mu(1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::Model(format!(
                "cross-section dimension must be ≥ 2, got {}",
                self.dim
            )));
        }
        if !self.kappa.is_finite() {
            return Err(Error::Model("cross-section κ must be finite".into()));
        }
        match &self.spectrum {
            SectionSpectrum::Sphere { radius } => {
                if !(radius > &0.0) || !radius.is_finite() {
                    return Err(Error::Model(format!("sphere radius must be > 0, got {radius}")));
                }
            }
            SectionSpectrum::Table(values) => {
                if values.is_empty() || values[0] != 0.0 {
                    return Err(Error::Model(
                        "eigenvalue table must start with μ₀ = 0".into(),
                    ));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Model("eigenvalue table has non-finite entries".into()));
                }
                if values.windows(2).any(|w| w[1] < w[0]) {
                    return Err(Error::Model("eigenvalue table must be nondecreasing".into()));
                }
            }
        }
        Ok(())
    }
}

/// Round sphere S^{n−1}_R as a cross-section: κ = 1/R².
pub fn sphere_section(n: u32, radius: f64) -> Result<CrossSection> {
    if n < 3 {
        return Err(Error::Domain(format!("sphere_section needs n ≥ 3, got {n}")));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Domain(format!("sphere radius must be > 0, got {radius}")));
    }
    Ok(CrossSection {
        dim: n - 1,
        kappa: 1.0 / (radius * radius),
        spectrum: SectionSpectrum::Sphere { radius },
        volume_finite: true,
    })
}

/// A conical point: metric ball of radius ρ isometric to [0, ρ) ×_{sin_ℓ} N.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeCap {
    pub rho: f64,
    pub ell: f64,
    pub section: CrossSection,
}

impl ConeCap {
    /// Minimal admissible clamp curvature for the Hardy weight on this cap:
    /// L = ℓ ∨ (π/(2ρ))².
    #[must_use]
    pub fn hardy_clamp_curvature(&self) -> f64 {
        let from_rho = (PI / (2.0 * self.rho)).powi(2);
        self.ell.max(from_rho)
    }

    pub fn validate(&self) -> Result<()> {
        self.section.validate()?;
        if !(self.rho > 0.0) || !self.rho.is_finite() {
            return Err(Error::Model(format!("cap radius must be > 0, got {}", self.rho)));
        }
        if !self.ell.is_finite() {
            return Err(Error::Model("cap curvature ℓ must be finite".into()));
        }
        if self.ell > 0.0 {
            let r_ell = comparison_radius(self.ell);
            if self.rho > r_ell * (1.0 + 1e-12) {
                return Err(Error::Model(format!(
                    "cap radius {} exceeds the comparison radius {r_ell} for ℓ = {}",
                    self.rho, self.ell
                )));
            }
        }
        Ok(())
    }
}

/// Whether (and how) the model admits full numeric spectra.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Computable {
    /// Warped product [0, total_length] ×_{sin_ℓ} N. Closed when ℓ > 0 and
    /// total_length = π/√ℓ (both ends are poles); otherwise the declared
    /// outer boundary condition applies at r = total_length.
    Spindle {
        ell: f64,
        total_length: f64,
        section: CrossSection,
        outer_bc: BoundaryCondition,
    },
    /// Only closed-form estimates apply.
    Abstract,
}

/// A manifold with conical singularities: bulk Ricci bound K, a list of
/// conical points, and an optional computable realization.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConicalManifoldModel {
    pub n: u32,
    pub bulk_k: f64,
    pub caps: Vec<ConeCap>,
    pub computable: Computable,
}

/// Borrowed view of a model's computable spindle realization.
#[derive(Debug, Clone, Copy)]
pub struct SpindleView<'a> {
    pub ell: f64,
    pub total_length: f64,
    pub section: &'a CrossSection,
    pub outer_bc: BoundaryCondition,
}

impl ConicalManifoldModel {
    /// The computable spindle data, or an error for abstract models.
    pub fn spindle_view(&self) -> Result<SpindleView<'_>> {
        match &self.computable {
            Computable::Spindle {
                ell,
                total_length,
                section,
                outer_bc,
            } => Ok(SpindleView {
                ell: *ell,
                total_length: *total_length,
                section,
                outer_bc: *outer_bc,
            }),
            Computable::Abstract => Err(Error::Model(
                "numeric spectrum requires a computable model".into(),
            )),
        }
    }

    /// Closed spindle over `section` with both poles as conical points of
    /// maximal cap radius R_ℓ. The recorded bulk bound is the equatorial
    /// Ricci bound (n−1)ℓ − (n−2)(1−κ)⁺ℓ, the best constant valid outside
    /// the two caps.
    pub fn closed_spindle(n: u32, ell: f64, section: CrossSection) -> Result<ConicalManifoldModel> {
        if !(ell > 0.0) {
            return Err(Error::Model(format!("a closed spindle needs ℓ > 0, got {ell}")));
        }
        let r_ell = comparison_radius(ell);
        let kappa = section.kappa;
        let cap = ConeCap {
            rho: r_ell,
            ell,
            section: section.clone(),
        };
        let nf = n as f64;
        let bulk_k = (nf - 1.0) * ell - (nf - 2.0) * (1.0 - kappa).max(0.0) * ell;
        let model = ConicalManifoldModel {
            n,
            bulk_k,
            caps: vec![cap.clone(), cap],
            computable: Computable::Spindle {
                ell,
                total_length: 2.0 * r_ell,
                section,
                outer_bc: BoundaryCondition::Natural,
            },
        };
        model.validate()?;
        Ok(model)
    }

    /// Finite cone cap as a standalone computable model (outer boundary at
    /// r = ρ with the declared condition).
    pub fn finite_cone(
        n: u32,
        ell: f64,
        rho: f64,
        section: CrossSection,
        outer_bc: BoundaryCondition,
        bulk_k: f64,
    ) -> Result<ConicalManifoldModel> {
        let model = ConicalManifoldModel {
            n,
            bulk_k,
            caps: vec![ConeCap {
                rho,
                ell,
                section: section.clone(),
            }],
            computable: Computable::Spindle {
                ell,
                total_length: rho,
                section,
                outer_bc,
            },
        };
        model.validate()?;
        Ok(model)
    }

    /// True when the computable realization is a closed spindle (ℓ > 0 with
    /// total length π/√ℓ): both ends are poles and the spectrum starts at 0.
    #[must_use]
    pub fn is_closed_spindle(&self) -> bool {
        match &self.computable {
            Computable::Spindle {
                ell, total_length, ..
            } => *ell > 0.0 && (total_length * ell.sqrt() - PI).abs() <= 1e-9,
            Computable::Abstract => false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Model(format!("ambient dimension must be ≥ 3, got {}", self.n)));
        }
        if !self.bulk_k.is_finite() {
            return Err(Error::Model("bulk Ricci bound must be finite".into()));
        }
        for (i, cap) in self.caps.iter().enumerate() {
            cap.validate()
                .map_err(|e| Error::Model(format!("cap {i}: {e}")))?;
            if cap.section.dim != self.n - 1 {
                return Err(Error::Model(format!(
                    "cap {i}: section dimension {} does not match n − 1 = {}",
                    cap.section.dim,
                    self.n - 1
                )));
            }
        }
        if let Computable::Spindle {
            ell,
            total_length,
            section,
            ..
        } = &self.computable
        {
            section.validate()?;
            if section.dim != self.n - 1 {
                return Err(Error::Model(format!(
                    "spindle section dimension {} does not match n − 1 = {}",
                    section.dim,
                    self.n - 1
                )));
            }
            if !(total_length > &0.0) || !total_length.is_finite() {
                return Err(Error::Model(format!(
                    "spindle length must be positive and finite, got {total_length}"
                )));
            }
            if *ell > 0.0 {
                let max_len = PI / ell.sqrt();
                if *total_length > max_len * (1.0 + 1e-12) {
                    return Err(Error::Model(format!(
                        "spindle length {total_length} exceeds π/√ℓ = {max_len}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Lower Ricci bound of the warped product I ×_f N at radius r, given the
/// warp function and its first two derivatives and Ric^N ≥ (n−2)κ:
///
/// ```text
///   k(r) = min{ −(n−1) f″/f , (n−2)(κ − f′²)/f² − f″/f }.
/// ```
///
/// The equivalent single-expression form
/// −(n−1)f″/f − (n−2)((κ−f′²)/f² + f″/f)⁻ is evaluated as a cross-check.
pub fn ricci_bound_warped(
    n: u32,
    f: f64,
    df: f64,
    ddf: f64,
    kappa: f64,
    r: f64,
) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be > 0, got {r}")));
    }
    if !(f > 0.0) || !f.is_finite() {
        return Err(Error::Domain(format!("warp function must be positive at r = {r}, got {f}")));
    }
    let nf = n as f64;
    let a = -ddf / f;
    let b = (kappa - df * df) / (f * f);
    let first = ((nf - 1.0) * a).min(a + (nf - 2.0) * b);
    let neg_part = (b - a).min(0.0);
    let second = (nf - 1.0) * a + (nf - 2.0) * neg_part;
    let scale = first.abs().max(second.abs()).max(1e-300);
    if (first - second).abs() > 1e-12 * scale {
        return Err(Error::Internal(format!(
            "the two warped Ricci bound forms disagree: {first} vs {second}"
        )));
    }
    Ok(first)
}

/// Lower Ricci bound of the ℓ-cone over a section with Ric^N ≥ (n−2)κ:
/// (n−1)ℓ − (n−2)(1−κ)⁺ / sin_ℓ²(r).
pub fn ricci_bound_cone(n: u32, ell: f64, kappa: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be > 0 and finite, got {r}")));
    }
    if ell > 0.0 && r >= PI / ell.sqrt() {
        return Err(Error::Domain(format!(
            "radius {r} is outside the cone domain (0, π/√ℓ) for ℓ = {ell}"
        )));
    }
    let nf = n as f64;
    let deficit = (1.0 - kappa).max(0.0);
    Ok((nf - 1.0) * ell - (nf - 2.0) * deficit * inv_sin_ell_sq(ell, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrushinMeasure {
    Riemannian,
    Lebesgue,
}

/// Lower Ricci-type bound for the Grushin half-model at |y| = y_norm.
pub fn grushin_bound(
    n: u32,
    j: u32,
    alpha: f64,
    y_norm: f64,
    measure: GrushinMeasure,
) -> Result<f64> {
    if j < 1 || j >= n {
        return Err(Error::Domain(format!("grushin needs 1 ≤ j < n, got j = {j}, n = {n}")));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("grushin exponent α must be > 0, got {alpha}")));
    }
    if !(y_norm > 0.0) || !y_norm.is_finite() {
        return Err(Error::Domain(format!("|y| must be > 0, got {y_norm}")));
    }
    let y2 = y_norm * y_norm;
    let nf = n as f64;
    let jf = j as f64;
    match (j, measure) {
        (1, GrushinMeasure::Riemannian) => Ok(-alpha / y2),
        (_, GrushinMeasure::Riemannian) => Ok(-(nf - jf) * alpha * alpha / y2),
        (1, GrushinMeasure::Lebesgue) => Err(Error::Domain(
            "the Lebesgue-measure Grushin bound is not available for j = 1".into(),
        )),
        (_, GrushinMeasure::Lebesgue) => Ok(-(nf - jf) * alpha * (alpha + 1.0) / y2),
    }
}

/// Admissibility of the Grushin singularity (Riemannian measure): is the
/// negative Ricci part form-small enough for the gap machinery?
///
/// For j ≥ 2 two thresholds are reported: the literal one,
/// α < (j−2)²·n/(4(n−1)), and the one recomputed by comparing the bound
/// −(n−j)α²/|y|² against the Hardy constant ((j−2)/2)² on the j-dimensional
/// factor, which gives α < ((j−2)/2)·√(n/((n−1)(n−j))). They differ in
/// general — `discrepancy` flags it — and no silent choice is made. For
/// j = 1 both routes give α < n/(4(n−1)) and agree.
#[derive(Debug, Clone, Serialize)]
pub struct GrushinAdmissibility {
    pub literal_threshold: f64,
    pub literal_admissible: bool,
    pub recomputed_threshold: f64,
    pub recomputed_admissible: bool,
    pub discrepancy: bool,
}

pub fn grushin_admissibility(n: u32, j: u32, alpha: f64) -> Result<GrushinAdmissibility> {
    if j < 1 || j >= n {
        return Err(Error::Domain(format!("grushin needs 1 ≤ j < n, got j = {j}, n = {n}")));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("grushin exponent α must be > 0, got {alpha}")));
    }
    let nf = n as f64;
    let jf = j as f64;
    let ratio = nf / (nf - 1.0);
    let (literal, recomputed) = if j == 1 {
        let thr = nf / (4.0 * (nf - 1.0));
        (thr, thr)
    } else {
        let literal = (jf - 2.0).powi(2) * nf / (4.0 * (nf - 1.0));
        // Form-bound route: the Hardy inequality on the j-factor controls
        // c/|y|² with form bound 4c/(j−2)²; requiring (n−j)α²·4/(j−2)²
        // < n/(n−1) solves to the threshold below (0 when j = 2, where no
        // Hardy inequality exists).
        let recomputed = if j == 2 {
            0.0
        } else {
            0.5 * (jf - 2.0) * (ratio / (nf - jf)).sqrt()
        };
        (literal, recomputed)
    };
    let literal_ok = alpha < literal;
    let recomputed_ok = alpha < recomputed;
    Ok(GrushinAdmissibility {
        literal_threshold: literal,
        literal_admissible: literal_ok,
        recomputed_threshold: recomputed,
        recomputed_admissible: recomputed_ok,
        discrepancy: (literal - recomputed).abs() > 1e-12 * literal.abs().max(1.0),
    })
}

/// Exact infimum over directions ξ of the weighted-space Ricci quotient for
/// the weight |x|^α on ℝⁿ: −|α| / |x|².
pub fn weighted_space_bound(n: u32, alpha: f64, x_norm: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("dimension must be ≥ 1".into()));
    }
    if !(x_norm > 0.0) || !x_norm.is_finite() {
        return Err(Error::Domain(format!("|x| must be > 0, got {x_norm}")));
    }
    if !alpha.is_finite() {
        return Err(Error::Domain("α must be finite".into()));
    }
    Ok(-alpha.abs() / (x_norm * x_norm))
}

/// Directional Ricci quotient for the weight |x|^α at point x, direction ξ:
/// α(−|x|²|ξ|² + 2⟨x,ξ⟩²)/(|x|⁴|ξ|²). Oracle for `weighted_space_bound`.
pub fn weighted_space_directional_quotient(alpha: f64, x: &[f64], xi: &[f64]) -> Result<f64> {
    if x.len() != xi.len() || x.is_empty() {
        return Err(Error::Domain("x and ξ must share a positive dimension".into()));
    }
    let x2: f64 = x.iter().map(|v| v * v).sum();
    let xi2: f64 = xi.iter().map(|v| v * v).sum();
    let dot: f64 = x.iter().zip(xi).map(|(a, b)| a * b).sum();
    if !(x2 > 0.0) || !(xi2 > 0.0) {
        return Err(Error::Domain("x and ξ must be nonzero".into()));
    }
    Ok(alpha * (-x2 * xi2 + 2.0 * dot * dot) / (x2 * x2 * xi2))
}

/// A named worked example with human-readable notes on its geometry.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub model: ConicalManifoldModel,
    pub notes: Vec<String>,
}

/// Eigenvalues of a product of two round 2-spheres of common radius `a`,
/// sorted ascending: sums μ_p + μ_q of factor eigenvalues m(m+1)/a².
fn product_two_spheres_spectrum(a: f64, count: usize) -> Vec<f64> {
    let factor: Vec<f64> = (0..count)
        .map(|m| (m * (m + 1)) as f64 / (a * a))
        .collect();
    let mut sums = Vec::with_capacity(count * count);
    for p in &factor {
        for q in &factor {
            sums.push(p + q);
        }
    }
    sums.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sums.truncate(count);
    sums
}

/// Eigenvalues of the round projective plane of curvature 1 (unit-sphere
/// quotient): even-degree spherical harmonics, μ = 2m(2m+1).
fn projective_plane_spectrum(count: usize) -> Vec<f64> {
    (0..count).map(|m| (2 * m * (2 * m + 1)) as f64).collect()
}

const TAMING_DIMENSION: u32 = 3;

/// The three section radii of the taming family over S²_R in dimension 3,
/// where the negative-part form bound crosses n/(n−1), 1, and 1/2: solving
/// 4(1 − 1/R²)/(n−2) = b for those b gives R = 1/√(1 − b(n−2)/4).
#[must_use]
pub fn taming_radii() -> [(String, f64); 3] {
    let n = TAMING_DIMENSION as f64;
    let radius = |bound: f64| 1.0 / (1.0 - bound * (n - 2.0) / 4.0).sqrt();
    [
        ("sharp".to_string(), radius(n / (n - 1.0))),
        ("natural".to_string(), radius(1.0)),
        ("flat".to_string(), radius(0.5)),
    ]
}

/// Catalog of named example models.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut entries = Vec::new();

    let unit_s2 = sphere_section(3, 1.0).expect("unit sphere section");

    entries.push(CatalogEntry {
        name: "round-sphere".into(),
        model: ConicalManifoldModel::closed_spindle(3, 1.0, unit_s2.clone())
            .expect("round sphere model"),
        notes: vec![
            "The closed spindle over the unit 2-sphere with ell = 1 is the round 3-sphere."
                .into(),
            "Exact spectral gap n*ell = 3; Ricci bound (n-1)*ell = 2 holds with equality.".into(),
        ],
    });

    entries.push(CatalogEntry {
        name: "hyperbolic".into(),
        model: ConicalManifoldModel::finite_cone(
            3,
            -1.0,
            1.0,
            unit_s2.clone(),
            BoundaryCondition::Natural,
            -2.0,
        )
        .expect("hyperbolic ball model"),
        notes: vec![
            "Geodesic ball of radius 1 in hyperbolic 3-space: warp sinh(r) over the unit 2-sphere."
                .into(),
            "Constant Ricci curvature (n-1)*ell = -2; the tip is a smooth point.".into(),
        ],
    });

    entries.push(CatalogEntry {
        name: "euclidean".into(),
        model: ConicalManifoldModel::finite_cone(
            3,
            0.0,
            1.0,
            unit_s2.clone(),
            BoundaryCondition::Natural,
            0.0,
        )
        .expect("euclidean ball model"),
        notes: vec![
            "Unit ball in flat 3-space: warp r over the unit 2-sphere (kappa = 1).".into(),
            "The cone Ricci bound vanishes identically.".into(),
        ],
    });

    let s2_radius2 = sphere_section(3, 2.0).expect("radius-2 sphere section");
    entries.push(CatalogEntry {
        name: "large-sphere-cone".into(),
        model: ConicalManifoldModel::finite_cone(
            3,
            0.0,
            1.0,
            s2_radius2,
            BoundaryCondition::Natural,
            -0.75,
        )
        .expect("large sphere cone model"),
        notes: vec![
            "Flat cone over a 2-sphere of radius 2 (kappa = 1/4 < 1): a genuine conical point."
                .into(),
            "Ricci bound -(n-2)(1-kappa)/r^2 = -0.75/r^2 is unbounded below near the tip; the \
             recorded bulk constant is its value at the rim r = 1."
                .into(),
        ],
    });

    let a = 1.0 / 3.0_f64.sqrt();
    let product_section = CrossSection {
        dim: 4,
        kappa: 1.0,
        spectrum: SectionSpectrum::Table(product_two_spheres_spectrum(a, 48)),
        volume_finite: true,
    };
    entries.push(CatalogEntry {
        name: "cone-S2xS2".into(),
        model: ConicalManifoldModel::finite_cone(
            5,
            0.0,
            1.0,
            product_section,
            BoundaryCondition::Natural,
            0.0,
        )
        .expect("product cone model"),
        notes: vec![
            "Flat 5-cone over S^2 x S^2, both factors of radius 1/sqrt(3); the section has \
             Ric = 3g, i.e. kappa = 1."
                .into(),
            "Ricci-flat cone, but sectional curvature is unbounded: sup Sec = 2/r^2, inf Sec = \
             -1/r^2."
                .into(),
        ],
    });

    let rp2_section = CrossSection {
        dim: 2,
        kappa: 1.0,
        spectrum: SectionSpectrum::Table(projective_plane_spectrum(40)),
        volume_finite: true,
    };
    entries.push(CatalogEntry {
        name: "cone-RP2".into(),
        model: ConicalManifoldModel::finite_cone(
            3,
            0.0,
            1.0,
            rp2_section,
            BoundaryCondition::Natural,
            0.0,
        )
        .expect("projective cone model"),
        notes: vec![
            "Flat 3-cone over the round projective plane of curvature 1 (kappa = 1).".into(),
            "Sec = 0 and Ric = 0 away from the tip, yet the tip is a genuine singularity: no \
             neighborhood is isometric to a smooth ball."
                .into(),
        ],
    });

    for (tag, radius) in taming_radii() {
        let section = sphere_section(3, radius).expect("taming section");
        let kappa = section.kappa;
        entries.push(CatalogEntry {
            name: format!("taming-{tag}"),
            model: ConicalManifoldModel::finite_cone(
                3,
                0.0,
                1.0,
                section,
                BoundaryCondition::Natural,
                (kappa - 1.0) / 1.0,
            )
            .expect("taming model"),
            notes: vec![
                format!(
                    "Flat 3-cone over a 2-sphere of radius {radius:.12} (kappa = {kappa:.12})."
                ),
                format!(
                    "At this radius the negative Ricci part c/r^2 has form bound 4c/(n-2)^2 = {}.",
                    match tag.as_str() {
                        "sharp" => "n/(n-1) = 3/2, the admissibility edge",
                        "natural" => "1, where the quadratic form stays nonnegative",
                        _ => "1/2, comfortably subcritical",
                    }
                ),
            ],
        });
    }

    entries
}
