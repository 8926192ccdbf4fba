//! Weighted 1-D Sturm–Liouville discretization. For one cross-section mode
//! the quadratic form
//!
//! ```text
//!   v  ↦  ∫ t·v′(r)² w(r) dr + ∫ (t·μ/sin_ℓ²(r) + q(r)) v(r)² w(r) dr,
//!   w(r) = sin_ℓ(r)^{n-1},
//! ```
//!
//! is assembled as a symmetric tridiagonal pencil (A, B) by cell-centered
//! finite volumes: two-point fluxes with edge weights w(edge) and a lumped
//! (diagonal) mass. Nodes sit at cell midpoints, so the 1/sin² singularity
//! at the tip is integrated, never evaluated at r = 0; the tip needs no
//! boundary condition because the weight vanishes there.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigenvalues, SymTridiag};
use crate::scalar::{inv_sin_ell_sq, sin_ell};

/// Strictly increasing cell edges; nodes are cell midpoints, so no node can
/// coincide with a zero of the weight at the ends of the interval.
#[derive(Debug, Clone, Serialize)]
pub struct Grid {
    edges: Vec<f64>,
}

impl Grid {
    /// Uniform grid over `[r_min, r_max]` with `cells ≥ 8` cells.
    pub fn uniform(r_min: f64, r_max: f64, cells: usize) -> Result<Grid> {
        if cells < 8 {
            return Err(Error::Domain(format!(
                "uniform grid needs at least 8 cells, got {cells}"
            )));
        }
        if !(r_min >= 0.0) || !(r_max > r_min) || !r_max.is_finite() {
            return Err(Error::Domain(format!(
                "invalid grid interval [{r_min}, {r_max}]"
            )));
        }
        let h = (r_max - r_min) / cells as f64;
        let mut edges: Vec<f64> = (0..=cells).map(|i| r_min + i as f64 * h).collect();
        *edges.last_mut().unwrap() = r_max;
        Ok(Grid { edges })
    }

    /// Geometrically graded grid: cell widths form the sequence
    /// `first_cell·q^j` with the ratio `q ≥ 1` solved so the widths fill
    /// `[r_min, r_max]` exactly. Used where the extremal profile needs
    /// resolution over many decades near the tip.
    pub fn geometric(r_min: f64, r_max: f64, cells: usize, first_cell: f64) -> Result<Grid> {
        if cells < 8 {
            return Err(Error::Domain(format!(
                "geometric grid needs at least 8 cells, got {cells}"
            )));
        }
        if !(r_min >= 0.0) || !(r_max > r_min) || !r_max.is_finite() {
            return Err(Error::Domain(format!(
                "invalid grid interval [{r_min}, {r_max}]"
            )));
        }
        let length = r_max - r_min;
        if !(first_cell > 0.0) || first_cell * cells as f64 > length {
            return Err(Error::Domain(format!(
                "first cell {first_cell:e} does not fit {cells} cells into length {length:e}"
            )));
        }
        let m = cells as f64;
        // Total width as a function of the ratio, overflow-guarded:
        // first_cell · (q^M - 1)/(q - 1).
        let total = |q: f64| -> f64 {
            if q == 1.0 {
                return first_cell * m;
            }
            let t = m * q.ln();
            if t > 690.0 {
                f64::INFINITY
            } else {
                first_cell * t.exp_m1() / (q - 1.0)
            }
        };
        let mut lo = 1.0_f64;
        let mut hi = 2.0_f64;
        while total(hi) < length {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if total(mid) < length {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let q = 0.5 * (lo + hi);
        let mut edges = Vec::with_capacity(cells + 1);
        edges.push(r_min);
        let mut h = first_cell;
        for _ in 0..cells {
            let next = edges.last().unwrap() + h;
            edges.push(next);
            h *= q;
        }
        *edges.last_mut().unwrap() = r_max;
        // The ratio solve is accurate to ~2^-200; the final snap to r_max
        // must not reorder the last two edges.
        if edges[cells] <= edges[cells - 1] {
            return Err(Error::Internal(
                "geometric grading collapsed the last cell".into(),
            ));
        }
        Ok(Grid { edges })
    }

    /// Arbitrary strictly increasing edges (at least one cell).
    pub fn from_edges(edges: Vec<f64>) -> Result<Grid> {
        if edges.len() < 2 {
            return Err(Error::Domain("a grid needs at least one cell".into()));
        }
        if edges.iter().any(|e| !e.is_finite()) || edges.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain(
                "grid edges must be finite and strictly increasing".into(),
            ));
        }
        Ok(Grid { edges })
    }

    /// Split every cell into `factor` equal parts (nested refinement for
    /// convergence studies).
    #[must_use]
    pub fn refine(&self, factor: usize) -> Grid {
        let factor = factor.max(1);
        let mut edges = Vec::with_capacity(self.cells() * factor + 1);
        for w in self.edges.windows(2) {
            let h = (w[1] - w[0]) / factor as f64;
            for k in 0..factor {
                edges.push(w[0] + k as f64 * h);
            }
        }
        edges.push(*self.edges.last().unwrap());
        Grid { edges }
    }

    #[must_use]
    pub fn cells(&self) -> usize {
        self.edges.len() - 1
    }

    #[must_use]
    pub fn r_min(&self) -> f64 {
        self.edges[0]
    }

    #[must_use]
    pub fn r_max(&self) -> f64 {
        *self.edges.last().unwrap()
    }

    /// Midpoint of cell `i`.
    #[must_use]
    pub fn node(&self, i: usize) -> f64 {
        0.5 * (self.edges[i] + self.edges[i + 1])
    }

    /// Width of cell `i`.
    #[must_use]
    pub fn width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    /// Edge `j` (there are `cells() + 1` of them).
    #[must_use]
    pub fn edge(&self, j: usize) -> f64 {
        self.edges[j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    /// Zero flux; where the weight vanishes (cone tip, spindle poles) this
    /// is the condition the weighted form imposes by itself.
    Natural,
    /// Zero ghost value half a cell beyond the boundary edge.
    Dirichlet,
}

/// Radial potential term q(r), evaluated at cell centers.
#[derive(Clone)]
pub enum Potential {
    Zero,
    Radial(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Potential {
    #[must_use]
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            Potential::Zero => 0.0,
            Potential::Radial(f) => f(r),
        }
    }

    #[must_use]
    pub fn radial<F>(f: F) -> Potential
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Potential::Radial(Arc::new(f))
    }
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Potential::Zero => f.write_str("Potential::Zero"),
            Potential::Radial(_) => f.write_str("Potential::Radial(..)"),
        }
    }
}

/// Everything that determines the radial operator −t·Δ_mode + q for one
/// cross-section mode: dimension, warping curvature, the mode eigenvalue
/// μ ≥ 0 of the cross-section, the Laplacian coefficient t > 0, a radial
/// potential, and the two boundary conditions. `n = 1` is the formal
/// unweighted case (w ≡ 1), accepted for self-tests.
#[derive(Clone, Debug)]
pub struct RadialOperatorSpec {
    pub n: u32,
    pub ell: f64,
    pub mode_mu: f64,
    pub laplacian_scale: f64,
    pub potential: Potential,
    pub potential_label: String,
    pub inner_bc: BoundaryCondition,
    pub outer_bc: BoundaryCondition,
}

impl RadialOperatorSpec {
    /// Plain weighted Laplacian for one mode: t = 1, q = 0, natural ends.
    #[must_use]
    pub fn laplacian(n: u32, ell: f64, mode_mu: f64) -> RadialOperatorSpec {
        RadialOperatorSpec {
            n,
            ell,
            mode_mu,
            laplacian_scale: 1.0,
            potential: Potential::Zero,
            potential_label: "0".into(),
            inner_bc: BoundaryCondition::Natural,
            outer_bc: BoundaryCondition::Natural,
        }
    }
}

/// Serializable summary of the operator parameters that produced a pencil.
#[derive(Debug, Clone, Serialize)]
pub struct PencilProvenance {
    pub n: u32,
    pub ell: f64,
    pub mode_mu: f64,
    pub laplacian_scale: f64,
    pub potential: String,
    pub inner_bc: BoundaryCondition,
    pub outer_bc: BoundaryCondition,
}

/// Generalized symmetric tridiagonal pencil (A, B): A = t·stiffness +
/// mode/potential diagonal, B = lumped mass (strictly positive diagonal).
#[derive(Debug, Clone)]
pub struct AssembledPencil {
    pub a: SymTridiag,
    pub b: Vec<f64>,
    pub grid: Grid,
    pub provenance: PencilProvenance,
}

const DENSE_ORACLE_LIMIT: usize = 512;

pub fn assemble(spec: &RadialOperatorSpec, grid: &Grid) -> Result<AssembledPencil> {
    if spec.n < 1 {
        return Err(Error::Domain("dimension n must be ≥ 1".into()));
    }
    if !(spec.laplacian_scale > 0.0) || !spec.laplacian_scale.is_finite() {
        return Err(Error::Domain(format!(
            "laplacian_scale must be positive and finite, got {}",
            spec.laplacian_scale
        )));
    }
    if !(spec.mode_mu >= 0.0) || !spec.mode_mu.is_finite() {
        return Err(Error::Domain(format!(
            "mode eigenvalue μ must be ≥ 0 and finite, got {}",
            spec.mode_mu
        )));
    }
    let m = grid.cells();
    let pw = i32::try_from(spec.n - 1).expect("dimension fits i32");
    let weight = |r: f64| sin_ell(spec.ell, r).powi(pw);
    let t_scale = spec.laplacian_scale;

    let mut diag = vec![0.0; m];
    let mut off = vec![0.0; m.saturating_sub(1)];
    let mut mass = vec![0.0; m];

    // Node terms: mass and potential.
    for i in 0..m {
        let r = grid.node(i);
        let w = weight(r);
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::Assembly {
                node: i,
                r,
                reason: format!("weight sin_ell^{}(r) = {w:e} is not positive", spec.n - 1),
            });
        }
        let cell_mass = w * grid.width(i);
        let mut q = spec.potential.eval(r);
        if spec.mode_mu > 0.0 {
            q += t_scale * spec.mode_mu * inv_sin_ell_sq(spec.ell, r);
        }
        if !q.is_finite() {
            return Err(Error::Assembly {
                node: i,
                r,
                reason: format!("potential value {q} is not finite"),
            });
        }
        mass[i] = cell_mass;
        diag[i] = q * cell_mass;
    }

    // Interior fluxes: edge j couples cells j-1 and j across the distance
    // between their midpoints.
    for j in 1..m {
        let e = grid.edge(j);
        let w_e = weight(e).max(0.0);
        if !w_e.is_finite() {
            return Err(Error::Assembly {
                node: j,
                r: e,
                reason: "edge weight is not finite".into(),
            });
        }
        let d = grid.node(j) - grid.node(j - 1);
        let c = t_scale * w_e / d;
        diag[j - 1] += c;
        diag[j] += c;
        off[j - 1] = -c;
    }

    // Boundary ghosts: a Dirichlet end pins a zero value half a cell beyond
    // the boundary edge. Where the weight vanishes (cone tip) the term is
    // zero and Dirichlet coincides with natural, as it should.
    if spec.inner_bc == BoundaryCondition::Dirichlet {
        let w_e = weight(grid.r_min()).max(0.0);
        diag[0] += t_scale * w_e / (0.5 * grid.width(0));
    }
    if spec.outer_bc == BoundaryCondition::Dirichlet {
        let w_e = weight(grid.r_max()).max(0.0);
        diag[m - 1] += t_scale * w_e / (0.5 * grid.width(m - 1));
    }

    Ok(AssembledPencil {
        a: SymTridiag { diag, off },
        b: mass,
        grid: grid.clone(),
        provenance: PencilProvenance {
            n: spec.n,
            ell: spec.ell,
            mode_mu: spec.mode_mu,
            laplacian_scale: spec.laplacian_scale,
            potential: spec.potential_label.clone(),
            inner_bc: spec.inner_bc,
            outer_bc: spec.outer_bc,
        },
    })
}

impl AssembledPencil {
    /// Wrap a hand-built pencil (tests, oracles). The grid is a placeholder
    /// uniform partition of [0, 1].
    pub fn from_raw(a: SymTridiag, b: Vec<f64>) -> Result<AssembledPencil> {
        let m = a.dim();
        if b.len() != m {
            return Err(Error::Internal("mass length mismatch".into()));
        }
        if b.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::Domain("mass diagonal must be strictly positive".into()));
        }
        let edges = (0..=m).map(|i| i as f64 / m as f64).collect();
        Ok(AssembledPencil {
            a,
            b,
            grid: Grid::from_edges(edges)?,
            provenance: PencilProvenance {
                n: 0,
                ell: 0.0,
                mode_mu: 0.0,
                laplacian_scale: 1.0,
                potential: "raw".into(),
                inner_bc: BoundaryCondition::Natural,
                outer_bc: BoundaryCondition::Natural,
            },
        })
    }

    /// Diagonal similarity B^{-1/2} A B^{-1/2} reducing (A, B) to a standard
    /// symmetric tridiagonal eigenproblem with the same eigenvalues.
    #[must_use]
    pub fn to_standard(&self) -> SymTridiag {
        let m = self.a.dim();
        let s: Vec<f64> = self.b.iter().map(|v| v.sqrt()).collect();
        let diag = (0..m).map(|i| self.a.diag[i] / self.b[i]).collect();
        let off = (0..m - 1)
            .map(|i| self.a.off[i] / (s[i] * s[i + 1]))
            .collect();
        SymTridiag { diag, off }
    }

    /// Map an eigenvector of the standard problem back to pencil coordinates.
    #[must_use]
    pub fn standard_vector_back(&self, y: &[f64]) -> Vec<f64> {
        y.iter()
            .zip(self.b.iter())
            .map(|(v, b)| v / b.sqrt())
            .collect()
    }

    /// All generalized eigenvalues by dense reduction + cyclic Jacobi.
    /// Guarded: this is the independent oracle, cubic in M.
    pub fn dense_oracle_eigs(&self) -> Result<Vec<f64>> {
        let m = self.a.dim();
        if m > DENSE_ORACLE_LIMIT {
            return Err(Error::OracleGuard {
                size: m,
                limit: DENSE_ORACLE_LIMIT,
            });
        }
        let std = self.to_standard();
        let mut dense = vec![0.0; m * m];
        for i in 0..m {
            dense[i * m + i] = std.diag[i];
            if i + 1 < m {
                dense[i * m + i + 1] = std.off[i];
                dense[(i + 1) * m + i] = std.off[i];
            }
        }
        Ok(jacobi_eigenvalues(&dense, m))
    }

    /// Debug text dump: one row per node, three columns diag/offdiag/mass
    /// (the last offdiag entry is absent and printed as 0).
    #[must_use]
    pub fn dump_debug(&self) -> String {
        let mut out = String::from("# diag offdiag mass\n");
        for i in 0..self.a.dim() {
            let off = if i < self.a.off.len() { self.a.off[i] } else { 0.0 };
            out.push_str(&format!("{:.17e} {:.17e} {:.17e}\n", self.a.diag[i], off, self.b[i]));
        }
        out
    }
}
