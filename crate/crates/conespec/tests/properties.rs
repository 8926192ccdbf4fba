//! Randomized structural properties that cut across modules: scalar
//! comparison bounds, discretization guarantees, closed-form agreements,
//! and model-file round-trips.

use proptest::prelude::*;

use conespec::eigen::tridiag_lowest;
use conespec::estimates::admissibility;
use conespec::modelfile::{parse_model, serialize_model};
use conespec::models::{
    ricci_bound_cone, ricci_bound_warped, sphere_section, Computable, ConeCap,
    ConicalManifoldModel, CrossSection, SectionSpectrum,
};
use conespec::radial::{assemble, BoundaryCondition, Grid, Potential, RadialOperatorSpec};
use conespec::scalar::{comparison_radius, cos_ell, inv_sinc_sq, sin_ell, tan_gap};

const QUARTER_PI_SQ: f64 = std::f64::consts::PI * std::f64::consts::PI / 4.0;

fn bc_strategy() -> impl Strategy<Value = BoundaryCondition> {
    prop_oneof![
        Just(BoundaryCondition::Natural),
        Just(BoundaryCondition::Dirichlet),
    ]
}

/// An operator family that stays well inside every domain restriction:
/// ℓ ∈ [−1, 1] on [0, 1] keeps sin_ℓ positive past the tip, and the
/// polynomial potential is finite everywhere.
fn spec_strategy() -> impl Strategy<Value = (RadialOperatorSpec, f64, f64)> {
    (
        3u32..7,
        -1.0..1.0f64,
        0.0..30.0f64,
        0.0..8.0f64,
        0.0..8.0f64,
        bc_strategy(),
        bc_strategy(),
    )
        .prop_map(|(n, ell, mu, c0, c1, inner, outer)| {
            let mut spec = RadialOperatorSpec::laplacian(n, ell, mu);
            spec.potential = Potential::radial(move |r| c0 + c1 * r * r);
            spec.potential_label = format!("{c0}+{c1}r^2");
            spec.inner_bc = inner;
            spec.outer_bc = outer;
            (spec, c0, c1)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    /// cos_ℓ² + ℓ·sin_ℓ² = 1: the generalized Pythagorean identity pins the
    /// series and closed-form branches against each other across the
    /// small-argument threshold.
    #[test]
    fn generalized_pythagorean_identity(ell in -4.0..4.0f64, r in 0.0..2.0f64) {
        let s = sin_ell(ell, r);
        let c = cos_ell(ell, r);
        let lhs = c * c + ell * s * s;
        prop_assert!((lhs - 1.0).abs() <= 1e-12 * (1.0 + ell.abs() * s * s + c * c));
    }

    /// The inverse-tangent-square gap stays inside [0, (2/3)(L − ℓ)] on its
    /// whole domain rectangle.
    #[test]
    fn tan_gap_band(ell in 0.0..4.0f64, spread in 0.0..4.0f64, u in 1e-6..1.0f64) {
        let big_l = ell + spread;
        let r = if big_l > 0.0 { u * comparison_radius(big_l) } else { u * 10.0 };
        prop_assume!(r > 0.0);
        let gap = tan_gap(ell, big_l, r).unwrap();
        prop_assert!(gap >= -1e-12 * (1.0 + spread));
        prop_assert!(gap <= (2.0 / 3.0) * spread + 1e-12 * (1.0 + spread));
    }

    /// The monotone core behind that band: f = inv_sinc_sq gains at least a
    /// third of its argument increment on [0, π²/4].
    #[test]
    fn euler_core_slope(s in 0.0..QUARTER_PI_SQ, d in 0.0..QUARTER_PI_SQ) {
        let t = (s + d).min(QUARTER_PI_SQ);
        let gain = inv_sinc_sq(t) - inv_sinc_sq(s);
        prop_assert!(gain >= (t - s) / 3.0 - 1e-12 * (1.0 + t));
    }

    /// The two Ricci-bound routes (cone-specialized vs general warped
    /// product with f = sin_ℓ) agree on random inputs.
    #[test]
    fn ricci_routes_agree(
        n in 3u32..7,
        ell in -2.0..3.0f64,
        kappa in -1.0..3.0f64,
        u in 0.001..0.999f64,
    ) {
        let r = if ell > 0.0 { u * comparison_radius(ell) } else { u * 2.0 };
        prop_assume!(r > 0.0);
        let cone = ricci_bound_cone(n, ell, kappa, r).unwrap();
        let f = sin_ell(ell, r);
        let warped =
            ricci_bound_warped(n, f, cos_ell(ell, r), -ell * f, kappa, r).unwrap();
        prop_assert!((cone - warped).abs() <= 1e-10 * (1.0 + cone.abs()));
    }

    /// The admissibility flag equals the raw transform-strength predicate
    /// 4(1−κ)⁺/(n−2) < n/(n−1), independently recomputed here.
    #[test]
    fn admissibility_matches_predicate(n in 3u32..7, kappa in -2.0..2.0f64) {
        let verdict = admissibility(n, kappa, 1.0).unwrap();
        let nf = n as f64;
        let predicate = 4.0 * (1.0 - kappa).max(0.0) / (nf - 2.0) < nf / (nf - 1.0);
        prop_assert_eq!(verdict.admissible, predicate);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Nonnegative potential ⇒ nonnegative spectrum: the Galerkin pencil
    /// inherits positivity from the continuum form.
    #[test]
    fn galerkin_preserves_positivity(
        (spec, c0, c1) in spec_strategy(),
        cells in 20usize..120,
    ) {
        let grid = Grid::uniform(0.0, 1.0, cells).unwrap();
        let pencil = assemble(&spec, &grid).unwrap();
        let eig = tridiag_lowest(&pencil, 1).unwrap();
        let scale = 1.0 + c0 + c1;
        prop_assert!(eig.eigenvalues[0] >= -1e-8 * scale);
    }

    /// Raising the section mode raises every Rayleigh quotient, hence the
    /// lowest eigenvalue.
    #[test]
    fn mode_monotonicity(
        (spec, _, _) in spec_strategy(),
        extra in 0.0..40.0f64,
        cells in 20usize..100,
    ) {
        let grid = Grid::uniform(0.0, 1.0, cells).unwrap();
        let low = tridiag_lowest(&assemble(&spec, &grid).unwrap(), 1).unwrap();
        let mut bumped = spec.clone();
        bumped.mode_mu += extra;
        let high = tridiag_lowest(&assemble(&bumped, &grid).unwrap(), 1).unwrap();
        prop_assert!(
            high.eigenvalues[0] >= low.eigenvalues[0] - 1e-8 * (1.0 + low.eigenvalues[0].abs())
        );
    }

    /// Adding a constant to the potential shifts the whole spectrum by the
    /// same constant (the mass matrix is shared).
    #[test]
    fn constant_shift_equivariance(
        (spec, _, _) in spec_strategy(),
        shift in -5.0..5.0f64,
        cells in 20usize..100,
    ) {
        let grid = Grid::uniform(0.0, 1.0, cells).unwrap();
        let base = tridiag_lowest(&assemble(&spec, &grid).unwrap(), 3).unwrap();
        let mut shifted = spec.clone();
        let inner = spec.potential.clone();
        shifted.potential = Potential::radial(move |r| inner.eval(r) + shift);
        let moved = tridiag_lowest(&assemble(&shifted, &grid).unwrap(), 3).unwrap();
        for (a, b) in base.eigenvalues.iter().zip(&moved.eigenvalues) {
            prop_assert!((b - a - shift).abs() <= 1e-7 * (1.0 + a.abs() + shift.abs()));
        }
    }

    /// The bisection solver agrees with the dense oracle on the bottom of
    /// the spectrum, including singular 1/sin² mode potentials.
    #[test]
    fn solver_matches_dense_oracle(
        (spec, _, _) in spec_strategy(),
        cells in 12usize..60,
    ) {
        let grid = Grid::uniform(0.0, 1.0, cells).unwrap();
        let pencil = assemble(&spec, &grid).unwrap();
        let count = 3.min(cells.saturating_sub(2)).max(1);
        let fast = tridiag_lowest(&pencil, count).unwrap();
        let dense = pencil.dense_oracle_eigs().unwrap();
        for (i, v) in fast.eigenvalues.iter().enumerate() {
            prop_assert!((v - dense[i]).abs() <= 1e-9 * (1.0 + v.abs()));
        }
    }
}

fn section_strategy(n: u32) -> BoxedStrategy<CrossSection> {
    prop_oneof![
        (0.3..4.0f64).prop_map(move |radius| sphere_section(n, radius).unwrap()),
        (
            proptest::collection::vec(0.01..3.0f64, 2..7),
            -1.0..2.0f64,
            any::<bool>(),
        )
            .prop_map(move |(increments, kappa, volume_finite)| {
                let mut table = vec![0.0];
                let mut acc = 0.0;
                for inc in increments {
                    acc += inc;
                    table.push(acc);
                }
                CrossSection {
                    dim: n - 1,
                    kappa,
                    spectrum: SectionSpectrum::Table(table),
                    volume_finite,
                }
            }),
    ]
    .boxed()
}

fn model_strategy() -> BoxedStrategy<ConicalManifoldModel> {
    (3u32..7)
        .prop_flat_map(|n| {
            prop_oneof![
                // Finite cone: one cap, computable out to r = ρ.
                (
                    section_strategy(n),
                    -2.0..2.0f64,
                    0.05..1.0f64,
                    bc_strategy(),
                    -3.0..3.0f64,
                )
                    .prop_map(move |(section, ell, frac, bc, bulk_k)| {
                        let rho = if ell > 0.0 {
                            frac * comparison_radius(ell)
                        } else {
                            0.1 + 2.9 * frac
                        };
                        ConicalManifoldModel::finite_cone(n, ell, rho, section, bc, bulk_k)
                            .unwrap()
                    }),
                // Closed spindle over the section.
                (section_strategy(n), 0.1..4.0f64).prop_map(move |(section, ell)| {
                    ConicalManifoldModel::closed_spindle(n, ell, section).unwrap()
                }),
                // Abstract model: caps only, no computable realization.
                (
                    section_strategy(n),
                    -2.0..2.0f64,
                    0.05..1.0f64,
                    1usize..3,
                    -3.0..3.0f64,
                )
                    .prop_map(move |(section, ell, frac, cap_count, bulk_k)| {
                        let rho = if ell > 0.0 {
                            frac * comparison_radius(ell)
                        } else {
                            0.1 + 2.9 * frac
                        };
                        let cap = ConeCap { rho, ell, section };
                        let model = ConicalManifoldModel {
                            n,
                            bulk_k,
                            caps: vec![cap; cap_count],
                            computable: Computable::Abstract,
                        };
                        model.validate().unwrap();
                        model
                    }),
            ]
        })
        .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    /// Model file round-trip is the identity: serialize → parse → serialize
    /// reproduces both the value and the text.
    #[test]
    fn model_file_roundtrip(model in model_strategy()) {
        let text = serialize_model(&model).unwrap();
        let parsed = parse_model(&text, None).unwrap();
        prop_assert_eq!(&parsed, &model);
        let second = serialize_model(&parsed).unwrap();
        prop_assert_eq!(second, text);
    }
}
