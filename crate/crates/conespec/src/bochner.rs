//! Pointwise curvature-dimension algebra: Γ₂ from gradient/Hessian/Ricci
//! data, the two-vector self-improvement inequality, and the gradient-form
//! strengthening of the Bakry–Émery condition, all as finite-dimensional
//! matrix inequalities that can be fuzzed exhaustively.
//!
//! Conventions: `g` stands for ∇u, `h` for ∇²u, `r` for the Ricci tensor at
//! the point, `k` for a scalar with R ⪰ kI, and `nn` for the effective
//! dimension N ∈ [n, ∞]. Γ₂(u) = Ric(∇u, ∇u) + ‖∇²u‖²_HS.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::jacobi_eigenvalues;

/// Dense symmetric matrix, full row-major storage. Sizes here are tiny
/// (tangent-space dimension), so no packing is attempted.
#[derive(Debug, Clone, Serialize)]
pub struct SymMat {
    n: usize,
    data: Vec<f64>,
}

impl SymMat {
    #[must_use]
    pub fn zeros(n: usize) -> SymMat {
        SymMat { n, data: vec![0.0; n * n] }
    }

    #[must_use]
    pub fn identity(n: usize) -> SymMat {
        let mut m = SymMat::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[must_use]
    pub fn diagonal(d: &[f64]) -> SymMat {
        let n = d.len();
        let mut m = SymMat::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = d[i];
        }
        m
    }

    /// Build from row-major entries; rejects matrices that are not symmetric
    /// to roundoff and stores the exactly symmetrized average.
    pub fn from_rows(n: usize, data: Vec<f64>) -> Result<SymMat> {
        if data.len() != n * n {
            return Err(Error::Domain(format!(
                "expected {} entries for a {n}×{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        let scale = data.iter().fold(0.0_f64, |s, v| s.max(v.abs()));
        let mut m = SymMat { n, data };
        for i in 0..n {
            for j in (i + 1)..n {
                let a = m.data[i * n + j];
                let b = m.data[j * n + i];
                if (a - b).abs() > 1e-12 * (1.0 + scale) {
                    return Err(Error::Domain(format!(
                        "matrix is not symmetric: entry ({i},{j}) = {a} vs ({j},{i}) = {b}"
                    )));
                }
                let avg = 0.5 * (a + b);
                m.data[i * n + j] = avg;
                m.data[j * n + i] = avg;
            }
        }
        Ok(m)
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    #[must_use]
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * x[j]).sum())
            .collect()
    }

    #[must_use]
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    #[must_use]
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    /// self + c·I.
    #[must_use]
    pub fn shifted(&self, c: f64) -> SymMat {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i] += c;
        }
        m
    }

    #[must_use]
    pub fn eigenvalues(&self) -> Vec<f64> {
        jacobi_eigenvalues(&self.data, self.n)
    }

    #[must_use]
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// Q·self·Qᵀ for a row-major square matrix Q.
    #[must_use]
    pub fn conjugate(&self, q: &[f64]) -> SymMat {
        let n = self.n;
        // C = A Qᵀ, then B = Q C.
        let mut c = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += self.data[i * n + l] * q[j * n + l];
                }
                c[i * n + j] = s;
            }
        }
        let mut b = SymMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for l in 0..n {
                    s += q[i * n + l] * c[l * n + j];
                }
                b.data[i * n + j] = s;
            }
        }
        b
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Pointwise data of the Bochner identity at one tangent space.
#[derive(Debug, Clone, Serialize)]
pub struct BochnerInstance {
    pub n: usize,
    /// Effective dimension N ≥ n; `f64::INFINITY` selects the dimension-free
    /// limits of every coefficient.
    pub nn: f64,
    /// Gradient vector ∇u.
    pub g: Vec<f64>,
    /// Hessian ∇²u.
    pub h: SymMat,
    /// Ricci tensor at the point.
    pub r: SymMat,
    /// Scalar lower bound with R ⪰ kI.
    pub k: f64,
}

impl BochnerInstance {
    /// Validating constructor: checks dimensions, N ≥ n, and that R − kI is
    /// positive semidefinite up to an eigenvalue floor of −1e−12 at the
    /// instance's scale.
    pub fn new(nn: f64, g: Vec<f64>, h: SymMat, r: SymMat, k: f64) -> Result<BochnerInstance> {
        let n = g.len();
        if n < 2 {
            return Err(Error::Domain(format!("dimension must be ≥ 2, got {n}")));
        }
        if h.dim() != n || r.dim() != n {
            return Err(Error::Domain(format!(
                "dimension mismatch: g has {n} entries, H is {}×{}, R is {}×{}",
                h.dim(),
                h.dim(),
                r.dim(),
                r.dim()
            )));
        }
        if nn.is_nan() || nn < n as f64 {
            return Err(Error::Domain(format!(
                "effective dimension N = {nn} must be ≥ n = {n}"
            )));
        }
        let floor = -1e-12 * (1.0 + r.frobenius_sq().sqrt() + k.abs());
        let min_eig = r.shifted(-k).min_eigenvalue();
        if min_eig < floor {
            return Err(Error::Domain(format!(
                "R − kI is not positive semidefinite: smallest eigenvalue {min_eig} < {floor}"
            )));
        }
        Ok(BochnerInstance { n, nn, g, h, r, k })
    }

    /// Skips the R ⪰ kI check (needed to probe what happens when the
    /// curvature hypothesis fails).
    #[must_use]
    pub fn new_unchecked(nn: f64, g: Vec<f64>, h: SymMat, r: SymMat, k: f64) -> BochnerInstance {
        let n = g.len();
        BochnerInstance { n, nn, g, h, r, k }
    }

    /// Absolute/relative hybrid tolerance for slack checks on this instance:
    /// 1e−10·(1 + ‖H‖²_HS + ‖R‖_F). The inequalities are exact, so anything
    /// below −tol is a genuine bug.
    #[must_use]
    pub fn tol(&self) -> f64 {
        1e-10 * (1.0 + self.h.frobenius_sq() + self.r.frobenius_sq().sqrt())
    }
}

/// Coefficients (1/(N−1), N/(N−1), 1/N) with their N → ∞ limits.
fn dim_coefficients(nn: f64) -> (f64, f64, f64) {
    if nn.is_infinite() {
        (0.0, 1.0, 0.0)
    } else {
        (1.0 / (nn - 1.0), nn / (nn - 1.0), 1.0 / nn)
    }
}

/// Γ₂ = gᵀRg + ‖H‖²_HS.
#[must_use]
pub fn gamma2(inst: &BochnerInstance) -> f64 {
    dot(&inst.g, &inst.r.matvec(&inst.g)) + inst.h.frobenius_sq()
}

/// Two-vector self-improvement of the curvature-dimension inequality:
/// returns (lhs, rhs) with
///
/// ```text
///   lhs = Γ₂ − k|g|² − (tr H)²/N,
///   rhs = 2·[vᵀHw − (tr H/N)(vᵀw)]² / (|v|²|w|² + ((N−2)/N)(vᵀw)²),
/// ```
///
/// and lhs ≥ rhs whenever R ⪰ kI and N ≥ n.
pub fn self_improvement_gap(
    inst: &BochnerInstance,
    v: &[f64],
    w: &[f64],
) -> Result<(f64, f64)> {
    if v.len() != inst.n || w.len() != inst.n {
        return Err(Error::Domain(format!(
            "test vectors must have {} entries, got {} and {}",
            inst.n,
            v.len(),
            w.len()
        )));
    }
    let (_, _, inv_n) = dim_coefficients(inst.nn);
    let vn2 = dot(v, v);
    let wn2 = dot(w, w);
    let vw = dot(v, w);
    // (N−2)/N = 1 − 2/N, which is exact at N = 2 and in the limit N = ∞.
    let den = vn2 * wn2 + (1.0 - 2.0 * inv_n) * vw * vw;
    if den <= 0.0 {
        return Err(Error::Domain(
            "self-improvement denominator vanishes: v and w must both be nonzero".into(),
        ));
    }
    let tr = inst.h.trace();
    let g2 = dot(&inst.g, &inst.g);
    let lhs = gamma2(inst) - inst.k * g2 - tr * tr * inv_n;
    let num = dot(v, &inst.h.matvec(w)) - tr * inv_n * vw;
    Ok((lhs, 2.0 * num * num / den))
}

/// Gradient-form strengthening: returns the slack of
///
/// ```text
///   Γ₂ ≥ k|g|² + |Hĝ|² + (1/(N−1))·(|Hĝ| − |tr H|)²,   ĝ = g/|g|,
/// ```
///
/// which is the form the spectral-gap arguments integrate. Two equivalent
/// vector forms are evaluated alongside and cross-checked: the slack of
/// `Γ₂ − k|g|² − |Hĝ|² − (1/(N−1))|Hĝ − (tr H)ĝ|²` and the N-form
/// `Γ₂ − k|g|² − (tr H)²/N − (N/(N−1))|Hĝ − (tr H/N)ĝ|²` agree identically;
/// the returned norm-difference slack dominates both (reverse triangle
/// inequality), and that one-sided relation is asserted too.
pub fn be1_pointwise_check(inst: &BochnerInstance) -> Result<f64> {
    if inst.nn <= 1.0 {
        return Err(Error::Domain(format!(
            "effective dimension N = {} must exceed 1",
            inst.nn
        )));
    }
    let gn = norm(&inst.g);
    if gn == 0.0 {
        return Err(Error::Domain("gradient must be nonzero".into()));
    }
    let ghat: Vec<f64> = inst.g.iter().map(|v| v / gn).collect();
    let p = inst.h.matvec(&ghat);
    let pn2 = dot(&p, &p);
    let tr = inst.h.trace();
    let (inv_nm1, n_over_nm1, inv_n) = dim_coefficients(inst.nn);
    let base = gamma2(inst) - inst.k * gn * gn;

    let diff = pn2.sqrt() - tr.abs();
    let scalar = base - pn2 - inv_nm1 * diff * diff;

    let vec_sq: f64 = p
        .iter()
        .zip(&ghat)
        .map(|(pi, gi)| (pi - tr * gi) * (pi - tr * gi))
        .sum();
    let vector = base - pn2 - inv_nm1 * vec_sq;

    let nform_sq: f64 = p
        .iter()
        .zip(&ghat)
        .map(|(pi, gi)| (pi - tr * inv_n * gi) * (pi - tr * inv_n * gi))
        .sum();
    let nform = base - tr * tr * inv_n - n_over_nm1 * nform_sq;

    let scale = 1.0 + inst.h.frobenius_sq() + inst.r.frobenius_sq().sqrt();
    if (vector - nform).abs() > 1e-10 * scale {
        return Err(Error::Internal(format!(
            "the two vector-form slacks disagree: {vector} vs {nform}"
        )));
    }
    if scalar < vector - 1e-12 * scale {
        return Err(Error::Internal(format!(
            "norm-difference slack {scalar} fell below the vector slack {vector}"
        )));
    }
    Ok(scalar)
}

/// Random orthogonal matrix (row-major) by Gram–Schmidt on Gaussian rows.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut q: Vec<f64> = (0..n * n)
            .map(|_| StandardNormal.sample(rng))
            .collect();
        let mut ok = true;
        for i in 0..n {
            for j in 0..i {
                let mut s = 0.0;
                for l in 0..n {
                    s += q[i * n + l] * q[j * n + l];
                }
                for l in 0..n {
                    q[i * n + l] -= s * q[j * n + l];
                }
            }
            let nrm = norm(&q[i * n..(i + 1) * n]);
            if nrm < 1e-8 {
                ok = false;
                break;
            }
            for l in 0..n {
                q[i * n + l] /= nrm;
            }
        }
        if ok {
            return q;
        }
    }
}

/// Simultaneous rotation g → Qg, H → QHQᵀ, R → QRQᵀ.
#[must_use]
pub fn rotate_instance(inst: &BochnerInstance, q: &[f64]) -> BochnerInstance {
    let n = inst.n;
    let g: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| q[i * n + j] * inst.g[j]).sum())
        .collect();
    BochnerInstance {
        n,
        nn: inst.nn,
        g,
        h: inst.h.conjugate(q),
        r: inst.r.conjugate(q),
        k: inst.k,
    }
}

fn sample_gaussian_sym<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SymMat {
    let mut h = SymMat::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = StandardNormal.sample(rng);
            h.set_sym(i, j, v);
        }
    }
    h
}

/// Draws one instance from the fuzzing distribution: g uniform on the sphere
/// with log-uniform norm, H symmetric Gaussian (one quarter of draws sit
/// near multiples of the identity to probe the sharpness region), Ricci
/// kI + Wishart-like PSD noise, k uniform in [−2, 2].
pub fn sample_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, nn: f64) -> Result<BochnerInstance> {
    let mut g: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
    let gn = norm(&g);
    let target = (rng.random::<f64>() * 4.0 - 2.0) * std::f64::consts::LN_10;
    let scale = target.exp() / gn.max(1e-300);
    for v in &mut g {
        *v *= scale;
    }
    let h = if rng.random::<f64>() < 0.25 {
        let c: f64 = StandardNormal.sample(rng);
        let eps = sample_gaussian_sym(rng, n);
        let mut m = SymMat::identity(n);
        for i in 0..n {
            for j in i..n {
                let base = if i == j { c } else { 0.0 };
                m.set_sym(i, j, base + 0.01 * eps.get(i, j));
            }
        }
        m
    } else {
        sample_gaussian_sym(rng, n)
    };
    let k = rng.random::<f64>() * 4.0 - 2.0;
    let a = sample_gaussian_sym(rng, n);
    let mut wishart = SymMat::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for l in 0..n {
                s += a.get(i, l) * a.get(j, l);
            }
            wishart.set_sym(i, j, s / n as f64);
        }
    }
    BochnerInstance::new(nn, g, h, wishart.shifted(k), k)
}

/// Effective dimension draw: exactly n, n plus an exponential tail, or ∞.
pub fn sample_effective_dim<R: Rng + ?Sized>(rng: &mut R, n: usize) -> f64 {
    match rng.random_range(0..3u32) {
        0 => n as f64,
        1 => n as f64 - (1.0 - rng.random::<f64>()).ln() * 3.0,
        _ => f64::INFINITY,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub instances: u64,
    pub be1_failures: u64,
    pub lemma_failures: u64,
    pub min_be1_slack_normalized: f64,
    pub min_lemma_slack_normalized: f64,
}

/// Fuzz both inequalities over `count` random instances with dimensions in
/// 2..=max_dim. Failures are slacks below −tol; the inequalities are exact,
/// so any failure is a bug (or a broken hypothesis).
pub fn fuzz_inequalities<R: Rng + ?Sized>(
    rng: &mut R,
    count: u64,
    max_dim: usize,
) -> Result<FuzzReport> {
    if max_dim < 2 {
        return Err(Error::Domain(format!(
            "fuzzing needs max dimension ≥ 2, got {max_dim}"
        )));
    }
    let mut report = FuzzReport {
        instances: count,
        be1_failures: 0,
        lemma_failures: 0,
        min_be1_slack_normalized: f64::INFINITY,
        min_lemma_slack_normalized: f64::INFINITY,
    };
    for _ in 0..count {
        let n = rng.random_range(2..=max_dim);
        let nn = sample_effective_dim(rng, n);
        let inst = sample_instance(rng, n, nn)?;
        let tol = inst.tol();
        let scale = 1.0 + inst.h.frobenius_sq() + inst.r.frobenius_sq().sqrt();
        let slack = be1_pointwise_check(&inst)?;
        if slack < -tol {
            report.be1_failures += 1;
        }
        report.min_be1_slack_normalized = report.min_be1_slack_normalized.min(slack / scale);
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let w: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let (lhs, rhs) = self_improvement_gap(&inst, &v, &w)?;
        if lhs - rhs < -tol {
            report.lemma_failures += 1;
        }
        report.min_lemma_slack_normalized =
            report.min_lemma_slack_normalized.min((lhs - rhs) / scale);
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationReport {
    pub found: bool,
    pub tries: u64,
    pub slack: f64,
    pub instance: Option<BochnerInstance>,
}

/// Searches for an instance violating the gradient-form inequality once the
/// hypothesis R ⪰ kI is dropped — establishing that the hypothesis is
/// load-bearing, not decorative. Returns the first violation found.
pub fn find_hypothesis_violation<R: Rng + ?Sized>(
    rng: &mut R,
    max_tries: u64,
) -> Result<ViolationReport> {
    for tries in 1..=max_tries {
        let n = rng.random_range(2..=5usize);
        let nn = sample_effective_dim(rng, n);
        let base = sample_instance(rng, n, nn)?;
        // Raise k past the smallest Ricci eigenvalue so R − kI gains a
        // strictly negative direction.
        let deficit = 0.5 + 2.5 * rng.random::<f64>();
        let k_bad = base.r.min_eigenvalue() + deficit;
        let inst = BochnerInstance::new_unchecked(
            base.nn,
            base.g.clone(),
            base.h.clone(),
            base.r.clone(),
            k_bad,
        );
        let slack = be1_pointwise_check(&inst)?;
        if slack < -inst.tol() {
            return Ok(ViolationReport {
                found: true,
                tries,
                slack,
                instance: Some(inst),
            });
        }
    }
    Ok(ViolationReport {
        found: false,
        tries: max_tries,
        slack: f64::NAN,
        instance: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn gamma2_examples() {
        let a = BochnerInstance::new(
            3.0,
            e(3, 0),
            SymMat::zeros(3),
            SymMat::identity(3),
            0.0,
        )
        .unwrap();
        assert_relative_eq!(gamma2(&a), 1.0);
        let b = BochnerInstance::new(
            3.0,
            vec![0.0; 3],
            SymMat::identity(3),
            SymMat::zeros(3),
            -1.0,
        )
        .unwrap();
        assert_relative_eq!(gamma2(&b), 3.0);
        // R = kI exactly: Γ₂ − k|g|² = ‖H‖² ≥ 0.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(2..6usize);
            let k = rng.random::<f64>() * 4.0 - 2.0;
            let h = sample_gaussian_sym(&mut rng, n);
            let g: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let inst =
                BochnerInstance::new(n as f64, g.clone(), h, SymMat::identity(n).shifted(k - 1.0), k)
                    .unwrap();
            let g2: f64 = g.iter().map(|v| v * v).sum();
            assert!(gamma2(&inst) >= k * g2 - 1e-12 * (1.0 + g2.abs()));
        }
    }

    #[test]
    fn self_improvement_examples() {
        // H = I, v ⊥ w: rhs collapses to 0 and lhs = gᵀ(R−kI)g.
        let r = SymMat::from_rows(3, vec![2.0, 0.3, 0.0, 0.3, 1.5, 0.1, 0.0, 0.1, 1.0]).unwrap();
        let inst = BochnerInstance::new(3.0, vec![0.4, -1.0, 0.7], SymMat::identity(3), r.clone(), 0.5)
            .unwrap();
        let (lhs, rhs) = self_improvement_gap(&inst, &e(3, 0), &e(3, 2)).unwrap();
        assert_relative_eq!(rhs, 0.0);
        let gkg = dot(&inst.g, &r.shifted(-0.5).matvec(&inst.g));
        assert_relative_eq!(lhs, gkg, max_relative = 1e-14);
        assert!(lhs >= 0.0);

        // Hand-evaluated saddle case.
        let h = SymMat::diagonal(&[1.0, -1.0]);
        let inst2 =
            BochnerInstance::new(2.0, e(2, 0), h, SymMat::zeros(2), 0.0).unwrap();
        let (lhs2, rhs2) = self_improvement_gap(&inst2, &e(2, 0), &e(2, 1)).unwrap();
        assert_relative_eq!(lhs2, 2.0);
        assert_relative_eq!(rhs2, 0.0);

        // Zero test vector is rejected.
        assert!(self_improvement_gap(&inst2, &[0.0, 0.0], &e(2, 1)).is_err());
    }

    #[test]
    fn be1_sharpness_and_zero_hessian() {
        for n in 2..6usize {
            let inst = BochnerInstance::new(
                n as f64,
                e(n, 0),
                SymMat::identity(n),
                SymMat::zeros(n),
                0.0,
            )
            .unwrap();
            let slack = be1_pointwise_check(&inst).unwrap();
            assert!(slack.abs() <= 1e-13, "n = {n}: slack = {slack}");
        }
        let r = SymMat::diagonal(&[3.0, 2.0, 1.0]);
        let g = vec![1.0, -2.0, 0.5];
        let inst = BochnerInstance::new(3.0, g.clone(), SymMat::zeros(3), r.clone(), 0.75).unwrap();
        let slack = be1_pointwise_check(&inst).unwrap();
        let expect = dot(&g, &r.shifted(-0.75).matvec(&g));
        assert_relative_eq!(slack, expect, max_relative = 1e-14);
    }

    #[test]
    fn be1_returns_the_norm_difference_form() {
        // H with ĝ far from an eigenvector: the norm-difference slack is
        // strictly larger than the vector-form slack, and the function must
        // return the former. Hand values: Γ₂ = 4, |Hĝ|² = 2, tr H = 2 →
        // scalar = 2 − (√2 − 2)², vector = 0.
        let h = SymMat::from_rows(2, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let inst = BochnerInstance::new(2.0, e(2, 0), h, SymMat::zeros(2), 0.0).unwrap();
        let slack = be1_pointwise_check(&inst).unwrap();
        let expect = 2.0 - (2.0_f64.sqrt() - 2.0) * (2.0_f64.sqrt() - 2.0);
        assert_relative_eq!(slack, expect, max_relative = 1e-14);
        assert!(slack > 1.0);
    }

    #[test]
    fn be1_random_instances_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for trial in 0..20_000 {
            let n = rng.random_range(2..6usize);
            let nn = if trial % 2 == 0 {
                n as f64
            } else {
                sample_effective_dim(&mut rng, n)
            };
            let inst = sample_instance(&mut rng, n, nn).unwrap();
            let slack = be1_pointwise_check(&inst).unwrap();
            assert!(
                slack >= -inst.tol(),
                "trial {trial}: slack = {slack}, tol = {}",
                inst.tol()
            );
        }
    }

    #[test]
    fn lemma_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20_000 {
            let n = rng.random_range(2..6usize);
            let nn = sample_effective_dim(&mut rng, n);
            let inst = sample_instance(&mut rng, n, nn).unwrap();
            let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let w: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let (lhs, rhs) = self_improvement_gap(&inst, &v, &w).unwrap();
            assert!(
                lhs >= rhs - inst.tol(),
                "trial {trial}: lhs = {lhs}, rhs = {rhs}"
            );
        }
    }

    #[test]
    fn slack_monotone_in_effective_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.random_range(2..6usize);
            let inst = sample_instance(&mut rng, n, f64::INFINITY).unwrap();
            let grid = [
                n as f64,
                n as f64 + 0.5,
                n as f64 + 2.0,
                n as f64 + 50.0,
                f64::INFINITY,
            ];
            let mut prev = f64::NEG_INFINITY;
            for &nn in &grid {
                let mut probe = inst.clone();
                probe.nn = nn;
                let slack = be1_pointwise_check(&probe).unwrap();
                assert!(
                    slack >= prev - 1e-12 * (1.0 + slack.abs()),
                    "slack must not decrease as N grows: {prev} then {slack} at N = {nn}"
                );
                prev = slack;
            }
        }
    }

    #[test]
    fn orthogonal_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.random_range(2..6usize);
            let nn = sample_effective_dim(&mut rng, n);
            let inst = sample_instance(&mut rng, n, nn).unwrap();
            let q = random_orthogonal(&mut rng, n);
            let rotated = rotate_instance(&inst, &q);
            let a = be1_pointwise_check(&inst).unwrap();
            let b = be1_pointwise_check(&rotated).unwrap();
            let scale = 1.0 + inst.h.frobenius_sq() + inst.r.frobenius_sq().sqrt();
            assert!(
                (a - b).abs() <= 1e-11 * scale,
                "rotation changed the slack: {a} vs {b}"
            );
        }
    }

    #[test]
    fn dropping_the_hypothesis_breaks_the_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let report = find_hypothesis_violation(&mut rng, 10_000).unwrap();
        assert!(report.found, "no violation found in {} tries", report.tries);
        assert!(report.slack < 0.0);
        assert!(report.instance.is_some());
    }

    #[test]
    fn constructor_rejections() {
        // R − kI indefinite.
        let r = SymMat::diagonal(&[1.0, -0.5]);
        assert!(BochnerInstance::new(2.0, e(2, 0), SymMat::zeros(2), r, 0.0).is_err());
        // N below n.
        assert!(BochnerInstance::new(
            1.5,
            e(2, 0),
            SymMat::zeros(2),
            SymMat::identity(2),
            0.0
        )
        .is_err());
        // Dimension mismatch.
        assert!(BochnerInstance::new(
            3.0,
            e(3, 0),
            SymMat::zeros(2),
            SymMat::identity(3),
            0.0
        )
        .is_err());
        // Asymmetric input matrix.
        assert!(SymMat::from_rows(2, vec![1.0, 0.5, -0.5, 1.0]).is_err());
        // Zero gradient in the gradient-form check.
        let inst = BochnerInstance::new(
            2.0,
            vec![0.0, 0.0],
            SymMat::identity(2),
            SymMat::identity(2),
            0.0,
        )
        .unwrap();
        assert!(be1_pointwise_check(&inst).is_err());
    }

    #[test]
    fn fuzz_report_is_clean() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let report = fuzz_inequalities(&mut rng, 5_000, 5).unwrap();
        assert_eq!(report.be1_failures, 0);
        assert_eq!(report.lemma_failures, 0);
        assert!(report.min_be1_slack_normalized >= -1e-10);
        assert!(report.min_lemma_slack_normalized >= -1e-10);
    }
}
