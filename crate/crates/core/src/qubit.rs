//! Qubit geometry and negative definite kernels.
//!
//! A qubit state is `ρ = ½(I + r·σ)` with `r` in the closed unit ball and
//! `σ = (σx, σy, σz)`. Its eigenvalues are `½(1 ± ‖r‖)`, so every trace
//! function of a qubit state (and of a midpoint of two states) has a closed
//! form in the Bloch vector.
//!
//! A divergence kernel `D` on points `x_1..x_m` is negative definite iff
//! `Σ c_j c_k D_jk <= 0` for every zero-sum `c`, iff the centered Gram
//! matrix `K_c = −½ H D H` (with `H = I − 11ᵀ/m`) is positive semidefinite.
//! In that case `√D` is a Euclidean metric on the points and classical MDS
//! recovers coordinates from the spectral square root of `K_c`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::divergences::{jensen_f_divergence, JensenFn};
use crate::matrix::CMatrix;
use crate::spectral::{eigen_decompose, symmetric_eigen, DensityMatrix, HermitianMatrix, PsdMatrix};
use crate::{Error, Result};

/// Slack on `‖r‖ <= 1`.
pub const BLOCH_TOL: f64 = 1e-12;
/// Relative tolerance for the centered spectrum (and for rank truncation).
pub const CENTERED_TOL: f64 = 1e-10;

/// Point of the closed unit ball in `R³`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "[f64; 3]", into = "[f64; 3]"))]
pub struct BlochVector([f64; 3]);

impl BlochVector {
    /// Validates `‖r‖ <= 1 + 1e-12`.
    pub fn new(r: [f64; 3]) -> Result<Self> {
        if r.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidBlochVector(f64::NAN));
        }
        let n = norm3(&r);
        if n > 1.0 + BLOCH_TOL {
            return Err(Error::InvalidBlochVector(n));
        }
        Ok(Self(r))
    }

    /// The origin (maximally mixed state).
    pub fn origin() -> Self {
        Self([0.0; 3])
    }

    /// Components.
    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        norm3(&self.0)
    }
}

impl TryFrom<[f64; 3]> for BlochVector {
    type Error = Error;

    fn try_from(r: [f64; 3]) -> Result<Self> {
        Self::new(r)
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(r: BlochVector) -> [f64; 3] {
        r.0
    }
}

fn norm3(r: &[f64; 3]) -> f64 {
    libm::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2])
}

fn half_sum(a: &BlochVector, b: &BlochVector) -> [f64; 3] {
    [
        0.5 * (a.0[0] + b.0[0]),
        0.5 * (a.0[1] + b.0[1]),
        0.5 * (a.0[2] + b.0[2]),
    ]
}

/// `½(I + r·σ)`.
pub fn bloch_to_density(r: &BlochVector) -> Result<DensityMatrix> {
    let [x, y, z] = r.0;
    let m = CMatrix::from_vec(
        2,
        2,
        vec![
            Complex64::new(0.5 * (1.0 + z), 0.0),
            Complex64::new(0.5 * x, -0.5 * y),
            Complex64::new(0.5 * x, 0.5 * y),
            Complex64::new(0.5 * (1.0 - z), 0.0),
        ],
    )?;
    DensityMatrix::from_matrix(m)
}

/// `r_k = tr(ρ σ_k)`.
pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(rho.dim(), 2));
    }
    let m = rho.matrix();
    let x = 2.0 * m[(1, 0)].re;
    let y = 2.0 * m[(1, 0)].im;
    let z = (m[(0, 0)] - m[(1, 1)]).re;
    BlochVector::new([x, y, z])
}

/// Eigenvalues of `ρ(r)`, ascending: `½(1 ∓ ‖r‖)`.
pub fn state_eigenvalues(r: &BlochVector) -> (f64, f64) {
    let n = r.norm().min(1.0);
    (0.5 * (1.0 - n), 0.5 * (1.0 + n))
}

/// Eigenvalues of `(ρ_j + ρ_k)/2`, ascending: `½(1 ∓ ‖(r_j + r_k)/2‖)`.
pub fn mid_eigenvalues(rj: &BlochVector, rk: &BlochVector) -> (f64, f64) {
    let n = norm3(&half_sum(rj, rk)).min(1.0);
    (0.5 * (1.0 - n), 0.5 * (1.0 + n))
}

fn qubit_trace(f: &JensenFn, (lo, hi): (f64, f64)) -> Result<f64> {
    let v = f.eval(lo) + f.eval(hi);
    if !v.is_finite() {
        return Err(Error::DomainError(lo));
    }
    Ok(v)
}

/// `tr f_t(ρ)` for a qubit with Bloch vector of norm `‖r‖`:
/// `(2t⁴ + t³) / ((t + ½)² − ‖r/2‖²)`.
pub fn ft_trace_closed(t: f64, r_norm: f64) -> f64 {
    let h = t + 0.5;
    (2.0 * t * t * t * t + t * t * t) / (h * h - 0.25 * r_norm * r_norm)
}

/// `J_f(ρ_j, ρ_k)` from Bloch vectors.
///
/// `f_t` uses the rational closed form; other functions use the closed-form
/// eigenvalues of the states and their midpoint.
pub fn jensen_closed(f: &JensenFn, rj: &BlochVector, rk: &BlochVector) -> Result<f64> {
    let raw = match f {
        JensenFn::Ft(t) => {
            let mid = norm3(&half_sum(rj, rk));
            0.5 * (ft_trace_closed(*t, rj.norm()) + ft_trace_closed(*t, rk.norm())) - ft_trace_closed(*t, mid)
        }
        _ => {
            let tj = qubit_trace(f, state_eigenvalues(rj))?;
            let tk = qubit_trace(f, state_eigenvalues(rk))?;
            let tm = qubit_trace(f, mid_eigenvalues(rj, rk))?;
            0.5 * (tj + tk) - tm
        }
    };
    Ok(crate::divergences::DivergenceValue::from_raw(raw)?.value)
}

/// A finite set of states: Bloch vectors, or density matrices of equal dimension.
#[derive(Clone, Debug, PartialEq)]
pub enum PointSet {
    /// Qubit states by Bloch vector.
    Bloch(Vec<BlochVector>),
    /// Generic states.
    Densities(Vec<DensityMatrix>),
}

impl PointSet {
    /// Number of points.
    pub fn len(&self) -> usize {
        match self {
            PointSet::Bloch(p) => p.len(),
            PointSet::Densities(p) => p.len(),
        }
    }

    /// True for an empty set.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Density matrices for every point.
    pub fn densities(&self) -> Result<Vec<DensityMatrix>> {
        match self {
            PointSet::Bloch(p) => p.iter().map(bloch_to_density).collect(),
            PointSet::Densities(p) => Ok(p.clone()),
        }
    }
}

/// Pairwise `J_f` kernel. Bloch sets use [`jensen_closed`]; density sets
/// use the generic spectral path.
pub fn kernel_matrix(ps: &PointSet, f: &JensenFn) -> Result<Vec<Vec<f64>>> {
    let m = ps.len();
    let mut k = vec![vec![0.0; m]; m];
    match ps {
        PointSet::Bloch(p) => {
            for i in 0..m {
                for j in i + 1..m {
                    let v = jensen_closed(f, &p[i], &p[j])?;
                    k[i][j] = v;
                    k[j][i] = v;
                }
            }
        }
        PointSet::Densities(p) => {
            for i in 0..m {
                for j in i + 1..m {
                    let v = jensen_f_divergence(f, &p[i], &p[j])?.value;
                    k[i][j] = v;
                    k[j][i] = v;
                }
            }
        }
    }
    Ok(k)
}

/// Pairwise `J_f` kernel through `jensen_f_divergence` on explicit matrices,
/// whatever the point-set variant.
pub fn kernel_matrix_generic(ps: &PointSet, f: &JensenFn) -> Result<Vec<Vec<f64>>> {
    let dens: Vec<PsdMatrix> = ps.densities()?.into_iter().map(DensityMatrix::into_psd).collect();
    kernel_from(&dens, |a, b| Ok(jensen_f_divergence(f, a, b)?.value))
}

/// Symmetric kernel with zero diagonal from a pairwise function.
pub fn kernel_from<T>(points: &[T], d: impl Fn(&T, &T) -> Result<f64>) -> Result<Vec<Vec<f64>>> {
    let m = points.len();
    let mut k = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let v = d(&points[i], &points[j])?;
            k[i][j] = v;
            k[j][i] = v;
        }
    }
    Ok(k)
}

/// Outcome of the centered kernel test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    /// `Σ c_j c_k D_jk <= 0` for all zero-sum `c` (within tolerance).
    NegativeDefinite,
    /// Some zero-sum `c` makes the quadratic form positive.
    Violated,
}

/// Kernel together with its centered spectrum.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KernelReport {
    /// The divergence kernel `D`.
    pub kernel: Vec<Vec<f64>>,
    /// Eigenvalues of `K_c = −½ H D H`, ascending.
    pub centered_spectrum: Vec<f64>,
    /// Definiteness verdict.
    pub verdict: Verdict,
    /// Largest eigenvalue of `½ H D H` (that is, `−min K_c`); the maximum
    /// of `½ Σ c_j c_k D_jk` over unit zero-sum `c`.
    pub max_centered_eigenvalue: f64,
    /// Eigenvectors of `K_c` (row `k` pairs with `centered_spectrum[k]`).
    #[cfg_attr(feature = "serde", serde(skip))]
    pub centered_vectors: Vec<Vec<f64>>,
}

impl KernelReport {
    /// `max(1, ‖K_c‖₂)`, the scale for the relative tolerances.
    pub fn scale(&self) -> f64 {
        self.centered_spectrum.iter().fold(1.0f64, |s, l| s.max(l.abs()))
    }
}

fn check_kernel(kernel: &[Vec<f64>]) -> Result<()> {
    let m = kernel.len();
    if m == 0 || kernel.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidShape("kernel must be a nonempty square matrix"));
    }
    let scale = kernel.iter().flatten().fold(1.0f64, |s, v| s.max(v.abs()));
    for (i, row) in kernel.iter().enumerate() {
        if let Some(j) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: j });
        }
        if row[i].abs() > 1e-12 * scale {
            return Err(Error::NonZeroDiagonal {
                index: i,
                value: row[i],
            });
        }
        if let Some(j) = (i + 1..m).find(|&j| (row[j] - kernel[j][i]).abs() > 1e-12 * scale) {
            return Err(Error::AsymmetricInput { row: i, col: j });
        }
    }
    Ok(())
}

/// Centered kernel `K_c = −½ H D H`.
pub fn centered_gram(kernel: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = kernel.len();
    let mf = m as f64;
    let row_means: Vec<f64> = kernel.iter().map(|r| r.iter().sum::<f64>() / mf).collect();
    let grand = row_means.iter().sum::<f64>() / mf;
    let mut kc = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let d = 0.5 * (kernel[i][j] + kernel[j][i]);
            kc[i][j] = -0.5 * (d - row_means[i] - row_means[j] + grand);
        }
    }
    kc
}

/// Negative-definiteness test through the spectrum of `K_c`.
///
/// The verdict is [`Verdict::NegativeDefinite`] iff
/// `min eig(K_c) >= −1e-10 · max(1, ‖K_c‖₂)`.
pub fn centered_kernel_check(kernel: &[Vec<f64>]) -> Result<KernelReport> {
    check_kernel(kernel)?;
    let kc = centered_gram(kernel);
    let (centered_spectrum, centered_vectors) = symmetric_eigen(&kc)?;
    let mut report = KernelReport {
        kernel: kernel.to_vec(),
        max_centered_eigenvalue: -centered_spectrum[0],
        centered_spectrum,
        verdict: Verdict::Violated,
        centered_vectors,
    };
    if report.centered_spectrum[0] >= -CENTERED_TOL * report.scale() {
        report.verdict = Verdict::NegativeDefinite;
    }
    Ok(report)
}

/// Euclidean coordinates realizing `√D`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EmbeddingResult {
    /// `m × d` coordinates, `d <= m − 1`.
    pub coordinates: Vec<Vec<f64>>,
    /// `max_jk |‖x_j − x_k‖² − D_jk|`.
    pub residual: f64,
    /// `max_jk |‖x_j − x_k‖ − √D_jk|`.
    pub distance_residual: f64,
}

impl EmbeddingResult {
    /// Embedding dimension `d`.
    pub fn dimension(&self) -> usize {
        self.coordinates.first().map_or(0, Vec::len)
    }
}

/// Classical MDS: `x_j = (√λ_k v_k[j])_k` over centered eigenvalues
/// `λ_k > 1e-10 · ‖K_c‖₂`.
pub fn mds_embed(report: &KernelReport) -> Result<EmbeddingResult> {
    if report.verdict != Verdict::NegativeDefinite {
        return Err(Error::NotEmbeddable);
    }
    let m = report.kernel.len();
    let norm = report.centered_spectrum.iter().fold(0.0f64, |s, l| s.max(l.abs()));
    let cut = CENTERED_TOL * norm;
    let kept: Vec<usize> = (0..m).rev().filter(|&k| report.centered_spectrum[k] > cut).collect();
    let coordinates: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            kept.iter()
                .map(|&k| libm::sqrt(report.centered_spectrum[k]) * report.centered_vectors[k][j])
                .collect()
        })
        .collect();
    let mut residual = 0.0f64;
    let mut distance_residual = 0.0f64;
    for i in 0..m {
        for j in i + 1..m {
            let d2: f64 = coordinates[i]
                .iter()
                .zip(&coordinates[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let target = report.kernel[i][j];
            residual = residual.max((d2 - target).abs());
            distance_residual = distance_residual.max((libm::sqrt(d2) - libm::sqrt(target.max(0.0))).abs());
        }
    }
    Ok(EmbeddingResult {
        coordinates,
        residual,
        distance_residual,
    })
}

/// Kernel report for `J_{f_t}` on a qubit point set.
pub fn ft_kernel_matrix(points: &[BlochVector], t: f64) -> Result<KernelReport> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidParameter("f_t needs t > 0"));
    }
    let kernel = kernel_matrix(&PointSet::Bloch(points.to_vec()), &JensenFn::Ft(t))?;
    centered_kernel_check(&kernel)
}

/// Minimum eigenvalue of `G_jk = 1/(1 − ‖(r_j + r_k)/(4t + 2)‖²)`.
pub fn cls_pd_kernel_check(points: &[BlochVector], t: f64) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidParameter("kernel needs t > 0"));
    }
    let s = 4.0 * t + 2.0;
    let gram = kernel_gram(points, |a, b| {
        let r = [(a.0[0] + b.0[0]) / s, (a.0[1] + b.0[1]) / s, (a.0[2] + b.0[2]) / s];
        1.0 / (1.0 - (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]))
    });
    Ok(symmetric_eigen(&gram)?.0[0])
}

fn kernel_gram(points: &[BlochVector], g: impl Fn(&BlochVector, &BlochVector) -> f64) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|a| points.iter().map(|b| g(a, b)).collect())
        .collect()
}

/// The indefinite 2×2 matrix `[g(α,β)]` for `g(α,β) = 2 tr((α+β)/2)² − 1`
/// on `{diag(1,0), I/2}`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Counterexample {
    /// `[[g(ρ,ρ), g(ρ,σ)], [g(σ,ρ), g(σ,σ)]]`.
    pub matrix: [[f64; 2]; 2],
    /// Eigenvalues, descending.
    pub eigenvalues: (f64, f64),
}

/// Evaluates the fixture with `ρ = diag(1,0)`, `σ = I/2`.
pub fn briet_harremoes_counterexample() -> Result<Counterexample> {
    let states = [HermitianMatrix::diag(&[1.0, 0.0])?, HermitianMatrix::diag(&[0.5, 0.5])?];
    let g = |a: &HermitianMatrix, b: &HermitianMatrix| -> Result<f64> {
        let mid = a.combine(0.5, b, 0.5)?;
        let sq = mid.matrix() * mid.matrix();
        Ok(2.0 * sq.trace().re - 1.0)
    };
    let mut matrix = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            matrix[i][j] = g(&states[i], &states[j])?;
        }
    }
    let rows = [matrix[0].to_vec(), matrix[1].to_vec()];
    let dec = eigen_decompose(&HermitianMatrix::from_real_rows(&rows)?)?;
    Ok(Counterexample {
        matrix,
        eigenvalues: (dec.eigenvalues[1], dec.eigenvalues[0]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergences::{qjsd, qjsd_distance};

    fn bv(r: [f64; 3]) -> BlochVector {
        BlochVector::new(r).unwrap()
    }

    #[test]
    fn bloch_examples() {
        let half = bloch_to_density(&bv([0.0, 0.0, 0.0])).unwrap();
        assert_eq!(half.matrix(), &CMatrix::from_diag(&[0.5, 0.5]));
        let up = bloch_to_density(&bv([0.0, 0.0, 1.0])).unwrap();
        assert_eq!(up.matrix(), &CMatrix::from_diag(&[1.0, 0.0]));
        let plus = bloch_to_density(&bv([1.0, 0.0, 0.0])).unwrap();
        let expected = CMatrix::from_fn(2, 2, |_, _| Complex64::new(0.5, 0.0));
        assert_eq!(plus.matrix(), &expected);
        for r in [[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.1, -0.5, 0.3]] {
            let back = density_to_bloch(&bloch_to_density(&bv(r)).unwrap()).unwrap();
            for k in 0..3 {
                assert!((back.components()[k] - r[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bloch_rejects_outside_ball() {
        assert!(matches!(
            BlochVector::new([1.0, 1.0, 0.0]),
            Err(Error::InvalidBlochVector(_))
        ));
        assert!(BlochVector::new([1.0 + 1e-13, 0.0, 0.0]).is_ok());
    }

    #[test]
    fn density_to_bloch_needs_qubit() {
        let rho = DensityMatrix::maximally_mixed(3).unwrap();
        assert_eq!(density_to_bloch(&rho), Err(Error::DimensionMismatch(3, 2)));
    }

    #[test]
    fn mid_eigenvalue_examples() {
        let up = bv([0.0, 0.0, 1.0]);
        let down = bv([0.0, 0.0, -1.0]);
        assert_eq!(mid_eigenvalues(&up, &down), (0.5, 0.5));
        assert_eq!(mid_eigenvalues(&up, &up), (0.0, 1.0));
        let (lo, hi) = mid_eigenvalues(&up, &bv([1.0, 0.0, 0.0]));
        assert!((lo - 0.1464466094067262).abs() < 1e-15);
        assert!((hi - 0.8535533905932737).abs() < 1e-15);
    }

    #[test]
    fn ft_kernel_closed_form_agrees_with_spectral() {
        let pts = alloc::vec![bv([0.1, 0.2, -0.3]), bv([0.0, 0.0, 1.0]), bv([-0.6, 0.5, 0.2])];
        for t in [0.1, 1.0, 10.0] {
            let closed = kernel_matrix(&PointSet::Bloch(pts.clone()), &JensenFn::Ft(t)).unwrap();
            let generic = kernel_matrix_generic(&PointSet::Bloch(pts.clone()), &JensenFn::Ft(t)).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert!((closed[i][j] - generic[i][j]).abs() < 1e-12, "t = {t}");
                }
            }
        }
    }

    #[test]
    fn ft_kernel_identical_points_zero() {
        let p = bv([0.3, 0.1, 0.0]);
        let r = ft_kernel_matrix(&[p, p], 1.0).unwrap();
        assert_eq!(r.kernel, [[0.0, 0.0], [0.0, 0.0]]);
        assert_eq!(r.verdict, Verdict::NegativeDefinite);
    }

    #[test]
    fn two_point_quadratic_form() {
        let r = ft_kernel_matrix(&[bv([0.3, 0.1, 0.0]), bv([0.0, -0.4, 0.8])], 1.0).unwrap();
        let j12 = r.kernel[0][1];
        let c = [1.0, -1.0];
        let q: f64 = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| c[i] * c[j] * r.kernel[i][j])
            .sum();
        assert!((q + 2.0 * j12).abs() < 1e-15);
        assert!(q <= 0.0);
    }

    #[test]
    fn kernel_check_errors() {
        let asym = alloc::vec![alloc::vec![0.0, 1.0], alloc::vec![2.0, 0.0]];
        assert!(matches!(
            centered_kernel_check(&asym),
            Err(Error::AsymmetricInput { .. })
        ));
        let diag = alloc::vec![alloc::vec![1.0, 1.0], alloc::vec![1.0, 0.0]];
        assert!(matches!(
            centered_kernel_check(&diag),
            Err(Error::NonZeroDiagonal { .. })
        ));
    }

    #[test]
    fn non_euclidean_kernel_is_violated() {
        // d(0,1) = d(1,2) = 1, d(0,2) = 9: squared distances of collinear points would need 4.
        let k = alloc::vec![
            alloc::vec![0.0, 1.0, 9.0],
            alloc::vec![1.0, 0.0, 1.0],
            alloc::vec![9.0, 1.0, 0.0]
        ];
        let r = centered_kernel_check(&k).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.max_centered_eigenvalue > 0.0);
        assert_eq!(mds_embed(&r), Err(Error::NotEmbeddable));
    }

    #[test]
    fn embed_orthogonal_pure_states() {
        let a = PsdMatrix::diag(&[1.0, 0.0]).unwrap();
        let b = PsdMatrix::diag(&[0.0, 1.0]).unwrap();
        let j = qjsd(&a, &b).unwrap().value;
        let r = centered_kernel_check(&[alloc::vec![0.0, j], alloc::vec![j, 0.0]]).unwrap();
        let e = mds_embed(&r).unwrap();
        assert_eq!(e.dimension(), 1);
        let d = (e.coordinates[0][0] - e.coordinates[1][0]).abs();
        assert!((d - qjsd_distance(&a, &b).unwrap()).abs() < 1e-15);
        assert!((d - libm::sqrt(core::f64::consts::LN_2)).abs() < 1e-15);
    }

    #[test]
    fn embed_identical_points() {
        let k = alloc::vec![alloc::vec![0.0; 3]; 3];
        let e = mds_embed(&centered_kernel_check(&k).unwrap()).unwrap();
        assert!(e.coordinates.iter().flatten().all(|&x| x == 0.0));
        assert_eq!(e.residual, 0.0);
    }

    #[test]
    fn cls_kernel_examples() {
        let r = bv([0.2, 0.4, -0.1]);
        let min = cls_pd_kernel_check(&[r], 1.0).unwrap();
        let s2 = 4.0 * (0.04 + 0.16 + 0.01) / 36.0;
        assert!((min - 1.0 / (1.0 - s2)).abs() < 1e-15);
        let origin = BlochVector::origin();
        let g = cls_pd_kernel_check(&[origin; 4], 0.5).unwrap();
        assert!(g.abs() < 1e-15);
    }

    #[test]
    fn counterexample_fixture() {
        let c = briet_harremoes_counterexample().unwrap();
        assert_eq!(c.matrix, [[1.0, 0.25], [0.25, 0.0]]);
        assert!((c.eigenvalues.0 - 1.0590169943749475).abs() < 1e-12);
        assert!((c.eigenvalues.1 + 0.05901699437494745).abs() < 1e-12);
    }
}
