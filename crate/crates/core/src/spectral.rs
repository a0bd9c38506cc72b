//! Hermitian spectral calculus.
//!
//! Every matrix function in this crate goes through [`eigen_decompose`], a
//! cyclic complex Jacobi solver. Jacobi is slower than tridiagonal QR but it
//! is deterministic, needs no external LAPACK, and delivers eigenvalues of
//! positive definite matrices to high relative accuracy, which matters for
//! `log` near the boundary of the cone.
//!
//! Conventions:
//! - eigenvalues are sorted ascending by a stable sort;
//! - [`PsdMatrix`] clamps eigenvalues in `(-1e-10, 0)` to zero and rejects
//!   anything more negative;
//! - `η(0) = 0`.

use alloc::vec::Vec;
use core::ops::Deref;

use num_complex::Complex64;

use crate::matrix::CMatrix;
use crate::{Error, Result};

/// Hermiticity tolerance used by [`HermitianMatrix::new`], relative to
/// `max(1, max |m_jk|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues down to `-PSD_CLAMP` are clamped to zero.
pub const PSD_CLAMP: f64 = 1e-10;
/// Allowed deviation of a density matrix trace from one.
pub const TRACE_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// `η(x) = x ln x` with `η(0) = 0`. Negative input yields NaN.
#[inline]
pub fn eta(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * libm::log(x)
    }
}

/// Square complex Hermitian matrix.
///
/// Construction checks Hermiticity within tolerance and then replaces the
/// entries by `(M + M†)/2`, so the stored matrix is exactly Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates with [`HERMITIAN_TOL`].
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerance(m, HERMITIAN_TOL)
    }

    /// Validates with a caller-chosen relative tolerance.
    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::InvalidShape("Hermitian matrix must be square with dim >= 1"));
        }
        let n = m.rows();
        for r in 0..n {
            for c in 0..n {
                let z = m[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        let scale = m.max_abs().max(1.0);
        for r in 0..n {
            for c in r..n {
                let deviation = (m[(r, c)] - m[(c, r)].conj()).norm();
                if deviation > tol * scale {
                    return Err(Error::NotHermitian {
                        row: r,
                        col: c,
                        deviation,
                    });
                }
            }
        }
        Ok(Self::symmetrize(m))
    }

    fn symmetrize(mut m: CMatrix) -> Self {
        let n = m.rows();
        for r in 0..n {
            m[(r, r)].im = 0.0;
            for c in r + 1..n {
                let avg = (m[(r, c)] + m[(c, r)].conj()) * 0.5;
                m[(r, c)] = avg;
                m[(c, r)] = avg.conj();
            }
        }
        Self(m)
    }

    /// Real symmetric matrix from rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(CMatrix::from_real_rows(rows)?)
    }

    /// Real diagonal matrix.
    pub fn diag(d: &[f64]) -> Result<Self> {
        Self::new(CMatrix::from_diag(d))
    }

    /// Identity of dimension `n`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(CMatrix::identity(n))
    }

    /// Dimension `n` of the `n × n` matrix.
    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// Underlying dense matrix.
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    /// Consumes the wrapper.
    pub fn into_inner(self) -> CMatrix {
        self.0
    }

    /// `λ·self + μ·other`; both operands exactly Hermitian so the result is too.
    pub fn combine(&self, lambda: f64, other: &Self, mu: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(Self(&self.0.scale(lambda) + &other.0.scale(mu)))
    }

    /// `U M U†` for a unitary (or any square) `U`, re-symmetrized.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        if u.cols() != self.dim() {
            return Err(Error::DimensionMismatch(u.cols(), self.dim()));
        }
        let out = &(u * &self.0) * &u.adjoint();
        Ok(Self::symmetrize(out))
    }
}

/// `M = U Λ U†` with eigenvalues ascending and eigenvectors in the columns of `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    /// Eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    /// `U f(Λ) U†`.
    pub fn apply(&self, mut f: impl FnMut(f64) -> f64) -> CMatrix {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        CMatrix::from_fn(n, n, |r, c| {
            (0..n).map(|k| u[(r, k)] * u[(c, k)].conj() * fl[k]).sum::<Complex64>()
        })
    }

    /// `U Λ U†`.
    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|x| x)
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Largest eigenvalue.
    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary and
/// then applies the real symmetric Jacobi rotation. An off-diagonal entry is
/// skipped once `|a_pq| <= ε·sqrt(|a_pp a_qq|)`; the solver stops after a
/// sweep with no rotation.
pub fn eigen_decompose(m: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = m.dim();
    let mut a = m.matrix().clone();
    let mut v = CMatrix::identity(n);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let abs = apq.norm();
                if abs == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if abs <= f64::EPSILON * libm::sqrt(app.abs() * aqq.abs()) {
                    continue;
                }
                rotated = true;

                let phase = apq / abs;
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::hypot(1.0, tau))
                } else {
                    -1.0 / (-tau + libm::hypot(1.0, tau))
                };
                let c = 1.0 / libm::hypot(1.0, t);
                let s = t * c;
                let sp = phase * s;
                let cp = phase * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * sp.conj();
                    a[(k, q)] = akp * s + akq * cp.conj();
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * sp;
                    a[(q, k)] = apk * s + aqk * cp;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * sp.conj();
                    v[(k, q)] = vkp * s + vkq * cp.conj();
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(MAX_SWEEPS));
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues and eigenvectors of a real symmetric matrix. Eigenvectors are
/// returned as rows of the second component (`vectors[k]` pairs with
/// `values[k]`).
pub fn symmetric_eigen(rows: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let h = HermitianMatrix::from_real_rows(rows)?;
    let dec = eigen_decompose(&h)?;
    let n = rows.len();
    // A real symmetric input keeps every rotation real, so the imaginary parts are zero.
    let vectors = (0..n)
        .map(|k| (0..n).map(|r| dec.eigenvectors[(r, k)].re).collect())
        .collect();
    Ok((dec.eigenvalues, vectors))
}

/// `true` iff the smallest eigenvalue is `>= -tol`.
pub fn is_psd(m: &HermitianMatrix, tol: f64) -> Result<bool> {
    Ok(eigen_decompose(m)?.min_eigenvalue() >= -tol)
}

/// Positive semidefinite matrix together with its (clamped) spectrum.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdMatrix {
    base: HermitianMatrix,
    spectrum: SpectralDecomposition,
    eigenvalue_floor: f64,
}

impl PsdMatrix {
    /// Validates with the default clamping threshold [`PSD_CLAMP`].
    pub fn new(base: HermitianMatrix) -> Result<Self> {
        Self::with_floor(base, PSD_CLAMP)
    }

    /// Validates, clamping eigenvalues in `(-floor, 0)` to zero.
    pub fn with_floor(base: HermitianMatrix, floor: f64) -> Result<Self> {
        let mut spectrum = eigen_decompose(&base)?;
        let min = spectrum.min_eigenvalue();
        if min < -floor {
            return Err(Error::NotPsd(min));
        }
        for l in &mut spectrum.eigenvalues {
            if *l < 0.0 {
                *l = 0.0;
            }
        }
        Ok(Self {
            base,
            spectrum,
            eigenvalue_floor: floor,
        })
    }

    /// Diagonal PSD matrix.
    pub fn diag(d: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::diag(d)?)
    }

    /// Identity of dimension `n`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::new(HermitianMatrix::identity(n)?)
    }

    /// Validates an arbitrary complex matrix.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Underlying Hermitian matrix.
    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    /// Underlying dense matrix.
    pub fn matrix(&self) -> &CMatrix {
        self.base.matrix()
    }

    /// Clamped spectral decomposition.
    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    /// Clamped eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    /// Clamping threshold used at validation.
    pub fn eigenvalue_floor(&self) -> f64 {
        self.eigenvalue_floor
    }

    /// Real trace of the stored matrix.
    pub fn trace(&self) -> f64 {
        self.matrix().trace().re
    }

    /// `(A + B)/2`.
    pub fn midpoint(&self, other: &Self) -> Result<Self> {
        Self::new(self.base.combine(0.5, &other.base, 0.5)?)
    }

    /// `λA + μB` for `λ, μ >= 0`.
    pub fn convex_combination(&self, lambda: f64, other: &Self, mu: f64) -> Result<Self> {
        if lambda < 0.0 || mu < 0.0 {
            return Err(Error::InvalidParameter("cone combination needs nonnegative weights"));
        }
        Self::new(self.base.combine(lambda, &other.base, mu)?)
    }

    /// `λA` for `λ >= 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        self.convex_combination(lambda, self, 0.0)
    }

    /// `A + tI` for `t >= 0`.
    pub fn shifted(&self, t: f64) -> Result<Self> {
        let id = HermitianMatrix::identity(self.dim())?;
        if t < 0.0 {
            return Err(Error::InvalidParameter("shift must be nonnegative"));
        }
        Self::new(self.base.combine(1.0, &id, t)?)
    }

    /// `U A U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        Self::new(self.base.conjugate_by(u)?)
    }
}

/// Positive semidefinite matrix with unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(PsdMatrix);

impl DensityMatrix {
    /// Validates the unit-trace invariant within [`TRACE_TOL`].
    pub fn new(base: PsdMatrix) -> Result<Self> {
        let tr = base.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(tr));
        }
        Ok(Self(base))
    }

    /// Validates an arbitrary complex matrix.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(PsdMatrix::from_matrix(m)?)
    }

    /// Divides a nonzero PSD matrix by its trace.
    pub fn normalized(m: &PsdMatrix) -> Result<Self> {
        let tr = m.trace();
        if tr <= 0.0 {
            return Err(Error::NotNormalized(tr));
        }
        Self::new(m.scaled(1.0 / tr)?)
    }

    /// Diagonal density matrix.
    pub fn diag(p: &[f64]) -> Result<Self> {
        Self::new(PsdMatrix::diag(p)?)
    }

    /// `I/n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let d = alloc::vec![1.0 / n as f64; n];
        Self::diag(&d)
    }

    /// Forgets the trace invariant.
    pub fn into_psd(self) -> PsdMatrix {
        self.0
    }

    /// `λρ + (1-λ)σ` for `λ ∈ [0, 1]`.
    pub fn mix(&self, lambda: f64, other: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter("mixing weight must lie in [0, 1]"));
        }
        Self::new(self.0.convex_combination(lambda, &other.0, 1.0 - lambda)?)
    }
}

impl Deref for DensityMatrix {
    type Target = PsdMatrix;

    fn deref(&self) -> &PsdMatrix {
        &self.0
    }
}

impl AsRef<PsdMatrix> for DensityMatrix {
    fn as_ref(&self) -> &PsdMatrix {
        &self.0
    }
}

/// `Σ_j f(λ_j)` over the clamped spectrum.
///
/// Fails with [`Error::DomainError`] if `f` is non-finite at some eigenvalue.
pub fn trace_fn(m: &PsdMatrix, f: impl Fn(f64) -> f64) -> Result<f64> {
    trace_over(m.eigenvalues(), f)
}

pub(crate) fn trace_over(eigenvalues: &[f64], f: impl Fn(f64) -> f64) -> Result<f64> {
    let mut sum = 0.0;
    for &l in eigenvalues {
        let v = f(l);
        if !v.is_finite() {
            return Err(Error::DomainError(l));
        }
        sum += v;
    }
    Ok(sum)
}

/// `f(A) = U f(Λ) U†`.
pub fn matrix_fn(m: &PsdMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    let mut bad = None;
    let out = m.spectrum().apply(|l| {
        let v = f(l);
        if !v.is_finite() && bad.is_none() {
            bad = Some(l);
        }
        v
    });
    if let Some(l) = bad {
        return Err(Error::DomainError(l));
    }
    HermitianMatrix::with_tolerance(out, 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    fn frob(m: &CMatrix) -> f64 {
        m.frobenius_norm()
    }

    fn herm(rows: &[&[(f64, f64)]]) -> HermitianMatrix {
        let n = rows.len();
        HermitianMatrix::new(CMatrix::from_fn(n, n, |r, c| {
            Complex64::new(rows[r][c].0, rows[r][c].1)
        }))
        .unwrap()
    }

    #[test]
    fn identity_spectrum() {
        let d = eigen_decompose(&HermitianMatrix::identity(2).unwrap()).unwrap();
        assert_eq!(d.eigenvalues, [1.0, 1.0]);
        assert!(d.eigenvectors.max_abs_diff(&CMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn diagonal_spectrum_sorted() {
        let d = eigen_decompose(&HermitianMatrix::diag(&[1.0, 0.0]).unwrap()).unwrap();
        assert_eq!(d.eigenvalues, [0.0, 1.0]);
    }

    #[test]
    fn indefinite_two_by_two() {
        // trace 1, det -1/16: λ = (1 ± sqrt(5)/2)/2
        let m = HermitianMatrix::from_real_rows(&[alloc::vec![1.0, 0.25], alloc::vec![0.25, 0.0]]).unwrap();
        let d = eigen_decompose(&m).unwrap();
        assert!((d.eigenvalues[0] - (-0.0590169943749474)).abs() < 1e-12);
        assert!((d.eigenvalues[1] - 1.0590169943749474).abs() < 1e-12);
        assert!(!is_psd(&m, 1e-10).unwrap());
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let m = herm(&[
            &[(2.0, 0.0), (0.3, 0.7), (-1.0, 0.2)],
            &[(0.3, -0.7), (1.0, 0.0), (0.0, -0.4)],
            &[(-1.0, -0.2), (0.0, 0.4), (0.5, 0.0)],
        ]);
        let d = eigen_decompose(&m).unwrap();
        assert!(frob(&(&d.reconstruct() - m.matrix())) <= 1e-13 * frob(m.matrix()).max(1.0));
        let utu = &d.eigenvectors.adjoint() * &d.eigenvectors;
        assert!(utu.max_abs_diff(&CMatrix::identity(3)) < 1e-13);
        assert!(d.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn pauli_y_spectrum() {
        let m = herm(&[&[(0.0, 0.0), (0.0, -1.0)], &[(0.0, 1.0), (0.0, 0.0)]]);
        let d = eigen_decompose(&m).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_fn(2, 2, |r, c| Complex64::new(if r < c { 1.0 } else { 0.0 }, 0.0));
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn rejects_nan() {
        let m = CMatrix::from_diag(&[f64::NAN, 1.0]);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn psd_clamps_tiny_negative_and_rejects_large() {
        let p = PsdMatrix::diag(&[-5e-11, 1.0]).unwrap();
        assert_eq!(p.eigenvalues(), &[0.0, 1.0]);
        assert!(matches!(PsdMatrix::diag(&[-1e-9, 1.0]), Err(Error::NotPsd(_))));
    }

    #[test]
    fn density_checks_trace() {
        assert!(DensityMatrix::diag(&[0.5, 0.5]).is_ok());
        assert!(matches!(DensityMatrix::diag(&[0.5, 0.6]), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn trace_fn_examples() {
        let half = PsdMatrix::diag(&[0.5, 0.5]).unwrap();
        assert!((trace_fn(&half, eta).unwrap() + LN_2).abs() < 1e-15);
        let pure = PsdMatrix::diag(&[1.0, 0.0]).unwrap();
        assert_eq!(trace_fn(&pure, eta).unwrap(), 0.0);
        let q = PsdMatrix::diag(&[0.75, 0.25]).unwrap();
        let expected = 0.75 * libm::log(0.75) + 0.25 * libm::log(0.25);
        assert!((trace_fn(&q, eta).unwrap() - expected).abs() < 1e-15);
        assert!((trace_fn(&q, eta).unwrap() + 0.5623351446188083).abs() < 1e-12);
    }

    #[test]
    fn trace_fn_domain_error() {
        let pure = PsdMatrix::diag(&[1.0, 0.0]).unwrap();
        assert_eq!(trace_fn(&pure, libm::log), Err(Error::DomainError(0.0)));
        assert!(matrix_fn(&pure, libm::log).is_err());
    }

    #[test]
    fn matrix_fn_examples() {
        let id = PsdMatrix::identity(2).unwrap();
        assert_eq!(matrix_fn(&id, |x| x * x).unwrap().matrix(), &CMatrix::identity(2));
        let d = PsdMatrix::diag(&[4.0, 9.0]).unwrap();
        assert!(
            matrix_fn(&d, libm::sqrt)
                .unwrap()
                .matrix()
                .max_abs_diff(&CMatrix::from_diag(&[2.0, 3.0]))
                < 1e-15
        );
        let half = PsdMatrix::diag(&[0.5, 0.5]).unwrap();
        let l = matrix_fn(&half, libm::log).unwrap();
        assert!(l.matrix().max_abs_diff(&CMatrix::from_diag(&[-LN_2, -LN_2])) < 1e-15);
    }

    #[test]
    fn psd_boundary() {
        assert!(is_psd(&HermitianMatrix::identity(3).unwrap(), 0.0).unwrap());
        assert!(is_psd(&HermitianMatrix::diag(&[0.0, 1.0]).unwrap(), 1e-10).unwrap());
    }

    #[test]
    fn symmetric_eigen_pairs() {
        let rows = alloc::vec![alloc::vec![2.0, 1.0], alloc::vec![1.0, 2.0]];
        let (vals, vecs) = symmetric_eigen(&rows).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] - 3.0).abs() < 1e-15);
        let v = &vecs[1];
        assert!((v[0].abs() - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((v[0] - v[1]).abs() < 1e-15);
    }
}
