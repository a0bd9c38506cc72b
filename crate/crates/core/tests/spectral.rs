mod common;

use common::{psd, unitary};
use proptest::prelude::*;
use qjsd_core::spectral::{eigen_decompose, matrix_fn, trace_fn, HermitianMatrix, PsdMatrix};
use qjsd_core::CMatrix;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_reconstructs(a in (1usize..=6).prop_flat_map(psd)) {
        let dec = eigen_decompose(a.hermitian()).unwrap();
        let scale = a.matrix().max_abs().max(1.0);
        prop_assert!(dec.reconstruct().max_abs_diff(a.matrix()) <= 1e-12 * scale);
        let u = &dec.eigenvectors;
        prop_assert!((&u.adjoint() * u).max_abs_diff(&CMatrix::identity(a.dim())) <= 1e-12);
        prop_assert!(dec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn spectrum_is_unitarily_invariant((a, u) in (1usize..=5).prop_flat_map(|n| (psd(n), unitary(n)))) {
        let b = a.conjugate_by(&u).unwrap();
        let scale = a.eigenvalues().last().unwrap().max(1.0);
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            prop_assert!((x - y).abs() <= 1e-12 * scale, "{x} vs {y}");
        }
    }

    #[test]
    fn identity_function_gives_trace(a in (1usize..=6).prop_flat_map(psd)) {
        let t = trace_fn(&a, |x| x).unwrap();
        prop_assert!((t - a.matrix().trace().re).abs() <= 1e-12 * t.max(1.0));
    }

    #[test]
    fn square_of_sqrt_is_identity(a in (1usize..=5).prop_flat_map(psd)) {
        let r = matrix_fn(&a, f64::sqrt).unwrap();
        let back = r.matrix() * r.matrix();
        let scale = a.matrix().max_abs().max(1.0);
        prop_assert!(back.max_abs_diff(a.matrix()) <= 1e-10 * scale);
    }

    #[test]
    fn negative_eigenvalue_is_rejected(a in (2usize..=4).prop_flat_map(psd)) {
        let shifted = &(a.matrix().clone()) - &CMatrix::identity(a.dim()).scale(a.eigenvalues()[a.dim() - 1] + 1.0);
        let h = HermitianMatrix::new(shifted).unwrap();
        prop_assert!(PsdMatrix::new(h).is_err());
    }
}
