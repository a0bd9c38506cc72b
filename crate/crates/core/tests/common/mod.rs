#![allow(dead_code)]

use proptest::prelude::*;
use qjsd_core::spectral::{DensityMatrix, PsdMatrix};
use qjsd_core::{CMatrix, Complex64};

/// `dim × rank` complex matrix with entries in the unit square.
pub fn factor(dim: usize, rank: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * rank).prop_map(move |v| {
        CMatrix::from_fn(dim, rank, |r, c| {
            Complex64::new(v[2 * (r * rank + c)], v[2 * (r * rank + c) + 1])
        })
    })
}

pub fn gram(g: &CMatrix) -> PsdMatrix {
    PsdMatrix::from_matrix(g * &g.adjoint()).unwrap()
}

/// PSD matrix of the given dimension and any rank.
pub fn psd(dim: usize) -> impl Strategy<Value = PsdMatrix> {
    (1..=dim).prop_flat_map(move |r| factor(dim, r)).prop_map(|g| gram(&g))
}

/// Full-rank matrix bounded away from singular.
pub fn pd(dim: usize) -> impl Strategy<Value = PsdMatrix> {
    factor(dim, dim).prop_map(move |g| {
        let m = &(&g * &g.adjoint()) + &CMatrix::identity(dim).scale(0.05);
        PsdMatrix::from_matrix(m).unwrap()
    })
}

pub fn density(dim: usize) -> impl Strategy<Value = DensityMatrix> {
    psd(dim).prop_filter_map("nonzero trace", |p| DensityMatrix::normalized(&p).ok())
}

/// Product of two Householder reflections.
pub fn unitary(dim: usize) -> impl Strategy<Value = CMatrix> {
    (factor(dim, 1), factor(dim, 1)).prop_filter_map("nonzero reflector", move |(v, w)| {
        let h = |v: &CMatrix| -> Option<CMatrix> {
            let n2 = v.frobenius_norm().powi(2);
            (n2 > 1e-6).then(|| &CMatrix::identity(dim) - &(v * &v.adjoint()).scale(2.0 / n2))
        };
        Some(&h(&v)? * &h(&w)?)
    })
}

pub fn eta(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Scalar Jensen-Shannon divergence of nonnegative weight vectors.
pub fn scalar_jsd(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(&a, &b)| 0.5 * eta(a) + 0.5 * eta(b) - eta(0.5 * (a + b)))
        .sum()
}
