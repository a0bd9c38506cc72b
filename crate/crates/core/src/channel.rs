//! Quantum channels in Kraus form and partial traces.

use crate::matrix::CMatrix;
use crate::spectral::PsdMatrix;
use crate::{Error, Result};

/// `Σ K_i ρ K_i†`. Each `K_i` maps the input space (columns) to the output
/// space (rows).
pub fn apply_kraus(rho: &PsdMatrix, kraus: &[CMatrix]) -> Result<PsdMatrix> {
    let first = kraus
        .first()
        .ok_or(Error::InvalidShape("channel needs at least one Kraus operator"))?;
    let (out, inp) = (first.rows(), first.cols());
    if inp != rho.dim() {
        return Err(Error::DimensionMismatch(inp, rho.dim()));
    }
    let mut acc = CMatrix::zeros(out, out);
    for k in kraus {
        if (k.rows(), k.cols()) != (out, inp) {
            return Err(Error::InvalidShape("Kraus operators must share one shape"));
        }
        acc = &acc + &(&(k * rho.matrix()) * &k.adjoint());
    }
    PsdMatrix::from_matrix(acc)
}

/// `max |Σ K_i† K_i − I|`, zero for a trace-preserving family.
pub fn trace_preservation_defect(kraus: &[CMatrix]) -> f64 {
    let Some(first) = kraus.first() else {
        return f64::INFINITY;
    };
    let mut acc = CMatrix::zeros(first.cols(), first.cols());
    for k in kraus {
        acc = &acc + &(&k.adjoint() * k);
    }
    acc.max_abs_diff(&CMatrix::identity(first.cols()))
}

/// Traces out the second factor of `C^{keep} ⊗ C^{traced}`.
pub fn partial_trace(m: &PsdMatrix, keep: usize, traced: usize) -> Result<PsdMatrix> {
    if keep * traced != m.dim() || keep == 0 {
        return Err(Error::InvalidShape("keep × traced must equal the dimension"));
    }
    let a = m.matrix();
    let out = CMatrix::from_fn(keep, keep, |i, j| {
        (0..traced).map(|k| a[(i * traced + k, j * traced + k)]).sum()
    });
    PsdMatrix::from_matrix(out)
}
