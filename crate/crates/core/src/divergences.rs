//! Divergence functionals on the PSD cone.
//!
//! | Function | Value |
//! |----------|-------|
//! | [`relative_entropy`] | `S(ρ,σ) = tr ρ(ln ρ − ln σ)` |
//! | [`qjsd`] | `J(A,B) = ½ tr η(A) + ½ tr η(B) − tr η((A+B)/2)` |
//! | [`qjsd_distance`] | `√J(A,B)` |
//! | [`s_divergence_sq`] | `d_S²(A,B) = −½ tr ln A − ½ tr ln B + tr ln((A+B)/2)` |
//! | [`jensen_f_divergence`] | `J_f(A,B) = ½(tr f(A) + tr f(B)) − tr f((A+B)/2)` |
//!
//! Values are in nats. Results within `[-1e-12, 0)` are clamped to zero;
//! anything more negative is reported as [`Error::NumericalInconsistency`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::spectral::{eta, trace_over, DensityMatrix, PsdMatrix};
use crate::{Error, Result};

/// Eigenvalues at or below this are treated as zero for support and
/// positive-definiteness decisions.
pub const SUPPORT_CUTOFF: f64 = 1e-12;
/// Cancellation slack below zero that is clamped away.
pub const NEGATIVE_SLACK: f64 = 1e-12;

/// A divergence value in nats. `finite == false` carries `+∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DivergenceValue {
    /// Nonnegative value, `f64::INFINITY` when not finite.
    pub value: f64,
    /// False for the support-violation outcome of the relative entropy.
    pub finite: bool,
}

impl DivergenceValue {
    /// Clamps `[-1e-12, 0)` to zero and rejects larger negatives.
    pub fn from_raw(raw: f64) -> Result<Self> {
        if raw.is_nan() {
            return Err(Error::NumericalInconsistency(raw));
        }
        if raw < -NEGATIVE_SLACK {
            return Err(Error::NumericalInconsistency(raw));
        }
        Ok(Self {
            value: raw.max(0.0),
            finite: true,
        })
    }

    /// The `+∞` outcome.
    pub fn infinite() -> Self {
        Self {
            value: f64::INFINITY,
            finite: false,
        }
    }

    /// Square root of the value.
    pub fn sqrt(self) -> f64 {
        libm::sqrt(self.value)
    }
}

/// Operator convex function `a + b·x + c·x² + Σ w_i t_i x²/(t_i + x)`,
/// the discrete-measure form of the integral representation on `[0, ∞)`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OpConvexSpec {
    /// Affine constant.
    pub a: f64,
    /// Affine slope.
    pub b: f64,
    /// Quadratic weight, `c >= 0`.
    pub c: f64,
    /// Measure atoms `(t, w)` with `t > 0`, `w > 0`.
    pub atoms: Vec<(f64, f64)>,
}

impl OpConvexSpec {
    /// Validates the parameter ranges and spot-checks convexity on a grid.
    pub fn new(a: f64, b: f64, c: f64, atoms: Vec<(f64, f64)>) -> Result<Self> {
        if c.is_nan() || c < 0.0 || !a.is_finite() || !b.is_finite() || !c.is_finite() {
            return Err(Error::InvalidParameter("need finite a, b and c >= 0"));
        }
        if atoms
            .iter()
            .any(|&(t, w)| !(t > 0.0 && t.is_finite() && w > 0.0 && w.is_finite()))
        {
            return Err(Error::InvalidParameter("measure atoms need t > 0 and w > 0"));
        }
        let spec = Self { a, b, c, atoms };
        spec.check_convexity()?;
        Ok(spec)
    }

    /// `f(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        let atoms: f64 = self.atoms.iter().map(|&(t, w)| w * t * x * x / (t + x)).sum();
        self.a + self.b * x + self.c * x * x + atoms
    }

    /// Second differences on a grid over `[0, 10]` must be `>= -1e-9`.
    pub fn check_convexity(&self) -> Result<()> {
        const STEPS: usize = 200;
        let h = 10.0 / STEPS as f64;
        for k in 1..STEPS {
            let x = k as f64 * h;
            let d2 = self.eval(x - h) - 2.0 * self.eval(x) + self.eval(x + h);
            if d2 < -1e-9 {
                return Err(Error::NotConvex {
                    x,
                    second_difference: d2,
                });
            }
        }
        Ok(())
    }
}

/// Named scalar functions for Jensen f-divergences.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum JensenFn {
    /// `η(x) = x ln x`; gives the QJSD.
    Eta,
    /// `−ln x`, positive definite inputs only; gives `d_S²`.
    NegLog,
    /// `x²`; gives `¼‖A − B‖²_HS`.
    Square,
    /// `f_t(x) = t³/(t + x)` for `t > 0`.
    Ft(f64),
    /// Synthetic operator convex function.
    OpConvex(OpConvexSpec),
}

impl JensenFn {
    /// `f(x)`. Returns a non-finite value outside the domain.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            JensenFn::Eta => eta(x),
            JensenFn::NegLog => -libm::log(x),
            JensenFn::Square => x * x,
            JensenFn::Ft(t) => t * t * t / (t + x),
            JensenFn::OpConvex(spec) => spec.eval(x),
        }
    }

    /// Whether the function needs strictly positive eigenvalues.
    pub fn requires_definite(&self) -> bool {
        matches!(self, JensenFn::NegLog)
    }
}

impl fmt::Display for JensenFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JensenFn::Eta => f.write_str("eta"),
            JensenFn::NegLog => f.write_str("neglog"),
            JensenFn::Square => f.write_str("square"),
            JensenFn::Ft(t) => write!(f, "ft:{t}"),
            JensenFn::OpConvex(_) => f.write_str("opconvex"),
        }
    }
}

/// Parse error for [`JensenFn`] names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseJensenFnError(pub String);

impl fmt::Display for ParseJensenFnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown function `{}` (expected eta, neglog, square or ft:T with T > 0)",
            self.0
        )
    }
}

impl core::error::Error for ParseJensenFnError {}

impl FromStr for JensenFn {
    type Err = ParseJensenFnError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        match s {
            "eta" => Ok(JensenFn::Eta),
            "neglog" => Ok(JensenFn::NegLog),
            "square" => Ok(JensenFn::Square),
            _ => {
                let t = s
                    .strip_prefix("ft:")
                    .and_then(|t| t.parse::<f64>().ok())
                    .filter(|t| *t > 0.0 && t.is_finite())
                    .ok_or_else(|| ParseJensenFnError(s.to_string()))?;
                Ok(JensenFn::Ft(t))
            }
        }
    }
}

fn check_dims(a: &PsdMatrix, b: &PsdMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(())
}

/// Umegaki relative entropy `tr ρ(ln ρ − ln σ)`.
///
/// When some eigenvector of `σ` with eigenvalue below [`SUPPORT_CUTOFF`]
/// carries weight `⟨v|ρ|v⟩` above the cutoff, the support condition fails and
/// the result is [`DivergenceValue::infinite`].
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<DivergenceValue> {
    check_dims(rho, sigma)?;
    let n = rho.dim();
    let neg_entropy = trace_over(rho.eigenvalues(), |l| if l < SUPPORT_CUTOFF { 0.0 } else { eta(l) })?;

    let dec = sigma.spectrum();
    let r = rho.matrix();
    let mut cross = 0.0;
    for (k, &mu) in dec.eigenvalues.iter().enumerate() {
        // ⟨v_k|ρ|v_k⟩
        let mut weight = 0.0;
        for i in 0..n {
            let vi = dec.eigenvectors[(i, k)].conj();
            for j in 0..n {
                weight += (vi * r[(i, j)] * dec.eigenvectors[(j, k)]).re;
            }
        }
        if mu < SUPPORT_CUTOFF {
            if weight > SUPPORT_CUTOFF {
                return Ok(DivergenceValue::infinite());
            }
            continue;
        }
        cross += weight * libm::log(mu);
    }
    DivergenceValue::from_raw(neg_entropy - cross)
}

/// Quantum Jensen-Shannon divergence on the PSD cone.
pub fn qjsd(a: &PsdMatrix, b: &PsdMatrix) -> Result<DivergenceValue> {
    jensen_divergence_with(eta, a, b)
}

/// `√J(A, B)`, the metric on the PSD cone.
pub fn qjsd_distance(a: &PsdMatrix, b: &PsdMatrix) -> Result<f64> {
    Ok(qjsd(a, b)?.sqrt())
}

/// S-divergence `d_S²` on the positive definite cone.
pub fn s_divergence_sq(a: &PsdMatrix, b: &PsdMatrix) -> Result<DivergenceValue> {
    check_dims(a, b)?;
    for m in [a, b] {
        let min = m.eigenvalues()[0];
        if min <= SUPPORT_CUTOFF {
            return Err(Error::SingularInput(min));
        }
    }
    let mid = a.midpoint(b)?;
    let la = trace_over(a.eigenvalues(), libm::log)?;
    let lb = trace_over(b.eigenvalues(), libm::log)?;
    let lm = trace_over(mid.eigenvalues(), libm::log)?;
    DivergenceValue::from_raw(lm - 0.5 * (la + lb))
}

/// Jensen divergence for one of the named functions.
pub fn jensen_f_divergence(f: &JensenFn, a: &PsdMatrix, b: &PsdMatrix) -> Result<DivergenceValue> {
    if f.requires_definite() {
        for m in [a, b] {
            let min = m.eigenvalues()[0];
            if min <= SUPPORT_CUTOFF {
                return Err(Error::DomainError(min));
            }
        }
    }
    jensen_divergence_with(|x| f.eval(x), a, b)
}

/// Jensen divergence `½(tr f(A) + tr f(B)) − tr f((A+B)/2)` for any scalar `f`.
///
/// Only meaningful (nonnegative) for convex `f`; the negativity check still
/// applies, so a concave `f` reports [`Error::NumericalInconsistency`].
pub fn jensen_divergence_with(f: impl Fn(f64) -> f64, a: &PsdMatrix, b: &PsdMatrix) -> Result<DivergenceValue> {
    check_dims(a, b)?;
    let mid = a.midpoint(b)?;
    let raw = jensen_raw(&f, a.eigenvalues(), b.eigenvalues(), mid.eigenvalues())?;
    DivergenceValue::from_raw(raw)
}

/// Jensen combination of three spectra without sign checks.
pub fn jensen_raw(f: impl Fn(f64) -> f64, a: &[f64], b: &[f64], mid: &[f64]) -> Result<f64> {
    let ta = trace_over(a, &f)?;
    let tb = trace_over(b, &f)?;
    let tm = trace_over(mid, &f)?;
    Ok(0.5 * (ta + tb) - tm)
}

/// The spectra of `A`, `B` and `(A+B)/2`, which determine both
/// `J(A+tI, B+tI)` and `d_S²(A+tI, B+tI)` for every shift `t`.
///
/// Shifting commutes with the eigendecomposition, so each evaluation costs
/// O(n) after the three decompositions done here.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftFamily {
    a: Vec<f64>,
    b: Vec<f64>,
    mid: Vec<f64>,
}

impl ShiftFamily {
    /// Decomposes `(A+B)/2` and captures the spectra.
    pub fn new(a: &PsdMatrix, b: &PsdMatrix) -> Result<Self> {
        check_dims(a, b)?;
        let mid = a.midpoint(b)?;
        Ok(Self {
            a: a.eigenvalues().to_vec(),
            b: b.eigenvalues().to_vec(),
            mid: mid.eigenvalues().to_vec(),
        })
    }

    /// Smallest eigenvalue across `A` and `B`.
    pub fn min_eigenvalue(&self) -> f64 {
        self.a[0].min(self.b[0])
    }

    /// `J(A+tI, B+tI)` for `t >= 0`.
    ///
    /// For `t > 0` each term uses `φ_t(x) = (x+t)·ln(1 + x/t) − x`, which is
    /// `η(x+t)` minus parts that cancel exactly across the three traces
    /// (`ln t` times the trace, and the trace itself). This keeps the
    /// `O(1/t)` value accurate for large `t`.
    pub fn jensen_at(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::InvalidParameter("shift must be nonnegative"));
        }
        let raw = if t == 0.0 {
            jensen_raw(eta, &self.a, &self.b, &self.mid)?
        } else {
            jensen_raw(|x| (x + t) * libm::log1p(x / t) - x, &self.a, &self.b, &self.mid)?
        };
        Ok(DivergenceValue::from_raw(raw)?.value)
    }

    /// `d_S²(A+tI, B+tI)`.
    ///
    /// Evaluated as `−½Σψ(a/t) − ½Σψ(b/t) + Σψ(m/t)`, where `ψ(u) = ln(1+u) − u`
    /// once `t` dominates every eigenvalue and `ψ(u) = ln(1+u)` before that.
    /// The `ln t` and linear parts cancel exactly across the three traces.
    /// Any `t > 0` is accepted since the spectra are clamped to `[0, ∞)`.
    /// For `t <= 0` it fails with [`Error::SingularInput`] if `A+tI` or
    /// `B+tI` has an eigenvalue at or below 1e-12.
    pub fn s_div_sq_at(&self, t: f64) -> Result<f64> {
        let min = self.min_eigenvalue() + t;
        if t.is_nan() || (t <= 0.0 && min <= SUPPORT_CUTOFF) {
            return Err(Error::SingularInput(min));
        }
        let raw = if t > 0.0 {
            let top = self
                .a
                .last()
                .copied()
                .unwrap_or(0.0)
                .max(self.b.last().copied().unwrap_or(0.0));
            let linear = top <= t;
            let psi = |x: f64| {
                let u = x / t;
                if linear {
                    libm::log1p(u) - u
                } else {
                    libm::log1p(u)
                }
            };
            let ta = trace_over(&self.a, psi)?;
            let tb = trace_over(&self.b, psi)?;
            let tm = trace_over(&self.mid, psi)?;
            tm - 0.5 * (ta + tb)
        } else {
            let ln = |x: f64| libm::log(x + t);
            let ta = trace_over(&self.a, ln)?;
            let tb = trace_over(&self.b, ln)?;
            let tm = trace_over(&self.mid, ln)?;
            tm - 0.5 * (ta + tb)
        };
        Ok(DivergenceValue::from_raw(raw)?.value)
    }
}
