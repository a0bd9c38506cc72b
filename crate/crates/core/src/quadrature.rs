//! Numerical certification of `J(A,B) = ∫₀^∞ d_S²(A+tI, B+tI) dt`.
//!
//! The half-line is split at a cutoff `T`. On `[0, T]` a composite
//! Gauss-Legendre rule runs over panels that halve in width toward `t = 0`,
//! where the integrand has an integrable logarithmic singularity for
//! singular inputs. The remainder `∫_T^∞` equals `J(A+TI, B+TI)` exactly,
//! because `d/dt J(A+tI, B+tI) = −d_S²(A+tI, B+tI)` and the shifted
//! divergence vanishes as `t → ∞`.

use alloc::vec::Vec;

use crate::divergences::ShiftFamily;
use crate::spectral::PsdMatrix;
use crate::{Error, Result};

/// Composite rule parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureConfig {
    /// Cutoff `T` of the finite part.
    pub cutoff: f64,
    /// Number of panels on `[0, T]`.
    pub panels: usize,
    /// Gauss-Legendre nodes per panel.
    pub nodes_per_panel: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            cutoff: 100.0,
            panels: 64,
            nodes_per_panel: 16,
        }
    }
}

impl QuadratureConfig {
    /// Checks `T > 0`, `panels >= 1`, `nodes_per_panel >= 2`.
    pub fn validate(&self) -> Result<()> {
        if !(self.cutoff > 0.0 && self.cutoff.is_finite()) {
            return Err(Error::InvalidParameter("cutoff must be positive"));
        }
        if self.panels == 0 {
            return Err(Error::InvalidParameter("panels must be at least 1"));
        }
        if self.nodes_per_panel < 2 {
            return Err(Error::InvalidParameter("nodes_per_panel must be at least 2"));
        }
        Ok(())
    }
}

/// Closed form against quadrature plus exact tail.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RepresentationReport {
    /// `J(A, B)`.
    pub closed_form: f64,
    /// `∫₀^T d_S²(A+tI, B+tI) dt`.
    pub quadrature_part: f64,
    /// `J(A+TI, B+TI)`.
    pub tail_part: f64,
    /// `|closed_form − quadrature_part − tail_part|`.
    pub abs_error: f64,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// `P_n` from Chebyshev-like initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Neumaier-compensated sum; fixed order, so results are reproducible.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Boundaries `0, T/2^{p-1}, …, T/2, T` of `p` panels on `[0, T]`.
pub fn dyadic_panels(cutoff: f64, panels: usize) -> Vec<f64> {
    let mut b = Vec::with_capacity(panels + 1);
    b.push(0.0);
    for k in (0..panels).rev() {
        b.push(cutoff * libm::pow(0.5, k as f64));
    }
    b
}

/// Boundaries of `p` panels of equal ratio on `[lo, hi]`, `0 < lo < hi`.
pub fn geometric_panels(lo: f64, hi: f64, panels: usize) -> Vec<f64> {
    let ratio = libm::pow(hi / lo, 1.0 / panels as f64);
    let mut b: Vec<f64> = (0..panels).map(|k| lo * libm::pow(ratio, k as f64)).collect();
    b.push(hi);
    b
}

/// Composite Gauss-Legendre rule over consecutive panel boundaries.
///
/// Panel sums are collected first and then added with [`compensated_sum`],
/// so a parallel evaluation of the panels reproduces the same total.
pub fn composite(f: impl Fn(f64) -> Result<f64>, boundaries: &[f64], nodes_per_panel: usize) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(nodes_per_panel);
    let mut panel_sums = Vec::with_capacity(boundaries.len().saturating_sub(1));
    for w in boundaries.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut s = 0.0;
        for (x, wt) in nodes.iter().zip(&weights) {
            s += wt * f(mid + half * x)?;
        }
        panel_sums.push(half * s);
    }
    Ok(compensated_sum(panel_sums))
}

/// `∫₀^∞ f(t) dt` for `f` decaying like `t^{-2}`: dyadic panels on `[0, T]`,
/// and the substitution `t = T/u` on `[T, ∞)` with dyadic panels in `u`.
pub fn integrate_half_line(f: impl Fn(f64) -> Result<f64>, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let t = cfg.cutoff;
    let head = composite(&f, &dyadic_panels(t, cfg.panels), cfg.nodes_per_panel)?;
    let tail = composite(
        |u| Ok(f(t / u)? * t / (u * u)),
        &dyadic_panels(1.0, cfg.panels),
        cfg.nodes_per_panel,
    )?;
    Ok(head + tail)
}

/// `d_S²(A+tI, B+tI)`.
pub fn integrand(a: &PsdMatrix, b: &PsdMatrix, t: f64) -> Result<f64> {
    ShiftFamily::new(a, b)?.s_div_sq_at(t)
}

/// Compares `J(A,B)` with `∫₀^T d_S²(A+tI, B+tI) dt + J(A+TI, B+TI)`.
pub fn verify_representation(a: &PsdMatrix, b: &PsdMatrix, cfg: &QuadratureConfig) -> Result<RepresentationReport> {
    cfg.validate()?;
    let family = ShiftFamily::new(a, b)?;
    verify_family(&family, cfg)
}

/// [`verify_representation`] on precomputed spectra.
pub fn verify_family(family: &ShiftFamily, cfg: &QuadratureConfig) -> Result<RepresentationReport> {
    cfg.validate()?;
    let closed_form = family.jensen_at(0.0)?;
    let quadrature_part = composite(
        |t| family.s_div_sq_at(t),
        &dyadic_panels(cfg.cutoff, cfg.panels),
        cfg.nodes_per_panel,
    )?;
    let tail_part = family.jensen_at(cfg.cutoff)?;
    Ok(RepresentationReport {
        closed_form,
        quadrature_part,
        tail_part,
        abs_error: (closed_form - quadrature_part - tail_part).abs(),
    })
}

/// `∫_lo^hi d_S²(A+tI, B+tI) dt` on `panels` geometric panels, `0 < lo < hi`.
pub fn integrate_window(family: &ShiftFamily, lo: f64, hi: f64, panels: usize, nodes_per_panel: usize) -> Result<f64> {
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter("window needs 0 < lo < hi"));
    }
    if panels == 0 || nodes_per_panel < 2 {
        return Err(Error::InvalidParameter("window needs panels >= 1 and nodes >= 2"));
    }
    composite(
        |t| family.s_div_sq_at(t),
        &geometric_panels(lo, hi, panels),
        nodes_per_panel,
    )
}

/// Central difference of `t ↦ J(A+tI, B+tI)` with step `h` (left) against
/// `−d_S²(A+tI, B+tI)` (right). Requires `t > h > 0`.
pub fn derivative_check(a: &PsdMatrix, b: &PsdMatrix, t: f64, h: f64) -> Result<(f64, f64)> {
    derivative_check_family(&ShiftFamily::new(a, b)?, t, h)
}

/// [`derivative_check`] on precomputed spectra.
pub fn derivative_check_family(family: &ShiftFamily, t: f64, h: f64) -> Result<(f64, f64)> {
    if !(t > h && h > 0.0) {
        return Err(Error::InvalidParameter("derivative check needs t > h > 0"));
    }
    let lhs = (family.jensen_at(t + h)? - family.jensen_at(t - h)?) / (2.0 * h);
    let rhs = -family.s_div_sq_at(t)?;
    Ok((lhs, rhs))
}

/// `∫₀^∞ (1/(1+t) − 1/(x+t)) dt`, which equals `ln x` for `x > 0`.
pub fn log_integral(x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::DomainError(x));
    }
    integrate_half_line(|t| Ok((x - 1.0) / ((1.0 + t) * (x + t))), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [2usize, 3, 5, 16] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14, "n = {n}");
            // degree 2n-1 exact: ∫ x^{2n-2} = 2/(2n-1)
            let deg = 2 * n - 2;
            let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * libm::pow(*xi, deg as f64)).sum();
            assert!((q - 2.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n = {n}");
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            assert!(x.iter().all(|xi| xi.abs() < 1.0));
        }
    }

    #[test]
    fn known_sixteen_point_node() {
        let (x, w) = gauss_legendre(16);
        assert!((x[15] - 0.989_400_934_991_65).abs() < 1e-15);
        assert!((w[15] - 0.027_152_459_411_754_095).abs() < 1e-15);
    }

    #[test]
    fn dyadic_boundaries() {
        assert_eq!(dyadic_panels(8.0, 3), [0.0, 2.0, 4.0, 8.0]);
        let g = geometric_panels(1.0, 100.0, 2);
        assert!((g[1] - 10.0).abs() < 1e-13 && g[2] == 100.0);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s = compensated_sum([1.0, 1e-16, 1e-16, -1.0]);
        assert!((s - 2e-16).abs() < 1e-30);
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        let bad = QuadratureConfig {
            panels: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureConfig {
            nodes_per_panel: 1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureConfig {
            cutoff: -1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn integrand_examples() {
        let a = PsdMatrix::diag(&[1.0, 0.0]).unwrap();
        let b = PsdMatrix::diag(&[0.0, 1.0]).unwrap();
        assert_eq!(integrand(&a, &a, 0.3).unwrap(), 0.0);
        assert!((integrand(&a, &b, 1.0).unwrap() - 0.11778303565638348).abs() < 1e-14);
        assert!(matches!(integrand(&a, &b, 0.0), Err(Error::SingularInput(_))));
    }

    #[test]
    fn orthogonal_pure_states_integrate_to_ln2() {
        let a = PsdMatrix::diag(&[1.0, 0.0]).unwrap();
        let b = PsdMatrix::diag(&[0.0, 1.0]).unwrap();
        let r = verify_representation(&a, &b, &QuadratureConfig::default()).unwrap();
        assert!((r.closed_form - core::f64::consts::LN_2).abs() < 1e-15);
        assert!(r.abs_error <= 1e-8, "{r:?}");
    }

    #[test]
    fn identical_inputs_give_zero_report() {
        let a = PsdMatrix::diag(&[0.4, 0.0, 2.0]).unwrap();
        let r = verify_representation(&a, &a, &QuadratureConfig::default()).unwrap();
        assert_eq!(
            (r.closed_form, r.quadrature_part, r.tail_part, r.abs_error),
            (0.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn derivative_examples() {
        let a = PsdMatrix::diag(&[1.0, 0.0]).unwrap();
        let b = PsdMatrix::diag(&[0.0, 1.0]).unwrap();
        let (l, r) = derivative_check(&a, &a, 1.0, 1e-3).unwrap();
        assert_eq!((l, r), (0.0, 0.0));
        let (l, r) = derivative_check(&a, &b, 1.0, 1e-4).unwrap();
        assert!((r + 0.11778303565638348).abs() < 1e-14);
        assert!((l - r).abs() < 1e-8);
        assert!(derivative_check(&a, &b, 1e-4, 1e-3).is_err());
    }

    #[test]
    fn log_integral_matches_log() {
        let cfg = QuadratureConfig::default();
        for x in [0.1, 1.0, 2.0, 10.0] {
            assert!((log_integral(x, &cfg).unwrap() - libm::log(x)).abs() < 1e-12, "x = {x}");
        }
        assert!(log_integral(0.0, &cfg).is_err());
    }
}
