//! Randomized property suites.
//!
//! Each trial draws its inputs from `trial_rng(seed, trial)`, evaluates an
//! inequality `lhs <= rhs` and records the margin `rhs − lhs`. A trial is a
//! violation when its margin is below `−1e-12`. Trials run on the rayon pool;
//! margins are gathered in trial order, so reports do not depend on the
//! number of threads.

use std::time::{Duration, Instant};

use qjsd_core::channel::{apply_kraus, partial_trace};
use qjsd_core::divergences::{qjsd, qjsd_distance, s_divergence_sq};
use qjsd_core::spectral::{DensityMatrix, PsdMatrix};
use qjsd_core::CMatrix;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::sampling::{pick_rank, random_density, random_kraus, random_psd, trial_rng, SamplerConfig};
use crate::{CliError, Result};

/// Absolute slack on every suite inequality.
pub const VIOLATION_TOL: f64 = 1e-12;

/// Which distance the metric suite checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    /// `√J` on the PSD cone (mixed rank).
    Qjsd,
    /// `d_S` on the positive definite cone.
    SDiv,
}

/// Suites that can be replayed from a [`ReplayRecord`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    /// Triangle inequality for `√J`.
    MetricQjsd,
    /// Triangle inequality for `d_S`.
    MetricSDiv,
    /// `J(Φρ, Φσ) <= J(ρ, σ)`.
    Monotonicity,
    /// Joint convexity of `J` on density pairs.
    Convexity,
}

impl SuiteKind {
    /// Report name.
    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::MetricQjsd => "metric_qjsd",
            SuiteKind::MetricSDiv => "metric_sdiv",
            SuiteKind::Monotonicity => "monotonicity",
            SuiteKind::Convexity => "convexity",
        }
    }
}

impl From<MetricKind> for SuiteKind {
    fn from(k: MetricKind) -> Self {
        match k {
            MetricKind::Qjsd => SuiteKind::MetricQjsd,
            MetricKind::SDiv => SuiteKind::MetricSDiv,
        }
    }
}

/// Everything needed to regenerate one trial's inputs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplayRecord {
    /// Suite that produced the trial.
    pub suite: SuiteKind,
    /// Configuration of the run.
    pub config: SamplerConfig,
    /// Trial index.
    pub trial: u64,
    /// Margin observed in the run.
    pub margin: f64,
}

/// Outcome of a suite run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    /// Suite name.
    pub name: String,
    /// Base seed.
    pub seed: u64,
    /// Configuration of the run.
    pub config: SamplerConfig,
    /// Number of trials.
    pub trials: usize,
    /// Trials whose margin fell below `−1e-12`.
    pub violations: usize,
    /// Smallest margin observed.
    pub worst_margin: f64,
    /// Trial attaining the worst margin.
    pub worst_trial: u64,
    /// Violating trials.
    pub replay: Vec<ReplayRecord>,
    /// Wall-clock time; not serialized so report bodies stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

fn run_suite(
    kind: SuiteKind,
    cfg: &SamplerConfig,
    trial: impl Fn(&SamplerConfig, u64) -> Result<f64> + Sync,
) -> Result<SuiteReport> {
    cfg.validate()?;
    let start = Instant::now();
    let margins: Vec<f64> = (0..cfg.count as u64)
        .into_par_iter()
        .map(|i| trial(cfg, i))
        .collect::<Result<_>>()?;
    let mut worst_margin = f64::INFINITY;
    let mut worst_trial = 0;
    let mut replay = Vec::new();
    for (i, &m) in margins.iter().enumerate() {
        if m.is_nan() {
            return Err(CliError::Input(format!("trial {i} produced NaN")));
        }
        if m < worst_margin {
            worst_margin = m;
            worst_trial = i as u64;
        }
        if m < -VIOLATION_TOL {
            replay.push(ReplayRecord {
                suite: kind,
                config: *cfg,
                trial: i as u64,
                margin: m,
            });
        }
    }
    Ok(SuiteReport {
        name: kind.name().to_string(),
        seed: cfg.seed,
        config: *cfg,
        trials: cfg.count,
        violations: replay.len(),
        worst_margin,
        worst_trial,
        replay,
        elapsed: start.elapsed(),
    })
}

/// Smallest of the three triangle margins `d(x,y) + d(y,z) − d(x,z)`.
pub fn triangle_margin(dist: impl Fn(&PsdMatrix, &PsdMatrix) -> Result<f64>, triple: &[PsdMatrix; 3]) -> Result<f64> {
    let [a, b, c] = triple;
    let ab = dist(a, b)?;
    let bc = dist(b, c)?;
    let ac = dist(a, c)?;
    Ok((ab + bc - ac).min(ab + ac - bc).min(bc + ac - ab))
}

/// Inputs of trial `trial` of the metric suite.
pub fn metric_trial_inputs(cfg: &SamplerConfig, kind: MetricKind, trial: u64) -> Result<[PsdMatrix; 3]> {
    let mut rng = trial_rng(cfg.seed, trial);
    let mut draw = || -> Result<PsdMatrix> {
        let rank = match kind {
            MetricKind::Qjsd => pick_rank(&mut rng, cfg.dim, cfg.rank),
            MetricKind::SDiv => cfg.dim,
        };
        random_psd(&mut rng, cfg.dim, rank)
    };
    Ok([draw()?, draw()?, draw()?])
}

fn metric_distance(kind: MetricKind) -> impl Fn(&PsdMatrix, &PsdMatrix) -> Result<f64> {
    move |a, b| match kind {
        MetricKind::Qjsd => Ok(qjsd_distance(a, b)?),
        MetricKind::SDiv => Ok(s_divergence_sq(a, b)?.sqrt()),
    }
}

fn metric_trial(cfg: &SamplerConfig, kind: MetricKind, trial: u64) -> Result<f64> {
    triangle_margin(metric_distance(kind), &metric_trial_inputs(cfg, kind, trial)?)
}

/// Triangle inequality for `√J` (mixed-rank PSD triples) or `d_S` (full-rank triples).
pub fn run_metric_suite(cfg: &SamplerConfig, which: MetricKind) -> Result<SuiteReport> {
    run_suite(which.into(), cfg, |c, i| metric_trial(c, which, i))
}

/// A quantum channel.
#[derive(Clone, Debug, PartialEq)]
pub enum Channel {
    /// `ρ ↦ Σ K_i ρ K_i†`.
    Kraus(Vec<CMatrix>),
    /// Trace out the second factor of `C^keep ⊗ C^traced`.
    PartialTrace {
        /// Kept dimension.
        keep: usize,
        /// Traced-out dimension.
        traced: usize,
    },
}

impl Channel {
    /// `Φ(ρ)`.
    pub fn apply(&self, rho: &PsdMatrix) -> Result<PsdMatrix> {
        Ok(match self {
            Channel::Kraus(k) => apply_kraus(rho, k)?,
            Channel::PartialTrace { keep, traced } => partial_trace(rho, *keep, *traced)?,
        })
    }
}

/// `J(ρ,σ) − J(Φρ, Φσ)`.
pub fn monotonicity_margin(rho: &PsdMatrix, sigma: &PsdMatrix, channel: &Channel) -> Result<f64> {
    let before = qjsd(rho, sigma)?.value;
    let after = qjsd(&channel.apply(rho)?, &channel.apply(sigma)?)?.value;
    Ok(before - after)
}

/// Inputs of trial `trial` of the monotonicity suite. Even trials use a
/// random Kraus channel on `C^dim` (output dimension in `1..=dim+1`, one to
/// three operators); odd trials trace out a random `C^2` or `C^3` factor of
/// `C^dim ⊗ C^k`.
pub fn monotonicity_trial_inputs(cfg: &SamplerConfig, trial: u64) -> Result<(DensityMatrix, DensityMatrix, Channel)> {
    let mut rng = trial_rng(cfg.seed, trial);
    let (d_in, channel) = if trial.is_multiple_of(2) {
        let d_out = rng.random_range(1..=cfg.dim + 1);
        let min_k = cfg.dim.div_ceil(d_out);
        let k = rng.random_range(min_k..=min_k + 2);
        (cfg.dim, Channel::Kraus(random_kraus(&mut rng, cfg.dim, d_out, k)?))
    } else {
        let traced = rng.random_range(2..=3);
        (cfg.dim * traced, Channel::PartialTrace { keep: cfg.dim, traced })
    };
    let r1 = pick_rank(&mut rng, d_in, cfg.rank.filter(|&r| r <= d_in));
    let rho = random_density(&mut rng, d_in, r1)?;
    let r2 = pick_rank(&mut rng, d_in, cfg.rank.filter(|&r| r <= d_in));
    let sigma = random_density(&mut rng, d_in, r2)?;
    Ok((rho, sigma, channel))
}

/// Data processing: `J(Φρ, Φσ) <= J(ρ, σ)` under random CPTP maps.
pub fn run_monotonicity_suite(cfg: &SamplerConfig) -> Result<SuiteReport> {
    run_suite(SuiteKind::Monotonicity, cfg, |c, i| {
        let (rho, sigma, ch) = monotonicity_trial_inputs(c, i)?;
        monotonicity_margin(&rho, &sigma, &ch)
    })
}

/// Mixing weights cycled by the convexity suite.
pub const CONVEXITY_WEIGHTS: [f64; 3] = [0.25, 0.5, 0.9];

/// `λJ(ρ₁,σ₁) + (1−λ)J(ρ₂,σ₂) − J(λρ₁+(1−λ)ρ₂, λσ₁+(1−λ)σ₂)`.
pub fn convexity_margin(
    lambda: f64,
    (rho1, sigma1): (&DensityMatrix, &DensityMatrix),
    (rho2, sigma2): (&DensityMatrix, &DensityMatrix),
) -> Result<f64> {
    let j1 = qjsd(rho1, sigma1)?.value;
    let j2 = qjsd(rho2, sigma2)?.value;
    let (rho, sigma) = (rho1.mix(lambda, rho2)?, sigma1.mix(lambda, sigma2)?);
    let jm = qjsd(&rho, &sigma)?.value;
    Ok(lambda * j1 + (1.0 - lambda) * j2 - jm)
}

/// Inputs of trial `trial` of the convexity suite: `(λ, [ρ₁, σ₁, ρ₂, σ₂])`.
pub fn convexity_trial_inputs(cfg: &SamplerConfig, trial: u64) -> Result<(f64, [DensityMatrix; 4])> {
    let mut rng = trial_rng(cfg.seed, trial);
    let lambda = CONVEXITY_WEIGHTS[(trial % 3) as usize];
    let mut draw = || -> Result<DensityMatrix> {
        let r = pick_rank(&mut rng, cfg.dim, cfg.rank);
        random_density(&mut rng, cfg.dim, r)
    };
    Ok((lambda, [draw()?, draw()?, draw()?, draw()?]))
}

/// Joint convexity of `J` on random density quadruples.
pub fn run_convexity_suite(cfg: &SamplerConfig) -> Result<SuiteReport> {
    run_suite(SuiteKind::Convexity, cfg, |c, i| {
        let (l, [r1, s1, r2, s2]) = convexity_trial_inputs(c, i)?;
        convexity_margin(l, (&r1, &s1), (&r2, &s2))
    })
}

/// Recomputes the margin of a recorded trial.
pub fn replay(record: &ReplayRecord) -> Result<f64> {
    let cfg = &record.config;
    match record.suite {
        SuiteKind::MetricQjsd => metric_trial(cfg, MetricKind::Qjsd, record.trial),
        SuiteKind::MetricSDiv => metric_trial(cfg, MetricKind::SDiv, record.trial),
        SuiteKind::Monotonicity => {
            let (rho, sigma, ch) = monotonicity_trial_inputs(cfg, record.trial)?;
            monotonicity_margin(&rho, &sigma, &ch)
        }
        SuiteKind::Convexity => {
            let (l, [r1, s1, r2, s2]) = convexity_trial_inputs(cfg, record.trial)?;
            convexity_margin(l, (&r1, &s1), (&r2, &s2))
        }
    }
}
