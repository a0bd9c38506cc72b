//! Best-effort search for point sets whose Jensen kernel is not negative
//! definite.
//!
//! Two modes:
//! - `neglog-cone`: `J_{−log}` (= `d_S²`) on 2×2 positive definite matrices,
//!   where non-embeddable configurations are known to exist;
//! - `qjsd-n3`: `J_η` on 3×3 density matrices, where embeddability is open.
//!
//! The score of a point set is `max_centered_eigenvalue / scale` from the
//! centered kernel check; a positive score beyond the check's tolerance is
//! a candidate witness. Each worker runs random restarts followed by
//! single-point perturbations accepted only when the score improves, and
//! emits a record whenever its best score improves. Records carry the full
//! point set, so [`replay_witness`] recomputes the score without the RNG.
//! Nothing here asserts that a witness must be found.

use qjsd_core::divergences::{jensen_f_divergence, JensenFn};
use qjsd_core::qubit::{centered_kernel_check, kernel_from, Verdict};
use qjsd_core::spectral::{DensityMatrix, PsdMatrix};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::MatrixFile;
use crate::sampling::{ginibre, haar_unitary, pick_rank, random_density, trial_rng};
use crate::{CliError, Result};

/// Search target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExploreMode {
    /// `J_{−log}` on the 2×2 positive definite cone.
    NeglogCone,
    /// `J_η` on 3×3 density matrices.
    QjsdN3,
}

impl ExploreMode {
    fn function(self) -> JensenFn {
        match self {
            ExploreMode::NeglogCone => JensenFn::NegLog,
            ExploreMode::QjsdN3 => JensenFn::Eta,
        }
    }
}

/// Search parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExploreConfig {
    /// Target.
    pub mode: ExploreMode,
    /// Base seed; worker `w` uses stream `w`.
    pub seed: u64,
    /// Total number of score evaluations across all workers.
    pub budget: usize,
    /// Number of logical workers (fixed, independent of thread count).
    pub workers: usize,
    /// Points per candidate set.
    pub points: usize,
    /// Failed perturbations before a random restart.
    pub patience: usize,
}

impl ExploreConfig {
    /// Defaults: 4 workers, 6 points, restart after 40 failed steps.
    pub fn new(mode: ExploreMode, seed: u64, budget: usize) -> Self {
        Self {
            mode,
            seed,
            budget,
            workers: 4,
            points: 6,
            patience: 40,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.workers == 0 || self.points < 2 {
            return Err(CliError::Input("explore needs workers >= 1 and points >= 2".into()));
        }
        Ok(())
    }
}

/// An improvement of one worker's best score.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// Target.
    pub mode: ExploreMode,
    /// Base seed.
    pub seed: u64,
    /// Worker index.
    pub worker: usize,
    /// Iteration within the worker.
    pub iteration: usize,
    /// Largest eigenvalue of `½ H D H`.
    pub max_centered_eigenvalue: f64,
    /// `max_centered_eigenvalue / max(1, ‖K_c‖)`.
    pub score: f64,
    /// Whether the centered check reports a violation.
    pub violates: bool,
    /// The point set.
    pub points: Vec<MatrixFile>,
}

/// Summary of a search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExploreSummary {
    /// Configuration.
    pub config: ExploreConfig,
    /// Evaluations actually performed.
    pub evaluations: usize,
    /// Best record over all workers, if any evaluation succeeded.
    pub best: Option<WitnessRecord>,
    /// Number of emitted records with `violates == true`.
    pub violating_records: usize,
}

struct Scored {
    max_eig: f64,
    score: f64,
    violates: bool,
}

fn score(mode: ExploreMode, points: &[PsdMatrix]) -> Result<Scored> {
    let f = mode.function();
    let kernel = kernel_from(points, |a, b| Ok(jensen_f_divergence(&f, a, b)?.value))?;
    let report = centered_kernel_check(&kernel)?;
    let scale = report.scale();
    Ok(Scored {
        max_eig: report.max_centered_eigenvalue,
        score: report.max_centered_eigenvalue / scale,
        violates: report.verdict == Verdict::Violated,
    })
}

/// Recomputes `(max_centered_eigenvalue, violates)` from a record.
pub fn replay_witness(record: &WitnessRecord) -> Result<(f64, bool)> {
    let points: Vec<PsdMatrix> = record.points.iter().map(MatrixFile::to_psd).collect::<Result<_>>()?;
    let s = score(record.mode, &points)?;
    Ok((s.max_eig, s.violates))
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, mode: ExploreMode) -> Result<PsdMatrix> {
    match mode {
        ExploreMode::NeglogCone => {
            // Log-normal spectrum in a Haar basis spans many scales of the cone.
            let ln: Normal<f64> = Normal::new(0.0, 1.5).expect("valid normal");
            let d: [f64; 2] = [ln.sample(rng), ln.sample(rng)];
            let d = d.map(f64::exp);
            let u = haar_unitary(rng, 2);
            Ok(PsdMatrix::diag(&d)?.conjugate_by(&u)?)
        }
        ExploreMode::QjsdN3 => {
            let r = pick_rank(rng, 3, None);
            Ok(random_density(rng, 3, r)?.into_psd())
        }
    }
}

fn perturb<R: Rng + ?Sized>(rng: &mut R, mode: ExploreMode, p: &PsdMatrix, step: f64) -> Option<PsdMatrix> {
    let n = p.dim();
    let g = ginibre(rng, n, n);
    let h = (&g + &g.adjoint()).scale(0.5 * step * p.trace().max(1e-3));
    let moved = p.matrix() + &h;
    match mode {
        ExploreMode::NeglogCone => PsdMatrix::from_matrix(moved).ok().filter(|m| m.eigenvalues()[0] > 1e-9),
        ExploreMode::QjsdN3 => {
            let m = PsdMatrix::from_matrix(moved).ok()?;
            DensityMatrix::normalized(&m).ok().map(DensityMatrix::into_psd)
        }
    }
}

fn record(cfg: &ExploreConfig, worker: usize, iteration: usize, s: &Scored, points: &[PsdMatrix]) -> WitnessRecord {
    WitnessRecord {
        mode: cfg.mode,
        seed: cfg.seed,
        worker,
        iteration,
        max_centered_eigenvalue: s.max_eig,
        score: s.score,
        violates: s.violates,
        points: points.iter().map(|p| MatrixFile::from_matrix(p.matrix())).collect(),
    }
}

fn run_worker(cfg: &ExploreConfig, worker: usize, iterations: usize) -> Result<Vec<WitnessRecord>> {
    let mut rng = trial_rng(cfg.seed, worker as u64);
    let mut out: Vec<WitnessRecord> = Vec::new();
    let mut best_score = f64::NEG_INFINITY;
    let mut current: Vec<PsdMatrix> = Vec::new();
    let mut current_score = f64::NEG_INFINITY;
    let mut failures = cfg.patience;
    let mut step = 0.2;

    for it in 0..iterations {
        let candidate = if failures >= cfg.patience || current.is_empty() {
            failures = 0;
            step = 0.2;
            current_score = f64::NEG_INFINITY;
            (0..cfg.points)
                .map(|_| random_point(&mut rng, cfg.mode))
                .collect::<Result<Vec<_>>>()?
        } else {
            let i = rng.random_range(0..current.len());
            match perturb(&mut rng, cfg.mode, &current[i], step) {
                Some(p) => {
                    let mut c = current.clone();
                    c[i] = p;
                    c
                }
                None => {
                    failures += 1;
                    step *= 0.7;
                    continue;
                }
            }
        };
        let s = score(cfg.mode, &candidate)?;
        if s.score > current_score {
            current = candidate;
            current_score = s.score;
            step = (step * 1.3).min(1.0);
        } else {
            failures += 1;
            step = (step * 0.8).max(1e-4);
        }
        if s.score > best_score {
            best_score = s.score;
            out.push(record(cfg, worker, it, &s, &current));
        }
    }
    Ok(out)
}

/// Splits the budget over the workers, runs them in parallel and merges the
/// records in `(worker, iteration)` order.
pub fn explore(cfg: &ExploreConfig) -> Result<(Vec<WitnessRecord>, ExploreSummary)> {
    cfg.validate()?;
    let per = cfg.budget / cfg.workers;
    let extra = cfg.budget % cfg.workers;
    let runs: Vec<Vec<WitnessRecord>> = (0..cfg.workers)
        .into_par_iter()
        .map(|w| run_worker(cfg, w, per + usize::from(w < extra)))
        .collect::<Result<_>>()?;
    let records: Vec<WitnessRecord> = runs.into_iter().flatten().collect();
    let best = records
        .iter()
        .max_by(|a, b| a.score.total_cmp(&b.score).then(b.worker.cmp(&a.worker)))
        .cloned();
    let summary = ExploreSummary {
        config: *cfg,
        evaluations: cfg.budget,
        violating_records: records.iter().filter(|r| r.violates).count(),
        best,
    };
    Ok((records, summary))
}
