//! Seeded random inputs: Ginibre PSD and density matrices, Bloch vectors,
//! Haar unitaries, random channels and random operator convex functions.
//!
//! Every generator takes an explicit RNG. [`trial_rng`] derives an
//! independent ChaCha stream per `(seed, trial)` so suites can run trials in
//! any order, on any number of threads, and still reproduce bit-for-bit.

use qjsd_core::divergences::OpConvexSpec;
use qjsd_core::qubit::BlochVector;
use qjsd_core::spectral::{DensityMatrix, PsdMatrix};
use qjsd_core::{CMatrix, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

/// Sampling parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Base seed.
    pub seed: u64,
    /// Matrix dimension.
    pub dim: usize,
    /// Rank of each sample; `None` means full rank for the samplers and
    /// mixed rank (uniform in `1..=dim` per matrix) for the suites.
    pub rank: Option<usize>,
    /// Number of samples or trials.
    pub count: usize,
}

impl SamplerConfig {
    /// Full-rank configuration.
    pub fn new(seed: u64, dim: usize, count: usize) -> Self {
        Self {
            seed,
            dim,
            rank: None,
            count,
        }
    }

    /// Same configuration with a fixed rank.
    pub fn with_rank(self, rank: usize) -> Self {
        Self {
            rank: Some(rank),
            ..self
        }
    }

    /// Checks `dim >= 1`, `count >= 1` and `rank ∈ [1, dim]`.
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(CliError::Input("dim must be at least 1".into()));
        }
        if self.count == 0 {
            return Err(CliError::Input("count must be at least 1".into()));
        }
        if let Some(r) = self.rank {
            if r == 0 || r > self.dim {
                return Err(CliError::Input(format!("rank {r} outside [1, {}]", self.dim)));
            }
        }
        Ok(())
    }
}

/// Independent stream for `(seed, stream)`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `rows × cols` matrix of standard complex Gaussians (`E|z|² = 1`).
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(s * re, s * im)
    })
}

/// `G G†` for a `dim × rank` Ginibre `G`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Result<PsdMatrix> {
    let g = ginibre(rng, dim, rank);
    Ok(PsdMatrix::from_matrix(&g * &g.adjoint())?)
}

/// `G G† / tr(G G†)`.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Result<DensityMatrix> {
    let g = ginibre(rng, dim, rank);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    Ok(DensityMatrix::from_matrix(w.scale(1.0 / tr))?)
}

/// Rank from the config, or uniform in `1..=dim`.
pub fn pick_rank<R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: Option<usize>) -> usize {
    rank.unwrap_or_else(|| rng.random_range(1..=dim))
}

/// Uniform point of the closed unit ball, by rejection from the cube.
pub fn random_bloch<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
    loop {
        let r: [f64; 3] = [
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
            rng.random_range(-1.0..=1.0),
        ];
        if r[0] * r[0] + r[1] * r[1] + r[2] * r[2] <= 1.0 {
            return BlochVector::new(r).expect("rejection keeps the norm below 1");
        }
    }
}

/// Haar-random unitary: modified Gram-Schmidt on the columns of a Ginibre
/// matrix (QR with positive `diag(R)`).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let mut q = ginibre(rng, n, n);
    for c in 0..n {
        for prev in 0..c {
            let dot: Complex64 = (0..n).map(|r| q[(r, prev)].conj() * q[(r, c)]).sum();
            for r in 0..n {
                let v = q[(r, prev)];
                q[(r, c)] -= dot * v;
            }
        }
        let norm = (0..n).map(|r| q[(r, c)].norm_sqr()).sum::<f64>().sqrt();
        for r in 0..n {
            q[(r, c)] /= norm;
        }
    }
    q
}

/// `k` Kraus operators `C^{d_in} → C^{d_out}` cut from a Haar isometry
/// `V: C^{d_in} → C^{k·d_out}`, so that `Σ K_i† K_i = V†V = I`.
/// Needs `k · d_out >= d_in`.
pub fn random_kraus<R: Rng + ?Sized>(rng: &mut R, d_in: usize, d_out: usize, k: usize) -> Result<Vec<CMatrix>> {
    let big = k * d_out;
    if big < d_in {
        return Err(CliError::Input(format!(
            "k·d_out = {big} is smaller than d_in = {d_in}"
        )));
    }
    let u = haar_unitary(rng, big);
    Ok((0..k)
        .map(|i| CMatrix::from_fn(d_out, d_in, |r, c| u[(i * d_out + r, c)]))
        .collect())
}

/// Random `a + bx + cx² + Σ w t x²/(t+x)` with `c ∈ [0,1]`, one to four
/// atoms, `t` log-uniform in `[0.05, 20]` and `w ∈ (0, 1]`.
pub fn random_op_convex<R: Rng + ?Sized>(rng: &mut R) -> Result<OpConvexSpec> {
    let a = rng.random_range(-1.0..1.0);
    let b = rng.random_range(-1.0..1.0);
    let c = rng.random_range(0.0..1.0);
    let atoms = (0..rng.random_range(1..=4))
        .map(|_| {
            let t = (rng.random_range(0.05f64.ln()..20f64.ln())).exp();
            let w = 1.0 - rng.random_range(0.0..1.0);
            (t, w)
        })
        .collect();
    Ok(OpConvexSpec::new(a, b, c, atoms)?)
}

/// `cfg.count` PSD matrices from a single stream of `cfg.seed`.
pub fn sample_psd(cfg: &SamplerConfig) -> Result<Vec<PsdMatrix>> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, 0);
    let rank = cfg.rank.unwrap_or(cfg.dim);
    (0..cfg.count).map(|_| random_psd(&mut rng, cfg.dim, rank)).collect()
}

/// `cfg.count` density matrices from a single stream of `cfg.seed`.
pub fn sample_density(cfg: &SamplerConfig) -> Result<Vec<DensityMatrix>> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, 0);
    let rank = cfg.rank.unwrap_or(cfg.dim);
    (0..cfg.count)
        .map(|_| random_density(&mut rng, cfg.dim, rank))
        .collect()
}

/// `cfg.count` uniform Bloch vectors (`dim` and `rank` are ignored).
pub fn sample_bloch(cfg: &SamplerConfig) -> Result<Vec<BlochVector>> {
    if cfg.count == 0 {
        return Err(CliError::Input("count must be at least 1".into()));
    }
    let mut rng = trial_rng(cfg.seed, 0);
    Ok((0..cfg.count).map(|_| random_bloch(&mut rng)).collect())
}
