//! # qjsd
//!
//! Std companion of [`qjsd_core`]: seeded sampling, the randomized property
//! suites, text file formats, the best-effort kernel exploration, and the
//! pieces of the `qjsd` command-line tool.
//!
//! ```no_run
//! use qjsd::sampling::SamplerConfig;
//! use qjsd::suite::{run_metric_suite, MetricKind};
//!
//! let report = run_metric_suite(&SamplerConfig::new(0, 3, 1000), MetricKind::Qjsd).unwrap();
//! assert_eq!(report.violations, 0);
//! ```

pub mod explore;
pub mod format;
pub mod sampling;
pub mod suite;

pub use qjsd_core;

use thiserror::Error;

/// Errors surfaced by the std layer.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid user input (bad flag value, malformed file, inconsistent sizes).
    #[error("{0}")]
    Input(String),

    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },

    /// A numerical routine rejected its input.
    #[error(transparent)]
    Math(#[from] qjsd_core::Error),
}

/// Result alias for the std layer.
pub type Result<T> = std::result::Result<T, CliError>;

/// Formats `v` with 15 significant digits, in positional notation when the
/// decimal exponent lies in `[-5, 15)` and in scientific notation otherwise.
pub fn format_sig15(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { format!("{v}") };
    }
    let sci = format!("{v:.14e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..15).contains(&exp) {
        format!("{:.*}", (14 - exp) as usize, v)
    } else {
        sci
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig15_formatting() {
        assert_eq!(format_sig15(std::f64::consts::LN_2), "0.693147180559945");
        assert_eq!(format_sig15(1.0), "1.00000000000000");
        assert_eq!(format_sig15(-123.456), "-123.456000000000");
        assert_eq!(format_sig15(0.0), "0");
        assert_eq!(format_sig15(1.5e-9), "1.50000000000000e-9");
        assert_eq!(format_sig15(f64::INFINITY), "inf");
    }
}
