//! Verification suites. Each suite returns a [`Report`] whose check ids are
//! stable across releases.

mod characterization;
mod relations;
mod report;
mod structure;
mod traces;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::field::BigRational;
use crate::projector;

pub use characterization::{check_characterization, check_lemma2_6};
pub use relations::{check_coefficients, check_relations, check_scalars};
pub use report::{Check, Mode, Report};
pub use structure::{check_class_invariance, check_dimensions, check_kernel, check_structural_lemmas};
pub use traces::{check_jones_wenzl, check_trace};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Largest `n` at which idempotence is checked by exact symbolic products.
pub const EXACT_IDEMPOTENT_MAX: usize = 5;

/// Sample points drawn per evaluated check.
pub const SAMPLE_POINTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Relations,
    Scalars,
    Coefficients,
    Characterization,
    Lemma2_6,
    ClassInvariance,
    Structural,
    Kernel,
    Trace,
    Dimensions,
    JonesWenzl,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Relations,
        Suite::Scalars,
        Suite::Coefficients,
        Suite::Characterization,
        Suite::Lemma2_6,
        Suite::ClassInvariance,
        Suite::Structural,
        Suite::Kernel,
        Suite::Trace,
        Suite::Dimensions,
        Suite::JonesWenzl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Scalars => "scalars",
            Suite::Coefficients => "coefficients",
            Suite::Characterization => "characterization",
            Suite::Lemma2_6 => "lemma2_6",
            Suite::ClassInvariance => "class_invariance",
            Suite::Structural => "structural",
            Suite::Kernel => "kernel",
            Suite::Trace => "trace",
            Suite::Dimensions => "dimensions",
            Suite::JonesWenzl => "jones_wenzl",
        }
    }

    /// Admissible `n` without `--force`.
    pub fn range(self) -> (usize, usize) {
        match self {
            Suite::Relations => (2, 8),
            Suite::Scalars => (1, 64),
            Suite::Coefficients => (1, 30),
            Suite::Characterization => (1, 7),
            Suite::Lemma2_6 => (2, 5),
            Suite::ClassInvariance => (2, 6),
            Suite::Structural => (3, 6),
            Suite::Kernel => (2, 8),
            Suite::Trace => (1, 5),
            Suite::Dimensions => (1, 7),
            Suite::JonesWenzl => (1, 6),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    /// Lift the upper caps on `n`.
    pub force: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: DEFAULT_SEED, force: false }
    }
}

/// Runs `suite` at `n`, enforcing the suite's range unless forced.
pub fn run(suite: Suite, n: usize, opts: &Options) -> Result<Report> {
    let (lo, hi) = suite.range();
    if n < lo || (n > hi && !opts.force) {
        let hint = if n > hi { " (use --force to lift the cap)" } else { "" };
        return Err(Error::InvalidArgument(format!(
            "suite {suite} supports {lo} <= n <= {hi}, got {n}{hint}"
        )));
    }
    match suite {
        Suite::Relations => check_relations(n),
        Suite::Scalars => check_scalars(n),
        Suite::Coefficients => check_coefficients(n),
        Suite::Characterization => {
            let candidate = if n <= 6 {
                projector::f_recursive(n)?
            } else {
                std::sync::Arc::new(projector::f_explicit(n)?.expand()?)
            };
            check_characterization(n, &candidate, opts.seed)
        }
        Suite::Lemma2_6 => check_lemma2_6(n),
        Suite::ClassInvariance => check_class_invariance(n),
        Suite::Structural => check_structural_lemmas(n),
        Suite::Kernel => check_kernel(n),
        Suite::Trace => check_trace(n),
        Suite::Dimensions => check_dimensions(n),
        Suite::JonesWenzl => check_jones_wenzl(n),
    }
}

/// `count` distinct rationals outside the excluded set of `n` at which every
/// element of `probes` evaluates without a pole.
pub fn sample_points(n: usize, seed: u64, count: usize, probes: &[&Element]) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let excluded = projector::excluded_points(n);
    let mut points: Vec<BigRational> = Vec::with_capacity(count);
    while points.len() < count {
        let p: i64 = rng.gen_range(-60..=60);
        let q: i64 = rng.gen_range(1..=12);
        let v = BigRational::new(p.into(), q.into());
        if v.is_zero() || points.contains(&v) {
            continue;
        }
        if v.is_integer() && excluded.iter().any(|&e| BigRational::from_integer(e.into()) == v) {
            continue;
        }
        if probes.iter().any(|e| e.eval(&v).is_err()) {
            continue;
        }
        points.push(v);
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn caps_enforced_unless_forced() {
        let err = run(Suite::Trace, 9, &Options::default()).unwrap_err();
        assert!(err.to_string().contains("--force"));
        assert!(run(Suite::Structural, 2, &Options { force: true, ..Options::default() }).is_err());
    }

    #[test]
    fn sample_points_are_admissible_and_stable() {
        let f = projector::f_recursive(3).unwrap();
        let a = sample_points(3, 7, 5, &[&f]);
        let b = sample_points(3, 7, 5, &[&f]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        for p in &a {
            assert!(!p.is_zero());
            assert_ne!(*p, BigRational::from_integer((-2).into()));
        }
    }
}
