use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::geometry::{Point, PointSet};

use super::kind::DistanceKind;
use super::ratio::{simplex_ratio, Configuration, RatioWitness};
use super::rng::substream;

/// A ratio above 1 + VIOLATION_TOL counts as a simplex-inequality violation.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Distribution of random configurations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampler {
    /// Points and z i.i.d. uniform in the unit cube.
    #[default]
    Uniform,
    /// Uniform, then with probability ½ some points are duplicated and with
    /// probability ½ z is moved to the midpoint of a random pair.
    Collapse,
}

impl Sampler {
    pub fn name(self) -> &'static str {
        match self {
            Sampler::Uniform => "uniform",
            Sampler::Collapse => "collapse",
        }
    }
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Sampler::Uniform),
            "collapse" => Ok(Sampler::Collapse),
            _ => Err(usage(format!("unknown sampler '{s}' (expected uniform or collapse)"))),
        }
    }
}

fn uniform_point(rng: &mut ChaCha8Rng, q: usize) -> Point {
    Point::from_vec_unchecked((0..q).map(|_| rng.gen::<f64>()).collect())
}

/// Draws one configuration of `n` points in ℝ^q.
pub fn sample_configuration(rng: &mut ChaCha8Rng, n: usize, q: usize, sampler: Sampler) -> Configuration {
    let mut pts: Vec<Point> = (0..n).map(|_| uniform_point(rng, q)).collect();
    let mut z = uniform_point(rng, q);
    if sampler == Sampler::Collapse {
        if rng.gen_bool(0.5) {
            let distinct = rng.gen_range(2..=n);
            for i in distinct..n {
                pts[i] = pts[rng.gen_range(0..distinct)].clone();
            }
            pts.shuffle(rng);
        }
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            z = pts[i].midpoint(&pts[j]);
        }
    }
    Configuration { points: PointSet::new(pts).expect("n >= 2 points of equal dimension"), z }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub kind: DistanceKind,
    pub n: usize,
    pub q: usize,
    pub trials: usize,
    pub seed: u64,
    pub sampler: Sampler,
    /// Largest ratio seen and the trial that produced it.
    pub max_ratio: f64,
    pub max_trial: usize,
    pub witness: RatioWitness,
    pub violations: usize,
    /// Earliest violating trial. A vanishing simplex sum is recorded with an infinite ratio.
    pub first_violation: Option<(usize, RatioWitness)>,
}

enum Outcome {
    Ratio(RatioWitness),
    Degenerate,
}

fn run_trial(kind: DistanceKind, n: usize, q: usize, seed: u64, t: usize, sampler: Sampler) -> Result<Outcome> {
    let mut rng = substream(seed, t as u64);
    let config = sample_configuration(&mut rng, n, q, sampler);
    match simplex_ratio(&config, kind) {
        Ok(w) => Ok(Outcome::Ratio(w)),
        Err(Error::Violation { numerator }) => Ok(Outcome::Ratio(RatioWitness {
            config,
            kind,
            numerator,
            denominator: 0.0,
            ratio: f64::INFINITY,
        })),
        Err(Error::Usage(_)) if config.points.all_coincident() => Ok(Outcome::Degenerate),
        Err(e) => Err(e),
    }
}

/// Evaluates the simplex ratio on `trials` seeded random configurations.
///
/// Trial `t` draws from its own substream, so the report does not depend on
/// `workers` (`None` uses the global rayon pool).
pub fn check_simplex_inequality(
    kind: DistanceKind,
    n: usize,
    q: usize,
    trials: usize,
    seed: u64,
    sampler: Sampler,
    workers: Option<usize>,
) -> Result<CheckReport> {
    if trials == 0 {
        return Err(usage("trials must be at least 1"));
    }
    kind.check_applicable(n, q)?;

    let work = || -> Result<Vec<(usize, RatioWitness)>> {
        let results: Vec<Result<Outcome>> = (0..trials)
            .into_par_iter()
            .map(|t| run_trial(kind, n, q, seed, t, sampler))
            .collect();
        let mut out = Vec::with_capacity(trials);
        for (t, r) in results.into_iter().enumerate() {
            if let Outcome::Ratio(w) = r? {
                out.push((t, w));
            }
        }
        Ok(out)
    };
    let results = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| usage(format!("cannot start {w} workers: {e}")))?
            .install(work)?,
        None => work()?,
    };

    let mut best: Option<(usize, RatioWitness)> = None;
    let mut violations = 0;
    let mut first_violation = None;
    for (t, w) in results {
        if w.ratio > 1.0 + VIOLATION_TOL {
            violations += 1;
            if first_violation.is_none() {
                first_violation = Some((t, w.clone()));
            }
        }
        if best.as_ref().is_none_or(|(_, b)| w.ratio > b.ratio) {
            best = Some((t, w));
        }
    }
    let (max_trial, witness) =
        best.ok_or_else(|| usage("every sampled configuration was degenerate"))?;
    Ok(CheckReport {
        kind,
        n,
        q,
        trials,
        seed,
        sampler,
        max_ratio: witness.ratio,
        max_trial,
        witness,
        violations,
        first_violation,
    })
}
