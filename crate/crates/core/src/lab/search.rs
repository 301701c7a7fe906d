use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::geometry::{Point, PointSet};

use super::check::{sample_configuration, Sampler};
use super::construct::{construct, Construction};
use super::kind::{proven_bounds, DistanceKind, ProvenBounds};
use super::ratio::{simplex_ratio, Configuration, RatioWitness};
use super::rng::substream;

const INITIAL_STEP: f64 = 0.25;
const MIN_STEP: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub restarts: usize,
    /// Maximum number of coordinate sweeps per restart.
    pub iters: usize,
    pub seed: u64,
    pub workers: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { restarts: 64, iters: 200, seed: 0, workers: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestConstantReport {
    pub kind: DistanceKind,
    pub n: usize,
    pub q: usize,
    pub best: RatioWitness,
    /// Restart that found `best`, and the construction it was seeded from if any.
    pub best_restart: usize,
    pub best_start: Option<Construction>,
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
    pub proven_bounds: Option<ProvenBounds>,
}

/// Translates the centroid of x₁,…,xₙ to the origin and scales their
/// largest pairwise distance to 1. `None` if the points coincide.
fn normalize(config: &Configuration) -> Option<Configuration> {
    let scale = config.points.diameter();
    if !(scale > 0.0) || !scale.is_finite() {
        return None;
    }
    let shift: Vec<f64> = config.points.centroid().coords().iter().map(|c| -c).collect();
    Some(config.map_points(|p| p.translated(&shift).scaled(1.0 / scale)))
}

fn objective(config: &Configuration, kind: DistanceKind) -> Option<RatioWitness> {
    simplex_ratio(config, kind).ok().filter(|w| w.ratio.is_finite())
}

fn flatten(config: &Configuration) -> Vec<f64> {
    config.points.iter().chain(std::iter::once(&config.z)).flat_map(|p| p.coords().to_vec()).collect()
}

fn unflatten(coords: &[f64], n: usize, q: usize) -> Configuration {
    let mut pts: Vec<Point> =
        coords.chunks(q).map(|c| Point::from_vec_unchecked(c.to_vec())).collect();
    let z = pts.pop().expect("n + 1 points");
    debug_assert_eq!(pts.len(), n);
    Configuration { points: PointSet::new(pts).expect("n >= 2"), z }
}

/// Compass search: try ±step along every coordinate, keep strict improvements,
/// halve the step after a sweep without one.
fn pattern_search(start: RatioWitness, kind: DistanceKind, iters: usize) -> RatioWitness {
    let (n, q) = (start.config.n(), start.config.q());
    let mut best = start;
    let mut step = INITIAL_STEP;
    for _ in 0..iters {
        let mut improved = false;
        let mut x = flatten(&best.config);
        for c in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut y = x.clone();
                y[c] += sign * step;
                let Some(cand) = normalize(&unflatten(&y, n, q)) else { continue };
                if let Some(w) = objective(&cand, kind) {
                    if w.ratio > best.ratio {
                        best = w;
                        x = flatten(&best.config);
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < MIN_STEP {
                break;
            }
        }
    }
    best
}

/// Constructions that apply to (n, q) and give a finite ratio for `kind`.
fn seeded_starts(kind: DistanceKind, n: usize, q: usize) -> Vec<(Construction, Configuration)> {
    Construction::ALL
        .into_iter()
        .filter_map(|c| {
            let config = normalize(&construct(c, n, q, None).ok()?)?;
            objective(&config, kind)?;
            Some((c, config))
        })
        .collect()
}

fn run_restart(
    kind: DistanceKind,
    n: usize,
    q: usize,
    r: usize,
    seeds: &[(Construction, Configuration)],
    opts: &SearchOptions,
) -> Option<(RatioWitness, Option<Construction>)> {
    let (start, origin) = match seeds.get(r) {
        Some((c, config)) => (objective(config, kind)?, Some(*c)),
        None => {
            let mut rng = substream(opts.seed, r as u64);
            let sampler = if r.is_multiple_of(2) { Sampler::Uniform } else { Sampler::Collapse };
            let config = normalize(&sample_configuration(&mut rng, n, q, sampler))?;
            (objective(&config, kind)?, None)
        }
    };
    Some((pattern_search(start, kind, opts.iters), origin))
}

/// Multistart maximization of the simplex ratio over (x₁,…,xₙ; z).
///
/// Restarts are seeded from every applicable construction first and from
/// random configurations after that. Each restart is independent, so the
/// report is the same for any worker count.
pub fn estimate_best_constant(
    kind: DistanceKind,
    n: usize,
    q: usize,
    opts: &SearchOptions,
) -> Result<BestConstantReport> {
    if opts.restarts == 0 || opts.iters == 0 {
        return Err(usage("restarts and iters must be at least 1"));
    }
    kind.check_applicable(n, q)?;
    let seeds = seeded_starts(kind, n, q);

    let work = || -> Vec<Option<(RatioWitness, Option<Construction>)>> {
        (0..opts.restarts)
            .into_par_iter()
            .map(|r| run_restart(kind, n, q, r, &seeds, opts))
            .collect()
    };
    let results = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| usage(format!("cannot start {w} workers: {e}")))?
            .install(work),
        None => work(),
    };

    let mut best: Option<(usize, RatioWitness, Option<Construction>)> = None;
    for (r, res) in results.into_iter().enumerate() {
        if let Some((w, origin)) = res {
            if best.as_ref().is_none_or(|(_, b, _)| w.ratio > b.ratio) {
                best = Some((r, w, origin));
            }
        }
    }
    let (best_restart, best, best_start) =
        best.ok_or_else(|| usage("no restart produced a valid configuration"))?;
    Ok(BestConstantReport {
        kind,
        n,
        q,
        best,
        best_restart,
        best_start,
        restarts: opts.restarts,
        iters: opts.iters,
        seed: opts.seed,
        proven_bounds: proven_bounds(kind, n, q),
    })
}
