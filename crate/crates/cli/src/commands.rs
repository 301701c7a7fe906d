use std::fs;
use std::io::Write;
use std::path::PathBuf;

use ndist_core::classic::enclosing_ball;
use ndist_core::inner_balls::{inner_chebyshev_ball_distance, inner_euclidean_ball_distance};
use ndist_core::lab::{
    check_simplex_inequality, constants, construct, estimate_best_constant, evaluate, simplex_ratio,
    table1, SearchOptions,
};
use ndist_core::trees::{mst_distance, steiner_distance};
use ndist_core::{Configuration, DistanceKind, Point, PointSet};
use serde::Serialize;

use crate::args::{
    CheckArgs, Command, ConstructArgs, EvalArgs, Format, KstarArgs, OutputArgs, RatioArgs,
    ReproduceArgs, Target,
};
use crate::points::{coords, load, parse_coords, point_list, point_set, real, PointFile};
use crate::CliError;

/// Slack above a proven upper bound before a reported ratio counts as a mismatch.
const BOUND_SLACK: f64 = 1e-6;

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Eval(a) => eval(a),
        Command::Ratio(a) => ratio(a),
        Command::Check(a) => check(a),
        Command::Kstar(a) => kstar(a),
        Command::Construct(a) => construct_cmd(a),
        Command::Reproduce(a) => reproduce(a),
    }
}

struct Sink {
    path: Option<PathBuf>,
    buf: Vec<u8>,
}

impl Sink {
    fn new(out: &OutputArgs) -> Self {
        Sink { path: out.output.clone(), buf: Vec::new() }
    }

    fn line(&mut self, s: &str) {
        self.buf.extend_from_slice(s.as_bytes());
        self.buf.push(b'\n');
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Usage(format!("cannot encode JSON: {e}")))?;
        self.line(&text);
        Ok(())
    }

    fn csv(&mut self, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::Usage(format!("cannot encode CSV: {e}"));
        w.write_record(header).map_err(fail)?;
        for r in rows {
            w.write_record(r).map_err(fail)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("cannot encode CSV: {e}")))?;
        self.buf.extend_from_slice(&bytes);
        Ok(())
    }

    fn finish(self) -> Result<(), CliError> {
        match self.path {
            Some(p) => fs::write(&p, &self.buf)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(&self.buf)
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
            }
        }
    }
}

fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn pair(p: Option<(usize, usize)>) -> String {
    p.map(|(i, j)| format!("{i}-{j}")).unwrap_or_default()
}

/// Index-level evidence for a distance value; indices are 0-based rows.
fn witness(kind: DistanceKind, ps: &PointSet) -> Result<String, CliError> {
    Ok(match kind {
        DistanceKind::InnerEuclidean => pair(inner_euclidean_ball_distance(ps).witness_pair),
        DistanceKind::InnerChebyshev => pair(inner_chebyshev_ball_distance(ps)?.witness_pair),
        DistanceKind::Mst => {
            let tree = mst_distance(ps);
            tree.edges.iter().map(|(i, j)| format!("{i}-{j}")).collect::<Vec<_>>().join(" ")
        }
        DistanceKind::Steiner => steiner_distance(ps)?.topology_id,
        DistanceKind::EnclosingDiameter | DistanceKind::EnclosingArea => enclosing_ball(ps)?
            .map(|b| b.support.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .unwrap_or_default(),
        DistanceKind::Cardinality | DistanceKind::MaxGap | DistanceKind::Lines => String::new(),
    })
}

#[derive(Serialize)]
struct EvalRecord {
    kind: DistanceKind,
    n: usize,
    q: usize,
    value: f64,
    witness: String,
}

fn eval(a: EvalArgs) -> Result<(), CliError> {
    let loaded = load(&a.input)?;
    let ps = point_set(loaded.rows)?;
    let value = evaluate(a.kind, &ps)?;
    let rec = EvalRecord { kind: a.kind, n: ps.len(), q: ps.dim(), value, witness: witness(a.kind, &ps)? };
    let mut sink = Sink::new(&a.out);
    match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => sink.json(&rec)?,
        Format::Csv => sink.csv(
            &["kind", "n", "q", "value", "witness"],
            &[vec![rec.kind.to_string(), rec.n.to_string(), rec.q.to_string(), real(rec.value), rec.witness]],
        )?,
    }
    sink.finish()
}

fn ratio(a: RatioArgs) -> Result<(), CliError> {
    let loaded = load(&a.input)?;
    let mut rows = loaded.rows;
    let z = match (&a.z, loaded.z) {
        (Some(s), _) => parse_coords(s)?,
        (None, Some(z)) => z,
        (None, None) => rows
            .pop()
            .ok_or_else(|| CliError::Usage("the point file is empty".into()))?,
    };
    let config = Configuration::new(point_set(rows)?, Point::new(z)?)?;
    let w = simplex_ratio(&config, a.kind)?;
    let mut sink = Sink::new(&a.out);
    match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => sink.json(&w)?,
        Format::Csv => sink.csv(
            &["kind", "n", "q", "numerator", "denominator", "ratio"],
            &[vec![
                w.kind.to_string(),
                config.n().to_string(),
                config.q().to_string(),
                real(w.numerator),
                real(w.denominator),
                real(w.ratio),
            ]],
        )?,
    }
    sink.finish()?;
    if w.ratio > 1.0 + ndist_core::lab::VIOLATION_TOL {
        return Err(CliError::Mismatch(format!("simplex inequality violated: ratio {}", real(w.ratio))));
    }
    Ok(())
}

fn check(a: CheckArgs) -> Result<(), CliError> {
    let p = &a.problem;
    let (n, q) = (p.n as usize, p.q as usize);
    let report = check_simplex_inequality(
        p.kind,
        n,
        q,
        a.trials as usize,
        p.seed,
        a.sampler,
        p.workers.map(|w| w as usize),
    )?;
    let bounds = ndist_core::lab::proven_bounds(p.kind, n, q);
    let upper = bounds.and_then(|b| b.upper);
    let mut sink = Sink::new(&a.out);
    match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => sink.json(&report)?,
        Format::Csv => sink.csv(
            &[
                "kind", "n", "q", "trials", "seed", "sampler", "max_ratio", "max_trial", "numerator",
                "denominator", "violations", "proven_upper", "points", "z",
            ],
            &[vec![
                report.kind.to_string(),
                n.to_string(),
                q.to_string(),
                report.trials.to_string(),
                report.seed.to_string(),
                report.sampler.to_string(),
                real(report.max_ratio),
                report.max_trial.to_string(),
                real(report.witness.numerator),
                real(report.witness.denominator),
                report.violations.to_string(),
                opt_real(upper),
                point_list(report.witness.config.points.iter()),
                coords(&report.witness.config.z),
            ]],
        )?,
    }
    sink.finish()?;
    if report.violations > 0 {
        return Err(CliError::Mismatch(format!(
            "{} of {} trials violate the simplex inequality (max ratio {})",
            report.violations,
            report.trials,
            real(report.max_ratio)
        )));
    }
    if let Some(u) = upper {
        if report.max_ratio > u + BOUND_SLACK {
            return Err(CliError::Mismatch(format!(
                "max ratio {} exceeds the proven constant {}",
                real(report.max_ratio),
                real(u)
            )));
        }
    }
    Ok(())
}

fn kstar(a: KstarArgs) -> Result<(), CliError> {
    let p = &a.problem;
    let (n, q) = (p.n as usize, p.q as usize);
    let opts = SearchOptions {
        restarts: a.restarts as usize,
        iters: a.iters as usize,
        seed: p.seed,
        workers: p.workers.map(|w| w as usize),
    };
    let report = estimate_best_constant(p.kind, n, q, &opts)?;
    let mut sink = Sink::new(&a.out);
    match a.out.format.unwrap_or(Format::Json) {
        Format::Json => sink.json(&report)?,
        Format::Csv => sink.csv(
            &[
                "kind", "n", "q", "restarts", "iters", "seed", "best_ratio", "best_restart",
                "best_start", "proven_lower", "proven_upper", "numerator", "denominator", "points",
                "z",
            ],
            &[vec![
                report.kind.to_string(),
                n.to_string(),
                q.to_string(),
                report.restarts.to_string(),
                report.iters.to_string(),
                report.seed.to_string(),
                real(report.best.ratio),
                report.best_restart.to_string(),
                report.best_start.map(|c| c.to_string()).unwrap_or_default(),
                opt_real(report.proven_bounds.map(|b| b.lower)),
                opt_real(report.proven_bounds.and_then(|b| b.upper)),
                real(report.best.numerator),
                real(report.best.denominator),
                point_list(report.best.config.points.iter()),
                coords(&report.best.config.z),
            ]],
        )?,
    }
    sink.finish()?;
    if let Some(u) = report.proven_bounds.and_then(|b| b.upper) {
        if report.best.ratio > u + BOUND_SLACK {
            return Err(CliError::Mismatch(format!(
                "search exceeded the proven constant: {} > {}",
                real(report.best.ratio),
                real(u)
            )));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ConstructRecord {
    construction: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(flatten)]
    file: PointFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<DistanceKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
}

fn construct_cmd(a: ConstructArgs) -> Result<(), CliError> {
    let (n, q) = (a.n as usize, a.q as usize);
    let config = construct(a.name, n, q, a.epsilon)?;
    let ratio = a.kind.map(|k| simplex_ratio(&config, k)).transpose()?.map(|w| w.ratio);
    let mut sink = Sink::new(&a.out);
    match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => sink.json(&ConstructRecord {
            construction: a.name.to_string(),
            n,
            epsilon: a.epsilon,
            file: PointFile {
                q,
                points: config.points.iter().map(|p| p.coords().to_vec()).collect(),
                z: Some(config.z.coords().to_vec()),
            },
            kind: a.kind,
            ratio,
        })?,
        Format::Csv => {
            let mut meta = format!("# construction={} n={n} q={q}", a.name);
            if let Some(e) = a.epsilon {
                meta.push_str(&format!(" epsilon={}", real(e)));
            }
            sink.line(&meta);
            if let (Some(k), Some(r)) = (a.kind, ratio) {
                sink.line(&format!("# kind={k} ratio={}", real(r)));
            }
            sink.line("# the last row is z");
            let header: Vec<String> = (1..=q).map(|i| format!("x{i}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = config
                .points
                .iter()
                .chain(std::iter::once(&config.z))
                .map(|p| p.coords().iter().map(|&c| real(c)).collect())
                .collect();
            sink.csv(&header, &rows)?;
        }
    }
    sink.finish()
}

fn reproduce(a: ReproduceArgs) -> Result<(), CliError> {
    let mut sink = Sink::new(&a.out);
    let format = a.out.format.unwrap_or(Format::Csv);
    let pass = match a.target {
        Target::Table1 => {
            let t = table1()?;
            match format {
                Format::Json => sink.json(&t)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = t
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.n.to_string(),
                                r.p.to_string(),
                                real(r.lambda),
                                real(r.lower_bound),
                                format!("{:.3}", r.reference),
                                real(r.abs_error),
                                r.pass.to_string(),
                            ]
                        })
                        .collect();
                    sink.csv(&["n", "p", "lambda", "lower_bound", "reference", "abs_error", "pass"], &rows)?;
                    sink.line(&format!("# lambda4_error={}", real(t.lambda4_error)));
                    sink.line(&format!("# lambda6_error={}", real(t.lambda6_error)));
                    sink.line(&format!("# limit={}", real(t.limit)));
                }
            }
            t.pass
        }
        Target::Constants => {
            let c = constants()?;
            match format {
                Format::Json => sink.json(&c)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = c
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.kind.to_string(),
                                r.n.to_string(),
                                r.q.to_string(),
                                r.construction.to_string(),
                                opt_real(r.epsilon),
                                real(r.ratio),
                                real(r.target),
                                r.comparison.name().to_string(),
                                real(r.tolerance),
                                r.pass.to_string(),
                            ]
                        })
                        .collect();
                    sink.csv(
                        &[
                            "kind", "n", "q", "construction", "epsilon", "ratio", "target", "comparison",
                            "tolerance", "pass",
                        ],
                        &rows,
                    )?;
                    sink.line(&format!("# figure4_increasing={}", c.figure4_increasing));
                }
            }
            c.pass
        }
    };
    sink.finish()?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Mismatch("reproduction does not match the reference values".into()))
    }
}
