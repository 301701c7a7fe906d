use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classic::{
    cardinality_distance, enclosing_ball_diameter_distance, enclosing_ball_volume_distance,
    line_count_distance, max_gap_distance,
};
use crate::error::{unsupported, usage, Error, Result};
use crate::geometry::PointSet;
use crate::inner_balls::{inner_chebyshev_ball_distance, inner_euclidean_ball_distance};
use crate::trees::{mst_distance, steiner_distance, STEINER_MAX_TERMINALS};

use super::lambda::solve_lambda_n;

/// Every n-distance the lab can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceKind {
    Cardinality,
    MaxGap,
    InnerChebyshev,
    InnerEuclidean,
    Mst,
    Steiner,
    Lines,
    EnclosingDiameter,
    EnclosingArea,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 9] = [
        DistanceKind::Cardinality,
        DistanceKind::MaxGap,
        DistanceKind::InnerChebyshev,
        DistanceKind::InnerEuclidean,
        DistanceKind::Mst,
        DistanceKind::Steiner,
        DistanceKind::Lines,
        DistanceKind::EnclosingDiameter,
        DistanceKind::EnclosingArea,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DistanceKind::Cardinality => "cardinality",
            DistanceKind::MaxGap => "max-gap",
            DistanceKind::InnerChebyshev => "inner-chebyshev",
            DistanceKind::InnerEuclidean => "inner-euclidean",
            DistanceKind::Mst => "mst",
            DistanceKind::Steiner => "steiner",
            DistanceKind::Lines => "lines",
            DistanceKind::EnclosingDiameter => "enclosing-diameter",
            DistanceKind::EnclosingArea => "enclosing-area",
        }
    }

    /// Whether the distance scales with the point set (degree 1 or 2) rather
    /// than being purely combinatorial.
    pub fn is_metric(self) -> bool {
        !matches!(self, DistanceKind::Cardinality | DistanceKind::Lines)
    }

    /// Checks that `(n, q)` is inside the domain the implementation covers.
    pub fn check_applicable(self, n: usize, q: usize) -> Result<()> {
        if n < 2 {
            return Err(usage(format!("n must be at least 2, got {n}")));
        }
        if q < 1 {
            return Err(usage("q must be at least 1"));
        }
        match self {
            DistanceKind::MaxGap if q != 1 => {
                Err(usage(format!("max-gap is defined on the line (q = 1), got q = {q}")))
            }
            DistanceKind::InnerChebyshev if q < 2 => {
                Err(usage("inner-chebyshev needs q >= 2; use max-gap for q = 1"))
            }
            DistanceKind::Lines if q < 2 => Err(usage("lines needs q >= 2")),
            DistanceKind::Steiner if q != 2 || n > STEINER_MAX_TERMINALS => Err(unsupported(
                format!("steiner supports q = 2 and n <= {STEINER_MAX_TERMINALS}, got n = {n}, q = {q}"),
            )),
            DistanceKind::EnclosingDiameter if !(2..=3).contains(&q) => Err(unsupported(format!(
                "enclosing-diameter supports q in {{2, 3}}, got q = {q}"
            ))),
            DistanceKind::EnclosingArea if q != 2 => Err(unsupported(format!(
                "enclosing-area supports q = 2 only, got q = {q}"
            ))),
            // Below n = 3 the area violates the simplex inequality (ratio 2 at n = 2).
            DistanceKind::EnclosingArea if n < 3 => {
                Err(usage(format!("enclosing-area needs n >= 3, got n = {n}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DistanceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = DistanceKind::ALL.iter().map(|k| k.name()).collect();
                usage(format!("unknown distance kind '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

/// Evaluates `kind` on the point tuple.
pub fn evaluate(kind: DistanceKind, ps: &PointSet) -> Result<f64> {
    kind.check_applicable(ps.len(), ps.dim())?;
    match kind {
        DistanceKind::Cardinality => Ok(cardinality_distance(ps)),
        DistanceKind::MaxGap => {
            let xs: Vec<f64> = ps.iter().map(|p| p.coords()[0]).collect();
            max_gap_distance(&xs)
        }
        DistanceKind::InnerChebyshev => Ok(inner_chebyshev_ball_distance(ps)?.value),
        DistanceKind::InnerEuclidean => Ok(inner_euclidean_ball_distance(ps).value),
        DistanceKind::Mst => Ok(mst_distance(ps).total_length),
        DistanceKind::Steiner => Ok(steiner_distance(ps)?.length),
        DistanceKind::Lines => Ok(line_count_distance(ps)),
        DistanceKind::EnclosingDiameter => enclosing_ball_diameter_distance(ps),
        DistanceKind::EnclosingArea => enclosing_ball_volume_distance(ps),
    }
}

/// Known bounds on the best constant K*ₙ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProvenBounds {
    pub lower: f64,
    /// `None` when no upper bound below the trivial one is established.
    pub upper: Option<f64>,
    /// The supremum is not attained (the upper bound is strict or approached only in the limit).
    pub upper_strict: bool,
}

impl ProvenBounds {
    fn exact(value: f64) -> Self {
        ProvenBounds { lower: value, upper: Some(value), upper_strict: false }
    }

    fn supremum(value: f64) -> Self {
        ProvenBounds { lower: value, upper: Some(value), upper_strict: true }
    }

    fn range(lower: f64, upper: f64, upper_strict: bool) -> Self {
        ProvenBounds { lower, upper: Some(upper), upper_strict }
    }
}

/// ρ = √(20 + 2√2) / 7, the best constant of the inner Euclidean 3-distance.
pub fn rho() -> f64 {
    (20.0 + 2.0 * 2f64.sqrt()).sqrt() / 7.0
}

/// Established bounds on K*ₙ for `kind` in dimension `q`, if any.
pub fn proven_bounds(kind: DistanceKind, n: usize, q: usize) -> Option<ProvenBounds> {
    if kind.check_applicable(n, q).is_err() {
        return None;
    }
    let nf = n as f64;
    let standard = 1.0 / (nf - 1.0);
    if n == 2 && kind != DistanceKind::EnclosingArea {
        return Some(ProvenBounds::exact(1.0));
    }
    match kind {
        DistanceKind::Cardinality => Some(ProvenBounds::exact(standard)),
        DistanceKind::MaxGap | DistanceKind::InnerChebyshev => Some(ProvenBounds::exact(2.0 / nf)),
        DistanceKind::InnerEuclidean => {
            if n == 3 {
                Some(ProvenBounds::supremum(rho()))
            } else {
                let lambda = solve_lambda_n(n).ok()?;
                Some(ProvenBounds { lower: lambda.lower_bound, upper: None, upper_strict: false })
            }
        }
        DistanceKind::Mst => match n {
            3 => Some(ProvenBounds::exact(1.0 / 3f64.sqrt())),
            4 => Some(ProvenBounds::range(2f64.sqrt() / 4.0, 0.5, true)),
            _ => Some(ProvenBounds::range(standard, 2.0 / nf, true)),
        },
        DistanceKind::Steiner => match n {
            3 => Some(ProvenBounds::exact(0.5)),
            _ => Some(ProvenBounds::range(standard, 2.0 / nf, true)),
        },
        DistanceKind::Lines => {
            Some(ProvenBounds::range(1.0 / (nf - 2.0 + 2.0 / nf), 1.0 / (nf - 2.0), true))
        }
        DistanceKind::EnclosingDiameter => {
            if q == 2 {
                Some(ProvenBounds::exact(standard))
            } else {
                Some(ProvenBounds { lower: standard, upper: None, upper_strict: false })
            }
        }
        DistanceKind::EnclosingArea => Some(ProvenBounds::exact(1.0 / (nf - 1.5))),
    }
}
