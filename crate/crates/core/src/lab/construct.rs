use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::geometry::{Point, PointSet};

use super::lambda::solve_lambda_n;
use super::ratio::Configuration;

/// Default offset for the three-point inner Euclidean construction.
pub const FIGURE4_EPSILON: f64 = 1e-3;

/// Default outward offset of z in the circle-arc construction. At zero an arc
/// point sits on the boundary of the ball spanned by x₁ and z and leaves it
/// unblocked; the ratio error of the offset is O(ε²).
pub const CIRCLE_ARC_EPSILON: f64 = 1e-6;

/// Named extremal configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// x₁ = 0, x₂ = ⋯ = xₙ = (1,…,1), z their midpoint.
    MidpointCollapse,
    /// x₁ = 0, x₂ = ⋯ = xₙ = z = e₁.
    PointCollapse,
    /// Unit equilateral triangle with z at its centroid.
    EquilateralCentroid,
    /// Regular n-gon with z at its centroid.
    NgonCentroid,
    /// x₁ = (−1,0), x₂ = (1,0), x₃ = (√2/2, √2/2), z = (0, √2 − 1 + ε).
    Figure4,
    /// Doubled points on the upper unit half circle spaced by 2λₙ.
    CircleArc,
    /// n distinct points on a circle with z = x₁.
    CircleLines,
    /// x₁ = 0, x₂ = e₁, x₃ = ⋯ = xₙ = z = e₁/2.
    CollapsePairMidpoint,
}

impl Construction {
    pub const ALL: [Construction; 8] = [
        Construction::MidpointCollapse,
        Construction::PointCollapse,
        Construction::EquilateralCentroid,
        Construction::NgonCentroid,
        Construction::Figure4,
        Construction::CircleArc,
        Construction::CircleLines,
        Construction::CollapsePairMidpoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::MidpointCollapse => "midpoint-collapse",
            Construction::PointCollapse => "point-collapse",
            Construction::EquilateralCentroid => "equilateral-centroid",
            Construction::NgonCentroid => "ngon-centroid",
            Construction::Figure4 => "figure4",
            Construction::CircleArc => "circle-arc",
            Construction::CircleLines => "circle-lines",
            Construction::CollapsePairMidpoint => "collapse-pair-midpoint",
        }
    }

    /// Checks that `(n, q)` suits this construction.
    pub fn check(self, n: usize, q: usize) -> Result<()> {
        let fail = |what: &str| {
            Err(usage(format!("{} requires {what}, got n = {n}, q = {q}", self.name())))
        };
        if n < 2 || q < 1 {
            return fail("n >= 2 and q >= 1");
        }
        match self {
            Construction::MidpointCollapse | Construction::PointCollapse => Ok(()),
            Construction::EquilateralCentroid if n != 3 || q < 2 => fail("n = 3 and q >= 2"),
            Construction::NgonCentroid | Construction::CircleLines if n < 3 || q < 2 => {
                fail("n >= 3 and q >= 2")
            }
            Construction::Figure4 if n != 3 || q != 2 => fail("n = 3 and q = 2"),
            Construction::CircleArc if n < 4 || q != 2 => fail("n >= 4 and q = 2"),
            Construction::CollapsePairMidpoint if n < 3 => fail("n >= 3"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Construction::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Construction::ALL.iter().map(|c| c.name()).collect();
            usage(format!("unknown construction '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

fn padded(coords: &[f64], q: usize) -> Point {
    let mut v = vec![0.0; q];
    v[..coords.len()].copy_from_slice(coords);
    Point::from_vec_unchecked(v)
}

fn unit(q: usize) -> Point {
    padded(&[1.0], q)
}

fn assemble(points: Vec<Point>, z: Point) -> Result<Configuration> {
    Configuration::new(PointSet::new(points)?, z)
}

/// Builds the named configuration in ℝ^q. `epsilon` applies to `figure4`
/// and `circle-arc` only and must be non-negative.
pub fn construct(
    name: Construction,
    n: usize,
    q: usize,
    epsilon: Option<f64>,
) -> Result<Configuration> {
    name.check(n, q)?;
    if let Some(e) = epsilon {
        if !e.is_finite() || e < 0.0 {
            return Err(usage(format!("epsilon must be finite and non-negative, got {e}")));
        }
    }
    match name {
        Construction::MidpointCollapse => {
            let ones = Point::from_vec_unchecked(vec![1.0; q]);
            let mut pts = vec![Point::origin(q)];
            pts.extend(std::iter::repeat_n(ones.clone(), n - 1));
            assemble(pts, ones.scaled(0.5))
        }
        Construction::PointCollapse => {
            let mut pts = vec![Point::origin(q)];
            pts.extend(std::iter::repeat_n(unit(q), n - 1));
            assemble(pts, unit(q))
        }
        Construction::CollapsePairMidpoint => {
            let mid = unit(q).scaled(0.5);
            let mut pts = vec![Point::origin(q), unit(q)];
            pts.extend(std::iter::repeat_n(mid.clone(), n - 2));
            assemble(pts, mid)
        }
        Construction::EquilateralCentroid => {
            let h = 3f64.sqrt() / 2.0;
            let pts = vec![padded(&[0.0, 0.0], q), padded(&[1.0, 0.0], q), padded(&[0.5, h], q)];
            assemble(pts, padded(&[0.5, h / 3.0], q))
        }
        Construction::NgonCentroid => {
            let pts = (0..n)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / n as f64;
                    padded(&[t.cos(), t.sin()], q)
                })
                .collect();
            assemble(pts, Point::origin(q))
        }
        Construction::CircleLines => {
            let pts: Vec<Point> = (0..n)
                .map(|k| {
                    let t = -2.0 * PI * k as f64 / n as f64;
                    padded(&[t.cos(), t.sin()], q)
                })
                .collect();
            let z = pts[0].clone();
            assemble(pts, z)
        }
        Construction::Figure4 => {
            let eps = epsilon.unwrap_or(FIGURE4_EPSILON);
            let s = 2f64.sqrt() / 2.0;
            let pts = vec![
                Point::from_slice(&[-1.0, 0.0]),
                Point::from_slice(&[1.0, 0.0]),
                Point::from_slice(&[s, s]),
            ];
            assemble(pts, Point::from_slice(&[0.0, 2f64.sqrt() - 1.0 + eps]))
        }
        Construction::CircleArc => circle_arc(n, epsilon.unwrap_or(CIRCLE_ARC_EPSILON)),
    }
}

fn circle_arc(n: usize, eps: f64) -> Result<Configuration> {
    let bound = solve_lambda_n(n)?;
    let alpha = 2.0 * bound.lambda.asin();
    let on_circle = |k: usize| {
        let t = PI - k as f64 * alpha;
        Point::from_slice(&[t.cos(), t.sin()])
    };
    let p = bound.p as usize;
    let mut pts = vec![Point::from_slice(&[-1.0, 0.0]), Point::from_slice(&[1.0, 0.0])];
    // x₃ = x₄ at angle π − α, x₅ = x₆ at π − 2α, …, the last group at π − pα.
    for k in 1..=p {
        pts.push(on_circle(k));
        pts.push(on_circle(k));
    }
    if n % 2 == 1 {
        pts.push(on_circle(p));
    }
    debug_assert_eq!(pts.len(), n);

    let mid = pts[1].midpoint(&pts[n - 1]);
    let len = mid.coords().iter().map(|c| c * c).sum::<f64>().sqrt();
    let z = mid.scaled(1.0 + eps / len);
    assemble(pts, z)
}
