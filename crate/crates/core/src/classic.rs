//! Combinatorial and enclosing-ball n-distances.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{unsupported, usage, Result};
use crate::geometry::{euclidean, squared_euclidean, Ball, Norm, Point, PointSet, TAU_GEOM};

/// Shuffle seed for the randomized enclosing-ball recursion. Fixed so that
/// support sets are reproducible; the ball itself is unique regardless.
pub const ENCLOSING_SHUFFLE_SEED: u64 = 0x5eed_ba11;

/// Number of distinct points minus one. Distinctness is exact equality.
pub fn cardinality_distance(ps: &PointSet) -> f64 {
    distinct_indices(ps).len() as f64 - 1.0
}

fn distinct_indices(ps: &PointSet) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        if !out.iter().any(|&j| ps.get(j) == p) {
            out.push(i);
        }
    }
    out
}

/// Largest gap between consecutive order statistics of points on a line.
pub fn max_gap_distance(xs: &[f64]) -> Result<f64> {
    if xs.len() < 2 {
        return Err(usage(format!("max gap needs at least 2 values, got {}", xs.len())));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max))
}

/// Number of distinct lines through pairs of distinct points.
///
/// Two pairs span the same line when both points of one pair lie on the
/// line of the other, within `TAU_GEOM` relative to that pair's length.
pub fn line_count_distance(ps: &PointSet) -> f64 {
    let distinct = distinct_indices(ps);
    let mut lines: Vec<(usize, usize)> = Vec::new();
    for (a, &i) in distinct.iter().enumerate() {
        for &j in &distinct[a + 1..] {
            let known = lines.iter().any(|&(u, v)| {
                on_line(ps.get(i), ps.get(u), ps.get(v)) && on_line(ps.get(j), ps.get(u), ps.get(v))
            });
            if !known {
                lines.push((i, j));
            }
        }
    }
    lines.len() as f64
}

fn on_line(p: &Point, a: &Point, b: &Point) -> bool {
    let span = euclidean(a, b);
    let dir: Vec<f64> = b.coords().iter().zip(a.coords()).map(|(x, y)| (x - y) / span).collect();
    let rel: Vec<f64> = p.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
    let along: f64 = rel.iter().zip(&dir).map(|(r, d)| r * d).sum();
    let off = rel
        .iter()
        .zip(&dir)
        .map(|(r, d)| (r - along * d).powi(2))
        .sum::<f64>()
        .sqrt();
    off <= TAU_GEOM * span
}

/// Smallest enclosing Euclidean ball with the indices of its support points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnclosingBall {
    pub ball: Ball,
    pub support: Vec<usize>,
}

/// Minimum-radius ball containing every point (randomized incremental
/// construction, q ∈ {2, 3}). `None` when all points coincide.
pub fn enclosing_ball(ps: &PointSet) -> Result<Option<EnclosingBall>> {
    let q = ps.dim();
    if !(2..=3).contains(&q) {
        return Err(unsupported(format!(
            "smallest enclosing ball is implemented for q in {{2, 3}}, got q = {q}"
        )));
    }
    if ps.all_coincident() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..ps.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(ENCLOSING_SHUFFLE_SEED));
    let scale = ps.diameter();
    let mut support = Vec::with_capacity(q + 1);
    let found = welzl(ps, &order, &mut support, q + 1, scale)
        .expect("non-empty input always yields a ball");
    let mut support = found.support;
    support.sort_unstable();
    let ball = Ball::new(Point::from_vec_unchecked(found.center), found.radius, Norm::Euclidean)?;
    Ok(Some(EnclosingBall { ball, support }))
}

/// Diameter of the smallest enclosing ball; zero for coincident input.
pub fn enclosing_ball_diameter_distance(ps: &PointSet) -> Result<f64> {
    Ok(enclosing_ball(ps)?.map_or(0.0, |e| 2.0 * e.ball.radius))
}

/// Area of the smallest enclosing disk (q = 2, n >= 3).
pub fn enclosing_ball_volume_distance(ps: &PointSet) -> Result<f64> {
    if ps.dim() != 2 {
        return Err(unsupported(format!(
            "enclosing-ball volume is implemented for q = 2 only, got q = {}",
            ps.dim()
        )));
    }
    if ps.len() < 3 {
        return Err(usage(format!("enclosing-ball volume needs n >= 3, got n = {}", ps.len())));
    }
    Ok(enclosing_ball(ps)?.map_or(0.0, |e| PI * e.ball.radius * e.ball.radius))
}

#[derive(Clone, Debug)]
struct SupportedBall {
    center: Vec<f64>,
    radius: f64,
    support: Vec<usize>,
}

impl SupportedBall {
    fn contains(&self, p: &Point, scale: f64) -> bool {
        let d = p
            .coords()
            .iter()
            .zip(&self.center)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        d <= self.radius + 1e-12 * scale
    }
}

fn welzl(
    ps: &PointSet,
    pts: &[usize],
    boundary: &mut Vec<usize>,
    max_boundary: usize,
    scale: f64,
) -> Option<SupportedBall> {
    let mut ball = ball_through(ps, boundary, scale);
    if boundary.len() == max_boundary {
        return ball;
    }
    for (i, &p) in pts.iter().enumerate() {
        let inside = ball.as_ref().is_some_and(|b| b.contains(ps.get(p), scale));
        if !inside {
            boundary.push(p);
            ball = welzl(ps, &pts[..i], boundary, max_boundary, scale);
            boundary.pop();
        }
    }
    ball
}

/// Smallest ball with all of `idx` on its boundary (circumball in their affine hull).
fn ball_through(ps: &PointSet, idx: &[usize], scale: f64) -> Option<SupportedBall> {
    match idx.len() {
        0 => None,
        1 => Some(SupportedBall {
            center: ps.get(idx[0]).coords().to_vec(),
            radius: 0.0,
            support: idx.to_vec(),
        }),
        _ => circumball(ps, idx, scale).or_else(|| widest_pair_ball(ps, idx)),
    }
}

fn circumball(ps: &PointSet, idx: &[usize], scale: f64) -> Option<SupportedBall> {
    let p0 = ps.get(idx[0]).coords();
    let vs: Vec<Vec<f64>> = idx[1..]
        .iter()
        .map(|&i| ps.get(i).coords().iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    let k = vs.len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut m: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut row: Vec<f64> = (0..k).map(|j| dot(&vs[i], &vs[j])).collect();
            row.push(0.5 * dot(&vs[i], &vs[i]));
            row
        })
        .collect();
    // Gaussian elimination with partial pivoting on the Gram system.
    let singular = 1e-12 * scale * scale;
    for col in 0..k {
        let piv = (col..k).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() <= singular {
            return None;
        }
        m.swap(col, piv);
        for row in 0..k {
            if row != col {
                let f = m[row][col] / m[col][col];
                for c in col..=k {
                    m[row][c] -= f * m[col][c];
                }
            }
        }
    }
    let mut center = p0.to_vec();
    for (i, v) in vs.iter().enumerate() {
        let lambda = m[i][k] / m[i][i];
        for (c, x) in center.iter_mut().zip(v) {
            *c += lambda * x;
        }
    }
    let radius = idx
        .iter()
        .map(|&i| {
            ps.get(i)
                .coords()
                .iter()
                .zip(&center)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);
    Some(SupportedBall { center, radius, support: idx.to_vec() })
}

fn widest_pair_ball(ps: &PointSet, idx: &[usize]) -> Option<SupportedBall> {
    let mut best: Option<(f64, usize, usize)> = None;
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            let d = squared_euclidean(ps.get(i), ps.get(j));
            if best.is_none_or(|(bd, _, _)| d > bd) {
                best = Some((d, i, j));
            }
        }
    }
    let (d, i, j) = best?;
    Some(SupportedBall {
        center: ps.get(i).midpoint(ps.get(j)).coords().to_vec(),
        radius: 0.5 * d.sqrt(),
        support: vec![i, j],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn set(rows: &[[f64; 2]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn cardinality_examples() {
        let (a, b) = ([1.0, 2.0], [3.0, 4.0]);
        assert_eq!(cardinality_distance(&set(&[a, a, a])), 0.0);
        assert_eq!(cardinality_distance(&set(&[a, b, a])), 1.0);
        assert_eq!(
            cardinality_distance(&set(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])),
            3.0
        );
    }

    #[test]
    fn max_gap_examples() {
        assert_eq!(max_gap_distance(&[1.0, 2.0, 5.0, 7.0]).unwrap(), 3.0);
        assert_eq!(max_gap_distance(&[7.0, 5.0, 1.0, 2.0]).unwrap(), 3.0);
        assert_eq!(max_gap_distance(&[4.0, 4.0, 4.0]).unwrap(), 0.0);
        assert!(max_gap_distance(&[1.0]).is_err());
    }

    #[test]
    fn line_count_examples() {
        assert_eq!(line_count_distance(&set(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])), 3.0);
        assert_eq!(line_count_distance(&set(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])), 1.0);
        let circle: Vec<[f64; 2]> = (0..5)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
                [t.cos(), t.sin()]
            })
            .collect();
        assert_eq!(line_count_distance(&set(&circle)), 10.0);
        assert_eq!(line_count_distance(&set(&[[1.0, 1.0]; 3])), 0.0);
        // Duplicates do not add lines.
        assert_eq!(line_count_distance(&set(&[[0.0, 0.0], [0.0, 0.0], [1.0, 5.0]])), 1.0);
        // Four points, three of them collinear: 1 + 3 lines.
        let ps = set(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [0.0, 1.0]]);
        assert_eq!(line_count_distance(&ps), 4.0);
    }

    #[test]
    fn enclosing_examples() {
        let e = enclosing_ball(&set(&[[0.0, 0.0], [2.0, 0.0]])).unwrap().unwrap();
        assert_eq!(e.ball.center.coords(), &[1.0, 0.0]);
        assert_eq!(e.ball.radius, 1.0);

        let e = enclosing_ball(&set(&[[0.0, 0.0], [2.0, 0.0], [1.0, 1.0]])).unwrap().unwrap();
        assert!((e.ball.center.coords()[0] - 1.0).abs() < 1e-15);
        assert!(e.ball.center.coords()[1].abs() < 1e-15);
        assert!((e.ball.radius - 1.0).abs() < 1e-15);

        let h = 3f64.sqrt() / 2.0;
        let e = enclosing_ball(&set(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]])).unwrap().unwrap();
        assert!((e.ball.radius - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(e.support, vec![0, 1, 2]);

        assert!(enclosing_ball(&set(&[[3.0, 3.0]; 4])).unwrap().is_none());
    }

    #[test]
    fn enclosing_distances() {
        let sq = set(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert!((enclosing_ball_diameter_distance(&sq).unwrap() - SQRT_2).abs() < 1e-14);
        assert_eq!(enclosing_ball_diameter_distance(&set(&[[0.0, 0.0], [3.0, 4.0]])).unwrap(), 5.0);
        assert!(
            (enclosing_ball_volume_distance(&set(&[[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]])).unwrap()
                - PI)
                .abs()
                < 1e-15
        );
        assert!(enclosing_ball_volume_distance(&set(&[[0.0, 0.0], [2.0, 0.0]])).is_err());
        let h = 3f64.sqrt() / 2.0;
        let tri = set(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]]);
        assert!((enclosing_ball_volume_distance(&tri).unwrap() - PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn enclosing_dimension_limits() {
        let line = PointSet::from_rows(&[[0.0], [1.0]]).unwrap();
        assert!(matches!(enclosing_ball(&line), Err(crate::Error::Unsupported(_))));
        let space = PointSet::from_rows(&[[0.0, 0.0, 0.0], [0.0, 0.0, 2.0], [0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(enclosing_ball_diameter_distance(&space).unwrap(), 2.0);
        assert!(matches!(
            enclosing_ball_volume_distance(&space),
            Err(crate::Error::Unsupported(_))
        ));
    }

    #[test]
    fn enclosing_regular_tetrahedron() {
        let ps = PointSet::from_rows(&[
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
            [0.1, 0.2, -0.3],
        ])
        .unwrap();
        let e = enclosing_ball(&ps).unwrap().unwrap();
        assert!((e.ball.radius - 3f64.sqrt()).abs() < 1e-14);
        assert_eq!(e.support, vec![0, 1, 2, 3]);
    }
}
