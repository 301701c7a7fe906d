//! Largest empty ("inner") balls spanned by two of the input points.
//!
//! Euclidean: a ball whose diameter has two input points as endpoints and
//! whose open interior holds no input point. Chebyshev: an axis-aligned cube
//! with input points on two opposite faces and an empty open interior. The
//! distance is the diameter (edge length) of the largest such ball.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::geometry::{
    chebyshev, classify_sorted_squares, euclidean, squared_euclidean, Ball, Norm, Point, PointSet,
    TriangleKind,
};

/// Penetration (relative to the ball size) a point needs before it counts as interior.
pub const TAU_IN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InnerBallResult {
    /// Diameter (Euclidean) or edge length (Chebyshev); zero for coincident input.
    pub value: f64,
    /// Indices of the two points on the boundary, `None` when `value` is zero.
    pub witness_pair: Option<(usize, usize)>,
    pub ball: Option<Ball>,
}

impl InnerBallResult {
    fn zero() -> Self {
        InnerBallResult { value: 0.0, witness_pair: None, ball: None }
    }
}

/// Whether the ball with diameter `x_i x_j` has no other point in its open interior.
pub fn is_inner_diameter(ps: &PointSet, i: usize, j: usize) -> bool {
    let (a, b) = (ps.get(i), ps.get(j));
    let len = euclidean(a, b);
    let center = a.midpoint(b);
    let limit = 0.5 * len - TAU_IN * len;
    if limit <= 0.0 {
        return true;
    }
    let limit_sq = limit * limit;
    ps.iter()
        .enumerate()
        .filter(|(m, _)| *m != i && *m != j)
        .all(|(_, x)| squared_euclidean(x, &center) >= limit_sq)
}

/// Candidate pairs with positive length, longest first, ties by index pair.
fn pairs_by_decreasing_length(ps: &PointSet) -> Vec<(f64, usize, usize)> {
    let n = ps.len();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let len = euclidean(ps.get(i), ps.get(j));
            if len > 0.0 {
                pairs.push((len, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    pairs
}

/// Diameter of a largest inner Euclidean ball.
pub fn inner_euclidean_ball_distance(ps: &PointSet) -> InnerBallResult {
    for (len, i, j) in pairs_by_decreasing_length(ps) {
        if is_inner_diameter(ps, i, j) {
            let center = ps.get(i).midpoint(ps.get(j));
            return InnerBallResult {
                value: len,
                witness_pair: Some((i, j)),
                ball: Ball::new(center, 0.5 * len, Norm::Euclidean).ok(),
            };
        }
    }
    InnerBallResult::zero()
}

/// Closed form for three points: the longest side of a right or acute
/// triangle, the median side otherwise (obtuse or collinear).
pub fn inner_euclidean_ball_distance_3(a: &Point, b: &Point, c: &Point) -> f64 {
    let mut sq = [
        squared_euclidean(a, b),
        squared_euclidean(b, c),
        squared_euclidean(c, a),
    ];
    sq.sort_by(f64::total_cmp);
    match classify_sorted_squares(sq) {
        TriangleKind::Acute | TriangleKind::Right => sq[2].sqrt(),
        TriangleKind::Obtuse | TriangleKind::Degenerate => sq[1].sqrt(),
    }
}

/// Edge length of a largest inner Chebyshev ball (cube). Requires q ≥ 2.
pub fn inner_chebyshev_ball_distance(ps: &PointSet) -> Result<InnerBallResult> {
    let q = ps.dim();
    if q < 2 {
        return Err(usage(
            "inner Chebyshev ball needs q >= 2; use max_gap_distance for points on a line",
        ));
    }
    let n = ps.len();
    let mut candidates = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (ps.get(i), ps.get(j));
            let len = chebyshev(a, b);
            if len == 0.0 {
                continue;
            }
            for k in 0..q {
                if (a.coords()[k] - b.coords()[k]).abs() == len {
                    candidates.push((len, i, j, k));
                }
            }
        }
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2, a.3).cmp(&(b.1, b.2, b.3))));

    for (len, i, j, k) in candidates {
        if let Some(center) = chebyshev_cube_center(ps, i, j, k, len) {
            return Ok(InnerBallResult {
                value: len,
                witness_pair: Some((i, j)),
                ball: Ball::new(center, 0.5 * len, Norm::Chebyshev).ok(),
            });
        }
    }
    Ok(InnerBallResult::zero())
}

/// Lexicographically smallest center of an empty cube of edge `len` with
/// `x_i` and `x_j` on the two faces orthogonal to axis `k`, if one exists.
///
/// The feasible centers form a box minus finitely many open boxes, so it is
/// enough to test the vertices of the grid spanned by all box endpoints.
fn chebyshev_cube_center(ps: &PointSet, i: usize, j: usize, k: usize, len: f64) -> Option<Point> {
    let q = ps.dim();
    let (a, b) = (ps.get(i).coords(), ps.get(j).coords());
    let half = 0.5 * len;
    let shrunk = half - TAU_IN * len;
    let ck = 0.5 * (a[k] + b[k]);
    let free: Vec<usize> = (0..q).filter(|&t| t != k).collect();

    let bounds: Vec<(f64, f64)> = free
        .iter()
        .map(|&t| (a[t].max(b[t]) - half, a[t].min(b[t]) + half))
        .collect();

    // Open boxes (in the free coordinates) of points that sit strictly inside
    // along axis k, kept only when they meet the admissible region.
    let boxes: Vec<Vec<(f64, f64)>> = ps
        .iter()
        .enumerate()
        .filter(|(m, _)| *m != i && *m != j)
        .map(|(_, x)| x.coords())
        .filter(|x| shrunk > 0.0 && (x[k] - ck).abs() < shrunk)
        .map(|x| free.iter().map(|&t| (x[t] - shrunk, x[t] + shrunk)).collect::<Vec<_>>())
        .filter(|bx: &Vec<(f64, f64)>| {
            bx.iter().zip(&bounds).all(|(&(blo, bhi), &(lo, hi))| blo < hi && bhi > lo)
        })
        .collect();

    let grids: Vec<Vec<f64>> = bounds
        .iter()
        .enumerate()
        .map(|(axis, &(lo, hi))| {
            let mut g = vec![lo, hi];
            for bx in &boxes {
                let (blo, bhi) = bx[axis];
                for v in [blo, bhi] {
                    if v > lo && v < hi {
                        g.push(v);
                    }
                }
            }
            g.sort_by(f64::total_cmp);
            g.dedup();
            g
        })
        .collect();

    let blocked = |c: &[f64]| {
        boxes
            .iter()
            .any(|bx| bx.iter().zip(c).all(|(&(blo, bhi), &ct)| blo < ct && ct < bhi))
    };

    // Odometer over the grid, first free axis most significant.
    let mut idx = vec![0usize; free.len()];
    let mut c: Vec<f64> = grids.iter().map(|g| g[0]).collect();
    loop {
        if !blocked(&c) {
            let mut center = vec![0.0; q];
            center[k] = ck;
            for (&t, &v) in free.iter().zip(&c) {
                center[t] = v;
            }
            return Some(Point::from_vec_unchecked(center));
        }
        let mut axis = free.len();
        loop {
            if axis == 0 {
                return None;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < grids[axis].len() {
                c[axis] = grids[axis][idx[axis]];
                break;
            }
            idx[axis] = 0;
            c[axis] = grids[axis][0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn set(rows: &[[f64; 2]]) -> PointSet {
        PointSet::from_rows(rows).unwrap()
    }

    #[test]
    fn figure2_points() {
        let ps = set(&[[0.7, 2.3], [1.0, 0.5], [2.5, 2.0], [3.5, 2.0], [5.0, 1.0]]);
        let r = inner_euclidean_ball_distance(&ps);
        assert!((r.value - 1.5 * SQRT_2).abs() < 1e-12);
        assert_eq!(r.witness_pair, Some((1, 2)));
        let ball = r.ball.unwrap();
        assert!(ps.iter().all(|x| !ball.strictly_contains(x, TAU_IN * r.value)));
    }

    #[test]
    fn coincident_points_give_zero() {
        let ps = set(&[[1.0, 1.0]; 4]);
        assert_eq!(inner_euclidean_ball_distance(&ps).value, 0.0);
        let r = inner_chebyshev_ball_distance(&ps).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.witness_pair.is_none() && r.ball.is_none());
    }

    #[test]
    fn collinear_middle_point_blocks_outer_pair() {
        let ps = set(&[[-1.0, 0.0], [1.0, 0.0], [0.0, 0.0]]);
        let r = inner_euclidean_ball_distance(&ps);
        assert_eq!(r.value, 1.0);
        assert!(matches!(r.witness_pair, Some((0, 2)) | Some((1, 2))));
        assert!(!is_inner_diameter(&ps, 0, 1));
    }

    #[test]
    fn three_point_closed_form() {
        let p = |x: f64, y: f64| Point::from_slice(&[x, y]);
        let h = 3f64.sqrt() / 2.0;
        assert!((inner_euclidean_ball_distance_3(&p(0.0, 0.0), &p(1.0, 0.0), &p(0.5, h)) - 1.0).abs() < 1e-15);
        assert!(
            (inner_euclidean_ball_distance_3(&p(0.0, 0.0), &p(4.0, 0.0), &p(1.0, 1.0)) - 10f64.sqrt()).abs()
                < 1e-15
        );
        let s = SQRT_2 / 2.0;
        assert!((inner_euclidean_ball_distance_3(&p(-1.0, 0.0), &p(1.0, 0.0), &p(s, s)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn figure1_points() {
        let ps = set(&[[0.5, 2.0], [1.5, 3.0], [3.5, 2.5], [2.0, 1.6], [4.5, 1.0]]);
        let r = inner_chebyshev_ball_distance(&ps).unwrap();
        assert!((r.value - 2.5).abs() < 1e-15);
        assert_eq!(r.witness_pair, Some((3, 4)));
        let ball = r.ball.unwrap();
        assert_eq!(ball.norm, Norm::Chebyshev);
        assert!((ball.center.coords()[0] - 3.25).abs() < 1e-15);
        // Smallest feasible center height: x4 on the top face.
        assert!((ball.center.coords()[1] - 0.35).abs() < 1e-12);
        assert!(ps.iter().all(|x| !ball.strictly_contains(x, TAU_IN * r.value)));

        // The square drawn in the figure, [2, 4.5] x [0, 2.5], is also empty.
        let drawn = Ball::new(Point::from_slice(&[3.25, 1.25]), 1.25, Norm::Chebyshev).unwrap();
        assert!(ps.iter().all(|x| !drawn.strictly_contains(x, 1e-12)));
    }

    #[test]
    fn chebyshev_two_points_is_chebyshev_distance() {
        let ps = set(&[[0.0, 0.0], [1.0, 0.0]]);
        assert_eq!(inner_chebyshev_ball_distance(&ps).unwrap().value, 1.0);
        let ps = set(&[[0.0, 0.0], [1.0, -3.0]]);
        assert_eq!(inner_chebyshev_ball_distance(&ps).unwrap().value, 3.0);
    }

    #[test]
    fn chebyshev_midpoint_replacement() {
        let ps = set(&[[0.0, 0.0], [1.0, 0.0], [1.0, 0.0]]);
        assert_eq!(inner_chebyshev_ball_distance(&ps).unwrap().value, 1.0);
        // The square [0,1]×[0,1] keeps the midpoint on its boundary.
        let ps = set(&[[0.0, 0.0], [1.0, 0.0], [0.5, 0.0]]);
        assert_eq!(inner_chebyshev_ball_distance(&ps).unwrap().value, 1.0);
        // On the diagonal the square is pinned and the midpoint blocks it.
        let ps = set(&[[0.0, 0.0], [1.0, 1.0], [0.5, 0.5]]);
        assert_eq!(inner_chebyshev_ball_distance(&ps).unwrap().value, 0.5);
    }

    #[test]
    fn chebyshev_rejects_q1() {
        let ps = PointSet::from_rows(&[[0.0], [1.0]]).unwrap();
        assert!(matches!(
            inner_chebyshev_ball_distance(&ps),
            Err(crate::Error::Usage(_))
        ));
    }

    #[test]
    fn chebyshev_three_dimensional_grid_search() {
        // The pair along x is blocked unless the cube slides in y and z.
        let ps = PointSet::from_rows(&[
            [0.0, 0.0, 0.0],
            [2.0, 0.0, 0.0],
            [1.0, 0.9, 0.0],
            [1.0, -0.9, 0.0],
            [1.0, 0.0, 0.9],
        ])
        .unwrap();
        let r = inner_chebyshev_ball_distance(&ps).unwrap();
        assert_eq!(r.witness_pair, Some((0, 1)));
        assert_eq!(r.value, 2.0);
        let ball = r.ball.unwrap();
        assert!(ps.iter().all(|x| !ball.strictly_contains(x, TAU_IN * 2.0)));
        // Only the z = -1 layer escapes the three blockers.
        assert_eq!(ball.center.coords(), &[1.0, -1.0, -1.0]);
    }
}
