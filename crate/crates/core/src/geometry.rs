//! Points, norms and the small numeric kernels every distance builds on.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

/// Relative tolerance for collinearity and right-angle decisions.
pub const TAU_GEOM: f64 = 1e-9;

/// Hard cap on bisection steps.
pub const BISECT_MAX_ITERS: usize = 200;

/// A point of ℝ^q with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(usage("a point needs at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(usage("point coordinates must be finite"));
        }
        Ok(Point(coords))
    }

    /// Builds a point from a fixed-size array; panics on non-finite input.
    pub fn from_slice(coords: &[f64]) -> Self {
        Point::new(coords.to_vec()).expect("finite, non-empty coordinates")
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| 0.5 * (a + b)).collect())
    }

    /// `self + s·(other − self)`.
    pub fn lerp(&self, other: &Point, s: f64) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + s * (b - a)).collect())
    }

    pub fn translated(&self, offset: &[f64]) -> Point {
        Point(self.0.iter().zip(offset).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, s: f64) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Point {
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Point(coords)
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

/// The ordered argument tuple (x₁,…,xₙ) of an n-distance. Duplicates are allowed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < 2 {
            return Err(usage(format!(
                "a point set needs at least 2 points, got {}",
                points.len()
            )));
        }
        let dim = points[0].dim();
        if let Some(bad) = points.iter().position(|p| p.dim() != dim) {
            return Err(usage(format!(
                "point {} has dimension {} but point 1 has dimension {}",
                bad + 1,
                points[bad].dim(),
                dim
            )));
        }
        Ok(PointSet { points })
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| Point::new(r.as_ref().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    /// The tuple with its `i`th entry replaced by `z`.
    pub fn replaced(&self, i: usize, z: &Point) -> PointSet {
        let mut points = self.points.clone();
        points[i] = z.clone();
        PointSet { points }
    }

    /// True when every point equals the first one exactly.
    pub fn all_coincident(&self) -> bool {
        self.points.iter().all(|p| p == &self.points[0])
    }

    /// Largest pairwise Euclidean distance; the natural length scale of the set.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0_f64;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.max(euclidean(a, b));
            }
        }
        best
    }

    pub fn centroid(&self) -> Point {
        let dim = self.dim();
        let mut c = vec![0.0; dim];
        for p in &self.points {
            for (acc, x) in c.iter_mut().zip(p.coords()) {
                *acc += x;
            }
        }
        let n = self.points.len() as f64;
        Point(c.into_iter().map(|x| x / n).collect())
    }
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = Error;

    fn try_from(points: Vec<Point>) -> Result<Self> {
        PointSet::new(points)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(ps: PointSet) -> Self {
        ps.points
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    Euclidean,
    Chebyshev,
}

/// A closed ball `B_r[c]`; for the Chebyshev norm this is an axis-aligned cube of edge `2r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
    pub norm: Norm,
}

impl Ball {
    pub fn new(center: Point, radius: f64, norm: Norm) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(usage(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Ball { center, radius, norm })
    }

    /// Whether `p` lies in the open interior, after shrinking the ball by `slack`.
    pub fn strictly_contains(&self, p: &Point, slack: f64) -> bool {
        raw_distance(&self.center, p, self.norm) < self.radius - slack
    }
}

pub(crate) fn euclidean(a: &Point, b: &Point) -> f64 {
    a.0.iter()
        .zip(&b.0)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub(crate) fn squared_euclidean(a: &Point, b: &Point) -> f64 {
    a.0.iter().zip(&b.0).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn chebyshev(a: &Point, b: &Point) -> f64 {
    a.0.iter()
        .zip(&b.0)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn raw_distance(a: &Point, b: &Point, norm: Norm) -> f64 {
    match norm {
        Norm::Euclidean => euclidean(a, b),
        Norm::Chebyshev => chebyshev(a, b),
    }
}

/// ‖a − b‖ in the requested norm.
pub fn distance(a: &Point, b: &Point, norm: Norm) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(usage(format!(
            "dimension mismatch: {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(raw_distance(a, b, norm))
}

/// Symmetric n×n matrix of pairwise distances, row-major.
pub fn pairwise_distances(ps: &PointSet, norm: Norm) -> Vec<Vec<f64>> {
    let n = ps.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = raw_distance(ps.get(i), ps.get(j), norm);
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    Acute,
    Right,
    Obtuse,
    Degenerate,
}

/// Classifies the triangle `abc` by its largest angle.
///
/// Works on sorted side lengths only, so the answer does not depend on the
/// argument order. Collinear (and coincident) vertices are `Degenerate` when
/// twice the area is within `TAU_GEOM` of the largest squared side.
pub fn classify_triangle(a: &Point, b: &Point, c: &Point) -> TriangleKind {
    let mut sq = [
        squared_euclidean(a, b),
        squared_euclidean(b, c),
        squared_euclidean(c, a),
    ];
    sq.sort_by(f64::total_cmp);
    classify_sorted_squares(sq)
}

/// Same as [`classify_triangle`] from squared side lengths sorted ascending.
pub(crate) fn classify_sorted_squares(sq: [f64; 3]) -> TriangleKind {
    let largest = sq[2];
    if largest == 0.0 {
        return TriangleKind::Degenerate;
    }
    // Kahan's stable Heron with sides x ≥ y ≥ z.
    let (x, y, z) = (sq[2].sqrt(), sq[1].sqrt(), sq[0].sqrt());
    let sixteen_area_sq = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    let twice_area = 0.5 * sixteen_area_sq.max(0.0).sqrt();
    if twice_area <= TAU_GEOM * largest {
        return TriangleKind::Degenerate;
    }
    let excess = largest - (sq[0] + sq[1]);
    if excess.abs() <= TAU_GEOM * largest {
        TriangleKind::Right
    } else if excess > 0.0 {
        TriangleKind::Obtuse
    } else {
        TriangleKind::Acute
    }
}

/// Chebyshev polynomial of the first kind, `T_p(x)`, by the three-term recurrence.
pub fn chebyshev_t(p: u32, x: f64) -> f64 {
    match p {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..p {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Bisection on a sign-changing bracket `[lo, hi]`.
///
/// Halves until the bracket is no wider than `tol` (or `BISECT_MAX_ITERS`
/// steps) and returns the midpoint of the final bracket.
pub fn bisect_root<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::Precondition(format!(
            "bracket must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo * fhi < 0.0) {
        return Err(Error::Precondition(format!(
            "no sign change on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}"
        )));
    }
    let lo_negative = flo < 0.0;
    for _ in 0..BISECT_MAX_ITERS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
