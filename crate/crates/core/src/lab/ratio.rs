use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::geometry::{Point, PointSet};

use super::kind::{evaluate, DistanceKind};

/// Arguments (x₁,…,xₙ; z) of a simplex ratio.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub points: PointSet,
    pub z: Point,
}

impl Configuration {
    pub fn new(points: PointSet, z: Point) -> Result<Self> {
        if z.dim() != points.dim() {
            return Err(usage(format!(
                "z has dimension {} but the points have dimension {}",
                z.dim(),
                points.dim()
            )));
        }
        Ok(Configuration { points, z })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn q(&self) -> usize {
        self.points.dim()
    }

    /// Applies `f` to every coordinate vector, points first and z last.
    pub fn map_points(&self, mut f: impl FnMut(&Point) -> Point) -> Configuration {
        let points = self.points.iter().map(&mut f).collect();
        Configuration { points: PointSet::new(points).expect("shape preserved"), z: f(&self.z) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioWitness {
    pub config: Configuration,
    pub kind: DistanceKind,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
}

/// Σᵢ d(x₁,…,xₙ) with the ith point replaced by z.
pub fn simplex_sum(config: &Configuration, kind: DistanceKind) -> Result<f64> {
    kind.check_applicable(config.n(), config.q())?;
    let mut sum = 0.0;
    for i in 0..config.n() {
        sum += evaluate(kind, &config.points.replaced(i, &config.z))?;
    }
    Ok(sum)
}

/// d(x₁,…,xₙ) divided by the simplex sum.
pub fn simplex_ratio(config: &Configuration, kind: DistanceKind) -> Result<RatioWitness> {
    if config.points.all_coincident() {
        return Err(usage("the simplex ratio needs at least two distinct points"));
    }
    let numerator = evaluate(kind, &config.points)?;
    let denominator = simplex_sum(config, kind)?;
    if denominator <= 0.0 {
        return Err(Error::Violation { numerator });
    }
    Ok(RatioWitness {
        config: config.clone(),
        kind,
        numerator,
        denominator,
        ratio: numerator / denominator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(rows: &[&[f64]], z: &[f64]) -> Configuration {
        Configuration::new(PointSet::from_rows(rows).unwrap(), Point::from_slice(z)).unwrap()
    }

    #[test]
    fn cardinality_sum() {
        let c = config(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 0.0]], &[1.0, 0.0]);
        assert_eq!(simplex_sum(&c, DistanceKind::Cardinality).unwrap(), 2.0);
        assert_eq!(simplex_ratio(&c, DistanceKind::Cardinality).unwrap().ratio, 0.5);
    }

    #[test]
    fn chebyshev_sum_on_diagonal() {
        let c = config(&[&[0.0, 0.0], &[1.0, 1.0], &[1.0, 1.0]], &[0.5, 0.5]);
        assert_eq!(simplex_sum(&c, DistanceKind::InnerChebyshev).unwrap(), 1.5);
    }

    #[test]
    fn chebyshev_sum_axis_aligned() {
        // The replaced sets keep a face-to-face pair at Chebyshev distance 1
        // whose cube slides off the midpoint.
        let c = config(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 0.0]], &[0.5, 0.0]);
        assert_eq!(simplex_sum(&c, DistanceKind::InnerChebyshev).unwrap(), 2.5);
    }

    #[test]
    fn trivial_sum() {
        let c = config(&[&[2.0, 1.0], &[2.0, 1.0]], &[2.0, 1.0]);
        assert_eq!(simplex_sum(&c, DistanceKind::Mst).unwrap(), 0.0);
        assert!(matches!(simplex_ratio(&c, DistanceKind::Mst), Err(Error::Usage(_))));
    }

    #[test]
    fn mst_equilateral() {
        let h = 3f64.sqrt() / 2.0;
        let c = config(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, h]], &[0.5, h / 3.0]);
        let w = simplex_ratio(&c, DistanceKind::Mst).unwrap();
        assert!((w.ratio - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let w = simplex_ratio(&c, DistanceKind::Steiner).unwrap();
        assert!((w.ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mst_square() {
        let c = config(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]], &[0.5, 0.5]);
        let w = simplex_ratio(&c, DistanceKind::Mst).unwrap();
        assert!((w.numerator - 3.0).abs() < 1e-12);
        assert!((w.ratio - 2f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let ps = PointSet::from_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert!(Configuration::new(ps, Point::from_slice(&[0.0])).is_err());
    }
}
