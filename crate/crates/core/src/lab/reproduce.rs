use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::construct::{construct, Construction};
use super::kind::{rho, DistanceKind};
use super::lambda::{lambda_bound_table, solve_lambda_n, TABLE1_NS};
use super::ratio::simplex_ratio;

/// Reference three-decimal values of 1/(nλₙ) for [`TABLE1_NS`].
pub const TABLE1_VALUES: [f64; 7] = [0.559, 0.447, 0.455, 0.391, 0.352, 0.331, 0.326];
pub const TABLE1_TOL: f64 = 5e-4;
pub const LAMBDA_CLOSED_FORM_TOL: f64 = 1e-10;
pub const ATTAINED_TOL: f64 = 1e-12;
pub const CIRCLE_ARC_TOL: f64 = 1e-9;
pub const FIGURE4_TOL: f64 = 1e-3;
pub const FIGURE4_EPSILONS: [f64; 3] = [1e-2, 1e-3, 1e-4];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    pub p: u32,
    pub lambda: f64,
    pub lower_bound: f64,
    pub reference: f64,
    pub abs_error: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    /// |λ₄ − 1/√5| and |λ₆ − (√3 − 1)/2|.
    pub lambda4_error: f64,
    pub lambda6_error: f64,
    /// 1/π, the limit of 1/(nλₙ).
    pub limit: f64,
    pub pass: bool,
}

pub fn table1() -> Result<Table1Report> {
    let rows: Vec<Table1Row> = lambda_bound_table(&TABLE1_NS)?
        .into_iter()
        .zip(TABLE1_VALUES)
        .map(|(b, reference)| {
            let abs_error = (b.lower_bound - reference).abs();
            Table1Row {
                n: b.n,
                p: b.p,
                lambda: b.lambda,
                lower_bound: b.lower_bound,
                reference,
                abs_error,
                pass: abs_error < TABLE1_TOL,
            }
        })
        .collect();
    let lambda4_error = (solve_lambda_n(4)?.lambda - 1.0 / 5f64.sqrt()).abs();
    let lambda6_error = (solve_lambda_n(6)?.lambda - (3f64.sqrt() - 1.0) / 2.0).abs();
    let pass = rows.iter().all(|r| r.pass)
        && lambda4_error < LAMBDA_CLOSED_FORM_TOL
        && lambda6_error < LAMBDA_CLOSED_FORM_TOL;
    Ok(Table1Report { rows, lambda4_error, lambda6_error, limit: 1.0 / PI, pass })
}

/// How a construction ratio is compared with its target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    /// |ratio − target| ≤ tolerance.
    Equal,
    /// 0 < target − ratio ≤ tolerance.
    Approach,
    /// ratio < target.
    Below,
    /// ratio > target.
    Above,
}

impl Comparison {
    pub fn name(self) -> &'static str {
        match self {
            Comparison::Equal => "equal",
            Comparison::Approach => "approach",
            Comparison::Below => "below",
            Comparison::Above => "above",
        }
    }

    fn holds(self, ratio: f64, target: f64, tolerance: f64) -> bool {
        match self {
            Comparison::Equal => (ratio - target).abs() <= tolerance,
            Comparison::Approach => target - ratio > 0.0 && target - ratio <= tolerance,
            Comparison::Below => ratio < target,
            Comparison::Above => ratio > target,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub kind: DistanceKind,
    pub n: usize,
    pub q: usize,
    pub construction: Construction,
    pub epsilon: Option<f64>,
    pub ratio: f64,
    pub target: f64,
    pub comparison: Comparison,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub rows: Vec<ConstantRow>,
    /// Figure-4 ratios increase as ε shrinks through [`FIGURE4_EPSILONS`].
    pub figure4_increasing: bool,
    pub pass: bool,
}

struct Spec {
    kind: DistanceKind,
    n: usize,
    q: usize,
    construction: Construction,
    epsilon: Option<f64>,
    target: f64,
    comparison: Comparison,
    tolerance: f64,
}

fn evaluate_row(s: Spec) -> Result<ConstantRow> {
    let config = construct(s.construction, s.n, s.q, s.epsilon)?;
    let ratio = simplex_ratio(&config, s.kind)?.ratio;
    Ok(ConstantRow {
        kind: s.kind,
        n: s.n,
        q: s.q,
        construction: s.construction,
        epsilon: s.epsilon,
        ratio,
        target: s.target,
        comparison: s.comparison,
        tolerance: s.tolerance,
        pass: s.comparison.holds(ratio, s.target, s.tolerance),
    })
}

fn exact(kind: DistanceKind, n: usize, q: usize, construction: Construction, target: f64) -> Spec {
    Spec {
        kind,
        n,
        q,
        construction,
        epsilon: None,
        target,
        comparison: Comparison::Equal,
        tolerance: ATTAINED_TOL,
    }
}

/// Every attained or approached constant, evaluated on its construction.
pub fn constants() -> Result<ConstantsReport> {
    use Construction as C;
    use DistanceKind as K;

    let mut specs = Vec::new();
    for n in 3..=6 {
        let nf = n as f64;
        specs.push(exact(K::InnerChebyshev, n, 2, C::MidpointCollapse, 2.0 / nf));
        specs.push(exact(K::MaxGap, n, 1, C::MidpointCollapse, 2.0 / nf));
    }
    specs.push(exact(K::Mst, 3, 2, C::EquilateralCentroid, 1.0 / 3f64.sqrt()));
    specs.push(exact(K::Mst, 4, 2, C::NgonCentroid, 2f64.sqrt() / 4.0));
    specs.push(exact(K::Steiner, 3, 2, C::EquilateralCentroid, 0.5));
    for n in 3..=6 {
        let standard = 1.0 / (n as f64 - 1.0);
        specs.push(exact(K::Cardinality, n, 2, C::PointCollapse, standard));
        specs.push(exact(K::EnclosingDiameter, n, 2, C::PointCollapse, standard));
        specs.push(exact(K::EnclosingDiameter, n, 3, C::PointCollapse, standard));
        specs.push(exact(K::EnclosingArea, n, 2, C::CollapsePairMidpoint, 1.0 / (n as f64 - 1.5)));
    }
    for n in 4..=8 {
        let nf = n as f64;
        specs.push(exact(K::Lines, n, 2, C::CircleLines, nf / (nf * nf - 2.0 * nf + 2.0)));
    }
    for eps in FIGURE4_EPSILONS {
        specs.push(Spec {
            kind: K::InnerEuclidean,
            n: 3,
            q: 2,
            construction: C::Figure4,
            epsilon: Some(eps),
            target: rho(),
            comparison: Comparison::Approach,
            tolerance: FIGURE4_TOL.max(eps),
        });
    }
    for n in [4, 5, 6, 10] {
        let bound = solve_lambda_n(n)?.lower_bound;
        specs.push(Spec {
            kind: K::InnerEuclidean,
            n,
            q: 2,
            construction: C::CircleArc,
            epsilon: None,
            target: bound,
            comparison: Comparison::Equal,
            tolerance: CIRCLE_ARC_TOL,
        });
        specs.push(Spec {
            kind: K::InnerEuclidean,
            n,
            q: 2,
            construction: C::CircleArc,
            epsilon: None,
            target: 1.0 / PI,
            comparison: Comparison::Above,
            tolerance: 0.0,
        });
    }

    let mut rows = specs.into_iter().map(evaluate_row).collect::<Result<Vec<_>>>()?;

    // ε = 0 puts z on the line through x₁ and x₃ and the supremum is lost.
    let farthest = rows
        .iter()
        .filter(|r| r.construction == C::Figure4)
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    let mut at_zero = evaluate_row(Spec {
        kind: K::InnerEuclidean,
        n: 3,
        q: 2,
        construction: C::Figure4,
        epsilon: Some(0.0),
        target: farthest,
        comparison: Comparison::Below,
        tolerance: 0.0,
    })?;
    at_zero.pass = at_zero.pass && at_zero.ratio < rho();
    rows.push(at_zero);

    let figure4: Vec<f64> = rows
        .iter()
        .filter(|r| r.construction == C::Figure4 && r.epsilon != Some(0.0))
        .map(|r| r.ratio)
        .collect();
    let figure4_increasing = figure4.windows(2).all(|w| w[0] < w[1]);
    let pass = figure4_increasing && rows.iter().all(|r| r.pass);
    Ok(ConstantsReport { rows, figure4_increasing, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_matches() {
        let t = table1().unwrap();
        assert!(t.pass, "{t:?}");
        assert_eq!(t.rows.len(), 7);
    }

    #[test]
    fn constants_match() {
        let c = constants().unwrap();
        if let Some(r) = c.rows.iter().find(|r| !r.pass) {
            panic!("{r:?}");
        }
        assert!(c.figure4_increasing);
        assert!(c.pass);
    }
}
