//! Graph-based n-distances: minimum spanning tree length and Euclidean
//! Steiner minimal tree length, plus the Fermat point of a triangle.

mod fermat;
mod mst;
mod steiner;

use serde::{Deserialize, Serialize};

use crate::geometry::Point;

pub use fermat::{fermat_point, fermat_stationarity_residual};
pub use mst::{mst_distance, mst_distance_bruteforce, BRUTEFORCE_MAX_POINTS};
pub use steiner::{steiner3_distance, steiner_distance, STEINER_MAX_TERMINALS};

/// A tree embedded in ℝ^q. Edges index into `vertices`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub vertices: Vec<Point>,
    pub edges: Vec<(usize, usize)>,
    pub total_length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteinerResult {
    pub length: f64,
    pub steiner_points: Vec<Point>,
    /// Canonical description of the winning topology.
    pub topology_id: String,
}
