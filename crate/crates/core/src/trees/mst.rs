use crate::error::{usage, Result};
use crate::geometry::{euclidean, PointSet};

use super::Tree;

/// Largest input accepted by [`mst_distance_bruteforce`].
pub const BRUTEFORCE_MAX_POINTS: usize = 8;

/// Minimum spanning tree of the complete Euclidean graph (Prim, O(n²)).
///
/// Ties pick the lowest vertex index, so the edge list is deterministic.
pub fn mst_distance(ps: &PointSet) -> Tree {
    let n = ps.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut lengths = Vec::with_capacity(n - 1);

    in_tree[0] = true;
    for v in 1..n {
        best[v] = euclidean(ps.get(0), ps.get(v));
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (next == usize::MAX || best[v] < best[next]) {
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push((parent[next], next));
        lengths.push(best[next]);
        for v in 0..n {
            if !in_tree[v] {
                let d = euclidean(ps.get(next), ps.get(v));
                if d < best[v] {
                    best[v] = d;
                    parent[v] = next;
                }
            }
        }
    }

    Tree {
        vertices: ps.points().to_vec(),
        edges,
        total_length: canonical_sum(lengths),
    }
}

/// Sums edge lengths in increasing order, so that equal trees found by
/// different searches report bit-identical totals.
pub(crate) fn canonical_sum(mut lengths: Vec<f64>) -> f64 {
    lengths.sort_by(f64::total_cmp);
    lengths.iter().sum()
}

/// Exhaustive minimum over all labeled spanning trees, via Prüfer sequences.
/// Test oracle only; exponential in n.
pub fn mst_distance_bruteforce(ps: &PointSet) -> Result<f64> {
    let n = ps.len();
    if n > BRUTEFORCE_MAX_POINTS {
        return Err(usage(format!(
            "brute-force spanning tree enumeration supports n <= {BRUTEFORCE_MAX_POINTS}, got {n}"
        )));
    }
    let len: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| euclidean(ps.get(i), ps.get(j))).collect())
        .collect();
    if n == 2 {
        return Ok(len[0][1]);
    }

    let mut seq = vec![0usize; n - 2];
    let mut best = f64::INFINITY;
    loop {
        best = best.min(prufer_tree_length(&seq, n, &len));
        // Next sequence in base n.
        let mut pos = 0;
        loop {
            if pos == seq.len() {
                return Ok(best);
            }
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

fn prufer_tree_length(seq: &[usize], n: usize, len: &[Vec<f64>]) -> f64 {
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut lengths = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always exists");
        lengths.push(len[leaf][v]);
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    lengths.push(len[rest[0]][rest[1]]);
    canonical_sum(lengths)
}
