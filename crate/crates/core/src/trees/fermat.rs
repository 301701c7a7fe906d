use std::f64::consts::PI;

use crate::geometry::{euclidean, squared_euclidean, Point, TAU_GEOM};

const WEISZFELD_MAX_ITERS: usize = 10_000;
const WEISZFELD_STEP_TOL: f64 = 1e-13;
const WEIGHT_REGULARIZATION: f64 = 1e-12;

/// The point minimizing the summed distance to `a`, `b` and `c`.
///
/// A vertex whose angle is at least 2π/3 (or that coincides with another
/// vertex) is its own Fermat point. Otherwise the interior point comes from
/// its barycentric closed form, polished by Weiszfeld iteration.
pub fn fermat_point(a: &Point, b: &Point, c: &Point) -> Point {
    let verts = [a, b, c];
    let scale = euclidean(a, b).max(euclidean(b, c)).max(euclidean(c, a));
    if scale == 0.0 {
        return a.clone();
    }
    for k in 0..3 {
        let (u, v) = (verts[(k + 1) % 3], verts[(k + 2) % 3]);
        if verts[k] == u || verts[k] == v {
            return verts[k].clone();
        }
    }

    let threshold = (2.0 * PI / 3.0 - TAU_GEOM).cos();
    let mut widest: Option<(usize, f64)> = None;
    for k in 0..3 {
        let cosine = vertex_cosine(verts[k], verts[(k + 1) % 3], verts[(k + 2) % 3]);
        if cosine <= threshold && widest.is_none_or(|(_, best)| cosine < best) {
            widest = Some((k, cosine));
        }
    }
    if let Some((k, _)) = widest {
        return verts[k].clone();
    }

    let start = barycentric_fermat(&verts);
    weiszfeld(&verts, start, scale)
}

/// Barycentrics a⁴ − 2(b² − c²)² + a²(b² + c² + 4√3Δ) and cyclic.
fn barycentric_fermat(verts: &[&Point; 3]) -> Vec<f64> {
    let sq = [
        squared_euclidean(verts[1], verts[2]),
        squared_euclidean(verts[2], verts[0]),
        squared_euclidean(verts[0], verts[1]),
    ];
    let mut sides = [sq[0].sqrt(), sq[1].sqrt(), sq[2].sqrt()];
    sides.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = sides;
    // Kahan's stable Heron formula.
    let area = 0.25 * ((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))).max(0.0).sqrt();
    let t = 4.0 * 3f64.sqrt() * area;
    let w: Vec<f64> = (0..3)
        .map(|k| {
            let (a2, b2, c2) = (sq[k], sq[(k + 1) % 3], sq[(k + 2) % 3]);
            a2 * a2 - 2.0 * (b2 - c2) * (b2 - c2) + a2 * (b2 + c2 + t)
        })
        .collect();
    let total: f64 = w.iter().sum();
    (0..verts[0].dim())
        .map(|d| (0..3).map(|k| w[k] * verts[k].coords()[d]).sum::<f64>() / total)
        .collect()
}

fn vertex_cosine(at: &Point, p: &Point, q: &Point) -> f64 {
    let u: Vec<f64> = p.coords().iter().zip(at.coords()).map(|(x, y)| x - y).collect();
    let v: Vec<f64> = q.coords().iter().zip(at.coords()).map(|(x, y)| x - y).collect();
    let dot: f64 = u.iter().zip(&v).map(|(x, y)| x * y).sum();
    let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (dot / (nu * nv)).clamp(-1.0, 1.0)
}

fn weiszfeld(verts: &[&Point; 3], mut x: Vec<f64>, scale: f64) -> Point {
    let dim = verts[0].dim();
    let eps = WEIGHT_REGULARIZATION * scale;
    for _ in 0..WEISZFELD_MAX_ITERS {
        let mut num = vec![0.0; dim];
        let mut den = 0.0;
        for p in verts {
            let d = p
                .coords()
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let w = 1.0 / d.max(eps);
            den += w;
            for (acc, a) in num.iter_mut().zip(p.coords()) {
                *acc += w * a;
            }
        }
        let next: Vec<f64> = num.into_iter().map(|v| v / den).collect();
        let step = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        x = next;
        if step < WEISZFELD_STEP_TOL * scale {
            break;
        }
    }
    Point::from_vec_unchecked(x)
}

/// Norm of the sum of unit vectors from `f` towards the three vertices.
/// Zero exactly at an interior Fermat point.
pub fn fermat_stationarity_residual(a: &Point, b: &Point, c: &Point, f: &Point) -> f64 {
    let dim = f.dim();
    let mut g = vec![0.0; dim];
    for p in [a, b, c] {
        let d = euclidean(p, f);
        if d > 0.0 {
            for (acc, (x, y)) in g.iter_mut().zip(p.coords().iter().zip(f.coords())) {
                *acc += (x - y) / d;
            }
        }
    }
    g.iter().map(|x| x * x).sum::<f64>().sqrt()
}
