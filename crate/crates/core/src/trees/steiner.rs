//! Euclidean Steiner minimal trees for small planar terminal sets.
//!
//! A Steiner minimal tree splits at its terminals into full Steiner trees,
//! each of which is fixed by its topology through Melzak's construction.
//! Every terminal subset therefore gets its shortest valid full tree, and the
//! cheapest spanning union of such components and plain edges is found by
//! branch and bound.

use std::rc::Rc;

use crate::error::{unsupported, Result};
use crate::geometry::{euclidean, Point, PointSet};

use super::{fermat_point, SteinerResult};

/// Largest terminal count handled by [`steiner_distance`].
pub const STEINER_MAX_TERMINALS: usize = 7;

/// Steiner points closer than this (relative to the terminal diameter) to a
/// neighbour make a full tree degenerate; it is then covered by smaller components.
const POSITION_TOL: f64 = 1e-9;
/// Relative slack for the 60° wedge test of Melzak's construction.
const ANGLE_TOL: f64 = 1e-10;
/// Lengths closer than this (relative) are tied and ordered by topology id.
const TIE_TOL: f64 = 1e-12;

/// Steiner tree of three terminals: a star at the Fermat point, or a path
/// when the Fermat point is a terminal.
pub fn steiner3_distance(a: &Point, b: &Point, c: &Point) -> SteinerResult {
    let f = fermat_point(a, b, c);
    let length = euclidean(a, &f) + euclidean(b, &f) + euclidean(c, &f);
    match [a, b, c].iter().position(|t| **t == f) {
        Some(k) => SteinerResult {
            length,
            steiner_points: Vec::new(),
            topology_id: format!("path@{k}"),
        },
        None => SteinerResult {
            length,
            steiner_points: vec![f],
            topology_id: "star".to_string(),
        },
    }
}

/// Length of the Euclidean Steiner minimal tree on planar terminals, n ≤ 7.
pub fn steiner_distance(ps: &PointSet) -> Result<SteinerResult> {
    if ps.dim() != 2 {
        return Err(unsupported(format!(
            "Steiner trees are implemented for q = 2 only, got q = {}",
            ps.dim()
        )));
    }
    if ps.len() > STEINER_MAX_TERMINALS {
        return Err(unsupported(format!(
            "Steiner trees are implemented for n <= {STEINER_MAX_TERMINALS}, got n = {}",
            ps.len()
        )));
    }

    // Exact duplicates add nothing; keep the first occurrence of each point.
    let mut distinct: Vec<(usize, &Point)> = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        if !distinct.iter().any(|(_, d)| *d == p) {
            distinct.push((i, p));
        }
    }

    Ok(match distinct.len() {
        1 => SteinerResult {
            length: 0.0,
            steiner_points: Vec::new(),
            topology_id: "point".to_string(),
        },
        2 => SteinerResult {
            length: euclidean(distinct[0].1, distinct[1].1),
            steiner_points: Vec::new(),
            topology_id: "segment".to_string(),
        },
        3 => {
            let r = steiner3_distance(distinct[0].1, distinct[1].1, distinct[2].1);
            let topology_id = match r.topology_id.strip_prefix("path@") {
                Some(k) => format!("path@{}", distinct[k.parse::<usize>().unwrap()].0),
                None => r.topology_id,
            };
            SteinerResult { topology_id, ..r }
        }
        _ => {
            let labels: Vec<usize> = distinct.iter().map(|(i, _)| *i).collect();
            let terms: Vec<[f64; 2]> = distinct
                .iter()
                .map(|(_, p)| [p.coords()[0], p.coords()[1]])
                .collect();
            concatenated_smt(&terms, &labels)
        }
    })
}

/// Rooted binary tree over terminal indices; a join hides one Steiner point.
enum Shape {
    Leaf(usize),
    Join(Box<Shape>, Box<Shape>),
}

/// Every rooted binary tree (children unordered) whose leaves are `leaves`.
fn shapes(leaves: &[usize]) -> Vec<Shape> {
    if leaves.len() == 1 {
        return vec![Shape::Leaf(leaves[0])];
    }
    let rest = &leaves[1..];
    let mut out = Vec::new();
    // The side holding leaves[0] takes any proper subset of the rest.
    for mask in 0..(1u32 << rest.len()) - 1 {
        let mut a = vec![leaves[0]];
        let mut b = Vec::new();
        for (bit, &l) in rest.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                a.push(l);
            } else {
                b.push(l);
            }
        }
        let sb = shapes(&b);
        for x in shapes(&a) {
            for y in &sb {
                out.push(Shape::Join(Box::new(clone_shape(&x)), Box::new(clone_shape(y))));
            }
        }
    }
    out
}

fn clone_shape(s: &Shape) -> Shape {
    match s {
        Shape::Leaf(i) => Shape::Leaf(*i),
        Shape::Join(a, b) => Shape::Join(Box::new(clone_shape(a)), Box::new(clone_shape(b))),
    }
}

/// A shape with a side chosen for every equilateral point of Melzak's construction.
enum Oriented {
    Leaf(usize),
    Join { e: [f64; 2], a: Rc<Oriented>, b: Rc<Oriented> },
}

impl Oriented {
    fn point(&self, terms: &[[f64; 2]]) -> [f64; 2] {
        match self {
            Oriented::Leaf(i) => terms[*i],
            Oriented::Join { e, .. } => *e,
        }
    }
}

fn equilateral_apex(p: [f64; 2], q: [f64; 2], side: f64) -> [f64; 2] {
    let h = side * 3f64.sqrt() / 2.0;
    let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
    [(p[0] + q[0]) / 2.0 - h * dy, (p[1] + q[1]) / 2.0 + h * dx]
}

fn orientations(shape: &Shape, terms: &[[f64; 2]]) -> Vec<Rc<Oriented>> {
    match shape {
        Shape::Leaf(i) => vec![Rc::new(Oriented::Leaf(*i))],
        Shape::Join(x, y) => {
            let (xs, ys) = (orientations(x, terms), orientations(y, terms));
            let mut out = Vec::with_capacity(2 * xs.len() * ys.len());
            for a in &xs {
                for b in &ys {
                    for side in [1.0, -1.0] {
                        let e = equilateral_apex(a.point(terms), b.point(terms), side);
                        out.push(Rc::new(Oriented::Join { e, a: a.clone(), b: b.clone() }));
                    }
                }
            }
            out
        }
    }
}

fn cross(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn sub(u: [f64; 2], v: [f64; 2]) -> [f64; 2] {
    [u[0] - v[0], u[1] - v[1]]
}

/// Places the Steiner points below `node`, whose parent sits at `parent`.
/// Fails unless every Steiner point lands strictly inside its arc, i.e. the
/// tree is a genuine full Steiner tree. Returns the length of the subtree
/// including the edge to `parent`.
fn realize(
    terms: &[[f64; 2]],
    parent: [f64; 2],
    node: &Oriented,
    tol: f64,
    steiner: &mut Vec<[f64; 2]>,
) -> Option<f64> {
    let Oriented::Join { e, a, b } = node else {
        return Some(dist(parent, node.point(terms)));
    };
    let (ea, eb) = (a.point(terms), b.point(terms));
    let reach = dist(parent, *e);
    if reach <= tol {
        return None;
    }
    let u = [(parent[0] - e[0]) / reach, (parent[1] - e[1]) / reach];
    // The line from e towards the parent must enter the 60° wedge at e.
    let (da, db) = (sub(ea, *e), sub(eb, *e));
    let orient = cross(da, db).signum();
    let (la, lb) = (dist(ea, *e), dist(eb, *e));
    if orient * cross(da, u) <= ANGLE_TOL * la || orient * cross(u, db) <= ANGLE_TOL * lb {
        return None;
    }
    let center = [(ea[0] + eb[0] + e[0]) / 3.0, (ea[1] + eb[1] + e[1]) / 3.0];
    let t = -2.0 * ((e[0] - center[0]) * u[0] + (e[1] - center[1]) * u[1]);
    if t >= reach - tol {
        return None;
    }
    let s = [e[0] + t * u[0], e[1] + t * u[1]];
    steiner.push(s);
    let la = realize(terms, s, a, tol, steiner)?;
    let lb = realize(terms, s, b, tol, steiner)?;
    Some(dist(parent, s) + la + lb)
}

fn shape_id(shape: &Shape, labels: &[usize]) -> String {
    match shape {
        Shape::Leaf(i) => labels[*i].to_string(),
        Shape::Join(a, b) => format!("({},{})", shape_id(a, labels), shape_id(b, labels)),
    }
}

/// Full Steiner tree on a subset of the terminals.
struct Component {
    members: Vec<usize>,
    length: f64,
    steiner: Vec<[f64; 2]>,
    id: String,
}

fn subset_mst(terms: &[[f64; 2]], members: &[usize]) -> f64 {
    let m = members.len();
    let mut in_tree = vec![false; m];
    let mut best = vec![f64::INFINITY; m];
    best[0] = 0.0;
    let mut total = 0.0;
    for _ in 0..m {
        let k = (0..m)
            .filter(|&k| !in_tree[k])
            .min_by(|&x, &y| best[x].total_cmp(&best[y]))
            .expect("vertex left");
        in_tree[k] = true;
        total += best[k];
        for j in 0..m {
            if !in_tree[j] {
                best[j] = best[j].min(dist(terms[members[k]], terms[members[j]]));
            }
        }
    }
    total
}

/// Shortest full Steiner tree on `members`, kept only when it beats their MST.
fn full_component(terms: &[[f64; 2]], labels: &[usize], members: &[usize], scale: f64) -> Option<Component> {
    let tol = POSITION_TOL * scale;
    let root = terms[members[0]];
    let mut best: Option<Component> = None;
    for shape in shapes(&members[1..]) {
        for node in orientations(&shape, terms) {
            let mut steiner = Vec::with_capacity(members.len() - 2);
            let Some(length) = realize(terms, root, &node, tol, &mut steiner) else { continue };
            if best.as_ref().is_none_or(|b| length < b.length) {
                let id = format!("({},{})", labels[members[0]], shape_id(&shape, labels));
                best = Some(Component { members: members.to_vec(), length, steiner, id });
            }
        }
    }
    best.filter(|c| c.length < subset_mst(terms, members) - TIE_TOL * scale)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&self, mut x: usize) -> usize {
        while self.0[x] != x {
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = (rx.min(ry), rx.max(ry));
        self.0[hi] = lo;
        true
    }
}

struct Concatenation<'a> {
    labels: &'a [usize],
    components: Vec<Component>,
    /// Terminal pairs by increasing length, ties by index.
    edges: Vec<(f64, usize, usize)>,
    scale: f64,
    best: Option<(f64, String, Vec<usize>)>,
}

impl Concatenation<'_> {
    /// Chooses components from `next` on; the remaining gaps are bridged by
    /// Kruskal over terminal pairs.
    fn search(&mut self, next: usize, uf: &UnionFind, chosen: &mut Vec<usize>, length: f64) {
        let bound = self.best.as_ref().map_or(f64::INFINITY, |b| b.0);
        if length > bound + TIE_TOL * self.scale {
            return;
        }
        self.complete(uf, chosen, length);
        for c in next..self.components.len() {
            let mut uf2 = UnionFind(uf.0.clone());
            let members = &self.components[c].members;
            if members.windows(2).all(|w| uf2.union(w[0], w[1])) {
                chosen.push(c);
                let extra = self.components[c].length;
                self.search(c + 1, &uf2, chosen, length + extra);
                chosen.pop();
            }
        }
    }

    fn complete(&mut self, uf: &UnionFind, chosen: &[usize], mut length: f64) {
        let mut uf = UnionFind(uf.0.clone());
        let mut parts: Vec<String> = chosen.iter().map(|&c| self.components[c].id.clone()).collect();
        for &(w, i, j) in &self.edges {
            if uf.union(i, j) {
                length += w;
                let (a, b) = (self.labels[i].min(self.labels[j]), self.labels[i].max(self.labels[j]));
                parts.push(format!("{a}-{b}"));
            }
        }
        parts.sort();
        let id = if chosen.is_empty() { "mst".to_string() } else { format!("steiner[{}]", parts.join("+")) };
        let better = match &self.best {
            None => true,
            Some((b, bid, _)) => {
                length < b - TIE_TOL * self.scale
                    || (length <= b + TIE_TOL * self.scale && id < *bid)
            }
        };
        if better {
            self.best = Some((length, id, chosen.to_vec()));
        }
    }
}

/// Steiner minimal tree of at least four distinct planar terminals as the
/// cheapest union of full Steiner trees and plain edges that spans them.
fn concatenated_smt(terms: &[[f64; 2]], labels: &[usize]) -> SteinerResult {
    let m = terms.len();
    let mut scale = 0.0_f64;
    let mut edges = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let d = dist(terms[i], terms[j]);
            scale = scale.max(d);
            edges.push((d, i, j));
        }
    }
    edges.sort_by(|x, y| x.0.total_cmp(&y.0).then((x.1, x.2).cmp(&(y.1, y.2))));

    let mut components = Vec::new();
    for mask in 1u32..(1 << m) {
        if mask.count_ones() < 3 {
            continue;
        }
        let members: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        if let Some(c) = full_component(terms, labels, &members, scale) {
            components.push(c);
        }
    }
    // Short components first so the bound tightens early.
    components.sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| x.id.cmp(&y.id)));

    let mut search = Concatenation { labels, components, edges, scale, best: None };
    search.search(0, &UnionFind((0..m).collect()), &mut Vec::new(), 0.0);
    let (length, topology_id, chosen) = search.best.take().expect("the MST is always a candidate");
    let steiner_points = chosen
        .iter()
        .flat_map(|&c| search.components[c].steiner.iter())
        .map(|s| Point::from_vec_unchecked(s.to_vec()))
        .collect();
    SteinerResult { length, steiner_points, topology_id }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}
