//! Forests of unknots clasped along edges, realized by round circles.
//!
//! Every vertex becomes a round circle in the plane punctured at the
//! origin, with centers on an integer grid and radii in half-units.
//! Adjacent circles cross twice, others are disjoint, and a circle is
//! annular exactly when it encloses the origin. Circles are oriented
//! counterclockwise and over-strands are chosen so every crossing is
//! positive, which makes each clasp a positive Hopf clasp. The seam is the
//! positive x-axis.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::diagram::{AnnularDiagram, Crossing, SeamEntry};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

const GRID: i32 = 8;
const MAX_RADIUS: i32 = 16; // in half-units
const EPS: f64 = 0.1;
/// Fitting placements explored per vertex before backtracking further up.
const BRANCH: usize = 3;
const RESTARTS: u64 = 8;

/// An undirected forest with some vertices marked annular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedForest {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub annular: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ForestJson {
    edges: Vec<[usize; 2]>,
    annular: Vec<usize>,
    n: usize,
}

impl MarkedForest {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, annular_vertices: &[usize]) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::NotAForest(format!("edge ({u}, {v}) leaves 0..{n}")));
            }
            if !uf.union(u, v) {
                return Err(Error::NotAForest(format!("edge ({u}, {v}) closes a cycle")));
            }
        }
        let mut annular = vec![false; n];
        for &v in annular_vertices {
            *annular.get_mut(v).ok_or_else(|| Error::NotAForest(format!("annular vertex {v} out of range")))? = true;
        }
        Ok(MarkedForest { n, edges, annular })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: ForestJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        MarkedForest::new(j.n, j.edges.iter().map(|e| (e[0], e[1])).collect(), &j.annular)
    }

    pub fn to_json(&self) -> String {
        let j = ForestJson {
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            annular: (0..self.n).filter(|&v| self.annular[v]).collect(),
            n: self.n,
        };
        serde_json::to_string(&j).expect("forest serializes")
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    /// Whether every component has at most one annular vertex.
    pub fn at_most_one_annular_per_tree(&self) -> bool {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut count = vec![0; self.n];
        for v in 0..self.n {
            if self.annular[v] {
                count[uf.find(v)] += 1;
            }
        }
        count.iter().all(|&c| c <= 1)
    }

    /// Vertices in breadth-first order, tree by tree.
    fn placement_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let start = order.len();
            order.push(root);
            let mut k = start;
            while k < order.len() {
                let u = order[k];
                for v in 0..self.n {
                    if !seen[v] && self.adjacent(u, v) {
                        seen[v] = true;
                        order.push(v);
                    }
                }
                k += 1;
            }
        }
        order
    }
}

/// A random forest on `n` vertices: each vertex attaches to an earlier one
/// with probability `edge_prob`; each vertex is annular with probability `annular_prob`.
pub fn random_forest(rng: &mut impl Rng, n: usize, edge_prob: f64, annular_prob: f64) -> MarkedForest {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(edge_prob) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    let annular: Vec<usize> = (0..n).filter(|_| rng.gen_bool(annular_prob)).collect();
    MarkedForest::new(n, edges, &annular).expect("attaching to earlier vertices gives a forest")
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Round {
    cx: f64,
    cy: f64,
    r: f64,
}

type Point = (f64, f64);

impl Round {
    fn center_dist(&self, o: &Round) -> f64 {
        (self.cx - o.cx).hypot(self.cy - o.cy)
    }

    fn meets(&self, o: &Round) -> [Point; 2] {
        let d = self.center_dist(o);
        let a = (self.r * self.r - o.r * o.r + d * d) / (2.0 * d);
        let h = (self.r * self.r - a * a).max(0.0).sqrt();
        let (ux, uy) = ((o.cx - self.cx) / d, (o.cy - self.cy) / d);
        let (mx, my) = (self.cx + a * ux, self.cy + a * uy);
        [(mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)]
    }

    fn encloses_origin(&self) -> bool {
        self.cx.hypot(self.cy) < self.r - EPS
    }

    /// Where the circle meets the positive x-axis, if it encloses the origin.
    fn seam_x(&self) -> f64 {
        self.cx + (self.r * self.r - self.cy * self.cy).sqrt()
    }

    fn clear_of_ray(&self) -> bool {
        if self.cy.abs() > self.r + EPS {
            return true;
        }
        self.cy.abs() < self.r && self.cx + (self.r * self.r - self.cy * self.cy).sqrt() < -EPS
    }

    fn near_boundary(&self, p: Point) -> bool {
        ((p.0 - self.cx).hypot(p.1 - self.cy) - self.r).abs() < EPS
    }

    fn angle(&self, p: Point) -> f64 {
        (p.1 - self.cy).atan2(p.0 - self.cx).rem_euclid(2.0 * PI)
    }

    fn tangent(&self, p: Point) -> Point {
        (-(p.1 - self.cy), p.0 - self.cx)
    }
}

fn on_ray(p: Point) -> bool {
    p.0 > -EPS && p.1.abs() < EPS
}

struct Layout<'a> {
    forest: &'a MarkedForest,
    order: Vec<usize>,
    candidates: Vec<Round>,
    placed: Vec<Option<Round>>,
}

impl Layout<'_> {
    fn fits(&self, v: usize, c: &Round) -> bool {
        if self.forest.annular[v] != c.encloses_origin() {
            return false;
        }
        if !self.forest.annular[v] && (c.cx.hypot(c.cy) < c.r + EPS || !c.clear_of_ray()) {
            return false;
        }
        let mut fresh: Vec<Point> = Vec::new();
        for (u, o) in self.placed.iter().enumerate() {
            let Some(o) = o else { continue };
            let d = c.center_dist(o);
            if self.forest.adjacent(u, v) {
                if d <= (c.r - o.r).abs() + EPS || d >= c.r + o.r - EPS {
                    return false;
                }
                fresh.extend(c.meets(o));
            } else if d <= c.r + o.r + EPS && d >= (c.r - o.r).abs() - EPS {
                return false;
            }
            if self.forest.annular[v] && self.forest.annular[u] && (c.seam_x() - o.seam_x()).abs() < EPS {
                return false;
            }
        }
        if fresh.iter().any(|&p| on_ray(p)) {
            return false;
        }
        // no triple points: old crossings stay off the new circle, new ones off the old circles
        for (a, oa) in self.placed.iter().enumerate() {
            let Some(oa) = oa else { continue };
            for (b, ob) in self.placed.iter().enumerate().skip(a + 1) {
                let Some(ob) = ob else { continue };
                if self.forest.adjacent(a, b) && oa.meets(ob).iter().any(|&p| c.near_boundary(p)) {
                    return false;
                }
            }
        }
        for (u, o) in self.placed.iter().enumerate() {
            let Some(o) = o else { continue };
            if !self.forest.adjacent(u, v) && fresh.iter().any(|&p| o.near_boundary(p)) {
                return false;
            }
        }
        true
    }

    fn search(&mut self, k: usize, rng: &mut StdRng) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let mut idx: Vec<usize> = (0..self.candidates.len()).collect();
        idx.shuffle(rng);
        let mut tried = 0;
        for i in idx {
            let c = self.candidates[i];
            if !self.fits(v, &c) {
                continue;
            }
            self.placed[v] = Some(c);
            if self.search(k + 1, rng) {
                return true;
            }
            self.placed[v] = None;
            tried += 1;
            if tried == BRANCH {
                break;
            }
        }
        false
    }
}

fn candidates() -> Vec<Round> {
    let mut out = Vec::new();
    for half in 1..=MAX_RADIUS {
        for cx in -GRID..=GRID {
            for cy in -GRID..=GRID {
                out.push(Round { cx: cx as f64, cy: cy as f64, r: half as f64 / 2.0 });
            }
        }
    }
    out.sort_by(|a, b| {
        let ka = (a.r, a.cx.hypot(a.cy), a.cx, a.cy);
        let kb = (b.r, b.cx.hypot(b.cy), b.cx, b.cy);
        ka.partial_cmp(&kb).unwrap()
    });
    out
}

/// Seeded randomized search, so layouts are reproducible.
fn place(forest: &MarkedForest) -> Result<Vec<Round>> {
    let mut layout = Layout {
        forest,
        order: forest.placement_order(),
        candidates: candidates(),
        placed: vec![None; forest.n],
    };
    for seed in 0..RESTARTS {
        let mut rng = StdRng::seed_from_u64(seed);
        layout.placed = vec![None; forest.n];
        if layout.search(0, &mut rng) {
            return Ok(layout.placed.into_iter().map(Option::unwrap).collect());
        }
    }
    Err(Error::LayoutFailed)
}

/// The link of a marked forest: one unknot per vertex, positive Hopf
/// clasps along edges, annular vertices winding once around the puncture.
pub fn forest_link(g: &MarkedForest) -> Result<AnnularDiagram> {
    let rounds = place(g)?;

    // crossing points, each tagged with its pair of circles
    let mut points: Vec<(Point, usize, usize)> = Vec::new();
    for &(u, v) in &g.edges {
        for p in rounds[u].meets(&rounds[v]) {
            points.push((p, u, v));
        }
    }

    // arcs: per circle, points sorted by angle; arc k leaves point k
    let mut next_arc = 1u32;
    let mut on_circle: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for (x, &(_, u, v)) in points.iter().enumerate() {
        on_circle[u].push(x);
        on_circle[v].push(x);
    }
    // (circle, point) -> (arc in, arc out)
    let mut arcs_at = std::collections::BTreeMap::new();
    let mut first_arc = vec![0u32; g.n];
    for c in 0..g.n {
        let round = rounds[c];
        on_circle[c].sort_by(|&a, &b| round.angle(points[a].0).partial_cmp(&round.angle(points[b].0)).unwrap());
        let m = on_circle[c].len();
        first_arc[c] = next_arc;
        for k in 0..m {
            let out = next_arc + k as u32;
            let inc = next_arc + ((k + m - 1) % m) as u32;
            arcs_at.insert((c, on_circle[c][k]), (inc, out));
        }
        next_arc += m as u32;
    }

    let mut crossings = Vec::with_capacity(points.len());
    let mut entering = Vec::with_capacity(points.len());
    for (x, &(p, a, b)) in points.iter().enumerate() {
        let (ta, tb) = (rounds[a].tangent(p), rounds[b].tangent(p));
        let a_over = ta.0 * tb.1 - ta.1 * tb.0 > 0.0;
        let (over, under) = if a_over { (a, b) } else { (b, a) };
        let (t_over, t_under) = if a_over { (ta, tb) } else { (tb, ta) };
        let (o_in, o_out) = arcs_at[&(over, x)];
        let (u_in, u_out) = arcs_at[&(under, x)];
        // outward directions of the four slots
        let mut slots = [
            (u_in, (-t_under.0, -t_under.1), true),
            (o_in, (-t_over.0, -t_over.1), true),
            (u_out, t_under, false),
            (o_out, t_over, false),
        ];
        let base = slots[0].1 .1.atan2(slots[0].1 .0);
        let rel = |d: Point| (d.1.atan2(d.0) - base).rem_euclid(2.0 * PI);
        slots.sort_by(|s, t| rel(s.1).partial_cmp(&rel(t.1)).unwrap());
        crossings.push(Crossing::new([slots[0].0, slots[1].0, slots[2].0, slots[3].0], 1));
        entering.push([slots[0].2, slots[1].2, slots[2].2, slots[3].2]);
    }

    let mut free_loops = Vec::new();
    let mut loop_of = vec![None; g.n];
    for c in 0..g.n {
        if on_circle[c].is_empty() {
            loop_of[c] = Some(free_loops.len());
            free_loops.push(g.annular[c] as i8);
        }
    }
    let mut seam: Vec<(f64, SeamEntry)> = Vec::new();
    for c in (0..g.n).filter(|&c| g.annular[c]) {
        let round = rounds[c];
        let xs = round.seam_x();
        let entry = match loop_of[c] {
            Some(i) => SeamEntry::free_loop(i, 1),
            None => {
                let theta = round.angle((xs, 0.0));
                let angles: Vec<f64> = on_circle[c].iter().map(|&x| round.angle(points[x].0)).collect();
                // the arc leaving the last point at or before theta
                let k = angles.iter().rposition(|&a| a <= theta).unwrap_or(angles.len() - 1);
                SeamEntry::arc(first_arc[c] + k as u32, 1)
            }
        };
        seam.push((xs, entry));
    }
    seam.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let seam = seam.into_iter().map(|(_, e)| e).collect();
    AnnularDiagram::from_oriented(crossings, &entering, seam, free_loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles() {
        assert!(matches!(MarkedForest::new(3, vec![(0, 1), (1, 2), (2, 0)], &[]), Err(Error::NotAForest(_))));
        assert!(MarkedForest::from_json(r#"{"edges": [[0,1],[1,0]], "annular": [], "n": 2}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = MarkedForest::new(4, vec![(0, 1), (1, 2)], &[0, 3]).unwrap();
        assert_eq!(MarkedForest::from_json(&f.to_json()).unwrap(), f);
        assert!(f.at_most_one_annular_per_tree());
        let g = MarkedForest::new(2, vec![(0, 1)], &[0, 1]).unwrap();
        assert!(!g.at_most_one_annular_per_tree());
    }

    #[test]
    fn isolated_annular_vertices_give_unlink() {
        let f = MarkedForest::new(3, vec![], &[0, 1, 2]).unwrap();
        let d = forest_link(&f).unwrap();
        assert_eq!(d.n(), 0);
        assert_eq!(d.free_loops(), &[1, 1, 1]);
    }

    #[test]
    fn single_clasp() {
        let f = MarkedForest::new(2, vec![(0, 1)], &[0]).unwrap();
        let d = forest_link(&f).unwrap();
        assert_eq!((d.n(), d.n_plus()), (2, 2));
        assert_eq!(d.seam().len(), 1);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn star_and_path_layouts() {
        let star = MarkedForest::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)], &[1, 2, 3, 4]).unwrap();
        let d = forest_link(&star).unwrap();
        assert_eq!((d.n(), d.n_plus(), d.seam().len()), (8, 8, 4));
        let path = MarkedForest::new(4, vec![(0, 1), (1, 2), (2, 3)], &[0, 1, 2, 3]).unwrap();
        let d = forest_link(&path).unwrap();
        assert_eq!((d.n(), d.seam().len()), (6, 4));
    }
}
