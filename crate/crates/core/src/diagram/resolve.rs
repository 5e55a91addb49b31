use super::AnnularDiagram;
use crate::error::{Error, Result};

/// A circle of a complete resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    /// Arc ids along the circle, empty for a crossingless loop.
    pub arcs: Vec<u32>,
    /// Absolute winding number around the puncture, 0 or 1.
    pub winding: i32,
    /// Index of the free loop this circle came from, if any.
    pub free_loop: Option<usize>,
}

impl Circle {
    pub fn is_nontrivial(&self) -> bool {
        self.winding != 0
    }
}

/// Circles of a complete resolution, ordered by minimal arc, followed by
/// the free loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub circles: Vec<Circle>,
    arc_circle: Vec<usize>,
}

impl Resolution {
    /// Circle through the given arc index (position in `arc_ids`).
    pub(crate) fn circle_of_arc(&self, a: usize) -> usize {
        self.arc_circle[a]
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.circles.iter().filter(|c| c.is_nontrivial()).count()
    }
}

impl AnnularDiagram {
    /// Resolves every crossing; `smoothing[c]` is 0 or 1.
    pub fn resolve(&self, smoothing: &[u8]) -> Result<Resolution> {
        let n = self.n();
        if smoothing.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: smoothing.len() });
        }
        if smoothing.iter().any(|&s| s > 1) {
            return Err(Error::Malformed("smoothings must be 0 or 1".into()));
        }
        self.resolve_vertex(vertex_of(smoothing))
    }

    /// Resolution at a cube vertex; crossing `c` is bit `n - 1 - c`.
    pub fn resolve_vertex(&self, v: u32) -> Result<Resolution> {
        let mut arc_circle = Vec::new();
        let (walks, windings) = self.trace_vertex(v, &mut arc_circle)?;
        let mut circles: Vec<Circle> = windings
            .into_iter()
            .zip(walks)
            .map(|(w, arcs)| Circle { arcs, winding: w.abs(), free_loop: None })
            .collect();
        for (i, &w) in self.free_loops.iter().enumerate() {
            circles.push(Circle { arcs: Vec::new(), winding: (w as i32).abs(), free_loop: Some(i) });
        }
        Ok(Resolution { circles, arc_circle })
    }

    /// Walks the circles of a resolution, filling `arc_circle` and returning
    /// arc-id sequences with signed windings.
    pub(crate) fn trace_vertex(&self, v: u32, arc_circle: &mut Vec<usize>) -> Result<(Vec<Vec<u32>>, Vec<i32>)> {
        let n = self.n();
        let n_arcs = self.arc_ids.len();
        arc_circle.clear();
        arc_circle.resize(n_arcs, usize::MAX);
        let mut walks = Vec::new();
        let mut windings = Vec::new();
        for start in 0..n_arcs {
            if arc_circle[start] != usize::MAX {
                continue;
            }
            let id = walks.len();
            let mut arcs = Vec::new();
            let mut winding = 0;
            let (mut a, mut toward) = (start, 1usize);
            loop {
                arc_circle[a] = id;
                arcs.push(self.arc_ids[a]);
                winding += if toward == 1 { self.arc_seam[a] } else { -self.arc_seam[a] };
                let (c, p) = self.arc_ends[a][toward];
                let one = (v >> (n - 1 - c)) & 1 == 1;
                let q = self.crossings[c].partner(p, one);
                a = self.slot_arc[c][q];
                toward = 1 - self.end_index(a, (c, q));
                if a == start {
                    break;
                }
            }
            if !(-1..=1).contains(&winding) {
                let vertex = (0..n).map(|c| ((v >> (n - 1 - c)) & 1) as u8).collect();
                return Err(Error::WindingOutOfRange { vertex, winding });
            }
            walks.push(arcs);
            windings.push(winding);
        }
        Ok((walks, windings))
    }
}

/// Cube vertex of a smoothing vector.
pub fn vertex_of(smoothing: &[u8]) -> u32 {
    smoothing.iter().fold(0, |acc, &s| (acc << 1) | s as u32)
}
