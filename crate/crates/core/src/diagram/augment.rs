use super::{AnnularDiagram, Basepoint, Crossing, SeamEntry, Strand};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    /// Between the augmenting circle and an annular strand.
    Augmenting,
    /// A crossing of the original diagram.
    Original,
}

/// A diagram with a basepoint and a two-type crossing partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedDiagram {
    pub diagram: AnnularDiagram,
    pub basepoint: Basepoint,
    pub kinds: Vec<CrossingKind>,
    /// Arcs of the augmenting circle lying between consecutive strands along
    /// its bottom edge, innermost first. Empty unless produced by [`augment`].
    pub gap_arcs: Vec<u32>,
}

impl PointedDiagram {
    pub fn new(diagram: AnnularDiagram, basepoint: Basepoint, kinds: Vec<CrossingKind>) -> Result<Self> {
        match basepoint {
            Basepoint::Arc(a) if diagram.arc_index(a).is_none() => {
                return Err(Error::Malformed(format!("basepoint arc {a} is not in the diagram")))
            }
            Basepoint::Loop(i) if i >= diagram.free_loops().len() => {
                return Err(Error::Malformed(format!("basepoint loop {i} is not in the diagram")))
            }
            _ => {}
        }
        if kinds.len() != diagram.n() {
            return Err(Error::LengthMismatch { expected: diagram.n(), got: kinds.len() });
        }
        Ok(PointedDiagram { diagram, basepoint, kinds, gap_arcs: Vec::new() })
    }

    /// Cube bits of the original crossings.
    pub fn original_mask(&self) -> u32 {
        let n = self.kinds.len();
        self.kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == CrossingKind::Original)
            .fold(0, |m, (c, _)| m | 1 << (n - 1 - c))
    }

    pub fn count(&self, kind: CrossingKind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    /// Negative crossings of the given kind.
    pub fn negative(&self, kind: CrossingKind) -> usize {
        self.kinds.iter().zip(self.diagram.signs()).filter(|(&k, &s)| k == kind && s < 0).count()
    }
}

/// Strand pieces around one pass through the strip enclosed by the
/// augmenting circle: `inner` arrives, `middle` lies in the strip,
/// `outer` leaves.
struct Pass {
    sign: i8,
    inner: u32,
    middle: u32,
    outer: u32,
}

/// Adds an unknot encircling every annular strand, as a thin loop around
/// the seam ray, and forgets the annulus.
///
/// Each annular strand passes over the augmenting circle's top edge and
/// under its bottom edge, so strands running counterclockwise give positive
/// crossings. Crossings are ordered `B0, T0, B1, T1, ...` (bottom and top
/// edge, innermost strand first) followed by the original crossings.
pub fn augment(d: &AnnularDiagram) -> PointedDiagram {
    let mut next_id = d.arc_ids().last().map_or(0, |&a| a + 1);
    let mut fresh = || {
        next_id += 1;
        next_id - 1
    };

    let mut originals: Vec<Crossing> = d.crossings().to_vec();
    let mut orig_entering: Vec<[bool; 4]> = d.entering_table().to_vec();

    let loop_entries = |i: usize| -> Vec<usize> {
        d.seam().iter().enumerate().filter(|(_, e)| e.strand == Strand::Loop(i)).map(|(k, _)| k).collect()
    };

    let mut passes: Vec<Option<Pass>> = d.seam().iter().map(|_| None).collect();
    let mut consumed_loops = vec![false; d.free_loops().len()];
    for (k, e) in d.seam().iter().enumerate() {
        match e.strand {
            Strand::Arc(a) => {
                let ai = d.arc_index(a).unwrap();
                let head = d
                    .arc_ends[ai]
                    .into_iter()
                    .find(|&(c, p)| d.entering(c, p))
                    .expect("every arc has a head");
                let (middle, outer) = (fresh(), fresh());
                originals[head.0].arcs[head.1] = outer;
                passes[k] = Some(Pass { sign: e.sign, inner: a, middle, outer });
            }
            Strand::Loop(i) => {
                if consumed_loops[i] {
                    continue;
                }
                consumed_loops[i] = true;
                let ks = loop_entries(i);
                if ks.len() == 1 {
                    let (middle, rest) = (fresh(), fresh());
                    passes[k] = Some(Pass { sign: e.sign, inner: rest, middle, outer: rest });
                } else {
                    let (m1, m2, x, y) = (fresh(), fresh(), fresh(), fresh());
                    let (k1, k2) = (ks[0], ks[1]);
                    passes[k1] = Some(Pass { sign: d.seam()[k1].sign, inner: y, middle: m1, outer: x });
                    passes[k2] = Some(Pass { sign: d.seam()[k2].sign, inner: x, middle: m2, outer: y });
                }
            }
        }
    }
    let passes: Vec<Pass> = passes.into_iter().map(|p| p.unwrap()).collect();

    let m = passes.len();
    let mut crossings = Vec::with_capacity(2 * m + originals.len());
    let mut entering = Vec::with_capacity(2 * m + originals.len());
    let mut gap_arcs = Vec::new();
    let mut free_loops: Vec<i8> = d
        .free_loops()
        .iter()
        .zip(&consumed_loops)
        .filter(|(_, &used)| !used)
        .map(|(&w, _)| w)
        .collect();
    let basepoint;
    if m == 0 {
        basepoint = Basepoint::Loop(free_loops.len());
        free_loops.push(0);
    } else {
        let c_in = fresh();
        basepoint = Basepoint::Arc(c_in);
        gap_arcs.push(c_in);
        let (mut left_b, mut left_t) = (c_in, c_in);
        for (k, pass) in passes.iter().enumerate() {
            let (right_b, right_t) = if k + 1 == m {
                let c_out = fresh();
                gap_arcs.push(c_out);
                (c_out, c_out)
            } else {
                let b = fresh();
                gap_arcs.push(b);
                (b, fresh())
            };
            // slots: strand below, edge right, strand above, edge left
            let (b_below, b_above, t_below, t_above) = if pass.sign > 0 {
                (pass.inner, pass.middle, pass.middle, pass.outer)
            } else {
                (pass.outer, pass.middle, pass.middle, pass.inner)
            };
            crossings.push(Crossing::new([b_below, right_b, b_above, left_b], 1));
            crossings.push(Crossing::new([t_below, right_t, t_above, left_t], 0));
            if pass.sign > 0 {
                entering.push([true, false, false, true]);
                entering.push([true, true, false, false]);
            } else {
                entering.push([false, false, true, true]);
                entering.push([false, true, true, false]);
            }
            left_b = right_b;
            left_t = right_t;
        }
    }
    crossings.extend(originals);
    entering.append(&mut orig_entering);

    let n_aug = 2 * m;
    let kinds = (0..crossings.len())
        .map(|c| if c < n_aug { CrossingKind::Augmenting } else { CrossingKind::Original })
        .collect();
    let diagram = AnnularDiagram::from_oriented(crossings, &entering, Vec::<SeamEntry>::new(), free_loops)
        .expect("augmentation of a valid diagram is valid");
    PointedDiagram { diagram, basepoint, kinds, gap_arcs }
}
