//! Planar diagrams of links in the thickened annulus.
//!
//! A crossing is four arc ids listed counterclockwise around the crossing.
//! `over` selects which opposite pair carries the over-strand: pair
//! `(over, over + 2)`. With `over = 1` this is the usual PD convention
//! where slot 0 is an under-strand end.
//!
//! Winding data comes from the seam, a ray from the puncture to infinity.
//! Each seam entry names a strand crossing the ray and the direction in
//! which the oriented strand crosses: `+1` for counterclockwise around the
//! puncture. Entries are listed from the puncture outward.
//!
//! The 0-smoothing of a crossing joins each under-strand end to the slot
//! following it counterclockwise; for a positive crossing this is the
//! oriented smoothing.

mod augment;
mod json;
mod resolve;

pub use augment::{augment, CrossingKind, PointedDiagram};
pub use json::{DiagramJson, SeamJson, BasepointJson};
pub use resolve::{vertex_of, Circle, Resolution};

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// Crossing caps above this skip the exhaustive winding check at construction.
const WINDING_CHECK_CAP: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub over: u8,
}

impl Crossing {
    pub fn new(arcs: [u32; 4], over: u8) -> Self {
        Crossing { arcs, over }
    }

    /// First slot of the under-strand pair.
    pub(crate) fn under(&self) -> usize {
        (self.over as usize + 1) % 2
    }

    /// Slot joined to `p` by the given smoothing.
    pub(crate) fn partner(&self, p: usize, one: bool) -> usize {
        let even = (p + 4 - self.under()) % 2 == 0;
        if even != one {
            (p + 1) % 4
        } else {
            (p + 3) % 4
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Arc(u32),
    Loop(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeamEntry {
    pub strand: Strand,
    pub sign: i8,
}

impl SeamEntry {
    pub fn arc(arc: u32, sign: i8) -> Self {
        SeamEntry { strand: Strand::Arc(arc), sign }
    }

    pub fn free_loop(index: usize, sign: i8) -> Self {
        SeamEntry { strand: Strand::Loop(index), sign }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basepoint {
    Arc(u32),
    Loop(usize),
}

type Slot = (usize, usize);

/// A validated annular link diagram.
#[derive(Clone, Debug)]
pub struct AnnularDiagram {
    crossings: Vec<Crossing>,
    orientations: Vec<i8>,
    seam: Vec<SeamEntry>,
    free_loops: Vec<i8>,

    arc_ids: Vec<u32>,
    slot_arc: Vec<[usize; 4]>,
    // first and second occurrence in the flattened crossing list
    arc_ends: Vec<[Slot; 2]>,
    entering: Vec<[bool; 4]>,
    signs: Vec<i8>,
    components: Vec<Vec<usize>>,
    // signed seam crossings of each arc, measured from end 0 to end 1
    arc_seam: Vec<i32>,
}

impl PartialEq for AnnularDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
            && self.orientations == other.orientations
            && self.seam == other.seam
            && self.free_loops == other.free_loops
    }
}

impl Eq for AnnularDiagram {}

impl AnnularDiagram {
    /// Validates raw diagram data. An empty `orientations` list orients
    /// every component positively.
    pub fn new(
        crossings: Vec<Crossing>,
        orientations: Vec<i8>,
        seam: Vec<SeamEntry>,
        free_loops: Vec<i8>,
    ) -> Result<Self> {
        let mut d = Self::skeleton(crossings, seam, free_loops)?;
        let n_comp = d.components.len();
        let orientations = if orientations.is_empty() { vec![1; n_comp] } else { orientations };
        if orientations.len() != n_comp {
            return Err(Error::OrientationCount { expected: n_comp, got: orientations.len() });
        }
        if orientations.iter().any(|&o| o != 1 && o != -1) {
            return Err(Error::Malformed("orientation flags must be 1 or -1".into()));
        }
        d.orientations = orientations;
        d.orient()?;
        d.check_windings()?;
        Ok(d)
    }

    /// Builds a diagram from per-slot direction data: `entering[c][p]` is
    /// true when the oriented strand enters crossing `c` through slot `p`.
    pub fn from_oriented(
        crossings: Vec<Crossing>,
        entering: &[[bool; 4]],
        seam: Vec<SeamEntry>,
        free_loops: Vec<i8>,
    ) -> Result<Self> {
        let d = Self::skeleton(crossings.clone(), seam.clone(), free_loops.clone())?;
        let orientations = d
            .components
            .iter()
            .map(|comp| {
                let (c, p) = d.arc_ends[comp[0]][0];
                // the arc leaves its first occurrence iff that slot is not entering
                if entering[c][p] {
                    -1
                } else {
                    1
                }
            })
            .collect();
        let out = Self::new(crossings, orientations, seam, free_loops)?;
        if out.entering != entering {
            return Err(Error::Malformed("inconsistent strand directions".into()));
        }
        Ok(out)
    }

    /// Structural validation shared by both constructors.
    fn skeleton(crossings: Vec<Crossing>, mut seam: Vec<SeamEntry>, free_loops: Vec<i8>) -> Result<Self> {
        for x in &crossings {
            if x.over > 1 {
                return Err(Error::Malformed(format!("over marker {} is not 0 or 1", x.over)));
            }
        }
        let mut arc_ids: Vec<u32> = crossings.iter().flat_map(|x| x.arcs).collect();
        arc_ids.sort_unstable();
        arc_ids.dedup();
        let index_of = |a: u32| arc_ids.binary_search(&a).ok();

        let mut occurrences: Vec<Vec<Slot>> = vec![Vec::new(); arc_ids.len()];
        let mut slot_arc = Vec::with_capacity(crossings.len());
        for (c, x) in crossings.iter().enumerate() {
            let mut row = [0; 4];
            for p in 0..4 {
                let a = index_of(x.arcs[p]).unwrap();
                occurrences[a].push((c, p));
                row[p] = a;
            }
            slot_arc.push(row);
        }
        let mut arc_ends = Vec::with_capacity(arc_ids.len());
        for (a, occ) in occurrences.iter().enumerate() {
            match occ.len() {
                1 => return Err(Error::OpenStrand { arc: arc_ids[a] }),
                2 => arc_ends.push([occ[0], occ[1]]),
                k => return Err(Error::ArcMultiplicity { arc: arc_ids[a], count: k }),
            }
        }

        for (i, &w) in free_loops.iter().enumerate() {
            if !(-1..=1).contains(&w) {
                return Err(Error::Malformed(format!("free loop {i} has winding {w}")));
            }
        }

        let mut seen_arcs = Vec::new();
        let mut loop_sums = vec![(0i32, 0usize); free_loops.len()];
        for e in &seam {
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::Malformed(format!("seam sign {} is not 1 or -1", e.sign)));
            }
            match e.strand {
                Strand::Arc(a) => {
                    if index_of(a).is_none() {
                        return Err(Error::SeamUnknownArc(a));
                    }
                    if seen_arcs.contains(&a) {
                        return Err(Error::SeamRepeated(a));
                    }
                    seen_arcs.push(a);
                }
                Strand::Loop(i) => {
                    let s = loop_sums.get_mut(i).ok_or(Error::SeamUnknownLoop(i))?;
                    s.0 += e.sign as i32;
                    s.1 += 1;
                }
            }
        }
        for (i, (&w, &(sum, count))) in free_loops.iter().zip(&loop_sums).enumerate() {
            if count > 2 || (count > 0 && sum != w as i32) {
                return Err(Error::LoopSeamMismatch { index: i, winding: w as i32 });
            }
            if count == 0 && w != 0 {
                // implicit crossing, outermost
                seam.push(SeamEntry::free_loop(i, w));
            }
        }

        let mut d = AnnularDiagram {
            crossings,
            orientations: Vec::new(),
            seam,
            free_loops,
            arc_ids,
            slot_arc,
            arc_ends,
            entering: Vec::new(),
            signs: Vec::new(),
            components: Vec::new(),
            arc_seam: Vec::new(),
        };
        d.components = d.trace_components();
        d.check_planar()?;
        Ok(d)
    }

    /// The end of arc `a` other than `from`.
    fn other_end(&self, a: usize, from: Slot) -> Slot {
        let [e0, e1] = self.arc_ends[a];
        if e0 == from {
            e1
        } else {
            e0
        }
    }

    fn end_index(&self, a: usize, slot: Slot) -> usize {
        if self.arc_ends[a][0] == slot {
            0
        } else {
            1
        }
    }

    /// Components as arc sequences, each starting at its minimal arc and
    /// running from that arc's first occurrence towards its second.
    fn trace_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.arc_ids.len()];
        let mut out = Vec::new();
        for start in 0..self.arc_ids.len() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let (mut a, mut head) = (start, self.arc_ends[start][1]);
            loop {
                seen[a] = true;
                comp.push(a);
                let (c, p) = head;
                let tail = (c, (p + 2) % 4);
                a = self.slot_arc[c][tail.1];
                head = self.other_end(a, tail);
                if a == start && head == self.arc_ends[start][1] {
                    break;
                }
            }
            out.push(comp);
        }
        out
    }

    fn check_planar(&self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let mut uf = UnionFind::new(n);
        for [(c0, _), (c1, _)] in &self.arc_ends {
            uf.union(*c0, *c1);
        }
        let pieces = uf.count_sets();
        // faces: follow the next slot counterclockwise at every crossing
        let mut used = vec![[false; 2]; self.arc_ids.len()];
        let mut faces = 0;
        for a0 in 0..self.arc_ids.len() {
            for d0 in 0..2 {
                if used[a0][d0] {
                    continue;
                }
                faces += 1;
                let (mut a, mut d) = (a0, d0);
                while !used[a][d] {
                    used[a][d] = true;
                    let (c, p) = self.arc_ends[a][d];
                    let q = (p + 1) % 4;
                    a = self.slot_arc[c][q];
                    let tail_idx = self.end_index(a, (c, q));
                    d = 1 - tail_idx;
                }
            }
        }
        let euler = n as i64 - 2 * n as i64 + faces as i64;
        if euler != 2 * pieces as i64 {
            return Err(Error::NonPlanar);
        }
        Ok(())
    }

    fn orient(&mut self) -> Result<()> {
        let n = self.crossings.len();
        let mut entering = vec![[false; 4]; n];
        let mut forward = vec![true; self.arc_ids.len()];
        for (comp, &o) in self.components.iter().zip(&self.orientations) {
            let start = comp[0];
            let mut head = if o == 1 { self.arc_ends[start][1] } else { self.arc_ends[start][0] };
            let mut a = start;
            loop {
                forward[a] = head == self.arc_ends[a][1];
                let (c, p) = head;
                entering[c][p] = true;
                let tail = (c, (p + 2) % 4);
                a = self.slot_arc[c][tail.1];
                head = self.other_end(a, tail);
                if a == start {
                    break;
                }
            }
        }
        const DIR: [(i32, i32); 4] = [(0, -1), (1, 0), (0, 1), (-1, 0)];
        let mut signs = Vec::with_capacity(n);
        for (c, x) in self.crossings.iter().enumerate() {
            let u = x.under();
            let o = x.over as usize;
            let pu = if entering[c][u] { u } else { u + 2 };
            let po = if entering[c][o] { o } else { o + 2 };
            if entering[c][(pu + 2) % 4] || entering[c][(po + 2) % 4] {
                return Err(Error::Malformed(format!("crossing {c} has an inconsistent strand direction")));
            }
            let du = (-DIR[pu].0, -DIR[pu].1);
            let dov = (-DIR[po].0, -DIR[po].1);
            let s = dov.0 * du.1 - dov.1 * du.0;
            signs.push(s.signum() as i8);
        }
        let mut arc_seam = vec![0i32; self.arc_ids.len()];
        for e in &self.seam {
            if let Strand::Arc(id) = e.strand {
                let a = self.arc_index(id).unwrap();
                arc_seam[a] += if forward[a] { e.sign as i32 } else { -(e.sign as i32) };
            }
        }
        self.entering = entering;
        self.signs = signs;
        self.arc_seam = arc_seam;
        Ok(())
    }

    fn check_windings(&self) -> Result<()> {
        let n = self.crossings.len();
        if n > WINDING_CHECK_CAP {
            return Ok(());
        }
        let mut scratch = Vec::new();
        for v in 0..(1u32 << n) {
            self.trace_vertex(v, &mut scratch)?;
        }
        Ok(())
    }

    pub(crate) fn arc_index(&self, id: u32) -> Option<usize> {
        self.arc_ids.binary_search(&id).ok()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn orientations(&self) -> &[i8] {
        &self.orientations
    }

    pub fn seam(&self) -> &[SeamEntry] {
        &self.seam
    }

    pub fn free_loops(&self) -> &[i8] {
        &self.free_loops
    }

    pub fn arc_ids(&self) -> &[u32] {
        &self.arc_ids
    }

    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// Whether the oriented strand enters crossing `c` through slot `p`.
    pub fn entering(&self, c: usize, p: usize) -> bool {
        self.entering[c][p]
    }

    pub(crate) fn entering_table(&self) -> &[[bool; 4]] {
        &self.entering
    }

    /// Components with crossings, as arc-id sequences in orientation order.
    pub fn components(&self) -> Vec<Vec<u32>> {
        self.components
            .iter()
            .zip(&self.orientations)
            .map(|(comp, &o)| {
                let mut ids: Vec<u32> = comp.iter().map(|&a| self.arc_ids[a]).collect();
                if o == -1 {
                    ids[1..].reverse();
                }
                ids
            })
            .collect()
    }

    /// Components including crossingless loops.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops.len()
    }

    /// Arc-id endpoints: `(crossing, slot)` of the first and second occurrence.
    pub fn arc_ends(&self, id: u32) -> Option<[(usize, usize); 2]> {
        self.arc_index(id).map(|a| self.arc_ends[a])
    }

    /// Total signed seam count; equals the sum of circle windings in every resolution.
    pub fn total_winding(&self) -> i32 {
        self.seam.iter().map(|e| e.sign as i32).sum()
    }

    /// Annular strands: seam entries, counted with multiplicity.
    pub fn annular_strands(&self) -> usize {
        self.seam.len()
    }

    /// The same diagram with the seam removed, i.e. viewed as a link in a ball.
    pub fn without_seam(&self) -> AnnularDiagram {
        let free_loops = vec![0; self.free_loops.len()];
        AnnularDiagram::new(self.crossings.clone(), self.orientations.clone(), Vec::new(), free_loops)
            .expect("removing the seam keeps a diagram valid")
    }

    /// Replaces the seam data, keeping crossings and orientations.
    pub fn with_seam(&self, seam: Vec<SeamEntry>, free_loops: Vec<i8>) -> Result<AnnularDiagram> {
        AnnularDiagram::new(self.crossings.clone(), self.orientations.clone(), seam, free_loops)
    }

    /// Split union, with `other` placed radially outside `self`.
    pub fn disjoint_union(&self, other: &AnnularDiagram) -> AnnularDiagram {
        let shift = self.arc_ids.last().map_or(0, |&m| m + 1);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| Crossing::new(x.arcs.map(|a| a + shift), x.over)));
        let mut entering = self.entering.clone();
        entering.extend_from_slice(&other.entering);
        let k = self.free_loops.len();
        let mut seam = self.seam.clone();
        seam.extend(other.seam.iter().map(|e| SeamEntry {
            strand: match e.strand {
                Strand::Arc(a) => Strand::Arc(a + shift),
                Strand::Loop(i) => Strand::Loop(i + k),
            },
            sign: e.sign,
        }));
        let mut free_loops = self.free_loops.clone();
        free_loops.extend_from_slice(&other.free_loops);
        AnnularDiagram::from_oriented(crossings, &entering, seam, free_loops)
            .expect("split union of valid diagrams is valid")
    }
}

#[cfg(test)]
mod tests;
