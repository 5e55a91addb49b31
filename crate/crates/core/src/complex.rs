//! Khovanov chain complexes over F2 built from the cube of resolutions.
//!
//! Vertices are numbered so that crossing `c` is bit `n - 1 - c`, which
//! makes numeric order the lexicographic order of smoothing vectors.
//! A generator is a vertex together with one label bit per circle, with
//! bit set meaning `+` (`v+` or `w+`).

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::diagram::{augment, AnnularDiagram, Basepoint, PointedDiagram, Resolution};
use crate::error::{Error, Result};
use crate::gf2::F2Matrix;

/// Circle limit imposed by the label encoding.
pub const MAX_CIRCLES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Unreduced,
    Reduced(Basepoint),
    Annular,
}

impl Flavor {
    fn is_annular(self) -> bool {
        matches!(self, Flavor::Annular)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub vertex: u32,
    pub labels: u32,
}

/// Homological, quantum and annular degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grading {
    pub i: i32,
    pub j: i32,
    pub k: i32,
}

/// Circle data of one cube vertex.
#[derive(Clone, Debug)]
pub(crate) struct VertexCircles {
    pub arc_circle: Vec<u8>,
    pub count: usize,
    pub nontrivial: u32,
    pub pointed: Option<usize>,
}

impl VertexCircles {
    fn new(d: &AnnularDiagram, r: &Resolution, flavor: Flavor) -> Result<Self> {
        if r.len() > MAX_CIRCLES {
            return Err(Error::TooManyCircles(r.len()));
        }
        let arc_circle = (0..d.arc_ids().len()).map(|a| r.circle_of_arc(a) as u8).collect();
        let nontrivial = if flavor.is_annular() {
            r.circles.iter().enumerate().filter(|(_, c)| c.is_nontrivial()).fold(0, |m, (i, _)| m | 1 << i)
        } else {
            0
        };
        let pointed = match flavor {
            Flavor::Reduced(Basepoint::Arc(a)) => Some(r.circle_of_arc(d.arc_index(a).unwrap())),
            Flavor::Reduced(Basepoint::Loop(i)) => r.circles.iter().position(|c| c.free_loop == Some(i)),
            _ => None,
        };
        Ok(VertexCircles { arc_circle, count: r.len(), nontrivial, pointed })
    }

    fn local_count(&self) -> usize {
        1 << (self.count - self.pointed.is_some() as usize)
    }

    /// Label word of the `idx`-th generator at this vertex.
    fn labels(&self, idx: usize) -> u32 {
        let idx = idx as u32;
        match self.pointed {
            None => idx,
            Some(p) => {
                let low = idx & ((1 << p) - 1);
                ((idx >> p) << (p + 1)) | low
            }
        }
    }

    fn local_index(&self, labels: u32) -> usize {
        match self.pointed {
            None => labels as usize,
            Some(p) => {
                let low = labels & ((1 << p) - 1);
                (((labels >> (p + 1)) << p) | low) as usize
            }
        }
    }

    /// Circle through slot `p` of crossing `c`.
    fn at(&self, d: &AnnularDiagram, c: usize, p: usize) -> usize {
        let id = d.crossings()[c].arcs[p];
        self.arc_circle[d.arc_index(id).unwrap()] as usize
    }

    /// Index of the `j`-th free loop circle.
    fn free_loop_circle(&self, d: &AnnularDiagram, j: usize) -> usize {
        self.count - d.free_loops().len() + j
    }
}

fn merge_labels(la: bool, lb: bool, ta: bool, tb: bool, tout: bool) -> Result<Option<bool>> {
    match (ta, tb, tout) {
        (false, false, false) => Ok(if la && lb {
            Some(true)
        } else if la || lb {
            Some(false)
        } else {
            None
        }),
        (false, true, true) => Ok(if la { Some(lb) } else { None }),
        (true, false, true) => Ok(if lb { Some(la) } else { None }),
        (true, true, false) => Ok(if la != lb { Some(false) } else { None }),
        _ => Err(Error::BadCobordism("merge")),
    }
}

fn split_labels(l: bool, t: bool, tx: bool, ty: bool) -> Result<Vec<(bool, bool)>> {
    match (t, tx, ty) {
        (false, false, false) => Ok(if l { vec![(true, false), (false, true)] } else { vec![(false, false)] }),
        (false, true, true) => Ok(if l { vec![(true, false), (false, true)] } else { vec![] }),
        (true, false, true) => Ok(vec![(false, l)]),
        (true, true, false) => Ok(vec![(l, false)]),
        _ => Err(Error::BadCobordism("split")),
    }
}

/// Image of one generator under the edge map from `src` to `dst`, where
/// `dst` has crossing `c` switched from the 0- to the 1-smoothing.
pub(crate) fn edge_image(
    d: &AnnularDiagram,
    src: &VertexCircles,
    dst: &VertexCircles,
    c: usize,
    labels: u32,
) -> Result<Vec<u32>> {
    let x = d.crossings()[c];
    let u = x.under();
    let a = src.at(d, c, u);
    let b = src.at(d, c, (u + 2) % 4);
    let bit = |w: u32, i: usize| (w >> i) & 1 == 1;
    let nt = |vc: &VertexCircles, i: usize| bit(vc.nontrivial, i);

    // carry over untouched circles
    let mut image = vec![usize::MAX; src.count];
    let n_loops = d.free_loops().len();
    for (arc, &ci) in src.arc_circle.iter().enumerate() {
        image[ci as usize] = dst.arc_circle[arc] as usize;
    }
    for j in 0..n_loops {
        image[src.free_loop_circle(d, j)] = dst.free_loop_circle(d, j);
    }
    let mut base = 0u32;
    for (i, &t) in image.iter().enumerate() {
        if i != a && i != b && bit(labels, i) {
            base |= 1 << t;
        }
    }

    let mut out = Vec::with_capacity(2);
    if a != b {
        let m = image[a];
        if let Some(l) = merge_labels(bit(labels, a), bit(labels, b), nt(src, a), nt(src, b), nt(dst, m))? {
            out.push(base | (l as u32) << m);
        }
    } else {
        let xc = dst.at(d, c, (u + 1) % 4);
        let yc = dst.at(d, c, (u + 3) % 4);
        for (lx, ly) in split_labels(bit(labels, a), nt(src, a), nt(dst, xc), nt(dst, yc))? {
            out.push(base | (lx as u32) << xc | (ly as u32) << yc);
        }
    }
    Ok(out)
}

/// A cube complex with its full differential stored row-wise.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    n: usize,
    flavor: Flavor,
    n_plus: usize,
    n_minus: usize,
    offsets: Vec<usize>,
    gens: Vec<Generator>,
    grades: Vec<Grading>,
    row_ptr: Vec<usize>,
    targets: Vec<u32>,
}

impl GradedComplex {
    /// Builds the complex. Annular gradings are computed for every flavor
    /// but are only meaningful for [`Flavor::Annular`]; other flavors set k = 0.
    pub fn build(d: &AnnularDiagram, flavor: Flavor) -> Result<Self> {
        let n = d.n();
        if n >= 31 {
            return Err(Error::CapExceeded { crossings: n, cap: 30 });
        }
        if let Flavor::Reduced(bp) = flavor {
            let ok = match bp {
                Basepoint::Arc(a) => d.arc_index(a).is_some(),
                Basepoint::Loop(i) => i < d.free_loops().len(),
            };
            if !ok {
                return Err(Error::FlavorMismatch("a basepoint on the diagram"));
            }
        }
        let verts: Vec<VertexCircles> = (0..1u32 << n)
            .into_par_iter()
            .map(|v| VertexCircles::new(d, &d.resolve_vertex(v)?, flavor))
            .collect::<Result<_>>()?;
        let mut offsets = Vec::with_capacity(verts.len() + 1);
        let mut total = 0;
        for vc in &verts {
            offsets.push(total);
            total += vc.local_count();
        }
        offsets.push(total);

        let (n_plus, n_minus) = (d.n_plus() as i32, d.n_minus() as i32);
        let reduced_shift = matches!(flavor, Flavor::Reduced(_)) as i32;
        let mut gens = Vec::with_capacity(total);
        let mut grades = Vec::with_capacity(total);
        for (v, vc) in verts.iter().enumerate() {
            let h = (v as u32).count_ones() as i32;
            for idx in 0..vc.local_count() {
                let labels = vc.labels(idx);
                let plus = labels.count_ones() as i32;
                let q = 2 * plus - vc.count as i32;
                let k = 2 * (labels & vc.nontrivial).count_ones() as i32 - vc.nontrivial.count_ones() as i32;
                gens.push(Generator { vertex: v as u32, labels });
                grades.push(Grading { i: h - n_minus, j: q + h + n_plus - 2 * n_minus + reduced_shift, k });
            }
        }

        let rows: Vec<Vec<u32>> = (0..total)
            .into_par_iter()
            .map(|g| {
                let Generator { vertex: v, labels } = gens[g];
                let src = &verts[v as usize];
                let mut row = Vec::new();
                for c in 0..n {
                    let b = 1u32 << (n - 1 - c);
                    if v & b != 0 {
                        continue;
                    }
                    let w = v | b;
                    let dst = &verts[w as usize];
                    for t in edge_image(d, src, dst, c, labels)? {
                        row.push((offsets[w as usize] + dst.local_index(t)) as u32);
                    }
                }
                row.sort_unstable();
                Ok(row)
            })
            .collect::<Result<_>>()?;
        let mut row_ptr = Vec::with_capacity(total + 1);
        let mut targets = Vec::new();
        row_ptr.push(0);
        for r in rows {
            targets.extend(r);
            row_ptr.push(targets.len());
        }
        Ok(GradedComplex { n, flavor, n_plus: n_plus as usize, n_minus: n_minus as usize, offsets, gens, grades, row_ptr, targets })
    }

    /// Reduced complex of a pointed diagram at its basepoint.
    pub fn reduced(p: &PointedDiagram) -> Result<Self> {
        GradedComplex::build(&p.diagram, Flavor::Reduced(p.basepoint))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn crossings(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn generator(&self, g: usize) -> Generator {
        self.gens[g]
    }

    pub fn grading(&self, g: usize) -> Grading {
        self.grades[g]
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.grades
    }

    /// Nonzero entries of d applied to generator `g`, ascending.
    pub fn d(&self, g: usize) -> &[u32] {
        &self.targets[self.row_ptr[g]..self.row_ptr[g + 1]]
    }

    pub fn index_of(&self, x: Generator) -> Option<usize> {
        let v = x.vertex as usize;
        if v + 1 >= self.offsets.len() {
            return None;
        }
        let range = self.offsets[v]..self.offsets[v + 1];
        self.gens[range.clone()].binary_search(&x).ok().map(|k| range.start + k)
    }

    /// Generators grouped by (j, k), each group ordered by index.
    pub fn blocks(&self) -> BTreeMap<(i32, i32), Vec<u32>> {
        let mut out: BTreeMap<(i32, i32), Vec<u32>> = BTreeMap::new();
        for (g, gr) in self.grades.iter().enumerate() {
            out.entry((gr.j, gr.k)).or_default().push(g as u32);
        }
        out
    }

    /// Generator indices of the chain group in the given grading.
    pub fn basis(&self, gr: Grading) -> Vec<u32> {
        (0..self.len() as u32).filter(|&g| self.grades[g as usize] == gr).collect()
    }

    pub fn chain_dims(&self) -> BTreeMap<Grading, usize> {
        let mut out = BTreeMap::new();
        for gr in &self.grades {
            *out.entry(*gr).or_insert(0) += 1;
        }
        out
    }

    /// Matrix of d from grading `gr` to `gr` with i raised by one; columns
    /// follow [`GradedComplex::basis`] of the source, rows of the target.
    pub fn d_matrix(&self, gr: Grading) -> F2Matrix {
        let src = self.basis(gr);
        let tgt = self.basis(Grading { i: gr.i + 1, ..gr });
        let mut triplets = Vec::new();
        for (col, &g) in src.iter().enumerate() {
            for &t in self.d(g as usize) {
                let row = tgt.binary_search(&t).expect("d preserves j and k");
                triplets.push((row, col));
            }
        }
        F2Matrix::from_triplets(tgt.len(), src.len(), triplets)
    }

    /// Applies d to a chain given as a sorted list of generator indices.
    pub fn apply(&self, chain: &[u32]) -> Vec<u32> {
        let mut acc: BTreeMap<u32, bool> = BTreeMap::new();
        for &g in chain {
            for &t in self.d(g as usize) {
                let e = acc.entry(t).or_insert(false);
                *e = !*e;
            }
        }
        acc.into_iter().filter(|(_, on)| *on).map(|(t, _)| t).collect()
    }

    /// Checks that d is homogeneous and squares to zero.
    pub fn check(&self) -> Result<()> {
        for g in 0..self.len() {
            let gr = self.grades[g];
            for &t in self.d(g) {
                let tg = self.grades[t as usize];
                if tg != (Grading { i: gr.i + 1, ..gr }) {
                    return Err(Error::NotAComplex(format!("d does not preserve gradings at generator {g}")));
                }
            }
            if !self.apply(&self.apply(&[g as u32])).is_empty() {
                return Err(Error::NotAComplex(format!("generator {g}")));
            }
        }
        Ok(())
    }
}

/// Public form of a single edge map: the image of `labels` (one bit per
/// circle of `src`) under the cobordism from `src` to `dst`.
pub fn edge_map(
    d: &AnnularDiagram,
    flavor: Flavor,
    src: &[u8],
    dst: &[u8],
    labels: u32,
) -> Result<Vec<u32>> {
    let n = d.n();
    for s in [src, dst] {
        if s.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: s.len() });
        }
    }
    let diff: Vec<usize> = (0..n).filter(|&c| src[c] != dst[c]).collect();
    if diff.len() != 1 || src[diff[0]] != 0 {
        return Err(Error::NotAdjacent);
    }
    let a = VertexCircles::new(d, &d.resolve(src)?, flavor)?;
    let b = VertexCircles::new(d, &d.resolve(dst)?, flavor)?;
    edge_image(d, &a, &b, diff[0], labels)
}

/// Largest unlink accepted by [`unlink_cycle_basis`].
pub const UNLINK_CAP: usize = 8;

/// Explicit cycles in the reduced complex of an augmented unlink.
#[derive(Clone, Debug)]
pub struct UnlinkCycles {
    pub pointed: PointedDiagram,
    pub complex: GradedComplex,
    /// One cycle per symmetric resolution `v`, as sorted generator indices.
    pub cycles: Vec<(Vec<u8>, Vec<u32>)>,
}

/// Cycles `e_v` for the augmentation of `n` concentric essential circles,
/// one per `v in {0,1}^n`, at the resolution smoothing both crossings of
/// strand `k` by `v_k`.
///
/// Each circle of a symmetric resolution contains exactly one gap arc of
/// the augmenting circle, so chains are written with labels on gaps
/// `g_0 ..= g_n`, `g_0` pointed. `e_v` extends `e_v'` (`v'` drops the last
/// entry) by `v+` on `g_n` if `v_n = 1`, and otherwise by
/// `v- on g_n` plus a correction moving a `v+` from `g_{n-1}` to `g_n`.
pub fn unlink_cycle_basis(n: usize) -> Result<UnlinkCycles> {
    if n > UNLINK_CAP {
        return Err(Error::CapExceeded { crossings: n, cap: UNLINK_CAP });
    }
    let d = AnnularDiagram::new(Vec::new(), Vec::new(), Vec::new(), vec![1; n])?;
    let pointed = augment(&d);
    let complex = GradedComplex::reduced(&pointed)?;
    let gaps: Vec<usize> = pointed.gap_arcs.iter().map(|&a| pointed.diagram.arc_index(a).unwrap()).collect();

    let mut cycles = Vec::with_capacity(1 << n);
    for bits in 0..1u32 << n {
        let v: Vec<u8> = (0..n).map(|k| ((bits >> (n - 1 - k)) & 1) as u8).collect();
        // label words over gaps, bit m set for + on g_m
        let mut terms: BTreeMap<u32, bool> = BTreeMap::new();
        terms.insert(0, true);
        for (k, &vk) in v.iter().enumerate() {
            let m = k + 1;
            let mut next: BTreeMap<u32, bool> = BTreeMap::new();
            let mut toggle = |w: u32| *next.entry(w).or_insert(false) ^= true;
            for (&w, _) in terms.iter().filter(|(_, on)| **on) {
                if vk == 1 {
                    toggle(w | 1 << m);
                } else {
                    toggle(w);
                    if w >> (m - 1) & 1 == 1 {
                        toggle((w & !(1 << (m - 1))) | 1 << m);
                    }
                }
            }
            terms = next;
        }
        let smoothing: Vec<u8> = v.iter().flat_map(|&b| [b, b]).collect();
        let vertex = crate::diagram::vertex_of(&smoothing);
        let r = pointed.diagram.resolve_vertex(vertex)?;
        let circle: Vec<usize> = gaps.iter().map(|&a| r.circle_of_arc(a)).collect();
        let mut chain: Vec<u32> = terms
            .iter()
            .filter(|(_, on)| **on)
            .map(|(&w, _)| {
                let labels = (0..=n).filter(|&m| w >> m & 1 == 1).fold(0u32, |acc, m| acc | 1 << circle[m]);
                complex.index_of(Generator { vertex, labels }).expect("pointed circle carries v-") as u32
            })
            .collect();
        chain.sort_unstable();
        cycles.push((v, chain));
    }
    Ok(UnlinkCycles { pointed, complex, cycles })
}
