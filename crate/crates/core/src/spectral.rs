//! The spectral sequence of the augmented link, filtered by the number of
//! 1-smoothings at original crossings.
//!
//! A generator at cube vertex `w = (w1, w2)` (augmenting crossings, original
//! crossings) has bidegree `(p, q) = (|w2|, |w1|)` and lies in `F_p`. The
//! quantum grading is preserved by d, so every page splits over j.
//!
//! Pages from E1 on are computed on a smaller filtered model: arrows that
//! keep p are cancelled first, which is a filtered homotopy equivalence.
//! On that model `E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})` with
//! `Z_r^p = {x in F_p : dx in F_{p+r}}`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Flavor, GradedComplex};
use crate::diagram::{augment, AnnularDiagram, CrossingKind, PointedDiagram};
use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, BitVec, F2Matrix, Subquotient};
use crate::homology::{homology, PoincarePolynomial};
use crate::reduction::SparseComplex;

/// Reduced complex of a pointed diagram with its crossing partition.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    pub pointed: PointedDiagram,
    pub complex: GradedComplex,
    original: u32,
}

impl DoubleComplex {
    pub fn new(pointed: PointedDiagram) -> Result<Self> {
        let complex = GradedComplex::build(&pointed.diagram, Flavor::Reduced(pointed.basepoint))?;
        let original = pointed.original_mask();
        Ok(DoubleComplex { pointed, complex, original })
    }

    /// Augments `d` and builds the double complex of the result.
    pub fn of_annular(d: &AnnularDiagram) -> Result<Self> {
        DoubleComplex::new(augment(d))
    }

    /// `(p, q)` of a generator.
    pub fn bidegree(&self, g: usize) -> (i32, i32) {
        let v = self.complex.generator(g).vertex;
        ((v & self.original).count_ones() as i32, (v & !self.original).count_ones() as i32)
    }

    /// Filtration length: the number of original crossings.
    pub fn width(&self) -> usize {
        self.pointed.count(CrossingKind::Original)
    }

    /// The part of d raising p by `jump`.
    fn d_part(&self, chain: &[u32], jump: i32) -> Vec<u32> {
        let mut acc = BTreeMap::new();
        for &g in chain {
            let p = self.bidegree(g as usize).0;
            for &t in self.complex.d(g as usize) {
                if self.bidegree(t as usize).0 - p == jump {
                    *acc.entry(t).or_insert(false) ^= true;
                }
            }
        }
        acc.into_iter().filter(|(_, on)| *on).map(|(t, _)| t).collect()
    }

    /// Checks `d = d1 + d2` with `d1, d2` of bidegrees (0,1), (1,0), both
    /// squaring to zero and commuting.
    pub fn check_split(&self) -> Result<()> {
        for g in 0..self.complex.len() {
            let (p, q) = self.bidegree(g);
            for &t in self.complex.d(g) {
                let (p2, q2) = self.bidegree(t as usize);
                if (p2 - p, q2 - q) != (0, 1) && (p2 - p, q2 - q) != (1, 0) {
                    return Err(Error::NotAComplex(format!("arrow from {g} has bidegree ({}, {})", p2 - p, q2 - q)));
                }
            }
            let x = [g as u32];
            let d1 = self.d_part(&x, 0);
            let d2 = self.d_part(&x, 1);
            if !self.d_part(&d1, 0).is_empty() || !self.d_part(&d2, 1).is_empty() {
                return Err(Error::NotAComplex(format!("d1 or d2 squares to nonzero at {g}")));
            }
            if self.d_part(&d1, 1) != self.d_part(&d2, 0) {
                return Err(Error::NotAComplex(format!("d1 and d2 do not commute at {g}")));
            }
        }
        Ok(())
    }

    /// All pages `E_0 ..= E_last` with `last = max(width + 1, 2)`.
    pub fn pages(&self) -> Result<SpectralSequence> {
        let last = (self.width() + 1).max(2);
        let n_minus = self.complex.n_minus() as i32;
        let mut pages: Vec<BTreeMap<(i32, i32, i32), usize>> = vec![BTreeMap::new(); last + 1];
        for g in 0..self.complex.len() {
            let (p, q) = self.bidegree(g);
            *pages[0].entry((p, q, self.complex.grading(g).j)).or_insert(0) += 1;
        }
        let blocks: Vec<(i32, Vec<u32>)> = self.complex.blocks().into_iter().map(|((j, _), g)| (j, g)).collect();
        let per_block: Vec<Vec<BTreeMap<(i32, i32), usize>>> =
            blocks.par_iter().map(|(_, gens)| self.block_pages(gens, last)).collect::<Result<_>>()?;
        for ((j, _), block) in blocks.iter().zip(per_block) {
            for (r, dims) in block.into_iter().enumerate() {
                for ((p, n), dim) in dims {
                    if dim > 0 {
                        *pages[r + 1].entry((p, n + n_minus - p, *j)).or_insert(0) += dim;
                    }
                }
            }
        }
        let pages: Vec<Page> = pages.into_iter().enumerate().map(|(r, dims)| Page { r, dims }).collect();
        let collapsed_at_e2 = pages[2].dims == pages[last].dims;
        Ok(SpectralSequence { pages, n_minus: n_minus as usize, collapsed_at_e2 })
    }

    /// Pages `E_1 ..= E_last` of one quantum block, keyed by (p, total degree).
    fn block_pages(&self, gens: &[u32], last: usize) -> Result<Vec<BTreeMap<(i32, i32), usize>>> {
        let mut s = SparseComplex::from_block(&self.complex, gens);
        let level = |x: u32| self.bidegree(gens[x as usize] as usize).0;
        s.reduce(|x, y| level(x) == level(y));
        let model = FilteredModel::new(&s, |x| (level(x), self.complex.grading(gens[x as usize] as usize).i));
        let pages: Vec<(BTreeMap<(i32, i32), usize>, PageMaps)> =
            (1..=last as i32).map(|r| model.page(r)).collect::<Result<_>>()?;
        for (r, (dims, maps)) in (1..).zip(&pages) {
            model.check_page_differential(r, maps)?;
            if let Some((next, _)) = pages.get(r as usize) {
                model.check_successor(r, dims, maps, next)?;
            }
        }
        Ok(pages.into_iter().map(|(dims, _)| dims).collect())
    }
}

/// A based filtered complex, every arrow raising the filtration by at least one.
struct FilteredModel {
    // filtration level of each survivor, per total degree
    level: BTreeMap<i32, Vec<i32>>,
    d: BTreeMap<i32, F2Matrix>,
}

type PageMaps = BTreeMap<(i32, i32), F2Matrix>;

impl FilteredModel {
    fn new(s: &SparseComplex, grade: impl Fn(u32) -> (i32, i32)) -> Self {
        let mut level: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
        let mut index = BTreeMap::new();
        for x in s.survivors() {
            let (p, n) = grade(x);
            let slot = level.entry(n).or_default();
            index.insert(x, slot.len());
            slot.push(p);
        }
        let mut triplets: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
        for x in s.survivors() {
            let (_, n) = grade(x);
            for &y in s.out(x) {
                triplets.entry(n).or_default().push((index[&y], index[&x]));
            }
        }
        let dim = |n: i32| level.get(&n).map_or(0, Vec::len);
        let d = level
            .keys()
            .map(|&n| {
                let t = triplets.remove(&n).unwrap_or_default();
                (n, F2Matrix::from_triplets(dim(n + 1), dim(n), t))
            })
            .collect();
        FilteredModel { level, d }
    }

    fn dim(&self, n: i32) -> usize {
        self.level.get(&n).map_or(0, Vec::len)
    }

    fn levels(&self, n: i32) -> &[i32] {
        self.level.get(&n).map_or(&[], Vec::as_slice)
    }

    fn apply(&self, n: i32, v: &BitVec) -> BitVec {
        match self.d.get(&n) {
            Some(m) => m.mul_vec(v),
            None => BitVec::zeros(self.dim(n + 1)),
        }
    }

    /// `Z_r^p` in degree n.
    fn z(&self, r: i32, p: i32, n: i32) -> Vec<BitVec> {
        let len = self.dim(n);
        let cols: Vec<usize> = (0..len).filter(|&x| self.levels(n)[x] >= p).collect();
        if r <= 0 {
            return cols.iter().map(|&x| BitVec::unit(len, x)).collect();
        }
        let rows: Vec<usize> = (0..self.dim(n + 1)).filter(|&y| self.levels(n + 1)[y] < p + r).collect();
        let sub = match self.d.get(&n) {
            Some(m) => m.select(&rows, &cols),
            None => F2Matrix::zeros(rows.len(), cols.len()),
        };
        kernel_basis(&sub).iter().map(|v| v.embed(len, &cols)).collect()
    }

    fn b(&self, r: i32, p: i32, n: i32) -> Vec<BitVec> {
        let mut out = self.z(r - 1, p + 1, n);
        out.extend(self.z(r - 1, p - r + 1, n - 1).iter().map(|x| self.apply(n - 1, x)));
        out
    }

    fn p_range(&self) -> (i32, i32) {
        let all = self.level.values().flatten();
        let lo = all.clone().copied().min().unwrap_or(0);
        let hi = all.copied().max().unwrap_or(0);
        (lo, hi)
    }

    fn e(&self, r: i32, p: i32, n: i32) -> Result<Subquotient> {
        Subquotient::new(self.dim(n), &self.z(r, p, n), &self.b(r, p, n))
    }

    /// Dimensions of `E_r` and the matrices of `d_r` out of each spot.
    fn page(&self, r: i32) -> Result<(BTreeMap<(i32, i32), usize>, PageMaps)> {
        let (lo, hi) = self.p_range();
        let mut subs = BTreeMap::new();
        for &n in self.level.keys() {
            for p in lo..=hi {
                let e = self.e(r, p, n)?;
                if e.dim() > 0 {
                    subs.insert((p, n), e);
                }
            }
        }
        let dims = subs.iter().map(|(&key, e)| (key, e.dim())).collect();
        let mut maps = BTreeMap::new();
        for (&(p, n), here) in &subs {
            let target = subs.get(&(p + r, n + 1));
            let mut cols = Vec::with_capacity(here.dim());
            for z in here.reps() {
                let dz = self.apply(n, z);
                let c = match target {
                    Some(there) => there
                        .coords(&dz)
                        .ok_or_else(|| Error::NotAComplex(format!("d of a Z_{r} cycle left Z_{r}")))?,
                    None => BitVec::zeros(0),
                };
                cols.push(c);
            }
            let rows = target.map_or(0, Subquotient::dim);
            maps.insert((p, n), F2Matrix::from_columns(rows, &cols));
        }
        Ok((dims, maps))
    }

    fn check_page_differential(&self, r: i32, maps: &PageMaps) -> Result<()> {
        for (&(p, n), m) in maps {
            if let Some(next) = maps.get(&(p + r, n + 1)) {
                if !next.mul(m).is_zero() {
                    return Err(Error::NotAComplex(format!("d_{r} squares to nonzero at ({p}, {n})")));
                }
            }
        }
        Ok(())
    }

    /// Checks `dim E_{r+1} = dim H(E_r, d_r)` at every spot.
    fn check_successor(
        &self,
        r: i32,
        dims: &BTreeMap<(i32, i32), usize>,
        maps: &PageMaps,
        next: &BTreeMap<(i32, i32), usize>,
    ) -> Result<()> {
        let rank_of = |key: (i32, i32)| maps.get(&key).map_or(0, crate::gf2::rank);
        let mut keys: Vec<(i32, i32)> = dims.keys().chain(next.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        for (p, n) in keys {
            let dim = dims.get(&(p, n)).copied().unwrap_or(0);
            let h = dim as i64 - rank_of((p, n)) as i64 - rank_of((p - r, n - 1)) as i64;
            if h != next.get(&(p, n)).copied().unwrap_or(0) as i64 {
                return Err(Error::NotAComplex(format!("E_{} at ({p}, {n}) is not the homology of d_{r}", r + 1)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Page {
    pub r: usize,
    /// Dimensions keyed by (p, q, j).
    pub dims: BTreeMap<(i32, i32, i32), usize>,
}

impl Page {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Dimensions regraded to (i, j) with `i = p + q - n_minus`.
    pub fn by_total_degree(&self, n_minus: usize) -> PoincarePolynomial {
        let mut out = PoincarePolynomial::new(false);
        for (&(p, q, j), &d) in &self.dims {
            out.add(p + q - n_minus as i32, j, 0, d);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequence {
    /// `pages[r]` is `E_r`; the last page is `E_infinity`.
    pub pages: Vec<Page>,
    /// Negative crossings of the augmented diagram.
    pub n_minus: usize,
    pub collapsed_at_e2: bool,
}

impl SpectralSequence {
    pub fn e_infinity(&self) -> &Page {
        self.pages.last().unwrap()
    }

    pub fn to_json(&self, from: usize, to: usize) -> serde_json::Value {
        let page_json = |p: &Page| {
            let dims: Vec<serde_json::Value> = p
                .dims
                .iter()
                .map(|(&(pp, q, j), &d)| serde_json::json!({"p": pp, "q": q, "j": j, "dim": d}))
                .collect();
            serde_json::json!({"r": p.r, "dims": dims, "total": p.total()})
        };
        let pages: Vec<serde_json::Value> =
            self.pages.iter().filter(|p| p.r >= from && p.r <= to).map(page_json).collect();
        serde_json::json!({
            "pages": pages,
            "E_infinity": page_json(self.e_infinity()),
            "n_minus": self.n_minus,
            "collapsed_at_E2": self.collapsed_at_e2,
        })
    }
}

/// Counts used to regrade annular homology against the augmented link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Regrading {
    /// Negative crossings of the annular diagram.
    pub n_minus: usize,
    /// Annular strands.
    pub n0: usize,
    /// Negative augmenting crossings.
    pub n_minus_aug: usize,
}

impl Regrading {
    pub fn of(d: &AnnularDiagram, pointed: &PointedDiagram) -> Self {
        Regrading {
            n_minus: d.n_minus(),
            n0: d.annular_strands(),
            n_minus_aug: pointed.negative(CrossingKind::Augmenting),
        }
    }

    /// `(p, q, j)` on the E2 page of an annular class at (i, j, k).
    pub fn e2_position(&self, i: i32, j: i32, k: i32) -> (i32, i32, i32) {
        let (n0, nm) = (self.n0 as i32, self.n_minus_aug as i32);
        (i + self.n_minus as i32, k + n0, j + k + 3 * n0 - 3 * nm)
    }

    /// Homological degree in the augmented link of an annular class.
    pub fn total_degree(&self, i: i32, k: i32) -> i32 {
        i + k + self.n0 as i32 - self.n_minus_aug as i32
    }
}

#[derive(Clone, Debug)]
pub struct E2Comparison {
    pub akh: PoincarePolynomial,
    pub regrading: Regrading,
    pub predicted: BTreeMap<(i32, i32, i32), usize>,
    pub sequence: SpectralSequence,
    pub khr: PoincarePolynomial,
}

impl E2Comparison {
    pub fn e2_matches(&self) -> bool {
        self.predicted == self.sequence.pages[2].dims
    }

    /// Whether `E_infinity` summed along total degree equals Khr of the augmentation.
    pub fn converges(&self) -> bool {
        self.sequence.e_infinity().by_total_degree(self.sequence.n_minus) == self.khr
    }

    /// Spots where predicted and computed E2 dimensions differ.
    pub fn mismatches(&self) -> Vec<((i32, i32, i32), usize, usize)> {
        let e2 = &self.sequence.pages[2].dims;
        let mut keys: Vec<_> = self.predicted.keys().chain(e2.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|key| (key, self.predicted.get(&key).copied().unwrap_or(0), e2.get(&key).copied().unwrap_or(0)))
            .filter(|(_, a, b)| a != b)
            .collect()
    }
}

/// Computes the annular homology of `d`, the spectral sequence of its
/// augmentation and the homology the sequence converges to.
pub fn e2_vs_akh(d: &AnnularDiagram) -> Result<E2Comparison> {
    let akh = homology(&GradedComplex::build(d, Flavor::Annular)?);
    let dc = DoubleComplex::of_annular(d)?;
    let regrading = Regrading::of(d, &dc.pointed);
    let mut predicted = BTreeMap::new();
    for (&(i, j, k), &dim) in &akh.dims {
        *predicted.entry(regrading.e2_position(i, j, k)).or_insert(0) += dim;
    }
    let sequence = dc.pages()?;
    let khr = homology(&dc.complex);
    Ok(E2Comparison { akh, regrading, predicted, sequence, khr })
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub akh_rank: usize,
    pub khr_rank: usize,
    /// `(n, rank Khr^n, bound from annular homology)`.
    pub graded: Vec<(i32, usize, usize)>,
    pub regrading: Regrading,
}

impl RankReport {
    pub fn holds(&self) -> bool {
        self.akh_rank >= self.khr_rank && self.graded.iter().all(|&(_, k, b)| k <= b)
    }
}

/// Compares ranks of annular homology with reduced homology of the augmentation.
pub fn verify_rank_inequalities(d: &AnnularDiagram) -> Result<RankReport> {
    let akh = homology(&GradedComplex::build(d, Flavor::Annular)?);
    let pointed = augment(d);
    let khr = homology(&GradedComplex::reduced(&pointed)?);
    let regrading = Regrading::of(d, &pointed);
    let mut by_degree: BTreeMap<i32, (usize, usize)> = BTreeMap::new();
    for (&(i, _, _), &dim) in &khr.dims {
        by_degree.entry(i).or_default().0 += dim;
    }
    for (&(i, _, k), &dim) in &akh.dims {
        by_degree.entry(regrading.total_degree(i, k)).or_default().1 += dim;
    }
    Ok(RankReport {
        akh_rank: akh.total(),
        khr_rank: khr.total(),
        graded: by_degree.into_iter().map(|(n, (k, b))| (n, k, b)).collect(),
        regrading,
    })
}

/// Bigrading in the augmented unlink of the class `Phi(w)` for an annular
/// unlink generator given as a string of `+`/`-` labels (an optional `w`
/// before each label is ignored), with its symmetric resolution.
pub fn phi_grading(n: usize, labels: &str) -> Result<((i32, i32), Vec<u8>)> {
    let signs: Vec<char> = labels.chars().filter(|&c| c != 'w' && !c.is_whitespace()).collect();
    if signs.len() != n || signs.iter().any(|&c| c != '+' && c != '-') {
        return Err(Error::BadLabel(labels.to_string()));
    }
    let resolution: Vec<u8> = signs.iter().map(|&c| (c == '+') as u8).collect();
    let k = 2 * resolution.iter().map(|&b| b as i32).sum::<i32>() - n as i32;
    let (i, j) = (0, k);
    let n = n as i32;
    Ok(((i + k + n, j + k + 3 * n), resolution))
}
