//! Bit-packed linear algebra over the two-element field.
//!
//! Rows are stored as packed `u64` words; elimination uses XOR row
//! operations and pivots on the lowest set bit, so every result is exact.

use std::fmt;

use crate::error::Error;

const WORD: usize = 64;

/// A vector over F2 packed 64 entries per word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND, i.e. the F2 dot product.
    pub fn dot(&self, other: &BitVec) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + t)
                }
            })
        })
    }

    /// Scatters `self` into a vector of length `len`, sending entry `i` to `positions[i]`.
    pub fn embed(&self, len: usize, positions: &[usize]) -> BitVec {
        BitVec::from_indices(len, self.ones().map(|i| positions[i]))
    }

    /// Gathers the entries at `positions`.
    pub fn restrict(&self, positions: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            if self.get(p) {
                v.set(k, true);
            }
        }
        v
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitVec({s})")
    }
}

/// A dense matrix over F2 with packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from sparse `(row, col)` entries; repeated entries cancel.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            m.data[r].flip(c);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        F2Matrix { rows: rows.len(), cols, data: rows }
    }

    /// Builds from a 0/1 table; panics on any other entry.
    pub fn from_table(table: &[&[u8]]) -> Self {
        let cols = table.first().map_or(0, |r| r.len());
        let rows = table
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged table");
                let bits: Vec<bool> = r
                    .iter()
                    .map(|&x| match x {
                        0 => false,
                        1 => true,
                        _ => panic!("entry {x} is not in F2"),
                    })
                    .collect();
                BitVec::from_bools(&bits)
            })
            .collect();
        Self::from_rows(cols, rows)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for r in col.ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.data[r].set(c, b)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> F2Matrix {
        let data = rows.iter().map(|&r| self.data[r].restrict(cols)).collect();
        F2Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            let s: String = (0..self.cols).map(|i| if row.get(i) { '1' } else { '.' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// An incrementally built echelon basis.
///
/// Each stored row is reduced against every earlier row, so reducing a
/// vector by the rows in insertion order clears every pivot. Rows carry a
/// tag vector recording how they combine a caller-chosen set of generators.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<(usize, BitVec, Option<usize>)>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_in_place(&self, v: &mut BitVec, mut on_use: impl FnMut(Option<usize>)) {
        for (pivot, row, tag) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                on_use(*tag);
            }
        }
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        self.reduce_in_place(&mut v, |_| {});
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        self.insert_tagged(v, None).is_some()
    }

    /// Inserts `v` with a tag; returns the reduced residue if it was new.
    fn insert_tagged(&mut self, v: &BitVec, tag: Option<usize>) -> Option<BitVec> {
        assert_eq!(v.len(), self.len);
        let r = self.reduce(v);
        let pivot = r.first_one()?;
        self.rows.push((pivot, r.clone(), tag));
        Some(r)
    }
}

/// Rank by Gaussian elimination on packed rows.
pub fn rank(m: &F2Matrix) -> usize {
    let mut e = Echelon::new(m.cols);
    for row in &m.data {
        e.insert(row);
    }
    e.rank()
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(m: &F2Matrix) -> (Vec<BitVec>, Vec<usize>) {
    let mut rows: Vec<BitVec> = m.data.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..m.cols {
        let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else { continue };
        rows.swap(next, p);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(c) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(c);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    (rows, pivots)
}

/// Basis of the null space `{x : m x = 0}`; its size is `cols - rank`.
pub fn kernel_basis(m: &F2Matrix) -> Vec<BitVec> {
    let (rows, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVec::unit(m.cols, free);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Basis of the column space.
pub fn image_basis(m: &F2Matrix) -> Vec<BitVec> {
    let mut e = Echelon::new(m.rows);
    let mut out = Vec::new();
    for c in 0..m.cols {
        let col = m.column(c);
        if e.insert(&col) {
            out.push(col);
        }
    }
    out
}

pub fn span_dim(vs: &[BitVec], len: usize) -> usize {
    let mut e = Echelon::new(len);
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// A subquotient `span(Z) / span(B)` with chosen representatives.
#[derive(Clone, Debug)]
pub struct Subquotient {
    echelon: Echelon,
    reps: Vec<BitVec>,
}

impl Subquotient {
    /// Fails with [`Error::NotContained`] when `span(B)` is not inside `span(Z)`.
    pub fn new(len: usize, z: &[BitVec], b: &[BitVec]) -> Result<Self, Error> {
        let mut echelon = Echelon::new(len);
        for v in b {
            echelon.insert_tagged(v, None);
        }
        let b_rank = echelon.rank();
        let mut reps = Vec::new();
        for v in z {
            if let Some(res) = echelon.insert_tagged(v, Some(reps.len())) {
                reps.push(res);
            }
        }
        let mut z_only = Echelon::new(len);
        for v in z {
            z_only.insert(v);
        }
        if z_only.rank() != b_rank + reps.len() {
            return Err(Error::NotContained);
        }
        Ok(Subquotient { echelon, reps })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[BitVec] {
        &self.reps
    }

    /// Coordinates of the class of `v` in the representative basis, or
    /// `None` when `v` is not in `span(Z)`.
    pub fn coords(&self, v: &BitVec) -> Option<BitVec> {
        let mut v = v.clone();
        let mut tag = BitVec::zeros(self.reps.len());
        self.echelon.reduce_in_place(&mut v, |t| {
            if let Some(t) = t {
                tag.flip(t);
            }
        });
        v.is_zero().then_some(tag)
    }
}

/// `dim span(Z) - dim span(B)`, checking `span(B) ⊆ span(Z)`.
pub fn subquotient_dim(len: usize, z: &[BitVec], b: &[BitVec]) -> Result<usize, Error> {
    Ok(Subquotient::new(len, z, b)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rank(table: &[Vec<bool>], cols: usize) -> usize {
        let mut rows: Vec<Vec<bool>> = table.to_vec();
        let mut r = 0;
        for c in 0..cols {
            if let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) {
                rows.swap(r, p);
                for i in 0..rows.len() {
                    if i != r && rows[i][c] {
                        for k in 0..cols {
                            let x = rows[r][k];
                            rows[i][k] ^= x;
                        }
                    }
                }
                r += 1;
            }
        }
        r
    }

    fn to_matrix(table: &[Vec<bool>], cols: usize) -> F2Matrix {
        F2Matrix::from_rows(cols, table.iter().map(|r| BitVec::from_bools(r)).collect())
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank(&F2Matrix::identity(3)), 3);
        assert_eq!(rank(&F2Matrix::zeros(4, 5)), 0);
        assert!(kernel_basis(&F2Matrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = F2Matrix::from_table(&[&[1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![BitVec::from_bools(&[true, true])]);
    }

    #[test]
    fn subquotient_edges() {
        let e: Vec<BitVec> = (0..3).map(|i| BitVec::unit(3, i)).collect();
        assert_eq!(subquotient_dim(3, &e, &[]).unwrap(), 3);
        assert_eq!(subquotient_dim(3, &e, &e).unwrap(), 0);
        let z = vec![BitVec::unit(3, 0)];
        let b = vec![BitVec::unit(3, 1)];
        assert!(matches!(subquotient_dim(3, &z, &b), Err(Error::NotContained)));
    }

    #[test]
    fn subquotient_coords() {
        let z: Vec<BitVec> = (0..3).map(|i| BitVec::unit(3, i)).collect();
        let b = vec![BitVec::from_bools(&[true, true, false])];
        let sq = Subquotient::new(3, &z, &b).unwrap();
        assert_eq!(sq.dim(), 2);
        // e0 and e1 are the same class modulo b
        let c0 = sq.coords(&z[0]).unwrap();
        let c1 = sq.coords(&z[1]).unwrap();
        assert_eq!(c0, c1);
        assert!(sq.coords(&b[0]).unwrap().is_zero());
    }

    #[test]
    #[should_panic]
    fn table_rejects_non_binary_entries() {
        F2Matrix::from_table(&[&[0, 2]]);
    }

    fn arb_table(max: usize) -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            (Just(c), proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r))
        })
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle((cols, table) in arb_table(64)) {
            let m = to_matrix(&table, cols);
            prop_assert_eq!(rank(&m), naive_rank(&table, cols));
        }

        #[test]
        fn rank_of_transpose((cols, table) in arb_table(20)) {
            let m = to_matrix(&table, cols);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn kernel_is_annihilated((cols, table) in arb_table(24)) {
            let m = to_matrix(&table, cols);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len(), cols - rank(&m));
            prop_assert_eq!(span_dim(&k, cols), k.len());
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn homology_of_composable_pair((cols, table) in arb_table(12)) {
            // A = inclusion of ker(B), so B A = 0
            let b = to_matrix(&table, cols);
            let ker = kernel_basis(&b);
            let a = F2Matrix::from_columns(cols, &ker);
            prop_assert!(b.mul(&a).is_zero());
            let kb = kernel_basis(&b).len();
            prop_assert!(kb >= rank(&a));
            let z = kernel_basis(&b);
            let img = image_basis(&a);
            prop_assert_eq!(subquotient_dim(cols, &z, &img).unwrap(), kb - rank(&a));
        }
    }
}
