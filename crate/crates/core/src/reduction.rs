//! Gaussian elimination on sparse based complexes over F2.
//!
//! Cancelling an arrow `x -> y` deletes both generators and adds
//! `z -> w` for every `z -> y` and `x -> w`. The result is chain homotopy
//! equivalent to the input; if only arrows between generators of equal
//! filtration level are cancelled the equivalence is filtered.

use crate::complex::GradedComplex;

/// A based complex on local indices `0..len` with toggled adjacency lists.
#[derive(Clone, Debug)]
pub struct SparseComplex {
    alive: Vec<bool>,
    out: Vec<Vec<u32>>,
    inc: Vec<Vec<u32>>,
}

fn toggle(list: &mut Vec<u32>, x: u32) {
    match list.binary_search(&x) {
        Ok(pos) => {
            list.remove(pos);
        }
        Err(pos) => list.insert(pos, x),
    }
}

impl SparseComplex {
    pub fn new(len: usize) -> Self {
        SparseComplex { alive: vec![true; len], out: vec![Vec::new(); len], inc: vec![Vec::new(); len] }
    }

    /// The restriction of `c` to a union of blocks, re-indexed by position in `gens`.
    pub fn from_block(c: &GradedComplex, gens: &[u32]) -> Self {
        let mut s = SparseComplex::new(gens.len());
        for (x, &g) in gens.iter().enumerate() {
            for &t in c.d(g as usize) {
                let y = gens.binary_search(&t).expect("block closed under d");
                s.toggle_arrow(x as u32, y as u32);
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.alive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    pub fn toggle_arrow(&mut self, x: u32, y: u32) {
        toggle(&mut self.out[x as usize], y);
        toggle(&mut self.inc[y as usize], x);
    }

    pub fn is_alive(&self, x: u32) -> bool {
        self.alive[x as usize]
    }

    pub fn out(&self, x: u32) -> &[u32] {
        &self.out[x as usize]
    }

    /// Cancels the arrow `x -> y`, which must exist.
    pub fn cancel(&mut self, x: u32, y: u32) {
        let zs: Vec<u32> = self.inc[y as usize].iter().copied().filter(|&z| z != x).collect();
        let ws: Vec<u32> = self.out[x as usize].iter().copied().filter(|&w| w != y).collect();
        for &z in &zs {
            for &w in &ws {
                self.toggle_arrow(z, w);
            }
        }
        for a in [x, y] {
            for z in std::mem::take(&mut self.inc[a as usize]) {
                toggle(&mut self.out[z as usize], a);
            }
            for w in std::mem::take(&mut self.out[a as usize]) {
                toggle(&mut self.inc[w as usize], a);
            }
            self.alive[a as usize] = false;
        }
    }

    /// Cancels arrows accepted by `allow` until none remain, preferring
    /// targets with few incoming arrows.
    pub fn reduce(&mut self, allow: impl Fn(u32, u32) -> bool) {
        for x in 0..self.len() as u32 {
            while self.alive[x as usize] {
                let pick = self.out[x as usize]
                    .iter()
                    .copied()
                    .filter(|&y| allow(x, y))
                    .min_by_key(|&y| self.inc[y as usize].len());
                match pick {
                    Some(y) => self.cancel(x, y),
                    None => break,
                }
            }
        }
    }

    pub fn survivors(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.alive[x as usize]).collect()
    }

    pub fn arrow_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acyclic_pair_cancels() {
        let mut s = SparseComplex::new(2);
        s.toggle_arrow(0, 1);
        s.reduce(|_, _| true);
        assert!(s.survivors().is_empty());
    }

    #[test]
    fn zigzag_creates_arrow() {
        // a -> b, c -> b, c -> d: cancelling a -> b leaves c -> d untouched,
        // cancelling c -> b instead would add a -> d
        let mut s = SparseComplex::new(4);
        s.toggle_arrow(0, 1);
        s.toggle_arrow(2, 1);
        s.toggle_arrow(2, 3);
        s.cancel(2, 1);
        assert_eq!(s.out(0), &[3]);
        s.reduce(|_, _| true);
        assert!(s.survivors().is_empty());
    }

    #[test]
    fn restricted_reduction_keeps_forbidden_arrows() {
        let mut s = SparseComplex::new(3);
        s.toggle_arrow(0, 1);
        s.toggle_arrow(1, 2);
        s.reduce(|x, _| x == 1);
        assert_eq!(s.survivors(), vec![0]);
        assert_eq!(s.arrow_count(), 0);
    }
}
