//! Homology dimensions, Poincaré polynomials and Euler characteristics.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{GradedComplex, Grading};
use crate::diagram::AnnularDiagram;
use crate::error::{Error, Result};
use crate::gf2::rank;
use crate::reduction::SparseComplex;
use crate::union_find::UnionFind;

/// Crossing cap of the state-sum oracle.
pub const BRACKET_CAP: usize = 16;

/// Dimensions indexed by (i, j, k). `annular` only affects printing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoincarePolynomial {
    pub dims: BTreeMap<(i32, i32, i32), usize>,
    pub annular: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Term {
    pub t: i32,
    pub q: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<i32>,
    pub dim: usize,
}

impl PoincarePolynomial {
    pub fn new(annular: bool) -> Self {
        PoincarePolynomial { dims: BTreeMap::new(), annular }
    }

    pub fn add(&mut self, i: i32, j: i32, k: i32, dim: usize) {
        if dim > 0 {
            *self.dims.entry((i, j, k)).or_insert(0) += dim;
        }
    }

    pub fn dim(&self, i: i32, j: i32, k: i32) -> usize {
        self.dims.get(&(i, j, k)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Dimensions summed over k.
    pub fn bigraded(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for (&(i, j, _), &d) in &self.dims {
            *out.entry((i, j)).or_insert(0) += d;
        }
        out
    }

    /// Applies `f` to every grading, summing collisions.
    pub fn regrade(&self, annular: bool, f: impl Fn(i32, i32, i32) -> (i32, i32, i32)) -> Self {
        let mut out = PoincarePolynomial::new(annular);
        for (&(i, j, k), &d) in &self.dims {
            let (a, b, c) = f(i, j, k);
            out.add(a, b, c, d);
        }
        out
    }

    /// Product of Poincaré polynomials: dims of a tensor product.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = PoincarePolynomial::new(self.annular || other.annular);
        for (&(i, j, k), &d) in &self.dims {
            for (&(a, b, c), &e) in &other.dims {
                out.add(i + a, j + b, k + c, d * e);
            }
        }
        out
    }

    pub fn terms(&self) -> Vec<Term> {
        self.dims
            .iter()
            .map(|(&(i, j, k), &dim)| Term { t: i, q: j, f: self.annular.then_some(k), dim })
            .collect()
    }

    pub fn from_terms(terms: &[Term]) -> Self {
        let annular = terms.iter().any(|t| t.f.is_some());
        let mut out = PoincarePolynomial::new(annular);
        for t in terms {
            out.add(t.t, t.q, t.f.unwrap_or(0), t.dim);
        }
        out
    }

    /// Parses the text format written by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("bad polynomial {text:?}"));
        let text = text.trim();
        let mut out = PoincarePolynomial::new(false);
        if text == "0" {
            return Ok(out);
        }
        for mono in text.split(" + ") {
            let mut parts = mono.split('*');
            let dim: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let (mut i, mut j, mut k) = (0, 0, 0);
            for p in parts {
                let (var, exp) = p.split_once('^').ok_or_else(bad)?;
                let e: i32 = exp.parse().map_err(|_| bad())?;
                match var {
                    "t" => i = e,
                    "q" => j = e,
                    "f" => {
                        k = e;
                        out.annular = true;
                    }
                    _ => return Err(bad()),
                }
            }
            out.add(i, j, k, dim);
        }
        Ok(out)
    }

    pub fn euler(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(i, j, _), &d) in &self.dims {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            out.add_term(j, sign * d as i64);
        }
        out
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j, k), &d)) in self.dims.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{d}*t^{i}*q^{j}")?;
            if self.annular {
                write!(f, "*f^{k}")?;
            }
        }
        Ok(())
    }
}

/// Integer Laurent polynomial in q.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly(pub BTreeMap<i32, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let e = self.0.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.0 {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&a, &x) in &self.0 {
            for (&b, &y) in &other.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LaurentPoly::monomial(0, 1), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.0.iter().map(|(e, c)| format!("{c}*q^{e}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Homology of a complex by sparse cancellation, one (j, k) block at a time.
pub fn homology(c: &GradedComplex) -> PoincarePolynomial {
    let blocks: Vec<Vec<u32>> = c.blocks().into_values().collect();
    let parts: Vec<Vec<Grading>> = blocks
        .par_iter()
        .map(|gens| {
            let mut s = SparseComplex::from_block(c, gens);
            s.reduce(|_, _| true);
            s.survivors().into_iter().map(|x| c.grading(gens[x as usize] as usize)).collect()
        })
        .collect();
    let mut out = PoincarePolynomial::new(matches!(c.flavor(), crate::complex::Flavor::Annular));
    for g in parts.into_iter().flatten() {
        out.add(g.i, g.j, g.k, 1);
    }
    out
}

/// Homology from ranks of the differential matrices; slow, used as an oracle.
pub fn homology_dense(c: &GradedComplex) -> PoincarePolynomial {
    let dims = c.chain_dims();
    let rank_from = |gr: Grading| -> usize {
        let next = Grading { i: gr.i + 1, ..gr };
        if dims.contains_key(&gr) && dims.contains_key(&next) {
            rank(&c.d_matrix(gr))
        } else {
            0
        }
    };
    let mut out = PoincarePolynomial::new(matches!(c.flavor(), crate::complex::Flavor::Annular));
    for (&gr, &dim) in &dims {
        let prev = Grading { i: gr.i - 1, ..gr };
        let h = dim - rank_from(gr) - rank_from(prev);
        out.add(gr.i, gr.j, gr.k, h);
    }
    out
}

/// Euler characteristic of the chain groups.
pub fn chain_euler(c: &GradedComplex) -> LaurentPoly {
    let mut p = PoincarePolynomial::new(false);
    for (gr, d) in c.chain_dims() {
        p.add(gr.i, gr.j, gr.k, d);
    }
    p.euler()
}

pub fn graded_euler(p: &PoincarePolynomial) -> LaurentPoly {
    p.euler()
}

/// State sum `(-1)^{n-} q^{n+ - 2n-} sum_s (-q)^{|s|} (q + 1/q)^{circles(s)}`,
/// the unreduced Khovanov Euler characteristic, with circles counted by
/// union-find over crossing slots.
pub fn kauffman_bracket(d: &AnnularDiagram) -> Result<LaurentPoly> {
    let n = d.n();
    if n > BRACKET_CAP {
        return Err(Error::CapExceeded { crossings: n, cap: BRACKET_CAP });
    }
    let mut slot_of_arc: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for (p, &a) in x.arcs.iter().enumerate() {
            slot_of_arc.entry(a).or_default().push(4 * c + p);
        }
    }
    let loop_factor = LaurentPoly::monomial(1, 1).add(&LaurentPoly::monomial(-1, 1));
    let mut by_state: BTreeMap<(u32, usize), i64> = BTreeMap::new();
    for s in 0..1u32 << n {
        let mut uf = UnionFind::new(4 * n);
        for slots in slot_of_arc.values() {
            uf.union(slots[0], slots[1]);
        }
        for (c, x) in d.crossings().iter().enumerate() {
            let one = (s >> (n - 1 - c)) & 1 == 1;
            // the under-strand end at slot u pairs with u+1 in the 0-smoothing
            let u = (x.over as usize + 1) % 2;
            let (p0, p1) = if one { ((u + 3) % 4, (u + 1) % 4) } else { (u, u + 2) };
            uf.union(4 * c + p0, 4 * c + (p0 + 1) % 4);
            uf.union(4 * c + p1, 4 * c + (p1 + 1) % 4);
        }
        let circles = uf.count_sets() + d.free_loops().len();
        *by_state.entry((s.count_ones(), circles)).or_insert(0) += 1;
    }
    let mut sum = LaurentPoly::zero();
    for ((h, circles), count) in by_state {
        let sign = if h % 2 == 0 { 1 } else { -1 };
        let term = LaurentPoly::monomial(h as i32, sign * count).mul(&loop_factor.pow(circles as u32));
        sum = sum.add(&term);
    }
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    Ok(sum.mul(&LaurentPoly::monomial(np - 2 * nm, sign)))
}

#[cfg(test)]
mod tests;
