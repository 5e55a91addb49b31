//! Closures of braids around the puncture.
//!
//! Strands run upward through the braid box at positions `0..strands`,
//! position 0 nearest the puncture, and close up counterclockwise around
//! it. Letter `i` (1-based, negative for the inverse) crosses positions
//! `|i| - 1` and `|i|`; positive letters give positive crossings.

use rand::Rng;

use crate::diagram::{AnnularDiagram, Crossing, SeamEntry};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Braid {
    pub strands: usize,
    pub word: Vec<i32>,
}

impl Braid {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Malformed("a braid needs at least one strand".into()));
        }
        if let Some(&bad) = word.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::Malformed(format!("letter {bad} on {strands} strands")));
        }
        Ok(Braid { strands, word })
    }
}

struct Closed {
    crossings: Vec<Crossing>,
    entering: Vec<[bool; 4]>,
    /// Arc crossing the seam at each position, `None` for untouched strands.
    start_arcs: Vec<Option<u32>>,
}

fn close(b: &Braid) -> Closed {
    let s = b.strands;
    let mut current: Vec<u32> = (1..=s as u32).collect();
    let mut next_id = s as u32 + 1;
    let mut touched = vec![false; s];
    let mut crossings = Vec::with_capacity(b.word.len());
    for &letter in &b.word {
        let i = letter.unsigned_abs() as usize;
        let (l, r) = (i - 1, i);
        touched[l] = true;
        touched[r] = true;
        let (to_right, to_left) = (next_id, next_id + 1);
        next_id += 2;
        // SW, SE, NE, NW; the SW-NE strand is over for positive letters
        let over = if letter > 0 { 0 } else { 1 };
        crossings.push([current[l], current[r], to_right, to_left, over]);
        current[l] = to_left;
        current[r] = to_right;
    }
    // identify the top of each position with its bottom
    let rename = |a: u32| current.iter().position(|&c| c == a).map_or(a, |pos| pos as u32 + 1);
    let crossings: Vec<Crossing> = crossings
        .into_iter()
        .map(|[a, b, c, d, o]| Crossing::new([rename(a), rename(b), rename(c), rename(d)], o as u8))
        .collect();
    let entering = vec![[true, true, false, false]; crossings.len()];
    let start_arcs = (0..s).map(|p| touched[p].then_some(p as u32 + 1)).collect();
    Closed { crossings, entering, start_arcs }
}

/// Closure of `b` around the puncture, every strand annular.
pub fn braid_closure(b: &Braid) -> AnnularDiagram {
    let closed = close(b);
    let mut seam = Vec::new();
    let mut free_loops = Vec::new();
    for arc in &closed.start_arcs {
        match arc {
            Some(a) => seam.push(SeamEntry::arc(*a, 1)),
            None => {
                seam.push(SeamEntry::free_loop(free_loops.len(), 1));
                free_loops.push(1);
            }
        }
    }
    AnnularDiagram::from_oriented(closed.crossings, &closed.entering, seam, free_loops)
        .expect("braid closures are valid diagrams")
}

/// Closure of `b` inside a ball: no strand winds around the puncture.
pub fn ball_closure(b: &Braid) -> AnnularDiagram {
    let closed = close(b);
    let loops = closed.start_arcs.iter().filter(|a| a.is_none()).count();
    AnnularDiagram::from_oriented(closed.crossings, &closed.entering, Vec::new(), vec![0; loops])
        .expect("braid closures are valid diagrams")
}

/// Closure in a ball, with the puncture placed so that only the outermost
/// closing strand passes around it.
pub fn one_strand_closure(b: &Braid) -> Result<AnnularDiagram> {
    let closed = close(b);
    let outer = closed.start_arcs[b.strands - 1].ok_or(Error::Malformed("outermost strand is untouched".into()))?;
    let loops = closed.start_arcs.iter().filter(|a| a.is_none()).count();
    AnnularDiagram::from_oriented(closed.crossings, &closed.entering, vec![SeamEntry::arc(outer, 1)], vec![0; loops])
}

/// A uniformly random word of the given length on `strands` strands.
pub fn random_braid(rng: &mut impl Rng, strands: usize, length: usize) -> Braid {
    let word = (0..length)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    Braid::new(strands, word).expect("letters in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_closure() {
        let d = braid_closure(&Braid::new(2, vec![1, 1]).unwrap());
        assert_eq!((d.n(), d.n_plus(), d.component_count()), (2, 2, 2));
        assert_eq!(d.total_winding(), 2);
        let d = ball_closure(&Braid::new(2, vec![-1, -1]).unwrap());
        assert_eq!((d.n_minus(), d.total_winding()), (2, 0));
    }

    #[test]
    fn untouched_strands_become_loops() {
        let d = braid_closure(&Braid::new(3, vec![1]).unwrap());
        assert_eq!(d.free_loops(), &[1]);
        assert_eq!(d.seam().len(), 3);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn trefoil_with_one_annular_strand() {
        let d = one_strand_closure(&Braid::new(2, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!((d.n(), d.component_count(), d.seam().len()), (3, 1, 1));
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(Braid::new(2, vec![2]).is_err());
        assert!(Braid::new(2, vec![0]).is_err());
    }
}
