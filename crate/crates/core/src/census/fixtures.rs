//! Named diagrams used by tests and the command line.

use std::collections::BTreeMap;

use super::braid::{ball_closure, braid_closure, one_strand_closure, Braid};
use super::forest::{forest_link, MarkedForest};
use crate::diagram::AnnularDiagram;
use crate::error::{Error, Result};

fn json(text: &str) -> AnnularDiagram {
    AnnularDiagram::from_json(text).expect("fixture parses")
}

fn braid(strands: usize, word: &[i32]) -> Braid {
    Braid::new(strands, word.to_vec()).expect("fixture braid")
}

fn unlink(n: usize) -> AnnularDiagram {
    AnnularDiagram::new(Vec::new(), Vec::new(), Vec::new(), vec![1; n]).expect("unlink")
}

/// Every named fixture.
pub fn fixtures() -> BTreeMap<&'static str, AnnularDiagram> {
    let mut m = BTreeMap::new();
    m.insert("unknot", json(r#"{"crossings": [], "free_loops": [0]}"#));
    m.insert("hopf+", ball_closure(&braid(2, &[1, 1])));
    m.insert("hopf-", ball_closure(&braid(2, &[-1, -1])));
    m.insert("trefoil", ball_closure(&braid(2, &[1, 1, 1])));
    m.insert("figure8", ball_closure(&braid(3, &[1, -2, 1, -2])));
    for (n, name) in ["U1", "U2", "U3", "U4"].into_iter().enumerate() {
        m.insert(name, unlink(n + 1));
    }
    m.insert("L3", unlink(2));
    m.insert(
        "L4",
        json(r#"{"crossings": [], "free_loops": [0], "seam": [{"loop": 0, "sign": 1}, {"loop": 0, "sign": -1}]}"#),
    );
    m.insert(
        "fig1",
        json(r#"{"crossings": [[3,1,4,4],[1,3,2,2]], "over": [1,1], "orientations": [1], "seam": [[4,1],[2,-1]]}"#),
    );
    m.insert("annular-hopf", forest_link(&MarkedForest::new(2, vec![(0, 1)], &[0]).unwrap()).unwrap());
    m.insert("annular-hopf-2", braid_closure(&braid(2, &[1, 1])));
    m.insert("braid-2-3", braid_closure(&braid(2, &[1, 1, 1])));
    m.insert("braid-3-mixed", braid_closure(&braid(3, &[1, -2, 1, 2])));
    m.insert("braid-3-positive", braid_closure(&braid(3, &[1, 2, 1, 2])));
    m.insert("trefoil-1", one_strand_closure(&braid(2, &[1, 1, 1])).unwrap());
    m.insert("figure8-1", one_strand_closure(&braid(3, &[1, -2, 1, -2])).unwrap());
    m.insert("cinquefoil-1", one_strand_closure(&braid(2, &[1, 1, 1, 1, 1])).unwrap());
    for pair in reidemeister_pairs() {
        m.insert(pair.left_name, pair.left);
        m.insert(pair.right_name, pair.right);
    }
    m
}

pub fn fixture_names() -> Vec<&'static str> {
    fixtures().into_keys().collect()
}

pub fn fixture(name: &str) -> Result<AnnularDiagram> {
    fixtures().remove(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// Two diagrams of the same link.
#[derive(Clone, Debug)]
pub struct ReidemeisterPair {
    pub left_name: &'static str,
    pub left: AnnularDiagram,
    pub right_name: &'static str,
    pub right: AnnularDiagram,
    /// Whether the pair is related by moves away from the puncture, so
    /// annular homology must agree too.
    pub annular: bool,
}

pub fn reidemeister_pairs() -> Vec<ReidemeisterPair> {
    vec![
        ReidemeisterPair {
            left_name: "r1-unknot",
            left: json(r#"{"crossings": [], "free_loops": [0]}"#),
            right_name: "r1-kink",
            right: ball_closure(&braid(2, &[1])),
            annular: false,
        },
        ReidemeisterPair {
            left_name: "markov-trefoil",
            left: ball_closure(&braid(2, &[1, 1, 1])),
            right_name: "markov-trefoil-stabilized",
            right: ball_closure(&braid(3, &[1, 1, 1, 2])),
            annular: false,
        },
        ReidemeisterPair {
            left_name: "r2-hopf",
            left: ball_closure(&braid(2, &[1, 1])),
            right_name: "r2-hopf-long",
            right: ball_closure(&braid(2, &[1, -1, 1, 1])),
            annular: true,
        },
        ReidemeisterPair {
            left_name: "r2-annular-unlink",
            left: unlink(2),
            right_name: "r2-annular-braid",
            right: braid_closure(&braid(2, &[1, -1])),
            annular: true,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_contents() {
        let f = fixtures();
        assert_eq!(f["hopf+"].n_plus(), 2);
        assert_eq!(f["hopf-"].n_minus(), 2);
        assert_eq!(f["fig1"].seam().len(), 2);
        assert_eq!(f["L4"].seam().len(), 2);
        assert_eq!(f["U4"].free_loops().len(), 4);
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    }
}
