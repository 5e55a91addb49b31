use super::*;
use crate::complex::Flavor;
use crate::diagram::Basepoint;

fn diagram(text: &str) -> AnnularDiagram {
    AnnularDiagram::from_json(text).unwrap()
}

fn hopf() -> AnnularDiagram {
    diagram(r#"{"crossings": [[4,1,3,2],[2,3,1,4]]}"#)
}

fn trefoil() -> AnnularDiagram {
    diagram(r#"{"crossings": [[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#)
}

#[test]
fn reduced_unknot() {
    let d = diagram(r#"{"crossings": [], "free_loops": [0]}"#);
    let c = GradedComplex::build(&d, Flavor::Reduced(Basepoint::Loop(0))).unwrap();
    assert_eq!(homology(&c).to_string(), "1*t^0*q^0");
}

#[test]
fn hopf_reduced_ranks() {
    let c = GradedComplex::build(&hopf(), Flavor::Reduced(Basepoint::Arc(1))).unwrap();
    let h = homology(&c);
    assert_eq!(h.to_string(), "1*t^0*q^1 + 1*t^2*q^5");
    assert_eq!(h.euler(), LaurentPoly::monomial(1, 1).add(&LaurentPoly::monomial(5, 1)));
}

#[test]
fn sparse_matches_dense() {
    for d in [hopf(), trefoil(), hopf().disjoint_union(&trefoil())] {
        for flavor in [Flavor::Unreduced, Flavor::Annular, Flavor::Reduced(Basepoint::Arc(1))] {
            let c = GradedComplex::build(&d, flavor).unwrap();
            assert_eq!(homology(&c), homology_dense(&c));
        }
    }
}

#[test]
fn bracket_small_cases() {
    let q = |e| LaurentPoly::monomial(e, 1);
    let loop_factor = q(1).add(&q(-1));
    assert_eq!(kauffman_bracket(&diagram(r#"{"crossings": [], "free_loops": [0]}"#)).unwrap(), loop_factor);
    assert_eq!(
        kauffman_bracket(&diagram(r#"{"crossings": [], "free_loops": [0, 1]}"#)).unwrap(),
        loop_factor.pow(2)
    );
}

#[test]
fn euler_matches_bracket() {
    for d in [hopf(), trefoil(), trefoil().disjoint_union(&hopf())] {
        let c = GradedComplex::build(&d, Flavor::Unreduced).unwrap();
        let h = homology(&c);
        assert_eq!(h.euler(), kauffman_bracket(&d).unwrap());
        assert_eq!(chain_euler(&c), h.euler());
    }
}

#[test]
fn trefoil_rank() {
    let c = GradedComplex::build(&trefoil(), Flavor::Unreduced).unwrap();
    assert_eq!(homology(&c).total(), 6);
}

#[test]
fn bracket_cap() {
    let mut d = trefoil();
    for _ in 0..5 {
        d = d.disjoint_union(&trefoil());
    }
    assert!(matches!(kauffman_bracket(&d), Err(Error::CapExceeded { crossings: 18, .. })));
}

#[test]
fn text_round_trip() {
    let mut p = PoincarePolynomial::new(true);
    p.add(0, 1, 1, 1);
    p.add(0, -1, -1, 2);
    let text = p.to_string();
    assert_eq!(text, "2*t^0*q^-1*f^-1 + 1*t^0*q^1*f^1");
    assert_eq!(PoincarePolynomial::parse(&text).unwrap(), p);
    assert!(PoincarePolynomial::parse("1*x^2").is_err());
}
