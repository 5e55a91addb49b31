use super::*;

fn hopf_plus() -> AnnularDiagram {
    AnnularDiagram::from_json(r#"{"crossings": [[4,1,3,2],[2,3,1,4]]}"#).unwrap()
}

#[test]
fn unknot_loop() {
    let d = AnnularDiagram::from_json(r#"{"crossings": [], "free_loops": [1]}"#).unwrap();
    assert_eq!(d.n(), 0);
    assert_eq!(d.seam().len(), 1, "implicit seam entry");
    let r = d.resolve(&[]).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r.circles[0].is_nontrivial());
}

#[test]
fn hopf_signs_and_circles() {
    let d = hopf_plus();
    assert_eq!(d.component_count(), 2);
    assert_eq!((d.n_plus(), d.n_minus()), (2, 0));
    assert_eq!(d.resolve(&[0, 0]).unwrap().len(), 2);
    assert_eq!(d.resolve(&[0, 1]).unwrap().len(), 1);
    assert_eq!(d.resolve(&[1, 1]).unwrap().len(), 2);
}

#[test]
fn reversing_one_component_flips_signs() {
    let d = AnnularDiagram::from_json(r#"{"crossings": [[4,1,3,2],[2,3,1,4]], "orientations": [1,-1]}"#)
        .unwrap();
    assert_eq!((d.n_plus(), d.n_minus()), (0, 2));
}

#[test]
fn validation_errors() {
    assert!(matches!(
        AnnularDiagram::from_json(r#"{"crossings": [[1,2,3,4]]}"#),
        Err(Error::OpenStrand { .. })
    ));
    assert!(matches!(
        AnnularDiagram::from_json(r#"{"crossings": [[1,1,1,2],[2,3,3,2]]}"#),
        Err(Error::ArcMultiplicity { .. })
    ));
    assert!(matches!(
        AnnularDiagram::from_json(r#"{"crossings": [[1,2,2,1]], "seam": [[7,1]]}"#),
        Err(Error::SeamUnknownArc(7))
    ));
    assert!(matches!(
        AnnularDiagram::from_json(r#"{"crossings": [[1,2,2,1]], "seam": [[1,1],[1,-1]]}"#),
        Err(Error::SeamRepeated(1))
    ));
    assert!(matches!(
        AnnularDiagram::from_json(r#"{"crossings": [], "free_loops": [0], "seam": [{"loop":0,"sign":1}]}"#),
        Err(Error::LoopSeamMismatch { .. })
    ));
    assert!(matches!(
        AnnularDiagram::from_json(r#"{"crossings": [[1,2,2,1]], "orientations": [1,1]}"#),
        Err(Error::OrientationCount { expected: 1, got: 2 })
    ));
    assert!(matches!(AnnularDiagram::from_json(r#"{"crossings": 3}"#), Err(Error::Malformed(_))));
    assert!(matches!(
        AnnularDiagram::from_json(r#"{"crossings": [], "free_loops": [2]}"#),
        Err(Error::Malformed(_))
    ));
}

#[test]
fn non_planar_gauss_code_rejected() {
    // one crossing with opposite slots glued: a curve on the torus
    let r = AnnularDiagram::from_json(r#"{"crossings": [[1,2,1,2]]}"#);
    assert!(matches!(r, Err(Error::NonPlanar)), "{r:?}");
}

#[test]
fn seam_winding_out_of_range() {
    // the unoriented smoothing of this kink would wind twice
    let r = AnnularDiagram::from_json(r#"{"crossings": [[1,2,2,1]], "seam": [[1,1],[2,-1]]}"#);
    assert!(matches!(r, Err(Error::WindingOutOfRange { winding: 2 | -2, .. })), "{r:?}");
    assert!(AnnularDiagram::from_json(r#"{"crossings": [[1,2,2,1]], "seam": [[1,1],[2,1]]}"#).is_ok());
}

#[test]
fn json_round_trip() {
    let text = r#"{"crossings": [[3,1,4,4],[1,3,2,2]], "over": [1,1], "orientations": [1], "seam": [[4,1],[2,-1]]}"#;
    let d = AnnularDiagram::from_json(text).unwrap();
    let again = AnnularDiagram::from_json(&d.to_json()).unwrap();
    assert_eq!(d, again);
    assert_eq!(d.seam().len(), 2);
}

#[test]
fn augment_shapes() {
    let u2 = AnnularDiagram::from_json(r#"{"crossings": [], "free_loops": [1,1]}"#).unwrap();
    let p = augment(&u2);
    assert_eq!(p.diagram.n(), 4);
    assert_eq!(p.diagram.n_plus(), 4);
    assert_eq!(p.diagram.component_count(), 3);
    assert_eq!(p.gap_arcs.len(), 3);
    assert_eq!(p.count(CrossingKind::Augmenting), 4);

    let h = augment(&hopf_plus());
    assert_eq!(h.diagram.n(), 2);
    assert_eq!(h.diagram.component_count(), 3);
    assert_eq!(h.basepoint, Basepoint::Loop(0));

    let neg = AnnularDiagram::from_json(r#"{"crossings": [], "free_loops": [-1]}"#).unwrap();
    let p = augment(&neg);
    assert_eq!((p.diagram.n_plus(), p.diagram.n_minus()), (0, 2));
}

#[test]
fn disjoint_union_counts() {
    let u = hopf_plus().disjoint_union(&hopf_plus());
    assert_eq!(u.n(), 4);
    assert_eq!(u.component_count(), 4);
    assert_eq!(u.resolve(&[0, 0, 0, 0]).unwrap().len(), 4);
}
