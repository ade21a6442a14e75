use super::*;
use crate::graph::{
    nested_triangulation, platonic, EmbeddedGraph, Graph, Platonic, RotationSystem,
};

fn triangle() -> EmbeddedGraph {
    let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    EmbeddedGraph::new(
        g,
        RotationSystem::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]),
        0,
    )
    .unwrap()
}

#[test]
fn triangle_model_and_bound() {
    let m = build_model(&triangle(), Strictness::Open).unwrap();
    assert_eq!(m.x.len(), 6);
    assert_eq!(m.pairs.len(), 3);
    let r = solve_mip(&m, Budget::default()).unwrap();
    assert_eq!(r.ang_pi, 0);
    assert_eq!(r.seg_lower, 3);
}

#[test]
fn octahedron_sizes_and_optimum() {
    let e = platonic(Platonic::Octahedron);
    let m = build_model(&e, Strictness::Open).unwrap();
    assert_eq!((m.size().variables, m.size().constraints), (60, 137));
    let r = solve_mip(&m, Budget::default()).unwrap();
    assert_eq!(r.status, MipStatus::Optimal);
    assert_eq!(r.ang_pi, 3);
    assert_eq!(r.seg_lower, 9);
}

#[test]
fn relaxation_dominates() {
    let e = platonic(Platonic::Octahedron);
    let m = build_model(&e, Strictness::Open).unwrap();
    let lp = solve_relaxation(&m);
    assert!(lp.value.unwrap() >= Rational::from(3));
}

#[test]
fn cube_optimum() {
    let m = build_model(&platonic(Platonic::Cube), Strictness::Open).unwrap();
    let r = solve_mip(&m, Budget::default()).unwrap();
    assert_eq!((r.ang_pi, r.seg_lower), (5, 7));
}

#[test]
fn nested_two_is_octahedron_like() {
    let e = nested_triangulation(2).unwrap();
    let m = build_model(&e, Strictness::Open).unwrap();
    let r = solve_mip(&m, Budget::default()).unwrap();
    assert_eq!(r.seg_lower, 9);
}
