use super::*;
use crate::error::Error;
use crate::graph::{complete, platonic, Graph, Platonic};

const TAU: f64 = DEFAULT_TOLERANCE;

/// Brute-force isomorphism test for small graphs.
fn isomorphic(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = map.len();
        if v == g.n() {
            return true;
        }
        for w in 0..h.n() {
            if used[w] || g.degree(v) != h.degree(w) {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
                map.push(w);
                used[w] = true;
                if extend(g, h, map, used) {
                    return true;
                }
                used[w] = false;
                map.pop();
            }
        }
        false
    }
    g.n() == h.n() && g.m() == h.m() && extend(g, h, &mut Vec::new(), &mut vec![false; h.n()])
}

#[test]
fn icosahedron_drawing_certifies_seven_circles() {
    let d = icosahedron_seven_circles();
    let r = verify_drawing(&d, TAU);
    assert!(r.valid, "{:#?}", r.issues);
    assert_eq!(
        (r.supports_used, r.circles, r.lines, r.crossings),
        (7, 7, 0, 0)
    );
    assert!(isomorphic(
        &d.graph,
        platonic(Platonic::Icosahedron).graph()
    ));
    let s3 = 3f64.sqrt();
    let radii = [(1.0 + s3) / 2.0, 1.0, 1.0, (s3 - 1.0) / 2.0];
    for v in 0..12 {
        let p = d.vertex(v);
        assert!((p[0].hypot(p[1]) - radii[v / 3]).abs() < 1e-12);
    }
}

#[test]
fn cube_drawing_on_four_circles() {
    let d = cube_four_arcs();
    let r = verify_drawing(&d, TAU);
    assert!(r.valid, "{:#?}", r.issues);
    assert_eq!(r.circles, 4);
    assert!(isomorphic(&d.graph, platonic(Platonic::Cube).graph()));
}

#[test]
fn kpq_drawings_verify() {
    for p in 1..=6 {
        for q in 1..=6 {
            let d = kpq_circle_drawing(p, q).unwrap();
            let r = verify_drawing(&d, TAU);
            assert!(r.valid, "K({p},{q}): {:#?}", r.issues);
            assert_eq!(r.circles, p.div_ceil(2) * q.div_ceil(2), "K({p},{q})");
            assert_eq!(r.edges, p * q);
        }
    }
}

#[test]
fn books_lift_to_spheres() {
    for n in 1..=12 {
        let pages = complete_book(n);
        validate_book(n, &pages).unwrap();
        if n >= 4 {
            assert_eq!(pages.len(), n.div_ceil(2));
        }
        let d = book_to_spheres(n, &pages).unwrap();
        let r = verify_drawing(&d, TAU);
        assert!(r.valid, "K{n}: {:#?}", r.issues);
        assert_eq!(d.graph, complete(n).unwrap());
    }
    let spheres =
        |n: usize| verify_drawing(&book_to_spheres(n, &complete_book(n)).unwrap(), TAU).spheres;
    assert_eq!(spheres(5), 2);
    assert_eq!(spheres(3), 1);
    assert_eq!(spheres(6), 2);
    let bad = vec![vec![(0, 2), (1, 3), (0, 1), (1, 2), (2, 3), (0, 3)]];
    assert!(matches!(
        book_to_spheres(4, &bad),
        Err(crate::Error::Validation(_))
    ));
}

#[test]
fn crossing_witness_is_located() {
    let graph = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
    let h = std::f64::consts::FRAC_PI_2;
    let d = Drawing {
        dim: 2,
        graph,
        vertices: vec![
            vec![0.0, -1.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
            vec![1.0, -1.0],
        ],
        supports: vec![
            Support::Circle {
                center: [0.0, 0.0],
                radius: 1.0,
            },
            Support::Circle {
                center: [1.0, 0.0],
                radius: 1.0,
            },
        ],
        arcs: vec![
            Arc {
                edge: [0, 1],
                support: 0,
                sweep: Sweep::Angular {
                    start: -h,
                    extent: 2.0 * h,
                },
            },
            Arc {
                edge: [2, 3],
                support: 1,
                sweep: Sweep::Angular {
                    start: h,
                    extent: 2.0 * h,
                },
            },
        ],
    };
    let r = verify_drawing(&d, TAU);
    assert!(!r.valid);
    assert_eq!(r.crossings, 2);
    let mut ys: Vec<f64> = r
        .issues
        .iter()
        .filter(|i| i.kind == IssueKind::Crossing)
        .map(|i| {
            let p = i.point.as_ref().unwrap();
            assert!((p[0] - 0.5).abs() < 1e-12);
            p[1]
        })
        .collect();
    ys.sort_by(f64::total_cmp);
    assert!((ys[0] + 3f64.sqrt() / 2.0).abs() < 1e-12 && (ys[1] - 3f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn single_segment_and_empty_drawing() {
    let k2 = complete(2).unwrap();
    let d = segment_drawing(&k2, &[[0.0, 0.0], [1.0, 0.0]]).unwrap();
    let r = verify_drawing(&d, TAU);
    assert!(r.valid);
    assert_eq!((r.supports_used, r.lines), (1, 1));
    let r = verify_drawing(&Drawing::empty(2), TAU);
    assert!(r.valid);
    assert_eq!(r.cover_number, 0);
}

#[test]
fn structural_defects_are_reported() {
    let mut d = icosahedron_seven_circles();
    let gone = d.arcs.pop().unwrap();
    let r = verify_drawing(&d, TAU);
    assert!(r.issues.iter().any(|i| i.kind == IssueKind::MissingArc));
    d.arcs.push(gone);
    d.vertices[0][0] += 1e-6;
    let r = verify_drawing(&d, TAU);
    assert!(r
        .issues
        .iter()
        .any(|i| i.kind == IssueKind::OffSupport && i.vertex == Some(0)));
    let mut d = cube_four_arcs();
    d.arcs.push(d.arcs[0]);
    let r = verify_drawing(&d, TAU);
    assert!(r.issues.iter().any(|i| i.kind == IssueKind::DuplicateArc));
    assert!(r.issues.iter().any(|i| i.kind == IssueKind::Overlap));
}

#[test]
fn vertex_on_arc_is_reported() {
    let g = Graph::new(3, [(0, 1)]).unwrap();
    let mut d = segment_drawing(&g, &[[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]]).unwrap();
    d.graph = g;
    let r = verify_drawing(&d, TAU);
    assert!(r
        .issues
        .iter()
        .any(|i| i.kind == IssueKind::VertexOnArc && i.vertex == Some(2)));
}

#[test]
fn circle_through_examples() {
    match circle_through([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]).unwrap() {
        GenCircle2::Circle { center, radius } => {
            assert!((center[0] - 0.5).abs() < 1e-15 && (center[1] - 0.5).abs() < 1e-15);
            assert!((radius - 0.5f64.sqrt()).abs() < 1e-15);
        }
        other => panic!("{other:?}"),
    }
    match circle_through([0.0, 0.0], [1.0, 0.0], [2.0, 0.0]).unwrap() {
        GenCircle2::Line { dir, .. } => {
            assert!((dir[0].abs() - 1.0).abs() < 1e-15 && dir[1] == 0.0)
        }
        other => panic!("{other:?}"),
    }
    assert!(circle_through([1.0, 1.0], [1.0, 1.0], [0.0, 2.0]).is_err());
}

#[test]
fn k2_segment_inverts_to_one_circle() {
    let d = segment_drawing(&complete(2).unwrap(), &[[0.0, 0.0], [1.0, 0.0]]).unwrap();
    let img = invert(&d, [0.5, 1.0, 0.0], 1.0, TAU).unwrap();
    assert!(matches!(img.supports[0], Support::Circle { .. }));
    let r = verify_drawing(&img, TAU);
    assert!(r.valid, "{:#?}", r.issues);
    assert_eq!(r.circles, 1);
    // the image circle passes through the center
    let car = img.supports[0].carrier().unwrap();
    assert!(car.distance([0.5, 1.0, 0.0]) < 1e-12);
    assert!(invert(&d, [0.5, 0.0, 0.0], 1.0, TAU).is_err());

    // and back to a segment
    let back = invert(&img, [0.5, 1.0, 0.0], 1.0, TAU).unwrap();
    assert!(matches!(back.supports[0], Support::Line { .. }));
    assert!(verify_drawing(&back, TAU).valid);
    assert!(dist(back.vertex(1), [1.0, 0.0, 0.0]) < 1e-12);
}

#[test]
fn inversion_center_on_support_but_off_arc() {
    let d = segment_drawing(&complete(2).unwrap(), &[[0.0, 0.0], [1.0, 0.0]]).unwrap();
    // the carrier line through the center maps to itself
    let img = invert(&d, [3.0, 0.0, 0.0], 2.0, TAU).unwrap();
    assert_eq!(img.supports[0], d.supports[0]);
    assert!(verify_drawing(&img, TAU).valid);
    assert!(dist(img.vertex(0), [3.0 - 4.0 / 3.0, 0.0, 0.0]) < 1e-12);

    let ico = icosahedron_seven_circles();
    let car = ico.supports[0].carrier().unwrap();
    let on_arc = ico
        .arcs
        .iter()
        .find(|a| a.support == 0)
        .map(|a| ico.curve(a).unwrap().at(0.5))
        .unwrap();
    assert!(car.distance(on_arc) < 1e-12);
    assert!(matches!(
        invert(&ico, on_arc, 1.0, TAU),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn inversion_round_trips_constructions() {
    let ico = icosahedron_seven_circles();
    let c = [0.05, -0.1, 0.0];
    let back = invert(&invert(&ico, c, 0.8, TAU).unwrap(), c, 0.8, TAU).unwrap();
    for v in 0..12 {
        assert!(dist(ico.vertex(v), back.vertex(v)) < 10.0 * TAU);
    }
    assert!(verify_drawing(&back, TAU).valid);
    let img = invert(&ico, c, 0.8, TAU).unwrap();
    let r = verify_drawing(&img, TAU);
    assert!(r.valid, "{:#?}", r.issues);
    assert_eq!(r.circles, 7);

    let k = kpq_circle_drawing(3, 4).unwrap();
    let img = invert(&k, [0.3, 0.2, 5.0], 2.0, TAU).unwrap();
    let r = verify_drawing(&img, 1e-8);
    assert!(r.valid, "{:#?}", r.issues);
    assert_eq!(r.circles, 4);
}

fn dist(a: P3, b: P3) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

#[test]
fn meet_points_satisfy_both_circles() {
    let a = Carrier::circle([0.0, 0.0, 0.0], 1.0, [0.0, 0.0, 1.0]);
    let b = Carrier::circle([1.2, 0.3, 0.0], 0.7, [0.0, 0.0, 1.0]);
    let Meet::Points(pts) = meet(&a, &b, TAU) else {
        panic!()
    };
    assert_eq!(pts.len(), 2);
    for p in pts {
        assert!(a.distance(p) < TAU && b.distance(p) < TAU);
    }
    let far = Carrier::circle([5.0, 0.0, 0.0], 1.0, [0.0, 0.0, 1.0]);
    assert_eq!(meet(&a, &far, TAU), Meet::Points(vec![]));
    let kiss = Carrier::circle([2.0, 0.0, 0.0], 1.0, [0.0, 0.0, 1.0]);
    let Meet::Points(pts) = meet(&a, &kiss, TAU) else {
        panic!()
    };
    assert_eq!(pts.len(), 1);
}

#[test]
fn json_round_trip_gives_identical_report() {
    for d in [
        icosahedron_seven_circles(),
        kpq_circle_drawing(3, 5).unwrap(),
        cube_four_arcs(),
    ] {
        let back = Drawing::parse(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert_eq!(verify_drawing(&back, TAU), verify_drawing(&d, TAU));
    }
}

#[test]
fn svg_counts_and_determinism() {
    let ico = icosahedron_seven_circles();
    let opts = SvgOptions {
        guides: true,
        ..SvgOptions::default()
    };
    let svg = svg_export(&ico, &opts).unwrap();
    assert_eq!(svg.matches("stroke-dasharray").count(), 7);
    assert_eq!(svg.matches("<path").count(), 7);
    assert_eq!(svg.matches(r#"class="vertex""#).count(), 12);
    assert_eq!(svg, svg_export(&ico, &opts).unwrap());
    let cube = svg_export(&cube_four_arcs(), &SvgOptions::default()).unwrap();
    assert_eq!(cube.matches("<path").count(), 4);
    assert_eq!(cube.matches("stroke-dasharray").count(), 0);
    let empty = svg_export(&Drawing::empty(2), &SvgOptions::default()).unwrap();
    assert!(empty.contains("<svg") && empty.ends_with("</svg>\n"));
    assert!(matches!(
        svg_export(&kpq_circle_drawing(2, 2).unwrap(), &opts),
        Err(crate::Error::UnsupportedDimension(3))
    ));
}

#[test]
fn nested_triangles_drawing_is_plane() {
    for k in 2..=5 {
        let r = verify_drawing(&nested_triangles_drawing(k).unwrap(), TAU);
        assert!(r.valid, "G{k}: {:#?}", r.issues);
        assert_eq!(r.lines, 9 * k - 6);
    }
}
