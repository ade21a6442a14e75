use proptest::prelude::*;

use arccover::geometry::{
    circle_through, invert, meet, segment_drawing, verify_drawing, Carrier, Meet,
};
use arccover::graph::{cycle, nested_triangulation, platonic, Platonic};

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn point() -> impl Strategy<Value = [f64; 2]> {
    (coord(), coord()).prop_map(|(x, y)| [x, y])
}

fn area2(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

proptest! {
    #[test]
    fn circle_through_hits_all_three(a in point(), b in point(), c in point()) {
        prop_assume!(area2(a, b, c).abs() > 1e-2);
        let g = circle_through(a, b, c).unwrap();
        for q in [a, b, c] {
            prop_assert!(g.residual(q) < 1e-7, "{:e}", g.residual(q));
        }
    }

    #[test]
    fn circle_meets_lie_on_both(
        c1 in point(), r1 in 0.5..5.0f64,
        c2 in point(), r2 in 0.5..5.0f64,
    ) {
        let a = Carrier::circle([c1[0], c1[1], 0.0], r1, [0.0, 0.0, 1.0]);
        let b = Carrier::circle([c2[0], c2[1], 0.0], r2, [0.0, 0.0, 1.0]);
        let d = (c1[0] - c2[0]).hypot(c1[1] - c2[1]);
        prop_assume!(d > 1e-3);
        if let Meet::Points(ps) = meet(&a, &b, 1e-9) {
            let expected = if d < r1 + r2 - 1e-6 && d > (r1 - r2).abs() + 1e-6 { 2 } else { ps.len() };
            prop_assert_eq!(ps.len(), expected);
            for p in ps {
                prop_assert!(a.distance(p) < 1e-7 && b.distance(p) < 1e-7);
            }
        } else {
            prop_assert!(false, "distinct circles reported coincident");
        }
    }

    #[test]
    fn segment_inversion_is_an_involution(
        pts in proptest::collection::vec(point(), 3),
        c in point(),
        rho in 0.5..4.0f64,
    ) {
        prop_assume!(area2(pts[0], pts[1], pts[2]).abs() > 1.0);
        let tri = [pts[0], pts[1], pts[2]];
        let d = segment_drawing(&cycle(3).unwrap(), &tri).unwrap();
        prop_assume!(verify_drawing(&d, 1e-9).valid);
        // keep the center well away from every carrier
        let cc = [c[0], c[1], 0.0];
        prop_assume!(d.supports.iter().all(|s| s.carrier().unwrap().distance(cc) > 0.2));
        let once = invert(&d, cc, rho, 1e-9).unwrap();
        prop_assert!(verify_drawing(&once, 1e-7).valid);
        let back = invert(&once, cc, rho, 1e-9).unwrap();
        for v in 0..3 {
            let (p, q) = (d.vertex(v), back.vertex(v));
            prop_assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-8);
        }
    }
}

#[test]
fn face_degrees_sum_to_twice_edges() {
    let mut embs: Vec<_> = Platonic::ALL.iter().map(|&p| platonic(p)).collect();
    embs.extend((2..=6).map(|k| nested_triangulation(k).unwrap()));
    for e in embs {
        let m = e.graph().m();
        let sum: usize = e.faces().iter().map(|f| f.degree()).sum();
        assert_eq!(sum, 2 * m);
        // Euler on the sphere
        assert_eq!(e.graph().n() + e.faces().len(), m + 2);
    }
}
