use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arccover"))
        .args(args)
        .env_remove("ARCCOVER_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn gen_families() {
    let o = run(&["gen", "complete", "5"]);
    assert_eq!(code(&o), 0);
    let g = json_of(&o);
    assert_eq!(g["n"], 5);
    assert_eq!(g["edges"].as_array().unwrap().len(), 10);

    let o = run(&["gen", "platonic:icosahedron"]);
    assert_eq!(code(&o), 0);
    let g = json_of(&o);
    assert_eq!(g["edges"].as_array().unwrap().len(), 30);
    assert!(g["rotation"].is_array());

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k37.json");
    let o = run(&["gen", "bipartite", "3x7", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let g: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(g["n"], 10);
    assert_eq!(g["edges"].as_array().unwrap().len(), 21);
}

#[test]
fn bounds_from_family_and_file() {
    let o = run(&["bounds", "--family", "complete:24", "--q", "sigma23"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("sigma23")).unwrap();
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(&cols[1..3], &["5", "6"]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dodeca.json");
    assert_eq!(
        code(&run(&[
            "gen",
            "platonic:dodecahedron",
            "-o",
            path.to_str().unwrap()
        ])),
        0
    );
    let o = run(&[
        "bounds",
        "--graph",
        path.to_str().unwrap(),
        "--q",
        "sigma12",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    let b = v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["quantity"] == "sigma12")
        .unwrap();
    assert_eq!(b["lower"], 5);
    assert!(!b["provenance"].as_array().unwrap().is_empty());
}

#[test]
fn mip_cube_json() {
    let o = run(&["mip", "--family", "platonic:cube", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    let r = &v["result"];
    assert_eq!(r["status"], "optimal");
    assert_eq!(
        (r["ang_pi"].as_i64(), r["seg_lower"].as_i64()),
        (Some(5), Some(7))
    );
    assert_eq!(r["size"]["variables"], 48);
    assert_eq!(r["size"]["constraints"], 114);
    assert!(v["metadata"]["wall_time_secs"].is_number());
}

#[test]
fn mip_writes_lp_file() {
    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("octa.lp");
    let o = run(&[
        "mip",
        "--family",
        "platonic:octahedron",
        "--lp",
        lp.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&lp).unwrap();
    assert!(text.contains("Maximize") || text.contains("maximize"));
}

#[test]
fn draw_verify_svg_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ico.json");
    let svg = dir.path().join("ico.svg");
    let o = run(&[
        "draw",
        "ico7",
        "-o",
        out.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let drawn: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(drawn["verification"]["valid"], true);
    assert_eq!(drawn["verification"]["supports_used"], 7);
    let pic = fs::read_to_string(&svg).unwrap();
    assert!(pic.starts_with("<svg") || pic.starts_with("<?xml"));
    assert_eq!(pic.matches("class=\"vertex\"").count(), 12);

    let o = run(&["verify", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("valid: 7 circles"));
}

fn write(path: &Path, v: &Value) {
    fs::write(path, serde_json::to_string_pretty(v).unwrap()).unwrap();
}

/// Unit square with one diagonal, drawn with segments.
fn square() -> Value {
    let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
    let edges = [[0, 1], [1, 2], [2, 3], [0, 3], [0, 2]];
    let mut d = json!({"dim": 2, "graph": {"n": 4, "edges": []}, "vertices": pts, "supports": [], "arcs": []});
    for e in edges {
        add_segment(&mut d, e[0], e[1]);
    }
    d
}

/// Appends edge `(u, v)` drawn as a straight segment.
fn add_segment(d: &mut Value, u: usize, v: usize) {
    let p = |i: usize| {
        [
            d["vertices"][i][0].as_f64().unwrap(),
            d["vertices"][i][1].as_f64().unwrap(),
        ]
    };
    let (a, b) = (p(u), p(v));
    let len = (b[0] - a[0]).hypot(b[1] - a[1]);
    let dir = [(b[0] - a[0]) / len, (b[1] - a[1]) / len];
    let support = d["supports"].as_array().unwrap().len();
    d["graph"]["edges"]
        .as_array_mut()
        .unwrap()
        .push(json!([u, v]));
    d["supports"]
        .as_array_mut()
        .unwrap()
        .push(json!({"kind": "line", "point": a, "dir": dir}));
    d["arcs"]
        .as_array_mut()
        .unwrap()
        .push(json!({"edge": [u, v], "support": support, "sweep": {"t0": 0.0, "t1": len}}));
}

#[test]
fn verify_flags_tampered_crossing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    let mut d = square();
    write(&path, &d);
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    // add the other diagonal; it crosses the first at the center
    add_segment(&mut d, 1, 3);
    write(&path, &d);
    let o = run(&["verify", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    let issues = v["report"]["issues"].as_array().unwrap();
    let cross = issues
        .iter()
        .find(|i| i["kind"] == "crossing")
        .expect("crossing reported");
    let p = cross["point"].as_array().unwrap();
    assert!((p[0].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((p[1].as_f64().unwrap() - 0.5).abs() < 1e-9);
}

#[test]
fn verify_empty_drawing_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    write(
        &path,
        &json!({"dim": 2, "graph": {"n": 0, "edges": []}, "vertices": [], "supports": [], "arcs": []}),
    );
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(
        code(&o),
        0,
        "{}{}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn exit_codes() {
    // usage and validation errors
    assert_eq!(code(&run(&["bounds"])), 2);
    assert_eq!(code(&run(&["bounds", "--family", "bogus"])), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/drawing.json"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", junk.to_str().unwrap()])), 2);
    // size caps
    assert_eq!(code(&run(&["gen", "complete", "100000"])), 3);
    assert_eq!(
        code(&run(&[
            "bounds",
            "--family",
            "complete:30",
            "--strict-caps"
        ])),
        3
    );
    // without --strict-caps the oversize oracle is skipped
    assert_eq!(code(&run(&["bounds", "--family", "complete:30"])), 0);
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    write(&path, &square());
    let o = Command::new(env!("CARGO_BIN_EXE_arccover"))
        .args(["verify", path.to_str().unwrap(), "--format", "json"])
        .env("ARCCOVER_TOLERANCE", "1e-6")
        .output()
        .unwrap();
    assert_eq!(json_of(&o)["report"]["tolerance"], 1e-6);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["bounds", "--family", "platonic:cube", "--format", "json"][..],
        &["draw", "book", "5"][..],
        &["gen", "nested-tri", "4"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
