use std::path::Path;
use std::process::{Command, Output};

fn geoflow(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoflow"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = geoflow(args, dir);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn report(dir: &Path, name: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn points_to_flow_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        &[
            "gen-points",
            "--density",
            "poincare:1",
            "--n",
            "300",
            "--seed",
            "4",
            "--out",
            "points.csv",
        ],
        d,
    );
    let points = std::fs::read_to_string(d.join("points.csv")).unwrap();
    assert!(points.starts_with("x,y\n"));
    ok(&["triangulate", "--in", "points.csv", "--out", "edges.csv"], d);
    assert!(std::fs::read_to_string(d.join("edges.csv"))
        .unwrap()
        .starts_with("u,v\n"));
    let out = geoflow(
        &[
            "flow",
            "--in",
            "edges.csv",
            "--out",
            "report.json",
            "--per-vertex",
            "t.csv",
        ],
        d,
    );
    assert!(out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("matrix bytes") && stderr.contains("flow bytes"),
        "{stderr}"
    );
    let rep = report(d, "report.json");
    for field in [
        "n",
        "m",
        "diameter",
        "vertex_flow",
        "edge_flow",
        "max_vertex_flow",
        "max_edge_flow",
        "avg_vertex_flow",
        "avg_edge_flow",
    ] {
        assert!(rep.get(field).is_some(), "missing {field}");
    }
    let n = rep["n"].as_u64().unwrap() as usize;
    let per_vertex = std::fs::read_to_string(d.join("t.csv")).unwrap();
    assert_eq!(per_vertex.lines().next(), Some("v,T"));
    assert_eq!(per_vertex.lines().count(), n + 1);
}

#[test]
fn bethe_lattice_flow() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        &[
            "graph", "--family", "bethe", "--k", "3", "--depth", "2", "--out", "g.csv",
        ],
        d,
    );
    let stdout = ok(&["flow", "--in", "g.csv", "--out", "r.json", "--sweep", "jacobi"], d);
    assert!(stdout.contains("max_vflow=36"), "{stdout}");
    let rep = report(d, "r.json");
    assert_eq!(rep["max_vertex_flow"].as_f64(), Some(36.0));
    assert_eq!(rep["argmax_vertex"].as_u64(), Some(0));
}

#[test]
fn augment_and_components() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        &[
            "graph",
            "--family",
            "er",
            "--n",
            "60",
            "--p",
            "0.02",
            "--seed",
            "1",
            "--out",
            "sparse.csv",
        ],
        d,
    );
    let out = geoflow(&["flow", "--in", "sparse.csv", "--out", "r.json"], d);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--largest-component"));
    ok(
        &["flow", "--in", "sparse.csv", "--out", "r.json", "--largest-component"],
        d,
    );
    assert!(report(d, "r.json")["vertex_ids"].is_array());

    ok(&["graph", "--family", "complete", "--n", "6", "--out", "k6.csv"], d);
    ok(
        &[
            "augment",
            "--in",
            "k6.csv",
            "--matchings",
            "2",
            "--seed",
            "3",
            "--out",
            "k6b.csv",
        ],
        d,
    );
    assert_eq!(
        std::fs::read(d.join("k6.csv")).unwrap(),
        std::fs::read(d.join("k6b.csv")).unwrap()
    );
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("s.json"),
        r#"{"family":"complete","n_list":[4,8],"trials":1,"seed":2}"#,
    )
    .unwrap();
    ok(&["sweep", "--config", "s.json", "--out", "out.csv"], d);
    let csv = std::fs::read_to_string(d.join("out.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "family,params,seed,n,m,diameter,avg_vflow,max_vflow,avg_eflow,max_eflow"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("complete,n=8,2:mean,8,28,1,7,7,"));
}

#[test]
fn bad_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(
        !geoflow(&["gen-points", "--density", "nope", "--n", "5", "--out", "p.csv"], d)
            .status
            .success()
    );
    assert!(!geoflow(&["graph", "--family", "er", "--out", "g.csv"], d)
        .status
        .success());
    assert!(!geoflow(&["triangulate", "--in", "missing.csv", "--out", "e.csv"], d)
        .status
        .success());
}
