use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cospectral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_prints_one_line_per_graph() {
    let o = run(&["generate", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn generate_rejects_odd_and_large_orders() {
    assert_eq!(run(&["generate", "7"]).status.code(), Some(1));
    assert_eq!(run(&["generate", "16"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["census", "--table", "4", "--order", "12"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--order", "12"]).status.code(), Some(2));
}

#[test]
fn table_one_row_at_order_12() {
    let o = run(&["census", "--table", "1", "--order", "12", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "order,graphs,rep_edge,rep_edge_pct,rep_vertex,rep_vertex_pct\n12,85,3,3.5,2,2.4\n"
    );
}

#[test]
fn reports_do_not_depend_on_job_count() {
    let a = run(&[
        "census", "--table", "3", "--order", "12", "--format", "json", "--jobs", "1",
    ]);
    let b = run(&[
        "census", "--table", "3", "--order", "12", "--format", "json", "--jobs", "3",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compose_writes_graphs_and_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("prisms.g6");
    let o = run(&[
        "compose",
        "--kind",
        "vertex",
        "--left",
        "C~",
        "--left-anchor",
        "0",
        "--right",
        "C~",
        "--right-anchor",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = fs::read_to_string(&out).unwrap();
    assert_eq!(lines.lines().count(), 6);
    let prov = fs::read_to_string(dir.path().join("prisms.g6.provenance.csv")).unwrap();
    let mut rows = prov.lines();
    assert_eq!(
        rows.next(),
        Some("index,kind,left,left_anchor,right,right_anchor,stitch,graph6")
    );
    assert_eq!(rows.count(), 6);

    let canon: Vec<String> = lines
        .lines()
        .map(|l| {
            let g = cospectral::Graph::from_graph6(l).unwrap();
            cospectral::canon::canonical_form(&g).canonical_graph6
        })
        .collect();
    let prism = cospectral::canon::canonical_form(&cospectral::Graph::prism()).canonical_graph6;
    assert!(canon.iter().all(|c| *c == prism));
}

#[test]
fn compose_single_stitch_and_edges() {
    let o = run(&[
        "compose",
        "--kind",
        "edge",
        "--left",
        "C~",
        "--left-anchor",
        "0-1",
        "--right",
        "C~",
        "--right-anchor",
        "2-3",
        "--stitch",
        "0:2,1:3",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let g = cospectral::Graph::from_graph6(stdout(&o).trim()).unwrap();
    assert_eq!(g.order(), 8);
    assert!(g.is_k_regular(3));

    let bad = run(&[
        "compose",
        "--kind",
        "vertex",
        "--left",
        "C~",
        "--left-anchor",
        "0",
        "--right",
        "C~",
        "--right-anchor",
        "0",
        "--stitch",
        "1:0,2:2,3:3",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn ingest_names_duplicate_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.g6");
    fs::write(&path, "C~\nC~\n").unwrap();
    let o = run(&["ingest", path.to_str().unwrap(), "--order", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lines 1 and 2"));

    fs::write(&path, "C~\n").unwrap();
    let o = run(&["ingest", path.to_str().unwrap(), "--order", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "C~\n");
}

#[test]
fn partition_and_ratio() {
    let o = run(&["partition", "--order", "10", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let sizes: usize = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(sizes, 19);

    let o = run(&["ratio", "--order", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0/0 = n/a\n");
}

#[test]
fn corpus_directory_supplies_large_orders() {
    let dir = tempfile::tempdir().unwrap();
    let lines = stdout(&run(&["generate", "8"]));
    fs::write(dir.path().join("cubic_8.g6"), lines).unwrap();
    let o = run(&[
        "census",
        "--table",
        "1",
        "--order",
        "8",
        "--format",
        "csv",
        "--corpus",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("8,5,0,0,0,0\n"));
    let o = run(&[
        "census",
        "--table",
        "1",
        "--order",
        "16",
        "--corpus",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}
