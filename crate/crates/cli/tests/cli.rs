use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn apaver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apaver"))
        .args(args)
        .env_remove("APAVER_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = apaver(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn dims_has_one_row_per_vertex() {
    let text = stdout(&["dims", "--m", "1", "--n", "2", "--N", "3"]);
    assert_eq!(text.lines().next(), Some("rank,s,t,region,dim"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1 + 3 + 6 + 9);
    let mut vertices: Vec<(String, String)> = rows.iter().map(|r| (r[1].clone(), r[2].clone())).collect();
    vertices.sort();
    vertices.dedup();
    assert_eq!(vertices.len(), rows.len());
}

#[test]
fn dims_agree_with_the_brute_force_sweep() {
    let out = apaver(&["verify", "--m", "1", "--n", "2", "--N", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert!(report["reports"].as_array().unwrap().len() >= 5);
}

#[test]
fn order_on_the_ninth_ring() {
    let text = stdout(&["order", "--N", "9", "--a", "4"]);
    assert_eq!(text.lines().next(), Some("rank,s,t,triangle,stage,sort_key"));
    let ring: Vec<Vec<String>> = csv_rows(&text).into_iter().filter(|r| r[3] == "9").collect();
    assert_eq!(ring.len(), 27);
    let first = ring[0][0].parse::<usize>().unwrap();
    let stages: Vec<&str> = ring.iter().map(|r| r[4].as_str()).collect();
    assert!(stages[..8].iter().all(|&s| s == "i"));
    assert!(stages[8..24].iter().all(|&s| s == "ii"));
    assert!(stages[24..].iter().all(|&s| s == "iii"));
    for (k, r) in ring.iter().enumerate() {
        assert_eq!(r[0].parse::<usize>().unwrap(), first + k);
    }
    let corners: Vec<(&str, &str)> = ring[24..].iter().map(|r| (r[1].as_str(), r[2].as_str())).collect();
    for c in [("9", "0"), ("0", "9"), ("-9", "-9")] {
        assert!(corners.contains(&c), "{corners:?}");
    }
}

#[test]
fn poincare_of_the_base_point() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["poincare", "--m", "0", "--n", "0", "--N", "0"])).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!([1]));
    assert_eq!(v["N"], 0);
}

#[test]
fn poincare_csv_sums_to_the_vertex_count() {
    let text = stdout(&["poincare", "--m", "1", "--n", "3", "--N", "4", "--format", "csv"]);
    let total: u64 = csv_rows(&text).iter().map(|r| r[1].parse::<u64>().unwrap()).sum();
    assert_eq!(total, 1 + 3 + 6 + 9 + 12);
}

#[test]
fn classify_and_cells_cover_the_triangle() {
    let text = stdout(&["classify", "--N", "2", "--a", "1"]);
    assert_eq!(csv_rows(&text).len(), 10);
    let cells: serde_json::Value = serde_json::from_str(&stdout(&["cells", "--N", "2", "--a", "1"])).unwrap();
    let cells = cells.as_array().unwrap();
    assert_eq!(cells.len(), 10);
    assert!(cells.iter().all(|c| c["windows"].as_object().unwrap().len() == 6));
    let text = stdout(&["cells", "--N", "2", "--a", "1", "--format", "csv"]);
    assert_eq!(text.lines().next(), Some("s,t,region,a,dimension,i,j,k,x,y,z"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["classify", "--N", "2", "--a", "3", "--m", "1", "--n", "2"][..],
        &["dims", "--N", "2"][..],
        &["dims", "--m", "1", "--n", "2"][..],
        &["dims", "--m", "2", "--n", "1", "--N", "2"][..],
        &["order", "--N", "2", "--format", "svg"][..],
        &["figure", "--N", "2", "--format", "csv"][..],
        &["verify", "--m", "0", "--n", "0", "--N", "1", "--q", "2"][..],
        &["verify", "--m", "1", "--n", "2", "--N", "1", "--q", "4"][..],
        &["frobnicate"][..],
    ] {
        assert_eq!(apaver(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn runtime_errors_exit_with_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_apaver"))
        .args(["verify", "--m", "1", "--n", "2", "--N", "2"])
        .env("APAVER_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn out_flag_writes_identical_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let out = apaver(&["figure", "--kind", "order", "--N", "5", "--a", "2", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

fn golden(name: &str, args: &[&str]) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let svg = stdout(args);
    if std::env::var_os("APAVER_BLESS").is_some() {
        fs::write(&path, &svg).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap();
    assert!(svg == expected, "{name} differs from its golden copy; rerun with APAVER_BLESS=1 after review");
}

#[test]
fn type_figure_matches_golden() {
    golden("types_N4_a0.svg", &["figure", "--kind", "types", "--N", "4", "--a", "0"]);
}

#[test]
fn triangle_figure_matches_golden() {
    golden("triangles_N3.svg", &["figure", "--kind", "triangles", "--N", "3"]);
}

#[test]
fn movement_figure_matches_golden() {
    golden("movement_N6_a2.svg", &["figure", "--kind", "movement", "--N", "6", "--a", "2"]);
}

#[test]
fn order_figure_matches_golden() {
    golden("order_N9_a4.svg", &["figure", "--kind", "order", "--N", "9", "--a", "4"]);
}

#[test]
fn order_figure_labels_follow_the_filtration() {
    let svg = stdout(&["figure", "--kind", "order", "--N", "3", "--a", "1"]);
    let circles = svg.matches("<circle").count();
    assert_eq!(circles, 19);
    for rank in 1..=19 {
        assert!(svg.contains(&format!(">{rank}</text>")), "label {rank} missing");
    }
    assert!(svg.contains(r#"viewBox="0 0 800 760""#));
}
