use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn wavesets(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wavesets")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = wavesets(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).expect("json output")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wavesets-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_gallery_sets() {
    for name in ["gallery:S8", "journe", "littlewood_paley", "six_interval"] {
        assert_eq!(json(&["verify", name])["ok"], Value::Bool(true), "{name}");
    }
}

#[test]
fn verify_rejects_a_non_tiling_file() {
    let path = temp_file("half.json", r#"[["1","2"]]"#);
    let (code, out, _) = wavesets(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], Value::Bool(false));
    assert_eq!(v["translation_defect"], "1");
}

#[test]
fn usage_and_lookup_errors_exit_2() {
    let (code, _, err) = wavesets(&["verify", "gallery:nowhere"]);
    assert_eq!(code, 2);
    assert!(err.contains("journe"), "available names listed: {err}");
    assert_eq!(wavesets(&["induce"]).0, 2);
    assert_eq!(wavesets(&["path", "journe", "0:0:1"]).0, 2);
    assert_eq!(wavesets(&["factorize", "halving"]).0, 2);
    assert_eq!(wavesets(&["verify", "S8", "--tol", "x"]).0, 2);
}

#[test]
fn metric_between_journe_and_littlewood_paley() {
    let d = json(&["metric", "journe", "littlewood_paley"])["d"].as_f64().unwrap();
    assert!((d - 5.210017).abs() < 1e-6, "{d}");
    let (code, out, _) = wavesets(&["metric", "S8", "S8", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["d", "0"]);
}

#[test]
fn induce_then_synthesize() {
    let h = json(&["induce", "journe"]);
    let path = temp_file("journe_h.json", &h.to_string());
    let back = json(&["synthesize", path.to_str().unwrap()]);
    assert_eq!(back["certificate"]["ok"], Value::Bool(true));
    assert_eq!(back["wavelet_set"], json(&["gallery", "get", "journe"])["value"]);
}

#[test]
fn synthesize_partial_map_file() {
    let path = temp_file(
        "partial.json",
        r#"{"map":[{"dom":["1/2","1"],"e":-1,"m":"0"}],"undefined":[["0","1/2"]],"tol":"1/2"}"#,
    );
    let (code, out, err) = wavesets(&["synthesize", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().next(), Some("lo,hi"));
}

#[test]
fn combine_csv_rows() {
    let (code, out, _) = wavesets(&["combine", "journe_u", "halving", "--depth", "10", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[..3], ["lo,hi,e,m", "0,1/8,1,0", "1/8,1/4,-1,1/2"]);
}

#[test]
fn combine_reports_trace() {
    let v = json(&["combine", "s8_u", "s8_v"]);
    for key in ["seed_S", "seed_N", "depth", "residual", "image_residual", "cycle_resolved"] {
        assert!(v["trace"].get(key).is_some(), "{key}");
    }
    assert!(v["map"]["map"].is_array());
}

#[test]
fn factorize_gallery_isomorphism() {
    let f = json(&["factorize", "S8_induced"]);
    assert!(f["u"].is_array());
    assert!(f["v"]["map"].is_array());
    let (code, out, _) = wavesets(&["factorize", "journe_induced", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("factor,lo,hi,e,m"));
    assert!(out.lines().any(|l| l.starts_with("u,")) && out.lines().any(|l| l.starts_with("v,")));
}

#[test]
fn path_csv_has_one_row_per_grid_point() {
    let (code, out, err) = wavesets(&["path", "journe", "0:1/4:1", "--format", "csv"]);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "t,interval_count,tiling_defect,d_start,d_littlewood_paley");
    assert_eq!(rows.len(), 6);
    assert!(rows[1].starts_with("0,4,0,0,"));
    assert!(rows[5].starts_with("1,2,0,"));
    assert!(rows[5].ends_with(",0"));
}

#[test]
fn gallery_list_and_get() {
    let names: Vec<String> = json(&["gallery", "list"])
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap().to_string())
        .collect();
    for name in ["littlewood_paley", "S8", "journe", "six_interval", "halving"] {
        assert!(names.iter().any(|n| n == name), "{name}");
    }
    let entry = json(&["gallery", "get", "map:halving"]);
    assert_eq!(entry["kind"], "unit_map");
    assert_eq!(entry["value"][0]["e"], -1);
}
