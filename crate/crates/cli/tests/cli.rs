use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ecom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema").join(name);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

#[test]
fn quaternion_json_report() {
    let o = ecom(&["analyze", "--catalog", "Q,2", "--json"]);
    assert!(o.status.success());
    let r = json(&o);
    assert_eq!(r["verdict"]["kind"], "wedge_of_circles");
    assert_eq!(r["verdict"]["circles"], 3);
    assert!(r.get("timings").is_none());
    assert_valid(&schema("report.schema.json"), &r);
}

#[test]
fn p48_text_report() {
    let o = ecom(&["analyze", "--catalog", "P48"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("wedge of 167 circles"));
}

#[test]
fn cyclic_presentation_is_contractible() {
    let o = ecom(&["analyze", "--presentation", "< x | x^4 >", "--json"]);
    assert_eq!(json(&o)["verdict"]["kind"], "contractible");
}

#[test]
fn output_is_deterministic() {
    let a = ecom(&["analyze", "--catalog", "D,2,1", "--json"]);
    let b = ecom(&["analyze", "--catalog", "D,2,1", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_is_opt_in() {
    let o = ecom(&["analyze", "--catalog", "S3", "--json", "--timing"]);
    let r = json(&o);
    assert_eq!(r["timings"].as_array().unwrap().len(), 4);
    assert_valid(&schema("report.schema.json"), &r);
}

#[test]
fn every_source_kind() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("z2.json");
    std::fs::write(&table, "[[0,1],[1,0]]").unwrap();
    let o = ecom(&["analyze", "--table", table.to_str().unwrap(), "--json"]);
    assert_eq!(json(&o)["group"]["order"], 2);

    let o = ecom(&["analyze", "--perm", "(0 1);(0 1 2)", "--json"]);
    let r = json(&o);
    assert_eq!(r["group"]["order"], 6);
    assert_eq!(r["verdict"]["circles"], 8);

    // S3 x Z3: center Z3, same poset shape as S3
    let o = ecom(&["analyze", "--catalog", "S3", "--perm", "(0 1 2)", "--product", "--json"]);
    let r = json(&o);
    assert_eq!(r["group"]["order"], 18);
    assert_eq!(r["group"]["center_order"], 3);
    assert_eq!(r["group"]["source"], "S3 x perm (0 1 2)");
    assert_eq!(r["verdict"]["circles"], 8);
}

#[test]
fn exit_codes() {
    // parse and spec errors
    assert_eq!(ecom(&["analyze", "--presentation", "< x | x^ >"]).status.code(), Some(2));
    assert_eq!(ecom(&["analyze", "--presentation", "< x | w >"]).status.code(), Some(2));
    assert_eq!(ecom(&["analyze", "--catalog", "Nope"]).status.code(), Some(2));
    assert_eq!(ecom(&["analyze", "--catalog", "S3", "--catalog", "Z2"]).status.code(), Some(2));
    assert_eq!(ecom(&["analyze", "--table", "/nonexistent/table.json"]).status.code(), Some(2));
    assert_eq!(ecom(&["analyze"]).status.code(), Some(2));
    assert_eq!(ecom(&["bogus"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[[0,1],[0,1]]").unwrap();
    assert_eq!(ecom(&["analyze", "--table", bad.to_str().unwrap()]).status.code(), Some(2));

    // resource limits, by flag and by environment
    assert_eq!(ecom(&["analyze", "--catalog", "P120", "--max-order", "100"]).status.code(), Some(3));
    assert_eq!(
        ecom(&["analyze", "--presentation", "< x,y | x^2, y^2 >", "--max-cosets", "500"]).status.code(),
        Some(3)
    );
    assert_eq!(ecom(&["analyze", "--catalog", "P48", "--max-poset-nodes", "100"]).status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_ecom"))
        .args(["analyze", "--catalog", "Q,6"])
        .env("ECOM_MAX_ORDER", "16")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit 16"));
}

#[test]
fn export_poset_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q8.json");
    let o = ecom(&["export", "--catalog", "Q,2", "--what", "poset", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let p: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(p["nodes"].as_array().unwrap().len(), 10);
    assert_eq!(p["hasse_edges"].as_array().unwrap().len(), 12);

    let direct = ecom(&["analyze", "--catalog", "Q,2", "--json"]);
    let imported = ecom(&["analyze", "--poset", out.to_str().unwrap(), "--json"]);
    assert!(imported.status.success());
    assert_eq!(direct.stdout, imported.stdout);
}

#[test]
fn export_single_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("z5.json");
    assert!(ecom(&["export", "--catalog", "Z5", "--what", "poset", "--out", out.to_str().unwrap()]).status.success());
    let p: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(p["nodes"].as_array().unwrap().len(), 1);
    assert_eq!(p["hasse_edges"].as_array().unwrap().len(), 0);
}

/// Rank of a small sparse integer matrix over the rationals, by fraction-free
/// Gaussian elimination written independently of the library.
fn rank(rows: usize, cols: usize, triples: &[(usize, usize, i64)]) -> usize {
    let mut m = vec![vec![0i128; cols]; rows];
    for &(i, j, v) in triples {
        m[i][j] += v as i128;
    }
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let pivot = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(pivot) {
                    *x = *x * a - p * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn exported_p48_boundaries_recompute_to_167() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p48.txt");
    assert!(ecom(&["export", "--catalog", "P48", "--what", "boundaries", "--out", out.to_str().unwrap()])
        .status
        .success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    let counts: Vec<usize> = lines
        .next()
        .unwrap()
        .strip_prefix("# counts")
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    let triples: Vec<(usize, usize, i64)> = lines
        .map(|l| {
            let f: Vec<i64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            assert_eq!(f[0], 1, "P48 complex is a graph");
            (f[1] as usize, f[2] as usize, f[3])
        })
        .collect();
    assert_eq!(counts.len(), 2);
    let r = rank(counts[0], counts[1], &triples);
    assert_eq!((counts[0] - r, counts[1] - r), (1, 167));
}

#[test]
fn export_complex_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s3.json");
    assert!(ecom(&["export", "--catalog", "S3", "--what", "complex", "--out", out.to_str().unwrap()]).status.success());
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c["dim"], 1);
    assert_eq!(c["simplices"]["0"].as_array().unwrap().len(), 17);
    assert_eq!(c["simplices"]["1"].as_array().unwrap().len(), 24);
}

#[test]
fn verify_paper_all_rows_match() {
    let o = ecom(&["verify-paper", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = json(&o);
    assert_valid(&schema("verify.schema.json"), &s);
    assert_eq!(s["all_match"], true);
    let rows = s["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let q4 = rows.iter().find(|r| r["target"] == "Q,4").unwrap();
    assert_eq!((q4["expected_circles"].as_i64(), q4["circles"].as_i64()), (Some(15), Some(15)));
    let d31 = rows.iter().find(|r| r["target"] == "D,3,1").unwrap();
    assert_eq!(d31["circles"], 8);
    assert_eq!(rows.iter().find(|r| r["target"] == "P120").unwrap()["circles"], 1079);
}

#[test]
fn verify_paper_fails_under_tight_limits() {
    let o = ecom(&["verify-paper", "--max-order", "60"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("ERROR"));
}

#[test]
fn catalog_listing() {
    let o = ecom(&["catalog"]);
    let v = json(&o);
    let q2 = v.as_array().unwrap().iter().find(|e| e["name"] == "Q" && e["params"] == serde_json::json!([2])).unwrap();
    assert_eq!(q2["expected_circles"], 3);
    assert_eq!(q2["presentation_text"], "< x,y | y^4, x^2 = y^2, x*y*x^-1*y >");
}
