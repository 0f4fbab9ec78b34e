use std::process::Command;

use perciso::experiment::Manifest;

fn perciso(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_perciso")).args(args).output().unwrap()
}

#[test]
fn beta_at_p_one() {
    let o = perciso(&["beta", "--p", "1", "--dir", "1,0", "--n", "64", "--replicas", "3"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("dir_x,dir_y,beta_mean,beta_stderr,samples,scale"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[2].parse::<f64>().unwrap(), 63.0 / 64.0);
    assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn wulff_l1_writes_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = perciso(&["wulff", "--norm", "l1", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("wulff.json")).unwrap()).unwrap();
    assert!((j["phi"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert!(std::fs::read_to_string(dir.path().join("wulff.svg")).unwrap().starts_with("<svg"));
    assert!(o.stdout.is_empty());
}

#[test]
fn manifest_replay_is_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let o = perciso(&["cheeger", "--p", "1", "--n-list", "4,8", "--replicas", "2", "--out", a.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = a.path().join("manifest.json");
    let o = Command::new(env!("CARGO_BIN_EXE_perciso"))
        .args(["--manifest", m.to_str().unwrap(), "--out", b.path().to_str().unwrap()])
        .env("PERCISO_THREADS", "4")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for name in Manifest::load(&m).unwrap().artifacts {
        assert_eq!(std::fs::read(a.path().join(&name)).unwrap(), std::fs::read(b.path().join(&name)).unwrap(), "{name}");
    }
}

#[test]
fn csv_outputs_have_headers_and_plain_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let o = perciso(&["sample", "--p", "0.65", "--n", "10", "--replicas", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    for name in ["sample.csv", "theta.csv"] {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let mut rows = csv::Reader::from_reader(text.as_bytes());
        let width = rows.headers().unwrap().len();
        for r in rows.records() {
            let r = r.unwrap();
            assert_eq!(r.len(), width);
            for f in r.iter() {
                assert!(f.chars().all(|c| c.is_ascii_digit() || ".-eE".contains(c)), "{f}");
            }
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(perciso(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(perciso(&["sample", "--p", "abc"]).status.code(), Some(2));
    let o = perciso(&["sample", "--p", "1.5"]);
    assert_eq!(o.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["kind"], "Domain");
    assert_eq!(perciso(&["cheeger", "--p", "0.4", "--n", "4"]).status.code(), Some(3));
}
