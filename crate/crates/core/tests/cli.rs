use std::path::PathBuf;
use std::process::{Command, Output};

fn sfcond(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfcond")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sfcond-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const SW_Z2: [&str; 9] = ["ahss", "--spectrum", "SW", "--group", "Z/2", "--space-degree", "2", "--total-degree", "5"];

#[test]
fn exit_codes() {
    let ok = sfcond(&[&SW_Z2[..], &["--d5", "zero"]].concat());
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).ends_with("SW^5(Z/2[2]) = 0\n"));

    let parse = sfcond(&["emcoh", "--group", "Z/x", "--space-degree", "2", "--max-degree", "4"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(!parse.stderr.is_empty());

    let range = sfcond(&["ahss", "--spectrum", "SH", "--group", "Z/2", "--space-degree", "2", "--total-degree", "11"]);
    assert_eq!(range.status.code(), Some(3));

    let open = sfcond(&[&SW_Z2[..], &["--twist", "fermion-parity", "--d5", "zero"]].concat());
    assert_eq!(open.status.code(), Some(4));
    assert!(stdout(&open).contains("d3: (2,2) → (5,0) not determined"));

    let closed = sfcond(&[&SW_Z2[..], &["--twist", "fermion-parity", "--d5", "zero", "--declare-zero", "3:2,2"]].concat());
    assert_eq!(closed.status.code(), Some(0));
    assert!(stdout(&closed).ends_with("= Z/2\n"));
}

#[test]
fn json_shape() {
    let o = sfcond(&["obstruction", "--group", "Z/6", "--statistic", "fermionic", "--level", "symmetric", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for key in ["command", "inputs", "provenance", "result"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["result"]["summary"].as_str().unwrap().contains("2SVec[Z/6]"));
}

#[test]
fn page_dump_round_trip() {
    let path = scratch("pages.json");
    let run = sfcond(&[&SW_Z2[..], &["--d5", "zero", "--dump-pages", path.to_str().unwrap()]].concat());
    assert_eq!(run.status.code(), Some(0));
    let text = stdout(&run);
    let rendered = sfcond(&["render", "--pages", path.to_str().unwrap()]);
    let tables = stdout(&rendered);
    assert!(!tables.is_empty());
    assert!(text.starts_with(&tables), "re-rendered tables differ from the original output");
}

#[test]
fn kernel_override_unblocks_product() {
    let args = ["ahss", "--spectrum", "SW", "--group", "Z/2 x Z/4", "--space-degree", "2", "--total-degree", "6"];
    let blocked = sfcond(&args);
    assert_eq!(blocked.status.code(), Some(3), "{}", String::from_utf8_lossy(&blocked.stderr));
    let path = scratch("bad_overrides.json");
    std::fs::write(
        &path,
        r#"{"comparison_kernels": [{"group": "Z/2 x Z/4", "space_degree": 2, "degree": 7, "kernel": []}]}"#,
    )
    .unwrap();
    let bad = sfcond(&[&args[..], &["--coeff-overrides", path.to_str().unwrap()]].concat());
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("dimension 4"));

    let path = scratch("overrides.json");
    let kernel = ["i2'^2*Sq1(i2)", "i2^2*Sq1(i2)", "i2^2*b2(i2')", "i2'^2*b2(i2')"];
    let body = serde_json::json!({"comparison_kernels": [
        {"group": "Z/2 x Z/4", "space_degree": 2, "degree": 7, "kernel": kernel}
    ]});
    std::fs::write(&path, body.to_string()).unwrap();
    let o = sfcond(&[&args[..], &["--coeff-overrides", path.to_str().unwrap(), "--json"]].concat());
    assert!(matches!(o.status.code(), Some(0) | Some(4)), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let provenance = v["provenance"].as_array().unwrap();
    assert!(provenance.iter().any(|p| p.as_str().unwrap().starts_with("override: comparison kernel in degree 7")));
}

#[test]
fn condense_examples() {
    let o = sfcond(&["condense", "--pi0", "Z/4", "--algebra", "Z/2"]);
    assert!(stdout(&o).contains("components: 2"));
    let o = sfcond(&["condense", "--pi0", "Z/2", "--algebra", "1"]);
    assert!(stdout(&o).contains("components: 2"));
    let o = sfcond(&["condense", "--descriptor", "braided; pi0=Z/3; id=2Rep(S3)", "--phi"]);
    assert!(stdout(&o).contains("strongly fusion: true"));
}
