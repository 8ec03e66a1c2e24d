//! Descriptor/alist round trips and tamper detection.

use std::fs;

use aqecc_core::css::asymmetric_bch_ldpc;
use aqecc_core::io::{persist_code, read_alist, verify_descriptor, CodeDescriptor};

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("aqecc-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn construct_persist_verify_roundtrip() {
    let dir = tempdir("roundtrip");
    let code = asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap();
    let desc_path = dir.join("ex1.json");
    let desc = persist_code(&code, &desc_path, &dir).unwrap();
    assert_eq!(desc.n, 15);
    assert_eq!(desc.k, 3);
    assert_eq!(desc.pure, Some(true));

    let report = verify_descriptor(&desc_path).unwrap();
    assert!(report.all_pass(), "{:?}", report.checks);

    // reconstruction reproduces byte-identical matrices
    let loaded = CodeDescriptor::load(&desc_path).unwrap();
    let rebuilt = loaded.reconstruct().unwrap();
    let dir2 = tempdir("roundtrip2");
    persist_code(&rebuilt, &dir2.join("ex1.json"), &dir2).unwrap();
    for name in ["ex1.json", "ex1_hx.alist", "ex1_hz.alist"] {
        let a = fs::read(dir.join(name)).unwrap();
        let b = fs::read(dir2.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between construction runs");
    }
    let _ = fs::remove_dir_all(&dir);
    let _ = fs::remove_dir_all(&dir2);
}

#[test]
fn tampered_parity_fails_nesting() {
    let dir = tempdir("tamper-h");
    let code = asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap();
    let desc_path = dir.join("code.json");
    persist_code(&code, &desc_path, &dir).unwrap();

    // flip one bit of H_z: drop an index from the first check row
    let hz_path = dir.join("code_hz.alist");
    let h = read_alist(&hz_path).unwrap();
    let mut rows: Vec<Vec<u32>> = (0..h.rows()).map(|r| h.row(r).to_vec()).collect();
    rows[0].remove(0);
    let tampered = aqecc_core::linalg::Csr::from_rows(h.cols(), &rows);
    aqecc_core::write_alist(&hz_path, &tampered).unwrap();

    let report = verify_descriptor(&desc_path).unwrap();
    assert!(!report.all_pass());
    let nesting = report.checks.iter().find(|c| c.name == "nesting").unwrap();
    assert!(!nesting.pass, "nesting must fail after the bit flip");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn tampered_dimension_fails() {
    let dir = tempdir("tamper-k");
    let code = asymmetric_bch_ldpc(2, 1, 2, 2, 3).unwrap();
    let desc_path = dir.join("code.json");
    persist_code(&code, &desc_path, &dir).unwrap();

    let text = fs::read_to_string(&desc_path).unwrap();
    let edited = text.replace("\"k\": 3", "\"k\": 4");
    assert_ne!(text, edited);
    fs::write(&desc_path, edited).unwrap();

    let report = verify_descriptor(&desc_path).unwrap();
    let dim = report.checks.iter().find(|c| c.name == "dimension").unwrap();
    assert!(!dim.pass);
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn corrupt_files_are_format_errors() {
    let dir = tempdir("corrupt");
    fs::write(dir.join("bad.json"), "{ not json").unwrap();
    assert!(verify_descriptor(&dir.join("bad.json")).is_err());
    assert!(verify_descriptor(&dir.join("missing.json")).is_err());
    let _ = fs::remove_dir_all(&dir);
}
