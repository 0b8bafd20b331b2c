use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use spinrep::cli::repfile::{self, Format, RepFile};
use spinrep::*;
use tempfile::TempDir;

fn spinrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinrep"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build(dir: &TempDir, name: &str, n: usize, p: u64, format: &str) -> PathBuf {
    let file = path(dir, name);
    let out = spinrep(&[
        "build",
        "--n",
        &n.to_string(),
        "--char",
        &p.to_string(),
        "--out",
        s(&file),
        "--format",
        format,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    file
}

#[test]
fn build_writes_the_chain() {
    let dir = TempDir::new().unwrap();
    for (n, p) in [(4, 2), (4, 3), (6, 0), (9, 3)] {
        let file = build(&dir, &format!("r{n}_{p}.json"), n, p, "json");
        let (r, format) = repfile::read(&file).unwrap();
        assert_eq!(format, Format::Json);
        assert_eq!(r, build_chain(n, p, &Default::default()).unwrap());
        assert_eq!(r.degree(), delta_degree(n, p).unwrap());
    }
}

#[test]
fn build_to_stdout_and_sign_flags() {
    let out = spinrep(&[
        "build",
        "--n",
        "6",
        "--char",
        "0",
        "--sign-at",
        "6:minus",
        "--format",
        "text",
    ]);
    assert_eq!(code(&out), 0);
    let mut signs = std::collections::BTreeMap::new();
    signs.insert(6, SignChoice::Minus);
    let expected = build_chain(6, 0, &signs).unwrap();
    assert_eq!(repfile::deserialize(&stdout(&out)).unwrap(), expected);

    // position 5 is a doubling step, which takes no sign
    let out = spinrep(&["build", "--n", "6", "--char", "0", "--sign-at", "5:minus"]);
    assert_eq!(code(&out), 2);
    let out = spinrep(&["build", "--n", "6", "--char", "0", "--sign-at", "6:sideways"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn build_rejects_bad_arguments() {
    for args in [
        &["build", "--n", "3", "--char", "5"][..],
        &["build", "--n", "6", "--char", "4"],
        &["build", "--n", "6", "--char", "-3"],
        &["build", "--n", "x", "--char", "5"],
        &["build", "--char", "5"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&spinrep(args)), 2, "{args:?}");
    }
}

#[test]
fn verify_levels() {
    let dir = TempDir::new().unwrap();
    let file = build(&dir, "r.txt", 7, 7, "text");
    for level in ["relations", "delta", "complemma", "irreducible", "all"] {
        let out = spinrep(&["verify", "--in", s(&file), "--level", level]);
        assert_eq!(code(&out), 0, "{level}: {}", stdout(&out));
        assert!(stdout(&out).contains("PASS"));
    }
    let out = spinrep(&["verify", "--in", s(&file), "--rng-seed", "7"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_reports_a_flipped_entry() {
    let dir = TempDir::new().unwrap();
    let r = build_chain(5, 5, &Default::default()).unwrap();
    let mut doc = RepFile::from_representation(&r);
    // T₂ is the second matrix; change its (0, 0) entry
    let entry = &mut doc.matrices[1][0][0];
    *entry = if entry == "0" { "1".into() } else { "0".into() };
    let file = path(&dir, "bad.json");
    std::fs::write(&file, doc.to_json()).unwrap();
    let out = spinrep(&["verify", "--in", s(&file), "--level", "relations"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("gen_square(2): FAIL"), "{text}");
    assert!(text.contains("FAIL: "));
}

#[test]
fn verify_parse_and_domain_errors() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "missing.json");
    assert_eq!(code(&spinrep(&["verify", "--in", s(&missing)])), 2);

    let garbage = path(&dir, "garbage.json");
    std::fs::write(&garbage, "{ \"format\": \"spinrep\" ").unwrap();
    assert_eq!(code(&spinrep(&["verify", "--in", s(&garbage)])), 2);

    let truncated = path(&dir, "truncated.txt");
    let full = std::fs::read_to_string(build(&dir, "full.txt", 4, 5, "text")).unwrap();
    std::fs::write(&truncated, &full[..full.len() - 6]).unwrap();
    assert_eq!(code(&spinrep(&["verify", "--in", s(&truncated)])), 2);

    let r = build(&dir, "r.json", 6, 5, "json");
    let hat = path(&dir, "hat.json");
    assert_eq!(code(&spinrep(&["twist", "--in", s(&r), "--out", s(&hat)])), 0);
    assert_eq!(
        code(&spinrep(&["verify", "--in", s(&hat), "--level", "complemma"])),
        2
    );
}

#[test]
fn inconclusive_exit_code() {
    // over ℚ irreducibility is only decided for matrices satisfying the relations
    let dir = TempDir::new().unwrap();
    let r = build_chain(4, 0, &Default::default()).unwrap();
    let mut doc = RepFile::from_representation(&r);
    doc.matrices[0][0][1] = "5".into();
    let file = path(&dir, "bad.json");
    std::fs::write(&file, doc.to_json()).unwrap();
    assert_eq!(
        code(&spinrep(&["verify", "--in", s(&file), "--level", "irreducible"])),
        3
    );
}

#[test]
fn twist_then_verify_as_hat() {
    let dir = TempDir::new().unwrap();
    let r = build(&dir, "r.txt", 8, 3, "text");
    let hat = path(&dir, "hat.txt");
    assert_eq!(code(&spinrep(&["twist", "--in", s(&r), "--out", s(&hat)])), 0);
    let (h, format) = repfile::read(&hat).unwrap();
    assert_eq!(format, Format::Text);
    assert_eq!(h.cover(), Cover::Hat);
    let out = spinrep(&["verify", "--in", s(&hat)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let r2 = build(&dir, "r2.json", 5, 2, "json");
    assert_eq!(code(&spinrep(&["twist", "--in", s(&r2), "--out", s(&hat)])), 2);
}

#[test]
fn associate_and_equivalent() {
    let dir = TempDir::new().unwrap();
    let r6 = build(&dir, "r6.json", 6, 0, "json");
    let a6 = path(&dir, "a6.json");
    assert_eq!(code(&spinrep(&["associate", "--in", s(&r6), "--out", s(&a6)])), 0);
    assert_eq!(code(&spinrep(&["equivalent", "--a", s(&r6), "--b", s(&a6)])), 1);

    let r5 = build(&dir, "r5.json", 5, 0, "json");
    let a5 = path(&dir, "a5.txt");
    let out = spinrep(&["associate", "--in", s(&r5), "--out", s(&a5), "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&spinrep(&["equivalent", "--a", s(&r5), "--b", s(&a5)])), 0);

    // different n
    assert_eq!(code(&spinrep(&["equivalent", "--a", s(&r5), "--b", s(&r6)])), 2);
}

#[test]
fn chop_writes_factor_files() {
    let dir = TempDir::new().unwrap();
    let v = double_s(&build_chain(4, 5, &Default::default()).unwrap()).unwrap();
    let file = path(&dir, "v.json");
    repfile::write(&file, &v, Format::Json).unwrap();
    let out = spinrep(&["chop", "--in", s(&file), "--rng-seed", "20240001"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("factors 0 and 1: non-equivalent"));
    let f0 = path(&dir, "v.factor0.json");
    let f1 = path(&dir, "v.factor1.json");
    for f in [&f0, &f1] {
        let (rep, _) = repfile::read(f).unwrap();
        assert_eq!(rep.degree(), delta_degree(5, 5).unwrap());
    }
    assert_eq!(code(&spinrep(&["equivalent", "--a", s(&f0), "--b", s(&f1)])), 1);
    let a1 = path(&dir, "a1.json");
    assert_eq!(code(&spinrep(&["associate", "--in", s(&f1), "--out", s(&a1)])), 0);
    assert_eq!(code(&spinrep(&["equivalent", "--a", s(&f0), "--b", s(&a1)])), 0);

    // a reducible input cannot be compared
    assert_eq!(
        code(&spinrep(&["equivalent", "--a", s(&file), "--b", s(&file)])),
        2
    );
}
