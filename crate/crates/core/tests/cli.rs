mod common;

use std::process::Command;

fn isa2dl() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_isa2dl"));
    c.env_remove("ISA2DL_LEXICON_DIR").stderr(std::process::Stdio::null());
    c
}

fn write(dir: &std::path::Path, name: &str, text: &str) -> std::path::PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let ok = write(tmp.path(), "ok.tagged", "Cat/NN is/VBZ an/DT animal/NN ./.\n");
    let penguin = write(tmp.path(), "penguin.tagged", common::PENGUIN);
    let out = tmp.path().join("out");

    let st = isa2dl().arg("--input").arg(&ok).arg("--out-dir").arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(0));
    assert_eq!(
        common::read(&out.join("kb.dl")),
        "ROLE-SUB hasProperty does\nROLE-SUB hasProperty hasState\nSUB Cat Animal\n"
    );

    let st = isa2dl().arg("--input").arg(tmp.path().join("missing")).status().unwrap();
    assert_eq!(st.code(), Some(1));
    let st = isa2dl().arg("--bogus").status().unwrap();
    assert_eq!(st.code(), Some(1));
    let st = isa2dl().arg("--help").stdout(std::process::Stdio::null()).status().unwrap();
    assert_eq!(st.code(), Some(0));

    let st = isa2dl().arg("--input").arg(&penguin).arg("--no-revision").arg("--out-dir").arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(2));
    let st = isa2dl().arg("--input").arg(&penguin).arg("--out-dir").arg(&out).status().unwrap();
    assert_eq!(st.code(), Some(0));

    let st = isa2dl()
        .arg("--input")
        .arg(&penguin)
        .args(["--budget-nodes", "1"])
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(3));
}

#[test]
fn evaluate_subcommand() {
    let tmp = tempfile::tempdir().unwrap();
    let t = write(tmp.path(), "t.txt", "NODE A\nNODE B\nNODE bot\nNODE top\nEDGE A B\nEDGE B top\nEDGE bot A\n");
    let out = isa2dl().arg("evaluate").arg(&t).arg(&t).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("t\t1.0000\t1.0000\t1.0000\t1.0000\t1.0000\t1.0000\t1.0000"));
}
