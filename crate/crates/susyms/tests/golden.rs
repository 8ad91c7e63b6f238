//! Frozen command outputs. Set `SUSYMS_UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use susyms::cli::{execute, Command, StageArg};
use susyms::report::Format;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/v1").join(name)
}

fn check(name: &str, cmd: Command, format: Format) {
    let out = execute(&cmd).unwrap().render(format).unwrap();
    let path = golden(name);
    if std::env::var_os("SUSYMS_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap();
    assert!(out == want, "{name} differs from the golden file");
}

#[test]
fn tables() {
    check("tables.md", Command::Tables, Format::Markdown);
}

#[test]
fn full_classification() {
    check("classify_full.json", Command::Classify { stage: StageArg::Full, dedupe_reflection: false }, Format::Json);
}

#[test]
fn deduplicated_classification() {
    check("classify_full_dedupe.json", Command::Classify { stage: StageArg::Full, dedupe_reflection: true }, Format::Json);
    check("classify_full_dedupe.md", Command::Classify { stage: StageArg::Full, dedupe_reflection: true }, Format::Markdown);
}

#[test]
fn l72_ode() {
    check("reduce_l72.json", Command::Reduce { subalgebra: "L72".into(), ansatz: "bodiless".into(), m: None }, Format::Json);
}

/// The table golden file is also checked against the printed cells directly.
#[test]
fn table_golden_matches_printed_cells() {
    let text = std::fs::read_to_string(golden("tables.md")).unwrap();
    let printed = susyms_core::superalgebra::PUBLISHED_TABLE;
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip_while(|l| !l.starts_with("| [X, Y] | D"))
        .skip(2)
        .take(8)
        .map(|l| l.trim_matches('|').split('|').skip(1).map(|c| c.trim().to_string()).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    for (row, want) in rows.iter().zip(printed.iter()) {
        assert_eq!(row, want);
    }
}

#[test]
fn l_list_golden_has_143_entries() {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(golden("classify_full_dedupe.json")).unwrap()).unwrap();
    assert_eq!(v["count"], 143);
    assert_eq!(v["classes"].as_array().unwrap().len(), 143);
    assert_eq!(v["pairing"].as_array().unwrap().len(), 255);
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(golden("classify_full.json")).unwrap()).unwrap();
    assert_eq!(g["classes"].as_array().unwrap().len(), 255);
}
