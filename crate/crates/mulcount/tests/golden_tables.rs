//! Golden-file comparison for the rendered table output. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p mulcount --test golden_tables`.

use mulcount::report::{reproduce_paper_tables, TableFormat};
use std::path::Path;

fn assert_golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var("UPDATE_GOLDEN").is_ok() {
        std::fs::write(&path, actual).expect("update golden file");
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read golden file {}: {e}", path.display()));
    if actual != expected {
        for (i, (a, e)) in actual.lines().zip(expected.lines()).enumerate() {
            if a != e {
                eprintln!("first difference at line {}:", i + 1);
                eprintln!("  expected: {e}");
                eprintln!("  actual:   {a}");
                break;
            }
        }
        panic!("golden file mismatch: {name}");
    }
}

#[test]
fn all_tables_markdown() {
    let ids: Vec<u8> = (1..=8).collect();
    let text = reproduce_paper_tables(&ids, TableFormat::Markdown).unwrap();
    assert_golden("tables.md", &text);
}

#[test]
fn all_tables_csv() {
    let ids: Vec<u8> = (1..=8).collect();
    let text = reproduce_paper_tables(&ids, TableFormat::Csv).unwrap();
    assert_golden("tables.csv", &text);
}
