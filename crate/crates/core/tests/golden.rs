//! Rendered reports for the bundled datasets, compared byte for byte.
//! Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;

use ghz_fidelity::io::datasets::DATASETS;
use ghz_fidelity::io::{parse_input, run_analysis, Report};

fn golden_path(name: &str, ext: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.{ext}"))
}

fn compare(name: &str, ext: &str, actual: &str) {
    let path = golden_path(name, ext);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        actual,
        expected,
        "{} differs from golden output",
        path.display()
    );
}

#[test]
fn text_reports_match_golden() {
    for (name, doc) in DATASETS {
        let report = run_analysis(&parse_input(doc).unwrap()).unwrap();
        compare(name, "txt", &report.render_text());
    }
}

#[test]
fn json_reports_match_golden() {
    for (name, doc) in DATASETS {
        let report = run_analysis(&parse_input(doc).unwrap()).unwrap();
        compare(name, "json", &(report.to_json() + "\n"));
    }
}

#[test]
fn json_reports_round_trip() {
    for (name, doc) in DATASETS {
        let report = run_analysis(&parse_input(doc).unwrap()).unwrap();
        let json = report.to_json();
        let back = Report::from_json(&json).unwrap();
        assert_eq!(back, report, "{name}");
        assert_eq!(back.to_json(), json, "{name}");
    }
}

#[test]
fn rendering_is_deterministic() {
    for (_, doc) in DATASETS {
        let a = run_analysis(&parse_input(doc).unwrap()).unwrap();
        let b = run_analysis(&parse_input(doc).unwrap()).unwrap();
        assert_eq!(a.render_text(), b.render_text());
        assert_eq!(a.to_json(), b.to_json());
    }
}
