//! Reading an input document and writing the JSON report.

use ghz_fidelity::io::{parse_input, run_analysis, Report};

const INPUT: &str = r#"{
  "version": 1,
  "n": 3,
  "terms": [
    { "setting": "xyy", "expectation": 0.70, "sigma": 0.02 },
    { "setting": "yxy", "expectation": 0.70, "sigma": 0.02 },
    { "setting": "yyx", "expectation": 0.70, "sigma": 0.02 },
    { "setting": "xxx", "expectation": 0.74, "sigma": 0.02 }
  ],
  "options": { "format": "json", "sigma_k": 2.0 }
}"#;

fn main() -> ghz_fidelity::Result<()> {
    let report = run_analysis(&parse_input(INPUT)?)?;
    let json = report.to_json();
    println!("{json}");
    assert_eq!(Report::from_json(&json)?, report);

    match parse_input(r#"{"n": 3, "terms": [{"setting": "xxI", "expectation": 0.5}]}"#) {
        Err(e) => eprintln!("rejected: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
