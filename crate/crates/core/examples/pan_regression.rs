//! The four-setting three-photon experiment: bounds, witness and estimate.

use ghz_fidelity::io::datasets::dataset;
use ghz_fidelity::io::{parse_input, run_analysis};

fn main() -> ghz_fidelity::Result<()> {
    let req = parse_input(dataset("pan2000").expect("bundled"))?;
    let report = run_analysis(&req)?;
    print!("{}", report.render_text());
    assert_eq!(
        (report.fidelity_lower, report.fidelity_upper),
        (0.71, 0.855)
    );
    Ok(())
}
