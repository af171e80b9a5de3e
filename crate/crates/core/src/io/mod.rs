//! Documents in and out: the input schema, reports, bundled datasets and
//! the noisy-state simulator behind `ghzfid simulate`.

pub mod analysis;
pub mod datasets;
pub mod report;
pub mod request;
pub mod simulate;

pub use analysis::{run_analysis, run_class_check, run_spectrum, SpectralData};
pub use report::{Report, REPORT_SCHEMA, REPORT_SCHEMA_VERSION};
pub use request::{
    parse_input, parse_observable_input, AnalysisRequest, Format, MeasuredTerm,
    INPUT_SCHEMA_VERSION,
};

/// Reads a document from a path, or from standard input for `-`.
pub fn read_document(path: &str) -> crate::Result<String> {
    use std::io::Read;
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| crate::Error::Io(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| crate::Error::Io(format!("reading {path}: {e}")))
    }
}
