//! Bundled example documents.

use crate::error::Result;
use crate::stabilizer::canonical_generators;

/// `(name, document)` for every bundled dataset.
pub const DATASETS: &[(&str, &str)] = &[
    ("pan2000", include_str!("../../data/pan2000.json")),
    ("case1", include_str!("../../data/case1.json")),
    ("case2", include_str!("../../data/case2.json")),
    ("case3", include_str!("../../data/case3.json")),
    ("canonical_n", include_str!("../../data/canonical_n.json")),
];

pub fn dataset(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    DATASETS.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
}

/// Labels of the canonical generators `x^⊗n` and `z_j z_n`.
pub fn canonical_labels(n: usize) -> Result<Vec<String>> {
    Ok(canonical_generators(n)?.iter().map(|g| g.label()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::request::parse_input;

    #[test]
    fn all_datasets_parse() {
        for (name, doc) in DATASETS {
            parse_input(doc).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert!(dataset("pan2000.json").is_some());
        assert!(dataset("missing").is_none());
    }

    #[test]
    fn canonical_template_matches_generators() {
        let req = parse_input(dataset("canonical_n").unwrap()).unwrap();
        let labels: Vec<String> = req.terms.iter().map(|t| t.setting.clone()).collect();
        assert_eq!(labels, canonical_labels(4).unwrap());
    }
}
