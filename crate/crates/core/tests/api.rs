use ghz_fidelity::io::{parse_input, run_analysis};
use ghz_fidelity::observable::{spectrum, Observable};
use ghz_fidelity::Error;

#[test]
fn sign_refers_to_the_measured_operator() {
    // A correlation measured with plain σ_y at one site belongs to -O.
    let plain = r#"{"n": 2, "terms": [{"setting": "xx", "expectation": 0.8}, {"setting": "yy", "sign": -1, "expectation": -0.8}]}"#;
    let r = run_analysis(&parse_input(plain).unwrap()).unwrap();
    assert_eq!(r.mean, 1.6);
    assert_eq!(r.fidelity_lower, 0.8);
}

#[test]
fn single_site_observable() {
    let doc = r#"{"n": 1, "terms": [{"setting": "x", "expectation": 0.6}]}"#;
    let r = run_analysis(&parse_input(doc).unwrap()).unwrap();
    assert_eq!((r.fidelity_lower, r.fidelity_upper), (0.8, 0.8));
}

#[test]
fn identity_only_is_degenerate() {
    let doc = r#"{"n": 3, "terms": [{"setting": "III", "expectation": 1}]}"#;
    let r = run_analysis(&parse_input(doc).unwrap()).unwrap();
    assert_eq!((r.fidelity_lower, r.fidelity_upper), (0.0, 1.0));
    assert!(!r.class.in_class);
}

#[test]
fn sizes_beyond_streaming_cap_are_rejected() {
    let label = "x".repeat(31);
    let o = Observable::from_labels(31, &[(label.as_str(), 1.0)]).unwrap();
    let e = spectrum(&o).unwrap_err();
    assert!(matches!(e, Error::CapExceeded { .. }));
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn term_errors_carry_their_index() {
    let e = Observable::from_labels(3, &[("xxx", 1.0), ("xq x", 1.0)]).unwrap_err();
    assert!(matches!(e, Error::Term { index: 1, .. }), "{e:?}");
    assert_eq!(e.exit_code(), 2);
}
