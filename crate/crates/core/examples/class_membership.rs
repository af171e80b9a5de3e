//! Which observables are positive combinations of generators.

use ghz_fidelity::observable::{check_class_membership, Observable};

fn main() -> ghz_fidelity::Result<()> {
    let cases: &[(&str, &[(&str, f64)])] = &[
        (
            "four settings",
            &[("xyy", 1.0), ("yxy", 1.0), ("yyx", 1.0), ("xxx", 1.0)],
        ),
        ("case 1", &[("xyy", 1.0), ("yxy", 1.0)]),
        ("case 2", &[("xyy", 1.0), ("yxy", 1.0), ("zzI", 1.0)]),
        ("case 3", &[("xyy", 1.0), ("yxy", 1.0), ("yyx", 1.0)]),
        (
            "negative weight",
            &[("xxx", 1.0), ("zzI", -0.5), ("Izz", 1.0)],
        ),
    ];
    for (name, terms) in cases {
        let obs = Observable::from_labels(3, terms)?;
        let c = check_class_membership(&obs);
        println!(
            "{name:16} in class: {:5} rank {}  {}",
            c.in_class,
            c.rank,
            c.reasons()
        );
    }
    Ok(())
}
