//! Minimum-variance eigenvalue distributions and their fidelities.

use ghz_fidelity::bounds::{fidelity_bounds, min_variance_fidelity, FidelityEstimate};
use ghz_fidelity::observable::{spectrum, Observable};

fn main() -> ghz_fidelity::Result<()> {
    let obs = Observable::from_labels(3, &[("xyy", 1.0), ("yxy", 1.0), ("yyx", 1.0)])?;
    let s = spectrum(&obs)?;
    println!("{:>6} {:>10} {:>10}  support", "<A>", "f_minvar", "lower");
    for k in 0..=12 {
        let mean = -3.0 + 0.5 * k as f64;
        let mv = min_variance_fidelity(&s, mean)?;
        let lower = fidelity_bounds(&s, mean)?.lower_clamped;
        let f = match mv.fidelity {
            FidelityEstimate::Point { value } => format!("{value:.4}"),
            FidelityEstimate::Interval { lower, upper } => format!("[{lower}, {upper}]"),
        };
        let support: Vec<String> = mv
            .distribution
            .support
            .iter()
            .map(|p| format!("{}:{:.3}", p.eigenvalue, p.probability))
            .collect();
        println!("{mean:>6} {f:>10} {lower:>10.4}  {}", support.join(" "));
    }

    // Outside the class the GHZ eigenvalue may be degenerate.
    let case1 = Observable::from_labels(3, &[("xyy", 1.0), ("yxy", 1.0)])?;
    println!(
        "\ncase 1 at <A> = 1: {:?}",
        min_variance_fidelity(&spectrum(&case1)?, 1.0)?.fidelity
    );
    Ok(())
}
