//! Noisy GHZ states: the true fidelity always lies inside the bounds.

use ghz_fidelity::bounds::fidelity_bounds;
use ghz_fidelity::io::datasets::canonical_labels;
use ghz_fidelity::observable::{spectrum, Observable};
use ghz_fidelity::oracle::werner_expectations;

fn main() -> ghz_fidelity::Result<()> {
    for n in 2..=5 {
        let labels = canonical_labels(n)?;
        let terms: Vec<(&str, f64)> = labels.iter().map(|l| (l.as_str(), 1.0)).collect();
        let obs = Observable::from_labels(n, &terms)?;
        let s = spectrum(&obs)?;
        for v in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let w = werner_expectations(n, v, &obs)?;
            let b = fidelity_bounds(&s, w.mean)?;
            println!(
                "n = {n}  V = {v:<4}  <A> = {:<6.3} f = {:.4} in [{:.4}, {:.4}]  dense <A> = {:.6}",
                w.mean,
                w.fidelity,
                b.lower_clamped,
                b.upper_clamped,
                w.dense.map_or(f64::NAN, |d| d.0)
            );
        }
    }
    Ok(())
}
