//! Exact fidelity range for observables outside the class.

use ghz_fidelity::bounds::lp_fidelity_range;
use ghz_fidelity::observable::{spectrum, Observable};

fn main() -> ghz_fidelity::Result<()> {
    let case1 = spectrum(&Observable::from_labels(3, &[("xyy", 1.0), ("yxy", 1.0)])?)?;
    let case2 = spectrum(&Observable::from_labels(
        3,
        &[("xyy", 1.0), ("yxy", 1.0), ("zzI", 1.0)],
    )?)?;
    println!("{:>6}  {:>16}  {:>16}", "<A>", "case 1", "case 2");
    for k in 0..=8 {
        let mean = -1.0 + 0.25 * k as f64;
        let r1 = lp_fidelity_range(&case1, mean)?;
        let r2 = lp_fidelity_range(&case2, mean)?;
        println!(
            "{mean:>6}  [{:.4}, {:.4}]  [{:.4}, {:.4}]",
            r1.lower, r1.upper, r2.lower, r2.upper
        );
    }
    Ok(())
}
