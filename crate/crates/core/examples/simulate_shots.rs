//! Finite-statistics data and how the uncertainty moves the verdict.

use ghz_fidelity::io::run_analysis;
use ghz_fidelity::io::simulate::{noisy_ghz_fidelity, preset_terms, simulate, SimulationConfig};
use rand::SeedableRng;

fn main() -> ghz_fidelity::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2000);
    let terms = preset_terms("canonical", 5)?;
    for v in [0.8, 0.85, 0.9] {
        for shots in [100, 10_000] {
            let mut req = simulate(
                &SimulationConfig {
                    n: 5,
                    visibility: v,
                    shots: Some(shots),
                },
                &terms,
                &mut rng,
            )?;
            req.options.sigma_k = 2.0;
            let r = run_analysis(&req)?;
            let u = r.uncertainty.expect("simulated data carries sigma");
            println!(
                "V = {v}  shots = {shots:>5}  true f = {:.4}  f in [{:.4}, {:.4}]  certified: {}  at 2 sigma: {}",
                noisy_ghz_fidelity(5, v),
                r.fidelity_lower,
                r.fidelity_upper,
                r.witness.gme_certified,
                u.witness.gme_certified
            );
        }
    }
    Ok(())
}
