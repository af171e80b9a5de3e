//! Dense-matrix cross-checks of the whole algebra.

use ghz_fidelity::observable::Observable;
use ghz_fidelity::oracle::verify::{run_all, VerifyConfig};
use ghz_fidelity::oracle::{
    lemma_check, projector_expansion_check, random::random_density, top_eigenspace,
};
use ghz_fidelity::PauliString;
use rand::SeedableRng;

fn main() -> ghz_fidelity::Result<()> {
    for n in 2..=6 {
        println!(
            "projector expansion residual, n = {n}: {:e}",
            projector_expansion_check(n)?
        );
    }

    let obs =
        Observable::from_labels(3, &[("xyy", 1.0), ("yxy", 1.0), ("yyx", 1.0), ("xxx", 1.0)])?;
    println!("top eigenspace of {obs}: {:?}", top_eigenspace(&obs)?);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let rho = random_density(3, &mut rng);
    let c = lemma_check(
        &rho,
        &PauliString::from_label(3, "xyy", 1)?,
        &PauliString::from_label(3, "yxy", 1)?,
    )?;
    println!("lemma on a random state: {c:?}");

    let report = run_all(VerifyConfig {
        max_n: 5,
        trials: 100,
        seed: 1,
    });
    println!("\n{report}");
    report.into_result().map(|_| ())
}
