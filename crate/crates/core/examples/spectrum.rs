//! Spectra by group characters, and key eigenvalues for large n.

use std::time::Instant;

use ghz_fidelity::io::datasets::canonical_labels;
use ghz_fidelity::observable::{key_eigenvalues_streaming, spectrum, Observable};

fn main() -> ghz_fidelity::Result<()> {
    let obs = Observable::from_labels(3, &[("xyy", 1.0), ("yxy", 1.0), ("yyx", 1.0)])?;
    let s = spectrum(&obs)?;
    println!("{obs}");
    for e in s.distinct() {
        println!("  {:>3}  x{}", e.value, e.multiplicity);
    }
    println!(
        "trivial eigenvalue {} at position {}",
        s.trivial_value(),
        s.trivial_index()
    );

    let weighted = Observable::from_labels(3, &[("xxx", 2.0), ("zzI", 0.5), ("Izz", 0.5)])?;
    println!("\n{weighted}");
    for e in spectrum(&weighted)?.distinct() {
        println!("  {:>5}  x{}", e.value, e.multiplicity);
    }

    let n = 24;
    let labels = canonical_labels(n)?;
    let terms: Vec<(&str, f64)> = labels.iter().map(|l| (l.as_str(), 1.0)).collect();
    let big = Observable::from_labels(n, &terms)?;
    let t = Instant::now();
    let k = key_eigenvalues_streaming(&big)?;
    println!(
        "\nn = {n}, canonical generators: M = {}, r_2 = {:?}, r_s = {} ({:.2?})",
        k.max,
        k.second,
        k.min,
        t.elapsed()
    );
    Ok(())
}
