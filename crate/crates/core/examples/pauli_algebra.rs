//! Pauli strings, the GHZ stabilizer group and its generators.

use ghz_fidelity::pauli::PauliString;
use ghz_fidelity::stabilizer::{canonical_generators, enumerate_group, membership, rank_gf2};

fn main() -> ghz_fidelity::Result<()> {
    let a = PauliString::from_label(3, "xyy", 1)?;
    let b = PauliString::from_label(3, "yxy", 1)?;
    println!("{a} * {b} = {}", a.multiply(&b)?);
    println!("commute: {}", a.commutes(&b)?);

    let x = PauliString::from_label(2, "xI", 1)?;
    let z = PauliString::from_label(2, "zI", 1)?;
    println!(
        "{x} * {z} = {}, {z} * {x} = {}",
        x.multiply(&z)?,
        z.multiply(&x)?
    );

    println!("\nstabilizer group, n = 3:");
    for e in enumerate_group(3)? {
        println!("  p = {}  {e}", e.index());
    }

    let gens = canonical_generators(4)?;
    let labels: Vec<String> = gens.iter().map(|g| g.label()).collect();
    println!("\ncanonical generators, n = 4: {}", labels.join(" "));
    println!("rank = {}", rank_gf2(&gens)?.rank());

    for label in ["xxx", "xxI", "zzz"] {
        let s = PauliString::from_label(3, label, 1)?;
        match membership(&s) {
            Ok(e) => println!("{label}: element {e}"),
            Err(err) => println!("{label}: {err}"),
        }
    }
    let minus = PauliString::from_label(3, "xyy", -1)?;
    println!("{minus}: {}", membership(&minus).unwrap_err());
    Ok(())
}
