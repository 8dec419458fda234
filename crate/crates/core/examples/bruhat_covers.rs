//! Cells of a flag manifold, their Bruhat covers, and the incidence
//! numbers of the cellular boundary.

use flagtopo::homalg::ChainComplex;
use flagtopo::schubert::{build_complex, incidence_magnitude};
use flagtopo::weyl::{covering_pairs, minimal_coset_reps, FlagSignature};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sig = FlagSignature::complete(3)?;
    let reps = minimal_coset_reps(&sig);
    println!("{} cells of Flag(R^3):", reps.len());
    for w in &reps {
        println!("  {:?}  length {}  word {:?}", w.images(), w.length(), w.reduced_word());
    }

    println!("covers:");
    for e in covering_pairs(&reps) {
        println!(
            "  {:?} < {:?} via t_{}{}  |incidence| = {}",
            e.lower.images(),
            e.upper.images(),
            e.reflection.0,
            e.reflection.1,
            incidence_magnitude(&e)
        );
    }

    let complex = build_complex(&sig)?;
    for d in 1..=complex.top_dim() {
        println!("boundary {d} -> {}: {:?}", d - 1, complex.boundary(d).to_dense());
    }
    Ok(())
}
