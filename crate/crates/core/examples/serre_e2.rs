//! E₂ page for the bundle of line triples in RP^3 over RP^3, compared with
//! the cohomology of the total space computed from cells.

use flagtopo::homalg::{homology, AbelianGroup};
use flagtopo::schubert::build_complex;
use flagtopo::spectral::{build_e2, einf_consistency, max_hom_image_order};
use flagtopo::weyl::FlagSignature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = homology(&build_complex(&FlagSignature::projective(4)?)?);
    let fiber = homology(&build_complex(&FlagSignature::complete(3)?)?);
    let total = homology(&build_complex(&FlagSignature::complete(4)?)?);

    let grid = build_e2(&base, &fiber);
    println!("E_2^(p,q):");
    print!("{grid}");
    println!("euler characteristic of the page: {}", grid.euler_characteristic());

    let bound = max_hom_image_order(&AbelianGroup::integers(), &AbelianGroup::elementary(2, 2));
    println!("largest image of Z -> (Z/2)^2: {bound}");

    let report = einf_consistency(&grid, &total, 6);
    for d in &report.degrees {
        println!(
            "degree {}: page rank {} torsion {} | total rank {} torsion {}",
            d.degree, d.grid_free_rank, d.grid_torsion_order, d.total_free_rank, d.total_torsion_order
        );
    }
    println!("page collapses consistently: {}", report.passed());
    Ok(())
}
