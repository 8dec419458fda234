//! Preimage of the Klein four-group of rotations under the double cover
//! of SO(3) by the unit quaternions.

use flagtopo::quotient_models::{abelianization, classify_order8, klein_rotations, lift_subgroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = lift_subgroup(&klein_rotations())?;
    println!("lift has order {}", table.order());
    print!("{:>4}", "");
    for l in table.labels() {
        print!("{l:>4}");
    }
    println!();
    for a in 0..table.order() {
        print!("{:>4}", table.labels()[a]);
        for b in 0..table.order() {
            print!("{:>4}", table.labels()[table.mul(a, b)]);
        }
        println!();
    }
    for (order, count) in table.order_census() {
        println!("{count} element(s) of order {order}");
    }
    let center: Vec<&str> = table.center().iter().map(|&c| table.labels()[c].as_str()).collect();
    println!("center: {{{}}}", center.join(", "));
    println!("type: {}", classify_order8(&table)?);
    println!("abelianization: {}", abelianization(&table)?);
    Ok(())
}
