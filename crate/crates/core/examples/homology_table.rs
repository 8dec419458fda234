//! Integral homology of a few real flag manifolds.
//!
//! ```text
//! cargo run --example homology_table
//! ```

use flagtopo::report::{Format, HomologyReport};
use flagtopo::weyl::FlagSignature;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let signatures = [
        FlagSignature::projective(4)?,
        FlagSignature::new(4, vec![2])?,
        FlagSignature::complete(3)?,
        FlagSignature::complete(4)?,
        FlagSignature::new(5, vec![1, 2, 3])?,
    ];
    for sig in &signatures {
        let report = HomologyReport::compute(sig)?;
        println!("{}", report.render(Format::Table));
    }
    Ok(())
}
