//! Line triples in RP^n and the partial flags they determine.
//!
//! ```text
//! cargo run --example line_triples -- 5 2024
//! ```

use flagtopo::geometry::{map_f, map_g, random_triple, subspace_distance, validate_triple, LineTriple};
use flagtopo::verify::{concurrent_fixture, shared_line_fixture};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);

    let t = random_triple(n, seed)?;
    validate_triple(&t).map_err(|v| format!("sampled triple is degenerate: {v:?}"))?;
    let flag = map_f(&t)?;
    let back = map_g(&flag)?;
    println!("random triple in RP^{n} (seed {seed})");
    println!("  dims of V1 ⊂ V2 ⊂ V3: {}, {}, {}", flag.v1().dim(), flag.v2().dim(), flag.v3().dim());
    println!("  distance f(g(f(t))) to f(t): {:.3e}", map_f(&back)?.distance(&flag)?);
    println!("  distance of first lines:     {:.3e}", subspace_distance(back.line(0), t.line(0))?);
    println!("  distance of spans:           {:.3e}", subspace_distance(&back.span(), &t.span())?);

    let fixtures: [(&str, LineTriple); 2] =
        [("shared line", shared_line_fixture()), ("concurrent lines", concurrent_fixture())];
    for (name, fixture) in fixtures {
        match validate_triple(&fixture) {
            Ok(()) => println!("{name}: accepted"),
            Err(v) => {
                let names: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                println!("{name}: rejected ({})", names.join(", "));
            }
        }
    }
    Ok(())
}
