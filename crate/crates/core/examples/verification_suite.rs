//! Runs every verification check and prints one line per check.

use flagtopo::verify::{run_checks, CheckSet};

fn main() {
    let checks = run_checks(CheckSet::All);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {failed} failed", checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
