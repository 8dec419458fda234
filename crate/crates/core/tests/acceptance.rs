//! End-to-end acceptance criteria. Each criterion prints one line:
//! `PASS`/`FAIL`, its name, elapsed time, and a short detail.

use std::time::{Duration, Instant};

use nalgebra::{Matrix3, Vector3};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flagtopo::homalg::{betti_mod_p, homology, poincare_duality_check, smith_normal_form, AbelianGroup, ChainComplex, IntegerMatrix};
use flagtopo::quotient_models::{canonical_config, ConfigMatrix};
use flagtopo::report::HomologyReport;
use flagtopo::schubert::build_complex;
use flagtopo::verify::{cover_checks, geometry_checks, spectral_checks, Check};
use flagtopo::weyl::{minimal_coset_reps, FlagSignature};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_checks(checks: &[Check]) -> Self {
        let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
        let detail = if failed.is_empty() {
            format!("{} checks", checks.len())
        } else {
            failed.join(" | ")
        };
        Outcome { passed: failed.is_empty(), detail }
    }
}

fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let passed = out.passed && in_time;
    let status = if passed { "PASS" } else { "FAIL" };
    let timing = if in_time { String::new() } else { format!(" over the {:?} limit", limit) };
    println!("{status} [{id}] {name} ({:.3} s{timing}): {}", elapsed.as_secs_f64(), out.detail);
    passed
}

fn z() -> AbelianGroup {
    AbelianGroup::integers()
}

fn e2(k: usize) -> AbelianGroup {
    AbelianGroup::elementary(2, k)
}

fn exact_homology(dims: Vec<usize>, ambient: usize, expected: Vec<AbelianGroup>) -> Outcome {
    let sig = FlagSignature::new(ambient, dims).expect("valid signature");
    match HomologyReport::compute(&sig) {
        Ok(report) => {
            let got = report.homology();
            let text: Vec<String> = got.iter().map(|g| g.to_string()).collect();
            Outcome { passed: got == expected, detail: format!("[{}]", text.join(", ")) }
        }
        Err(e) => Outcome { passed: false, detail: e.to_string() },
    }
}

fn partial_flag_consistency(n: usize) -> Outcome {
    let sig = FlagSignature::new(n + 1, vec![1, 2, 3]).expect("valid signature");
    let complex = match build_complex(&sig) {
        Ok(c) => c,
        Err(e) => return Outcome { passed: false, detail: e.to_string() },
    };
    let mut per_length = vec![0usize; sig.manifold_dim() + 1];
    for w in minimal_coset_reps(&sig) {
        per_length[w.length()] += 1;
    }
    let betti2 = betti_mod_p(&complex, 2);
    let euler = complex.euler_characteristic();
    let h = homology(&complex);
    let duality = poincare_duality_check(&h, sig.manifold_dim());
    let parts = [
        (betti2 == per_length, format!("mod-2 Betti {betti2:?} vs cell counts {per_length:?}")),
        (euler == 0, format!("euler {euler}")),
        (duality, format!("orientable duality pattern {}", if duality { "holds" } else { "fails" })),
    ];
    let detail: Vec<String> = parts.iter().map(|(ok, s)| format!("{}{s}", if *ok { "" } else { "MISMATCH " })).collect();
    let top = h.get(sig.manifold_dim()).map(|g| g.to_string()).unwrap_or_default();
    Outcome {
        passed: parts.iter().all(|(ok, _)| *ok),
        detail: format!("{}; H_top = {top}", detail.join("; ")),
    }
}

fn rp_pattern(n: usize) -> Vec<AbelianGroup> {
    (0..=n)
        .map(|k| match k {
            0 => z(),
            k if k == n && n % 2 == 1 => z(),
            k if k < n && k % 2 == 1 => AbelianGroup::cyclic(2),
            _ => AbelianGroup::trivial(),
        })
        .collect()
}

fn boundary_squares_vanish() -> (usize, bool) {
    let mut count = 0;
    let mut ok = true;
    for ambient in 2..=6 {
        for mask in 1u32..(1 << (ambient - 1)) {
            let dims: Vec<usize> = (1..ambient).filter(|d| mask & (1 << (d - 1)) != 0).collect();
            let sig = FlagSignature::new(ambient, dims).expect("valid signature");
            match build_complex(&sig) {
                Ok(c) => ok &= c.square_defect().is_none(),
                Err(_) => ok = false,
            }
            count += 1;
        }
    }
    (count, ok)
}

fn snf_postconditions(m: &IntegerMatrix) -> bool {
    let snf = smith_normal_form(m);
    if &(&snf.u * m) * &snf.v != snf.d || !snf.d.is_diagonal() {
        return false;
    }
    if !snf.u.determinant().abs().is_one() || !snf.v.determinant().abs().is_one() {
        return false;
    }
    let diag: Vec<BigInt> = (0..m.rows().min(m.cols())).map(|i| snf.d.get(i, i).clone()).collect();
    diag.iter().all(|d| !d.is_negative())
        && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) })
}

fn random_snf_trials(trials: usize) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut passed = 0;
    for _ in 0..trials {
        let rows = rng.random_range(1..=12);
        let cols = rng.random_range(1..=12);
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.random_range(-9..=9)).collect()).collect();
        if snf_postconditions(&IntegerMatrix::from_rows(&data)) {
            passed += 1;
        }
    }
    (passed, trials)
}

fn orbit_invariance_trials(trials: usize) -> (usize, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut passed = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let a = loop {
            let m = Matrix3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            if let Ok(c) = ConfigMatrix::new(m) {
                if m.determinant().abs() > 1e-3 {
                    break c;
                }
            }
        };
        let scale = Vector3::from_fn(|_, _| {
            let mag = rng.random_range(0.1..10.0);
            if rng.random_bool(0.5) {
                -mag
            } else {
                mag
            }
        });
        let scaled = a.scale_rows(&scale).expect("nonzero scaling");
        let dev = (canonical_config(&scaled).matrix() - canonical_config(&a).matrix()).abs().max();
        worst = worst.max(dev);
        if dev <= 1e-12 {
            passed += 1;
        }
    }
    (passed, worst)
}

#[test]
fn acceptance() {
    let mut results = Vec::new();

    results.push(criterion(1, "line triples in RP^2: homology of Flag(R^3)", Duration::from_secs(1), || {
        exact_homology(vec![1, 2], 3, vec![z(), e2(2), AbelianGroup::trivial(), z()])
    }));

    results.push(criterion(2, "line triples in RP^3: homology of Flag(R^4)", Duration::from_secs(5), || {
        exact_homology(
            vec![1, 2, 3],
            4,
            vec![z(), e2(3), e2(2), AbelianGroup::from_cyclic_orders(2, &[2, 2]), e2(3), AbelianGroup::trivial(), z()],
        )
    }));

    for n in [4, 5] {
        let name = format!("partial flags (1,2,3) in R^{}: mod-2 Betti, euler, duality", n + 1);
        results.push(criterion(3, &name, Duration::from_secs(60), || partial_flag_consistency(n)));
    }

    results.push(criterion(4, "RP^n for n = 1..10", Duration::from_secs(1), || {
        let bad: Vec<usize> = (1..=10)
            .filter(|&n| {
                let sig = FlagSignature::projective(n + 1).expect("valid signature");
                build_complex(&sig).map(|c| homology(&c) != rp_pattern(n)).unwrap_or(true)
            })
            .collect();
        Outcome { passed: bad.is_empty(), detail: format!("mismatches at n = {bad:?}") }
    }));

    results.push(criterion(5, "E2 page, non-surjective d2, E_inf consistency", Duration::from_secs(1), || {
        Outcome::from_checks(&spectral_checks())
    }));

    results.push(criterion(6, "quaternion lift of the Klein rotation group", Duration::from_secs(1), || {
        let checks = cover_checks();
        let mut out = Outcome::from_checks(&checks);
        let reported: Vec<String> =
            checks.iter().filter(|c| c.expected == "(reported)").map(|c| format!("{} = {}", c.name, c.computed)).collect();
        out.detail = format!("{}; {}", out.detail, reported.join("; "));
        out
    }));

    results.push(criterion(7, "line-triple round trips and degenerate fixtures", Duration::from_secs(10), || {
        Outcome::from_checks(&geometry_checks())
    }));

    results.push(criterion(8, "boundary squares, Smith forms, row-scaling invariance", Duration::from_secs(120), || {
        let (complexes, squares_ok) = boundary_squares_vanish();
        let (snf_ok, snf_total) = random_snf_trials(1000);
        let (orbit_ok, worst) = orbit_invariance_trials(1000);
        Outcome {
            passed: squares_ok && snf_ok == snf_total && orbit_ok == 1000,
            detail: format!(
                "d^2 = 0 on {complexes} complexes: {squares_ok}; SNF {snf_ok}/{snf_total}; orbit {orbit_ok}/1000 (max deviation {worst:.1e})"
            ),
        }
    }));

    let failed = results.iter().filter(|p| !**p).count();
    println!("{} criteria, {failed} failed", results.len());
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
