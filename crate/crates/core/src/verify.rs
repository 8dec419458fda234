//! Verification checks for the homology tables, the E₂ page, the
//! quaternion lift, and the line-triple maps. Each check reports the
//! expected and computed values as text.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{
    map_f, map_g, random_triple_with, subspace_distance, validate_triple, LineTriple, Subspace, Violation,
};
use crate::homalg::{homology, AbelianGroup};
use crate::quotient_models::{abelianization, classify_order8, klein_rotations, lift_subgroup};
use crate::schubert::build_complex;
use crate::spectral::{build_e2, einf_consistency, max_hom_image_order, ImageOrder};
use crate::weyl::FlagSignature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckSet {
    All,
    /// Homology of line triples in RP^2.
    Thm2,
    /// Homology of line triples in RP^3.
    Thm4,
    Spectral,
    Covers,
    Geometry,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl fmt::Display, computed: impl fmt::Display, passed: bool) -> Self {
        Check { name: name.into(), expected: expected.to_string(), computed: computed.to_string(), passed }
    }

    fn compare<T: PartialEq + fmt::Display>(name: impl Into<String>, expected: T, computed: T) -> Self {
        let passed = expected == computed;
        Self::new(name, expected, computed, passed)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: expected {}; computed {}", self.name, self.expected, self.computed)
    }
}

/// Comma-separated list of groups.
pub struct GroupList<'a>(pub &'a [AbelianGroup]);

impl fmt::Display for GroupList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Groups(Vec<AbelianGroup>);

impl fmt::Display for Groups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        GroupList(&self.0).fmt(f)
    }
}

fn z() -> AbelianGroup {
    AbelianGroup::integers()
}

fn v4() -> AbelianGroup {
    AbelianGroup::elementary(2, 2)
}

pub fn flag_r3_homology() -> Vec<AbelianGroup> {
    vec![z(), v4(), AbelianGroup::trivial(), z()]
}

pub fn flag_r4_homology() -> Vec<AbelianGroup> {
    let e8 = AbelianGroup::elementary(2, 3);
    vec![z(), e8.clone(), v4(), AbelianGroup::from_cyclic_orders(2, &[2, 2]), e8, AbelianGroup::trivial(), z()]
}

pub fn rp3_homology() -> Vec<AbelianGroup> {
    vec![z(), AbelianGroup::cyclic(2), AbelianGroup::trivial(), z()]
}

fn homology_check(name: &str, sig: FlagSignature, expected: Vec<AbelianGroup>) -> Check {
    match build_complex(&sig) {
        Ok(c) => Check::compare(name, Groups(expected), Groups(homology(&c))),
        Err(e) => Check::new(name, Groups(expected), format!("error: {e}"), false),
    }
}

pub fn flag3_checks() -> Vec<Check> {
    let sig = FlagSignature::complete(3).expect("valid");
    vec![homology_check("homology of line triples in RP^2 = Flag(R^3)", sig, flag_r3_homology())]
}

pub fn flag4_checks() -> Vec<Check> {
    let sig = FlagSignature::complete(4).expect("valid");
    vec![homology_check("homology of line triples in RP^3 = Flag(R^4)", sig, flag_r4_homology())]
}

pub fn spectral_checks() -> Vec<Check> {
    let base = rp3_homology();
    let fiber = flag_r3_homology();
    let grid = build_e2(&base, &fiber);
    let outer = vec![z(), AbelianGroup::trivial(), AbelianGroup::cyclic(2), z()];
    let mut checks = vec![
        Check::compare("E2 row q=0", Groups(outer.clone()), Groups(grid.row(0))),
        Check::compare("E2 row q=1", Groups(vec![AbelianGroup::trivial(); 4]), Groups(grid.row(1))),
        Check::compare("E2 row q=2", Groups(vec![v4(); 4]), Groups(grid.row(2))),
        Check::compare("E2 row q=3", Groups(outer), Groups(grid.row(3))),
    ];
    let image = max_hom_image_order(&z(), &v4());
    checks.push(Check::new(
        "d2^{0,3}: Z -> V4 has image order < 4 (not surjective)",
        "2",
        image,
        image == ImageOrder::Finite(2),
    ));
    let total = build_complex(&FlagSignature::complete(4).expect("valid")).map(|c| homology(&c));
    match total {
        Ok(total) => {
            for d in einf_consistency(&grid, &total, 6).degrees {
                checks.push(Check::new(
                    format!("E_inf vs H^{} of Flag(R^4)", d.degree),
                    format!("rank {}, torsion order {}", d.total_free_rank, d.total_torsion_order),
                    format!("rank {}, torsion order {}", d.grid_free_rank, d.grid_torsion_order),
                    d.passed(),
                ));
            }
        }
        Err(e) => checks.push(Check::new("E_inf consistency", "Flag(R^4) complex", format!("error: {e}"), false)),
    }
    checks
}

pub fn cover_checks() -> Vec<Check> {
    let table = match lift_subgroup(&klein_rotations()) {
        Ok(t) => t,
        Err(e) => return vec![Check::new("lift of the Klein rotation group", "order 8", format!("error: {e}"), false)],
    };
    let census: Vec<String> = table.order_census().iter().map(|(o, c)| format!("{c} of order {o}")).collect();
    let mut checks = vec![
        Check::compare("lift order", 8, table.order()),
        Check::new("element-order census", "(reported)", census.join(", "), true),
    ];
    match classify_order8(&table) {
        Ok(ty) => checks.push(Check::new("isomorphism type (reference label D8)", "(reported)", ty, true)),
        Err(e) => checks.push(Check::new("isomorphism type", "order-8 group", format!("error: {e}"), false)),
    }
    match abelianization(&table) {
        Ok(ab) => checks.push(Check::compare("abelianization = H_1", v4(), ab)),
        Err(e) => checks.push(Check::new("abelianization", v4(), format!("error: {e}"), false)),
    }
    let kernel = table.generated_subgroup(&[1]);
    let central = kernel.iter().all(|k| table.center().contains(k));
    checks.push(Check::new("kernel {±1} is central of order 2", "true", central && kernel.len() == 2, central && kernel.len() == 2));
    let quotient_ok = table
        .quotient(&kernel)
        .map(|q| q.order() == 4 && q.is_abelian() && q.order_census().get(&2) == Some(&3))
        .unwrap_or(false);
    checks.push(Check::new("lift / kernel = Klein four-group", "true", quotient_ok, quotient_ok));
    checks
}

/// Aggregate statistics of seeded round trips `t → f(t) → g(f(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryStats {
    pub n: usize,
    pub trials: usize,
    pub valid: usize,
    pub passed: usize,
    /// max over trials of the distance between `f(g(f(t)))` and `f(t)`
    pub max_fg_deviation: f64,
    /// max distance between `ℓ1` and the first line of `g(f(t))`
    pub max_line1_deviation: f64,
    /// max distance between the span of `t` and that of `g(f(t))`
    pub max_span_deviation: f64,
}

impl GeometryStats {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

impl fmt::Display for GeometryStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}: {}/{} trials pass ({} valid samples)", self.n, self.passed, self.trials, self.valid)?;
        writeln!(f, "  max f∘g deviation:        {:.3e}", self.max_fg_deviation)?;
        writeln!(f, "  max ℓ1 deviation (g∘f):   {:.3e}", self.max_line1_deviation)?;
        write!(f, "  max span deviation (g∘f): {:.3e}", self.max_span_deviation)
    }
}

pub fn geometry_trials(n: usize, trials: usize, seed: u64, tolerance: f64) -> GeometryStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = GeometryStats {
        n,
        trials,
        valid: 0,
        passed: 0,
        max_fg_deviation: 0.0,
        max_line1_deviation: 0.0,
        max_span_deviation: 0.0,
    };
    for _ in 0..trials {
        let Ok(t) = random_triple_with(n, &mut rng) else {
            continue;
        };
        if validate_triple(&t).is_err() {
            continue;
        }
        stats.valid += 1;
        let outcome = (|| {
            let flag = map_f(&t).ok()?;
            let back = map_g(&flag).ok()?;
            validate_triple(&back).ok()?;
            let fg = map_f(&back).ok()?.distance(&flag).ok()?;
            let line1 = subspace_distance(back.line(0), t.line(0)).ok()?;
            let span = subspace_distance(&back.span(), &t.span()).ok()?;
            Some((fg, line1, span))
        })();
        if let Some((fg, line1, span)) = outcome {
            stats.max_fg_deviation = stats.max_fg_deviation.max(fg);
            stats.max_line1_deviation = stats.max_line1_deviation.max(line1);
            stats.max_span_deviation = stats.max_span_deviation.max(span);
            if fg <= tolerance && line1 <= tolerance && span <= tolerance {
                stats.passed += 1;
            }
        }
    }
    stats
}

/// Triple with `ℓ1 = ℓ2`.
pub fn shared_line_fixture() -> LineTriple {
    let l = Subspace::coordinate(4, &[1, 2]);
    LineTriple::new([l.clone(), l, Subspace::coordinate(4, &[1, 3])])
}

/// Three distinct lines through the point `u1` in the plane `span(u1, u2, u3)`.
pub fn concurrent_fixture() -> LineTriple {
    let mut mix = nalgebra::DMatrix::zeros(4, 2);
    mix[(0, 0)] = 1.0;
    mix[(1, 1)] = 1.0;
    mix[(2, 1)] = 1.0;
    LineTriple::new([
        Subspace::coordinate(4, &[1, 2]),
        Subspace::coordinate(4, &[1, 3]),
        Subspace::from_columns(mix).expect("independent"),
    ])
}

pub fn geometry_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for (n, seed) in [(2, 7), (3, 42), (5, 1)] {
        let stats = geometry_trials(n, 1000, seed, 1e-9);
        checks.push(Check::new(
            format!("round trips in RP^{n} (seed {seed})"),
            "1000/1000 within 1e-9",
            format!(
                "{}/{} (f∘g {:.1e}, ℓ1 {:.1e}, span {:.1e})",
                stats.passed, stats.trials, stats.max_fg_deviation, stats.max_line1_deviation, stats.max_span_deviation
            ),
            stats.all_passed(),
        ));
    }
    let shared = validate_triple(&shared_line_fixture()).err().unwrap_or_default();
    checks.push(Check::new(
        "shared-line fixture rejected",
        "SharedLine(l1, l2)",
        shared.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
        shared.contains(&Violation::SharedLine(0, 1)),
    ));
    let concurrent = validate_triple(&concurrent_fixture()).err().unwrap_or_default();
    checks.push(Check::new(
        "concurrent-lines fixture rejected",
        "ConcurrentLines",
        concurrent.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
        concurrent.contains(&Violation::ConcurrentLines),
    ));
    checks
}

pub fn run_checks(set: CheckSet) -> Vec<Check> {
    match set {
        CheckSet::Thm2 => flag3_checks(),
        CheckSet::Thm4 => flag4_checks(),
        CheckSet::Spectral => spectral_checks(),
        CheckSet::Covers => cover_checks(),
        CheckSet::Geometry => geometry_checks(),
        CheckSet::All => [flag3_checks(), flag4_checks(), spectral_checks(), cover_checks(), geometry_checks()].concat(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_sets_pass() {
        for set in [CheckSet::Thm2, CheckSet::Thm4, CheckSet::Spectral, CheckSet::Covers] {
            for c in run_checks(set) {
                assert!(c.passed, "{c}");
            }
        }
    }

    #[test]
    fn geometry_trials_are_deterministic() {
        let a = geometry_trials(3, 50, 9, 1e-9);
        let b = geometry_trials(3, 50, 9, 1e-9);
        assert_eq!(a, b);
        assert!(a.all_passed());
    }

    #[test]
    fn failing_check_renders_fail() {
        let c = Check::compare("x", 1, 2);
        assert_eq!(c.to_string(), "FAIL x: expected 1; computed 2");
    }
}
