//! E₂ page of the Serre spectral sequence for a bundle with trivial action
//! of the base's fundamental group on the fiber's cohomology, and the
//! associated-graded consistency check against a directly computed total
//! space.

use std::fmt;

use crate::homalg::{cohomology_from_homology, AbelianGroup};

pub use crate::homalg::{max_hom_image_order, ImageOrder};

/// `E_2^{p,q}` for `0 ≤ p ≤ p_max`, `0 ≤ q ≤ q_max`. Entries outside the
/// bounds are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralGrid {
    p_max: usize,
    q_max: usize,
    entries: Vec<AbelianGroup>,
}

impl SpectralGrid {
    pub fn zeros(p_max: usize, q_max: usize) -> Self {
        SpectralGrid { p_max, q_max, entries: vec![AbelianGroup::trivial(); (p_max + 1) * (q_max + 1)] }
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn get(&self, p: usize, q: usize) -> AbelianGroup {
        if p > self.p_max || q > self.q_max {
            return AbelianGroup::trivial();
        }
        self.entries[q * (self.p_max + 1) + p].clone()
    }

    pub fn set(&mut self, p: usize, q: usize, g: AbelianGroup) {
        assert!(p <= self.p_max && q <= self.q_max, "({p},{q}) outside grid");
        self.entries[q * (self.p_max + 1) + p] = g;
    }

    /// Row `q`, indexed by `p`.
    pub fn row(&self, q: usize) -> Vec<AbelianGroup> {
        (0..=self.p_max).map(|p| self.get(p, q)).collect()
    }

    pub fn column(&self, p: usize) -> Vec<AbelianGroup> {
        (0..=self.q_max).map(|q| self.get(p, q)).collect()
    }

    /// Entries on the antidiagonal `p + q = m`.
    pub fn total_degree(&self, m: usize) -> Vec<AbelianGroup> {
        (0..=m.min(self.p_max)).map(|p| self.get(p, m - p)).collect()
    }

    /// Alternating sum of free ranks over all entries.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0;
        for p in 0..=self.p_max {
            for q in 0..=self.q_max {
                let r = self.get(p, q).free_rank() as i64;
                chi += if (p + q) % 2 == 0 { r } else { -r };
            }
        }
        chi
    }
}

impl fmt::Display for SpectralGrid {
    /// `p` runs left to right, `q` bottom to top.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..=self.q_max).rev().map(|q| self.row(q).iter().map(|g| g.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let q = self.q_max - i;
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "q={q} | {}", padded.join(" | "))?;
        }
        Ok(())
    }
}

/// `E_2^{p,q} = H^p(B; H^q(F; Z))` from integral homology of base and fiber.
pub fn build_e2(base_homology: &[AbelianGroup], fiber_homology: &[AbelianGroup]) -> SpectralGrid {
    assert!(!base_homology.is_empty() && !fiber_homology.is_empty());
    let fiber_cohomology = cohomology_from_homology(fiber_homology, &AbelianGroup::integers());
    let mut grid = SpectralGrid::zeros(base_homology.len() - 1, fiber_homology.len() - 1);
    for (q, coeff) in fiber_cohomology.iter().enumerate() {
        for (p, g) in cohomology_from_homology(base_homology, coeff).into_iter().enumerate() {
            grid.set(p, q, g);
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: usize,
    pub grid_free_rank: usize,
    pub total_free_rank: usize,
    pub grid_torsion_order: u128,
    pub total_torsion_order: u128,
}

impl DegreeCheck {
    pub fn passed(&self) -> bool {
        self.grid_free_rank == self.total_free_rank && self.grid_torsion_order == self.total_torsion_order
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub degrees: Vec<DegreeCheck>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(DegreeCheck::passed)
    }
}

/// Compares the grid, read as `E_∞`, with the integral cohomology of the
/// total space: per total degree, free ranks must add up and torsion orders
/// must multiply up. Extension problems are not resolved.
pub fn einf_consistency(grid: &SpectralGrid, total_homology: &[AbelianGroup], manifold_dim: usize) -> ConsistencyReport {
    let mut total_h = total_homology.to_vec();
    total_h.resize(manifold_dim + 1, AbelianGroup::trivial());
    let cohomology = cohomology_from_homology(&total_h, &AbelianGroup::integers());
    let degrees = (0..=manifold_dim)
        .map(|m| {
            let entries = grid.total_degree(m);
            DegreeCheck {
                degree: m,
                grid_free_rank: entries.iter().map(AbelianGroup::free_rank).sum(),
                total_free_rank: cohomology[m].free_rank(),
                grid_torsion_order: entries.iter().map(AbelianGroup::torsion_order).product(),
                total_torsion_order: cohomology[m].torsion_order(),
            }
        })
        .collect();
    ConsistencyReport { degrees }
}
