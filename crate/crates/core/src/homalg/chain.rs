use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::group::AbelianGroup;
use super::matrix::SparseMatrix;
use super::snf::smith_diagonal;

/// A finite free chain complex `C_top → ... → C_0`.
///
/// `boundary(d)` maps `C_d → C_{d-1}`: rows are `(d-1)`-cells, columns are
/// `d`-cells. It is only queried for `1 ≤ d ≤ top_dim`.
pub trait ChainComplex {
    fn top_dim(&self) -> usize;
    fn cell_count(&self, d: usize) -> usize;
    fn boundary(&self, d: usize) -> &SparseMatrix;

    fn cell_counts(&self) -> Vec<usize> {
        (0..=self.top_dim()).map(|d| self.cell_count(d)).collect()
    }

    fn euler_characteristic(&self) -> i64 {
        self.cell_counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// First dimension `d ≥ 2` where `∂_{d-1} ∘ ∂_d ≠ 0`, if any.
    fn square_defect(&self) -> Option<usize> {
        (2..=self.top_dim()).find(|&d| !self.boundary(d - 1).compose(self.boundary(d)).is_zero())
    }
}

/// A chain complex given by explicit boundary matrices.
#[derive(Debug, Clone)]
pub struct ExplicitComplex {
    counts: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl ExplicitComplex {
    /// `boundaries[d-1]` is `∂_d`. Shapes are checked against `counts`.
    pub fn new(counts: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Self {
        assert!(!counts.is_empty(), "complex needs at least C_0");
        assert_eq!(boundaries.len(), counts.len() - 1);
        for (i, b) in boundaries.iter().enumerate() {
            assert_eq!((b.rows(), b.cols()), (counts[i], counts[i + 1]), "∂_{} has wrong shape", i + 1);
        }
        ExplicitComplex { counts, boundaries }
    }

    /// One cell per dimension with the given 1×1 boundary coefficients.
    pub fn one_cell_per_dim(coefficients: &[i64]) -> Self {
        let counts = vec![1; coefficients.len() + 1];
        let boundaries = coefficients
            .iter()
            .map(|&c| SparseMatrix::from_triplets(1, 1, vec![(0, 0, c)]))
            .collect();
        Self::new(counts, boundaries)
    }
}

impl ChainComplex for ExplicitComplex {
    fn top_dim(&self) -> usize {
        self.counts.len() - 1
    }

    fn cell_count(&self, d: usize) -> usize {
        self.counts[d]
    }

    fn boundary(&self, d: usize) -> &SparseMatrix {
        &self.boundaries[d - 1]
    }
}

/// Integral homology `H_d = ker ∂_d / im ∂_{d+1}` for `d = 0..=top`.
pub fn homology<C: ChainComplex + ?Sized>(complex: &C) -> Vec<AbelianGroup> {
    let top = complex.top_dim();
    // diagonals[d] = SNF diagonal of ∂_d; ∂_0 and ∂_{top+1} are zero maps
    let mut diagonals: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    for (d, diag) in diagonals.iter_mut().enumerate().take(top + 1).skip(1) {
        *diag = smith_diagonal(&complex.boundary(d).to_dense());
    }
    (0..=top)
        .map(|d| {
            let cells = complex.cell_count(d);
            let free = cells - diagonals[d].len() - diagonals[d + 1].len();
            let torsion: Vec<u64> = diagonals[d + 1]
                .iter()
                .filter(|x| !x.is_one())
                .map(|x| x.to_u64().expect("invariant factor exceeds u64"))
                .collect();
            AbelianGroup::from_cyclic_orders(free, &torsion)
        })
        .collect()
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Rank of a sparse integer matrix over the field with `p` elements.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = vec![vec![0; m.cols()]; m.rows()];
    for &(r, c, v) in m.entries() {
        rows[r][c] = v.rem_euclid(p as i64) as u64;
    }
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_pow(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u128 * inv as u128 % p as u128) as u64;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    let sub = (f as u128 * y as u128 % p as u128) as u64;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers with `Z/p` coefficients. `p` must be prime.
pub fn betti_mod_p<C: ChainComplex + ?Sized>(complex: &C, p: u64) -> Vec<usize> {
    assert!(p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k)), "{p} is not prime");
    let top = complex.top_dim();
    let mut ranks = vec![0usize; top + 2];
    for (d, r) in ranks.iter_mut().enumerate().take(top + 1).skip(1) {
        *r = rank_mod_p(complex.boundary(d), p);
    }
    (0..=top).map(|d| complex.cell_count(d) - ranks[d] - ranks[d + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> AbelianGroup {
        AbelianGroup::integers()
    }

    #[test]
    fn rp3_small_complex() {
        let c = ExplicitComplex::one_cell_per_dim(&[0, 2, 0]);
        assert_eq!(c.square_defect(), None);
        assert_eq!(homology(&c), vec![z(), AbelianGroup::cyclic(2), AbelianGroup::trivial(), z()]);
        assert_eq!(betti_mod_p(&c, 2), vec![1, 1, 1, 1]);
        assert_eq!(betti_mod_p(&c, 3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn detects_nonzero_square() {
        let c = ExplicitComplex::one_cell_per_dim(&[2, 2]);
        assert_eq!(c.square_defect(), Some(2));
    }

    #[test]
    fn torus_like_complex() {
        // one 0-cell, two 1-cells, one 2-cell, all boundaries zero
        let c = ExplicitComplex::new(vec![1, 2, 1], vec![SparseMatrix::new(1, 2), SparseMatrix::new(2, 1)]);
        assert_eq!(homology(&c), vec![z(), AbelianGroup::free(2), z()]);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn klein_bottle_complex() {
        // ∂_2 e = 2a, ∂_1 = 0  gives H_1 = Z ⊕ Z/2, H_2 = 0
        let c = ExplicitComplex::new(
            vec![1, 2, 1],
            vec![SparseMatrix::new(1, 2), SparseMatrix::from_triplets(2, 1, vec![(0, 0, 2)])],
        );
        assert_eq!(homology(&c), vec![z(), AbelianGroup::from_cyclic_orders(1, &[2]), AbelianGroup::trivial()]);
    }

    #[test]
    fn rank_mod_p_basic() {
        let m = SparseMatrix::from_triplets(2, 2, vec![(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]);
        assert_eq!(rank_mod_p(&m, 3), 1);
        let m = SparseMatrix::from_triplets(2, 2, vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 2);
    }
}
