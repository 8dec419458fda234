//! Cellular chain complexes of real flag manifolds from Schubert cells.
//!
//! Cells are the minimal coset representatives of the signature, graded by
//! length. The boundary coefficient along a Bruhat cover `w ⋖ w·t_ab` is
//! `±2` when `b - a` is even and `0` otherwise. Signs are fixed by solving
//! the parity conditions that `∂∘∂ = 0` imposes on every length-2 interval.

use std::collections::HashMap;

use thiserror::Error;

use crate::homalg::{ChainComplex, SparseMatrix};
use crate::weyl::{covering_pairs, minimal_coset_reps, CoveringEdge, FlagSignature, Permutation};

pub const MAX_CELLS: u128 = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("signature {signature} has {cells} cells, above the cap of {MAX_CELLS}")]
    TooLarge { signature: String, cells: u128 },
    #[error("no sign assignment makes the boundary square to zero")]
    InfeasibleSigns,
    #[error("boundary composition ∂_{} ∘ ∂_{} is nonzero", .0 - 1, .0)]
    NonzeroSquare(usize),
}

/// `2` if the reflection `(a, b)` of the edge has `b - a` even, else `0`.
pub fn incidence_magnitude(edge: &CoveringEdge) -> i64 {
    let (a, b) = edge.reflection;
    if (b - a) % 2 == 0 {
        2
    } else {
        0
    }
}

/// Dense bit rows for Gaussian elimination over GF(2).
struct Gf2System {
    vars: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Gf2System {
    fn new(vars: usize) -> Self {
        // one extra bit for the right-hand side
        Gf2System { vars, words: (vars + 1).div_ceil(64), rows: Vec::new() }
    }

    fn push(&mut self, vars: &[usize], rhs: bool) {
        let mut row = vec![0u64; self.words];
        for &v in vars {
            row[v / 64] ^= 1 << (v % 64);
        }
        if rhs {
            row[self.vars / 64] ^= 1 << (self.vars % 64);
        }
        self.rows.push(row);
    }

    fn bit(row: &[u64], i: usize) -> bool {
        row[i / 64] >> (i % 64) & 1 == 1
    }

    /// Reduced row echelon solve. Free variables are set to 0.
    fn solve(mut self) -> Option<Vec<bool>> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.vars {
            let Some(p) = (rank..self.rows.len()).find(|&r| Self::bit(&self.rows[r], c)) else {
                continue;
            };
            self.rows.swap(rank, p);
            let pivot_row = self.rows[rank].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != rank && Self::bit(row, c) {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        if self.rows[rank..].iter().any(|row| Self::bit(row, self.vars)) {
            return None;
        }
        let mut solution = vec![false; self.vars];
        for (r, &c) in pivots.iter().enumerate() {
            solution[c] = Self::bit(&self.rows[r], self.vars);
        }
        Some(solution)
    }
}

/// Signs (`+1`/`-1`) for the edges with nonzero magnitude, such that every
/// length-2 interval whose two chains both carry nonzero products gets
/// opposite chain signs. Edges with magnitude 0 are mapped to `+1`.
pub fn sign_assignment(
    cells: &[Permutation],
    edges: &[CoveringEdge],
    magnitudes: &[i64],
) -> Result<HashMap<CoveringEdge, i8>, ComplexError> {
    assert_eq!(edges.len(), magnitudes.len());
    let index: HashMap<&Permutation, usize> = cells.iter().enumerate().map(|(i, w)| (w, i)).collect();

    // variable index for each nonzero edge, in edge order
    let mut var_of_edge = vec![usize::MAX; edges.len()];
    let mut vars = 0;
    for (e, &m) in magnitudes.iter().enumerate() {
        if m != 0 {
            var_of_edge[e] = vars;
            vars += 1;
        }
    }

    let mut up: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cells.len()];
    for (e, edge) in edges.iter().enumerate() {
        up[index[&edge.lower]].push((index[&edge.upper], e));
    }

    let mut system = Gf2System::new(vars);
    for bottom in 0..cells.len() {
        let mut chains: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for &(mid, e1) in &up[bottom] {
            for &(top, e2) in &up[mid] {
                chains.entry(top).or_default().push((e1, e2));
            }
        }
        let mut tops: Vec<_> = chains.into_iter().collect();
        tops.sort_unstable_by_key(|(t, _)| *t);
        for (_, chain) in tops {
            let nonzero: Vec<(usize, usize)> =
                chain.into_iter().filter(|&(e1, e2)| magnitudes[e1] != 0 && magnitudes[e2] != 0).collect();
            match nonzero.len() {
                0 => {}
                2 => {
                    let vs: Vec<usize> = nonzero.iter().flat_map(|&(a, b)| [var_of_edge[a], var_of_edge[b]]).collect();
                    system.push(&vs, true);
                }
                // a lone nonzero chain can never cancel
                _ => return Err(ComplexError::InfeasibleSigns),
            }
        }
    }

    let solution = system.solve().ok_or(ComplexError::InfeasibleSigns)?;
    Ok(edges
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let negative = var_of_edge[e] != usize::MAX && solution[var_of_edge[e]];
            (edge.clone(), if negative { -1 } else { 1 })
        })
        .collect())
}

/// Integer cellular chain complex of a real flag manifold.
#[derive(Debug, Clone)]
pub struct CellComplex {
    signature: FlagSignature,
    cells: Vec<Vec<Permutation>>,
    boundaries: Vec<SparseMatrix>,
}

impl CellComplex {
    pub fn signature(&self) -> &FlagSignature {
        &self.signature
    }

    /// Cells of dimension `d`, in (length, lexicographic) order.
    pub fn cells(&self, d: usize) -> &[Permutation] {
        &self.cells[d]
    }
}

impl ChainComplex for CellComplex {
    fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    fn cell_count(&self, d: usize) -> usize {
        self.cells[d].len()
    }

    fn boundary(&self, d: usize) -> &SparseMatrix {
        &self.boundaries[d - 1]
    }
}

pub fn build_complex(sig: &FlagSignature) -> Result<CellComplex, ComplexError> {
    let count = sig.cell_count();
    if count > MAX_CELLS {
        return Err(ComplexError::TooLarge { signature: sig.to_string(), cells: count });
    }
    let reps = minimal_coset_reps(sig);
    let edges = covering_pairs(&reps);
    let magnitudes: Vec<i64> = edges.iter().map(incidence_magnitude).collect();
    let signs = sign_assignment(&reps, &edges, &magnitudes)?;

    let top = sig.manifold_dim();
    let mut cells: Vec<Vec<Permutation>> = vec![Vec::new(); top + 1];
    let mut position: HashMap<&Permutation, usize> = HashMap::new();
    for w in &reps {
        let d = w.length();
        position.insert(w, cells[d].len());
        cells[d].push(w.clone());
    }

    let mut triplets: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); top];
    for (edge, &m) in edges.iter().zip(&magnitudes) {
        if m == 0 {
            continue;
        }
        let d = edge.upper.length();
        let value = m * signs[edge] as i64;
        triplets[d - 1].push((position[&edge.lower], position[&edge.upper], value));
    }
    let boundaries = triplets
        .into_iter()
        .enumerate()
        .map(|(i, t)| SparseMatrix::from_triplets(cells[i].len(), cells[i + 1].len(), t))
        .collect();

    let complex = CellComplex { signature: sig.clone(), cells, boundaries };
    if let Some(d) = complex.square_defect() {
        return Err(ComplexError::NonzeroSquare(d));
    }
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{betti_mod_p, homology, AbelianGroup};

    fn edge(a: usize, b: usize) -> CoveringEdge {
        let lower = Permutation::identity(b);
        let upper = lower.times_transposition(a, b);
        CoveringEdge { lower, upper, reflection: (a, b) }
    }

    fn sig(n: usize, dims: &[usize]) -> FlagSignature {
        FlagSignature::new(n, dims.to_vec()).unwrap()
    }

    #[test]
    fn magnitudes() {
        assert_eq!(incidence_magnitude(&edge(1, 2)), 0);
        assert_eq!(incidence_magnitude(&edge(1, 3)), 2);
        assert_eq!(incidence_magnitude(&edge(1, 4)), 0);
        assert_eq!(incidence_magnitude(&edge(2, 4)), 2);
    }

    #[test]
    fn rp_n_signs_are_all_positive() {
        for n in 2..=8 {
            let reps = minimal_coset_reps(&FlagSignature::projective(n).unwrap());
            let edges = covering_pairs(&reps);
            let mags: Vec<i64> = edges.iter().map(incidence_magnitude).collect();
            let signs = sign_assignment(&reps, &edges, &mags).unwrap();
            assert!(signs.values().all(|&s| s == 1));
        }
    }

    #[test]
    fn s3_complete_all_positive_is_valid() {
        let reps = minimal_coset_reps(&FlagSignature::complete(3).unwrap());
        let edges = covering_pairs(&reps);
        let mags: Vec<i64> = edges.iter().map(incidence_magnitude).collect();
        assert_eq!(edges.len(), 8);
        assert_eq!(mags.iter().filter(|&&m| m != 0).count(), 2);
        let signs = sign_assignment(&reps, &edges, &mags).unwrap();
        assert!(signs.values().all(|&s| s == 1));
    }

    #[test]
    fn gf2_inconsistent_system() {
        let mut sys = Gf2System::new(2);
        sys.push(&[0, 1], true);
        sys.push(&[0, 1], false);
        assert!(sys.solve().is_none());
        let mut sys = Gf2System::new(3);
        sys.push(&[0, 1], true);
        sys.push(&[1, 2], true);
        // x2 is free and set to 0
        let s = sys.solve().unwrap();
        assert_eq!(s, vec![false, true, false]);
    }

    #[test]
    fn rp2_complex() {
        let c = build_complex(&FlagSignature::projective(3).unwrap()).unwrap();
        assert_eq!(c.cell_counts(), vec![1, 1, 1]);
        assert!(c.boundary(1).is_zero());
        assert_eq!(c.boundary(2).get(0, 0).abs(), 2);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn flag_r3_complex() {
        let c = build_complex(&FlagSignature::complete(3).unwrap()).unwrap();
        assert_eq!(c.cell_counts(), vec![1, 2, 2, 1]);
        assert!(c.boundary(1).is_zero());
        assert!(c.boundary(3).is_zero());
        let d2 = c.boundary(2);
        for col in 0..2 {
            let nonzero: Vec<i64> = (0..2).map(|r| d2.get(r, col)).filter(|&v| v != 0).collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(nonzero[0].abs(), 2);
        }
    }

    #[test]
    fn flag_r4_complex() {
        let c = build_complex(&FlagSignature::complete(4).unwrap()).unwrap();
        assert_eq!(c.cell_counts(), vec![1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(c.euler_characteristic(), 0);
        let z = AbelianGroup::integers();
        let e = |k| AbelianGroup::elementary(2, k);
        let expect = vec![
            z.clone(),
            e(3),
            e(2),
            AbelianGroup::from_cyclic_orders(2, &[2, 2]),
            e(3),
            AbelianGroup::trivial(),
            z,
        ];
        assert_eq!(homology(&c), expect);
    }

    #[test]
    fn too_large_is_refused() {
        let err = build_complex(&FlagSignature::complete(9).unwrap()).unwrap_err();
        assert!(matches!(err, ComplexError::TooLarge { cells: 362_880, .. }));
        // 8! = 40320 is under the cap
        assert!(FlagSignature::complete(8).unwrap().cell_count() <= MAX_CELLS);
    }

    fn check_invariants(s: &FlagSignature) {
        let c = build_complex(s).unwrap();
        assert_eq!(c.square_defect(), None, "{s}");
        for (_, _, v) in (1..=c.top_dim()).flat_map(|d| c.boundary(d).entries().to_vec()) {
            assert_eq!(v.abs(), 2);
        }
        let counts = c.cell_counts();
        let reversed: Vec<usize> = counts.iter().rev().copied().collect();
        assert_eq!(counts, reversed, "{s}: palindromic cell counts");
        assert_eq!(betti_mod_p(&c, 2), counts, "{s}: mod-2 differentials vanish");
    }

    #[test]
    fn invariants_over_many_signatures() {
        for n in 2..=6 {
            let inner: Vec<usize> = (1..n).collect();
            for mask in 1u32..(1 << inner.len()) {
                let dims: Vec<usize> =
                    inner.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &d)| d).collect();
                check_invariants(&sig(n, &dims));
            }
        }
    }

    #[test]
    fn euler_characteristics() {
        for n in 2..=6 {
            assert_eq!(build_complex(&FlagSignature::complete(n).unwrap()).unwrap().euler_characteristic(), 0);
        }
        for n in 4..=6 {
            assert_eq!(build_complex(&sig(n, &[1, 2, 3])).unwrap().euler_characteristic(), 0);
        }
        for k in 1..=4 {
            let c = build_complex(&FlagSignature::projective(2 * k + 1).unwrap()).unwrap();
            assert_eq!(c.euler_characteristic(), 1);
        }
    }
}
