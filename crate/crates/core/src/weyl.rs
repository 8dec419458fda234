//! Symmetric-group combinatorics used to index Schubert cells.
//!
//! Permutations are stored in one-line notation with 1-based values. The
//! right action of a transposition `t_ab` swaps the entries in positions
//! `a` and `b`, so descents of `w` control membership in the set of
//! minimal-length coset representatives for a parabolic subgroup.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("ambient dimension must be positive")]
    EmptyAmbient,
    #[error("flag dimensions {dims:?} must be strictly increasing and lie strictly between 0 and {ambient}")]
    BadDims { dims: Vec<usize>, ambient: usize },
    #[error("{0:?} is not a permutation of 1..n")]
    NotAPermutation(Vec<usize>),
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, SignatureError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(SignatureError::NotAPermutation(images));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The longest element `(n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Inversion count, which is the Coxeter length and the Schubert cell dimension.
    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions `i` (1-based) with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[0] > pair[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `self · t_ab`: swap positions `a` and `b` (1-based).
    pub fn times_transposition(&self, a: usize, b: usize) -> Permutation {
        let mut images = self.0.clone();
        images.swap(a - 1, b - 1);
        Permutation(images)
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        // (self ∘ other)(i) = self(other(i))
        Permutation(other.0.iter().map(|&i| self.0[i - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// A reduced word in simple transpositions, found by repeatedly removing
    /// the leftmost descent. Its length always equals [`Permutation::length`].
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut word = Vec::new();
        while let Some(i) = w.windows(2).position(|p| p[0] > p[1]) {
            w.swap(i, i + 1);
            word.push(i + 1);
        }
        word.reverse();
        word
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Dimensions `d_1 < ... < d_k` of a partial flag in `R^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagSignature {
    ambient_dim: usize,
    dims: Vec<usize>,
}

impl FlagSignature {
    pub fn new(ambient_dim: usize, dims: Vec<usize>) -> Result<Self, SignatureError> {
        if ambient_dim == 0 {
            return Err(SignatureError::EmptyAmbient);
        }
        let increasing = dims.windows(2).all(|p| p[0] < p[1]);
        let in_range = dims.iter().all(|&d| d > 0 && d < ambient_dim);
        if !increasing || !in_range {
            return Err(SignatureError::BadDims { dims, ambient: ambient_dim });
        }
        Ok(FlagSignature { ambient_dim, dims })
    }

    /// Complete flags `(1, 2, ..., n-1)` in `R^n`.
    pub fn complete(ambient_dim: usize) -> Result<Self, SignatureError> {
        Self::new(ambient_dim, (1..ambient_dim).collect())
    }

    /// `RP^{n-1}`, i.e. lines in `R^n`.
    pub fn projective(ambient_dim: usize) -> Result<Self, SignatureError> {
        Self::new(ambient_dim, vec![1])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Sizes of the successive quotients `d_1, d_2 - d_1, ..., n - d_k`.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        let mut blocks = Vec::with_capacity(self.dims.len() + 1);
        for &d in self.dims.iter().chain(std::iter::once(&self.ambient_dim)) {
            blocks.push(d - prev);
            prev = d;
        }
        blocks
    }

    /// Real dimension of the flag manifold, i.e. the length of the top cell.
    pub fn manifold_dim(&self) -> usize {
        let n = self.ambient_dim;
        let within: usize = self.block_sizes().iter().map(|b| b * (b - 1) / 2).sum();
        n * (n - 1) / 2 - within
    }

    /// Number of Schubert cells, the multinomial `n! / (b_1! ... b_r!)`.
    /// Saturates at `u128::MAX`.
    pub fn cell_count(&self) -> u128 {
        let mut count: u128 = 1;
        let mut placed: u128 = 0;
        for b in self.block_sizes() {
            // multiply by C(placed + b, b) incrementally to stay exact
            for i in 1..=b as u128 {
                placed += 1;
                count = match count.checked_mul(placed) {
                    Some(c) => c / i,
                    None => return u128::MAX,
                };
            }
        }
        count
    }

    fn allows_descent_at(&self, pos: usize) -> bool {
        self.dims.binary_search(&pos).is_ok()
    }

    pub fn is_minimal_rep(&self, w: &Permutation) -> bool {
        w.degree() == self.ambient_dim && w.descents().into_iter().all(|d| self.allows_descent_at(d))
    }
}

impl fmt::Display for FlagSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({}) in R^{}", parts.join(","), self.ambient_dim)
    }
}

/// A Bruhat cover `lower ⋖ upper` with `upper = lower · t_ab`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoveringEdge {
    pub lower: Permutation,
    pub upper: Permutation,
    pub reflection: (usize, usize),
}

/// Sort key for deterministic enumeration: length first, then one-line form.
fn rep_order(a: &(usize, Permutation), b: &(usize, Permutation)) -> std::cmp::Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}

/// All minimal-length coset representatives for the parabolic subgroup of
/// `sig`, sorted by (length, one-line form).
///
/// Representatives are permutations that increase along each block of
/// positions, so they are generated directly as ordered set partitions of
/// `{1..n}` into blocks of the signature's sizes.
pub fn minimal_coset_reps(sig: &FlagSignature) -> Vec<Permutation> {
    let n = sig.ambient_dim();
    let blocks = sig.block_sizes();
    let mut out: Vec<(usize, Permutation)> = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fill_blocks(&blocks, 0, 0, &mut images, &mut used, &mut out);
    out.sort_by(rep_order);
    out.into_iter().map(|(_, w)| w).collect()
}

fn fill_blocks(
    blocks: &[usize],
    block: usize,
    filled: usize,
    images: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<(usize, Permutation)>,
) {
    if block == blocks.len() {
        let w = Permutation(images.clone());
        out.push((w.length(), w));
        return;
    }
    if filled == blocks[block] {
        fill_blocks(blocks, block + 1, 0, images, used, out);
        return;
    }
    let n = used.len() - 1;
    let floor = if filled == 0 { 0 } else { *images.last().unwrap() };
    for v in floor + 1..=n {
        if used[v] {
            continue;
        }
        used[v] = true;
        images.push(v);
        fill_blocks(blocks, block, filled + 1, images, used, out);
        images.pop();
        used[v] = false;
    }
}

/// Bruhat covering relations among `reps`, detected by the transposition
/// criterion. Edges are ordered by the position of `lower` in `reps`, then
/// by the reflection.
pub fn covering_pairs(reps: &[Permutation]) -> Vec<CoveringEdge> {
    let lengths: Vec<usize> = reps.iter().map(Permutation::length).collect();
    let index: HashMap<&Permutation, usize> = reps.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    for (i, w) in reps.iter().enumerate() {
        let n = w.degree();
        let images = w.images();
        for a in 1..=n {
            for b in a + 1..=n {
                if images[a - 1] > images[b - 1] {
                    continue;
                }
                let upper = w.times_transposition(a, b);
                if let Some(&j) = index.get(&upper) {
                    if lengths[j] == lengths[i] + 1 {
                        edges.push(CoveringEdge { lower: w.clone(), upper, reflection: (a, b) });
                    }
                }
            }
        }
    }
    edges
}
