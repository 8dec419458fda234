use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A finitely generated abelian group `Z^r ⊕ Z/m_1 ⊕ ... ⊕ Z/m_k` in
/// invariant-factor form: every `m_i ≥ 2` and `m_i | m_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<u64>,
}

fn prime_powers(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    pub fn cyclic(m: u64) -> Self {
        match m {
            0 => Self::integers(),
            _ => Self::from_cyclic_orders(0, &[m]),
        }
    }

    /// `(Z/m)^k`
    pub fn elementary(m: u64, k: usize) -> Self {
        Self::from_cyclic_orders(0, &vec![m; k])
    }

    /// Canonical form of `Z^free ⊕ ⊕ Z/m` for arbitrary cyclic orders `m`.
    /// Orders 1 are dropped; the rest are regrouped through their
    /// prime-power parts into an invariant-factor chain.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &m in orders {
            assert!(m != 0, "use free_rank for infinite cyclic summands");
            for (p, e) in prime_powers(m) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for mut powers in by_prime.into_values() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            // largest powers go to the last factors
            for (i, q) in powers.into_iter().enumerate() {
                factors[len - 1 - i] *= q;
            }
        }
        AbelianGroup { free_rank, invariant_factors: factors }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u128 {
        self.invariant_factors.iter().map(|&m| m as u128).product()
    }

    pub fn torsion(&self) -> AbelianGroup {
        AbelianGroup { free_rank: 0, invariant_factors: self.invariant_factors.clone() }
    }

    /// Largest element order of the torsion part (1 for torsion-free groups).
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// Number of invariant factors divisible by `p`, i.e. the Z/p-rank of the torsion.
    pub fn p_rank(&self, p: u64) -> usize {
        self.invariant_factors.iter().filter(|&&m| m % p == 0).count()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders = self.invariant_factors.clone();
        orders.extend_from_slice(&other.invariant_factors);
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Cyclic summands, infinite ones encoded as 0.
    fn summands(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::repeat_n(0u64, self.free_rank).chain(self.invariant_factors.iter().copied())
    }
}

fn cyclic_or_zero(m: u64) -> AbelianGroup {
    if m <= 1 {
        AbelianGroup::trivial()
    } else {
        AbelianGroup::cyclic(m)
    }
}

/// `Hom(A, B)`, summand by summand. Cyclic groups are encoded with 0 for `Z`.
pub fn hom_group(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut out = AbelianGroup::trivial();
    for m in a.summands() {
        for k in b.summands() {
            let term = match (m, k) {
                (0, 0) => AbelianGroup::integers(),
                (0, k) => AbelianGroup::cyclic(k),
                (_, 0) => AbelianGroup::trivial(),
                (m, k) => cyclic_or_zero(m.gcd(&k)),
            };
            out = out.direct_sum(&term);
        }
    }
    out
}

/// `Ext^1(A, B)`, summand by summand.
pub fn ext_group(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut out = AbelianGroup::trivial();
    for m in a.invariant_factors.iter().copied() {
        for k in b.summands() {
            let term = match k {
                0 => AbelianGroup::cyclic(m),
                k => cyclic_or_zero(m.gcd(&k)),
            };
            out = out.direct_sum(&term);
        }
    }
    out
}

/// Universal coefficients: `H^k(X; G) = Hom(H_k, G) ⊕ Ext(H_{k-1}, G)`.
pub fn cohomology_from_homology(homology: &[AbelianGroup], coeff: &AbelianGroup) -> Vec<AbelianGroup> {
    (0..homology.len())
        .map(|k| {
            let hom = hom_group(&homology[k], coeff);
            match k {
                0 => hom,
                _ => hom.direct_sum(&ext_group(&homology[k - 1], coeff)),
            }
        })
        .collect()
}

/// Duality pattern of a closed orientable `n`-manifold:
/// `rank H_k = rank H_{n-k}` and `T H_k ≅ T H_{n-k-1}`.
pub fn poincare_duality_check(homology: &[AbelianGroup], n: usize) -> bool {
    let group = |k: isize| -> AbelianGroup {
        if k < 0 {
            return AbelianGroup::trivial();
        }
        homology.get(k as usize).cloned().unwrap_or_default()
    };
    if homology.len() > n + 1 && homology[n + 1..].iter().any(|g| !g.is_trivial()) {
        return false;
    }
    (0..=n as isize).all(|k| {
        let h = group(k);
        h.free_rank() == group(n as isize - k).free_rank()
            && h.invariant_factors() == group(n as isize - k - 1).invariant_factors()
    })
}

/// Largest possible order of the image of a homomorphism between two groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImageOrder {
    Finite(u128),
    Infinite,
}

impl fmt::Display for ImageOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageOrder::Finite(n) => write!(f, "{n}"),
            ImageOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Maximum of `|im φ|` over all `φ: source → target`.
///
/// An image is a quotient of the source and a subgroup of the target. For
/// finite abelian p-groups both relations are componentwise dominance of the
/// sorted exponent partitions, so prime by prime the largest image has
/// exponents `min(source_i, target_i)`; free summands of the source act as
/// unbounded parts.
pub fn max_hom_image_order(source: &AbelianGroup, target: &AbelianGroup) -> ImageOrder {
    if source.free_rank() > 0 && target.free_rank() > 0 {
        return ImageOrder::Infinite;
    }
    let partitions = |g: &AbelianGroup| {
        let mut map: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in g.invariant_factors() {
            for (p, e) in prime_powers(m) {
                map.entry(p).or_default().push(e);
            }
        }
        for v in map.values_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        map
    };
    let src = partitions(source);
    let tgt = partitions(target);
    let mut order: u128 = 1;
    for (p, t_exps) in tgt {
        let s_exps = src.get(&p).cloned().unwrap_or_default();
        for (i, &te) in t_exps.iter().enumerate() {
            let se = if i < source.free_rank() {
                u32::MAX
            } else {
                s_exps.get(i - source.free_rank()).copied().unwrap_or(0)
            };
            order *= (p as u128).pow(te.min(se));
        }
    }
    ImageOrder::Finite(order)
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        let fs = &self.invariant_factors;
        while i < fs.len() {
            let j = fs[i..].iter().take_while(|&&m| m == fs[i]).count();
            parts.push(match j {
                1 => format!("Z/{}", fs[i]),
                _ => format!("(Z/{})^{}", fs[i], j),
            });
            i += j;
        }
        write!(f, "{}", parts.join(" x "))
    }
}
