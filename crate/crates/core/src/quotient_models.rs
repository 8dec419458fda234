//! The configuration-matrix model of line triples in `RP^2`: invertible
//! 3×3 matrices whose rows are the lines' normal vectors, taken modulo
//! row scaling. Also the unit-quaternion double cover of SO(3) and the
//! finite groups that appear when the Klein rotation group is lifted
//! through it.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

use crate::homalg::AbelianGroup;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuotientError {
    #[error("matrix is singular (rows are linearly dependent)")]
    SingularMatrix,
    #[error("quaternion has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("rotations are not closed under multiplication")]
    NotClosed,
    #[error("invalid group table: {0}")]
    InvalidTable(String),
}

const SINGULAR_TOL: f64 = 1e-12;
pub const UNIT_TOL: f64 = 1e-12;
pub const MATCH_TOL: f64 = 1e-9;

/// A 3×3 matrix with linearly independent rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfigMatrix(Matrix3<f64>);

impl ConfigMatrix {
    pub fn new(m: Matrix3<f64>) -> Result<Self, QuotientError> {
        let scale = m.row_iter().map(|r| r.norm()).product::<f64>();
        if scale == 0.0 || m.determinant().abs() <= SINGULAR_TOL * scale {
            return Err(QuotientError::SingularMatrix);
        }
        Ok(ConfigMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// `diag(d) · A`: scales row `i` by `d[i]`.
    pub fn scale_rows(&self, d: &Vector3<f64>) -> Result<Self, QuotientError> {
        Self::new(Matrix3::from_diagonal(d) * self.0)
    }
}

/// Representative of the row-scaling class: every row scaled to unit norm
/// with its first nonzero entry positive.
pub fn canonical_config(a: &ConfigMatrix) -> ConfigMatrix {
    let mut m = a.0;
    for mut row in m.row_iter_mut() {
        let norm = row.norm();
        row /= norm;
        let lead = row.iter().copied().find(|x| x.abs() > SINGULAR_TOL).unwrap_or(1.0);
        if lead < 0.0 {
            row.neg_mut();
        }
    }
    ConfigMatrix(m)
}

/// Orthogonal `Q` with `A = L·Q`, `L` lower triangular with positive
/// diagonal: Gram–Schmidt on the rows of `A`, top row first.
pub fn retract_to_orthogonal(a: &ConfigMatrix) -> Matrix3<f64> {
    let mut q = Matrix3::zeros();
    for i in 0..3 {
        let mut v = a.0.row(i).transpose();
        for _ in 0..2 {
            for j in 0..i {
                let qj = q.row(j).transpose();
                v -= qj * qj.dot(&v);
            }
        }
        q.set_row(i, &(v / v.norm()).transpose());
    }
    q
}

/// Unit quaternion `w + xi + yj + zk`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitQuaternion {
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self, QuotientError> {
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(QuotientError::NotUnit(norm));
        }
        Ok(UnitQuaternion { w, x, y, z })
    }

    pub const ONE: UnitQuaternion = UnitQuaternion { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    pub fn neg(&self) -> Self {
        UnitQuaternion { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn mul(&self, o: &Self) -> Self {
        UnitQuaternion {
            w: self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            x: self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            y: self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            z: self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        }
    }

    fn max_diff(&self, o: &Self) -> f64 {
        (self.w - o.w).abs().max((self.x - o.x).abs()).max((self.y - o.y).abs()).max((self.z - o.z).abs())
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.max_diff(o) <= tol
    }
}

impl fmt::Display for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = [self.w, self.x, self.y, self.z];
        let names = ["1", "i", "j", "k"];
        let nonzero: Vec<usize> = (0..4).filter(|&i| comps[i] != 0.0).collect();
        if let [i] = nonzero[..] {
            if comps[i].abs() == 1.0 {
                let sign = if comps[i] > 0.0 { "+" } else { "-" };
                return write!(f, "{sign}{}", names[i]);
            }
        }
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

/// Image of `q` under the double cover SU(2) → SO(3).
pub fn quat_to_rotation(q: &UnitQuaternion) -> Result<Matrix3<f64>, QuotientError> {
    UnitQuaternion::new(q.w, q.x, q.y, q.z)?;
    let UnitQuaternion { w, x, y, z } = *q;
    Ok(Matrix3::new(
        1.0 - 2.0 * (y * y + z * z),
        2.0 * (x * y - w * z),
        2.0 * (x * z + w * y),
        2.0 * (x * y + w * z),
        1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z - w * x),
        2.0 * (x * z - w * y),
        2.0 * (y * z + w * x),
        1.0 - 2.0 * (x * x + y * y),
    ))
}

/// One of the two preimages of a rotation, branching on the largest of
/// `w², x², y², z²` for stability. Exact for signed permutation-like
/// rotations such as `diag(1, -1, -1)`.
pub fn rotation_to_quat(r: &Matrix3<f64>) -> UnitQuaternion {
    let t = r.trace();
    let cands = [t, r[(0, 0)], r[(1, 1)], r[(2, 2)]];
    let (k, _) = cands.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    let q = match k {
        0 => {
            let s = (1.0 + t).sqrt() * 2.0;
            [s / 4.0, (r[(2, 1)] - r[(1, 2)]) / s, (r[(0, 2)] - r[(2, 0)]) / s, (r[(1, 0)] - r[(0, 1)]) / s]
        }
        1 => {
            let s = (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).sqrt() * 2.0;
            [(r[(2, 1)] - r[(1, 2)]) / s, s / 4.0, (r[(0, 1)] + r[(1, 0)]) / s, (r[(0, 2)] + r[(2, 0)]) / s]
        }
        2 => {
            let s = (1.0 - r[(0, 0)] + r[(1, 1)] - r[(2, 2)]).sqrt() * 2.0;
            [(r[(0, 2)] - r[(2, 0)]) / s, (r[(0, 1)] + r[(1, 0)]) / s, s / 4.0, (r[(1, 2)] + r[(2, 1)]) / s]
        }
        _ => {
            let s = (1.0 - r[(0, 0)] - r[(1, 1)] + r[(2, 2)]).sqrt() * 2.0;
            [(r[(1, 0)] - r[(0, 1)]) / s, (r[(0, 2)] + r[(2, 0)]) / s, (r[(1, 2)] + r[(2, 1)]) / s, s / 4.0]
        }
    };
    let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    UnitQuaternion { w: q[0] / n, x: q[1] / n, y: q[2] / n, z: q[3] / n }
}

/// The Klein four-group of diagonal rotations `diag(±1, ±1, ±1)` with determinant 1.
pub fn klein_rotations() -> Vec<Matrix3<f64>> {
    vec![
        Matrix3::identity(),
        Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0)),
        Matrix3::from_diagonal(&Vector3::new(-1.0, 1.0, -1.0)),
        Matrix3::from_diagonal(&Vector3::new(-1.0, -1.0, 1.0)),
    ]
}

/// A finite group as a multiplication table over indices `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    product: Vec<Vec<usize>>,
    labels: Vec<String>,
    identity: usize,
}

impl FiniteGroupTable {
    /// Validates closure, identity, inverses and associativity (all triples
    /// up to order 64, triples with a left factor among the first 16
    /// elements beyond that).
    pub fn new(product: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, QuotientError> {
        let n = product.len();
        let bad = |m: &str| Err(QuotientError::InvalidTable(m.to_string()));
        if n == 0 || labels.len() != n {
            return bad("empty table or label count mismatch");
        }
        if product.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table is not closed");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| product[e][a] == a && product[a][e] == a)) else {
            return bad("no identity element");
        };
        if (0..n).any(|a| !(0..n).any(|b| product[a][b] == identity && product[b][a] == identity)) {
            return bad("missing inverse");
        }
        let left = if n <= 64 { n } else { 16 };
        for a in 0..left {
            for b in 0..n {
                for c in 0..n {
                    if product[product[a][b]][c] != product[a][product[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        Ok(FiniteGroupTable { product, labels, identity })
    }

    pub fn from_elements<T>(
        elements: &[T],
        labels: Vec<String>,
        mul: impl Fn(&T, &T) -> T,
        eq: impl Fn(&T, &T) -> bool,
    ) -> Result<Self, QuotientError> {
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                let ab = mul(a, b);
                let idx = elements.iter().position(|c| eq(c, &ab)).ok_or(QuotientError::NotClosed)?;
                row.push(idx);
            }
            table.push(row);
        }
        Self::new(table, labels)
    }

    pub fn cyclic(n: usize) -> Self {
        let product = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(product, (0..n).map(|a| a.to_string()).collect()).expect("cyclic table")
    }

    /// Symmetries of the square: `r^a s^b` with `s r s = r^{-1}`.
    pub fn dihedral_square() -> Self {
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|b| (0..4).map(move |a| (a, b))).collect();
        let mul = |&(a1, b1): &(usize, usize), &(a2, b2): &(usize, usize)| {
            let a = if b1 == 0 { a1 + a2 } else { a1 + 4 - a2 };
            (a % 4, (b1 + b2) % 2)
        };
        let labels = elems.iter().map(|(a, b)| format!("r{a}s{b}")).collect();
        Self::from_elements(&elems, labels, mul, |x, y| x == y).expect("dihedral table")
    }

    /// `{±1, ±i, ±j, ±k}`.
    pub fn quaternion8() -> Self {
        let mut elems = Vec::new();
        for v in [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]] {
            let q = UnitQuaternion { w: v[0], x: v[1], y: v[2], z: v[3] };
            elems.push(q);
            elems.push(q.neg());
        }
        let labels = elems.iter().map(|q| q.to_string()).collect();
        Self::from_elements(&elems, labels, |a, b| a.mul(b), |a, b| a == b).expect("quaternion table")
    }

    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.order(), other.order());
        let product = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.product[x / m][y / m] * m + other.product[x % m][y % m]).collect())
            .collect();
        let labels = (0..n * m).map(|x| format!("({}, {})", self.labels[x / m], other.labels[x % m])).collect();
        Self::new(product, labels).expect("product table")
    }

    pub fn order(&self) -> usize {
        self.product.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.product[a][b] == self.identity).expect("validated table")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.product[x][a];
            k += 1;
        }
        k
    }

    /// Map from element order to the number of elements with that order.
    pub fn order_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for a in 0..self.order() {
            *census.entry(self.element_order(a)).or_insert(0) += 1;
        }
        census
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.product[a][b] == self.product[b][a]))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order()).filter(|&a| (0..self.order()).all(|b| self.product[a][b] == self.product[b][a])).collect()
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.product[x][g];
                if !inside[y] {
                    inside[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order()).filter(|&a| inside[a]).collect()
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        (0..self.order()).all(|g| {
            let gi = self.inverse(g);
            subgroup.iter().all(|&h| subgroup.contains(&self.product[self.product[g][h]][gi]))
        })
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.product[self.product[a][b]][self.product[self.inverse(a)][self.inverse(b)]];
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generated_subgroup(&comms)
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest element.
    pub fn quotient(&self, normal: &[usize]) -> Result<Self, QuotientError> {
        if !self.is_normal(normal) {
            return Err(QuotientError::InvalidTable("subgroup is not normal".into()));
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &h in normal {
                coset_of[self.product[g][h]] = reps.len();
            }
            reps.push(g);
        }
        let product = reps.iter().map(|&a| reps.iter().map(|&b| coset_of[self.product[a][b]]).collect()).collect();
        let labels = reps.iter().map(|&r| format!("{}·N", self.labels[r])).collect();
        Self::new(product, labels)
    }

    /// Invariant factors of an abelian table, read off from the sizes of
    /// the `p^k`-torsion subgroups.
    fn abelian_invariants(&self) -> AbelianGroup {
        debug_assert!(self.is_abelian());
        let n = self.order();
        let power = |a: usize, k: usize| (1..k).fold(a, |x, _| self.product[x][a]);
        let mut orders = Vec::new();
        let mut rest = n;
        let mut p = 2;
        while rest > 1 {
            if !rest.is_multiple_of(p) {
                p += 1;
                continue;
            }
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            // log_p |{x : x^{p^k} = 1}| for k = 0, 1, ...
            let mut logs = vec![0u32];
            let mut pk = 1usize;
            loop {
                pk *= p;
                let count = (0..n).filter(|&a| power(a, pk) == self.identity).count();
                let log = count.ilog(p);
                if log == *logs.last().unwrap() {
                    break;
                }
                logs.push(log);
            }
            // #{cyclic p-factors of exponent ≥ k} = logs[k] - logs[k-1]
            let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            for k in 0..at_least.len() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(at_least[k] - next) {
                    orders.push((p as u64).pow(k as u32 + 1));
                }
            }
            p += 1;
        }
        AbelianGroup::from_cyclic_orders(0, &orders)
    }
}

/// Full preimage of a finite rotation group under the double cover, with
/// its multiplication table. Elements are listed as `q, -q` pairs in the
/// order of `rotations`.
pub fn lift_subgroup(rotations: &[Matrix3<f64>]) -> Result<FiniteGroupTable, QuotientError> {
    for a in rotations {
        for b in rotations {
            let ab = a * b;
            if !rotations.iter().any(|c| (c - ab).abs().max() <= MATCH_TOL) {
                return Err(QuotientError::NotClosed);
            }
        }
    }
    let mut elems = Vec::with_capacity(2 * rotations.len());
    for r in rotations {
        let q = rotation_to_quat(r);
        elems.push(q);
        elems.push(q.neg());
    }
    let labels = elems.iter().map(|q| q.to_string()).collect();
    FiniteGroupTable::from_elements(&elems, labels, |a, b| a.mul(b), |a, b| a.approx_eq(b, MATCH_TOL))
}

/// Isomorphism types of groups of order 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order8Type {
    C8,
    C4xC2,
    C2xC2xC2,
    Dihedral8,
    Quaternion8,
}

impl fmt::Display for Order8Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Order8Type::C8 => "C8",
            Order8Type::C4xC2 => "C4 x C2",
            Order8Type::C2xC2xC2 => "C2 x C2 x C2",
            Order8Type::Dihedral8 => "D8 (dihedral)",
            Order8Type::Quaternion8 => "Q8 (quaternion)",
        };
        f.write_str(s)
    }
}

pub fn classify_order8(t: &FiniteGroupTable) -> Result<Order8Type, QuotientError> {
    if t.order() != 8 {
        return Err(QuotientError::InvalidTable(format!("order {} is not 8", t.order())));
    }
    let census = t.order_census();
    let count = |k| census.get(&k).copied().unwrap_or(0);
    let ty = match (t.is_abelian(), count(8), count(4), count(2)) {
        (true, 4, _, _) => Order8Type::C8,
        (true, 0, 4, 3) => Order8Type::C4xC2,
        (true, 0, 0, 7) => Order8Type::C2xC2xC2,
        (false, 0, 2, 5) => Order8Type::Dihedral8,
        (false, 0, 6, 1) => Order8Type::Quaternion8,
        _ => return Err(QuotientError::InvalidTable(format!("inconsistent element orders {census:?}"))),
    };
    Ok(ty)
}

/// `G / [G, G]` in invariant-factor form.
pub fn abelianization(t: &FiniteGroupTable) -> Result<AbelianGroup, QuotientError> {
    if t.order() > 64 {
        return Err(QuotientError::InvalidTable(format!("order {} above 64", t.order())));
    }
    let q = t.quotient(&t.commutator_subgroup())?;
    Ok(q.abelian_invariants())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_config(rng: &mut ChaCha8Rng) -> ConfigMatrix {
        loop {
            let m = Matrix3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            if let Ok(c) = ConfigMatrix::new(m) {
                if m.determinant().abs() > 1e-3 {
                    return c;
                }
            }
        }
    }

    fn random_scaling(rng: &mut ChaCha8Rng) -> Vector3<f64> {
        Vector3::from_fn(|_, _| {
            let mag = rng.random_range(0.1..10.0);
            if rng.random_bool(0.5) {
                mag
            } else {
                -mag
            }
        })
    }

    #[test]
    fn canonical_examples() {
        let id = ConfigMatrix::new(Matrix3::identity()).unwrap();
        assert_eq!(canonical_config(&id), id);
        let a = ConfigMatrix::new(Matrix3::new(0.0, -2.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 3.0)).unwrap();
        let c = canonical_config(&a);
        assert_eq!(c.matrix().row(0).transpose(), Vector3::new(0.0, 1.0, 0.0));
        assert!(ConfigMatrix::new(Matrix3::new(1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn canonical_is_orbit_invariant_and_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = random_config(&mut rng);
            let c = canonical_config(&a);
            assert!((canonical_config(&c).matrix() - c.matrix()).abs().max() < 1e-15);
            let da = a.scale_rows(&random_scaling(&mut rng)).unwrap();
            assert!((canonical_config(&da).matrix() - c.matrix()).abs().max() < 1e-12);
        }
        let a = random_config(&mut rng);
        let da = a.scale_rows(&Vector3::new(-3.0, 5.0, 7.0)).unwrap();
        assert!((canonical_config(&da).matrix() - canonical_config(&a).matrix()).abs().max() < 1e-12);
    }

    #[test]
    fn retraction_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let a = random_config(&mut rng);
            let q = retract_to_orthogonal(&a);
            assert!((q.transpose() * q - Matrix3::identity()).abs().max() < 1e-12);
            // L = A Q^T is lower triangular with positive diagonal
            let l = a.matrix() * q.transpose();
            assert!(l[(0, 1)].abs() < 1e-12 && l[(0, 2)].abs() < 1e-12 && l[(1, 2)].abs() < 1e-12);
            assert!((0..3).all(|i| l[(i, i)] > 0.0));

            let d = random_scaling(&mut rng);
            let qd = retract_to_orthogonal(&a.scale_rows(&d).unwrap());
            let signs = Matrix3::from_diagonal(&d.map(f64::signum));
            assert!((qd - signs * q).abs().max() < 1e-12);
        }
    }

    #[test]
    fn retraction_fixes_orthogonal_and_strips_triangular_factor() {
        let q = Matrix3::new(0.0, 0.6, 0.8, 1.0, 0.0, 0.0, 0.0, 0.8, -0.6);
        let r = retract_to_orthogonal(&ConfigMatrix::new(q).unwrap());
        assert!((r - q).abs().max() < 1e-15);
        let l = Matrix3::new(2.0, 0.0, 0.0, -1.0, 0.5, 0.0, 3.0, 4.0, 1.5);
        let r = retract_to_orthogonal(&ConfigMatrix::new(l * q).unwrap());
        assert!((r - q).abs().max() < 1e-14);
    }

    #[test]
    fn quaternion_images() {
        assert_eq!(quat_to_rotation(&UnitQuaternion::ONE).unwrap(), Matrix3::identity());
        let i = UnitQuaternion::new(0.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(quat_to_rotation(&i).unwrap(), Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0)));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let q = UnitQuaternion::new(h, 0.0, 0.0, h).unwrap();
        // rotation by π/2 about z from the axis-angle formula
        let rz = nalgebra::Rotation3::from_axis_angle(&Vector3::z_axis(), std::f64::consts::FRAC_PI_2);
        assert!((quat_to_rotation(&q).unwrap() - rz.matrix()).abs().max() < 1e-15);
        assert!(matches!(UnitQuaternion::new(1.0, 1.0, 0.0, 0.0), Err(QuotientError::NotUnit(_))));
    }

    #[test]
    fn double_cover_is_a_two_to_one_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut sample = || {
            let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            UnitQuaternion::new(v[0] / n, v[1] / n, v[2] / n, v[3] / n).unwrap()
        };
        for _ in 0..200 {
            let (a, b) = (sample(), sample());
            let ra = quat_to_rotation(&a).unwrap();
            let rab = quat_to_rotation(&a.mul(&b)).unwrap();
            assert!((rab - ra * quat_to_rotation(&b).unwrap()).abs().max() < 1e-12);
            assert!((quat_to_rotation(&a.neg()).unwrap() - ra).abs().max() < 1e-15);
            assert!((ra.determinant() - 1.0).abs() < 1e-12);
            let back = rotation_to_quat(&ra);
            assert!(back.approx_eq(&a, 1e-12) || back.approx_eq(&a.neg(), 1e-12));
        }
    }

    #[test]
    fn lift_of_identity_is_kernel() {
        let t = lift_subgroup(&[Matrix3::identity()]).unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(abelianization(&t).unwrap(), AbelianGroup::cyclic(2));
    }

    #[test]
    fn lift_of_klein_group() {
        let t = lift_subgroup(&klein_rotations()).unwrap();
        assert_eq!(t.order(), 8);
        let mut labels = t.labels().to_vec();
        labels.sort();
        assert_eq!(labels, vec!["+1", "+i", "+j", "+k", "-1", "-i", "-j", "-k"]);
        assert_eq!(classify_order8(&t).unwrap(), Order8Type::Quaternion8);
        assert_eq!(abelianization(&t).unwrap(), AbelianGroup::elementary(2, 2));

        // 1 → Q → K* → K → 1 with Q = {±1} central
        let kernel: Vec<usize> = (0..2).collect();
        assert_eq!(t.generated_subgroup(&[1]), kernel);
        assert!(kernel.iter().all(|k| t.center().contains(k)));
        let quotient = t.quotient(&kernel).unwrap();
        assert_eq!(quotient.order(), 4);
        assert!(quotient.is_abelian());
        assert_eq!(quotient.order_census(), BTreeMap::from([(1, 1), (2, 3)]));
    }

    #[test]
    fn lift_rejects_non_subgroup() {
        let rz = nalgebra::Rotation3::from_axis_angle(&Vector3::z_axis(), 0.3).into_inner();
        assert_eq!(lift_subgroup(&[Matrix3::identity(), rz]).unwrap_err(), QuotientError::NotClosed);
    }

    #[test]
    fn lift_of_cyclic_rotation_group() {
        let rots: Vec<Matrix3<f64>> = (0..3)
            .map(|k| {
                nalgebra::Rotation3::from_axis_angle(&Vector3::z_axis(), k as f64 * 2.0 * std::f64::consts::PI / 3.0)
                    .into_inner()
            })
            .collect();
        let t = lift_subgroup(&rots).unwrap();
        assert_eq!(t.order(), 6);
        assert!(t.is_abelian());
        assert_eq!(abelianization(&t).unwrap(), AbelianGroup::cyclic(6));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_order8(&FiniteGroupTable::cyclic(8)).unwrap(), Order8Type::C8);
        assert_eq!(classify_order8(&FiniteGroupTable::quaternion8()).unwrap(), Order8Type::Quaternion8);
        let d8 = FiniteGroupTable::dihedral_square();
        assert_eq!(d8.order_census(), BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        assert_eq!(classify_order8(&d8).unwrap(), Order8Type::Dihedral8);
        let c4c2 = FiniteGroupTable::cyclic(4).direct_product(&FiniteGroupTable::cyclic(2));
        assert_eq!(classify_order8(&c4c2).unwrap(), Order8Type::C4xC2);
        let c2 = FiniteGroupTable::cyclic(2);
        assert_eq!(classify_order8(&c2.direct_product(&c2).direct_product(&c2)).unwrap(), Order8Type::C2xC2xC2);
        assert!(classify_order8(&FiniteGroupTable::cyclic(6)).is_err());
    }

    #[test]
    fn abelianizations() {
        let v4 = AbelianGroup::elementary(2, 2);
        let d8 = FiniteGroupTable::dihedral_square();
        assert_eq!(d8.commutator_subgroup().len(), 2);
        assert_eq!(abelianization(&d8).unwrap(), v4);
        assert_eq!(abelianization(&FiniteGroupTable::quaternion8()).unwrap(), v4);
        assert_eq!(abelianization(&FiniteGroupTable::cyclic(12)).unwrap(), AbelianGroup::cyclic(12));
        let c4c2 = FiniteGroupTable::cyclic(4).direct_product(&FiniteGroupTable::cyclic(2));
        assert_eq!(abelianization(&c4c2).unwrap(), AbelianGroup::from_cyclic_orders(0, &[2, 4]));
        let d8xc2 = d8.direct_product(&FiniteGroupTable::cyclic(2));
        assert_eq!(abelianization(&d8xc2).unwrap(), AbelianGroup::elementary(2, 3));
    }

    #[test]
    fn invalid_tables() {
        assert!(FiniteGroupTable::new(vec![vec![0, 0], vec![0, 0]], vec!["a".into(), "b".into()]).is_err());
        assert!(FiniteGroupTable::new(vec![vec![0, 2], vec![1, 0]], vec!["a".into(), "b".into()]).is_err());
    }
}
