//! Triples of projective lines with distinct intersection points in `RP^n`,
//! modelled as 2-subspaces of `R^{n+1}`, and the maps between such triples
//! and partial flags `V1 ⊂ V2 ⊂ V3` of signature `(1, 2, 3)`.
//!
//! A normal vector `e_i` of a line inside the spanned 3-space is only
//! defined up to sign, so every output is a subspace, never a frame.

use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

pub const ORTHONORMAL_TOL: f64 = 1e-12;
pub const SUBSPACE_TOL: f64 = 1e-9;
/// Angles below this count as degenerate (shared or concurrent lines).
pub const DEGENERATE_ANGLE: f64 = 1e-6;
/// Minimum pairwise angle between the sampled normals.
pub const SAMPLER_SEPARATION: f64 = 1e-3;
pub const SAMPLER_MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("subspaces differ in dimension or ambient space: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("degenerate line triple: {0:?}")]
    DegenerateInput(Vec<Violation>),
    #[error("subspaces do not form a flag V1 ⊂ V2 ⊂ V3 of dimensions 1, 2, 3")]
    MalformedFlag,
    #[error("frame columns are not linearly independent")]
    RankDeficient,
    #[error("sampler gave up after {SAMPLER_MAX_ATTEMPTS} attempts")]
    SamplerStarved,
    #[error("projective dimension must be at least 2, got {0}")]
    AmbientTooSmall(usize),
}

/// Why a candidate triple fails the distinct-intersection condition.
/// Pairs are 0-based line indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    SharedLine(usize, usize),
    NoIntersection(usize, usize),
    ConcurrentLines,
    SpanTooSmall(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SharedLine(i, j) => write!(f, "SharedLine(l{}, l{})", i + 1, j + 1),
            Violation::NoIntersection(i, j) => write!(f, "NoIntersection(l{}, l{})", i + 1, j + 1),
            Violation::ConcurrentLines => write!(f, "ConcurrentLines"),
            Violation::SpanTooSmall(d) => write!(f, "SpanTooSmall({d})"),
        }
    }
}

/// Orthonormal columns spanning `span`, by modified Gram–Schmidt in column
/// order. Columns whose residual falls below `tol` relative to their norm
/// are skipped.
fn orthonormal_basis(span: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for c in 0..span.ncols() {
        let original = span.column(c).into_owned();
        let scale = original.norm();
        if scale == 0.0 {
            continue;
        }
        let mut v = original;
        // two passes keep the result orthogonal to working precision
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dot(&v);
                v -= b * proj;
            }
        }
        let norm = v.norm();
        if norm > tol * scale {
            basis.push(v / norm);
        }
    }
    let rows = span.nrows();
    DMatrix::from_fn(rows, basis.len(), |r, c| basis[c][r])
}

/// A linear subspace of `R^m`, stored by an orthonormal frame.
#[derive(Debug, Clone)]
pub struct Subspace {
    frame: DMatrix<f64>,
}

impl Subspace {
    /// Span of the columns, which must be linearly independent.
    pub fn from_columns(columns: DMatrix<f64>) -> Result<Self, GeometryError> {
        let frame = orthonormal_basis(&columns, 1e-10);
        if frame.ncols() != columns.ncols() {
            return Err(GeometryError::RankDeficient);
        }
        Ok(Subspace { frame })
    }

    pub fn from_vectors(vectors: &[DVector<f64>]) -> Result<Self, GeometryError> {
        assert!(!vectors.is_empty(), "need at least one vector");
        Self::from_columns(DMatrix::from_columns(vectors))
    }

    /// Span of standard basis vectors `u_i` (1-based indices) in `R^m`.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Self {
        let frame = DMatrix::from_fn(ambient, axes.len(), |r, c| if r + 1 == axes[c] { 1.0 } else { 0.0 });
        Subspace { frame }
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }

    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }

    /// Same subspace with the frame replaced by `frame · q` for an
    /// orthogonal `q`.
    pub fn reframed(&self, q: &DMatrix<f64>) -> Self {
        Subspace { frame: &self.frame * q }
    }

    pub fn projection(&self) -> DMatrix<f64> {
        &self.frame * self.frame.transpose()
    }

    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.frame.transpose() * &self.frame;
        (gram - DMatrix::identity(self.dim(), self.dim())).abs().max()
    }

    /// Distance of `v` from the subspace.
    pub fn residual(&self, v: &DVector<f64>) -> f64 {
        let coords = self.frame.transpose() * v;
        (v - &self.frame * coords).norm()
    }

    pub fn contains(&self, other: &Subspace, tol: f64) -> bool {
        (0..other.dim()).all(|c| self.residual(&other.frame.column(c).into_owned()) <= tol)
    }

    /// Sines of the principal angles to `other`, ascending. Computed from the
    /// part of `other` orthogonal to `self`, which stays accurate for small
    /// angles.
    pub fn principal_sines(&self, other: &Subspace) -> Vec<f64> {
        let coords = self.frame.transpose() * &other.frame;
        let residual = &other.frame - &self.frame * coords;
        let mut s: Vec<f64> = residual.svd(false, false).singular_values.iter().copied().collect();
        s.sort_by(f64::total_cmp);
        s.truncate(self.dim().min(other.dim()));
        s
    }
}

/// Frobenius norm of the difference of orthogonal projections.
pub fn subspace_distance(a: &Subspace, b: &Subspace) -> Result<f64, GeometryError> {
    if a.dim() != b.dim() || a.ambient_dim() != b.ambient_dim() {
        return Err(GeometryError::DimensionMismatch((a.dim(), a.ambient_dim()), (b.dim(), b.ambient_dim())));
    }
    Ok((a.projection() - b.projection()).norm())
}

fn span_of(spaces: &[&Subspace]) -> DMatrix<f64> {
    let cols: Vec<DVector<f64>> =
        spaces.iter().flat_map(|s| s.frame.column_iter().map(|c| c.into_owned())).collect();
    orthonormal_basis(&DMatrix::from_columns(&cols), 1e-8)
}

/// Unit direction of the 1-dimensional intersection of two 2-planes: the
/// right singular vector of smallest singular value of the residual map.
fn intersection_direction(a: &Subspace, b: &Subspace) -> DVector<f64> {
    let coords = a.frame.transpose() * &b.frame;
    let residual = &b.frame - &a.frame * coords;
    let svd = residual.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty");
    let dir = &b.frame * v_t.row(k).transpose();
    let n = dir.norm();
    dir / n
}

/// Three projective lines of `RP^n` as 2-subspaces of `R^{n+1}`, not yet
/// checked against the distinct-intersection condition.
#[derive(Debug, Clone)]
pub struct LineTriple {
    lines: [Subspace; 3],
}

impl LineTriple {
    pub fn new(lines: [Subspace; 3]) -> Self {
        for l in &lines {
            assert_eq!(l.dim(), 2, "each line is a 2-subspace");
            assert_eq!(l.ambient_dim(), lines[0].ambient_dim(), "lines must share an ambient space");
        }
        LineTriple { lines }
    }

    /// `ℓ1 = span(u2, u3)`, `ℓ2 = span(u1, u3)`, `ℓ3 = span(u1, u2)` in `R^{n+1}`.
    pub fn coordinate(n: usize) -> Self {
        let m = n + 1;
        Self::new([
            Subspace::coordinate(m, &[2, 3]),
            Subspace::coordinate(m, &[1, 3]),
            Subspace::coordinate(m, &[1, 2]),
        ])
    }

    pub fn lines(&self) -> &[Subspace; 3] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &Subspace {
        &self.lines[i]
    }

    /// Projective dimension `n` of the ambient `RP^n`.
    pub fn projective_dim(&self) -> usize {
        self.lines[0].ambient_dim() - 1
    }

    pub fn span(&self) -> Subspace {
        Subspace { frame: span_of(&[&self.lines[0], &self.lines[1], &self.lines[2]]) }
    }
}

/// `Ok(())` when the triple satisfies the distinct-intersection condition,
/// otherwise every violation found.
pub fn validate_triple(t: &LineTriple) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut points = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let sines = t.lines[i].principal_sines(&t.lines[j]);
        if sines[1] < DEGENERATE_ANGLE {
            violations.push(Violation::SharedLine(i, j));
        } else if sines[0] > SUBSPACE_TOL {
            violations.push(Violation::NoIntersection(i, j));
        } else {
            points.push(intersection_direction(&t.lines[i], &t.lines[j]));
        }
    }
    if points.len() == 3 {
        let concurrent = [(0, 1), (0, 2), (1, 2)].iter().any(|&(a, b)| {
            let cos = points[a].dot(&points[b]).abs().min(1.0);
            (1.0 - cos * cos).max(0.0).sqrt() < DEGENERATE_ANGLE
        });
        if concurrent {
            violations.push(Violation::ConcurrentLines);
        }
    }
    let span_dim = t.span().dim();
    if span_dim < 3 {
        violations.push(Violation::SpanTooSmall(span_dim));
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// A flag `V1 ⊂ V2 ⊂ V3` in `R^{n+1}` with dimensions 1, 2, 3.
#[derive(Debug, Clone)]
pub struct PartialFlag123 {
    v1: Subspace,
    v2: Subspace,
    v3: Subspace,
}

impl PartialFlag123 {
    pub fn new(v1: Subspace, v2: Subspace, v3: Subspace) -> Result<Self, GeometryError> {
        let dims_ok = v1.dim() == 1 && v2.dim() == 2 && v3.dim() == 3;
        let ambient_ok = v1.ambient_dim() == v2.ambient_dim() && v2.ambient_dim() == v3.ambient_dim();
        if !dims_ok || !ambient_ok || !v2.contains(&v1, SUBSPACE_TOL) || !v3.contains(&v2, SUBSPACE_TOL) {
            return Err(GeometryError::MalformedFlag);
        }
        Ok(PartialFlag123 { v1, v2, v3 })
    }

    /// The standard flag `⟨u1⟩ ⊂ ⟨u1, u2⟩ ⊂ ⟨u1, u2, u3⟩` in `R^{n+1}`.
    pub fn standard(n: usize) -> Self {
        let m = n + 1;
        PartialFlag123 {
            v1: Subspace::coordinate(m, &[1]),
            v2: Subspace::coordinate(m, &[1, 2]),
            v3: Subspace::coordinate(m, &[1, 2, 3]),
        }
    }

    pub fn v1(&self) -> &Subspace {
        &self.v1
    }

    pub fn v2(&self) -> &Subspace {
        &self.v2
    }

    pub fn v3(&self) -> &Subspace {
        &self.v3
    }

    /// Orthonormal `(e1, e2, e3)` with `V_k = ⟨e1..ek⟩`, by modified
    /// Gram–Schmidt over the stored frames.
    pub fn adapted_frame(&self) -> [DVector<f64>; 3] {
        let cols: Vec<DVector<f64>> = [&self.v1, &self.v2, &self.v3]
            .iter()
            .flat_map(|s| s.frame.column_iter().map(|c| c.into_owned()))
            .collect();
        let basis = orthonormal_basis(&DMatrix::from_columns(&cols), 1e-8);
        debug_assert_eq!(basis.ncols(), 3);
        [basis.column(0).into_owned(), basis.column(1).into_owned(), basis.column(2).into_owned()]
    }

    /// Largest subspace distance over `V1`, `V2`, `V3`.
    pub fn distance(&self, other: &PartialFlag123) -> Result<f64, GeometryError> {
        Ok(subspace_distance(&self.v1, &other.v1)?
            .max(subspace_distance(&self.v2, &other.v2)?)
            .max(subspace_distance(&self.v3, &other.v3)?))
    }
}

/// `f`: normals `e_i` of the lines inside their span `V'` give
/// `⟨e1⟩ ⊂ ⟨e1, e2⟩ ⊂ V'`.
pub fn map_f(t: &LineTriple) -> Result<PartialFlag123, GeometryError> {
    validate_triple(t).map_err(GeometryError::DegenerateInput)?;
    let span = t.span();
    let normals = line_normals(t, &span);
    let v1 = Subspace::from_vectors(&normals[..1])?;
    let v2 = Subspace::from_vectors(&normals[..2])?;
    PartialFlag123::new(v1, v2, span)
}

/// Unit normals of the lines inside `span` (a 3-space), in ambient
/// coordinates: the cross product of each line's frame written in span
/// coordinates.
fn line_normals(t: &LineTriple, span: &Subspace) -> [DVector<f64>; 3] {
    let to_span = span.frame.transpose();
    let normal = |l: &Subspace| {
        let c = &to_span * &l.frame;
        let a = Vector3::new(c[(0, 0)], c[(1, 0)], c[(2, 0)]);
        let b = Vector3::new(c[(0, 1)], c[(1, 1)], c[(2, 1)]);
        let n = a.cross(&b).normalize();
        &span.frame * DVector::from_column_slice(n.as_slice())
    };
    [normal(&t.lines[0]), normal(&t.lines[1]), normal(&t.lines[2])]
}

/// `g`: with the adapted frame `(e1, e2, e3)` of the flag, `ℓ_i` is the
/// orthogonal complement of `e_i` in `V3`.
pub fn map_g(fl: &PartialFlag123) -> Result<LineTriple, GeometryError> {
    if !fl.v2.contains(&fl.v1, SUBSPACE_TOL) || !fl.v3.contains(&fl.v2, SUBSPACE_TOL) {
        return Err(GeometryError::MalformedFlag);
    }
    let [e1, e2, e3] = fl.adapted_frame();
    Ok(LineTriple::new([
        Subspace::from_vectors(&[e2.clone(), e3.clone()])?,
        Subspace::from_vectors(&[e1.clone(), e3])?,
        Subspace::from_vectors(&[e1, e2])?,
    ]))
}

/// `g(f(t))`.
pub fn roundtrip_gf(t: &LineTriple) -> Result<LineTriple, GeometryError> {
    map_g(&map_f(t)?)
}

/// Largest subspace distance between corresponding lines.
pub fn triple_distance(a: &LineTriple, b: &LineTriple) -> Result<f64, GeometryError> {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        worst = worst.max(subspace_distance(&a.lines[i], &b.lines[i])?);
    }
    Ok(worst)
}

/// Triple whose lines are the orthogonal complements of the given normals
/// (3-vectors) inside the 3-space with orthonormal frame `basis`.
pub fn triple_from_normals(basis: &DMatrix<f64>, normals: &[Vector3<f64>; 3]) -> Result<LineTriple, GeometryError> {
    assert_eq!(basis.ncols(), 3);
    let line = |n: &Vector3<f64>| {
        // complement of n in R^3 via the null space of n^T
        let seed = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
        let a = n.cross(&seed).normalize();
        let b = n.cross(&a).normalize();
        Subspace::from_vectors(&[
            basis * DVector::from_column_slice(a.as_slice()),
            basis * DVector::from_column_slice(b.as_slice()),
        ])
    };
    Ok(LineTriple::new([line(&normals[0])?, line(&normals[1])?, line(&normals[2])?]))
}

fn random_unit3(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::from_fn(|_, _| StandardNormal.sample(rng));
        let n: f64 = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

/// Random orthonormal `k`-frame in `R^m`.
pub fn random_frame(m: usize, k: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    loop {
        let g = DMatrix::from_fn(m, k, |_, _| StandardNormal.sample(rng));
        let basis = orthonormal_basis(&g, 1e-6);
        if basis.ncols() == k {
            return basis;
        }
    }
}

/// Seeded sample of a valid triple in `RP^n`: a random 3-space of `R^{n+1}`
/// and three random normals in it, redrawn until the normals are pairwise
/// separated and the triple validates.
pub fn random_triple(n: usize, seed: u64) -> Result<LineTriple, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_triple_with(n, &mut rng)
}

pub fn random_triple_with(n: usize, rng: &mut ChaCha8Rng) -> Result<LineTriple, GeometryError> {
    if n < 2 {
        return Err(GeometryError::AmbientTooSmall(n));
    }
    let basis = random_frame(n + 1, 3, rng);
    for _ in 0..SAMPLER_MAX_ATTEMPTS {
        let normals = [random_unit3(rng), random_unit3(rng), random_unit3(rng)];
        let separated = [(0, 1), (0, 2), (1, 2)].iter().all(|&(a, b)| {
            // projective angle between normals
            normals[a].cross(&normals[b]).norm() > SAMPLER_SEPARATION.sin()
        });
        let independent = Matrix3::from_columns(&normals).determinant().abs() > SAMPLER_SEPARATION;
        if !separated || !independent {
            continue;
        }
        let t = triple_from_normals(&basis, &normals)?;
        if validate_triple(&t).is_ok() {
            return Ok(t);
        }
    }
    Err(GeometryError::SamplerStarved)
}

/// Random flag obtained from a random orthonormal 3-frame in `R^{n+1}`.
pub fn random_flag_with(n: usize, rng: &mut ChaCha8Rng) -> PartialFlag123 {
    let f = random_frame(n + 1, 3, rng);
    let cols: Vec<DVector<f64>> = f.column_iter().map(|c| c.into_owned()).collect();
    PartialFlag123 {
        v1: Subspace::from_vectors(&cols[..1]).expect("orthonormal"),
        v2: Subspace::from_vectors(&cols[..2]).expect("orthonormal"),
        v3: Subspace::from_vectors(&cols[..3]).expect("orthonormal"),
    }
}
