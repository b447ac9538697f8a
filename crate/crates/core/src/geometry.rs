//! Full-dimensional lattice polytopes given by their vertices.
//!
//! Facets are found by brute force over `d`-subsets of the input points,
//! which is plenty at the sizes smooth Fano polytopes reach (at most `3d`
//! vertices). All arithmetic is exact.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("points have unequal dimensions ({expected} and {found})")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points span an affine subspace of dimension {found}, expected {expected}")]
    NotFullDimensional { expected: usize, found: isize },
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
}

/// A point of the integer lattice `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        Self((0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v.into_iter().map(BigInt::from).collect())
    }
}

impl From<&[i64]> for LatticeVector {
    fn from(v: &[i64]) -> Self {
        Self(v.iter().map(|&x| BigInt::from(x)).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// The inequality `<normal, x> <= offset` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Halfspace {
    pub fn from_i64(normal: &[i64], offset: i64) -> Self {
        Self {
            normal: normal.iter().map(|&x| BigInt::from(x)).collect(),
            offset: BigInt::from(offset),
        }
    }

    /// `offset - <normal, x>`: nonnegative inside, zero on the hyperplane.
    pub fn slack(&self, x: &[BigInt]) -> BigInt {
        &self.offset - linalg::dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        !self.slack(x).is_negative()
    }
}

/// Face counts `f_{-1}, f_0, ..., f_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector(Vec<u64>);

impl FVector {
    /// Builds from `f_{-1}, f_0, ..., f_d`.
    pub fn new(entries: Vec<u64>) -> Self {
        Self(entries)
    }

    /// Dimension `d` of the polytope.
    pub fn dim(&self) -> usize {
        self.0.len() - 2
    }

    /// `f_i` for `-1 <= i <= d`.
    pub fn f(&self, i: isize) -> u64 {
        self.0[(i + 1) as usize]
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// `sum_{i=-1}^{d} (-1)^i f_i == 0`.
    pub fn satisfies_euler(&self) -> bool {
        let mut sum: i128 = 0;
        for (k, &f) in self.0.iter().enumerate() {
            // k = i + 1, so (-1)^i = -(-1)^k
            if k % 2 == 0 {
                sum -= f as i128;
            } else {
                sum += f as i128;
            }
        }
        sum == 0
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Proper nonempty faces grouped by dimension; each face is the sorted list
/// of indices of the vertices it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub by_dim: Vec<Vec<Vec<usize>>>,
}

/// A full-dimensional lattice polytope with its facets.
///
/// Immutable once built; `Sync` so it can be shared between counting workers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<LatticeVector>,
    facets: Vec<Halfspace>,
    // vertex indices tight on each facet, parallel to `facets`
    incidence: Vec<Vec<usize>>,
}

impl Polytope {
    /// Convex hull of `points`, keeping only the extreme points (in input order).
    pub fn new(points: &[LatticeVector]) -> Result<Self, GeometryError> {
        let dim = points.first().map_or(0, LatticeVector::dim);
        for p in points {
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        let mut seen = BTreeSet::new();
        let pts: Vec<LatticeVector> =
            points.iter().filter(|p| seen.insert((*p).clone())).cloned().collect();

        let refs: Vec<&[BigInt]> = pts.iter().map(|p| p.coords()).collect();
        let adim = linalg::affine_dimension(&refs);
        if dim == 0 || adim != dim as isize {
            return Err(GeometryError::NotFullDimensional { expected: dim, found: adim });
        }

        let facets = supporting_hyperplanes(&pts, dim);
        // a point is a vertex iff the normals of the facets through it span R^d
        let vertices: Vec<LatticeVector> = pts
            .into_iter()
            .filter(|p| {
                let tight: Vec<Vec<BigInt>> = facets
                    .iter()
                    .filter(|h| h.slack(p.coords()).is_zero())
                    .map(|h| h.normal.clone())
                    .collect();
                linalg::rank(&tight) == dim
            })
            .collect();
        let incidence = facets
            .iter()
            .map(|h| {
                (0..vertices.len())
                    .filter(|&i| h.slack(vertices[i].coords()).is_zero())
                    .collect()
            })
            .collect();
        Ok(Self { dim, vertices, facets, incidence })
    }

    /// Convenience constructor from small integer coordinates.
    pub fn from_i64(points: &[&[i64]]) -> Result<Self, GeometryError> {
        let pts: Vec<LatticeVector> = points.iter().map(|p| LatticeVector::from(*p)).collect();
        Self::new(&pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    /// Irredundant facet inequalities, sorted lexicographically by normal.
    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Indices of the vertices lying on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> &[usize] {
        &self.incidence[i]
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.facets.iter().all(|h| h.contains(x))
    }

    /// Per-coordinate `(min, max)` over the vertices.
    pub fn bounding_box(&self) -> Vec<(BigInt, BigInt)> {
        (0..self.dim)
            .map(|j| {
                let col = self.vertices.iter().map(|v| &v.coords()[j]);
                let lo = col.clone().min().cloned().unwrap_or_default();
                let hi = col.max().cloned().unwrap_or_default();
                (lo, hi)
            })
            .collect()
    }

    pub fn origin_in_interior(&self) -> bool {
        self.facets.iter().all(|h| h.offset.is_positive())
    }

    /// All proper nonempty faces, by closing the facet vertex sets under intersection.
    pub fn face_lattice(&self) -> FaceLattice {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut work: Vec<Vec<usize>> = Vec::new();
        for f in &self.incidence {
            if all.insert(f.clone()) {
                work.push(f.clone());
            }
        }
        while let Some(face) = work.pop() {
            for f in &self.incidence {
                let meet: Vec<usize> = face.iter().copied().filter(|i| f.binary_search(i).is_ok()).collect();
                if !meet.is_empty() && all.insert(meet.clone()) {
                    work.push(meet);
                }
            }
        }
        let mut by_dim: Vec<Vec<Vec<usize>>> = (0..self.dim).map(|_| Vec::new()).collect();
        for face in all {
            let pts: Vec<&[BigInt]> = face.iter().map(|&i| self.vertices[i].coords()).collect();
            let k = linalg::affine_dimension(&pts);
            by_dim[k as usize].push(face);
        }
        FaceLattice { by_dim }
    }

    pub fn f_vector(&self) -> FVector {
        let lattice = self.face_lattice();
        let mut entries = Vec::with_capacity(self.dim + 2);
        entries.push(1);
        entries.extend(lattice.by_dim.iter().map(|faces| faces.len() as u64));
        entries.push(1);
        FVector(entries)
    }

    /// Vertices of the polar dual, one `normal / offset` per facet, sorted.
    pub fn dual_vertices(&self) -> Result<Vec<Vec<BigRational>>, GeometryError> {
        if !self.origin_in_interior() {
            return Err(GeometryError::OriginNotInterior);
        }
        let mut out: Vec<Vec<BigRational>> = self
            .facets
            .iter()
            .map(|h| {
                h.normal
                    .iter()
                    .map(|a| BigRational::new(a.clone(), h.offset.clone()))
                    .collect()
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// The dual as a lattice polytope, when every dual vertex is integral.
    pub fn dual(&self) -> Result<Option<Polytope>, GeometryError> {
        let verts = self.dual_vertices()?;
        if !verts.iter().flatten().all(|c| c.is_integer()) {
            return Ok(None);
        }
        let pts: Vec<LatticeVector> = verts
            .into_iter()
            .map(|v| LatticeVector(v.into_iter().map(|c| c.to_integer()).collect()))
            .collect();
        Polytope::new(&pts).map(Some)
    }

    /// Origin interior and every facet at lattice distance one.
    pub fn is_reflexive(&self) -> bool {
        self.facets.iter().all(|h| h.offset.is_one())
    }

    /// Reflexive, and every facet is a simplex whose vertices form a basis
    /// of `Z^d`.
    pub fn is_smooth(&self) -> bool {
        self.is_reflexive() && self.incidence.iter().all(|f| {
            f.len() == self.dim && {
                let rows: Vec<Vec<BigInt>> =
                    f.iter().map(|&i| self.vertices[i].coords().to_vec()).collect();
                linalg::abs_is_one(&linalg::determinant(&rows))
            }
        })
    }

    /// Free sum: `P` and `Q` placed in complementary coordinate subspaces.
    pub fn free_sum(&self, other: &Polytope) -> Result<Polytope, GeometryError> {
        if !self.origin_in_interior() || !other.origin_in_interior() {
            return Err(GeometryError::OriginNotInterior);
        }
        let (p, q) = (self.dim, other.dim);
        let mut pts = Vec::with_capacity(self.vertices.len() + other.vertices.len());
        for v in &self.vertices {
            let mut c = v.coords().to_vec();
            c.resize(p + q, BigInt::zero());
            pts.push(LatticeVector(c));
        }
        for w in &other.vertices {
            let mut c = alloc::vec![BigInt::zero(); p];
            c.extend_from_slice(w.coords());
            pts.push(LatticeVector(c));
        }
        Polytope::new(&pts)
    }
}

/// Every hyperplane through `d` of the points with all points on one side,
/// in canonical primitive form, deduplicated and sorted.
fn supporting_hyperplanes(pts: &[LatticeVector], dim: usize) -> Vec<Halfspace> {
    let mut found: BTreeSet<Halfspace> = BTreeSet::new();
    let n = pts.len();
    let mut idx: Vec<usize> = (0..dim).collect();
    if n < dim {
        return Vec::new();
    }
    loop {
        let base = pts[idx[0]].coords();
        let diffs: Vec<Vec<BigInt>> = idx[1..]
            .iter()
            .map(|&i| pts[i].coords().iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let normal = linalg::cross_product(&diffs, dim);
        if normal.iter().any(|c| !c.is_zero()) {
            let normal = linalg::primitive(&normal);
            let offset = linalg::dot(&normal, base);
            let (mut below, mut above) = (false, false);
            for p in pts {
                match linalg::dot(&normal, p.coords()).cmp(&offset) {
                    core::cmp::Ordering::Less => below = true,
                    core::cmp::Ordering::Greater => above = true,
                    core::cmp::Ordering::Equal => {}
                }
                if below && above {
                    break;
                }
            }
            if !(below && above) {
                let h = if above {
                    Halfspace { normal: normal.iter().map(|c| -c).collect(), offset: -offset }
                } else {
                    Halfspace { normal, offset }
                };
                found.insert(h);
            }
        }
        // next combination in lexicographic order
        let mut k = dim;
        loop {
            if k == 0 {
                return found.into_iter().collect();
            }
            k -= 1;
            if idx[k] < n - dim + k {
                break;
            }
        }
        idx[k] += 1;
        for j in k + 1..dim {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use alloc::vec;

    fn hs(list: &[(&[i64], i64)]) -> Vec<Halfspace> {
        let mut v: Vec<Halfspace> = list.iter().map(|(n, c)| Halfspace::from_i64(n, *c)).collect();
        v.sort();
        v
    }

    #[test]
    fn triangle_keeps_extreme_points() {
        let p = Polytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert_eq!(p.vertices().len(), 3);
        let q = Polytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[0, 0]]).unwrap();
        assert_eq!(q.vertices(), p.vertices());
    }

    #[test]
    fn drops_points_on_edges() {
        let p = Polytope::from_i64(&[&[2, 0], &[1, 0], &[0, 2], &[0, 0], &[1, 1]]).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.facets().len(), 3);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert_eq!(
            Polytope::from_i64(&[&[0, 0], &[1, 0], &[2, 0]]),
            Err(GeometryError::NotFullDimensional { expected: 2, found: 1 })
        );
        assert_eq!(
            Polytope::from_i64(&[&[0, 0], &[1, 0, 0]]),
            Err(GeometryError::DimensionMismatch { expected: 2, found: 3 })
        );
        assert!(matches!(Polytope::new(&[]), Err(GeometryError::NotFullDimensional { .. })));
    }

    #[test]
    fn triangle_facets() {
        let p = catalog::reflexive_simplex(2);
        assert_eq!(p.facets(), hs(&[(&[1, 1], 1), (&[-2, 1], 1), (&[1, -2], 1)]).as_slice());
    }

    #[test]
    fn cross_polygon_facets() {
        let p = catalog::cross_polytope(2);
        assert_eq!(
            p.facets(),
            hs(&[(&[1, 1], 1), (&[1, -1], 1), (&[-1, 1], 1), (&[-1, -1], 1)]).as_slice()
        );
    }

    #[test]
    fn unit_simplex_facets() {
        let p = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(p.facets(), hs(&[(&[-1, 0], 0), (&[0, -1], 0), (&[1, 1], 1)]).as_slice());
    }

    #[test]
    fn f_vectors() {
        assert_eq!(catalog::reflexive_simplex(2).f_vector().entries(), &[1, 3, 3, 1]);
        assert_eq!(catalog::cross_polytope(4).f_vector().entries(), &[1, 8, 24, 32, 16, 1]);
        assert_eq!(catalog::reflexive_simplex(4).f_vector().entries(), &[1, 5, 10, 10, 5, 1]);
        let cube = catalog::cube(3);
        assert_eq!(cube.f_vector().entries(), &[1, 8, 12, 6, 1]);
        assert!(cube.f_vector().satisfies_euler());
    }

    #[test]
    fn duals() {
        let q = |v: &[(i64, i64)]| -> Vec<BigRational> {
            v.iter().map(|&(n, d)| crate::poly::rat(n, d)).collect()
        };
        let mut square = vec![q(&[(1, 1), (1, 1)]), q(&[(1, 1), (-1, 1)]), q(&[(-1, 1), (1, 1)]), q(&[(-1, 1), (-1, 1)])];
        square.sort();
        assert_eq!(catalog::cross_polytope(2).dual_vertices().unwrap(), square);

        let mut tri = vec![q(&[(1, 1), (1, 1)]), q(&[(1, 1), (-2, 1)]), q(&[(-2, 1), (1, 1)])];
        tri.sort();
        assert_eq!(catalog::reflexive_simplex(2).dual_vertices().unwrap(), tri);

        let dual_cube = catalog::cube(3).dual().unwrap().unwrap();
        let mut got = dual_cube.vertices().to_vec();
        got.sort();
        let mut want = catalog::cross_polytope(3).vertices().to_vec();
        want.sort();
        assert_eq!(got, want);

        let corner = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(corner.dual_vertices(), Err(GeometryError::OriginNotInterior));
    }

    #[test]
    fn reflexive_predicate() {
        assert!(catalog::reflexive_simplex(2).is_reflexive());
        let diamond = Polytope::from_i64(&[&[1, 0], &[-1, 0], &[0, 2], &[0, -2]]).unwrap();
        assert!(diamond.facets().contains(&Halfspace::from_i64(&[2, 1], 2)));
        assert!(!diamond.is_reflexive());
        assert!(!Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap().is_reflexive());
    }

    #[test]
    fn smooth_predicate() {
        assert!(catalog::cross_polytope(2).is_smooth());
        assert!(!catalog::cube(2).is_smooth());
        assert!(catalog::cross_polytope(3).is_smooth());
        assert!(catalog::hexagon().is_smooth());
        // unimodular facets, but the origin lies outside
        assert!(!Polytope::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap().is_smooth());
    }

    #[test]
    fn free_sums() {
        let seg = catalog::segment();
        let sum = seg.free_sum(&seg).unwrap();
        let mut got = sum.vertices().to_vec();
        got.sort();
        let mut want = catalog::cross_polytope(2).vertices().to_vec();
        want.sort();
        assert_eq!(got, want);

        let s2 = catalog::reflexive_simplex(2);
        let s22 = s2.free_sum(&s2).unwrap();
        assert_eq!(s22.dim(), 4);
        assert_eq!(s22.vertices().len(), 6);
        assert!(s22.is_smooth());

        let corner = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(corner.free_sum(&s2), Err(GeometryError::OriginNotInterior));
    }
}
