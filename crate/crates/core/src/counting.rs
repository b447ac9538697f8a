//! Lattice-point counts of dilations and the Ehrhart polynomial.
//!
//! Points of `mP` are enumerated coordinate by coordinate. Each coordinate
//! runs only over the values allowed by the projection of `mP` onto the
//! coordinates fixed so far, so every visited prefix has a fiber. The last
//! coordinate is never walked point by point: for a fixed prefix the facets
//! cut it down to an interval whose length is the count, and the boundary
//! points in that fiber are the integral solutions of the tight facet
//! equations.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::geometry::{LatticeVector, Polytope};
use crate::linalg;
use crate::poly::{self, RationalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("the layer identity is only asserted for reflexive polytopes")]
    NotReflexive,
}

/// Lattice points of `mP` and of its boundary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LayerCounts {
    pub points: u64,
    pub boundary: u64,
}

impl core::ops::Add for LayerCounts {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { points: self.points + rhs.points, boundary: self.boundary + rhs.boundary }
    }
}

/// `|mP ∩ Z^d|`.
pub fn count_points(p: &Polytope, m: u64) -> u64 {
    count_layers(p, m).points
}

/// `|∂(mP) ∩ Z^d|`.
pub fn count_boundary(p: &Polytope, m: u64) -> u64 {
    count_layers(p, m).boundary
}

/// Both counts for `mP` in one pass.
pub fn count_layers(p: &Polytope, m: u64) -> LayerCounts {
    LatticeCounter::new(p).count(m)
}

/// Range of the first coordinate over `mP`'s bounding box. Any partition of
/// it into slabs gives counts that sum to [`count_layers`].
pub fn first_coordinate_range(p: &Polytope, m: u64) -> RangeInclusive<BigInt> {
    let (lo, hi) = p.bounding_box().swap_remove(0);
    let m = BigInt::from(m);
    (lo * &m)..=(hi * m)
}

/// Counts restricted to points whose first coordinate lies in `slab`.
pub fn count_slab(p: &Polytope, m: u64, slab: RangeInclusive<BigInt>) -> LayerCounts {
    LatticeCounter::new(p).count_slab(m, slab)
}

/// Reusable counting state for one polytope.
///
/// For each `j` it holds the facets of the projection of `P` onto the first
/// `j + 1` coordinates, which is the hull of the projected vertices. Scaled
/// by `m` they give the exact range of coordinate `j` over points of `mP`
/// extending a given prefix, so no dead prefix is ever visited.
#[derive(Clone, Debug)]
pub struct LatticeCounter {
    // levels[j]: (normals over coordinates 0..=j, offsets)
    levels: Vec<(Vec<Vec<BigInt>>, Vec<BigInt>)>,
    first_range: (BigInt, BigInt),
}

impl LatticeCounter {
    pub fn new(p: &Polytope) -> Self {
        let d = p.dim();
        let mut levels = Vec::with_capacity(d);
        for j in 0..d {
            let facets = if j + 1 == d {
                p.facets().to_vec()
            } else {
                let pts: Vec<LatticeVector> = p
                    .vertices()
                    .iter()
                    .map(|v| LatticeVector::new(v.coords()[..=j].to_vec()))
                    .collect();
                Polytope::new(&pts).expect("projection of a full-dimensional polytope").facets().to_vec()
            };
            levels.push(facets.into_iter().map(|h| (h.normal, h.offset)).unzip());
        }
        let (lo, hi) = p.bounding_box().swap_remove(0);
        Self { levels, first_range: (lo, hi) }
    }

    pub fn count(&self, m: u64) -> LayerCounts {
        let mb = BigInt::from(m);
        let range = (&self.first_range.0 * &mb)..=(&self.first_range.1 * &mb);
        self.count_slab(m, range)
    }

    pub fn count_slab(&self, m: u64, slab: RangeInclusive<BigInt>) -> LayerCounts {
        let mb = BigInt::from(m);
        let rhs: Vec<Vec<BigInt>> =
            self.levels.iter().map(|(_, offsets)| offsets.iter().map(|c| c * &mb).collect()).collect();
        let mut prefix = Vec::with_capacity(self.levels.len());
        self.walk(&rhs, &slab, &mut prefix)
    }

    /// Range of the next coordinate after `prefix`, and whether some facet
    /// not involving it is already tight.
    fn range(&self, rhs: &[Vec<BigInt>], prefix: &[BigInt]) -> Option<(BigInt, BigInt, bool)> {
        let j = prefix.len();
        let (rows, _) = &self.levels[j];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        let mut tight = false;
        for (row, c) in rows.iter().zip(&rhs[j]) {
            let a = &row[j];
            let r = c - linalg::dot(&row[..j], prefix);
            if a.is_zero() {
                if r.is_negative() {
                    return None;
                }
                tight |= r.is_zero();
            } else if a.is_positive() {
                let b = r.div_floor(a);
                hi = Some(hi.map_or(b.clone(), |h| h.min(b)));
            } else {
                let b = -((-r).div_floor(a));
                lo = Some(lo.map_or(b.clone(), |l| l.max(b)));
            }
        }
        let (lo, hi) = (lo?, hi?);
        (lo <= hi).then_some((lo, hi, tight))
    }

    fn walk(&self, rhs: &[Vec<BigInt>], slab: &RangeInclusive<BigInt>, prefix: &mut Vec<BigInt>) -> LayerCounts {
        let Some((mut lo, mut hi, tight)) = self.range(rhs, prefix) else {
            return LayerCounts::default();
        };
        if prefix.is_empty() {
            lo = lo.max(slab.start().clone());
            hi = hi.min(slab.end().clone());
            if lo > hi {
                return LayerCounts::default();
            }
        }
        if prefix.len() + 1 == self.levels.len() {
            return self.fiber(rhs, prefix, lo, hi, tight);
        }
        let mut total = LayerCounts::default();
        let mut x = lo;
        while x <= hi {
            prefix.push(x.clone());
            total = total + self.walk(rhs, slab, prefix);
            prefix.pop();
            x += 1;
        }
        total
    }

    /// Counts along the last coordinate for a fixed prefix.
    fn fiber(&self, rhs: &[Vec<BigInt>], prefix: &[BigInt], lo: BigInt, hi: BigInt, tight: bool) -> LayerCounts {
        let points = (&hi - &lo + 1u32).to_u64().expect("fiber length fits in u64");
        if tight {
            return LayerCounts { points, boundary: points };
        }
        let j = prefix.len();
        let (rows, _) = &self.levels[j];
        let mut hits: Vec<BigInt> = rows
            .iter()
            .zip(&rhs[j])
            .filter(|(row, _)| !row[j].is_zero())
            .filter_map(|(row, c)| {
                let (q, rem) = (c - linalg::dot(&row[..j], prefix)).div_rem(&row[j]);
                (rem.is_zero() && q >= lo && q <= hi).then_some(q)
            })
            .collect();
        hits.sort();
        hits.dedup();
        LayerCounts { points, boundary: hits.len() as u64 }
    }
}

/// The Ehrhart polynomial, interpolated exactly through `L_P(0), ..., L_P(d)`.
pub fn ehrhart(p: &Polytope) -> RationalPolynomial {
    let counter = LatticeCounter::new(p);
    let pts: Vec<(BigRational, BigRational)> = (0..=p.dim() as u64)
        .map(|m| (poly::int(m as i64), BigRational::from_integer(counter.count(m).points.into())))
        .collect();
    poly::interpolate(&pts)
}

/// Checks `L_P(m) = L_∂P(m) + L_P(m-1)` for `1 <= m <= max_m`.
pub fn verify_layers(p: &Polytope, max_m: u64) -> Result<bool, CountingError> {
    if !p.is_reflexive() {
        return Err(CountingError::NotReflexive);
    }
    let counter = LatticeCounter::new(p);
    let mut prev = counter.count(0).points;
    for m in 1..=max_m {
        let c = counter.count(m);
        if c.points != c.boundary + prev {
            return Ok(false);
        }
        prev = c.points;
    }
    Ok(true)
}

/// `L(-x-1) = (-1)^d L(x)` as a polynomial identity, with `deg L = d`.
pub fn verify_reciprocity(l: &RationalPolynomial, d: usize) -> bool {
    if l.degree() != Some(d) {
        return false;
    }
    let reflected = l.compose_linear(&poly::int(-1), &poly::int(-1));
    if d % 2 == 0 {
        reflected == *l
    } else {
        reflected == -l
    }
}

/// Euclidean volume, the leading Ehrhart coefficient.
pub fn volume(p: &Polytope) -> BigRational {
    ehrhart(p).leading().cloned().unwrap_or_default()
}
