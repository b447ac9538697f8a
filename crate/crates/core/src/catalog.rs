//! Small smooth Fano polytopes used as test subjects and CLI fixtures.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::geometry::{LatticeVector, Polytope};

/// The segment `[-1, 1]`.
pub fn segment() -> Polytope {
    Polytope::from_i64(&[&[1], &[-1]]).expect("segment")
}

/// `conv{e_1, ..., e_d, -(e_1 + ... + e_d)}`.
pub fn reflexive_simplex(d: usize) -> Polytope {
    let mut pts: Vec<LatticeVector> = (0..d).map(|i| LatticeVector::unit(d, i)).collect();
    pts.push(LatticeVector::new((0..d).map(|_| -BigInt::one()).collect()));
    Polytope::new(&pts).expect("simplex is full-dimensional")
}

/// `conv{+-e_1, ..., +-e_d}`.
pub fn cross_polytope(d: usize) -> Polytope {
    let mut pts = Vec::with_capacity(2 * d);
    for i in 0..d {
        let e = LatticeVector::unit(d, i);
        pts.push(LatticeVector::new(e.coords().iter().map(|c| -c).collect()));
        pts.push(e);
    }
    Polytope::new(&pts).expect("cross-polytope is full-dimensional")
}

/// `conv{(+-1, ..., +-1)}`; reflexive but not smooth for `d >= 2`.
pub fn cube(d: usize) -> Polytope {
    let pts: Vec<LatticeVector> = (0..1u32 << d)
        .map(|mask| {
            LatticeVector::from(
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                    .collect::<Vec<i64>>(),
            )
        })
        .collect();
    Polytope::new(&pts).expect("cube is full-dimensional")
}

/// The smooth hexagon, the two-dimensional polytope with the most vertices.
pub fn hexagon() -> Polytope {
    Polytope::from_i64(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]])
        .expect("hexagon")
}

/// A named smooth polytope.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub polytope: Polytope,
}

fn entry(name: &str, polytope: Polytope) -> Entry {
    Entry { name: name.into(), polytope }
}

/// Smooth polytopes in dimensions 2 through 5: simplices, cross-polytopes,
/// the hexagon and a few free sums.
pub fn smooth_catalog() -> Vec<Entry> {
    let s2 = reflexive_simplex(2);
    let s3 = reflexive_simplex(3);
    let c3 = cross_polytope(3);
    let sum = |p: &Polytope, q: &Polytope| p.free_sum(q).expect("origin interior");
    Vec::from([
        entry("S2", s2.clone()),
        entry("hexagon", hexagon()),
        entry("C2", cross_polytope(2)),
        entry("S3", s3.clone()),
        entry("C3", c3.clone()),
        entry("S4", reflexive_simplex(4)),
        entry("C4", cross_polytope(4)),
        entry("S2+S2", sum(&s2, &s2)),
        entry("S5", reflexive_simplex(5)),
        entry("C5", cross_polytope(5)),
        entry("S2+S3", sum(&s2, &s3)),
        entry("S2+C3", sum(&s2, &c3)),
    ])
}
