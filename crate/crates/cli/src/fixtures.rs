//! The dimension-six smooth polytopes with Ehrhart roots off `Re z = -1/2`.
//!
//! Only the polynomials are known here; the polytopes themselves are
//! identified by their Graded Ring Database IDs. Two IDs share a polynomial.

use ehrhart_core::RationalPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub ids: &'static [u32],
    /// Coefficients `(numerator, denominator)`, lowest degree first.
    pub coeffs: [(i64, i64); 7],
}

impl Fixture {
    pub fn polynomial(&self) -> RationalPolynomial {
        RationalPolynomial::from_ratios(&self.coeffs)
    }

    pub fn label(&self) -> String {
        self.ids.iter().map(u32::to_string).collect::<Vec<_>>().join("/")
    }

    /// The comma-separated form accepted by `--coeffs`.
    pub fn coeff_list(&self) -> String {
        self.polynomial().coeff_strings().join(",")
    }
}

pub const DIM6: [Fixture; 3] = [
    Fixture { ids: &[1895, 5817], coeffs: [(1, 1), (31, 10), (257, 60), (5, 2), (19, 12), (2, 5), (2, 15)] },
    Fixture { ids: &[1930], coeffs: [(1, 1), (7, 2), (175, 36), (35, 12), (35, 18), (7, 12), (7, 36)] },
    Fixture { ids: &[4853], coeffs: [(1, 1), (7, 2), (21, 4), (15, 4), (5, 2), (3, 4), (1, 4)] },
];

/// The fixture whose roots leave the canonical strip on both sides.
pub const STRIP_VIOLATOR: u32 = 1930;

pub fn by_id(id: u32) -> Option<&'static Fixture> {
    DIM6.iter().find(|f| f.ids.contains(&id))
}
