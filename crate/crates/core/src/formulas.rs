//! Closed forms for smooth polytopes in dimensions two to five.
//!
//! For a smooth `d`-polytope the Ehrhart polynomial depends only on the
//! f-vector, and for `d <= 5` only on `f_0` and `b_2 = |∂(2P) ∩ Z^d|`. Every
//! root has real part `-1/2`; the imaginary parts `β` are given in closed
//! form and returned here as exact quadratic surds.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::FVector;
use crate::poly::{int, rat, RationalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("b2 is required in dimension {0}")]
    MissingB2(usize),
    #[error("closed forms exist only for dimensions 2 to 5, got {0}")]
    UnsupportedDimension(usize),
    #[error("denominator vanishes for f0 = {f0}, b2 = {b2:?}")]
    DegenerateDenominator { f0: i64, b2: Option<i64> },
    #[error("sign conditions fail for f0 = {f0}, b2 = {b2:?}; not the data of a smooth polytope")]
    SignConditionViolated { f0: i64, b2: Option<i64> },
}

/// Invariants of a smooth polytope that determine its Ehrhart polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothInvariants {
    pub d: usize,
    pub fvec: FVector,
    pub f0: u64,
    pub f1: u64,
    pub b2: u64,
    pub vol: BigRational,
}

impl SmoothInvariants {
    pub fn from_polytope(p: &crate::Polytope) -> Self {
        let fvec = p.f_vector();
        Self {
            d: p.dim(),
            f0: fvec.f(0),
            f1: if p.dim() >= 2 { fvec.f(1) } else { 0 },
            b2: crate::counting::count_boundary(p, 2),
            vol: crate::counting::volume(p),
            fvec,
        }
    }

    /// `b2 = f0 + f1` and `d + 1 <= f0 <= casagrande_max(d)`.
    pub fn is_consistent(&self) -> bool {
        self.b2 == self.f0 + self.f1
            && self.f0 > self.d as u64
            && self.f0 <= casagrande_max(self.d as u64)
    }
}

/// `p ± q·√r` with rational `p, q, r` and `r >= 0`; a rational value has `q = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub p: BigRational,
    pub q: BigRational,
    pub r: BigRational,
}

impl QuadSurd {
    pub fn rational(p: BigRational) -> Self {
        Self { p, q: BigRational::zero(), r: BigRational::zero() }
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero() || self.r.is_zero()
    }

    /// Both values `p + q√r` and `p - q√r` are strictly positive.
    pub fn both_positive(&self) -> bool {
        if !self.p.is_positive() {
            return false;
        }
        // p > |q|√r  <=>  p^2 > q^2 r  (for p > 0)
        &self.p * &self.p > &self.q * &self.q * &self.r
    }

    /// Floating approximations `(p - q√r, p + q√r)`.
    pub fn approx(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let s = self.q.abs().to_f64().unwrap_or(f64::NAN) * libm::sqrt(self.r.to_f64().unwrap_or(f64::NAN));
        (p - s, p + s)
    }

    /// Monic quadratic `y^2 - 2p y + (p^2 - q^2 r)` whose roots are the two values.
    pub fn minimal_quadratic(&self) -> RationalPolynomial {
        let c = &self.p * &self.p - &self.q * &self.q * &self.r;
        RationalPolynomial::new(alloc::vec![c, -(&self.p * int(2)), BigRational::one()])
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.p)
        } else if self.q.abs().is_one() {
            write!(f, "{} ± √({})", self.p, self.r)
        } else {
            write!(f, "{} ± {}·√({})", self.p, self.q.abs(), self.r)
        }
    }
}

/// Squared imaginary parts of the roots `-1/2 + βi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBetas {
    pub d: usize,
    /// `β = 0` (the real root `-1/2`) occurs, which happens for odd `d`.
    pub has_real_root: bool,
    /// One value per conjugate pair `β^2`; surd entries stand for both signs.
    pub beta_squared: Vec<QuadSurd>,
}

impl RootBetas {
    /// Number of roots described, counted with the `±` of surd entries expanded.
    pub fn root_count(&self) -> usize {
        let pairs: usize =
            self.beta_squared.iter().map(|b| if b.is_rational() { 2 } else { 4 }).sum();
        pairs + usize::from(self.has_real_root)
    }

    /// `q(s)` with roots `s = -β^2`: the symmetric reduction of `L(t - 1/2)` up to scaling.
    pub fn reduced_polynomial(&self) -> RationalPolynomial {
        let mut acc = RationalPolynomial::one();
        for b in &self.beta_squared {
            let factor = if b.is_rational() {
                RationalPolynomial::new(alloc::vec![b.p.clone(), BigRational::one()])
            } else {
                // y^2 - 2p y + c with y = -s gives s^2 + 2p s + c
                b.minimal_quadratic().compose_linear(&int(-1), &BigRational::zero())
            };
            acc = &acc * &factor;
        }
        acc
    }
}

/// `L_P(m) = sum_{i=-1}^{d-1} f_i C(m, i+1)`.
pub fn ehrhart_from_fvector(fvec: &FVector) -> RationalPolynomial {
    let d = fvec.dim();
    (0..=d).fold(RationalPolynomial::zero(), |acc, k| {
        let f = BigRational::from_integer(BigInt::from(fvec.f(k as isize - 1)));
        &acc + &RationalPolynomial::binomial(k, 0).scale(&f)
    })
}

/// `L_∂P(m) = sum_{i=0}^{d-1} f_i C(m-1, i)`.
pub fn boundary_from_fvector(fvec: &FVector) -> RationalPolynomial {
    let d = fvec.dim();
    (0..d).fold(RationalPolynomial::zero(), |acc, i| {
        let f = BigRational::from_integer(BigInt::from(fvec.f(i as isize)));
        &acc + &RationalPolynomial::binomial(i, -1).scale(&f)
    })
}

fn needs_b2(d: usize, b2: Option<i64>) -> Result<i64, FormulaError> {
    b2.ok_or(FormulaError::MissingB2(d))
}

/// The dimension-specific closed form of the Ehrhart polynomial.
pub fn ehrhart_closed(d: usize, f0: i64, b2: Option<i64>) -> Result<RationalPolynomial, FormulaError> {
    let coeffs = match d {
        2 => alloc::vec![int(1), rat(f0, 2), rat(f0, 2)],
        3 => alloc::vec![int(1), rat(f0 + 10, 6), rat(f0 - 2, 2), rat(f0 - 2, 3)],
        4 => {
            let b2 = needs_b2(d, b2)?;
            alloc::vec![
                int(1),
                rat(8 * f0 - b2, 12),
                rat(14 * f0 - b2, 24),
                -rat(2 * f0 - b2, 12),
                -rat(2 * f0 - b2, 24),
            ]
        }
        5 => {
            let b2 = needs_b2(d, b2)?;
            alloc::vec![
                int(1),
                rat(14 * f0 - b2 + 94, 60),
                rat(16 * f0 - b2 - 30, 24),
                rat(f0 - 2, 3),
                -rat(4 * f0 - b2 - 6, 24),
                -rat(4 * f0 - b2 - 6, 60),
            ]
        }
        _ => return Err(FormulaError::UnsupportedDimension(d)),
    };
    Ok(RationalPolynomial::new(coeffs))
}

/// Coefficients `(a, b, c)` of the biquadratic `a β^4 + b β^2 + c` whose
/// roots are the imaginary parts, for `d = 4` and `d = 5`.
pub fn beta_biquadratic(d: usize, f0: i64, b2: i64) -> Result<(BigInt, BigInt, BigInt), FormulaError> {
    let (a, b, c) = match d {
        4 => (16 * (b2 - 2 * f0), 8 * (5 * b2 - 34 * f0), 3 * (128 + 3 * b2 - 22 * f0)),
        5 => (16 * (6 + b2 - 4 * f0), 40 * (22 + b2 - 12 * f0), 2134 + 9 * b2 - 116 * f0),
        _ => return Err(FormulaError::UnsupportedDimension(d)),
    };
    Ok((BigInt::from(a), BigInt::from(b), BigInt::from(c)))
}

/// Exact `β^2` values of the Ehrhart roots `-1/2 + βi` of a smooth polytope.
///
/// In dimensions four and five the surd is cross-checked against the
/// biquadratic it comes from: positive leading and constant coefficients,
/// negative middle coefficient and positive discriminant, so all four `β`
/// are real and distinct.
pub fn root_betas(d: usize, f0: i64, b2: Option<i64>) -> Result<RootBetas, FormulaError> {
    let degenerate = || FormulaError::DegenerateDenominator { f0, b2 };
    let violated = || FormulaError::SignConditionViolated { f0, b2 };
    let beta_squared = match d {
        2 => {
            if f0 == 0 {
                return Err(degenerate());
            }
            QuadSurd::rational(rat(-1, 4) + rat(2, f0))
        }
        3 => {
            if f0 == 2 {
                return Err(degenerate());
            }
            QuadSurd::rational(rat(-1, 4) + rat(6, f0 - 2))
        }
        4 | 5 => {
            let b2v = needs_b2(d, b2)?;
            let (p, r) = if d == 4 {
                let den = b2v - 2 * f0;
                if den == 0 {
                    return Err(degenerate());
                }
                let p = rat(-17, 4) + rat(3 * b2v, den);
                let r = int(1) - rat(12 * (f0 + 2), den) + rat(36 * f0 * f0, den * den);
                (p, r)
            } else {
                let den = 6 + b2v - 4 * f0;
                if den == 0 {
                    return Err(degenerate());
                }
                let p = rat(-5, 4) + rat(10 * (f0 - 2), den);
                let r = int(1) - rat(20 * (f0 + 4), den) + rat(100 * (f0 - 2) * (f0 - 2), den * den);
                (p, r)
            };
            let (a, b, c) = beta_biquadratic(d, f0, b2v)?;
            let disc = &b * &b - BigInt::from(4) * &a * &c;
            if !(a.is_positive() && b.is_negative() && c.is_positive() && disc.is_positive()) {
                return Err(violated());
            }
            // roots of a y^2 + b y + c are -b/2a ± √(disc / 4a^2)
            let two_a = BigRational::from_integer(BigInt::from(2) * &a);
            debug_assert_eq!(p, BigRational::from_integer(-b) / &two_a);
            debug_assert_eq!(r, BigRational::from_integer(disc) / (&two_a * &two_a));
            QuadSurd { p, q: BigRational::one(), r }
        }
        _ => return Err(FormulaError::UnsupportedDimension(d)),
    };
    if !beta_squared.both_positive() {
        return Err(violated());
    }
    Ok(RootBetas { d, has_real_root: d % 2 == 1, beta_squared: alloc::vec![beta_squared] })
}

/// Maximum vertex count of a smooth `d`-polytope: `3d` for even `d`, `3d - 1` for odd.
pub fn casagrande_max(d: u64) -> u64 {
    if d % 2 == 0 {
        3 * d
    } else {
        3 * d - 1
    }
}

/// Outcome of the necessary conditions on `(f0, b2)` in dimensions 4 and 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub d: usize,
    /// `f0 >= d + 1`.
    pub min_vertices: bool,
    /// `f0 <= casagrande_max(d)`.
    pub max_vertices: bool,
    /// `5f0 - 10 <= b2 <= 5f0` (d = 4) or `42f0 - 105 <= 7b2 <= 52f0 - 90` (d = 5).
    pub b2_window: bool,
    /// `(b2 - 8f0)^2 > 24(b2 - 2f0)` (d = 4) or
    /// `100(f0-2)^2 + (6+b2-4f0)^2 > 20(6+b2-4f0)(f0+4)` (d = 5).
    pub discriminant: bool,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.min_vertices && self.max_vertices && self.b2_window && self.discriminant
    }

    /// `(name, passed)` for each condition, in a fixed order.
    pub fn flags(&self) -> [(&'static str, bool); 4] {
        [
            ("min_vertices", self.min_vertices),
            ("max_vertices", self.max_vertices),
            ("b2_window", self.b2_window),
            ("discriminant", self.discriminant),
        ]
    }
}

pub fn check_bounds(d: usize, f0: i64, b2: i64) -> Result<BoundsReport, FormulaError> {
    let (b2_window, discriminant) = match d {
        4 => (
            5 * f0 - 10 <= b2 && b2 <= 5 * f0,
            (b2 - 8 * f0).pow(2) > 24 * (b2 - 2 * f0),
        ),
        5 => {
            let e = 6 + b2 - 4 * f0;
            (
                42 * f0 - 105 <= 7 * b2 && 7 * b2 <= 52 * f0 - 90,
                100 * (f0 - 2).pow(2) + e * e > 20 * e * (f0 + 4),
            )
        }
        _ => return Err(FormulaError::UnsupportedDimension(d)),
    };
    Ok(BoundsReport {
        d,
        min_vertices: f0 > d as i64,
        max_vertices: f0 <= casagrande_max(d as u64) as i64,
        b2_window,
        discriminant,
    })
}

/// The two conditions characterizing canonical-line Ehrhart roots of a
/// reflexive 4-polytope from its boundary point count and volume:
/// `2|∂P ∩ Z^4| <= 9 vol + 16` and `(|∂P ∩ Z^4| - 4 vol)^2 >= 16 vol`.
pub fn bhw_conditions(boundary_points: u64, vol: &BigRational) -> (bool, bool) {
    let n = BigRational::from_integer(BigInt::from(boundary_points));
    let first = &n * int(2) <= vol * int(9) + int(16);
    let diff = &n - vol * int(4);
    let second = &diff * &diff >= vol * int(16);
    (first, second)
}

/// The `(f0, b2)` pairs realized by four- and five-dimensional smooth polytopes.
pub mod tables {
    /// All 124 smooth 4-polytopes, 20 distinct pairs.
    pub const DIM4: [(i64, i64); 20] = [
        (5, 15), (6, 20), (6, 21), (7, 25), (7, 26), (7, 27), (8, 31), (8, 32), (8, 33), (8, 34),
        (9, 36), (9, 38), (9, 39), (9, 41), (9, 42), (10, 44), (10, 45), (10, 50), (11, 52), (12, 60),
    ];

    /// All 866 smooth 5-polytopes, 29 distinct pairs.
    pub const DIM5: [(i64, i64); 29] = [
        (6, 21), (7, 27), (7, 28), (8, 33), (8, 34), (8, 35), (8, 36), (9, 40), (9, 41), (9, 42),
        (9, 43), (9, 44), (10, 46), (10, 49), (10, 50), (10, 51), (10, 52), (10, 53), (11, 56),
        (11, 58), (11, 59), (11, 60), (11, 61), (11, 62), (12, 66), (12, 67), (12, 72), (13, 76),
        (14, 86),
    ];

    /// The table for dimension 4 or 5.
    pub fn for_dim(d: usize) -> Option<&'static [(i64, i64)]> {
        match d {
            4 => Some(&DIM4),
            5 => Some(&DIM5),
            _ => None,
        }
    }
}
