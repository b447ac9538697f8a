//! Where do the roots of an Ehrhart polynomial lie?
//!
//! The exact route: shift `L` by one half, `g(t) = L(t - 1/2)`. Reciprocity
//! makes `g` even or odd, so `g(t) = q(t^2)` or `t·q(t^2)`. A root `z` of `L`
//! has `Re z = -1/2` exactly when `t = z + 1/2` is purely imaginary, i.e.
//! when `s = t^2` is real and nonpositive. Sturm sequences count the real
//! nonpositive roots of `q` without any floating point.
//!
//! The numeric route finds every root to high precision and checks the line,
//! the canonical strip `-1 <= Re z <= 0` of reflexive polytopes, the wider
//! strip `-d <= Re z <= d - 1` conjectured for all lattice polytopes, and
//! the disc `|z + 1/2| <= d(d - 1/2)`.

mod aberth;
pub mod sturm;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use aberth::ComplexApprox;
pub use sturm::{count_real_roots, count_real_roots_nonpositive, SturmChain};

use crate::poly::{int, rat, RationalPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("polynomial is neither even nor odd after the half shift")]
    NotSymmetric,
    #[error("expected degree {expected}, found {found:?}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("root iteration did not converge at {digits} digits")]
    NoConvergence { digits: u32 },
    #[error("tolerance must be positive and finite")]
    BadTolerance,
}

/// Outcome of the exact canonical-line test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// Every root lies on `Re z = -1/2`.
    Certified,
    /// Symmetric, but some root lies off the line.
    Refuted,
    /// `L` fails reciprocity, so the symmetric reduction does not apply.
    NotSymmetric,
}

impl Certificate {
    pub fn holds(self) -> bool {
        self == Certificate::Certified
    }
}

/// `g(t) = L(t - 1/2)`.
pub fn shift_half(l: &RationalPolynomial) -> RationalPolynomial {
    l.compose_linear(&int(1), &rat(-1, 2))
}

/// Writes `g(t) = q(t^2)` (even `d`) or `g(t) = t·q(t^2)` (odd `d`) and returns `q`.
pub fn symmetric_decompose(g: &RationalPolynomial, d: usize) -> Result<RationalPolynomial, RootError> {
    if g.degree() != Some(d) {
        return Err(RootError::DegreeMismatch { expected: d, found: g.degree() });
    }
    let parity = d % 2;
    if g.coeffs().iter().enumerate().any(|(k, c)| k % 2 != parity && !c.is_zero()) {
        return Err(RootError::NotSymmetric);
    }
    Ok(RationalPolynomial::new(
        g.coeffs().iter().skip(parity).step_by(2).cloned().collect(),
    ))
}

/// Exact test of the canonical-line property for `L` of degree `d`.
pub fn certify(l: &RationalPolynomial, d: usize) -> Certificate {
    let q = match symmetric_decompose(&shift_half(l), d) {
        Ok(q) => q,
        Err(_) => return Certificate::NotSymmetric,
    };
    // Sturm counts distinct roots, so compare against the squarefree degree
    let distinct = q.squarefree_part().degree().unwrap_or(0);
    if count_real_roots_nonpositive(&q) == distinct {
        Certificate::Certified
    } else {
        Certificate::Refuted
    }
}

/// `true` iff every root of `L` has real part exactly `-1/2`.
pub fn canonical_line_certificate(l: &RationalPolynomial, d: usize) -> bool {
    certify(l, d).holds()
}

/// High-precision roots together with their residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericRoots {
    /// Roots with multiplicity, sorted by real then imaginary part.
    pub roots: Vec<ComplexApprox>,
    /// Decimal digits of working precision that succeeded.
    pub digits: u32,
    /// `max |L(z)|` over the returned roots.
    pub max_residual: f64,
}

/// Precision ladder for [`find_roots`], in decimal digits.
pub const PRECISION_LADDER: [u32; 4] = [50, 100, 200, 400];

const MAX_ITERATIONS: usize = 1000;

/// All complex roots with multiplicity, starting at 50 digits and doubling
/// the precision on failure up to 400.
///
/// Every root satisfies `|L(z)| <= tol · sum |a_i| ρ^i` with `ρ = max(1, |Re z| + |Im z|)`.
pub fn find_roots(l: &RationalPolynomial, tol: f64) -> Result<NumericRoots, RootError> {
    let mut last = RootError::NoConvergence { digits: PRECISION_LADDER[0] };
    for digits in PRECISION_LADDER {
        match find_roots_at(l, tol, digits) {
            Ok(r) => return Ok(r),
            Err(e @ RootError::NoConvergence { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// One rung of the ladder: roots at a fixed working precision.
pub fn find_roots_at(l: &RationalPolynomial, tol: f64, digits: u32) -> Result<NumericRoots, RootError> {
    let tol_q = tolerance(tol)?;
    if l.degree().unwrap_or(0) == 0 {
        return Err(RootError::DegreeMismatch { expected: 1, found: l.degree() });
    }
    let roots =
        aberth::roots_at_precision(l, digits, MAX_ITERATIONS).ok_or(RootError::NoConvergence { digits })?;
    let mut max_sq = BigRational::zero();
    for z in &roots {
        let (r2, s2) = aberth::residual_sq(l, z);
        if r2 > &tol_q * &tol_q * s2 {
            return Err(RootError::NoConvergence { digits });
        }
        if r2 > max_sq {
            max_sq = r2;
        }
    }
    let max_residual = libm::sqrt(max_sq.to_f64().unwrap_or(0.0));
    Ok(NumericRoots { roots, digits, max_residual })
}

fn tolerance(tol: f64) -> Result<BigRational, RootError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(RootError::BadTolerance);
    }
    BigRational::from_float(tol).ok_or(RootError::BadTolerance)
}

/// Exact certificate plus numeric location of every root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub degree: usize,
    pub certificate: Certificate,
    /// `L(-x-1) = (-1)^d L(x)`.
    pub symmetric: bool,
    pub roots: Vec<ComplexApprox>,
    pub digits: u32,
    pub max_residual: f64,
    pub tolerance: f64,
    /// Every root within `tol` of `Re z = -1/2`.
    pub on_line_numeric: bool,
    /// Every root in `-1 - tol <= Re z <= tol`.
    pub in_canonical_strip: bool,
    /// Every root in `-d - tol <= Re z <= d - 1 + tol`.
    pub in_bldps_strip: bool,
    /// Every root in `|z + 1/2| <= d(d - 1/2) + tol`.
    pub in_braun_disc: bool,
}

impl RootReport {
    pub fn max_real_part(&self) -> Option<&BigRational> {
        self.roots.iter().map(|z| &z.re).max()
    }

    pub fn min_real_part(&self) -> Option<&BigRational> {
        self.roots.iter().map(|z| &z.re).min()
    }

    /// `d(d - 1/2)`.
    pub fn braun_radius(&self) -> BigRational {
        braun_radius(self.degree)
    }
}

pub fn braun_radius(d: usize) -> BigRational {
    let d = BigRational::from_integer(BigInt::from(d));
    &d * (&d - rat(1, 2))
}

/// Runs the certificate and the numeric root finder on `L` of degree `d`.
pub fn classify(l: &RationalPolynomial, d: usize, tol: f64) -> Result<RootReport, RootError> {
    if l.degree() != Some(d) {
        return Err(RootError::DegreeMismatch { expected: d, found: l.degree() });
    }
    let tol_q = tolerance(tol)?;
    let certificate = certify(l, d);
    let found = find_roots(l, tol)?;

    let half = rat(-1, 2);
    let dq = BigRational::from_integer(BigInt::from(d));
    let on_line_numeric = found.roots.iter().all(|z| (&z.re - &half).abs() <= tol_q);
    let in_strip = |lo: BigRational, hi: BigRational| {
        found.roots.iter().all(|z| z.re >= &lo - &tol_q && z.re <= &hi + &tol_q)
    };
    let in_canonical_strip = in_strip(int(-1), int(0));
    let in_bldps_strip = in_strip(-dq.clone(), &dq - int(1));
    let radius = braun_radius(d) + &tol_q;
    let in_braun_disc = found.roots.iter().all(|z| z.dist_sq_to_real(&half) <= &radius * &radius);

    Ok(RootReport {
        degree: d,
        certificate,
        symmetric: certificate != Certificate::NotSymmetric,
        roots: found.roots,
        digits: found.digits,
        max_residual: found.max_residual,
        tolerance: tol,
        on_line_numeric,
        in_canonical_strip,
        in_bldps_strip,
        in_braun_disc,
    })
}

/// Default tolerance for the numeric line, strip and disc tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
