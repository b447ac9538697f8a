//! Simultaneous root finding (Aberth–Ehrlich) in big-integer fixed point.
//!
//! The input is split into exact squarefree factors first, so the iteration
//! only ever sees simple roots and converges to full working precision.
//! Results are dyadic rationals: exact values of the final iterates.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::sturm;
use crate::poly::RationalPolynomial;

/// A complex approximation `re + i·im` with exact dyadic parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexApprox {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexApprox {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// `|z - c|^2` for real `c`.
    pub fn dist_sq_to_real(&self, c: &BigRational) -> BigRational {
        let dr = &self.re - c;
        &dr * &dr + &self.im * &self.im
    }
}

/// Fixed-point arithmetic with `bits` fractional bits.
#[derive(Clone, Copy, Debug)]
struct Fixed {
    bits: u64,
}

#[derive(Clone, Debug, PartialEq)]
struct Cx {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn one(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    fn encode(&self, q: &BigRational) -> BigInt {
        (q.numer() << self.bits) / q.denom()
    }

    fn encode_f64(&self, x: f64) -> BigInt {
        let q = BigRational::from_float(x).unwrap_or_default();
        self.encode(&q)
    }

    fn decode(self, m: &BigInt) -> BigRational {
        BigRational::new(m.clone(), self.one())
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    fn cmul(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: self.mul(&a.re, &b.re) - self.mul(&a.im, &b.im),
            im: self.mul(&a.re, &b.im) + self.mul(&a.im, &b.re),
        }
    }

    /// `None` when the divisor is zero at this precision.
    fn cdiv(&self, a: &Cx, b: &Cx) -> Option<Cx> {
        let den = &b.re * &b.re + &b.im * &b.im;
        if den.is_zero() {
            return None;
        }
        let re = (&a.re * &b.re + &a.im * &b.im) << self.bits;
        let im = (&a.im * &b.re - &a.re * &b.im) << self.bits;
        Some(Cx { re: re / &den, im: im / den })
    }

    fn abs(&self, a: &Cx) -> BigInt {
        (&a.re * &a.re + &a.im * &a.im).sqrt()
    }

    /// `(p(z), p'(z), sum |c_k| ρ^k)` by Horner's rule, `ρ = max(1, |z|)`.
    fn horner(&self, coeffs: &[BigInt], z: &Cx) -> (Cx, Cx, BigInt) {
        let zero = Cx { re: BigInt::zero(), im: BigInt::zero() };
        let (mut p, mut dp) = (zero.clone(), zero);
        let mut scale = BigInt::zero();
        let rho = self.abs(z).max(self.one());
        for c in coeffs.iter().rev() {
            dp = self.cmul(&dp, z);
            dp.re += &p.re;
            dp.im += &p.im;
            p = self.cmul(&p, z);
            p.re += c;
            scale = self.mul(&scale, &rho) + c.abs();
        }
        (p, dp, scale)
    }
}

/// Working precision in bits for `digits` decimal digits, plus guard bits.
fn bits_for(digits: u32) -> u64 {
    (u64::from(digits) * 3322).div_ceil(1000) + GUARD_BITS
}

const GUARD_BITS: u64 = 64;

/// Roots of a squarefree rational polynomial of degree `n >= 1`, each to
/// roughly `digits` decimal digits. `None` if the budget runs out.
fn aberth_simple(f: &RationalPolynomial, digits: u32, max_iter: usize) -> Option<Vec<ComplexApprox>> {
    let f = f.monic();
    let n = f.degree()?;
    if n == 1 {
        return Some(alloc::vec![ComplexApprox::new(-f.coeff(0), BigRational::zero())]);
    }
    let fx = Fixed { bits: bits_for(digits) };
    let coeffs: Vec<BigInt> = f.coeffs().iter().map(|c| fx.encode(c)).collect();

    // initial points on a circle enclosing all roots, rotated off the axes
    let radius = 1.0
        + f.coeffs()[..n]
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(0.0))
            .fold(0.0, f64::max);
    const PHASE: f64 = 0.4;
    let tau = 2.0 * core::f64::consts::PI;
    let mut z: Vec<Cx> = (0..n)
        .map(|k| {
            let theta = tau * k as f64 / n as f64 + PHASE;
            Cx {
                re: fx.encode_f64(radius * libm::cos(theta)),
                im: fx.encode_f64(radius * libm::sin(theta)),
            }
        })
        .collect();
    let mut done = alloc::vec![false; n];
    let one = Cx { re: fx.one(), im: BigInt::zero() };

    for _ in 0..max_iter {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp, scale) = fx.horner(&coeffs, &z[k]);
            // backward-error stop: |p(z)| <= 2^-(bits - guard) * sum |c_i| |z|^i
            let threshold = scale >> (fx.bits - GUARD_BITS);
            if &p.re * &p.re + &p.im * &p.im <= &threshold * &threshold {
                done[k] = true;
                continue;
            }
            let Some(w) = fx.cdiv(&p, &dp) else {
                // stationary point of p: nudge and retry next sweep
                z[k].re += fx.one() >> 10;
                continue;
            };
            let mut sum = Cx { re: BigInt::zero(), im: BigInt::zero() };
            for j in (0..n).filter(|&j| j != k) {
                let diff = Cx { re: &z[k].re - &z[j].re, im: &z[k].im - &z[j].im };
                if let Some(inv) = fx.cdiv(&one, &diff) {
                    sum.re += inv.re;
                    sum.im += inv.im;
                }
            }
            let ws = fx.cmul(&w, &sum);
            let denom = Cx { re: &one.re - ws.re, im: -ws.im };
            let step = fx.cdiv(&w, &denom).unwrap_or(w);
            z[k].re -= step.re;
            z[k].im -= step.im;
        }
        if done.iter().all(|&d| d) {
            let roots = z.iter().map(|c| ComplexApprox::new(fx.decode(&c.re), fx.decode(&c.im)));
            let real_count = sturm::count_real_roots(&f);
            return Some(enforce_conjugates(roots.collect(), real_count));
        }
    }
    None
}

/// Makes the root set of a real polynomial closed under conjugation: the
/// `real_count` roots closest to the axis become real, the rest are paired.
fn enforce_conjugates(mut roots: Vec<ComplexApprox>, real_count: usize) -> Vec<ComplexApprox> {
    roots.sort_by_key(|z| z.im.abs());
    let mut out: Vec<ComplexApprox> = roots[..real_count]
        .iter()
        .map(|z| ComplexApprox::new(z.re.clone(), BigRational::zero()))
        .collect();
    let (upper, mut lower): (Vec<_>, Vec<_>) =
        roots[real_count..].iter().cloned().partition(|z| z.im.is_positive());
    if upper.len() != lower.len() {
        out.extend(upper);
        out.extend(lower);
        return out;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    for u in &upper {
        // partner: the lower root nearest to conj(u)
        let (idx, _) = lower
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let dr = &u.re - &l.re;
                let di = &u.im + &l.im;
                (i, &dr * &dr + &di * &di)
            })
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("same number of upper and lower roots");
        let l = lower.swap_remove(idx);
        let re = (&u.re + &l.re) / &two;
        let im = (u.im.abs() + l.im.abs()) / &two;
        out.push(ComplexApprox::new(re.clone(), im.clone()));
        out.push(ComplexApprox::new(re, -im));
    }
    out
}

/// All roots of `l` with multiplicity, each factor solved at `digits` digits.
pub(crate) fn roots_at_precision(
    l: &RationalPolynomial,
    digits: u32,
    max_iter: usize,
) -> Option<Vec<ComplexApprox>> {
    let mut out = Vec::new();
    for (factor, mult) in l.squarefree_factors() {
        let roots = aberth_simple(&factor, digits, max_iter)?;
        for z in roots {
            for _ in 0..mult {
                out.push(z.clone());
            }
        }
    }
    out.sort_by(|a, b| match a.re.cmp(&b.re) {
        Ordering::Equal => a.im.cmp(&b.im),
        o => o,
    });
    Some(out)
}

/// `(|l(z)|^2, (sum |c_i| ρ^i)^2)` with `ρ = max(1, |Re z| + |Im z|)`, exactly.
/// The floor at 1 keeps the scale away from zero at a root `z = 0`.
pub(crate) fn residual_sq(l: &RationalPolynomial, z: &ComplexApprox) -> (BigRational, BigRational) {
    let (re, im) = l.eval_complex(&z.re, &z.im);
    let rho = (z.re.abs() + z.im.abs()).max(BigRational::one());
    let scale = l
        .coeffs()
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * &rho + c.abs());
    (&re * &re + &im * &im, &scale * &scale)
}
