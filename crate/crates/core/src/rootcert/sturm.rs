//! Sturm sequences over the rationals.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::RationalPolynomial;

/// The canonical Sturm sequence `p_0 = r, p_1 = r', p_{k+1} = -rem(p_{k-1}, p_k)`
/// of a squarefree polynomial `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<RationalPolynomial>,
}

impl SturmChain {
    /// Chain of the squarefree part of `p`. Panics on the zero polynomial.
    pub fn new(p: &RationalPolynomial) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let r = p.squarefree_part();
        let mut polys = alloc::vec![r.clone()];
        let dr = r.derivative();
        if dr.is_zero() {
            return Self { polys };
        }
        polys.push(dr);
        loop {
            let n = polys.len();
            let (_, rem) = polys[n - 2].div_rem(&polys[n - 1]);
            if rem.is_zero() {
                break;
            }
            polys.push(-&rem);
        }
        Self { polys }
    }

    pub fn polynomials(&self) -> &[RationalPolynomial] {
        &self.polys
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.polys.iter().map(|p| sign(&p.eval(x))))
    }

    /// Sign variations as `x -> +inf`.
    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| p.leading().map_or(0, sign)))
    }

    /// Sign variations as `x -> -inf`.
    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| {
            let s = p.leading().map_or(0, sign);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Distinct real roots of `q` in `(-inf, 0]`. Panics if `q` is zero.
pub fn count_real_roots_nonpositive(q: &RationalPolynomial) -> usize {
    let chain = SturmChain::new(q);
    chain.variations_at_neg_inf() - chain.variations_at(&BigRational::zero())
}

/// Distinct real roots of `q`. Panics if `q` is zero.
pub fn count_real_roots(q: &RationalPolynomial) -> usize {
    let chain = SturmChain::new(q);
    chain.variations_at_neg_inf() - chain.variations_at_pos_inf()
}
