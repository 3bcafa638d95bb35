use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyrat::Polynomial;

/// Sturm sequence of the squarefree part of a polynomial.
///
/// Built with pseudo-remainders rescaled by positive factors only, so the
/// sign pattern at a point, and hence the root count, is exact.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Polynomial>,
}

fn positive_part(p: Polynomial) -> Polynomial {
    let c = p.content();
    if c.is_zero() || c.is_one() {
        p
    } else {
        p.div_scalar_exact(&c)
    }
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let p0 = p.squarefree();
        let mut chain = vec![p0.clone()];
        if p0.is_constant() {
            return SturmChain { chain };
        }
        chain.push(positive_part(p0.derivative()));
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            let mut r = a.pseudo_rem(b).expect("chain entries are nonzero");
            let steps = a.degree().unwrap() - b.degree().unwrap() + 1;
            if b.leading().unwrap().is_negative() && steps % 2 == 1 {
                r = -r;
            }
            let r = positive_part(-r);
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.chain[0]
    }

    fn variations(&self, x: &BigRational) -> usize {
        let (num, den) = (x.numer(), x.denom());
        let mut count = 0;
        let mut last = Sign::NoSign;
        for p in &self.chain {
            let s = p.sign_at(num, den);
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Bound on the absolute value of every root (Cauchy).
    pub fn root_bound(&self) -> BigRational {
        let p = &self.chain[0];
        let Some(lead) = p.leading() else {
            return BigRational::one();
        };
        let lead = lead.abs();
        let max = p.coeffs().iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero);
        BigRational::one() + BigRational::new(max, lead)
    }

    /// Shrinks `(a, b]`, which must contain exactly one root, to width below `width`.
    fn refine(&self, mut a: BigRational, mut b: BigRational, width: &BigRational) -> (BigRational, BigRational) {
        let two = BigRational::from_integer(BigInt::from(2));
        while &(&b - &a) > width {
            let mid = (&a + &b) / &two;
            if self.count_in(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        (a, b)
    }

    /// Smallest real root in `(a, b]`, isolated to width below `width`.
    pub fn smallest_root_in(&self, a: &BigRational, b: &BigRational, width: &BigRational) -> Option<(BigRational, BigRational)> {
        if self.count_in(a, b) == 0 {
            return None;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let (mut lo, mut hi) = (a.clone(), b.clone());
        // Narrow until only the smallest root is left in (lo, hi].
        while self.count_in(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / &two;
            if self.count_in(&lo, &mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(self.refine(lo, hi, width))
    }

    /// Largest real root in `(a, b]`, isolated to width below `width`.
    pub fn largest_root_in(&self, a: &BigRational, b: &BigRational, width: &BigRational) -> Option<(BigRational, BigRational)> {
        if self.count_in(a, b) == 0 {
            return None;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let (mut lo, mut hi) = (a.clone(), b.clone());
        while self.count_in(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / &two;
            if self.count_in(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(self.refine(lo, hi, width))
    }
}

pub(crate) fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Midpoint of an isolating interval as a float.
pub(crate) fn midpoint(iv: &(BigRational, BigRational)) -> f64 {
    to_f64(&((&iv.0 + &iv.1) / BigRational::from_integer(BigInt::from(2))))
}
