use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{PolyError, Polynomial};

/// Quotient `num / den` of integer polynomials, kept in lowest terms.
///
/// Canonical form: `gcd(num, den) = 1` as polynomials, the combined content
/// of numerator and denominator is 1, and `den` has a positive leading
/// coefficient. The zero function is `0 / 1`. Equality is structural, which
/// is equality of functions because the form is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        Self::canonical(p, Polynomial::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// Convenience constructor from small coefficient lists.
    pub fn from_i64s(num: &[i64], den: &[i64]) -> Result<Self, PolyError> {
        Self::new(Polynomial::from_i64s(num), Polynomial::from_i64s(den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den).expect("denominator is nonzero");
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RationalFunction { num, den }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is a constant, i.e. the function is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        Self::canonical(self.num.shift(k), self.den.clone())
    }

    pub fn scale_poly(&self, p: &Polynomial) -> Self {
        Self::canonical(&self.num * p, self.den.clone())
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, PolyError> {
        Ok(self * &rhs.recip()?)
    }

    /// Total degree `deg num + deg den`, used to rank elimination pivots.
    pub(crate) fn weight(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// First `n + 1` Taylor coefficients at the origin.
    ///
    /// Uses the recurrence `den(0) s_k = num_k - sum_{i>=1} den_i s_{k-i}`,
    /// so the cost is `O(n * deg den)`.
    pub fn series(&self, n: usize) -> Result<Vec<BigRational>, PolyError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(PolyError::PoleAtOrigin);
        }
        let den = self.den.coeffs();
        let d0 = BigRational::from(d0);
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = BigRational::from(self.num.coeff(k));
            for (i, di) in den.iter().enumerate().skip(1).take(k) {
                if !di.is_zero() {
                    acc -= &out[k - i] * BigRational::from(di.clone());
                }
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Like [`series`](Self::series) but demands integral coefficients.
    pub fn integer_series(&self, n: usize) -> Result<Vec<BigInt>, PolyError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(PolyError::PoleAtOrigin);
        }
        let den = self.den.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for (i, di) in den.iter().enumerate().skip(1).take(k) {
                if !di.is_zero() {
                    acc -= &out[k - i] * di;
                }
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(PolyError::NonIntegerCoefficient { index: k });
            }
            out.push(q);
        }
        Ok(out)
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x) / d)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Polynomial,
            den: Polynomial,
        }
        let raw = Raw::deserialize(deserializer)?;
        RationalFunction::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + &x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfunc_arith(
    op: RatOp,
    a: &RationalFunction,
    b: &RationalFunction,
) -> Result<RationalFunction, PolyError> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => a.checked_div(b)?,
    })
}

pub fn series_expand(r: &RationalFunction, n: usize) -> Result<Vec<BigRational>, PolyError> {
    r.series(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_i64s(num, den).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn additive_identity() {
        let six = RationalFunction::constant(6);
        assert_eq!(&six + &RationalFunction::zero(), six);
    }

    #[test]
    fn canonical_form_reduces() {
        // (1 - z^2) / (2 - 2z) = (1 + z) / 2
        let r = rf(&[1, 0, -1], &[2, -2]);
        assert_eq!(r.num(), &Polynomial::from_i64s(&[1, 1]));
        assert_eq!(r.den(), &Polynomial::from_i64s(&[2]));
        // Leading coefficient of the denominator is made positive.
        let s = rf(&[1], &[1, -1]);
        assert_eq!(s.den(), &Polynomial::from_i64s(&[-1, 1]));
        assert_eq!(s.num(), &Polynomial::from_i64s(&[-1]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFunction::new(Polynomial::one(), Polynomial::zero()),
            Err(PolyError::ZeroDenominator)
        ));
        assert!(matches!(
            ratfunc_arith(RatOp::Div, &RationalFunction::one(), &RationalFunction::zero()),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn geometric_series() {
        assert_eq!(rf(&[1], &[1, -1]).series(4).unwrap(), ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn primal_escher_series() {
        let v = rf(&[1, 4, 10, 4, 1], &[1, -2, -2, -2, 1]);
        assert_eq!(v.series(4).unwrap(), ints(&[1, 6, 24, 66, 192]));
    }

    #[test]
    fn dual_escher_series() {
        let v = rf(&[6, 6, 6, 6], &[1, 0, -1, -2, -1, 0, 1]);
        assert_eq!(v.series(7).unwrap(), ints(&[6, 6, 12, 24, 30, 54, 84, 132]));
    }

    #[test]
    fn pole_at_origin() {
        assert!(matches!(rf(&[1], &[0, 1]).series(3), Err(PolyError::PoleAtOrigin)));
    }

    #[test]
    fn rational_coefficients_when_den0_is_not_unit() {
        // 1 / (2 - z) = 1/2 + z/4 + z^2/8 + ...
        let s = rf(&[1], &[2, -1]).series(2).unwrap();
        assert_eq!(s[2], BigRational::new(1.into(), 8.into()));
        assert!(matches!(
            rf(&[1], &[2, -1]).integer_series(2),
            Err(PolyError::NonIntegerCoefficient { index: 0 })
        ));
    }

    #[test]
    fn shift_by_z_cubed() {
        let a = rf(&[0, 6], &[1, -1]);
        let c = ratfunc_arith(RatOp::Mul, &RationalFunction::from_poly(Polynomial::monomial(1, 3)), &a)
            .unwrap();
        assert_eq!(c, a.shift(3));
        assert_eq!(c.integer_series(5).unwrap(), [0, 0, 0, 0, 6, 6].map(BigInt::from).to_vec());
    }

    #[test]
    fn json_shape() {
        let r = rf(&[1, 4, 1], &[1, -4, 1]);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":[1,4,1],"den":[1,-4,1]}"#);
        let back: RationalFunction = serde_json::from_str(r#"{"num":[2,2],"den":[2,-2]}"#).unwrap();
        assert_eq!(back, rf(&[1, 1], &[1, -1]));
    }
}
