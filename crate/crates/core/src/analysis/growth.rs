use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::roots::{midpoint, SturmChain};
use super::{zeta_reduce, AnalysisError};
use crate::polyrat::{Polynomial, RationalFunction};

pub const DEFAULT_TOL: f64 = 1e-9;

/// `TESSCENSUS_TOL` if set to a positive number, else [`DEFAULT_TOL`].
pub fn default_tolerance() -> f64 {
    std::env::var("TESSCENSUS_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthKind {
    Finite,
    PolynomialGrowth,
    Exponential,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthAnalysis {
    pub kind: GrowthKind,
    /// Reciprocal of the smallest pole; only for exponential growth.
    pub rate: Option<f64>,
    pub tolerance: f64,
    /// Reduced denominator with positive constant term.
    pub denominator: Polynomial,
    /// Present when the denominator is self-reciprocal of even degree.
    pub zeta_polynomial: Option<Polynomial>,
}

/// Classifies the coefficient growth of `r` and finds the exponential rate.
///
/// Poles in `(0, 1)` are isolated exactly with a Sturm chain and bisected;
/// the smallest one must also be the smallest in modulus, which is checked
/// numerically by counting roots inside a slightly smaller circle.
pub fn growth_rate(r: &RationalFunction, tol: f64) -> Result<GrowthAnalysis, AnalysisError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(AnalysisError::BadTolerance(tol.to_string()));
    }
    let den = if r.den().coeff(0).is_negative() { -r.den() } else { r.den().clone() };
    let zeta_polynomial = match den.degree() {
        Some(d) if d >= 2 && d % 2 == 0 && den.is_self_reciprocal() => Some(zeta_reduce(&den)?),
        _ => None,
    };
    let done = |kind, rate| GrowthAnalysis {
        kind,
        rate,
        tolerance: tol,
        denominator: den.clone(),
        zeta_polynomial: zeta_polynomial.clone(),
    };
    if den.is_constant() {
        return Ok(done(GrowthKind::Finite, None));
    }

    let sturm = SturmChain::new(&den);
    let zero = BigRational::zero();
    let one = BigRational::from_integer(BigInt::from(1));
    let root_at_one = usize::from(den.eval(&BigInt::from(1)).is_zero());
    if sturm.count_in(&zero, &one) > root_at_one {
        // Rate error is about width * rate^2; 2^-20 covers rates up to 1000.
        let width = BigRational::from_float(tol).expect("finite") / BigRational::from_integer(BigInt::from(1 << 20));
        let iv = sturm.smallest_root_in(&zero, &one, &width).expect("root counted");
        let rho = midpoint(&iv);
        if roots_inside(sturm.polynomial(), rho * (1.0 - 1e-6)) > 0 {
            return Err(AnalysisError::NonRealDominantPole);
        }
        return Ok(done(GrowthKind::Exponential, Some(1.0 / rho)));
    }
    if is_cyclotomic_product(&den) {
        return Ok(done(GrowthKind::PolynomialGrowth, None));
    }
    if roots_inside(sturm.polynomial(), 1.0) > 0 {
        return Err(AnalysisError::NonRealDominantPole);
    }
    Err(AnalysisError::UnsupportedPoles)
}

/// True when every root of `p` is a root of unity (`p` divides a product of `z^n - 1`).
fn is_cyclotomic_product(p: &Polynomial) -> bool {
    let mut rest = p.squarefree();
    let d = rest.degree().unwrap_or(0);
    // phi(n) >= sqrt(n / 2), so no cyclotomic factor of degree <= d has n > 2 d^2.
    for n in 1..=(2 * d * d + 2) {
        if rest.is_constant() {
            break;
        }
        let zn1 = &Polynomial::monomial(1, n) - &Polynomial::one();
        let g = rest.gcd(&zn1).expect("nonzero");
        if !g.is_constant() {
            rest = rest.div_exact(&g).expect("gcd divides");
        }
    }
    rest.is_constant()
}

/// Number of roots of `p` with modulus below `radius`, by the argument principle.
fn roots_inside(p: &Polynomial, radius: f64) -> usize {
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let deg = c.len().saturating_sub(1);
    let samples = 4096.max(512 * deg);
    let eval = |theta: f64| {
        let (zr, zi) = (radius * theta.cos(), radius * theta.sin());
        let (mut ar, mut ai) = (0.0f64, 0.0f64);
        for &k in c.iter().rev() {
            let nr = ar * zr - ai * zi + k;
            ai = ar * zi + ai * zr;
            ar = nr;
        }
        ai.atan2(ar)
    };
    let mut total = 0.0;
    let mut prev = eval(0.0);
    for k in 1..=samples {
        let a = eval(2.0 * PI * k as f64 / samples as f64);
        let mut step = a - prev;
        if step > PI {
            step -= 2.0 * PI;
        } else if step < -PI {
            step += 2.0 * PI;
        }
        total += step;
        prev = a;
    }
    let winding = (total / (2.0 * PI)).round();
    if winding > 0.0 {
        winding as usize
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::from_i64s(num, den).unwrap()
    }

    /// 200 halvings of the sign change of the sextic on (0.6, 0.7).
    fn bisection_oracle() -> f64 {
        let f = |z: f64| 1.0 - z.powi(2) - 2.0 * z.powi(3) - z.powi(4) + z.powi(6);
        let (mut a, mut b) = (0.6f64, 0.7f64);
        assert!(f(a) * f(b) < 0.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(a) * f(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        1.0 / (0.5 * (a + b))
    }

    #[test]
    fn escher_dual_rate() {
        let g = growth_rate(&rf(&[6, 6, 6, 6], &[1, 0, -1, -2, -1, 0, 1]), 1e-12).unwrap();
        assert_eq!(g.kind, GrowthKind::Exponential);
        let rate = g.rate.unwrap();
        assert!((rate - 1.58234).abs() < 1e-3);
        assert!((rate - bisection_oracle()).abs() < 1e-10);
        assert_eq!(g.zeta_polynomial, Some(Polynomial::from_i64s(&[-2, -4, 0, 1])));
        let zr = super::super::rate_from_zeta(g.zeta_polynomial.as_ref().unwrap(), 1e-12).unwrap();
        assert!((zr - rate).abs() < 2e-12);
    }

    #[test]
    fn regular_three_eight_rate() {
        let g = growth_rate(&rf(&[1, 4, 1], &[1, -4, 1]), 1e-9).unwrap();
        assert!((g.rate.unwrap() - (2.0 + 3f64.sqrt())).abs() < 1e-9);
        assert_eq!(g.zeta_polynomial, Some(Polynomial::from_i64s(&[-4, 1])));
    }

    #[test]
    fn linear_and_finite() {
        let g = growth_rate(&rf(&[1, 2, 9, -4], &[1, -2, 1]), 1e-9).unwrap();
        assert_eq!(g.kind, GrowthKind::PolynomialGrowth);
        assert_eq!(g.rate, None);
        let g = growth_rate(&rf(&[4, 0, 4], &[1, -1, 0, -1, 1]), 1e-9).unwrap();
        assert_eq!(g.kind, GrowthKind::PolynomialGrowth);
        let g = growth_rate(&rf(&[1, 4, 8, 1], &[1]), 1e-9).unwrap();
        assert_eq!(g.kind, GrowthKind::Finite);
        assert_eq!(g.zeta_polynomial, None);
    }

    #[test]
    fn dominant_negative_or_complex_pole_is_reported() {
        // Pole at -1/3 beats the pole at 1/2.
        let den = &Polynomial::from_i64s(&[1, 3]) * &Polynomial::from_i64s(&[1, -2]);
        let r = RationalFunction::new(Polynomial::one(), den).unwrap();
        assert_eq!(growth_rate(&r, 1e-9), Err(AnalysisError::NonRealDominantPole));
        // 1 + 4 z^2 has poles +-i/2 only.
        assert_eq!(growth_rate(&rf(&[1], &[1, 0, 4]), 1e-9), Err(AnalysisError::NonRealDominantPole));
        // 1 - z/2: coefficients decay.
        assert_eq!(growth_rate(&rf(&[2], &[2, -1]), 1e-9), Err(AnalysisError::UnsupportedPoles));
        assert!(growth_rate(&rf(&[1], &[1, -2]), -1.0).is_err());
    }

    #[test]
    fn double_pole_is_found() {
        let den = &Polynomial::from_i64s(&[1, -3]) * &Polynomial::from_i64s(&[1, -3]);
        let r = RationalFunction::new(Polynomial::one(), den).unwrap();
        let g = growth_rate(&r, 1e-10).unwrap();
        assert!((g.rate.unwrap() - 3.0).abs() < 1e-10);
    }

    #[test]
    fn root_counting() {
        let p = Polynomial::from_i64s(&[1, 0, -1, -2, -1, 0, 1]);
        assert_eq!(roots_inside(&p, 0.5), 0);
        assert_eq!(roots_inside(&p, 0.7), 1);
        assert!(is_cyclotomic_product(&Polynomial::from_i64s(&[1, -1, 0, -1, 1])));
        assert!(!is_cyclotomic_product(&Polynomial::from_i64s(&[1, -4, 1])));
    }
}
