use num_bigint::BigInt;
use num_rational::BigRational;

use super::roots::{midpoint, SturmChain};
use super::AnalysisError;
use crate::polyrat::Polynomial;

/// Rewrites a self-reciprocal `p` of degree `2m` as `q(z + 1/z) z^m`.
///
/// Uses `z^j + z^-j = T_j(zeta)` with `T_0 = 2`, `T_1 = zeta` and
/// `T_{j+1} = zeta T_j - T_{j-1}`.
pub fn zeta_reduce(p: &Polynomial) -> Result<Polynomial, AnalysisError> {
    let Some(deg) = p.degree() else {
        return Err(AnalysisError::NotSelfReciprocal);
    };
    if deg % 2 == 1 || !p.is_self_reciprocal() {
        return Err(AnalysisError::NotSelfReciprocal);
    }
    let m = deg / 2;
    let zeta = Polynomial::z();
    let mut q = Polynomial::constant(p.coeff(m));
    let mut t_prev = Polynomial::constant(2);
    let mut t = zeta.clone();
    for j in 1..=m {
        q = &q + &t.scale(&p.coeff(m + j));
        let t_next = &(&zeta * &t) - &t_prev;
        t_prev = t;
        t = t_next;
    }
    Ok(q)
}

/// Growth rate `zeta/2 + sqrt(zeta^2/4 - 1)` at the largest real root of `q`.
///
/// Fails unless that root satisfies `|zeta| >= 2`, i.e. gives a real `z`.
pub fn rate_from_zeta(q: &Polynomial, tol: f64) -> Result<f64, AnalysisError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(AnalysisError::BadTolerance(tol.to_string()));
    }
    if q.is_constant() {
        return Err(AnalysisError::NoRealZetaRoot);
    }
    let sturm = SturmChain::new(q);
    let bound = sturm.root_bound();
    // Near zeta = 2 the rate moves like sqrt(zeta - 2); isolate far below f64 precision.
    let width = BigRational::new(BigInt::from(1), BigInt::from(1) << 100u32);
    let iv = sturm
        .largest_root_in(&-bound.clone(), &bound, &width)
        .ok_or(AnalysisError::NoRealZetaRoot)?;
    let z = midpoint(&iv);
    if z.abs() < 2.0 - tol {
        return Err(AnalysisError::NoRealZetaRoot);
    }
    let disc = (z * z / 4.0 - 1.0).max(0.0);
    Ok(z / 2.0 + z.signum() * disc.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    /// Checks `q(z + 1/z) z^m = p(z)` by expanding `(1 + z^2)^k z^(m-k)`.
    fn identity_holds(pp: &Polynomial, q: &Polynomial) -> bool {
        let m = pp.degree().unwrap() / 2;
        let base = p(&[1, 0, 1]);
        let mut acc = Polynomial::zero();
        let mut power = Polynomial::one();
        for k in 0..=q.degree().unwrap_or(0) {
            acc = &acc + &power.shift(m - k).scale(&q.coeff(k));
            power = &power * &base;
        }
        &acc == pp
    }

    #[test]
    fn escher_sextic() {
        let d = p(&[1, 0, -1, -2, -1, 0, 1]);
        let q = zeta_reduce(&d).unwrap();
        assert_eq!(q, p(&[-2, -4, 0, 1]));
        assert!(identity_holds(&d, &q));
    }

    #[test]
    fn primal_quartic_and_small_cases() {
        let d = p(&[1, -2, -2, -2, 1]);
        let q = zeta_reduce(&d).unwrap();
        assert_eq!(q, p(&[-4, -2, 1]));
        assert!(identity_holds(&d, &q));
        assert_eq!(zeta_reduce(&p(&[1, 0, 1])).unwrap(), p(&[0, 1]));
        assert_eq!(zeta_reduce(&p(&[1, -2, 1])).unwrap(), p(&[-2, 1]));
        assert_eq!(zeta_reduce(&p(&[7])).unwrap(), p(&[7]));
    }

    #[test]
    fn rejects_non_reciprocal() {
        assert_eq!(zeta_reduce(&p(&[1, -6, -6, -6, 2])), Err(AnalysisError::NotSelfReciprocal));
        assert_eq!(zeta_reduce(&p(&[1, 1])), Err(AnalysisError::NotSelfReciprocal));
        assert_eq!(zeta_reduce(&Polynomial::zero()), Err(AnalysisError::NotSelfReciprocal));
    }

    #[test]
    fn rates() {
        let r = rate_from_zeta(&p(&[-2, -4, 0, 1]), 1e-12).unwrap();
        assert!((r - 1.58234).abs() < 1e-3);
        let golden = 0.5 + 5f64.sqrt() / 2.0;
        let r = rate_from_zeta(&p(&[-4, -2, 1]), 1e-12).unwrap();
        assert!((r - (golden + golden.sqrt())).abs() < 1e-12);
        assert!((r - 2.890).abs() < 5e-4);
        // 2 zeta - 5 has root 5/2, and z + 1/z = 5/2 at z = 2.
        assert!((rate_from_zeta(&p(&[-5, 2]), 1e-12).unwrap() - 2.0).abs() < 1e-12);
        // Euclidean boundary: zeta = 2 gives rate 1.
        assert!((rate_from_zeta(&p(&[-2, 1]), 1e-12).unwrap() - 1.0).abs() < 1e-5);
        assert_eq!(rate_from_zeta(&p(&[1, 0, 1]), 1e-9), Err(AnalysisError::NoRealZetaRoot));
        assert_eq!(rate_from_zeta(&p(&[-1, 1]), 1e-9), Err(AnalysisError::NoRealZetaRoot));
        assert!(rate_from_zeta(&p(&[-5, 2]), 0.0).is_err());
    }
}
