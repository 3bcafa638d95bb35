use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::AnalysisError;
use crate::polyrat::{Polynomial, RationalFunction};

/// Counts `a_n` with `sum a_n z^n = numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recurrence {
    /// Primitive, with positive constant term.
    pub denominator: Polynomial,
    pub numerator: Polynomial,
    /// Order of the linear recurrence found (linear complexity of the data).
    pub order: usize,
    pub fitted_from: usize,
}

impl Recurrence {
    pub fn generating_function(&self) -> RationalFunction {
        RationalFunction::new(self.numerator.clone(), self.denominator.clone())
            .expect("denominator has a nonzero constant term")
    }
}

/// Shortest linear recurrence generating `counts`, by exact Berlekamp-Massey.
///
/// The order `L` is only trusted when at least `2L + 1` terms were given;
/// shorter inputs fail with [`AnalysisError::InsufficientData`]. The
/// returned fraction is reduced and reproduces every input term.
pub fn fit_recurrence(counts: &[BigInt]) -> Result<Recurrence, AnalysisError> {
    let n = counts.len();
    if n == 0 {
        return Err(AnalysisError::InsufficientData { order: 0, points: 0, needed: 1 });
    }
    let s: Vec<BigRational> = counts.iter().cloned().map(BigRational::from_integer).collect();
    let (c, order) = berlekamp_massey(&s);
    let needed = 2 * order + 1;
    if n < needed {
        return Err(AnalysisError::InsufficientData { order, points: n, needed });
    }

    // Clear denominators of the connection polynomial.
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let den = Polynomial::new(c.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
    let den = den.div_scalar_exact(&den.content());
    let series = Polynomial::new(counts.to_vec());
    let num = (&series * &den).truncate(order.max(1));

    let (num, den) = reduce(num, den)?;
    let rec = Recurrence { denominator: den, numerator: num, order, fitted_from: n };
    let check = rec.generating_function().integer_series(n - 1)?;
    debug_assert_eq!(check, counts);
    Ok(rec)
}

/// Removes the common factor and normalises the denominator to be primitive
/// with a positive constant term.
fn reduce(num: Polynomial, den: Polynomial) -> Result<(Polynomial, Polynomial), AnalysisError> {
    let (mut num, mut den) = if num.is_zero() {
        (num, Polynomial::one())
    } else {
        let g = num.gcd(&den)?;
        (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
    };
    let c = den.content();
    let c = if den.coeff(0).is_negative() { -c } else { c };
    if !c.is_one() {
        den = den.div_scalar_exact(&c);
        // The series has integer terms, so the numerator stays integral.
        num = Polynomial::new(num.coeffs().iter().map(|x| x / &c).collect());
    }
    Ok((num, den))
}

/// Connection polynomial `C` (with `C(0) = 1`) and linear complexity.
fn berlekamp_massey(s: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last = BigRational::one();
    for i in 0..s.len() {
        let mut d = s[i].clone();
        for j in 1..=l.min(c.len() - 1) {
            d += &c[j] * &s[i - j];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &last;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (j, bj) in b.iter().enumerate() {
            c[j + m] -= &coef * bj;
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = prev;
            last = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.truncate(l + 1);
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    (c, l)
}

/// Reads integer counts from a list (`6, 6, 12`, `[6 6 12]`, one per line)
/// or from `generation,count` CSV rows. Lines starting with `#` are skipped.
pub fn parse_counts(text: &str) -> Result<Vec<BigInt>, AnalysisError> {
    let kept: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect();
    let joined = kept.join("\n");
    let trimmed = joined.trim();
    let first = trimmed.lines().next().unwrap_or("");
    if first.replace(' ', "").eq_ignore_ascii_case("generation,count") {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(trimmed.as_bytes());
        let mut out = Vec::new();
        for (k, row) in rdr.records().enumerate() {
            let row = row.map_err(|e| AnalysisError::Parse(e.to_string()))?;
            if row.len() != 2 {
                return Err(AnalysisError::Parse(format!("row {k} has {} fields", row.len())));
            }
            let g: usize = row[0]
                .parse()
                .map_err(|_| AnalysisError::Parse(format!("bad generation {:?}", &row[0])))?;
            if g != k {
                return Err(AnalysisError::Parse(format!("generation {g} out of order")));
            }
            out.push(parse_int(&row[1])?);
        }
        return Ok(out);
    }
    let body = trimmed
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(trimmed);
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_int)
        .collect()
}

fn parse_int(tok: &str) -> Result<BigInt, AnalysisError> {
    let t = tok.trim();
    if t.len() > 10_000 {
        return Err(AnalysisError::Parse("integer literal too long".into()));
    }
    t.parse::<BigInt>().map_err(|_| AnalysisError::Parse(format!("bad integer {t:?}")))
}
