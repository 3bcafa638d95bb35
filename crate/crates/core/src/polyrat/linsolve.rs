use super::{PolyError, RationalFunction};

/// Solves `coeffs * x = rhs` exactly over the field of rational functions.
///
/// Plain Gaussian elimination with full pivoting; among the nonzero entries of
/// the remaining submatrix the pivot with the smallest `deg num + deg den` is
/// taken, which keeps intermediate expressions small for the sizes used here.
pub fn solve_linear_system(
    coeffs: &[Vec<RationalFunction>],
    rhs: &[RationalFunction],
) -> Result<Vec<RationalFunction>, PolyError> {
    let k = coeffs.len();
    if rhs.len() != k {
        return Err(PolyError::DimensionMismatch { rows: k, cols: rhs.len() });
    }
    if let Some(row) = coeffs.iter().find(|row| row.len() != k) {
        return Err(PolyError::DimensionMismatch { rows: k, cols: row.len() });
    }

    let mut a: Vec<Vec<RationalFunction>> = coeffs.to_vec();
    let mut b: Vec<RationalFunction> = rhs.to_vec();
    // col_of[j] = original unknown stored in working column j.
    let mut col_of: Vec<usize> = (0..k).collect();

    for step in 0..k {
        let pivot = (step..k)
            .flat_map(|i| (step..k).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| (a[i][j].weight(), i, j));
        let Some((pi, pj)) = pivot else {
            return Err(PolyError::SingularMatrix);
        };
        a.swap(step, pi);
        b.swap(step, pi);
        if pj != step {
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
            col_of.swap(step, pj);
        }

        let inv = a[step][step].recip()?;
        for i in step + 1..k {
            if a[i][step].is_zero() {
                continue;
            }
            let factor = &a[i][step] * &inv;
            for j in step..k {
                let delta = &factor * &a[step][j];
                a[i][j] = &a[i][j] - &delta;
            }
            let delta = &factor * &b[step];
            b[i] = &b[i] - &delta;
        }
    }

    let mut y = vec![RationalFunction::zero(); k];
    for i in (0..k).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..k {
            acc = &acc - &(&a[i][j] * &y[j]);
        }
        y[i] = acc.checked_div(&a[i][i])?;
    }

    let mut x = vec![RationalFunction::zero(); k];
    for (j, v) in y.into_iter().enumerate() {
        x[col_of[j]] = v;
    }
    Ok(x)
}
