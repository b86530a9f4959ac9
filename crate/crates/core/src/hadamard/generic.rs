//! 0/1 witnesses for generic Hadamard products, grown one column at a time.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;

/// `min{m, n₁ + … + n_d − (d−1)}`.
pub fn generic_dimension(dims: &[usize], m: usize) -> Result<usize> {
    check_dims(dims, m)?;
    Ok(m.min(dims.iter().sum::<usize>() + 1 - dims.len()))
}

fn check_dims(dims: &[usize], m: usize) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::InvalidParameter("no factor dimensions".into()));
    }
    if let Some(&n) = dims.iter().find(|&&n| n == 0 || n > m) {
        return Err(Error::InvalidParameter(format!(
            "factor dimension {n} must lie in 1..={m}"
        )));
    }
    Ok(())
}

/// Column index of the single 1 in each row, per factor.
type Factor = Vec<usize>;

fn concat_rows(factors: &[Factor], widths: &[usize]) -> Vec<Vec<BigRational>> {
    let total: usize = widths.iter().sum();
    let m = factors[0].len();
    (0..m)
        .map(|r| {
            let mut row = vec![BigRational::zero(); total];
            let mut offset = 0;
            for (f, &w) in factors.iter().zip(widths) {
                row[offset + f[r]] = BigRational::one();
                offset += w;
            }
            row
        })
        .collect()
}

/// Scanning rows in index order, the first row in the span of the earlier
/// independent rows yields a left-kernel vector supported on a circuit.
fn first_circuit(rows: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let m = rows.len();
    // reduced rows with their combinations of original rows
    let mut basis: Vec<(Vec<BigRational>, Vec<BigRational>, usize)> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        let mut combo = vec![BigRational::zero(); m];
        combo[r] = BigRational::one();
        for (b, bc, pivot) in &basis {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone() / b[*pivot].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &factor * y;
                }
                for (x, y) in combo.iter_mut().zip(bc) {
                    *x -= &factor * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => basis.push((v, combo, p)),
            None => return Some(combo),
        }
    }
    None
}

fn rank_mod_p(factors: &[Factor], widths: &[usize], field: PrimeField) -> usize {
    let rows = concat_rows(factors, widths);
    Matrix::from_fn(field, rows.len(), rows[0].len(), |i, j| {
        u64::from(!rows[i][j].is_zero())
    })
    .rank()
}

/// Matrices `Y₁, …, Y_d` with `Yᵢ` of size `m × nᵢ` and rank `nᵢ`, every row
/// holding a single 1, whose concatenation has rank `min{m, Σnᵢ − (d−1)}`.
pub fn generic_witness(field: PrimeField, dims: &[usize], m: usize) -> Result<Vec<Matrix>> {
    check_dims(dims, m)?;
    let d = dims.len();
    let mut factors: Vec<Factor> = vec![vec![0; m]; d];
    let mut widths = vec![1usize; d];
    for i in 0..d {
        while widths[i] < dims[i] {
            let target = generic_dimension(&widths, m)?;
            let circuit = if target == m {
                None
            } else {
                first_circuit(&concat_rows(&factors, &widths))
            };
            let new_col = widths[i];
            match circuit {
                None => {
                    // fewer columns than rows, so some column holds two 1s
                    let mut seen = vec![None; widths[i]];
                    let s = (0..m)
                        .find(|&r| {
                            let c = factors[i][r];
                            seen[c].replace(r).is_some()
                        })
                        .expect("a column with two nonzero entries");
                    factors[i][s] = new_col;
                }
                Some(alpha) => {
                    let positive: Vec<usize> = (0..m).filter(|&r| alpha[r].is_positive()).collect();
                    let a = positive[0];
                    let c = factors[i][a];
                    debug_assert!((0..m).any(|r| alpha[r].is_negative() && factors[i][r] == c));
                    for &r in &positive {
                        if factors[i][r] == c {
                            factors[i][r] = new_col;
                        }
                    }
                }
            }
            widths[i] += 1;
            debug_assert_eq!(
                rank_mod_p(&factors, &widths, field),
                generic_dimension(&widths, m)?
            );
        }
    }
    Ok(factors
        .iter()
        .zip(&widths)
        .map(|(f, &w)| Matrix::from_fn(field, m, w, |r, c| u64::from(f[r] == c)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(dims: &[usize], m: usize) {
        let f = PrimeField::default();
        let ys = generic_witness(f, dims, m).unwrap();
        for (y, &n) in ys.iter().zip(dims) {
            assert_eq!((y.rows(), y.cols()), (m, n));
            assert_eq!(y.rank(), n);
            for r in 0..m {
                assert_eq!(y.row(r).iter().filter(|&&x| x == 1).count(), 1);
                assert_eq!(y.row(r).iter().filter(|&&x| x != 0).count(), 1);
            }
        }
        let refs: Vec<&Matrix> = ys.iter().collect();
        let cat = Matrix::hcat(f, m, &refs).unwrap();
        assert_eq!(
            cat.rank(),
            generic_dimension(dims, m).unwrap(),
            "{dims:?} m={m}"
        );
    }

    #[test]
    fn fixed_shapes() {
        check(&[1, 1, 1], 5);
        check(&[2, 2], 4);
        check(&[3, 3, 3], 5);
        assert_eq!(generic_dimension(&[1, 1, 1, 1], 6).unwrap(), 1);
        assert_eq!(generic_dimension(&[5, 3], 5).unwrap(), 5);
        assert_eq!(generic_dimension(&[2, 2], 4).unwrap(), 3);
        assert!(generic_witness(PrimeField::default(), &[3], 2).is_err());
        assert!(generic_witness(PrimeField::default(), &[0], 2).is_err());
    }

    #[test]
    fn all_ones_base() {
        let ys = generic_witness(PrimeField::default(), &[1, 1], 3).unwrap();
        for y in ys {
            assert_eq!(y.column(0), vec![1, 1, 1]);
        }
    }

    #[test]
    fn every_small_shape() {
        for m in 1..=6 {
            for d in 1..=3 {
                let mut dims = vec![1; d];
                loop {
                    check(&dims, m);
                    let Some(i) = dims.iter().position(|&n| n < m.min(4)) else {
                        break;
                    };
                    dims[i] += 1;
                    for x in &mut dims[..i] {
                        *x = 1;
                    }
                }
            }
        }
    }
}
