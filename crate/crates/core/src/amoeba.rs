//! Amoeba dimension of a linear space, combinatorially from its matroid and
//! numerically from the Jacobian of `V ∗ V̄`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::ConjScalar;
use crate::hadamard::NumericRank;
use crate::matrix::{ConjMatrix, Matrix};
use crate::matroids::{LinearMatroid, MatroidRank};
use crate::setfunc::{dilworth_matroid_rank, DilworthTable, FnSetFunction, SetFunction, Subset};

/// The column space `V` of an `m × n` matrix with conjugate-pair entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjSpaceRep {
    matrix: ConjMatrix,
}

impl ConjSpaceRep {
    /// Rejects matrices with a zero row, since then `V` lies in a coordinate hyperplane.
    pub fn new(matrix: ConjMatrix) -> Result<Self> {
        if let Some(i) = (0..matrix.rows()).find(|&i| matrix.is_zero_row(i)) {
            return Err(Error::Input(format!("space matrix row {i} is zero")));
        }
        Ok(ConjSpaceRep { matrix })
    }

    pub fn matrix(&self) -> &ConjMatrix {
        &self.matrix
    }

    /// Representation of `V̄`.
    pub fn conj(&self) -> ConjSpaceRep {
        ConjSpaceRep {
            matrix: self.matrix.conj(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `M(V)`, represented by the rows of the evaluated matrix.
    pub fn row_matroid(&self) -> LinearMatroid {
        LinearMatroid::new(self.matrix.eval())
    }
}

fn doubled_minus_one(r: &dyn SetFunction) -> impl SetFunction + '_ {
    FnSetFunction::new(r.ground_size(), move |s: Subset| 2 * r.eval(s) - 1)
}

/// `min Σ(2r(Eᵢ) − 1)` over partitions of the ground set, computed as the
/// rank of the matroid induced by `2r − 1`.
pub fn amoeba_dim_combinatorial(r: &dyn SetFunction, cap: usize) -> Result<i64> {
    let m = r.ground_size();
    if let Some(e) = (0..m).find(|&e| r.eval(Subset::singleton(e)) == 0) {
        return Err(Error::InvalidParameter(format!("element {e} is a loop")));
    }
    dilworth_matroid_rank(&doubled_minus_one(r), Subset::full(m), cap)
}

/// The partition minimum taken literally, as a Dilworth truncation.
pub fn amoeba_partition_minimum(r: &dyn SetFunction, cap: usize) -> Result<i64> {
    let m = r.ground_size();
    let table = DilworthTable::truncation(&doubled_minus_one(r), Subset::full(m), cap)?;
    Ok(table.get(Subset::full(m)).unwrap_or(0))
}

pub fn amoeba_dim_of(rep: &ConjSpaceRep, cap: usize) -> Result<i64> {
    amoeba_dim_combinatorial(&MatroidRank::new(rep.row_matroid())?, cap)
}

/// `( Diag(M̄q₂) M | Diag(Mq₁) M̄ )`, evaluated over GF(p).
pub fn conj_jacobian(rep: &ConjSpaceRep, q1: &[ConjScalar], q2: &[ConjScalar]) -> Result<Matrix> {
    let m = &rep.matrix;
    let bar = m.conj();
    let f = *m.field();
    let eval = |v: Vec<ConjScalar>| v.into_iter().map(|z| z.eval(&f)).collect::<Vec<_>>();
    let left_scale = eval(bar.mul_vec(q2)?);
    let right_scale = eval(m.mul_vec(q1)?);
    let left = m.eval().scale_rows(&left_scale)?;
    let right = bar.eval().scale_rows(&right_scale)?;
    Matrix::hcat(f, m.rows(), &[&left, &right])
}

/// Maximum Jacobian rank over `trials` independent random `(q₁, q₂)`.
pub fn amoeba_dim_numeric<R: Rng + ?Sized>(
    rep: &ConjSpaceRep,
    trials: usize,
    rng: &mut R,
) -> Result<NumericRank> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let f = *rep.matrix.field();
    let n = rep.matrix.cols();
    let trials = (0..trials)
        .map(|_| {
            let q1: Vec<ConjScalar> = (0..n).map(|_| ConjScalar::random(&f, rng)).collect();
            let q2: Vec<ConjScalar> = (0..n).map(|_| ConjScalar::random(&f, rng)).collect();
            conj_jacobian(rep, &q1, &q2).map(|d| d.rank())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NumericRank {
        rank: trials.iter().copied().max().unwrap_or(0),
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::matroids::{graphic_representation, Graph};
    use crate::rng::seeded;
    use crate::setfunc::{Cardinality, DEFAULT_CAP};
    use proptest::prelude::*;
    use rand::Rng;

    fn k4_space() -> ConjSpaceRep {
        let f = PrimeField::default();
        let inc = graphic_representation(f, &Graph::complete(4), None).unwrap();
        ConjSpaceRep::new(ConjMatrix::from_real(inc.into_rep())).unwrap()
    }

    #[test]
    fn fixed_values() {
        assert_eq!(
            amoeba_dim_combinatorial(&Cardinality(5), DEFAULT_CAP).unwrap(),
            5
        );
        let line = FnSetFunction::new(4, |s: Subset| i64::from(!s.is_empty()));
        assert_eq!(amoeba_dim_combinatorial(&line, DEFAULT_CAP).unwrap(), 1);
        assert_eq!(amoeba_dim_of(&k4_space(), DEFAULT_CAP).unwrap(), 5);
        let with_loop = FnSetFunction::new(2, |s: Subset| i64::from(s.contains(0)));
        assert!(amoeba_dim_combinatorial(&with_loop, DEFAULT_CAP).is_err());
    }

    #[test]
    fn numeric_fixed_values() {
        let f = PrimeField::default();
        let mut rng = seeded(5);
        let full = ConjSpaceRep::new(ConjMatrix::random(f, 4, 4, &mut rng)).unwrap();
        assert_eq!(amoeba_dim_numeric(&full, 3, &mut rng).unwrap().rank, 4);
        let line = ConjSpaceRep::new(ConjMatrix::random(f, 5, 1, &mut rng)).unwrap();
        assert_eq!(amoeba_dim_numeric(&line, 3, &mut rng).unwrap().rank, 1);
        assert_eq!(
            amoeba_dim_numeric(&k4_space(), 3, &mut rng).unwrap().rank,
            5
        );
    }

    #[test]
    fn jacobian_blocks() {
        let f = PrimeField::default();
        let mut rng = seeded(6);
        let rep = k4_space();
        let q: Vec<ConjScalar> = (0..4)
            .map(|_| ConjScalar::real(f.random(&mut rng)))
            .collect();
        let d = conj_jacobian(&rep, &q, &q).unwrap();
        assert_eq!(d.select_cols(&[0, 1, 2, 3]), d.select_cols(&[4, 5, 6, 7]));
        let single = rep
            .matrix()
            .eval()
            .scale_rows(
                &rep.matrix()
                    .eval()
                    .mul_vec(&q.iter().map(|z| z.eval(&f)).collect::<Vec<_>>())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(d.rank(), single.rank());
        let zero = vec![ConjScalar::default(); 4];
        let d0 = conj_jacobian(&rep, &zero, &q).unwrap();
        assert_eq!(d0.select_cols(&[4, 5, 6, 7]).rank(), 0);
        assert!(conj_jacobian(&rep, &q[..3], &q).is_err());
    }

    #[test]
    fn conjugate_space_agrees() {
        let f = PrimeField::default();
        let mut rng = seeded(7);
        let rep = ConjSpaceRep::new(ConjMatrix::random(f, 5, 2, &mut rng)).unwrap();
        assert_eq!(rep.conj().conj(), rep);
        let a = amoeba_dim_numeric(&rep, 3, &mut rng).unwrap().rank;
        let b = amoeba_dim_numeric(&rep.conj(), 3, &mut rng).unwrap().rank;
        assert_eq!(a, b);
        assert_eq!(a as i64, amoeba_dim_of(&rep.conj(), DEFAULT_CAP).unwrap());
    }

    #[test]
    fn partition_minimum_matches_rank() {
        let rep = k4_space();
        let r = MatroidRank::new(rep.row_matroid()).unwrap();
        assert_eq!(amoeba_partition_minimum(&r, DEFAULT_CAP).unwrap(), 5);
        assert!(ConjSpaceRep::new(ConjMatrix::from_real(Matrix::zeros(
            PrimeField::default(),
            2,
            2
        )))
        .is_err());
    }

    /// Sparse entries, or an integer pattern times a random complex change of basis.
    fn random_space(
        m: usize,
        n: usize,
        structured: bool,
        rng: &mut crate::rng::Rng,
    ) -> ConjSpaceRep {
        let f = PrimeField::default();
        loop {
            let matrix = if structured {
                let pattern = Matrix::from_fn(f, m, n, |_, _| f.reduce(rng.random_range(-1..=1)));
                let basis = ConjMatrix::random(f, n, n, rng);
                ConjMatrix::new(
                    pattern.mul(basis.real_part()).unwrap(),
                    pattern.mul(basis.imag_part()).unwrap(),
                )
                .unwrap()
            } else {
                let mask = Matrix::from_fn(f, m, n, |_, _| u64::from(rng.random_bool(0.6)));
                let dense = ConjMatrix::random(f, m, n, rng);
                ConjMatrix::new(
                    Matrix::from_fn(f, m, n, |i, j| dense.real_part().get(i, j) * mask.get(i, j)),
                    Matrix::from_fn(f, m, n, |i, j| dense.imag_part().get(i, j) * mask.get(i, j)),
                )
                .unwrap()
            };
            if let Ok(rep) = ConjSpaceRep::new(matrix) {
                return rep;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn numeric_matches_combinatorial(m in 1usize..8, n in 1usize..5, structured in any::<bool>(), seed in any::<u64>()) {
            let mut rng = seeded(seed);
            let rep = random_space(m, n, structured, &mut rng);
            let r = MatroidRank::new(rep.row_matroid()).unwrap();
            let comb = amoeba_dim_combinatorial(&r, DEFAULT_CAP).unwrap();
            prop_assert_eq!(comb, amoeba_partition_minimum(&r, DEFAULT_CAP).unwrap());
            prop_assert!(comb <= (m as i64).min(2 * r.eval(Subset::full(m)) - 1));
            prop_assert!(comb >= r.eval(Subset::full(m)));
            prop_assert_eq!(amoeba_dim_numeric(&rep, 3, &mut rng).unwrap().rank as i64, comb);
        }
    }
}
