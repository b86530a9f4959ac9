//! Linear subspaces of GF(p)^n, stored by a basis of column vectors.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    /// `ambient × dim`, columns linearly independent.
    basis: Matrix,
}

impl Subspace {
    /// Column span of `m`; dependent columns are dropped.
    pub fn span(m: &Matrix) -> Subspace {
        Subspace {
            basis: m.column_basis(),
        }
    }

    pub fn span_of(field: PrimeField, ambient: usize, vectors: &[Vec<u64>]) -> Result<Subspace> {
        Ok(Subspace::span(&Matrix::from_columns(
            field, ambient, vectors,
        )?))
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, ambient, 0),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
        }
    }

    /// `{x : A x = 0}`.
    pub fn kernel_of(a: &Matrix) -> Result<Subspace> {
        let ker = a.right_kernel();
        Subspace::span_of(*a.field(), a.cols(), &ker)
    }

    /// A uniformly random subspace of codimension `codim`, sampled as the
    /// kernel of a random `codim × ambient` matrix of full row rank.
    pub fn random_of_codim<R: Rng + ?Sized>(
        field: PrimeField,
        ambient: usize,
        codim: usize,
        rng: &mut R,
    ) -> Result<Subspace> {
        if codim > ambient {
            return Err(Error::InvalidParameter(format!(
                "codimension {codim} exceeds ambient dimension {ambient}"
            )));
        }
        for _ in 0..16 {
            let a = Matrix::random(field, codim, ambient, rng);
            if a.rank() == codim {
                return Subspace::kernel_of(&a);
            }
        }
        Err(Error::RetriesExhausted {
            what: "random full-rank constraint matrix",
            attempts: 16,
        })
    }

    pub fn field(&self) -> &PrimeField {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u64>> {
        (0..self.dim()).map(|j| self.basis.column(j)).collect()
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        self.check_vector(v)?;
        let col = Matrix::from_columns(*self.field(), self.ambient_dim(), &[v.to_vec()])?;
        let stacked = Matrix::hcat(*self.field(), self.ambient_dim(), &[&self.basis, &col])?;
        Ok(stacked.rank() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(Subspace::sum(&[self.clone(), other.clone()])?.dim() == other.dim())
    }

    /// `A ∩ B`, from the kernel of `(A | −B)`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = *self.field();
        let n = self.ambient_dim();
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(f, n));
        }
        let neg_b = Matrix::from_fn(f, n, other.dim(), |i, j| f.neg(other.basis.get(i, j)));
        let joint = Matrix::hcat(f, n, &[&self.basis, &neg_b])?;
        let vectors = joint
            .right_kernel()
            .into_iter()
            .map(|k| self.basis.mul_vec(&k[..self.dim()]))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span_of(f, n, &vectors)
    }

    /// Span of the union of a nonempty family.
    pub fn sum(family: &[Subspace]) -> Result<Subspace> {
        let first = family
            .first()
            .ok_or_else(|| Error::InvalidParameter("sum of an empty subspace family".into()))?;
        for s in family {
            first.check_ambient(s)?;
        }
        let blocks: Vec<&Matrix> = family.iter().map(|s| &s.basis).collect();
        let stacked = Matrix::hcat(*first.field(), first.ambient_dim(), &blocks)?;
        Ok(Subspace::span(&stacked))
    }

    /// Dimension of the span of a family without materialising a basis.
    pub fn sum_dim(family: &[&Subspace]) -> usize {
        let Some(first) = family.first() else {
            return 0;
        };
        let blocks: Vec<&Matrix> = family.iter().map(|s| &s.basis).collect();
        Matrix::hcat(*first.field(), first.ambient_dim(), &blocks)
            .map(|m| m.rank())
            .unwrap_or(0)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                context: "subspace ambient dimension",
                expected: self.ambient_dim(),
                found: other.ambient_dim(),
            });
        }
        Ok(())
    }

    fn check_vector(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                context: "vector length",
                expected: self.ambient_dim(),
                found: v.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use proptest::prelude::*;

    fn random_subspace(f: PrimeField, n: usize, d: usize, rng: &mut crate::rng::Rng) -> Subspace {
        Subspace::span(&Matrix::random(f, n, d, rng))
    }

    #[test]
    fn intersection_examples() {
        let f = PrimeField::default();
        let mut rng = seeded(11);
        let a = random_subspace(f, 4, 2, &mut rng);
        let same = a.intersect(&a).unwrap();
        assert_eq!(same.dim(), 2);
        assert!(same.is_subspace_of(&a).unwrap() && a.is_subspace_of(&same).unwrap());

        let line = random_subspace(f, 4, 1, &mut rng);
        let h = Subspace::random_of_codim(f, 4, 1, &mut rng).unwrap();
        assert_eq!(h.dim(), 3);
        assert_eq!(line.intersect(&h).unwrap().dim(), 0);

        let plane = random_subspace(f, 4, 2, &mut rng);
        let meet = plane.intersect(&h).unwrap();
        assert_eq!(meet.dim(), 1);
        for v in meet.basis_vectors() {
            assert!(plane.contains(&v).unwrap());
            assert!(h.contains(&v).unwrap());
        }
    }

    #[test]
    fn sum_examples() {
        let f = PrimeField::default();
        let e1 = Subspace::span_of(f, 2, &[vec![1, 0]]).unwrap();
        let e2 = Subspace::span_of(f, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(Subspace::sum(std::slice::from_ref(&e1)).unwrap(), e1);
        assert_eq!(Subspace::sum(&[e1.clone(), e2]).unwrap().dim(), 2);

        let mut rng = seeded(5);
        let lines: Vec<Subspace> = (0..3).map(|_| random_subspace(f, 2, 1, &mut rng)).collect();
        assert_eq!(Subspace::sum(&lines).unwrap().dim(), 2);
        assert!(Subspace::sum(&[]).is_err());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = PrimeField::default();
        let a = Subspace::full(f, 2);
        let b = Subspace::full(f, 3);
        assert!(matches!(
            a.intersect(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Subspace::sum(&[a, b]).is_err());
    }

    proptest! {
        #[test]
        fn modular_dimension_law(n in 1usize..6, da in 0usize..5, db in 0usize..5, shared in 0usize..3, seed in any::<u64>()) {
            let f = PrimeField::new(13).unwrap();
            let mut rng = seeded(seed);
            // force overlaps with a common random block
            let common = Matrix::random(f, n, shared, &mut rng);
            let a = Subspace::span(&Matrix::hcat(f, n, &[&common, &Matrix::random(f, n, da, &mut rng)]).unwrap());
            let b = Subspace::span(&Matrix::hcat(f, n, &[&common, &Matrix::random(f, n, db, &mut rng)]).unwrap());
            let meet = a.intersect(&b).unwrap();
            let join = Subspace::sum(&[a.clone(), b.clone()]).unwrap();
            prop_assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
        }
    }
}
