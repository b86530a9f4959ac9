//! Hadamard products of linear spaces: Jacobians, numeric ranks of their
//! algebraic matroids, combinatorial bounds, and the generic construction.

mod bounds;
mod generic;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::matroids::{LinearMatroid, Matroid};

pub use bounds::{
    all_bracketings, conjecture_value, nested_upper_bound, pair_matroid_rank, BoundMethod,
    Bracketing, RankNode,
};
pub use generic::{generic_dimension, generic_witness};

pub const DEFAULT_TRIALS: usize = 3;

/// A linear space `L ⊆ GF(p)^m` given by an `m × n` matrix of full column rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSpaceRep {
    matrix: Matrix,
    loops: Vec<usize>,
}

impl LinearSpaceRep {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let rank = matrix.rank();
        if rank != matrix.cols() {
            return Err(Error::InvalidParameter(format!(
                "space matrix has {} columns but rank {rank}",
                matrix.cols()
            )));
        }
        let loops = matrix.zero_rows();
        Ok(LinearSpaceRep { matrix, loops })
    }

    /// The column space of any matrix, keeping a column basis.
    pub fn from_spanning(matrix: &Matrix) -> Self {
        let basis = matrix.column_basis();
        let loops = basis.zero_rows();
        LinearSpaceRep {
            matrix: basis,
            loops,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    /// Coordinates on which every vector of the space vanishes.
    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    /// `M(L)`: coordinate `e` is the row `e` of the matrix.
    pub fn row_matroid(&self) -> LinearMatroid {
        LinearMatroid::new(self.matrix.clone())
    }
}

#[derive(Clone, Debug)]
pub struct HadamardInstance {
    factors: Vec<LinearSpaceRep>,
}

impl HadamardInstance {
    pub fn new(factors: Vec<LinearSpaceRep>) -> Result<Self> {
        let m = factors
            .first()
            .ok_or_else(|| Error::InvalidParameter("Hadamard product of no spaces".into()))?
            .ambient_dim();
        for f in &factors {
            if f.ambient_dim() != m {
                return Err(Error::DimensionMismatch {
                    context: "factor ambient dimension",
                    expected: m,
                    found: f.ambient_dim(),
                });
            }
        }
        Ok(HadamardInstance { factors })
    }

    pub fn factors(&self) -> &[LinearSpaceRep] {
        &self.factors
    }

    pub fn d(&self) -> usize {
        self.factors.len()
    }

    pub fn m(&self) -> usize {
        self.factors[0].ambient_dim()
    }

    pub fn field(&self) -> PrimeField {
        *self.factors[0].matrix().field()
    }

    /// Coordinates that are loops of some factor, hence of the product.
    pub fn loops(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| f.loops().iter().copied())
            .collect();
        l.sort_unstable();
        l.dedup();
        l
    }

    /// The instance with every factor restricted to the coordinates `rows`.
    pub fn restrict(&self, rows: &[usize]) -> HadamardInstance {
        HadamardInstance {
            factors: self
                .factors
                .iter()
                .map(|f| LinearSpaceRep::from_spanning(&f.matrix().select_rows(rows)))
                .collect(),
        }
    }

    /// Leaf rank nodes, one linear matroid per factor.
    pub fn rank_nodes(&self) -> Vec<RankNode> {
        self.factors
            .iter()
            .map(|f| RankNode::linear(f.row_matroid()))
            .collect()
    }
}

/// Coordinatewise product of equal-length vectors.
pub fn hadamard_point(field: &PrimeField, vectors: &[Vec<u64>]) -> Result<Vec<u64>> {
    let Some(first) = vectors.first() else {
        return Err(Error::InvalidParameter(
            "Hadamard product of no vectors".into(),
        ));
    };
    let mut out = first.clone();
    for v in &vectors[1..] {
        if v.len() != out.len() {
            return Err(Error::DimensionMismatch {
                context: "Hadamard factor length",
                expected: out.len(),
                found: v.len(),
            });
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = field.mul(*o, x);
        }
    }
    Ok(out)
}

/// Rows `rows` of `( ∏_{j≠1} Diag(Yⱼpⱼ) Y₁ | … | ∏_{j≠d} Diag(Yⱼpⱼ) Y_d )`.
pub fn hadamard_jacobian(
    inst: &HadamardInstance,
    points: &[Vec<u64>],
    rows: &[usize],
) -> Result<Matrix> {
    if points.len() != inst.d() {
        return Err(Error::DimensionMismatch {
            context: "number of points",
            expected: inst.d(),
            found: points.len(),
        });
    }
    let f = inst.field();
    let m = inst.m();
    if let Some(&bad) = rows.iter().find(|&&r| r >= m) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: m,
        });
    }
    let images = inst
        .factors
        .iter()
        .zip(points)
        .map(|(y, p)| y.matrix().mul_vec(p))
        .collect::<Result<Vec<_>>>()?;
    let blocks = (0..inst.d())
        .map(|i| {
            let others: Vec<Vec<u64>> = (0..inst.d())
                .filter(|&j| j != i)
                .map(|j| images[j].clone())
                .collect();
            let scale = if others.is_empty() {
                vec![1; m]
            } else {
                hadamard_point(&f, &others)?
            };
            inst.factors[i]
                .matrix()
                .scale_rows(&scale)
                .map(|b| b.select_rows(rows))
        })
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Matrix::hcat(f, rows.len(), &refs)
}

/// Jacobians at independent random points, one per trial. The row matroid
/// of each is a lower bound for `M(L₁ ∗ … ∗ L_d)`, exact with high probability.
#[derive(Clone, Debug)]
pub struct NumericHadamard {
    jacobians: Vec<Matrix>,
}

impl NumericHadamard {
    pub fn sample<R: Rng + ?Sized>(
        inst: &HadamardInstance,
        trials: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        let f = inst.field();
        let all: Vec<usize> = (0..inst.m()).collect();
        let jacobians = (0..trials)
            .map(|_| {
                let points: Vec<Vec<u64>> = inst
                    .factors
                    .iter()
                    .map(|y| f.random_vector(y.dim(), rng))
                    .collect();
                hadamard_jacobian(inst, &points, &all)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NumericHadamard { jacobians })
    }

    pub fn trial_ranks(&self, elems: &[usize]) -> Vec<usize> {
        self.jacobians
            .iter()
            .map(|j| j.select_rows(elems).rank())
            .collect()
    }

    pub fn jacobians(&self) -> &[Matrix] {
        &self.jacobians
    }
}

impl Matroid for NumericHadamard {
    fn ground_size(&self) -> usize {
        self.jacobians[0].rows()
    }

    fn rank(&self, elems: &[usize]) -> usize {
        self.trial_ranks(elems).into_iter().max().unwrap_or(0)
    }
}

/// Rank of `F` in `M(L₁ ∗ … ∗ L_d)`, amplified over `trials` random points.
pub fn algebraic_matroid_rank_numeric<R: Rng + ?Sized>(
    inst: &HadamardInstance,
    elems: &[usize],
    trials: usize,
    rng: &mut R,
) -> Result<NumericRank> {
    if let Some(&bad) = elems.iter().find(|&&e| e >= inst.m()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: inst.m(),
        });
    }
    let numeric = NumericHadamard::sample(inst, trials, rng)?;
    let trials = numeric.trial_ranks(elems);
    Ok(NumericRank {
        rank: trials.iter().copied().max().unwrap_or(0),
        trials,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericRank {
    pub rank: usize,
    pub trials: Vec<usize>,
}
