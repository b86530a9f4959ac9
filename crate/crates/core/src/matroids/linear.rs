use rand::Rng;

use super::{pebble_game_rank, DPartiteHypergraph, Graph, Matroid};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::Matrix;
use crate::setfunc::{SetFunction, Subset};

/// Full subset validation of bicircular representations up to this many edges.
pub const BICIRCULAR_FULL_CHECK: usize = 10;
pub const BICIRCULAR_RETRIES: usize = 8;
const BICIRCULAR_SAMPLES: usize = 200;

/// Row matroid of a matrix: element `e` is row `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatroid {
    rep: Matrix,
}

impl LinearMatroid {
    pub fn new(rep: Matrix) -> Self {
        LinearMatroid { rep }
    }

    pub fn rep(&self) -> &Matrix {
        &self.rep
    }

    pub fn into_rep(self) -> Matrix {
        self.rep
    }

    /// Elements whose row is zero.
    pub fn loops(&self) -> Vec<usize> {
        self.rep.zero_rows()
    }
}

impl Matroid for LinearMatroid {
    fn ground_size(&self) -> usize {
        self.rep.rows()
    }

    fn rank(&self, elems: &[usize]) -> usize {
        self.rep.select_rows(elems).rank()
    }
}

impl SetFunction for LinearMatroid {
    fn ground_size(&self) -> usize {
        self.rep.rows()
    }

    fn eval(&self, set: Subset) -> i64 {
        self.rep.select_rows(&set.elems()).rank() as i64
    }

    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        Some(self.eval(set))
    }
}

/// Oriented incidence matrix: row `e = (u,v)` has `−1` at the tail and `+1`
/// at the head. `flip[e]` swaps head and tail.
pub fn graphic_representation(
    field: PrimeField,
    graph: &Graph,
    flip: Option<&[bool]>,
) -> Result<LinearMatroid> {
    if let Some(flip) = flip {
        if flip.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch {
                context: "orientation length",
                expected: graph.edge_count(),
                found: flip.len(),
            });
        }
    }
    let mut rep = Matrix::zeros(field, graph.edge_count(), graph.vertex_count());
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let (tail, head) = if flip.is_some_and(|f| f[e]) {
            (v, u)
        } else {
            (u, v)
        };
        rep.set(e, tail, field.neg(1));
        rep.set(e, head, 1);
    }
    Ok(LinearMatroid::new(rep))
}

/// Two random nonzero entries per edge row, checked against the `(1,0)`
/// pebble game and resampled on disagreement.
pub fn bicircular_representation<R: Rng + ?Sized>(
    field: PrimeField,
    graph: &Graph,
    rng: &mut R,
) -> Result<LinearMatroid> {
    let m = graph.edge_count();
    for _ in 0..BICIRCULAR_RETRIES {
        let mut rep = Matrix::zeros(field, m, graph.vertex_count());
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            rep.set(e, u, field.random_nonzero(rng));
            rep.set(e, v, field.random_nonzero(rng));
        }
        let lm = LinearMatroid::new(rep);
        let agrees = |edges: &[usize]| {
            lm.rank(edges) == pebble_game_rank(graph, 1, 0, edges).expect("valid parameters")
        };
        let valid = if m <= BICIRCULAR_FULL_CHECK {
            Subset::full(m).subsets().all(|s| agrees(&s.elems()))
        } else {
            agrees(&(0..m).collect::<Vec<_>>())
                && (0..BICIRCULAR_SAMPLES).all(|_| {
                    let edges: Vec<usize> = (0..m).filter(|_| rng.random_bool(0.5)).collect();
                    agrees(&edges)
                })
        };
        if valid {
            return Ok(lm);
        }
    }
    Err(Error::RetriesExhausted {
        what: "generic bicircular representation",
        attempts: BICIRCULAR_RETRIES,
    })
}

/// `|E| × n_class` 0/1 matrix with a 1 where edge `e` meets vertex `j` of the class.
pub fn partition_matroid_representation(
    field: PrimeField,
    h: &DPartiteHypergraph,
    class: usize,
) -> Result<LinearMatroid> {
    let n = *h.class_sizes().get(class).ok_or(Error::IndexOutOfRange {
        index: class,
        size: h.class_count(),
    })?;
    let mut rep = Matrix::zeros(field, h.edge_count(), n);
    for (e, edge) in h.edges().iter().enumerate() {
        rep.set(e, edge[class], 1);
    }
    Ok(LinearMatroid::new(rep))
}

/// The edge-vertex incidence matrix, classes concatenated in order.
pub fn hypergraph_incidence(field: PrimeField, h: &DPartiteHypergraph) -> Result<Matrix> {
    let blocks = (0..h.class_count())
        .map(|i| partition_matroid_representation(field, h, i).map(LinearMatroid::into_rep))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Matrix::hcat(field, h.edge_count(), &refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroids::CountMatroid;
    use crate::rng::seeded;
    use std::sync::Arc;

    #[test]
    fn graphic_examples() {
        let f = PrimeField::default();
        let tri = graphic_representation(f, &Graph::complete(3), None).unwrap();
        assert_eq!(tri.rep().rank(), 2);
        let k4 = Graph::complete(4);
        let flips = [true, false, true, false, false, true];
        let rep = graphic_representation(f, &k4, Some(&flips)).unwrap();
        assert_eq!(rep.rep().rank(), 3);
        assert!(rep.loops().is_empty());
        let graphic = CountMatroid::new(Arc::new(k4.clone()), 1, 1).unwrap();
        for s in Subset::full(6).subsets() {
            assert_eq!(rep.rank(&s.elems()), graphic.rank(&s.elems()));
        }
        assert!(graphic_representation(f, &k4, Some(&[true])).is_err());
    }

    #[test]
    fn bicircular_examples() {
        let f = PrimeField::default();
        let mut rng = seeded(4);
        let single =
            bicircular_representation(f, &Graph::new(3, vec![(0, 2)]).unwrap(), &mut rng).unwrap();
        assert_eq!((single.rep().rows(), single.rep().rank()), (1, 1));
        let tri = bicircular_representation(f, &Graph::complete(3), &mut rng).unwrap();
        assert_eq!(tri.rep().rank(), 3);
        let k5 = bicircular_representation(f, &Graph::complete(5), &mut rng).unwrap();
        assert_eq!(k5.rep().rank(), 5);
        assert!(k5.loops().is_empty());
    }

    #[test]
    fn bicircular_fails_over_tiny_field() {
        // over GF(5) a triangle's 3x3 determinant vanishes too often for
        // eight straight draws to be unlikely, but the error must be clean
        let f = PrimeField::new(5).unwrap();
        let mut rng = seeded(0);
        match bicircular_representation(f, &Graph::complete(4), &mut rng) {
            Ok(rep) => assert_eq!(rep.rep().rank(), 4),
            Err(e) => assert!(matches!(e, Error::RetriesExhausted { .. })),
        }
    }

    #[test]
    fn partition_and_incidence() {
        let f = PrimeField::default();
        let h =
            DPartiteHypergraph::new(vec![2, 3], vec![vec![0, 2], vec![1, 2], vec![1, 0]]).unwrap();
        let p = partition_matroid_representation(f, &h, 1).unwrap();
        assert_eq!((p.rep().rows(), p.rep().cols()), (3, 3));
        for e in 0..3 {
            assert_eq!(p.rep().row(e).iter().sum::<u64>(), 1);
        }
        assert!(partition_matroid_representation(f, &h, 2).is_err());
        let inc = hypergraph_incidence(f, &h).unwrap();
        assert_eq!((inc.rows(), inc.cols()), (3, 5));

        let single = DPartiteHypergraph::new(vec![4], vec![vec![2]]).unwrap();
        let p = partition_matroid_representation(f, &single, 0).unwrap();
        assert_eq!(p.rep().row(0), &[0, 0, 1, 0]);

        let empty = DPartiteHypergraph::new(vec![2, 2], vec![]).unwrap();
        assert_eq!(hypergraph_incidence(f, &empty).unwrap().rows(), 0);
    }
}
