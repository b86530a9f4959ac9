//! Concrete matroids: linear, uniform, graphic, bicircular, partition and
//! `(k,ℓ)`-count matroids, plus matroids induced by shifted sums of ranks.

mod graph;
mod linear;
mod pebble;
mod union;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::setfunc::{dilworth_matroid_rank, SetFunction, Subset, MAX_GROUND};

pub use graph::{DPartiteHypergraph, Graph};
pub use linear::{
    bicircular_representation, graphic_representation, hypergraph_incidence,
    partition_matroid_representation, LinearMatroid, BICIRCULAR_FULL_CHECK, BICIRCULAR_RETRIES,
};
pub use pebble::{
    graphic_bicircular_sum, pebble_game_rank, CountFunction, CountMatroid, PebbleGame,
};
pub use union::TruncatedUnion;

/// A matroid on `{0, …, m−1}` given by a rank oracle on element lists.
///
/// Element lists passed to [`Matroid::rank`] contain no repeats.
pub trait Matroid: Send + Sync {
    fn ground_size(&self) -> usize;

    fn rank(&self, elems: &[usize]) -> usize;

    fn is_independent(&self, elems: &[usize]) -> bool {
        self.rank(elems) == elems.len()
    }

    /// The unique circuit in `indep + y`, or `None` if that set is independent.
    fn circuit(&self, indep: &[usize], y: usize) -> Option<Vec<usize>> {
        let mut with_y = indep.to_vec();
        with_y.push(y);
        if self.is_independent(&with_y) {
            return None;
        }
        let mut circuit: Vec<usize> = (0..indep.len())
            .filter(|&i| {
                with_y.swap(i, indep.len());
                let swapped = self.is_independent(&with_y[..indep.len()]);
                with_y.swap(i, indep.len());
                swapped
            })
            .map(|i| indep[i])
            .collect();
        circuit.push(y);
        Some(circuit)
    }
}

impl<M: Matroid + ?Sized> Matroid for Arc<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self, elems: &[usize]) -> usize {
        (**self).rank(elems)
    }
    fn is_independent(&self, elems: &[usize]) -> bool {
        (**self).is_independent(elems)
    }
    fn circuit(&self, indep: &[usize], y: usize) -> Option<Vec<usize>> {
        (**self).circuit(indep, y)
    }
}

/// A matroid's rank function viewed as a set function.
pub struct MatroidRank<M> {
    matroid: M,
}

impl<M: Matroid> MatroidRank<M> {
    pub fn new(matroid: M) -> Result<Self> {
        let m = matroid.ground_size();
        if m > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(m));
        }
        Ok(MatroidRank { matroid })
    }

    pub fn matroid(&self) -> &M {
        &self.matroid
    }
}

impl<M: Matroid> SetFunction for MatroidRank<M> {
    fn ground_size(&self) -> usize {
        self.matroid.ground_size()
    }

    fn eval(&self, set: Subset) -> i64 {
        self.matroid.rank(&set.elems()) as i64
    }

    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        Some(self.eval(set))
    }
}

/// `U_{k,m}`: every set of size at most `k` is independent.
#[derive(Clone, Copy, Debug)]
pub struct UniformMatroid {
    pub ground: usize,
    pub rank: usize,
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.ground
    }
    fn rank(&self, elems: &[usize]) -> usize {
        elems.len().min(self.rank)
    }
}

/// The matroid induced by a set function, ranked by exhaustive search.
pub struct InducedMatroid {
    f: Arc<dyn SetFunction>,
    cap: usize,
}

impl InducedMatroid {
    pub fn new(f: Arc<dyn SetFunction>, cap: usize) -> Result<Self> {
        let m = f.ground_size();
        if m > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(m));
        }
        Ok(InducedMatroid { f, cap })
    }
}

impl Matroid for InducedMatroid {
    fn ground_size(&self) -> usize {
        self.f.ground_size()
    }
    fn rank(&self, elems: &[usize]) -> usize {
        let set = Subset::from_elems(elems.iter().copied());
        dilworth_matroid_rank(&*self.f, set, self.cap.max(set.len())).expect("elements in range")
            as usize
    }
}
