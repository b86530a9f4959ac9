//! Integer-valued set functions on a finite ground set `{0, …, m−1}`.
//!
//! The [`SetFunction`] trait is the common currency: rank functions of
//! matroids, count functions `c_{k,ℓ}`, and shifted sums such as
//! `r₁ + r₂ − 1` all implement it. [`dilworth`] turns any of them into the
//! Dilworth truncation `f^D` and the induced matroid rank `f^MD`.

pub mod dilworth;
pub mod partition;
mod subset;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::Rng;

use crate::error::{Error, Result};

pub use dilworth::{
    dilworth_matroid_rank, dilworth_matroid_rank_exhaustive, dilworth_truncation,
    dilworth_truncation_witness, induced_independent, induced_independent_exhaustive, induced_rank,
    DilworthRank, DilworthTable, DEFAULT_CAP,
};
pub use partition::{enumerate_partitions, Partition, Partitions};
pub(crate) use subset::LocalIndex;
pub use subset::{Subset, MAX_GROUND};

pub trait SetFunction: Send + Sync {
    fn ground_size(&self) -> usize;

    fn eval(&self, set: Subset) -> i64;

    /// Exact rank of `set` in the matroid induced by this function, for
    /// functions that know a faster route than enumeration.
    fn induced_rank_hint(&self, _set: Subset) -> Option<i64> {
        None
    }
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn eval(&self, set: Subset) -> i64 {
        (**self).eval(set)
    }
    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        (**self).induced_rank_hint(set)
    }
}

impl<F: SetFunction + ?Sized> SetFunction for Box<F> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn eval(&self, set: Subset) -> i64 {
        (**self).eval(set)
    }
    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        (**self).induced_rank_hint(set)
    }
}

impl<F: SetFunction + ?Sized> SetFunction for Arc<F> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn eval(&self, set: Subset) -> i64 {
        (**self).eval(set)
    }
    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        (**self).induced_rank_hint(set)
    }
}

/// `|F|`, the rank function of the free matroid.
#[derive(Clone, Copy, Debug)]
pub struct Cardinality(pub usize);

impl SetFunction for Cardinality {
    fn ground_size(&self) -> usize {
        self.0
    }
    fn eval(&self, set: Subset) -> i64 {
        set.len() as i64
    }
    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        Some(set.len() as i64)
    }
}

pub struct FnSetFunction<F> {
    ground: usize,
    f: F,
}

impl<F: Fn(Subset) -> i64 + Send + Sync> FnSetFunction<F> {
    pub fn new(ground: usize, f: F) -> Self {
        FnSetFunction { ground, f }
    }
}

impl<F: Fn(Subset) -> i64 + Send + Sync> SetFunction for FnSetFunction<F> {
    fn ground_size(&self) -> usize {
        self.ground
    }
    fn eval(&self, set: Subset) -> i64 {
        (self.f)(set)
    }
}

/// Explicit value table indexed by bitmask.
#[derive(Clone, Debug)]
pub struct TableFunction {
    ground: usize,
    values: Vec<i64>,
}

impl TableFunction {
    pub const MAX_GROUND: usize = 20;

    pub fn new(ground: usize, values: Vec<i64>) -> Result<Self> {
        if ground > Self::MAX_GROUND {
            return Err(Error::GroundSetTooLarge(ground));
        }
        if values.len() != 1 << ground {
            return Err(Error::DimensionMismatch {
                context: "table length",
                expected: 1 << ground,
                found: values.len(),
            });
        }
        Ok(TableFunction { ground, values })
    }

    /// From `(bitmask, value)` pairs; every mask of the ground set must appear.
    pub fn from_pairs(ground: usize, pairs: &[(u64, i64)]) -> Result<Self> {
        if ground > Self::MAX_GROUND {
            return Err(Error::GroundSetTooLarge(ground));
        }
        let mut values = vec![None; 1 << ground];
        for &(mask, v) in pairs {
            let slot = values.get_mut(mask as usize).ok_or_else(|| {
                Error::Input(format!("values: mask {mask} outside the ground set"))
            })?;
            *slot = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(mask, v)| v.ok_or_else(|| Error::Input(format!("values: missing mask {mask}"))))
            .collect::<Result<Vec<_>>>()?;
        TableFunction::new(ground, values)
    }

    pub fn tabulate(f: &dyn SetFunction) -> Result<Self> {
        let m = f.ground_size();
        if m > Self::MAX_GROUND {
            return Err(Error::GroundSetTooLarge(m));
        }
        let values = (0..1u64 << m).map(|b| f.eval(Subset(b))).collect();
        TableFunction::new(m, values)
    }
}

impl SetFunction for TableFunction {
    fn ground_size(&self) -> usize {
        self.ground
    }
    fn eval(&self, set: Subset) -> i64 {
        self.values[set.bits() as usize]
    }
}

/// `Σ wᵢ fᵢ − shift`, with the shift applied on every set including `∅`.
#[derive(Clone)]
pub struct ShiftedSum {
    ground: usize,
    terms: Vec<(i64, Arc<dyn SetFunction>)>,
    shift: i64,
}

impl ShiftedSum {
    pub fn new(terms: Vec<(i64, Arc<dyn SetFunction>)>, shift: i64) -> Result<Self> {
        let ground = terms.first().map_or(0, |(_, f)| f.ground_size());
        for (_, f) in &terms {
            if f.ground_size() != ground {
                return Err(Error::DimensionMismatch {
                    context: "shifted-sum ground sets",
                    expected: ground,
                    found: f.ground_size(),
                });
            }
        }
        Ok(ShiftedSum {
            ground,
            terms,
            shift,
        })
    }

    /// `f₁ + … + f_d − shift` with unit weights.
    pub fn unit(terms: Vec<Arc<dyn SetFunction>>, shift: i64) -> Result<Self> {
        ShiftedSum::new(terms.into_iter().map(|f| (1, f)).collect(), shift)
    }
}

impl SetFunction for ShiftedSum {
    fn ground_size(&self) -> usize {
        self.ground
    }
    fn eval(&self, set: Subset) -> i64 {
        self.terms.iter().map(|(w, f)| w * f.eval(set)).sum::<i64>() - self.shift
    }
}

/// Which structural properties a caller asserts for an oracle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Claims {
    pub monotone: bool,
    pub submodular: bool,
}

/// Memoizing wrapper around a set function, safe to share across threads.
pub struct SetFunctionOracle {
    inner: Arc<dyn SetFunction>,
    memo: RwLock<HashMap<u64, i64>>,
    claims: Claims,
}

impl SetFunctionOracle {
    pub const DEFAULT_SPOT_CHECKS: usize = 200;

    pub fn new(inner: Arc<dyn SetFunction>) -> Self {
        SetFunctionOracle {
            inner,
            memo: RwLock::new(HashMap::new()),
            claims: Claims::default(),
        }
    }

    /// Records the claims after randomized spot checks of each one.
    pub fn with_claims<R: Rng + ?Sized>(
        inner: Arc<dyn SetFunction>,
        claims: Claims,
        samples: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if claims.monotone {
            check_monotone(&*inner, samples, rng)?;
        }
        if claims.submodular {
            check_submodular(&*inner, samples, rng)?;
        }
        let mut oracle = SetFunctionOracle::new(inner);
        oracle.claims = claims;
        Ok(oracle)
    }

    pub fn claims(&self) -> Claims {
        self.claims
    }

    pub fn cached_entries(&self) -> usize {
        self.memo.read().map(|m| m.len()).unwrap_or(0)
    }
}

impl SetFunction for SetFunctionOracle {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval(&self, set: Subset) -> i64 {
        if let Some(&v) = self
            .memo
            .read()
            .ok()
            .and_then(|m| m.get(&set.bits()).copied())
            .as_ref()
        {
            return v;
        }
        let v = self.inner.eval(set);
        if let Ok(mut m) = self.memo.write() {
            m.insert(set.bits(), v);
        }
        v
    }

    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        self.inner.induced_rank_hint(set)
    }
}

fn random_subset<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Subset {
    let bits: u64 = rng.random();
    Subset(bits & Subset::full(m).bits())
}

/// Samples pairs `X, Y` and checks `f(X) + f(Y) ≥ f(X∪Y) + f(X∩Y)`.
pub fn check_submodular<R: Rng + ?Sized>(
    f: &dyn SetFunction,
    samples: usize,
    rng: &mut R,
) -> Result<()> {
    let m = f.ground_size();
    for _ in 0..samples {
        let (x, y) = (random_subset(m, rng), random_subset(m, rng));
        if f.eval(x) + f.eval(y) < f.eval(x.union(y)) + f.eval(x.intersection(y)) {
            return Err(Error::NotSubmodular {
                x: x.bits(),
                y: y.bits(),
            });
        }
    }
    Ok(())
}

/// Samples nested pairs `X ⊆ Y` and checks `f(X) ≤ f(Y)`.
pub fn check_monotone<R: Rng + ?Sized>(
    f: &dyn SetFunction,
    samples: usize,
    rng: &mut R,
) -> Result<()> {
    let m = f.ground_size();
    for _ in 0..samples {
        let y = random_subset(m, rng);
        let x = y.intersection(random_subset(m, rng));
        if f.eval(x) > f.eval(y) {
            return Err(Error::NotMonotone {
                smaller: x.bits(),
                larger: y.bits(),
            });
        }
    }
    Ok(())
}
