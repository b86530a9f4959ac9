//! Dilworth truncation `f^D`, the induced matroid rank `f^MD`, and
//! independence in induced matroids.
//!
//! Minimizations over partitions run as a subset dynamic program: the block
//! containing the lowest element is chosen first, so every partition is
//! visited once and the table for all subsets of `F` costs `O(3^|F|)`.

use std::sync::Arc;

use super::{LocalIndex, Partition, SetFunction, Subset};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 12;

fn check_set(f: &dyn SetFunction, set: Subset) -> Result<()> {
    let m = f.ground_size();
    if let Some(e) = set.difference(Subset::full(m.min(64))).lowest() {
        return Err(Error::IndexOutOfRange { index: e, size: m });
    }
    Ok(())
}

fn check_cap(set: Subset, cap: usize) -> Result<()> {
    if set.len() > cap {
        return Err(Error::CapExceeded {
            size: set.len(),
            cap,
        });
    }
    Ok(())
}

/// `f^D` (or `min(f, |·|)^D` when `clamp`) on every subset of a set.
pub struct DilworthTable {
    index: LocalIndex,
    values: Vec<i64>,
    /// Local mask of the block holding the lowest element in an optimal partition.
    choice: Vec<usize>,
    clamp: bool,
    block_values: Vec<i64>,
}

impl DilworthTable {
    pub fn truncation(f: &dyn SetFunction, set: Subset, cap: usize) -> Result<Self> {
        DilworthTable::build(f, set, cap, false)
    }

    /// Table of `f^MD`, the rank function of the matroid induced by `f`.
    pub fn matroid_rank(f: &dyn SetFunction, set: Subset, cap: usize) -> Result<Self> {
        DilworthTable::build(f, set, cap, true)
    }

    fn build(f: &dyn SetFunction, set: Subset, cap: usize, clamp: bool) -> Result<Self> {
        check_set(f, set)?;
        check_cap(set, cap)?;
        let index = LocalIndex::new(set);
        let n = index.global.len();
        let mut block_values = vec![0i64; n];
        for mask in 1..n {
            let g = index.global[mask];
            let v = f.eval(g);
            block_values[mask] = if clamp { v.min(g.len() as i64) } else { v };
        }
        let mut values = vec![0i64; n];
        let mut choice = vec![0usize; n];
        for mask in 1..n {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            let mut best = i64::MAX;
            let mut best_block = mask;
            let mut sub = rest;
            loop {
                let block = sub | low;
                let v = block_values[block] + values[mask ^ block];
                if v < best {
                    best = v;
                    best_block = block;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            values[mask] = best;
            choice[mask] = best_block;
        }
        Ok(DilworthTable {
            index,
            values,
            choice,
            clamp,
            block_values,
        })
    }

    /// Value on `s`, or `None` when `s` is not inside the tabulated set.
    pub fn get(&self, s: Subset) -> Option<i64> {
        let mask = self.local(s)?;
        Some(self.values[mask])
    }

    /// An optimal partition of `s`. For a rank table, blocks whose clamped
    /// value is their size are split into singletons.
    pub fn witness(&self, s: Subset) -> Option<Partition> {
        let mut mask = self.local(s)?;
        let mut blocks = Vec::new();
        while mask != 0 {
            let b = self.choice[mask];
            let g = self.index.global[b];
            if self.clamp && self.block_values[b] == g.len() as i64 && g.len() > 1 {
                blocks.extend(g.iter().map(Subset::singleton));
            } else {
                blocks.push(g);
            }
            mask ^= b;
        }
        Some(Partition::from_blocks_unchecked(blocks))
    }

    /// The set whose subsets are tabulated.
    pub fn support(&self) -> Subset {
        *self.index.global.last().unwrap_or(&Subset::EMPTY)
    }

    fn local(&self, s: Subset) -> Option<usize> {
        s.is_subset_of(self.support()).then(|| self.index.local(s))
    }
}

/// `f^D(F)`: the minimum of `Σ f(Fᵢ)` over partitions of `F` into nonempty
/// blocks, and `0` on `∅`.
pub fn dilworth_truncation(f: &dyn SetFunction, set: Subset, cap: usize) -> Result<i64> {
    dilworth_truncation_witness(f, set, cap).map(|(v, _)| v)
}

pub fn dilworth_truncation_witness(
    f: &dyn SetFunction,
    set: Subset,
    cap: usize,
) -> Result<(i64, Partition)> {
    let table = DilworthTable::truncation(f, set, cap)?;
    let v = table.values[table.values.len() - 1];
    let w = table.witness(set).expect("set is tabulated");
    Ok((v, w))
}

/// `f^MD(F)`: the minimum of `|F₀| + Σ f(Fᵢ)` over `F₀ ⊆ F` and partitions
/// of `F ∖ F₀`. Uses [`SetFunction::induced_rank_hint`] when available.
pub fn dilworth_matroid_rank(f: &dyn SetFunction, set: Subset, cap: usize) -> Result<i64> {
    check_set(f, set)?;
    if let Some(r) = f.induced_rank_hint(set) {
        return Ok(r);
    }
    dilworth_matroid_rank_exhaustive(f, set, cap)
}

/// [`dilworth_matroid_rank`] without the fast path.
pub fn dilworth_matroid_rank_exhaustive(
    f: &dyn SetFunction,
    set: Subset,
    cap: usize,
) -> Result<i64> {
    let table = DilworthTable::matroid_rank(f, set, cap)?;
    Ok(table.values[table.values.len() - 1])
}

/// `min{|F ∖ I| + f(I) : I ⊆ F}`.
pub fn induced_rank(f: &dyn SetFunction, set: Subset, cap: usize) -> Result<i64> {
    check_set(f, set)?;
    check_cap(set, cap)?;
    let n = set.len() as i64;
    Ok(set
        .subsets()
        .map(|i| n - i.len() as i64 + f.eval(i))
        .min()
        .unwrap_or(0))
}

/// Whether `|I| ≤ f(I)` for every nonempty `I ⊆ F`.
pub fn induced_independent(f: &dyn SetFunction, set: Subset, cap: usize) -> Result<bool> {
    check_set(f, set)?;
    if let Some(r) = f.induced_rank_hint(set) {
        return Ok(r == set.len() as i64);
    }
    induced_independent_exhaustive(f, set, cap)
}

pub fn induced_independent_exhaustive(
    f: &dyn SetFunction,
    set: Subset,
    cap: usize,
) -> Result<bool> {
    check_set(f, set)?;
    check_cap(set, cap)?;
    Ok(set
        .subsets()
        .filter(|i| !i.is_empty())
        .all(|i| i.len() as i64 <= f.eval(i)))
}

/// The rank function `f^MD` as a set function in its own right.
pub struct DilworthRank {
    inner: Arc<dyn SetFunction>,
    cap: usize,
}

impl DilworthRank {
    /// Fails when the ground set exceeds `cap` and `f` offers no fast path.
    pub fn new(inner: Arc<dyn SetFunction>, cap: usize) -> Result<Self> {
        let m = inner.ground_size();
        if m > cap && inner.induced_rank_hint(Subset::full(m)).is_none() {
            return Err(Error::CapExceeded { size: m, cap });
        }
        Ok(DilworthRank { inner, cap })
    }
}

impl SetFunction for DilworthRank {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval(&self, set: Subset) -> i64 {
        dilworth_matroid_rank(&*self.inner, set, self.cap.max(set.len()))
            .expect("ground set validated at construction")
    }

    fn induced_rank_hint(&self, set: Subset) -> Option<i64> {
        Some(self.eval(set))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use crate::setfunc::{enumerate_partitions, Cardinality, FnSetFunction, TableFunction};
    use proptest::prelude::*;
    use rand::Rng;

    /// Literal Eq. (2)-style minimization by enumerating every partition.
    fn truncation_by_partitions(f: &dyn SetFunction, set: Subset) -> i64 {
        if set.is_empty() {
            return 0;
        }
        enumerate_partitions(set, 12)
            .unwrap()
            .map(|p| p.blocks().iter().map(|b| f.eval(*b)).sum::<i64>())
            .min()
            .unwrap()
    }

    /// Minimum of `|F₀| + Σ f(Fᵢ)` by enumerating `F₀` and partitions of the rest.
    fn matroid_rank_by_partitions(f: &dyn SetFunction, set: Subset) -> i64 {
        set.subsets()
            .map(|f0| f0.len() as i64 + truncation_by_partitions(f, set.difference(f0)))
            .min()
            .unwrap()
    }

    fn max_independent(f: &dyn SetFunction, set: Subset) -> i64 {
        set.subsets()
            .filter(|i| induced_independent_exhaustive(f, *i, 12).unwrap())
            .map(|i| i.len() as i64)
            .max()
            .unwrap()
    }

    /// Vertex count of an edge subset, for count functions on small graphs.
    fn vertex_count(edges: &[(usize, usize)], s: Subset) -> i64 {
        let vs = s
            .iter()
            .fold(0u64, |acc, e| acc | 1 << edges[e].0 | 1 << edges[e].1);
        vs.count_ones() as i64
    }

    fn k4() -> Vec<(usize, usize)> {
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    }

    /// Graphic rank by union-find.
    fn forest_rank(edges: &[(usize, usize)], s: Subset) -> i64 {
        let mut parent: Vec<usize> = (0..16).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut r = 0;
        for e in s.iter() {
            let (a, b) = (find(&mut parent, edges[e].0), find(&mut parent, edges[e].1));
            if a != b {
                parent[a] = b;
                r += 1;
            }
        }
        r
    }

    #[test]
    fn triangle_truncation() {
        let tri = [(0, 1), (1, 2), (0, 2)];
        let c11 = FnSetFunction::new(3, move |s: Subset| {
            if s.is_empty() {
                0
            } else {
                vertex_count(&tri, s) - 1
            }
        });
        assert_eq!(dilworth_truncation(&c11, Subset::full(3), 12).unwrap(), 2);
        assert_eq!(truncation_by_partitions(&c11, Subset::full(3)), 2);
        assert_eq!(dilworth_truncation(&c11, Subset::EMPTY, 12).unwrap(), 0);
    }

    #[test]
    fn submodular_truncation_is_trivial() {
        let card = Cardinality(5);
        for s in Subset::full(5).subsets() {
            assert_eq!(dilworth_truncation(&card, s, 12).unwrap(), s.len() as i64);
        }
    }

    #[test]
    fn induced_rank_examples() {
        let card = Cardinality(4);
        assert_eq!(induced_rank(&card, Subset::full(4), 12).unwrap(), 4);
        let zero = FnSetFunction::new(4, |_| 0);
        assert_eq!(induced_rank(&zero, Subset::full(4), 12).unwrap(), 0);

        let edges = k4();
        let c11 = FnSetFunction::new(6, move |s: Subset| {
            if s.is_empty() {
                0
            } else {
                vertex_count(&edges, s) - 1
            }
        });
        let graphic =
            TableFunction::tabulate(&DilworthRank::new(Arc::new(c11), 12).unwrap()).unwrap();
        assert_eq!(induced_rank(&graphic, Subset::full(6), 12).unwrap(), 3);
        assert_eq!(
            graphic.eval(Subset::full(6)),
            forest_rank(&k4(), Subset::full(6))
        );
    }

    #[test]
    fn k4_rank_two_graphic_minus_one() {
        let edges = k4();
        let f = FnSetFunction::new(6, move |s: Subset| 2 * forest_rank(&edges, s) - 1);
        assert_eq!(dilworth_matroid_rank(&f, Subset::full(6), 12).unwrap(), 5);
        assert_eq!(matroid_rank_by_partitions(&f, Subset::full(6)), 5);
        assert_eq!(dilworth_matroid_rank(&f, Subset::EMPTY, 12).unwrap(), 0);
    }

    #[test]
    fn k4_is_dependent_for_c23() {
        let edges = k4();
        let c23 = FnSetFunction::new(6, move |s: Subset| {
            if s.is_empty() {
                0
            } else {
                2 * vertex_count(&edges, s) - 3
            }
        });
        assert!(!induced_independent(&c23, Subset::full(6), 12).unwrap());
        assert!(induced_independent(&c23, Subset::EMPTY, 12).unwrap());
        assert!(induced_independent(&c23, Subset::full(5), 12).unwrap());
    }

    #[test]
    fn gadget_count() {
        // K6 minus the edge {4,5}
        let mut edges = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                if (a, b) != (4, 5) {
                    edges.push((a, b));
                }
            }
        }
        assert_eq!(edges.len(), 14);
        let e = edges.clone();
        let c34 = FnSetFunction::new(14, move |s: Subset| {
            if s.is_empty() {
                0
            } else {
                3 * vertex_count(&e, s) - 4
            }
        });
        assert_eq!(c34.eval(Subset::full(14)), 14);
        assert_eq!(
            dilworth_matroid_rank(&c34, Subset::full(14), 14).unwrap(),
            14
        );
    }

    #[test]
    fn witness_realizes_value() {
        let tri = [(0, 1), (1, 2), (0, 2), (2, 3)];
        let c23 = FnSetFunction::new(4, move |s: Subset| {
            if s.is_empty() {
                0
            } else {
                2 * vertex_count(&tri, s) - 3
            }
        });
        let table = DilworthTable::matroid_rank(&c23, Subset::full(4), 12).unwrap();
        for s in Subset::full(4).subsets() {
            let w = table.witness(s).unwrap();
            assert!(Partition::new(w.blocks().to_vec(), s).is_ok());
            let cost: i64 = w
                .blocks()
                .iter()
                .map(|b| c23.eval(*b).min(b.len() as i64))
                .sum();
            assert_eq!(cost, table.get(s).unwrap());
        }
        assert!(table.get(Subset::singleton(9)).is_none());
    }

    #[test]
    fn cap_and_range_errors() {
        let card = Cardinality(20);
        assert!(matches!(
            dilworth_truncation(&card, Subset::full(13), 12),
            Err(Error::CapExceeded { size: 13, cap: 12 })
        ));
        assert!(matches!(
            dilworth_truncation(&Cardinality(3), Subset::singleton(5), 12),
            Err(Error::IndexOutOfRange { index: 5, size: 3 })
        ));
        // the fast path ignores the cap
        assert_eq!(
            dilworth_matroid_rank(&card, Subset::full(20), 12).unwrap(),
            20
        );
    }

    /// Rank of a random polymatroid built from small integer vectors.
    fn random_linear_rank(m: usize, dim: usize, seed: u64) -> TableFunction {
        let f = crate::field::PrimeField::new(13).unwrap();
        let mut rng = seeded(seed);
        let rows: Vec<Vec<u64>> = (0..m)
            .map(|_| {
                let mut row: Vec<u64> = (0..dim)
                    .map(|_| {
                        if rng.random_bool(0.5) {
                            rng.random_range(0..13)
                        } else {
                            0
                        }
                    })
                    .collect();
                if row.iter().all(|&x| x == 0) {
                    row[rng.random_range(0..dim)] = 1;
                }
                row
            })
            .collect();
        let g = FnSetFunction::new(m, move |s: Subset| {
            let sel: Vec<Vec<u64>> = s.iter().map(|e| rows[e].clone()).collect();
            crate::matrix::Matrix::from_columns(f, dim, &sel)
                .unwrap()
                .rank() as i64
        });
        TableFunction::tabulate(&g).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn dp_matches_partition_enumeration(m in 1usize..7, shift in 0i64..3, seed in any::<u64>()) {
            let r = random_linear_rank(m, 3, seed);
            let f = FnSetFunction::new(m, |s: Subset| 2 * r.eval(s) - shift);
            for s in Subset::full(m).subsets() {
                prop_assert_eq!(dilworth_truncation(&f, s, 12).unwrap(), truncation_by_partitions(&f, s));
                prop_assert_eq!(dilworth_matroid_rank(&f, s, 12).unwrap(), matroid_rank_by_partitions(&f, s));
            }
        }

        #[test]
        fn matroid_rank_axioms(m in 1usize..8, shift in 0i64..3, seed in any::<u64>()) {
            let r = random_linear_rank(m, 3, seed);
            let f = FnSetFunction::new(m, |s: Subset| 2 * r.eval(s) - shift);
            let rank = DilworthTable::matroid_rank(&f, Subset::full(m), 12).unwrap();
            let full = Subset::full(m);
            for x in full.subsets() {
                let rx = rank.get(x).unwrap();
                prop_assert!(rx >= 0 && rx <= x.len() as i64);
                if !x.is_empty() {
                    prop_assert!(rx <= f.eval(x).max(0));
                }
                for e in full.difference(x).iter() {
                    let d = rank.get(x.with(e)).unwrap() - rx;
                    prop_assert!(d == 0 || d == 1);
                }
            }
            let mut rng = seeded(seed ^ 1);
            for _ in 0..50 {
                let x = Subset(rng.random::<u64>() & full.bits());
                let y = Subset(rng.random::<u64>() & full.bits());
                prop_assert!(rank.get(x).unwrap() + rank.get(y).unwrap()
                    >= rank.get(x.union(y)).unwrap() + rank.get(x.intersection(y)).unwrap());
            }
        }

        #[test]
        fn rank_is_largest_independent_set(m in 1usize..8, shift in 0i64..3, seed in any::<u64>()) {
            let r = random_linear_rank(m, 3, seed);
            let f = FnSetFunction::new(m, |s: Subset| 2 * r.eval(s) - shift);
            for s in Subset::full(m).subsets() {
                prop_assert_eq!(dilworth_matroid_rank(&f, s, 12).unwrap(), max_independent(&f, s));
            }
        }

        #[test]
        fn md_sum_refines_plain_sum(m in 1usize..7, k in 1usize..4, l in 0i64..4, seed in any::<u64>()) {
            let fs: Vec<TableFunction> = (0..k).map(|i| random_linear_rank(m, 3, seed.wrapping_add(i as u64))).collect();
            let mds: Vec<TableFunction> = fs
                .iter()
                .map(|f| TableFunction::tabulate(&DilworthRank::new(Arc::new(f.clone()), 12).unwrap()).unwrap())
                .collect();
            let plain = FnSetFunction::new(m, |s: Subset| fs.iter().map(|f| f.eval(s)).sum::<i64>() - l);
            let md = FnSetFunction::new(m, |s: Subset| mds.iter().map(|f| f.eval(s)).sum::<i64>() - l);
            for s in Subset::full(m).subsets() {
                if induced_independent_exhaustive(&md, s, 12).unwrap() {
                    prop_assert!(induced_independent_exhaustive(&plain, s, 12).unwrap());
                }
            }
        }
    }
}
