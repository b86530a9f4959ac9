//! The matroid induced by `r₁ + … + r_d − t` for matroid rank functions `rᵢ`.
//!
//! A set `S + x` with `S` independent is independent exactly when `S + x`
//! together with `t` parallel copies of `x` is independent in the matroid
//! union `M₁ ∨ … ∨ M_d`. Union independence is decided by matroid
//! partitioning with shortest augmenting paths, so ranks stay polynomial
//! in the number of elements.

use std::collections::VecDeque;
use std::sync::Arc;

use super::Matroid;
use crate::error::{Error, Result};

pub struct TruncatedUnion {
    parts: Vec<Arc<dyn Matroid>>,
    shift: usize,
    ground: usize,
}

/// A position in the current partition: element `sets[part][pos]`.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Slot {
    part: usize,
    pos: usize,
}

impl TruncatedUnion {
    pub fn new(parts: Vec<Arc<dyn Matroid>>, shift: usize) -> Result<Self> {
        let ground = parts
            .first()
            .ok_or_else(|| Error::InvalidParameter("truncated union of no matroids".into()))?
            .ground_size();
        for p in &parts {
            if p.ground_size() != ground {
                return Err(Error::DimensionMismatch {
                    context: "truncated union ground sets",
                    expected: ground,
                    found: p.ground_size(),
                });
            }
        }
        Ok(TruncatedUnion {
            parts,
            shift,
            ground,
        })
    }

    pub fn parts(&self) -> &[Arc<dyn Matroid>] {
        &self.parts
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    /// Circuit of `x` in part `j`, as positions in `set`. Copies of one
    /// element are parallel, so an existing copy forms a 2-circuit.
    fn exchange(&self, j: usize, set: &[usize], x: usize) -> Option<Vec<usize>> {
        if let Some(pos) = set.iter().position(|&e| e == x) {
            return Some(vec![pos]);
        }
        let circuit = self.parts[j].circuit(set, x)?;
        Some(
            circuit
                .into_iter()
                .filter(|&e| e != x)
                .map(|e| {
                    set.iter()
                        .position(|&s| s == e)
                        .expect("circuit inside the set")
                })
                .collect(),
        )
    }

    /// Adds one copy of `x` to the partition if the union stays independent.
    fn augment(&self, sets: &mut [Vec<usize>], x: usize) -> bool {
        let d = self.parts.len();
        let mut nodes: Vec<(Option<Slot>, usize)> = vec![(None, usize::MAX)];
        let mut seen: Vec<Vec<bool>> = sets.iter().map(|s| vec![false; s.len()]).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(n) = queue.pop_front() {
            let (slot, _) = nodes[n];
            let elem = slot.map_or(x, |s| sets[s.part][s.pos]);
            for j in 0..d {
                if slot.is_some_and(|s| s.part == j) {
                    continue;
                }
                match self.exchange(j, &sets[j], elem) {
                    None => {
                        self.apply_path(sets, &nodes, n, j, x);
                        return true;
                    }
                    Some(positions) => {
                        for pos in positions {
                            if !seen[j][pos] {
                                seen[j][pos] = true;
                                nodes.push((Some(Slot { part: j, pos }), n));
                                queue.push_back(nodes.len() - 1);
                            }
                        }
                    }
                }
            }
        }
        false
    }

    fn apply_path(
        &self,
        sets: &mut [Vec<usize>],
        nodes: &[(Option<Slot>, usize)],
        end: usize,
        part: usize,
        x: usize,
    ) {
        let mut n = end;
        let mut moving = nodes[n].0.map_or(x, |s| sets[s.part][s.pos]);
        sets[part].push(moving);
        while let (Some(slot), parent) = nodes[n] {
            moving = nodes[parent].0.map_or(x, |s| sets[s.part][s.pos]);
            sets[slot.part][slot.pos] = moving;
            n = parent;
        }
    }

    /// Greedy pass over `elems`, returning the accepted elements.
    fn greedy(&self, elems: &[usize], stop_on_reject: bool) -> Vec<usize> {
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); self.parts.len()];
        let mut accepted = Vec::new();
        for &x in elems {
            let snapshot = sets.clone();
            if (0..=self.shift).all(|_| self.augment(&mut sets, x)) {
                let mut extra = self.shift;
                for s in sets.iter_mut() {
                    if extra > 0 {
                        if let Some(pos) = s.iter().position(|&e| e == x) {
                            s.swap_remove(pos);
                            extra -= 1;
                        }
                    }
                }
                accepted.push(x);
            } else {
                sets = snapshot;
                if stop_on_reject {
                    break;
                }
            }
        }
        accepted
    }

    /// A maximal independent subset of `elems`, grown in the given order.
    pub fn basis_of(&self, elems: &[usize]) -> Vec<usize> {
        self.greedy(elems, false)
    }
}

impl Matroid for TruncatedUnion {
    fn ground_size(&self) -> usize {
        self.ground
    }

    fn rank(&self, elems: &[usize]) -> usize {
        self.greedy(elems, false).len()
    }

    fn is_independent(&self, elems: &[usize]) -> bool {
        self.greedy(elems, true).len() == elems.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::matrix::Matrix;
    use crate::matroids::{CountMatroid, Graph, LinearMatroid, MatroidRank, UniformMatroid};
    use crate::rng::seeded;
    use crate::setfunc::{induced_independent_exhaustive, FnSetFunction, SetFunction, Subset};
    use proptest::prelude::*;
    use rand::Rng;

    fn random_linear(m: usize, dim: usize, rng: &mut crate::rng::Rng) -> LinearMatroid {
        let f = PrimeField::new(13).unwrap();
        LinearMatroid::new(Matrix::from_fn(f, m, dim, |_, _| {
            if rng.random_bool(0.4) {
                0
            } else {
                f.random(rng)
            }
        }))
    }

    #[test]
    fn k4_two_graphic_minus_one() {
        let g = Arc::new(Graph::complete(4));
        let graphic: Arc<dyn Matroid> = Arc::new(CountMatroid::new(g, 1, 1).unwrap());
        let u = TruncatedUnion::new(vec![graphic.clone(), graphic], 1).unwrap();
        assert_eq!(u.rank(&(0..6).collect::<Vec<_>>()), 5);
    }

    #[test]
    fn shift_zero_is_plain_union() {
        let a: Arc<dyn Matroid> = Arc::new(UniformMatroid { ground: 6, rank: 2 });
        let b: Arc<dyn Matroid> = Arc::new(UniformMatroid { ground: 6, rank: 3 });
        let u = TruncatedUnion::new(vec![a.clone(), b.clone()], 0).unwrap();
        assert_eq!(u.rank(&[0, 1, 2, 3, 4, 5]), 5);
        let t = TruncatedUnion::new(vec![a, b], 2).unwrap();
        assert_eq!(t.rank(&[0, 1, 2, 3, 4, 5]), 0);
        assert!(TruncatedUnion::new(vec![], 0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_exhaustive_rank(m in 1usize..7, d in 1usize..4, shift in 0usize..3, seed in any::<u64>()) {
            let mut rng = seeded(seed);
            let parts: Vec<LinearMatroid> = (0..d).map(|_| random_linear(m, 3, &mut rng)).collect();
            let ranks: Vec<MatroidRank<LinearMatroid>> =
                parts.iter().cloned().map(|p| MatroidRank::new(p).unwrap()).collect();
            let f = FnSetFunction::new(m, |s: Subset| {
                ranks.iter().map(|r| r.eval(s)).sum::<i64>() - shift as i64
            });
            let u = TruncatedUnion::new(
                parts.into_iter().map(|p| Arc::new(p) as Arc<dyn Matroid>).collect(),
                shift,
            ).unwrap();
            let full = Subset::full(m);
            let independent: Vec<Subset> = full
                .subsets()
                .filter(|s| induced_independent_exhaustive(&f, *s, 12).unwrap())
                .collect();
            for s in full.subsets() {
                let expected = independent.iter().filter(|i| i.is_subset_of(s)).map(|i| i.len()).max().unwrap();
                prop_assert_eq!(u.rank(&s.elems()), expected);
                prop_assert_eq!(u.is_independent(&s.elems()), independent.contains(&s));
            }
        }
    }
}
