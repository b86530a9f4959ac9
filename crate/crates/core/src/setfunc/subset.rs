use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Subset of a ground set `{0, …, m−1}` with `m ≤ 64`, as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u64);

pub const MAX_GROUND: usize = 64;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(m: usize) -> Subset {
        assert!(m <= MAX_GROUND, "ground set of size {m} exceeds 64");
        if m == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << m) - 1)
        }
    }

    pub fn singleton(e: usize) -> Subset {
        Subset(1u64 << e)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        Subset(elems.into_iter().fold(0, |acc, e| acc | (1u64 << e)))
    }

    /// Like [`Subset::from_elems`] but validates every index against `m`.
    pub fn try_from_elems(elems: &[usize], m: usize) -> Result<Subset> {
        if m > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(m));
        }
        for &e in elems {
            if e >= m {
                return Err(Error::IndexOutOfRange { index: e, size: m });
            }
        }
        Ok(Subset::from_elems(elems.iter().copied()))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | 1 << e)
    }

    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1 << e))
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                e
            })
        })
    }

    pub fn elems(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, including `∅` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Maps the `2^k` local masks over the elements of a set to global subsets.
pub(crate) struct LocalIndex {
    pub elems: Vec<usize>,
    pub global: Vec<Subset>,
}

impl LocalIndex {
    pub fn new(set: Subset) -> LocalIndex {
        let elems = set.elems();
        let k = elems.len();
        let mut global = vec![Subset::EMPTY; 1 << k];
        for mask in 1usize..1 << k {
            let low = mask.trailing_zeros() as usize;
            global[mask] = global[mask & (mask - 1)].with(elems[low]);
        }
        LocalIndex { elems, global }
    }

    pub fn local(&self, s: Subset) -> usize {
        self.elems
            .iter()
            .enumerate()
            .filter(|(_, &e)| s.contains(e))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = Subset::from_elems([1, 4, 6]);
        let all: Vec<Subset> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_subset_of(s)));
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
        assert_eq!(Subset::full(64).len(), 64);
    }

    #[test]
    fn basic_ops() {
        let s = Subset::from_elems([0, 3]);
        assert_eq!(s.to_string(), "{0,3}");
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.with(2).without(0), Subset::from_elems([2, 3]));
        assert_eq!(s.lowest(), Some(0));
        assert!(Subset::try_from_elems(&[5], 4).is_err());
    }

    #[test]
    fn local_index_round_trip() {
        let s = Subset::from_elems([2, 5, 9]);
        let li = LocalIndex::new(s);
        for (mask, g) in li.global.iter().enumerate() {
            assert_eq!(li.local(*g), mask);
        }
    }
}
