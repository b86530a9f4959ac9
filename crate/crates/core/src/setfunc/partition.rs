//! Set partitions of a subset, enumerated by restricted growth strings.

use std::fmt;

use super::Subset;
use crate::error::{Error, Result};

/// Disjoint nonempty blocks whose union is the partitioned set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Subset>,
}

impl Partition {
    /// Checks the block invariants against `set`.
    pub fn new(blocks: Vec<Subset>, set: Subset) -> Result<Partition> {
        let mut seen = Subset::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidParameter(
                    "partition has an empty block".into(),
                ));
            }
            if !b.intersection(seen).is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "block {b} overlaps another block"
                )));
            }
            seen = seen.union(*b);
        }
        if seen != set {
            return Err(Error::InvalidParameter(format!(
                "blocks cover {seen}, expected {set}"
            )));
        }
        Ok(Partition { blocks })
    }

    pub(crate) fn from_blocks_unchecked(blocks: Vec<Subset>) -> Partition {
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn support(&self) -> Subset {
        self.blocks.iter().fold(Subset::EMPTY, |a, b| a.union(*b))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Iterator over all partitions of a set, each exactly once.
///
/// Element `elems[i]` goes to block `rgs[i]`; the string satisfies
/// `rgs[0] = 0` and `rgs[i] ≤ 1 + max(rgs[..i])`.
pub struct Partitions {
    elems: Vec<usize>,
    rgs: Vec<usize>,
    /// `prefix_max[i] = max(rgs[..=i])`
    prefix_max: Vec<usize>,
    done: bool,
}

/// All partitions of `set`. Errors when `|set|` exceeds `cap`.
pub fn enumerate_partitions(set: Subset, cap: usize) -> Result<Partitions> {
    if set.len() > cap {
        return Err(Error::CapExceeded {
            size: set.len(),
            cap,
        });
    }
    let n = set.len();
    Ok(Partitions {
        elems: set.elems(),
        rgs: vec![0; n],
        prefix_max: vec![0; n],
        done: false,
    })
}

impl Partitions {
    fn current(&self) -> Partition {
        let nblocks = self.prefix_max.last().map_or(0, |m| m + 1);
        let mut blocks = vec![Subset::EMPTY; nblocks];
        for (&e, &b) in self.elems.iter().zip(&self.rgs) {
            blocks[b] = blocks[b].with(e);
        }
        Partition::from_blocks_unchecked(blocks)
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let p = self.current();
        self.advance();
        Some(p)
    }
}
