//! Partitions of `{0,…,n-1}` in canonical restricted-growth form.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An equivalence relation on `{0,…,n-1}`.
///
/// Block ids are numbered in order of least element, so two partitions are
/// equal exactly when their `block_of` arrays are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Groups elements with equal labels.
    pub fn from_labels<T: Eq + Hash>(labels: &[T]) -> Self {
        let mut ids = HashMap::with_capacity(labels.len());
        let block_of = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            block_of,
            blocks: ids.len(),
        }
    }

    /// Builds from explicit blocks, which must cover `0..size` exactly once.
    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= size {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside 0..{size}"
                    )));
                }
                if label[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("duplicate element {x}")));
                }
                label[x] = b;
            }
        }
        if let Some(missing) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "missing element {missing}"
            )));
        }
        Ok(Partition::from_labels(&label))
    }

    /// All singletons.
    pub fn discrete(size: usize) -> Self {
        Partition {
            block_of: (0..size).collect(),
            blocks: size,
        }
    }

    /// One block (no blocks when `size` is zero).
    pub fn indiscrete(size: usize) -> Self {
        Partition {
            block_of: vec![0; size],
            blocks: usize::from(size > 0),
        }
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    #[inline]
    pub fn block(&self, x: usize) -> usize {
        self.block_of[x]
    }

    #[inline]
    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Least element of each block, indexed by block id (hence increasing).
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = Vec::with_capacity(self.blocks);
        for (x, &b) in self.block_of.iter().enumerate() {
            if b == reps.len() {
                reps.push(x);
            }
        }
        reps
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks == self.size()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut image = vec![usize::MAX; self.blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            let target = other.block_of[x];
            if image[b] == usize::MAX {
                image[b] = target;
            } else if image[b] != target {
                return false;
            }
        }
        true
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        let pairs: Vec<(usize, usize)> = self
            .block_of
            .iter()
            .copied()
            .zip(other.block_of.iter().copied())
            .collect();
        Ok(Partition::from_labels(&pairs))
    }

    /// Pairs `(x, y)` with `x < y` in the same block.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |x| {
            (x + 1..n)
                .filter(move |&y| self.same_block(x, y))
                .map(move |y| (x, y))
        })
    }

    /// Parses `0,2|1,3`. Blocks may be given in any order; the result is
    /// canonicalized.
    pub fn parse(text: &str) -> Result<Partition> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Partition::discrete(0));
        }
        let mut blocks = Vec::new();
        let mut count = 0;
        for block in text.split('|') {
            let elements = block
                .split(',')
                .map(|e| {
                    let e = e.trim();
                    e.parse::<usize>()
                        .map_err(|_| Error::InvalidPartition(format!("`{e}` is not an element")))
                })
                .collect::<Result<Vec<_>>>()?;
            count += elements.len();
            blocks.push(elements);
        }
        Partition::from_blocks(count, &blocks)
    }

    /// Like [`Partition::parse`] but requires the given carrier size.
    pub fn parse_sized(text: &str, size: usize) -> Result<Partition> {
        let p = Partition::parse(text)?;
        if p.size() != size {
            return Err(Error::SizeMismatch {
                expected: size,
                found: p.size(),
            });
        }
        Ok(p)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Every partition of `{0,…,n-1}` in lexicographic order of `block_of`.
pub fn all_partitions(n: usize) -> AllPartitions {
    AllPartitions {
        current: if n == 0 { None } else { Some(vec![0; n]) },
        empty_pending: n == 0,
    }
}

pub struct AllPartitions {
    current: Option<Vec<usize>>,
    empty_pending: bool,
}

impl Iterator for AllPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Partition::discrete(0));
        }
        let rgs = self.current.as_mut()?;
        let out = Partition {
            blocks: rgs.iter().max().map_or(0, |m| m + 1),
            block_of: rgs.clone(),
        };
        // Successor: bump the rightmost position that may still grow, reset the tail.
        let n = rgs.len();
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(rgs[i - 1]);
        }
        match (1..n).rev().find(|&i| rgs[i] <= prefix_max[i]) {
            Some(i) => {
                rgs[i] += 1;
                rgs[i + 1..].fill(0);
            }
            None => self.current = None,
        }
        Some(out)
    }
}
