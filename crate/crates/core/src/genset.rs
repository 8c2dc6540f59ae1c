//! Subsets of a Coxeter generating set.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest rank a [`GeneratorSet`] can address.
pub const MAX_RANK: usize = 64;

/// A set of generator indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSet(u64);

impl GeneratorSet {
    pub const EMPTY: GeneratorSet = GeneratorSet(0);

    pub fn from_bits(bits: u64) -> Self {
        GeneratorSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, ..., rank - 1}`.
    pub fn full(rank: usize) -> Self {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        if rank == MAX_RANK {
            GeneratorSet(u64::MAX)
        } else {
            GeneratorSet((1u64 << rank) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_RANK);
        GeneratorSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_RANK && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_RANK);
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < MAX_RANK {
            self.0 &= !(1u64 << i);
        }
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        GeneratorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GeneratorSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GeneratorSet(self.0 & !other.0)
    }

    /// Complement inside the generating set of the given rank.
    pub fn complement(self, rank: usize) -> Self {
        GeneratorSet::full(rank).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest index plus one, or zero for the empty set.
    pub fn span(self) -> usize {
        MAX_RANK - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }
}

impl FromIterator<usize> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = GeneratorSet::EMPTY;
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl IntoIterator for GeneratorSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`GeneratorSet`].
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Iterator over all submasks of a mask, in increasing numeric order.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = GeneratorSet;
    fn next(&mut self) -> Option<GeneratorSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(GeneratorSet(cur))
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for GeneratorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for GeneratorSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = members.iter().find(|&&i| i >= MAX_RANK) {
            return Err(serde::de::Error::custom(format!(
                "generator index {bad} out of range"
            )));
        }
        Ok(members.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a: GeneratorSet = [0, 2, 3].into_iter().collect();
        let b: GeneratorSet = [2, 5].into_iter().collect();
        assert_eq!(a.union(b).iter().collect::<Vec<_>>(), vec![0, 2, 3, 5]);
        assert_eq!(a.intersection(b), GeneratorSet::singleton(2));
        assert_eq!(a.difference(b).iter().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(a.complement(6).iter().collect::<Vec<_>>(), vec![1, 4, 5]);
        assert!(GeneratorSet::EMPTY.is_subset(a));
        assert_eq!(a.first(), Some(0));
        assert_eq!(a.span(), 4);
        assert_eq!(GeneratorSet::full(MAX_RANK).len(), MAX_RANK);
    }

    #[test]
    fn subsets_enumerate_each_submask_once() {
        let a: GeneratorSet = [1, 3, 4].into_iter().collect();
        let subs: Vec<_> = a.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(a)));
        let mut dedup = subs.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
    }

    #[test]
    fn serde_as_index_list() {
        let a: GeneratorSet = [4, 1].into_iter().collect();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "[1,4]");
        let back: GeneratorSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<GeneratorSet>("[64]").is_err());
    }
}
