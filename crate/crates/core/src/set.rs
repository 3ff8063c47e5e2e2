//! Dense bitset over vertex ids.

use alloc::vec::Vec;
use core::fmt;

/// A set of vertex ids backed by a growable bitset.
///
/// Membership queries for ids beyond the current capacity return `false`,
/// so sets built against different graphs can be compared freely.
#[derive(Clone, Default)]
pub struct VertexSet {
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Empty set with room for ids `0..n` without reallocation.
    pub fn with_capacity(n: usize) -> Self {
        Self {
            words: alloc::vec![0; n.div_ceil(64)],
            len: 0,
        }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    /// All ids in `0..n`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1u64 << (v % 64)) != 0)
    }

    /// Inserts `v`; returns `true` if it was not present.
    pub fn insert(&mut self, v: usize) -> bool {
        let word = v / 64;
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        let bit = 1u64 << (v % 64);
        if self.words[word] & bit == 0 {
            self.words[word] |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.words.get_mut(v / 64) {
            Some(w) if *w & (1u64 << (v % 64)) != 0 => {
                *w &= !(1u64 << (v % 64));
                self.len -= 1;
                true
            }
            _ => false,
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.len = 0;
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Largest member plus one, or zero for the empty set.
    pub fn bound(&self) -> usize {
        self.iter().last().map_or(0, |v| v + 1)
    }

    pub fn extend_from(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
        self.recount();
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        let mut out = VertexSet { words, len: 0 };
        out.recount();
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut words = self.words.clone();
        for (a, b) in words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        let mut out = VertexSet { words, len: 0 };
        out.recount();
        out
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

impl VertexSet {
    fn significant_words(&self) -> &[u64] {
        let end = self
            .words
            .iter()
            .rposition(|w| *w != 0)
            .map_or(0, |i| i + 1);
        &self.words[..end]
    }
}

// Equality ignores spare capacity.
impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.significant_words() == other.significant_words()
    }
}

impl Eq for VertexSet {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        s.extend(iter);
        s
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = VertexSet::with_capacity(10);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert!(s.insert(130));
        assert_eq!(s.len(), 2);
        assert!(s.contains(130));
        assert!(!s.contains(1_000_000));
        assert!(s.remove(3));
        assert!(!s.remove(3));
        assert_eq!(s.to_vec(), alloc::vec![130]);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(a in proptest::collection::btree_set(0usize..300, 0..60),
                                        b in proptest::collection::btree_set(0usize..300, 0..60)) {
            let sa: VertexSet = a.iter().copied().collect();
            let sb: VertexSet = b.iter().copied().collect();
            let union: alloc::vec::Vec<usize> = a.union(&b).copied().collect();
            let inter: alloc::vec::Vec<usize> = a.intersection(&b).copied().collect();
            let diff: alloc::vec::Vec<usize> = a.difference(&b).copied().collect();
            prop_assert_eq!(sa.union(&sb).to_vec(), union);
            prop_assert_eq!(sa.intersection(&sb).to_vec(), inter.clone());
            prop_assert_eq!(sa.difference(&sb).to_vec(), diff);
            prop_assert_eq!(sa.intersection_len(&sb), inter.len());
            prop_assert_eq!(sa.is_disjoint(&sb), inter.is_empty());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        }
    }
}
