//! Fixed-universe bitsets over line ids.

use std::fmt;

const WORD: usize = 64;

/// A subset of the line ids `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineSet {
    universe: usize,
    words: Vec<u64>,
}

impl fmt::Debug for LineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl LineSet {
    pub fn empty(universe: usize) -> LineSet {
        LineSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> LineSet {
        let mut set = LineSet {
            universe,
            words: vec![!0; universe.div_ceil(WORD)],
        };
        set.clear_tail();
        set
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = usize>) -> LineSet {
        let mut set = LineSet::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    fn clear_tail(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        id < self.universe && self.words[id / WORD] >> (id % WORD) & 1 == 1
    }

    pub fn insert(&mut self, id: usize) {
        assert!(
            id < self.universe,
            "line {id} outside universe {}",
            self.universe
        );
        self.words[id / WORD] |= 1 << (id % WORD);
    }

    pub fn remove(&mut self, id: usize) {
        if id < self.universe {
            self.words[id / WORD] &= !(1 << (id % WORD));
        }
    }

    pub fn toggle(&mut self, id: usize) {
        assert!(
            id < self.universe,
            "line {id} outside universe {}",
            self.universe
        );
        self.words[id / WORD] ^= 1 << (id % WORD);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                (word != 0).then(|| {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    i * WORD + bit
                })
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip_with(&self, other: &LineSet, f: impl Fn(u64, u64) -> u64) -> LineSet {
        debug_assert_eq!(self.universe, other.universe);
        LineSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn intersection(&self, other: &LineSet) -> LineSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &LineSet) -> LineSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &LineSet) -> LineSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn intersect_with(&mut self, other: &LineSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &LineSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection_len(&self, other: &LineSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &LineSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &LineSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_empty() {
        for n in [0, 1, 63, 64, 65, 130] {
            assert_eq!(LineSet::full(n).len(), n);
            assert!(LineSet::empty(n).is_empty());
            assert_eq!(LineSet::full(n).to_vec(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn set_operations() {
        let a = LineSet::from_ids(130, [0, 5, 64, 129]);
        let b = LineSet::from_ids(130, [5, 64, 100]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 64]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 5, 64, 100, 129]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 129]);
        assert_eq!(a.intersection_len(&b), 2);
        assert!(a.intersects(&b));
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.first(), Some(0));
    }

    #[test]
    fn toggle_and_remove() {
        let mut s = LineSet::empty(70);
        s.toggle(69);
        assert!(s.contains(69));
        s.toggle(69);
        assert!(!s.contains(69));
        s.insert(3);
        s.remove(3);
        s.remove(500);
        assert!(s.is_empty());
        assert!(!s.contains(500));
    }
}
