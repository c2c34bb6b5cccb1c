use std::fmt;

use super::FiniteGroup;

const WORD: usize = 64;

/// A subset of a group, stored as a bit vector over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    group: u64,
    len: usize,
    words: Vec<u64>,
}

impl SubsetMask {
    pub fn empty(g: &FiniteGroup) -> Self {
        Self::empty_with(g.fingerprint(), g.order())
    }

    pub(crate) fn empty_with(group: u64, len: usize) -> Self {
        SubsetMask {
            group,
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(g: &FiniteGroup) -> Self {
        let mut m = Self::empty(g);
        for w in m.words.iter_mut() {
            *w = !0;
        }
        m.trim();
        m
    }

    pub fn singleton(g: &FiniteGroup, x: u32) -> Self {
        let mut m = Self::empty(g);
        m.insert(x);
        m
    }

    pub fn from_indices(g: &FiniteGroup, xs: impl IntoIterator<Item = u32>) -> Self {
        let mut m = Self::empty(g);
        for x in xs {
            m.insert(x);
        }
        m
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn group_id(&self) -> u64 {
        self.group
    }

    /// Number of elements of the ambient group.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn same_group(&self, other: &Self) -> bool {
        self.group == other.group && self.len == other.len
    }

    pub fn belongs_to(&self, g: &FiniteGroup) -> bool {
        self.group == g.fingerprint() && self.len == g.order()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let x = x as usize;
        x < self.len && self.words[x / WORD] >> (x % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: u32) {
        let x = x as usize;
        assert!(x < self.len, "element {x} outside group of order {}", self.len);
        self.words[x / WORD] |= 1 << (x % WORD);
    }

    pub fn remove(&mut self, x: u32) {
        let x = x as usize;
        if x < self.len {
            self.words[x / WORD] &= !(1 << (x % WORD));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some((wi * WORD + tz) as u32)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert!(self.same_group(other));
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert!(self.same_group(other));
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        debug_assert!(self.same_group(other));
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut m = self.clone();
        m.union_with(other);
        m
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut m = self.clone();
        m.intersect_with(other);
        m
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut m = self.clone();
        m.difference_with(other);
        m
    }

    pub fn complement(&self) -> Self {
        let mut m = self.clone();
        for w in m.words.iter_mut() {
            *w = !*w;
        }
        m.trim();
        m
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    #[test]
    fn bit_operations() {
        let g = build_group(&GroupSpec::Cyclic(70)).unwrap();
        let a = SubsetMask::from_indices(&g, [0, 3, 64, 69]);
        let b = SubsetMask::from_indices(&g, [3, 65]);
        assert_eq!(a.count(), 4);
        assert_eq!(a.union(&b).to_vec(), vec![0, 3, 64, 65, 69]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert_eq!(a.complement().count(), 66);
        assert!(!a.complement().contains(69));
        assert!(SubsetMask::full(&g).is_full());
        assert!(a.intersection(&b).is_subset(&a));
    }
}
