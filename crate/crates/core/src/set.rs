//! Groundset interning and the fixed-width bitset used by every algorithm.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub, SubAssign};

use crate::error::{Error, Result};

const WORDS: usize = 4;

/// Hard ceiling on the width of an [`ElementSet`].
pub const MAX_CAPACITY: usize = WORDS * 64;

/// Default limit on the number of elements accepted in a groundset.
pub const DEFAULT_MAX_GROUND: usize = 64;

/// A subset of a groundset, stored as a membership bit vector.
///
/// Sets carry no reference to their groundset; callers keep them consistent.
/// The total order is the lexicographic order of the sorted index lists.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: [u64; WORDS],
}

impl ElementSet {
    pub const fn empty() -> Self {
        ElementSet { words: [0; WORDS] }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_CAPACITY, "set width {n} exceeds capacity");
        let mut set = Self::empty();
        for (w, word) in set.words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        set
    }

    pub fn singleton(i: usize) -> Self {
        let mut set = Self::empty();
        set.insert(i);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut set = Self::empty();
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds a set from the low 64 bits of a mask.
    pub fn from_mask(mask: u64) -> Self {
        let mut set = Self::empty();
        set.words[0] = mask;
        set
    }

    /// The low 64 bits; `None` if the set has a member at index 64 or above.
    pub fn to_mask(&self) -> Option<u64> {
        if self.words[1..].iter().any(|&w| w != 0) {
            None
        } else {
            Some(self.words[0])
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < MAX_CAPACITY && self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    /// Inserts `i`, returning whether it was absent.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < MAX_CAPACITY, "element index {i} exceeds capacity");
        let bit = 1u64 << (i % 64);
        let word = &mut self.words[i / 64];
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        if i >= MAX_CAPACITY {
            return false;
        }
        let bit = 1u64 << (i % 64);
        let word = &mut self.words[i / 64];
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &ElementSet) -> bool {
        other.is_subset(self)
    }

    pub fn is_proper_subset(&self, other: &ElementSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        *self | *other
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        *self & *other
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        *self - *other
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Members strictly below `i`.
    pub fn below(&self, i: usize) -> ElementSet {
        *self & ElementSet::full(i.min(MAX_CAPACITY))
    }

    pub fn iter(&self) -> Iter {
        Iter { words: self.words, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_indices(iter)
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

macro_rules! bit_op {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait for ElementSet {
            type Output = ElementSet;

            #[inline]
            fn $method(mut self, rhs: ElementSet) -> ElementSet {
                self.$assign(rhs);
                self
            }
        }

        impl $assign_trait for ElementSet {
            #[inline]
            fn $assign(&mut self, rhs: ElementSet) {
                for ($a, $b) in self.words.iter_mut().zip(rhs.words) {
                    *$a = $body;
                }
            }
        }
    };
}

bit_op!(BitOr, bitor, BitOrAssign, bitor_assign, |a, b| *a | b);
bit_op!(BitAnd, bitand, BitAndAssign, bitand_assign, |a, b| *a & b);
bit_op!(Sub, sub, SubAssign, sub_assign, |a, b| *a & !b);

/// Ascending iterator over the members of an [`ElementSet`].
pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

/// An ordered list of distinct element labels.
///
/// Labels are interned to dense indices in declaration order; algorithms only
/// ever see the indices.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_limit(labels, DEFAULT_MAX_GROUND)
    }

    /// Builds a groundset, rejecting more than `limit` elements.
    pub fn with_limit<I, S>(labels: I, limit: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let limit = limit.min(MAX_CAPACITY);
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for label in labels {
            let label = label.into();
            validate_label(&label)?;
            if index.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            index.insert(label.clone(), names.len());
            names.push(label);
        }
        if names.len() > limit {
            return Err(Error::GroundTooLarge { size: names.len(), limit });
        }
        Ok(GroundSet { names, index })
    }

    /// Groundset `1, 2, .., n` with numeric labels.
    pub fn numbered(n: usize) -> Self {
        Self::with_limit((1..=n).map(|i| i.to_string()), MAX_CAPACITY)
            .expect("numeric labels are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The set of all elements.
    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// Resolves whitespace-separated labels into a set.
    pub fn parse_set(&self, text: &str) -> Result<ElementSet> {
        text.split_whitespace()
            .map(|tok| {
                self.index_of(tok)
                    .ok_or_else(|| Error::UnknownElement { line: 0, label: tok.to_string() })
            })
            .collect()
    }

    /// Labels of `set`, space separated, in declaration order.
    pub fn format_set(&self, set: &ElementSet) -> String {
        let labels: Vec<&str> = set.iter().map(|i| self.label(i)).collect();
        labels.join(" ")
    }

    /// Appends a fresh element and returns its index.
    pub fn extend(&self, label: &str) -> Result<(GroundSet, usize)> {
        let mut labels = self.names.clone();
        labels.push(label.to_string());
        let ground = GroundSet::with_limit(labels, MAX_CAPACITY)?;
        let index = ground.len() - 1;
        Ok((ground, index))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

fn validate_label(label: &str) -> Result<()> {
    let reason = if label.is_empty() {
        "empty"
    } else if label.chars().any(char::is_whitespace) {
        "contains whitespace"
    } else if label.contains("->") {
        "contains `->`"
    } else if label.contains('#') {
        "contains `#`"
    } else if label == EMPTY_SET_TOKEN || label.ends_with(':') {
        "reserved token"
    } else {
        return Ok(());
    };
    Err(Error::InvalidLabel { label: label.to_string(), reason })
}

/// Token denoting the empty set on its own line in set-family files.
pub const EMPTY_SET_TOKEN: &str = "{}";

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_sets_at_word_boundaries() {
        assert_eq!(ElementSet::full(0), ElementSet::empty());
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(ElementSet::full(65).len(), 65);
        assert!(ElementSet::full(65).contains(64));
        assert!(!ElementSet::full(65).contains(65));
        assert_eq!(ElementSet::full(MAX_CAPACITY).len(), MAX_CAPACITY);
    }

    #[test]
    fn lexicographic_order() {
        let a = ElementSet::from_indices([0, 2]);
        let b = ElementSet::from_indices([0, 1, 5]);
        let c = ElementSet::from_indices([0]);
        assert!(b < a);
        assert!(c < b);
        assert!(ElementSet::empty() < c);
    }

    #[test]
    fn label_validation() {
        assert!(GroundSet::new(["a", "b"]).is_ok());
        assert!(matches!(GroundSet::new(["a", "a"]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(GroundSet::new(["a->b"]), Err(Error::InvalidLabel { .. })));
        assert!(matches!(GroundSet::new([""]), Err(Error::InvalidLabel { .. })));
        assert!(matches!(GroundSet::new(["{}"]), Err(Error::InvalidLabel { .. })));
        assert!(matches!(
            GroundSet::with_limit(["a", "b", "c"], 2),
            Err(Error::GroundTooLarge { size: 3, limit: 2 })
        ));
    }

    fn arb_set() -> impl Strategy<Value = ElementSet> {
        proptest::collection::vec(0usize..200, 0..24).prop_map(ElementSet::from_indices)
    }

    proptest! {
        #[test]
        fn lattice_laws(a in arb_set(), b in arb_set(), c in arb_set()) {
            prop_assert_eq!(a | b, b | a);
            prop_assert_eq!(a & b, b & a);
            prop_assert_eq!((a | b) | c, a | (b | c));
            prop_assert_eq!((a & b) & c, a & (b & c));
            prop_assert_eq!(a | (a & b), a);
            prop_assert_eq!(a & (a | b), a);
            prop_assert_eq!(a & (b | c), (a & b) | (a & c));
            prop_assert_eq!((a - b) & b, ElementSet::empty());
            prop_assert_eq!((a - b) | (a & b), a);
            prop_assert!((a & b).is_subset(&a));
            prop_assert!(a.is_subset(&(a | b)));
            prop_assert_eq!(a.is_subset(&b), a & b == a);
            prop_assert_eq!((a | b).len() + (a & b).len(), a.len() + b.len());
        }

        #[test]
        fn iteration_matches_membership(idx in proptest::collection::btree_set(0usize..MAX_CAPACITY, 0..40)) {
            let set: ElementSet = idx.iter().copied().collect();
            prop_assert_eq!(set.to_vec(), idx.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(set.first(), idx.iter().next().copied());
        }
    }
}
