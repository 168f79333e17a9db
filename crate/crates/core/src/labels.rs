//! Bitset of polygon labels.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of polygon labels, stored as a bitmask (labels `0..64`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(pub u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    /// `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> LabelSet {
        if lo > hi {
            return LabelSet::EMPTY;
        }
        let width = hi - lo + 1;
        let bits = if width >= 64 { u64::MAX } else { (1u64 << width) - 1 };
        LabelSet(bits << lo)
    }

    pub fn singleton(label: usize) -> LabelSet {
        LabelSet(1u64 << label)
    }

    pub fn contains(self, label: usize) -> bool {
        label < 64 && self.0 >> label & 1 == 1
    }

    pub fn insert(&mut self, label: usize) {
        self.0 |= 1u64 << label;
    }

    pub fn remove(&mut self, label: usize) {
        self.0 &= !(1u64 << label);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & other.0)
    }

    pub fn difference(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 ^ other.0)
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: LabelSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let label = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(label)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Ordering used for deterministic subset reports: cardinality first,
    /// then lexicographic on the sorted label list.
    pub fn report_cmp(&self, other: &LabelSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.to_vec().cmp(&other.to_vec()))
    }
}

impl FromIterator<usize> for LabelSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = LabelSet::EMPTY;
        for label in iter {
            set.insert(label);
        }
        set
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, label) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for LabelSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabelSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = labels.iter().find(|&&l| l >= 64) {
            return Err(serde::de::Error::custom(format!("label {bad} out of range")));
        }
        Ok(labels.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_and_iter() {
        assert_eq!(LabelSet::range(2, 4).to_vec(), vec![2, 3, 4]);
        assert!(LabelSet::range(5, 4).is_empty());
        assert_eq!(LabelSet::range(0, 63).len(), 64);
    }

    #[test]
    fn min_max() {
        let s: LabelSet = [3, 9, 5].into_iter().collect();
        assert_eq!(s.min(), Some(3));
        assert_eq!(s.max(), Some(9));
        assert_eq!(LabelSet::EMPTY.min(), None);
        assert_eq!(s.to_string(), "{3,5,9}");
    }

    #[test]
    fn report_order_is_cardinality_first() {
        let a: LabelSet = [4].into_iter().collect();
        let b: LabelSet = [1, 2].into_iter().collect();
        assert_eq!(a.report_cmp(&b), std::cmp::Ordering::Less);
    }
}
