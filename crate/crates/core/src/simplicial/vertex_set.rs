use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported number of vertices.
pub const MAX_VERTICES: usize = 20;

/// A subset of `{1, ..., n}` stored as a bit mask (vertex `v` is bit `v - 1`).
///
/// Sets are ordered by cardinality first and then by mask, which is the
/// canonical face order used for every basis in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    /// The full vertex set `[n]`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        VertexSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1 << (v - 1))
    }

    /// Builds a set from 1-based labels, rejecting labels outside `1..=n`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(n: usize, labels: I) -> crate::Result<Self> {
        let mut bits = 0u32;
        for v in labels {
            if v == 0 || v > n {
                return Err(crate::Error::VertexOutOfRange { vertex: v, n });
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=32).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn with(self, v: usize) -> VertexSet {
        VertexSet(self.0 | (1 << (v - 1)))
    }

    pub fn without(self, v: usize) -> VertexSet {
        VertexSet(self.0 & !(1 << (v - 1)))
    }

    /// Smallest element, if any.
    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VertexSet(cur))
        })
    }

    /// Subsets of `self` with exactly `k` elements, in increasing mask order.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = VertexSet> {
        self.subsets().filter(move |s| s.len() == k)
    }

    /// Labels concatenated without separators, e.g. `{1,2,4}` gives `"124"`.
    pub fn label(self) -> String {
        self.iter().map(|v| v.to_string()).collect()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub struct Vertices(u32);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        VertexSet::from_labels(MAX_VERTICES, labels).map_err(serde::de::Error::custom)
    }
}

/// `#{(a, b) : a in A, b in B, a > b}`.
pub fn alpha(a: VertexSet, b: VertexSet) -> usize {
    a.iter().map(|v| alpha_vertex(v, b)).sum()
}

/// `#{k in B : k < v}`.
pub fn alpha_vertex(v: usize, b: VertexSet) -> usize {
    (b.0 & ((1u32 << (v - 1)) - 1)).count_ones() as usize
}

/// `(-1)^alpha(v, B)` as `+1` or `-1`.
pub fn sign(v: usize, b: VertexSet) -> i64 {
    if alpha_vertex(v, b).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_labels(MAX_VERTICES, labels.iter().copied()).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(VertexSet::EMPTY, set(&[1, 2, 3])), 0);
        assert_eq!(alpha(set(&[5]), set(&[1, 2, 3, 4])), 4);
        assert_eq!(alpha(set(&[3]), set(&[1, 2, 4])), 2);
        assert_eq!(alpha_vertex(3, set(&[1, 2, 4])), 2);
    }

    #[test]
    fn ordering_is_cardinality_then_mask() {
        let mut v = vec![
            set(&[2, 3]),
            set(&[4]),
            set(&[1, 2]),
            VertexSet::EMPTY,
            set(&[1]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                VertexSet::EMPTY,
                set(&[1]),
                set(&[4]),
                set(&[1, 2]),
                set(&[2, 3])
            ]
        );
    }

    #[test]
    fn subsets_enumerate_all() {
        let s = set(&[1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(s.subsets_of_size(2).count(), 3);
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn labels_out_of_range() {
        assert!(VertexSet::from_labels(3, [4]).is_err());
        assert!(VertexSet::from_labels(3, [0]).is_err());
        assert_eq!(set(&[1, 2, 4]).label(), "124");
    }

    proptest::proptest! {
        #[test]
        fn alpha_is_additive(a in 0u32..1 << 10, b in 0u32..1 << 10, c in 0u32..1 << 10) {
            let (a, b, c) = (VertexSet(a), VertexSet(b & !a), VertexSet(c));
            proptest::prop_assert_eq!(alpha(a.union(b), c), alpha(a, c) + alpha(b, c));
        }
    }
}
