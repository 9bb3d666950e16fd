//! Compact vertex sets.
//!
//! Faces, facets, and product-cell parts are all small sets of dense
//! vertex indices. They are stored as bit words so containment and
//! intersection run in O(words) regardless of set size. The word vector
//! is kept trimmed (no trailing zero words), which makes equality and
//! hashing canonical across universes of different sizes.

use smallvec::SmallVec;

const BITS: usize = 64;

/// A set of vertex indices backed by bit words.
///
/// One inline word covers complexes with up to 64 vertices without heap
/// allocation; larger universes spill transparently.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set {0, 1, ..., n-1}.
    pub fn full(n: usize) -> Self {
        Self::from_iter(0..n)
    }

    pub fn singleton(v: usize) -> Self {
        Self::from_iter([v])
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / BITS;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (v % BITS);
    }

    pub fn remove(&mut self, v: usize) {
        let w = v / BITS;
        if w < self.words.len() {
            self.words[w] &= !(1 << (v % BITS));
            self.trim();
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        let w = v / BITS;
        w < self.words.len() && self.words[w] & (1 << (v % BITS)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        if self.words.len() > other.words.len() {
            return false;
        }
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let (longer, shorter) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = longer.words.clone();
        for (w, o) in words.iter_mut().zip(&shorter.words) {
            *w |= o;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let n = self.words.len().min(other.words.len());
        let mut words: SmallVec<[u64; 1]> = self.words[..n]
            .iter()
            .zip(&other.words[..n])
            .map(|(a, b)| a & b)
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    /// Largest element, if any.
    pub fn max_element(&self) -> Option<usize> {
        let w = self.words.len().checked_sub(1)?;
        Some(w * BITS + (BITS - 1 - self.words[w].leading_zeros() as usize))
    }

    /// Iterate elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * BITS + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Remove the t-th smallest element (0-indexed) and return it.
    /// Panics if the set has fewer than t+1 elements.
    pub fn remove_nth(&self, t: usize) -> (usize, Self) {
        let v = self.iter().nth(t).expect("remove_nth out of range");
        let mut s = self.clone();
        s.remove(v);
        (v, s)
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    /// Lexicographic on the increasing element sequence, so sorted faces
    /// read in dictionary order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_roundtrip() {
        let mut s = VertexSet::new();
        s.insert(3);
        s.insert(70);
        s.insert(0);
        assert_eq!(s.to_vec(), vec![0, 3, 70]);
        assert_eq!(s.len(), 3);
        s.remove(70);
        assert_eq!(s.to_vec(), vec![0, 3]);
        // trimming keeps equality canonical after the high word empties
        assert_eq!(s, VertexSet::from_iter([0, 3]));
    }

    #[test]
    fn subset_and_intersection() {
        let a = VertexSet::from_iter([1, 2, 5]);
        let b = VertexSet::from_iter([1, 2, 5, 9]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a.is_subset(&a));
        assert!(VertexSet::new().is_subset(&a));
        assert!(a.intersects(&b));
        assert_eq!(a.intersection(&b), a);
        assert!(!VertexSet::singleton(3).intersects(&a));
        assert_eq!(a.union(&VertexSet::singleton(3)).to_vec(), vec![1, 2, 3, 5]);
    }

    #[test]
    fn remove_nth_takes_sorted_position() {
        let s = VertexSet::from_iter([4, 9, 2]);
        let (v, rest) = s.remove_nth(1);
        assert_eq!(v, 4);
        assert_eq!(rest.to_vec(), vec![2, 9]);
    }

    #[test]
    fn order_is_lexicographic_on_elements() {
        let a = VertexSet::from_iter([0, 5]);
        let b = VertexSet::from_iter([1]);
        assert!(a < b);
        assert!(VertexSet::new() < a);
    }

    #[test]
    fn max_element() {
        assert_eq!(VertexSet::new().max_element(), None);
        assert_eq!(VertexSet::from_iter([3, 64, 7]).max_element(), Some(64));
    }
}
