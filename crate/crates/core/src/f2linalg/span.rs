use super::bitvec::{full_mask, MAX_DIM};

/// Incremental GF(2) span of packed vectors.
///
/// Keeps an echelon basis indexed by leading bit, so membership and
/// insertion cost at most `dim` XORs each.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    dim: usize,
    // basis[b] has leading bit b, or is 0 when no basis vector leads at b.
    basis: [u64; MAX_DIM],
    size: usize,
}

impl SpanTracker {
    pub fn new(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        SpanTracker {
            dim,
            basis: [0; MAX_DIM],
            size: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of independent vectors inserted.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_full(&self) -> bool {
        self.size == self.dim
    }

    fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            let b = self.basis[lead];
            if b == 0 {
                break;
            }
            v ^= b;
        }
        v
    }

    /// True iff `v` is a GF(2) combination of the inserted vectors. The zero
    /// vector is always contained.
    pub fn contains(&self, v: impl Into<u64>) -> bool {
        let v = v.into();
        debug_assert!(v & !full_mask(self.dim) == 0, "vector exceeds dimension");
        self.reduce(v) == 0
    }

    /// Inserts `v`; returns false (and changes nothing) if it was dependent.
    pub fn insert(&mut self, v: impl Into<u64>) -> bool {
        let v = v.into();
        assert!(v & !full_mask(self.dim) == 0, "vector exceeds dimension");
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.basis[63 - r.leading_zeros() as usize] = r;
        self.size += 1;
        true
    }

    /// Smallest integer whose vector lies outside the span, or `None` when
    /// the span is the whole space.
    ///
    /// Every integer below `2^b` is in the span exactly when bits `0..b` all
    /// lead some basis vector, so the answer is `2^b` for the lowest bit `b`
    /// with no basis vector leading there.
    pub fn smallest_outside(&self) -> Option<u64> {
        (0..self.dim)
            .find(|&b| self.basis[b] == 0)
            .map(|b| 1u64 << b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Enumerates the span explicitly.
    fn span_set(vs: &[u64]) -> std::collections::HashSet<u64> {
        let mut s = std::collections::HashSet::from([0u64]);
        for &v in vs {
            let more: Vec<u64> = s.iter().map(|x| x ^ v).collect();
            s.extend(more);
        }
        s
    }

    #[test]
    fn empty_contains_only_zero() {
        let t = SpanTracker::new(8);
        assert!(t.contains(0u64));
        assert!(!t.contains(1u64));
        assert_eq!(t.smallest_outside(), Some(1));
    }

    #[test]
    fn worked_example_membership() {
        let mut t = SpanTracker::new(8);
        t.insert(1u64);
        t.insert(3u64);
        assert!(t.contains(2u64));
        t.insert(4u64);
        assert!(t.contains(6u64));
        assert!(!t.contains(8u64));
        assert_eq!(t.smallest_outside(), Some(8));
        assert!(t.insert(8u64));
        for expect in [16, 32, 64, 128] {
            let k = t.smallest_outside().unwrap();
            assert_eq!(k, expect);
            t.insert(k);
        }
        assert!(t.is_full());
        assert_eq!(t.smallest_outside(), None);
    }

    #[test]
    fn dependent_insert_is_noop() {
        let mut t = SpanTracker::new(4);
        assert!(t.insert(5u64));
        assert!(t.insert(3u64));
        assert!(!t.insert(6u64));
        assert_eq!(t.size(), 2);
    }

    proptest! {
        #[test]
        fn membership_matches_enumeration(vs in prop::collection::vec(0u64..64, 0..6), q in 0u64..64) {
            let mut t = SpanTracker::new(6);
            for &v in &vs {
                t.insert(v);
            }
            let s = span_set(&vs);
            prop_assert_eq!(t.contains(q), s.contains(&q));
            prop_assert_eq!(1usize << t.size(), s.len());
            let brute = (1u64..64).find(|k| !s.contains(k));
            prop_assert_eq!(t.smallest_outside(), brute);
        }

        #[test]
        fn membership_is_monotone(vs in prop::collection::vec(0u64..256, 1..10), q in 0u64..256) {
            let mut t = SpanTracker::new(8);
            let mut seen = false;
            for &v in &vs {
                t.insert(v);
                let now = t.contains(q);
                prop_assert!(!seen || now);
                seen |= now;
            }
        }
    }
}
