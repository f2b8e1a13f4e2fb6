use std::collections::BTreeSet;

use crate::permutation::Permutation;

/// Read access to a permutation's moved points in ascending order.
pub(crate) trait MovedPoints {
    fn width(&self) -> usize;
    fn image(&self, x: usize) -> usize;
    fn moved_ascending(&self) -> Box<dyn Iterator<Item = usize> + '_>;
}

impl MovedPoints for Permutation {
    fn width(&self) -> usize {
        Permutation::width(self)
    }

    fn image(&self, x: usize) -> usize {
        self.apply(x)
    }

    fn moved_ascending(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        Box::new(
            self.images()
                .iter()
                .enumerate()
                .filter(|&(i, &x)| i != x)
                .map(|(i, _)| i),
        )
    }
}

/// Mutable permutation with an inverse table and an ordered support set, so
/// that left-multiplying by a set of disjoint transpositions costs
/// `O(k log |S|)` rather than a full table pass.
pub(crate) struct WorkingPerm {
    n: usize,
    images: Vec<usize>,
    inverse: Vec<usize>,
    moved: BTreeSet<usize>,
}

impl WorkingPerm {
    pub fn new(p: &Permutation) -> Self {
        let inverse = p.inverse().into_images();
        let moved = p.support().iter().collect();
        WorkingPerm {
            n: p.width(),
            images: p.images().to_vec(),
            inverse,
            moved,
        }
    }

    pub fn support_size(&self) -> usize {
        self.moved.len()
    }

    pub fn smallest_moved(&self) -> Option<usize> {
        self.moved.first().copied()
    }

    fn refresh(&mut self, x: usize) {
        if self.images[x] == x {
            self.moved.remove(&x);
        } else {
            self.moved.insert(x);
        }
    }

    /// `P ← T∘P` where `T` swaps each `(a, b)`; the pairs must be disjoint.
    pub fn left_swap(&mut self, swaps: &[(usize, usize)]) {
        for &(a, b) in swaps {
            let xa = self.inverse[a];
            let xb = self.inverse[b];
            self.images[xa] = b;
            self.images[xb] = a;
            self.inverse[b] = xa;
            self.inverse[a] = xb;
            self.refresh(xa);
            self.refresh(xb);
        }
    }

    pub fn into_permutation(self) -> Permutation {
        Permutation::from_images(self.n, self.images).expect("swaps preserve bijectivity")
    }
}

impl MovedPoints for WorkingPerm {
    fn width(&self) -> usize {
        self.n
    }

    fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    fn moved_ascending(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        Box::new(self.moved.iter().copied())
    }
}
