/// Disjoint-set forest with union by rank and path compression.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            rank: vec![0; len],
            sets: len,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of disjoint sets.
    pub fn set_count(&self) -> usize {
        self.sets
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Find without compression, for shared references.
    pub fn find_immutable(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `x` and `y`. Returns the new root, or `None` when
    /// they were already in the same set.
    pub fn union(&mut self, x: usize, y: usize) -> Option<usize> {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return None;
        }
        if self.rank[rx] < self.rank[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        if self.rank[rx] == self.rank[ry] {
            self.rank[rx] += 1;
        }
        self.sets -= 1;
        Some(rx)
    }

    pub fn same_set(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    /// The current sets as a canonical [`Partition`](crate::Partition).
    pub fn to_partition(&mut self) -> crate::Partition {
        let roots: Vec<usize> = (0..self.len()).map(|v| self.find(v)).collect();
        crate::Partition::from_dense_labels(&roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_forest_is_identity() {
        let mut ds = DisjointSets::new(5);
        assert!((0..5).all(|i| ds.find(i) == i));
        assert_eq!(ds.set_count(), 5);
    }

    #[test]
    fn union_is_transitive() {
        let mut ds = DisjointSets::new(4);
        assert!(ds.union(0, 1).is_some());
        assert_eq!(ds.find(0), ds.find(1));
        ds.union(1, 2);
        assert_eq!(ds.find(0), ds.find(2));
        assert!(ds.union(2, 0).is_none());
        assert!(!ds.same_set(0, 3));
        assert_eq!(ds.set_count(), 2);
        assert_eq!(ds.to_partition().labels(), &[0, 0, 0, 1]);
    }

    #[test]
    fn find_is_idempotent_after_long_chain() {
        let mut ds = DisjointSets::new(64);
        for i in 1..64 {
            ds.union(i - 1, i);
        }
        let r = ds.find(63);
        assert_eq!(ds.find(r), r);
        assert!((0..64).all(|i| ds.find_immutable(i) == r));
    }
}
