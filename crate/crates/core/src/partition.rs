//! Node partitions in canonical form, and enumeration of all set partitions.

/// An assignment of nodes `0..n` to blocks `0..k`.
///
/// Block ids are always canonical: they are numbered in order of first
/// appearance when scanning nodes by increasing id. Two partitions of the same
/// node set are therefore equal as sets of blocks iff they are equal
/// element-wise, and the derived `Ord` is the lexicographic order of the
/// restricted growth strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    labels: Vec<usize>,
    block_count: usize,
}

impl Partition {
    /// Builds a partition from arbitrary block labels, renumbering them
    /// canonically.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut seen = std::collections::HashMap::with_capacity(labels.len().min(1024));
        let mut out = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = seen.len();
            out.push(*seen.entry(l).or_insert(next));
        }
        Partition {
            labels: out,
            block_count: seen.len(),
        }
    }

    /// Like [`Partition::from_labels`] but for dense `usize` labels, avoiding a
    /// hash map.
    pub fn from_dense_labels(labels: &[usize]) -> Self {
        let bound = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut remap = vec![usize::MAX; bound];
        let mut next = 0;
        let labels = labels
            .iter()
            .map(|&l| {
                if remap[l] == usize::MAX {
                    remap[l] = next;
                    next += 1;
                }
                remap[l]
            })
            .collect();
        Partition {
            labels,
            block_count: next,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            block_count: n,
        }
    }

    /// All `n` nodes in one block (the empty partition when `n == 0`).
    pub fn single_block(n: usize) -> Self {
        Partition {
            labels: vec![0; n],
            block_count: usize::from(n > 0),
        }
    }

    /// Builds a partition from a list of blocks. Every node `0..n` must occur
    /// in exactly one block; returns `None` otherwise.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                if v >= n || labels[v] != usize::MAX {
                    return None;
                }
                labels[v] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return None;
        }
        Some(Self::from_dense_labels(&labels))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_of(&self, node: usize) -> usize {
        self.labels[node]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.labels
    }

    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.labels[u] == self.labels[v]
    }

    /// Blocks as sorted node lists, in block id order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (v, &b) in self.labels.iter().enumerate() {
            blocks[b].push(v);
        }
        blocks
    }
}

impl std::fmt::Display for Partition {
    /// Formats as `{01|2}` style, blocks separated by `|`, nodes by `,` when
    /// any id has more than one digit.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let wide = self.labels.len() > 10;
        write!(f, "{{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, v) in block.iter().enumerate() {
                if wide && j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Iterator over all partitions of `0..n` as restricted growth strings, in
/// lexicographic (canonical) order. Yields Bell(n) partitions; exactly one
/// (the empty partition) for `n == 0`.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    labels: Vec<usize>,
    // prefix_max[i] = max(labels[0..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let n = self.labels.len();
        let current = Partition {
            labels: self.labels.clone(),
            block_count: self.prefix_max.last().map_or(0, |m| m + 1),
        };
        // advance: rightmost position that can still grow
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.labels[i] <= self.prefix_max[i - 1] {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(current)
    }
}
