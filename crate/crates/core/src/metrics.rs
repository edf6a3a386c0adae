//! Comparing two partitions of the same node set.
//!
//! Both metrics are computed from the sparse overlap table of the two
//! partitions, so cost is linear in the number of nodes.

use std::collections::HashMap;

use thiserror::Error;

use crate::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("partitions cover different node sets ({left} vs {right} nodes)")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("the Rand index needs at least two nodes, got {0}")]
    TooFewNodes(usize),
}

/// Logarithm base for entropies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LogBase {
    /// Bits (base 2).
    #[default]
    Two,
    /// Nats (base e).
    E,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

/// Overlap counts `n_ij = |row block i ∩ column block j|`, with marginals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfusionTable {
    cells: Vec<((usize, usize), usize)>,
    rows: Vec<usize>,
    cols: Vec<usize>,
    total: usize,
}

impl ConfusionTable {
    pub fn new(rows: &Partition, cols: &Partition) -> Result<Self, MetricsError> {
        if rows.len() != cols.len() {
            return Err(MetricsError::GroundSetMismatch {
                left: rows.len(),
                right: cols.len(),
            });
        }
        let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
        let mut row_sums = vec![0; rows.block_count()];
        let mut col_sums = vec![0; cols.block_count()];
        for (&i, &j) in rows.labels().iter().zip(cols.labels()) {
            *counts.entry((i, j)).or_default() += 1;
            row_sums[i] += 1;
            col_sums[j] += 1;
        }
        let mut cells: Vec<_> = counts.into_iter().collect();
        cells.sort_unstable();
        Ok(ConfusionTable {
            cells,
            rows: row_sums,
            cols: col_sums,
            total: rows.len(),
        })
    }

    /// Non-zero cells `((row, col), count)` in row-major order.
    pub fn cells(&self) -> &[((usize, usize), usize)] {
        &self.cells
    }

    pub fn row_sums(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_sums(&self) -> &[usize] {
        &self.cols
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// `H(row | col)`.
    pub fn conditional_entropy_rows(&self, base: LogBase) -> f64 {
        self.conditional_entropy(|(_, j)| self.cols[j], base)
    }

    /// `H(col | row)`.
    pub fn conditional_entropy_cols(&self, base: LogBase) -> f64 {
        self.conditional_entropy(|(i, _)| self.rows[i], base)
    }

    fn conditional_entropy(&self, given: impl Fn((usize, usize)) -> usize, base: LogBase) -> f64 {
        let n = self.total as f64;
        let mut h = 0.0;
        for &(cell, count) in &self.cells {
            // zero cells are absent, so 0 log 0 never occurs
            let c = count as f64;
            h -= c / n * base.log(c / given(cell) as f64);
        }
        // -0.0 for identical partitions
        h + 0.0
    }
}

/// Variation of information and its split into a part due to false cuts and
/// a part due to false joins.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VariationOfInformation {
    pub total: f64,
    /// `H(pred | truth)`: the prediction separates what the truth joins.
    pub false_cut: f64,
    /// `H(truth | pred)`: the prediction joins what the truth separates.
    pub false_join: f64,
}

/// Variation of information in bits.
pub fn variation_of_information(truth: &Partition, pred: &Partition) -> Result<VariationOfInformation, MetricsError> {
    variation_of_information_with_base(truth, pred, LogBase::Two)
}

pub fn variation_of_information_with_base(
    truth: &Partition,
    pred: &Partition,
    base: LogBase,
) -> Result<VariationOfInformation, MetricsError> {
    let table = ConfusionTable::new(truth, pred)?;
    let false_join = table.conditional_entropy_rows(base);
    let false_cut = table.conditional_entropy_cols(base);
    Ok(VariationOfInformation {
        total: false_cut + false_join,
        false_cut,
        false_join,
    })
}

fn pairs(k: usize) -> u128 {
    let k = k as u128;
    k * k.saturating_sub(1) / 2
}

/// Fraction of unordered node pairs on which the two partitions agree,
/// i.e. both join or both separate the pair.
pub fn rand_index(a: &Partition, b: &Partition) -> Result<f64, MetricsError> {
    let table = ConfusionTable::new(a, b)?;
    let n = table.total();
    if n < 2 {
        return Err(MetricsError::TooFewNodes(n));
    }
    let joined_both: u128 = table.cells().iter().map(|&(_, c)| pairs(c)).sum();
    let joined_a: u128 = table.row_sums().iter().map(|&c| pairs(c)).sum();
    let joined_b: u128 = table.col_sums().iter().map(|&c| pairs(c)).sum();
    let all = pairs(n);
    let separated_both = all + joined_both - joined_a - joined_b;
    Ok((joined_both + separated_both) as f64 / all as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(labels: &[usize]) -> Partition {
        Partition::from_labels(labels)
    }

    #[test]
    fn identical_partitions() {
        let x = p(&[0, 0, 1, 2, 2]);
        let vi = variation_of_information(&x, &x).unwrap();
        assert_eq!((vi.total, vi.false_cut, vi.false_join), (0.0, 0.0, 0.0));
        assert_eq!(rand_index(&x, &x).unwrap(), 1.0);
        let s = Partition::singletons(4);
        assert_eq!(rand_index(&s, &s).unwrap(), 1.0);
    }

    #[test]
    fn crossed_pairs() {
        // truth {ab|cd}, pred {ac|bd}
        let truth = p(&[0, 0, 1, 1]);
        let pred = p(&[0, 1, 0, 1]);
        let vi = variation_of_information(&truth, &pred).unwrap();
        assert_eq!((vi.total, vi.false_cut, vi.false_join), (2.0, 1.0, 1.0));
        assert_eq!(rand_index(&truth, &pred).unwrap(), 1.0 / 3.0);
    }

    #[test]
    fn under_segmentation_is_false_join() {
        let truth = p(&[0, 0, 1, 1, 2, 2, 3, 3]);
        let pred = Partition::single_block(8);
        let vi = variation_of_information(&truth, &pred).unwrap();
        assert_eq!(vi.false_cut, 0.0);
        assert!((vi.false_join - 2.0).abs() < 1e-12);
        let nats = variation_of_information_with_base(&truth, &pred, LogBase::E).unwrap();
        assert!((nats.false_join - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert_eq!(
            rand_index(&Partition::singletons(2), &Partition::singletons(3)),
            Err(MetricsError::GroundSetMismatch { left: 2, right: 3 })
        );
        assert_eq!(
            rand_index(&Partition::singletons(1), &Partition::singletons(1)),
            Err(MetricsError::TooFewNodes(1))
        );
        assert!(variation_of_information(&Partition::singletons(1), &Partition::singletons(2)).is_err());
    }

    #[test]
    fn confusion_table_marginals() {
        let t = ConfusionTable::new(&p(&[0, 0, 1]), &p(&[0, 1, 1])).unwrap();
        assert_eq!(t.cells(), &[((0, 0), 1), ((0, 1), 1), ((1, 1), 1)]);
        assert_eq!(t.row_sums(), &[2, 1]);
        assert_eq!(t.col_sums(), &[1, 2]);
        assert_eq!(t.cells().iter().map(|c| c.1).sum::<usize>(), t.total());
    }
}
