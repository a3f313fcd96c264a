//! Incremental row reduction over ℚ for sparse rows.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::rational::Rat;

pub type SparseRow = BTreeMap<usize, Rat>;

/// Rows kept with distinct leading columns and leading coefficient one.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    #[must_use]
    pub fn new() -> Self {
        Self::default()
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots; keeps it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        while let Some((&lead, c)) = row.iter().next() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let c = c.clone();
                    for (&col, v) in p {
                        let e = row.entry(col).or_insert_with(Rat::zero);
                        *e -= &c * v;
                        if e.is_zero() {
                            row.remove(&col);
                        }
                    }
                }
                None => {
                    let inv = Rat::one() / c;
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = SparseRow>) {
        for r in rows {
            self.insert(r);
        }
    }
}

/// Rank of a dense row list.
#[must_use]
pub fn sparse_rank(rows: &[Vec<Rat>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect());
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_ints, rank};

    #[test]
    fn agrees_with_dense_rank() {
        let m = from_ints(&[&[1, 2, 3, 0], &[2, 4, 6, 0], &[0, 1, 1, 1], &[1, 3, 4, 1], &[0, 0, 0, 5]]);
        assert_eq!(sparse_rank(&m), rank(&m));
        assert_eq!(sparse_rank(&m), 3);
    }
}
