//! Exact sparse linear algebra over ℚ.
//!
//! The seed-space solver, commutant computations and matrix-center checks all
//! reduce to one primitive: the nullspace of a sparse rational matrix,
//! computed exactly. Rows are reduced incrementally against a pivot table and
//! the final basis is read off a reduced echelon form, so the output is
//! deterministic for a fixed row order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::Coeff;

/// Sparse vector: column index -> nonzero rational.
pub type SparseVec = BTreeMap<usize, Coeff>;

/// Result of a nullspace computation.
#[derive(Debug, Clone)]
pub struct Nullspace {
    pub cols: usize,
    pub rank: usize,
    /// Basis of the solution space, one sparse vector per free column,
    /// ordered by free column index and normalized to 1 at that column.
    pub basis: Vec<SparseVec>,
}

impl Nullspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn leading(row: &SparseVec) -> Option<usize> {
    row.keys().next().copied()
}

/// row -= factor * pivot
fn axpy(row: &mut SparseVec, factor: &Coeff, pivot: &SparseVec) {
    for (col, val) in pivot {
        let delta = factor * val;
        match row.get_mut(col) {
            Some(cell) => {
                *cell -= &delta;
                if cell.is_zero() {
                    row.remove(col);
                }
            }
            None => {
                row.insert(*col, -delta);
            }
        }
    }
}

fn normalize(row: &mut SparseVec, at: usize) {
    let lead = row.get(&at).expect("pivot entry").clone();
    if lead.is_one() {
        return;
    }
    for val in row.values_mut() {
        *val /= &lead;
    }
}

/// Exact nullspace of the matrix whose rows are produced by `rows`.
///
/// Duplicate and zero rows are harmless. Column count must dominate every
/// index appearing in the rows.
pub fn nullspace<I>(cols: usize, rows: I) -> Nullspace
where
    I: IntoIterator<Item = SparseVec>,
{
    // Forward pass: pivot column -> row normalized to 1 at the pivot.
    let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for mut row in rows {
        while let Some(col) = leading(&row) {
            debug_assert!(col < cols, "row index out of range");
            match pivots.get(&col) {
                Some(pivot) => {
                    let factor = row[&col].clone();
                    axpy(&mut row, &factor, pivot);
                }
                None => {
                    normalize(&mut row, col);
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }

    // Back substitution: clear pivot columns from earlier pivot rows.
    let cols_desc: Vec<usize> = pivots.keys().rev().copied().collect();
    for (i, &col) in cols_desc.iter().enumerate() {
        let pivot_row = pivots[&col].clone();
        for &upper in &cols_desc[i + 1..] {
            let row = pivots.get_mut(&upper).expect("pivot row");
            if let Some(factor) = row.get(&col).cloned() {
                axpy(row, &factor, &pivot_row);
            }
        }
    }

    let rank = pivots.len();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains_key(&free) {
            continue;
        }
        let mut v: SparseVec = BTreeMap::new();
        v.insert(free, Coeff::one());
        for (pcol, prow) in &pivots {
            if let Some(val) = prow.get(&free) {
                v.insert(*pcol, -val.clone());
            }
        }
        basis.push(v);
    }

    Nullspace { cols, rank, basis }
}

/// Exact rank of the matrix.
pub fn rank<I>(cols: usize, rows: I) -> usize
where
    I: IntoIterator<Item = SparseVec>,
{
    nullspace(cols, rows).rank
}
