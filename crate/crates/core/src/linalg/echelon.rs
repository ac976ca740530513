//! Incremental reduced row-echelon form over sparse rows.
//!
//! Every elimination in the crate runs through [`Echelon`]: rows are inserted
//! one at a time and the stored set is kept fully reduced, so the final row
//! set, sorted by pivot, is the unique RREF of everything inserted.

use super::rational::Rational;
use super::sparse::{axpy, sparse_get, SparseVec};

#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    /// `pivot_row[c]` is the row whose leading 1 sits in column `c`.
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Reduces `v` against the stored rows without inserting it. The result
    /// vanishes in every pivot column.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let hits: Vec<(usize, Rational)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row[*c].map(|r| (r, x.clone())))
            .collect();
        if hits.is_empty() {
            return v.to_vec();
        }
        let mut out = v.to_vec();
        for (r, x) in hits {
            out = axpy(&out, &-x, &self.rows[r]);
        }
        out
    }

    /// Inserts a row; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.ncols));
        let mut w = self.reduce(v);
        let Some((lead, coeff)) = w.first().cloned() else {
            return false;
        };
        if !coeff.is_one() {
            let inv = coeff.recip();
            for (_, x) in w.iter_mut() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if let Some(x) = sparse_get(row, lead) {
                let x = -x;
                *row = axpy(row, &x, &w);
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(w);
        true
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// The reduced rows sorted by pivot column.
    pub fn into_rows(self) -> Vec<SparseVec> {
        let Echelon { rows, pivot_row, .. } = self;
        let mut slots: Vec<Option<SparseVec>> = rows.into_iter().map(Some).collect();
        pivot_row
            .into_iter()
            .flatten()
            .map(|r| slots[r].take().expect("each row has one pivot"))
            .collect()
    }

    /// A basis of the null space of the inserted rows, one vector per free
    /// column. Not canonicalized.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_row[f].is_some() {
                continue;
            }
            let mut v: SparseVec = vec![(f, Rational::one())];
            for (p, r) in self.pivot_row.iter().enumerate() {
                if let Some(r) = r {
                    if let Some(x) = sparse_get(&self.rows[*r], f) {
                        v.push((p, -x));
                    }
                }
            }
            v.sort_by_key(|(i, _)| *i);
            out.push(v);
        }
        out
    }
}
