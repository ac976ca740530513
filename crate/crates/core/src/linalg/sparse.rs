//! Row-sparse matrices for module actions and differentials.
//!
//! Tensor powers of an algebra get large quickly while their action and
//! boundary matrices stay very sparse, so those are stored row-wise with
//! explicit nonzeros only.

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::rational::Rational;

/// Sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a + s * b` for sparse vectors.
pub fn axpy(a: &[(usize, Rational)], s: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_get(v: &[(usize, Rational)], idx: usize) -> Option<&Rational> {
    v.binary_search_by_key(&idx, |(c, _)| *c).ok().map(|p| &v[p].1)
}

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &[(usize, Rational)], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Sums duplicate indices and drops zeros.
pub fn sparse_normalize(mut v: Vec<(usize, Rational)>) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Rational::one())]).collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of {rows}x{cols}");
            data[r].push((c, v));
        }
        Self {
            rows,
            cols,
            data: data.into_iter().map(sparse_normalize).collect(),
        }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.iter().all(|(c, v)| *c < cols && !v.is_zero())));
        Self {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows()).map(|i| sparse_from_dense(m.row(i))).collect(),
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        sparse_get(&self.data[i], j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, v * s)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&-Rational::one(), other)
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: &Rational, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, s, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut acc = vec![Rational::zero(); other.cols];
        let mut touched = vec![false; other.cols];
        let mut idx = Vec::new();
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        if !touched[*j] {
                            touched[*j] = true;
                            idx.push(*j);
                        }
                        acc[*j] += &(a * b);
                    }
                }
                idx.sort_unstable();
                let mut out = Vec::with_capacity(idx.len());
                for &j in &idx {
                    let v = std::mem::take(&mut acc[j]);
                    touched[j] = false;
                    if !v.is_zero() {
                        out.push((j, v));
                    }
                }
                idx.clear();
                out
            })
            .collect();
        Self {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        self.data
            .iter()
            .map(|row| row.iter().map(|(j, a)| a * &v[*j]).sum())
            .collect()
    }

    /// Kronecker product; index `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * other.cols + jb, a * b));
                    }
                }
                data.push(row);
            }
        }
        Self {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&SparseMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut off = 0;
        for b in blocks {
            for r in &b.data {
                data.push(r.iter().map(|(j, v)| (j + off, v.clone())).collect());
            }
            off += b.cols;
        }
        Self { rows, cols, data }
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hstack(blocks: &[&SparseMatrix]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        assert!(blocks.iter().all(|b| b.rows == rows), "row count mismatch");
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = vec![Vec::new(); rows];
        let mut off = 0;
        for b in blocks {
            for (i, r) in b.data.iter().enumerate() {
                data[i].extend(r.iter().map(|(j, v)| (j + off, v.clone())));
            }
            off += b.cols;
        }
        Self { rows, cols, data }
    }
}

/// Largest row or column count accepted when deserializing.
pub const MAX_WIRE_DIM: usize = 1 << 20;

/// Wire form: row-major `(row, col, "value")` triplets of the nonzeros.
#[derive(Serialize, Deserialize)]
struct SparseWire {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Rational)>,
}

impl Serialize for SparseMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SparseWire {
            rows: self.rows,
            cols: self.cols,
            entries: self.triplets().map(|(i, j, v)| (i, j, v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = SparseWire::deserialize(d)?;
        if w.rows > MAX_WIRE_DIM || w.cols > MAX_WIRE_DIM {
            return Err(serde::de::Error::custom(format!(
                "{}x{} matrix exceeds the limit of {MAX_WIRE_DIM} rows or columns",
                w.rows, w.cols
            )));
        }
        if let Some((i, j, _)) = w.entries.iter().find(|(i, j, _)| *i >= w.rows || *j >= w.cols) {
            return Err(serde::de::Error::custom(format!(
                "entry ({i},{j}) outside {}x{} matrix",
                w.rows, w.cols
            )));
        }
        Ok(Self::from_triplets(w.rows, w.cols, w.entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&Matrix::from_i64(rows))
    }

    #[test]
    fn products_match_dense() {
        let a = m(&[&[1, 2, 0], &[0, -1, 3]]);
        let b = m(&[&[1, 0], &[2, 1], &[0, 4]]);
        assert_eq!(a.mul(&b).to_dense(), a.to_dense().mul(&b.to_dense()));
        assert_eq!(a.transpose().to_dense(), a.to_dense().transpose());
    }

    #[test]
    fn kron_indexing() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let i = SparseMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(0, 2), Rational::one());
        assert_eq!(k.get(1, 3), Rational::one());
        assert_eq!(k.get(0, 1), Rational::zero());
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = m(&[&[1, -1]]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.add(&a).nnz(), 2);
    }
}
