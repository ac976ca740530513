use std::fmt;

use serde::{Deserialize, Serialize};

use super::echelon::Echelon;
use super::rational::Rational;
use super::sparse::{sparse_from_dense, SparseMatrix};
use super::subspace::Subspace;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Quotient of a codomain by the image of a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cokernel {
    pub quotient_dim: usize,
    /// `quotient_dim x codomain_dim`; kills the image, identity on the chosen
    /// complement (the standard basis vectors at non-pivot columns of the
    /// image's canonical basis).
    pub projection: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Self { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Self::from_vec(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self::from_vec(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self::from_vec(
            self.rows,
            self.cols,
            self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Self::from_vec(self.rows, self.cols, self.data.iter().map(|a| a * s).collect())
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix::from_dense(self)
    }

    fn echelon_of_rows(&self) -> Echelon {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            if e.is_full() {
                break;
            }
            e.insert(&sparse_from_dense(self.row(i)));
        }
        e
    }

    /// Reduced row-echelon form, exact.
    pub fn rref(&self) -> Rref {
        let e = self.echelon_of_rows();
        let pivot_cols = e.pivots();
        let rank = pivot_cols.len();
        let mut matrix = Matrix::zeros(self.rows, self.cols);
        for (i, r) in e.into_rows().into_iter().enumerate() {
            for (j, v) in r {
                matrix.set(i, j, v);
            }
        }
        Rref {
            matrix,
            rank,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon_of_rows().rank()
    }

    /// Null space acting on column vectors.
    pub fn kernel(&self) -> Subspace {
        let e = self.echelon_of_rows();
        Subspace::from_sparse_rows(self.cols, e.null_space())
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_sparse_rows(self.rows, (0..self.cols).map(|j| sparse_from_dense(&self.column(j))))
    }

    pub fn cokernel(&self) -> Cokernel {
        cokernel_of_image(&self.image())
    }

    /// Two-sided inverse, if square and nonsingular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut e = Echelon::new(2 * n);
        for i in 0..n {
            let mut r = sparse_from_dense(self.row(i));
            r.push((n + i, Rational::one()));
            e.insert(&r);
        }
        if (0..n).any(|c| !e.is_pivot(c)) {
            return None;
        }
        let rows = e.into_rows();
        Some(Self::from_fn(n, n, |i, j| {
            super::sparse::sparse_get(&rows[i], n + j)
                .cloned()
                .unwrap_or_else(Rational::zero)
        }))
    }

    /// `(M^T M)^{-1} M^T`, a left inverse when the columns are independent.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let t = self.transpose();
        Some(t.mul(self).inverse()?.mul(&t))
    }

    /// Vectorizes row-major into a single column.
    pub fn vectorize(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }
}

/// Projection onto the standard complement of `image`.
pub fn cokernel_of_image(image: &Subspace) -> Cokernel {
    let n = image.ambient_dim();
    let pivots = image.pivots();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut projection = Matrix::zeros(free.len(), n);
    for (row, &j) in free.iter().enumerate() {
        projection.set(row, j, Rational::one());
        for (i, &p) in pivots.iter().enumerate() {
            let w = image.basis().get(i, j);
            if !w.is_zero() {
                projection.set(row, p, -w);
            }
        }
    }
    Cokernel {
        quotient_dim: free.len(),
        projection,
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct DenseWire {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DenseWire {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = DenseWire::deserialize(d)?;
        if w.rows.checked_mul(w.cols) != Some(w.entries.len()) {
            return Err(serde::de::Error::custom(format!(
                "{} entries for a {}x{} matrix",
                w.entries.len(),
                w.rows,
                w.cols
            )));
        }
        Ok(Matrix::from_vec(w.rows, w.cols, w.entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let r = Matrix::identity(3).rref();
        assert_eq!(r.matrix, Matrix::identity(3));
        assert_eq!((r.rank, r.pivot_cols.clone()), (3, vec![0, 1, 2]));

        let r = Matrix::zeros(2, 4).rref();
        assert_eq!(r.matrix, Matrix::zeros(2, 4));
        assert_eq!((r.rank, r.pivot_cols.len()), (0, 0));

        let r = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!((r.rank, r.pivot_cols), (1, vec![0]));
    }

    #[test]
    fn kernel_and_image_edge_cases() {
        assert_eq!(Matrix::identity(3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(4, 4).kernel(), Subspace::full(4));
        assert_eq!(Matrix::identity(3).image(), Subspace::full(3));
        let u = Matrix::from_i64(&[&[1], &[2]]);
        let v = Matrix::from_i64(&[&[3, -1, 5]]);
        assert_eq!(u.mul(&v).image().dim(), 1);
    }

    #[test]
    fn cokernel_edge_cases() {
        let c = Matrix::identity(2).cokernel();
        assert_eq!(c.quotient_dim, 0);
        let c = Matrix::zeros(3, 2).cokernel();
        assert_eq!(c.quotient_dim, 3);
        assert_eq!(c.projection, Matrix::identity(3));
        let m = Matrix::from_i64(&[&[1, 1], &[2, 2], &[0, 1]]);
        let c = m.cokernel();
        assert_eq!(c.quotient_dim, 1);
        assert!(c.projection.mul(&m).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
