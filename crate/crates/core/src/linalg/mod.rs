//! Exact dense (and row-sparse) linear algebra over the rationals.

mod echelon;
mod matrix;
mod rational;
mod sparse;
mod subspace;

pub use echelon::Echelon;
pub use matrix::{cokernel_of_image, Cokernel, Matrix, Rref};
pub use rational::{common_denominator, ParseRationalError, Rational};
pub use sparse::{
    axpy, sparse_from_dense, sparse_get, sparse_normalize, sparse_to_dense, SparseMatrix, SparseVec, MAX_WIRE_DIM,
};
pub use subspace::Subspace;

impl SparseMatrix {
    fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.cols());
        for r in self.row_vecs() {
            if e.is_full() {
                break;
            }
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().rank()
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_sparse_rows(self.cols(), self.row_echelon().null_space())
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_sparse_rows(self.rows(), self.transpose().row_vecs().to_vec())
    }

    pub fn cokernel(&self) -> Cokernel {
        cokernel_of_image(&self.image())
    }
}
