//! Exact computations with finite-dimensional algebras over the rationals:
//! radicals, block decompositions, matrix-algebra recognition, bimodules,
//! and resolutions of the regular bimodule.

pub mod algebra;
pub mod bimodule;
pub mod complex;
pub mod format;
pub mod linalg;
pub mod poly;
pub mod zoo;
