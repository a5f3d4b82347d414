//! Exact linear algebra over a [`Scalar`](crate::Scalar) field.

mod echelon;
mod matrix;
pub mod sparse;

pub use echelon::{kernel_and_image, Coordinatizer, Echelon, Subspace};
pub use matrix::{rref, solve, Matrix};
pub use sparse::SparseVec;

use crate::error::Result;
use crate::scalar::Scalar;

/// Which set operation [`subspace_combine`] performs.
pub enum Combine<'a, S> {
    Sum(&'a Subspace<S>, &'a Subspace<S>),
    Intersect(&'a Subspace<S>, &'a Subspace<S>),
    Preimage(&'a Matrix<S>, &'a Subspace<S>),
    Complement(&'a Subspace<S>),
}

pub fn subspace_combine<S: Scalar>(op: Combine<'_, S>) -> Result<Subspace<S>> {
    match op {
        Combine::Sum(u, v) => u.sum(v),
        Combine::Intersect(u, v) => u.intersect(v),
        Combine::Preimage(map, target) => {
            if map.rows() != target.ambient_dim() {
                return Err(crate::Error::DimensionMismatch(format!(
                    "map into k^{} but target lives in k^{}",
                    map.rows(),
                    target.ambient_dim()
                )));
            }
            let cols: Vec<SparseVec<S>> = (0..map.cols()).map(|j| map.sparse_column(j)).collect();
            Subspace::preimage(map.cols(), &cols, target)
        }
        Combine::Complement(u) => Ok(u.complement()),
    }
}
