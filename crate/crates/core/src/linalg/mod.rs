//! Dense complex matrix and tensor-square kernels.

mod eigen;
mod matrix;
mod tensor;

pub use eigen::hermitian_eigenvalues;
pub use matrix::FuzzyMatrix;
pub use tensor::{TensorOperator, TENSOR_DIM_LIMIT};
