//! Exact scalars, dense tensors over `A^{⊗k}` and dense linear maps.

mod linmap;
mod scalar;
mod tensor;

pub use linmap::{solve_or_invert, Inversion, LinearMap};
pub use scalar::{scalar_invert, Field, Scalar};
pub use tensor::{all_tensors, tensor_contract, tensor_count, TensorElement};
