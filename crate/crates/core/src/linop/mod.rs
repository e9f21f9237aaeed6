//! Interval matrices, weighted operator norms, approximate inverses and
//! tail-extended sequence operators.

mod mat;
mod rigorous;
mod seqop;
mod weights;

pub use mat::{approx_inverse, block_lower_inverse, block_lower_solve, Gemm, Lu, Mat};
pub use rigorous::{mul_float_interval, mul_float_interval_c, RigorousMul};
pub use seqop::{
    flatten_cheb3, flatten_taylor3, make_tail_extended, product_space_norm, unflatten_cheb3,
    unflatten_taylor3, Layout, SeqOperator,
};
pub use weights::{sup_over_columns, weighted_column_sums, weighted_opnorm, WeightProfile};
