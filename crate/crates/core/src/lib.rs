//! Exact evaluation of a trilinear-aggregation identity for the three
//! disjoint products `C = AB`, `W = UV`, `Z = XY`, the bilinear algorithm
//! read off from it, and the operation counts and exponent bounds it
//! implies.
//!
//! All identity checks run over [`Rational`]; the bilinear algorithm is
//! generic over [`Scalar`] and also runs in `f64`.

pub mod bilinear;
pub mod complexity;
pub mod error;
pub mod format;
pub mod matrix;
pub mod random;
pub mod scalar;
pub mod trilinear;
pub mod triple;

pub use bilinear::{
    combine_outputs, compute_products, cross_corrections, disjoint_multiply,
    extract_output_via_duals, product_count, CrossCorrections, Mode, Output, ProductSet,
};
pub use complexity::{find_min_omega, m_disjoint, m_single, omega, ComplexityReport, Kind};
pub use error::{Error, Result};
pub use matrix::{naive_matmul, Axis, Mat, MulTally, Role};
pub use random::{random_matrix, MatrixRng};
pub use scalar::{format_rational, parse_rational, Rational, Scalar};
pub use trilinear::{
    eval_rhs_eq1, eval_rhs_eq3, eval_scalar_identity, residual_formula, verify_identity,
    CrossTerms, IdentityParams, VerificationReport,
};
pub use triple::{naive_triple, trace_triple, DisjointInputs, DualTensors, TripleResult};
