//! Exact computer algebra for quadratic operads generated by a single n-ary
//! operation.
//!
//! The crate models the free operad on one graded generator by leaf-labelled
//! planar trees, performs all linear algebra over arbitrary-precision
//! rationals, and builds on that to compute component dimensions, quadratic
//! duals with their graded sign bookkeeping, generating functions, and the
//! functional-equation test that can certify an operad as non-Koszul.

pub mod dsl;
pub mod dual;
pub mod error;
pub mod gerstenhaber;
pub mod linalg;
pub mod presentation;
pub mod rational;
pub mod series;
pub mod trees;

pub use error::{Error, Result};
pub use presentation::{builtin_presentation, QuadraticPresentation};
pub use rational::Rat;
pub use trees::{Element, GeneratorSpec, Permutation, TreeMonomial, TreeShape};
