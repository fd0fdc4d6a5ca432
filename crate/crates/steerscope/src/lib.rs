//! `steerscope` analyzes bipartite quantum states for multi-copy steerability.
//!
//! The crate is organized in four layers:
//!
//! - [`linalg`]: dense complex-Hermitian matrix kernel (tensor products,
//!   partial trace, eigendecomposition, von Neumann entropy).
//! - [`states`]: constructors for the named state families (maximally
//!   entangled states, isotropic states, Schmidt-form pure states) and
//!   seeded random-state generators.
//! - [`criteria`]: state-level machinery — reduction criterion, entanglement
//!   fraction, isotropic twirling, and the one-sided local filter that maps
//!   reduction-violating states onto isotropic states with fraction above
//!   `1/d`.
//! - [`activation`]: threshold arithmetic (exact rationals and certified
//!   floats), minimal-copy and minimal-dimension searches, super-activation
//!   windows, the two-copy bootstrap, the one-way hashing check, and the
//!   full analysis pipeline.
//!
//! Basis convention used throughout: a bipartite basis vector
//! `|i⟩_A |j⟩_B` maps to flat index `i * dim_b + j`.

pub mod activation;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, DensityMatrix, HermitianOperator, PureState};
pub use states::IsotropicClass;
