//! Finite-dimensional formally real Jordan algebras, the quantum logics of
//! their idempotents, and numerical checks of the conditioning postulates:
//! state separation and unique conditioning, atomic state decomposition,
//! symmetric transition probabilities and absence of third-order
//! interference.

pub mod division;
pub mod error;
pub mod interference;
pub mod jordan;
pub mod logic;
pub mod parse;
pub mod probability;
pub mod sampling;
pub mod spectral;
pub mod spin;
pub mod suite;

pub use division::{Octonion, Quaternion, Scalar};
pub use error::{Error, Result};
pub use jordan::{build_algebra, Algebra, AlgebraDescriptor, Block, Element, HermMatrix, SimpleFactor};
pub use logic::Proposition;
pub use parse::{parse_algebra_spec, ParseError};
pub use probability::State;
pub use spectral::SpectralDecomposition;
