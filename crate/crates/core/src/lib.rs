//! Crystal-basis model of the genetic code.
//!
//! Nucleotides are the four states of the fundamental irrep (1/2, 1/2) of
//! U_{q→0}(sl(2) ⊕ sl(2)); codons are states of the threefold tensor
//! product. Reading errors are crystal tensor operators, and two codons are
//! forced to be synonymous when the operator connects their states under
//! the q→0 Wigner–Eckart selection rule. Applying the error levels in order
//! of decreasing strength yields the multiplet structure of the code.
//!
//! Module map:
//!
//! * [`crystal`]: half-integers, the sl(2) tensor product rule, iterated products
//! * [`codon`]: nucleotides, codon/dinucleotide states, reference code tables
//! * [`wigner_eckart`]: tensor operators and the connection test
//! * [`error_model`]: the catalog of substitution events and their operators
//! * [`multiplet`]: the level-by-level derivation of the multiplet partition
//! * [`enumeration`]: counting alternative patterns
//! * [`expectations`]: checked-in expected results and their verification

pub mod codon;
pub mod crystal;
pub mod enumeration;
pub mod error_model;
pub mod expectations;
pub mod multiplet;
pub mod wigner_eckart;

pub use codon::{AminoAcid, Codon, Dinucleotide, GeneticCodeTable, Nucleotide};
pub use crystal::{CrystalState, HalfInt, IrrepLabel, Labels, Sl2State};
pub use error_model::{DoubleFamily, ErrorModel, Family, ModelConfig, Position, Scheme};
pub use multiplet::{Derivation, MultipletPartition};
pub use wigner_eckart::{ConnectionResult, CrystalTensorOp};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sl(2) crystal state (j = {j}, m = {m})")]
    InvalidState { j: HalfInt, m: HalfInt },
    #[error("tensor product of an empty list of factors")]
    EmptyProduct,
    #[error("unsupported substitution {from} -> {to}")]
    UnsupportedSubstitution { from: Nucleotide, to: Nucleotide },
    #[error("{codon} does not fit the pattern of family {family}")]
    PatternMismatch { family: String, codon: String },
    #[error("level must be between 1 and 5, got {0}")]
    InvalidLevel(u8),
    #[error("counts must be positive")]
    ZeroCount,
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
