//! Integral weight spectra of MDS code cosets.
//!
//! For an `[n, k, d = n - k + 1]_q` MDS code this crate evaluates, in exact
//! integer arithmetic, the total number of weight-w vectors over all cosets of
//! weight 1, 2 and (for `d = 5`, covering radius 3) weight 3, in every known
//! form of the closed-form expressions. A brute-force coset census over
//! explicitly constructed (extended) Reed–Solomon codes provides the ground
//! truth the formulas are verified against.
//!
//! ```
//! use mds_spectra::{CodeParams, formulas::{sigma_w1, W1Form}};
//!
//! let params = CodeParams::new(6, 2, 5)?;
//! assert_eq!(sigma_w1(params, 5, W1Form::PowerSum)?, 360.into());
//! # Ok::<(), mds_spectra::Error>(())
//! ```

pub mod code;
pub mod combinatorics;
mod error;
pub mod field;
pub mod formulas;
pub mod identities;
pub mod oracle;
pub mod verify;

pub use code::{mds_weight, sphere_volume, CodeParams, MdsCode, Spectrum};
pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use formulas::{Evaluator, Fault, FormId, RadiusGate};
pub use oracle::{census, census_with, CensusOptions, CosetCensus};

/// Arbitrary-precision signed integer used for every count.
pub type Integer = num_bigint::BigInt;
