//! Construction and verification of bifurcating standing waves for
//! abcd Boussinesq systems.
//!
//! The crate is organised around the pipeline used to build a standing
//! wave for the Bona-Smith subfamily:
//!
//! 1. [`feasibility`] classifies a four-parameter system by whether the
//!    reduction method applies at all (kernel finiteness and divisor
//!    boundedness).
//! 2. [`resonance`] enumerates, in exact rational arithmetic, the lattice
//!    pairs where the mode determinant vanishes, certifies uniqueness and
//!    estimates the divisor bound `M`.
//! 3. [`operator`] builds the linearized operator at the bifurcation
//!    point, its kernel vectors and the modewise pseudo-inverse.
//! 4. [`bifurcation`] runs the reduction: kernel decomposition, the
//!    second- and higher-order corrections, the amplitude equation and
//!    the assembled wave.
//! 5. [`verify`] checks the result against the nonlinear system by exact
//!    coefficient-space residuals and order-of-accuracy scaling.
//!
//! All field arithmetic happens on finite double Fourier series with an
//! x-parity tag ([`spectral`]); resonance decisions are exact.

pub mod bifurcation;
pub mod error;
pub mod feasibility;
pub mod numeric;
pub mod operator;
pub mod resonance;
pub mod spectral;
pub mod verify;

pub use error::Error;
pub use spectral::{FieldPair, FourierField, GridValues, Parity, C64};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
