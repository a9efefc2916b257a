//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by the library.
///
/// Domain failures (a parameter point where no bifurcation exists, an
/// input outside the range of the linearized operator) are ordinary
/// variants so callers can map them to exit codes.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameter constraints violated (signs, ranges, parse failures).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A sine-basis field may not carry p = 0 entries.
    #[error("odd (sine) field cannot hold a p = 0 mode (q = {q})")]
    OddZeroMode {
        /// Offending time frequency.
        q: i64,
    },

    /// Grid evaluation requested for a field not flagged real.
    #[error("grid evaluation requires a real-flagged field")]
    NonRealField,

    /// The resonance set is empty; no bifurcation point exists here.
    #[error("resonance set is empty for these parameters")]
    EmptyResonanceSet,

    /// More than one resonant pair; the single-mode reduction does not apply.
    #[error("resonance set has {} elements {elements:?}; only a single-element set is supported", elements.len())]
    MultipleResonances {
        /// All resonant pairs found.
        elements: Vec<(u32, u32)>,
    },

    /// The pair handed to the uniqueness certificate is not resonant.
    #[error("({p}, {q}) is not in the resonance set")]
    NotInSigma {
        /// Spatial index.
        p: u32,
        /// Temporal index.
        q: u32,
    },

    /// Mode determinant vanishes where a quotient was requested.
    #[error("determinant vanishes at (p, q) = ({p}, {q}); quotients undefined")]
    ZeroDivisor {
        /// Spatial index.
        p: u32,
        /// Temporal index.
        q: i64,
    },

    /// Scanned divisor quantities keep growing past the asymptote envelope.
    #[error("divisor quantities grow without bound at fixed q = {q} (last scanned value {last:.6e}, envelope {envelope:.6e})")]
    UnboundedDivisor {
        /// Time frequency along which the growth occurs.
        q: i64,
        /// Last scanned quantity.
        last: f64,
        /// Asymptote envelope the scan exceeded.
        envelope: f64,
    },

    /// Right-hand side has a component along the kernel: outside range.
    #[error("compatibility violation: kernel overlap {overlap:.3e} exceeds {tol:.1e} * norm {norm:.3e}")]
    CompatibilityViolation {
        /// Magnitude of the kernel overlap.
        overlap: f64,
        /// Norm of the right-hand side.
        norm: f64,
        /// Relative tolerance applied.
        tol: f64,
    },

    /// Cubic coefficient of the amplitude equation is numerically zero.
    #[error("beta2 = {beta2:.3e} is too close to zero; amplitude equation degenerate")]
    Beta2Zero {
        /// Computed value.
        beta2: f64,
    },

    /// Amplitude equation has negative right side: only the trivial family.
    #[error("no bifurcation: amplitude equation right side {rhs:.6e} < 0")]
    NoBifurcation {
        /// Value of the right side of the amplitude equation.
        rhs: f64,
    },

    /// Requested expansion order outside the supported range.
    #[error("order {order} unsupported (allowed 1..={max})")]
    OrderUnsupported {
        /// Requested order.
        order: usize,
        /// Maximum supported order.
        max: usize,
    },

    /// A computed bifurcation-equation term breaks the phase equivariance law.
    #[error("equivariance violation in h_{order}: relative error {error:.3e}")]
    EquivarianceViolation {
        /// Order of the offending term.
        order: usize,
        /// Observed relative error.
        error: f64,
    },

    /// Refined-amplitude root finding could not bracket a sign change.
    #[error("could not bracket a root of the bifurcation equation near |A| = {near:.6e}")]
    RootBracketing {
        /// Principal-order amplitude used as the search center.
        near: f64,
    },
}
