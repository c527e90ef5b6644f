use crate::scalar::Rational;

/// Errors shared across the crate.
///
/// Domain violations are errors, not panics: callers (and the CLI) are
/// expected to feed this library text that came from a user.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// `sqrt_of_rational` on a zero or negative radicand.
    #[error("square root of non-positive rational {0}")]
    NonPositiveSqrt(Rational),
    /// The radicand of a square root exceeds the factoring bound.
    #[error("radicand {value} exceeds the factoring bound {bound}")]
    FactorBound { value: u128, bound: u128 },
    /// Reciprocal of the zero scalar.
    #[error("division by zero scalar")]
    ZeroDivision,
    /// A sign query on a scalar with a nonzero imaginary part.
    #[error("sign of a non-real scalar {0}")]
    NotReal(String),
    /// An amplitude list whose length is not a power of two (or is < 2).
    #[error("amplitude list has length {0}, expected 2^n with n >= 1")]
    AmplitudeLength(usize),
    /// A Schmidt amplitude that is not real and non-negative.
    #[error("amplitude at index {0} is not a non-negative real")]
    InvalidAmplitude(usize),
    /// A target with fewer than two nonzero amplitudes carries no
    /// entanglement; there is nothing to embezzle.
    #[error("target has fewer than two nonzero amplitudes")]
    DegenerateTarget,
    /// A register whose squared amplitudes are irrational was offered to a
    /// dense-mode layout.
    #[error("dense mode requires rational squared amplitudes, got {0}")]
    NotDenseEligible(String),
    /// Two declarations of the same ancilla slot with different widths.
    #[error("ancilla slot t{slot} declared with width {next}, already {prev}")]
    SlotWidthConflict { slot: u32, prev: u32, next: u32 },
    /// A lane index at or beyond the register width.
    #[error("lane {lane} out of range for width {width}")]
    LaneOutOfRange { lane: u32, width: u32 },
    /// A random word was requested over an empty address window.
    #[error("empty address window")]
    EmptyWindow,
    /// A word mentions an ancilla slot the product state does not assign.
    #[error("ancilla slot t{0} is not assigned in the state")]
    UnassignedSlot(u32),
    /// A truncation window that would need more qubits than the cap allows.
    #[error("window needs {needed} qubits, cap is {cap} (raise EMBZ_QUBIT_CAP)")]
    WindowCap { needed: u64, cap: u64 },
    /// A window with an empty site range.
    #[error("window site range {lo}..={hi} is empty")]
    EmptySiteRange { lo: i64, hi: i64 },
    /// An oracle evaluation of a word that leaves the truncation window.
    #[error("address {0} lies outside the truncation window")]
    OutsideWindow(String),
    /// Two sequential targets claiming the same ancilla slot.
    #[error("ancilla slot t{0} is claimed by more than one target")]
    SlotCollision(u32),
    /// No denominator up to the bound yields a usable approximation.
    #[error("no denominator up to {0} gives a target with two nonzero entries")]
    NoCandidate(u64),
}
