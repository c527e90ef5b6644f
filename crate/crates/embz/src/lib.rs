//! Exact symbolic verification of entanglement embezzlement.
//!
//! Embezzlement is the trick of extracting an entangled state from a fixed
//! catalyst by local operations alone, leaving the catalyst unchanged. On an
//! infinite chain of qubit registers this works *exactly*: there is a
//! `*`-automorphism built from one lattice shift and one swap per party that
//! maps the catalyst functional paired with a blank ancilla to the same
//! catalyst functional paired with a chosen entangled target.
//!
//! This crate checks that identity symbolically, word by word, with no
//! floating point anywhere in the verdict path:
//!
//! * [`scalar`] — the coefficient ring: finite sums `Σ c·√m` with Gaussian
//!   rational `c` and squarefree `m`, closed under `+`, `·`, conjugation and
//!   reciprocal.
//! * [`pauli`] — finitely supported Pauli words over addressable qubits and
//!   the signed word algebra they generate.
//! * [`registry`] — Schmidt vectors, canonical register keys, and system
//!   layouts that pin down which registers a verification run talks about.
//! * [`states`] — product-state functionals: closed-form expectations of a
//!   word in the blank chain and in an entangled pair block.
//! * [`morphism`] — shift and swap automorphisms and the embezzlement
//!   morphism composed from them.
//! * [`oracle`] — an independent dense-vector evaluator over a finite window,
//!   used to cross-check the symbolic functional on every suite.
//! * [`protocol`] — verification suites: exhaustive low-weight words plus
//!   seeded random words, sequential multi-target runs, and rational
//!   approximation of irrational targets.
//! * [`parse`] — the text grammar for scalars, algebra elements, register
//!   keys and morphism scripts.
//! * [`cli`] — the `embz` command-line front end with deterministic JSON
//!   reports.
//!
//! # Example
//!
//! Verify that a Bell pair can be embezzled, checking one word explicitly:
//!
//! ```
//! use embz::registry::SchmidtVector;
//! use embz::protocol::verify_word;
//! use std::sync::Arc;
//!
//! let bell = Arc::new(SchmidtVector::from_integer_ratios(1, &[1, 1]).unwrap());
//! // X ⊗ X on the ancilla pair extracted into slot t0.
//! let word = "X@A:t0 X@B:t0".parse().unwrap();
//! let case = verify_word(&bell, 0, &word).unwrap();
//! assert!(case.equal);
//! assert_eq!(case.rhs.to_string(), "1"); // ⟨Φ⁺|XX|Φ⁺⟩ = 1
//! ```

pub mod cli;
pub mod morphism;
pub mod oracle;
pub mod parse;
pub mod pauli;
pub mod protocol;
pub mod registry;
pub mod scalar;
pub mod states;

mod error;

pub use error::Error;

// The book chapters double as doctests so the guide can never drift from the
// crate. Each hidden module pulls one chapter in as rustdoc input.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(scalars, "../../../book/src/scalars.md");
    chapter!(pauli_words, "../../../book/src/pauli-words.md");
    chapter!(registers, "../../../book/src/registers.md");
    chapter!(states, "../../../book/src/states.md");
    chapter!(morphisms, "../../../book/src/morphisms.md");
    chapter!(oracle, "../../../book/src/oracle.md");
    chapter!(protocol, "../../../book/src/protocol.md");
    chapter!(cli, "../../../book/src/cli.md");
}
