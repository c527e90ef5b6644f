//! Shift and swap automorphisms, and the embezzlement morphism.
//!
//! All moves here are *address bijections*: they rename the qubits a word
//! touches and leave letters alone, so they extend to `*`-automorphisms of
//! the word algebra that preserve products, adjoints and signs on the nose.
//!
//! * **Shift** moves one party's half of a catalyst chain by one site
//!   (`site ↦ site + offset`, `offset ∈ {+1, −1}`). In the Heisenberg
//!   picture used throughout, shifting operators *up* the chain corresponds
//!   to the state's pair blocks marching toward the party.
//! * **Swap** exchanges the catalyst qubits at one site (canonically site 0)
//!   with an ancilla slot, lane by lane, for one party.
//!
//! The embezzlement morphism for a register `v` and slot `tN` does, for each
//! party in turn: swap site 0 with `tN`, then shift by `+1`. Applied to a
//! word (steps act left to right), the combined effect on addresses is
//!
//! ```text
//! site 0 → tN,   tN → site 1,   site s → site s+1 (s ≠ 0).
//! ```
//!
//! Under the blank-slot functional this lines up block for block with the
//! target-slot functional: the blank pair that sat in the slot becomes the
//! blank block at site ≤ 0, and the pair block revealed at site 1 becomes
//! the extracted target. [`Morphism::embezzle_faulty`] builds deliberately
//! broken variants used as negative controls.

use std::fmt;
use std::sync::Arc;

use crate::pauli::{AlgebraElement, PauliWord, Party, QubitAddress};
use crate::registry::{RegisterKey, SchmidtVector};

/// One primitive move on addresses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// `site ↦ site + offset` on one party's half of a catalyst chain.
    Shift {
        register: Arc<SchmidtVector>,
        party: Party,
        offset: i64,
    },
    /// Exchange the catalyst qubits at `site` with ancilla slot `slot`,
    /// lane by lane, for one party. Canonical protocols swap at site 0;
    /// other sites exist only as negative controls.
    Swap {
        register: Arc<SchmidtVector>,
        party: Party,
        slot: u32,
        site: i64,
    },
}

impl Step {
    /// Where this step sends one address.
    fn map(&self, addr: &QubitAddress) -> QubitAddress {
        match self {
            Step::Shift {
                register,
                party,
                offset,
            } => {
                if addr.party() == *party {
                    if let (Some(site), Some(v)) = (addr.site(), addr.register().schmidt()) {
                        if v == register {
                            return QubitAddress::with_parts(
                                addr.party(),
                                addr.register().clone(),
                                site + offset,
                                addr.lane(),
                            );
                        }
                    }
                }
                addr.clone()
            }
            Step::Swap {
                register,
                party,
                slot,
                site,
            } => {
                if addr.party() != *party {
                    return addr.clone();
                }
                match addr.register() {
                    RegisterKey::Catalyst(v) if v == register && addr.site() == Some(*site) => {
                        QubitAddress::ancilla(*slot, addr.party(), addr.lane())
                    }
                    RegisterKey::Ancilla { slot: s }
                        if s == slot && addr.lane() < register.width() =>
                    {
                        QubitAddress::with_parts(
                            addr.party(),
                            RegisterKey::from_arc(register.clone()),
                            *site,
                            addr.lane(),
                        )
                    }
                    _ => addr.clone(),
                }
            }
        }
    }

    fn inverse(&self) -> Step {
        match self {
            Step::Shift {
                register,
                party,
                offset,
            } => Step::Shift {
                register: register.clone(),
                party: *party,
                offset: -offset,
            },
            // A swap is its own inverse.
            swap => swap.clone(),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Shift {
                register,
                party,
                offset,
            } => write!(f, "shift({}, {}, {:+})", register.canonical_key(), party, offset),
            Step::Swap {
                register,
                party,
                slot,
                site,
            } => {
                write!(f, "swap({}, {}, t{})", register.canonical_key(), party, slot)?;
                if *site != 0 {
                    // diagnostic form; canonical swaps act at site 0
                    write!(f, "@{site}")?;
                }
                Ok(())
            }
        }
    }
}

/// The three ways [`Morphism::embezzle_faulty`] can break the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Shift by `−1` instead of `+1` after the swap.
    ReversedShift,
    /// Swap at site 1 instead of site 0.
    OffsetSwap,
    /// Shift first, then swap.
    SwappedOrder,
}

/// A finite composite of [`Step`]s, applied to words left to right.
///
/// As a map on algebra elements, `m.apply(x)` applies `m`'s first step
/// innermost: appending steps composes on the *outside*.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Morphism {
    steps: Vec<Step>,
}

impl Morphism {
    /// The identity morphism.
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_steps(steps: Vec<Step>) -> Self {
        Morphism { steps }
    }

    /// A single shift of one party's chain half.
    pub fn shift(register: Arc<SchmidtVector>, party: Party, offset: i64) -> Self {
        Morphism {
            steps: vec![Step::Shift {
                register,
                party,
                offset,
            }],
        }
    }

    /// A single site-0 ↔ slot swap for one party.
    pub fn swap(register: Arc<SchmidtVector>, party: Party, slot: u32) -> Self {
        Morphism {
            steps: vec![Step::Swap {
                register,
                party,
                slot,
                site: 0,
            }],
        }
    }

    /// The embezzlement morphism: per party, swap site 0 with the slot,
    /// then shift the chain by `+1`.
    pub fn embezzle(register: Arc<SchmidtVector>, slot: u32) -> Self {
        let mut steps = Vec::with_capacity(4);
        for party in Party::BOTH {
            steps.push(Step::Swap {
                register: register.clone(),
                party,
                slot,
                site: 0,
            });
            steps.push(Step::Shift {
                register: register.clone(),
                party,
                offset: 1,
            });
        }
        Morphism { steps }
    }

    /// A deliberately broken embezzlement morphism — negative controls for
    /// the verifier. Each fault must produce failing words.
    pub fn embezzle_faulty(register: Arc<SchmidtVector>, slot: u32, fault: Fault) -> Self {
        let mut steps = Vec::with_capacity(4);
        for party in Party::BOTH {
            let swap = Step::Swap {
                register: register.clone(),
                party,
                slot,
                site: if fault == Fault::OffsetSwap { 1 } else { 0 },
            };
            let shift = Step::Shift {
                register: register.clone(),
                party,
                offset: if fault == Fault::ReversedShift { -1 } else { 1 },
            };
            if fault == Fault::SwappedOrder {
                steps.push(shift);
                steps.push(swap);
            } else {
                steps.push(swap);
                steps.push(shift);
            }
        }
        Morphism { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `self` then `next`: the returned morphism applies `self`'s steps
    /// first. As algebra maps, `self.then(next) = next ∘ self`.
    pub fn then(mut self, next: Morphism) -> Self {
        self.steps.extend(next.steps);
        self
    }

    /// The inverse morphism: reversed steps, shifts negated.
    pub fn inverse(&self) -> Self {
        Morphism {
            steps: self.steps.iter().rev().map(Step::inverse).collect(),
        }
    }

    /// Where the composite sends one address.
    pub fn map_address(&self, addr: &QubitAddress) -> QubitAddress {
        let mut current = addr.clone();
        for step in &self.steps {
            current = step.map(&current);
        }
        current
    }

    /// Apply to a word: rename every address, keep every letter. Each step
    /// is a bijection on addresses, so the support never collides.
    pub fn apply_word(&self, word: &PauliWord) -> PauliWord {
        word.map_addresses(|addr| self.map_address(addr))
    }

    /// Apply to an algebra element, word by word.
    pub fn apply(&self, element: &AlgebraElement) -> AlgebraElement {
        element.map_words(|w| self.apply_word(w))
    }
}

impl fmt::Display for Morphism {
    /// Script form: steps joined by `; `. The identity is the empty script.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for step in &self.steps {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            step.fmt(f)?;
        }
        Ok(())
    }
}
